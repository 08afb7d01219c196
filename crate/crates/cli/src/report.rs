//! Line-oriented `key: value` rendering for the report-style commands.

use std::fmt::Write;

use grainforge::analysis::{linear_bias, EmpiricalBias, EpsilonBounds, IndexSets};
use grainforge::boolfn::{
    algebraic_immunity, default_ai_cap, degree, spectral_profile, AiResult, BoolFnError, MAX_TABLE_VARS,
};
use grainforge::funlib::FunctionBundle;
use grainforge::Dyadic;

pub struct PropsOptions {
    pub ai_max_deg: Option<u32>,
    pub no_ai: bool,
    pub show_anf: bool,
}

/// Above this many variables the default immunity search stops at degree 4.
const AI_FULL_SEARCH_VARS: usize = 14;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_props(f: &FunctionBundle, opts: &PropsOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "function: {}", f.name);
    let _ = writeln!(out, "n: {}", f.n);
    let _ = writeln!(out, "family: {}", f.family);
    if opts.show_anf {
        let _ = writeln!(out, "anf: {}", f.anf);
    }
    let _ = writeln!(out, "anf_terms: {}", f.anf.len());
    let mut computed_nl = None;
    let mut computed_res = None;
    let mut computed_ai: Option<AiResult> = None;
    let deg = degree(&f.anf);
    let _ = writeln!(out, "degree: {deg}");
    if f.n <= MAX_TABLE_VARS {
        let tt = f.truth_table().expect("n within table range");
        let prof = spectral_profile(&tt).expect("n within table range");
        computed_nl = Some(prof.nl);
        computed_res = Some(prof.resiliency);
        let _ = writeln!(out, "nl: {}", prof.nl);
        let _ = writeln!(out, "lb: {}", prof.lb.fmt_log2());
        let _ = writeln!(out, "resiliency: {}", prof.resiliency);
        if opts.no_ai {
            let _ = writeln!(out, "ai: not computed");
        } else {
            let cap = default_ai_cap(f.n);
            let max = opts.ai_max_deg.unwrap_or(if f.n > AI_FULL_SEARCH_VARS { cap.min(4) } else { cap });
            if f.n > AI_FULL_SEARCH_VARS {
                eprintln!("computing algebraic immunity of {} up to degree {max}", f.name);
            }
            match algebraic_immunity(&tt, max) {
                Ok(ai) => {
                    computed_ai = Some(ai);
                    let _ = writeln!(out, "ai: {ai}");
                }
                Err(BoolFnError::MemoryCeiling { .. }) => {
                    let _ = writeln!(out, "ai: not computed (elimination exceeds the memory ceiling)");
                }
                Err(e) => {
                    let _ = writeln!(out, "ai: not computed ({e})");
                }
            }
        }
    } else {
        match linear_bias(f) {
            Ok(lb) => {
                let _ = writeln!(out, "lb: {} (closed form)", lb.fmt_log2());
            }
            Err(_) => {
                let _ = writeln!(out, "lb: not computed");
            }
        }
        let _ = writeln!(out, "ai: not computed ({} variables)", f.n);
    }
    let gates = f.gate_count();
    let _ = writeln!(out, "gates: {gates}");
    let consistent = f.check_consistency().is_ok();
    let _ = writeln!(out, "circuit_matches_anf: {}", yes_no(consistent));

    let c = &f.claimed;
    let mut mismatches = Vec::new();
    if let Some(v) = c.degree {
        let _ = writeln!(out, "claimed_degree: {v}");
        if !v.admits(deg as i64) {
            mismatches.push("degree");
        }
    }
    if let Some(v) = c.nl {
        let _ = writeln!(out, "claimed_nl: {v}");
        if computed_nl.is_some_and(|nl| !v.admits(nl as i64)) {
            mismatches.push("nl");
        }
    }
    if let Some(v) = c.resiliency {
        let _ = writeln!(out, "claimed_resiliency: {v}");
        if computed_res.is_some_and(|r| !v.admits(r as i64)) {
            mismatches.push("resiliency");
        }
    }
    if let Some(v) = c.ai {
        let _ = writeln!(out, "claimed_ai: {v}");
        if computed_ai.is_some_and(|a| a.exact && !v.admits(a.ai as i64)) {
            mismatches.push("ai");
        }
    }
    if let Some(g) = c.gates {
        let _ = writeln!(out, "claimed_gates: {g}");
        if g != gates {
            mismatches.push("gates");
        }
    }
    if !c.source.is_empty() {
        let _ = writeln!(out, "claim_source: {}", c.source);
    }
    let _ = writeln!(out, "mismatches: {}", if mismatches.is_empty() { "none".to_string() } else { mismatches.join(",") });
    out
}

fn exact_fraction(d: Dyadic) -> String {
    if d.is_zero() {
        "0".into()
    } else if d.denominator_log2() == 0 {
        d.numerator().to_string()
    } else {
        format!("{}/2^{}", d.numerator(), d.denominator_log2())
    }
}

pub fn render_bias(sets: &IndexSets, mode: &str, bias: Option<Dyadic>) -> String {
    let mut out = format!("mode: {mode}\n{sets}\n");
    match bias {
        _ if !sets.necessary_condition() => out += "bias: 0 (necessary condition failed)\n",
        Some(b) => {
            let _ = writeln!(out, "bias: {}", b.fmt_log2());
            let _ = writeln!(out, "bias_exact: {}", exact_fraction(b));
        }
        None => {}
    }
    out
}

pub fn render_empirical(sets: &IndexSets, e: &EmpiricalBias, seed: u64) -> String {
    let mut out = format!("mode: empirical\n{sets}\n");
    if !sets.necessary_condition() {
        out += "model_bias: 0 (necessary condition failed)\n";
    }
    let _ = writeln!(out, "samples: {}", e.samples);
    let _ = writeln!(out, "seed: {seed}");
    let _ = writeln!(out, "estimate: {:.6}", e.estimate);
    let _ = writeln!(out, "sigma: {:.6}", e.sigma);
    out
}

pub fn render_eps(e: &EpsilonBounds) -> String {
    format!("{e}\n")
}
