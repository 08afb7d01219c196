use std::collections::HashMap;
use std::sync::Arc;

use crate::boolfn::AnfPoly;
use crate::engine::{balanced_pad, interleave_psi, taps_from_tau, Assembly, InitVariant, ParamSpec};
use crate::funlib::{custom_bundle, lookup, FunctionBundle};

use super::{get_instance, InstanceError};

fn err(line: usize, msg: impl Into<String>) -> InstanceError {
    InstanceError::Config { line, msg: msg.into() }
}

fn parse_list(line: usize, v: &str) -> Result<Vec<usize>, InstanceError> {
    let inner = v
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("expected [a,b,...], got {v:?}")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| err(line, format!("bad integer {s:?}"))))
        .collect()
}

fn parse_num<T: std::str::FromStr>(line: usize, v: &str) -> Result<T, InstanceError> {
    v.trim().parse().map_err(|_| err(line, format!("bad number {v:?}")))
}

fn parse_bool(line: usize, v: &str) -> Result<bool, InstanceError> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(err(line, format!("bad flag {v:?}"))),
    }
}

fn function(line: usize, v: &str, n: usize, what: &str) -> Result<Arc<FunctionBundle>, InstanceError> {
    if let Ok(b) = lookup(v.trim()) {
        return Ok(Arc::new(b));
    }
    let anf = AnfPoly::parse(n, v).map_err(|e| err(line, format!("{what}: not a known function and not ANF ({e})")))?;
    Ok(Arc::new(custom_bundle(&format!("custom_{what}"), anf)))
}

/// Reads a custom instance. Lines are `field: value`; `#` starts a comment.
/// `base: r80` starts from a registered instance and overrides fields.
pub fn parse_config(text: &str) -> Result<ParamSpec, InstanceError> {
    let mut fields: HashMap<String, (usize, String)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once(':').ok_or_else(|| err(i + 1, "expected `field: value`"))?;
        let key = k.trim().to_ascii_lowercase();
        if fields.insert(key.clone(), (i + 1, v.trim().to_string())).is_some() {
            return Err(err(i + 1, format!("duplicate field {key}")));
        }
    }
    let take = |fields: &mut HashMap<String, (usize, String)>, k: &str| fields.remove(k);

    let base = match take(&mut fields, "base") {
        Some((l, name)) => Some(get_instance(&name).map_err(|e| err(l, e.to_string()))?.into_spec()),
        None => None,
    };
    let need = |fields: &mut HashMap<String, (usize, String)>, k: &str| {
        fields.remove(k).ok_or_else(|| err(0, format!("missing field {k}")))
    };

    macro_rules! num {
        ($k:literal, $base:expr) => {
            match (take(&mut fields, $k), &base) {
                (Some((l, v)), _) => parse_num(l, &v)?,
                (None, Some(b)) => $base(b),
                (None, None) => {
                    let (l, v) = need(&mut fields, $k)?;
                    parse_num(l, &v)?
                }
            }
        };
    }
    macro_rules! list {
        ($k:literal, $base:expr) => {
            match (take(&mut fields, $k), &base) {
                (Some((l, v)), _) => parse_list(l, &v)?,
                (None, Some(b)) => $base(b),
                (None, None) => {
                    let (l, v) = need(&mut fields, $k)?;
                    parse_list(l, &v)?
                }
            }
        };
    }

    let kappa: usize = num!("kappa", |b: &ParamSpec| b.kappa);
    let v: usize = num!("v", |b: &ParamSpec| b.v);
    let kappa1: usize = num!("kappa1", |b: &ParamSpec| b.kappa1);
    let kappa2: usize = num!("kappa2", |b: &ParamSpec| b.kappa2);
    let delta: usize = num!("delta", |b: &ParamSpec| b.delta);
    let tau_given = fields.contains_key("tau");
    let tau = list!("tau", |b: &ParamSpec| b.tau.clone());
    let a = match take(&mut fields, "a") {
        Some((l, v)) => parse_list(l, &v)?,
        None => match &base {
            Some(b) if !tau_given => b.a.clone(),
            _ => taps_from_tau(kappa2, &tau),
        },
    };
    let s0 = list!("s0", |b: &ParamSpec| b.s0.clone());
    let s1 = list!("s1", |b: &ParamSpec| b.s1.clone());
    let p0 = list!("p0", |b: &ParamSpec| b.p0.clone());
    let p1 = list!("p1", |b: &ParamSpec| b.p1.clone());
    let q0 = list!("q0", |b: &ParamSpec| b.q0.clone());
    let q1 = list!("q1", |b: &ParamSpec| b.q1.clone());
    let hn = p0.len() + q0.len();

    let g = match (take(&mut fields, "g"), &base) {
        (Some((l, v)), _) => function(l, &v, s0.len(), "g")?,
        (None, Some(b)) => b.g.clone(),
        (None, None) => return Err(err(0, "missing field g")),
    };
    let h = match (take(&mut fields, "h"), &base) {
        (Some((l, v)), _) => function(l, &v, hn, "h")?,
        (None, Some(b)) => b.h.clone(),
        (None, None) => return Err(err(0, "missing field h")),
    };
    let psi = match (take(&mut fields, "psi"), &base) {
        (Some((l, v)), _) => match v.to_ascii_lowercase().as_str() {
            "identity" => (0..hn).collect(),
            "interleave" => interleave_psi(p0.len(), q0.len()),
            _ => parse_list(l, &v)?,
        },
        (None, Some(b)) => b.psi.clone(),
        (None, None) => (0..hn).collect(),
    };
    let assembly = match (take(&mut fields, "assembly"), &base) {
        (Some((l, v)), _) => match v.to_ascii_lowercase().replace('_', "-").as_str() {
            "n-first" => Assembly::NFirst,
            "l-first" => Assembly::LFirst,
            _ => return Err(err(l, format!("assembly must be n-first or l-first, got {v:?}"))),
        },
        (None, Some(b)) => b.assembly,
        (None, None) => Assembly::NFirst,
    };
    let c = (kappa1 + kappa2).saturating_sub(kappa + v);
    let pad = match (take(&mut fields, "pad"), &base) {
        (Some((l, v)), _) => match v.to_ascii_lowercase().as_str() {
            "balanced" => balanced_pad(c),
            "ones" => vec![true; c],
            "ones-then-zero" => (0..c).map(|i| i + 1 < c).collect(),
            bits if bits.chars().all(|ch| ch == '0' || ch == '1') => bits.chars().map(|ch| ch == '1').collect(),
            _ => return Err(err(l, format!("bad pad {v:?}"))),
        },
        (None, Some(b)) if b.pad.len() == c => b.pad.clone(),
        _ => balanced_pad(c),
    };
    let init = match (take(&mut fields, "init"), &base) {
        (Some((l, v)), _) => InitVariant::parse(&v).ok_or_else(|| err(l, format!("bad init {v:?}")))?,
        (None, Some(b)) => b.init,
        (None, None) => InitVariant::InitG,
    };
    let max_keystream_log2 = match (take(&mut fields, "max_keystream_log2"), &base) {
        (Some((_, v)), _) if v.eq_ignore_ascii_case("none") => None,
        (Some((l, v)), _) => Some(parse_num(l, &v)?),
        (None, Some(b)) => b.max_keystream_log2,
        (None, None) => Some(64),
    };
    let legacy = match (take(&mut fields, "legacy"), &base) {
        (Some((l, v)), _) => parse_bool(l, &v)?,
        (None, Some(b)) => b.legacy,
        (None, None) => false,
    };
    let name = match (take(&mut fields, "name"), &base) {
        (Some((_, v)), _) => v,
        (None, Some(b)) => format!("{}-custom", b.name),
        (None, None) => "custom".to_string(),
    };
    if let Some((k, (l, _))) = fields.into_iter().min_by_key(|(_, (l, _))| *l) {
        return Err(err(l, format!("unknown field {k}")));
    }
    Ok(ParamSpec {
        name,
        kappa,
        v,
        kappa1,
        kappa2,
        tau,
        a,
        s0,
        s1,
        p0,
        p1,
        q0,
        q1,
        g,
        h,
        psi,
        assembly,
        delta,
        pad,
        init,
        max_keystream_log2,
        errata: base.map(|b| b.errata).unwrap_or_default(),
        legacy,
    })
}

/// Writes a spec in the syntax `parse_config` reads.
pub fn render_config(p: &ParamSpec) -> String {
    let list = |v: &[usize]| format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let func = |b: &FunctionBundle| match lookup(&b.name) {
        Ok(r) if r.anf == b.anf => b.name.clone(),
        _ => b.anf.to_string(),
    };
    let mut s = String::new();
    let mut kv = |k: &str, v: String| s.push_str(&format!("{k}: {v}\n"));
    kv("name", p.name.clone());
    kv("kappa", p.kappa.to_string());
    kv("v", p.v.to_string());
    kv("kappa1", p.kappa1.to_string());
    kv("kappa2", p.kappa2.to_string());
    kv("tau", list(&p.tau));
    kv("A", list(&p.a));
    kv("S0", list(&p.s0));
    kv("S1", list(&p.s1));
    kv("P0", list(&p.p0));
    kv("P1", list(&p.p1));
    kv("Q0", list(&p.q0));
    kv("Q1", list(&p.q1));
    kv("g", func(&p.g));
    kv("h", func(&p.h));
    kv("psi", list(&p.psi));
    kv("assembly", if p.assembly == Assembly::NFirst { "n-first" } else { "l-first" }.into());
    kv("delta", p.delta.to_string());
    kv("pad", p.pad.iter().map(|&b| if b { '1' } else { '0' }).collect());
    kv("init", p.init.to_string());
    kv("max_keystream_log2", p.max_keystream_log2.map_or("none".into(), |x| x.to_string()));
    kv("legacy", p.legacy.to_string());
    s
}
