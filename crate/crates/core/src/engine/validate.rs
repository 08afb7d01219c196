use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::params::{structural_problems, taps_from_tau, ParamSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Warn => "warn",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    /// Tap condition number 1..=6, or `None` for the extra checks.
    pub condition: Option<u8>,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub name: String,
    pub strict: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn condition(&self, k: u8) -> Option<&Check> {
        self.checks.iter().find(|c| c.condition == Some(k))
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Warn)
    }

    /// "conditions: 6/6 pass" style summary over conditions 1..6.
    pub fn summary(&self) -> String {
        let conds: Vec<_> = self.checks.iter().filter(|c| c.condition.is_some()).collect();
        let pass = conds.iter().filter(|c| c.status == Status::Pass).count();
        let warn = conds.iter().filter(|c| c.status == Status::Warn).count();
        let mut s = format!("conditions: {pass}/{} pass", conds.len());
        if warn > 0 {
            s.push_str(&format!(", {warn} warn"));
        }
        s
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance: {}", self.name)?;
        writeln!(f, "mode: {}", if self.strict { "strict" } else { "legacy" })?;
        for c in &self.checks {
            let label = match c.condition {
                Some(k) => format!("condition {k}"),
                None => c.name.to_string(),
            };
            if c.detail.is_empty() {
                writeln!(f, "{label}: {}", c.status)?;
            } else {
                writeln!(f, "{label}: {} ({})", c.status, c.detail)?;
            }
        }
        writeln!(f, "{}", self.summary())?;
        write!(f, "result: {}", if self.ok() { "pass" } else { "FAIL" })
    }
}

fn dup_report(lists: &[(&str, &[usize])]) -> Vec<String> {
    let mut owners: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (name, list) in lists {
        for &i in *list {
            owners.entry(i).or_default().push(name);
        }
    }
    owners
        .into_iter()
        .filter(|(_, o)| o.len() > 1)
        .map(|(i, o)| format!("{i} in {}", o.join(",")))
        .collect()
}

fn check(condition: Option<u8>, name: &'static str, ok: bool, soft: bool, detail: String) -> Check {
    let status = match (ok, soft) {
        (true, _) => Status::Pass,
        (false, true) => Status::Warn,
        (false, false) => Status::Fail,
    };
    Check { condition, name, status, detail: if ok { String::new() } else { detail } }
}

/// Checks the six tap conditions plus structure and invertibility
/// preconditions. Legacy mode downgrades conditions 1 and 6 to warnings,
/// since Grain v1 and Grain-128a predate them.
pub fn validate_params(p: &ParamSpec, strict: bool) -> ValidationReport {
    let soft = !strict;
    let mut checks = Vec::new();

    let structure = structural_problems(p);
    checks.push(check(None, "structure", structure.is_empty(), false, structure.join("; ")));

    let n_dups = dup_report(&[("S0", &p.s0), ("S1", &p.s1), ("P0", &p.p0), ("P1", &p.p1)]);
    let l_dups = dup_report(&[("A", &p.a), ("Q0", &p.q0), ("Q1", &p.q1)]);
    let dups: Vec<String> = n_dups.iter().map(|d| format!("N {d}")).chain(l_dups.iter().map(|d| format!("L {d}"))).collect();
    checks.push(check(Some(1), "disjoint taps", dups.is_empty(), soft, format!("overlap: {}", dups.join("; "))));

    checks.push(check(Some(2), "n0 even", p.s0.len().is_multiple_of(2), false, format!("n0 = {}", p.s0.len())));
    checks.push(check(Some(3), "0 in S1", p.s1.contains(&0), false, "0 missing from S1".into()));

    let zero_in: Vec<&str> = [("P0", &p.p0), ("P1", &p.p1), ("Q0", &p.q0), ("Q1", &p.q1)]
        .into_iter()
        .filter(|(_, l)| l.contains(&0))
        .map(|(n, _)| n)
        .collect();
    checks.push(check(Some(4), "0 not in output taps", zero_in.is_empty(), false, format!("0 in {}", zero_in.join(","))));

    let n_max = [&p.s0, &p.s1, &p.p0, &p.p1].iter().flat_map(|l| l.iter()).copied().max().unwrap_or(0);
    let l_max = [&p.a, &p.q0, &p.q1].iter().flat_map(|l| l.iter()).copied().max().unwrap_or(0);
    let n_lim = p.kappa1.saturating_sub(p.delta);
    let l_lim = p.kappa2.saturating_sub(p.delta);
    checks.push(check(
        Some(5),
        "taps within kappa - delta",
        n_max <= n_lim && l_max <= l_lim,
        false,
        format!("max N tap {n_max} (limit {n_lim}), max L tap {l_max} (limit {l_lim})"),
    ));

    let sums: BTreeSet<usize> = p.p1.iter().flat_map(|a| p.s0.iter().map(move |b| a + b)).collect();
    let want = p.p1.len() * p.s0.len();
    checks.push(check(
        Some(6),
        "#(P1+S0) = #P1 * #S0",
        sums.len() == want,
        soft,
        format!("{} distinct sums, want {want}", sums.len()),
    ));

    let inv_ok = !p.s0.contains(&0) && p.a.contains(&0);
    checks.push(check(None, "invertibility", inv_ok, false, "need 0 not in S0 and 0 in A".into()));

    let derived = taps_from_tau(p.kappa2, &p.tau);
    let mut a_sorted = p.a.clone();
    a_sorted.sort_unstable();
    checks.push(check(None, "A from tau", derived == a_sorted, false, format!("tau gives {derived:?}")));

    ValidationReport { name: p.name.clone(), strict, checks }
}
