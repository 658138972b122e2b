//! `construction <= ρ(H, m) <= min upper` checks for one exact result.

use serde::Serialize;

use crate::bounds::{bound_eval, within_upper, BoundError, BoundKind, CONSTRUCTION};
use crate::graph::Graph;
use crate::search::SearchResult;

#[derive(Debug, Clone, Serialize)]
pub struct UpperCheck {
    pub provenance: &'static str,
    pub value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub pattern: String,
    pub m: u64,
    #[serde(serialize_with = "crate::blowup::as_string")]
    pub lower: u128,
    pub lower_sizes: Vec<u64>,
    pub rho: u64,
    pub upper: f64,
    pub upper_provenance: &'static str,
    pub uppers: Vec<UpperCheck>,
    /// `lower / rho`, or 1 when both are zero.
    pub lower_ratio: f64,
    /// `upper / rho`; infinite when `rho = 0`.
    pub upper_ratio: f64,
    /// One line per violated inequality, naming the bound.
    pub violations: Vec<String>,
    pub pass: bool,
}

pub fn verify_sandwich(h: &Graph, result: &SearchResult) -> Result<SandwichReport, BoundError> {
    let m = result.m as u64;
    let report = bound_eval(h, m)?;
    let rho = result.rho;
    let lower = report.construction_lower();
    let mut violations = Vec::new();
    if lower > rho as u128 {
        violations.push(format!("{CONSTRUCTION}: {lower} > rho = {rho}"));
    }
    let uppers: Vec<UpperCheck> = report
        .bounds
        .iter()
        .filter(|b| matches!(b.kind, BoundKind::Upper | BoundKind::Exact))
        .map(|b| {
            let holds = within_upper(rho as f64, b.value);
            if !holds {
                violations.push(format!("{}: rho = {rho} > {}", b.provenance, b.value));
            }
            UpperCheck {
                provenance: b.provenance,
                value: b.value,
                holds,
            }
        })
        .collect();
    let ratio = |x: f64| {
        if rho == 0 {
            if x == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            x / rho as f64
        }
    };
    Ok(SandwichReport {
        pattern: report.pattern.clone(),
        m,
        lower,
        lower_sizes: report.construction.spec.sizes.clone(),
        rho,
        upper: report.effective_upper,
        upper_provenance: report.effective_upper_provenance,
        uppers,
        lower_ratio: ratio(lower as f64),
        upper_ratio: ratio(report.effective_upper),
        pass: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{rho_exact, SearchConfig};

    #[test]
    fn p3_is_exact() {
        let h = Graph::path(3);
        let r = rho_exact(&h, 6, &SearchConfig::default()).unwrap();
        let s = verify_sandwich(&h, &r).unwrap();
        assert_eq!((s.lower, s.rho, s.upper), (15, 15, 15.0));
        assert!(s.pass);
    }

    #[test]
    fn c5_at_seven() {
        let h = Graph::cycle(5);
        let r = rho_exact(&h, 7, &SearchConfig::default()).unwrap();
        let s = verify_sandwich(&h, &r).unwrap();
        assert_eq!(s.lower, 2);
        assert!(s.pass, "{:?}", s.violations);
    }

    #[test]
    fn detects_a_violation() {
        let h = Graph::cycle(4);
        let mut r = rho_exact(&h, 8, &SearchConfig::default()).unwrap();
        r.rho = 17;
        let s = verify_sandwich(&h, &r).unwrap();
        assert!(!s.pass);
        assert!(s.violations.iter().any(|v| v.starts_with("C4 upper")));
    }
}
