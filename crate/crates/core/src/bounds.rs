//! Closed-form upper bounds, conjectured asymptotic values and
//! construction lower bounds for ρ(H, m).

use serde::Serialize;
use thiserror::Error;

use crate::blowup::{optimize_part_sizes, BlowupError, Construction};
use crate::canon::automorphism_order;
use crate::family::Family;
use crate::fractional::alpha_f;
use crate::graph::Graph;
use crate::graph6::write_graph6;

/// Relative and absolute slack used when comparing exact integers with
/// floating-point bounds.
pub const FLOAT_SLACK: f64 = 1e-9;

pub fn within_upper(value: f64, upper: f64) -> bool {
    value <= upper + FLOAT_SLACK * upper.abs().max(1.0)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("{bound}: {detail}")]
    Range { bound: &'static str, detail: String },
    #[error(transparent)]
    Construction(#[from] BlowupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Valid for every m.
    Upper,
    /// Exact value, valid for every m.
    Exact,
    /// Leading term of a proven lower bound; holds only asymptotically.
    AsymptoticLower,
    /// Conjectured asymptotic value.
    Conjectured,
    /// Count of an explicit construction; valid for this m.
    Construction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub family: String,
    pub m: u64,
    pub provenance: &'static str,
    pub kind: BoundKind,
    pub value: f64,
}

pub const GENERIC_UPPER: &str = "generic upper 2^(n/2) |Aut(H)|^-1 m^alpha_f";
pub const GENERIC_LOWER: &str = "generic lower |E(H)|^-alpha_f m^alpha_f";
pub const EVEN_PATH_UPPER: &str = "even path upper m^l / (2 (l-1)^(l-1))";
pub const ODD_PATH_UPPER: &str = "odd path upper m^(l+1) / (4 l^l)";
pub const C4_UPPER: &str = "C4 upper m^2/4";
pub const C6_UPPER: &str = "C6 upper 3 (m/6)^3";
pub const EVEN_CYCLE_UPPER: &str = "even cycle upper (m/2l)^l (1 + 1/(l-1))^(l-1)";
pub const ODD_CYCLE_UPPER: &str = "odd cycle upper via Shearer";
pub const P3_EXACT: &str = "P3 exact binom(m,2), attained by a star";
pub const CYCLE_BLOWUP: &str = "balanced cycle blow-up (m/k)^(k/2)";
pub const EVEN_PATH_BLOWUP: &str = "C_(k+1) blow-up (k+1) (m/(k+1))^(k/2)";
pub const ODD_PATH_BLOWUP: &str = "unbalanced path blow-up 4 (m/(k+1))^((k+1)/2)";
pub const CONSTRUCTION: &str = "best blow-up found by the part-size optimiser";

fn range(bound: &'static str, detail: String) -> BoundError {
    BoundError::Range { bound, detail }
}

pub fn generic_upper(h: &Graph, m: u64) -> Result<f64, BoundError> {
    if let Some(&v) = h.isolated_vertices().first() {
        return Err(range(GENERIC_UPPER, format!("pattern has isolated vertex {v}")));
    }
    let n = h.n() as f64;
    let aut = automorphism_order(h) as f64;
    let af = alpha_f(h).to_f64();
    Ok(2f64.powf(n / 2.0) / aut * (m as f64).powf(af))
}

pub fn generic_lower(h: &Graph, m: u64) -> Result<f64, BoundError> {
    if let Some(&v) = h.isolated_vertices().first() {
        return Err(range(GENERIC_LOWER, format!("pattern has isolated vertex {v}")));
    }
    let e = h.edge_count() as f64;
    let af = alpha_f(h).to_f64();
    Ok((m as f64 / e).powf(af))
}

/// Upper bound for `P_{2l}`, `l >= 2`.
pub fn even_path_upper(l: usize, m: u64) -> Result<f64, BoundError> {
    if l < 2 {
        return Err(range(EVEN_PATH_UPPER, format!("needs l >= 2, got l = {l}")));
    }
    let l = l as f64;
    Ok((m as f64).powf(l) / (2.0 * (l - 1.0).powf(l - 1.0)))
}

/// Upper bound for `P_{2l+1}`, `l >= 2`.
pub fn odd_path_upper(l: usize, m: u64) -> Result<f64, BoundError> {
    if l < 2 {
        return Err(range(
            ODD_PATH_UPPER,
            format!("needs l >= 2, got l = {l} (P3 has its own exact value)"),
        ));
    }
    let l = l as f64;
    Ok((m as f64).powf(l + 1.0) / (4.0 * l.powf(l)))
}

pub fn p3_exact(m: u64) -> f64 {
    let m = m as f64;
    m * (m - 1.0) / 2.0
}

pub fn c4_upper(m: u64) -> f64 {
    (m as f64).powi(2) / 4.0
}

pub fn c6_upper(m: u64) -> f64 {
    3.0 * (m as f64 / 6.0).powi(3)
}

/// Upper bound for `C_{2l}`, `l >= 4`.
pub fn even_cycle_upper(l: usize, m: u64) -> Result<f64, BoundError> {
    if l < 4 {
        return Err(range(EVEN_CYCLE_UPPER, format!("needs l >= 4, got l = {l}")));
    }
    let lf = l as f64;
    Ok((m as f64 / (2.0 * lf)).powf(lf) * (1.0 + 1.0 / (lf - 1.0)).powf(lf - 1.0))
}

/// The factor multiplying `(m/(2l+1))^{(2l+1)/2}` in the odd-cycle bound.
pub fn odd_cycle_factor(l: usize) -> Result<f64, BoundError> {
    if l < 2 {
        return Err(range(ODD_CYCLE_UPPER, format!("needs l >= 2, got l = {l}")));
    }
    let lf = l as f64;
    let k = 2.0 * lf + 1.0;
    Ok(k.powf(lf - 0.5) / (2.0 * (lf - 1.0).powf((lf - 1.0) * k / (2.0 * lf))))
}

/// Upper bound for `C_{2l+1}`, `l >= 2`.
pub fn odd_cycle_upper(l: usize, m: u64) -> Result<f64, BoundError> {
    let k = 2.0 * l as f64 + 1.0;
    Ok(odd_cycle_factor(l)? * (m as f64 / k).powf(k / 2.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub pattern: String,
    pub m: u64,
    pub bounds: Vec<BoundValue>,
    pub effective_upper: f64,
    pub effective_upper_provenance: &'static str,
    pub construction: Construction,
}

impl BoundReport {
    pub fn construction_lower(&self) -> u128 {
        self.construction.count
    }
}

/// Pattern name: `P<k>`/`C<k>` when recognised, graph6 otherwise.
pub fn pattern_name(h: &Graph) -> String {
    match Family::recognise(h) {
        Some(f) => f.to_string(),
        None => write_graph6(h).unwrap_or_else(|_| "?".into()),
    }
}

/// Upper bounds applicable to `h` at budget `m`, as (provenance, value).
pub fn upper_bounds(h: &Graph, m: u64) -> Result<Vec<(&'static str, BoundKind, f64)>, BoundError> {
    let mut out = vec![(GENERIC_UPPER, BoundKind::Upper, generic_upper(h, m)?)];
    match Family::recognise(h) {
        Some(Family::Path(3)) => out.push((P3_EXACT, BoundKind::Exact, p3_exact(m))),
        Some(Family::Path(k)) if k >= 4 && k % 2 == 0 => {
            out.push((EVEN_PATH_UPPER, BoundKind::Upper, even_path_upper(k / 2, m)?))
        }
        Some(Family::Path(k)) if k >= 5 => {
            out.push((ODD_PATH_UPPER, BoundKind::Upper, odd_path_upper(k / 2, m)?))
        }
        Some(Family::Cycle(4)) => out.push((C4_UPPER, BoundKind::Upper, c4_upper(m))),
        Some(Family::Cycle(6)) => out.push((C6_UPPER, BoundKind::Upper, c6_upper(m))),
        Some(Family::Cycle(k)) if k >= 8 && k % 2 == 0 => {
            out.push((EVEN_CYCLE_UPPER, BoundKind::Upper, even_cycle_upper(k / 2, m)?))
        }
        Some(Family::Cycle(k)) if k >= 5 && k % 2 == 1 => {
            out.push((ODD_CYCLE_UPPER, BoundKind::Upper, odd_cycle_upper(k / 2, m)?))
        }
        _ => {}
    }
    Ok(out)
}

pub fn bound_eval(h: &Graph, m: u64) -> Result<BoundReport, BoundError> {
    let name = pattern_name(h);
    let mut bounds: Vec<BoundValue> = Vec::new();
    let row = |provenance, kind, value| BoundValue {
        family: name.clone(),
        m,
        provenance,
        kind,
        value,
    };
    let uppers = upper_bounds(h, m)?;
    for &(p, kind, v) in &uppers {
        bounds.push(row(p, kind, v));
    }
    bounds.push(row(GENERIC_LOWER, BoundKind::AsymptoticLower, generic_lower(h, m)?));
    let mf = m as f64;
    match Family::recognise(h) {
        Some(Family::Cycle(k)) if k >= 4 => {
            let v = (mf / k as f64).powf(k as f64 / 2.0);
            let kind = if k == 4 {
                BoundKind::AsymptoticLower
            } else {
                BoundKind::Conjectured
            };
            bounds.push(row(CYCLE_BLOWUP, kind, if k == 4 { c4_upper(m) } else { v }));
        }
        Some(Family::Path(k)) if k >= 4 && k % 2 == 0 => {
            let kk = k as f64 + 1.0;
            bounds.push(row(
                EVEN_PATH_BLOWUP,
                BoundKind::Conjectured,
                kk * (mf / kk).powf(k as f64 / 2.0),
            ));
        }
        Some(Family::Path(k)) if k >= 5 => {
            let kk = k as f64 + 1.0;
            bounds.push(row(
                ODD_PATH_BLOWUP,
                BoundKind::Conjectured,
                4.0 * (mf / kk).powf(kk / 2.0),
            ));
        }
        _ => {}
    }
    let construction = optimize_part_sizes(h, m)?;
    bounds.push(row(CONSTRUCTION, BoundKind::Construction, construction.count as f64));
    let (effective_upper_provenance, _, effective_upper) = uppers
        .iter()
        .copied()
        .fold(None, |best: Option<(&'static str, BoundKind, f64)>, u| match best {
            Some(b) if b.2 <= u.2 => Some(b),
            _ => Some(u),
        })
        .expect("the generic bound always applies");
    Ok(BoundReport {
        pattern: name,
        m,
        bounds,
        effective_upper,
        effective_upper_provenance,
        construction,
    })
}
