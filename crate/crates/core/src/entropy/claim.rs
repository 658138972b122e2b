//! Per-edge ledgers of the sums `S_j^±` around an induced even cycle.
//!
//! For the cycle `v_0 ... v_{2l-1}` (positions mod `2l`) let
//! `f_j = (v_j, v_{j+1})` and `r_j = (v_{j+1}, v_j)`. Then
//! `α^+_{j,i}` counts extensions of `(f_j, f_{j+2}, ..., f_{j+2(i-1)})` and
//! `α^-_{j,i}` of `(r_j, r_{j-2}, ..., r_{j-2(i-1)})`, by path extension for
//! `i <= l-2` and by cycle closing for `i = l-1`. With `α(f_j)` the path
//! extensions of the single oriented edge,
//! `S_j^+ = α(f_j)/2 + Σ_{i=2}^{l-1} α^+_{j,i}` and
//! `S_j^- = α(r_j)/2 + Σ_{i=2}^{l-1} α^-_{j,i}`.
//! The symmetric variants use `(α(f_j) + α(r_j))/2` as the first term in
//! both sums.
//!
//! Every count is the size of an edge set, so each host edge contributes a
//! row of half-units per `j`; the rows add back up to the sums.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::EntropyError;
use crate::fractional::HalfInt;
use crate::graph::Graph;
use crate::tuples::{extensions, key, ExtendMode, OrientedEdge, OrientedEdgeTuple};

/// Contributions of one host edge, in half-units, indexed by `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeRow {
    pub edge: (usize, usize),
    /// Cycle positions whose vertex is adjacent to an endpoint of the edge.
    pub j_set: Vec<usize>,
    pub plus: Vec<HalfInt>,
    pub minus: Vec<HalfInt>,
    pub plus_symmetric: Vec<HalfInt>,
    pub minus_symmetric: Vec<HalfInt>,
    pub plus_caps: Vec<HalfInt>,
    pub minus_caps: Vec<HalfInt>,
    /// Some symmetric contribution exceeds its per-position cap.
    pub exceeds_cap: bool,
    /// The symmetric row total exceeds `l` in one of the two directions.
    pub exceeds_l: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimLedger {
    pub cycle: Vec<usize>,
    pub l: usize,
    pub m: u64,
    pub alpha_forward: Vec<u64>,
    pub alpha_reverse: Vec<u64>,
    /// `alpha_plus[j][i-2] = α^+_{j,i}`.
    pub alpha_plus: Vec<Vec<u64>>,
    pub alpha_minus: Vec<Vec<u64>>,
    pub s_plus: Vec<HalfInt>,
    pub s_minus: Vec<HalfInt>,
    pub total_plus: HalfInt,
    pub total_minus: HalfInt,
    pub total_plus_symmetric: HalfInt,
    pub total_minus_symmetric: HalfInt,
    /// `m l`.
    pub budget: u64,
    /// `(l+1) m`.
    pub fallback_budget: u64,
    pub within_budget: bool,
    pub within_fallback: bool,
    pub within_budget_symmetric: bool,
    pub within_fallback_symmetric: bool,
    /// For `l = 3`: whether the symmetric plus total exceeds `3m`.
    pub exceeds_3m: Option<bool>,
    pub rows: Vec<EdgeRow>,
    /// Rows sum back to `S_j^±` for every `j`, in all four variants.
    pub rows_consistent: bool,
    pub rows_exceeding_cap: usize,
    pub rows_exceeding_l: usize,
    /// Distinct `J_e` values shared by rows with different contributions.
    pub j_sets_with_divergent_rows: usize,
}

impl ClaimLedger {
    /// One CSV row per host edge with one column per `S_j^+` and `S_j^-`.
    pub fn to_csv(&self) -> String {
        let k = 2 * self.l;
        let mut out = String::from("edge,j_set");
        for j in 0..k {
            out += &format!(",plus_{j}");
        }
        for j in 0..k {
            out += &format!(",minus_{j}");
        }
        out += ",exceeds_cap\n";
        for row in &self.rows {
            let js: Vec<String> = row.j_set.iter().map(|j| j.to_string()).collect();
            out += &format!("{}-{},{}", row.edge.0, row.edge.1, js.join(" "));
            for v in row.plus.iter().chain(&row.minus) {
                out += &format!(",{v}");
            }
            out += &format!(",{}\n", row.exceeds_cap);
        }
        out
    }

    pub fn pass(&self) -> bool {
        let budget_ok = if self.l >= 4 {
            self.within_budget
        } else {
            self.within_fallback
        };
        budget_ok && self.rows_consistent
    }
}

fn check_cycle(g: &Graph, cycle: &[usize]) -> Result<usize, EntropyError> {
    let k = cycle.len();
    if k % 2 == 1 || k < 6 {
        return Err(EntropyError::NotInducedCycle(format!(
            "need an even cycle with at least 6 vertices, got length {k}"
        )));
    }
    let mut mask = 0u64;
    for &v in cycle {
        if v >= g.n() || mask >> v & 1 == 1 {
            return Err(EntropyError::NotInducedCycle(format!("bad or repeated vertex {v}")));
        }
        mask |= 1 << v;
    }
    for (i, &v) in cycle.iter().enumerate() {
        let want = 1u64 << cycle[(i + 1) % k] | 1u64 << cycle[(i + k - 1) % k];
        if g.neighbors(v) & mask != want {
            return Err(EntropyError::NotInducedCycle(format!(
                "vertex {v} does not see exactly its two cycle neighbours"
            )));
        }
    }
    Ok(k / 2)
}

/// Extension edge sets keyed by unoriented edge.
fn ext_set(g: &Graph, t: Vec<OrientedEdge>, mode: ExtendMode) -> Result<BTreeSet<(usize, usize)>, EntropyError> {
    Ok(extensions(g, &OrientedEdgeTuple::new(t), mode)?
        .into_iter()
        .map(|(a, b)| key(a, b))
        .collect())
}

/// Per-position caps for the plus direction, in half-units, given the set
/// of adjacent positions.
fn plus_caps(j_set: &BTreeSet<usize>, k: usize) -> Vec<HalfInt> {
    let l = k / 2;
    let has = |p: usize| j_set.contains(&(p % k));
    (0..k)
        .map(|j| {
            let halves = match (has(j), has(j + 1)) {
                (true, true) => 0,
                (true, false) => {
                    let gap = (j + 2..=j + 2 * l - 4).all(|p| !has(p));
                    if gap && has(j + k - 3) {
                        3
                    } else {
                        1
                    }
                }
                (false, true) => 1,
                (false, false) => match (2..k).find(|&d| has(j + d)) {
                    Some(d) if d % 2 == 1 => 2,
                    _ => 0,
                },
            };
            HalfInt(halves)
        })
        .collect()
}

/// Build the ledger for the induced cycle `cycle` in `g`.
pub fn claim1_check(g: &Graph, cycle: &[usize]) -> Result<ClaimLedger, EntropyError> {
    let l = check_cycle(g, cycle)?;
    let k = 2 * l;
    let m = g.edge_count() as u64;
    let v = |p: usize| cycle[p % k];
    let fwd = |j: usize| (v(j), v(j + 1));
    let rev = |j: usize| (v(j + 1), v(j));
    let mode = |i: usize| {
        if i == l - 1 {
            ExtendMode::CycleClose(k)
        } else {
            ExtendMode::PathExtend
        }
    };

    let mut first_fwd = Vec::with_capacity(k);
    let mut first_rev = Vec::with_capacity(k);
    let mut plus_sets = Vec::with_capacity(k);
    let mut minus_sets = Vec::with_capacity(k);
    for j in 0..k {
        first_fwd.push(ext_set(g, vec![fwd(j)], ExtendMode::PathExtend)?);
        first_rev.push(ext_set(g, vec![rev(j)], ExtendMode::PathExtend)?);
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for i in 2..l {
            let tp: Vec<_> = (0..i).map(|s| fwd(j + 2 * s)).collect();
            let tm: Vec<_> = (0..i).map(|s| rev(j + k - 2 * s)).collect();
            plus.push(ext_set(g, tp, mode(i))?);
            minus.push(ext_set(g, tm, mode(i))?);
        }
        plus_sets.push(plus);
        minus_sets.push(minus);
    }

    let half = |first: u64, rest: &[BTreeSet<(usize, usize)>]| {
        HalfInt(first + 2 * rest.iter().map(|s| s.len() as u64).sum::<u64>())
    };
    let s_plus: Vec<HalfInt> = (0..k).map(|j| half(first_fwd[j].len() as u64, &plus_sets[j])).collect();
    let s_minus: Vec<HalfInt> = (0..k).map(|j| half(first_rev[j].len() as u64, &minus_sets[j])).collect();
    let sym = |j: usize, rest: &[BTreeSet<(usize, usize)>]| {
        half((first_fwd[j].len() + first_rev[j].len()) as u64, rest)
    };
    let s_plus_sym: Vec<HalfInt> = (0..k).map(|j| sym(j, &plus_sets[j])).collect();
    let s_minus_sym: Vec<HalfInt> = (0..k).map(|j| sym(j, &minus_sets[j])).collect();
    let total = |s: &[HalfInt]| HalfInt(s.iter().map(|h| h.0).sum());

    let mut rows = Vec::new();
    for (a, b) in g.edges() {
        let e = (a, b);
        let seen = g.neighbors(a) | g.neighbors(b);
        let j_set: BTreeSet<usize> = (0..k).filter(|&p| seen >> v(p) & 1 == 1).collect();
        let count = |sets: &[BTreeSet<(usize, usize)>]| 2 * sets.iter().filter(|s| s.contains(&e)).count() as u64;
        let f = |j: usize| first_fwd[j].contains(&e) as u64;
        let r = |j: usize| first_rev[j].contains(&e) as u64;
        let plus: Vec<HalfInt> = (0..k).map(|j| HalfInt(f(j) + count(&plus_sets[j]))).collect();
        let minus: Vec<HalfInt> = (0..k).map(|j| HalfInt(r(j) + count(&minus_sets[j]))).collect();
        let plus_symmetric: Vec<HalfInt> = (0..k).map(|j| HalfInt(f(j) + r(j) + count(&plus_sets[j]))).collect();
        let minus_symmetric: Vec<HalfInt> =
            (0..k).map(|j| HalfInt(f(j) + r(j) + count(&minus_sets[j]))).collect();
        let plus_caps = plus_caps(&j_set, k);
        // The minus direction is the plus direction on the reversed cycle
        // w_t = v_{-t}, where r_j becomes the forward edge at t = -j-1.
        let mirrored: BTreeSet<usize> = j_set.iter().map(|&p| (k - p) % k).collect();
        let mirror_caps = self::plus_caps(&mirrored, k);
        let minus_caps: Vec<HalfInt> = (0..k).map(|j| mirror_caps[(2 * k - j - 1) % k]).collect();
        let exceeds_cap = (0..k).any(|j| plus_symmetric[j] > plus_caps[j] || minus_symmetric[j] > minus_caps[j]);
        let exceeds_l = total(&plus_symmetric).0 > 2 * l as u64 || total(&minus_symmetric).0 > 2 * l as u64;
        rows.push(EdgeRow {
            edge: e,
            j_set: j_set.into_iter().collect(),
            plus,
            minus,
            plus_symmetric,
            minus_symmetric,
            plus_caps,
            minus_caps,
            exceeds_cap,
            exceeds_l,
        });
    }

    let column_sums = |pick: fn(&EdgeRow) -> &Vec<HalfInt>| -> Vec<HalfInt> {
        (0..k).map(|j| HalfInt(rows.iter().map(|r| pick(r)[j].0).sum())).collect()
    };
    let rows_consistent = column_sums(|r| &r.plus) == s_plus
        && column_sums(|r| &r.minus) == s_minus
        && column_sums(|r| &r.plus_symmetric) == s_plus_sym
        && column_sums(|r| &r.minus_symmetric) == s_minus_sym;

    let mut by_j: BTreeMap<&[usize], BTreeSet<(&[HalfInt], &[HalfInt])>> = BTreeMap::new();
    for row in &rows {
        by_j.entry(&row.j_set)
            .or_default()
            .insert((&row.plus_symmetric, &row.minus_symmetric));
    }
    let j_sets_with_divergent_rows = by_j.values().filter(|s| s.len() > 1).count();

    let (tp, tm) = (total(&s_plus), total(&s_minus));
    let (tps, tms) = (total(&s_plus_sym), total(&s_minus_sym));
    let budget = m * l as u64;
    let fallback_budget = m * (l as u64 + 1);
    let within = |t: HalfInt, b: u64| t.0 <= 2 * b;
    Ok(ClaimLedger {
        cycle: cycle.to_vec(),
        l,
        m,
        alpha_forward: first_fwd.iter().map(|s| s.len() as u64).collect(),
        alpha_reverse: first_rev.iter().map(|s| s.len() as u64).collect(),
        alpha_plus: plus_sets.iter().map(|v| v.iter().map(|s| s.len() as u64).collect()).collect(),
        alpha_minus: minus_sets.iter().map(|v| v.iter().map(|s| s.len() as u64).collect()).collect(),
        within_budget: within(tp, budget) && within(tm, budget),
        within_fallback: within(tp, fallback_budget) && within(tm, fallback_budget),
        within_budget_symmetric: within(tps, budget) && within(tms, budget),
        within_fallback_symmetric: within(tps, fallback_budget) && within(tms, fallback_budget),
        exceeds_3m: (l == 3).then(|| tps.0 > 6 * m),
        rows_exceeding_cap: rows.iter().filter(|r| r.exceeds_cap).count(),
        rows_exceeding_l: rows.iter().filter(|r| r.exceeds_l).count(),
        s_plus,
        s_minus,
        total_plus: tp,
        total_minus: tm,
        total_plus_symmetric: tps,
        total_minus_symmetric: tms,
        budget,
        fallback_budget,
        rows,
        rows_consistent,
        j_sets_with_divergent_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{blow_up, BlowupSpec};

    #[test]
    fn c8_alone() {
        let g = Graph::cycle(8);
        let ledger = claim1_check(&g, &(0..8).collect::<Vec<_>>()).unwrap();
        assert!(ledger.s_plus.iter().all(|&s| s == HalfInt(5)));
        assert!(ledger.s_minus.iter().all(|&s| s == HalfInt(5)));
        assert_eq!(ledger.total_plus, HalfInt::from_int(20));
        assert_eq!(ledger.total_plus_symmetric, HalfInt::from_int(24));
        assert_eq!(ledger.budget, 32);
        assert!(ledger.pass() && ledger.within_budget_symmetric);
        assert_eq!(ledger.rows_exceeding_cap, 0);
        assert_eq!(ledger.rows_exceeding_l, 0);
    }

    #[test]
    fn c6_alone() {
        let g = Graph::cycle(6);
        let ledger = claim1_check(&g, &(0..6).collect::<Vec<_>>()).unwrap();
        assert!(ledger.s_plus.iter().all(|&s| s == HalfInt(3)));
        assert_eq!(ledger.total_plus, HalfInt::from_int(9));
        assert_eq!(ledger.fallback_budget, 24);
        assert!(ledger.pass());
        assert_eq!(ledger.exceeds_3m, Some(false));
    }

    #[test]
    fn c8_blowup() {
        let spec = BlowupSpec::new(Graph::cycle(8), vec![2, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        let g = blow_up(&spec).unwrap();
        // Vertices 0 and 1 form the doubled part; 2..=8 the others.
        let ledger = claim1_check(&g, &[0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert!(ledger.pass());
        assert!(ledger.within_budget_symmetric);
        assert!(ledger.rows_consistent);
    }

    #[test]
    fn rejects_non_cycles() {
        let g = Graph::cycle(8);
        assert!(claim1_check(&g, &[0, 1, 2, 3, 4, 5]).is_err());
        assert!(claim1_check(&Graph::complete(6), &[0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn csv_has_one_line_per_edge() {
        let g = Graph::cycle(6);
        let ledger = claim1_check(&g, &(0..6).collect::<Vec<_>>()).unwrap();
        let csv = ledger.to_csv();
        assert_eq!(csv.lines().count(), 1 + g.edge_count());
        assert!(csv.starts_with("edge,j_set,plus_0"));
    }
}
