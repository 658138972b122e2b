//! Fractional independence number and half-integral optimal weightings.
//!
//! The vertex LP `max Σ w(v)` subject to `w(u) + w(v) <= 1` on edges has a
//! half-integral optimum, and its value is `n - ν/2` where `ν` is the
//! maximum matching size of the bipartite double cover. All values here
//! are kept in half-units.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{bits, low_mask, Graph};
use crate::matching::{matching_size, max_matching};

/// A nonnegative multiple of 1/2, stored as a count of halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(pub u64);

impl HalfInt {
    pub fn from_int(x: u64) -> Self {
        HalfInt(2 * x)
    }

    pub fn halves(self) -> u64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FractionalError {
    #[error("brute force limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub const BRUTE_FORCE_LIMIT: usize = 14;

/// α_f(h) via the bipartite double cover.
pub fn alpha_f(h: &Graph) -> HalfInt {
    let nu = matching_size(h.adjacency()) as u64;
    HalfInt(2 * h.n() as u64 - nu)
}

/// α_f(h) by exhaustive search over `{0, 1/2, 1}` weightings.
pub fn alpha_f_bruteforce(h: &Graph) -> Result<HalfInt, FractionalError> {
    let n = h.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(FractionalError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut w = vec![0u8; n];
    let mut best = 0u64;
    brute(h, 0, 0, &mut w, &mut best);
    Ok(HalfInt(best))
}

fn brute(h: &Graph, v: usize, total: u64, w: &mut [u8], best: &mut u64) {
    let n = h.n();
    if total + 2 * (n - v) as u64 <= *best {
        return;
    }
    if v == n {
        *best = total;
        return;
    }
    let cap = bits(h.neighbors(v) & ((1u64 << v) - 1))
        .map(|u| 2 - w[u])
        .min()
        .unwrap_or(2);
    for x in (0..=cap).rev() {
        w[v] = x;
        brute(h, v + 1, total + x as u64, w, best);
    }
    w[v] = 0;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfIntegralWeighting {
    /// Per-vertex weight in half-units: 0, 1 or 2.
    pub w: Vec<u8>,
    pub total: HalfInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbcDecomposition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    /// Pairs `(a, b)` matching every vertex of `B` into `A`; `None` when `A` is empty.
    pub matching: Option<Vec<(usize, usize)>>,
}

fn neighborhood(h: &Graph, mask: u64) -> u64 {
    bits(mask).fold(0u64, |acc, v| acc | h.neighbors(v))
}

fn to_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |acc, &v| acc | 1 << v)
}

/// Among half-integral optima, the one whose weight-1 set `A` is largest,
/// ties broken by the lexicographically smallest sorted vertex list.
pub fn optimal_weighting(
    h: &Graph,
) -> Result<(HalfIntegralWeighting, AbcDecomposition), FractionalError> {
    let n = h.n();
    let total = alpha_f(h);
    // Every optimum has the form A -> 1, N(A) -> 0, rest -> 1/2 with
    // |A| - |N(A)| = 2 α_f - n.
    let target = total.halves() as i64 - n as i64;
    let mut search = WeightSearch {
        h,
        target,
        best: None,
    };
    search.dfs(0, 0, 0);
    let a_mask = search.best.ok_or_else(|| {
        FractionalError::InvariantViolation("no independent set attains α_f".into())
    })?;
    let b_mask = neighborhood(h, a_mask);
    let c_mask = h.vertex_mask() & !a_mask & !b_mask;
    let w: Vec<u8> = (0..n)
        .map(|v| {
            if a_mask >> v & 1 == 1 {
                2
            } else if b_mask >> v & 1 == 1 {
                0
            } else {
                1
            }
        })
        .collect();
    let weighting = HalfIntegralWeighting { w, total };
    if weighting.w.iter().map(|&x| x as u64).sum::<u64>() != total.halves() {
        return Err(FractionalError::InvariantViolation(
            "weighting total differs from α_f".into(),
        ));
    }
    let a: Vec<usize> = bits(a_mask).collect();
    let b: Vec<usize> = bits(b_mask).collect();
    let c: Vec<usize> = bits(c_mask).collect();
    let matching = if a.is_empty() {
        None
    } else {
        let left: Vec<u64> = b.iter().map(|&v| h.neighbors(v) & a_mask).collect();
        let m = max_matching(&left);
        if m.size != b.len() {
            return Err(FractionalError::InvariantViolation(format!(
                "no matching saturates B (matched {} of {})",
                m.size,
                b.len()
            )));
        }
        let mut pairs: Vec<(usize, usize)> = b
            .iter()
            .zip(&m.left)
            .map(|(&bv, av)| (av.expect("saturating"), bv))
            .collect();
        pairs.sort_unstable();
        Some(pairs)
    };
    Ok((weighting, AbcDecomposition { a, b, c, matching }))
}

struct WeightSearch<'a> {
    h: &'a Graph,
    target: i64,
    best: Option<u64>,
}

impl WeightSearch<'_> {
    /// Decide vertices `v..n` with `a` chosen so far and `na = N(a)`.
    fn dfs(&mut self, v: usize, a: u64, na: u64) {
        let h = self.h;
        let n = h.n();
        let diff = a.count_ones() as i64 - na.count_ones() as i64;
        let undecided = h.vertex_mask() & !low_mask(v) & !a & !na;
        let best_size = self.best.map_or(-1, |b| b.count_ones() as i64);
        if a.count_ones() as i64 + undecided.count_ones() as i64 <= best_size {
            return;
        }
        // Optimistic gain from the undecided vertices: the deficiency of the
        // bipartite graph from them to vertices not yet dominated.
        let free = h.vertex_mask() & !a & !na;
        let left: Vec<u64> = bits(undecided).map(|u| h.neighbors(u) & free).collect();
        let gain = left.len() as i64 - matching_size(&left) as i64;
        if diff + gain < self.target {
            return;
        }
        if v == n {
            if diff == self.target {
                self.best = Some(a);
            }
            return;
        }
        if undecided >> v & 1 == 1 {
            self.dfs(v + 1, a | 1 << v, na | h.neighbors(v));
        }
        self.dfs(v + 1, a, na);
    }
}

/// Structural checks on a decomposition returned by [`optimal_weighting`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionChecks {
    pub a_independent: bool,
    pub b_is_neighborhood: bool,
    pub a_at_least_b: bool,
    pub matching_saturates_b: bool,
    /// Every `S ⊆ B` has at least `|S|` neighbours in `A`; `None` if `|B| > 16`.
    pub hall: Option<bool>,
    /// α_f of the subgraph induced by `C` equals `|C|/2`.
    pub c_half: bool,
    /// When `A` is empty: α_f(h - v) = (n-1)/2 for every vertex `v`.
    pub vertex_deletion: Option<bool>,
}

impl DecompositionChecks {
    pub fn all_pass(&self) -> bool {
        self.a_independent
            && self.b_is_neighborhood
            && self.a_at_least_b
            && self.matching_saturates_b
            && self.hall != Some(false)
            && self.c_half
            && self.vertex_deletion != Some(false)
    }
}

pub fn check_decomposition(h: &Graph, d: &AbcDecomposition) -> DecompositionChecks {
    let a = to_mask(&d.a);
    let b = to_mask(&d.b);
    let c = to_mask(&d.c);
    let a_independent = d.a.iter().all(|&v| h.neighbors(v) & a == 0);
    let b_is_neighborhood = neighborhood(h, a) == b;
    let matching_saturates_b = match &d.matching {
        None => d.b.is_empty(),
        Some(pairs) => {
            let mut covered = 0u64;
            let mut used = 0u64;
            let mut ok = true;
            for &(x, y) in pairs {
                ok &= h.has_edge(x, y) && a >> x & 1 == 1 && b >> y & 1 == 1;
                ok &= used >> x & 1 == 0;
                used |= 1 << x;
                covered |= 1 << y;
            }
            ok && covered == b
        }
    };
    let hall = (d.b.len() <= 16).then(|| {
        (1u64..1 << d.b.len()).all(|sub| {
            let s: u64 = bits(sub).fold(0, |acc, i| acc | 1 << d.b[i]);
            (neighborhood(h, s) & a).count_ones() >= s.count_ones()
        })
    });
    let c_half = alpha_f(&h.induced(c)).halves() == d.c.len() as u64;
    let vertex_deletion = d.a.is_empty().then(|| {
        (0..h.n()).all(|v| {
            let rest = h.induced(h.vertex_mask() & !(1 << v));
            alpha_f(&rest).halves() == h.n() as u64 - 1
        })
    });
    DecompositionChecks {
        a_independent,
        b_is_neighborhood,
        a_at_least_b: d.a.len() >= d.b.len(),
        matching_saturates_b,
        hall,
        c_half,
        vertex_deletion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(alpha_f(&Graph::cycle(5)), HalfInt(5));
        assert_eq!(alpha_f(&Graph::path(4)), HalfInt::from_int(2));
        assert_eq!(alpha_f(&Graph::star(3)), HalfInt::from_int(3));
        assert_eq!(alpha_f_bruteforce(&Graph::star(3)).unwrap(), HalfInt::from_int(3));
        assert_eq!(alpha_f_bruteforce(&Graph::complete(2)).unwrap(), HalfInt::from_int(1));
        assert_eq!(alpha_f_bruteforce(&Graph::cycle(5)).unwrap(), HalfInt(5));
        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2)).unwrap();
        assert_eq!(alpha_f_bruteforce(&two_k2).unwrap(), HalfInt::from_int(2));
        assert_eq!(HalfInt(5).to_string(), "5/2");
        assert_eq!(HalfInt(4).to_string(), "2");
    }

    #[test]
    fn brute_force_size_limit() {
        assert!(matches!(
            alpha_f_bruteforce(&Graph::path(15)),
            Err(FractionalError::TooLarge { n: 15, .. })
        ));
    }

    #[test]
    fn weighting_of_p5() {
        let (w, d) = optimal_weighting(&Graph::path(5)).unwrap();
        assert_eq!(w.w, vec![2, 0, 2, 0, 2]);
        assert_eq!(w.total, HalfInt::from_int(3));
        assert_eq!((d.a.clone(), d.b.clone()), (vec![0, 2, 4], vec![1, 3]));
        assert!(d.c.is_empty());
        assert_eq!(d.matching, Some(vec![(0, 1), (2, 3)]));
    }

    #[test]
    fn weighting_of_c5_and_k2() {
        let (w, d) = optimal_weighting(&Graph::cycle(5)).unwrap();
        assert_eq!(w.w, vec![1; 5]);
        assert!(d.a.is_empty() && d.matching.is_none());
        assert_eq!(d.c, vec![0, 1, 2, 3, 4]);
        assert!(check_decomposition(&Graph::cycle(5), &d).all_pass());

        let (w, d) = optimal_weighting(&Graph::complete(2)).unwrap();
        assert_eq!(w.w, vec![2, 0]);
        assert_eq!(d.matching, Some(vec![(0, 1)]));
    }

    #[test]
    fn isolated_vertices_take_weight_one() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let (w, d) = optimal_weighting(&g).unwrap();
        assert_eq!(w.w[0], 2);
        assert!(d.a.contains(&0));
        assert_eq!(w.total, HalfInt(5));
    }
}
