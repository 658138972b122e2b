//! Oriented edge tuples and the extension statistics built on them.
//!
//! A tuple `((u_1,v_1), ..., (u_t,v_t))` is well-ordered when the only
//! edges among its `2t` endpoints are the tuple edges themselves and the
//! links `v_i u_{i+1}`; equivalently its endpoints induce the path
//! `u_1 v_1 u_2 v_2 ... u_t v_t` in that order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::count::Matcher;
use crate::family::Family;
use crate::graph::{bits, Graph};

pub type OrientedEdge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedEdgeTuple {
    pub edges: Vec<OrientedEdge>,
}

impl OrientedEdgeTuple {
    pub fn new(edges: Vec<OrientedEdge>) -> Self {
        OrientedEdgeTuple { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.edges
            .iter()
            .fold(0u64, |acc, &(u, v)| acc | 1 << u | 1 << v)
    }

    pub fn pushed(&self, e: OrientedEdge) -> Self {
        let mut edges = self.edges.clone();
        edges.push(e);
        OrientedEdgeTuple { edges }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TupleError {
    #[error("empty edge tuple")]
    Empty,
    #[error("({0}, {1}) is not an edge of the host graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} appears twice in the tuple")]
    RepeatedVertex(usize),
    #[error("tuple is not well-ordered")]
    NotWellOrdered,
    #[error("tuple has length {got}, expected {expected}")]
    Length { got: usize, expected: String },
    #[error("unsupported pattern for this statistic: {0}")]
    Pattern(String),
    #[error("edge ({0}, {1}) is not in the S-set of the tuple")]
    NotInSSet(usize, usize),
}

/// Check the entries are host edges and pairwise vertex-disjoint.
pub fn validate(g: &Graph, t: &OrientedEdgeTuple) -> Result<(), TupleError> {
    if t.is_empty() {
        return Err(TupleError::Empty);
    }
    let mut seen = 0u64;
    for &(u, v) in &t.edges {
        if !g.has_edge(u, v) {
            return Err(TupleError::NotAnEdge(u, v));
        }
        for x in [u, v] {
            if seen >> x & 1 == 1 {
                return Err(TupleError::RepeatedVertex(x));
            }
            seen |= 1 << x;
        }
    }
    Ok(())
}

/// Endpoints in tuple order `u_1, v_1, u_2, v_2, ...`.
fn sequence(t: &OrientedEdgeTuple) -> Vec<usize> {
    t.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
}

/// True iff the endpoint sequence induces exactly the path through it, plus
/// the closing edge when `closed`.
fn induces_walk(g: &Graph, seq: &[usize], closed: bool) -> bool {
    let mask = seq.iter().fold(0u64, |acc, &x| acc | 1 << x);
    let k = seq.len();
    seq.iter().enumerate().all(|(i, &x)| {
        let mut want = 0u64;
        if i > 0 {
            want |= 1 << seq[i - 1];
        }
        if i + 1 < k {
            want |= 1 << seq[i + 1];
        }
        if closed && k >= 3 && (i == 0 || i + 1 == k) {
            want |= 1 << seq[if i == 0 { k - 1 } else { 0 }];
        }
        g.neighbors(x) & mask == want
    })
}

pub fn is_well_ordered(g: &Graph, t: &OrientedEdgeTuple) -> Result<bool, TupleError> {
    validate(g, t)?;
    Ok(induces_walk(g, &sequence(t), false))
}

/// True iff the tuple's endpoints, read in order, form an induced cycle.
pub fn characterizes_cycle(g: &Graph, t: &OrientedEdgeTuple) -> Result<bool, TupleError> {
    validate(g, t)?;
    let seq = sequence(t);
    Ok(seq.len() >= 4 && induces_walk(g, &seq, true))
}

fn require_well_ordered(g: &Graph, t: &OrientedEdgeTuple) -> Result<(), TupleError> {
    if is_well_ordered(g, t)? {
        Ok(())
    } else {
        Err(TupleError::NotWellOrdered)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtendMode {
    /// Oriented edges `e` with `(t, e)` well-ordered.
    PathExtend,
    /// Edges `e` such that `(t, e)` characterizes an induced `C_k`.
    CycleClose(usize),
}

/// The oriented edges counted by [`alpha_extensions`].
pub fn extensions(
    g: &Graph,
    t: &OrientedEdgeTuple,
    mode: ExtendMode,
) -> Result<Vec<OrientedEdge>, TupleError> {
    require_well_ordered(g, t)?;
    let tv = t.vertex_mask();
    let &(u1, _) = t.edges.first().expect("validated nonempty");
    let &(_, vt) = t.edges.last().expect("validated nonempty");
    let near = |mask: u64| bits(mask).fold(0u64, |acc, x| acc | g.neighbors(x));
    let free = g.vertex_mask() & !tv;
    let mut out = Vec::new();
    match mode {
        ExtendMode::PathExtend => {
            let u_cand = g.neighbors(vt) & free & !near(tv & !(1 << vt));
            let v_block = near(tv);
            for u in bits(u_cand) {
                for v in bits(g.neighbors(u) & free & !v_block) {
                    out.push((u, v));
                }
            }
        }
        ExtendMode::CycleClose(k) => {
            if k % 2 == 1 || k < 4 {
                return Err(TupleError::Pattern(format!(
                    "cycle closing needs an even cycle length of at least 4, got {k}"
                )));
            }
            if t.len() != k / 2 - 1 {
                return Err(TupleError::Length {
                    got: t.len(),
                    expected: format!("{}", k / 2 - 1),
                });
            }
            let u_cand = g.neighbors(vt) & free & !near(tv & !(1 << vt));
            let v_cand = g.neighbors(u1) & free & !near(tv & !(1 << u1));
            for u in bits(u_cand) {
                for v in bits(g.neighbors(u) & v_cand) {
                    out.push((u, v));
                }
            }
        }
    }
    Ok(out)
}

pub fn alpha_extensions(
    g: &Graph,
    t: &OrientedEdgeTuple,
    mode: ExtendMode,
) -> Result<u64, TupleError> {
    Ok(extensions(g, t, mode)?.len() as u64)
}

/// Number of odd-indexed edges `(x_1,x_2), (x_3,x_4), ...` of the family.
fn odd_edge_count(family: Family) -> usize {
    family.order() / 2
}

/// Pattern vertex pairs pinned by an odd-edge prefix: `x_{2i-1} -> u_i`,
/// `x_{2i} -> v_i` (pattern vertices are 0-based).
fn pins(t: &OrientedEdgeTuple) -> Vec<(usize, usize)> {
    t.edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, v))| [(2 * i, u), (2 * i + 1, v)])
        .collect()
}

fn check_prefix(g: &Graph, t: &OrientedEdgeTuple, family: Family) -> Result<(), TupleError> {
    let max = odd_edge_count(family);
    if t.len() > max {
        return Err(TupleError::Length {
            got: t.len(),
            expected: format!("at most {max} for {family}"),
        });
    }
    let full_even_cycle =
        matches!(family, Family::Cycle(k) if k % 2 == 0 && t.len() == k / 2);
    if full_even_cycle {
        if !characterizes_cycle(g, t)? {
            return Err(TupleError::NotWellOrdered);
        }
        Ok(())
    } else {
        require_well_ordered(g, t)
    }
}

/// Ordered induced copies of the family whose odd-indexed edges begin with
/// `t`. For an even cycle with a full-length `t`, the tuple must close the
/// cycle instead of being well-ordered.
pub fn beta_embeddings(g: &Graph, t: &OrientedEdgeTuple, family: Family) -> Result<u64, TupleError> {
    check_prefix(g, t, family)?;
    let pattern = family.graph();
    if pattern.n() > g.n() {
        return Ok(0);
    }
    Ok(Matcher::new(g, &pattern, &pins(t)).count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaStats {
    /// Unoriented final edges `{x_{2l}, x_{2l+1}}`, as `(min, max)`, sorted.
    pub s_set: Vec<(usize, usize)>,
    pub gamma0: u64,
    pub gamma1: Option<u64>,
    pub gamma2: Option<u64>,
}

/// Unoriented edge key `(min, max)`.
pub fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// The edge sets behind the γ statistics, before counting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GammaSets {
    /// Final edges `{x_{2l}, x_{2l+1}}`.
    pub s_set: BTreeSet<(usize, usize)>,
    /// Edges `{x_{2l-2}, x_{2l-1}}` over copies ending in `e_last`.
    pub mid: BTreeSet<(usize, usize)>,
    /// Edges `{x_{2l-1}, x_{2l}}` over copies ending in `e_last`.
    pub last_but_one: BTreeSet<(usize, usize)>,
}

/// Collect the γ edge sets for `P_{2l+1}` where `l = t.len() + 1`. No
/// membership check on `e_last`.
pub fn gamma_sets(
    g: &Graph,
    t: &OrientedEdgeTuple,
    e_last: Option<(usize, usize)>,
) -> Result<GammaSets, TupleError> {
    let l = t.len() + 1;
    if l < 2 {
        return Err(TupleError::Empty);
    }
    require_well_ordered(g, t)?;
    let k = 2 * l + 1;
    let mut sets = GammaSets::default();
    if k <= g.n() {
        let pattern = Graph::path(k);
        let last = e_last.map(|(a, b)| key(a, b));
        // 0-based: x_{2l} -> 2l-1, x_{2l+1} -> 2l.
        Matcher::new(g, &pattern, &pins(t)).for_each(|c| {
            let e = key(c[2 * l - 1], c[2 * l]);
            sets.s_set.insert(e);
            if Some(e) == last {
                sets.mid.insert(key(c[2 * l - 3], c[2 * l - 2]));
                sets.last_but_one.insert(key(c[2 * l - 2], c[2 * l - 1]));
            }
        });
    }
    Ok(sets)
}

/// The γ statistics for `P_{2l+1}` where `l = t.len() + 1`.
pub fn gamma_stats(
    g: &Graph,
    t: &OrientedEdgeTuple,
    e_last: Option<(usize, usize)>,
) -> Result<GammaStats, TupleError> {
    let sets = gamma_sets(g, t, e_last)?;
    if let Some((a, b)) = e_last {
        if !sets.s_set.contains(&key(a, b)) {
            return Err(TupleError::NotInSSet(a, b));
        }
    }
    Ok(GammaStats {
        gamma0: sets.s_set.len() as u64,
        s_set: sets.s_set.into_iter().collect(),
        gamma1: e_last.map(|_| sets.mid.len() as u64),
        gamma2: e_last.map(|_| sets.last_but_one.len() as u64),
    })
}

/// All well-ordered tuples of length `len` in `g`.
pub fn well_ordered_tuples(g: &Graph, len: usize) -> Vec<OrientedEdgeTuple> {
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut level: Vec<OrientedEdgeTuple> = Vec::new();
    for (u, v) in g.edges() {
        level.push(OrientedEdgeTuple::new(vec![(u, v)]));
        level.push(OrientedEdgeTuple::new(vec![(v, u)]));
    }
    for _ in 1..len {
        let mut next = Vec::new();
        for t in &level {
            for e in extensions(g, t, ExtendMode::PathExtend).expect("well-ordered by construction") {
                next.push(t.pushed(e));
            }
        }
        level = next;
    }
    out.extend(level);
    out
}
