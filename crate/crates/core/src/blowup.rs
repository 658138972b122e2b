//! Blow-ups of a base graph and part-size optimisation under an edge budget.
//!
//! Induced counts in a blow-up are computed on the quotient: an ordered
//! copy of the pattern projects to a map from pattern vertices to base
//! vertices, and each such map lifts to a product of falling factorials.
//! This works for blow-ups far beyond the 64-vertex limit of [`Graph`].

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::canon::automorphism_order;
use crate::family::Family;
use crate::fractional::{optimal_weighting, FractionalError};
use crate::graph::{Graph, GraphError, MAX_VERTICES};
use crate::graph6::write_graph6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("blow-up has {0} vertices, at most {MAX_VERTICES} can be realised")]
    TooManyVertices(u64),
    #[error("{sizes} part sizes given for a base graph on {base} vertices")]
    SizeMismatch { sizes: usize, base: usize },
    #[error("pattern has isolated vertex {0}")]
    IsolatedPatternVertex(usize),
    #[error("count overflows 128 bits")]
    Overflow,
    #[error(transparent)]
    Fractional(#[from] FractionalError),
}

impl From<GraphError> for BlowupError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooManyVertices(n) => BlowupError::TooManyVertices(n as u64),
            other => unreachable!("blow-up construction produced {other}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlowupSpec {
    pub base: Graph,
    pub sizes: Vec<u64>,
}

impl Serialize for BlowupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlowupSpec", 2)?;
        let g6 = write_graph6(&self.base).map_err(serde::ser::Error::custom)?;
        st.serialize_field("base", &g6)?;
        st.serialize_field("sizes", &self.sizes)?;
        st.end()
    }
}

impl BlowupSpec {
    pub fn new(base: Graph, sizes: Vec<u64>) -> Result<Self, BlowupError> {
        if sizes.len() != base.n() {
            return Err(BlowupError::SizeMismatch {
                sizes: sizes.len(),
                base: base.n(),
            });
        }
        Ok(BlowupSpec { base, sizes })
    }

    pub fn balanced(base: Graph, size: u64) -> Self {
        let sizes = vec![size; base.n()];
        BlowupSpec { base, sizes }
    }

    pub fn vertex_count(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Σ over base edges `ij` of `n_i n_j`.
    pub fn edge_count(&self) -> u128 {
        self.base
            .edges()
            .iter()
            .map(|&(i, j)| self.sizes[i] as u128 * self.sizes[j] as u128)
            .sum()
    }
}

/// Realise the blow-up; part `i` occupies a consecutive block of vertices.
pub fn blow_up(spec: &BlowupSpec) -> Result<Graph, BlowupError> {
    let total = spec.vertex_count();
    if total > MAX_VERTICES as u64 {
        return Err(BlowupError::TooManyVertices(total));
    }
    let mut start = Vec::with_capacity(spec.sizes.len());
    let mut acc = 0usize;
    for &s in &spec.sizes {
        start.push(acc);
        acc += s as usize;
    }
    let mut g = Graph::empty(acc)?;
    for (i, j) in spec.base.edges() {
        for a in 0..spec.sizes[i] as usize {
            for b in 0..spec.sizes[j] as usize {
                g.add_edge(start[i] + a, start[j] + b)?;
            }
        }
    }
    Ok(g)
}

/// Ordered and unordered induced counts of `pattern` in the blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlowupCount {
    #[serde(serialize_with = "as_string")]
    pub ordered: u128,
    #[serde(serialize_with = "as_string")]
    pub unordered: u128,
    pub aut: u64,
}

pub(crate) fn as_string<S: Serializer>(x: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn blowup_count(spec: &BlowupSpec, pattern: &Graph) -> Result<BlowupCount, BlowupError> {
    if let Some(&v) = pattern.isolated_vertices().first() {
        return Err(BlowupError::IsolatedPatternVertex(v));
    }
    let aut = automorphism_order(pattern);
    let ordered = quotient_ordered(spec, pattern)?;
    Ok(BlowupCount {
        ordered,
        unordered: ordered / aut as u128,
        aut,
    })
}

fn quotient_ordered(spec: &BlowupSpec, pattern: &Graph) -> Result<u128, BlowupError> {
    let k = pattern.n();
    let mut phi = vec![0usize; k];
    let mut used = vec![0u64; spec.base.n()];
    let mut total = 0u128;
    let mut overflow = false;
    lift(spec, pattern, 0, &mut phi, &mut used, 1, &mut total, &mut overflow);
    if overflow {
        Err(BlowupError::Overflow)
    } else {
        Ok(total)
    }
}

#[allow(clippy::too_many_arguments)]
fn lift(
    spec: &BlowupSpec,
    pattern: &Graph,
    h: usize,
    phi: &mut [usize],
    used: &mut [u64],
    weight: u128,
    total: &mut u128,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    if h == pattern.n() {
        match total.checked_add(weight) {
            Some(t) => *total = t,
            None => *overflow = true,
        }
        return;
    }
    'base: for b in 0..spec.base.n() {
        let avail = spec.sizes[b].saturating_sub(used[b]);
        if avail == 0 {
            continue;
        }
        for g in 0..h {
            let adjacent = pattern.has_edge(g, h);
            let ok = if phi[g] == b {
                !adjacent
            } else {
                adjacent == spec.base.has_edge(phi[g], b)
            };
            if !ok {
                continue 'base;
            }
        }
        let Some(w) = weight.checked_mul(avail as u128) else {
            *overflow = true;
            return;
        };
        phi[h] = b;
        used[b] += 1;
        lift(spec, pattern, h + 1, phi, used, w, total, overflow);
        used[b] -= 1;
    }
}

/// Largest `s` with `s^2 * e <= m`.
fn isqrt_ratio(m: u64, e: u64) -> u64 {
    let mut s = ((m as f64 / e as f64).sqrt()) as u64;
    while s > 0 && (s as u128) * (s as u128) * (e as u128) > m as u128 {
        s -= 1;
    }
    while ((s + 1) as u128) * ((s + 1) as u128) * (e as u128) <= m as u128 {
        s += 1;
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub spec: BlowupSpec,
    #[serde(serialize_with = "as_string")]
    pub edges: u128,
    #[serde(serialize_with = "as_string")]
    pub count: u128,
    pub warning: Option<String>,
}

/// Part sizes `floor((m / |E(H)|)^{ω(v)})` from the optimal half-integral
/// weighting `ω` of `h`.
pub fn theorem1_lower_construction(h: &Graph, m: u64) -> Result<Construction, BlowupError> {
    if let Some(&v) = h.isolated_vertices().first() {
        return Err(BlowupError::IsolatedPatternVertex(v));
    }
    let e = h.edge_count() as u64;
    let (w, _) = optimal_weighting(h)?;
    let sizes = w
        .w
        .iter()
        .map(|&x| match x {
            0 => 1,
            1 => isqrt_ratio(m, e),
            _ => m / e,
        })
        .collect();
    let spec = BlowupSpec::new(h.clone(), sizes)?;
    let warning = (m < e).then(|| format!("budget {m} is below the {e} pattern edges"));
    evaluate(spec, h, warning)
}

fn evaluate(spec: BlowupSpec, pattern: &Graph, warning: Option<String>) -> Result<Construction, BlowupError> {
    let count = blowup_count(&spec, pattern)?.unordered;
    Ok(Construction {
        edges: spec.edge_count(),
        count,
        spec,
        warning,
    })
}

/// Sizes `s` or `s + 1` with `s` the largest uniform size fitting the
/// budget, parts incremented greedily in index order.
fn balanced_fill(base: &Graph, m: u64) -> BlowupSpec {
    let e = base.edge_count() as u64;
    let s = if e == 0 { 0 } else { isqrt_ratio(m, e) };
    let mut spec = BlowupSpec::balanced(base.clone(), s);
    for i in 0..spec.sizes.len() {
        spec.sizes[i] += 1;
        if spec.edge_count() > m as u128 {
            spec.sizes[i] -= 1;
        }
    }
    spec
}

/// Template families of candidate specs; each inner list is one template
/// scanned over its free parameter.
fn candidates(pattern: &Graph, m: u64) -> Result<Vec<Vec<BlowupSpec>>, BlowupError> {
    let mut groups = vec![
        vec![theorem1_lower_construction(pattern, m)?.spec],
        vec![balanced_fill(pattern, m)],
    ];
    let mut out = Vec::new();
    match Family::recognise(pattern) {
        Some(Family::Cycle(4)) => {
            let k2 = Graph::complete(2);
            for a in 1..=m {
                out.push(BlowupSpec::new(k2.clone(), vec![a, m / a])?);
                if a * a > m {
                    break;
                }
            }
        }
        Some(Family::Cycle(k)) if k % 2 == 0 => {
            let per = m / k as u64;
            for lambda in 1..=per {
                let mu = per / lambda;
                if mu < lambda {
                    break;
                }
                let sizes = (0..k).map(|i| if i % 2 == 0 { lambda } else { mu }).collect();
                out.push(BlowupSpec::new(pattern.clone(), sizes)?);
            }
        }
        Some(Family::Path(3)) => {
            out.push(BlowupSpec::new(Graph::complete(2), vec![1, m])?);
        }
        Some(Family::Path(k)) if k % 2 == 1 => {
            // Even parts single vertices, end parts a, interior odd parts b:
            // edges 2a + 2(#interior)b, scanned over b with a as large as fits.
            let interior = (k as u64).div_ceil(2) - 2;
            for b in 1..=m {
                if 2 * interior * b + 2 > m {
                    break;
                }
                let a = (m - 2 * interior * b) / 2;
                let sizes = (0..k)
                    .map(|i| {
                        if i % 2 == 1 {
                            1
                        } else if i == 0 || i == k - 1 {
                            a
                        } else {
                            b
                        }
                    })
                    .collect();
                out.push(BlowupSpec::new(pattern.clone(), sizes)?);
                if interior == 0 {
                    break;
                }
            }
        }
        Some(Family::Path(k))
            if k < MAX_VERTICES => {
                out.push(balanced_fill(&Graph::cycle(k + 1), m));
            }
        _ => {}
    }
    if !out.is_empty() {
        groups.push(out);
    }
    Ok(groups)
}

const LOCAL_SEARCH_STEPS: usize = 10_000;

/// Greedy first-improvement search over single `±1` changes and unit
/// transfers between parts.
fn local_search(spec: BlowupSpec, pattern: &Graph, m: u64) -> Result<Construction, BlowupError> {
    let mut best = evaluate(spec, pattern, None)?;
    let n = best.spec.sizes.len();
    for _ in 0..LOCAL_SEARCH_STEPS {
        let mut improved = false;
        let mut moves: Vec<(Option<usize>, Option<usize>)> = Vec::new();
        for i in 0..n {
            moves.push((Some(i), None));
        }
        for i in 0..n {
            moves.push((None, Some(i)));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    moves.push((Some(i), Some(j)));
                }
            }
        }
        for (up, down) in moves {
            let mut sizes = best.spec.sizes.clone();
            if let Some(d) = down {
                if sizes[d] == 0 {
                    continue;
                }
                sizes[d] -= 1;
            }
            if let Some(u) = up {
                sizes[u] += 1;
            }
            let spec = BlowupSpec::new(best.spec.base.clone(), sizes)?;
            if spec.edge_count() > m as u128 {
                continue;
            }
            let cand = evaluate(spec, pattern, None)?;
            if cand.count > best.count {
                best = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(best)
}

/// Best blow-up found among the templates for `pattern`, each refined by
/// local search. Ties keep the earlier template.
pub fn optimize_part_sizes(pattern: &Graph, m: u64) -> Result<Construction, BlowupError> {
    let mut best: Option<Construction> = None;
    for group in candidates(pattern, m)? {
        let mut seed: Option<Construction> = None;
        for spec in group {
            if spec.edge_count() > m as u128 {
                continue;
            }
            let c = evaluate(spec, pattern, None)?;
            if seed.as_ref().is_none_or(|s| c.count > s.count) {
                seed = Some(c);
            }
        }
        let Some(seed) = seed else { continue };
        let c = local_search(seed.spec, pattern, m)?;
        if best.as_ref().is_none_or(|b| c.count > b.count) {
            best = Some(c);
        }
    }
    let mut best = best.expect("the generic template always fits the budget");
    if best.count == 0 {
        best.warning = Some(format!("no blow-up with at most {m} edges contains the pattern"));
    }
    Ok(best)
}
