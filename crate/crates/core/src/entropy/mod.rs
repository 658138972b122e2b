//! Entropies of uniformly random ordered induced copies.
//!
//! A [`CopyDistribution`] holds every ordered induced copy of a pattern in a
//! host. Coordinates are read through a [`View`]: the vertex tuple, or the
//! edge tuple with oriented or unoriented edges. All logarithms are natural.

pub mod c6;
pub mod claim;
pub mod paths;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::FLOAT_SLACK;
use crate::count::{ordered_copies, CountError};
use crate::family::Family;
use crate::graph::Graph;
use crate::tuples::TupleError;

pub use c6::{c6_hypergraph_check, C6HypergraphReport};
pub use claim::{claim1_check, ClaimLedger, EdgeRow};
pub use paths::{odd_path_budgets, even_path_budgets, verify_path_decomposition, BudgetCheck};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntropyError {
    #[error("empty support: the host has no ordered induced copy of the pattern")]
    EmptySupport,
    #[error("coordinate {index} out of range for arity {arity}")]
    Coordinate { index: usize, arity: usize },
    #[error("coordinate {0} appears in both the target and the given set")]
    Overlap(usize),
    #[error("coordinate {coordinate} lies in {covered} cover sets, fewer than r = {r}")]
    NotCovering {
        coordinate: usize,
        covered: usize,
        r: usize,
    },
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("unsupported pattern: {0}")]
    Pattern(String),
    #[error("not an induced cycle: {0}")]
    NotInducedCycle(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Tuple(#[from] TupleError),
}

/// How a copy is read as a tuple of coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum View {
    Vertices,
    OrientedEdges,
    UnorientedEdges,
}

/// Uniform distribution over the ordered induced copies of a pattern.
///
/// Paths and cycles are relabelled to the standard `0-1-...-(k-1)` order so
/// copy `x` walks `x_0 x_1 ...` and edge `i` is `(x_i, x_{i+1})`; a cycle
/// gets the closing edge `(x_{k-1}, x_0)` last. Other patterns use their
/// own edge list.
#[derive(Debug, Clone)]
pub struct CopyDistribution {
    pattern: Graph,
    pattern_edges: Vec<(usize, usize)>,
    copies: Vec<Vec<usize>>,
}

impl CopyDistribution {
    pub fn new(host: &Graph, pattern: &Graph) -> Result<Self, EntropyError> {
        let family = Family::recognise(pattern);
        let pattern = family.map(Family::graph).unwrap_or_else(|| pattern.clone());
        let pattern_edges = match family {
            Some(Family::Path(k)) => (0..k - 1).map(|i| (i, i + 1)).collect(),
            Some(Family::Cycle(k)) => (0..k).map(|i| (i, (i + 1) % k)).collect(),
            None => pattern.edges(),
        };
        let copies = if pattern.n() > host.n() {
            if let Some(&v) = pattern.isolated_vertices().first() {
                return Err(CountError::IsolatedPatternVertex(v).into());
            }
            Vec::new()
        } else {
            ordered_copies(host, &pattern)?
        };
        Ok(CopyDistribution {
            pattern,
            pattern_edges,
            copies,
        })
    }

    /// The pattern as used for the coordinates (standard labelling for
    /// paths and cycles).
    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn copies(&self) -> &[Vec<usize>] {
        &self.copies
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn arity(&self, view: View) -> usize {
        match view {
            View::Vertices => self.pattern.n(),
            _ => self.pattern_edges.len(),
        }
    }

    /// Coordinate `i` of `copy` under `view`, encoded as an integer.
    fn coordinate(&self, copy: &[usize], view: View, i: usize) -> u64 {
        match view {
            View::Vertices => copy[i] as u64,
            View::OrientedEdges => {
                let (a, b) = self.pattern_edges[i];
                (copy[a] * 64 + copy[b]) as u64
            }
            View::UnorientedEdges => {
                let (a, b) = self.pattern_edges[i];
                let (x, y) = (copy[a].min(copy[b]), copy[a].max(copy[b]));
                (x * 64 + y) as u64
            }
        }
    }

    fn key(&self, copy: &[usize], view: View, coords: &[usize]) -> Vec<u64> {
        coords.iter().map(|&i| self.coordinate(copy, view, i)).collect()
    }

    /// `H(target | given)` in nats.
    pub fn entropy(&self, view: View, target: &[usize], given: &[usize]) -> Result<f64, EntropyError> {
        projection_entropy(self, view, target, given)
    }

    /// `(1/N) Σ_copies f(copy)`.
    pub fn mean(&self, mut f: impl FnMut(&[usize]) -> f64) -> Result<f64, EntropyError> {
        if self.is_empty() {
            return Err(EntropyError::EmptySupport);
        }
        let sum: f64 = self.copies.iter().map(|c| f(c)).sum();
        Ok(sum / self.len() as f64)
    }
}

fn check_coordinates(arity: usize, target: &[usize], given: &[usize]) -> Result<(), EntropyError> {
    for &i in target.iter().chain(given) {
        if i >= arity {
            return Err(EntropyError::Coordinate { index: i, arity });
        }
    }
    if let Some(&i) = target.iter().find(|i| given.contains(i)) {
        return Err(EntropyError::Overlap(i));
    }
    Ok(())
}

/// `Σ c ln c` over positive counts.
fn sum_c_log_c(counts: impl Iterator<Item = u64>) -> f64 {
    counts
        .filter(|&c| c > 1)
        .map(|c| {
            let c = c as f64;
            c * c.ln()
        })
        .sum()
}

/// Exact empirical `H(target | given)` under the uniform distribution on
/// copies. Computed per conditioning class as `n_g ln n_g - Σ c ln c`, so
/// only integer counts enter the logarithms.
pub fn projection_entropy(
    dist: &CopyDistribution,
    view: View,
    target: &[usize],
    given: &[usize],
) -> Result<f64, EntropyError> {
    if dist.is_empty() {
        return Err(EntropyError::EmptySupport);
    }
    check_coordinates(dist.arity(view), target, given)?;
    let mut classes: HashMap<Vec<u64>, HashMap<Vec<u64>, u64>> = HashMap::new();
    for copy in &dist.copies {
        *classes
            .entry(dist.key(copy, view, given))
            .or_default()
            .entry(dist.key(copy, view, target))
            .or_default() += 1;
    }
    let mut acc = 0.0;
    for inner in classes.values() {
        let n_g: u64 = inner.values().sum();
        acc += sum_c_log_c(std::iter::once(n_g)) - sum_c_log_c(inner.values().copied());
    }
    Ok(acc / dist.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    /// `lhs = rhs`; slack is `rhs - lhs`.
    Identity,
    /// `lhs <= rhs`; slack is `rhs - lhs`.
    Upper,
}

#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    #[serde(skip)]
    pub kind: TermKind,
    /// Outcome of an exact check, overriding the float comparison.
    #[serde(skip)]
    pub decided: Option<bool>,
}

impl Term {
    pub fn holds(&self) -> bool {
        if let Some(d) = self.decided {
            return d;
        }
        match self.kind {
            TermKind::Identity => self.slack.abs() <= FLOAT_SLACK,
            TermKind::Upper => self.slack >= -FLOAT_SLACK,
        }
    }
}

/// Named identities and inequalities with their slacks.
#[derive(Debug, Clone, Serialize, Default)]
pub struct EntropyReport {
    pub terms: Vec<Term>,
    pub pass: bool,
}

impl EntropyReport {
    pub fn new() -> Self {
        EntropyReport {
            terms: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, name: String, lhs: f64, rhs: f64, kind: TermKind, decided: Option<bool>) {
        let term = Term {
            name,
            lhs,
            rhs,
            slack: rhs - lhs,
            kind,
            decided,
        };
        self.pass &= term.holds();
        self.terms.push(term);
    }

    pub fn identity(&mut self, name: impl Into<String>, lhs: f64, rhs: f64) {
        self.push(name.into(), lhs, rhs, TermKind::Identity, None);
    }

    pub fn upper(&mut self, name: impl Into<String>, lhs: f64, rhs: f64) {
        self.push(name.into(), lhs, rhs, TermKind::Upper, None);
    }

    /// An exact integer inequality `lhs <= rhs`, recorded with float values.
    pub fn upper_exact(&mut self, name: impl Into<String>, lhs: u128, rhs: u128) {
        self.upper_decided(name, lhs as f64, rhs as f64, lhs <= rhs);
    }

    /// An inequality whose truth was decided exactly elsewhere; the floats
    /// are for display.
    pub fn upper_decided(&mut self, name: impl Into<String>, lhs: f64, rhs: f64, holds: bool) {
        self.push(name.into(), lhs, rhs, TermKind::Upper, Some(holds));
    }

    /// An exact integer identity.
    pub fn identity_exact(&mut self, name: impl Into<String>, lhs: u128, rhs: u128) {
        self.push(name.into(), lhs as f64, rhs as f64, TermKind::Identity, Some(lhs == rhs));
    }

    pub fn extend(&mut self, other: EntropyReport) {
        self.pass &= other.pass;
        self.terms.extend(other.terms);
    }

    pub fn failing(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| !t.holds())
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms.iter().find(|t| t.name == name)
    }
}

/// A chain-rule ordering or a Shearer cover over coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// Disjoint blocks `B_1, ..., B_s` revealed in order.
    Chain(Vec<Vec<usize>>),
    /// Sets `A_1, ..., A_s` with every coordinate in at least `r` of them.
    Shearer { cover: Vec<Vec<usize>>, r: usize },
}

fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// All `(k-1)`-subsets of `0..k`; each coordinate lies in `k-1` of them.
pub fn subset_cover(k: usize) -> Vec<Vec<usize>> {
    (0..k)
        .map(|skip| (0..k).filter(|&i| i != skip).collect())
        .collect()
}

/// Chain-rule and Shearer checks on one distribution.
///
/// Chain: the identity `H(B_1..B_s) = Σ H(B_i | B_<i)` plus, for each later
/// block, `H(B_i | B_<i) <= H(B_i | B_{i-1}) <= H(B_i)`. Shearer:
/// `H(X) <= (1/r) Σ H(X_A)`. For the vertex view the full tuple entropy
/// is also checked against `log N`.
pub fn verify_chain_shearer(
    dist: &CopyDistribution,
    view: View,
    decomposition: &Decomposition,
) -> Result<EntropyReport, EntropyError> {
    if dist.is_empty() {
        return Err(EntropyError::EmptySupport);
    }
    let arity = dist.arity(view);
    let all: Vec<usize> = (0..arity).collect();
    let mut report = EntropyReport::new();
    let h_all = projection_entropy(dist, view, &all, &[])?;
    if view == View::Vertices {
        report.identity("H(X) = log N", h_all, (dist.len() as f64).ln());
    }
    match decomposition {
        Decomposition::Chain(blocks) => {
            let mut seen = vec![false; arity];
            for block in blocks {
                check_coordinates(arity, block, &[])?;
                for &i in block {
                    if seen[i] {
                        return Err(EntropyError::Decomposition(format!(
                            "coordinate {i} appears in two blocks"
                        )));
                    }
                    seen[i] = true;
                }
            }
            let union: Vec<usize> = blocks.iter().flatten().copied().collect();
            let joint = projection_entropy(dist, view, &union, &[])?;
            let mut prefix: Vec<usize> = Vec::new();
            let mut sum = 0.0;
            for (idx, block) in blocks.iter().enumerate() {
                let cond = projection_entropy(dist, view, block, &prefix)?;
                sum += cond;
                if idx > 0 {
                    let marginal = projection_entropy(dist, view, block, &[])?;
                    let last = projection_entropy(dist, view, block, &blocks[idx - 1])?;
                    let b = fmt_set(block);
                    report.upper(format!("H({b} | prefix) <= H({b} | previous block)"), cond, last);
                    report.upper(format!("H({b} | previous block) <= H({b})"), last, marginal);
                }
                prefix.extend(block);
            }
            report.identity("chain rule: H(blocks) = sum of conditionals", joint, sum);
        }
        Decomposition::Shearer { cover, r } => {
            if *r == 0 {
                return Err(EntropyError::Decomposition("r must be positive".into()));
            }
            for set in cover {
                check_coordinates(arity, set, &[])?;
            }
            for coordinate in 0..arity {
                let covered = cover.iter().filter(|s| s.contains(&coordinate)).count();
                if covered < *r {
                    return Err(EntropyError::NotCovering {
                        coordinate,
                        covered,
                        r: *r,
                    });
                }
            }
            let mut sum = 0.0;
            for set in cover {
                sum += projection_entropy(dist, view, set, &[])?;
            }
            report.upper(format!("Shearer: H(X) <= (1/{r}) sum H(X_A)"), h_all, sum / *r as f64);
        }
    }
    Ok(report)
}

/// The odd-cycle reduction to paths on one host: with `Γ` induced
/// `C_{2l+1}` and `Υ` induced `P_{2l}`,
/// `log(2(2l+1)Γ) <= ((2l+1)/(2l)) log(2Υ)`, through Shearer with the
/// `2l`-subset cover and the bound `H(C_A) <= log(2Υ)` for each set.
pub fn verify_odd_cycle_shearer(host: &Graph, l: usize) -> Result<EntropyReport, EntropyError> {
    if l < 1 {
        return Err(EntropyError::Pattern("odd cycle needs l >= 1".into()));
    }
    let k = 2 * l + 1;
    let dist = CopyDistribution::new(host, &Graph::cycle(k))?;
    if dist.is_empty() {
        return Err(EntropyError::EmptySupport);
    }
    let paths = CopyDistribution::new(host, &Graph::path(2 * l))?;
    let gamma = dist.len() as f64 / (2 * k) as f64;
    let log_2_upsilon = (paths.len() as f64).ln();
    let all: Vec<usize> = (0..k).collect();
    let cover = subset_cover(k);
    let mut report = verify_chain_shearer(&dist, View::Vertices, &Decomposition::Shearer { cover: cover.clone(), r: k - 1 })?;
    let h_c = projection_entropy(&dist, View::Vertices, &all, &[])?;
    report.identity(
        format!("H(C) = log(2*{k}*Gamma)"),
        h_c,
        ((2 * k) as f64 * gamma).ln(),
    );
    for set in &cover {
        let h = projection_entropy(&dist, View::Vertices, set, &[])?;
        report.upper(format!("H(C_{}) <= log(2 Upsilon)", fmt_set(set)), h, log_2_upsilon);
    }
    report.upper(
        format!("log(2*{k}*Gamma) <= ({k}/{}) log(2 Upsilon)", 2 * l),
        ((2 * k) as f64 * gamma).ln(),
        k as f64 / (2 * l) as f64 * log_2_upsilon,
    );
    Ok(report)
}
