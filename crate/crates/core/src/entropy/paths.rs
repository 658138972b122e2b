//! Term-by-term evaluation of the entropy decompositions for paths.
//!
//! Copies are read in the unoriented edge view, `e_1, ..., e_{k-1}` at
//! coordinates `0..k-1`. The odd edges `e_1, e_3, ...` form a well-ordered
//! tuple and the even edges are determined by them. With a single unoriented
//! first edge both orientations are possible, so the one-edge prefix counts
//! extensions of both orientations.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{projection_entropy, CopyDistribution, EntropyError, EntropyReport, View};
use crate::family::Family;
use crate::graph::Graph;
use crate::tuples::{alpha_extensions, gamma_sets, key, ExtendMode, OrientedEdge, OrientedEdgeTuple};

/// Aggregate of one per-copy budget over all ordered copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetCheck {
    pub copies: u64,
    pub m: u64,
    pub max_total: u64,
    /// Copies whose total equals `m`.
    pub tight: u64,
    pub violations: u64,
}

impl BudgetCheck {
    fn new(m: u64) -> Self {
        BudgetCheck {
            copies: 0,
            m,
            max_total: 0,
            tight: 0,
            violations: 0,
        }
    }

    fn record(&mut self, total: u64) {
        self.copies += 1;
        self.max_total = self.max_total.max(total);
        self.tight += (total == self.m) as u64;
        self.violations += (total > self.m) as u64;
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Per-copy extension counts.
#[derive(Debug, Clone, Default)]
struct CopyCounts {
    /// `α_i` for odd prefixes of length `i = 1, 2, ...`.
    alphas: Vec<u64>,
    /// `(γ_0, γ_1, γ_2)` for odd paths.
    gammas: Option<(u64, u64, u64)>,
}

/// Memoised α and γ lookups on one host.
struct Counter<'g> {
    g: &'g Graph,
    alpha: HashMap<Vec<OrientedEdge>, u64>,
    gamma: HashMap<(Vec<OrientedEdge>, (usize, usize)), (u64, u64, u64)>,
}

fn odd_prefix(copy: &[usize], len: usize) -> Vec<OrientedEdge> {
    (0..len).map(|i| (copy[2 * i], copy[2 * i + 1])).collect()
}

impl<'g> Counter<'g> {
    fn new(g: &'g Graph) -> Self {
        Counter {
            g,
            alpha: HashMap::new(),
            gamma: HashMap::new(),
        }
    }

    /// Number of candidates for the unoriented `e_{2i+1}` given the odd
    /// prefix of length `i`.
    fn alpha(&mut self, copy: &[usize], i: usize) -> Result<u64, EntropyError> {
        let mut prefix = odd_prefix(copy, i);
        if i == 1 {
            prefix[0] = key(prefix[0].0, prefix[0].1);
        }
        if let Some(&a) = self.alpha.get(&prefix) {
            return Ok(a);
        }
        let a = if i == 1 {
            let (x, y) = prefix[0];
            alpha_extensions(self.g, &OrientedEdgeTuple::new(vec![(x, y)]), ExtendMode::PathExtend)?
                + alpha_extensions(self.g, &OrientedEdgeTuple::new(vec![(y, x)]), ExtendMode::PathExtend)?
        } else {
            alpha_extensions(self.g, &OrientedEdgeTuple::new(prefix.clone()), ExtendMode::PathExtend)?
        };
        self.alpha.insert(prefix, a);
        Ok(a)
    }

    /// `(γ_0, γ_1, γ_2)` for a copy of `P_{2l+1}`.
    fn gamma(&mut self, copy: &[usize], l: usize) -> Result<(u64, u64, u64), EntropyError> {
        let mut prefix = odd_prefix(copy, l - 1);
        let last = key(copy[2 * l - 1], copy[2 * l]);
        if l == 2 {
            prefix[0] = key(prefix[0].0, prefix[0].1);
        }
        let memo_key = (prefix, last);
        if let Some(&v) = self.gamma.get(&memo_key) {
            return Ok(v);
        }
        let tuples = if l == 2 {
            let (x, y) = memo_key.0[0];
            vec![vec![(x, y)], vec![(y, x)]]
        } else {
            vec![memo_key.0.clone()]
        };
        let mut s_set = BTreeSet::new();
        let mut mid = BTreeSet::new();
        let mut last_but_one = BTreeSet::new();
        for t in tuples {
            let sets = gamma_sets(self.g, &OrientedEdgeTuple::new(t), Some(last))?;
            s_set.extend(sets.s_set);
            mid.extend(sets.mid);
            last_but_one.extend(sets.last_but_one);
        }
        let v = (s_set.len() as u64, mid.len() as u64, last_but_one.len() as u64);
        self.gamma.insert(memo_key, v);
        Ok(v)
    }
}

fn even_counts(g: &Graph, copies: &[Vec<usize>], l: usize) -> Result<Vec<CopyCounts>, EntropyError> {
    let mut counter = Counter::new(g);
    copies
        .iter()
        .map(|c| {
            let alphas = (1..l).map(|i| counter.alpha(c, i)).collect::<Result<_, _>>()?;
            Ok(CopyCounts { alphas, gammas: None })
        })
        .collect()
}

fn odd_counts(g: &Graph, copies: &[Vec<usize>], l: usize) -> Result<Vec<CopyCounts>, EntropyError> {
    let mut counter = Counter::new(g);
    copies
        .iter()
        .map(|c| {
            let alphas = (1..l - 1).map(|i| counter.alpha(c, i)).collect::<Result<_, _>>()?;
            Ok(CopyCounts {
                alphas,
                gammas: Some(counter.gamma(c, l)?),
            })
        })
        .collect()
}

fn budget(counts: &[CopyCounts], m: u64) -> BudgetCheck {
    let mut check = BudgetCheck::new(m);
    for c in counts {
        let (g0, g1, g2) = c.gammas.unwrap_or((0, 0, 0));
        check.record(c.alphas.iter().sum::<u64>() + g0 + g1 + g2);
    }
    check
}

fn require_l(l: usize) -> Result<(), EntropyError> {
    if l < 2 {
        return Err(EntropyError::Pattern(format!("path decompositions need l >= 2, got {l}")));
    }
    Ok(())
}

/// Per-copy `Σ_{i=1}^{l-1} α_i <= m` over ordered induced `P_{2l}`.
pub fn even_path_budgets(g: &Graph, l: usize) -> Result<BudgetCheck, EntropyError> {
    require_l(l)?;
    let dist = CopyDistribution::new(g, &Graph::path(2 * l))?;
    Ok(budget(&even_counts(g, dist.copies(), l)?, g.edge_count() as u64))
}

/// Per-copy `Σ_{i=1}^{l-2} α_i + γ_0 + γ_1 + γ_2 <= m` over ordered
/// induced `P_{2l+1}`.
pub fn odd_path_budgets(g: &Graph, l: usize) -> Result<BudgetCheck, EntropyError> {
    require_l(l)?;
    let dist = CopyDistribution::new(g, &Graph::path(2 * l + 1))?;
    Ok(budget(&odd_counts(g, dist.copies(), l)?, g.edge_count() as u64))
}

fn mean_log(counts: &[CopyCounts], f: impl Fn(&CopyCounts) -> u64) -> f64 {
    let sum: f64 = counts.iter().map(|c| (f(c) as f64).ln()).sum();
    sum / counts.len() as f64
}

fn push_budget(report: &mut EntropyReport, name: &str, check: &BudgetCheck) {
    report.upper_exact(format!("max per-copy {name} <= m"), check.max_total as u128, check.m as u128);
    report.upper_exact(
        "copies meeting the budget with equality",
        check.tight as u128,
        check.copies as u128,
    );
}

/// Evaluate every term of the entropy argument for `P_{2l}` or `P_{2l+1}`
/// on `g`.
pub fn verify_path_decomposition(g: &Graph, pattern: Family) -> Result<EntropyReport, EntropyError> {
    match pattern {
        Family::Path(k) if k >= 4 && k % 2 == 0 => even_report(g, k / 2),
        Family::Path(k) if k >= 5 => odd_report(g, (k - 1) / 2),
        other => Err(EntropyError::Pattern(format!(
            "path decomposition needs P_k with k >= 4, got {other}"
        ))),
    }
}

fn odd_coords(len: usize) -> Vec<usize> {
    (0..len).map(|i| 2 * i).collect()
}

fn even_report(g: &Graph, l: usize) -> Result<EntropyReport, EntropyError> {
    let dist = CopyDistribution::new(g, &Graph::path(2 * l))?;
    if dist.is_empty() {
        return Err(EntropyError::EmptySupport);
    }
    let m = g.edge_count() as u64;
    let mf = m as f64;
    let v = View::UnorientedEdges;
    let counts = even_counts(g, dist.copies(), l)?;
    let mut r = EntropyReport::new();

    let all: Vec<usize> = (0..2 * l - 1).collect();
    let h_p = projection_entropy(&dist, v, &all, &[])?;
    let log_2u = (dist.len() as f64).ln();
    r.identity("H(P) = log(2 Upsilon)", h_p, log_2u);

    let h_e1 = projection_entropy(&dist, v, &[0], &[])?;
    r.upper("H(e_1) <= log m", h_e1, mf.ln());

    let mut chain = h_e1;
    let mut sum_mean_log = 0.0;
    for i in 1..l {
        let h = projection_entropy(&dist, v, &[2 * i], &odd_coords(i))?;
        let ml = mean_log(&counts, |c| c.alphas[i - 1]);
        r.upper(format!("H(e_{} | odd prefix of length {i}) <= E log alpha_{i}", 2 * i + 1), h, ml);
        chain += h;
        sum_mean_log += ml;
    }
    let odds = odd_coords(l);
    let evens: Vec<usize> = (0..l - 1).map(|i| 2 * i + 1).collect();
    let h_evens = projection_entropy(&dist, v, &evens, &odds)?;
    r.identity("H(even edges | odd edges) = 0", h_evens, 0.0);
    chain += h_evens;
    r.identity("chain rule: H(P) = H(e_1) + sum of conditionals", h_p, chain);

    push_budget(&mut r, "sum alpha_i", &budget(&counts, m));

    let lm1 = (l - 1) as f64;
    r.upper(
        "AM-GM: E log prod alpha_i <= (l-1) log(m/(l-1))",
        sum_mean_log,
        lm1 * (mf / lm1).ln(),
    );
    r.upper(
        "log(2 Upsilon) <= log(m^l / (l-1)^(l-1))",
        log_2u,
        l as f64 * mf.ln() - lm1 * lm1.ln(),
    );
    Ok(r)
}

fn odd_report(g: &Graph, l: usize) -> Result<EntropyReport, EntropyError> {
    let dist = CopyDistribution::new(g, &Graph::path(2 * l + 1))?;
    if dist.is_empty() {
        return Err(EntropyError::EmptySupport);
    }
    let m = g.edge_count() as u64;
    let mf = m as f64;
    let lf = l as f64;
    let v = View::UnorientedEdges;
    let counts = odd_counts(g, dist.copies(), l)?;
    let gammas = |c: &CopyCounts| c.gammas.expect("odd path counts carry gammas");
    let mut r = EntropyReport::new();

    let all: Vec<usize> = (0..2 * l).collect();
    let h_p = projection_entropy(&dist, v, &all, &[])?;
    let log_2u = (dist.len() as f64).ln();
    r.identity("H(P) = log(2 Upsilon)", h_p, log_2u);

    let h_e1 = projection_entropy(&dist, v, &[0], &[])?;
    r.upper("H(e_1) <= log m", h_e1, mf.ln());
    let mut chain = h_e1;

    let mut sum_mean_log_alpha = 0.0;
    for i in 1..l - 1 {
        let h = projection_entropy(&dist, v, &[2 * i], &odd_coords(i))?;
        let ml = mean_log(&counts, |c| c.alphas[i - 1]);
        r.upper(format!("H(e_{} | odd prefix of length {i}) <= E log alpha_{i}", 2 * i + 1), h, ml);
        chain += h;
        sum_mean_log_alpha += ml;
    }

    let prefix = odd_coords(l - 1);
    let last = 2 * l - 1;
    let h_last = projection_entropy(&dist, v, &[last], &prefix)?;
    let ml_g0 = mean_log(&counts, |c| gammas(c).0);
    r.upper(format!("H(e_{} | odd prefix) <= E log gamma_0", 2 * l), h_last, ml_g0);
    chain += h_last;

    let mut given = prefix.clone();
    given.push(last);
    let (a, b) = (2 * l - 3, 2 * l - 2);
    let h_pair = projection_entropy(&dist, v, &[a, b], &given)?;
    let h_a = projection_entropy(&dist, v, &[a], &given)?;
    let h_b = projection_entropy(&dist, v, &[b], &given)?;
    let ml_g1 = mean_log(&counts, |c| gammas(c).1);
    let ml_g2 = mean_log(&counts, |c| gammas(c).2);
    let (ea, eb) = (2 * l - 2, 2 * l - 1);
    r.identity(format!("H(e_{ea}, e_{eb} | rest) = H(e_{ea} | rest)"), h_pair, h_a);
    r.identity(format!("H(e_{ea}, e_{eb} | rest) = H(e_{eb} | rest)"), h_pair, h_b);
    r.upper(format!("H(e_{ea} | rest) <= E log gamma_1"), h_a, ml_g1);
    r.upper(format!("H(e_{eb} | rest) <= E log gamma_2"), h_b, ml_g2);
    r.upper(
        format!("H(e_{ea}, e_{eb} | rest) <= (E log gamma_1 + E log gamma_2) / 2"),
        h_pair,
        (ml_g1 + ml_g2) / 2.0,
    );
    chain += h_pair;

    let early: Vec<usize> = (0..l - 2).map(|i| 2 * i + 1).collect();
    let others: Vec<usize> = all.iter().copied().filter(|c| !early.contains(c)).collect();
    let h_early = projection_entropy(&dist, v, &early, &others)?;
    r.identity("H(early even edges | all other edges) = 0", h_early, 0.0);
    chain += h_early;
    r.identity("chain rule: H(P) = H(e_1) + sum of conditionals", h_p, chain);

    push_budget(&mut r, "sum alpha_i + gamma_0 + gamma_1 + gamma_2", &budget(&counts, m));

    r.upper(
        "AM-GM: E log(prod alpha_i^2 gamma_0^2 gamma_1 gamma_2) <= log((m/l)^(2l) / 4)",
        2.0 * sum_mean_log_alpha + 2.0 * ml_g0 + ml_g1 + ml_g2,
        2.0 * lf * (mf / lf).ln() - 4f64.ln(),
    );
    r.upper(
        "log(2 Upsilon) <= log(m^(l+1) / (2 l^l))",
        log_2u,
        (lf + 1.0) * mf.ln() - 2f64.ln() - lf * lf.ln(),
    );
    Ok(r)
}
