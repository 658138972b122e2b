//! The 3-uniform hypergraph of capable edge triples for `C_6`.
//!
//! An unordered triple of host edges is capable when some orientation of
//! it closes an induced `C_6`. Each induced `C_6` gives exactly two such
//! triples (its two perfect matchings), so the hypergraph has `2Γ` edges.
//! Every check here is an exact integer comparison.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::EntropyReport;
use crate::count::ordered_copies;
use crate::graph::Graph;
use crate::tuples::key;

type Edge = (usize, usize);

#[derive(Debug, Clone, Serialize)]
pub struct Codegree {
    pub pair: (Edge, Edge),
    pub d: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct C6HypergraphReport {
    pub m: u64,
    /// Number of induced `C_6`.
    pub gamma: u64,
    pub capable_triples: Vec<[Edge; 3]>,
    pub codegrees: Vec<Codegree>,
    /// `Σ_{hyperedges} (d_12 + d_23 + d_13)`.
    pub codegree_sum: u64,
    pub sum_d: u64,
    pub sum_d_squared: u64,
    pub two_section_edges: u64,
    pub chain: EntropyReport,
}

impl C6HypergraphReport {
    pub fn pass(&self) -> bool {
        self.chain.pass
    }
}

pub fn c6_hypergraph_check(g: &Graph) -> C6HypergraphReport {
    let m = g.edge_count() as u64;
    let copies = if g.n() >= 6 {
        ordered_copies(g, &Graph::cycle(6)).expect("C6 has no isolated vertex")
    } else {
        Vec::new()
    };
    let gamma = copies.len() as u64 / 12;

    let mut triples: BTreeSet<[Edge; 3]> = BTreeSet::new();
    for x in &copies {
        for start in [0, 1] {
            let mut t = [0, 1, 2].map(|i| key(x[(start + 2 * i) % 6], x[(start + 2 * i + 1) % 6]));
            t.sort();
            triples.insert(t);
        }
    }

    let mut codegree: BTreeMap<(Edge, Edge), u64> = BTreeMap::new();
    for t in &triples {
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            *codegree.entry((t[a], t[b])).or_default() += 1;
        }
    }
    let codegree_sum: u64 = triples
        .iter()
        .map(|t| [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| codegree[&(t[a], t[b])]).sum::<u64>())
        .sum();
    let sum_d: u64 = codegree.values().sum();
    let sum_d_squared: u64 = codegree.values().map(|d| d * d).sum();
    let two_section_edges = codegree.len() as u64;
    let hyperedges = triples.len() as u64;

    let mut chain = EntropyReport::new();
    chain.identity_exact("hyperedges = 2 Gamma", hyperedges as u128, 2 * gamma as u128);
    chain.upper_exact(
        "sum over hyperedges of codegrees <= m Gamma",
        codegree_sum as u128,
        (m * gamma) as u128,
    );
    chain.identity_exact(
        "sum over hyperedges of codegrees = sum of d^2",
        codegree_sum as u128,
        sum_d_squared as u128,
    );
    chain.identity_exact("sum of d = 6 Gamma", sum_d as u128, 6 * gamma as u128);
    let (sd, e2) = (sum_d as u128, two_section_edges as u128);
    chain.upper_decided(
        "(sum d)^2 / e(2-section) <= sum of d^2",
        if e2 == 0 { 0.0 } else { (sd * sd) as f64 / e2 as f64 },
        sum_d_squared as f64,
        sd * sd <= sum_d_squared as u128 * e2,
    );
    chain.upper_decided(
        "e(2-section) <= m^2 / 2",
        two_section_edges as f64,
        (m * m) as f64 / 2.0,
        2 * e2 <= (m * m) as u128,
    );
    let m3 = (m as u128).pow(3);
    chain.upper_decided(
        "Gamma <= 3 (m/6)^3",
        gamma as f64,
        3.0 * (m as f64 / 6.0).powi(3),
        72 * gamma as u128 <= m3,
    );

    C6HypergraphReport {
        m,
        gamma,
        capable_triples: triples.into_iter().collect(),
        codegrees: codegree.into_iter().map(|(pair, d)| Codegree { pair, d }).collect(),
        codegree_sum,
        sum_d,
        sum_d_squared,
        two_section_edges,
        chain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{blow_up, BlowupSpec};

    #[test]
    fn c6_itself() {
        let r = c6_hypergraph_check(&Graph::cycle(6));
        assert_eq!(r.gamma, 1);
        assert_eq!(
            r.capable_triples,
            vec![[(0, 1), (2, 3), (4, 5)], [(0, 5), (1, 2), (3, 4)]]
        );
        assert_eq!((r.codegree_sum, r.m * r.gamma), (6, 6));
        assert!(r.pass());
    }

    #[test]
    fn k4_is_trivial() {
        let r = c6_hypergraph_check(&Graph::complete(4));
        assert_eq!((r.gamma, r.codegree_sum, r.two_section_edges), (0, 0, 0));
        assert!(r.pass());
    }

    #[test]
    fn c6_blowup() {
        let g = blow_up(&BlowupSpec::new(Graph::cycle(6), vec![2; 6]).unwrap()).unwrap();
        let r = c6_hypergraph_check(&g);
        assert_eq!((r.gamma, r.m), (64, 24));
        assert_eq!(r.capable_triples.len(), 128);
        assert!(r.pass(), "{:?}", r.chain.failing().collect::<Vec<_>>());
    }
}
