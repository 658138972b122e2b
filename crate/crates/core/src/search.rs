//! Isomorph-free generation of graphs with a given number of edges and no
//! isolated vertices, and exact ρ(H, m) on top of it.
//!
//! Generation is by canonical augmentation. Every graph is stored in
//! canonical labelling. A child `C = G + e` (new edge between existing
//! vertices, to a fresh vertex, or a fresh disjoint `K2`) is accepted iff
//! deleting the last edge of `canon(C)` and stripping isolated vertices
//! gives back `G`. Each class therefore has exactly one parent class, and
//! duplicates among the children of one parent are removed by label.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::canon::{automorphism_order, canonize, Canon};
use crate::count::{CountError, Matcher};
use crate::graph::Graph;
use crate::graph6::write_graph6;

/// Number of isomorphism classes of graphs with `m` edges and no isolated
/// vertices, for `m = 0, 1, ...` (OEIS A000664).
pub const KNOWN_CLASS_COUNTS: [u64; 14] = [
    1, 1, 2, 5, 11, 26, 68, 177, 497, 1476, 4613, 15216, 52944, 193367,
];

pub const DEFAULT_CEILING: usize = 12;
pub const DEFAULT_MAX_CERTIFICATES: usize = 1000;
/// Bump whenever generation or counting changes in a way that could alter
/// stored results.
pub const GENERATOR_VERSION: &str = "canon-aug-1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("m = {m} exceeds the search ceiling {ceiling} ({estimate})")]
    Ceiling {
        m: usize,
        ceiling: usize,
        estimate: String,
    },
    #[error(transparent)]
    Pattern(#[from] CountError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub ceiling: usize,
    pub shards: usize,
    pub max_certificates: usize,
    /// Only generate graphs on at most this many vertices.
    pub max_vertices: Option<usize>,
    /// Depth at which the augmentation tree is cut into shards.
    pub split_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            ceiling: DEFAULT_CEILING,
            shards: 1,
            max_certificates: DEFAULT_MAX_CERTIFICATES,
            max_vertices: None,
            split_depth: 3,
        }
    }
}

pub fn estimated_classes(m: usize) -> String {
    match KNOWN_CLASS_COUNTS.get(m) {
        Some(c) => format!("{c} isomorphism classes"),
        None => format!(
            "more than {} isomorphism classes",
            KNOWN_CLASS_COUNTS[KNOWN_CLASS_COUNTS.len() - 1]
        ),
    }
}

fn check_ceiling(m: usize, config: &SearchConfig) -> Result<(), SearchError> {
    if m > config.ceiling {
        return Err(SearchError::Ceiling {
            m,
            ceiling: config.ceiling,
            estimate: estimated_classes(m),
        });
    }
    Ok(())
}

/// A node of the augmentation tree: a canonically labelled graph and
/// generators of its automorphism group.
struct Node {
    graph: Graph,
    generators: Vec<Vec<usize>>,
}

impl Node {
    fn from_canon(c: Canon) -> Self {
        // Generators found during the search act on input labels; conjugate
        // them to the canonical labels.
        let n = c.perm.len();
        let generators = c
            .generators
            .iter()
            .map(|gamma| {
                let mut out = vec![0usize; n];
                for v in 0..n {
                    out[c.perm[v]] = c.perm[gamma[v]];
                }
                out
            })
            .collect();
        Node {
            graph: c.graph,
            generators,
        }
    }
}

fn root() -> Node {
    Node {
        graph: Graph::empty(0).expect("empty graph"),
        generators: Vec::new(),
    }
}

/// The edge removed to find a canonical graph's parent: the largest
/// `(max, min)` endpoint pair.
fn last_edge(g: &Graph) -> (usize, usize) {
    g.edges()
        .into_iter()
        .map(|(a, b)| (b, a))
        .max()
        .expect("graph has an edge")
}

fn parent_of(canonical_child: &Graph) -> Graph {
    let (a, b) = last_edge(canonical_child);
    let mut p = canonical_child.clone();
    p.remove_edge(a, b);
    canonize(&p.without_isolated()).graph
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// One representative per automorphism orbit of candidate augmentations.
/// Vertex `n` stands for a fresh vertex; `(n, n + 1)` is a fresh `K2`.
fn augmentations(node: &Node) -> Vec<(usize, usize)> {
    let g = &node.graph;
    let n = g.n();
    let idx = |a: usize, b: usize| a * (n + 1) + b;
    let mut uf: Vec<usize> = (0..(n + 1) * (n + 1)).collect();
    for gamma in &node.generators {
        for a in 0..n {
            let ga = gamma[a];
            let (x, y) = (find(&mut uf, idx(a, n)), find(&mut uf, idx(ga, n)));
            uf[x.max(y)] = x.min(y);
            for b in a + 1..n {
                let gb = gamma[b];
                let (p, q) = (ga.min(gb), ga.max(gb));
                let (x, y) = (find(&mut uf, idx(a, b)), find(&mut uf, idx(p, q)));
                uf[x.max(y)] = x.min(y);
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) && find(&mut uf, idx(a, b)) == idx(a, b) {
                out.push((a, b));
            }
        }
    }
    for a in 0..n {
        if find(&mut uf, idx(a, n)) == idx(a, n) {
            out.push((a, n));
        }
    }
    out.push((n, n + 1));
    out
}

fn children(node: &Node, max_vertices: usize) -> Vec<Node> {
    let g = &node.graph;
    let n = g.n();
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in augmentations(node) {
        let extra = if b == n + 1 {
            2
        } else if b == n {
            1
        } else {
            0
        };
        if n + extra > max_vertices {
            continue;
        }
        let mut child = g.clone();
        for _ in 0..extra {
            child.add_vertex().expect("vertex limit checked");
        }
        child.add_edge(a, b).expect("valid augmentation");
        let c = canonize(&child);
        if seen.contains(&c.graph) {
            continue;
        }
        if parent_of(&c.graph) != *g {
            continue;
        }
        seen.insert(c.graph.clone());
        out.push(Node::from_canon(c));
    }
    out
}

fn vertex_cap(m: usize, config: &SearchConfig) -> usize {
    config
        .max_vertices
        .unwrap_or(usize::MAX)
        .min(crate::graph::MAX_VERTICES)
        .min(2 * m.max(1))
}

/// Nodes at depth `depth`, in generation order.
fn level(depth: usize, cap: usize) -> Vec<Node> {
    let mut frontier = vec![root()];
    for _ in 0..depth {
        frontier = frontier.iter().flat_map(|n| children(n, cap)).collect();
    }
    frontier
}

fn descend<A>(node: &Node, remaining: usize, cap: usize, acc: &mut A, visit: &impl Fn(&mut A, &Graph)) {
    if remaining == 0 {
        visit(acc, &node.graph);
        return;
    }
    for child in children(node, cap) {
        descend(&child, remaining - 1, cap, acc, visit);
    }
}

/// Visit every class with `m` edges. The tree is cut at a fixed depth and
/// the subtrees dealt round-robin to `config.shards` workers; one
/// accumulator per shard is returned, in shard order.
fn run_sharded<A, I, V>(m: usize, config: &SearchConfig, init: I, visit: V) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Graph) + Sync,
{
    let cap = vertex_cap(m, config);
    let split = config.split_depth.min(m);
    let top = level(split, cap);
    let shards = config.shards.max(1);
    if shards == 1 {
        let mut acc = init();
        for node in &top {
            descend(node, m - split, cap, &mut acc, &visit);
        }
        return vec![acc];
    }
    let (top, init, visit) = (&top, &init, &visit);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|s| {
                scope.spawn(move || {
                    let mut acc = init();
                    for node in top.iter().skip(s).step_by(shards) {
                        descend(node, m - split, cap, &mut acc, visit);
                    }
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker"))
            .collect()
    })
}

/// Canonical representatives of every class with `m` edges and no isolated
/// vertices, sorted by graph6 label.
pub fn enumerate_m_edge_graphs(m: usize, config: &SearchConfig) -> Result<Vec<Graph>, SearchError> {
    check_ceiling(m, config)?;
    let parts = run_sharded(m, config, Vec::new, |acc: &mut Vec<Graph>, g| acc.push(g.clone()));
    let mut all: Vec<(String, Graph)> = parts
        .into_iter()
        .flatten()
        .map(|g| (write_graph6(&g).expect("within limit"), g))
        .collect();
    all.sort();
    Ok(all.into_iter().map(|(_, g)| g).collect())
}

/// Number of classes with `m` edges, without materialising them.
pub fn count_m_edge_graphs(m: usize, config: &SearchConfig) -> Result<u64, SearchError> {
    check_ceiling(m, config)?;
    let parts = run_sharded(m, config, || 0u64, |acc: &mut u64, _| *acc += 1);
    Ok(parts.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Canonical graph6 of the pattern.
    pub pattern: String,
    pub m: usize,
    pub rho: u64,
    /// Canonical graph6 labels of extremal graphs, sorted, at most the
    /// configured cap.
    pub extremal: Vec<String>,
    pub truncated: bool,
    pub classes_scanned: u64,
}

/// Running maximum with a capped, sorted certificate set.
#[derive(Debug, Clone)]
struct Best {
    rho: u64,
    certs: BTreeSet<String>,
    truncated: bool,
    classes: u64,
}

impl Best {
    fn new() -> Self {
        Best {
            rho: 0,
            certs: BTreeSet::new(),
            truncated: false,
            classes: 0,
        }
    }

    fn offer(&mut self, value: u64, g: &Graph, cap: usize) {
        if value < self.rho {
            return;
        }
        if value > self.rho {
            self.rho = value;
            self.certs.clear();
            self.truncated = false;
        }
        self.certs.insert(write_graph6(g).expect("within limit"));
        if self.certs.len() > cap {
            self.certs.pop_last();
            self.truncated = true;
        }
    }

    fn merge(parts: Vec<Best>, cap: usize) -> Best {
        let rho = parts.iter().map(|b| b.rho).max().unwrap_or(0);
        let mut out = Best::new();
        out.rho = rho;
        for p in parts {
            out.classes += p.classes;
            if p.rho == rho {
                out.truncated |= p.truncated;
                out.certs.extend(p.certs);
            }
        }
        while out.certs.len() > cap {
            out.certs.pop_last();
            out.truncated = true;
        }
        out
    }
}

/// Exact ρ(h, m) for several patterns from one enumeration.
pub fn rho_exact_many(
    patterns: &[Graph],
    m: usize,
    config: &SearchConfig,
) -> Result<Vec<SearchResult>, SearchError> {
    for h in patterns {
        if let Some(&v) = h.isolated_vertices().first() {
            return Err(CountError::IsolatedPatternVertex(v).into());
        }
    }
    check_ceiling(m, config)?;
    let auts: Vec<u64> = patterns.iter().map(automorphism_order).collect();
    let cap = config.max_certificates;
    let parts = run_sharded(
        m,
        config,
        || vec![Best::new(); patterns.len()],
        |acc: &mut Vec<Best>, g| {
            for (i, h) in patterns.iter().enumerate() {
                let ordered = if h.n() > g.n() {
                    0
                } else {
                    Matcher::new(g, h, &[]).count()
                };
                acc[i].classes += 1;
                acc[i].offer(ordered / auts[i], g, cap);
            }
        },
    );
    let mut per_pattern: Vec<Vec<Best>> = vec![Vec::new(); patterns.len()];
    for shard in parts {
        for (i, b) in shard.into_iter().enumerate() {
            per_pattern[i].push(b);
        }
    }
    Ok(patterns
        .iter()
        .zip(per_pattern)
        .map(|(h, parts)| {
            let best = Best::merge(parts, cap);
            SearchResult {
                pattern: write_graph6(&canonize(h).graph).expect("within limit"),
                m,
                rho: best.rho,
                extremal: best.certs.into_iter().collect(),
                truncated: best.truncated,
                classes_scanned: best.classes,
            }
        })
        .collect())
}

pub fn rho_exact(h: &Graph, m: usize, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    Ok(rho_exact_many(std::slice::from_ref(h), m, config)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let cfg = SearchConfig::default();
        assert_eq!(enumerate_m_edge_graphs(0, &cfg).unwrap().len(), 1);
        assert_eq!(enumerate_m_edge_graphs(1, &cfg).unwrap(), vec![Graph::complete(2)]);
        assert_eq!(enumerate_m_edge_graphs(2, &cfg).unwrap().len(), 2);
        assert_eq!(enumerate_m_edge_graphs(3, &cfg).unwrap().len(), 5);
    }

    #[test]
    fn class_counts_match_known_values() {
        let cfg = SearchConfig::default();
        for m in 0..=8 {
            assert_eq!(count_m_edge_graphs(m, &cfg).unwrap(), KNOWN_CLASS_COUNTS[m], "m = {m}");
        }
    }

    #[test]
    fn sharding_does_not_change_results() {
        let base = SearchConfig::default();
        let sharded = SearchConfig {
            shards: 5,
            ..SearchConfig::default()
        };
        for m in [4, 6, 7] {
            assert_eq!(
                enumerate_m_edge_graphs(m, &base).unwrap(),
                enumerate_m_edge_graphs(m, &sharded).unwrap()
            );
            assert_eq!(
                rho_exact(&Graph::path(4), m, &base).unwrap(),
                rho_exact(&Graph::path(4), m, &sharded).unwrap()
            );
        }
    }

    #[test]
    fn rho_examples() {
        let cfg = SearchConfig::default();
        let r = rho_exact(&Graph::path(3), 5, &cfg).unwrap();
        assert_eq!(r.rho, 10);
        let star = write_graph6(&canonize(&Graph::star(5)).graph).unwrap();
        assert!(r.extremal.contains(&star));
        let r = rho_exact(&Graph::cycle(4), 4, &cfg).unwrap();
        assert_eq!(r.rho, 1);
        assert_eq!(r.extremal, vec![write_graph6(&canonize(&Graph::cycle(4)).graph).unwrap()]);
        assert_eq!(rho_exact(&Graph::complete(3), 3, &cfg).unwrap().rho, 1);
    }

    #[test]
    fn ceiling_refusal() {
        let cfg = SearchConfig {
            ceiling: 5,
            ..SearchConfig::default()
        };
        let err = rho_exact(&Graph::path(3), 6, &cfg).unwrap_err();
        assert!(matches!(err, SearchError::Ceiling { m: 6, ceiling: 5, .. }));
        assert!(err.to_string().contains("68 isomorphism classes"));
    }

    #[test]
    fn vertex_cap_enumerates_small_graphs() {
        // Graphs without isolated vertices on at most 5 vertices: 1+1+2+7+23.
        let cfg = SearchConfig {
            max_vertices: Some(5),
            ..SearchConfig::default()
        };
        let total: u64 = (0..=10).map(|m| count_m_edge_graphs(m, &cfg).unwrap()).sum();
        assert_eq!(total, 1 + 1 + 2 + 7 + 23);
    }
}
