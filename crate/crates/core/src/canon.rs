//! Canonical labelling by equitable refinement plus individualisation
//! search, with automorphism pruning.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, pick the first non-singleton cell, individualise each of
//! its vertices in turn. Leaves are discrete partitions, i.e. labellings;
//! the canonical labelling is the one whose relabelled adjacency rows are
//! lexicographically largest. Two leaves with equal relabelled graphs give
//! an automorphism, which is used both to skip the rest of an equivalent
//! subtree and to skip children lying in a known orbit.

use serde::{Deserialize, Serialize};

use crate::count;
use crate::graph::Graph;
use crate::graph6::{write_graph6, Graph6Error};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// graph6 text of the relabelled graph.
    pub label: String,
    /// `perm[v]` is the canonical label of input vertex `v`.
    pub perm: Vec<usize>,
}

/// Result of the canonical search, used internally by the generator.
#[derive(Debug, Clone)]
pub(crate) struct Canon {
    pub graph: Graph,
    pub perm: Vec<usize>,
    /// Automorphisms of the input graph found during the search, as maps
    /// `v -> gamma(v)`.
    pub generators: Vec<Vec<usize>>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, Graph6Error> {
    let c = canonize(g);
    Ok(CanonicalForm {
        label: write_graph6(&c.graph)?,
        perm: c.perm,
    })
}

/// The canonical relabelling of `g` as a graph.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonize(g).graph
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_graph(a) == canonical_graph(b)
}

/// |Aut(g)|: the number of vertex permutations preserving adjacency,
/// counted as ordered induced copies of `g` inside itself.
pub fn automorphism_order(g: &Graph) -> u64 {
    count::count_ordered_unchecked(g, g)
}

type Cells = Vec<Vec<usize>>;

fn cell_mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0u64, |acc, &v| acc | 1 << v)
}

/// Refine an ordered partition until every cell is equitable with respect
/// to every other. Cells split in place, sub-cells ordered by neighbour
/// count, so the result is a label-independent function of the input.
fn refine(g: &Graph, cells: &mut Cells) {
    let adj = g.adjacency();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let w = cell_mask(&cells[s]);
            let mut next: Cells = Vec::with_capacity(cells.len() + 2);
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((adj[v] & w).count_ones(), v))
                    .collect();
                if keyed.iter().all(|k| k.0 == keyed[0].0) {
                    next.push(cell);
                    continue;
                }
                keyed.sort_unstable();
                changed = true;
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|k| k.1).collect());
                        start = i;
                    }
                }
            }
            *cells = next;
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Leaf {
    cert: Vec<u64>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    /// Returns `Some(level)` when the caller chain should unwind to the node
    /// at depth `level`.
    fn dfs(&mut self, mut cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut cells);
        let depth = path.len();
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            let jump = self.dfs(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn in_explored_orbit(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().all(|&p| gamma[p] == p) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let n = self.g.n();
        let mut perm = vec![0usize; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let cert = self.g.permuted(&perm).adjacency().to_vec();
        let leaf = Leaf {
            cert,
            perm,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                perm: leaf.perm.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let gamma = automorphism_between(&first.perm, &leaf.perm);
            let level = common_prefix(&first.path, path);
            self.generators.push(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let gamma = automorphism_between(&best.perm, &leaf.perm);
                let level = common_prefix(&best.path, path);
                self.generators.push(gamma);
                Some(level)
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

/// Given two labellings producing the same relabelled graph, the
/// automorphism taking the first to the second.
fn automorphism_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let n = from.len();
    let mut inv_to = vec![0usize; n];
    for (v, &p) in to.iter().enumerate() {
        inv_to[p] = v;
    }
    (0..n).map(|v| inv_to[from[v]]).collect()
}

pub(crate) fn canonize(g: &Graph) -> Canon {
    let n = g.n();
    if n == 0 {
        return Canon {
            graph: g.clone(),
            perm: Vec::new(),
            generators: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.dfs(vec![(0..n).collect()], &mut path);
    let best = search.best.expect("search visits at least one leaf");
    Canon {
        graph: g.permuted(&best.perm),
        perm: best.perm,
        generators: search.generators,
    }
}
