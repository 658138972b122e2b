//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use inducibility::Graph;
use rand::Rng;

/// Every labelled graph on `n` vertices (n <= 7).
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |code| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| code >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Upper-triangle adjacency bits of `g` relabelled by `perm`.
fn code(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut c = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            c = c << 1 | g.has_edge(inv[a], inv[b]) as u64;
        }
    }
    c
}

/// Smallest relabelled adjacency code over all permutations.
pub fn brute_canonical_code(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| code(g, p)).min().unwrap_or(0)
}

pub fn brute_automorphisms(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let base = code(g, &(0..g.n()).collect::<Vec<_>>());
    perms.iter().filter(|p| code(g, p) == base).count() as u64
}

/// Ordered induced copies by trying every injective map.
pub fn naive_ordered_count(host: &Graph, pattern: &Graph) -> u64 {
    fn rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: u64) -> u64 {
        let k = map.len();
        if k == pattern.n() {
            let ok = (0..k).all(|a| (0..k).all(|b| a == b || pattern.has_edge(a, b) == host.has_edge(map[a], map[b])));
            return ok as u64;
        }
        let mut total = 0;
        for x in 0..host.n() {
            if used >> x & 1 == 0 {
                map.push(x);
                total += rec(host, pattern, map, used | 1 << x);
                map.pop();
            }
        }
        total
    }
    if pattern.n() > host.n() {
        return 0;
    }
    rec(host, pattern, &mut Vec::new(), 0)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// α_f by trying every weighting in {0, 1/2, 1}^n, in half-units.
pub fn alpha_f_halves_by_weights(g: &Graph) -> u64 {
    let n = g.n();
    let edges = g.edges();
    let mut w = vec![0u64; n];
    let mut best = 0;
    loop {
        if edges.iter().all(|&(a, b)| w[a] + w[b] <= 2) {
            best = best.max(w.iter().sum());
        }
        let mut i = 0;
        while i < n && w[i] == 2 {
            w[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        w[i] += 1;
    }
}

/// Graphs with exactly `m` edges and no isolated vertices, as the
/// compactly labelled edge subsets on at most `2m` vertices.
pub fn compact_m_edge_graphs(m: usize) -> Vec<Graph> {
    let n = 2 * m;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(m);
    fn rec(pairs: &[(usize, usize)], start: usize, m: usize, pick: &mut Vec<usize>, out: &mut Vec<Graph>) {
        if pick.len() == m {
            let used = pick.iter().fold(0u64, |acc, &i| acc | 1 << pairs[i].0 | 1 << pairs[i].1);
            // Only keep vertex sets of the form {0..k-1}.
            if used & (used + 1) == 0 {
                let k = used.count_ones() as usize;
                let edges: Vec<_> = pick.iter().map(|&i| pairs[i]).collect();
                out.push(Graph::from_edges(k, &edges).unwrap());
            }
            return;
        }
        for i in start..pairs.len() {
            pick.push(i);
            rec(pairs, i + 1, m, pick, out);
            pick.pop();
        }
    }
    rec(&pairs, 0, m, &mut pick, &mut out);
    out
}

/// Entropy in nats of the projection of `rows` computed as `-Σ p ln p`.
pub fn plain_entropy<K: std::hash::Hash + Eq>(rows: impl Iterator<Item = K>) -> f64 {
    let mut counts = std::collections::HashMap::new();
    let mut total = 0usize;
    for r in rows {
        *counts.entry(r).or_insert(0usize) += 1;
        total += 1;
    }
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.ln()
        })
        .sum()
}
