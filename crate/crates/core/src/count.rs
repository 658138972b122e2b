//! Induced-copy counting by backtracking over pattern vertices.
//!
//! Pattern vertices are visited in a connected-first order. At each step
//! the candidate set for the next pattern vertex is the host neighbourhood
//! intersection of already-mapped pattern neighbours, minus the
//! neighbourhoods of mapped non-neighbours, minus used vertices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::automorphism_order;
use crate::graph::{bits, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("pattern has isolated vertex {0}; induced counts of such patterns are not defined here")]
    IsolatedPatternVertex(usize),
    #[error("pattern has {pattern} vertices but host only {host}")]
    PatternTooLarge { pattern: usize, host: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSummary {
    pub ordered: u64,
    pub unordered: u64,
    pub aut: u64,
}

/// A prepared backtracking plan for one (host, pattern) pair.
pub(crate) struct Matcher<'a> {
    host: &'a Graph,
    /// Pattern vertices in visit order.
    order: Vec<usize>,
    /// For position i: pattern-adjacent earlier positions, as a mask over positions.
    adj_prev: Vec<u64>,
    /// For position i: pattern-non-adjacent earlier positions.
    non_prev: Vec<u64>,
    /// Host vertices whose degree is at least the pattern degree at position i.
    deg_ok: Vec<u64>,
    /// Host vertex forced at position i, if any.
    fixed: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    /// `fixed` lists (pattern vertex, host vertex) pairs that every copy must
    /// respect; they are placed first in the visit order.
    pub(crate) fn new(host: &'a Graph, pattern: &Graph, fixed: &[(usize, usize)]) -> Self {
        let k = pattern.n();
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut placed = 0u64;
        for &(p, _) in fixed {
            if placed >> p & 1 == 0 {
                order.push(p);
                placed |= 1 << p;
            }
        }
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    (
                        (pattern.neighbors(v) & placed).count_ones(),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex exists");
            order.push(next);
            placed |= 1 << next;
        }
        let mut pos = vec![0usize; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj_prev = vec![0u64; k];
        let mut non_prev = vec![0u64; k];
        for i in 0..k {
            for j in 0..i {
                if pattern.has_edge(order[i], order[j]) {
                    adj_prev[i] |= 1 << j;
                } else {
                    non_prev[i] |= 1 << j;
                }
            }
        }
        let deg_ok = order
            .iter()
            .map(|&v| {
                let d = pattern.degree(v);
                (0..host.n())
                    .filter(|&x| host.degree(x) >= d)
                    .fold(0u64, |acc, x| acc | 1 << x)
            })
            .collect();
        let mut fixed_at = vec![None; k];
        for &(p, h) in fixed {
            fixed_at[pos[p]] = Some(h);
        }
        Matcher {
            host,
            order,
            adj_prev,
            non_prev,
            deg_ok,
            fixed: fixed_at,
        }
    }

    fn candidates(&self, i: usize, images: &[usize], used: u64) -> u64 {
        let mut c = self.deg_ok[i] & !used;
        for j in bits(self.adj_prev[i]) {
            c &= self.host.neighbors(images[j]);
        }
        for j in bits(self.non_prev[i]) {
            c &= !self.host.neighbors(images[j]);
        }
        if let Some(h) = self.fixed[i] {
            c &= 1 << h;
        }
        c
    }

    /// Number of ordered induced copies (consistent with the fixed pairs).
    pub(crate) fn count(&self) -> u64 {
        let k = self.order.len();
        if k == 0 {
            return 1;
        }
        if k > self.host.n() {
            return 0;
        }
        let mut images = vec![0usize; k];
        self.count_from(0, &mut images, 0)
    }

    /// Count copies whose first visited pattern vertex maps into `first_mask`.
    pub(crate) fn count_with_first(&self, first_mask: u64) -> u64 {
        let k = self.order.len();
        if k == 0 || k > self.host.n() {
            return self.count();
        }
        let mut images = vec![0usize; k];
        let c = self.candidates(0, &images, 0) & first_mask;
        if k == 1 {
            return c.count_ones() as u64;
        }
        let mut total = 0;
        for x in bits(c) {
            images[0] = x;
            total += self.count_from(1, &mut images, 1 << x);
        }
        total
    }

    fn count_from(&self, i: usize, images: &mut [usize], used: u64) -> u64 {
        let c = self.candidates(i, images, used);
        if i + 1 == self.order.len() {
            return c.count_ones() as u64;
        }
        let mut total = 0;
        for x in bits(c) {
            images[i] = x;
            total += self.count_from(i + 1, images, used | 1 << x);
        }
        total
    }

    /// Visit every ordered copy as a map pattern vertex -> host vertex.
    pub(crate) fn for_each(&self, mut visit: impl FnMut(&[usize])) {
        let k = self.order.len();
        if k > self.host.n() {
            return;
        }
        let mut images = vec![0usize; k];
        let mut by_pattern = vec![0usize; k];
        self.each_from(0, &mut images, 0, &mut by_pattern, &mut visit);
    }

    fn each_from(
        &self,
        i: usize,
        images: &mut [usize],
        used: u64,
        by_pattern: &mut [usize],
        visit: &mut impl FnMut(&[usize]),
    ) {
        if i == self.order.len() {
            for (j, &p) in self.order.iter().enumerate() {
                by_pattern[p] = images[j];
            }
            visit(by_pattern);
            return;
        }
        for x in bits(self.candidates(i, images, used)) {
            images[i] = x;
            self.each_from(i + 1, images, used | 1 << x, by_pattern, visit);
        }
    }
}

fn check_pattern(host: &Graph, pattern: &Graph) -> Result<(), CountError> {
    if let Some(&v) = pattern.isolated_vertices().first() {
        return Err(CountError::IsolatedPatternVertex(v));
    }
    if pattern.n() > host.n() {
        return Err(CountError::PatternTooLarge {
            pattern: pattern.n(),
            host: host.n(),
        });
    }
    Ok(())
}

/// Ordered copies without the isolated-vertex check; used for automorphism
/// counting where the pattern is the host itself.
pub(crate) fn count_ordered_unchecked(host: &Graph, pattern: &Graph) -> u64 {
    Matcher::new(host, pattern, &[]).count()
}

pub fn count_induced(host: &Graph, pattern: &Graph) -> Result<CountSummary, CountError> {
    check_pattern(host, pattern)?;
    let ordered = count_ordered_unchecked(host, pattern);
    Ok(summary(ordered, automorphism_order(pattern)))
}

/// Same as [`count_induced`], with the search split by the image of the
/// first pattern vertex across `shards` worker threads.
pub fn count_induced_sharded(
    host: &Graph,
    pattern: &Graph,
    shards: usize,
) -> Result<CountSummary, CountError> {
    check_pattern(host, pattern)?;
    let shards = shards.max(1);
    let matcher = Matcher::new(host, pattern, &[]);
    let masks: Vec<u64> = (0..shards)
        .map(|s| {
            (0..host.n())
                .filter(|v| v % shards == s)
                .fold(0u64, |acc, v| acc | 1 << v)
        })
        .collect();
    let ordered = if pattern.n() == 0 {
        1
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = masks
                .iter()
                .map(|&mask| {
                    let m = &matcher;
                    scope.spawn(move || m.count_with_first(mask))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("count worker")).sum()
        })
    };
    Ok(summary(ordered, automorphism_order(pattern)))
}

fn summary(ordered: u64, aut: u64) -> CountSummary {
    debug_assert_eq!(ordered % aut, 0);
    CountSummary {
        ordered,
        unordered: ordered / aut,
        aut,
    }
}

/// All ordered induced copies, each indexed by pattern vertex.
pub fn ordered_copies(host: &Graph, pattern: &Graph) -> Result<Vec<Vec<usize>>, CountError> {
    check_pattern(host, pattern)?;
    let mut out = Vec::new();
    Matcher::new(host, pattern, &[]).for_each(|c| out.push(c.to_vec()));
    Ok(out)
}

/// Unordered copies as sorted vertex sets, deduplicated.
pub fn induced_vertex_sets(host: &Graph, pattern: &Graph) -> Result<Vec<u64>, CountError> {
    check_pattern(host, pattern)?;
    let mut sets = std::collections::BTreeSet::new();
    Matcher::new(host, pattern, &[]).for_each(|c| {
        sets.insert(c.iter().fold(0u64, |acc, &v| acc | 1 << v));
    });
    Ok(sets.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_copy_of_c5() {
        let c5 = Graph::cycle(5);
        let s = count_induced(&c5, &c5).unwrap();
        assert_eq!((s.ordered, s.unordered, s.aut), (10, 1, 10));
    }

    #[test]
    fn c4_in_k33() {
        let s = count_induced(&Graph::complete_bipartite(3, 3), &Graph::cycle(4)).unwrap();
        assert_eq!(s.unordered, 9);
    }

    #[test]
    fn c5_in_petersen() {
        let s = count_induced(&Graph::petersen(), &Graph::cycle(5)).unwrap();
        assert_eq!(s.unordered, 12);
    }

    #[test]
    fn rejects_isolated_pattern_vertex() {
        let h = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(
            count_induced(&Graph::complete(4), &h),
            Err(CountError::IsolatedPatternVertex(2))
        );
    }

    #[test]
    fn sharded_matches_serial() {
        let g = Graph::petersen();
        for h in [Graph::path(4), Graph::cycle(5), Graph::cycle(6)] {
            let a = count_induced(&g, &h).unwrap();
            for shards in [1, 3, 8] {
                assert_eq!(count_induced_sharded(&g, &h, shards).unwrap(), a);
            }
        }
    }

    #[test]
    fn fixed_pairs_restrict_copies() {
        let c6 = Graph::cycle(6);
        let p5 = Graph::path(5);
        let m = Matcher::new(&c6, &p5, &[(0, 0), (1, 1)]);
        assert_eq!(m.count(), 1);
        let mut seen = Vec::new();
        m.for_each(|c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 2, 3, 4]]);
    }
}
