//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).
//!
//! Left vertices are indexed `0..left.len()`, right vertices are bit
//! positions in the left adjacency masks. Left vertices are processed in
//! index order and right candidates tried lowest first, so the matching
//! returned is a deterministic function of the input.

use crate::graph::bits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `left[i]` is the right partner of left vertex `i`.
    pub left: Vec<Option<usize>>,
    pub size: usize,
}

pub fn max_matching(left: &[u64]) -> Matching {
    let mut right_of = [usize::MAX; 64];
    let mut partner = vec![None; left.len()];
    let mut size = 0;
    for i in 0..left.len() {
        let mut visited = 0u64;
        if augment(i, left, &mut right_of, &mut partner, &mut visited) {
            size += 1;
        }
    }
    Matching {
        left: partner,
        size,
    }
}

fn augment(
    i: usize,
    left: &[u64],
    right_of: &mut [usize; 64],
    partner: &mut [Option<usize>],
    visited: &mut u64,
) -> bool {
    for r in bits(left[i] & !*visited) {
        *visited |= 1 << r;
        let owner = right_of[r];
        if owner == usize::MAX || augment(owner, left, right_of, partner, visited) {
            right_of[r] = i;
            partner[i] = Some(r);
            return true;
        }
    }
    false
}

/// Size of a maximum matching only.
pub fn matching_size(left: &[u64]) -> usize {
    max_matching(left).size
}
