//! Named pattern families `P_k` and `C_k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Path on `k` vertices.
    Path(usize),
    /// Cycle on `k` vertices.
    Cycle(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("not a family name: {0:?} (expected P<k> or C<k>)")]
    Syntax(String),
    #[error("{0} is outside the supported range")]
    Range(String),
}

impl Family {
    pub fn order(self) -> usize {
        match self {
            Family::Path(k) | Family::Cycle(k) => k,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Family::Path(k) => k.saturating_sub(1),
            Family::Cycle(k) => k,
        }
    }

    /// Vertex `i` is adjacent to `i + 1` (and `k-1` to `0` for cycles).
    pub fn graph(self) -> Graph {
        match self {
            Family::Path(k) => Graph::path(k),
            Family::Cycle(k) => Graph::cycle(k),
        }
    }

    /// Recognise a graph as a path or cycle, if it is one.
    pub fn recognise(g: &Graph) -> Option<Family> {
        let n = g.n();
        if n < 2 || g.has_isolated_vertex() || !is_connected(g) {
            return None;
        }
        let degs = g.degree_sequence();
        if degs.iter().all(|&d| d == 2) && n >= 3 {
            return Some(Family::Cycle(n));
        }
        if g.edge_count() == n - 1 && degs[0] <= 2 {
            return Some(Family::Path(n));
        }
        None
    }
}

fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        for v in crate::graph::bits(frontier) {
            next |= g.neighbors(v);
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == g.vertex_mask()
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(k) => write!(f, "P{k}"),
            Family::Cycle(k) => write!(f, "C{k}"),
        }
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || FamilyError::Syntax(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(syntax)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax());
        }
        let k: usize = digits.parse().map_err(|_| FamilyError::Range(s.to_string()))?;
        match head {
            'P' if (2..=64).contains(&k) => Ok(Family::Path(k)),
            'C' if (3..=64).contains(&k) => Ok(Family::Cycle(k)),
            'P' | 'C' => Err(FamilyError::Range(s.to_string())),
            _ => Err(syntax()),
        }
    }
}
