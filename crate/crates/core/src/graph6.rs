//! graph6 encoding (McKay's format), header-less single-line variant.
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix
//! read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed
//! six bits per byte, most significant bit first, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range 63..=126")]
    BadCharacter { offset: usize, byte: u8 },
    #[error("byte {offset}: malformed size header")]
    BadHeader { offset: usize },
    #[error("graph6 encodes {0} vertices, at most {MAX_VERTICES} are supported")]
    UnsupportedSize(usize),
    #[error("byte {offset}: adjacency data ends early ({expected} bytes expected)")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: trailing data after the adjacency bytes")]
    TrailingGarbage { offset: usize },
    #[error("byte {offset}: padding bits are not zero")]
    NonZeroPadding { offset: usize },
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::BadCharacter { offset, byte })
    }
}

/// Parse one graph6 line. A trailing newline and an optional `>>graph6<<`
/// header are accepted; anything else after the adjacency bytes is an error.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if body.is_empty() {
        return Err(Graph6Error::Empty);
    }

    let (n, data_start) = if body[0] == b'~' {
        if body.get(1) == Some(&b'~') {
            // 36-bit form; certainly larger than we support, but only report
            // that if the header itself is well formed.
            if body.len() < 8 {
                return Err(Graph6Error::BadHeader { offset: skip + body.len() });
            }
            let mut n: u64 = 0;
            for (i, &b) in body[2..8].iter().enumerate() {
                n = n << 6 | check_byte(skip + 2 + i, b)? as u64;
            }
            return Err(Graph6Error::UnsupportedSize(n as usize));
        }
        if body.len() < 4 {
            return Err(Graph6Error::BadHeader { offset: skip + body.len() });
        }
        let mut n = 0usize;
        for (i, &b) in body[1..4].iter().enumerate() {
            n = n << 6 | check_byte(skip + 1 + i, b)? as usize;
        }
        if n < 63 {
            return Err(Graph6Error::BadHeader { offset: skip });
        }
        (n, 4)
    } else {
        (check_byte(skip, body[0])? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedSize(n));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &body[data_start..];
    if data.len() < nbytes {
        return Err(Graph6Error::Truncated {
            offset: skip + body.len(),
            expected: nbytes,
        });
    }
    if data.len() > nbytes {
        return Err(Graph6Error::TrailingGarbage {
            offset: skip + data_start + nbytes,
        });
    }

    let mut g = Graph::empty(n).expect("size checked");
    let mut k = 0usize;
    let mut values = Vec::with_capacity(nbytes);
    for (i, &b) in data.iter().enumerate() {
        values.push(check_byte(skip + data_start + i, b)?);
    }
    for j in 1..n {
        for i in 0..j {
            let byte = values[k / 6];
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    if nbytes > 0 {
        let pad = nbytes * 6 - nbits;
        let last = values[nbytes - 1];
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding {
                offset: skip + data_start + nbytes - 1,
            });
        }
    }
    Ok(g)
}

/// Encode as graph6 without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedSize(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parse a multi-graph file: one graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim_end()).map_err(|e| (i + 1, e)))
        .collect()
}
