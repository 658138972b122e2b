//! Print the number of isomorphism classes of graphs with m edges and no
//! isolated vertices, with timings.

use std::time::Instant;

use inducibility::search::{count_m_edge_graphs, SearchConfig};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let shards: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let cfg = SearchConfig {
        shards,
        ..SearchConfig::default()
    };
    for m in 0..=max {
        let t = Instant::now();
        let c = count_m_edge_graphs(m, &cfg).expect("within ceiling");
        println!("m={m:2} classes={c:7} {:.2?}", t.elapsed());
    }
}
