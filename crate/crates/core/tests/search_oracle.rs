mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{compact_m_edge_graphs, naive_ordered_count};
use inducibility::search::{count_m_edge_graphs, enumerate_m_edge_graphs, rho_exact, rho_exact_many, SearchConfig, KNOWN_CLASS_COUNTS};
use inducibility::{automorphism_order, canonical_form, parse_graph6, Graph};

fn patterns() -> Vec<Graph> {
    vec![Graph::path(3), Graph::path(4), Graph::cycle(4), Graph::complete(3), Graph::star(3)]
}

/// Dedupe every compact edge subset by canonical label, then take maxima
/// with naive counting.
#[test]
fn generation_and_rho_match_filter_then_canonicalise() {
    let cfg = SearchConfig::default();
    for m in 1..=5 {
        let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
        for g in compact_m_edge_graphs(m) {
            classes.entry(canonical_form(&g).unwrap().label).or_insert(g);
        }
        assert_eq!(classes.len() as u64, KNOWN_CLASS_COUNTS[m], "m = {m}");

        let generated: BTreeSet<String> = enumerate_m_edge_graphs(m, &cfg)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap().label)
            .collect();
        assert_eq!(generated, classes.keys().cloned().collect());

        for h in patterns() {
            let aut = automorphism_order(&h);
            let mut best = 0;
            let mut winners = BTreeSet::new();
            for (label, g) in &classes {
                let c = naive_ordered_count(g, &h) / aut;
                if c > best {
                    best = c;
                    winners.clear();
                }
                if c == best {
                    winners.insert(label.clone());
                }
            }
            let r = rho_exact(&h, m, &cfg).unwrap();
            assert_eq!(r.rho, best, "m = {m}");
            assert!(!r.truncated);
            assert_eq!(r.extremal.iter().cloned().collect::<BTreeSet<_>>(), winners);
        }
    }
}

#[test]
fn class_counts_through_m_eight() {
    let cfg = SearchConfig::default();
    for m in 0..=8 {
        assert_eq!(count_m_edge_graphs(m, &cfg).unwrap(), KNOWN_CLASS_COUNTS[m]);
    }
}

#[test]
fn sharding_is_invisible() {
    let hs = [Graph::path(4), Graph::cycle(5), Graph::cycle(4)];
    for m in [6, 7] {
        let base = rho_exact_many(&hs, m, &SearchConfig::default()).unwrap();
        for shards in [2, 3, 8] {
            let cfg = SearchConfig { shards, ..SearchConfig::default() };
            assert_eq!(rho_exact_many(&hs, m, &cfg).unwrap(), base);
        }
    }
}

#[test]
fn certificates_are_valid_and_rho_is_monotone() {
    let cfg = SearchConfig::default();
    for h in [Graph::path(4), Graph::cycle(4), Graph::cycle(5), Graph::path(5)] {
        let mut prev = 0;
        for m in 1..=8 {
            let r = rho_exact(&h, m, &cfg).unwrap();
            // A disjoint extra edge never destroys a copy of a connected pattern.
            assert!(r.rho >= prev);
            prev = r.rho;
            for label in &r.extremal {
                let g = parse_graph6(label).unwrap();
                assert_eq!(g.edge_count(), m);
                assert!(!g.has_isolated_vertex());
                assert_eq!(canonical_form(&g).unwrap().label, *label);
                assert_eq!(naive_ordered_count(&g, &h) / automorphism_order(&h), r.rho);
            }
        }
    }
}

#[test]
fn certificate_cap_sets_the_overflow_flag() {
    let cfg = SearchConfig { max_certificates: 1, ..SearchConfig::default() };
    let full = rho_exact(&Graph::path(3), 4, &SearchConfig::default()).unwrap();
    let capped = rho_exact(&Graph::path(3), 4, &cfg).unwrap();
    assert_eq!(capped.rho, full.rho);
    assert_eq!(capped.extremal.len(), 1);
    assert_eq!(capped.truncated, full.extremal.len() > 1);
    assert_eq!(capped.extremal[0], full.extremal[0]);
}

#[test]
fn ceiling_is_enforced() {
    let cfg = SearchConfig { ceiling: 5, ..SearchConfig::default() };
    assert!(rho_exact(&Graph::path(3), 6, &cfg).is_err());
}
