//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed. Exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use inducibility::blowup::{blow_up, blowup_count, theorem1_lower_construction, BlowupSpec};
use inducibility::bounds::{generic_upper, within_upper};
use inducibility::count::ordered_copies;
use inducibility::entropy::{
    c6_hypergraph_check, claim1_check, even_path_budgets, odd_path_budgets, projection_entropy, subset_cover,
    verify_chain_shearer, verify_odd_cycle_shearer, CopyDistribution, Decomposition, View,
};
use inducibility::sandwich::verify_sandwich;
use inducibility::search::{enumerate_m_edge_graphs, rho_exact, rho_exact_many, SearchConfig};
use inducibility::{
    alpha_f, alpha_f_bruteforce, automorphism_order, canonical_form, count_induced, write_graph6, Family, Graph,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const EPS: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
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

fn pad(g: &Graph, n: usize) -> Graph {
    let mut g = g.clone();
    while g.n() < n {
        g.add_vertex().unwrap();
    }
    g
}

/// Ordered induced copies by trying every injective vertex map.
fn naive_ordered_count(host: &Graph, pattern: &Graph) -> u64 {
    fn rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>) -> u64 {
        let k = map.len();
        if k == pattern.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..host.n() {
            if map.contains(&x) {
                continue;
            }
            if (0..k).all(|a| pattern.has_edge(a, k) == host.has_edge(map[a], x)) {
                map.push(x);
                total += rec(host, pattern, map);
                map.pop();
            }
        }
        total
    }
    rec(host, pattern, &mut Vec::new())
}

fn binom2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

fn sandwich_families() -> Vec<Graph> {
    ["P4", "P5", "C4", "C5", "C6"]
        .iter()
        .map(|s| s.parse::<Family>().unwrap().graph())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig {
        ceiling: 21,
        max_vertices: Some(7),
        ..SearchConfig::default()
    };
    let mut classes = 0usize;
    let mut mismatches = Vec::new();
    let mut seen = BTreeSet::new();
    for m in 0..=21 {
        for g in enumerate_m_edge_graphs(m, &cfg).unwrap() {
            // Isolated vertices added back give every class on up to 7 vertices.
            for n in g.n().max(1)..=7 {
                let g = pad(&g, n);
                seen.insert(canonical_form(&g).unwrap().label);
                classes += 1;
                if alpha_f(&g) != alpha_f_bruteforce(&g).unwrap() {
                    mismatches.push(write_graph6(&g).unwrap());
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..500 {
        let n = rng.gen_range(8..=12);
        let p = rng.gen_range(0.1..0.8);
        let g = random_graph(&mut rng, n, p);
        if alpha_f(&g) != alpha_f_bruteforce(&g).unwrap() {
            mismatches.push(write_graph6(&g).unwrap());
        }
    }
    let elapsed = start.elapsed();
    // Classes on 1..=7 vertices.
    let expected = 1 + 2 + 4 + 11 + 34 + 156 + 1044;
    Outcome::new(
        mismatches.is_empty() && seen.len() == expected && classes == expected && elapsed < Duration::from_secs(300),
        format!(
            "{} classes on <= 7 vertices (expected {expected}) + 500 random, {} mismatches, {:.1?}",
            seen.len(),
            mismatches.len(),
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let patterns: Vec<Graph> = vec![
        Graph::path(3),
        Graph::path(4),
        Graph::path(5),
        Graph::cycle(4),
        Graph::cycle(5),
        Graph::cycle(6),
        Graph::complete(3),
        Graph::complete(4),
    ];
    let mut rng = StdRng::seed_from_u64(2);
    let mut mismatches = 0;
    let mut comparisons = 0;
    for _ in 0..200 {
        let n = rng.gen_range(4..=9);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        for h in &patterns {
            if h.n() > n {
                continue;
            }
            let s = count_induced(&g, h).unwrap();
            let naive = naive_ordered_count(&g, h);
            comparisons += 1;
            if s.ordered != naive || s.unordered != naive / automorphism_order(h) {
                mismatches += 1;
            }
        }
    }
    Outcome::new(mismatches == 0, format!("{comparisons} comparisons over 200 hosts, {mismatches} mismatches"))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for m in 1..=8usize {
        let r = rho_exact(&Graph::path(3), m, &SearchConfig::default()).unwrap();
        let star = canonical_form(&Graph::star(m)).unwrap().label;
        if r.rho != binom2(m as u64) || !r.extremal.contains(&star) {
            bad.push(m);
        }
    }
    Outcome::new(bad.is_empty(), format!("rho(P3, m) = binom(m,2) with a star certificate for m = 1..8; failing m: {bad:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let families = sandwich_families();
    let mut violations = Vec::new();
    let mut pairs = 0;
    for m in 4..=9 {
        let results = rho_exact_many(&families, m, &SearchConfig::default()).unwrap();
        for (h, r) in families.iter().zip(&results) {
            let s = verify_sandwich(h, r).unwrap();
            pairs += 1;
            if !s.pass {
                violations.extend(s.violations.iter().map(|v| format!("{} m={m}: {v}", s.pattern)));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        violations.is_empty() && elapsed < Duration::from_secs(1800),
        format!("{pairs} (family, m) pairs, {} violations {violations:?}, {:.1?}", violations.len(), elapsed),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut patterns = Vec::new();
    while patterns.len() < 20 {
        let n = rng.gen_range(4..=6);
        let g = random_graph(&mut rng, n, 0.5);
        if !g.has_isolated_vertex() {
            patterns.push(g);
        }
    }
    let mut violations = Vec::new();
    for m in [6usize, 7, 8] {
        let results = rho_exact_many(&patterns, m, &SearchConfig::default()).unwrap();
        for (h, r) in patterns.iter().zip(&results) {
            let lower = theorem1_lower_construction(h, m as u64).unwrap().count;
            let upper = generic_upper(h, m as u64).unwrap();
            if lower > r.rho as u128 || !within_upper(r.rho as f64, upper) {
                violations.push(format!("{} m={m}: {lower} <= {} <= {upper}", write_graph6(h).unwrap(), r.rho));
            }
        }
    }
    Outcome::new(violations.is_empty(), format!("20 patterns x m in {{6,7,8}}, {} violations {violations:?}", violations.len()))
}

fn criterion_6() -> Outcome {
    let mut ratios = Vec::new();
    let mut exact = true;
    for a in [10u64, 20, 40] {
        let spec = BlowupSpec::new(Graph::complete(2), vec![a, a]).unwrap();
        let m = spec.edge_count();
        let c = blowup_count(&spec, &Graph::cycle(4)).unwrap().unordered;
        // c / (m^2/4) = (1 - 1/a)^2  <=>  4 c a^2 = m^2 (a-1)^2.
        let (a128, am1) = (a as u128, (a - 1) as u128);
        exact &= 4 * c * a128 * a128 == m * m * am1 * am1;
        ratios.push(4.0 * c as f64 / (m * m) as f64);
    }
    let monotone = ratios.windows(2).all(|w| w[0] < w[1]);
    let last = ratios[2];
    Outcome::new(
        exact && monotone && last >= 0.95,
        format!("ratios {ratios:?} for a = 10, 20, 40; closed form exact: {exact}"),
    )
}

fn criterion_7() -> Outcome {
    let c6 = blow_up(&BlowupSpec::balanced(Graph::cycle(6), 2)).unwrap();
    let (m6, g6) = (c6.edge_count() as u64, count_induced(&c6, &Graph::cycle(6)).unwrap().unordered);
    let c5 = blow_up(&BlowupSpec::balanced(Graph::cycle(5), 5)).unwrap();
    let (m5, g5) = (c5.edge_count() as u64, count_induced(&c5, &Graph::cycle(5)).unwrap().unordered);
    // (m/5)^{5/2} = 3125 at m = 125 means c^2 = (m/5)^5.
    let ok = m6 == 24 && g6 == 64 && g6 == (m6 / 6).pow(3) && m5 == 125 && g5 == 3125 && g5 * g5 == (m5 / 5).pow(5);
    Outcome::new(ok, format!("C6[2^6]: m={m6}, c={g6}; C5[5^5]: m={m5}, c={g5}"))
}

fn entropy_hosts(rng: &mut StdRng) -> Vec<Graph> {
    let mut hosts = vec![
        Graph::complete_bipartite(2, 2),
        Graph::complete_bipartite(3, 3),
        Graph::cycle(5),
        Graph::cycle(7),
        Graph::petersen(),
        blow_up(&BlowupSpec::balanced(Graph::cycle(5), 2)).unwrap(),
        blow_up(&BlowupSpec::new(Graph::cycle(5), vec![1, 2, 3, 1, 2]).unwrap()).unwrap(),
        blow_up(&BlowupSpec::balanced(Graph::cycle(7), 2)).unwrap(),
    ];
    hosts.extend((0..4).map(|_| random_graph(rng, 10, 0.4)));
    hosts
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let hosts = entropy_hosts(&mut rng);
    let patterns = [Graph::cycle(4), Graph::cycle(5), Graph::path(4), Graph::path(5), Graph::complete(3)];
    let mut failures = Vec::new();
    let mut pairs = Vec::new();
    for (gi, g) in hosts.iter().enumerate() {
        for h in &patterns {
            let dist = CopyDistribution::new(g, h).unwrap();
            if dist.is_empty() {
                continue;
            }
            let all: Vec<usize> = (0..h.n()).collect();
            let full = projection_entropy(&dist, View::Vertices, &all, &[]).unwrap();
            let want = ((automorphism_order(h) * count_induced(g, h).unwrap().unordered) as f64).ln();
            if (full - want).abs() >= EPS {
                failures.push(format!("host {gi}: H(full) {full} vs {want}"));
            }
            let k = dist.arity(View::Vertices);
            let shearer = verify_chain_shearer(
                &dist,
                View::Vertices,
                &Decomposition::Shearer { cover: subset_cover(k), r: k - 1 },
            )
            .unwrap();
            if !shearer.pass {
                failures.push(format!("host {gi}: Shearer"));
            }
            pairs.push((gi, dist));
        }
    }

    // Chain rule on 100 random splits, all computed through the public
    // entropy: H(A ∪ B) - H(A) - H(B | A).
    let mut worst = 0f64;
    for _ in 0..100 {
        let (_, dist) = pairs.choose(&mut rng).unwrap();
        let view = [View::Vertices, View::OrientedEdges, View::UnorientedEdges][rng.gen_range(0..3)];
        let mut coords: Vec<usize> = (0..dist.arity(view)).collect();
        coords.shuffle(&mut rng);
        let cut = rng.gen_range(0..=coords.len());
        let (a, b) = coords.split_at(cut);
        let joint = projection_entropy(dist, view, &coords, &[]).unwrap();
        let ha = projection_entropy(dist, view, a, &[]).unwrap();
        let hb_a = projection_entropy(dist, view, b, a).unwrap();
        worst = worst.max((joint - ha - hb_a).abs());
    }
    if worst >= EPS {
        failures.push(format!("chain residual {worst:e}"));
    }

    let mut odd_checks = 0;
    for (gi, g) in hosts.iter().enumerate() {
        for l in [2, 3] {
            let has_cycle = g.n() > 2 * l && count_induced(g, &Graph::cycle(2 * l + 1)).unwrap().unordered > 0;
            if !has_cycle {
                continue;
            }
            odd_checks += 1;
            match verify_odd_cycle_shearer(g, l) {
                Ok(r) if r.pass => {}
                Ok(r) => failures.push(format!("host {gi} l={l}: {:?}", r.failing().map(|t| &t.name).collect::<Vec<_>>())),
                Err(e) => failures.push(format!("host {gi} l={l}: {e}")),
            }
        }
    }
    Outcome::new(
        failures.is_empty() && pairs.len() >= 10,
        format!(
            "{} (G,H) pairs, worst chain residual {worst:.1e}, {odd_checks} odd-cycle hosts, failures {failures:?}",
            pairs.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut corpus = vec![Graph::cycle(6), Graph::cycle(7)];
    for k in [4usize, 5, 6, 7] {
        for size in 1..=14 / k as u64 {
            corpus.push(blow_up(&BlowupSpec::balanced(Graph::cycle(k), size)).unwrap());
        }
    }
    corpus.push(blow_up(&BlowupSpec::new(Graph::cycle(6), vec![1, 2, 1, 3, 2, 1]).unwrap()).unwrap());
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..50 {
        let n = rng.gen_range(8..=12);
        let p = rng.gen_range(0.15..0.45);
        corpus.push(random_graph(&mut rng, n, p));
    }
    let (mut copies, mut violations, mut errors) = (0u64, 0u64, Vec::new());
    for (gi, g) in corpus.iter().enumerate() {
        for l in [2, 3] {
            for check in [even_path_budgets(g, l), odd_path_budgets(g, l)] {
                match check {
                    Ok(b) => {
                        copies += b.copies;
                        violations += b.violations;
                    }
                    Err(e) => errors.push(format!("graph {gi} l={l}: {e}")),
                }
            }
        }
    }
    Outcome::new(
        violations == 0 && errors.is_empty(),
        format!(
            "{} graphs, {copies} ordered induced paths (P4..P7), {violations} violations, errors {errors:?}",
            corpus.len()
        ),
    )
}

/// One vertex sequence per induced `C_k`.
fn induced_cycles(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    if g.n() < k {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in ordered_copies(g, &Graph::cycle(k)).unwrap() {
        let mask = c.iter().fold(0u64, |acc, &v| acc | 1 << v);
        if seen.insert(mask) {
            out.push(c);
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let (mut c8_checked, mut c6_checked) = (0, 0);
    let mut failures = Vec::new();
    let check = |g: &Graph, label: String, failures: &mut Vec<String>, count: &mut usize| {
        for cycle in induced_cycles(g, 8).into_iter().chain(induced_cycles(g, 6)) {
            let ledger = claim1_check(g, &cycle).unwrap();
            // Both totals are half-integers; compare in half-units.
            let cap = 2 * if ledger.l == 4 { 4 * ledger.m } else { ledger.fallback_budget };
            *count += 1;
            if ledger.total_plus.halves() > cap || ledger.total_minus.halves() > cap {
                failures.push(format!(
                    "{label} C{} {:?}: plus {} minus {} vs {}",
                    2 * ledger.l,
                    cycle,
                    ledger.total_plus,
                    ledger.total_minus,
                    cap / 2
                ));
            }
        }
    };
    for i in 0..50 {
        // Plant an induced C8 on 0..8; extra vertices attach anywhere.
        let n = rng.gen_range(10..=12);
        let mut g = pad(&Graph::cycle(8), n);
        for v in 8..n {
            for u in 0..v {
                if rng.gen_bool(0.3) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        check(&g, format!("graph {i}"), &mut failures, &mut c8_checked);
    }
    let mut c6_hosts = vec![Graph::cycle(6), blow_up(&BlowupSpec::balanced(Graph::cycle(6), 2)).unwrap()];
    for _ in 0..20 {
        let mut g = pad(&Graph::cycle(6), 10);
        for v in 6..10 {
            for u in 0..v {
                if rng.gen_bool(0.3) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        c6_hosts.push(g);
    }
    for (i, g) in c6_hosts.iter().enumerate() {
        check(g, format!("C6 host {i}"), &mut failures, &mut c6_checked);
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{c8_checked} cycle ledgers in 50 planted-C8 graphs, {c6_checked} in C6 hosts, {} over budget {:?}",
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut hosts = vec![("C6".to_string(), Graph::cycle(6)), ("K4".to_string(), Graph::complete(4))];
    for code in 0u32..64 {
        let sizes: Vec<u64> = (0..6).map(|i| 1 + (code >> i & 1) as u64).collect();
        let spec = BlowupSpec::new(Graph::cycle(6), sizes.clone()).unwrap();
        hosts.push((format!("C6{sizes:?}"), blow_up(&spec).unwrap()));
    }
    let mut failures = Vec::new();
    for (name, g) in &hosts {
        let r = c6_hypergraph_check(g);
        let gamma = if g.n() >= 6 { count_induced(g, &Graph::cycle(6)).unwrap().unordered } else { 0 };
        let (m, e2) = (r.m as u128, r.two_section_edges as u128);
        let ok = r.gamma == gamma
            && r.capable_triples.len() as u64 == 2 * gamma
            && r.codegree_sum <= r.m * gamma
            && 2 * e2 <= m * m
            && 72 * gamma as u128 <= m * m * m
            && r.pass();
        if !ok {
            failures.push(name.clone());
        }
    }
    Outcome::new(failures.is_empty(), format!("{} hosts, failures {failures:?}", hosts.len()))
}

fn criterion_12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_inducibility");
    let run = |shards: usize, cache: &std::path::Path, pattern: &str, m: usize| {
        Command::new(bin)
            .args(["rho", "--pattern", pattern, "-m", &m.to_string(), "--shards", &shards.to_string()])
            .arg("--cache-dir")
            .arg(cache)
            .output()
            .unwrap()
    };
    let one = tempfile::tempdir().unwrap();
    let eight = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    let mut runs = 0;
    for pattern in ["P4", "P5", "C4", "C5", "C6"] {
        for m in 4..=9 {
            let a = run(1, one.path(), pattern, m);
            let b = run(8, eight.path(), pattern, m);
            runs += 1;
            if !a.status.success() || a.status.code() != b.status.code() || a.stdout != b.stdout {
                differing.push(format!("{pattern} m={m}"));
            }
        }
    }
    Outcome::new(differing.is_empty(), format!("{runs} grid points, differing reports {differing:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("alpha_f oracle equivalence", criterion_1),
        ("counting oracle equivalence", criterion_2),
        ("exact star law", criterion_3),
        ("sandwich grid", criterion_4),
        ("generic sandwich", criterion_5),
        ("C4 ratio trend", criterion_6),
        ("blow-up exactness", criterion_7),
        ("entropy identity suite", criterion_8),
        ("budget integer suite", criterion_9),
        ("claim ledger suite", criterion_10),
        ("C6 hypergraph suite", criterion_11),
        ("determinism across shards", criterion_12),
    ];
    let outcomes: Vec<(Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    (f(), start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (outcome, took))) in criteria.iter().zip(&outcomes).enumerate() {
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        failed += !outcome.pass as usize;
        println!("criterion {:>2} {verdict} {name} ({took:.1?}): {}", i + 1, outcome.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
