//! `inducibility`: command-line front end for the edge-inducibility toolkit.
//!
//! Exit codes: 0 success, 1 a checked inequality failed, 2 usage or input
//! error, 3 search ceiling exceeded.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use inducibility::blowup::{optimize_part_sizes, theorem1_lower_construction};
use inducibility::bounds::bound_eval;
use inducibility::cache::ResultCache;
use inducibility::count::count_induced_sharded;
use inducibility::entropy::{
    c6_hypergraph_check, claim1_check, subset_cover, verify_chain_shearer, verify_odd_cycle_shearer,
    verify_path_decomposition, CopyDistribution, Decomposition, EntropyReport, View,
};
use inducibility::fractional::{alpha_f_bruteforce, check_decomposition, BRUTE_FORCE_LIMIT};
use inducibility::sandwich::verify_sandwich;
use inducibility::search::{rho_exact, SearchConfig, SearchError, SearchResult};
use inducibility::{alpha_f, automorphism_order, canonical_form, optimal_weighting, parse_graph6, write_graph6, Family, Graph};

#[derive(Parser, Debug)]
#[command(name = "inducibility", version, about = "Induced-subgraph counts, exact edge-inducibility and entropy checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Directory for cached exact search results.
    #[arg(long, global = true, env = "INDUCIBILITY_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads; never changes any reported value.
    #[arg(long, global = true, default_value_t = 1)]
    shards: usize,
    /// Print the JSON report (default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Print a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Cap on stored extremal certificates per search.
    #[arg(long, global = true, default_value_t = inducibility::search::DEFAULT_MAX_CERTIFICATES)]
    max_certificates: usize,
    /// Largest edge count the exact search accepts.
    #[arg(long, global = true, default_value_t = inducibility::search::DEFAULT_CEILING)]
    ceiling: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fractional independence number with an optimal weighting.
    Alphaf {
        /// Graph in graph6, or a family name such as C5.
        graph: String,
    },
    /// Count induced copies of a pattern in a host.
    Count {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Exact maximum number of induced copies over graphs with m edges.
    Rho {
        #[arg(long)]
        pattern: String,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Evaluate every applicable bound.
    Bound {
        #[arg(long)]
        family: String,
        #[arg(short = 'm')]
        m: u64,
    },
    /// Best blow-up construction with at most m edges.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(short = 'm')]
        m: u64,
    },
    /// Entropy checks on the uniform distribution of ordered induced copies.
    Entropy {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        verify: Option<Verify>,
        /// Cycle for claim1, as comma-separated host vertices.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        /// Print the claim1 ledger as CSV instead of a report.
        #[arg(long)]
        csv: bool,
    },
    /// Construction lower bound <= exact value <= best upper bound.
    Sandwich {
        #[arg(long)]
        family: String,
        #[arg(short = 'm')]
        m: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Verify {
    Chain,
    Shearer,
    Path,
    Claim1,
    C6,
}

enum Failure {
    Usage(String),
    Ceiling(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Ceiling(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Ceiling(m) | Failure::Verification(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// What a subcommand produced.
struct Outcome {
    inputs: Value,
    outputs: Value,
    pass: bool,
    /// Replaces the report on stdout when set.
    raw: Option<String>,
}

impl Outcome {
    fn new(inputs: Value, outputs: impl Serialize, pass: bool) -> Result<Self, Failure> {
        Ok(Outcome {
            inputs,
            outputs: serde_json::to_value(outputs).map_err(usage)?,
            pass,
            raw: None,
        })
    }
}

/// `P<k>` / `C<k>` names first, graph6 otherwise.
fn parse_graph(text: &str) -> Result<Graph, Failure> {
    let t = text.trim();
    let family_like = t.len() > 1
        && (t.starts_with('P') || t.starts_with('C'))
        && t[1..].bytes().all(|b| b.is_ascii_digit());
    if family_like {
        let f: Family = t.parse().map_err(usage)?;
        return Ok(f.graph());
    }
    parse_graph6(t).map_err(|e| Failure::Usage(format!("{t:?}: {e}")))
}

fn canonical(g: &Graph) -> Result<String, Failure> {
    canonical_form(g).map(|c| c.label).map_err(usage)
}

fn g6(g: &Graph) -> Result<String, Failure> {
    write_graph6(g).map_err(usage)
}

fn search_config(global: &Global) -> SearchConfig {
    SearchConfig {
        ceiling: global.ceiling,
        shards: global.shards.max(1),
        max_certificates: global.max_certificates,
        ..SearchConfig::default()
    }
}

/// Exact search through the cache when one is configured.
fn cached_rho(global: &Global, h: &Graph, m: usize) -> Result<SearchResult, Failure> {
    let label = canonical(h)?;
    let cache = global.cache_dir.as_ref().map(ResultCache::new);
    if let Some(cache) = &cache {
        match cache.get(&label, m, global.max_certificates) {
            Ok(Some(hit)) => {
                eprintln!("cache hit: {}", cache.file_for(&label).display());
                return Ok(hit);
            }
            Ok(None) => {}
            Err(e) => eprintln!("cache read skipped: {e}"),
        }
    }
    let result = rho_exact(h, m, &search_config(global)).map_err(|e| match e {
        SearchError::Ceiling { .. } => Failure::Ceiling(e.to_string()),
        other => usage(other),
    })?;
    if let Some(cache) = &cache {
        if let Err(e) = cache.put(&result) {
            eprintln!("cache write skipped: {e}");
        }
    }
    Ok(result)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let global = &cli.global;
    match &cli.command {
        Command::Alphaf { graph } => {
            let h = parse_graph(graph)?;
            let (weighting, decomposition) = optimal_weighting(&h).map_err(|e| Failure::Verification(e.to_string()))?;
            let checks = check_decomposition(&h, &decomposition);
            let brute = (h.n() <= BRUTE_FORCE_LIMIT)
                .then(|| alpha_f_bruteforce(&h).map(|b| b.to_string()))
                .transpose()
                .map_err(usage)?;
            let value = alpha_f(&h).to_string();
            let pass = checks.all_pass() && brute.as_ref().is_none_or(|b| *b == value);
            let outputs = json!({
                "alpha_f": value,
                "alpha_f_bruteforce": brute,
                "weighting": weighting,
                "decomposition": decomposition,
                "checks": checks,
            });
            Outcome::new(json!({"graph": g6(&h)?}), outputs, pass)
        }
        Command::Count { host, pattern } => {
            let g = parse_graph(host)?;
            let h = parse_graph(pattern)?;
            let summary = count_induced_sharded(&g, &h, global.shards).map_err(usage)?;
            Outcome::new(json!({"host": g6(&g)?, "pattern": canonical(&h)?}), summary, true)
        }
        Command::Rho { pattern, m } => {
            let h = parse_graph(pattern)?;
            let result = cached_rho(global, &h, *m)?;
            let inputs = json!({"pattern": canonical(&h)?, "m": m, "max_certificates": global.max_certificates});
            Outcome::new(inputs, result, true)
        }
        Command::Bound { family, m } => {
            let h = parse_graph(family)?;
            let report = bound_eval(&h, *m).map_err(usage)?;
            Outcome::new(json!({"family": canonical(&h)?, "m": m}), report, true)
        }
        Command::Construct { family, m } => {
            let h = parse_graph(family)?;
            let best = optimize_part_sizes(&h, *m).map_err(usage)?;
            let generic = theorem1_lower_construction(&h, *m).map_err(usage)?;
            let outputs = json!({"best": best, "weighting_construction": generic});
            Outcome::new(json!({"family": canonical(&h)?, "m": m}), outputs, true)
        }
        Command::Entropy {
            host,
            pattern,
            verify,
            cycle,
            csv,
        } => {
            let g = parse_graph(host)?;
            let h = parse_graph(pattern)?;
            let inputs = json!({
                "host": g6(&g)?,
                "pattern": canonical(&h)?,
                "verify": verify.map(|v| format!("{v:?}").to_lowercase()),
                "cycle": cycle,
            });
            entropy(&g, &h, *verify, cycle.as_deref(), *csv, inputs)
        }
        Command::Sandwich { family, m } => {
            let h = parse_graph(family)?;
            let result = cached_rho(global, &h, *m)?;
            let report = verify_sandwich(&h, &result).map_err(usage)?;
            let pass = report.pass;
            let inputs = json!({"family": canonical(&h)?, "m": m});
            Outcome::new(inputs, report, pass)
        }
    }
}

fn entropy(
    g: &Graph,
    h: &Graph,
    verify: Option<Verify>,
    cycle: Option<&[usize]>,
    csv: bool,
    inputs: Value,
) -> Result<Outcome, Failure> {
    let family = Family::recognise(h);
    let report = |r: EntropyReport| {
        let pass = r.pass;
        Outcome::new(inputs.clone(), r, pass)
    };
    match verify {
        None => {
            let dist = CopyDistribution::new(g, h).map_err(usage)?;
            let k = dist.arity(View::Vertices);
            let all: Vec<usize> = (0..k).collect();
            let full = dist.entropy(View::Vertices, &all, &[]).map_err(usage)?;
            let aut = automorphism_order(h);
            let gamma = dist.len() as u64 / aut;
            let mut r = EntropyReport::new();
            r.identity("H(X) = log(|Aut(H)| c(G,H))", full, ((aut * gamma) as f64).ln());
            for i in 0..k {
                let hi = dist.entropy(View::Vertices, &[i], &[]).map_err(usage)?;
                r.upper(format!("H(X_{i}) <= log |V(G)|"), hi, (g.n() as f64).ln());
            }
            let pass = r.pass;
            let outputs = json!({"copies": dist.len(), "aut": aut, "gamma": gamma, "report": r});
            Outcome::new(inputs, outputs, pass)
        }
        Some(Verify::Chain) => {
            let dist = CopyDistribution::new(g, h).map_err(usage)?;
            let singles = |view| (0..dist.arity(view)).map(|i| vec![i]).collect();
            let mut r = verify_chain_shearer(&dist, View::Vertices, &Decomposition::Chain(singles(View::Vertices)))
                .map_err(usage)?;
            if family.is_some() {
                let edges = Decomposition::Chain(singles(View::UnorientedEdges));
                r.extend(verify_chain_shearer(&dist, View::UnorientedEdges, &edges).map_err(usage)?);
            }
            report(r)
        }
        Some(Verify::Shearer) => {
            let dist = CopyDistribution::new(g, h).map_err(usage)?;
            let k = dist.arity(View::Vertices);
            if k < 2 {
                return Err(Failure::Usage("Shearer cover needs at least two coordinates".into()));
            }
            let cover = Decomposition::Shearer {
                cover: subset_cover(k),
                r: k - 1,
            };
            let mut r = verify_chain_shearer(&dist, View::Vertices, &cover).map_err(usage)?;
            if let Some(Family::Cycle(k)) = family {
                if k % 2 == 1 && k >= 5 {
                    r.extend(verify_odd_cycle_shearer(g, k / 2).map_err(usage)?);
                }
            }
            report(r)
        }
        Some(Verify::Path) => match family {
            Some(f @ Family::Path(_)) => report(verify_path_decomposition(g, f).map_err(usage)?),
            _ => Err(Failure::Usage("--verify path needs a path pattern P_k, k >= 4".into())),
        },
        Some(Verify::C6) => match family {
            Some(Family::Cycle(6)) => {
                let r = c6_hypergraph_check(g);
                let pass = r.pass();
                Outcome::new(inputs, r, pass)
            }
            _ => Err(Failure::Usage("--verify c6 needs the pattern C6".into())),
        },
        Some(Verify::Claim1) => {
            let k = match family {
                Some(Family::Cycle(k)) if k % 2 == 0 && k >= 6 => k,
                _ => return Err(Failure::Usage("--verify claim1 needs an even cycle C_k, k >= 6".into())),
            };
            let cycles: Vec<Vec<usize>> = match cycle {
                Some(c) if c.len() != k => {
                    return Err(Failure::Usage(format!("--cycle has {} vertices, pattern has {k}", c.len())))
                }
                Some(c) => vec![c.to_vec()],
                None => induced_cycles(g, k)?,
            };
            let mut ledgers = Vec::new();
            for c in &cycles {
                ledgers.push(claim1_check(g, c).map_err(usage)?);
            }
            if csv {
                let first = ledgers
                    .first()
                    .ok_or_else(|| Failure::Usage(format!("no induced C{k} in the host")))?;
                let pass = first.pass();
                let mut o = Outcome::new(inputs, Value::Null, pass)?;
                o.raw = Some(first.to_csv());
                return Ok(o);
            }
            let pass = ledgers.iter().all(|l| l.pass());
            let outputs = if cycle.is_some() {
                serde_json::to_value(&ledgers[0]).map_err(usage)?
            } else {
                let summaries: Vec<Value> = ledgers
                    .iter()
                    .map(|l| {
                        json!({
                            "cycle": l.cycle,
                            "total_plus": l.total_plus,
                            "total_minus": l.total_minus,
                            "total_plus_symmetric": l.total_plus_symmetric,
                            "total_minus_symmetric": l.total_minus_symmetric,
                            "budget": l.budget,
                            "fallback_budget": l.fallback_budget,
                            "within_budget": l.within_budget,
                            "within_fallback": l.within_fallback,
                            "exceeds_3m": l.exceeds_3m,
                            "rows_exceeding_cap": l.rows_exceeding_cap,
                            "rows_consistent": l.rows_consistent,
                        })
                    })
                    .collect();
                json!({"cycles": ledgers.len(), "ledgers": summaries, "pass": pass})
            };
            Outcome::new(inputs, outputs, pass)
        }
    }
}

/// One vertex sequence per induced `C_k`, the first ordered copy found.
fn induced_cycles(g: &Graph, k: usize) -> Result<Vec<Vec<usize>>, Failure> {
    if k > g.n() {
        return Ok(Vec::new());
    }
    let copies = inducibility::count::ordered_copies(g, &Graph::cycle(k)).map_err(usage)?;
    let mut seen = std::collections::BTreeSet::new();
    Ok(copies
        .into_iter()
        .filter(|c| seen.insert(c.iter().fold(0u64, |acc, &v| acc | 1 << v)))
        .collect())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Alphaf { .. } => "alphaf",
        Command::Count { .. } => "count",
        Command::Rho { .. } => "rho",
        Command::Bound { .. } => "bound",
        Command::Construct { .. } => "construct",
        Command::Entropy { .. } => "entropy",
        Command::Sandwich { .. } => "sandwich",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = run(&cli);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(o) => {
            if let Some(raw) = o.raw {
                print!("{raw}");
            } else {
                let report = output::envelope(command_name(&cli.command), o.inputs, o.outputs);
                if cli.global.table {
                    print!("{}", output::table(&report));
                } else {
                    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                }
            }
            if o.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
