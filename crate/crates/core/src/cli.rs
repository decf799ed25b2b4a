//! Command-line front end.
//!
//! Every subcommand produces a [`Report`]: a human-readable text block and a
//! JSON document with the inputs and outputs. Exit codes: 0 success, 1 domain
//! error, 2 I/O or parse error, 3 internal invariant violation (for example a
//! disagreement between the fast rank and the oracle).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::brill_noether::{
    brill_response, enumerate_class_records, lambda, noether_witness, ClassRecord, GameOutcome,
};
use crate::chain_graph::ChainGraph;
use crate::divisor::{reduce, to_reduced_data, Divisor};
use crate::error::{Error, Result};
use crate::lattice_path::{
    build_path, has_rank_at_least, max_d0, max_lingering, path_exists, rank, BnParams, LatticePath,
    Step,
};
use crate::oracle::{
    oracle_rank, sample_divisor, verify_riemann_roch, OracleConfig, DEFAULT_BUDGET,
};

#[derive(Debug, Parser)]
#[command(
    name = "tropical-bn",
    version,
    about = "Divisors, ranks and Brill-Noether classes on generic chains of loops"
)]
pub struct Cli {
    /// Emit a machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for sampled divisors.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Maximum number of reductions one oracle rank computation may perform.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Worker threads for enumeration checks and oracle sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankMode {
    Fast,
    Oracle,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether a graph file describes a generic chain.
    CheckGeneric {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Print the v_n-reduced divisor equivalent to a divisor.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
    },
    /// Compute the rank of a divisor.
    Rank {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, value_enum, default_value_t = RankMode::Fast)]
        mode: RankMode,
        /// Effective divisor E to play against D; reports whether D - E is
        /// equivalent to an effective divisor.
        #[arg(long)]
        challenge: Option<PathBuf>,
    },
    /// Print the lingering lattice path of a divisor in Z^r.
    Path {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// List every class of degree d and rank r (rho = 0), one per line.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Print lambda, the number of classes when rho = 0.
    Count {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Print the dimension of W^r_d.
    Dim {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Decide whether divisors of degree d and rank r exist.
    Exists {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Largest possible coefficient of v_0 in a reduced divisor of degree d and rank r.
    MaxD0 {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Find a vertex-supported E of degree r with D - E not effective.
    Witness {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Check r(D) - r(K - D) = deg D + 1 - g with the oracle.
    VerifyRr {
        #[arg(long)]
        graph: PathBuf,
        /// Divisor to check; without it, `--samples` random divisors are drawn.
        #[arg(long)]
        divisor: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    /// JSON documents, written one per line.
    pub json: Vec<Value>,
    pub exit_code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json: vec![json],
            exit_code: 0,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Parse(_) => 2,
        Error::Invariant(_) => 3,
        _ => 1,
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

pub fn load_graph(path: &Path) -> Result<ChainGraph> {
    let text = read_file(path)?;
    ChainGraph::from_json(&text)
}

pub fn load_divisor(path: &Path, graph: &ChainGraph) -> Result<Divisor> {
    let text = read_file(path)?;
    Divisor::from_json(&text, graph)
}

fn warn_if_not_generic(graph: &ChainGraph) {
    let loops = graph.non_generic_loops();
    if !loops.is_empty() {
        eprintln!(
            "warning: graph is not generic (loops {loops:?}); lattice-path commands will refuse it"
        );
    }
}

fn divisor_json(d: &Divisor) -> Value {
    serde_json::to_value(d.to_file()).expect("divisor serializes")
}

fn path_json(path: &LatticePath) -> Value {
    let steps: Vec<Value> = path
        .steps()
        .iter()
        .map(|s| match s {
            Step::Down => json!("down"),
            Step::Up(j) => json!({ "up": j }),
            Step::Linger => json!("linger"),
        })
        .collect();
    json!({
        "r": path.r(),
        "points": path.points(),
        "steps": steps,
        "in_chamber": path.lies_in_chamber(),
        "first_exit": path.first_exit(),
    })
}

fn params_json(p: &BnParams) -> Value {
    json!({ "g": p.g, "r": p.r, "d": p.d, "rho": p.rho() })
}

/// Runs a parsed command and writes its report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    let result = if cli.parallel > 1 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cli.parallel)
            .build()
        {
            Ok(pool) => pool.install(|| execute(cli)),
            Err(e) => Err(Error::Invariant(format!("thread pool: {e}"))),
        }
    } else {
        execute(cli)
    };
    match result {
        Ok(report) => {
            let written = if cli.json {
                report
                    .json
                    .iter()
                    .try_for_each(|doc| writeln!(out, "{doc}"))
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return 2;
            }
            report.exit_code
        }
        Err(err) => {
            let code = exit_code(&err);
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "error": err.to_string(), "exit_code": code })
                );
            }
            eprintln!("error: {err}");
            code
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let config = OracleConfig {
        seed: cli.seed,
        budget: cli.budget,
        parallel: cli.parallel > 1,
        ..OracleConfig::default()
    };
    match &cli.command {
        Command::CheckGeneric { graph } => check_generic(&load_graph(graph)?),
        Command::Reduce {
            graph,
            divisor,
            basepoint,
        } => {
            let graph = load_graph(graph)?;
            warn_if_not_generic(&graph);
            let d = load_divisor(divisor, &graph)?;
            let reduced = reduce(&graph, &d, *basepoint)?;
            Ok(Report::ok(
                format!("{reduced}\n"),
                json!({
                    "command": "reduce",
                    "inputs": { "divisor": divisor_json(&d), "basepoint": basepoint },
                    "outputs": {
                        "reduced": divisor_json(&reduced),
                        "degree": reduced.degree(),
                        "effective": reduced.is_effective(),
                    },
                }),
            ))
        }
        Command::Rank {
            graph,
            divisor,
            mode,
            challenge,
        } => {
            let graph = load_graph(graph)?;
            if *mode == RankMode::Oracle {
                warn_if_not_generic(&graph);
            }
            let d = load_divisor(divisor, &graph)?;
            let challenge = challenge
                .as_deref()
                .map(|p| load_divisor(p, &graph))
                .transpose()?;
            rank_report(&graph, &d, *mode, challenge.as_ref(), &config)
        }
        Command::Path { graph, divisor, r } => {
            let graph = load_graph(graph)?;
            let d = load_divisor(divisor, &graph)?;
            let data = to_reduced_data(&graph, &reduce(&graph, &d, 0)?)?;
            let path = build_path(&graph, &data, *r)?;
            let mut text = format!("{path}\n");
            match path.first_exit() {
                None => writeln!(text, "in chamber: rank >= {r}").ok(),
                Some(n) => writeln!(text, "leaves the chamber at step {n}: rank < {r}").ok(),
            };
            Ok(Report::ok(
                text,
                json!({
                    "command": "path",
                    "inputs": { "divisor": divisor_json(&d), "r": r },
                    "outputs": { "d0": data.d0, "path": path_json(&path) },
                }),
            ))
        }
        Command::Enumerate { graph, r, d } => {
            let graph = load_graph(graph)?;
            let params = BnParams::new(graph.genus(), *r, *d)?;
            enumerate_report(&graph, &params, config.parallel)
        }
        Command::Count { g, r, d } => {
            let params = BnParams::new(*g, *r, *d)?;
            let count = lambda(&params)?;
            Ok(Report::ok(
                format!("{count}\n"),
                json!({
                    "command": "count",
                    "inputs": params_json(&params),
                    "outputs": { "lambda": count.to_string() },
                }),
            ))
        }
        Command::Dim { g, r, d } => {
            let params = BnParams::new(*g, *r, *d)?;
            let dim = if path_exists(&params)? {
                Some(max_lingering(&params)?)
            } else {
                None
            };
            let text = match dim {
                Some(k) => format!("{k}\n"),
                None => format!("empty (rho = {})\n", params.rho()),
            };
            Ok(Report::ok(
                text,
                json!({
                    "command": "dim",
                    "inputs": params_json(&params),
                    "outputs": { "nonempty": dim.is_some(), "dimension": dim },
                }),
            ))
        }
        Command::Exists { g, r, d } => {
            let params = BnParams::new(*g, *r, *d)?;
            let exists = path_exists(&params)?;
            let word = if exists { "nonempty" } else { "empty" };
            Ok(Report::ok(
                format!("{word} (rho = {})\n", params.rho()),
                json!({
                    "command": "exists",
                    "inputs": params_json(&params),
                    "outputs": { "exists": exists },
                }),
            ))
        }
        Command::MaxD0 { g, r, d } => {
            let params = BnParams::new(*g, *r, *d)?;
            let best = max_d0(&params)?;
            Ok(Report::ok(
                format!("{best}\n"),
                json!({
                    "command": "max-d0",
                    "inputs": params_json(&params),
                    "outputs": { "max_d0": best, "bound": params.r as i64 + params.rho() },
                }),
            ))
        }
        Command::Witness { graph, divisor, r } => {
            let graph = load_graph(graph)?;
            let d = load_divisor(divisor, &graph)?;
            let e = noether_witness(&graph, &d, *r)?;
            let outcome = brill_response(&graph, &d, &e)?;
            if outcome.brill_wins() {
                return Err(Error::Invariant(format!(
                    "witness {e} is answered by {}",
                    outcome.reduced()
                )));
            }
            Ok(Report::ok(
                format!(
                    "E = {e}\nD - E reduces to {} (not effective)\n",
                    outcome.reduced()
                ),
                json!({
                    "command": "witness",
                    "inputs": { "divisor": divisor_json(&d), "r": r },
                    "outputs": {
                        "witness": divisor_json(&e),
                        "reduced_difference": divisor_json(outcome.reduced()),
                        "brill_wins": false,
                    },
                }),
            ))
        }
        Command::VerifyRr {
            graph,
            divisor,
            samples,
        } => {
            let graph = load_graph(graph)?;
            warn_if_not_generic(&graph);
            let divisors = match divisor {
                Some(p) => vec![load_divisor(p, &graph)?],
                None => {
                    let span = 2 * graph.genus() as u64 - 1;
                    (0..*samples as u64)
                        .map(|k| {
                            let seed = cli.seed.wrapping_add(k);
                            sample_divisor(&graph, (seed % span) as i64, seed)
                        })
                        .collect()
                }
            };
            verify_rr_report(&graph, &divisors, &config)
        }
    }
}

fn check_generic(graph: &ChainGraph) -> Result<Report> {
    let bad = graph.non_generic_loops();
    let generic = bad.is_empty();
    let text = if generic {
        format!("generic (g = {})\n", graph.genus())
    } else {
        format!("not generic (g = {}): loops {bad:?}\n", graph.genus())
    };
    Ok(Report::ok(
        text,
        json!({
            "command": "check-generic",
            "inputs": serde_json::to_value(graph.to_file()).expect("graph serializes"),
            "outputs": { "generic": generic, "non_generic_loops": bad },
        }),
    ))
}

fn rank_report(
    graph: &ChainGraph,
    d: &Divisor,
    mode: RankMode,
    challenge: Option<&Divisor>,
    config: &OracleConfig,
) -> Result<Report> {
    let fast = match mode {
        RankMode::Fast | RankMode::Both => Some(rank(graph, d)?),
        RankMode::Oracle => None,
    };
    let oracle = match mode {
        RankMode::Oracle | RankMode::Both => Some(oracle_rank(graph, d, config)?),
        RankMode::Fast => None,
    };
    let agree = match (fast, oracle) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let mut text = String::new();
    if let Some(r) = fast {
        writeln!(text, "fast = {r}").ok();
    }
    if let Some(r) = oracle {
        writeln!(text, "oracle = {r}").ok();
    }
    match agree {
        Some(true) => writeln!(text, "agree").ok(),
        Some(false) => writeln!(text, "DISAGREE").ok(),
        None => None,
    };
    let mut outputs = json!({ "fast": fast, "oracle": oracle, "agree": agree });
    if let Some(e) = challenge {
        let outcome = brill_response(graph, d, e)?;
        match &outcome {
            GameOutcome::BrillWins(r) => writeln!(text, "challenge answered: D - E ~ {r}").ok(),
            GameOutcome::NoetherWins(r) => {
                writeln!(text, "challenge wins: D - E reduces to {r}").ok()
            }
        };
        outputs["challenge"] = json!({
            "brill_wins": outcome.brill_wins(),
            "reduced_difference": divisor_json(outcome.reduced()),
        });
    }
    let mut report = Report::ok(
        text,
        json!({
            "command": "rank",
            "inputs": { "divisor": divisor_json(d), "degree": d.degree() },
            "outputs": outputs,
        }),
    );
    if agree == Some(false) {
        report.exit_code = 3;
    }
    Ok(report)
}

fn verify_class(graph: &ChainGraph, params: &BnParams, rec: &ClassRecord) -> Result<bool> {
    Ok(has_rank_at_least(graph, &rec.divisor, params.r)?
        && !has_rank_at_least(graph, &rec.divisor, params.r + 1)?)
}

fn enumerate_report(graph: &ChainGraph, params: &BnParams, parallel: bool) -> Result<Report> {
    let records = enumerate_class_records(graph, params)?;
    let check = |rec: &ClassRecord| verify_class(graph, params, rec);
    let verified: Vec<bool> = if parallel {
        records.par_iter().map(check).collect::<Result<_>>()?
    } else {
        records.iter().map(check).collect::<Result<_>>()?
    };
    let distinct = records
        .iter()
        .map(|rec| &rec.divisor)
        .collect::<HashSet<_>>()
        .len()
        == records.len();
    if let Some(k) = verified.iter().position(|ok| !ok) {
        return Err(Error::Invariant(format!(
            "class {k} ({}) does not have rank exactly {}",
            records[k].divisor, params.r
        )));
    }
    if !distinct {
        return Err(Error::Invariant("enumerated classes repeat".into()));
    }

    let mut text = String::new();
    let mut lines = Vec::with_capacity(records.len());
    for (k, rec) in records.iter().enumerate() {
        writeln!(
            text,
            "{k}\t{}\t{}\t{}",
            serde_json::to_string(&rec.tableau).expect("tableau serializes"),
            rec.path,
            rec.divisor
        )
        .ok();
        lines.push(json!({
            "index": k,
            "tableau": rec.tableau,
            "path": path_json(&rec.path),
            "divisor": divisor_json(&rec.divisor),
            "rank": params.r,
        }));
    }
    writeln!(
        text,
        "{} classes, each of rank {}, pairwise inequivalent",
        records.len(),
        params.r
    )
    .ok();
    Ok(Report {
        text,
        json: lines,
        exit_code: 0,
    })
}

fn verify_rr_report(
    graph: &ChainGraph,
    divisors: &[Divisor],
    config: &OracleConfig,
) -> Result<Report> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for d in divisors {
        let ok = verify_riemann_roch(graph, d, config)?;
        all &= ok;
        writeln!(
            text,
            "{} deg {}: {}",
            d,
            d.degree(),
            if ok { "ok" } else { "FAILED" }
        )
        .ok();
        rows.push(json!({ "divisor": divisor_json(d), "holds": ok }));
    }
    writeln!(
        text,
        "{} of {} hold",
        rows.iter().filter(|r| r["holds"] == true).count(),
        rows.len()
    )
    .ok();
    Ok(Report {
        text,
        json: vec![
            json!({ "command": "verify-rr", "outputs": { "all_hold": all, "cases": rows } }),
        ],
        exit_code: if all { 0 } else { 3 },
    })
}
