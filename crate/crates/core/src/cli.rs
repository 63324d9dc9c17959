//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a claim failed or the answer was UNSAT where SAT
//! was asked for, 2 usage error or malformed input, 3 budget exhausted.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::choose::{
    choosability_exhaustive, default_pool, random_probe, verify_not_choosable, ChoosabilityVerdict, ChooseError,
};
use crate::construct::{canonical_lists, gadget, mirzakhani, section_gadget, wheel4, wheel_lists, SECTIONS};
use crate::graph::{Graph, VertexId};
use crate::io::{read_graph, read_lists_json, write_dimacs, write_dot, write_graph_json, write_lists_json};
use crate::lists::{Color, ListAssignment};
use crate::proof::{forcing_families, gadget_lemma_with, theorem_replay_with, wheel_forcing, TheoremVerdict};
use crate::solve::{decide, to_cnf, verify_coloring, Coloring, Constraint, Status, DEFAULT_SOLVE_BUDGET};
use crate::verify::{audit_graph, check_claim, Budgets, CLAIMS, DEFAULT_HAMILTON_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "listcolor", version, about = "List-coloring toolkit and certificate checker")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dimacs,
    Json,
    Dot,
    Cnf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Mirzakhani,
    Gadget,
    Wheel,
    Section,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Step {
    Theorem,
    Lemma,
    Families,
    Forcing,
}

/// Inclusive color range written `a..b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool(pub BTreeSet<Color>);

fn parse_pool(s: &str) -> Result<Pool, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: Color = a.trim().parse().map_err(|_| format!("bad color {a:?}"))?;
    let b: Color = b.trim().parse().map_err(|_| format!("bad color {b:?}"))?;
    if a > b {
        return Err(format!("empty pool {a}..{b}"));
    }
    Ok(Pool((a..=b).collect()))
}

fn positive() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a built-in graph and its lists.
    Build {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=SECTIONS as i64))]
        section: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide whether a graph is colorable from its lists (or from 1..=k).
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "k")]
        lists: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: Option<u32>,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Confirm a blocking assignment, decide k-choosability exhaustively, or probe randomly.
    Choosability {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Claimed blocking assignment to confirm.
        #[arg(long, conflicts_with_all = ["exhaustive", "trials", "seed"])]
        lists: Option<PathBuf>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_parser = positive(), conflicts_with = "exhaustive")]
        trials: Option<u64>,
        #[arg(long, value_parser = positive(), conflicts_with = "exhaustive")]
        seed: Option<u64>,
        #[arg(long, value_parser = parse_pool)]
        pool: Option<Pool>,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one audit claim, or a coloring file.
    Verify {
        /// A claim name or `coloring`.
        claim: String,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u64,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_HAMILTON_BUDGET)]
        hamilton_budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay the proof or one of its steps.
    Prove {
        #[arg(value_enum, default_value = "theorem")]
        step: Step,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=SECTIONS as i64))]
        section: Option<u32>,
        #[arg(long)]
        vertex: Option<VertexId>,
        #[arg(long)]
        color: Option<Color>,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u64,
        /// Where to write the JSON certificate; the transcript goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every claim and print the report.
    Audit {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u64,
        #[arg(long, value_parser = positive(), default_value_t = DEFAULT_HAMILTON_BUDGET)]
        hamilton_budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a graph (and lists) to another format.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: Option<u32>,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that maps to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Exhausted(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Exhausted(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Exhausted(_) => EXIT_EXHAUSTED,
        }
    }
}

fn usage(m: impl fmt::Display) -> CliError {
    CliError::Usage(m.to_string())
}

/// Parses `argv` (including the program name), runs it, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    read_graph(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_lists(path: &Path) -> Result<ListAssignment, CliError> {
    read_lists_json(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Graph and lists from files, defaulting to the built-in graph and lists.
/// A bare coloring, or the `witness` of a `solve` result.
fn read_coloring(text: &str) -> Result<Coloring, serde_json::Error> {
    let doc: serde_json::Value = serde_json::from_str(text)?;
    match doc.get("witness") {
        Some(w) if doc.get("status").is_some() => serde_json::from_value(w.clone()),
        _ => serde_json::from_value(doc),
    }
}

fn load_instance(graph: Option<&Path>, lists: Option<&Path>) -> Result<(Graph, ListAssignment), CliError> {
    let g = match graph {
        Some(p) => load_graph(p)?,
        None => mirzakhani(),
    };
    let l = match (lists, graph) {
        (Some(p), _) => load_lists(p)?,
        (None, None) => canonical_lists(),
        (None, Some(_)) => canonical_lists().restrict_to(&g).map_err(|e| usage(format!("default lists: {e}")))?,
    };
    Ok((g, l))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn render_graph(g: &Graph, lists: Option<&ListAssignment>, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => write_graph_json(g),
        Format::Dimacs => write_dimacs(g),
        Format::Dot => write_dot(g, lists),
        Format::Cnf => {
            let lists = lists.ok_or_else(|| usage("cnf export needs --lists or --k"))?;
            to_cnf(g, lists).map_err(usage)?.to_dimacs()
        }
    })
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Build { target, section, out, lists, format } => {
            let (g, l) = match (target, section) {
                (Target::Mirzakhani, None) => (mirzakhani(), canonical_lists()),
                (Target::Wheel, None) => (wheel4(), wheel_lists()),
                (Target::Gadget, None) => {
                    let g = gadget().graph;
                    let l = canonical_lists().restrict_to(&g).expect("gadget lies in the first section");
                    (g, l)
                }
                (Target::Section, Some(j)) => {
                    let g = section_gadget(&mirzakhani(), j).map_err(usage)?.graph;
                    let l = canonical_lists().restrict_to(&g).expect("section of the built-in graph");
                    (g, l)
                }
                (Target::Section, None) => return Err(usage("build section needs --section J")),
                (_, Some(_)) => return Err(usage("--section only applies to `build section`")),
            };
            emit(out.as_deref(), &render_graph(&g, Some(&l), format)?)?;
            if let Some(p) = lists {
                emit(Some(&p), &write_lists_json(&l))?;
            }
            Ok(EXIT_OK)
        }
        Command::Solve { graph, lists, k, budget, out } => {
            let g = load_graph(&graph)?;
            let l = match (lists, k) {
                (Some(p), _) => load_lists(&p)?,
                (None, Some(k)) => ListAssignment::uniform(&g, 1..=k).map_err(usage)?,
                (None, None) => return Err(usage("solve needs --lists or --k")),
            };
            let res = decide(&g, &l, budget).map_err(usage)?;
            emit(out.as_deref(), &to_json(&res))?;
            Ok(match res.status {
                Status::Sat => EXIT_OK,
                Status::Unsat => EXIT_FAIL,
                Status::Exhausted => EXIT_EXHAUSTED,
            })
        }
        Command::Choosability { graph, k, lists, exhaustive, trials, seed, pool, budget, out } => {
            let k = k as usize;
            let g = match &graph {
                Some(p) => load_graph(p)?,
                None => mirzakhani(),
            };
            let pool = pool.map(|p| p.0).unwrap_or_else(|| default_pool(k));
            let verdict = if let Some(p) = lists {
                verify_not_choosable(&g, &load_lists(&p)?, k, budget)
            } else if exhaustive {
                choosability_exhaustive(&g, k, &pool, budget)
            } else {
                random_probe(&g, k, trials.unwrap_or(1000), seed.unwrap_or(1), &pool, budget)
                    .map(ChoosabilityVerdict::Probe)
            };
            let verdict = match verdict {
                Ok(v) => v,
                Err(e @ ChooseError::ProbeExhausted { .. }) => return Err(CliError::Exhausted(e.to_string())),
                Err(e) => return Err(usage(e)),
            };
            emit(out.as_deref(), &to_json(&verdict))?;
            Ok(match &verdict {
                ChoosabilityVerdict::WitnessConfirmed { .. } | ChoosabilityVerdict::Choosable { .. } => EXIT_OK,
                ChoosabilityVerdict::Probe(r) if r.successes == r.trials => EXIT_OK,
                ChoosabilityVerdict::Exhausted { .. } => EXIT_EXHAUSTED,
                _ => EXIT_FAIL,
            })
        }
        Command::Verify { claim, graph, lists, coloring, budget, hamilton_budget, out } => {
            let (g, l) = load_instance(graph.as_deref(), lists.as_deref())?;
            if claim == "coloring" {
                let path = coloring.ok_or_else(|| usage("verify coloring needs --coloring"))?;
                let c = read_coloring(&read_text(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let res = verify_coloring(&g, Constraint::Lists(&l), &c);
                let report = serde_json::json!({
                    "claim": "coloring",
                    "status": if res.is_ok() { "pass" } else { "fail" },
                    "error": res.as_ref().err().map(|e| e.to_string()),
                });
                emit(out.as_deref(), &to_json(&report))?;
                return Ok(if res.is_ok() { EXIT_OK } else { EXIT_FAIL });
            }
            let budgets = Budgets { solve: budget, hamilton: hamilton_budget };
            let c = check_claim(&claim, &g, &l, budgets)
                .ok_or_else(|| usage(format!("unknown claim {claim:?}; expected one of {CLAIMS:?} or coloring")))?;
            emit(out.as_deref(), &to_json(&serde_json::json!({ "claim": c, "budgets": budgets })))?;
            Ok(if c.passed() {
                EXIT_OK
            } else if c.exhausted {
                EXIT_EXHAUSTED
            } else {
                EXIT_FAIL
            })
        }
        Command::Prove { step, section, vertex, color, budget, out } => {
            prove(step, section, vertex, color, budget, out)
        }
        Command::Audit { graph, lists, budget, hamilton_budget, out } => {
            let (g, l) = load_instance(graph.as_deref(), lists.as_deref())?;
            let report = audit_graph(&g, &l, Budgets { solve: budget, hamilton: hamilton_budget });
            emit(out.as_deref(), &to_json(&report))?;
            Ok(if report.all_pass() {
                EXIT_OK
            } else if report.any_exhausted() {
                EXIT_EXHAUSTED
            } else {
                EXIT_FAIL
            })
        }
        Command::Export { graph, lists, k, format, out } => {
            let g = load_graph(&graph)?;
            let l = match (lists, k) {
                (Some(p), _) => Some(load_lists(&p)?),
                (None, Some(k)) => Some(ListAssignment::uniform(&g, 1..=k).map_err(usage)?),
                (None, None) => None,
            };
            emit(out.as_deref(), &render_graph(&g, l.as_ref(), format)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn prove(
    step: Step,
    section: Option<u32>,
    vertex: Option<VertexId>,
    color: Option<Color>,
    budget: u64,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let pass_code = |ok: bool| if ok { EXIT_OK } else { EXIT_FAIL };
    match step {
        Step::Theorem => {
            let cert = theorem_replay_with(&mirzakhani(), &canonical_lists(), budget).map_err(usage)?;
            print!("{}", cert.transcript());
            if let Some(p) = out {
                emit(Some(&p), &to_json(&cert))?;
            }
            Ok(match cert.verdict {
                TheoremVerdict::Certified => EXIT_OK,
                _ if cert.direct_status == Status::Exhausted => EXIT_EXHAUSTED,
                _ => EXIT_FAIL,
            })
        }
        Step::Lemma => {
            let sections: Vec<u32> = match section {
                Some(j) => vec![j],
                None => (1..=SECTIONS).collect(),
            };
            let m = mirzakhani();
            let lists = canonical_lists();
            let mut outcomes = Vec::new();
            for j in sections {
                outcomes.push(gadget_lemma_with(&m, &lists, j, &BTreeSet::new(), budget).map_err(usage)?);
            }
            emit(out.as_deref(), &to_json(&serde_json::json!({ "lemmas": outcomes, "budget": budget })))?;
            if outcomes.iter().any(|o| o.reduced == Status::Exhausted || o.unreduced == Status::Exhausted) {
                return Ok(EXIT_EXHAUSTED);
            }
            Ok(pass_code(outcomes.iter().all(|o| o.passed)))
        }
        Step::Families => {
            let report = forcing_families().map_err(usage)?;
            emit(out.as_deref(), &to_json(&report))?;
            Ok(pass_code(report.passed))
        }
        Step::Forcing => {
            let (v, c) = vertex.zip(color).ok_or_else(|| usage("prove forcing needs --vertex and --color"))?;
            let report = wheel_forcing(v, c).map_err(usage)?;
            emit(out.as_deref(), &to_json(&report))?;
            Ok(pass_code(report.complete))
        }
    }
}
