//! Command-line front end for the invariant pipeline: graph enumeration,
//! invariant construction, dimension and Hilbert-series queries, evaluation
//! at concrete elements, and the rank/dimension verification sweep.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for any
//! input or usage problem.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use invforge_core::branching::{dimension, hilbert_series};
use invforge_core::graphs::{enumerate_graphs_bounded, Multigraph, DEFAULT_VERTEX_BOUND};
use invforge_core::umbral::{graph_invariant, Invariant};
use invforge_core::verify::{evaluate, parse_psi, verify_sweep_bounded, VerifyError};
use invforge_core::Group;

#[derive(Parser)]
#[command(
    name = "invforge",
    version,
    about = "Exact computation of classical-group invariants from multigraphs",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Group family acting on the coefficients
    #[arg(long, value_parser = ["gl", "o", "sp"])]
    group: String,

    /// Rank parameter: GL(n) and O(n) act on n variables, Sp(n) on 2n
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
}

impl GroupArgs {
    fn to_group(&self) -> Group {
        Group::from_kind_str(&self.group, self.n).expect("clap restricts the value set")
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical multigraphs indexing the (d, k) component
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        /// Number of vertices (degree in the coefficient functionals)
        #[arg(long)]
        d: u32,
        /// Number of edges (half the total weight)
        #[arg(long)]
        k: u32,
        /// Emit a JSON array instead of one text line per graph
        #[arg(long)]
        json: bool,
    },
    /// Print the invariant attached to one multigraph
    Invariant {
        #[command(flatten)]
        group: GroupArgs,
        /// Graph: inline JSON ('{...}') or edge-list text ('d=N; ...'), or a
        /// path to a file holding either form
        #[arg(long)]
        graph: String,
        /// Emit the full JSON record instead of the polynomial text
        #[arg(long)]
        json: bool,
    },
    /// Print the dimension of the (d, k) component
    Dimension {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        /// Emit JSON (a bare integer) instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the table of component dimensions for d <= dmax, k <= kmax
    Hilbert {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        kmax: u32,
        /// Emit a JSON array of rows instead of aligned text
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a stored invariant at a polynomial (or polynomial-coefficient
    /// differential operator) given in text form
    Evaluate {
        /// Invariant: inline JSON (starts with '{'), or a path to a JSON file
        #[arg(long)]
        invariant: String,
        /// The element to evaluate at, e.g. "x1^2 + 2 x1 x2 d1 - (1/3) d2^2"
        #[arg(long)]
        psi: String,
        /// Emit JSON instead of the bare value
        #[arg(long)]
        json: bool,
    },
    /// Cross-check rank against dimension on every component with
    /// d <= dmax, k <= kmax for each selected group of rank <= nmax;
    /// exits 1 on the first mismatch
    Verify {
        /// Largest rank to check (every n from 1 to nmax)
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        kmax: u32,
        /// Restrict to one family (default: gl, o, and sp)
        #[arg(long, value_parser = ["gl", "o", "sp"])]
        group: Option<String>,
        /// Emit a JSON array of per-component reports
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    /// Bad flags, unreadable files, malformed graph/invariant/element input.
    Usage(String),
    /// A cross-check ran and found a mismatch.
    Verification(String),
}

fn usage(err: impl ToString) -> CliError {
    CliError::Usage(err.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// The exhaustive-search vertex bound, overridable via INVFORGE_MAX_D.
fn vertex_bound() -> Result<usize, CliError> {
    match std::env::var("INVFORGE_MAX_D") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("INVFORGE_MAX_D must be a nonnegative integer, got {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_VERTEX_BOUND),
        Err(e) => Err(usage(format!("INVFORGE_MAX_D: {e}"))),
    }
}

/// Accepts inline content (starting with '{') or a file path; file contents
/// may be either JSON or, where `flavor` applies, the compact edge-list text.
fn read_arg(arg: &str, what: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {what} file {arg:?}: {e}")))
    }
}

fn load_graph(arg: &str, group: &Group) -> Result<Multigraph, CliError> {
    let head = arg.trim_start();
    let content = if head.starts_with('{') || head.starts_with("d=") {
        arg.to_string()
    } else {
        fs::read_to_string(arg)
            .map_err(|e| usage(format!("cannot read graph file {arg:?}: {e}")))?
    };
    let trimmed = content.trim();
    let graph = if trimmed.starts_with('{') {
        Multigraph::from_json(trimmed).map_err(usage)?
    } else {
        Multigraph::from_text(trimmed, group.flavor()).map_err(usage)?
    };
    if graph.flavor() != group.flavor() {
        return Err(usage(format!(
            "graph flavor {} does not match {group}, which expects {}",
            graph.flavor(),
            group.flavor()
        )));
    }
    Ok(graph)
}

fn json_value(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("internal serialization is valid JSON")
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate { group, d, k, json } => {
            let group = group.to_group();
            let graphs =
                enumerate_graphs_bounded(&group, d as usize, k, vertex_bound()?).map_err(usage)?;
            if json {
                let items: Vec<serde_json::Value> =
                    graphs.iter().map(|g| json_value(&g.to_json())).collect();
                println!("{}", serde_json::to_string_pretty(&items).expect("valid JSON"));
            } else {
                for g in &graphs {
                    println!("{}", g.to_text());
                }
            }
            Ok(())
        }
        Command::Invariant { group, graph, json } => {
            let group = group.to_group();
            let graph = load_graph(&graph, &group)?;
            let inv = graph_invariant(&group, &graph).map_err(usage)?;
            if json {
                println!("{}", inv.to_json());
            } else {
                println!("{}", inv.to_text());
            }
            Ok(())
        }
        Command::Dimension { group, d, k, json } => {
            let group = group.to_group();
            let value = dimension(&group, d, k);
            // Identical output either way: a bare integer is valid JSON.
            let _ = json;
            println!("{value}");
            Ok(())
        }
        Command::Hilbert { group, dmax, kmax, json } => {
            let group = group.to_group();
            let table = hilbert_series(&group, dmax, kmax);
            if json {
                println!("{}", serde_json::to_string_pretty(&table).expect("valid JSON"));
            } else {
                let widths: Vec<usize> = (0..=kmax as usize)
                    .map(|k| {
                        table
                            .iter()
                            .map(|row| row[k].to_string().len())
                            .max()
                            .unwrap_or(1)
                    })
                    .collect();
                for row in &table {
                    let line: Vec<String> = row
                        .iter()
                        .zip(&widths)
                        .map(|(v, w)| format!("{v:>w$}"))
                        .collect();
                    println!("{}", line.join(" "));
                }
            }
            Ok(())
        }
        Command::Evaluate { invariant, psi, json } => {
            let content = read_arg(&invariant, "invariant")?;
            let inv = Invariant::from_json(content.trim()).map_err(usage)?;
            let element = parse_psi(&psi, inv.group()).map_err(usage)?;
            let value = evaluate(&inv, &element).map_err(usage)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "value": value.to_string() })
                );
            } else {
                println!("{value}");
            }
            Ok(())
        }
        Command::Verify { nmax, dmax, kmax, group, json } => {
            let kinds: Vec<&str> = match &group {
                Some(kind) => vec![kind.as_str()],
                None => vec!["gl", "o", "sp"],
            };
            let bound = vertex_bound()?;
            let mut reports = Vec::new();
            for kind in kinds {
                for n in 1..=nmax {
                    let group = Group::from_kind_str(kind, n).expect("valid kind");
                    let sweep = verify_sweep_bounded(&group, dmax, kmax, bound).map_err(
                        |e| match e {
                            VerifyError::DimensionMismatch(report) => {
                                CliError::Verification(report.to_string())
                            }
                            other => usage(other),
                        },
                    )?;
                    reports.extend(sweep);
                }
            }
            if json {
                let items: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "group": r.group.kind_str(),
                            "n": r.group.n(),
                            "d": r.d,
                            "k": r.k,
                            "graphs": r.graph_count,
                            "rank": r.rank,
                            "dimension": r.dimension,
                            "stable": r.stable,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&items).expect("valid JSON"));
            } else {
                for r in &reports {
                    println!("{r}");
                }
                println!("all {} components verified", reports.len());
            }
            Ok(())
        }
    }
}
