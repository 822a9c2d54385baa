use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use bimorph::classifier::{classify, ClassifyError, ClassifyParams};
use bimorph::extension::{clique_force, extend_to_partial_bimorphism, ExtensionError, SearchBudget};
use bimorph::graph::{induced_subgraph, to_dot, CountableGraph, Vertex};
use bimorph::invariants::{
    check_therefore_property, check_triangle_property, independence_number_bounded, star_number_bounded, PropertyParams,
};
use bimorph::lab::{census_csv, Lab, LabCaps};
use bimorph::morphism::LocalMorphism;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;

/// Bimorphism and homogeneity evidence for countable graphs.
#[derive(Debug, Parser)]
#[command(name = "bimorph", version)]
struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Increase log verbosity on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the subgraph induced on {0..n-1}.
    Gen {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: u64,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Evaluate a bounded invariant or cone property.
    Check {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        prop: Prop,
        #[command(flatten)]
        search: SearchArgs,
        /// Sets are drawn from {0..base-1}.
        #[arg(long, default_value_t = 8)]
        base: Vertex,
        #[arg(long, default_value_t = 4)]
        size_max: usize,
        #[arg(long, default_value_t = 256)]
        trials: usize,
        /// Cap on the invariant value searched for.
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
    /// Extend a monomorphism to a partial bimorphism covering {0..depth-1}.
    Extend {
        #[arg(long)]
        spec: String,
        /// JSON object with `dom` and `img` arrays.
        #[arg(long)]
        map: String,
        #[arg(long)]
        depth: Vertex,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Force a vertex set onto a clique by repeated edge-preserving maps.
    CliqueForce {
        #[arg(long)]
        spec: String,
        /// Comma-separated vertices.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        set: Vec<Vertex>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Gather evidence and report which branch of the dichotomy it matches.
    Classify {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 16)]
        depth: Vertex,
    },
    /// Homogeneity verdicts for every finite graph up to the given order.
    Census {
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Prop {
    Triangle,
    Therefore,
    Sigma,
    Alpha,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Only vertices below this index are searched.
    #[arg(long)]
    horizon: Option<Vertex>,
    /// Candidates examined per search.
    #[arg(long, default_value_t = 1 << 18)]
    scan_limit: u64,
}

impl SearchArgs {
    fn budget(&self) -> anyhow::Result<SearchBudget> {
        let b = match self.horizon {
            Some(h) => SearchBudget::new(h)?,
            None => SearchBudget::default(),
        };
        Ok(b.with_scan_limit(self.scan_limit))
    }
}

/// An error in the flags, reported with exit code 1.
#[derive(Debug)]
struct Usage(anyhow::Error);

fn parse_spec(s: &str) -> Result<CountableGraph, Usage> {
    CountableGraph::parse(s).with_context(|| format!("invalid --spec {s:?}")).map_err(Usage)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

#[derive(Serialize)]
struct Failure<'a> {
    status: &'static str,
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a [bimorph::extension::TraceStep]>,
}

fn exhausted_report(e: &ExtensionError) -> anyhow::Result<u8> {
    let mut inner = e;
    while let ExtensionError::Stage { source, .. } = inner {
        inner = source;
    }
    let trace = match inner {
        ExtensionError::Exhausted { trace, .. } => Some(trace.as_slice()),
        _ => None,
    };
    print_json(&Failure { status: "exhausted", error: e.to_string(), trace })?;
    Ok(EXIT_INCONCLUSIVE)
}

fn run(cli: Cli) -> Result<u8, Usage> {
    let seed = cli.seed;
    let out = |r: anyhow::Result<u8>| r.map_err(Usage);
    match cli.command {
        Command::Gen { spec, n, dot } => {
            let g = parse_spec(&spec)?;
            if dot {
                return out(emit(&to_dot(&g, n, "G")).map(|_| 0));
            }
            let vs: Vec<Vertex> = (0..n).collect();
            let h = induced_subgraph(&g, &vs).context("cannot materialize the prefix").map_err(Usage)?;
            out(print_json(&h).map(|_| 0))
        }
        Command::Check { spec, prop, search, base, size_max, trials, k_max } => {
            let g = parse_spec(&spec)?;
            let budget = search.budget().map_err(Usage)?;
            let params = PropertyParams { base, size_max, trials, seed };
            let r = match prop {
                Prop::Triangle => print_json(&check_triangle_property(&g, &params, &budget)),
                Prop::Therefore => print_json(&check_therefore_property(&g, &params, &budget)),
                Prop::Sigma => print_json(&star_number_bounded(&g, k_max, &finite_window(&budget))),
                Prop::Alpha => print_json(&independence_number_bounded(&g, k_max, &finite_window(&budget))),
            };
            out(r.map(|_| 0))
        }
        Command::Extend { spec, map, depth, search } => {
            let g = parse_spec(&spec)?;
            let f: LocalMorphism = serde_json::from_str(&map).context("invalid --map").map_err(Usage)?;
            f.validate().context("invalid --map").map_err(Usage)?;
            let budget = search.budget().map_err(Usage)?;
            match extend_to_partial_bimorphism(&g, &f, depth, &budget) {
                Ok(p) => out(print_json(&p).map(|_| 0)),
                Err(e @ ExtensionError::Exhausted { .. }) => out(exhausted_report(&e)),
                Err(e) => Err(Usage(e.into())),
            }
        }
        Command::CliqueForce { spec, set, search } => {
            let g = parse_spec(&spec)?;
            let budget = search.budget().map_err(Usage)?;
            match clique_force(&g, &set, &budget) {
                Ok(c) => out(print_json(&c).map(|_| 0)),
                Err(e @ ExtensionError::Stage { .. }) => out(exhausted_report(&e)),
                Err(e) => Err(Usage(e.into())),
            }
        }
        Command::Classify { spec, depth } => {
            let g = parse_spec(&spec)?;
            let mut params = ClassifyParams { depth, ..Default::default() };
            params.property.seed = seed;
            match classify(&g, &params) {
                Ok(r) => out(print_json(&r).map(|_| r.exit_code() as u8)),
                Err(e) => {
                    log::error!("{e}");
                    if let ClassifyError::CrossCheck { report, .. } = &e {
                        out(print_json(report).map(|_| 0))?;
                    }
                    Ok(e.exit_code() as u8)
                }
            }
        }
        Command::Census { max_order, format } => {
            let lab = Lab::new(LabCaps::default());
            let rows = lab.census(max_order).context("census").map_err(Usage)?;
            let r = match format {
                Format::Csv => census_csv(&rows).map_err(anyhow::Error::from).and_then(|s| emit(&s)),
                Format::Json => print_json(&rows),
            };
            out(r.map(|_| 0))
        }
    }
}

/// Exhaustive invariant searches need a finite window; default to 64 vertices.
fn finite_window(b: &SearchBudget) -> SearchBudget {
    if b.horizon == Vertex::MAX {
        SearchBudget { horizon: 64, ..*b }
    } else {
        *b
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
