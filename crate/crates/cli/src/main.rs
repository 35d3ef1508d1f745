use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use omnitigs::enumerate::{nontrivial_components, Component};
use omnitigs::io::{build_de_bruijn, parse_edge_list, parse_gfa_subset, read_fasta, DeBruijnGraph};
use omnitigs::{Backend, Graph};

mod bench;
mod commands;

#[derive(Parser, Debug)]
#[command(name = "omnitigs", version, about = "Maximal omnitigs of strongly connected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write every maximal omnitig as a TSV row.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Write macrotigs, intervals and leftover arcs instead of walks.
        #[arg(long)]
        handles_only: bool,
    },
    /// Count, min, max, mean and total length of the maximal omnitigs.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write the maximal macrotigs of the compressed graph.
    Macrotigs {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Compare the pipeline with the brute-force oracles.
    Verify {
        #[command(flatten)]
        input: OptionalInputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Number of random graphs.
        #[arg(long, default_value_t = 500)]
        seeds: usize,
        /// Seed of the random corpus.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Step counts and wall times on random sparse graphs of doubling size.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000, 20_000, 40_000, 80_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Timing repetitions; the fastest run is reported.
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Fast)]
        backend: BackendArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args, Debug)]
struct OptionalInputArgs {
    /// Check this graph instead of a random corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args, Debug)]
struct FormatArgs {
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
    /// de Bruijn order for FASTA input.
    #[arg(long)]
    k: Option<usize>,
    /// Drop FASTA reads shorter than k instead of failing.
    #[arg(long)]
    skip_short: bool,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = BackendArg::SccCache)]
    backend: BackendArg,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run on every non-trivial strongly connected component separately.
    #[arg(long)]
    per_scc: bool,
    /// Skip fan expansion of high-degree nodes.
    #[arg(long)]
    no_fan: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edgelist,
    Gfa,
    Fasta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Bfs,
    SccCache,
    Fast,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Bfs => Backend::Bfs,
            BackendArg::SccCache => Backend::SccCache,
            BackendArg::Fast => Backend::Fast,
        }
    }
}

impl RunArgs {
    fn options(&self) -> omnitigs::EnumerationOptions {
        omnitigs::EnumerationOptions {
            backend: self.backend.into(),
            constant_degree: !self.no_fan,
        }
    }
}

/// Errors mapped to exit codes: bad input is 2, a failed verification 3.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Verification(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let input = e.chain().any(|c| {
            c.downcast_ref::<omnitigs::Error>().is_some_and(|e| {
                matches!(
                    e,
                    omnitigs::Error::Parse { .. }
                        | omnitigs::Error::Input(_)
                        | omnitigs::Error::NotStronglyConnected
                        | omnitigs::Error::NodeOutOfRange { .. }
                        | omnitigs::Error::SizeCap { .. }
                )
            })
        });
        if input {
            Failure::Input(e)
        } else {
            Failure::Other(e)
        }
    }
}

impl From<omnitigs::Error> for Failure {
    fn from(e: omnitigs::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// A graph plus what is needed to print it in input terms.
struct Loaded {
    graph: Graph,
    dbg: Option<DeBruijnGraph>,
}

fn load(path: &Path, format: &FormatArgs) -> Result<Loaded, Failure> {
    let open = || File::open(path).with_context(|| format!("cannot open {}", path.display()));
    let input_err = |e: anyhow::Error| Failure::Input(e);
    let loaded = match format.format {
        Format::Edgelist | Format::Gfa => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))
                .map_err(input_err)?;
            let graph = match format.format {
                Format::Edgelist => parse_edge_list(&text),
                _ => parse_gfa_subset(&text).map(|g| g.graph),
            }
            .with_context(|| format!("in {}", path.display()))?;
            Loaded { graph, dbg: None }
        }
        Format::Fasta => {
            let k = format
                .k
                .ok_or_else(|| Failure::Input(anyhow!("--k is required with --format fasta")))?;
            let reads = read_fasta(BufReader::new(open().map_err(input_err)?))
                .with_context(|| format!("in {}", path.display()))?;
            let reads: Vec<String> = reads.into_iter().map(|r| r.sequence).collect();
            let dbg = build_de_bruijn(&reads, k, format.skip_short)?;
            if dbg.skipped_reads > 0 {
                log::warn!("skipped {} reads shorter than k = {k}", dbg.skipped_reads);
            }
            Loaded {
                graph: dbg.graph.clone(),
                dbg: Some(dbg),
            }
        }
    };
    log::info!(
        "{}: {} nodes, {} arcs",
        path.display(),
        loaded.graph.node_count(),
        loaded.graph.arc_count()
    );
    Ok(loaded)
}

/// The whole graph as one component, or its non-trivial SCCs.
fn components(graph: &Graph, per_scc: bool) -> Vec<Component> {
    if per_scc {
        nontrivial_components(graph)
    } else {
        vec![Component {
            nodes: graph.nodes().collect(),
            arcs: graph.arcs().collect(),
            graph: graph.clone(),
        }]
    }
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Enumerate {
            input,
            run,
            handles_only,
        } => {
            let loaded = load(&input.input, &input.format)?;
            let mut out = writer(run.output.as_deref())?;
            commands::enumerate(&loaded, &run, handles_only, &mut out)?;
            out.flush()?;
        }
        Command::Stats { input, run } => {
            let loaded = load(&input.input, &input.format)?;
            let mut out = writer(run.output.as_deref())?;
            commands::stats(&loaded, &run, &mut out)?;
            out.flush()?;
        }
        Command::Macrotigs { input, run } => {
            let loaded = load(&input.input, &input.format)?;
            let mut out = writer(run.output.as_deref())?;
            commands::macrotigs(&loaded, &run, &mut out)?;
            out.flush()?;
        }
        Command::Verify {
            input,
            run,
            seeds,
            seed,
        } => {
            let loaded = match &input.input {
                Some(path) => Some(load(path, &input.format)?),
                None => None,
            };
            let mut out = writer(run.output.as_deref())?;
            let result = commands::verify(loaded.as_ref(), &run, seeds, seed, &mut out);
            out.flush()?;
            result?;
        }
        Command::Bench {
            sizes,
            seed,
            repeat,
            backend,
            output,
        } => {
            let mut out = writer(output.as_deref())?;
            bench::run(&sizes, seed, repeat.max(1), backend.into(), &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(summary)) => {
            eprintln!("verification failed: {summary}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
