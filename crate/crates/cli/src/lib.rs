//! Command-line front end for `lpath-core`: graph file IO, subcommands,
//! text/JSON reporting and exit codes.

pub mod format;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lpath_core::generators::{gen_block_graph, gen_dag, gen_tree};
use lpath_core::{lpp, oracle, paths, BitMatrix, Error, Graph, GraphClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use format::{parse_graph_with, write_graph, ParseOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CLASS: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "lpath", version, about = "Longest paths via Boolean adjacency powers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Search tolerance; values above 1 report an interval.
    #[arg(long, default_value_t = 1, global = true)]
    pub epsilon: usize,

    /// Refuse to enumerate more paths than this.
    #[arg(long, default_value_t = paths::DEFAULT_PATH_CAP, global = true)]
    pub cap: u128,

    /// Seed for `gen` and `bench`.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Accept graphs that are not connected (they classify as `other`).
    #[arg(long, global = true)]
    pub allow_disconnected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the graph class.
    Classify { input: PathBuf },
    /// Longest path length (or an interval with --epsilon > 1).
    Length { input: PathBuf },
    /// Every longest path, one per line.
    Paths { input: PathBuf },
    /// Number of longest paths.
    Count { input: PathBuf },
    /// Block sequences of the heaviest chains of a block graph.
    Chains { input: PathBuf },
    /// Compare against exhaustive search; exit 5 on any difference.
    OracleCheck { input: PathBuf },
    /// Write a random graph file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file (stdout if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time Boolean matrix products.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [256, 512, 1024])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Probability of each entry being set.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenKind {
    Tree {
        #[arg(long)]
        n: usize,
    },
    Dag {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    Block {
        /// Comma-separated block orders, each at least 3.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
    },
}

/// Everything one invocation reports. Absent fields are omitted from JSON.
#[derive(Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_match: Option<bool>,
}

#[derive(Debug, Serialize)]
struct BenchRow {
    n: usize,
    seconds: f64,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Mismatch(_) => EXIT_MISMATCH,
            Failure::Core(e) => match e {
                Error::Class { .. } => EXIT_CLASS,
                Error::Capacity(_) => EXIT_CAPACITY,
                Error::Consistency(_) | Error::NoThreshold { .. } => EXIT_MISMATCH,
                _ => EXIT_USAGE,
            },
        }
    }
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            let _ = if ok { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return if ok { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli, stdin, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "lpath: {f}");
            f.code()
        }
    }
}

fn read_graph(cli: &Cli, input: &PathBuf, stdin: &mut dyn Read) -> Result<Graph, Failure> {
    let mut bytes = Vec::new();
    if input.as_os_str() == "-" {
        stdin.read_to_end(&mut bytes)
    } else {
        std::fs::File::open(input).and_then(|mut f| f.read_to_end(&mut bytes))
    }
    .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let text = String::from_utf8(bytes).map_err(|_| Failure::Parse("input is not UTF-8".into()))?;
    let opts = ParseOptions {
        require_connected: !cli.allow_disconnected,
    };
    parse_graph_with(&text, opts).map_err(|e| Failure::Parse(e.to_string()))
}

fn emit(cli: &Cli, out: &mut dyn Write, report: &Report, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(e.to_string());
    match cli.format {
        OutputFormat::Text => out.write_all(text.as_bytes()).map_err(io),
        OutputFormat::Json => {
            let json = serde_json::to_string(report).expect("report serializes");
            writeln!(out, "{json}").map_err(io)
        }
    }
}

fn length_line(r: &lpp::LppResult) -> String {
    let mut s = format!("class={}", r.graph_class.name());
    match r.interval {
        Some((lo, hi)) => s += &format!(" lo={lo} hi={hi}"),
        None => s += &format!(" length={}", r.length),
    }
    if let Some(c) = r.chain_length {
        s += &format!(" chain={c}");
    }
    s.push('\n');
    s
}

fn base_report(r: &lpp::LppResult) -> Report {
    Report {
        class: Some(r.graph_class.name()),
        length: Some(r.length),
        chain_length: r.chain_length,
        interval: r.interval,
        ..Report::default()
    }
}

fn path_count(g: &Graph, class: GraphClass, found: Option<&paths::PathSet>) -> Result<u128, Failure> {
    if class.is_block_like() {
        return Ok(paths::count_block_longest_paths(g)?);
    }
    Ok(match found {
        Some(set) => set.count() as u128,
        None => paths::all_longest_paths(g, u128::MAX)?.count() as u128,
    })
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    if cli.epsilon == 0 {
        return Err(Failure::Usage("--epsilon must be at least 1".into()));
    }
    match &cli.command {
        Command::Classify { input } => {
            let g = read_graph(cli, input, stdin)?;
            let class = g.classify();
            let report = Report {
                class: Some(class.name()),
                ..Report::default()
            };
            emit(cli, out, &report, &format!("class={}\n", class.name()))
        }
        Command::Length { input } => {
            let g = read_graph(cli, input, stdin)?;
            let r = lpp::longest_path_length(&g, cli.epsilon)?;
            emit(cli, out, &base_report(&r), &length_line(&r))
        }
        Command::Paths { input } => {
            let g = read_graph(cli, input, stdin)?;
            let r = lpp::longest_path_length(&g, 1)?;
            let set = paths::all_longest_paths(&g, cli.cap)?;
            let list: Vec<Vec<usize>> = set.iter().map(|p| p.vertices().to_vec()).collect();
            let text: String = list.iter().map(|p| join(p, " ") + "\n").collect();
            let report = Report {
                count: Some(list.len() as u128),
                paths: Some(list),
                ..base_report(&r)
            };
            emit(cli, out, &report, &text)
        }
        Command::Count { input } => {
            let g = read_graph(cli, input, stdin)?;
            let r = lpp::longest_path_length(&g, 1)?;
            let count = path_count(&g, r.graph_class, None)?;
            let report = Report {
                count: Some(count),
                ..base_report(&r)
            };
            emit(cli, out, &report, &format!("{count}\n"))
        }
        Command::Chains { input } => {
            let g = read_graph(cli, input, stdin)?;
            let r = lpp::longest_path_length(&g, 1)?;
            let chains: Vec<Vec<Vec<usize>>> = if r.graph_class == GraphClass::CompleteGraph {
                vec![vec![g.vertices().collect()]]
            } else {
                paths::generate_heaviest_chains(&g)?
                    .into_iter()
                    .map(|c| c.blocks)
                    .collect()
            };
            let text: String = chains
                .iter()
                .map(|c| c.iter().map(|b| join(b, " ")).collect::<Vec<_>>().join(" | ") + "\n")
                .collect();
            let report = Report {
                chains: Some(chains),
                ..base_report(&r)
            };
            emit(cli, out, &report, &text)
        }
        Command::OracleCheck { input } => {
            let g = read_graph(cli, input, stdin)?;
            oracle_check(cli, &g, out)
        }
        Command::Gen { kind, output } => {
            let g = match kind {
                GenKind::Tree { n } => gen_tree(*n, cli.seed),
                GenKind::Dag { n, p } => gen_dag(*n, *p, cli.seed),
                GenKind::Block { orders } => gen_block_graph(orders, cli.seed),
            }?;
            let text = write_graph(&g);
            match output {
                Some(path) => std::fs::write(path, text),
                None => out.write_all(text.as_bytes()),
            }
            .map_err(|e| Failure::Usage(e.to_string()))
        }
        Command::Bench { sizes, reps, density } => {
            if !(0.0..=1.0).contains(density) {
                return Err(Failure::Usage(format!("density {density} is outside [0, 1]")));
            }
            let rows: Vec<BenchRow> = sizes
                .iter()
                .map(|&n| BenchRow {
                    n,
                    seconds: time_product(n, (*reps).max(1), *density, cli.seed),
                })
                .collect();
            let io = |e: std::io::Error| Failure::Usage(e.to_string());
            match cli.format {
                OutputFormat::Text => {
                    for row in &rows {
                        writeln!(out, "{} {:.6}", row.n, row.seconds).map_err(io)?;
                    }
                    Ok(())
                }
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&rows).expect("rows serialize")).map_err(io)
                }
            }
        }
    }
}

fn oracle_check(cli: &Cli, g: &Graph, out: &mut dyn Write) -> Result<(), Failure> {
    let r = lpp::longest_path_length(g, 1)?;
    let set = paths::all_longest_paths(g, cli.cap)?;
    let count = path_count(g, r.graph_class, Some(&set))?;
    let truth = oracle::oracle_longest(g)?;

    let mut problems = Vec::new();
    if r.length != truth.length {
        problems.push(format!("length {} vs oracle {}", r.length, truth.length));
    }
    if set != truth.paths {
        problems.push(format!(
            "path sets differ ({} vs oracle {})",
            set.count(),
            truth.paths.count()
        ));
    }
    if count != truth.paths.count() as u128 {
        problems.push(format!("count {count} vs oracle {}", truth.paths.count()));
    }

    let ok = problems.is_empty();
    let report = Report {
        count: Some(count),
        oracle_match: Some(ok),
        ..base_report(&r)
    };
    let status = if ok { "ok" } else { "mismatch" };
    let text = format!(
        "{status} class={} length={} count={count}\n",
        r.graph_class.name(),
        r.length
    );
    emit(cli, out, &report, &text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(problems.join("; ")))
    }
}

/// Best-of-`reps` wall time for one `n × n` Boolean product.
fn time_product(n: usize, reps: usize, density: f64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = BitMatrix::from_fn(n, |_, _| rng.random_bool(density));
    let y = BitMatrix::from_fn(n, |_, _| rng.random_bool(density));
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            let z = x.bool_product(&y).expect("same dimension");
            std::hint::black_box(z);
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}
