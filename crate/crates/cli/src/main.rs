use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bacomp::analysis::classify;
use bacomp::complement::{Budget, Mode, Theta};
use bacomp::format::{parse_automaton, parse_ba_with_alphabet, parse_hoa, serialize, Format};
use bacomp::oracle::{gen_random_ba, gen_random_iw, gen_random_sdba, RandomParams};
use bacomp::pipeline::{
    bench_one, bench_text, check, complement, write_csv, BenchRecord, BenchSummary, CheckFailure,
    LassoBounds, PipelineConfig, Postprocess, PreprocessStep, Verdict,
};
use bacomp::{BuchiAutomaton, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "bacomp", version, about = "Complement Büchi automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complement an automaton in HOA or ba format.
    Complement(ComplementArgs),
    /// Print structural flags as key=value lines.
    Classify {
        /// Input file, or `-` for stdin.
        input: PathBuf,
    },
    /// Check that C is a complement of A.
    Check {
        a: PathBuf,
        c: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Complement every file in a directory and report sizes.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Longest prefix in the lasso grid.
    #[arg(long, default_value_t = 4)]
    max_u: usize,
    /// Longest period in the lasso grid.
    #[arg(long, default_value_t = 4)]
    max_v: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Result<LassoBounds, Error> {
        LassoBounds::new(self.max_u, self.max_v)
    }
}

#[derive(Args)]
struct PipelineArgs {
    /// Preprocessing step, repeatable, applied in the given order.
    #[arg(long = "preprocess", value_name = "red|copyall|copyiwa|accsat")]
    preprocess: Vec<String>,
    #[arg(long, value_name = "red")]
    postprocess: Option<String>,
    /// Run every applicable construction and keep the smallest (default).
    #[arg(long, conflicts_with = "light")]
    best: bool,
    /// Run only the optimized construction.
    #[arg(long)]
    light: bool,
    #[arg(long, value_name = "id|prune|sat")]
    theta: Option<String>,
    #[arg(long, hide = true)]
    ncsb_lazy: bool,
}

impl PipelineArgs {
    fn config(&self) -> Result<PipelineConfig, Error> {
        if self.ncsb_lazy {
            return Err(Error::Unsupported("--ncsb-lazy".into()));
        }
        let preprocess = self
            .preprocess
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PreprocessStep>, _>>()?;
        let postprocess = match self.postprocess.as_deref() {
            None => Postprocess::None,
            Some("red") => Postprocess::Red,
            Some(other) => {
                return Err(Error::InvalidParameters(format!(
                    "unknown postprocessing `{other}`"
                )))
            }
        };
        let theta = self.theta.as_deref().map(str::parse::<Theta>).transpose()?;
        Ok(PipelineConfig {
            preprocess,
            mode: if self.light { Mode::Light } else { Mode::Best },
            postprocess,
            theta,
            ..PipelineConfig::default()
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Hoa,
    Ba,
}

#[derive(Args)]
struct ComplementArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Verify the result on the lasso grid before writing it.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, value_enum, default_value = "hoa")]
    format: OutputFormat,
    /// Input file, or `-` for stdin.
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Ba,
    Iw,
    Sdba,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Directory of HOA or ba files.
    #[arg(required_unless_present = "generate")]
    dir: Option<PathBuf>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Macrostate expansions allowed per input.
    #[arg(long, env = "BACOMP_BUDGET", default_value_t = 1_000_000)]
    budget: u64,
    /// Benchmark this many random automata instead of a directory.
    #[arg(long, value_name = "N", conflicts_with = "dir")]
    generate: Option<usize>,
    #[arg(long, value_enum, default_value = "iw")]
    kind: GenKind,
    #[arg(long, default_value_t = 6)]
    states: usize,
    #[arg(long, default_value_t = 2)]
    symbols: usize,
    #[arg(long, default_value_t = 1.5)]
    td: f64,
    #[arg(long, default_value_t = 0.5)]
    ad: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

type Generator = fn(u64, RandomParams) -> bacomp::Result<BuchiAutomaton>;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedClass => EXIT_UNSUPPORTED,
            Error::BudgetExceeded(_) => 1,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_failure(path, e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| input_failure(path, e))
}

fn load(path: &Path) -> Result<BuchiAutomaton, Failure> {
    let text = read_input(path)?;
    parse_automaton(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_failure(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn describe(failure: &CheckFailure, a: &BuchiAutomaton) -> String {
    match failure {
        CheckFailure::BothAccept(w) => format!("both accept {}", w.display(a.alphabet())),
        CheckFailure::NeitherAccepts(w) => {
            format!("neither accepts {}", w.display(a.alphabet()))
        }
    }
}

fn run_complement(args: &ComplementArgs) -> Result<(), Failure> {
    let mut cfg = args.pipeline.config()?;
    cfg.output = match args.format {
        OutputFormat::Hoa => Format::Hoa,
        OutputFormat::Ba => Format::Ba,
    };
    cfg.check = args.check;
    cfg.bounds = args.bounds.bounds()?;
    let a = load(&args.input)?;
    let (c, report) = complement(&a, &cfg)?;
    if cfg.check {
        if let Verdict::Fail(f) = check(&a, &c, cfg.bounds)? {
            return Err(Failure {
                code: EXIT_CHECK,
                message: format!("check failed: {}", describe(&f, &a)),
            });
        }
    }
    let text = serialize(&c, cfg.output)?;
    eprintln!(
        "class={} in={} preprocessed={} raw={} out={}",
        report.class().as_str(),
        report.in_states,
        report.preprocessed_states,
        report.out_states_raw,
        report.out_states_post
    );
    write_output(args.output.as_deref(), &text)
}

fn run_classify(input: &Path) -> Result<(), Failure> {
    let a = load(input)?;
    for (k, v) in classify(&a).to_key_values() {
        println!("{k}={v}");
    }
    Ok(())
}

fn run_check(a: &Path, c: &Path, bounds: &BoundArgs) -> Result<(), Failure> {
    let bounds = bounds.bounds()?;
    let a = load(a)?;
    let c_text = read_input(c)?;
    let c = match Format::detect(&c_text) {
        Format::Hoa => parse_hoa(&c_text),
        Format::Ba => parse_ba_with_alphabet(&c_text, a.alphabet()),
    }?;
    match check(&a, &c, bounds)? {
        Verdict::Pass { lassos } => {
            println!("PASS ({lassos} lassos, intersection empty)");
            Ok(())
        }
        Verdict::Fail(f) => {
            println!("FAIL: {}", describe(&f, &a));
            Err(Failure {
                code: EXIT_CHECK,
                message: "check failed".into(),
            })
        }
    }
}

fn generated(args: &BenchArgs, count: usize) -> Result<Vec<(String, BuchiAutomaton)>, Failure> {
    let params = RandomParams::new(args.states, args.symbols, args.td, args.ad);
    let (tag, gen): (&str, Generator) = match args.kind {
        GenKind::Ba => ("ba", gen_random_ba),
        GenKind::Iw => ("iw", gen_random_iw),
        GenKind::Sdba => ("sdba", gen_random_sdba),
    };
    (0..count as u64)
        .map(|i| {
            let seed = args.seed + i;
            Ok((format!("{tag}-{seed}"), gen(seed, params)?))
        })
        .collect()
}

fn run_bench(args: &BenchArgs) -> Result<(), Failure> {
    let mut cfg = args.pipeline.config()?;
    cfg.budget = Budget::steps(args.budget);
    let records: Vec<BenchRecord> = match (args.generate, &args.dir) {
        (Some(count), _) => generated(args, count)?
            .par_iter()
            .map(|(name, a)| bench_one(name, a, &cfg))
            .collect(),
        (None, Some(dir)) => {
            let mut files: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(|e| input_failure(dir, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            files.sort();
            files
                .par_iter()
                .map(|p| {
                    let name = p.file_name().unwrap_or_default().to_string_lossy();
                    match fs::read_to_string(p) {
                        Ok(text) => bench_text(&name, &text, &cfg),
                        Err(_) => bench_text(&name, "", &cfg),
                    }
                })
                .collect()
        }
        (None, None) => unreachable!("clap requires DIR or --generate"),
    };
    write_output(args.csv.as_deref(), &write_csv(&records))?;
    eprintln!("{}", BenchSummary::from_records(&records));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Complement(args) => run_complement(args),
        Command::Classify { input } => run_classify(input),
        Command::Check { a, c, bounds } => run_check(a, c, bounds),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bacomp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
