use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use framex::experiments::{
    n_range, run_figure, sweep_error_vs_n, to_csv_string, write_csv, CsvDocument, FigureId, Noise,
    RecordFlag, Sampling, Scale, SweepConfig, SweepRecord, TestFunction,
};
use framex::extremal::{bmn_oracle, cmn_lower_bound, markov_check, ExtremalResult, SearchBudget};
use framex::frame::{condition_numbers, FrameSpec};
use framex::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "framex", version, about = "Polynomial frame approximation from equispaced samples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one function at one degree and report errors and condition numbers.
    Approximate(ApproximateArgs),
    /// Error and condition numbers over a range of degrees.
    Sweep(SweepArgs),
    /// Condition numbers of the truncated-SVD operator.
    Condition(ConditionArgs),
    /// Extremal growth of polynomials bounded at equispaced nodes.
    #[command(subcommand)]
    Extremal(ExtremalCommand),
    /// Random-polynomial check of the Markov-type derivative bounds.
    MarkovCheck(MarkovArgs),
    /// Write the CSV tables behind one figure.
    Figure(FigureArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Equispaced points for the error norms and cond_2.
    #[arg(long, default_value_t = 50_000)]
    grid: usize,
    /// Equispaced points for cond_inf (defaults to --grid).
    #[arg(long)]
    cond_grid: Option<usize>,
    /// Add uniform noise of this amplitude to the samples.
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long, default_value_t = 1, requires = "noise")]
    noise_seed: u64,
}

impl GridArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            fine_grid: self.grid,
            cond_grid: self.cond_grid.unwrap_or(self.grid),
            noise: self.noise.map(|amplitude| Noise {
                amplitude,
                seed: self.noise_seed,
            }),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalingRule {
    /// m from the sample-complexity relation, truncation at ε (n+1)/√γ.
    Paper,
}

#[derive(Args)]
#[group(multiple = false)]
struct SamplingArgs {
    /// Number of sample intervals (m + 1 samples).
    #[arg(long)]
    m: Option<usize>,
    /// Oversampling ratio m/n.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, value_enum)]
    scaling: Option<ScalingRule>,
}

impl SamplingArgs {
    fn sampling(&self) -> Sampling {
        match (self.m, self.eta, self.scaling) {
            (Some(m), _, _) => Sampling::Fixed(m),
            (_, Some(eta), _) => Sampling::Eta(eta),
            (_, _, Some(ScalingRule::Paper)) => Sampling::Scaling,
            _ => Sampling::Eta(2.0),
        }
    }
}

#[derive(Args)]
struct ApproximateArgs {
    /// Registry name, or osc(OMEGA).
    #[arg(long)]
    function: String,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    grids: GridArgs,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    epsilon: f64,
    /// Degrees as A:B:STEP (inclusive).
    #[arg(long, value_parser = parse_range)]
    n_range: (usize, usize, usize),
    #[command(flatten)]
    sampling: SamplingArgs,
    #[command(flatten)]
    grids: GridArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConditionArgs {
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 50_000)]
    grid: usize,
}

#[derive(Subcommand)]
enum ExtremalCommand {
    /// Exact B(m, n) by vertex enumeration (m <= 12, n <= 6).
    Bmn {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2001)]
        probe_grid: usize,
    },
    /// Searched lower bound on C(m, n) for the extended interval.
    Cmn {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = SearchBudget::default().restarts)]
        restarts: usize,
        #[arg(long, default_value_t = SearchBudget::default().seed)]
        seed: u64,
    },
}

#[derive(Args)]
struct MarkovArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(value_parser = parse_figure)]
    figure: FigureId,
    #[arg(long, default_value = "desk", value_parser = parse_scale)]
    scale: Scale,
    #[arg(long)]
    out_dir: PathBuf,
}

fn parse_range(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(format!("expected A:B:STEP, got `{s}`"));
    };
    let num = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}"));
    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
    if step == 0 || a > b {
        return Err("need A <= B and STEP >= 1".into());
    }
    Ok((a, b, step))
}

fn parse_figure(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NumericalFailure(_) => EXIT_NUMERICAL,
        _ => EXIT_INVALID,
    }
}

fn emit(records: Vec<SweepRecord>, out: Option<&PathBuf>) -> framex::Result<()> {
    let doc = CsvDocument::new(records);
    match out {
        Some(path) => write_csv(&doc, path),
        None => {
            print!("{}", to_csv_string(&doc));
            Ok(())
        }
    }
}

fn print_extremal(label: &str, r: &ExtremalResult) {
    println!("{label}: {:.12e}", r.value);
    println!("witness_x: {:.12e}", r.witness_x);
    let coeffs: Vec<String> = r.witness_coeffs.iter().map(|c| format!("{c:.12e}")).collect();
    println!("witness_legendre_coeffs: {}", coeffs.join(" "));
}

fn run(cmd: Command) -> framex::Result<u8> {
    match cmd {
        Command::Approximate(a) => {
            let f = TestFunction::by_name(&a.function)?;
            let recs = sweep_error_vs_n(&f, a.gamma, a.epsilon, a.sampling.sampling(), &[a.n], &a.grids.config())?;
            let failed = recs.iter().any(|r| r.flag != RecordFlag::Ok);
            emit(recs, a.out.as_ref())?;
            Ok(if failed { EXIT_NUMERICAL } else { 0 })
        }
        Command::Sweep(a) => {
            let f = TestFunction::by_name(&a.function)?;
            let (lo, hi, step) = a.n_range;
            let recs = sweep_error_vs_n(
                &f,
                a.gamma,
                a.epsilon,
                a.sampling.sampling(),
                &n_range(lo, hi, step),
                &a.grids.config(),
            )?;
            emit(recs, a.out.as_ref())?;
            Ok(0)
        }
        Command::Condition(a) => {
            let spec = FrameSpec::new(a.gamma, a.n)?;
            let c = condition_numbers(&spec, a.m, a.epsilon, a.grid)?;
            println!("cond_2: {:.16e}", c.cond_2);
            println!("cond_inf: {:.16e}", c.cond_inf);
            Ok(0)
        }
        Command::Extremal(ExtremalCommand::Bmn { m, n, probe_grid }) => {
            print_extremal("bmn", &bmn_oracle(m, n, probe_grid)?);
            Ok(0)
        }
        Command::Extremal(ExtremalCommand::Cmn {
            m,
            n,
            gamma,
            epsilon,
            restarts,
            seed,
        }) => {
            let budget = SearchBudget {
                restarts,
                seed,
                ..SearchBudget::default()
            };
            print_extremal("cmn_lower_bound", &cmn_lower_bound(m, n, gamma, epsilon, budget)?);
            Ok(0)
        }
        Command::MarkovCheck(a) => {
            let r = markov_check(a.n, a.k, a.delta, a.trials, a.seed)?;
            println!("trials: {}", r.trials);
            println!("markov_violations: {}", r.markov_violations);
            println!("sharp_violations: {}", r.sharp_violations);
            println!("bound_order_violations: {}", r.bound_order_violations);
            println!("max_markov_ratio: {:.12e}", r.max_markov_ratio);
            println!("max_sharp_ratio: {:.12e}", r.max_sharp_ratio);
            println!("max_bound_ratio: {:.12e}", r.max_bound_ratio);
            Ok(0)
        }
        Command::Figure(a) => {
            for p in run_figure(a.figure, a.scale, &a.out_dir)? {
                println!("{}", p.display());
            }
            Ok(0)
        }
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("FRAMEX_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("FRAMEX_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_INVALID);
    }
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
