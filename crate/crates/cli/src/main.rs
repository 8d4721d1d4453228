mod parse;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nlft::converge::{convergence_sweep, default_zgrid, figure1_data, roundtrip_residual, HamiltonianOracle};
use nlft::inverse::hamiltonian;
use nlft::report::{figure1_csv, forward_csv, inverse_csv, num, sweep_csv};
use nlft::{forward, potential_from_h11, schur_ratio, InverseMethod, Measure, Potential};
use num_complex::Complex64;
use rayon::prelude::*;

/// Forward and inverse non-linear Fourier transform through spectral measures.
#[derive(Parser)]
#[command(name = "nlft", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate b/a, |a| and |b| of a potential on a grid of z.
    Forward(ForwardArgs),
    /// Recover the Hamiltonian steps and point masses of a periodized measure.
    Inverse(InverseArgs),
    /// Write the measure agreeing with the input on [-T, T) and repeated with period 2T.
    Periodize(PeriodizeArgs),
    /// Compare the Schur functions of the periodized and original measures.
    Sweep(SweepArgs),
    /// Inverse transform of the periodized measure, then forward again.
    Roundtrip(RoundtripArgs),
    /// Scaled masses c_n 2T/pi against the continuous potential, one file per T.
    Figure1(Figure1Args),
    /// Run the randomized property checks.
    Check(CheckArgs),
}

#[derive(Args)]
struct ForwardArgs {
    #[arg(long)]
    potential: PathBuf,
    /// Real parts, `lo:hi:count` (comma-separated pieces are concatenated).
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    grid_re: List,
    /// Imaginary parts, same syntax as --grid-re.
    #[arg(long, value_parser = grid, allow_hyphen_values = true, default_value = "0")]
    grid_im: List,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureArgs {
    /// Measure spec (JSON).
    #[arg(long)]
    measure: PathBuf,
}

#[derive(Args)]
struct InverseArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    /// Half period; may be omitted when the measure is already periodic.
    #[arg(long = "T", value_parser = parse::positive)]
    t: Option<f64>,
    /// Number of Hamiltonian steps.
    #[arg(long = "N", value_parser = parse::count)]
    n: usize,
    /// `toeplitz` or `opuc`.
    #[arg(long, default_value = "toeplitz", value_parser = method)]
    method: InverseMethod,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the recovered discrete potential as JSON.
    #[arg(long)]
    potential_out: Option<PathBuf>,
}

#[derive(Args)]
struct PeriodizeArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(long = "T", value_parser = parse::positive)]
    t: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    /// Half periods, e.g. `pi,2pi,4pi,8pi`.
    #[arg(long = "T-list", value_parser = positive_list)]
    t_list: List,
    /// Real parts of z; without it the default 50-point grid is used.
    #[arg(long, value_parser = grid, allow_hyphen_values = true, requires = "grid_im")]
    grid_re: Option<List>,
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    grid_im: Option<List>,
    #[arg(long, default_value = "1e-12", value_parser = parse::tolerance)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RoundtripArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(long = "T", value_parser = parse::positive)]
    t: f64,
    #[arg(long = "N", value_parser = parse::count)]
    n: usize,
    #[arg(long, default_value = "1e-12", value_parser = parse::tolerance)]
    tol: f64,
    #[arg(long, default_value = "toeplitz", value_parser = method)]
    method: InverseMethod,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    #[command(flatten)]
    measure: MeasureArgs,
    /// Half periods, e.g. `pi,2pi,4pi,8pi`.
    #[arg(long = "T-list", value_delimiter = ',', required = true)]
    t_list: Vec<String>,
    /// Number of masses per T.
    #[arg(long = "N", value_parser = parse::count)]
    n: usize,
    /// `toeplitz` or `opuc`.
    #[arg(long, default_value = "toeplitz", value_parser = method)]
    method: InverseMethod,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// A list of numbers given as one argument.
#[derive(Clone)]
struct List(Vec<f64>);

fn grid(s: &str) -> Result<List, String> {
    parse::grid_list(s).map(List)
}

fn positive_list(s: &str) -> Result<List, String> {
    parse::positive_list(s).map(List)
}

fn method(s: &str) -> Result<InverseMethod, String> {
    s.parse().map_err(|e: nlft::Error| e.to_string())
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<nlft::Error> for Failure {
    fn from(e: nlft::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_measure(args: &MeasureArgs) -> Result<Measure, Failure> {
    let text = read(&args.measure)?;
    Measure::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.measure.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The periodic measure with half period `t`, or `mu` itself when it is already periodic.
fn periodic(mu: Measure, t: Option<f64>) -> Result<Measure, Failure> {
    match (mu.half_period(), t) {
        (Some(h), Some(t)) if (h - t).abs() > 1e-12 * h => {
            Err(Failure::Input(format!("measure already has half period {h}, but --T is {t}")))
        }
        (Some(_), _) => Ok(mu),
        (None, Some(t)) => Ok(mu.periodize(t)?),
        (None, None) => Err(Failure::Input("--T is required for a non-periodic measure".into())),
    }
}

fn run_forward(args: ForwardArgs) -> Outcome {
    let text = read(&args.potential)?;
    let pot = Potential::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.potential.display())))?;
    let (re, im) = (&args.grid_re.0, &args.grid_im.0);
    let zs: Vec<Complex64> = im.iter().flat_map(|&y| re.iter().map(move |&x| Complex64::new(x, y))).collect();
    let results: Vec<_> = zs
        .par_iter()
        .map(|&z| {
            let tm = forward(&pot, z);
            schur_ratio(&tm).map(|s| ((z, s.value, tm.a().norm(), tm.b().norm()), tm.det_drift))
        })
        .collect::<Result<_, _>>()?;
    let drift = results.iter().map(|r| r.1).fold(0.0, f64::max);
    if drift > 1e-9 {
        eprintln!("warning: relative determinant drift {drift:.3e} exceeds 1e-9");
    }
    let rows: Vec<_> = results.into_iter().map(|r| r.0).collect();
    emit(args.out.as_deref(), &forward_csv(&rows))
}

fn run_inverse(args: InverseArgs) -> Outcome {
    let mu = periodic(load_measure(&args.measure)?, args.t)?;
    let h = hamiltonian(&mu, args.n, args.method)?;
    let pot = potential_from_h11(&h)?;
    if let Some(p) = &args.potential_out {
        let json = Potential::Discrete(pot.clone()).to_json();
        std::fs::write(p, json).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    emit(args.out.as_deref(), &inverse_csv(&h, &pot))
}

fn run_periodize(args: PeriodizeArgs) -> Outcome {
    let mu = load_measure(&args.measure)?.periodize(args.t)?;
    emit(args.out.as_deref(), &(mu.to_json() + "\n"))
}

fn run_sweep(args: SweepArgs) -> Outcome {
    let mu = load_measure(&args.measure)?;
    let grid = match (&args.grid_re, &args.grid_im) {
        (Some(List(re)), Some(List(im))) => im.iter().flat_map(|&y| re.iter().map(move |&x| Complex64::new(x, y))).collect(),
        _ => default_zgrid(),
    };
    let rows = convergence_sweep(&mu, &args.t_list.0, &grid, args.tol)?;
    emit(args.out.as_deref(), &sweep_csv(&rows))
}

fn run_roundtrip(args: RoundtripArgs) -> Outcome {
    let mu = load_measure(&args.measure)?;
    let rt = roundtrip_residual(&mu, args.t, args.n, &default_zgrid(), args.tol, args.method)?;
    eprintln!("residual {}", num(rt.residual));
    emit(args.out.as_deref(), &sweep_csv(&rt.rows))
}

fn file_label(token: &str) -> String {
    token.trim().chars().filter(|c| c.is_ascii_alphanumeric() || *c == '.' || *c == '-').collect()
}

fn run_figure1(args: Figure1Args) -> Outcome {
    let mu = load_measure(&args.measure)?;
    let ts: Vec<(String, f64)> = args
        .t_list
        .iter()
        .map(|s| parse::positive(s).map(|t| (file_label(s), t)).map_err(Failure::Input))
        .collect::<Result<_, _>>()?;
    if ts.is_empty() {
        return Err(Failure::Input("--T-list is empty".into()));
    }
    let oracle = HamiltonianOracle::for_measure(&mu);
    let fallback = HamiltonianOracle::from_h11("none", |_| f64::NAN);
    std::fs::create_dir_all(&args.out).map_err(|e| Failure::Input(format!("{}: {e}", args.out.display())))?;
    let mut summary = String::new();
    match &oracle {
        Some(o) => writeln!(summary, "oracle: {}", o.label).unwrap(),
        None => writeln!(summary, "oracle: none (no closed form for this measure; oracle_f is NaN)").unwrap(),
    }
    if let (Some(_), Some(m), nlft::Density::Constant(rho)) = (&oracle, mu.atoms().first(), mu.density()) {
        // Second candidate for the continuous curve: 2M f(t), which does not satisfy f = (log h11)'/2.
        let beta = m.mass / (std::f64::consts::PI * rho);
        writeln!(summary, "alternative oracle: f(t) = -{}/(1 + {beta} t)", 2.0 * m.mass * beta).unwrap();
    }
    writeln!(summary, "T,file,spacing,origin_mass,max_dev_0_3").unwrap();
    for (label, t) in ts {
        let fig = figure1_data(&mu, t, args.n, oracle.as_ref().unwrap_or(&fallback), args.method)?;
        let file = format!("T_{label}.csv");
        let path = args.out.join(&file);
        std::fs::write(&path, figure1_csv(&fig)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        writeln!(
            summary,
            "{},{file},{},{},{}",
            num(t),
            num(fig.spacing),
            num(fig.origin_mass),
            num(fig.max_deviation_on(0.0, 3.0))
        )
        .unwrap();
    }
    let path = args.out.join("report.txt");
    std::fs::write(&path, summary).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run_check(args: CheckArgs) -> Outcome {
    let outcomes = nlft::checks::run_all(args.seed);
    let mut failed = 0;
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        failed += usize::from(!o.passed);
    }
    if failed > 0 {
        return Err(Failure::Numerical(format!("{failed} of {} checks failed", outcomes.len())));
    }
    Ok(())
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Forward(a) => run_forward(a),
        Command::Inverse(a) => run_inverse(a),
        Command::Periodize(a) => run_periodize(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Roundtrip(a) => run_roundtrip(a),
        Command::Figure1(a) => run_figure1(a),
        Command::Check(a) => run_check(a),
    }
}

fn threads() -> Result<Option<usize>, Failure> {
    match std::env::var("NLFT_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Input(format!("NLFT_THREADS must be a positive integer, got `{v}`"))),
        },
        Err(e) => Err(Failure::Input(format!("NLFT_THREADS: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = threads().and_then(|n| match n {
        None => run(cli.command),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(Failure::Input(format!("thread pool: {e}"))),
        },
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}
