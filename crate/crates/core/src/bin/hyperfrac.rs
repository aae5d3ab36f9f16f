//! Command-line front end. Exit codes: 0 success, 2 input error,
//! 3 counterexample found, 4 solver or budget failure.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperfrac::expansion::{
    check_graph_corollary, check_prop3_hypothesis, check_prop6_hypothesis, independence_number,
    lambda_expansion_witness, EnumerationBudget, PartiteExpansionParams,
};
use hyperfrac::experiments::{
    experiment_implication_sweep, experiment_kout_pfm, experiment_stopping_time, parse_k_range,
    ExperimentConfig, ExperimentOutput, ModeChoice,
};
use hyperfrac::matching::{cover_shape, is_perfect_value, nu_star_exact, nu_star_float, tau_star, Mode, Number};
use hyperfrac::models::{run_process, sample_kout, HostKind, StopRule};
use hyperfrac::{Error, Hypergraph, VertexSet};

#[derive(Parser)]
#[command(name = "hyperfrac", version, about = "Fractional matchings in random hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a k-out sample and print it in the hypergraph text format.
    Sample(SampleArgs),
    /// Compute nu* and tau* of a hypergraph file.
    Solve(SolveArgs),
    /// Check an expansion condition on a hypergraph file.
    ExpandCheck(ExpandArgs),
    /// Run the random r-graph process.
    Process(ProcessArgs),
    /// Run a Monte Carlo campaign and write CSV.
    Experiment {
        #[command(subcommand)]
        which: ExperimentKind,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value = "complete")]
    host: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the hypergraph here and its metadata next to it (`.meta`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Hypergraph file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, default_value = "exact")]
    mode: String,
    /// Also report whether the minimum cover is unique and block-constant.
    #[arg(long)]
    shape: bool,
    /// Write the optimal fractional matching here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// Independent-set expansion (use --strict for the strict bound).
    Prop3,
    /// `|N(I)| >= |I|` for graphs.
    Corollary,
    /// Partite conditions at --epsilon/--lambda (defaults from r).
    Prop6,
    /// Whether the set --x is lambda-expansive.
    Lambda,
    /// Independence number.
    Alpha,
}

#[derive(Args)]
struct ExpandArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "prop3")]
    check: CheckKind,
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Vertex set for `--check lambda`, e.g. `{0,1}`.
    #[arg(long)]
    x: Option<String>,
    /// Accept partite constants outside the guaranteed range.
    #[arg(long)]
    exploratory: bool,
    /// Random candidates per size once enumeration is too large.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report as key=value lines.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProcessArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many edges instead of at the stopping time.
    #[arg(long)]
    step: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExperimentKind {
    KoutPfm(ExperimentArgs),
    Implication(ExperimentArgs),
    Stopping(ExperimentArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value = "complete")]
    host: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, conflicts_with = "k_range")]
    k: Option<usize>,
    /// Inclusive sweep, e.g. `1..30`.
    #[arg(long)]
    k_range: Option<String>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "auto")]
    mode: String,
    /// Partite constant epsilon, or the degree cutoff factor for `stopping`.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Random candidates per size for expansion checks.
    #[arg(long)]
    budget: Option<usize>,
    /// Fill the elapsed_ms column.
    #[arg(long)]
    timing: bool,
    /// CSV path; the summary goes to `<out>.summary`.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `println!` that exits quietly when stdout is a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {
        write_stdout(&(format!($($t)*) + "\n"))
    };
}

fn write_stdout(s: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_all(s.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

/// Failure classes mapped to exit codes.
enum Failure {
    Lib(Error),
    Counterexample(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => sample(a),
        Command::Solve(a) => solve(a),
        Command::ExpandCheck(a) => expand_check(a),
        Command::Process(a) => process(a),
        Command::Experiment { which } => experiment(which),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample(msg)) => {
            eprintln!("counterexample found: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Solver(_) | Error::Budget(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())).into())
    }
}

fn load(path: &Path) -> Result<Hypergraph, Failure> {
    Ok(Hypergraph::from_text(&read_input(path)?)?)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Text plus metadata: a sidecar file when writing to disk, `#` comments on stdout.
fn emit(out: Option<&Path>, text: &str, meta: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text)?;
            std::fs::write(with_suffix(p, ".meta"), meta)?;
        }
        None => {
            for line in meta.lines() {
                say!("# {line}");
            }
            write_stdout(text);
        }
    }
    Ok(())
}

fn sample(a: SampleArgs) -> Result<(), Failure> {
    let host = a.host.parse::<HostKind>()?.with(a.n, a.r)?;
    let s = sample_kout(host, a.k, a.seed)?;
    emit(a.out.as_deref(), &s.to_text(), &s.metadata())
}

fn solve(a: SolveArgs) -> Result<(), Failure> {
    let h = load(&a.input)?;
    let mode = match a.mode.parse::<ModeChoice>()? {
        ModeChoice::Float => Mode::float(),
        _ => Mode::Exact,
    };
    let (nu, matching_text) = match mode {
        Mode::Exact => {
            let (v, m) = nu_star_exact(&h)?;
            (Number::Exact(v), m.to_text())
        }
        Mode::Float { tol } => {
            let (v, m) = nu_star_float(&h, tol)?;
            let mut text = format!("nu_star {v}\n");
            for (i, w) in m.weights.iter().enumerate() {
                text.push_str(&format!("{i} {w}\n"));
            }
            (Number::Float(v), text)
        }
    };
    let tau = tau_star(&h, mode)?;
    say!("nu_star={nu}");
    say!("tau_star={tau}");
    say!("perfect={}", h.isolated_vertices().is_empty() && is_perfect_value(&h, &nu));
    if a.shape {
        let s = cover_shape(&h, Mode::Exact)?;
        say!("unique_uniform_cover={}", s.is_unique_uniform);
        if let Some(b) = s.is_block_constant {
            say!("block_constant={b}");
        }
    }
    if let Some(p) = a.out {
        std::fs::write(p, matching_text)?;
    }
    Ok(())
}

fn expand_check(a: ExpandArgs) -> Result<(), Failure> {
    let h = load(&a.input)?;
    let mut budget = EnumerationBudget {
        seed: a.seed,
        ..EnumerationBudget::default()
    };
    if let Some(b) = a.budget {
        budget.samples_per_size = b;
    }
    // a verdict that rests on sampling or a truncated search
    let mut undecided = false;
    let report = match a.check {
        CheckKind::Prop3 => {
            let r = check_prop3_hypothesis(&h, a.strict, &budget);
            say!("{r}");
            undecided = r.verdict && !r.exhaustive;
            r.to_key_values()
        }
        CheckKind::Prop6 => {
            let d = PartiteExpansionParams::defaults(h.r());
            let (eps, lam) = (a.epsilon.unwrap_or(d.epsilon), a.lambda.unwrap_or(d.lambda));
            let params = if a.exploratory {
                PartiteExpansionParams::exploratory(eps, lam)?
            } else {
                PartiteExpansionParams::new(eps, lam, h.r())?
            };
            let r = check_prop6_hypothesis(&h, &params, &budget)?;
            say!("{r}");
            undecided = r.verdict && !r.exhaustive;
            r.to_key_values()
        }
        CheckKind::Corollary => {
            let r = check_graph_corollary(&h, &budget)?;
            match &r.witness {
                Some(i) => say!("fails I={i}"),
                None => say!("holds"),
            }
            undecided = r.verdict && !r.exhaustive;
            let mut kv = format!("verdict={}\n", r.verdict);
            if let Some(i) = &r.witness {
                kv.push_str(&format!("witness_i={i}\n"));
            }
            kv + &format!("sets_checked={}\nexhaustive={}\n", r.sets_checked, r.exhaustive)
        }
        CheckKind::Lambda => {
            let x: VertexSet = a
                .x
                .as_deref()
                .ok_or_else(|| Error::Input("--check lambda needs --x".into()))?
                .parse()?;
            let lambda = a.lambda.ok_or_else(|| Error::Input("--check lambda needs --lambda".into()))?;
            match lambda_expansion_witness(&h, &x, lambda)? {
                Some(y) => {
                    say!("fails X={x} Y={y}");
                    format!("verdict=false\nwitness_x={x}\nwitness_y={y}\n")
                }
                None => {
                    say!("holds");
                    "verdict=true\n".to_string()
                }
            }
        }
        CheckKind::Alpha => {
            let res = independence_number(&h, budget.node_limit);
            say!("alpha={} witness={}{}", res.alpha, res.witness, if res.exact { "" } else { " (lower bound)" });
            undecided = !res.exact;
            format!("alpha={}\nwitness={}\nexact={}\n", res.alpha, res.witness, res.exact)
        }
    };
    if let Some(p) = a.out {
        std::fs::write(p, report)?;
    }
    if undecided {
        return Err(Error::Budget("enumeration budget exhausted before the check was decided".into()).into());
    }
    Ok(())
}

fn process(a: ProcessArgs) -> Result<(), Failure> {
    let stop = a.step.map_or(StopRule::AtT, StopRule::AtStep);
    let trace = run_process(a.n, a.r, a.seed, stop)?;
    match trace.stopping_time {
        Some(t) => eprintln!("T={t}"),
        None => eprintln!("no stopping time within {} edges", trace.len()),
    }
    emit(a.out.as_deref(), &trace.to_text(), &trace.metadata())
}

fn experiment(which: ExperimentKind) -> Result<(), Failure> {
    let (a, run, stopping): (_, fn(&ExperimentConfig) -> hyperfrac::Result<ExperimentOutput>, bool) = match which {
        ExperimentKind::KoutPfm(a) => (a, experiment_kout_pfm, false),
        ExperimentKind::Implication(a) => (a, experiment_implication_sweep, false),
        ExperimentKind::Stopping(a) => (a, experiment_stopping_time, true),
    };
    let mut cfg = ExperimentConfig::new(a.host.parse()?, a.n, a.r)
        .with_trials(a.trials)
        .with_seed(a.seed)
        .with_mode(a.mode.parse()?);
    if let Some(k) = a.k {
        cfg = cfg.with_k(k);
    }
    if let Some(range) = &a.k_range {
        let (lo, hi) = parse_k_range(range)?;
        cfg = cfg.with_k_range(lo, hi);
    }
    if stopping {
        if let Some(e) = a.epsilon {
            cfg.threshold_epsilon = e;
        }
    } else if a.epsilon.is_some() || a.lambda.is_some() {
        let d = PartiteExpansionParams::defaults(a.r);
        cfg.params = Some(PartiteExpansionParams::exploratory(
            a.epsilon.unwrap_or(d.epsilon),
            a.lambda.unwrap_or(d.lambda),
        )?);
    }
    if let Some(b) = a.budget {
        cfg.budget.samples_per_size = b;
    }
    cfg.record_timing = a.timing;

    let out = run(&cfg)?;
    match &a.out {
        Some(p) => {
            out.write_csv(std::fs::File::create(p)?)?;
            std::fs::write(with_suffix(p, ".summary"), out.summary_text())?;
        }
        None => {
            out.write_csv(std::io::stdout().lock())?;
            eprint!("{}", out.summary_text());
        }
    }
    for rec in out.failed_trials() {
        eprintln!("trial {} failed: {}", rec.trial, rec.error.as_deref().unwrap_or(""));
    }
    if !out.counterexamples.is_empty() {
        let dir = match &a.out {
            Some(p) => with_suffix(p, ".counterexamples"),
            None => PathBuf::from("counterexamples"),
        };
        let paths = out.dump_counterexamples(&dir)?;
        return Err(Failure::Counterexample(format!(
            "{} instance(s) written under {}",
            paths.len(),
            dir.display()
        )));
    }
    if out.failed_trials().next().is_some() {
        return Err(Error::Solver("some trials failed; see stderr".into()).into());
    }
    Ok(())
}
