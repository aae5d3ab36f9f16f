//! Reproducible Monte Carlo campaigns with one CSV row per trial.
//!
//! Trial `t` of every campaign draws from `derive_seed(seed, t)`, runs on
//! the rayon pool, and is written back in trial order, so a configuration
//! and its master seed fix the output bytes.

mod implication;
mod kout;
mod stopping;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expansion::{EnumerationBudget, PartiteExpansionParams};
use crate::hypergraph::Hypergraph;
use crate::matching::{Mode, Number};
use crate::models::{HostKind, DEFAULT_THRESHOLD_EPSILON};
use crate::sidecar;

pub use implication::experiment_implication_sweep;
pub use kout::experiment_kout_pfm;
pub use stopping::experiment_stopping_time;

/// Edge count up to which `Auto` solves exactly.
pub const AUTO_EXACT_MAX_EDGES: usize = 2000;

/// Fixed column order of every experiment CSV.
pub const CSV_HEADER: [&str; 12] = [
    "trial",
    "seed",
    "n",
    "r",
    "k",
    "nu_num",
    "nu_den",
    "perfect",
    "unique_cover",
    "block_constant",
    "T",
    "elapsed_ms",
];

/// Solver mode requested for a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModeChoice {
    /// Exact up to [`AUTO_EXACT_MAX_EDGES`] edges, float beyond.
    #[default]
    Auto,
    Exact,
    Float,
}

impl ModeChoice {
    pub fn resolve(self, h: &Hypergraph) -> Mode {
        match self {
            ModeChoice::Exact => Mode::Exact,
            ModeChoice::Float => Mode::float(),
            ModeChoice::Auto if h.num_edges() <= AUTO_EXACT_MAX_EDGES => Mode::Exact,
            ModeChoice::Auto => Mode::float(),
        }
    }
}

impl FromStr for ModeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ModeChoice::Auto),
            "exact" => Ok(ModeChoice::Exact),
            "float" => Ok(ModeChoice::Float),
            other => Err(Error::input(format!("unknown mode {other:?}; expected exact, float or auto"))),
        }
    }
}

/// Everything a campaign needs.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub host: HostKind,
    /// Vertex count (complete host) or block size (partite host). For the
    /// implication sweep this is the largest instance size.
    pub n: usize,
    pub r: usize,
    /// Values of k to sweep; one entry for a single run.
    pub ks: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: ModeChoice,
    /// Partite constants; the validated defaults when `None`.
    pub params: Option<PartiteExpansionParams>,
    /// Degree cutoff factor for the stopping-time diagnostics.
    pub threshold_epsilon: f64,
    /// Slack `g`; `ln ln n` when `None`.
    pub slack: Option<f64>,
    pub budget: EnumerationBudget,
    /// Cover shape is probed only up to this many vertices.
    pub shape_max_vertices: usize,
    /// Fill `elapsed_ms`. Off by default so reruns are byte-identical.
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn new(host: HostKind, n: usize, r: usize) -> Self {
        ExperimentConfig {
            host,
            n,
            r,
            ks: vec![2],
            trials: 100,
            seed: 0,
            mode: ModeChoice::Auto,
            params: None,
            threshold_epsilon: DEFAULT_THRESHOLD_EPSILON,
            slack: None,
            budget: EnumerationBudget::default(),
            shape_max_vertices: 24,
            record_timing: false,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.ks = vec![k];
        self
    }

    pub fn with_k_range(mut self, lo: usize, hi: usize) -> Self {
        self.ks = (lo..=hi).collect();
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: ModeChoice) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("trials must be at least 1"));
        }
        if self.r == 0 {
            return Err(Error::input("r must be at least 1"));
        }
        if self.host == HostKind::Complete && self.n < self.r {
            return Err(Error::input(format!("need n >= r, got n={} r={}", self.n, self.r)));
        }
        if self.n == 0 {
            return Err(Error::input("n must be at least 1"));
        }
        if self.ks.is_empty() {
            return Err(Error::input("empty k range"));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
        if !(self.threshold_epsilon > 0.0) {
            return Err(Error::input("threshold epsilon must be positive"));
        }
        Ok(())
    }

    fn partite_params(&self) -> PartiteExpansionParams {
        self.params.unwrap_or_else(|| PartiteExpansionParams::defaults(self.r))
    }
}

/// Parses `a..b` (inclusive) or a single value.
pub fn parse_k_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::input(format!("bad k range {s:?}; expected a..b"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim_start_matches('=').trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// One CSV row. `None` fields are written empty.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub r: usize,
    pub k: Option<usize>,
    pub nu: Option<Number>,
    pub perfect: Option<bool>,
    pub unique_cover: Option<bool>,
    pub block_constant: Option<bool>,
    pub stopping_time: Option<usize>,
    pub elapsed_ms: Option<u128>,
    /// Why the trial produced no result; reported in the summary.
    pub error: Option<String>,
}

impl TrialRecord {
    fn fields(&self) -> [String; 12] {
        fn opt<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map_or(String::new(), T::to_string)
        }
        let (num, den) = match &self.nu {
            Some(Number::Exact(q)) => (q.numer().to_string(), q.denom().to_string()),
            Some(Number::Float(x)) => (x.to_string(), String::new()),
            None => (String::new(), String::new()),
        };
        [
            self.trial.to_string(),
            self.seed.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            opt(&self.k),
            num,
            den,
            opt(&self.perfect),
            opt(&self.unique_cover),
            opt(&self.block_constant),
            opt(&self.stopping_time),
            opt(&self.elapsed_ms),
        ]
    }
}

/// An instance that broke an implication the checks rely on.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub property: String,
    pub detail: String,
    pub instance: Hypergraph,
}

/// Rows, summary and any counterexamples of one campaign.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub records: Vec<TrialRecord>,
    /// Ordered `key=value` pairs.
    pub summary: Vec<(String, String)>,
    pub counterexamples: Vec<Counterexample>,
}

impl ExperimentOutput {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER).map_err(csv_error)?;
        for rec in &self.records {
            w.write_record(rec.fields()).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn summary_text(&self) -> String {
        sidecar::render(&self.summary)
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Trials that failed to produce a result.
    pub fn failed_trials(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records.iter().filter(|r| r.error.is_some())
    }

    /// Writes each counterexample as a commented hypergraph file in `dir`.
    pub fn dump_counterexamples(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for (i, c) in self.counterexamples.iter().enumerate() {
            let path = dir.join(format!("counterexample_{:03}_trial{}.txt", i, c.trial));
            let mut text = String::new();
            let _ = writeln!(text, "# property: {}", c.property);
            let _ = writeln!(text, "# trial: {}", c.trial);
            for line in c.detail.lines() {
                let _ = writeln!(text, "# {line}");
            }
            text.push_str(&c.instance.to_text());
            std::fs::write(&path, text)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Fraction of `Some(true)` among the `Some` values, as text.
fn frequency<'a>(values: impl Iterator<Item = &'a Option<bool>>) -> (usize, usize, String) {
    let (mut yes, mut total) = (0, 0);
    for v in values.flatten() {
        total += 1;
        yes += usize::from(*v);
    }
    let text = if total == 0 {
        String::new()
    } else {
        format!("{:.6}", yes as f64 / total as f64)
    };
    (yes, total, text)
}

fn pair(k: impl Into<String>, v: impl ToString) -> (String, String) {
    (k.into(), v.to_string())
}

/// Runs `f` and fills `elapsed_ms` when timing is on.
fn timed<F: FnOnce() -> TrialRecord>(on: bool, f: F) -> TrialRecord {
    let start = std::time::Instant::now();
    let mut rec = f();
    if on {
        rec.elapsed_ms = Some(start.elapsed().as_millis());
    }
    rec
}

#[cfg(test)]
mod tests;
