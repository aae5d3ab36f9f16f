//! Perfect fractional matchings at the isolated-vertex stopping time.

use rayon::prelude::*;

use super::{frequency, pair, timed, ExperimentConfig, ExperimentOutput, TrialRecord};
use crate::error::{Error, Result};
use crate::matching::{is_perfect_value, nu_star};
use crate::models::{default_slack, derive_seed, run_process, threshold_diagnostics, threshold_window, StopRule};

/// What a trial learns beyond its CSV row.
#[derive(Default)]
struct Extra {
    /// `nu*` one step before the stopping time.
    nu_before: Option<f64>,
    perfect_before: Option<bool>,
    in_window: Option<bool>,
    w_sigma: Option<usize>,
}

/// Runs the process to its stopping time `T` and checks whether `H_T` has
/// a perfect fractional matching, along with the threshold diagnostics.
pub fn experiment_stopping_time(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let (n, r) = (config.n, config.r);
    if n < r {
        return Err(Error::input(format!("need n >= r, got n={n} r={r}")));
    }
    let g = config.slack.unwrap_or_else(|| default_slack(n));
    let (_, beta) = threshold_window(n, r, g);
    let stop = if beta < 1.0 { StopRule::ThroughMark(beta) } else { StopRule::AtT };

    let results: Vec<(TrialRecord, Extra)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut extra = Extra::default();
            let rec = timed(config.record_timing, || trial(config, t, g, stop, &mut extra));
            (rec, extra)
        })
        .collect();
    let (records, extras): (Vec<TrialRecord>, Vec<Extra>) = results.into_iter().unzip();

    let ts: Vec<f64> = records.iter().filter_map(|r| r.stopping_time).map(|t| t as f64).collect();
    let scale = n as f64 / r as f64 * (n as f64).ln();
    let mean_t = ts.iter().sum::<f64>() / ts.len().max(1) as f64;
    let min_t = records.iter().filter_map(|r| r.stopping_time).min();
    let (yes, total, freq) = frequency(records.iter().map(|r| &r.perfect));
    let (_, _, window) = frequency(extras.iter().map(|e| &e.in_window));
    let w: Vec<usize> = extras.iter().filter_map(|e| e.w_sigma).collect();
    let nu_before_max = extras.iter().filter_map(|e| e.nu_before).fold(f64::NEG_INFINITY, f64::max);
    let before_imperfect = extras.iter().all(|e| e.perfect_before == Some(false));

    let summary = vec![
        pair("experiment", "stopping"),
        pair("n", n),
        pair("r", r),
        pair("trials", config.trials),
        pair("seed", config.seed),
        pair("perfect_count", yes),
        pair("solved", total),
        pair("pfm_frequency", freq),
        pair("mean_T", format!("{mean_t:.4}")),
        pair("min_T", min_t.map_or(String::new(), |t| t.to_string())),
        pair("mean_T_ratio", format!("{:.6}", mean_t / scale)),
        pair("T_at_least_n_over_r", records.iter().all(|rec| rec.stopping_time.is_some_and(|t| t * r >= n))),
        pair("nu_before_T_max", if nu_before_max.is_finite() { format!("{nu_before_max:.6}") } else { String::new() }),
        pair("imperfect_before_T", before_imperfect),
        pair("threshold_epsilon", config.threshold_epsilon),
        pair("slack", format!("{g:.6}")),
        pair("lambda_in_window_frequency", window),
        pair("mean_w_sigma", format!("{:.4}", w.iter().sum::<usize>() as f64 / w.len().max(1) as f64)),
        pair("errors", records.iter().filter(|r| r.error.is_some()).count()),
    ];
    Ok(ExperimentOutput {
        records,
        summary,
        counterexamples: Vec::new(),
    })
}

fn trial(config: &ExperimentConfig, t: usize, g: f64, stop: StopRule, extra: &mut Extra) -> TrialRecord {
    let seed = derive_seed(config.seed, t as u64);
    let mut rec = TrialRecord {
        trial: t,
        seed,
        n: config.n,
        r: config.r,
        ..TrialRecord::default()
    };
    let mut run = || -> Result<()> {
        let trace = run_process(config.n, config.r, seed, stop)?;
        let big_t = trace
            .stopping_time
            .ok_or_else(|| Error::solver("process ended before covering every vertex"))?;
        rec.stopping_time = Some(big_t);
        let h = trace.prefix(big_t)?;
        let nu = nu_star(&h, config.mode.resolve(&h))?;
        rec.perfect = Some(is_perfect_value(&h, &nu));
        rec.nu = Some(nu);

        let before = trace.prefix(big_t - 1)?;
        let nu_before = nu_star(&before, config.mode.resolve(&before))?;
        extra.perfect_before = Some(is_perfect_value(&before, &nu_before));
        extra.nu_before = Some(nu_before.to_f64());

        let d = threshold_diagnostics(&trace, config.threshold_epsilon, g)?;
        extra.in_window = Some(d.in_window);
        extra.w_sigma = Some(d.w_sigma.len());
        Ok(())
    };
    if let Err(e) = run() {
        rec.error = Some(e.to_string());
    }
    rec
}
