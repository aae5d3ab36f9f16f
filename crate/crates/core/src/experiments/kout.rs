//! Perfect fractional matchings in k-out samples, over a range of k.

use rayon::prelude::*;

use super::{frequency, pair, timed, ExperimentConfig, ExperimentOutput, TrialRecord};
use crate::error::Result;
use crate::matching::{cover_shape, is_perfect_value, nu_star, Mode};
use crate::models::{derive_seed, sample_kout, HostModel};

/// For each k and trial: sample, solve `nu*`, record perfection, and on
/// small exact instances the shape of the minimum covers. Trial `t` uses
/// the same seed at every k.
pub fn experiment_kout_pfm(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let host = config.host.with(config.n, config.r)?;
    for &k in &config.ks {
        if k == 0 || k as u128 > host.vertex_degree() {
            return Err(crate::Error::input(format!(
                "k={k} must lie in 1..={}",
                host.vertex_degree()
            )));
        }
    }
    let jobs: Vec<(usize, usize)> = config
        .ks
        .iter()
        .flat_map(|&k| (0..config.trials).map(move |t| (k, t)))
        .collect();
    let records: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(k, t)| timed(config.record_timing, || trial(config, host, k, t)))
        .collect();

    let mut summary = vec![
        pair("experiment", "kout-pfm"),
        pair("host", config.host_name()),
        pair("n", config.n),
        pair("r", config.r),
        pair("k", ks_text(&config.ks)),
        pair("trials", config.trials),
        pair("seed", config.seed),
    ];
    let (yes, total, freq) = frequency(records.iter().map(|r| &r.perfect));
    summary.push(pair("perfect_count", yes));
    summary.push(pair("solved", total));
    summary.push(pair("pfm_frequency", freq));
    if config.ks.len() > 1 {
        for &k in &config.ks {
            let (_, _, f) = frequency(records.iter().filter(|r| r.k == Some(k)).map(|r| &r.perfect));
            summary.push(pair(format!("pfm_frequency.k{k}"), f));
        }
    }
    let (u, ut, _) = frequency(records.iter().map(|r| &r.unique_cover));
    summary.push(pair("unique_cover_count", format!("{u}/{ut}")));
    if matches!(host, HostModel::Partite { .. }) {
        let (b, bt, _) = frequency(records.iter().map(|r| &r.block_constant));
        summary.push(pair("block_constant_count", format!("{b}/{bt}")));
    }
    summary.push(pair("errors", records.iter().filter(|r| r.error.is_some()).count()));
    Ok(ExperimentOutput {
        records,
        summary,
        counterexamples: Vec::new(),
    })
}

fn trial(config: &ExperimentConfig, host: HostModel, k: usize, t: usize) -> TrialRecord {
    let seed = derive_seed(config.seed, t as u64);
    let mut rec = TrialRecord {
        trial: t,
        seed,
        n: config.n,
        r: config.r,
        k: Some(k),
        ..TrialRecord::default()
    };
    let mut run = || -> Result<()> {
        let sample = sample_kout(host, k, seed)?;
        let h = &sample.union;
        let mode = config.mode.resolve(h);
        let nu = nu_star(h, mode)?;
        rec.perfect = Some(is_perfect_value(h, &nu));
        rec.nu = Some(nu);
        if mode == Mode::Exact && h.n() <= config.shape_max_vertices {
            let shape = cover_shape(h, Mode::Exact)?;
            rec.unique_cover = Some(shape.is_unique_uniform);
            rec.block_constant = shape.is_block_constant;
        }
        Ok(())
    };
    if let Err(e) = run() {
        rec.error = Some(e.to_string());
    }
    rec
}

pub(super) fn ks_text(ks: &[usize]) -> String {
    match ks {
        [k] => k.to_string(),
        _ => format!("{}..{}", ks[0], ks[ks.len() - 1]),
    }
}

impl ExperimentConfig {
    pub(super) fn host_name(&self) -> &'static str {
        match self.host {
            crate::models::HostKind::Complete => "complete",
            crate::models::HostKind::Partite => "partite",
        }
    }
}
