//! Random small instances checked against the expansion implications:
//!
//! * strict independent-set expansion gives a perfect fractional matching;
//! * the non-strict version pins the minimum cover to `1/r` everywhere;
//! * for graphs, the neighbourhood condition is equivalent to perfection;
//! * for partite inputs at valid constants, the partite conditions give a
//!   perfect fractional matching with block-constant minimum covers;
//! * `nu* = tau*` on every instance.
//!
//! Any failure is a bug in this crate, and is collected for dumping.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{pair, timed, Counterexample, ExperimentConfig, ExperimentOutput, TrialRecord};
use crate::error::{Error, Result};
use crate::expansion::{check_graph_corollary, check_prop3_hypothesis, check_prop6_hypothesis};
use crate::hypergraph::Hypergraph;
use crate::matching::{cover_shape, nu_star_exact, perfect_weight, tau_star_exact, Mode, Number};
use crate::models::{derive_seed, sample_binomial, sample_kout, HostKind, HostModel};

/// Which checks passed on one instance; `None` when not run.
#[derive(Default)]
struct Flags {
    strict: Option<bool>,
    loose: Option<bool>,
    corollary_agrees: Option<bool>,
    prop6: Option<bool>,
}

/// Exact mode throughout. Instances alternate between independent edge
/// sampling and k-out samples, with sizes drawn up to `config.n`.
pub fn experiment_implication_sweep(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let total = match config.host {
        HostKind::Complete => config.n,
        HostKind::Partite => config.n * config.r,
    };
    if total > config.budget.exhaustive_max_n {
        return Err(Error::budget(format!(
            "instances reach {total} vertices; the sweep needs at most {} for exhaustive checks",
            config.budget.exhaustive_max_n
        )));
    }
    let params = config.partite_params();
    let results: Vec<(TrialRecord, Flags, Vec<Counterexample>)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut flags = Flags::default();
            let mut found = Vec::new();
            let rec = timed(config.record_timing, || trial(config, t, &mut flags, &mut found));
            (rec, flags, found)
        })
        .collect();

    let mut records = Vec::with_capacity(results.len());
    let mut counterexamples = Vec::new();
    let mut tally = [0usize; 6];
    let mut strict_unique = (0usize, 0usize);
    for (rec, flags, found) in results {
        tally[0] += usize::from(flags.strict == Some(true));
        tally[1] += usize::from(flags.loose == Some(true));
        tally[2] += usize::from(flags.corollary_agrees.is_some());
        tally[3] += usize::from(flags.corollary_agrees == Some(true));
        tally[4] += usize::from(flags.prop6.is_some());
        tally[5] += usize::from(flags.prop6 == Some(true));
        if flags.strict == Some(true) {
            strict_unique.1 += 1;
            strict_unique.0 += usize::from(rec.unique_cover == Some(true));
        }
        records.push(rec);
        counterexamples.extend(found);
    }
    let summary = vec![
        pair("experiment", "implication"),
        pair("host", config.host_name()),
        pair("max_n", config.n),
        pair("r", config.r),
        pair("trials", config.trials),
        pair("seed", config.seed),
        pair("prop3_strict_passing", tally[0]),
        pair("prop3_nonstrict_passing", tally[1]),
        pair("strict_passing_with_unique_cover", format!("{}/{}", strict_unique.0, strict_unique.1)),
        pair("corollary_agreement", format!("{}/{}", tally[3], tally[2])),
        pair("prop6_epsilon", params.epsilon),
        pair("prop6_lambda", params.lambda),
        pair("prop6_valid_params", params.is_valid_for(config.r)),
        pair("prop6_passing", format!("{}/{}", tally[5], tally[4])),
        pair("counterexamples", counterexamples.len()),
        pair("errors", records.iter().filter(|r| r.error.is_some()).count()),
    ];
    Ok(ExperimentOutput {
        records,
        summary,
        counterexamples,
    })
}

/// Draws the instance for one trial: its size parameter, k when k-out,
/// and the hypergraph.
fn draw_instance(config: &ExperimentConfig, seed: u64) -> Result<(usize, Option<usize>, Hypergraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = config.r;
    let host = match config.host {
        HostKind::Complete => HostModel::complete(rng.random_range(r.max(1)..=config.n), r)?,
        HostKind::Partite => HostModel::partite(rng.random_range(1..=config.n), r)?,
    };
    let inner = rng.random::<u64>();
    if rng.random_bool(0.5) {
        let max_k = host.vertex_degree().min(4) as usize;
        let k = rng.random_range(1..=max_k);
        Ok((host.n(), Some(k), sample_kout(host, k, inner)?.union))
    } else {
        // dense enough that the hypotheses sometimes hold
        let p = if rng.random_bool(0.2) { 1.0 } else { rng.random_range(0.3..1.0) };
        Ok((host.n(), None, sample_binomial(host, p, inner)?))
    }
}

fn trial(config: &ExperimentConfig, t: usize, flags: &mut Flags, found: &mut Vec<Counterexample>) -> TrialRecord {
    let seed = derive_seed(config.seed, t as u64);
    let mut rec = TrialRecord {
        trial: t,
        seed,
        r: config.r,
        ..TrialRecord::default()
    };
    let mut run = || -> Result<()> {
        let (n, k, h) = draw_instance(config, seed)?;
        rec.n = n;
        rec.k = k;
        let mut flag = |property: &str, detail: String| {
            found.push(Counterexample {
                trial: t,
                property: property.to_string(),
                detail,
                instance: h.clone(),
            })
        };

        let (nu, _) = nu_star_exact(&h)?;
        let (tau, _) = tau_star_exact(&h)?;
        if nu != tau {
            flag("duality", format!("nu*={nu} tau*={tau}"));
        }
        let perfect = nu == perfect_weight(&h);
        let shape = cover_shape(&h, Mode::Exact)?;
        rec.unique_cover = Some(shape.is_unique_uniform);
        rec.block_constant = shape.is_block_constant;
        rec.perfect = Some(perfect);
        rec.nu = Some(Number::Exact(nu.clone()));

        let strict = check_prop3_hypothesis(&h, true, &config.budget);
        if strict.exhaustive {
            flags.strict = Some(strict.verdict);
            if strict.verdict && !perfect {
                flag("prop3-strict", format!("hypothesis holds but nu*={nu}"));
            }
        }
        let loose = check_prop3_hypothesis(&h, false, &config.budget);
        if loose.exhaustive {
            flags.loose = Some(loose.verdict);
            if loose.verdict && !shape.is_unique_uniform {
                flag("prop3-nonstrict", "hypothesis holds but the minimum cover is not unique 1/r".into());
            }
        }
        if h.r() == 2 {
            let c = check_graph_corollary(&h, &config.budget)?;
            if c.exhaustive {
                flags.corollary_agrees = Some(c.verdict == perfect);
                if c.verdict != perfect {
                    flag("graph-corollary", format!("neighbourhood check {} but perfect={perfect}", c.verdict));
                }
            }
        }
        if h.is_partite() {
            let params = config.partite_params();
            let rep = check_prop6_hypothesis(&h, &params, &config.budget)?;
            if rep.exhaustive {
                flags.prop6 = Some(rep.verdict);
                let holds = perfect && shape.is_block_constant == Some(true);
                if rep.verdict && !holds && params.is_valid_for(h.r()) {
                    flag(
                        "prop6",
                        format!("hypothesis holds but perfect={perfect} block_constant={:?}", shape.is_block_constant),
                    );
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run() {
        rec.error = Some(e.to_string());
    }
    rec
}
