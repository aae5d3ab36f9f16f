//! Random small instances checked against the expansion implications; any
//! counterexample is printed.
//!
//! cargo run --release --example implication_sweep

use hyperfrac::experiments::{experiment_implication_sweep, ExperimentConfig};
use hyperfrac::models::HostKind;

fn main() -> hyperfrac::Result<()> {
    let graphs = ExperimentConfig::new(HostKind::Complete, 9, 2).with_trials(100).with_seed(4);
    let partite = ExperimentConfig::new(HostKind::Partite, 4, 3).with_trials(40).with_seed(4);
    for cfg in [graphs, partite] {
        let out = experiment_implication_sweep(&cfg)?;
        print!("{}", out.summary_text());
        for c in &out.counterexamples {
            println!("counterexample ({}) in trial {}: {}", c.property, c.trial, c.detail);
        }
        println!();
    }
    Ok(())
}
