//! A small k sweep over k-out samples of the complete 3-uniform host,
//! written as CSV plus a key=value summary.
//!
//! cargo run --release --example experiment_sweep

use hyperfrac::experiments::{experiment_kout_pfm, ExperimentConfig};
use hyperfrac::models::HostKind;

fn main() -> hyperfrac::Result<()> {
    let cfg = ExperimentConfig::new(HostKind::Complete, 30, 3)
        .with_k_range(1, 4)
        .with_trials(20)
        .with_seed(1);
    let out = experiment_kout_pfm(&cfg)?;
    for k in 1..=4 {
        let key = format!("pfm_frequency.k{k}");
        println!("k={k}: perfect fraction {}", out.summary_value(&key).unwrap_or("?"));
    }
    let csv = out.csv_string();
    println!("first rows:");
    for line in csv.lines().take(4) {
        println!("  {line}");
    }
    print!("summary:\n{}", out.summary_text());
    Ok(())
}
