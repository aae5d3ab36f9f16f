//! Run the random hypergraph process to the moment the last isolated vertex
//! disappears, then look at the fractional matching number there.
//!
//! cargo run --release --example stopping_process

use hyperfrac::matching::{is_perfect_value, nu_star};
use hyperfrac::models::{default_slack, run_process, threshold_diagnostics, threshold_window, StopRule};
use hyperfrac::Mode;

fn main() -> hyperfrac::Result<()> {
    let (n, r) = (30, 3);
    let g = default_slack(n);
    let (sigma, beta) = threshold_window(n, r, g);
    let trace = run_process(n, r, 42, StopRule::ThroughMark(beta))?;
    let t = trace.stopping_time.expect("marks through beta reach the stopping time");
    println!("n={n} r={r}: stopping time T={t} (trace holds {} edges)", trace.len());

    let at_t = trace.prefix(t)?;
    let before = trace.prefix(t - 1)?;
    let nu = nu_star(&at_t, Mode::Exact)?;
    println!("nu*(H_T) = {nu}, perfect = {}", is_perfect_value(&at_t, &nu));
    println!("nu*(H_(T-1)) = {}", nu_star(&before, Mode::Exact)?);
    println!("isolated before T: {}", before.isolated_vertices());

    let d = threshold_diagnostics(&trace, 0.1, g)?;
    println!("window [{sigma:.5}, {beta:.5}], stopping mark {:.5}, inside: {}", d.lambda_stop, d.in_window);
    println!("low-degree set {} with neighbourhood {}", d.w_sigma, d.neighborhood);
    Ok(())
}
