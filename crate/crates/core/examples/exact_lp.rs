//! Solve a small linear program exactly and in floating point.
//!
//! cargo run --example exact_lp

use hyperfrac::lp::{solve_exact, solve_float, verify_certificate, ObjectiveSense, RowSense};
use hyperfrac::{LinearProgram, Rational};

fn main() -> hyperfrac::Result<()> {
    // max x + y  subject to  3x + y <= 2,  x + 3y <= 2,  0 <= x, y <= 1
    let q = Rational::from_integer;
    let mut lp = LinearProgram::new(ObjectiveSense::Max, vec![q(1), q(1)]);
    lp.add_constraint(vec![(0, q(3)), (1, q(1))], RowSense::Le, q(2));
    lp.add_constraint(vec![(0, q(1)), (1, q(3))], RowSense::Le, q(2));

    let exact = solve_exact(&lp)?;
    let show = |v: &[Rational]| v.iter().map(Rational::to_fraction_string).collect::<Vec<_>>().join(" ");
    println!("exact: status={:?} objective={}", exact.status, exact.objective.to_fraction_string());
    println!("  primal: {}", show(&exact.primal));
    println!("  dual:   {}", show(&exact.dual));
    verify_certificate(&lp, &exact, 0.0).expect("certificate");

    let float = solve_float(&lp, 1e-9)?;
    println!("float: objective={} primal={:?}", float.objective, float.primal);
    Ok(())
}
