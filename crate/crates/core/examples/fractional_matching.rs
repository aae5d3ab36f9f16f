//! Fractional matching and cover numbers of a few classic hypergraphs.
//!
//! cargo run --example fractional_matching

use hyperfrac::hypergraph::named;
use hyperfrac::matching::{has_perfect_fractional_matching, nu_star, nu_star_exact, tau_star_exact};
use hyperfrac::{Hypergraph, Mode};

fn main() -> hyperfrac::Result<()> {
    let cases: Vec<(&str, Hypergraph)> = vec![
        ("triangle", named::complete_graph(3)),
        ("path on 3 vertices", named::path(3)),
        ("Fano plane", named::fano()),
        ("K4", named::complete_graph(4)),
        ("single 3-edge", Hypergraph::new(3, 3, [[0, 1, 2]])?),
    ];
    for (name, h) in &cases {
        let (nu, m) = nu_star_exact(h)?;
        let (tau, c) = tau_star_exact(h)?;
        let perfect = has_perfect_fractional_matching(h, Mode::Exact)?;
        println!("{name}: nu*={nu} tau*={tau} perfect={perfect}");
        println!("  matching: {:?}", m.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>());
        println!("  cover:    {:?}", c.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    }
    // float mode for larger inputs
    let big = named::complete_uniform(12, 3);
    println!("K12^(3): nu* ~ {}", nu_star(&big, Mode::float())?);
    Ok(())
}
