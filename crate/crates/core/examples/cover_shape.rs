//! Is the minimum fractional cover unique, and is it constant on blocks?
//!
//! cargo run --example cover_shape

use hyperfrac::hypergraph::named;
use hyperfrac::matching::cover_shape;
use hyperfrac::{Hypergraph, Mode};

fn main() -> hyperfrac::Result<()> {
    let cases: Vec<(&str, Hypergraph)> = vec![
        ("K4", named::complete_graph(4)),
        ("single edge K2", named::complete_graph(2)),
        ("K_{2,2}", named::complete_bipartite(2)),
        ("complete 3-partite, blocks of 2", named::complete_partite(2, 3)),
        ("perfect matching, partite", Hypergraph::new_partite(2, 2, [[0, 2], [1, 3]])?),
    ];
    for (name, h) in &cases {
        let s = cover_shape(h, Mode::Exact)?;
        println!(
            "{name}: tau*={} unique_uniform={} block_constant={:?}",
            s.tau_star, s.is_unique_uniform, s.is_block_constant
        );
        for (v, (lo, hi)) in s.ranges.iter().enumerate() {
            println!("  w({v}) ranges over [{lo}, {hi}]");
        }
    }
    Ok(())
}
