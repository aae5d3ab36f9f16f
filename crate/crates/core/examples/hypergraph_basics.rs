//! Build hypergraphs, inspect them, and round-trip the text format.
//!
//! cargo run --example hypergraph_basics

use hyperfrac::hypergraph::named;
use hyperfrac::{Hypergraph, VertexSet};

fn main() -> hyperfrac::Result<()> {
    let h = Hypergraph::new(5, 3, [[0, 1, 2], [2, 3, 4], [0, 3, 4]])?;
    println!("n={} r={} edges={}", h.n(), h.r(), h.num_edges());
    for v in 0..h.n() as u32 {
        println!("  deg({v}) = {}", h.degree(v));
    }
    let s = VertexSet::from_iter_unsorted([1, 3]);
    println!("{s} independent: {}", h.is_independent(&s)?);

    let text = h.to_text();
    print!("text form:\n{text}");
    assert_eq!(Hypergraph::from_text(&text)?, h);

    // a 2-block partite host: vertices 0..3 and 3..6
    let k33 = named::complete_bipartite(3);
    println!("K33 blocks: {:?}", k33.blocks().unwrap().iter().map(|b| b.to_string()).collect::<Vec<_>>());
    println!("Fano plane: {} lines on {} points", named::fano().num_edges(), named::fano().n());
    Ok(())
}
