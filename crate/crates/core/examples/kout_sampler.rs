//! Sample k-out hypergraphs and test one vertex's choice for uniformity.
//!
//! cargo run --release --example kout_sampler

use hyperfrac::matching::{has_perfect_fractional_matching, nu_star};
use hyperfrac::models::{per_vertex_uniformity_check, sample_kout, HostModel};
use hyperfrac::Mode;

fn main() -> hyperfrac::Result<()> {
    let host = HostModel::complete(12, 3)?;
    let s = sample_kout(host, 2, 7)?;
    println!("{host}: k=2 seed=7 gives {} edges", s.union.num_edges());
    println!("vertex 0 chose {:?}", s.choices[0]);
    println!("nu* = {}", nu_star(&s.union, Mode::Exact)?);
    println!("perfect: {}", has_perfect_fractional_matching(&s.union, Mode::Exact)?);

    let partite = HostModel::partite(4, 3)?;
    let p = sample_kout(partite, 1, 1)?;
    println!("{partite}: k=1 has {} edges, block size {:?}", p.union.num_edges(), p.union.block_size());

    let rep = per_vertex_uniformity_check(HostModel::complete(5, 2)?, 1, 0, 20_000, 3)?;
    println!(
        "uniformity of vertex 0 in K5: counts={:?} chi2={:.2} dof={} passes(5 sigma)={}",
        rep.counts,
        rep.chi_square,
        rep.dof,
        rep.passes(5.0)
    );
    Ok(())
}
