//! Expansion hypotheses: independent-set expansion, the graph neighbourhood
//! test, the partite conditions, and the independence number.
//!
//! cargo run --example expansion_checks

use hyperfrac::expansion::{
    check_graph_corollary, check_prop3_hypothesis, check_prop6_hypothesis, independence_number,
    is_lambda_expansive, EnumerationBudget, PartiteExpansionParams,
};
use hyperfrac::hypergraph::named;
use hyperfrac::{Hypergraph, VertexSet};

fn main() -> hyperfrac::Result<()> {
    let budget = EnumerationBudget::default();

    let single = Hypergraph::new(3, 3, [[0, 1, 2]])?;
    println!("single edge, strict: {}", check_prop3_hypothesis(&single, true, &budget));
    println!("K4, strict:          {}", check_prop3_hypothesis(&named::complete_graph(4), true, &budget));
    println!("Fano, non-strict:    {}", check_prop3_hypothesis(&named::fano(), false, &budget));

    let p3 = named::path(3);
    let c = check_graph_corollary(&p3, &budget)?;
    println!("P3 neighbourhood test: verdict={} witness={:?}", c.verdict, c.witness.map(|w| w.to_string()));

    let x = VertexSet::from_iter_unsorted([0]);
    println!("K4: {{0}} is 1-expansive: {}", is_lambda_expansive(&named::complete_graph(4), &x, 1.0)?);

    // the guaranteed constants are tiny; exploratory ones show the mechanics
    let params = PartiteExpansionParams::exploratory(0.4, 1.0)?;
    let rep = check_prop6_hypothesis(&named::complete_bipartite(2), &params, &budget)?;
    println!("K_{{2,2}} partite check (eps=0.4, lambda=1): {rep}");
    let d = PartiteExpansionParams::defaults(2);
    println!("valid constants for r=2: eps={} lambda={}", d.epsilon, d.lambda);

    let a = independence_number(&named::fano(), 1_000_000);
    println!("alpha(Fano) = {} via {} (exact={})", a.alpha, a.witness, a.exact);
    Ok(())
}
