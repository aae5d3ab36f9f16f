//! Expansion conditions checked by enumeration at small scale.
//!
//! Every "for all Y" quantifier is decided as a bounded hitting-set question
//! on the traces `e \ X` of the edges meeting `X`, never by listing `Y`.

mod enumerate;
mod hitting;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex, VertexSet};
use enumerate::{can_extend, sample_subsets, scan_independent, Outcome};
pub(crate) use enumerate::{binomial, combinations};
use hitting::{hit_within, HittingSet, Search};

/// Absorbs rounding in products such as `0.1 * 30` before taking a floor.
const FLOOR_SLACK: f64 = 1e-9;

fn floor_count(x: f64) -> usize {
    (x + FLOOR_SLACK).floor().max(0.0) as usize
}

/// How much enumeration a check may do.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationBudget {
    /// Enumerate every candidate set when the relevant vertex count is at most this.
    pub exhaustive_max_n: usize,
    /// Random candidates drawn per size otherwise.
    pub samples_per_size: usize,
    pub seed: u64,
    /// Search-node cap for a single hitting-set or independence search.
    pub node_limit: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            exhaustive_max_n: 16,
            samples_per_size: 10_000,
            seed: 0,
            node_limit: 2_000_000,
        }
    }
}

/// Verdict of a hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub verdict: bool,
    /// A violating pair `(X, Y)`: edges meeting `X` all meet `Y`.
    pub witness: Option<(VertexSet, VertexSet)>,
    pub pairs_checked: u64,
    /// False when candidates were sampled or some search ran out of nodes.
    pub exhaustive: bool,
}

impl ExpansionReport {
    /// `key=value` lines for machine consumption.
    pub fn to_key_values(&self) -> String {
        let mut out = format!("verdict={}\n", self.verdict);
        if let Some((x, y)) = &self.witness {
            out.push_str(&format!("witness_x={x}\nwitness_y={y}\n"));
        }
        out.push_str(&format!(
            "pairs_checked={}\nexhaustive={}\n",
            self.pairs_checked, self.exhaustive
        ));
        out
    }
}

impl fmt::Display for ExpansionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.verdict { "holds" } else { "fails" };
        write!(f, "{verdict}")?;
        if let Some((x, y)) = &self.witness {
            write!(f, " X={x} Y={y}")?;
        }
        if !self.exhaustive {
            write!(f, " (not exhaustive)")?;
        }
        Ok(())
    }
}

/// Constants for the r-partite expansion conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartiteExpansionParams {
    pub epsilon: f64,
    pub lambda: f64,
}

impl PartiteExpansionParams {
    /// Requires `epsilon` in (0, 1/2) and `lambda > 2r^2`.
    pub fn new(epsilon: f64, lambda: f64, r: usize) -> Result<Self> {
        let p = PartiteExpansionParams { epsilon, lambda };
        if !p.is_valid_for(r) {
            return Err(Error::input(format!(
                "need epsilon in (0, 1/2) and lambda > 2r^2 = {}, got epsilon={epsilon} lambda={lambda}",
                2 * r * r
            )));
        }
        Ok(p)
    }

    /// `lambda = 4r^3`, `epsilon = 1 / (2 r lambda)`.
    pub fn defaults(r: usize) -> Self {
        let lambda = 4.0 * (r as f64).powi(3);
        PartiteExpansionParams {
            epsilon: 1.0 / (2.0 * r as f64 * lambda),
            lambda,
        }
    }

    /// Any `epsilon` in (0, 1) and `lambda > 0`, for probing outside the
    /// regime where the implication is guaranteed.
    pub fn exploratory(epsilon: f64, lambda: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0 && lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::input(format!(
                "need epsilon in (0, 1) and lambda > 0, got epsilon={epsilon} lambda={lambda}"
            )));
        }
        Ok(PartiteExpansionParams { epsilon, lambda })
    }

    pub fn is_valid_for(&self, r: usize) -> bool {
        self.epsilon > 0.0 && self.epsilon < 0.5 && self.lambda > (2 * r * r) as f64 && self.lambda.is_finite()
    }
}

/// Traces `e \ x` of the edges meeting the sorted set `x`.
fn traces(h: &Hypergraph, x: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut seen: Vec<u32> = x
        .iter()
        .flat_map(|&v| h.incident_edge_indices(v).iter().copied())
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.into_iter()
        .map(|e| {
            h.edge(e as usize)
                .iter()
                .copied()
                .filter(|u| x.binary_search(u).is_err())
                .collect()
        })
        .collect()
}

fn check_set(h: &Hypergraph, x: &VertexSet) -> Result<()> {
    if x.is_empty() {
        return Err(Error::input("X must be nonempty"));
    }
    if let Some(v) = x.iter().find(|&v| v as usize >= h.n()) {
        return Err(Error::input(format!("vertex {v} out of range for n={}", h.n())));
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::input(format!("lambda must be finite and nonnegative, got {lambda}")));
    }
    Ok(())
}

/// A set `Y` outside `x` with `|Y| <= floor(lambda |x|)` meeting every edge
/// that meets `x`, if one exists.
pub fn lambda_expansion_witness(h: &Hypergraph, x: &VertexSet, lambda: f64) -> Result<Option<VertexSet>> {
    check_set(h, x)?;
    check_lambda(lambda)?;
    let bound = floor_count(lambda * x.len() as f64);
    match hit_within(traces(h, x.as_slice()), bound, u64::MAX) {
        Search::Found(y) => Ok(Some(VertexSet::from_iter_unsorted(y))),
        Search::Impossible => Ok(None),
        Search::Undecided => unreachable!("unbounded search"),
    }
}

/// True when no `Y` outside `x` of size at most `lambda |x|` meets every
/// edge that meets `x`. An edge inside `x` makes `x` expansive for every
/// `lambda`; an `x` met by no edge is never expansive.
pub fn is_lambda_expansive(h: &Hypergraph, x: &VertexSet, lambda: f64) -> Result<bool> {
    Ok(lambda_expansion_witness(h, x, lambda)?.is_none())
}

/// Checks that every independent `X` survives all `Y` with
/// `|Y| < (r-1)|X|` (strict) or `|Y| <= (r-1)|X|` (non-strict).
pub fn check_prop3_hypothesis(h: &Hypergraph, strict: bool, budget: &EnumerationBudget) -> ExpansionReport {
    let r = h.r() as i64;
    let scan = scan_independent(h, budget, |x| {
        let bound = (r - 1) * x.len() as i64 - i64::from(strict);
        if bound < 0 {
            return Outcome::Holds;
        }
        match hit_within(traces(h, x), bound as usize, budget.node_limit) {
            Search::Found(y) => Outcome::Violated(y),
            Search::Impossible => Outcome::Holds,
            Search::Undecided => Outcome::Undecided,
        }
    });
    ExpansionReport {
        verdict: scan.first.is_none(),
        exhaustive: scan.exhaustive && scan.decided,
        pairs_checked: scan.checked,
        witness: scan
            .first
            .map(|(x, y)| (VertexSet::from_iter_unsorted(x), VertexSet::from_iter_unsorted(y))),
    }
}

/// Outcome of the neighbourhood test on a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub verdict: bool,
    /// An independent `I` with `|N(I)| < |I|`.
    pub witness: Option<VertexSet>,
    pub sets_checked: u64,
    pub exhaustive: bool,
}

/// Checks `|N(I)| >= |I|` for every independent set `I` of a graph.
pub fn check_graph_corollary(g: &Hypergraph, budget: &EnumerationBudget) -> Result<CorollaryReport> {
    if g.r() != 2 {
        return Err(Error::input(format!("expected a graph (r=2), got r={}", g.r())));
    }
    let scan = scan_independent(g, budget, |set| {
        let mut nbrs: Vec<Vertex> = set
            .iter()
            .flat_map(|&v| {
                g.incident_edge_indices(v)
                    .iter()
                    .flat_map(|&e| g.edge(e as usize).iter().copied())
                    .filter(move |&u| u != v)
            })
            .collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        if nbrs.len() < set.len() {
            Outcome::Violated(())
        } else {
            Outcome::Holds
        }
    });
    Ok(CorollaryReport {
        verdict: scan.first.is_none(),
        witness: scan.first.map(|(i, ())| VertexSet::from_iter_unsorted(i)),
        sets_checked: scan.checked,
        exhaustive: scan.exhaustive,
    })
}

/// Checks both partite conditions: every `T` inside one block, at every size
/// regime, has an edge avoiding any admissible `U` spread over the other blocks.
///
/// * small `T` (`|T| <= epsilon n`): `|U_j| <= floor(lambda |T|)`;
/// * large `T` (`|T| >= epsilon n`): `|U_j| <= floor((1 - epsilon) n)`.
///
/// Large `T` only needs its smallest size: shrinking `T` never helps it.
pub fn check_prop6_hypothesis(
    h: &Hypergraph,
    params: &PartiteExpansionParams,
    budget: &EnumerationBudget,
) -> Result<ExpansionReport> {
    let s = h
        .block_size()
        .ok_or_else(|| Error::input("the partite check needs a vertex partition"))?;
    let r = h.r();
    let blocks = h.blocks().expect("partite");
    let eps_n = params.epsilon * s as f64;

    // (size, per-block capacity), in checking order
    let mut regimes: Vec<(usize, usize)> = (1..=floor_count(eps_n))
        .filter(|&t| t <= s)
        .map(|t| (t, floor_count(params.lambda * t as f64).min(s)))
        .collect();
    let large = ((eps_n - FLOOR_SLACK).ceil().max(1.0)) as usize;
    if large <= s {
        regimes.push((large, floor_count((1.0 - params.epsilon) * s as f64).min(s)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut checked = 0u64;
    let mut exhaustive = true;
    for (t, cap) in regimes {
        let full = s <= budget.exhaustive_max_n || binomial(s, t) <= budget.samples_per_size as u128;
        exhaustive &= full;
        let candidates: Vec<(usize, Vec<Vertex>)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| {
                let sets = if full {
                    combinations(b.as_slice(), t)
                } else {
                    sample_subsets(b.as_slice(), t, budget.samples_per_size, &mut rng)
                };
                sets.into_iter().map(move |set| (i, set))
            })
            .collect();
        checked += candidates.len() as u64;
        let outcomes: Vec<Search> = candidates
            .par_iter()
            .map(|(i, set)| {
                let mut caps = vec![cap; r];
                caps[*i] = 0;
                let class = |v: Vertex| v as usize / s;
                HittingSet::new(traces(h, set), class, &caps, budget.node_limit).solve()
            })
            .collect();
        for ((_, set), outcome) in candidates.into_iter().zip(outcomes) {
            match outcome {
                Search::Found(u) => {
                    return Ok(ExpansionReport {
                        verdict: false,
                        witness: Some((VertexSet::from_iter_unsorted(set), VertexSet::from_iter_unsorted(u))),
                        pairs_checked: checked,
                        exhaustive,
                    })
                }
                Search::Undecided => exhaustive = false,
                Search::Impossible => {}
            }
        }
    }
    Ok(ExpansionReport {
        verdict: true,
        witness: None,
        pairs_checked: checked,
        exhaustive,
    })
}

/// Largest independent set found, flagged exact when the search finished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceResult {
    pub alpha: usize,
    pub witness: VertexSet,
    pub exact: bool,
}

/// Maximum independent set by branch and bound. With the node limit hit,
/// the result is a lower bound and `exact` is false.
pub fn independence_number(h: &Hypergraph, node_limit: u64) -> IndependenceResult {
    // low-degree vertices first so good sets appear early
    let mut order: Vec<Vertex> = (0..h.n() as Vertex).collect();
    order.sort_by_key(|&v| (h.degree(v), v));
    let mut search = MaxIndependent {
        h,
        order,
        best: Vec::new(),
        nodes: 0,
        limit: node_limit,
    };
    let mut current = Vec::new();
    let finished = search.branch(0, &mut current);
    let mut witness = search.best;
    witness.sort_unstable();
    IndependenceResult {
        alpha: witness.len(),
        witness: VertexSet::from_iter_unsorted(witness),
        exact: finished,
    }
}

struct MaxIndependent<'a> {
    h: &'a Hypergraph,
    order: Vec<Vertex>,
    best: Vec<Vertex>,
    nodes: u64,
    limit: u64,
}

impl MaxIndependent<'_> {
    /// `current` is kept sorted. Returns false once the node limit is hit.
    fn branch(&mut self, idx: usize, current: &mut Vec<Vertex>) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        let addable = self.order[idx..]
            .iter()
            .filter(|&&v| can_extend(self.h, current, v))
            .count();
        if current.len() + addable <= self.best.len() {
            return true;
        }
        let Some(pos) = (idx..self.order.len()).find(|&i| can_extend(self.h, current, self.order[i])) else {
            return true;
        };
        let v = self.order[pos];
        let at = current.binary_search(&v).unwrap_err();
        current.insert(at, v);
        let ok = self.branch(pos + 1, current);
        current.remove(at);
        ok && self.branch(pos + 1, current)
    }
}

#[cfg(test)]
mod tests;
