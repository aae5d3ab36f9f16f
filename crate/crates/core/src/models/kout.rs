//! k-out sampling: every vertex picks k distinct host edges through itself.

use std::collections::{BTreeSet, HashMap};

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{derive_seed, stream_rng, HostModel};
use crate::error::{Error, Result};
use crate::expansion::combinations;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::sidecar;

/// One k-out draw and the hypergraph it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KOutSample {
    pub host: HostModel,
    pub k: usize,
    pub seed: u64,
    /// `choices[v]`: the k sorted edges chosen by `v`, in lexicographic order.
    pub choices: Vec<Vec<Vec<Vertex>>>,
    /// Union of all choices.
    pub union: Hypergraph,
}

impl KOutSample {
    /// The union in the hypergraph text format.
    pub fn to_text(&self) -> String {
        self.union.to_text()
    }

    /// `key=value` lines describing how the sample was drawn.
    pub fn metadata(&self) -> String {
        sidecar::render(&[
            ("kind", "kout".to_string()),
            ("host", self.host.to_string()),
            ("n", self.host.n().to_string()),
            ("r", self.host.r().to_string()),
            ("k", self.k.to_string()),
            ("seed", self.seed.to_string()),
            ("edges", self.union.num_edges().to_string()),
        ])
    }
}

/// Draws a k-out sample. Vertex `v` uses its own stream of `seed`, so the
/// result does not depend on thread scheduling.
pub fn sample_kout(host: HostModel, k: usize, seed: u64) -> Result<KOutSample> {
    host.validate()?;
    let deg = host.vertex_degree();
    if k as u128 > deg {
        return Err(Error::input(format!(
            "k={k} exceeds the {deg} host edges through each vertex"
        )));
    }
    let choices: Vec<Vec<Vec<Vertex>>> = (0..host.total_vertices() as Vertex)
        .into_par_iter()
        .map(|v| select_for_vertex(&host, k, v, &mut stream_rng(seed, u64::from(v))))
        .collect();
    let edges = choices.iter().flatten().cloned();
    let union = match host {
        HostModel::Complete { n, r } => Hypergraph::new(n, r, edges)?,
        HostModel::Partite { n, r } => Hypergraph::new_partite(n, r, edges)?,
    };
    Ok(KOutSample {
        host,
        k,
        seed,
        choices,
        union,
    })
}

/// A uniform k-subset of the host edges through `v`, sorted.
fn select_for_vertex(host: &HostModel, k: usize, v: Vertex, rng: &mut ChaCha8Rng) -> Vec<Vec<Vertex>> {
    // when k is a large share of the link, enumerate it instead of rejecting
    if host.vertex_degree() <= 2 * k as u128 {
        let all = incident_edges(host, v);
        let mut picked: Vec<Vec<Vertex>> = index::sample(rng, all.len(), k)
            .into_iter()
            .map(|i| all[i].clone())
            .collect();
        picked.sort_unstable();
        return picked;
    }
    let mut picked = BTreeSet::new();
    while picked.len() < k {
        picked.insert(random_incident_edge(host, v, rng));
    }
    picked.into_iter().collect()
}

/// One host edge through `v`, uniformly.
fn random_incident_edge(host: &HostModel, v: Vertex, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    match *host {
        HostModel::Complete { n, r } => {
            let mut e: Vec<Vertex> = index::sample(rng, n - 1, r - 1)
                .into_iter()
                .map(|i| if i as Vertex >= v { i as Vertex + 1 } else { i as Vertex })
                .collect();
            e.push(v);
            e.sort_unstable();
            e
        }
        HostModel::Partite { n, r } => {
            let own = v as usize / n;
            (0..r)
                .map(|j| {
                    if j == own {
                        v
                    } else {
                        (j * n + rng.random_range(0..n)) as Vertex
                    }
                })
                .collect()
        }
    }
}

/// Every host edge through `v`, in lexicographic order.
fn incident_edges(host: &HostModel, v: Vertex) -> Vec<Vec<Vertex>> {
    match *host {
        HostModel::Complete { n, r } => {
            let others: Vec<Vertex> = (0..n as Vertex).filter(|&u| u != v).collect();
            combinations(&others, r - 1)
                .into_iter()
                .map(|mut e| {
                    let at = e.binary_search(&v).unwrap_err();
                    e.insert(at, v);
                    e
                })
                .collect()
        }
        HostModel::Partite { n, r } => {
            let own = v as usize / n;
            let mut out: Vec<Vec<Vertex>> = vec![Vec::new()];
            for j in 0..r {
                let options: Vec<Vertex> = if j == own {
                    vec![v]
                } else {
                    (j * n..(j + 1) * n).map(|u| u as Vertex).collect()
                };
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |&u| {
                            let mut e = prefix.clone();
                            e.push(u);
                            e
                        })
                    })
                    .collect();
            }
            out
        }
    }
}

/// Every host edge, in lexicographic order. Refuses hosts with more than
/// ten million edges.
pub fn host_edges(host: HostModel) -> Result<Vec<Vec<Vertex>>> {
    host.validate()?;
    if host.num_edges() > 10_000_000 {
        return Err(Error::budget(format!("host has {} edges, too many to list", host.num_edges())));
    }
    Ok(match host {
        HostModel::Complete { n, r } => {
            let all: Vec<Vertex> = (0..n as Vertex).collect();
            combinations(&all, r)
        }
        HostModel::Partite { n, .. } => {
            // edges through the first block's vertices, in order
            (0..n as Vertex).flat_map(|v| incident_edges(&host, v)).collect()
        }
    })
}

/// Keeps each host edge independently with probability `p`.
pub fn sample_binomial(host: HostModel, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability must lie in [0, 1], got {p}")));
    }
    let mut rng = stream_rng(seed, u64::MAX);
    let kept = host_edges(host)?.into_iter().filter(|_| rng.random::<f64>() < p);
    match host {
        HostModel::Complete { n, r } => Hypergraph::new(n, r, kept),
        HostModel::Partite { n, r } => Hypergraph::new_partite(n, r, kept),
    }
}

/// Frequencies of one vertex's selection over repeated draws, compared
/// with the uniform distribution on k-subsets of its host edges.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformityReport {
    pub vertex: Vertex,
    pub trials: u64,
    /// Each possible selection, in lexicographic order.
    pub categories: Vec<Vec<Vec<Vertex>>>,
    pub counts: Vec<u64>,
    pub expected: f64,
    pub chi_square: f64,
    pub dof: usize,
    /// Largest standardized deviation of a single count.
    pub max_abs_z: f64,
}

impl UniformityReport {
    /// Every count within `sigmas` standard deviations, and the chi-square
    /// statistic within `sigmas` of its mean.
    pub fn passes(&self, sigmas: f64) -> bool {
        let dof = self.dof as f64;
        self.max_abs_z <= sigmas && self.chi_square <= dof + sigmas * (2.0 * dof).sqrt()
    }
}

/// Repeats the selection of `vertex` under derived seeds. Trial `t` makes
/// exactly the choice `sample_kout(host, k, derive_seed(seed, t))` would.
pub fn per_vertex_uniformity_check(
    host: HostModel,
    k: usize,
    vertex: Vertex,
    trials: u64,
    seed: u64,
) -> Result<UniformityReport> {
    host.validate()?;
    if vertex as usize >= host.total_vertices() {
        return Err(Error::input(format!("vertex {vertex} is not in the host")));
    }
    let link = incident_edges(&host, vertex);
    if k > link.len() {
        return Err(Error::input(format!("k={k} exceeds the {} host edges through a vertex", link.len())));
    }
    let space = super::binomial(link.len(), k);
    if space > 1_000_000 {
        return Err(Error::input(format!("{space} possible selections is too many to tabulate")));
    }
    let idx: Vec<Vertex> = (0..link.len() as Vertex).collect();
    let categories: Vec<Vec<Vec<Vertex>>> = combinations(&idx, k)
        .into_iter()
        .map(|c| c.into_iter().map(|i| link[i as usize].clone()).collect())
        .collect();
    let lookup: HashMap<&Vec<Vec<Vertex>>, usize> = categories.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let hits: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(derive_seed(seed, t), u64::from(vertex));
            lookup[&select_for_vertex(&host, k, vertex, &mut rng)]
        })
        .collect();
    let mut counts = vec![0u64; categories.len()];
    for h in hits {
        counts[h] += 1;
    }

    let cats = categories.len() as f64;
    let p = 1.0 / cats;
    let expected = trials as f64 * p;
    let sd = (trials as f64 * p * (1.0 - p)).sqrt();
    let mut chi_square = 0.0;
    let mut max_abs_z: f64 = 0.0;
    for &c in &counts {
        let dev = c as f64 - expected;
        chi_square += dev * dev / expected;
        let z = if sd > 0.0 {
            dev.abs() / sd
        } else if dev == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        max_abs_z = max_abs_z.max(z);
    }
    Ok(UniformityReport {
        vertex,
        trials,
        categories,
        counts,
        expected,
        chi_square,
        dof: (cats as usize).saturating_sub(1),
        max_abs_z,
    })
}
