//! Canonical (size, lexicographic) scans over independent sets and subsets.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::EnumerationBudget;
use crate::hypergraph::{Hypergraph, Vertex};

pub(crate) enum Outcome<T> {
    Holds,
    Violated(T),
    Undecided,
}

pub(crate) struct Scan<T> {
    pub first: Option<(Vec<Vertex>, T)>,
    pub checked: u64,
    /// Every examined candidate was decided.
    pub decided: bool,
    /// The candidate space was fully enumerated.
    pub exhaustive: bool,
}

impl<T> Scan<T> {
    fn new(exhaustive: bool) -> Self {
        Scan {
            first: None,
            checked: 0,
            decided: true,
            exhaustive,
        }
    }

    /// Evaluates one level in parallel and keeps its earliest violation.
    /// Returns true once a violation is recorded.
    fn level<C>(&mut self, sets: Vec<Vec<Vertex>>, check: &C) -> bool
    where
        T: Send,
        C: Fn(&[Vertex]) -> Outcome<T> + Sync,
    {
        self.checked += sets.len() as u64;
        let outcomes: Vec<Outcome<T>> = sets.par_iter().map(|s| check(s)).collect();
        for (set, outcome) in sets.into_iter().zip(outcomes) {
            match outcome {
                Outcome::Holds => {}
                Outcome::Undecided => self.decided = false,
                Outcome::Violated(t) => {
                    self.first = Some((set, t));
                    return true;
                }
            }
        }
        false
    }
}

/// Can `v` join the sorted independent set `x` without completing an edge?
pub(crate) fn can_extend(h: &Hypergraph, x: &[Vertex], v: Vertex) -> bool {
    h.incident_edge_indices(v).iter().all(|&e| {
        h.edge(e as usize)
            .iter()
            .any(|&u| u != v && x.binary_search(&u).is_err())
    })
}

/// Scans independent sets by increasing size, lexicographic within a size,
/// stopping at the first level that yields a violation.
pub(crate) fn scan_independent<T, C>(h: &Hypergraph, budget: &EnumerationBudget, check: C) -> Scan<T>
where
    T: Send,
    C: Fn(&[Vertex]) -> Outcome<T> + Sync,
{
    let n = h.n();
    if n <= budget.exhaustive_max_n {
        let mut scan = Scan::new(true);
        let mut level: Vec<Vec<Vertex>> = (0..n as Vertex)
            .filter(|&v| can_extend(h, &[], v))
            .map(|v| vec![v])
            .collect();
        while !level.is_empty() {
            let next: Vec<Vec<Vertex>> = level
                .iter()
                .flat_map(|x| {
                    let start = x.last().map_or(0, |&l| l + 1);
                    (start..n as Vertex).filter(|&v| can_extend(h, x, v)).map(move |v| {
                        let mut y = x.clone();
                        y.push(v);
                        y
                    })
                })
                .collect();
            if scan.level(level, &check) {
                return scan;
            }
            level = next;
        }
        scan
    } else {
        let mut scan = Scan::new(false);
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let mut order: Vec<Vertex> = (0..n as Vertex).collect();
        for size in 1..=n {
            let mut found = std::collections::BTreeSet::new();
            for _ in 0..budget.samples_per_size {
                order.shuffle(&mut rng);
                let mut x: Vec<Vertex> = Vec::with_capacity(size);
                for &v in &order {
                    if can_extend(h, &x, v) {
                        let pos = x.binary_search(&v).unwrap_err();
                        x.insert(pos, v);
                        if x.len() == size {
                            break;
                        }
                    }
                }
                if x.len() == size {
                    found.insert(x);
                }
            }
            if found.is_empty() {
                break;
            }
            if scan.level(found.into_iter().collect(), &check) {
                return scan;
            }
        }
        scan
    }
}

/// `C(n, k)` saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `k`-subsets of `pool` in lexicographic order.
pub(crate) fn combinations(pool: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    let n = pool.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Up to `count` random `k`-subsets of `pool`, deduplicated and sorted.
pub(crate) fn sample_subsets(pool: &[Vertex], k: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Vertex>> {
    let mut found = std::collections::BTreeSet::new();
    for _ in 0..count {
        let mut s: Vec<Vertex> = pool.choose_multiple(rng, k).copied().collect();
        s.sort_unstable();
        found.insert(s);
    }
    found.into_iter().collect()
}
