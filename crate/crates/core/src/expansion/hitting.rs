//! Bounded hitting-set search with per-class capacities.
//!
//! Decides whether a family of vertex sets can be hit by choosing at most
//! `caps[c]` vertices of each class `c`. The single-class case is the usual
//! "hitting set of size at most b" question.

use crate::hypergraph::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Search {
    /// A hitting set within the capacities (sorted).
    Found(Vec<Vertex>),
    /// Proven impossible.
    Impossible,
    /// Node limit hit before a decision.
    Undecided,
}

pub(crate) struct HittingSet<'a, F: Fn(Vertex) -> usize> {
    sets: Vec<Vec<Vertex>>,
    class_of: F,
    caps: &'a [usize],
    node_limit: u64,
    nodes: u64,
}

impl<'a, F: Fn(Vertex) -> usize> HittingSet<'a, F> {
    /// `sets` need not be deduplicated. An empty member makes the family
    /// unhittable.
    pub fn new(mut sets: Vec<Vec<Vertex>>, class_of: F, caps: &'a [usize], node_limit: u64) -> Self {
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        // drop supersets: hitting the subset hits them too
        let mut kept: Vec<Vec<Vertex>> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|k| is_subset(k, &s)) {
                kept.push(s);
            }
        }
        HittingSet {
            sets: kept,
            class_of,
            caps,
            node_limit,
            nodes: 0,
        }
    }

    pub fn solve(mut self) -> Search {
        if self.sets.iter().any(|s| s.is_empty()) {
            return Search::Impossible;
        }
        let mut left = self.caps.to_vec();
        let mut chosen = Vec::new();
        let mut banned = Vec::new();
        match self.branch(&mut left, &mut chosen, &mut banned) {
            Some(true) => {
                chosen.sort_unstable();
                Search::Found(chosen)
            }
            Some(false) => Search::Impossible,
            None => Search::Undecided,
        }
    }

    fn available(&self, v: Vertex, left: &[usize], banned: &[Vertex]) -> bool {
        left.get((self.class_of)(v)).copied().unwrap_or(0) > 0 && !banned.contains(&v)
    }

    /// `Some(true)` found, `Some(false)` impossible, `None` out of budget.
    fn branch(&mut self, left: &mut [usize], chosen: &mut Vec<Vertex>, banned: &mut Vec<Vertex>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return None;
        }
        // Pick the unhit set with the fewest usable vertices; a greedy
        // disjoint packing of unhit sets lower-bounds the vertices still needed.
        let mut target: Option<(usize, usize)> = None;
        let mut packing = 0usize;
        let mut packed: Vec<Vertex> = Vec::new();
        for (idx, s) in self.sets.iter().enumerate() {
            if s.iter().any(|v| chosen.contains(v)) {
                continue;
            }
            let usable = s.iter().filter(|&&v| self.available(v, left, banned)).count();
            if usable == 0 {
                return Some(false);
            }
            if target.is_none_or(|(_, u)| usable < u) {
                target = Some((idx, usable));
            }
            if !s.iter().any(|v| packed.contains(v)) {
                packing += 1;
                packed.extend_from_slice(s);
            }
        }
        let Some((idx, _)) = target else {
            return Some(true);
        };
        if packing > left.iter().sum::<usize>() {
            return Some(false);
        }
        let candidates: Vec<Vertex> = self.sets[idx]
            .iter()
            .copied()
            .filter(|&v| self.available(v, left, banned))
            .collect();
        let banned_len = banned.len();
        let mut outcome = Some(false);
        for v in candidates {
            let c = (self.class_of)(v);
            left[c] -= 1;
            chosen.push(v);
            let r = self.branch(left, chosen, banned);
            if r == Some(true) {
                banned.truncate(banned_len);
                return r;
            }
            chosen.pop();
            left[c] += 1;
            if r.is_none() {
                outcome = None;
            }
            // later branches need not reconsider v
            banned.push(v);
        }
        banned.truncate(banned_len);
        outcome
    }
}

fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// Single-class convenience: can `sets` be hit with at most `bound` vertices?
pub(crate) fn hit_within(sets: Vec<Vec<Vertex>>, bound: usize, node_limit: u64) -> Search {
    let caps = [bound];
    HittingSet::new(sets, |_| 0, &caps, node_limit).solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all vertex subsets of the universe.
    fn brute_min(sets: &[Vec<Vertex>], universe: u32) -> Option<usize> {
        (0u32..1 << universe)
            .filter(|mask| sets.iter().all(|s| s.iter().any(|&v| mask >> v & 1 == 1)))
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn simple_cases() {
        assert_eq!(hit_within(vec![], 0, 1000), Search::Found(vec![]));
        assert_eq!(hit_within(vec![vec![]], 5, 1000), Search::Impossible);
        assert_eq!(hit_within(vec![vec![1, 2]], 1, 1000), Search::Found(vec![1]));
        assert_eq!(hit_within(vec![vec![1], vec![2]], 1, 1000), Search::Impossible);
        // triangle edges as sets: vertex cover of K3 needs 2
        let tri = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert_eq!(hit_within(tri.clone(), 1, 1000), Search::Impossible);
        assert!(matches!(hit_within(tri, 2, 1000), Search::Found(v) if v.len() == 2));
    }

    #[test]
    fn capacities_per_class() {
        // classes by parity; two sets each needing an odd vertex
        let sets = vec![vec![1, 2], vec![3, 4]];
        let caps = [0usize, 2];
        let r = HittingSet::new(sets.clone(), |v| (v % 2) as usize, &caps, 1000).solve();
        assert_eq!(r, Search::Found(vec![1, 3]));
        let caps = [2usize, 1];
        let r = HittingSet::new(sets.clone(), |v| (v % 2) as usize, &caps, 1000).solve();
        assert!(matches!(r, Search::Found(_)));
        let caps = [0usize, 1];
        let r = HittingSet::new(sets, |v| (v % 2) as usize, &caps, 1000).solve();
        assert_eq!(r, Search::Impossible);
    }

    #[test]
    fn node_limit_reports_undecided() {
        // edges of K8: packing bound 4 cannot refute a budget of 5
        let sets: Vec<Vec<Vertex>> = (0..8).flat_map(|a| (a + 1..8).map(move |b| vec![a, b])).collect();
        assert_eq!(hit_within(sets.clone(), 5, 3), Search::Undecided);
        assert_eq!(hit_within(sets, 5, u64::MAX), Search::Impossible);
    }

    #[test]
    fn matches_brute_force_on_random_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let universe = rng.random_range(1..=9u32);
            let nsets = rng.random_range(0..=8);
            let sets: Vec<Vec<Vertex>> = (0..nsets)
                .map(|_| {
                    let k = rng.random_range(1..=3usize.min(universe as usize));
                    let mut s: Vec<Vertex> = Vec::new();
                    while s.len() < k {
                        let v = rng.random_range(0..universe);
                        if !s.contains(&v) {
                            s.push(v);
                        }
                    }
                    s
                })
                .collect();
            let best = brute_min(&sets, universe).unwrap();
            for b in 0..=universe as usize {
                let r = hit_within(sets.clone(), b, u64::MAX);
                match r {
                    Search::Found(y) => {
                        assert!(b >= best && y.len() <= b);
                        assert!(sets.iter().all(|s| s.iter().any(|v| y.contains(v))));
                    }
                    Search::Impossible => assert!(b < best),
                    Search::Undecided => unreachable!(),
                }
            }
        }
    }
}
