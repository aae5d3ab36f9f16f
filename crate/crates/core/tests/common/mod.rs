//! Brute-force reference implementations. Everything here is deliberately
//! naive: exhaustive subsets and dense Gaussian elimination, sharing no code
//! with the library beyond the `Hypergraph` container.

#![allow(dead_code, clippy::needless_range_loop)]

use hyperfrac::{Hypergraph, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Converts a library rational for comparison with oracle values.
pub fn lift(x: &Rational) -> Q {
    Q::new(x.numer(), x.denom())
}

pub fn mask_of(h: &Hypergraph, e: usize) -> u32 {
    h.edge(e).iter().fold(0, |m, &v| m | 1 << v)
}

pub fn edge_masks(h: &Hypergraph) -> Vec<u32> {
    (0..h.num_edges()).map(|e| mask_of(h, e)).collect()
}

pub fn is_independent_mask(edges: &[u32], x: u32) -> bool {
    edges.iter().all(|&e| e & !x != 0)
}

pub fn members(mask: u32) -> Vec<u32> {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

/// Solves the square system `a x = b`; `None` when singular.
fn solve_square(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

fn combos(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Optimum of `max/min c x` over `{x : rows_i . x <= rhs_i}` by visiting
/// every basic solution. Rows must include any bounds on `x`.
fn vertex_enumeration(c: &[Q], rows: &[(Vec<Q>, Q)], maximize: bool) -> Option<Q> {
    let d = c.len();
    if d == 0 {
        return Some(Q::zero());
    }
    let mut best: Option<Q> = None;
    combos(rows.len(), d, &mut |pick| {
        let a = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let b = pick.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else { return };
        let feasible = rows.iter().all(|(row, rhs)| {
            let lhs: Q = row.iter().zip(&x).map(|(a, b)| a * b).sum();
            lhs <= *rhs
        });
        if feasible {
            let val: Q = c.iter().zip(&x).map(|(a, b)| a * b).sum();
            let better = match &best {
                None => true,
                Some(b) => (maximize && val > *b) || (!maximize && val < *b),
            };
            if better {
                best = Some(val);
            }
        }
    });
    best
}

/// `nu*` by vertex enumeration of the fractional matching polytope.
pub fn nu_star_oracle(h: &Hypergraph) -> Q {
    let m = h.num_edges();
    let mut rows = Vec::new();
    for v in 0..h.n() as u32 {
        let row = (0..m).map(|e| if h.edge(e).contains(&v) { Q::one() } else { Q::zero() }).collect();
        rows.push((row, Q::one()));
    }
    for e in 0..m {
        let mut row = vec![Q::zero(); m];
        row[e] = -Q::one();
        rows.push((row, Q::zero()));
    }
    vertex_enumeration(&vec![Q::one(); m], &rows, true).expect("the zero matching is feasible")
}

/// `tau*` by vertex enumeration of the fractional cover polytope.
pub fn tau_star_oracle(h: &Hypergraph) -> Q {
    let n = h.n();
    let mut rows = Vec::new();
    for e in 0..h.num_edges() {
        let row = (0..n as u32).map(|v| if h.edge(e).contains(&v) { -Q::one() } else { Q::zero() }).collect();
        rows.push((row, -Q::one()));
    }
    for v in 0..n {
        let mut lo = vec![Q::zero(); n];
        lo[v] = -Q::one();
        rows.push((lo, Q::zero()));
        let mut hi = vec![Q::zero(); n];
        hi[v] = Q::one();
        rows.push((hi, Q::one()));
    }
    vertex_enumeration(&vec![Q::one(); n], &rows, false).expect("the all-ones cover is feasible")
}

/// Whether every `Y` disjoint from `x` of size at most `cap` leaves an
/// edge meeting `x` and missing `Y`.
fn survives_all(edges: &[u32], n: usize, x: u32, cap: usize) -> Option<u32> {
    let meeting: Vec<u32> = edges.iter().copied().filter(|&e| e & x != 0).collect();
    (0u32..1 << n).find(|&y| y & x == 0 && y.count_ones() as usize <= cap && meeting.iter().all(|&e| e & y != 0))
}

/// Expansion of every independent set against `|Y| < (r-1)|X|` (strict) or
/// `|Y| <= (r-1)|X|`. Returns a violating `(X, Y)` if any.
pub fn prop3_oracle(h: &Hypergraph, strict: bool) -> Option<(u32, u32)> {
    let edges = edge_masks(h);
    let n = h.n();
    for x in 1u32..1 << n {
        if !is_independent_mask(&edges, x) {
            continue;
        }
        let bound = (h.r() - 1) * x.count_ones() as usize;
        let cap = if strict { bound.checked_sub(1) } else { Some(bound) };
        // strict with bound 0 never happens for r >= 2, |X| >= 1
        if let Some(y) = cap.and_then(|cap| survives_all(&edges, n, x, cap)) {
            return Some((x, y));
        }
    }
    None
}

/// `|N(I)| >= |I|` for every independent `I` of a graph.
pub fn corollary_oracle(g: &Hypergraph) -> bool {
    let edges = edge_masks(g);
    (1u32..1 << g.n()).filter(|&i| is_independent_mask(&edges, i)).all(|i| {
        let nbhd = edges.iter().filter(|&&e| e & i != 0).fold(0, |acc, &e| acc | (e & !i));
        nbhd.count_ones() >= i.count_ones()
    })
}

/// Whether some `Y` outside `x` with `|Y| <= floor(lambda |x|)` meets every
/// edge that meets `x`.
pub fn lambda_expansive_oracle(h: &Hypergraph, x: u32, lambda: f64) -> bool {
    let cap = (lambda * x.count_ones() as f64 + 1e-9).floor() as usize;
    survives_all(&edge_masks(h), h.n(), x, cap).is_none()
}

/// The partite conditions by full enumeration of `T` and every admissible
/// `U`, with block size `s` playing the role of `n`.
pub fn prop6_oracle(h: &Hypergraph, epsilon: f64, lambda: f64) -> bool {
    let s = h.block_size().expect("partite");
    let r = h.r();
    let edges = edge_masks(h);
    let block_mask = |j: usize| ((1u32 << s) - 1) << (j * s);
    let es = epsilon * s as f64;
    for i in 0..r {
        for t_local in 1u32..1 << s {
            let t = t_local << (i * s);
            let size = t_local.count_ones() as f64;
            let mut caps = Vec::new();
            if size <= es + 1e-9 {
                caps.push(lambda * size);
            }
            if size >= es - 1e-9 {
                caps.push((1.0 - epsilon) * s as f64);
            }
            for cap in caps {
                let cap = (cap + 1e-9).floor() as u32;
                let others: Vec<usize> = (0..r).filter(|&j| j != i).collect();
                // every U that respects the per-block cap
                let per_block: Vec<Vec<u32>> = others
                    .iter()
                    .map(|&j| {
                        (0u32..1 << s)
                            .filter(|u| u.count_ones() <= cap)
                            .map(|u| u << (j * s))
                            .collect()
                    })
                    .collect();
                let mut idx = vec![0usize; others.len()];
                loop {
                    let u = idx.iter().enumerate().fold(0, |acc, (b, &k)| acc | per_block[b][k]);
                    debug_assert_eq!(u & block_mask(i), 0);
                    if !edges.iter().any(|&e| e & t != 0 && e & u == 0) {
                        return false;
                    }
                    let mut b = 0;
                    while b < idx.len() {
                        idx[b] += 1;
                        if idx[b] < per_block[b].len() {
                            break;
                        }
                        idx[b] = 0;
                        b += 1;
                    }
                    if b == idx.len() {
                        break;
                    }
                }
            }
        }
    }
    true
}

pub fn alpha_oracle(h: &Hypergraph) -> usize {
    let edges = edge_masks(h);
    (0u32..1 << h.n())
        .filter(|&x| is_independent_mask(&edges, x))
        .map(|x| x.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Random `r`-uniform hypergraph on `n` vertices: each possible edge
/// independently with probability `p`.
pub fn random_uniform(n: usize, r: usize, p: f64, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut edges = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == r && rng.random_bool(p) {
            edges.push(members(mask));
        }
    }
    Hypergraph::new(n, r, edges).unwrap()
}

/// Random `r`-partite hypergraph with blocks of size `s`.
pub fn random_partite(s: usize, r: usize, p: f64, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut edges = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        if rng.random_bool(p) {
            edges.push(idx.iter().enumerate().map(|(j, &k)| (j * s + k) as u32).collect::<Vec<_>>());
        }
        let mut b = 0;
        while b < r {
            idx[b] += 1;
            if idx[b] < s {
                break;
            }
            idx[b] = 0;
            b += 1;
        }
        if b == r {
            break;
        }
    }
    Hypergraph::new_partite(s, r, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn is_abs_le(a: &Q, b: &Q) -> bool {
    a.abs() <= *b
}

/// `(min, max)` of `c . w` over the minimum fractional covers, by vertex
/// enumeration of the cover polytope cut down to weight `tau*`.
pub fn cover_face_extremes(h: &Hypergraph, c: &[Q]) -> (Q, Q) {
    let n = h.n();
    let tau = tau_star_oracle(h);
    let mut rows = Vec::new();
    for e in 0..h.num_edges() {
        let row = (0..n as u32).map(|v| if h.edge(e).contains(&v) { -Q::one() } else { Q::zero() }).collect();
        rows.push((row, -Q::one()));
    }
    for v in 0..n {
        let mut lo = vec![Q::zero(); n];
        lo[v] = -Q::one();
        rows.push((lo, Q::zero()));
        let mut hi = vec![Q::zero(); n];
        hi[v] = Q::one();
        rows.push((hi, Q::one()));
    }
    rows.push((vec![Q::one(); n], tau.clone()));
    rows.push((vec![-Q::one(); n], -tau));
    let lo = vertex_enumeration(c, &rows, false).expect("nonempty face");
    let hi = vertex_enumeration(c, &rows, true).expect("nonempty face");
    (lo, hi)
}

/// `(unique uniform, block constant)` of the minimum covers.
pub fn cover_shape_oracle(h: &Hypergraph) -> (bool, Option<bool>) {
    let n = h.n();
    let unit = |v: usize| (0..n).map(|u| if u == v { Q::one() } else { Q::zero() }).collect::<Vec<_>>();
    let inv_r = q(1, h.r() as i64);
    let unique = tau_star_oracle(h) == q(n as i64, h.r() as i64)
        && (0..n).all(|v| cover_face_extremes(h, &unit(v)) == (inv_r.clone(), inv_r.clone()));
    let block_constant = h.block_size().map(|s| {
        (0..n).all(|u| {
            (u + 1..(u / s + 1) * s).all(|v| {
                let mut c = unit(u);
                c[v] = -Q::one();
                let (lo, hi) = cover_face_extremes(h, &c);
                lo.is_zero() && hi.is_zero()
            })
        })
    });
    (unique, block_constant)
}
