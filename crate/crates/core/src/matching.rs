//! Fractional matchings and covers of r-graphs.
//!
//! The matching program is `max sum phi_e` subject to `sum_{e ∋ v} phi_e <= 1`
//! for every vertex; the cover program is `min sum w_v` subject to
//! `sum_{v ∈ e} w_v >= 1` for every edge with `w` in `[0, 1]`. They are solved
//! as two independent programs, so agreement of their optima is a genuine
//! check of duality rather than a tautology.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::lp::{
    self, LinearProgram, LpSolution, LpStatus, ObjectiveSense, Rational, RowSense, Scalar,
};

/// How programs are solved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Float { tol: f64 },
}

impl Mode {
    pub fn float() -> Self {
        Mode::Float {
            tol: lp::DEFAULT_FLOAT_TOL,
        }
    }
}

/// Float-mode perfection threshold on `|nu* - n/r|`.
pub const FLOAT_PERFECTION_TOL: f64 = 1e-7;

/// A value computed in either mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64(),
            Number::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Number::Exact(r) => Some(r),
            Number::Float(_) => None,
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => f.write_str(&r.to_fraction_string()),
            Number::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Edge weights indexed like [`Hypergraph::edges`].
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalMatching<T> {
    pub weights: Vec<T>,
    pub total: T,
}

/// Vertex weights indexed by vertex id.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalCover<T> {
    pub weights: Vec<T>,
    pub total: T,
}

impl<T: Scalar> FractionalMatching<T> {
    /// `0 <= phi <= 1` and every vertex load is at most 1.
    pub fn is_feasible(&self, h: &Hypergraph, tol: f64) -> bool {
        if self.weights.len() != h.num_edges() {
            return false;
        }
        let one = T::one();
        let bounded = self
            .weights
            .iter()
            .all(|w| w.sign(tol) != Ordering::Less && w.cmp_with(&one, tol) != Ordering::Greater);
        bounded && (0..h.n() as Vertex).all(|v| self.load(h, v).cmp_with(&one, tol) != Ordering::Greater)
    }

    /// `sum_{e ∋ v} phi_e`.
    pub fn load(&self, h: &Hypergraph, v: Vertex) -> T {
        h.incident_edge_indices(v)
            .iter()
            .fold(T::zero(), |acc, &e| acc.add(&self.weights[e as usize]))
    }
}

impl<T: Scalar> FractionalCover<T> {
    /// `0 <= w <= 1` and every edge carries weight at least 1.
    pub fn is_feasible(&self, h: &Hypergraph, tol: f64) -> bool {
        if self.weights.len() != h.n() {
            return false;
        }
        let one = T::one();
        let bounded = self
            .weights
            .iter()
            .all(|w| w.sign(tol) != Ordering::Less && w.cmp_with(&one, tol) != Ordering::Greater);
        bounded
            && h.edges().all(|e| {
                e.iter()
                    .fold(T::zero(), |acc, &v| acc.add(&self.weights[v as usize]))
                    .cmp_with(&one, tol)
                    != Ordering::Less
            })
    }
}

impl FractionalMatching<Rational> {
    /// `nu_star p/q` followed by one `edge_index p/q` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("nu_star {}\n", self.total.to_fraction_string());
        for (i, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("{i} {}\n", w.to_fraction_string()));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (total, weights) = parse_solution_text(text, "nu_star")?;
        Ok(FractionalMatching { weights, total })
    }
}

impl FractionalCover<Rational> {
    /// `tau_star p/q` followed by one `vertex p/q` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("tau_star {}\n", self.total.to_fraction_string());
        for (v, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("{v} {}\n", w.to_fraction_string()));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (total, weights) = parse_solution_text(text, "tau_star")?;
        Ok(FractionalCover { weights, total })
    }
}

fn parse_solution_text(text: &str, key: &str) -> Result<(Rational, Vec<Rational>)> {
    let mut total = None;
    let mut weights = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let (a, b) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| bad(format!("expected two fields: {line:?}")))?;
        let value: Rational = b.trim().parse().map_err(|_| bad(format!("bad value {b:?}")))?;
        if total.is_none() {
            if a != key {
                return Err(bad(format!("expected {key:?} header")));
            }
            total = Some(value);
        } else {
            let idx: usize = a.parse().map_err(|_| bad(format!("bad index {a:?}")))?;
            if idx != weights.len() {
                return Err(bad(format!("index {idx} out of sequence")));
            }
            weights.push(value);
        }
    }
    let total = total.ok_or(Error::Parse {
        line: 0,
        msg: format!("missing {key} line"),
    })?;
    Ok((total, weights))
}

/// The matching program. Variables carry no explicit upper bound:
/// `phi_e <= 1` already follows from the row of any vertex of `e`, and
/// leaving the bound off makes the row duals a fractional cover.
pub fn matching_lp(h: &Hypergraph) -> LinearProgram {
    let m = h.num_edges();
    let mut lp = LinearProgram::new(ObjectiveSense::Max, vec![Rational::one(); m])
        .with_upper_bounds(vec![None; m]);
    for v in 0..h.n() as Vertex {
        let coeffs = h
            .incident_edge_indices(v)
            .iter()
            .map(|&e| (e as usize, Rational::one()))
            .collect();
        lp.add_constraint(coeffs, RowSense::Le, Rational::one());
    }
    lp
}

/// The cover program with `w` in `[0, 1]`.
pub fn cover_lp(h: &Hypergraph) -> LinearProgram {
    let mut lp = LinearProgram::new(ObjectiveSense::Min, vec![Rational::one(); h.n()]);
    for e in h.edges() {
        let coeffs = e.iter().map(|&v| (v as usize, Rational::one())).collect();
        lp.add_constraint(coeffs, RowSense::Ge, Rational::one());
    }
    lp
}

fn require_optimal<T>(sol: &LpSolution<T>, what: &str) -> Result<()> {
    match sol.status {
        LpStatus::Optimal => Ok(()),
        s => Err(Error::solver(format!("{what} program ended {s:?}"))),
    }
}

/// `nu*(h)` with an optimal fractional matching, exactly.
pub fn nu_star_exact(h: &Hypergraph) -> Result<(Rational, FractionalMatching<Rational>)> {
    let sol = lp::solve_exact(&matching_lp(h))?;
    require_optimal(&sol, "matching")?;
    let m = FractionalMatching {
        total: sol.objective.clone(),
        weights: sol.primal,
    };
    Ok((sol.objective, m))
}

pub fn nu_star_float(h: &Hypergraph, tol: f64) -> Result<(f64, FractionalMatching<f64>)> {
    let sol = lp::solve_float(&matching_lp(h), tol)?;
    require_optimal(&sol, "matching")?;
    let m = FractionalMatching {
        total: sol.objective,
        weights: sol.primal,
    };
    Ok((sol.objective, m))
}

/// `nu*(h)` in the requested mode.
pub fn nu_star(h: &Hypergraph, mode: Mode) -> Result<Number> {
    match mode {
        Mode::Exact => nu_star_exact(h).map(|(v, _)| Number::Exact(v)),
        Mode::Float { tol } => nu_star_float(h, tol).map(|(v, _)| Number::Float(v)),
    }
}

/// `tau*(h)`, the minimum weight of a fractional cover, with a minimiser.
pub fn tau_star_exact(h: &Hypergraph) -> Result<(Rational, FractionalCover<Rational>)> {
    let sol = lp::solve_exact(&cover_lp(h))?;
    require_optimal(&sol, "cover")?;
    let c = FractionalCover {
        total: sol.objective.clone(),
        weights: sol.primal,
    };
    Ok((sol.objective, c))
}

pub fn tau_star_float(h: &Hypergraph, tol: f64) -> Result<(f64, FractionalCover<f64>)> {
    let sol = lp::solve_float(&cover_lp(h), tol)?;
    require_optimal(&sol, "cover")?;
    let c = FractionalCover {
        total: sol.objective,
        weights: sol.primal,
    };
    Ok((sol.objective, c))
}

pub fn tau_star(h: &Hypergraph, mode: Mode) -> Result<Number> {
    match mode {
        Mode::Exact => tau_star_exact(h).map(|(v, _)| Number::Exact(v)),
        Mode::Float { tol } => tau_star_float(h, tol).map(|(v, _)| Number::Float(v)),
    }
}

/// `n / r` as an exact value.
pub fn perfect_weight(h: &Hypergraph) -> Rational {
    Rational::new(h.n() as i64, h.r() as i64)
}

/// Whether `nu*` reaches `n / r` (exactly, or within
/// [`FLOAT_PERFECTION_TOL`] in float mode).
pub fn is_perfect_value(h: &Hypergraph, nu: &Number) -> bool {
    match nu {
        Number::Exact(v) => *v == perfect_weight(h),
        Number::Float(v) => (v - h.n() as f64 / h.r() as f64).abs() <= FLOAT_PERFECTION_TOL,
    }
}

pub fn has_perfect_fractional_matching(h: &Hypergraph, mode: Mode) -> Result<bool> {
    // an isolated vertex caps nu* below n/r; skip the solve
    if !h.isolated_vertices().is_empty() {
        return Ok(false);
    }
    Ok(is_perfect_value(h, &nu_star(h, mode)?))
}

/// Shape of the set of minimum fractional covers.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverShapeReport {
    pub tau_star: Rational,
    /// `w ≡ 1/r` is the only fractional cover of weight `n/r`.
    pub is_unique_uniform: bool,
    /// Every minimum cover is constant on each block (partite inputs only).
    pub is_block_constant: Option<bool>,
    /// Per-vertex `[min, max]` of `w(v)` over all minimum covers.
    pub ranges: Vec<(Rational, Rational)>,
}

/// Probes the optimal face of the cover program: per-vertex ranges, and for
/// partite inputs the maximum separation of any two vertices in one block.
pub fn cover_shape(h: &Hypergraph, mode: Mode) -> Result<CoverShapeReport> {
    if mode != Mode::Exact {
        return Err(Error::input("cover_shape requires exact mode"));
    }
    let lp = cover_lp(h);
    let (tau, _) = tau_star_exact(h)?;

    let ranges = (0..h.n())
        .into_par_iter()
        .map(|v| -> Result<(Rational, Rational)> {
            let lo = lp::probe_optimal_face(&lp, &tau, v, ObjectiveSense::Min)?;
            let hi = lp::probe_optimal_face(&lp, &tau, v, ObjectiveSense::Max)?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;

    let inv_r = Rational::new(1, h.r() as i64);
    let is_unique_uniform =
        tau == perfect_weight(h) && ranges.iter().all(|(lo, hi)| *lo == inv_r && *hi == inv_r);

    let is_block_constant = match h.blocks() {
        None => None,
        Some(blocks) => {
            let mut constant = true;
            for block in &blocks {
                if !block_is_constant(&lp, &tau, block.as_slice(), &ranges)? {
                    constant = false;
                    break;
                }
            }
            Some(constant)
        }
    };

    Ok(CoverShapeReport {
        tau_star: tau,
        is_unique_uniform,
        is_block_constant,
        ranges,
    })
}

fn block_is_constant(
    lp: &LinearProgram,
    tau: &Rational,
    block: &[Vertex],
    ranges: &[(Rational, Rational)],
) -> Result<bool> {
    let first = &ranges[block[0] as usize];
    // differing ranges already exhibit a separating optimal cover
    if block.iter().any(|&v| ranges[v as usize] != *first) {
        return Ok(false);
    }
    if first.0 == first.1 {
        return Ok(true);
    }
    let pairs: Vec<(Vertex, Vertex)> = block
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| block[i + 1..].iter().map(move |&v| (u, v)))
        .collect();
    let separated = pairs
        .par_iter()
        .map(|&(u, v)| -> Result<bool> {
            let dir = [
                (u as usize, Rational::one()),
                (v as usize, -Rational::one()),
            ];
            let hi = lp::probe_optimal_face_direction(lp, tau, &dir, ObjectiveSense::Max)?;
            let lo = lp::probe_optimal_face_direction(lp, tau, &dir, ObjectiveSense::Min)?;
            Ok(!hi.is_zero() || !lo.is_zero())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(!separated.into_iter().any(|s| s))
}
