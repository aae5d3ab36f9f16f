//! Bounded-variable revised simplex with an explicit dense basis inverse.
//!
//! Variables live in `[0, u_j]` with `u_j` possibly infinite; bounds are
//! handled by the ratio test and bound flips, never as rows. Rows are turned
//! into equalities with one slack per inequality and, where the slack cannot
//! start basic, one artificial. Phase 1 minimises the artificials, which are
//! then fixed to `[0, 0]` for phase 2.

use std::cmp::Ordering;

use super::scalar::Scalar;
use super::{LinearProgram, ObjectiveSense, RowSense};

const NONBASIC: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pricing {
    /// Smallest-index entering and leaving choice. Never cycles.
    Bland,
    /// Most negative reduced cost within a window of columns; falls back to
    /// Bland while pivots stay degenerate.
    Partial,
}

#[derive(Clone, Debug)]
pub(crate) struct Settings {
    pub pricing: Pricing,
    pub tol: f64,
    pub max_iterations: usize,
    pub refactor_every: usize,
}

impl Settings {
    pub fn exact(rows: usize, cols: usize) -> Self {
        Settings {
            pricing: Pricing::Bland,
            tol: 0.0,
            // Bland terminates; the cap only guards against engine bugs.
            max_iterations: 1000 * (rows + cols + 1),
            refactor_every: usize::MAX,
        }
    }

    pub fn float(rows: usize, cols: usize, tol: f64) -> Self {
        Settings {
            pricing: Pricing::Partial,
            tol,
            max_iterations: 50 * (rows + cols),
            refactor_every: 64,
        }
    }
}

/// Equality form `A x = b`, `0 <= x <= u`, minimise `c x`.
#[derive(Clone, Debug)]
pub(crate) struct StandardForm<T> {
    pub m: usize,
    pub art_start: usize,
    pub cols: Vec<Vec<(usize, T)>>,
    pub upper: Vec<Option<T>>,
    pub cost: Vec<T>,
    pub b: Vec<T>,
    pub init_basis: Vec<usize>,
}

impl<T: Scalar> StandardForm<T> {
    pub fn from_lp(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let n_struct = lp.objective.len();
        let mut cols: Vec<Vec<(usize, T)>> = vec![Vec::new(); n_struct];
        for (i, row) in lp.constraints.iter().enumerate() {
            for (j, a) in &row.coeffs {
                if !a.is_zero() {
                    cols[*j].push((i, T::from_rational(a)));
                }
            }
        }
        let mut upper: Vec<Option<T>> = lp
            .upper
            .iter()
            .map(|u| u.as_ref().map(T::from_rational))
            .collect();
        let mut init_basis = vec![NONBASIC; m];

        for (i, row) in lp.constraints.iter().enumerate() {
            let coef = match row.sense {
                RowSense::Le => 1,
                RowSense::Ge => -1,
                RowSense::Eq => continue,
            };
            let slack = cols.len();
            cols.push(vec![(i, if coef > 0 { T::one() } else { T::one().neg() })]);
            upper.push(None);
            let feasible = match row.sense {
                RowSense::Le => !row.rhs.is_negative(),
                _ => !row.rhs.is_positive(),
            };
            if feasible {
                init_basis[i] = slack;
            }
        }
        let art_start = cols.len();
        for (i, row) in lp.constraints.iter().enumerate() {
            if init_basis[i] != NONBASIC {
                continue;
            }
            let sign = if row.rhs.is_negative() {
                T::one().neg()
            } else {
                T::one()
            };
            init_basis[i] = cols.len();
            cols.push(vec![(i, sign)]);
            upper.push(None);
        }

        let flip = matches!(lp.sense, ObjectiveSense::Max);
        let mut cost: Vec<T> = lp
            .objective
            .iter()
            .map(|c| {
                let c = T::from_rational(c);
                if flip {
                    c.neg()
                } else {
                    c
                }
            })
            .collect();
        cost.resize(cols.len(), T::zero());

        StandardForm {
            m,
            art_start,
            cols,
            upper,
            cost,
            b: lp.constraints.iter().map(|r| T::from_rational(&r.rhs)).collect(),
            init_basis,
        }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }
}

/// A basis plus the bound status of the nonbasic columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BasisInfo {
    pub basis: Vec<usize>,
    pub at_upper: Vec<bool>,
}

#[derive(Debug)]
pub(crate) enum EngineResult<T> {
    Optimal {
        /// Values of every column of the standard form.
        x: Vec<T>,
        /// Row duals of the minimisation form.
        y: Vec<T>,
        basis: BasisInfo,
        iterations: usize,
    },
    Infeasible,
    Unbounded,
}

#[derive(Debug)]
pub(crate) struct IterationLimit {
    pub iterations: usize,
    pub rows: usize,
    pub cols: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Engine<'a, T> {
    sf: &'a StandardForm<T>,
    settings: &'a Settings,
    upper: Vec<Option<T>>,
    basis: Vec<usize>,
    pos: Vec<usize>,
    at_upper: Vec<bool>,
    /// Row-major `m x m` inverse of the basis matrix.
    binv: Vec<T>,
    xb: Vec<T>,
    iterations: usize,
    since_refactor: usize,
    price_start: usize,
}

impl<'a, T: Scalar> Engine<'a, T> {
    fn new(sf: &'a StandardForm<T>, settings: &'a Settings, basis: Vec<usize>, at_upper: Vec<bool>) -> Self {
        let mut pos = vec![NONBASIC; sf.n_cols()];
        for (i, &j) in basis.iter().enumerate() {
            pos[j] = i;
        }
        Engine {
            sf,
            settings,
            upper: sf.upper.clone(),
            basis,
            pos,
            at_upper,
            binv: Vec::new(),
            xb: Vec::new(),
            iterations: 0,
            since_refactor: 0,
            price_start: 0,
        }
    }

    fn m(&self) -> usize {
        self.sf.m
    }

    fn fix_artificials(&mut self) {
        for j in self.sf.art_start..self.sf.n_cols() {
            self.upper[j] = Some(T::zero());
        }
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!(&self.upper[j], Some(u) if u.sign(self.settings.tol) != Ordering::Greater)
    }

    /// Gauss-Jordan inversion of the current basis matrix. Returns false if
    /// the basis is singular.
    fn factor(&mut self) -> bool {
        let m = self.m();
        let mut a = vec![T::zero(); m * m];
        for (k, &j) in self.basis.iter().enumerate() {
            for (i, v) in &self.sf.cols[j] {
                a[i * m + k] = v.clone();
            }
        }
        let mut inv = vec![T::zero(); m * m];
        for i in 0..m {
            inv[i * m + i] = T::one();
        }
        for c in 0..m {
            let piv_row = if T::EXACT {
                (c..m).find(|&r| !a[r * m + c].is_exact_zero())
            } else {
                (c..m)
                    .max_by(|&p, &q| {
                        a[p * m + c]
                            .magnitude()
                            .partial_cmp(&a[q * m + c].magnitude())
                            .unwrap_or(Ordering::Equal)
                    })
                    .filter(|&r| a[r * m + c].magnitude() > 1e-12)
            };
            let Some(p) = piv_row else { return false };
            if p != c {
                for k in 0..m {
                    a.swap(p * m + k, c * m + k);
                    inv.swap(p * m + k, c * m + k);
                }
            }
            let piv = a[c * m + c].clone();
            for k in 0..m {
                if !a[c * m + k].is_exact_zero() {
                    a[c * m + k] = a[c * m + k].div(&piv);
                }
                if !inv[c * m + k].is_exact_zero() {
                    inv[c * m + k] = inv[c * m + k].div(&piv);
                }
            }
            for r in 0..m {
                if r == c || a[r * m + c].is_exact_zero() {
                    continue;
                }
                let f = a[r * m + c].clone();
                for k in 0..m {
                    if !a[c * m + k].is_exact_zero() {
                        a[r * m + k] = a[r * m + k].sub(&f.mul(&a[c * m + k]));
                    }
                    if !inv[c * m + k].is_exact_zero() {
                        inv[r * m + k] = inv[r * m + k].sub(&f.mul(&inv[c * m + k]));
                    }
                }
            }
        }
        self.binv = inv;
        self.since_refactor = 0;
        true
    }

    fn compute_xb(&mut self) {
        let m = self.m();
        let mut rhs = self.sf.b.clone();
        for j in 0..self.sf.n_cols() {
            if self.pos[j] == NONBASIC && self.at_upper[j] {
                let u = self.upper[j].clone().expect("at upper bound implies finite bound");
                for (i, a) in &self.sf.cols[j] {
                    rhs[*i] = rhs[*i].sub(&u.mul(a));
                }
            }
        }
        self.xb = (0..m)
            .map(|i| {
                let mut s = T::zero();
                for (k, r) in rhs.iter().enumerate() {
                    let b = &self.binv[i * m + k];
                    if !b.is_exact_zero() && !r.is_exact_zero() {
                        s = s.add(&b.mul(r));
                    }
                }
                s
            })
            .collect();
    }

    fn duals(&self, cost: &[T]) -> Vec<T> {
        let m = self.m();
        let mut y = vec![T::zero(); m];
        for (k, &j) in self.basis.iter().enumerate() {
            let c = &cost[j];
            if c.is_exact_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                let b = &self.binv[k * m + i];
                if !b.is_exact_zero() {
                    *yi = yi.add(&c.mul(b));
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[T], y: &[T]) -> T {
        let mut d = cost[j].clone();
        for (i, a) in &self.sf.cols[j] {
            if !y[*i].is_exact_zero() {
                d = d.sub(&y[*i].mul(a));
            }
        }
        d
    }

    fn improving(&self, j: usize, d: &T) -> bool {
        let s = d.sign(self.settings.tol);
        if self.at_upper[j] {
            s == Ordering::Greater
        } else {
            s == Ordering::Less
        }
    }

    fn choose_entering(&mut self, cost: &[T], y: &[T], bland: bool) -> Option<usize> {
        let n = self.sf.n_cols();
        let eligible = |e: &Self, j: usize| e.pos[j] == NONBASIC && !e.is_fixed(j);
        if bland {
            return (0..n).find(|&j| eligible(self, j) && self.improving(j, &self.reduced_cost(j, cost, y)));
        }
        let window = (n / 8).max(64).min(n);
        let mut best: Option<(usize, f64)> = None;
        let mut scanned = 0;
        let mut j = self.price_start % n.max(1);
        while scanned < n {
            if eligible(self, j) {
                let d = self.reduced_cost(j, cost, y);
                if self.improving(j, &d) {
                    let mag = d.magnitude();
                    if best.is_none_or(|(_, b)| mag > b) {
                        best = Some((j, mag));
                    }
                }
            }
            scanned += 1;
            j = (j + 1) % n;
            if best.is_some() && scanned % window == 0 {
                break;
            }
        }
        self.price_start = j;
        best.map(|(j, _)| j)
    }

    fn column(&self, j: usize) -> Vec<T> {
        let m = self.m();
        (0..m)
            .map(|i| {
                let mut s = T::zero();
                for (k, a) in &self.sf.cols[j] {
                    let b = &self.binv[i * m + k];
                    if !b.is_exact_zero() {
                        s = s.add(&b.mul(a));
                    }
                }
                s
            })
            .collect()
    }

    fn run(&mut self, cost: &[T]) -> Result<Outcome, IterationLimit> {
        let tol = self.settings.tol;
        let piv_tol = if T::EXACT { 0.0 } else { tol.max(1e-11) };
        let mut degenerate_streak = 0usize;
        let mut cleaned = false;
        loop {
            if self.iterations >= self.settings.max_iterations {
                return Err(IterationLimit {
                    iterations: self.iterations,
                    rows: self.m(),
                    cols: self.sf.n_cols(),
                });
            }
            if !T::EXACT && self.since_refactor >= self.settings.refactor_every && self.factor() {
                self.compute_xb();
            }
            let y = self.duals(cost);
            let bland = self.settings.pricing == Pricing::Bland || degenerate_streak > 2 * self.m() + 10;
            let Some(j) = self.choose_entering(cost, &y, bland) else {
                if !T::EXACT && !cleaned && self.since_refactor > 0 && self.factor() {
                    // re-verify optimality against a fresh factorisation
                    self.compute_xb();
                    cleaned = true;
                    continue;
                }
                return Ok(Outcome::Optimal);
            };
            cleaned = false;
            let up = !self.at_upper[j];
            let alpha = self.column(j);

            // Ratio test. Basic i moves by -s*alpha_i per unit step.
            let mut best: Option<(usize, T, bool)> = None;
            for (i, a) in alpha.iter().enumerate() {
                let sa = a.sign(piv_tol);
                if sa == Ordering::Equal {
                    continue;
                }
                let decreasing = (sa == Ordering::Greater) == up;
                let mag = if sa == Ordering::Greater { a.clone() } else { a.neg() };
                let (theta, to_upper) = if decreasing {
                    (self.xb[i].div(&mag), false)
                } else {
                    match &self.upper[self.basis[i]] {
                        Some(u) => (u.sub(&self.xb[i]).div(&mag), true),
                        None => continue,
                    }
                };
                let theta = if theta.sign(tol) == Ordering::Less {
                    T::zero()
                } else {
                    theta
                };
                let better = match &best {
                    None => true,
                    Some((bi, bt, _)) => match theta.cmp_with(bt, tol) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => {
                            if T::EXACT {
                                self.basis[i] < self.basis[*bi]
                            } else {
                                a.magnitude() > alpha[*bi].magnitude()
                            }
                        }
                    },
                };
                if better {
                    best = Some((i, theta, to_upper));
                }
            }

            let flip = self.upper[j].clone();
            let do_flip = match (&flip, &best) {
                (None, None) => return Ok(Outcome::Unbounded),
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(u), Some((_, t, _))) => u.cmp_with(t, tol) != Ordering::Greater,
            };
            let theta = if do_flip {
                flip.clone().expect("flip requires a finite bound")
            } else {
                best.as_ref().expect("pivot row").1.clone()
            };
            if theta.sign(tol) == Ordering::Equal {
                degenerate_streak += 1;
            } else {
                degenerate_streak = 0;
            }

            let step = if up { theta.clone() } else { theta.neg() };
            if !theta.is_exact_zero() {
                for (i, a) in alpha.iter().enumerate() {
                    if !a.is_exact_zero() {
                        self.xb[i] = self.xb[i].sub(&step.mul(a));
                    }
                }
            }

            if do_flip {
                self.at_upper[j] = up;
            } else {
                let (r, _, to_upper) = best.expect("pivot row");
                let start = if up {
                    T::zero()
                } else {
                    flip.clone().expect("entering from upper bound")
                };
                let leaving = self.basis[r];
                self.pos[leaving] = NONBASIC;
                self.at_upper[leaving] = to_upper;
                self.basis[r] = j;
                self.pos[j] = r;
                self.at_upper[j] = false;
                self.xb[r] = start.add(&step);
                self.pivot(r, &alpha);
            }
            self.iterations += 1;
        }
    }

    fn pivot(&mut self, r: usize, alpha: &[T]) {
        let m = self.m();
        let piv = alpha[r].clone();
        for k in 0..m {
            let v = &self.binv[r * m + k];
            if !v.is_exact_zero() {
                self.binv[r * m + k] = v.div(&piv);
            }
        }
        let pivot_row: Vec<T> = self.binv[r * m..(r + 1) * m].to_vec();
        for (i, a) in alpha.iter().enumerate() {
            if i == r || a.is_exact_zero() {
                continue;
            }
            for (k, p) in pivot_row.iter().enumerate() {
                if !p.is_exact_zero() {
                    self.binv[i * m + k] = self.binv[i * m + k].sub(&a.mul(p));
                }
            }
        }
        self.since_refactor += 1;
    }

    fn primal_feasible(&self) -> bool {
        let tol = self.settings.tol;
        self.xb.iter().enumerate().all(|(i, v)| {
            v.sign(tol) != Ordering::Less
                && match &self.upper[self.basis[i]] {
                    Some(u) => v.cmp_with(u, tol) != Ordering::Greater,
                    None => true,
                }
        })
    }

    fn extract(&self, cost: &[T]) -> EngineResult<T> {
        let mut x = vec![T::zero(); self.sf.n_cols()];
        for (j, xj) in x.iter_mut().enumerate() {
            if self.pos[j] != NONBASIC {
                *xj = self.xb[self.pos[j]].clone();
            } else if self.at_upper[j] {
                *xj = self.upper[j].clone().expect("finite upper bound");
            }
        }
        EngineResult::Optimal {
            x,
            y: self.duals(cost),
            basis: BasisInfo {
                basis: self.basis.clone(),
                at_upper: self.at_upper.clone(),
            },
            iterations: self.iterations,
        }
    }
}

/// Runs phase 2 from a supplied basis. Returns `None` when the basis is
/// singular or not primal feasible for this form.
fn solve_warm<T: Scalar>(
    sf: &StandardForm<T>,
    settings: &Settings,
    warm: &BasisInfo,
) -> Result<Option<EngineResult<T>>, IterationLimit> {
    if warm.basis.len() != sf.m || warm.at_upper.len() != sf.n_cols() {
        return Ok(None);
    }
    let mut e = Engine::new(sf, settings, warm.basis.clone(), warm.at_upper.clone());
    e.fix_artificials();
    for j in 0..sf.n_cols() {
        if e.at_upper[j] && (e.pos[j] != NONBASIC || e.upper[j].is_none() || j >= sf.art_start) {
            return Ok(None);
        }
    }
    if !e.factor() {
        return Ok(None);
    }
    e.compute_xb();
    if !e.primal_feasible() {
        return Ok(None);
    }
    match e.run(&sf.cost)? {
        Outcome::Optimal => Ok(Some(e.extract(&sf.cost))),
        Outcome::Unbounded => Ok(Some(EngineResult::Unbounded)),
    }
}

pub(crate) fn solve<T: Scalar>(
    sf: &StandardForm<T>,
    settings: &Settings,
    warm: Option<&BasisInfo>,
) -> Result<EngineResult<T>, IterationLimit> {
    if let Some(w) = warm {
        if let Some(res) = solve_warm(sf, settings, w)? {
            return Ok(res);
        }
    }
    let mut e = Engine::new(sf, settings, sf.init_basis.clone(), vec![false; sf.n_cols()]);
    let ok = e.factor();
    debug_assert!(ok, "initial slack/artificial basis is diagonal");
    e.compute_xb();

    if sf.art_start < sf.n_cols() {
        let mut phase1 = vec![T::zero(); sf.n_cols()];
        for c in phase1.iter_mut().skip(sf.art_start) {
            *c = T::one();
        }
        // Phase 1 is bounded below by zero, so it always ends optimal.
        e.run(&phase1)?;
        let infeasibility = e
            .basis
            .iter()
            .zip(&e.xb)
            .filter(|(&j, _)| j >= sf.art_start)
            .fold(T::zero(), |acc, (_, v)| acc.add(v));
        let scale = sf.b.iter().map(|v| v.magnitude()).fold(1.0, f64::max);
        if infeasibility.sign(settings.tol * scale * 10.0) == Ordering::Greater {
            return Ok(EngineResult::Infeasible);
        }
        e.fix_artificials();
        if !T::EXACT {
            // clamp artificial noise left in the basis
            for (i, &j) in e.basis.iter().enumerate() {
                if j >= sf.art_start {
                    e.xb[i] = T::zero();
                }
            }
        }
    }
    match e.run(&sf.cost)? {
        Outcome::Optimal => Ok(e.extract(&sf.cost)),
        Outcome::Unbounded => Ok(EngineResult::Unbounded),
    }
}
