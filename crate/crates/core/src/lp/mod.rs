//! Linear programs over exact rationals.
//!
//! [`solve_exact`] returns an optimal basic solution with exact primal
//! values, row duals and objective, and checks the strong-duality
//! certificate before returning. [`solve_float`] runs the same engine in
//! `f64` with partial pricing. Variables always have lower bound 0; upper
//! bounds (default 1) are handled implicitly by the simplex ratio test.
//!
//! A program with more rows than variables is solved through its dual so
//! the basis stays at the smaller dimension; the returned solution is
//! mapped back and is indistinguishable from a direct solve.

mod rational;
mod scalar;
mod simplex;

use std::cmp::Ordering;

pub use rational::Rational;
pub use scalar::Scalar;

use crate::error::{Error, Result};
use simplex::{BasisInfo, EngineResult, Settings, StandardForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveSense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs, one entry per variable.
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: RowSense,
    pub rhs: Rational,
}

/// `max|min c x` subject to sparse rows and `0 <= x_j <= upper_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: ObjectiveSense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// `None` means no upper bound.
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// New program whose variables are bounded in `[0, 1]`.
    pub fn new(sense: ObjectiveSense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            upper: vec![Some(Rational::one()); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.constraints.len()
    }

    pub fn with_upper_bounds(mut self, upper: Vec<Option<Rational>>) -> Self {
        self.upper = upper;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rational)>, sense: RowSense, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    /// Checks dimensions, indices, and bounds.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.upper.len() != n {
            return Err(Error::input(format!(
                "{} upper bounds for {n} variables",
                self.upper.len()
            )));
        }
        if let Some(j) = self.upper.iter().position(|u| matches!(u, Some(u) if u.is_negative())) {
            return Err(Error::input(format!("variable {j} has a negative upper bound")));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            let mut seen = vec![false; n];
            for (j, _) in &row.coeffs {
                if *j >= n {
                    return Err(Error::input(format!("row {i} references variable {j} >= {n}")));
                }
                if std::mem::replace(&mut seen[*j], true) {
                    return Err(Error::input(format!("row {i} lists variable {j} twice")));
                }
            }
        }
        Ok(())
    }

    fn activity<T: Scalar>(&self, row: &Constraint, x: &[T]) -> T {
        row.coeffs.iter().fold(T::zero(), |acc, (j, a)| {
            acc.add(&T::from_rational(a).mul(&x[*j]))
        })
    }

    /// `c x` for a candidate point.
    pub fn objective_value<T: Scalar>(&self, x: &[T]) -> T {
        self.objective
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (c, v)| acc.add(&T::from_rational(c).mul(v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. When the status is not optimal the vectors are empty.
///
/// Dual values are shadow prices of the original objective: for a `Max`
/// program a binding `<=` row has a nonnegative dual, for a `Min` program a
/// binding `>=` row has a nonnegative dual.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub primal: Vec<T>,
    pub dual: Vec<T>,
    pub objective: T,
    /// Final basis of the form actually solved (column ids).
    pub basis: Vec<usize>,
    pub iterations: usize,
}

impl<T: Scalar> LpSolution<T> {
    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            primal: Vec::new(),
            dual: Vec::new(),
            objective: T::zero(),
            basis: Vec::new(),
            iterations: 0,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Solves exactly. The float engine supplies a starting basis, which the
/// exact engine re-factors and then finishes with Bland's rule, so the result
/// is an exact optimal basic solution whatever the float run did.
pub fn solve_exact(lp: &LinearProgram) -> Result<LpSolution<Rational>> {
    lp.validate()?;
    let sol = if should_dualize(lp) {
        solve_via_dual_exact(lp)?
    } else {
        solve_direct_exact(lp)?
    };
    if sol.is_optimal() {
        verify_certificate(lp, &sol, 0.0).map_err(|e| {
            Error::solver(format!("exact solve produced an invalid certificate: {e}"))
        })?;
    }
    Ok(sol)
}

/// Solves in `f64` with feasibility and optimality tolerance `tol`.
pub fn solve_float(lp: &LinearProgram, tol: f64) -> Result<LpSolution<f64>> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
    if !(tol > 0.0) {
        return Err(Error::input("tolerance must be positive"));
    }
    lp.validate()?;
    if should_dualize(lp) {
        solve_via_dual_float(lp, tol)
    } else {
        solve_direct_float(lp, tol)
    }
}

fn should_dualize(lp: &LinearProgram) -> bool {
    lp.num_rows() > lp.num_vars()
}

fn limit_error(e: simplex::IterationLimit) -> Error {
    Error::solver(format!(
        "iteration cap reached after {} iterations ({} rows, {} columns)",
        e.iterations, e.rows, e.cols
    ))
}

/// Float engine run that reports its final basis.
fn float_engine(lp: &LinearProgram, tol: f64) -> Result<EngineResult<f64>> {
    let sf = StandardForm::<f64>::from_lp(lp);
    let settings = Settings::float(sf.m, sf.n_cols(), tol);
    simplex::solve(&sf, &settings, None).map_err(limit_error)
}

fn exact_engine(lp: &LinearProgram, warm: Option<&BasisInfo>) -> Result<EngineResult<Rational>> {
    let sf = StandardForm::<Rational>::from_lp(lp);
    let settings = Settings::exact(sf.m, sf.n_cols());
    simplex::solve(&sf, &settings, warm).map_err(limit_error)
}

fn package<T: Scalar>(lp: &LinearProgram, res: EngineResult<T>) -> LpSolution<T> {
    match res {
        EngineResult::Infeasible => LpSolution::non_optimal(LpStatus::Infeasible),
        EngineResult::Unbounded => LpSolution::non_optimal(LpStatus::Unbounded),
        EngineResult::Optimal {
            mut x,
            y,
            basis,
            iterations,
        } => {
            x.truncate(lp.num_vars());
            let dual = match lp.sense {
                ObjectiveSense::Min => y,
                ObjectiveSense::Max => y.iter().map(Scalar::neg).collect(),
            };
            LpSolution {
                status: LpStatus::Optimal,
                objective: lp.objective_value(&x),
                primal: x,
                dual,
                basis: basis.basis,
                iterations,
            }
        }
    }
}

fn solve_direct_exact(lp: &LinearProgram) -> Result<LpSolution<Rational>> {
    let warm = match float_engine(lp, DEFAULT_FLOAT_TOL) {
        Ok(EngineResult::Optimal { basis, .. }) => Some(basis),
        _ => None,
    };
    let res = exact_engine(lp, warm.as_ref())?;
    Ok(package(lp, res))
}

fn solve_direct_float(lp: &LinearProgram, tol: f64) -> Result<LpSolution<f64>> {
    let res = float_engine(lp, tol)?;
    Ok(package(lp, res))
}

/// Which primal row (or bound) a dual variable belongs to, and its sign.
#[derive(Clone, Copy, Debug)]
enum DualSource {
    Row(usize),
    Bound,
}

struct Dualized {
    lp: LinearProgram,
    vars: Vec<(DualSource, bool)>,
}

/// Builds `max b y` over nonnegative split duals, one row per primal
/// variable. Finite upper bounds become explicit `x_j <= u_j` rows first.
fn dualize(lp: &LinearProgram) -> Dualized {
    let n = lp.num_vars();
    let negate = lp.sense == ObjectiveSense::Max;
    let mut vars: Vec<(DualSource, bool)> = Vec::new();
    let mut objective = Vec::new();
    let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();

    for (i, row) in lp.constraints.iter().enumerate() {
        let signs: &[bool] = match row.sense {
            RowSense::Ge => &[true],
            RowSense::Le => &[false],
            RowSense::Eq => &[true, false],
        };
        for &pos in signs {
            vars.push((DualSource::Row(i), pos));
            objective.push(if pos { row.rhs.clone() } else { -&row.rhs });
            cols.push(
                row.coeffs
                    .iter()
                    .map(|(j, a)| (*j, if pos { a.clone() } else { -a }))
                    .collect(),
            );
        }
    }
    for (j, u) in lp.upper.iter().enumerate() {
        if let Some(u) = u {
            vars.push((DualSource::Bound, false));
            objective.push(-u);
            cols.push(vec![(j, -Rational::one())]);
        }
    }

    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (k, col) in cols.into_iter().enumerate() {
        for (j, a) in col {
            rows[j].push((k, a));
        }
    }
    let mut dual = LinearProgram::new(ObjectiveSense::Max, objective)
        .with_upper_bounds(vec![None; vars.len()]);
    for (j, coeffs) in rows.into_iter().enumerate() {
        let c = if negate {
            -&lp.objective[j]
        } else {
            lp.objective[j].clone()
        };
        dual.add_constraint(coeffs, RowSense::Le, c);
    }
    Dualized { lp: dual, vars }
}

fn undualize<T: Scalar>(lp: &LinearProgram, d: &Dualized, sol: LpSolution<T>) -> LpSolution<T> {
    // Primal x = shadow prices of the dual rows; primal row duals (min form)
    // are recombined from the split dual variables.
    let x = sol.dual;
    let mut y = vec![T::zero(); lp.num_rows()];
    for ((src, pos), v) in d.vars.iter().zip(&sol.primal) {
        if let DualSource::Row(i) = src {
            y[*i] = if *pos { y[*i].add(v) } else { y[*i].sub(v) };
        }
    }
    let dual = match lp.sense {
        ObjectiveSense::Min => y,
        ObjectiveSense::Max => y.iter().map(Scalar::neg).collect(),
    };
    LpSolution {
        status: LpStatus::Optimal,
        objective: lp.objective_value(&x),
        primal: x,
        dual,
        basis: sol.basis,
        iterations: sol.iterations,
    }
}

fn solve_via_dual_exact(lp: &LinearProgram) -> Result<LpSolution<Rational>> {
    let d = dualize(lp);
    let sol = solve_direct_exact(&d.lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(undualize(lp, &d, sol)),
        // dual unbounded <=> primal infeasible (the dual here is never empty)
        LpStatus::Unbounded => Ok(LpSolution::non_optimal(LpStatus::Infeasible)),
        // dual infeasible: primal is unbounded or infeasible; decide directly
        LpStatus::Infeasible => solve_direct_exact(lp),
    }
}

fn solve_via_dual_float(lp: &LinearProgram, tol: f64) -> Result<LpSolution<f64>> {
    let d = dualize(lp);
    let sol = solve_direct_float(&d.lp, tol)?;
    match sol.status {
        LpStatus::Optimal => Ok(undualize(lp, &d, sol)),
        LpStatus::Unbounded => Ok(LpSolution::non_optimal(LpStatus::Infeasible)),
        LpStatus::Infeasible => solve_direct_float(lp, tol),
    }
}

/// Reduced costs `c - A^T y` in minimisation form, with the matching
/// min-form duals.
fn min_form_reduced<T: Scalar>(lp: &LinearProgram, dual: &[T]) -> (Vec<T>, Vec<T>) {
    let flip = lp.sense == ObjectiveSense::Max;
    let y: Vec<T> = dual
        .iter()
        .map(|v| if flip { v.neg() } else { v.clone() })
        .collect();
    let mut red: Vec<T> = lp
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
    for (i, row) in lp.constraints.iter().enumerate() {
        for (j, a) in &row.coeffs {
            red[*j] = red[*j].sub(&y[i].mul(&T::from_rational(a)));
        }
    }
    (y, red)
}

/// Checks primal feasibility, dual feasibility and equality of the primal
/// and dual objectives (`tol = 0` for exact values). Together these certify
/// optimality of both vectors.
pub fn verify_certificate<T: Scalar>(lp: &LinearProgram, sol: &LpSolution<T>, tol: f64) -> std::result::Result<(), String> {
    if !sol.is_optimal() {
        return Err("solution is not optimal".into());
    }
    let n = lp.num_vars();
    if sol.primal.len() != n || sol.dual.len() != lp.num_rows() {
        return Err("vector lengths do not match the program".into());
    }
    for (j, x) in sol.primal.iter().enumerate() {
        if x.sign(tol) == Ordering::Less {
            return Err(format!("x[{j}] is negative"));
        }
        if let Some(u) = &lp.upper[j] {
            if x.cmp_with(&T::from_rational(u), tol) == Ordering::Greater {
                return Err(format!("x[{j}] exceeds its upper bound"));
            }
        }
    }
    for (i, row) in lp.constraints.iter().enumerate() {
        let act = lp.activity(row, &sol.primal);
        let c = act.cmp_with(&T::from_rational(&row.rhs), tol);
        let ok = match row.sense {
            RowSense::Le => c != Ordering::Greater,
            RowSense::Ge => c != Ordering::Less,
            RowSense::Eq => c == Ordering::Equal,
        };
        if !ok {
            return Err(format!("row {i} is violated"));
        }
    }
    let (y, red) = min_form_reduced(lp, &sol.dual);
    for (i, row) in lp.constraints.iter().enumerate() {
        let s = y[i].sign(tol);
        let ok = match row.sense {
            RowSense::Ge => s != Ordering::Less,
            RowSense::Le => s != Ordering::Greater,
            RowSense::Eq => true,
        };
        if !ok {
            return Err(format!("dual of row {i} has the wrong sign"));
        }
    }
    let mut dual_obj = lp
        .constraints
        .iter()
        .zip(&y)
        .fold(T::zero(), |acc, (row, yi)| acc.add(&T::from_rational(&row.rhs).mul(yi)));
    for (j, d) in red.iter().enumerate() {
        match &lp.upper[j] {
            None => {
                if d.sign(tol) == Ordering::Less {
                    return Err(format!("reduced cost of unbounded x[{j}] is negative"));
                }
            }
            Some(u) => {
                if d.sign(0.0) == Ordering::Less {
                    dual_obj = dual_obj.add(&T::from_rational(u).mul(d));
                }
            }
        }
    }
    let primal_obj = lp.objective_value(&sol.primal);
    let primal_min = if lp.sense == ObjectiveSense::Max {
        primal_obj.neg()
    } else {
        primal_obj
    };
    let scale = 1.0 + primal_min.magnitude();
    if primal_min.cmp_with(&dual_obj, tol * scale) != Ordering::Equal {
        return Err(format!(
            "duality gap: primal {:?} vs dual {:?}",
            primal_min, dual_obj
        ));
    }
    Ok(())
}

/// Complementary slackness between the returned primal and dual vectors.
pub fn complementary_slackness<T: Scalar>(lp: &LinearProgram, sol: &LpSolution<T>, tol: f64) -> bool {
    if !sol.is_optimal() {
        return false;
    }
    let (y, red) = min_form_reduced(lp, &sol.dual);
    let rows_ok = lp.constraints.iter().zip(&y).all(|(row, yi)| {
        yi.sign(tol) == Ordering::Equal
            || lp
                .activity(row, &sol.primal)
                .cmp_with(&T::from_rational(&row.rhs), tol)
                == Ordering::Equal
    });
    let cols_ok = sol.primal.iter().enumerate().all(|(j, x)| {
        let at_lower = x.sign(tol) == Ordering::Equal;
        let at_upper = lp.upper[j]
            .as_ref()
            .is_some_and(|u| x.cmp_with(&T::from_rational(u), tol) == Ordering::Equal);
        match red[j].sign(tol) {
            Ordering::Equal => true,
            Ordering::Greater => at_lower,
            Ordering::Less => at_upper,
        }
    });
    rows_ok && cols_ok
}

/// Optimises `direction · x` over the optimal face of `lp`, i.e. its
/// feasible region intersected with `objective · x = opt`.
pub fn probe_optimal_face_direction(
    lp: &LinearProgram,
    opt: &Rational,
    direction: &[(usize, Rational)],
    sense: ObjectiveSense,
) -> Result<Rational> {
    lp.validate()?;
    let mut objective = vec![Rational::zero(); lp.num_vars()];
    for (j, c) in direction {
        if *j >= lp.num_vars() {
            return Err(Error::input(format!("probe direction references variable {j}")));
        }
        objective[*j] += c;
    }
    let mut face = LinearProgram {
        sense,
        objective,
        constraints: lp.constraints.clone(),
        upper: lp.upper.clone(),
    };
    let pin: Vec<(usize, Rational)> = lp
        .objective
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.clone()))
        .collect();
    face.add_constraint(pin, RowSense::Eq, opt.clone());
    let sol = solve_exact(&face)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.objective),
        LpStatus::Infeasible => Err(Error::input(format!(
            "objective value {opt} is not attained: optimal face is empty"
        ))),
        LpStatus::Unbounded => Err(Error::solver("probe direction is unbounded on the face")),
    }
}

/// Minimum or maximum of one coordinate over the optimal face.
pub fn probe_optimal_face(
    lp: &LinearProgram,
    opt: &Rational,
    coordinate: usize,
    sense: ObjectiveSense,
) -> Result<Rational> {
    probe_optimal_face_direction(lp, opt, &[(coordinate, Rational::one())], sense)
}
