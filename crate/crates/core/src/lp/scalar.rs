use std::cmp::Ordering;
use std::fmt::Debug;

use super::Rational;

/// Arithmetic the simplex engine needs. `f64` compares against a tolerance;
/// `Rational` ignores it.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact zero test (used to skip work, never for decisions).
    fn is_exact_zero(&self) -> bool;
    /// Sign with values inside `[-tol, tol]` treated as zero.
    fn sign(&self, tol: f64) -> Ordering;
    fn cmp_with(&self, o: &Self, tol: f64) -> Ordering {
        self.sub(o).sign(tol)
    }
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self, tol: f64) -> Ordering {
        if *self > tol {
            Ordering::Greater
        } else if *self < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self, _tol: f64) -> Ordering {
        self.signum()
    }
    fn cmp_with(&self, o: &Self, _tol: f64) -> Ordering {
        self.cmp(o)
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
}
