//! Exact arithmetic: rationals, the parameter field Q(t), and sparse
//! multivariate polynomials over either.

mod monomial;
mod poly;
mod ratfunc;
mod zpoly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use monomial::{Monomial, MonomialOrder, OrderKey, OrderKind};
pub use poly::{weighted_degree, Poly, Var};
pub use ratfunc::{rf, RatFunc};
pub use zpoly::ZPoly;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Polynomial in x with coefficients in Q(t).
pub type MPoly = Poly<RatFunc>;

/// Polynomial in x with rational coefficients (a specialized fiber).
pub type QPoly = Poly<Rational>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at t = {at}: coefficient {value}")]
    Pole { at: Rational, value: String },
    #[error("variable index {index} out of range for {nvars} variables")]
    BadVariable { index: usize, nvars: usize },
}

/// Operations the polynomial and linear algebra code needs from a
/// coefficient field.
///
/// Method names deliberately mirror the arithmetic operators; generic code
/// calls them through `F: Field`, concrete code uses the operators.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Primitive polynomials in t whose roots are parameter values where
    /// this scalar vanishes or has a pole. Empty for constant fields.
    fn singular_factors(&self) -> Vec<ZPoly> {
        Vec::new()
    }

    /// Primitive polynomials in t whose roots are poles of this scalar.
    fn pole_factors(&self) -> Vec<ZPoly> {
        Vec::new()
    }

    fn render(&self) -> String;

    /// Nonzero and independent of the parameter.
    fn is_unit_constant(&self) -> bool;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
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
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_unit_constant(&self) -> bool {
        !Zero::is_zero(self)
    }
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if Zero::is_zero(&b) {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Shorthand for `p/q` as a rational.
pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

/// Set of primitive parameter polynomials whose rational roots are
/// candidate bad parameter values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BadValues {
    factors: std::collections::BTreeSet<ZPoly>,
}

impl BadValues {
    pub fn note<F: Field>(&mut self, c: &F) {
        for p in c.singular_factors() {
            self.factors.insert(p);
        }
    }

    /// Record the poles of every coefficient of `p`.
    pub fn note_poles<F: Field>(&mut self, p: &Poly<F>) {
        for (_, c) in p.terms() {
            self.factors.extend(c.pole_factors());
        }
    }

    pub fn note_factor(&mut self, p: ZPoly) {
        if !p.is_constant() {
            self.factors.insert(p.primitive());
        }
    }

    pub fn merge(&mut self, other: &BadValues) {
        self.factors.extend(other.factors.iter().cloned());
    }

    pub fn factors(&self) -> impl Iterator<Item = &ZPoly> {
        self.factors.iter()
    }

    /// Sorted rational roots of all recorded factors.
    pub fn rational_points(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self.factors.iter().flat_map(ZPoly::rational_roots).collect();
        pts.sort();
        pts.dedup();
        pts
    }
}
