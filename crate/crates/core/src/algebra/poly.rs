use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, Monomial, MonomialOrder, RatFunc, Rational};

/// A differentiation variable: one of the x's or the parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X(usize),
    T,
}

/// Sparse polynomial in `nvars` variables; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Poly::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::term(Monomial::var(nvars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, F)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Result<Self, AlgebraError> {
        if i >= self.nvars {
            return Err(AlgebraError::BadVariable {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e > 0 {
                let mut ex = m.exps().to_vec();
                ex[i] -= 1;
                r.add_term(Monomial::new(ex), &c.mul(&F::from_i64(e as i64)));
            }
        }
        Ok(r)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Drop all terms of total degree `>= d`.
    pub fn truncate(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(Monomial, F)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, F)> {
        let mut v: Vec<(Monomial, F)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Human-readable form with the given variable names, terms in
    /// descending graded order.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ts: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let s = render_term(m, c, names);
            if k == 0 {
                out.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&s);
            }
        }
        out
    }
}

fn render_term<F: Field>(m: &Monomial, c: &F, names: &[String]) -> String {
    let cs = c.render();
    if m.is_one() {
        return cs;
    }
    let ms = m.render(names);
    if c.is_one() {
        return ms;
    }
    if c.neg().is_one() {
        return format!("-{ms}");
    }
    let simple = !cs.contains('/') && !cs[1..].contains(['+', '-']) && !cs.contains(' ');
    if simple {
        format!("{cs}*{ms}")
    } else {
        format!("({cs})*{ms}")
    }
}

/// `sum_i w_i m_i`.
pub fn weighted_degree(m: &Monomial, w: &[Rational]) -> Rational {
    m.exps()
        .iter()
        .zip(w)
        .map(|(e, wi)| wi * Rational::from_integer((*e).into()))
        .sum()
}

impl Poly<RatFunc> {
    pub fn t_derivative(&self) -> Self {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.derivative())))
    }

    pub fn partial(&self, v: Var) -> Result<Self, AlgebraError> {
        match v {
            Var::X(i) => self.derivative(i),
            Var::T => Ok(self.t_derivative()),
        }
    }

    /// Evaluate all coefficients at `t = t0`.
    pub fn specialize(&self, t0: &Rational) -> Result<Poly<Rational>, AlgebraError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), c.eval(t0)?));
        }
        Ok(Poly::from_terms(self.nvars, terms))
    }

    /// True when no coefficient depends on the parameter.
    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(RatFunc::is_constant)
    }
}

impl Poly<Rational> {
    pub fn to_ratfunc(&self) -> Poly<RatFunc> {
        self.map_coeffs(RatFunc::from_rational)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        Poly::add(self, o)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        Poly::sub(self, o)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        Poly::mul(self, o)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, rf, MPoly};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn quartic() -> MPoly {
        MPoly::from_terms(
            2,
            [
                (mono(&[4, 0]), RatFunc::one()),
                (mono(&[0, 4]), RatFunc::one()),
                (mono(&[2, 2]), RatFunc::t()),
            ],
        )
    }

    #[test]
    fn cancellation() {
        let f = quartic();
        let p = MPoly::from_terms(2, [(mono(&[4, 0]), RatFunc::one()), (mono(&[0, 4]), RatFunc::one())]);
        assert_eq!(&f - &p, MPoly::term(mono(&[2, 2]), RatFunc::t()));
    }

    #[test]
    fn partials_of_quartic() {
        let f = quartic();
        let fx = MPoly::from_terms(
            2,
            [
                (mono(&[3, 0]), RatFunc::from_int(4)),
                (mono(&[1, 2]), rf(&[0, 2], &[1])),
            ],
        );
        assert_eq!(f.partial(Var::X(0)).unwrap(), fx);
        assert_eq!(f.partial(Var::T).unwrap(), MPoly::term(mono(&[2, 2]), RatFunc::one()));
        assert!(MPoly::one(2).partial(Var::X(1)).unwrap().is_zero());
        assert!(f.partial(Var::X(2)).is_err());
    }

    #[test]
    fn specialize_and_poles() {
        let f = quartic();
        let g = f.specialize(&q(1, 1)).unwrap();
        assert_eq!(g.coeff(&mono(&[2, 2])), q(1, 1));
        let p = MPoly::term(mono(&[1, 0]), rf(&[1], &[4, 0, -1]));
        assert!(matches!(p.specialize(&q(2, 1)), Err(AlgebraError::Pole { .. })));
        let tx = MPoly::term(mono(&[1, 0]), RatFunc::t());
        assert!(tx.specialize(&q(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn weighted_degrees() {
        let w = [q(1, 4), q(1, 4)];
        assert_eq!(weighted_degree(&mono(&[1, 1]), &w), q(1, 2));
        assert_eq!(weighted_degree(&mono(&[0, 0]), &w), q(0, 1));
        assert_eq!(weighted_degree(&mono(&[2, 2]), &w), q(1, 1));
    }

    #[test]
    fn render_quartic() {
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(quartic().render(&names), "x^4 + t*x^2*y^2 + y^4");
        let fx = quartic().derivative(0).unwrap();
        assert_eq!(fx.render(&names), "4*x^3 + 2*t*x*y^2");
        let p = MPoly::term(mono(&[1, 0]), rf(&[0, -1], &[4, 0, -1]));
        assert_eq!(p.render(&names), "(t/(t^2 - 4))*x");
    }

    #[test]
    fn mixed_partials_commute() {
        let f = quartic().mul(&quartic()).add(&MPoly::var(2, 0));
        let a = f.derivative(0).unwrap().derivative(1).unwrap();
        let b = f.derivative(1).unwrap().derivative(0).unwrap();
        assert_eq!(a, b);
        let c = f.t_derivative().derivative(0).unwrap();
        let d = f.derivative(0).unwrap().t_derivative();
        assert_eq!(c, d);
    }
}
