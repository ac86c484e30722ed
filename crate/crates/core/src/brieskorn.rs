//! The Brieskorn module of a one-parameter family at the origin, truncated
//! at `b^N`, as a free module on the standard monomials, with the operators
//! `a`, `b`, `b^-1` and the connection `nabla`.
//!
//! Coordinates of `sum_j b^j sum_i c_ji m_i dx` are stored densely at index
//! `j * mu + i`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{BadValues, MPoly, Monomial, MonomialOrder, RatFunc, Rational};
use crate::groebner::{self, GroebnerBasis, GroebnerError, Ideal, LocalBasis, QuotientDim};

/// Largest truncation degree tried when certifying the local basis.
pub const DEFAULT_DEGREE_CAP: u32 = 96;

pub const DEFAULT_B_ORDER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BrieskornError {
    #[error("the singularity at the origin is not isolated (no certificate up to degree {degree})")]
    NotIsolated { degree: u32 },
    #[error("f has a nonzero constant term; the fiber must pass through the origin")]
    NotThroughOrigin,
    #[error("truncation order must be at least 1")]
    BadOrder,
    #[error("S-pair budget of {budget} exhausted")]
    Budget { budget: usize },
    #[error("class is not in the image of b: its b^0 part is nonzero")]
    NotInImage,
    #[error("class is not in P: the b^0 part of its image under nabla is nonzero")]
    NotInP,
    #[error("truncation mismatch: {left} vs {right}")]
    Mismatch { left: usize, right: usize },
}

impl From<GroebnerError> for BrieskornError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Budget { budget } => BrieskornError::Budget { budget },
            GroebnerError::NotIsolated { degree } => BrieskornError::NotIsolated { degree },
        }
    }
}

/// The coefficient `g` of a relative top form `g dx_1 ^ ... ^ dx_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct NForm(pub MPoly);

/// Element of the Brieskorn module modulo `b^N`.
#[derive(Clone, PartialEq)]
pub struct BClass {
    mu: usize,
    n: usize,
    coords: Vec<RatFunc>,
}

impl fmt::Debug for BClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BClass(mu={}, N={}, [", self.mu, self.n)?;
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "b^{}*m{}: {}", k / self.mu.max(1), k % self.mu.max(1), c)?;
            }
        }
        write!(f, "])")
    }
}

impl BClass {
    pub fn zero(mu: usize, n: usize) -> Self {
        BClass {
            mu,
            n,
            coords: vec![RatFunc::zero(); mu * n],
        }
    }

    /// `b^j m_i`.
    pub fn basis(mu: usize, n: usize, j: usize, i: usize) -> Self {
        let mut x = BClass::zero(mu, n);
        if j < n {
            x.coords[j * mu + i] = RatFunc::one();
        }
        x
    }

    pub fn from_coords(mu: usize, n: usize, coords: Vec<RatFunc>) -> Self {
        assert_eq!(coords.len(), mu * n);
        BClass { mu, n, coords }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<RatFunc> {
        self.coords
    }

    pub fn coord(&self, j: usize, i: usize) -> &RatFunc {
        &self.coords[j * self.mu + i]
    }

    pub fn add_to(&mut self, j: usize, i: usize, c: &RatFunc) {
        if j < self.n && !c.is_zero() {
            let k = j * self.mu + i;
            self.coords[k] = &self.coords[k] + c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RatFunc::is_zero)
    }

    /// Coefficients of `b^j`.
    pub fn block(&self, j: usize) -> &[RatFunc] {
        &self.coords[j * self.mu..(j + 1) * self.mu]
    }

    pub fn b0_is_zero(&self) -> bool {
        self.n == 0 || self.block(0).iter().all(RatFunc::is_zero)
    }

    /// Lowest `j` with a nonzero `b^j` block.
    pub fn b_order(&self) -> Option<usize> {
        (0..self.n).find(|&j| self.block(j).iter().any(|c| !c.is_zero()))
    }

    fn check(&self, o: &BClass) {
        assert!(self.mu == o.mu && self.n == o.n, "BClass shape mismatch");
    }

    pub fn add(&self, o: &BClass) -> BClass {
        self.check(o);
        BClass {
            mu: self.mu,
            n: self.n,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &BClass) -> BClass {
        self.check(o);
        BClass {
            mu: self.mu,
            n: self.n,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> BClass {
        self.scale(&RatFunc::from_int(-1))
    }

    pub fn scale(&self, c: &RatFunc) -> BClass {
        BClass {
            mu: self.mu,
            n: self.n,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by a polynomial in `b` with coefficients in Q(t); `phi[k]`
    /// is the coefficient of `b^k`.
    pub fn scale_series(&self, phi: &[RatFunc]) -> BClass {
        let mut out = BClass::zero(self.mu, self.n);
        let mut shifted = self.clone();
        for c in phi {
            out = out.add(&shifted.scale(c));
            shifted = shifted.b();
        }
        out
    }

    /// Multiplication by `b`; the top block falls off.
    pub fn b(&self) -> BClass {
        self.b_pow(1)
    }

    pub fn b_pow(&self, k: usize) -> BClass {
        let mut out = BClass::zero(self.mu, self.n);
        let shift = k * self.mu;
        if shift < self.coords.len() {
            let keep = self.coords.len() - shift;
            out.coords[shift..].clone_from_slice(&self.coords[..keep]);
        }
        out
    }

    /// Inverse of `b`, defined when the `b^0` block vanishes. The result is
    /// exact modulo `b^(N-1)`; its top block is set to zero.
    pub fn b_inverse(&self) -> Result<BClass, BrieskornError> {
        if !self.b0_is_zero() {
            return Err(BrieskornError::NotInImage);
        }
        let mut out = BClass::zero(self.mu, self.n);
        let mu = self.mu;
        if self.n > 0 {
            out.coords[..mu * (self.n - 1)].clone_from_slice(&self.coords[mu..]);
        }
        Ok(out)
    }

    /// Drop everything from `b^k` on.
    pub fn truncate(&self, k: usize) -> BClass {
        let mut out = self.clone();
        for c in out.coords.iter_mut().skip(k.min(self.n) * self.mu) {
            *c = RatFunc::zero();
        }
        out
    }

    /// Same class viewed at a smaller truncation order.
    pub fn restrict(&self, n: usize) -> BClass {
        let n = n.min(self.n);
        BClass {
            mu: self.mu,
            n,
            coords: self.coords[..n * self.mu].to_vec(),
        }
    }

    /// Equality modulo `b^k`.
    pub fn eq_mod(&self, o: &BClass, k: usize) -> bool {
        self.check(o);
        let k = k.min(self.n) * self.mu;
        self.coords[..k] == o.coords[..k]
    }

    /// Coordinate-wise `t`-derivative.
    pub fn t_derivative(&self) -> BClass {
        BClass {
            mu: self.mu,
            n: self.n,
            coords: self.coords.iter().map(RatFunc::derivative).collect(),
        }
    }

    /// Human readable form such as `b^0*(x) + b^1*(1/4*1)`.
    pub fn render(&self, staircase: &[Monomial], names: &[String]) -> String {
        let mut parts = Vec::new();
        for j in 0..self.n {
            let mut terms = Vec::new();
            for (i, m) in staircase.iter().enumerate() {
                let c = self.coord(j, i);
                if c.is_zero() {
                    continue;
                }
                let mono = m.render(names);
                terms.push(if c.is_one() { mono } else { format!("({c})*{mono}") });
            }
            if !terms.is_empty() {
                parts.push(format!("b^{j}*[{}]", terms.join(" + ")));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    A,
    Nabla,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::A => "a",
            Operator::Nabla => "nabla",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "a" => Some(Operator::A),
            "nabla" => Some(Operator::Nabla),
            _ => None,
        }
    }
}

/// Everything derived from `f` that the module operations need.
#[derive(Clone, Debug)]
pub struct FamilyContext {
    names: Vec<String>,
    f: MPoly,
    partials: Vec<MPoly>,
    dfdt: MPoly,
    order: MonomialOrder,
    gb: GroebnerBasis<RatFunc>,
    local: LocalBasis<RatFunc>,
    staircase: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    corner: u32,
    exponent: u32,
    n: usize,
    bad: BadValues,
    a_cols: Vec<BClass>,
    nabla_cols: Vec<BClass>,
}

impl FamilyContext {
    pub fn new(f: MPoly, names: Vec<String>, order: MonomialOrder, n: usize) -> Result<Self, BrieskornError> {
        Self::with_cap(f, names, order, n, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(
        f: MPoly,
        names: Vec<String>,
        order: MonomialOrder,
        n: usize,
        degree_cap: u32,
    ) -> Result<Self, BrieskornError> {
        if n == 0 {
            return Err(BrieskornError::BadOrder);
        }
        if !f.constant_term().is_zero() {
            return Err(BrieskornError::NotThroughOrigin);
        }
        let nv = f.nvars();
        assert_eq!(names.len(), nv);
        let partials: Vec<MPoly> = (0..nv).map(|i| f.derivative(i).expect("index in range")).collect();
        let dfdt = f.t_derivative();
        let gb = groebner::groebner(&Ideal::new(nv, partials.clone()), &order)?;
        let local = LocalBasis::compute(nv, &partials, &order, degree_cap)?;
        let exponent = local.power_exponent()?;
        let staircase = local.staircase().monomials().to_vec();
        let index = staircase.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut bad = gb.bad_values().clone();
        bad.merge(local.bad_values());
        bad.note_poles(&f);
        let mut ctx = FamilyContext {
            names,
            corner: local.corner(),
            f,
            partials,
            dfdt,
            order,
            gb,
            local,
            staircase,
            index,
            exponent,
            n,
            bad,
            a_cols: Vec::new(),
            nabla_cols: Vec::new(),
        };
        let mut a_cols = Vec::with_capacity(ctx.mu());
        let mut nabla_cols = Vec::with_capacity(ctx.mu());
        for m in &ctx.staircase {
            let mp = MPoly::term(m.clone(), RatFunc::one());
            a_cols.push(ctx.reduce_poly(&ctx.f.mul(&mp)));
            nabla_cols.push(ctx.reduce_poly(&ctx.dfdt.mul(&mp).neg()));
        }
        ctx.a_cols = a_cols;
        ctx.nabla_cols = nabla_cols;
        Ok(ctx)
    }

    /// Same family at another truncation order.
    pub fn with_order(&self, n: usize) -> Result<Self, BrieskornError> {
        let mut ctx = FamilyContext {
            n,
            a_cols: Vec::new(),
            nabla_cols: Vec::new(),
            ..self.clone()
        };
        if n == 0 {
            return Err(BrieskornError::BadOrder);
        }
        let mut a_cols = Vec::with_capacity(ctx.mu());
        let mut nabla_cols = Vec::with_capacity(ctx.mu());
        for m in &ctx.staircase {
            let mp = MPoly::term(m.clone(), RatFunc::one());
            a_cols.push(ctx.reduce_poly(&ctx.f.mul(&mp)));
            nabla_cols.push(ctx.reduce_poly(&ctx.dfdt.mul(&mp).neg()));
        }
        ctx.a_cols = a_cols;
        ctx.nabla_cols = nabla_cols;
        Ok(ctx)
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn partials(&self) -> &[MPoly] {
        &self.partials
    }

    pub fn dfdt(&self) -> &MPoly {
        &self.dfdt
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Reduced Gröbner basis of the relative Jacobian ideal over Q(t).
    pub fn groebner_basis(&self) -> &GroebnerBasis<RatFunc> {
        &self.gb
    }

    pub fn local_basis(&self) -> &LocalBasis<RatFunc> {
        &self.local
    }

    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Milnor number at the origin over Q(t).
    pub fn mu(&self) -> usize {
        self.staircase.len()
    }

    /// Dimension of the whole Jacobian quotient over Q(t), all critical
    /// points counted.
    pub fn global_mu(&self) -> Option<usize> {
        match self.gb.quotient_dimension() {
            QuotientDim::Finite(d) => Some(d),
            QuotientDim::Infinite => None,
        }
    }

    /// Truncation order `N`.
    pub fn b_order(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mu() * self.n
    }

    /// Smallest `c` with `m^c` in the Jacobian ideal at the origin.
    pub fn corner(&self) -> u32 {
        self.corner
    }

    /// Smallest `e` with `m^c` in `m^(c-e) J`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Degree `D` with `m^D dx` inside `b^r E`.
    pub fn truncation_degree(&self, r: usize) -> u32 {
        if r == 0 {
            return 0;
        }
        self.corner + (r as u32 - 1) * (self.exponent + 1)
    }

    pub fn bad_values(&self) -> &BadValues {
        &self.bad
    }

    pub fn bad_t(&self) -> Vec<Rational> {
        self.bad.rational_points()
    }

    pub fn zero(&self) -> BClass {
        BClass::zero(self.mu(), self.n)
    }

    /// `b^j m_i`.
    pub fn basis(&self, j: usize, i: usize) -> BClass {
        BClass::basis(self.mu(), self.n, j, i)
    }

    /// Class of a standard monomial; `None` if `m` is not standard.
    pub fn monomial_class(&self, m: &Monomial) -> Option<BClass> {
        self.index_of(m).map(|i| self.basis(0, i))
    }

    pub fn reduce(&self, form: &NForm) -> BClass {
        self.reduce_poly(&form.0)
    }

    /// Coordinates of `[g dx]` modulo `b^N`: divide
    /// `g = NF(g) + sum_i h_i df/dx_i`, keep `NF(g)` at the current b-power
    /// and continue with `sum_i dh_i/dx_i` one power higher.
    pub fn reduce_poly(&self, g: &MPoly) -> BClass {
        let mut out = self.zero();
        let mut g = g.clone();
        for j in 0..self.n {
            let r = self.n - j;
            let d = self.truncation_degree(r);
            let div = self.local.divide(&g, d);
            for (m, c) in div.remainder.terms() {
                let i = self.index[m];
                out.add_to(j, i, c);
            }
            if j + 1 == self.n {
                break;
            }
            let next = self.truncation_degree(r - 1);
            let mut h = MPoly::zero(self.nvars());
            for (i, hi) in div.cofactors.iter().enumerate() {
                if !hi.is_zero() {
                    h = h.add(&hi.truncate(next + 1).derivative(i).expect("index in range"));
                }
            }
            g = h.truncate(next);
            if g.is_zero() {
                break;
            }
        }
        out
    }

    /// Class of `sum_j b^j g_j dx`.
    pub fn reduce_series(&self, gs: &[MPoly]) -> BClass {
        let mut out = self.zero();
        for (j, g) in gs.iter().enumerate().take(self.n) {
            out = out.add(&self.reduce_poly(g).b_pow(j));
        }
        out
    }

    /// `a` is multiplication by `f`; on `b^j m` it is `b^j a(m) + j b^(j+1) m`.
    pub fn a_apply(&self, x: &BClass) -> BClass {
        self.assert_shape(x);
        let mu = self.mu();
        let mut out = self.zero();
        for j in 0..self.n {
            for i in 0..mu {
                let c = x.coord(j, i);
                if c.is_zero() {
                    continue;
                }
                out = out.add(&self.a_cols[i].b_pow(j).scale(c));
                if j > 0 {
                    out.add_to(j + 1, i, &(c * &RatFunc::from_int(j as i64)));
                }
            }
        }
        out
    }

    pub fn b_apply(&self, x: &BClass) -> BClass {
        x.b()
    }

    pub fn b_inverse(&self, x: &BClass) -> Result<BClass, BrieskornError> {
        x.b_inverse()
    }

    /// Q(t)-linear part of the connection: `b^j m -> b^j nabla(m)`.
    pub fn nabla_linear(&self, x: &BClass) -> BClass {
        self.assert_shape(x);
        let mu = self.mu();
        let mut out = self.zero();
        for j in 0..self.n {
            for i in 0..mu {
                let c = x.coord(j, i);
                if !c.is_zero() {
                    out = out.add(&self.nabla_cols[i].b_pow(j).scale(c));
                }
            }
        }
        out
    }

    /// The connection, with `nabla(phi x) = phi nabla(x) + phi' b x`.
    pub fn nabla(&self, x: &BClass) -> BClass {
        self.nabla_linear(x).add(&x.t_derivative().b())
    }

    /// `b^-1 nabla`, defined on P.
    pub fn b_inv_nabla(&self, x: &BClass) -> Result<BClass, BrieskornError> {
        self.nabla(x).b_inverse().map_err(|_| BrieskornError::NotInP)
    }

    /// The connection on a class given by a form whose coefficient may
    /// depend on `t`: `nabla[g dx] = b[dg/dt dx] - [df/dt g dx]`.
    pub fn nabla_form(&self, g: &MPoly) -> BClass {
        self.reduce_poly(&g.t_derivative())
            .b()
            .sub(&self.reduce_poly(&self.dfdt.mul(g)))
    }

    /// Matrix of the Q(t)-linear part of `op`; entry `[row][col]` is the
    /// `row` coordinate of the image of basis vector `col`.
    pub fn operator_matrix(&self, op: Operator) -> Vec<Vec<RatFunc>> {
        let dim = self.dim();
        let mu = self.mu();
        let mut m = vec![Vec::with_capacity(dim); dim];
        for col in 0..dim {
            let x = self.basis(col / mu, col % mu);
            let y = match op {
                Operator::A => self.a_apply(&x),
                Operator::Nabla => self.nabla_linear(&x),
            };
            for (row, c) in m.iter_mut().zip(y.into_coords()) {
                row.push(c);
            }
        }
        m
    }

    fn assert_shape(&self, x: &BClass) {
        assert!(
            x.mu() == self.mu() && x.order() == self.n,
            "class of shape ({}, {}) used in context ({}, {})",
            x.mu(),
            x.order(),
            self.mu(),
            self.n
        );
    }

    pub fn render(&self, x: &BClass) -> String {
        x.render(&self.staircase, &self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rf;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    }

    /// x^4 + y^4 + t x^2 y^2
    fn quartic(n: usize) -> FamilyContext {
        let f = MPoly::from_terms(
            2,
            [
                (mono(&[4, 0]), RatFunc::one()),
                (mono(&[0, 4]), RatFunc::one()),
                (mono(&[2, 2]), RatFunc::t()),
            ],
        );
        FamilyContext::new(f, names(2), MonomialOrder::grevlex(2), n).unwrap()
    }

    #[test]
    fn quartic_context_shape() {
        let ctx = quartic(4);
        assert_eq!(ctx.mu(), 9);
        assert_eq!(ctx.global_mu(), Some(9));
        assert_eq!(ctx.corner(), 5);
        let pts = ctx.bad_t();
        assert!(pts.contains(&Rational::from_integer(2.into())));
    }

    #[test]
    fn standard_monomials_reduce_to_themselves() {
        let ctx = quartic(4);
        for (i, m) in ctx.staircase().iter().enumerate() {
            let x = ctx.reduce_poly(&MPoly::term(m.clone(), RatFunc::one()));
            assert_eq!(x, ctx.basis(0, i));
        }
    }

    #[test]
    fn a_on_monomials_is_diagonal() {
        let ctx = quartic(4);
        for (i, m) in ctx.staircase().iter().enumerate() {
            let w = RatFunc::from_rational(&Rational::new((m.degree() as i64 + 2).into(), 4.into()));
            assert_eq!(ctx.a_apply(&ctx.basis(0, i)), ctx.basis(1, i).scale(&w), "m = {m:?}");
        }
    }

    #[test]
    fn x4_tail() {
        // x^4 = -(t/2) x^2y^2 + (x/4) f_x
        let ctx = quartic(3);
        let x4 = ctx.reduce_poly(&MPoly::term(mono(&[4, 0]), RatFunc::one()));
        let x2y2 = ctx.reduce_poly(&MPoly::term(mono(&[2, 2]), RatFunc::one()));
        let one = ctx.monomial_class(&mono(&[0, 0])).unwrap();
        let expect = x2y2.scale(&rf(&[0, -1], &[2])).add(&one.b().scale(&rf(&[1], &[4])));
        assert_eq!(x4, expect);
    }

    #[test]
    fn commutator_is_b_squared() {
        let ctx = quartic(4);
        for col in 0..ctx.dim() {
            let x = ctx
                .basis(col / ctx.mu(), col % ctx.mu())
                .scale(&rf(&[1, 1], &[3, 0, 1]));
            let lhs = ctx.a_apply(&x.b()).sub(&x.b().b().add(&ctx.a_apply(&x).b()));
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn nabla_leibniz_with_t() {
        let ctx = quartic(4);
        let x = ctx.basis(0, 1);
        let lhs = ctx
            .nabla(&x.scale(&RatFunc::t()))
            .sub(&ctx.nabla(&x).scale(&RatFunc::t()));
        assert_eq!(lhs, x.b());
    }

    #[test]
    fn one_is_not_in_p() {
        let ctx = quartic(4);
        let one = ctx.monomial_class(&mono(&[0, 0])).unwrap();
        assert_eq!(ctx.b_inv_nabla(&one), Err(BrieskornError::NotInP));
        let x = ctx.monomial_class(&mono(&[1, 0])).unwrap();
        let y = ctx.b_inv_nabla(&x).unwrap();
        assert!(y.eq_mod(&x.scale(&rf(&[0, 1], &[8, 0, -2])), 3));
    }

    #[test]
    fn b_inverse_round_trip() {
        let ctx = quartic(4);
        let x = ctx.basis(0, 3).add(&ctx.basis(2, 5));
        assert!(ctx.b_inverse(&x.b()).unwrap().eq_mod(&x, 3));
        assert_eq!(ctx.b_inverse(&x), Err(BrieskornError::NotInImage));
    }

    #[test]
    fn constant_term_rejected() {
        let f = MPoly::from_terms(1, [(mono(&[0]), RatFunc::one()), (mono(&[2]), RatFunc::one())]);
        let err = FamilyContext::new(f, names(1), MonomialOrder::grevlex(1), 3).unwrap_err();
        assert_eq!(err, BrieskornError::NotThroughOrigin);
    }
}
