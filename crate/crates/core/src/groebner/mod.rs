//! Ideals, reduced Gröbner bases with cofactor tracking, staircases and
//! membership certificates, plus truncated standard bases at the origin.

mod engine;
mod local;

use thiserror::Error;

use crate::algebra::{BadValues, Field, Monomial, MonomialOrder, Poly};

pub(crate) use engine::{reduce, Reducer};
pub use local::{LocalBasis, LocalDivision};

/// Default cap on processed S-pairs; `ABMOD_SPAIR_BUDGET` overrides it.
pub const DEFAULT_SPAIR_BUDGET: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroebnerError {
    #[error("S-pair budget of {budget} exhausted")]
    Budget { budget: usize },
    #[error("the ideal is not of finite colength at the origin (checked up to degree {degree})")]
    NotIsolated { degree: u32 },
}

/// The S-pair budget from the environment, or the default.
pub fn spair_budget() -> usize {
    std::env::var("ABMOD_SPAIR_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SPAIR_BUDGET)
}

/// Ideal given by generators; zero generators are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F> {
    nvars: usize,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Poly<F>>) -> Self {
        Ideal {
            nvars,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    /// Ideal generated by all monomials of degree `k`.
    pub fn maximal_ideal_power(nvars: usize, k: u32) -> Self {
        Ideal::new(
            nvars,
            Monomial::of_degree(nvars, k)
                .into_iter()
                .map(|m| Poly::term(m, F::one())),
        )
    }

    /// Product ideal, generated by pairwise products.
    pub fn product(&self, other: &Ideal<F>) -> Self {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(self.nvars, gens)
    }

    /// `m^k * self`.
    pub fn times_maximal_power(&self, k: u32) -> Self {
        self.product(&Ideal::maximal_ideal_power(self.nvars, k))
    }
}

/// Standard monomials of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    monomials: Vec<Monomial>,
    finite: bool,
}

impl Staircase {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Monomials not divisible by any of `lms`. With `bound`, only degrees
    /// below it are listed. The list is sorted by degree and, within a
    /// degree, from largest to smallest under `order`.
    pub fn from_leading(nvars: usize, lms: &[Monomial], order: &MonomialOrder, bound: Option<u32>) -> Self {
        let mut box_bound = vec![None; nvars];
        for m in lms {
            let support: Vec<usize> = (0..nvars).filter(|&i| m.exps()[i] > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                let e = m.exps()[i];
                box_bound[i] = Some(box_bound[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        let finite = lms.iter().any(Monomial::is_one) || box_bound.iter().all(Option::is_some);
        let max_deg = match (finite, bound) {
            (_, Some(b)) => b.saturating_sub(1),
            (true, None) => box_bound.iter().map(|b| b.unwrap_or(1).saturating_sub(1)).sum(),
            (false, None) => 0,
        };
        let mut monomials = Vec::new();
        if !(finite && lms.iter().any(Monomial::is_one)) && (finite || bound.is_some()) {
            for d in 0..=max_deg {
                let mut layer: Vec<Monomial> = Monomial::of_degree(nvars, d)
                    .into_iter()
                    .filter(|m| !lms.iter().any(|l| l.divides(m)))
                    .collect();
                layer.sort_by(|a, b| order.cmp(b, a));
                monomials.extend(layer);
            }
        }
        Staircase { monomials, finite }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

/// An identity `u * target = sum_i cofactors_i * generators_i + residual`.
/// `u` is 1 unless a multiplier is given, in which case it must not vanish
/// at the origin. The residual is zero, or (for membership at the origin,
/// where `m^residual_order` lies in the ideal) has order at least
/// `residual_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<F> {
    pub target: Poly<F>,
    pub generators: Vec<Poly<F>>,
    pub cofactors: Vec<Poly<F>>,
    pub residual_order: Option<u32>,
    pub multiplier: Option<Poly<F>>,
}

impl<F: Field> Certificate<F> {
    pub fn exact(target: Poly<F>, generators: Vec<Poly<F>>, cofactors: Vec<Poly<F>>) -> Self {
        Certificate {
            target,
            generators,
            cofactors,
            residual_order: None,
            multiplier: None,
        }
    }

    pub fn residual(&self) -> Poly<F> {
        let mut r = match &self.multiplier {
            Some(u) => u.mul(&self.target),
            None => self.target.clone(),
        };
        for (g, c) in self.generators.iter().zip(&self.cofactors) {
            r = r.sub(&g.mul(c));
        }
        r
    }

    /// Re-expand the identity exactly.
    pub fn verify(&self) -> bool {
        if self.multiplier.as_ref().is_some_and(|u| u.constant_term().is_zero()) {
            return false;
        }
        let r = self.residual();
        match self.residual_order {
            None => r.is_zero(),
            Some(d) => r.low_degree().is_none_or(|l| l >= d),
        }
    }
}

/// Result of dividing by a Gröbner basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Division<F> {
    pub remainder: Poly<F>,
    /// Quotients with respect to the basis elements.
    pub quotients: Vec<Poly<F>>,
    /// Cofactors with respect to the original generators.
    pub cofactors: Vec<Poly<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership<F> {
    pub member: bool,
    pub normal_form: Poly<F>,
    pub certificate: Option<Certificate<F>>,
}

/// Reduced Gröbner basis with cofactors expressing each element in the
/// original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    basis: Vec<Poly<F>>,
    lms: Vec<Monomial>,
    order: MonomialOrder,
    origin: Ideal<F>,
    cofactors: Vec<Vec<Poly<F>>>,
    reducers: Vec<Reducer<F>>,
    bad: BadValues,
    spairs: usize,
}

/// Reduced Gröbner basis of `ideal` under a global `order`.
pub fn groebner<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> Result<GroebnerBasis<F>, GroebnerError> {
    groebner_with_budget(ideal, order, spair_budget())
}

pub fn groebner_with_budget<F: Field>(
    ideal: &Ideal<F>,
    order: &MonomialOrder,
    budget: usize,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    assert!(!order.is_local(), "global Gröbner bases need a global order");
    let out = engine::buchberger(
        ideal.generators(),
        &engine::Options {
            order,
            trunc: None,
            cofactors: true,
            budget,
        },
    )?;
    let mut bad = out.bad;
    for g in ideal.generators() {
        bad.note_poles(g);
    }
    let basis: Vec<Poly<F>> = out.elems.iter().map(|e| e.poly.clone()).collect();
    let lms: Vec<Monomial> = out.elems.iter().map(|e| e.lm.clone()).collect();
    let reducers = basis.iter().zip(&lms).map(|(p, m)| Reducer::new(p, m)).collect();
    Ok(GroebnerBasis {
        basis,
        lms,
        order: order.clone(),
        origin: ideal.clone(),
        cofactors: out.elems.into_iter().map(|e| e.cof).collect(),
        reducers,
        bad,
        spairs: out.spairs,
    })
}

impl<F: Field> GroebnerBasis<F> {
    pub fn basis(&self) -> &[Poly<F>] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn origin(&self) -> &Ideal<F> {
        &self.origin
    }

    /// `basis[i] = sum_j cofactors()[i][j] * origin.generators()[j]`.
    pub fn cofactors(&self) -> &[Vec<Poly<F>>] {
        &self.cofactors
    }

    pub fn bad_values(&self) -> &BadValues {
        &self.bad
    }

    pub fn spairs(&self) -> usize {
        self.spairs
    }

    pub fn nvars(&self) -> usize {
        self.origin.nvars()
    }

    pub fn is_unit(&self) -> bool {
        self.lms.iter().any(Monomial::is_one)
    }

    pub fn divide(&self, p: &Poly<F>) -> Division<F> {
        let red = reduce(p, &self.reducers, &self.order, None, true);
        let n = self.nvars();
        let mut cofactors = vec![Poly::zero(n); self.origin.generators().len()];
        for (q, cof) in red.quotients.iter().zip(&self.cofactors) {
            if q.is_zero() {
                continue;
            }
            for (acc, c) in cofactors.iter_mut().zip(cof) {
                *acc = acc.add(&q.mul(c));
            }
        }
        Division {
            remainder: red.remainder,
            quotients: red.quotients,
            cofactors,
        }
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        reduce(p, &self.reducers, &self.order, None, false).remainder
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn membership(&self, p: &Poly<F>) -> Membership<F> {
        let d = self.divide(p);
        let member = d.remainder.is_zero();
        let certificate = member.then(|| Certificate::exact(p.clone(), self.origin.generators().to_vec(), d.cofactors));
        Membership {
            member,
            normal_form: d.remainder,
            certificate,
        }
    }

    pub fn staircase(&self) -> Staircase {
        Staircase::from_leading(self.nvars(), &self.lms, &self.order, None)
    }

    pub fn quotient_dimension(&self) -> QuotientDim {
        let s = self.staircase();
        if s.is_finite() {
            QuotientDim::Finite(s.len())
        } else {
            QuotientDim::Infinite
        }
    }
}

/// Membership of `p` in the ideal.
pub fn membership<F: Field>(
    p: &Poly<F>,
    ideal: &Ideal<F>,
    order: &MonomialOrder,
) -> Result<Membership<F>, GroebnerError> {
    Ok(groebner(ideal, order)?.membership(p))
}

/// Whether every generator of `a` lies in `b`, with one certificate per
/// generator when it does.
#[derive(Clone, Debug, PartialEq)]
pub struct Inclusion<F> {
    pub holds: bool,
    pub certificates: Vec<Certificate<F>>,
    pub failures: Vec<Poly<F>>,
}

pub fn ideal_inclusion<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    order: &MonomialOrder,
) -> Result<Inclusion<F>, GroebnerError> {
    let gb = groebner(b, order)?;
    Ok(inclusion_in(a.generators(), |p| gb.membership(p)))
}

pub(crate) fn inclusion_in<F: Field>(
    gens: &[Poly<F>],
    mut test: impl FnMut(&Poly<F>) -> Membership<F>,
) -> Inclusion<F> {
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for g in gens {
        let m = test(g);
        match m.certificate {
            Some(c) if m.member => certificates.push(c),
            _ => failures.push(g.clone()),
        }
    }
    Inclusion {
        holds: failures.is_empty(),
        certificates,
        failures,
    }
}
