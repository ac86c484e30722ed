//! Standard bases at the origin, computed in `K[x]/m^D` under a local degree
//! order.
//!
//! The truncation degree `D` is doubled until every monomial of degree
//! `D - 1` is a leading monomial; then `m^(D-1)` lies in the ideal in the
//! local ring (Nakayama) and the truncated basis describes the local
//! quotient exactly.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{BadValues, Field, Monomial, MonomialOrder, Poly};

use super::engine::{self, reduce, Reducer};
use super::{Certificate, GroebnerError, Membership, Staircase};

/// Standard basis of an ideal of finite colength at the origin.
#[derive(Debug)]
pub struct LocalBasis<F> {
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<Poly<F>>,
    /// Exact members of the ideal: `elems[i] = sum_j cof[i][j] * gens[j]`.
    elems: Vec<Poly<F>>,
    lms: Vec<Monomial>,
    cof: Vec<Vec<Poly<F>>>,
    staircase: Staircase,
    corner: u32,
    certified: u32,
    bad: BadValues,
    spairs: usize,
    cache: Mutex<HashMap<u32, Arc<Vec<Reducer<F>>>>>,
}

impl<F: Field> Clone for LocalBasis<F> {
    fn clone(&self) -> Self {
        LocalBasis {
            nvars: self.nvars,
            order: self.order.clone(),
            gens: self.gens.clone(),
            elems: self.elems.clone(),
            lms: self.lms.clone(),
            cof: self.cof.clone(),
            staircase: self.staircase.clone(),
            corner: self.corner,
            certified: self.certified,
            bad: self.bad.clone(),
            spairs: self.spairs,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

/// `p = remainder + sum_j cofactors[j] * gens[j]` modulo `m^precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalDivision<F> {
    pub remainder: Poly<F>,
    pub cofactors: Vec<Poly<F>>,
    pub precision: u32,
}

fn run<F: Field>(
    gens: &[Poly<F>],
    order: &MonomialOrder,
    trunc: u32,
    cofactors: bool,
    budget: usize,
) -> Result<engine::Output<F>, GroebnerError> {
    engine::buchberger(
        gens,
        &engine::Options {
            order,
            trunc: Some(trunc),
            cofactors,
            budget,
        },
    )
}

fn top_layer_covered(nvars: usize, lms: &[Monomial], d: u32) -> bool {
    Monomial::of_degree(nvars, d)
        .iter()
        .all(|m| lms.iter().any(|l| l.divides(m)))
}

impl<F: Field> LocalBasis<F> {
    /// Standard basis of the ideal generated by `gens` in the local ring at
    /// the origin. `order` supplies the tie-break; degree is compared
    /// ascending. Fails with `NotIsolated` once the truncation would exceed
    /// `cap`.
    pub fn compute(nvars: usize, gens: &[Poly<F>], order: &MonomialOrder, cap: u32) -> Result<Self, GroebnerError> {
        Self::compute_with_budget(nvars, gens, order, cap, super::spair_budget())
    }

    pub fn compute_with_budget(
        nvars: usize,
        gens: &[Poly<F>],
        order: &MonomialOrder,
        cap: u32,
        budget: usize,
    ) -> Result<Self, GroebnerError> {
        let order = order.local();
        let gens: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let start = gens.iter().filter_map(Poly::total_degree).max().unwrap_or(0) + 2;
        let mut d = start.max(2);
        loop {
            let d = {
                let cur = d;
                d = cur * 2;
                cur
            };
            if d > cap.max(2) {
                return Err(GroebnerError::NotIsolated { degree: cap });
            }
            let out = run(&gens, &order, d, true, budget)?;
            let lms: Vec<Monomial> = out.elems.iter().map(|e| e.lm.clone()).collect();
            if !top_layer_covered(nvars, &lms, d - 1) {
                continue;
            }
            let staircase = Staircase::from_leading(nvars, &lms, &order, Some(d - 1));
            let corner = staircase
                .monomials()
                .iter()
                .map(Monomial::degree)
                .max()
                .map_or(0, |s| s + 1);
            let mut elems = Vec::with_capacity(out.elems.len());
            let mut cof = Vec::with_capacity(out.elems.len());
            for e in out.elems {
                let mut s = Poly::zero(nvars);
                for (c, g) in e.cof.iter().zip(&gens) {
                    s = s.add(&c.mul(g));
                }
                debug_assert_eq!(s.truncate(d), e.poly);
                elems.push(s);
                cof.push(e.cof);
            }
            let mut bad = out.bad;
            for g in &gens {
                bad.note_poles(g);
            }
            return Ok(LocalBasis {
                nvars,
                order,
                gens,
                elems,
                lms,
                cof,
                staircase,
                corner,
                certified: d,
                bad,
                spairs: out.spairs,
                cache: Mutex::new(HashMap::new()),
            });
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn elements(&self) -> &[Poly<F>] {
        &self.elems
    }

    pub fn element_cofactors(&self) -> &[Vec<Poly<F>>] {
        &self.cof
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    /// Standard monomials, a basis of the local quotient.
    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn colength(&self) -> usize {
        self.staircase.len()
    }

    /// Smallest `c` with `m^c` inside the ideal.
    pub fn corner(&self) -> u32 {
        self.corner
    }

    /// Truncation degree at which the basis was certified.
    pub fn certified_degree(&self) -> u32 {
        self.certified
    }

    pub fn bad_values(&self) -> &BadValues {
        &self.bad
    }

    pub fn spairs(&self) -> usize {
        self.spairs
    }

    fn reducers(&self, precision: u32) -> Arc<Vec<Reducer<F>>> {
        let mut cache = self.cache.lock().expect("reducer cache");
        cache
            .entry(precision)
            .or_insert_with(|| {
                Arc::new(
                    self.elems
                        .iter()
                        .zip(&self.lms)
                        .map(|(s, lm)| Reducer::new(&s.truncate(precision), lm))
                        .collect(),
                )
            })
            .clone()
    }

    /// Division modulo `m^precision`. The remainder is a combination of
    /// standard monomials.
    pub fn divide(&self, p: &Poly<F>, precision: u32) -> LocalDivision<F> {
        let reducers = self.reducers(precision);
        let red = reduce(p, &reducers, &self.order, Some(precision), true);
        let mut cofactors = vec![Poly::zero(self.nvars); self.gens.len()];
        for (h, c) in red.quotients.iter().zip(&self.cof) {
            if h.is_zero() {
                continue;
            }
            for (acc, cj) in cofactors.iter_mut().zip(c) {
                *acc = acc.add(&h.mul(cj).truncate(precision));
            }
        }
        LocalDivision {
            remainder: red.remainder,
            cofactors,
            precision,
        }
    }

    /// Canonical representative of the class of `p` in the local quotient.
    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        let d = self.corner.max(1);
        let reducers = self.reducers(d);
        reduce(p, &reducers, &self.order, Some(d), false).remainder
    }

    /// Membership in the ideal of the local ring. The certificate leaves a
    /// residual in `m^c`, which lies in the ideal.
    pub fn membership(&self, p: &Poly<F>) -> Membership<F> {
        let d = self.corner.max(1);
        let div = self.divide(p, d);
        let member = div.remainder.is_zero();
        let certificate = member.then(|| Certificate {
            target: p.clone(),
            generators: self.gens.clone(),
            cofactors: div.cofactors,
            residual_order: Some(d),
            multiplier: None,
        });
        Membership {
            member,
            normal_form: div.remainder,
            certificate,
        }
    }

    /// Whether all of `m^c` lies in `m^k * I` in the local ring.
    pub fn corner_in_power_multiple(&self, k: u32) -> Result<bool, GroebnerError> {
        let c = self.corner;
        if k == 0 {
            return Ok(true);
        }
        // m^(c+k) = m^k m^c lies in m^k I, so truncating there is exact
        let mk: Vec<Monomial> = Monomial::of_degree(self.nvars, k);
        let mut gens = Vec::with_capacity(mk.len() * self.gens.len());
        for g in &self.gens {
            for m in &mk {
                gens.push(g.mul_term(m, &F::one()));
            }
        }
        let trunc = c + k;
        let out = run(&gens, &self.order, trunc, false, super::spair_budget())?;
        let lms: Vec<Monomial> = out.elems.iter().map(|e| e.lm.clone()).collect();
        Ok(top_layer_covered(self.nvars, &lms, c))
    }

    /// Smallest `e` with `m^c` inside `m^(c-e) I` in the local ring.
    pub fn power_exponent(&self) -> Result<u32, GroebnerError> {
        let c = self.corner;
        let mut best = 0;
        for k in 1..=c {
            if self.corner_in_power_multiple(k)? {
                best = k;
            } else {
                break;
            }
        }
        Ok(c - best)
    }
}
