//! Division and Buchberger's algorithm shared by the global Gröbner bases
//! and the truncated local standard bases.

use std::collections::BTreeMap;

use crate::algebra::{BadValues, Field, Monomial, MonomialOrder, OrderKey, Poly};

use super::GroebnerError;

/// A monic divisor prepared for repeated use.
#[derive(Clone, Debug)]
pub(crate) struct Reducer<F> {
    pub lm: Monomial,
    pub tail: Vec<(Monomial, F)>,
}

impl<F: Field> Reducer<F> {
    /// `p` must be monic with leading monomial `lm` under the order in use.
    pub fn new(p: &Poly<F>, lm: &Monomial) -> Self {
        let tail = p
            .terms()
            .filter(|(m, _)| *m != lm)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Reducer { lm: lm.clone(), tail }
    }
}

/// Result of dividing by a list of reducers.
pub(crate) struct Reduced<F> {
    pub remainder: Poly<F>,
    pub quotients: Vec<Poly<F>>,
}

/// Full reduction of `p`: repeatedly cancel the leading term with the
/// lowest-index reducer whose leading monomial divides it. Terms of degree
/// `>= trunc` are discarded as they appear.
pub(crate) fn reduce<F: Field>(
    p: &Poly<F>,
    reducers: &[Reducer<F>],
    order: &MonomialOrder,
    trunc: Option<u32>,
    want_quotients: bool,
) -> Reduced<F> {
    let n = p.nvars();
    let keep = |m: &Monomial| trunc.is_none_or(|d| m.degree() < d);
    let mut work: BTreeMap<OrderKey, F> = p
        .terms()
        .filter(|(m, _)| keep(m))
        .map(|(m, c)| (order.key(m), c.clone()))
        .collect();
    let mut remainder = Poly::zero(n);
    let mut quotients: Vec<Poly<F>> = if want_quotients {
        vec![Poly::zero(n); reducers.len()]
    } else {
        Vec::new()
    };
    while let Some((key, c)) = work.pop_last() {
        let m = order.monomial(&key);
        let Some(idx) = reducers.iter().position(|r| r.lm.divides(&m)) else {
            remainder.add_term(m, &c);
            continue;
        };
        let r = &reducers[idx];
        let shift = m.quotient(&r.lm);
        for (tm, tc) in &r.tail {
            let mm = tm.mul(&shift);
            if !keep(&mm) {
                continue;
            }
            let k = order.key(&mm);
            let delta = c.mul(tc);
            match work.get_mut(&k) {
                Some(v) => {
                    let s = v.sub(&delta);
                    if s.is_zero() {
                        work.remove(&k);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    work.insert(k, delta.neg());
                }
            }
        }
        if want_quotients {
            quotients[idx].add_term(shift, &c);
        }
    }
    Reduced { remainder, quotients }
}

/// One element of a basis under construction.
#[derive(Clone, Debug)]
pub(crate) struct Elem<F> {
    pub poly: Poly<F>,
    pub lm: Monomial,
    /// `poly = sum_j cof[j] * generator_j` (modulo the truncation).
    pub cof: Vec<Poly<F>>,
}

pub(crate) struct Options<'a> {
    pub order: &'a MonomialOrder,
    pub trunc: Option<u32>,
    pub cofactors: bool,
    pub budget: usize,
}

pub(crate) struct Output<F> {
    pub elems: Vec<Elem<F>>,
    pub bad: BadValues,
    pub spairs: usize,
}

fn truncate<F: Field>(p: Poly<F>, trunc: Option<u32>) -> Poly<F> {
    match trunc {
        Some(d) => p.truncate(d),
        None => p,
    }
}

/// Combine cofactor vectors: `sum_i q_i * cof_i` subtracted from `base`.
fn combine<F: Field>(
    base: Vec<Poly<F>>,
    quotients: &[Poly<F>],
    elems: &[&Elem<F>],
    trunc: Option<u32>,
) -> Vec<Poly<F>> {
    let mut out = base;
    for (q, e) in quotients.iter().zip(elems) {
        if q.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(&e.cof) {
            *o = truncate(o.sub(&q.mul(c)), trunc);
        }
    }
    out
}

/// Make `p` monic, recording the inverted coefficient.
fn monic<F: Field>(p: Poly<F>, cof: Vec<Poly<F>>, order: &MonomialOrder, bad: &mut BadValues) -> Elem<F> {
    let (lm, lc) = p.leading(order).expect("nonzero");
    bad.note(&lc);
    let inv = lc.inv().expect("nonzero leading coefficient");
    let poly = p.scale(&inv);
    let cof = cof.iter().map(|c| c.scale(&inv)).collect();
    Elem { poly, lm, cof }
}

/// Pair selection key: lowest degree first, then smallest in the order.
fn pair_key(order: &MonomialOrder, lcm: &Monomial) -> (u32, OrderKey) {
    (lcm.degree(), order.global().key(lcm))
}

/// Buchberger's algorithm with the product and chain criteria, returning a
/// reduced basis.
pub(crate) fn buchberger<F: Field>(gens: &[Poly<F>], opts: &Options) -> Result<Output<F>, GroebnerError> {
    let order = opts.order;
    let trunc = opts.trunc;
    let ng = gens.len();
    let n = gens.first().map(Poly::nvars).unwrap_or(0);
    let mut bad = BadValues::default();
    let mut elems: Vec<Elem<F>> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    // pending pairs keyed for normal selection
    let mut pairs: BTreeMap<((u32, OrderKey), usize, usize), Monomial> = BTreeMap::new();
    let mut spairs = 0usize;

    let unit_cof = |j: usize| -> Vec<Poly<F>> {
        if !opts.cofactors {
            return Vec::new();
        }
        (0..ng)
            .map(|k| if k == j { Poly::one(n) } else { Poly::zero(n) })
            .collect()
    };

    let insert = |p: Poly<F>,
                  cof: Vec<Poly<F>>,
                  elems: &mut Vec<Elem<F>>,
                  live: &mut Vec<bool>,
                  pairs: &mut BTreeMap<((u32, OrderKey), usize, usize), Monomial>,
                  bad: &mut BadValues| {
        let e = monic(p, cof, order, bad);
        let k = elems.len();
        // chain criterion on pending pairs
        pairs.retain(|&(_, i, j), lcm| {
            !(e.lm.divides(lcm) && elems[i].lm.lcm(&e.lm) != *lcm && elems[j].lm.lcm(&e.lm) != *lcm)
        });
        for i in 0..k {
            if !live[i] {
                continue;
            }
            let lcm = elems[i].lm.lcm(&e.lm);
            if elems[i].lm.coprime(&e.lm) {
                continue;
            }
            if trunc.is_some_and(|d| lcm.degree() >= d) {
                continue;
            }
            pairs.insert((pair_key(order, &lcm), i, k), lcm);
        }
        // elements whose leading monomial is now redundant stay usable as
        // reducers but spawn no further pairs
        for i in 0..k {
            if live[i] && e.lm.divides(&elems[i].lm) && e.lm != elems[i].lm {
                live[i] = false;
            }
        }
        elems.push(e);
        live.push(true);
    };

    for (j, g) in gens.iter().enumerate() {
        let g = truncate(g.clone(), trunc);
        if g.is_zero() {
            continue;
        }
        let reducers: Vec<Reducer<F>> = elems.iter().map(|e| Reducer::new(&e.poly, &e.lm)).collect();
        let red = reduce(&g, &reducers, order, trunc, opts.cofactors);
        if red.remainder.is_zero() {
            continue;
        }
        let cof = if opts.cofactors {
            let refs: Vec<&Elem<F>> = elems.iter().collect();
            combine(unit_cof(j), &red.quotients, &refs, trunc)
        } else {
            Vec::new()
        };
        insert(red.remainder, cof, &mut elems, &mut live, &mut pairs, &mut bad);
    }

    while let Some(((_, i, j), lcm)) = pairs.pop_first() {
        spairs += 1;
        if spairs > opts.budget {
            return Err(GroebnerError::Budget { budget: opts.budget });
        }
        let (ei, ej) = (&elems[i], &elems[j]);
        let si = lcm.quotient(&ei.lm);
        let sj = lcm.quotient(&ej.lm);
        let s = truncate(
            ei.poly.mul_term(&si, &F::one()).sub(&ej.poly.mul_term(&sj, &F::one())),
            trunc,
        );
        let scof: Vec<Poly<F>> = if opts.cofactors {
            ei.cof
                .iter()
                .zip(&ej.cof)
                .map(|(a, b)| truncate(a.mul_term(&si, &F::one()).sub(&b.mul_term(&sj, &F::one())), trunc))
                .collect()
        } else {
            Vec::new()
        };
        if s.is_zero() {
            continue;
        }
        let reducers: Vec<Reducer<F>> = elems.iter().map(|e| Reducer::new(&e.poly, &e.lm)).collect();
        let red = reduce(&s, &reducers, order, trunc, opts.cofactors);
        if red.remainder.is_zero() {
            continue;
        }
        let cof = if opts.cofactors {
            let refs: Vec<&Elem<F>> = elems.iter().collect();
            combine(scof, &red.quotients, &refs, trunc)
        } else {
            Vec::new()
        };
        insert(red.remainder, cof, &mut elems, &mut live, &mut pairs, &mut bad);
    }

    let elems = interreduce(elems, order, trunc, opts.cofactors, &mut bad);
    for e in &elems {
        bad.note_poles(&e.poly);
    }
    Ok(Output { elems, bad, spairs })
}

/// Keep minimal leading monomials and fully reduce tails.
fn interreduce<F: Field>(
    elems: Vec<Elem<F>>,
    order: &MonomialOrder,
    trunc: Option<u32>,
    cofactors: bool,
    bad: &mut BadValues,
) -> Vec<Elem<F>> {
    let mut minimal: Vec<Elem<F>> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        let dominated = elems
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && o.lm.divides(&e.lm) && (o.lm != e.lm || j < i));
        if !dominated {
            minimal.push(e.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Elem<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e)
            .collect();
        let reducers: Vec<Reducer<F>> = others.iter().map(|e| Reducer::new(&e.poly, &e.lm)).collect();
        let e = &minimal[i];
        let red = reduce(&e.poly, &reducers, order, trunc, cofactors);
        let cof = if cofactors {
            combine(e.cof.clone(), &red.quotients, &others, trunc)
        } else {
            Vec::new()
        };
        // the leading term is not divisible by any other leading monomial,
        // so it survives reduction
        out.push(monic(red.remainder, cof, order, bad));
    }
    out
}
