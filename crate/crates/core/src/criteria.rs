//! Checkable hypotheses on a family and their certificates: the inclusion
//! criterion for stability of `M^k`, the lemma for `f = P + tQ`, the test
//! for `G = E`, a Milnor number probe along the parameter, detection of
//! weights, and the relations for `x^p + y^q + z^r + t xyz`.

use std::cell::OnceCell;

use thiserror::Error;

use crate::algebra::{
    q, weighted_degree, BadValues, Field, MPoly, Monomial, MonomialOrder, Poly, QPoly, RatFunc, Rational,
};
use crate::brieskorn::{BrieskornError, FamilyContext};
use crate::groebner::{groebner, groebner_with_budget, Certificate, GroebnerBasis, Ideal, LocalBasis};
use crate::lattice::{self, LatticeError};
use crate::linalg::RowSpace;

/// S-pair budget for the optional global attempt before local methods.
const GLOBAL_ATTEMPT_BUDGET: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CriteriaError {
    #[error("{0} must not depend on the parameter")]
    NotParameterFree(&'static str),
    #[error("P does not have an isolated singularity at the origin")]
    NotIsolated,
    #[error(transparent)]
    Module(#[from] BrieskornError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// How a membership question at the origin was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Exact identity in the polynomial ring.
    Global,
    /// Identity modulo a power of `m` contained in the ideal.
    Truncated,
    /// Identity `u p = sum c_i g_i` with `u(0) != 0`.
    Unit,
    Trivial,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Global => "global",
            Method::Truncated => "truncated",
            Method::Unit => "unit",
            Method::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision<F> {
    pub member: bool,
    pub method: Option<Method>,
    pub certificate: Option<Certificate<F>>,
}

/// Membership in the ideal generated by `gens` in the local ring at the
/// origin. Bases are computed on first use.
pub struct LocalIdeal<F: Field> {
    nvars: usize,
    gens: Vec<Poly<F>>,
    order: MonomialOrder,
    global: OnceCell<Option<GroebnerBasis<F>>>,
    local: OnceCell<Option<LocalBasis<F>>>,
    bad: std::cell::RefCell<BadValues>,
}

impl<F: Field> LocalIdeal<F> {
    pub fn new(nvars: usize, gens: Vec<Poly<F>>, order: &MonomialOrder) -> Self {
        LocalIdeal {
            nvars,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            order: order.global(),
            global: OnceCell::new(),
            local: OnceCell::new(),
            bad: Default::default(),
        }
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn bad_values(&self) -> BadValues {
        self.bad.borrow().clone()
    }

    fn global(&self) -> Option<&GroebnerBasis<F>> {
        self.global
            .get_or_init(|| {
                let budget = GLOBAL_ATTEMPT_BUDGET.min(crate::groebner::spair_budget());
                let gb = groebner_with_budget(&Ideal::new(self.nvars, self.gens.clone()), &self.order, budget).ok();
                if let Some(gb) = &gb {
                    self.bad.borrow_mut().merge(gb.bad_values());
                }
                gb
            })
            .as_ref()
    }

    fn local(&self) -> Option<&LocalBasis<F>> {
        self.local
            .get_or_init(|| {
                let top = self.gens.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
                let cap = 4 * (top + 2);
                let lb = LocalBasis::compute(self.nvars, &self.gens, &self.order, cap).ok();
                if let Some(lb) = &lb {
                    self.bad.borrow_mut().merge(lb.bad_values());
                }
                lb
            })
            .as_ref()
    }

    pub fn member(&self, p: &Poly<F>) -> Decision<F> {
        if p.is_zero() {
            return Decision {
                member: true,
                method: Some(Method::Trivial),
                certificate: Some(Certificate::exact(
                    p.clone(),
                    self.gens.clone(),
                    vec![Poly::zero(self.nvars); self.gens.len()],
                )),
            };
        }
        if self.gens.is_empty() {
            return Decision {
                member: false,
                method: Some(Method::Trivial),
                certificate: None,
            };
        }
        if let Some(gb) = self.global() {
            let m = gb.membership(p);
            if m.member {
                return Decision {
                    member: true,
                    method: Some(Method::Global),
                    certificate: m.certificate,
                };
            }
        }
        if let Some(lb) = self.local() {
            let m = lb.membership(p);
            return Decision {
                member: m.member,
                method: Some(Method::Truncated),
                certificate: m.certificate,
            };
        }
        self.member_by_quotient(p)
    }

    /// `p` lies in the local ideal iff `(I : p)` is not inside `m`.
    fn member_by_quotient(&self, p: &Poly<F>) -> Decision<F> {
        let undecided = Decision {
            member: false,
            method: None,
            certificate: None,
        };
        let Some(gb) = self.global() else {
            return undecided;
        };
        let Some(quotient) = ideal_quotient(self.nvars, &self.gens, p, &self.order) else {
            return undecided;
        };
        let unit = quotient.into_iter().find(|u| !u.constant_term().is_zero());
        let Some(u) = unit else {
            return Decision {
                member: false,
                method: Some(Method::Unit),
                certificate: None,
            };
        };
        self.bad.borrow_mut().note(&u.constant_term());
        let m = gb.membership(&u.mul(p));
        debug_assert!(m.member);
        let certificate = m.certificate.map(|c| Certificate {
            target: p.clone(),
            multiplier: Some(u),
            ..c
        });
        Decision {
            member: certificate.is_some(),
            method: Some(Method::Unit),
            certificate,
        }
    }

    /// Every element of `targets` in the ideal.
    pub fn contains_all(&self, targets: &[Poly<F>]) -> (bool, Vec<Certificate<F>>, Vec<Poly<F>>) {
        let mut certs = Vec::new();
        let mut failures = Vec::new();
        for t in targets {
            let d = self.member(t);
            match d.certificate {
                Some(c) if d.member => certs.push(c),
                _ => failures.push(t.clone()),
            }
        }
        (failures.is_empty(), certs, failures)
    }
}

fn add_var<F: Field>(p: &Poly<F>) -> Poly<F> {
    let n = p.nvars();
    Poly::from_terms(
        n + 1,
        p.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.push(0);
            (Monomial::new(e), c.clone())
        }),
    )
}

fn drop_last_var<F: Field>(p: &Poly<F>) -> Poly<F> {
    let n = p.nvars() - 1;
    Poly::from_terms(
        n,
        p.terms()
            .map(|(m, c)| (Monomial::new(m.exps()[..n].to_vec()), c.clone())),
    )
}

/// Generators of `(I : p)`, from `I ∩ (p)` computed by elimination.
fn ideal_quotient<F: Field>(
    nvars: usize,
    gens: &[Poly<F>],
    p: &Poly<F>,
    order: &MonomialOrder,
) -> Option<Vec<Poly<F>>> {
    let s = Poly::var(nvars + 1, nvars);
    let one_minus_s = Poly::one(nvars + 1).sub(&s);
    let mut lifted: Vec<Poly<F>> = gens.iter().map(|g| s.mul(&add_var(g))).collect();
    lifted.push(one_minus_s.mul(&add_var(p)));
    let elim = MonomialOrder::new(order.kind(), nvars + 1).eliminating(vec![nvars]);
    let budget = GLOBAL_ATTEMPT_BUDGET.min(crate::groebner::spair_budget());
    let gb = groebner_with_budget(&Ideal::new(nvars + 1, lifted), &elim, budget).ok()?;
    let pdiv = groebner(&Ideal::new(nvars, [p.clone()]), &order.global()).ok()?;
    let mut out = Vec::new();
    for e in gb.basis() {
        if e.terms().any(|(m, _)| m.exps()[nvars] > 0) {
            continue;
        }
        let d = pdiv.divide(&drop_last_var(e));
        debug_assert!(d.remainder.is_zero());
        out.push(d.cofactors.into_iter().next()?);
    }
    Some(out)
}

/// One named sub-check of a criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub name: String,
    pub holds: bool,
    pub checks: Vec<Check>,
    pub certificates: Vec<Certificate<RatFunc>>,
    pub bad_t: Vec<Rational>,
}

impl CriterionReport {
    fn new(name: impl Into<String>) -> Self {
        CriterionReport {
            name: name.into(),
            holds: true,
            checks: Vec::new(),
            certificates: Vec::new(),
            bad_t: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// All certificates re-expand.
    pub fn certificates_verify(&self) -> bool {
        self.certificates.iter().all(Certificate::verify)
    }
}

fn monomials(nvars: usize, k: u32) -> Vec<MPoly> {
    Monomial::of_degree(nvars, k)
        .into_iter()
        .map(|m| MPoly::term(m, RatFunc::one()))
        .collect()
}

fn times_m_power(nvars: usize, k: u32, gens: &[MPoly]) -> Vec<MPoly> {
    let ms = monomials(nvars, k);
    let mut out = Vec::with_capacity(ms.len() * gens.len());
    for g in gens {
        for m in &ms {
            out.push(g.mul(m));
        }
    }
    out
}

fn render_failures(ctx_names: &[String], fails: &[MPoly]) -> String {
    if fails.is_empty() {
        return "all certified".to_string();
    }
    let parts: Vec<String> = fails.iter().map(|p| p.render(ctx_names)).collect();
    format!("not contained: {}", parts.join(", "))
}

/// Test `m^k df/dt ⊂ m^(k+1) J` at the origin and, when it holds, check that
/// `M^k` is stable under `b^-1 nabla`.
pub fn estim_criterion(ctx: &FamilyContext, k: u32) -> CriterionReport {
    let n = ctx.nvars();
    let mut rep = CriterionReport::new(format!("estim:{k}"));
    let ideal = LocalIdeal::new(n, times_m_power(n, k + 1, ctx.partials()), ctx.order());
    let targets = times_m_power(n, k, std::slice::from_ref(ctx.dfdt()));
    let (holds, certs, fails) = ideal.contains_all(&targets);
    rep.check("inclusion", holds, render_failures(ctx.names(), &fails));
    rep.certificates = certs;
    if holds {
        let mk = lattice::m_power(ctx, k);
        let stable = lattice::is_stable(ctx, &mk);
        rep.check("M^k stable", stable, format!("rank {}", mk.rank()));
        rep.holds = stable;
    } else {
        rep.holds = false;
    }
    let mut bad = ideal.bad_values();
    bad.merge(ctx.bad_values());
    rep.bad_t = bad.rational_points();
    rep
}

/// For `f = P + tQ`: test `m^(k+1) J(Q) ⊂ m^(k+1) J(P)` and `Q ∈ m J(Q)`,
/// and independently the conclusion `m^k Q ⊂ m^(k+1) J(f)`.
pub fn example1_lemma(p: &MPoly, qq: &MPoly, k: u32, order: &MonomialOrder) -> Result<CriterionReport, CriteriaError> {
    if !p.is_parameter_free() {
        return Err(CriteriaError::NotParameterFree("P"));
    }
    if !qq.is_parameter_free() {
        return Err(CriteriaError::NotParameterFree("Q"));
    }
    let n = p.nvars();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let jp: Vec<MPoly> = (0..n).map(|i| p.derivative(i).expect("index")).collect();
    let jq: Vec<MPoly> = (0..n).map(|i| qq.derivative(i).expect("index")).collect();
    let top = jp.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    if LocalBasis::compute(n, &jp, order, 4 * (top + 2)).is_err() {
        return Err(CriteriaError::NotIsolated);
    }
    let mut rep = CriterionReport::new(format!("lemma:{k}"));
    let hp = LocalIdeal::new(n, times_m_power(n, k + 1, &jp), order);
    let (h1, c1, f1) = hp.contains_all(&times_m_power(n, k + 1, &jq));
    rep.check("m^(k+1) J(Q) in m^(k+1) J(P)", h1, render_failures(&names, &f1));
    let hq = LocalIdeal::new(n, times_m_power(n, 1, &jq), order);
    let d2 = hq.member(qq);
    rep.check(
        "Q in m J(Q)",
        d2.member,
        d2.method.map_or("undecided".to_string(), |m| m.name().to_string()),
    );
    let f = p.add(&qq.mul(&MPoly::constant(n, RatFunc::t())));
    let jf: Vec<MPoly> = (0..n).map(|i| f.derivative(i).expect("index")).collect();
    let hf = LocalIdeal::new(n, times_m_power(n, k + 1, &jf), order);
    let (h3, c3, f3) = hf.contains_all(&times_m_power(n, k, std::slice::from_ref(qq)));
    rep.check("m^k Q in m^(k+1) J(f)", h3, render_failures(&names, &f3));
    rep.certificates = c1;
    rep.certificates.extend(d2.certificate);
    rep.certificates.extend(c3);
    rep.holds = !(h1 && d2.member) || h3;
    let mut bad = hp.bad_values();
    bad.merge(&hq.bad_values());
    bad.merge(&hf.bad_values());
    rep.bad_t = bad.rational_points();
    Ok(rep)
}

/// `df/dt ∈ J`, which is equivalent to `G = E`; optionally compared with the
/// saturated lattice.
pub fn g_equals_e_test(ctx: &FamilyContext, cross_check: bool) -> Result<CriterionReport, CriteriaError> {
    let mut rep = CriterionReport::new("g_equals_e");
    let gb = ctx.groebner_basis();
    let dfdt = ctx.dfdt();
    let global = gb.membership(dfdt);
    let (member, cert) = if global.member {
        (true, global.certificate)
    } else {
        let m = ctx.local_basis().membership(dfdt);
        (m.member, m.certificate)
    };
    rep.check(
        "df/dt in J",
        member,
        if member { "certified" } else { "nonzero normal form" },
    );
    rep.certificates.extend(cert);
    rep.holds = member;
    if cross_check {
        let sat = lattice::saturate_g(ctx)?;
        let full = sat.lattice == lattice::Lattice::full(ctx);
        rep.check("G = E", full, format!("rank {} of {}", sat.lattice.rank(), ctx.dim()));
        rep.check("equivalence", full == member, "");
    }
    rep.bad_t = ctx.bad_t();
    Ok(rep)
}

/// Milnor number at the origin of one specialized fiber.
pub fn fiber_mu(
    f: &MPoly,
    t0: &Rational,
    order: &MonomialOrder,
) -> Result<Option<usize>, crate::algebra::AlgebraError> {
    let g: QPoly = f.specialize(t0)?;
    let n = g.nvars();
    let partials: Vec<QPoly> = (0..n).map(|i| g.derivative(i).expect("index")).collect();
    let top = partials.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
    Ok(LocalBasis::compute(n, &partials, order, 8 * (top + 2))
        .ok()
        .map(|lb| lb.colength()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum SampleOutcome {
    Mu(usize),
    /// Bad parameter value with a degenerate fiber.
    Skipped(String),
}

/// Compare the generic Milnor number with the fibers at `samples`.
pub fn mu_constancy_probe(
    ctx: &FamilyContext,
    samples: &[Rational],
) -> (CriterionReport, Vec<(Rational, SampleOutcome)>) {
    let mut rep = CriterionReport::new("mu_constancy");
    let generic = ctx.mu();
    let bad = ctx.bad_t();
    rep.bad_t = bad.clone();
    rep.check("generic mu", generic > 0, format!("{generic}"));
    if generic == 0 {
        rep.holds = false;
    }
    let mut outcomes = Vec::new();
    for t0 in samples {
        let is_bad = bad.contains(t0);
        let outcome = match fiber_mu(ctx.f(), t0, ctx.order()) {
            Err(e) => SampleOutcome::Skipped(format!("bad value: {e}")),
            Ok(None) if is_bad => SampleOutcome::Skipped("bad value: singularity not isolated".into()),
            Ok(Some(m)) if is_bad && m != generic => SampleOutcome::Skipped(format!("bad value: fiber mu {m}")),
            Ok(Some(m)) => SampleOutcome::Mu(m),
            Ok(None) => SampleOutcome::Skipped("singularity not isolated".into()),
        };
        let ok = match &outcome {
            SampleOutcome::Mu(m) => *m == generic,
            SampleOutcome::Skipped(_) => is_bad,
        };
        rep.check(
            format!("t = {t0}"),
            ok,
            match &outcome {
                SampleOutcome::Mu(m) => format!("mu = {m}"),
                SampleOutcome::Skipped(s) => format!("skipped ({s})"),
            },
        );
        rep.holds &= ok;
        outcomes.push((t0.clone(), outcome));
    }
    (rep, outcomes)
}

/// Rational weights `(w_1..w_n, w_t)` with every term of `f` of weighted
/// degree 1, free weights set to 0. `None` if no such weights exist or a
/// coefficient is not polynomial in `t`.
pub fn quasihomogeneous_detect(f: &MPoly) -> Option<Vec<Rational>> {
    let n = f.nvars();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (m, c) in f.terms() {
        if !c.denom().is_constant() {
            return None;
        }
        for (k, a) in c.numer().coeffs().iter().enumerate() {
            if a == &0.into() {
                continue;
            }
            let mut row: Vec<Rational> = m.exps().iter().map(|&e| q(e as i64, 1)).collect();
            row.push(q(k as i64, 1));
            row.push(q(1, 1));
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return None;
    }
    let space = RowSpace::from_rows(n + 2, &rows);
    if space.pivots().contains(&(n + 1)) {
        return None;
    }
    let mut w = vec![q(0, 1); n + 1];
    for (row, &p) in space.rows().iter().zip(space.pivots()) {
        w[p] = row[n + 1].clone();
    }
    Some(w)
}

/// `a(m) = (sum_i w_i (m_i + 1)) b(m)` for every standard monomial, given
/// weights with `w_t = 0`.
pub fn spectral_identity(ctx: &FamilyContext, w: &[Rational]) -> Vec<(Monomial, bool)> {
    ctx.staircase()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let deg = weighted_degree(m, w) + w[..ctx.nvars()].iter().sum::<Rational>();
            let x = ctx.basis(0, i);
            let ok = ctx.a_apply(&x) == x.b().scale(&RatFunc::from_rational(&deg));
            (m.clone(), ok)
        })
        .collect()
}

/// Relations for `x^p + y^q + z^r + t xyz` modulo `m J` and `m^2 J`.
pub fn example3_relations(ctx: &FamilyContext, p: u32, qq: u32, r: u32) -> CriterionReport {
    let mut rep = CriterionReport::new(format!("relations:{p},{qq},{r}"));
    let n = 3;
    let mono = |e: [u32; 3], c: RatFunc| MPoly::term(Monomial::new(e.to_vec()), c);
    let t = RatFunc::t();
    let alpha = mono([1, 1, 1], RatFunc::one());
    let t_alpha = alpha.mul(&MPoly::constant(n, t.clone()));
    let rho = q(1, p as i64) + q(1, qq as i64) + q(1, r as i64);
    let mj = LocalIdeal::new(n, times_m_power(n, 1, ctx.partials()), ctx.order());
    let m2j = LocalIdeal::new(n, times_m_power(n, 2, ctx.partials()), ctx.order());

    let run = |name: String, ideal: &LocalIdeal<RatFunc>, targets: Vec<MPoly>, rep: &mut CriterionReport| {
        let (holds, certs, fails) = ideal.contains_all(&targets);
        rep.check(name, holds, render_failures(ctx.names(), &fails));
        rep.certificates.extend(certs);
        rep.holds &= holds;
    };
    let powers = [
        ("p x^p", mono([p, 0, 0], RatFunc::from_int(p as i64))),
        ("q y^q", mono([0, qq, 0], RatFunc::from_int(qq as i64))),
        ("r z^r", mono([0, 0, r], RatFunc::from_int(r as i64))),
    ];
    for (name, pw) in powers {
        run(format!("{name} + t xyz in mJ"), &mj, vec![pw.add(&t_alpha)], &mut rep);
    }
    let one_minus_rho = RatFunc::from_rational(&(q(1, 1) - &rho));
    let at_at = ctx.f().sub(&t_alpha.mul(&MPoly::constant(n, one_minus_rho)));
    run("f - (1-rho) t xyz in mJ".into(), &mj, vec![at_at], &mut rep);
    run(
        "m df/dt in m^2 J".into(),
        &m2j,
        times_m_power(n, 1, std::slice::from_ref(ctx.dfdt())),
        &mut rep,
    );
    run(
        "m f in m^2 J".into(),
        &m2j,
        times_m_power(n, 1, std::slice::from_ref(ctx.f())),
        &mut rep,
    );
    let mut bad = mj.bad_values();
    bad.merge(&m2j.bad_values());
    rep.bad_t = bad.rational_points();
    rep
}
