//! Sublattices of the truncated Brieskorn module: Q(t)-row spaces over the
//! coordinates `(b-power, standard monomial)` that are closed under `b`.

use thiserror::Error;

use crate::algebra::{MPoly, Monomial, RatFunc};
use crate::brieskorn::{BClass, BrieskornError, FamilyContext};
use crate::linalg::{left_kernel, RowSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("saturation did not stabilize within {steps} steps")]
    NoStabilization { steps: usize },
    #[error("context does not match the expected family: {0}")]
    ContextMismatch(String),
    #[error(transparent)]
    Module(#[from] BrieskornError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    mu: usize,
    n: usize,
    space: RowSpace<RatFunc>,
}

impl Lattice {
    pub fn zero(mu: usize, n: usize) -> Self {
        Lattice {
            mu,
            n,
            space: RowSpace::new(mu * n),
        }
    }

    /// Smallest `b`-closed span containing `gens`.
    pub fn span<'a>(mu: usize, n: usize, gens: impl IntoIterator<Item = &'a BClass>) -> Self {
        let mut l = Lattice::zero(mu, n);
        for g in gens {
            l.add(g);
        }
        l
    }

    pub fn full(ctx: &FamilyContext) -> Self {
        let gens: Vec<BClass> = (0..ctx.mu()).map(|i| ctx.basis(0, i)).collect();
        Lattice::span(ctx.mu(), ctx.b_order(), &gens)
    }

    /// Add `g` and all its `b`-multiples.
    pub fn add(&mut self, g: &BClass) {
        assert!(g.mu() == self.mu && g.order() == self.n, "lattice shape mismatch");
        let mut x = g.clone();
        while !x.is_zero() {
            if !self.space.insert(x.coords().to_vec()) && self.contains(&x.b()) {
                break;
            }
            x = x.b();
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn space(&self) -> &RowSpace<RatFunc> {
        &self.space
    }

    /// Echelon rows as classes.
    pub fn rows(&self) -> Vec<BClass> {
        self.space
            .rows()
            .iter()
            .map(|r| BClass::from_coords(self.mu, self.n, r.clone()))
            .collect()
    }

    /// Rows with pivot in the `b^0` block; together with `b` they generate
    /// the lattice when it contains `b^(N-1)` times itself.
    pub fn generators(&self) -> Vec<BClass> {
        let rows = self.rows();
        let mut out: Vec<BClass> = Vec::new();
        let mut acc = Lattice::zero(self.mu, self.n);
        for r in rows {
            if !acc.contains(&r) {
                acc.add(&r);
                out.push(r);
            }
        }
        out
    }

    pub fn contains(&self, x: &BClass) -> bool {
        self.space.contains(x.coords())
    }

    pub fn contains_lattice(&self, o: &Lattice) -> bool {
        self.space.contains_space(&o.space)
    }

    /// `b` times the lattice.
    pub fn b_times(&self) -> Lattice {
        let shifted: Vec<BClass> = self.rows().iter().map(BClass::b).collect();
        Lattice::span(self.mu, self.n, &shifted)
    }

    /// Projection to the blocks `b^0 .. b^(k-1)`.
    pub fn restrict(&self, k: usize) -> Lattice {
        let rows: Vec<BClass> = self.rows().iter().map(|r| r.restrict(k)).collect();
        Lattice::span(self.mu, k.min(self.n), &rows)
    }

    /// Rank of the `b^j` layer `(L ∩ b^j E + b^(j+1) E) / b^(j+1) E`.
    pub fn layer_ranks(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for &p in self.space.pivots() {
            counts[p / self.mu.max(1)] += 1;
        }
        counts
    }
}

/// `{x in source : nabla(x) in target}`, assuming `b * source` lies in
/// `target`, so that the Leibniz terms never matter.
fn nabla_preimage(ctx: &FamilyContext, source: &Lattice, target: &Lattice) -> Lattice {
    let rows = source.rows();
    let residuals: Vec<Vec<RatFunc>> = rows
        .iter()
        .map(|v| target.space.reduce(ctx.nabla(v).coords()))
        .collect();
    let kernel = left_kernel(&residuals, ctx.dim());
    let gens: Vec<BClass> = kernel
        .iter()
        .map(|c| {
            let mut x = ctx.zero();
            for (ci, v) in c.iter().zip(&rows) {
                if !ci.is_zero() {
                    x = x.add(&v.scale(ci));
                }
            }
            x
        })
        .collect();
    Lattice::span(ctx.mu(), ctx.b_order(), &gens)
}

/// `P = {x : nabla(x) in bE}`.
pub fn compute_p(ctx: &FamilyContext) -> Lattice {
    let e = Lattice::full(ctx);
    nabla_preimage(ctx, &e, &e.b_times())
}

/// Result of the descending chain `L_0 = E`, `L_(k+1) = {x in L_k : nabla(x) in b L_k}`.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub lattice: Lattice,
    /// Index of the first step at which the chain is constant.
    pub steps: usize,
    pub ranks: Vec<usize>,
}

pub fn saturate_g(ctx: &FamilyContext) -> Result<Saturation, LatticeError> {
    saturate_from(ctx, Lattice::full(ctx))
}

/// Largest `b^-1 nabla`-stable sublattice of `start`.
pub fn saturate_from(ctx: &FamilyContext, start: Lattice) -> Result<Saturation, LatticeError> {
    let cap = ctx.dim() + 1;
    let mut cur = start;
    let mut ranks = vec![cur.rank()];
    for k in 0..cap {
        let next = nabla_preimage(ctx, &cur, &cur.b_times());
        let done = next.rank() == cur.rank();
        ranks.push(next.rank());
        cur = next;
        if done {
            return Ok(Saturation {
                lattice: cur,
                steps: k,
                ranks,
            });
        }
    }
    Err(LatticeError::NoStabilization { steps: cap })
}

/// Recompute G two orders higher and compare the blocks `b^0 .. b^k*`.
pub fn confirm_g(ctx: &FamilyContext, sat: &Saturation) -> Result<bool, LatticeError> {
    let n = ctx.b_order();
    let keep = (sat.steps + 1).min(n);
    let higher = ctx.with_order(n + 2)?;
    let g2 = saturate_g(&higher)?;
    Ok(g2.lattice.restrict(keep) == sat.lattice.restrict(keep))
}

/// `nabla(L)` inside `bL`.
pub fn is_stable(ctx: &FamilyContext, l: &Lattice) -> bool {
    let bl = l.b_times();
    l.rows().iter().all(|v| bl.contains(&ctx.nabla(v)))
}

/// Image of `m^k dx`: the span of `[x^beta m dx]` for `|beta| = k` and
/// standard `m`, plus `b` times the image of `m^(k-1) dx`.
pub fn m_power(ctx: &FamilyContext, k: u32) -> Lattice {
    let mut lat = Lattice::full(ctx);
    for level in 1..=k {
        let mut next = lat.b_times();
        for beta in Monomial::of_degree(ctx.nvars(), level) {
            for m in ctx.staircase() {
                next.add(&ctx.reduce_poly(&MPoly::term(beta.mul(m), RatFunc::one())));
            }
        }
        lat = next;
    }
    lat
}

/// A standard monomial spanning a `b^-1 nabla`-invariant line of `G/bG`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantLine {
    pub monomial: Monomial,
    pub coefficient: RatFunc,
}

pub fn kernel_nabla_mod_b(ctx: &FamilyContext, g: &Lattice) -> Vec<InvariantLine> {
    let bg = g.b_times();
    let mut out = Vec::new();
    for (i, m) in ctx.staircase().iter().enumerate() {
        let v = ctx.basis(0, i);
        if !g.contains(&v) {
            continue;
        }
        let Ok(y) = ctx.b_inv_nabla(&v) else {
            continue;
        };
        let c = y.coord(0, i).clone();
        // b^-1 loses the top block
        let rest = y.sub(&v.scale(&c)).truncate(ctx.b_order() - 1);
        if bg.contains(&rest) {
            out.push(InvariantLine {
                monomial: m.clone(),
                coefficient: c,
            });
        }
    }
    out
}

/// One class identity, both sides in coordinates.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub lhs: BClass,
    pub rhs: BClass,
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub checks: Vec<IdentityCheck>,
    /// `lambda` and `rho` in `b^-1 nabla(eps) = lambda eps + rho [1]`.
    pub lambda: RatFunc,
    pub rho: RatFunc,
}

impl ExtensionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn rf_q(p: i64, q: i64) -> RatFunc {
    RatFunc::from_rational(&crate::algebra::q(p, q))
}

/// For `x^4 + y^4 + t x^2 y^2`: adjoin `eps = b^-1 [x^2y^2]` and check
/// `a(eps) = 1/2 b eps` and
/// `b^-1 nabla(eps) = 2t/(4-t^2) eps - 1/(4(4-t^2)) [1]`, together with the
/// class identities they rest on.
pub fn verify_extension_example2(ctx: &FamilyContext) -> Result<ExtensionReport, LatticeError> {
    if ctx.nvars() != 2 {
        return Err(LatticeError::ContextMismatch("expected two variables".into()));
    }
    if ctx.b_order() < 4 {
        return Err(LatticeError::ContextMismatch("need truncation order at least 4".into()));
    }
    let mono = |a: u32, b: u32| MPoly::term(Monomial::new(vec![a, b]), RatFunc::one());
    let cls = |a: u32, b: u32| ctx.reduce_poly(&mono(a, b));
    let t = RatFunc::t();
    let four_minus_t2 = &RatFunc::from_int(4) - &(&t * &t);
    let n = ctx.b_order();
    let mut checks = Vec::new();
    let mut push = |name: &str, lhs: BClass, rhs: BClass, upto: usize| {
        let holds = lhs.eq_mod(&rhs, upto);
        checks.push(IdentityCheck {
            name: name.to_string(),
            holds,
            lhs,
            rhs,
        });
    };

    let x2y2 = cls(2, 2);
    let one = cls(0, 0);
    let a_x2y2 = ctx.a_apply(&x2y2);
    push(
        "a(x^2y^2) = 3/2 b(x^2y^2)",
        a_x2y2.clone(),
        x2y2.b().scale(&rf_q(3, 2)),
        n,
    );

    let lhs = cls(4, 4).scale(&(&RatFunc::from_int(2) * &four_minus_t2));
    let rhs1 = cls(0, 4)
        .scale(&RatFunc::from_int(2))
        .sub(&x2y2.scale(&(&RatFunc::from_int(3) * &t)))
        .b();
    push("2(4-t^2)[x^4y^4] = b(2[y^4] - 3t[x^2y^2])", lhs.clone(), rhs1, n);
    let rhs2 = x2y2
        .scale(&(&RatFunc::from_int(-4) * &t))
        .add(&one.b().scale(&rf_q(1, 2)))
        .b();
    push("2(4-t^2)[x^4y^4] = b(-4t[x^2y^2] + 1/2 b[1])", lhs, rhs2, n);

    // eps = b^-1 X, X = [x^2y^2], is a genuinely new element: X is not in bE
    if ctx.b_inverse(&x2y2).is_ok() {
        return Err(LatticeError::ContextMismatch("[x^2y^2] lies in bE".into()));
    }
    // b^-1 a - a b^-1 = 1, so a(eps) = b^-1(aX - bX); expect 1/2 X = 1/2 b eps
    let a_eps = ctx.b_inverse(&a_x2y2.sub(&x2y2.b()))?;
    push("a(eps) = 1/2 b(eps)", a_eps, x2y2.scale(&rf_q(1, 2)), n - 1);

    // nabla commutes with b and X is t-free, so b^2 b^-1 nabla(eps) = nabla X;
    // read off nabla X = lambda bX + rho b^2 [1]
    let nabla_x = ctx.nabla(&x2y2);
    let i1 = ctx.index_of(&Monomial::new(vec![0, 0])).expect("1 is standard");
    let support = (0..ctx.mu()).find(|&i| !x2y2.coord(0, i).is_zero()).expect("X nonzero");
    let lambda = nabla_x
        .coord(1, support)
        .checked_div(x2y2.coord(0, support))
        .expect("nonzero");
    // X carries its own b-tail, so read rho after removing lambda bX
    let rho = nabla_x.sub(&x2y2.b().scale(&lambda)).coord(2, i1).clone();
    let rebuilt = x2y2.b().scale(&lambda).add(&one.b_pow(2).scale(&rho));
    push(
        "nabla[x^2y^2] = lambda b[x^2y^2] + rho b^2[1]",
        nabla_x.clone(),
        rebuilt,
        n,
    );
    let expect_lambda = (&RatFunc::from_int(2) * &t)
        .checked_div(&four_minus_t2)
        .expect("nonzero");
    let expect_rho = RatFunc::from_int(-1)
        .checked_div(&(&RatFunc::from_int(4) * &four_minus_t2))
        .expect("nonzero");
    let expected = x2y2.b().scale(&expect_lambda).add(&one.b_pow(2).scale(&expect_rho));
    push(
        "b^-1 nabla(eps) = 2t/(4-t^2) eps - 1/(4(4-t^2)) [1]",
        nabla_x,
        expected,
        n,
    );
    Ok(ExtensionReport { checks, lambda, rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rf, MonomialOrder};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn quartic(n: usize, y4: i64) -> FamilyContext {
        let f = MPoly::from_terms(
            2,
            [
                (mono(&[4, 0]), RatFunc::one()),
                (mono(&[0, 4]), RatFunc::from_int(y4)),
                (mono(&[2, 2]), RatFunc::t()),
            ],
        );
        FamilyContext::new(f, vec!["x".into(), "y".into()], MonomialOrder::grevlex(2), n).unwrap()
    }

    #[test]
    fn p_and_g_for_quartic() {
        let ctx = quartic(5, 1);
        let p = compute_p(&ctx);
        let one = ctx.monomial_class(&mono(&[0, 0])).unwrap();
        let x = ctx.monomial_class(&mono(&[1, 0])).unwrap();
        assert!(!p.contains(&one));
        assert!(p.contains(&x));
        assert!(p.contains_lattice(&Lattice::full(&ctx).b_times()));
        let sat = saturate_g(&ctx).unwrap();
        let m = m_power(&ctx, 1);
        assert_eq!(m.rank(), ctx.dim() - 1);
        assert_eq!(sat.lattice, m);
        assert!(is_stable(&ctx, &m));
        assert!(!is_stable(&ctx, &Lattice::full(&ctx)));
        assert!(confirm_g(&ctx, &sat).unwrap());
    }

    #[test]
    fn invariant_lines() {
        let ctx = quartic(5, 1);
        let g = saturate_g(&ctx).unwrap().lattice;
        let lines = kernel_nabla_mod_b(&ctx, &g);
        let c = rf(&[0, 1], &[8, 0, -2]);
        for v in [mono(&[1, 0]), mono(&[0, 1])] {
            let l = lines.iter().find(|l| l.monomial == v).expect("line present");
            assert_eq!(l.coefficient, c);
        }
        assert!(kernel_nabla_mod_b(&ctx, &Lattice::zero(ctx.mu(), ctx.b_order())).is_empty());
    }

    #[test]
    fn extension_identities() {
        let rep = verify_extension_example2(&quartic(6, 1)).unwrap();
        for c in &rep.checks {
            assert!(c.holds, "{}", c.name);
        }
        let bad = verify_extension_example2(&quartic(6, 5)).unwrap();
        assert!(!bad.all_hold());
    }
}
