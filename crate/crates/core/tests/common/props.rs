//! Randomized property suites shared by the module tests and the acceptance
//! run. Each one panics on the first counterexample and returns the number
//! of cases checked.

use abmod::algebra::{q, Field, MPoly, Monomial, MonomialOrder, OrderKind, Poly, RatFunc, Rational};
use abmod::brieskorn::{BClass, FamilyContext};
use abmod::criteria::{quasihomogeneous_detect, spectral_identity};
use abmod::groebner::{groebner, Ideal};
use abmod::lattice::{saturate_g, Lattice};
use abmod::linalg::RowSpace;
use rand::Rng;

use super::{class, ctx, family_files, names, poly, quartic, rand_poly, ratfunc, rng, t_poly, tpqr};

const XY: [&str; 2] = ["x", "y"];
const XYZ: [&str; 3] = ["x", "y", "z"];

/// Families used by the randomized checks, at modest truncation orders.
pub fn zoo() -> Vec<FamilyContext> {
    vec![
        quartic(6),
        ctx(&XY, "x^3 + y^3 + t*x*y*(x + y)", 5),
        ctx(&XY, "x^5 + y^3 + t*x^3*y", 4),
        tpqr(3, 4, 5, 3),
    ]
}

/// Every family file with its context, plus two small extra families.
pub fn fixture_families() -> Vec<(String, FamilyContext)> {
    let mut out: Vec<(String, FamilyContext)> = family_files()
        .iter()
        .map(|p| {
            let spec = abmod::cli::parse_family(&std::fs::read(p).unwrap()).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, abmod::cli::context(&spec).unwrap())
        })
        .collect();
    out.push(("scaled A1".into(), ctx(&XY, "(1 + t)*(x^2 + y^2)", 4)));
    out.push(("x^5 + y^3 + t x^3 y".into(), ctx(&XY, "x^5 + y^3 + t*x^3*y", 4)));
    out
}

pub fn commutator() -> usize {
    let mut r = rng(22);
    let mut cases = 0;
    for c in zoo() {
        for _ in 0..15 {
            let x = class(&mut r, &c);
            let lhs = c.a_apply(&c.b_apply(&x)).sub(&c.b_apply(&c.a_apply(&x)));
            assert_eq!(lhs, x.b().b());
            cases += 1;
        }
    }
    cases
}

/// Random element of `K[b]` as a coefficient list.
fn series(r: &mut impl Rng, len: usize) -> Vec<RatFunc> {
    (0..len).map(|_| ratfunc(r)).collect()
}

fn d_series(phi: &[RatFunc], k: usize) -> Vec<RatFunc> {
    let mut out = phi.to_vec();
    for _ in 0..k {
        out = out.iter().map(RatFunc::derivative).collect();
    }
    out
}

fn nabla_pow(c: &FamilyContext, x: &BClass, k: usize) -> BClass {
    (0..k).fold(x.clone(), |y, _| c.nabla(&y))
}

/// `nabla^nu (phi x) = sum_j C(nu, j) b^j phi^(j) nabla^(nu-j) x` for `nu <= 3`;
/// `nu = 1` is the Leibniz rule.
pub fn leibniz() -> usize {
    let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1, |acc, i| acc * (n - i) as i64 / (i + 1) as i64) };
    let mut r = rng(24);
    let mut cases = 0;
    for c in zoo() {
        for _ in 0..13 {
            let x = class(&mut r, &c);
            let phi = series(&mut r, 2);
            for nu in 1..=3 {
                let lhs = nabla_pow(&c, &x.scale_series(&phi), nu);
                let mut rhs = c.zero();
                for j in 0..=nu {
                    let dphi: Vec<RatFunc> = d_series(&phi, j)
                        .iter()
                        .map(|p| p * &RatFunc::from_int(binom(nu, j)))
                        .collect();
                    rhs = rhs.add(&nabla_pow(&c, &x, nu - j).b_pow(j).scale_series(&dphi));
                }
                assert_eq!(lhs, rhs, "nu = {nu}");
            }
            cases += 1;
        }
    }
    cases
}

/// Express a class of `from` in the staircase of `to`.
fn transport(from: &FamilyContext, to: &FamilyContext, x: &BClass) -> BClass {
    let mut out = to.zero();
    for j in 0..from.b_order() {
        for (i, m) in from.staircase().iter().enumerate() {
            let cf = x.coord(j, i);
            if !cf.is_zero() {
                let y = to.reduce_poly(&MPoly::term(m.clone(), RatFunc::one()));
                out = out.add(&y.b_pow(j).scale(cf));
            }
        }
    }
    out
}

/// The class of a form does not depend on the monomial order used to reduce it.
pub fn reduce_order_independence() -> usize {
    let mut r = rng(25);
    let mut cases = 0;
    for (vars, f, n) in [
        (&XY[..], "x^4 + y^4 + t*x^2*y^2", 4),
        (&XY[..], "x^5 + y^3 + t*x^3*y", 3),
        (&XYZ[..], "x^3 + y^3 + z^3 + t*x*y*z", 3),
    ] {
        let nv = vars.len();
        let fp = poly(vars, f);
        let mut ctxs = Vec::new();
        for kind in [OrderKind::GRevLex, OrderKind::GrLex] {
            for prec in MonomialOrder::all_precedences(nv) {
                let o = MonomialOrder::new(kind, nv).with_precedence(prec);
                ctxs.push(FamilyContext::new(fp.clone(), names(vars), o, n).unwrap());
            }
        }
        let base = &ctxs[0];
        for _ in 0..20 {
            let g = rand_poly(&mut r, nv, 7, 5);
            let x = base.reduce_poly(&g);
            for other in &ctxs[1..] {
                assert_eq!(transport(base, other, &x), other.reduce_poly(&g), "{f}");
            }
            cases += 1;
        }
    }
    cases
}

pub fn b_injectivity() -> usize {
    let mut r = rng(26);
    let mut cases = 0;
    for c in zoo() {
        let n = c.b_order();
        for _ in 0..15 {
            let x = class(&mut r, &c);
            assert_eq!(x.b().is_zero(), x.truncate(n - 1).is_zero());
            let top = x.b_pow(n - 1);
            assert!(top.b().is_zero());
            assert!(top.truncate(n - 1).is_zero());
            assert!(c.b_inverse(&x.b()).unwrap().eq_mod(&x, n - 1));
            cases += 1;
        }
    }
    cases
}

fn reexpand<F: Field>(rem: &Poly<F>, gens: &[Poly<F>], cof: &[Poly<F>]) -> Poly<F> {
    gens.iter().zip(cof).fold(rem.clone(), |acc, (g, c)| acc.add(&g.mul(c)))
}

/// Division by a Groebner basis re-expands exactly, both over the basis and
/// over the original generators.
pub fn normal_form_exactness() -> usize {
    let mut r = rng(11);
    let mut cases = 0;
    for (vars, f) in [
        (&XY[..], "x^4 + y^4 + t*x^2*y^2"),
        (&XY[..], "x^3 + y^3 + t*x*y*(x + y)"),
        (&XYZ[..], "x^3 + y^3 + z^3 + t*x*y*z"),
    ] {
        let f = poly(vars, f);
        let j = Ideal::new(vars.len(), (0..vars.len()).map(|i| f.derivative(i).unwrap()));
        let gb = groebner(&j, &MonomialOrder::grevlex(vars.len())).unwrap();
        for _ in 0..20 {
            let p = rand_poly(&mut r, vars.len(), 6, 5);
            let d = gb.divide(&p);
            assert_eq!(reexpand(&d.remainder, j.generators(), &d.cofactors), p);
            assert_eq!(reexpand(&d.remainder, gb.basis(), &d.quotients), p);
            assert_eq!(gb.normal_form(&d.remainder), d.remainder);
            cases += 1;
        }
    }
    cases
}

/// Taylor coefficients of `r` at `t0`, up to `s^(len-1)`.
fn taylor(r: &RatFunc, t0: &Rational, len: usize) -> Vec<Rational> {
    let expand = |p: &abmod::algebra::ZPoly| {
        let mut d = p.clone();
        let mut fact = q(1, 1);
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            if k > 0 {
                fact *= q(k as i64, 1);
                d = d.derivative();
            }
            out.push(d.eval(t0) / fact.clone());
        }
        out
    };
    let a = expand(r.numer());
    let b = expand(r.denom());
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut v = a[k].clone();
        for i in 1..=k {
            v -= &b[i] * &out[k - i];
        }
        out.push(v / b[0].clone());
    }
    out
}

/// Values at `t0` of the solutions of `nabla x = 0` as power series in
/// `s = t - t0`, truncated at `s^depth`.
pub fn horizontal_values(c: &FamilyContext, t0: &Rational, depth: usize) -> Vec<Vec<Rational>> {
    let dim = c.dim();
    let mu = c.mu();
    let lin: Vec<Vec<Vec<Rational>>> = (0..dim)
        .map(|k| {
            let col = c.nabla_linear(&c.basis(k / mu, k % mu));
            col.coords().iter().map(|e| taylor(e, t0, depth)).collect()
        })
        .collect();
    let var = |k: usize, p: usize| k * depth + p;
    let mut eqs = RowSpace::new(dim * depth);
    for row in 0..dim {
        for p in 0..depth - 1 {
            let mut e = vec![q(0, 1); dim * depth];
            for (k, col) in lin.iter().enumerate() {
                for a in 0..=p {
                    let v = &col[row][a];
                    if !Field::is_zero(v) {
                        e[var(k, p - a)] += v;
                    }
                }
            }
            if row >= mu {
                e[var(row - mu, p + 1)] += q(p as i64 + 1, 1);
            }
            eqs.insert(e);
        }
    }
    let pivots = eqs.pivots().to_vec();
    let mut out = Vec::new();
    for free in (0..dim * depth).filter(|j| !pivots.contains(j)) {
        let mut sol = vec![q(0, 1); dim * depth];
        sol[free] = q(1, 1);
        for (rowv, &p) in eqs.rows().iter().zip(&pivots) {
            sol[p] = -rowv[free].clone();
        }
        let x0: Vec<Rational> = (0..dim).map(|k| sol[var(k, 0)].clone()).collect();
        if x0.iter().any(|v| !Field::is_zero(v)) {
            out.push(x0);
        }
    }
    out
}

/// On every fixture family: horizontal sections lie in `G`, and
/// `b^n E ⊂ G` for `n` variables.
pub fn horizontal_and_b_power_in_g() -> usize {
    let mut cases = 0;
    for (name, c) in fixture_families() {
        let c = if c.b_order() > 5 { c.with_order(5).unwrap() } else { c };
        let g = saturate_g(&c).unwrap().lattice;
        let bn = (0..c.nvars()).fold(Lattice::full(&c), |l, _| l.b_times());
        assert!(g.contains_lattice(&bn), "{name}: b^n E in G");

        let bad = c.bad_t();
        let t0 = [3, 5, 7, -3]
            .into_iter()
            .map(|v| q(v, 1))
            .find(|v| !bad.contains(v))
            .unwrap();
        let rows: Vec<Vec<Rational>> = g
            .rows()
            .iter()
            .map(|v| v.coords().iter().map(|e| e.eval(&t0).unwrap()).collect())
            .collect();
        let g0 = RowSpace::from_rows(c.dim(), &rows);
        assert_eq!(g0.rank(), g.rank(), "{name}: G does not specialize at {t0}");
        let sols = horizontal_values(&c, &t0, c.b_order() + 3);
        assert!(!sols.is_empty(), "{name}");
        for x0 in &sols {
            assert!(g0.contains(x0), "{name}: horizontal value outside G");
        }
        // some horizontal section reaches the b^0 block
        assert!(
            sols.iter().any(|x| x[..c.mu()].iter().any(|v| !Field::is_zero(v))),
            "{name}"
        );
        cases += 1;
    }
    cases
}

/// `x^a + y^b + t * (random terms of weighted degree 1)`.
fn random_qh(r: &mut impl Rng) -> (MPoly, u32, u32) {
    let a = r.random_range(2..=5u32);
    let b = r.random_range(2..=5u32);
    let mut f = poly(&XY, &format!("x^{a} + y^{b}"));
    for i in 1..a {
        if (b * (a - i)) % a == 0 && r.random_bool(0.7) {
            let j = b * (a - i) / a;
            let c = t_poly(r, 1);
            f.add_term(Monomial::new(vec![i, j]), &c);
        }
    }
    (f, a, b)
}

/// On random families with detected weights `(1/a, 1/b)` and `w_t = 0`,
/// `a(m) = (w(m) + 1/a + 1/b) b(m)` on every standard monomial.
pub fn spectral() -> usize {
    let mut r = rng(28);
    let mut cases = 0;
    while cases < 50 {
        let (f, a, b) = random_qh(&mut r);
        let Ok(c) = FamilyContext::new(f.clone(), names(&XY), MonomialOrder::grevlex(2), 3) else {
            continue;
        };
        let w = quasihomogeneous_detect(c.f()).expect("weights");
        assert_eq!(
            w,
            vec![q(1, a as i64), q(1, b as i64), q(0, 1)],
            "{}",
            f.render(c.names())
        );
        for (i, m) in c.staircase().iter().enumerate() {
            let deg = q(m.exps()[0] as i64 + 1, a as i64) + q(m.exps()[1] as i64 + 1, b as i64);
            let x = c.basis(0, i);
            assert_eq!(c.a_apply(&x), x.b().scale(&RatFunc::from_rational(&deg)));
        }
        assert!(spectral_identity(&c, &w).iter().all(|(_, ok)| *ok));
        cases += 1;
    }
    cases
}
