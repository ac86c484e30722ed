#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use abmod::algebra::{q, MPoly, Monomial, MonomialOrder, RatFunc, Rational};
use abmod::brieskorn::{BClass, FamilyContext};
use abmod::cli::{parse_family, parse_polynomial, FamilySpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_ab0d;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

pub fn families_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../families")
}

/// Every family file, sorted by name.
pub fn family_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(families_dir())
        .expect("families directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    v.sort();
    v
}

pub fn load(name: &str) -> FamilySpec {
    let path = families_dir().join(format!("{name}.toml"));
    parse_family(&std::fs::read(&path).expect("family file")).expect("family parses")
}

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn poly(vars: &[&str], text: &str) -> MPoly {
    parse_polynomial(text, &names(vars), "t").expect("polynomial parses")
}

pub fn ctx(vars: &[&str], f: &str, n: usize) -> FamilyContext {
    FamilyContext::new(poly(vars, f), names(vars), MonomialOrder::grevlex(vars.len()), n).expect("context")
}

pub fn quartic(n: usize) -> FamilyContext {
    ctx(&["x", "y"], "x^4 + y^4 + t*x^2*y^2", n)
}

pub fn tpqr(p: u32, qq: u32, r: u32, n: usize) -> FamilyContext {
    ctx(&["x", "y", "z"], &format!("x^{p} + y^{qq} + z^{r} + t*x*y*z"), n)
}

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn rat(v: i64) -> Rational {
    q(v, 1)
}

/// Small element of Q(t): numerator of degree at most 2 over a denominator
/// that is 1 or a linear factor.
pub fn ratfunc(rng: &mut impl Rng) -> RatFunc {
    let num: Vec<i64> = (0..3).map(|_| rng.random_range(-3..=3)).collect();
    let den: Vec<i64> = if rng.random_bool(0.6) {
        vec![1]
    } else {
        vec![rng.random_range(-3..=3), rng.random_range(1..=2)]
    };
    abmod::algebra::rf(&num, &den)
}

/// Polynomial in t with small integer coefficients, never zero.
pub fn t_poly(rng: &mut impl Rng, deg: usize) -> RatFunc {
    loop {
        let num: Vec<i64> = (0..=deg).map(|_| rng.random_range(-3..=3)).collect();
        let r = abmod::algebra::rf(&num, &[1]);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random class with a few nonzero coordinates.
pub fn class(rng: &mut impl Rng, ctx: &FamilyContext) -> BClass {
    let mut x = ctx.zero();
    let terms = rng.random_range(1..=4);
    for _ in 0..terms {
        let j = rng.random_range(0..ctx.b_order());
        let i = rng.random_range(0..ctx.mu());
        x.add_to(j, i, &ratfunc(rng));
    }
    x
}

/// Random polynomial in `n` variables of degree at most `deg`.
pub fn rand_poly(rng: &mut impl Rng, n: usize, deg: u32, terms: usize) -> MPoly {
    let mut p = MPoly::zero(n);
    for _ in 0..terms {
        let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..=deg)).collect();
        let total: u32 = e.iter().sum();
        if total > deg {
            continue;
        }
        p.add_term(Monomial::new(e), &ratfunc(rng));
    }
    p
}

/// Random sparse combination of `gens` with small coefficients in Q[t].
pub fn combination(rng: &mut impl Rng, ctx: &FamilyContext, gens: &[BClass]) -> BClass {
    let mut x = ctx.zero();
    for _ in 0..3 {
        let g = &gens[rng.random_range(0..gens.len())];
        x = x.add(&g.scale(&t_poly(rng, 1)));
    }
    x
}
