//! Dense univariate polynomials with integer coefficients.
//!
//! These are the numerators and denominators of [`RatFunc`](super::RatFunc).
//! Degrees in the parameter stay small in practice, so a dense
//! little-endian coefficient vector is used.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Integer polynomial `c_0 + c_1 t + ... + c_d t^d`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::from_coeffs(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        ZPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ZPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divide every coefficient by `c`; the division must be exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> ZPoly {
        if c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    fn shift(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder of `self` by `divisor` (up to a constant factor).
    pub fn pseudo_rem(&self, divisor: &ZPoly) -> ZPoly {
        let dd = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lb = divisor.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.lc();
            let g = lr.gcd(&lb);
            let (mr, mb) = (&lb / &g, &lr / &g);
            r = r.scale(&mr).sub(&divisor.shift(dr - dd).scale(&mb));
        }
        r
    }

    /// Exact quotient `self / divisor` over the integers.
    ///
    /// Panics when the division leaves a remainder; callers only divide by
    /// known factors.
    pub fn div_exact(&self, divisor: &ZPoly) -> ZPoly {
        if divisor.is_one() {
            return self.clone();
        }
        let dd = divisor.degree().expect("division by zero polynomial");
        let lb = divisor.lc();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); r.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            assert!(dr >= dd, "inexact polynomial division");
            let (c, rem) = r.lc().div_rem(&lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            r = r.sub(&divisor.shift(dr - dd).scale(&c));
            q[dr - dd] = c;
        }
        ZPoly::from_coeffs(q)
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || other.is_constant() {
            return ZPoly::one();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        if a.is_constant() {
            ZPoly::one()
        } else {
            a.primitive()
        }
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + Rational::from_integer(c.clone());
        }
        acc
    }

    /// All rational roots, sorted and without repetition.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        let mut p = self.primitive();
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            let k = p.coeffs.iter().take_while(|c| c.is_zero()).count();
            p = ZPoly::from_coeffs(p.coeffs[k..].to_vec());
        }
        if p.is_constant() {
            return roots;
        }
        let a0 = p.coeffs[0].abs();
        let an = p.lc().abs();
        let nums = divisors(&a0);
        let dens = divisors(&an);
        for q in &dens {
            for num in &nums {
                if !num.gcd(q).is_one() {
                    continue;
                }
                for sign in [1i32, -1] {
                    let cand = Rational::new(num * BigInt::from(sign), q.clone());
                    if p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Render with the given variable name, highest power first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}*{power}"));
            }
        }
        out
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n` (n > 0). Factors above the trial-division
/// limit are treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (t - 2)(t + 1) and (t - 2)(2t + 3)
        let a = z(&[-2, -1, 1]);
        let b = z(&[-6, -1, 2]);
        assert_eq!(a.gcd(&b), z(&[-2, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(z(&[1, 1]).gcd(&z(&[-1, 1])), ZPoly::one());
    }

    #[test]
    fn exact_division() {
        let a = z(&[-4, 0, 1]);
        assert_eq!(a.div_exact(&z(&[2, 1])), z(&[-2, 1]));
    }

    #[test]
    fn roots_of_four_minus_t_squared() {
        let p = z(&[4, 0, -1]);
        let roots = p.rational_roots();
        assert_eq!(
            roots,
            vec![Rational::from_integer((-2).into()), Rational::from_integer(2.into())]
        );
    }

    #[test]
    fn roots_with_denominators_and_zero() {
        // t^2 (2t - 3)
        let p = z(&[0, 0, -3, 2]);
        let roots = p.rational_roots();
        assert_eq!(roots, vec![Rational::zero(), Rational::new(3.into(), 2.into())]);
    }

    #[test]
    fn render_matches_convention() {
        assert_eq!(z(&[8, 0, -2]).render("t"), "-2*t^2 + 8");
        assert_eq!(z(&[0, 1]).render("t"), "t");
    }
}
