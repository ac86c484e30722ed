use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Field, Rational, ZPoly};

/// Element of Q(t) kept in canonical form.
///
/// Invariants: numerator and denominator are coprime integer polynomials
/// with no common integer content, the denominator has a positive leading
/// coefficient, and zero is stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_poly(ZPoly::constant(BigInt::from(c)))
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        RatFunc::from_poly(ZPoly::monomial(BigInt::one(), 1))
    }

    pub fn from_poly(num: ZPoly) -> Self {
        RatFunc { num, den: ZPoly::one() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        RatFunc::new(ZPoly::constant(q.numer().clone()), ZPoly::constant(q.denom().clone()))
            .expect("rational denominators are nonzero")
    }

    /// `num / den` in canonical form.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RatFunc::canonical(num, den))
    }

    fn canonical(mut num: ZPoly, mut den: ZPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if !den.is_constant() && !num.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on t.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the denominator is 1, i.e. the value lies in Z[t].
    pub fn is_integral_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    /// d/dt
    pub fn derivative(&self) -> Self {
        if self.num.is_constant() && self.den.is_constant() {
            return RatFunc::zero();
        }
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let top = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFunc::canonical(top, self.den.mul(&self.den))
    }

    /// Evaluate at a rational point; errors at poles.
    pub fn eval(&self, t0: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(t0);
        if Zero::is_zero(&d) {
            return Err(AlgebraError::Pole {
                at: t0.clone(),
                value: self.to_string(),
            });
        }
        Ok(self.num.eval(t0) / d)
    }

    /// The constant value, when the function does not depend on t.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(Rational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    /// Canonical `num/den` rendering with both parts expanded.
    pub fn canonical_string(&self) -> String {
        format!("{}/{}", paren(&self.num), paren(&self.den))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatFunc::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

fn paren(p: &ZPoly) -> String {
    let s = p.render("t");
    if p.term_count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.render("t"))
        } else {
            write!(f, "{}/{}", paren(&self.num), paren(&self.den))
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add(&o.num));
            }
            return RatFunc::canonical(self.num.add(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            return RatFunc::canonical(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::canonical(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let (sd, od) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g), o.den.div_exact(&g))
        };
        let num = self.num.mul(&od).add(&o.num.mul(&sd));
        RatFunc::canonical(num, sd.mul(&o.den))
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1), o.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        let num = a.mul(&c);
        let den = b.mul(&d);
        // coprime up to integer content
        let k = num.content().gcd(&den.content());
        let (mut num, mut den) = if k.is_one() {
            (num, den)
        } else {
            (num.div_scalar_exact(&k), den.div_scalar_exact(&k))
        };
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
    fn from_i64(v: i64) -> Self {
        RatFunc::from_int(v)
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::from_rational(q)
    }
    fn singular_factors(&self) -> Vec<ZPoly> {
        [&self.num, &self.den]
            .into_iter()
            .filter(|p| !p.is_constant())
            .map(ZPoly::primitive)
            .collect()
    }
    fn pole_factors(&self) -> Vec<ZPoly> {
        if self.den.is_constant() {
            Vec::new()
        } else {
            vec![self.den.primitive()]
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_unit_constant(&self) -> bool {
        self.is_constant() && !self.is_zero()
    }
}

/// Shorthand used throughout the tests and fixtures: `p(t)/q(t)` from
/// integer coefficient lists, lowest power first.
pub fn rf(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(ZPoly::from_i64s(num), ZPoly::from_i64s(den)).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = rf(&[1], &[4, 0, -1]);
        let b = rf(&[4, 0, -1], &[1]);
        assert_eq!(&a * &b, RatFunc::one());
    }

    #[test]
    fn doubling() {
        let a = rf(&[0, 1], &[8, 0, -2]);
        assert_eq!(&a + &a, rf(&[0, 1], &[4, 0, -1]));
    }

    #[test]
    fn canonical_denominator_sign_and_content() {
        let a = rf(&[0, 2], &[16, 0, -4]);
        assert_eq!(a.numer(), &ZPoly::from_i64s(&[0, -1]));
        assert_eq!(a.denom(), &ZPoly::from_i64s(&[-8, 0, 2]));
        assert_eq!(a.canonical_string(), "-t/(2*t^2 - 8)");
    }

    #[test]
    fn zero_is_zero_over_one() {
        let a = rf(&[0], &[3, 1]);
        assert_eq!(a, RatFunc::zero());
        assert_eq!(a.denom(), &ZPoly::one());
    }

    #[test]
    fn division_by_zero_errors() {
        assert!(RatFunc::one().checked_div(&RatFunc::zero()).is_err());
        assert!(RatFunc::new(ZPoly::one(), ZPoly::zero()).is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dt 1/(4 - t^2) = 2t/(4 - t^2)^2
        let a = rf(&[1], &[4, 0, -1]);
        assert_eq!(a.derivative(), rf(&[0, 2], &[16, 0, -8, 0, 1]));
    }

    #[test]
    fn pole_evaluation_errors() {
        let a = rf(&[1], &[4, 0, -1]);
        assert!(a.eval(&Rational::from_integer(2.into())).is_err());
        assert_eq!(
            a.eval(&Rational::from_integer(1.into())).unwrap(),
            Rational::new(1.into(), 3.into())
        );
    }

    fn arb_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, 1..4)
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
            RatFunc::new(ZPoly::from_i64s(&n), ZPoly::from_i64s(&d)).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn canonicalization_is_idempotent(a in arb_rf()) {
            let again = RatFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn leibniz_rule_for_t_derivative(a in arb_rf(), b in arb_rf()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
