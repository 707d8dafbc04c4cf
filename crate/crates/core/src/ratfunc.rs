//! Rational functions in one parameter `t` with rational coefficients.

use core::fmt::{self, Debug, Display};

use crate::field::{impl_std_ops, Field, Rational, Ring};
use crate::upoly::UPoly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: UPoly<Rational>,
    den: UPoly<Rational>,
}

impl RatFunc {
    /// Builds `num / den`; `None` if `den` is zero.
    pub fn new(num: UPoly<Rational>, den: UPoly<Rational>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero(&()));
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFunc { num: n, den: d })
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        RatFunc {
            num: UPoly::monomial(Rational::one(&()), 1),
            den: UPoly::constant(Rational::one(&())),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        RatFunc { num: UPoly::new(&(), alloc::vec![r]), den: UPoly::constant(Rational::one(&())) }
    }

    pub fn from_poly(num: UPoly<Rational>) -> Self {
        RatFunc { num, den: UPoly::constant(Rational::one(&())) }
    }

    pub fn numer(&self) -> &UPoly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &UPoly<Rational> {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Substitutes a rational value for `t`; `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        self.num.eval(t).div(&d)
    }
}

impl Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

struct InT<'a>(&'a UPoly<Rational>);

impl Display for InT<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_in("t", f)
    }
}

impl Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            self.num.fmt_in("t", f)
        } else {
            write!(f, "({})/({})", InT(&self.num), InT(&self.den))
        }
    }
}

impl Ring for RatFunc {
    type Context = ();

    fn context(&self) {}
    fn zero(_: &()) -> Self {
        RatFunc { num: UPoly::zero(&()), den: UPoly::constant(Rational::one(&())) }
    }
    fn one(_: &()) -> Self {
        Self::from_rational(Rational::one(&()))
    }
    fn from_int(_: &(), n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.is_constant() && self.num.coeff(0).is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone()).unwrap();
        }
        let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RatFunc::new(n, self.den.mul(&rhs.den)).unwrap()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&());
        }
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl_std_ops!(RatFunc);
