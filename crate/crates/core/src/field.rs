//! Coefficient rings: exact rationals, prime fields and the cyclotomic field Q(j).
//!
//! Every scalar type carries an explicit, immutable context (the prime for
//! `Fp`, nothing for the characteristic-zero fields). Arithmetic between two
//! different prime moduli panics; there are no implicit coercions between
//! scalar types, only the explicit conversions `Rational -> Fp` and
//! `RatFunc -> Rational` (substitution).

use alloc::string::{String, ToString};
use core::fmt::{self, Debug, Display};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync {
    type Context: Clone + PartialEq + Debug + Send + Sync;

    fn context(&self) -> Self::Context;
    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    fn from_int(ctx: &Self::Context, n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `Some(q)` with `q * rhs == self`, or `None` when `rhs` does not divide `self`.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.context())
    }

    fn one_like(&self) -> Self {
        Self::one(&self.context())
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

macro_rules! impl_std_ops {
    ($t:ty) => {
        impl core::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                Ring::add(self, rhs)
            }
        }
        impl core::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                Ring::sub(self, rhs)
            }
        }
        impl core::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                Ring::mul(self, rhs)
            }
        }
        impl core::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                Ring::neg(self)
            }
        }
    };
}
pub(crate) use impl_std_ops;

// ---------------------------------------------------------------------------
// Rationals

/// Arbitrary precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Reduction into `F_p`; `None` when `p` divides the denominator.
    pub fn to_fp(&self, modulus: &PrimeModulus) -> Option<Fp> {
        let p = BigInt::from(modulus.p());
        let n = self.numer().mod_floor(&p).to_u64().expect("residue fits u64");
        let d = self.denom().mod_floor(&p).to_u64().expect("residue fits u64");
        if d == 0 {
            return None;
        }
        Fp::from_u64(modulus, n).div(&Fp::from_u64(modulus, d))
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Rational {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let valid = |x: &str, signed: bool| {
            let digits = if signed {
                x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x)
            } else {
                x
            };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(n, true) || !valid(d, false) {
            return Err(err());
        }
        let n: BigInt = n.trim_start_matches('+').parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        Rational::from_bigints(n, d).ok_or_else(err)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Ring for Rational {
    type Context = ();

    fn context(&self) {}
    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }
    fn from_int(_: &(), n: i64) -> Self {
        Rational::from_integer(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
}

impl_std_ops!(Rational);

// ---------------------------------------------------------------------------
// Prime fields (Montgomery representation)

/// An odd prime below 2^62 together with its Montgomery constants.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
    n_prime: u64,
    r2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModulusError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range (odd, 3 <= p < 2^62)")]
    OutOfRange(u64),
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, ModulusError> {
        if p < 3 || p % 2 == 0 || p >= (1u64 << 62) {
            return Err(ModulusError::OutOfRange(p));
        }
        if !crate::primes::is_prime(p) {
            return Err(ModulusError::NotPrime(p));
        }
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Ok(PrimeModulus { p, n_prime: inv.wrapping_neg(), r2 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_prime);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mont_mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }
}

impl Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Element of a prime field, stored in Montgomery form.
#[derive(Clone, Copy)]
pub struct Fp {
    v: u64,
    m: PrimeModulus,
}

impl Fp {
    pub fn from_u64(m: &PrimeModulus, x: u64) -> Self {
        let x = x % m.p;
        Fp { v: m.mont_mul(x, m.r2), m: *m }
    }

    pub fn value(&self) -> u64 {
        self.m.redc(self.v as u128)
    }

    pub fn modulus(&self) -> &PrimeModulus {
        &self.m
    }

    #[inline]
    fn check(&self, rhs: &Self) {
        assert!(self.m.p == rhs.m.p, "prime-field modulus mismatch: {} vs {}", self.m.p, rhs.m.p);
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        self.m.p == other.m.p && self.v == other.v
    }
}
impl Eq for Fp {}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value(), self.m.p)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Ring for Fp {
    type Context = PrimeModulus;

    fn context(&self) -> PrimeModulus {
        self.m
    }
    fn zero(m: &PrimeModulus) -> Self {
        Fp { v: 0, m: *m }
    }
    fn one(m: &PrimeModulus) -> Self {
        Fp::from_u64(m, 1)
    }
    fn from_int(m: &PrimeModulus, n: i64) -> Self {
        let r = (n as i128).rem_euclid(m.p as i128) as u64;
        Fp::from_u64(m, r)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.value() == 1
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = self.v + rhs.v;
        Fp { v: if s >= self.m.p { s - self.m.p } else { s }, m: self.m }
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.m.p - rhs.v };
        Fp { v, m: self.m }
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp { v: self.m.mont_mul(self.v, rhs.v), m: self.m }
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.m.p - self.v }, m: self.m }
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let mut e = self.m.p - 2;
        let mut base = *self;
        let mut acc = Fp::one(&self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }
}

impl_std_ops!(Fp);

// ---------------------------------------------------------------------------
// Q(j), j a primitive cube root of unity

/// `re + im * j` with `j^2 + j + 1 = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qj {
    pub re: Rational,
    pub im: Rational,
}

impl Qj {
    pub fn new(re: Rational, im: Rational) -> Self {
        Qj { re, im }
    }

    pub fn rational(r: Rational) -> Self {
        Qj { re: r, im: Rational::zero(&()) }
    }

    /// The primitive cube root of unity `j`.
    pub fn j() -> Self {
        Qj { re: Rational::zero(&()), im: Rational::one(&()) }
    }

    /// `j^2 = -1 - j`.
    pub fn j2() -> Self {
        Qj { re: Rational::from_integer(-1), im: Rational::from_integer(-1) }
    }

    /// Galois conjugate, exchanging `j` and `j^2`.
    pub fn conj(&self) -> Self {
        Qj { re: self.re.sub(&self.im), im: self.im.neg() }
    }

    pub fn norm(&self) -> Rational {
        self.re.mul(&self.re).sub(&self.re.mul(&self.im)).add(&self.im.mul(&self.im))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.im.is_zero() {
            Some(&self.re)
        } else {
            None
        }
    }
}

impl Debug for Qj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Qj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_str = if im_abs.is_one() { String::from("j") } else { alloc::format!("{}*j", im_abs) };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", im_str)
            } else {
                write!(f, "{}", im_str)
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{} {} {}", self.re, sign, im_str)
        }
    }
}

impl FromStr for Qj {
    type Err = ParseScalarError;

    /// Accepts `r`, `j`, `-j`, `r*j`, `a + b*j`, `a - j`, with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed terms
        let mut terms = alloc::vec::Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut re = Rational::zero(&());
        let mut im = Rational::zero(&());
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (is_j, coeff) = if body == "j" {
                (true, Rational::one(&()))
            } else if let Some(c) = body.strip_suffix("*j") {
                (true, c.parse::<Rational>().map_err(|_| err())?)
            } else {
                (false, body.parse::<Rational>().map_err(|_| err())?)
            };
            let coeff = if neg { coeff.neg() } else { coeff };
            if is_j {
                im = im.add(&coeff);
            } else {
                re = re.add(&coeff);
            }
        }
        Ok(Qj { re, im })
    }
}

impl From<Rational> for Qj {
    fn from(r: Rational) -> Self {
        Qj::rational(r)
    }
}

impl Ring for Qj {
    type Context = ();

    fn context(&self) {}
    fn zero(_: &()) -> Self {
        Qj::rational(Rational::zero(&()))
    }
    fn one(_: &()) -> Self {
        Qj::rational(Rational::one(&()))
    }
    fn from_int(_: &(), n: i64) -> Self {
        Qj::rational(Rational::from_integer(n))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Qj { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Qj { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a + bj)(c + dj) = ac + (ad + bc) j + bd j^2,  j^2 = -1 - j
        let ac = self.re.mul(&rhs.re);
        let bd = self.im.mul(&rhs.im);
        let cross = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Qj { re: ac.sub(&bd), im: cross.sub(&bd) }
    }
    fn neg(&self) -> Self {
        Qj { re: self.re.neg(), im: self.im.neg() }
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
}

impl Field for Qj {
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(Qj { re: c.re.mul(&n), im: c.im.mul(&n) })
    }
}

impl_std_ops!(Qj);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rationals_are_reduced() {
        let r = q(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(4, 2).to_string(), "2");
    }

    #[test]
    fn rational_parse() {
        assert_eq!("-7/3".parse::<Rational>().unwrap(), q(-7, 3));
        assert_eq!(" 12 ".parse::<Rational>().unwrap(), q(12, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let m = PrimeModulus::new(2305843009213693951).unwrap();
        let a = Fp::from_int(&m, -5);
        assert_eq!(a.value(), m.p() - 5);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(Fp::from_int(&m, 7).mul(&Fp::from_int(&m, 9)).value(), 63);
        let half = q(1, 2).to_fp(&m).unwrap();
        assert!(half.add(&half).is_one());
    }

    #[test]
    fn fp_rejects_composites() {
        assert_eq!(PrimeModulus::new(91), Err(ModulusError::NotPrime(91)));
        assert!(matches!(PrimeModulus::new(1 << 62), Err(ModulusError::OutOfRange(_))));
    }

    #[test]
    fn rational_with_bad_denominator_mod_p() {
        let m = PrimeModulus::new(7).unwrap();
        assert!(q(1, 14).to_fp(&m).is_none());
    }

    #[test]
    #[should_panic(expected = "modulus mismatch")]
    fn mixed_moduli_panic() {
        let a = Fp::one(&PrimeModulus::new(7).unwrap());
        let b = Fp::one(&PrimeModulus::new(11).unwrap());
        let _ = a.add(&b);
    }

    #[test]
    fn cube_roots_of_unity() {
        let j = Qj::j();
        assert!(j.pow(3).is_one());
        assert_eq!(j.mul(&j), Qj::j2());
        assert!(Qj::one(&()).add(&j).add(&Qj::j2()).is_zero());
        assert_eq!(j.conj(), Qj::j2());
        let z = "1/2 - 3*j".parse::<Qj>().unwrap();
        assert!(z.mul(&z.inv().unwrap()).is_one());
        assert_eq!(z.to_string(), "1/2 - 3*j");
        assert_eq!("-j".parse::<Qj>().unwrap(), j.neg());
        assert_eq!("2".parse::<Qj>().unwrap().to_string(), "2");
    }
}
