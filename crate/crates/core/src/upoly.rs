//! Dense univariate polynomials over a field.

use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F: Field> {
    ctx: F::Context,
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(ctx: &F::Context, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &F::Context) -> Self {
        UPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.context();
        UPoly::new(&ctx, alloc::vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let ctx = c.context();
        let mut coeffs = alloc::vec![F::zero(&ctx); k + 1];
        coeffs[k] = c;
        UPoly::new(&ctx, coeffs)
    }

    pub fn context(&self) -> &F::Context {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect();
        UPoly::new(&self.ctx, c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect();
        UPoly::new(&self.ctx, c)
    }

    pub fn neg(&self) -> Self {
        UPoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        UPoly::new(&self.ctx, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut out = alloc::vec![F::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(&self.ctx, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = alloc::vec![F::zero(&self.ctx); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k].mul(&lead_inv);
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    rem[idx] = rem[idx].sub(&c.mul(dc));
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (UPoly::new(&self.ctx, quot), UPoly::new(&self.ctx, rem))
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&F::from_int(&self.ctx, k as i64)))
            .collect();
        UPoly::new(&self.ctx, c)
    }

    /// Writes the polynomial in `var`, highest degree first.
    pub fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => alloc::string::String::new(),
                    1 => alloc::string::String::from(var),
                    _ => alloc::format!("{}^{}", var, k),
                };
                (c.clone(), mono)
            });
        crate::poly::write_terms(f, terms)
    }
}
