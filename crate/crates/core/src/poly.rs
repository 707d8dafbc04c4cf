//! Sparse multivariate polynomials over a field.
//!
//! Terms are kept in a map ordered by graded lexicographic order on the
//! fixed variable list (earlier variables are larger), so two polynomials are
//! equal exactly when their term maps are equal. Printing lists terms from the
//! largest monomial down, as `coeff*var1^e1*var2^e2`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Debug, Display};

use crate::field::{Field, Ring};

/// Exponent vector, compared in graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// `Some(self / rhs)` if `rhs` divides `self`.
    pub fn div(&self, rhs: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names plus the coefficient context.
#[derive(Clone, Debug)]
pub struct PolyContext<F: Field> {
    vars: Arc<[String]>,
    coeff: F::Context,
}

impl<F: Field> PartialEq for PolyContext<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars) && self.coeff == other.coeff
    }
}

impl<F: Field> PolyContext<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], coeff: F::Context) -> Self {
        PolyContext { vars: vars.iter().map(|v| v.as_ref().to_string()).collect(), coeff }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coeff_context(&self) -> &F::Context {
        &self.coeff
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The variable `name` as a polynomial; panics if unknown.
    pub fn var(&self, name: &str) -> MultiPoly<F> {
        let i = self.var_index(name).unwrap_or_else(|| panic!("unknown variable `{}`", name));
        let mut e = Monomial::one(self.vars.len());
        e.0[i] = 1;
        MultiPoly::from_term(self, e, F::one(&self.coeff))
    }

    pub fn constant(&self, c: F) -> MultiPoly<F> {
        MultiPoly::from_term(self, Monomial::one(self.vars.len()), c)
    }

    pub fn int(&self, n: i64) -> MultiPoly<F> {
        self.constant(F::from_int(&self.coeff, n))
    }
}

#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    ctx: PolyContext<F>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable `{0}` is not among the polynomial's variables")]
    UnknownVariable(String),
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("polynomial has degree 0 in `{0}`")]
    ConstantInVariable(String),
    #[error("variable `{0}` still occurs in the polynomial")]
    VariableOccurs(String),
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ctx: &PolyContext<F>) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn from_term(ctx: &PolyContext<F>, m: Monomial, c: F) -> Self {
        assert_eq!(m.0.len(), ctx.vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ctx: ctx.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(ctx: &PolyContext<F>, it: I) -> Self {
        let mut p = MultiPoly::zero(ctx);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn poly_context(&self) -> &PolyContext<F> {
        &self.ctx
    }

    pub fn vars(&self) -> &[String] {
        &self.ctx.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(|| F::zero(&self.ctx.coeff))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return MultiPoly::zero(&self.ctx);
        }
        MultiPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(s))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))).collect(),
        }
    }

    pub fn map_coeffs<G: Field, M: Fn(&F) -> G>(&self, ctx: &PolyContext<G>, f: M) -> MultiPoly<G> {
        assert_eq!(ctx.vars, self.ctx.vars);
        MultiPoly::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Substitutes field values for every variable.
    pub fn eval(&self, values: &[F]) -> F {
        assert_eq!(values.len(), self.ctx.vars.len());
        let mut acc = F::zero(&self.ctx.coeff);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    term = term.mul(&v.pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Replaces variable `var` by the polynomial `value` (same context).
    pub fn substitute(&self, var: &str, value: &MultiPoly<F>) -> Result<Self, PolyError> {
        let i = self.ctx.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        assert!(self.ctx == value.ctx, "substitution across polynomial contexts");
        let mut powers: Vec<MultiPoly<F>> = alloc::vec![self.ctx.int(1)];
        let mut out = MultiPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[i] = 0;
            out = out.add(&powers[e].mul_term(&rest, c));
        }
        Ok(out)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, lowest power
    /// first; the coefficients keep the full variable list.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly<F>>, PolyError> {
        let i = self.ctx.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = alloc::vec![MultiPoly::zero(&self.ctx); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut rest = m.clone();
            rest.0[i] = 0;
            out[e].terms.insert(rest, c.clone());
        }
        Ok(out)
    }

    /// Moves the polynomial into the context without `var`; fails if `var` occurs.
    pub fn drop_var(&self, var: &str) -> Result<Self, PolyError> {
        let i = self.ctx.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        if self.terms.keys().any(|m| m.0[i] != 0) {
            return Err(PolyError::VariableOccurs(var.to_string()));
        }
        let vars: Vec<String> = self.ctx.vars.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v.clone()).collect();
        let ctx = PolyContext::new(&vars, self.ctx.coeff.clone());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.remove(i);
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(MultiPoly { ctx, terms })
    }

    /// Same polynomial expressed over a larger variable list containing all current variables.
    pub fn embed(&self, ctx: &PolyContext<F>) -> Self {
        let map: Vec<usize> = self
            .ctx
            .vars
            .iter()
            .map(|v| ctx.var_index(v).unwrap_or_else(|| panic!("variable `{}` missing from target context", v)))
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = alloc::vec![0; ctx.vars.len()];
            for (k, &x) in m.0.iter().enumerate() {
                e[map[k]] = x;
            }
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(ctx, terms)
    }

    /// Largest monomial dividing every term; `None` for the zero polynomial.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| Monomial(acc.0.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect())))
    }

    fn binop(&self, rhs: &Self, negate: bool) -> Self {
        assert!(self.ctx == rhs.ctx, "polynomial context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), if negate { c.neg() } else { c.clone() });
        }
        out
    }
}

impl<F: Field> Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl<F: Field> Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = &self.ctx.vars;
        let terms = self.terms().map(|(m, c)| {
            let mut s = String::new();
            for (v, &e) in vars.iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                if !s.is_empty() {
                    s.push('*');
                }
                s.push_str(v);
                if e > 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
            (c.clone(), s)
        });
        write_terms(f, terms)
    }
}

fn is_rational_literal(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '/');
    let ok = |p: Option<&str>| p.is_some_and(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    let n = parts.next();
    match parts.next() {
        None => ok(n),
        d => ok(n) && ok(d),
    }
}

/// Shared term printer: `c*m + c*m - ...`, coefficient 1 omitted, non-literal
/// coefficients parenthesised.
pub(crate) fn write_terms<R: Ring, I: Iterator<Item = (R, String)>>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let cs = c.to_string();
        let (neg, mag) = if is_rational_literal(&cs) {
            match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            }
        } else {
            (false, alloc::format!("({})", cs))
        };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (mag == "1", mono.is_empty()) {
            (_, true) => f.write_str(&mag)?,
            (true, false) => f.write_str(&mono)?,
            (false, false) => write!(f, "{}*{}", mag, mono)?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<F: Field> Ring for MultiPoly<F> {
    type Context = PolyContext<F>;

    fn context(&self) -> PolyContext<F> {
        self.ctx.clone()
    }
    fn zero(ctx: &PolyContext<F>) -> Self {
        MultiPoly::zero(ctx)
    }
    fn one(ctx: &PolyContext<F>) -> Self {
        ctx.int(1)
    }
    fn from_int(ctx: &PolyContext<F>, n: i64) -> Self {
        ctx.int(n)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().next().unwrap().is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.binop(rhs, false)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.binop(rhs, true)
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert!(self.ctx == rhs.ctx, "polynomial context mismatch");
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = MultiPoly::zero(&self.ctx);
        for (m, c) in &small.terms {
            for (k, v) in &big.terms {
                out.add_term(m.mul(k), c.mul(v));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MultiPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    /// Multivariate division by leading terms; any nonzero remainder means
    /// `rhs` does not divide `self` (leading monomials of multiples are
    /// divisible by the leading monomial of `rhs`).
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        assert!(self.ctx == rhs.ctx, "polynomial context mismatch");
        let (lm, lc) = rhs.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.ctx);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&rhs.mul_term(&qm, &qc));
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::field::Rational;

    fn ctx() -> PolyContext<Rational> {
        PolyContext::new(&["x", "y", "z"], ())
    }

    #[test]
    fn canonical_printing() {
        let c = ctx();
        let (x, y, z) = (c.var("x"), c.var("y"), c.var("z"));
        let p = x.mul(&x).mul(&y).scale(&Rational::from_integer(3)).sub(&z.scale(&Rational::new(1, 2))).add(&c.int(4));
        assert_eq!(p.to_string(), "3*x^2*y - 1/2*z + 4");
        assert_eq!(x.neg().add(&y).to_string(), "-x + y");
        assert_eq!(MultiPoly::zero(&c).to_string(), "0");
    }

    #[test]
    fn grlex_order() {
        let c = ctx();
        let (x, y, z) = (c.var("x"), c.var("y"), c.var("z"));
        let p = z.mul(&z).mul(&z).add(&x.mul(&y)).add(&x.mul(&x)).add(&y);
        assert_eq!(p.to_string(), "z^3 + x^2 + x*y + y");
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let (x, y, z) = (c.var("x"), c.var("y"), c.var("z"));
        let a = x.add(&y).mul(&z.sub(&x));
        let b = x.mul(&y).add(&c.int(3));
        let ab = a.mul(&b);
        assert_eq!(ab.exact_div(&a), Some(b.clone()));
        assert_eq!(ab.exact_div(&b), Some(a.clone()));
        assert_eq!(ab.add(&c.int(1)).exact_div(&a), None);
        assert_eq!(MultiPoly::zero(&c).exact_div(&a), Some(MultiPoly::zero(&c)));
    }

    #[test]
    fn substitution_and_coefficients() {
        let c = ctx();
        let (x, y) = (c.var("x"), c.var("y"));
        let p = x.mul(&x).add(&x.mul(&y)).add(&c.int(1));
        let s = p.substitute("x", &y.add(&c.int(1))).unwrap();
        // (y+1)^2 + (y+1) y + 1
        assert_eq!(s.to_string(), "2*y^2 + 3*y + 2");
        let coeffs = p.coefficients_in("x").unwrap();
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[1], y);
        assert!(p.drop_var("x").is_err());
        assert_eq!(coeffs[1].drop_var("x").unwrap().vars(), ["y", "z"]);
    }
}
