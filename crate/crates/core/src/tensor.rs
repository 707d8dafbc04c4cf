//! Linear maps between tensor products of `V`, `W` and the unit.
//!
//! A map is stored as a matrix indexed `[codomain][domain]`. A basis tensor
//! `e_{i1} ⊗ ... ⊗ e_{ik}` has flat index `i1*3^(k-1) + ... + ik`, so the
//! first factor is the most significant digit and Unit factors contribute
//! no digit.

use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    V,
    W,
    Unit,
}

impl Factor {
    pub fn dim(self) -> usize {
        match self {
            Factor::Unit => 1,
            _ => 3,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            Factor::V => Factor::W,
            Factor::W => Factor::V,
            Factor::Unit => Factor::Unit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Factor>);

impl Signature {
    pub fn new(f: &[Factor]) -> Self {
        Signature(f.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(|f| f.dim()).product()
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        Signature(self.0.iter().chain(&rhs.0).copied().collect())
    }

    /// The signature with Unit factors dropped (empty means the unit itself).
    pub fn squeezed(&self) -> Self {
        Signature(self.0.iter().copied().filter(|&f| f != Factor::Unit).collect())
    }

    pub fn swapped(&self) -> Self {
        Signature(self.0.iter().map(|f| f.swapped()).collect())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|x| match x {
                Factor::V => "V",
                Factor::W => "W",
                Factor::Unit => "1",
            })
            .collect();
        write!(f, "({})", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("cannot compose: codomain {got} of the inner map differs from domain {expected} of the outer map")]
    SignatureMismatch { expected: alloc::string::String, got: alloc::string::String },
    #[error("map is not an endomorphism")]
    NotSquare,
    #[error("entry matrix has shape {rows}x{cols}, signatures need {need_rows}x{need_cols}")]
    BadShape { rows: usize, cols: usize, need_rows: usize, need_cols: usize },
}

#[derive(Clone, PartialEq)]
pub struct TensorMap<F: Field> {
    domain: Signature,
    codomain: Signature,
    m: Matrix<F>,
}

impl<F: Field> fmt::Debug for TensorMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorMap {} -> {} {:?}", self.domain, self.codomain, self.m)
    }
}

impl<F: Field> TensorMap<F> {
    pub fn new(domain: Signature, codomain: Signature, m: Matrix<F>) -> Result<Self, TensorError> {
        if m.rows() != codomain.dim() || m.cols() != domain.dim() {
            return Err(TensorError::BadShape {
                rows: m.rows(),
                cols: m.cols(),
                need_rows: codomain.dim(),
                need_cols: domain.dim(),
            });
        }
        Ok(TensorMap { domain, codomain, m })
    }

    pub fn zero(ctx: &F::Context, domain: Signature, codomain: Signature) -> Self {
        let m = Matrix::zero(ctx, codomain.dim(), domain.dim());
        TensorMap { domain, codomain, m }
    }

    pub fn identity(ctx: &F::Context, sig: Signature) -> Self {
        let m = Matrix::identity(ctx, sig.dim());
        TensorMap { domain: sig.clone(), codomain: sig, m }
    }

    pub fn id_v(ctx: &F::Context) -> Self {
        Self::identity(ctx, Signature::new(&[Factor::V]))
    }

    pub fn id_w(ctx: &F::Context) -> Self {
        Self::identity(ctx, Signature::new(&[Factor::W]))
    }

    pub fn domain(&self) -> &Signature {
        &self.domain
    }

    pub fn codomain(&self) -> &Signature {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn context(&self) -> &F::Context {
        self.m.context()
    }

    /// Entry at (codomain index, domain index).
    pub fn get(&self, cod: usize, dom: usize) -> &F {
        self.m.get(cod, dom)
    }

    pub fn set(&mut self, cod: usize, dom: usize, v: F) {
        self.m.set(cod, dom, v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, TensorError> {
        if inner.codomain != self.domain {
            return Err(TensorError::SignatureMismatch {
                expected: alloc::format!("{}", self.domain),
                got: alloc::format!("{}", inner.codomain),
            });
        }
        let m = self.m.mul(&inner.m).expect("dimensions follow signatures");
        Ok(TensorMap { domain: inner.domain.clone(), codomain: self.codomain.clone(), m })
    }

    pub fn tensor(&self, rhs: &Self) -> Self {
        TensorMap {
            domain: self.domain.concat(&rhs.domain),
            codomain: self.codomain.concat(&rhs.codomain),
            m: self.m.kronecker(&rhs.m),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        TensorMap { domain: self.domain.clone(), codomain: self.codomain.clone(), m: self.m.scale(s) }
    }

    /// Sum of two maps whose signatures agree after dropping Unit factors.
    pub fn add(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.check_same(rhs)?;
        Ok(TensorMap { domain: self.domain.clone(), codomain: self.codomain.clone(), m: self.m.add(&rhs.m).unwrap() })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.add(&rhs.scale(&F::from_int(self.context(), -1)))
    }

    fn check_same(&self, rhs: &Self) -> Result<(), TensorError> {
        if self.domain.squeezed() != rhs.domain.squeezed() || self.codomain.squeezed() != rhs.codomain.squeezed() {
            return Err(TensorError::SignatureMismatch {
                expected: alloc::format!("{} -> {}", self.domain, self.codomain),
                got: alloc::format!("{} -> {}", rhs.domain, rhs.codomain),
            });
        }
        Ok(())
    }

    /// First entry where `self` and `rhs` differ, as `(cod, dom, lhs, rhs)`.
    /// Signatures are compared up to Unit factors.
    pub fn first_difference(&self, rhs: &Self) -> Result<Option<(usize, usize, F, F)>, TensorError> {
        self.check_same(rhs)?;
        for r in 0..self.m.rows() {
            for c in 0..self.m.cols() {
                if self.m.get(r, c) != rhs.m.get(r, c) {
                    return Ok(Some((r, c, self.m.get(r, c).clone(), rhs.m.get(r, c).clone())));
                }
            }
        }
        Ok(None)
    }

    /// `Some(k)` if `self = k * id`.
    pub fn scalar_multiple_of_identity(&self) -> Result<Option<F>, TensorError> {
        if self.domain.squeezed() != self.codomain.squeezed() {
            return Err(TensorError::NotSquare);
        }
        let k = self.m.get(0, 0).clone();
        for r in 0..self.m.rows() {
            for c in 0..self.m.cols() {
                let want = if r == c { &k } else { &F::zero(self.context()) };
                if self.m.get(r, c) != want {
                    return Ok(None);
                }
            }
        }
        Ok(Some(k))
    }

    /// Relabels V and W in both signatures; entries are unchanged.
    pub fn swapped(&self) -> Self {
        TensorMap { domain: self.domain.swapped(), codomain: self.codomain.swapped(), m: self.m.clone() }
    }

    pub fn map_scalars<G: Field, M: Fn(&F) -> G>(&self, ctx: &G::Context, f: M) -> TensorMap<G> {
        TensorMap { domain: self.domain.clone(), codomain: self.codomain.clone(), m: self.m.map(ctx, f) }
    }

    /// Expresses the map in new bases: `s_v` and `s_w` have the new basis
    /// vectors of `V` and `W` as columns in old coordinates.
    pub fn change_basis(&self, s_v: &Matrix<F>, s_w: &Matrix<F>, s_v_inv: &Matrix<F>, s_w_inv: &Matrix<F>) -> Self {
        let ctx = self.context();
        let kron = |sig: &Signature, v: &Matrix<F>, w: &Matrix<F>| {
            sig.0.iter().fold(Matrix::identity(ctx, 1), |acc, f| match f {
                Factor::V => acc.kronecker(v),
                Factor::W => acc.kronecker(w),
                Factor::Unit => acc,
            })
        };
        let sx = kron(&self.domain, s_v, s_w);
        let sy_inv = kron(&self.codomain, s_v_inv, s_w_inv);
        let m = sy_inv.mul(&self.m).unwrap().mul(&sx).unwrap();
        TensorMap { domain: self.domain.clone(), codomain: self.codomain.clone(), m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use proptest::prelude::*;
    use Factor::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn map(dom: &[Factor], cod: &[Factor], e: &[i64]) -> TensorMap<Rational> {
        let (d, c) = (Signature::new(dom), Signature::new(cod));
        let m = Matrix::from_fn(&(), c.dim(), d.dim(), |r, k| q(e[(r * d.dim() + k) % e.len()]));
        TensorMap::new(d, c, m).unwrap()
    }

    #[test]
    fn identities() {
        let id = TensorMap::<Rational>::id_v(&());
        assert_eq!(id.compose(&id).unwrap(), id);
        let vw = TensorMap::<Rational>::id_v(&()).tensor(&TensorMap::id_w(&()));
        assert_eq!(vw, TensorMap::identity(&(), Signature::new(&[V, W])));
        assert_eq!(id.scalar_multiple_of_identity().unwrap(), Some(q(1)));
    }

    #[test]
    fn signature_bookkeeping() {
        let c = map(&[Unit], &[V, W], &[1]);
        let cx = c.tensor(&TensorMap::id_v(&()));
        assert_eq!(cx.domain(), &Signature::new(&[Unit, V]));
        assert_eq!(cx.codomain(), &Signature::new(&[V, W, V]));
        let f = map(&[V], &[V], &[1, 2]);
        let g = map(&[V, V], &[V], &[1]);
        assert_eq!(f.tensor(&g).domain().dim(), 27);
        assert!(f.compose(&g).is_ok());
        assert!(g.compose(&f).is_err());
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(map(&[V], &[V], &[1, 2]).scalar_multiple_of_identity().unwrap(), None);
        let k = TensorMap::<Rational>::identity(&(), Signature::new(&[Unit])).scale(&q(3));
        assert_eq!(k.scalar_multiple_of_identity().unwrap(), Some(q(3)));
        assert!(map(&[V], &[W], &[1]).scalar_multiple_of_identity().is_err());
    }

    fn arb_map(dom: &'static [Factor], cod: &'static [Factor]) -> impl Strategy<Value = TensorMap<Rational>> {
        let n = Signature::new(dom).dim() * Signature::new(cod).dim();
        proptest::collection::vec(-3i64..4, n).prop_map(move |e| map(dom, cod, &e))
    }

    proptest! {
        #[test]
        fn compose_is_associative(f in arb_map(&[V, V], &[W]), g in arb_map(&[W], &[V, V]), h in arb_map(&[V], &[V, V])) {
            let lhs = f.compose(&g).unwrap().compose(&f).unwrap().compose(&h).unwrap();
            let rhs = f.compose(&g.compose(&f.compose(&h).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_is_functorial(f in arb_map(&[V], &[W]), f2 in arb_map(&[V], &[V]), g in arb_map(&[W], &[V]), g2 in arb_map(&[V], &[W])) {
            let lhs = f.tensor(&g).compose(&f2.tensor(&g2)).unwrap();
            let rhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn identity_is_neutral(f in arb_map(&[V, W], &[V])) {
            let id_dom = TensorMap::identity(&(), f.domain().clone());
            let id_cod = TensorMap::identity(&(), f.codomain().clone());
            prop_assert_eq!(f.compose(&id_dom).unwrap(), f.clone());
            prop_assert_eq!(id_cod.compose(&f).unwrap(), f);
        }
    }
}
