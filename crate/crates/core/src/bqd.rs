//! Basic quantum SL(3) data and their coherence conditions.
//!
//! Index conventions (bases `x_i` of `V`, `y_α` of `W`, zero based):
//! `A(x_i⊗x_j) = Σ A^α_{ij} y_α` is entry `[α][3i+j]` of the matrix of `A`,
//! `a(y_α) = Σ a^{ij}_α x_i⊗x_j` is entry `[3i+j][α]` of the matrix of `a`,
//! and likewise for the other six maps.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::matrix::{Matrix, MatrixError};
use crate::poly::{Monomial, MultiPoly, PolyContext};
use crate::tensor::{Factor, Signature, TensorError, TensorMap};

use Factor::{Unit, V, W};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BqdError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("base change matrix is singular")]
    Singular,
    #[error("{0}")]
    Tensor(#[from] TensorError),
    #[error("the two expressions for the quantum determinant `{0}` differ")]
    DeterminantMismatch(&'static str),
}

impl From<MatrixError> for BqdError {
    fn from(_: MatrixError) -> Self {
        BqdError::Singular
    }
}

fn sig(f: &[Factor]) -> Signature {
    Signature::new(f)
}

#[derive(Clone, PartialEq)]
pub struct Bqd<F: Field> {
    pub cap_a: TensorMap<F>,
    pub a: TensorMap<F>,
    pub cap_b: TensorMap<F>,
    pub b: TensorMap<F>,
    pub cap_c: TensorMap<F>,
    pub c: TensorMap<F>,
    pub cap_d: TensorMap<F>,
    pub d: TensorMap<F>,
    pub omega: F,
    pub q: F,
}

impl<F: Field> fmt::Debug for Bqd<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bqd").field("A", &self.cap_a).field("a", &self.a).field("omega", &self.omega).field("q", &self.q).finish_non_exhaustive()
    }
}

/// The six Case I.h scalars; `*_p` are the primed ones.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseIhParams<F: Field> {
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
    pub alpha_p: F,
    pub beta_p: F,
    pub gamma_p: F,
}

impl<F: Field> CaseIhParams<F> {
    pub fn context(&self) -> F::Context {
        self.alpha.context()
    }

    /// `γ ≠ 0`, `(α+β)³ + γ³ ≠ 0` and `αα′ + ββ′ + γγ′ = 1`.
    pub fn validate(&self) -> Result<(), BqdError> {
        if self.gamma.is_zero() {
            return Err(BqdError::InvalidParameter("gamma must be nonzero".into()));
        }
        if self.alpha.add(&self.beta).pow(3).add(&self.gamma.pow(3)).is_zero() {
            return Err(BqdError::InvalidParameter("(alpha+beta)^3 + gamma^3 must be nonzero".into()));
        }
        if !self.pairing().is_one() {
            return Err(BqdError::InvalidParameter("alpha*alpha' + beta*beta' + gamma*gamma' must equal 1".into()));
        }
        Ok(())
    }

    pub fn pairing(&self) -> F {
        self.alpha.mul(&self.alpha_p).add(&self.beta.mul(&self.beta_p)).add(&self.gamma.mul(&self.gamma_p))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CaseIhParams<G> {
        CaseIhParams {
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            gamma: f(&self.gamma),
            alpha_p: f(&self.alpha_p),
            beta_p: f(&self.beta_p),
            gamma_p: f(&self.gamma_p),
        }
    }

    /// Normalized Case I.h at parameter `t`: α=α′=0, β=1, γ=−t, β′=1/2, γ′=−1/(2t).
    pub fn normalized(t: &F) -> Result<Self, BqdError> {
        check_t(t)?;
        let ctx = t.context();
        let half = F::from_int(&ctx, 2).inv().unwrap();
        Ok(CaseIhParams {
            alpha: F::zero(&ctx),
            beta: F::one(&ctx),
            gamma: t.neg(),
            alpha_p: F::zero(&ctx),
            beta_p: half.clone(),
            gamma_p: half.div(t).unwrap().neg(),
        })
    }
}

fn check_t<F: Field>(t: &F) -> Result<(), BqdError> {
    if t.is_zero() {
        return Err(BqdError::InvalidParameter("t must be nonzero".into()));
    }
    if t.pow(3).is_one() {
        return Err(BqdError::InvalidParameter("t^3 must differ from 1".into()));
    }
    Ok(())
}

/// The cyclic pair `(A, a)`:
/// `a(y_r) = α x_{r+1}⊗x_{r+2} + β x_{r+2}⊗x_{r+1} + γ x_r⊗x_r` and
/// `A(x_{r+1}⊗x_{r+2}) = α′ y_r`, `A(x_{r+2}⊗x_{r+1}) = β′ y_r`, `A(x_r⊗x_r) = γ′ y_r`.
pub fn cyclic_maps<F: Field>(p: &CaseIhParams<F>) -> (TensorMap<F>, TensorMap<F>) {
    let ctx = p.context();
    let mut cap_a = TensorMap::zero(&ctx, sig(&[V, V]), sig(&[W]));
    let mut a = TensorMap::zero(&ctx, sig(&[W]), sig(&[V, V]));
    for r in 0..3 {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        a.set(3 * r1 + r2, r, p.alpha.clone());
        a.set(3 * r2 + r1, r, p.beta.clone());
        a.set(3 * r + r, r, p.gamma.clone());
        cap_a.set(r, 3 * r1 + r2, p.alpha_p.clone());
        cap_a.set(r, 3 * r2 + r1, p.beta_p.clone());
        cap_a.set(r, 3 * r + r, p.gamma_p.clone());
    }
    (cap_a, a)
}

/// Which concrete family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Ih,
    Ie,
}

impl<F: Field> Bqd<F> {
    /// Type I datum (`W = V*`, canonical pairings, ω = q = 1) with `B`, `b`
    /// obtained from condition (d).
    pub fn type_i(cap_a: TensorMap<F>, a: TensorMap<F>) -> Self {
        let ctx = a.context().clone();
        let mut cap_c = TensorMap::zero(&ctx, sig(&[W, V]), sig(&[Unit]));
        let mut c = TensorMap::zero(&ctx, sig(&[Unit]), sig(&[V, W]));
        let mut cap_d = TensorMap::zero(&ctx, sig(&[V, W]), sig(&[Unit]));
        let mut d = TensorMap::zero(&ctx, sig(&[Unit]), sig(&[W, V]));
        for i in 0..3 {
            cap_c.set(0, 4 * i, F::one(&ctx));
            c.set(4 * i, 0, F::one(&ctx));
            cap_d.set(0, 4 * i, F::one(&ctx));
            d.set(4 * i, 0, F::one(&ctx));
        }
        let omega = F::one(&ctx);
        let id_v = TensorMap::id_v(&ctx);
        let id_w = TensorMap::id_w(&ctx);
        let cap_b = cap_c.tensor(&id_v).compose(&id_w.tensor(&a)).unwrap().scale(&omega);
        let cap_b = squeeze_unit(cap_b, sig(&[W, W]), sig(&[V]));
        let b = cap_a.tensor(&id_w).compose(&id_v.tensor(&c)).unwrap();
        let b = squeeze_unit(b, sig(&[V]), sig(&[W, W]));
        Bqd { cap_a, a, cap_b, b, cap_c, c, cap_d, d, omega: omega.clone(), q: omega }
    }

    pub fn from_params(p: &CaseIhParams<F>) -> Self {
        let (cap_a, a) = cyclic_maps(p);
        Self::type_i(cap_a, a)
    }

    /// Case I.h with α=α′=0, β=1, γ=−t, β′=1/2, γ′=−1/(2t).
    pub fn case_ih(t: &F) -> Result<Self, BqdError> {
        Ok(Self::from_params(&CaseIhParams::normalized(t)?))
    }

    /// Case I.e with λ=1, μ=−t, λ′=1/2, μ′=−1/(2t).
    pub fn case_ie(t: &F) -> Result<Self, BqdError> {
        check_t(t)?;
        let ctx = t.context();
        let half = F::from_int(&ctx, 2).inv().unwrap();
        let p = CaseIhParams {
            alpha: F::one(&ctx),
            beta: t.neg(),
            gamma: F::zero(&ctx),
            alpha_p: half.clone(),
            beta_p: half.div(t).unwrap().neg(),
            gamma_p: F::zero(&ctx),
        };
        Ok(Self::from_params(&p))
    }

    pub fn family(f: Family, t: &F) -> Result<Self, BqdError> {
        match f {
            Family::Ih => Self::case_ih(t),
            Family::Ie => Self::case_ie(t),
        }
    }

    pub fn context(&self) -> F::Context {
        self.omega.context()
    }

    /// `κ = q⁻² + 1 + q²`.
    pub fn kappa(&self) -> F {
        let q2 = self.q.mul(&self.q);
        q2.inv().expect("q nonzero").add(&F::one(&self.context())).add(&q2)
    }

    /// `ρ = (q + q⁻¹)⁻²`.
    pub fn rho(&self) -> F {
        let s = self.q.add(&self.q.inv().expect("q nonzero"));
        s.mul(&s).inv().expect("q + 1/q nonzero")
    }

    /// Reads back the six cyclic parameters; `None` if `a`, `A` do not have the cyclic shape.
    pub fn cyclic_params(&self) -> Option<CaseIhParams<F>> {
        let p = CaseIhParams {
            alpha: self.a.get(5, 0).clone(),
            beta: self.a.get(7, 0).clone(),
            gamma: self.a.get(0, 0).clone(),
            alpha_p: self.cap_a.get(0, 5).clone(),
            beta_p: self.cap_a.get(0, 7).clone(),
            gamma_p: self.cap_a.get(0, 0).clone(),
        };
        let (cap_a, a) = cyclic_maps(&p);
        (cap_a == self.cap_a && a == self.a).then_some(p)
    }

    /// Base change `x′_i = Σ_j g_ij x_j` with the dual basis in `W`, then
    /// rescaling of `(A, a, B, b, C, c, D, d)`, then optionally `V ↔ W`.
    pub fn apply_equivalence(&self, g: &Matrix<F>, rescale: Option<&[F; 8]>, swap: bool) -> Result<Self, BqdError> {
        let g_inv = g.inverse()?;
        let s_v = g.transpose();
        let s_v_inv = g_inv.transpose();
        let (s_w, s_w_inv) = (g_inv, g.clone());
        let cb = |m: &TensorMap<F>| m.change_basis(&s_v, &s_w, &s_v_inv, &s_w_inv);
        let mut maps = [
            cb(&self.cap_a),
            cb(&self.a),
            cb(&self.cap_b),
            cb(&self.b),
            cb(&self.cap_c),
            cb(&self.c),
            cb(&self.cap_d),
            cb(&self.d),
        ];
        if let Some(s) = rescale {
            if s.iter().any(|x| x.is_zero()) {
                return Err(BqdError::InvalidParameter("rescaling factors must be nonzero".into()));
            }
            for (m, k) in maps.iter_mut().zip(s) {
                *m = m.scale(k);
            }
        }
        let [cap_a, a, cap_b, b, cap_c, c, cap_d, d] = maps;
        let out = if swap {
            Bqd {
                cap_a: cap_b.swapped(),
                a: b.swapped(),
                cap_b: cap_a.swapped(),
                b: a.swapped(),
                cap_c: cap_d.swapped(),
                c: d.swapped(),
                cap_d: cap_c.swapped(),
                d: c.swapped(),
                omega: self.omega.clone(),
                q: self.q.clone(),
            }
        } else {
            Bqd { cap_a, a, cap_b, b, cap_c, c, cap_d, d, omega: self.omega.clone(), q: self.q.clone() }
        };
        Ok(out)
    }
}

/// Rewrites a map's signatures (same dimensions) after a composite left Unit factors behind.
fn squeeze_unit<F: Field>(m: TensorMap<F>, dom: Signature, cod: Signature) -> TensorMap<F> {
    TensorMap::new(dom, cod, m.matrix().clone()).expect("same dimensions")
}

/// Identifies one of the twelve coherence equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `(1_V⊗C)(c⊗1_V) = 1_V`
    ALeft,
    /// `(D⊗1_V)(1_V⊗d) = 1_V`
    ARight,
    /// `Aa = 1_W`
    BLeft,
    /// `Bb = 1_V`, the `V ↔ W` mirror of `Aa = 1_W`
    BRight,
    /// `C(A⊗1_V) = ω D(1_V⊗A)`
    CLeft,
    /// `(1_V⊗a)c = ω (a⊗1_V)d`
    CRight,
    /// `ω (C⊗1_V)(1_W⊗a) = B`
    DLeft,
    /// `(A⊗1_W)(1_V⊗c) = b`
    DRight,
    /// `Dc = κ`
    ELeft,
    /// `Cd = κ`
    ERight,
    /// `(1_V⊗A)(a⊗1_V)(A⊗1_V)(1_V⊗a) = ρ(1_{V⊗W} + cD)`
    F,
    /// `(A⊗1_V)(1_V⊗a)(1_V⊗A)(a⊗1_V) = ρ(1_{W⊗V} + dC)`
    G,
}

impl Condition {
    pub const ALL: [Condition; 12] = [
        Condition::ALeft,
        Condition::ARight,
        Condition::BLeft,
        Condition::BRight,
        Condition::CLeft,
        Condition::CRight,
        Condition::DLeft,
        Condition::DRight,
        Condition::ELeft,
        Condition::ERight,
        Condition::F,
        Condition::G,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::ALeft => "a-left",
            Condition::ARight => "a-right",
            Condition::BLeft => "b-left",
            Condition::BRight => "b-right",
            Condition::CLeft => "c-left",
            Condition::CRight => "c-right",
            Condition::DLeft => "d-left",
            Condition::DRight => "d-right",
            Condition::ELeft => "e-left",
            Condition::ERight => "e-right",
            Condition::F => "f",
            Condition::G => "g",
        }
    }
}

/// First entry where the two sides differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<F: Field> {
    pub row: usize,
    pub col: usize,
    pub lhs: F,
    pub rhs: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionRecord<F: Field> {
    pub condition: Condition,
    pub witness: Option<Witness<F>>,
}

impl<F: Field> ConditionRecord<F> {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport<F: Field> {
    pub records: Vec<ConditionRecord<F>>,
    /// Type I data satisfy (a) and (e) automatically; they are verified anyway.
    pub type_i: bool,
}

impl<F: Field> CoherenceReport<F> {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(ConditionRecord::pass)
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass()).count()
    }

    pub fn get(&self, c: Condition) -> &ConditionRecord<F> {
        self.records.iter().find(|r| r.condition == c).expect("all conditions recorded")
    }
}

/// Both sides of one condition.
pub fn condition_sides<F: Field>(b: &Bqd<F>, cond: Condition) -> Result<(TensorMap<F>, TensorMap<F>), TensorError> {
    let ctx = b.context();
    let id_v = TensorMap::id_v(&ctx);
    let id_w = TensorMap::id_w(&ctx);
    let unit = TensorMap::identity(&ctx, sig(&[Unit]));
    let om = &b.omega;
    Ok(match cond {
        Condition::ALeft => (id_v.tensor(&b.cap_c).compose(&b.c.tensor(&id_v))?, id_v),
        Condition::ARight => (b.cap_d.tensor(&id_v).compose(&id_v.tensor(&b.d))?, id_v),
        Condition::BLeft => (b.cap_a.compose(&b.a)?, id_w),
        Condition::BRight => (b.cap_b.compose(&b.b)?, id_v),
        Condition::CLeft => (
            b.cap_c.compose(&b.cap_a.tensor(&id_v))?,
            b.cap_d.compose(&id_v.tensor(&b.cap_a))?.scale(om),
        ),
        Condition::CRight => (
            id_v.tensor(&b.a).compose(&b.c)?,
            b.a.tensor(&id_v).compose(&b.d)?.scale(om),
        ),
        Condition::DLeft => (b.cap_c.tensor(&id_v).compose(&id_w.tensor(&b.a))?.scale(om), b.cap_b.clone()),
        Condition::DRight => (b.cap_a.tensor(&id_w).compose(&id_v.tensor(&b.c))?, b.b.clone()),
        Condition::ELeft => (b.cap_d.compose(&b.c)?, unit.scale(&b.kappa())),
        Condition::ERight => (b.cap_c.compose(&b.d)?, unit.scale(&b.kappa())),
        Condition::F => {
            let lhs = id_v
                .tensor(&b.cap_a)
                .compose(&b.a.tensor(&id_v))?
                .compose(&b.cap_a.tensor(&id_v))?
                .compose(&id_v.tensor(&b.a))?;
            let one = TensorMap::identity(&ctx, sig(&[V, W]));
            (lhs, one.add(&b.c.compose(&b.cap_d)?)?.scale(&b.rho()))
        }
        Condition::G => {
            let lhs = b
                .cap_a
                .tensor(&id_v)
                .compose(&id_v.tensor(&b.a))?
                .compose(&id_v.tensor(&b.cap_a))?
                .compose(&b.a.tensor(&id_v))?;
            let one = TensorMap::identity(&ctx, sig(&[W, V]));
            (lhs, one.add(&b.d.compose(&b.cap_c)?)?.scale(&b.rho()))
        }
    })
}

/// Evaluates all twelve equations entrywise.
pub fn check_coherence<F: Field>(b: &Bqd<F>) -> CoherenceReport<F> {
    let records = Condition::ALL
        .iter()
        .map(|&condition| {
            let witness = match condition_sides(b, condition) {
                Ok((lhs, rhs)) => lhs
                    .first_difference(&rhs)
                    .expect("sides have matching signatures")
                    .map(|(row, col, lhs, rhs)| Witness { row, col, lhs, rhs }),
                // Unreachable for maps with the (1.1) signatures; reported as a failure.
                Err(_) => Some(Witness { row: 0, col: 0, lhs: F::zero(&b.context()), rhs: F::one(&b.context()) }),
            };
            ConditionRecord { condition, witness }
        })
        .collect();
    CoherenceReport { records, type_i: is_type_i(b) }
}

fn is_type_i<F: Field>(b: &Bqd<F>) -> bool {
    let canon = Bqd::type_i(b.cap_a.clone(), b.a.clone());
    b.omega.is_one() && b.q.mul(&b.q).is_one() && canon.cap_c == b.cap_c && canon.c == b.c && canon.cap_d == b.cap_d && canon.d == b.d
}

/// `Q^i_j = c^{iα} D_{jα}` and the claimed inverse `(Q⁻¹)^i_j = d^{αi} C_{αj}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix<F: Field> {
    pub q: TensorMap<F>,
    pub q_inv: TensorMap<F>,
    /// Whether `Q · Q⁻¹ = 1_V`; false signals a violation of condition (a).
    pub inverse_consistent: bool,
}

pub fn q_matrix<F: Field>(b: &Bqd<F>) -> QMatrix<F> {
    let ctx = b.context();
    let mut q = TensorMap::zero(&ctx, sig(&[V]), sig(&[V]));
    let mut q_inv = TensorMap::zero(&ctx, sig(&[V]), sig(&[V]));
    for i in 0..3 {
        for j in 0..3 {
            let mut s = F::zero(&ctx);
            let mut s_inv = F::zero(&ctx);
            for al in 0..3 {
                s = s.add(&b.c.get(3 * i + al, 0).mul(b.cap_d.get(0, 3 * j + al)));
                s_inv = s_inv.add(&b.d.get(3 * al + i, 0).mul(b.cap_c.get(0, 3 * al + j)));
            }
            q.set(i, j, s);
            q_inv.set(i, j, s_inv);
        }
    }
    let prod = q.compose(&q_inv).unwrap();
    let inverse_consistent = prod == TensorMap::id_v(&ctx);
    QMatrix { q, q_inv, inverse_consistent }
}

/// `e = (1⊗a)c`, `E = C(A⊗1)`, and their symmetric parts as cubics.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumDeterminants<F: Field> {
    pub e: TensorMap<F>,
    pub cap_e: TensorMap<F>,
    /// Cubic in `x1, x2, x3`.
    pub s: MultiPoly<F>,
    /// Cubic in `y1, y2, y3`.
    pub cap_s: MultiPoly<F>,
}

pub fn quantum_determinants<F: Field>(b: &Bqd<F>) -> Result<QuantumDeterminants<F>, BqdError> {
    let (e, e2) = condition_sides(b, Condition::CRight)?;
    if e != e2 {
        return Err(BqdError::DeterminantMismatch("e"));
    }
    let (cap_e, cap_e2) = condition_sides(b, Condition::CLeft)?;
    if cap_e != cap_e2 {
        return Err(BqdError::DeterminantMismatch("E"));
    }
    let ctx = b.context();
    let cubic = |names: [&str; 3], coeff: &dyn Fn(usize) -> F| {
        let pc = PolyContext::<F>::new(&names, ctx.clone());
        let terms = (0..27).map(|k| {
            let mut m = Monomial::one(3);
            for idx in [k / 9, (k / 3) % 3, k % 3] {
                m.0[idx] += 1;
            }
            (m, coeff(k))
        });
        MultiPoly::from_terms(&pc, terms)
    };
    let s = cubic(["x1", "x2", "x3"], &|k| e.get(k, 0).clone());
    let cap_s = cubic(["y1", "y2", "y3"], &|k| cap_e.get(0, k).clone());
    Ok(QuantumDeterminants { e, cap_e, s, cap_s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, Ring};
    use crate::ratfunc::RatFunc;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn case_ih_at_two() {
        let b = Bqd::case_ih(&q(2, 1)).unwrap();
        // a(y1) = x3⊗x2 − 2 x1⊗x1
        assert_eq!(b.a.get(7, 0), &q(1, 1));
        assert_eq!(b.a.get(0, 0), &q(-2, 1));
        assert_eq!(b.a.get(5, 0), &q(0, 1));
        let r = check_coherence(&b);
        assert!(r.all_pass(), "{:?}", r);
        assert!(r.type_i);
        assert_eq!(r.records.len(), 12);
    }

    #[test]
    fn case_ie_at_two() {
        let b = Bqd::case_ie(&q(2, 1)).unwrap();
        assert_eq!(b.cap_a.get(0, 0), &q(0, 1));
        // A(x1⊗x2) = λ′ y3
        assert_eq!(b.cap_a.get(2, 1), &q(1, 2));
        assert!(check_coherence(&b).all_pass());
    }

    #[test]
    fn forbidden_parameters() {
        assert!(Bqd::case_ih(&q(1, 1)).is_err());
        assert!(Bqd::case_ie(&q(0, 1)).is_err());
    }

    #[test]
    fn scaled_a_breaks_b_left() {
        let mut b = Bqd::case_ih(&q(2, 1)).unwrap();
        b.cap_a = b.cap_a.scale(&q(2, 1));
        let r = check_coherence(&b);
        assert!(!r.get(Condition::BLeft).pass());
        assert_eq!(b.cap_a.compose(&b.a).unwrap().scalar_multiple_of_identity().unwrap(), Some(q(2, 1)));
    }

    #[test]
    fn generic_cyclic_data_fail_f() {
        let p = CaseIhParams { alpha: q(1, 1), beta: q(2, 1), gamma: q(3, 1), alpha_p: q(1, 1), beta_p: q(0, 1), gamma_p: q(0, 1) };
        let r = check_coherence(&Bqd::from_params(&p));
        assert!(r.get(Condition::BLeft).pass());
        assert!(!r.get(Condition::F).pass());
    }

    #[test]
    fn dc_is_kappa() {
        let b = Bqd::case_ih(&q(2, 1)).unwrap();
        let dc = b.cap_d.compose(&b.c).unwrap();
        assert_eq!(dc.scalar_multiple_of_identity().unwrap(), Some(q(3, 1)));
        assert_eq!(b.kappa(), q(3, 1));
        assert_eq!(b.rho(), q(1, 4));
    }

    #[test]
    fn symbolic_t() {
        let t = RatFunc::t();
        assert!(check_coherence(&Bqd::case_ih(&t).unwrap()).all_pass());
        assert!(check_coherence(&Bqd::case_ie(&t).unwrap()).all_pass());
    }

    #[test]
    fn q_matrix_cases() {
        let b = Bqd::case_ih(&q(3, 1)).unwrap();
        let qm = q_matrix(&b);
        assert_eq!(qm.q, TensorMap::id_v(&()));
        assert!(qm.inverse_consistent);
        let mut b2 = b.clone();
        b2.c = b2.c.scale(&q(2, 1));
        let qm2 = q_matrix(&b2);
        assert_eq!(qm2.q.scalar_multiple_of_identity().unwrap(), Some(q(2, 1)));
        assert!(!qm2.inverse_consistent);
    }

    #[test]
    fn determinant_cubics() {
        let b = Bqd::case_ih(&q(2, 1)).unwrap();
        let qd = quantum_determinants(&b).unwrap();
        // γ Σ x³ + 3(α+β) x1x2x3 with α=0, β=1, γ=−2
        assert_eq!(qd.s.to_string(), "-2*x1^3 + 3*x1*x2*x3 - 2*x2^3 - 2*x3^3");
        let anti = CaseIhParams { alpha: q(1, 1), beta: q(-1, 1), gamma: q(0, 1), alpha_p: q(0, 1), beta_p: q(0, 1), gamma_p: q(0, 1) };
        assert!(quantum_determinants(&Bqd::from_params(&anti)).unwrap().s.is_zero());
    }

    #[test]
    fn swap_keeps_coherence() {
        let b = Bqd::case_ih(&q(2, 1)).unwrap();
        let id = Matrix::identity(&(), 3);
        assert_eq!(b.apply_equivalence(&id, None, false).unwrap(), b);
        let s = b.apply_equivalence(&id, None, true).unwrap();
        assert_eq!(s.cap_a, b.cap_b.swapped());
        assert!(check_coherence(&s).all_pass(), "{:?}", check_coherence(&s));
    }

    fn arb_t() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..8).prop_map(|(n, d)| q(n, d)).prop_filter("valid t", |t| !t.is_zero() && !t.pow(3).is_one())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn families_are_coherent(t in arb_t()) {
            prop_assert!(check_coherence(&Bqd::case_ih(&t).unwrap()).all_pass());
            prop_assert!(check_coherence(&Bqd::case_ie(&t).unwrap()).all_pass());
            prop_assert!(q_matrix(&Bqd::case_ie(&t).unwrap()).q == TensorMap::id_v(&()));
        }

        #[test]
        fn base_change_preserves_coherence(t in arb_t(), e in proptest::collection::vec(-3i64..4, 9)) {
            let g = Matrix::from_fn(&(), 3, 3, |r, c| q(e[3 * r + c] + if r == c { 7 } else { 0 }, 1));
            let b = Bqd::case_ih(&t).unwrap();
            let b2 = b.apply_equivalence(&g, None, false).unwrap();
            prop_assert!(check_coherence(&b2).all_pass());
        }
    }
}
