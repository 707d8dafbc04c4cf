//! Zhang twists of N²-graded quadratic presentations by a commuting pair of automorphisms.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bqd::{Bqd, BqdError};
use crate::field::Field;
use crate::matrix::{rref, Matrix};
use crate::shape::{shape_generators, shape_presentation, Degree, QuadraticPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("twisting automorphisms do not commute")]
    NotCommuting,
    #[error("twisting automorphism mixes generators of different degrees")]
    NotGraded,
    #[error("twisting automorphism is singular")]
    Singular,
    #[error("generator count {got} does not match the twisting system ({expected})")]
    SizeMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Bqd(#[from] BqdError),
}

/// `τ_(k,l) = τ1^k τ2^l`, each `τi` acting on the generator space (column `g` is the image of `g`).
#[derive(Clone, Debug, PartialEq)]
pub struct TwistingSystem<F: Field> {
    pub tau1: Matrix<F>,
    pub tau2: Matrix<F>,
    degrees: Vec<Degree>,
    inv1: Matrix<F>,
    inv2: Matrix<F>,
}

impl<F: Field> TwistingSystem<F> {
    pub fn new(tau1: Matrix<F>, tau2: Matrix<F>, degrees: &[Degree]) -> Result<Self, TwistError> {
        let n = degrees.len();
        for m in [&tau1, &tau2] {
            if m.rows() != n || m.cols() != n {
                return Err(TwistError::SizeMismatch { got: m.rows(), expected: n });
            }
            for a in 0..n {
                for g in 0..n {
                    if !m.get(a, g).is_zero() && degrees[a] != degrees[g] {
                        return Err(TwistError::NotGraded);
                    }
                }
            }
        }
        if tau1.mul(&tau2).unwrap() != tau2.mul(&tau1).unwrap() {
            return Err(TwistError::NotCommuting);
        }
        let inv1 = tau1.inverse().map_err(|_| TwistError::Singular)?;
        let inv2 = tau2.inverse().map_err(|_| TwistError::Singular)?;
        Ok(TwistingSystem { tau1, tau2, degrees: degrees.to_vec(), inv1, inv2 })
    }

    pub fn identity(ctx: &F::Context, degrees: &[Degree]) -> Self {
        let id = Matrix::identity(ctx, degrees.len());
        Self::new(id.clone(), id, degrees).expect("identity is a twisting system")
    }

    pub fn inverse(&self) -> Self {
        TwistingSystem {
            tau1: self.inv1.clone(),
            tau2: self.inv2.clone(),
            degrees: self.degrees.clone(),
            inv1: self.tau1.clone(),
            inv2: self.tau2.clone(),
        }
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn tau(&self, deg: Degree) -> Matrix<F> {
        let ctx = self.tau1.context().clone();
        let mut m = Matrix::identity(&ctx, self.degrees.len());
        for _ in 0..deg.0 {
            m = self.tau1.mul(&m).unwrap();
        }
        for _ in 0..deg.1 {
            m = self.tau2.mul(&m).unwrap();
        }
        m
    }

    /// Whether both automorphisms map the relation span of `p` onto itself.
    pub fn preserves(&self, p: &QuadraticPresentation<F>) -> bool {
        [&self.tau1, &self.tau2].into_iter().all(|m| p.transform(m) == *p)
    }
}

/// Generator permutation as a matrix: generator `g` goes to `perm[g]`.
pub fn permutation_matrix<F: Field>(ctx: &F::Context, perm: &[usize]) -> Matrix<F> {
    let n = perm.len();
    Matrix::from_fn(ctx, n, n, |a, g| if perm[g] == a { F::one(ctx) } else { F::zero(ctx) })
}

/// `τ1 : x1↦x3, x2↦x1, x3↦x2` and `τ2 : x1↦x2, x2↦x3, x3↦x1`, the same on `y`.
pub fn standard_tau<F: Field>(ctx: &F::Context) -> TwistingSystem<F> {
    let (_, degrees) = shape_generators();
    TwistingSystem::new(
        permutation_matrix(ctx, &[2, 0, 1, 5, 3, 4]),
        permutation_matrix(ctx, &[1, 2, 0, 4, 5, 3]),
        &degrees,
    )
    .expect("standard tau is a twisting system")
}

/// The map `w1 ⊗ … ⊗ wk ↦ w1 ⊗ τ_{d1}(w2) ⊗ τ_{d1+d2}(w3) ⊗ …` on the `n^k` word space,
/// stored by columns: `images[w]` lists the nonzero `(word, coefficient)` pairs of `v(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistMapV<F: Field> {
    pub k: usize,
    pub n: usize,
    pub images: Vec<Vec<(usize, F)>>,
}

impl<F: Field> TwistMapV<F> {
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out: Vec<F> = v.iter().map(|x| x.zero_like()).collect();
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (u, m) in &self.images[w] {
                out[*u] = out[*u].add(&c.mul(m));
            }
        }
        out
    }

    /// `Some(π)` with `v(w) = w'` for `w' = π[w]` when `v` only permutes words.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        self.images
            .iter()
            .map(|img| match img.as_slice() {
                [(u, c)] if c.is_one() => Some(*u),
                _ => None,
            })
            .collect()
    }

    pub fn to_matrix(&self, ctx: &F::Context) -> Matrix<F> {
        let size = self.images.len();
        let mut m = Matrix::zero(ctx, size, size);
        for (w, img) in self.images.iter().enumerate() {
            for (u, c) in img {
                m.set(*u, w, c.clone());
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.as_permutation().is_some_and(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }
}

pub fn v_map<F: Field>(k: usize, ts: &TwistingSystem<F>) -> TwistMapV<F> {
    assert!(k >= 1, "v is defined on words of length at least 1");
    let n = ts.degrees.len();
    let ctx = ts.tau1.context().clone();
    let one = F::one(&ctx);
    let mut taus = alloc::collections::BTreeMap::new();
    let size = n.pow(k as u32);
    let mut images = Vec::with_capacity(size);
    for w in 0..size {
        let letters: Vec<usize> = (0..k).rev().map(|i| (w / n.pow(i as u32)) % n).collect();
        let mut acc: Vec<(usize, F)> = vec![(letters[0], one.clone())];
        let mut deg = ts.degrees[letters[0]];
        for &g in &letters[1..] {
            let tau = taus.entry(deg).or_insert_with(|| ts.tau(deg));
            let col: Vec<(usize, F)> = (0..n).filter(|&a| !tau.get(a, g).is_zero()).map(|a| (a, tau.get(a, g).clone())).collect();
            let mut next = Vec::with_capacity(acc.len() * col.len());
            for (u, c) in &acc {
                for (a, m) in &col {
                    next.push((u * n + a, c.mul(m)));
                }
            }
            acc = next;
            deg = (deg.0 + ts.degrees[g].0, deg.1 + ts.degrees[g].1);
        }
        images.push(acc);
    }
    TwistMapV { k, n, images }
}

/// `T(A1)/(v⁻¹(R))`: the presentation of the twisted algebra with `x * y = x · τ_{deg x}(y)`.
pub fn twist_presentation<F: Field>(p: &QuadraticPresentation<F>, ts: &TwistingSystem<F>) -> Result<QuadraticPresentation<F>, TwistError> {
    if p.degrees() != ts.degrees() {
        return Err(TwistError::SizeMismatch { got: p.num_generators(), expected: ts.degrees.len() });
    }
    let v_inv = v_map(2, &ts.inverse());
    let n = p.num_generators();
    let rows: Vec<Vec<F>> = p.relations().rows.iter().map(|r| v_inv.apply(r)).collect();
    let span = rref(p.context(), rows, n * n);
    Ok(QuadraticPresentation::new(p.context(), p.names(), p.degrees(), span.rows).expect("twist preserves the grading"))
}

/// Renaming `y1 ↦ y3, y2 ↦ y1, y3 ↦ y2`: undoes `y1, y2, y3 → y2, y3, y1`.
pub const Y_UNRENAME: [usize; 6] = [0, 1, 2, 5, 3, 4];

/// The untwisted Case I.h relations: `x3x1 = t x1x3`, `t y2y1 = y1y2`, nine
/// exchange relations and `x1y3 + x2y1 + x3y2 = 0` (with cyclic images).
pub fn untwisted_display<F: Field>(t: &F) -> QuadraticPresentation<F> {
    let ctx = t.context();
    let one = F::one(&ctx);
    let m1 = one.neg();
    let mt = t.neg();
    let (names, degrees) = shape_generators();
    let (x1, x2, x3, y1, y2, y3) = (0, 1, 2, 3, 4, 5);
    let r = |a: (&F, usize, usize), b: (&F, usize, usize)| vec![(a.0.clone(), a.1, a.2), (b.0.clone(), b.1, b.2)];
    let rels = vec![
        r((&one, x3, x1), (&mt, x1, x3)),
        r((&one, x1, x2), (&mt, x2, x1)),
        r((&one, x2, x3), (&mt, x3, x2)),
        r((t, y2, y1), (&m1, y1, y2)),
        r((t, y3, y2), (&m1, y2, y3)),
        r((t, y1, y3), (&m1, y3, y1)),
        r((&one, y1, x2), (&m1, x2, y1)),
        r((&one, y2, x2), (&mt, x2, y2)),
        r((t, y3, x2), (&m1, x2, y3)),
        r((t, y1, x3), (&m1, x3, y1)),
        r((&one, y2, x3), (&m1, x3, y2)),
        r((&one, y3, x3), (&mt, x3, y3)),
        r((&one, y1, x1), (&mt, x1, y1)),
        r((t, y2, x1), (&m1, x1, y2)),
        r((&one, y3, x1), (&m1, x1, y3)),
        vec![(one.clone(), x1, y3), (one.clone(), x2, y1), (one.clone(), x3, y2)],
    ];
    QuadraticPresentation::from_terms(&ctx, &names, &degrees, &rels).expect("homogeneous")
}

/// Diagnostics of the identification of the twisted Case I.e shape algebra with Case I.h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntwistReport {
    pub renamed: bool,
    pub equal: bool,
    pub relations_ie: usize,
    pub relations_ih: usize,
    /// Dimension of the intersection of the twisted span with the Case I.h span.
    pub common: usize,
    pub tau_preserves_relations: bool,
}

pub fn untwist_report<F: Field>(t: &F, rename: bool) -> Result<UntwistReport, TwistError> {
    let ctx = t.context();
    let ie = shape_presentation(&Bqd::case_ie(t)?);
    let ih = shape_presentation(&Bqd::case_ih(t)?);
    let src = if rename { ie.permute_generators(&Y_UNRENAME) } else { ie };
    let ts = standard_tau(&ctx);
    let twisted = twist_presentation(&src, &ts)?;
    let joint = rref(
        &ctx,
        twisted.relations().rows.iter().chain(&ih.relations().rows).cloned().collect(),
        36,
    )
    .rank();
    Ok(UntwistReport {
        renamed: rename,
        equal: twisted == ih,
        relations_ie: twisted.num_relations(),
        relations_ih: ih.num_relations(),
        common: twisted.num_relations() + ih.num_relations() - joint,
        tau_preserves_relations: ts.preserves(&src),
    })
}

/// Twisting the renamed Case I.e shape algebra by the standard pair gives the Case I.h one.
pub fn verify_untwist_is_case_ie<F: Field>(t: &F) -> Result<bool, TwistError> {
    Ok(untwist_report(t, true)?.equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::field::{Fp, PrimeModulus, Rational};
    use crate::primes::DEFAULT_PRIMES;
    use crate::ratfunc::RatFunc;
    use crate::shape::{case_ih_display, Hilbert};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn standard_tau_properties() {
        let ts = standard_tau::<Rational>(&());
        let id = Matrix::identity(&(), 6);
        let t1 = &ts.tau1;
        assert_eq!(t1.mul(t1).unwrap().mul(t1).unwrap(), id);
        assert_eq!(t1.mul(&ts.tau2).unwrap(), id);
        assert_eq!(ts.tau2.mul(t1).unwrap(), id);
        assert_eq!(ts.tau((1, 1)), id);
    }

    #[test]
    fn rejects_bad_systems() {
        let (_, degs) = shape_generators();
        let mix = permutation_matrix::<Rational>(&(), &[3, 1, 2, 0, 4, 5]);
        assert_eq!(TwistingSystem::new(mix.clone(), mix, &degs).unwrap_err(), TwistError::NotGraded);
        let a = permutation_matrix::<Rational>(&(), &[1, 0, 2, 3, 4, 5]);
        let b = permutation_matrix::<Rational>(&(), &[0, 2, 1, 3, 4, 5]);
        assert_eq!(TwistingSystem::new(a, b, &degs).unwrap_err(), TwistError::NotCommuting);
    }

    #[test]
    fn identity_twist() {
        let p = case_ih_display(&q(2, 1));
        let (_, degs) = shape_generators();
        let id = TwistingSystem::identity(&(), &degs);
        assert_eq!(twist_presentation(&p, &id).unwrap(), p);
        assert!(v_map(3, &id).is_identity());
    }

    #[test]
    fn v_map_small() {
        let ts = standard_tau::<Rational>(&());
        assert!(v_map(1, &ts).is_identity());
        let v2 = v_map(2, &ts);
        // v(x1 ⊗ x2) = x1 ⊗ τ1(x2) = x1 ⊗ x1
        assert_eq!(v2.as_permutation().unwrap()[1], 0);
        // v(y1 ⊗ x1) = y1 ⊗ τ2(x1) = y1 ⊗ x2
        assert_eq!(v2.as_permutation().unwrap()[3 * 6], 3 * 6 + 1);
    }

    #[test]
    fn single_relation() {
        let t = q(2, 1);
        let (names, degs) = shape_generators();
        let one = Rational::from_integer(1);
        let p = QuadraticPresentation::from_terms(&(), &names, &degs, &[vec![(one.clone(), 2, 0), (t.neg(), 0, 2)]]).unwrap();
        let tw = twist_presentation(&p, &standard_tau(&())).unwrap();
        let expected = QuadraticPresentation::from_terms(&(), &names, &degs, &[vec![(one, 2, 1), (t.neg(), 0, 0)]]).unwrap();
        assert_eq!(tw, expected);
    }

    #[test]
    fn display_twists_to_display() {
        for t in [q(2, 1), q(-3, 5)] {
            let tw = twist_presentation(&untwisted_display(&t), &standard_tau(&())).unwrap();
            assert_eq!(tw, case_ih_display(&t));
        }
    }

    #[test]
    fn renamed_case_ie_is_untwisted_display() {
        let t = q(2, 1);
        let ie = shape_presentation(&Bqd::case_ie(&t).unwrap());
        assert_eq!(ie.permute_generators(&Y_UNRENAME), untwisted_display(&t));
    }

    #[test]
    fn identification() {
        assert!(verify_untwist_is_case_ie(&q(2, 1)).unwrap());
        assert!(verify_untwist_is_case_ie(&RatFunc::t()).unwrap());
        let m = PrimeModulus::new(DEFAULT_PRIMES[1]).unwrap();
        assert!(verify_untwist_is_case_ie(&Fp::from_u64(&m, 9)).unwrap());
        let neg = untwist_report(&q(2, 1), false).unwrap();
        assert!(!neg.equal);
        assert!(neg.common < 16);
    }

    #[test]
    fn round_trip() {
        let ts = standard_tau::<RatFunc>(&());
        for p in [case_ih_display(&RatFunc::t()), shape_presentation(&Bqd::case_ie(&RatFunc::t()).unwrap())] {
            let back = twist_presentation(&twist_presentation(&p, &ts).unwrap(), &ts.inverse()).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn twist_preserves_dimensions() {
        let t = q(7, 2);
        let p = untwisted_display(&t);
        let tw = twist_presentation(&p, &standard_tau(&())).unwrap();
        let (mut h, mut h2) = (Hilbert::new(&p), Hilbert::new(&tw));
        for n in 0..=4 {
            for k in 0..=n {
                assert_eq!(h.dimension((k, n - k)), h2.dimension((k, n - k)));
            }
        }
    }

    #[test]
    fn v_map_agrees_with_degree_two() {
        let ts = standard_tau::<Rational>(&());
        let p = untwisted_display(&q(2, 1));
        let v = v_map(2, &ts);
        let tw = twist_presentation(&p, &ts).unwrap();
        for r in &tw.relations().rows {
            assert!(p.relations().contains(&v.apply(r)));
        }
        assert!(ts.preserves(&p));
    }
}
