//! The Case I.h polynomial system, its resultant elimination, and the
//! normalization to α = α′ = 0.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::bqd::{Bqd, BqdError, CaseIhParams};
use crate::field::{Field, Qj, Rational, Ring};
use crate::matrix::Matrix;
use crate::poly::{MultiPoly, PolyContext, PolyError};
use crate::resultant::resultant;

pub const VARS: [&str; 6] = ["alpha", "beta", "gamma", "alpha_p", "beta_p", "gamma_p"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("computed {which} differs from the expected expansion")]
    ExpansionMismatch { which: &'static str, computed: MultiPoly<Rational>, expected: MultiPoly<Rational> },
    #[error("the final resultant is not divisible by the target right-hand side")]
    NotDivisible(Box<EliminationTrace>),
    #[error("quotient of the final resultant by the target is not a monomial: {}", .0.cofactor)]
    NonMonomialCofactor(Box<EliminationTrace>),
    #[error("not a valid Case I.h datum: {0}")]
    InvalidDatum(&'static str),
    #[error(transparent)]
    Bqd(#[from] BqdError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The symbolic context in the six Case I.h variables.
pub fn symbolic_context() -> PolyContext<Rational> {
    PolyContext::new(&VARS, ())
}

fn symbolic_params(ctx: &PolyContext<Rational>) -> CasePolys {
    let v: Vec<MultiPoly<Rational>> = VARS.iter().map(|n| ctx.var(n)).collect();
    CasePolys { a: v[0].clone(), b: v[1].clone(), g: v[2].clone(), ap: v[3].clone(), bp: v[4].clone(), gp: v[5].clone() }
}

struct CasePolys {
    a: MultiPoly<Rational>,
    b: MultiPoly<Rational>,
    g: MultiPoly<Rational>,
    ap: MultiPoly<Rational>,
    bp: MultiPoly<Rational>,
    gp: MultiPoly<Rational>,
}

/// `(P0, P1, P2)` evaluated at concrete parameters (any ring containing them).
pub fn p_values<R: Ring>(p: &[R; 6]) -> [R; 3] {
    let [a, b, g, ap, bp, gp] = p;
    let two = R::from_int(&a.context(), 2);
    let (aa, bb, gg) = (a.mul(ap), b.mul(bp), g.mul(gp));
    let p0 = aa.mul(&aa).add(&bb.mul(&bb)).add(&gg.mul(&gg)).sub(&two.mul(&aa.mul(&bb).add(&aa.mul(&gg)).add(&bb.mul(&gg))));
    let p1 = a.mul(a).mul(bp).mul(gp).add(&b.mul(b).mul(ap).mul(gp)).add(&g.mul(g).mul(ap).mul(bp));
    let p2 = ap.mul(ap).mul(b).mul(g).add(&bp.mul(bp).mul(a).mul(g)).add(&gp.mul(gp).mul(a).mul(b));
    [p0, p1, p2]
}

/// The three polynomials in the six symbolic variables.
pub fn p_system() -> [MultiPoly<Rational>; 3] {
    let c = symbolic_params(&symbolic_context());
    p_values(&[c.a, c.b, c.g, c.ap, c.bp, c.gp])
}

pub fn p_system_at<F: Field>(p: &CaseIhParams<F>) -> [F; 3] {
    p_values(&[p.alpha.clone(), p.beta.clone(), p.gamma.clone(), p.alpha_p.clone(), p.beta_p.clone(), p.gamma_p.clone()])
}

/// The quartics displayed for `Res_{α′}(P0,P1)` and `Res_{α′}(P1,P2)`, typed in
/// from their expansions, over the variables `alpha, beta, gamma, beta_p, gamma_p`.
pub fn expected_q_polys() -> (MultiPoly<Rational>, MultiPoly<Rational>) {
    let ctx = PolyContext::<Rational>::new(&["alpha", "beta", "gamma", "beta_p", "gamma_p"], ());
    let (a, b, g, bp, gp) = (ctx.var("alpha"), ctx.var("beta"), ctx.var("gamma"), ctx.var("beta_p"), ctx.var("gamma_p"));
    let n = |k: i64| ctx.int(k);
    let p = |x: &MultiPoly<Rational>, e: u32| x.pow(e);
    let (a3, b3, g3) = (p(&a, 3), p(&b, 3), p(&g, 3));
    let q1 = p(&b, 2)
        .mul(&p(&g, 4))
        .mul(&p(&bp, 4))
        .add(&n(2).mul(&a3.add(&b3).sub(&g3)).mul(&b).mul(&p(&g, 2)).mul(&p(&bp, 3)).mul(&gp))
        .add(
            &p(&a, 6)
                .add(&p(&b, 6))
                .add(&p(&g, 6))
                .add(&n(2).mul(&a3).mul(&b3))
                .add(&n(2).mul(&a3).mul(&g3))
                .sub(&n(4).mul(&b3).mul(&g3))
                .mul(&p(&bp, 2))
                .mul(&p(&gp, 2)),
        )
        .add(&n(2).mul(&a3.add(&g3).sub(&b3)).mul(&p(&b, 2)).mul(&g).mul(&bp).mul(&p(&gp, 3)))
        .add(&p(&b, 4).mul(&p(&g, 2)).mul(&p(&gp, 4)));
    let q2 = a
        .mul(&p(&g, 5))
        .mul(&p(&bp, 4))
        .add(&n(2).mul(&a).mul(&p(&b, 2)).mul(&p(&g, 3)).mul(&p(&bp, 3)).mul(&gp))
        .add(&a3.add(&b3).add(&g3).mul(&a).mul(&b).mul(&g).mul(&p(&bp, 2)).mul(&p(&gp, 2)))
        .add(&n(2).mul(&a).mul(&p(&b, 3)).mul(&p(&g, 2)).mul(&bp).mul(&p(&gp, 3)))
        .add(&a.mul(&p(&b, 5)).mul(&p(&gp, 4)));
    (q1, q2)
}

/// `Q1 = Res_{α′}(P0,P1)` and `Q2 = Res_{α′}(P1,P2)`, checked term for term
/// against the displayed expansions.
pub fn q_resultants() -> Result<(MultiPoly<Rational>, MultiPoly<Rational>), ClassifyError> {
    let [p0, p1, p2] = p_system();
    let q1 = resultant(&p0, &p1, "alpha_p")?;
    let q2 = resultant(&p1, &p2, "alpha_p")?;
    let (e1, e2) = expected_q_polys();
    if q1 != e1 {
        return Err(ClassifyError::ExpansionMismatch { which: "Q1", computed: q1, expected: e1 });
    }
    if q2 != e2 {
        return Err(ClassifyError::ExpansionMismatch { which: "Q2", computed: q2, expected: e2 });
    }
    Ok((q1, q2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTrace {
    pub p: [MultiPoly<Rational>; 3],
    pub q1: MultiPoly<Rational>,
    pub q2: MultiPoly<Rational>,
    /// `Res_{β′}(Q1,Q2)` in `alpha, beta, gamma, gamma_p`.
    pub final_resultant: MultiPoly<Rational>,
    /// `γ′¹⁶(αβγ)¹⁰ [(α³+β³+γ³)³ − (3αβγ)³]`.
    pub rhs_target: MultiPoly<Rational>,
    /// `final_resultant / rhs_target` (exact when `divisible`).
    pub cofactor: MultiPoly<Rational>,
    pub divisible: bool,
    pub cofactor_is_monomial: bool,
    /// The bracket `(α³+β³+γ³)³ − (3αβγ)³`.
    pub bracket: MultiPoly<Rational>,
    /// Largest `m` with `bracket^m` dividing the final resultant.
    pub bracket_multiplicity: u32,
    /// What remains after removing `bracket^m`.
    pub bracket_free_part: MultiPoly<Rational>,
}

impl EliminationTrace {
    pub fn bracket_free_part_is_monomial(&self) -> bool {
        self.bracket_free_part.is_monomial()
    }
}

/// Eliminates `β′` from `Q1`, `Q2` with the 8×8 Sylvester matrix and
/// compares against the target factorization.
pub fn final_resultant_check() -> Result<EliminationTrace, ClassifyError> {
    let p = p_system();
    let (q1, q2) = q_resultants()?;
    let final_resultant = resultant(&q1, &q2, "beta_p")?;
    let ctx = final_resultant.poly_context().clone();
    let (a, b, g, gp) = (ctx.var("alpha"), ctx.var("beta"), ctx.var("gamma"), ctx.var("gamma_p"));
    let abg = a.mul(&b).mul(&g);
    let bracket = a.pow(3).add(&b.pow(3)).add(&g.pow(3)).pow(3).sub(&abg.scale(&Rational::from_integer(3)).pow(3));
    let rhs_target = gp.pow(16).mul(&abg.pow(10)).mul(&bracket);
    let (cofactor, divisible) = match final_resultant.exact_div(&rhs_target) {
        Some(q) => (q, true),
        None => (MultiPoly::zero(&ctx), false),
    };
    let mut bracket_multiplicity = 0;
    let mut bracket_free_part = final_resultant.clone();
    if !bracket_free_part.is_zero() {
        while let Some(q) = bracket_free_part.exact_div(&bracket) {
            bracket_free_part = q;
            bracket_multiplicity += 1;
        }
    }
    let cofactor_is_monomial = divisible && cofactor.is_monomial();
    let trace = EliminationTrace {
        p,
        q1,
        q2,
        final_resultant,
        rhs_target,
        cofactor,
        divisible,
        cofactor_is_monomial,
        bracket,
        bracket_multiplicity,
        bracket_free_part,
    };
    if !trace.divisible {
        return Err(ClassifyError::NotDivisible(Box::new(trace)));
    }
    if !trace.cofactor_is_monomial {
        return Err(ClassifyError::NonMonomialCofactor(Box::new(trace)));
    }
    Ok(trace)
}

/// The trace whether or not the cofactor turned out to be a monomial.
pub fn elimination_trace() -> Result<EliminationTrace, ClassifyError> {
    match final_resultant_check() {
        Ok(t) => Ok(t),
        Err(ClassifyError::NonMonomialCofactor(t)) | Err(ClassifyError::NotDivisible(t)) => Ok(*t),
        Err(e) => Err(e),
    }
}

/// One equivalence transform used by [`normalize`].
#[derive(Clone, Debug, PartialEq)]
pub enum NormalizationStep {
    /// Exchange `x2 ↔ x3` (and dually `y2 ↔ y3`); swaps α↔β and α′↔β′.
    Transpose,
    /// `x′1 = ζx1+x2+x3`, `x′2 = ζx1+jx2+j²x3`, `x′3 = ζx1+j²x2+jx3`.
    Case4 { zeta: Qj, j: Qj },
    /// `a ↦ a/β`, `A ↦ βA` (with `B`, `b` following) to reach β = 1.
    Rescale { beta: Qj },
}

impl NormalizationStep {
    /// Base-change matrix (rows are new basis vectors in old coordinates).
    pub fn matrix(&self) -> Matrix<Qj> {
        let o = |n: i64| Qj::from_int(&(), n);
        let rows = match self {
            NormalizationStep::Transpose => alloc::vec![
                alloc::vec![o(1), o(0), o(0)],
                alloc::vec![o(0), o(0), o(1)],
                alloc::vec![o(0), o(1), o(0)],
            ],
            NormalizationStep::Case4 { zeta, j } => {
                let j2 = j.mul(j);
                alloc::vec![
                    alloc::vec![zeta.clone(), o(1), o(1)],
                    alloc::vec![zeta.clone(), j.clone(), j2.clone()],
                    alloc::vec![zeta.clone(), j2, j.clone()],
                ]
            }
            NormalizationStep::Rescale { .. } => return Matrix::identity(&(), 3),
        };
        Matrix::from_rows(&(), rows).unwrap()
    }

    /// Rescaling factors for `(A, a, B, b, C, c, D, d)`, if any.
    pub fn rescale(&self) -> Option<[Qj; 8]> {
        match self {
            NormalizationStep::Rescale { beta } => {
                let inv = beta.inv().unwrap();
                let one = Qj::one(&());
                Some([beta.clone(), inv.clone(), inv, beta.clone(), one.clone(), one.clone(), one.clone(), one])
            }
            _ => None,
        }
    }

    pub fn apply(&self, b: &Bqd<Qj>) -> Result<Bqd<Qj>, BqdError> {
        b.apply_equivalence(&self.matrix(), self.rescale().as_ref(), false)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationWitness {
    pub input: CaseIhParams<Qj>,
    pub steps: Vec<NormalizationStep>,
    pub result: CaseIhParams<Qj>,
    pub essential_t: Qj,
}

impl NormalizationWitness {
    /// Replays the steps on the BQD of the input parameters.
    pub fn replay(&self) -> Result<Bqd<Qj>, BqdError> {
        let mut b = Bqd::from_params(&self.input);
        for s in &self.steps {
            b = s.apply(&b)?;
        }
        Ok(b)
    }
}

fn apply_step(p: &CaseIhParams<Qj>, step: &NormalizationStep) -> Result<CaseIhParams<Qj>, ClassifyError> {
    let b = step.apply(&Bqd::from_params(p))?;
    b.cyclic_params().ok_or(ClassifyError::InvalidDatum("transformed maps lost the cyclic shape"))
}

/// Brings a valid Case I.h datum to α = α′ = 0, β = 1.
pub fn normalize(params: &CaseIhParams<Qj>) -> Result<NormalizationWitness, ClassifyError> {
    params.validate()?;
    if p_system_at(params).iter().any(|v| !v.is_zero()) {
        return Err(ClassifyError::InvalidDatum("the quadratic conditions P0 = P1 = P2 = 0 fail"));
    }
    let mut steps = Vec::new();
    let mut cur = params.clone();
    let is0 = |x: &Qj| x.is_zero();
    if !is0(&cur.alpha) && !is0(&cur.alpha_p) && (is0(&cur.beta) || is0(&cur.beta_p)) {
        steps.push(NormalizationStep::Transpose);
        cur = apply_step(&cur, steps.last().unwrap())?;
    } else if !is0(&cur.alpha) && !is0(&cur.alpha_p) && is0(&cur.gamma_p) {
        // γ′ = 0 forces α′ = 0 or β′ = 0 through P1.
        return Err(ClassifyError::InvalidDatum("gamma' = 0 with alpha', beta' nonzero"));
    } else if !is0(&cur.alpha) && !is0(&cur.alpha_p) {
        let (a, b, g) = (&cur.alpha, &cur.beta, &cur.gamma);
        let j = Qj::j();
        let lhs = a.pow(3).add(&b.pow(3)).add(&g.pow(3));
        let abg3 = a.mul(b).mul(g).mul(&Qj::from_int(&(), 3));
        let zeta = [Qj::one(&()), j.clone(), j.mul(&j)]
            .into_iter()
            .find(|z| lhs == abg3.mul(z))
            .ok_or(ClassifyError::InvalidDatum("no cube root of unity zeta with a^3+b^3+g^3 = 3 zeta abg"))?;
        let factor = |jj: &Qj| zeta.mul(g).add(&jj.mul(a)).add(&jj.mul(jj).mul(b));
        let jj = [j.clone(), j.mul(&j)]
            .into_iter()
            .find(|jj| factor(jj).is_zero())
            .ok_or(ClassifyError::InvalidDatum("only the factor zeta*gamma + alpha + beta vanishes"))?;
        steps.push(NormalizationStep::Case4 { zeta, j: jj });
        cur = apply_step(&cur, steps.last().unwrap())?;
    }
    if !(is0(&cur.alpha) && is0(&cur.alpha_p)) {
        return Err(ClassifyError::InvalidDatum("alpha and alpha' cannot both be brought to zero"));
    }
    if !cur.beta.is_one() {
        steps.push(NormalizationStep::Rescale { beta: cur.beta.clone() });
        cur = apply_step(&cur, steps.last().unwrap())?;
    }
    let t = cur.gamma.neg().div(&cur.beta).unwrap();
    let t2 = cur.beta_p.neg().div(&cur.gamma_p).ok_or(ClassifyError::InvalidDatum("gamma' vanishes after normalization"))?;
    if t != t2 {
        return Err(ClassifyError::InvalidDatum("the two expressions for t disagree"));
    }
    Ok(NormalizationWitness { input: params.clone(), steps, result: cur, essential_t: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn qj(n: i64) -> Qj {
        Qj::from_int(&(), n)
    }

    #[test]
    fn p_system_shape() {
        let [p0, p1, p2] = p_system();
        assert_eq!(p0.num_terms(), 6);
        assert_eq!(p1.num_terms(), 3);
        assert_eq!(p2.num_terms(), 3);
        let ctx = symbolic_context();
        let zero = MultiPoly::zero(&ctx);
        let p1a = p1.substitute("alpha", &zero).unwrap();
        let (ap, b, g, bp, gp) = (ctx.var("alpha_p"), ctx.var("beta"), ctx.var("gamma"), ctx.var("beta_p"), ctx.var("gamma_p"));
        assert_eq!(p1a, ap.mul(&b.mul(&b).mul(&gp).add(&g.mul(&g).mul(&bp))));
        assert_eq!(p2.substitute("alpha", &zero).unwrap(), ap.mul(&ap).mul(&b).mul(&g));
    }

    #[test]
    fn normalized_family_solves_system() {
        let p = CaseIhParams::<Rational>::normalized(&Rational::new(5, 3)).unwrap();
        assert!(p_system_at(&p).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn q_resultants_match_display() {
        let (q1, q2) = q_resultants().unwrap();
        // Q2: the only β′⁴ term is αγ⁵β′⁴
        let top: Vec<_> = q2.terms().filter(|(m, _)| m.0[3] == 4).collect();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].0 .0, [1, 0, 5, 4, 0]);
        assert!(top[0].1.is_one());
        // Q1: coefficient of β′²γ′² is α⁶+β⁶+γ⁶+2α³β³+2α³γ³−4β³γ³
        let mid = q1.coefficients_in("beta_p").unwrap()[2].to_string();
        assert_eq!(mid, "alpha^6*gamma_p^2 + 2*alpha^3*beta^3*gamma_p^2 + 2*alpha^3*gamma^3*gamma_p^2 + beta^6*gamma_p^2 - 4*beta^3*gamma^3*gamma_p^2 + gamma^6*gamma_p^2");
        for q in [&q1, &q2] {
            assert!(q.terms().all(|(m, _)| m.0[3] + m.0[4] == 4));
        }
    }

    #[test]
    fn already_normal() {
        let p = CaseIhParams::<Qj>::normalized(&qj(2)).unwrap();
        let w = normalize(&p).unwrap();
        assert!(w.steps.is_empty());
        assert_eq!(w.essential_t, qj(2));
    }

    #[test]
    fn transposition_case() {
        // α ↔ β exchanged normalized datum: β = β′ = 0.
        let n = CaseIhParams::<Qj>::normalized(&qj(3)).unwrap();
        let p = CaseIhParams { alpha: n.beta, beta: n.alpha, gamma: n.gamma, alpha_p: n.beta_p, beta_p: n.alpha_p, gamma_p: n.gamma_p };
        let w = normalize(&p).unwrap();
        assert_eq!(w.steps, [NormalizationStep::Transpose]);
        assert_eq!(w.essential_t, qj(3));
        assert_eq!(w.replay().unwrap(), Bqd::from_params(&w.result));
    }

    #[test]
    fn case4_round_trip() {
        let n = CaseIhParams::<Qj>::normalized(&qj(2)).unwrap();
        let step = NormalizationStep::Case4 { zeta: qj(1), j: Qj::j() };
        let b = Bqd::from_params(&n).apply_equivalence(&step.matrix().inverse().unwrap(), None, false).unwrap();
        let p = b.cyclic_params().unwrap();
        assert!(!p.alpha.is_zero() && !p.alpha_p.is_zero());
        let w = normalize(&p).unwrap();
        assert!(matches!(w.steps[0], NormalizationStep::Case4 { .. }));
        assert_eq!(w.essential_t.pow(3), qj(8));
        assert_eq!(w.replay().unwrap(), Bqd::from_params(&w.result));
        assert_eq!(w.result.alpha, qj(0));
        assert_eq!(w.result.beta.mul(&w.result.beta_p), Qj::new(Rational::new(1, 2), Rational::from_integer(0)));
    }

    #[test]
    fn rejects_invalid() {
        let p = CaseIhParams { alpha: qj(1), beta: qj(1), gamma: qj(1), alpha_p: qj(1), beta_p: qj(0), gamma_p: qj(0) };
        assert!(normalize(&p).is_err());
        let mut q = CaseIhParams::<Qj>::normalized(&qj(2)).unwrap();
        q.gamma = qj(0);
        assert!(normalize(&q).is_err());
    }

    #[test]
    fn elimination_leaves_bracket() {
        let t = elimination_trace().unwrap();
        assert!(t.divisible);
        assert_eq!(t.cofactor, t.bracket);
        assert_eq!(t.bracket_multiplicity, 2);
        assert!(t.bracket_free_part_is_monomial());
        assert!(matches!(final_resultant_check(), Err(ClassifyError::NonMonomialCofactor(_))));
    }

    #[test]
    fn specialization_agrees() {
        // α=1, β=2, γ=3, γ′=1: resultant = target × cofactor as integers
        let t = elimination_trace().unwrap();
        let vals: Vec<Rational> = [1, 2, 3, 1].iter().map(|&n| Rational::from_integer(n)).collect();
        let lhs = t.final_resultant.eval(&vals);
        let rhs = t.rhs_target.eval(&vals).mul(&t.cofactor.eval(&vals));
        assert_eq!(lhs, rhs);
        let zero_alpha: Vec<Rational> = [0, 2, 3, 1].iter().map(|&n| Rational::from_integer(n)).collect();
        assert!(t.rhs_target.eval(&zero_alpha).is_zero());
    }
}
