//! Plane cubics attached to a datum, and the nine components of the flag variety
//! of the Case I.h shape algebra with their two automorphisms.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bqd::CaseIhParams;
use crate::field::{Field, Ring};
use crate::matrix::Matrix;
use crate::poly::{Monomial, MultiPoly, PolyContext};
use crate::shape::case_ih_display_terms;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("cubic must be a homogeneous polynomial of degree 3 in x1, x2, x3")]
    NotCubic,
    #[error("the zero cubic has no smoothness")]
    ZeroCubic,
}

pub fn cubic_context<F: Field>(ctx: &F::Context) -> PolyContext<F> {
    PolyContext::new(&["x1", "x2", "x3"], ctx.clone())
}

/// A homogeneous cubic in three variables (or zero, flagged degenerate).
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCubic<F: Field> {
    poly: MultiPoly<F>,
}

impl<F: Field> PlaneCubic<F> {
    pub fn new(poly: MultiPoly<F>) -> Result<Self, GeometryError> {
        if poly.vars().len() != 3 {
            return Err(GeometryError::NotCubic);
        }
        if !poly.is_zero() && (poly.total_degree() != Some(3) || !poly.is_homogeneous()) {
            return Err(GeometryError::NotCubic);
        }
        Ok(PlaneCubic { poly })
    }

    /// `A (x1³ + x2³ + x3³) − 3B x1x2x3`.
    pub fn hesse(ctx: &F::Context, a: &F, b: &F) -> Self {
        let pc = cubic_context(ctx);
        let three = F::from_int(ctx, 3);
        let mut terms = Vec::new();
        for i in 0..3 {
            let mut m = Monomial::one(3);
            m.0[i] = 3;
            terms.push((m, a.clone()));
        }
        terms.push((Monomial(vec![1, 1, 1]), three.mul(b).neg()));
        PlaneCubic { poly: MultiPoly::from_terms(&pc, terms) }
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `Some((A, B))` when the cubic is in Hesse form.
    pub fn hesse_coefficients(&self) -> Option<(F, F)> {
        let ctx = self.poly.poly_context().coeff_context().clone();
        let cube = |i: usize| {
            let mut m = Monomial::one(3);
            m.0[i] = 3;
            m
        };
        let a = self.poly.coeff(&cube(0));
        let xyz = Monomial(vec![1, 1, 1]);
        let expected_terms = if a.is_zero() { 0 } else { 3 } + usize::from(!self.poly.coeff(&xyz).is_zero());
        if self.poly.num_terms() != expected_terms || self.poly.coeff(&cube(1)) != a || self.poly.coeff(&cube(2)) != a {
            return None;
        }
        let b = self.poly.coeff(&xyz).div(&F::from_int(&ctx, -3)).expect("3 invertible");
        Some((a, b))
    }

    /// Whether the cubic is a nonzero multiple of `x1 x2 x3`.
    pub fn is_triangle(&self) -> bool {
        self.poly.num_terms() == 1 && !self.poly.coeff(&Monomial(vec![1, 1, 1])).is_zero()
    }

    /// Whether `self = c · other` for a nonzero scalar `c`.
    pub fn proportional_to(&self, other: &Self) -> bool {
        let Some((m, a)) = self.poly.leading_term() else {
            return other.is_zero();
        };
        let b_here = other.poly.coeff(m);
        if b_here.is_zero() {
            return false;
        }
        let c = a.div(&b_here).expect("nonzero");
        self.poly == other.poly.scale(&c)
    }

    pub fn partial(&self, var: usize) -> MultiPoly<F> {
        let pc = self.poly.poly_context();
        let ctx = pc.coeff_context();
        MultiPoly::from_terms(
            pc,
            self.poly.terms().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                (m2, c.mul(&F::from_int(ctx, m.0[var] as i64)))
            }),
        )
    }
}

/// `γ (x1³ + x2³ + x3³) − 3 (α + β) x1x2x3`, the printed AS-curve.
pub fn as_curve<F: Field>(p: &CaseIhParams<F>) -> PlaneCubic<F> {
    PlaneCubic::hesse(&p.context(), &p.gamma, &p.alpha.add(&p.beta))
}

/// `αβγ (x1³ + x2³ + x3³) − (α³ + β³ + γ³) x1x2x3`, the point-module curve.
pub fn atv_curve<F: Field>(p: &CaseIhParams<F>) -> PlaneCubic<F> {
    let ctx = p.context();
    let abc = p.alpha.mul(&p.beta).mul(&p.gamma);
    let cubes = p.alpha.pow(3).add(&p.beta.pow(3)).add(&p.gamma.pow(3));
    PlaneCubic::hesse(&ctx, &abc, &cubes.div(&F::from_int(&ctx, 3)).expect("3 invertible"))
}

/// Smoothness of a plane cubic.
///
/// Hesse forms use `A (A³ − B³) ≠ 0`.  Otherwise: for a cubic `f`, the
/// partials have no common projective zero iff they generate every quartic,
/// i.e. iff `(a, b, c) ↦ a f_x + b f_y + c f_z` from triples of quadrics has rank 15.
pub fn is_elliptic<F: Field>(c: &PlaneCubic<F>) -> Result<bool, GeometryError> {
    if c.is_zero() {
        return Err(GeometryError::ZeroCubic);
    }
    if let Some((a, b)) = c.hesse_coefficients() {
        return Ok(!a.mul(&a.pow(3).sub(&b.pow(3))).is_zero());
    }
    is_smooth_by_rank(c)
}

pub fn is_smooth_by_rank<F: Field>(c: &PlaneCubic<F>) -> Result<bool, GeometryError> {
    if c.is_zero() {
        return Err(GeometryError::ZeroCubic);
    }
    let ctx = c.poly.poly_context().coeff_context().clone();
    let monos = |d: u32| {
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push(Monomial(vec![a, b, d - a - b]));
            }
        }
        out
    };
    let (quad, quart) = (monos(2), monos(4));
    let one = F::one(&ctx);
    let mut rows = Vec::new();
    for v in 0..3 {
        let g = c.partial(v);
        for m in &quad {
            let h = g.mul_term(m, &one);
            rows.push(quart.iter().map(|q| h.coeff(q)).collect::<Vec<F>>());
        }
    }
    let m = Matrix::from_rows(&ctx, rows).expect("rectangular");
    Ok(m.rank() == quart.len())
}

/// Arrow coefficient applied to `μ` by `σ1°` or `σ2°`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuFactor {
    One,
    T,
    T2,
    InvT,
}

impl MuFactor {
    pub fn value<F: Field>(self, t: &F) -> F {
        match self {
            MuFactor::One => t.one_like(),
            MuFactor::T => t.clone(),
            MuFactor::T2 => t.mul(t),
            MuFactor::InvT => t.inv().expect("t nonzero"),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MuFactor::One => "1",
            MuFactor::T => "t",
            MuFactor::T2 => "t^2",
            MuFactor::InvT => "1/t",
        }
    }
}

/// A linear form `a λ + b μ`.
pub type LinearForm<F> = (F, F);

/// A generic point `(x-row ; y-row)` of one flag component, linear in `(λ : μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagComponent<F: Field> {
    pub id: usize,
    pub point: [[LinearForm<F>; 3]; 2],
    pub sigma1_factor: MuFactor,
    pub sigma2_factor: MuFactor,
    pub tau1_target: usize,
    pub tau2_target: usize,
    pub sigma1_target: usize,
    pub sigma2_target: usize,
}

impl<F: Field> FlagComponent<F> {
    /// Both rows depend on `λ` and on `μ`.
    pub fn is_interior(&self) -> bool {
        self.point.iter().all(|row| row.iter().any(|(a, _)| !a.is_zero()) && row.iter().any(|(_, b)| !b.is_zero()))
    }

    pub fn polys(&self, pc: &PolyContext<F>) -> [[MultiPoly<F>; 3]; 2] {
        let (l, m) = (pc.var("l"), pc.var("m"));
        let lin = |(a, b): &LinearForm<F>| l.scale(a).add(&m.scale(b));
        [
            [lin(&self.point[0][0]), lin(&self.point[0][1]), lin(&self.point[0][2])],
            [lin(&self.point[1][0]), lin(&self.point[1][1]), lin(&self.point[1][2])],
        ]
    }
}

pub type Point<F> = [[MultiPoly<F>; 3]; 2];

pub fn point_context<F: Field>(ctx: &F::Context) -> PolyContext<F> {
    PolyContext::new(&["l", "m"], ctx.clone())
}

/// `τ1 : (p1, p2, p3) ↦ (p3, p1, p2)` and `τ2 : (p1, p2, p3) ↦ (p2, p3, p1)` on both rows.
pub fn tau_point<F: Field>(i: usize, p: &Point<F>) -> Point<F> {
    let rot = |r: &[MultiPoly<F>; 3]| match i {
        1 => [r[2].clone(), r[0].clone(), r[1].clone()],
        _ => [r[1].clone(), r[2].clone(), r[0].clone()],
    };
    [rot(&p[0]), rot(&p[1])]
}

/// `μ ↦ f μ` in every coordinate.
pub fn scale_mu<F: Field>(p: &Point<F>, f: &F) -> Point<F> {
    let pc = p[0][0].poly_context().clone();
    let m = pc.var("m").scale(f);
    let sub = |x: &MultiPoly<F>| x.substitute("m", &m).expect("m is a variable");
    [
        [sub(&p[0][0]), sub(&p[0][1]), sub(&p[0][2])],
        [sub(&p[1][0]), sub(&p[1][1]), sub(&p[1][2])],
    ]
}

/// `σ_i = τ_i σ_i°` applied to the generic point of `c`.
pub fn sigma_point<F: Field>(c: &FlagComponent<F>, i: usize, t: &F) -> Point<F> {
    let pc = point_context(&t.context());
    let f = if i == 1 { c.sigma1_factor } else { c.sigma2_factor };
    tau_point(i, &scale_mu(&c.polys(&pc), &f.value(t)))
}

/// The nine components of the flag variety, ordered: three x-fixed hexagon
/// vertices, three y-fixed ones interleaved, then the three interior ones.
pub fn flag_components<F: Field>(t: &F) -> Vec<FlagComponent<F>> {
    let ctx = t.context();
    let z = F::zero(&ctx);
    let one = F::one(&ctx);
    let c = |a: &F, b: &F| (a.clone(), b.clone());
    let (o, l, m, e1) = (c(&z, &z), c(&one, &z), c(&z, &one), c(&one, &z));
    let neg_m = c(&z, &one.neg());
    let tl = c(t, &z);
    use MuFactor::*;
    let raw: [([LinearForm<F>; 3], [LinearForm<F>; 3], MuFactor, MuFactor); 9] = [
        ([e1.clone(), o.clone(), o.clone()], [l.clone(), m.clone(), o.clone()], T2, T),
        ([m.clone(), o.clone(), l.clone()], [e1.clone(), o.clone(), o.clone()], T, T2),
        ([o.clone(), o.clone(), e1.clone()], [m.clone(), o.clone(), l.clone()], T2, T),
        ([o.clone(), l.clone(), m.clone()], [o.clone(), o.clone(), e1.clone()], T, T2),
        ([o.clone(), e1.clone(), o.clone()], [o.clone(), l.clone(), m.clone()], T2, T),
        ([l.clone(), m.clone(), o.clone()], [o.clone(), e1.clone(), o.clone()], T, T2),
        ([o.clone(), l.clone(), m.clone()], [neg_m.clone(), tl.clone(), o.clone()], T, InvT),
        ([l.clone(), m.clone(), o.clone()], [tl.clone(), o.clone(), neg_m.clone()], T, InvT),
        ([m.clone(), o.clone(), l.clone()], [o.clone(), neg_m.clone(), tl.clone()], T, InvT),
    ];
    let mut comps: Vec<FlagComponent<F>> = raw
        .into_iter()
        .enumerate()
        .map(|(i, (x, y, s1, s2))| FlagComponent {
            id: i + 1,
            point: [x, y],
            sigma1_factor: s1,
            sigma2_factor: s2,
            tau1_target: 0,
            tau2_target: 0,
            sigma1_target: 0,
            sigma2_target: 0,
        })
        .collect();
    let pc = point_context(&ctx);
    let points: Vec<Point<F>> = comps.iter().map(|c| c.polys(&pc)).collect();
    for c in comps.iter_mut() {
        let p = &points[c.id - 1];
        let find = |q: Point<F>| points.iter().position(|x| *x == q).map_or(0, |i| i + 1);
        c.tau1_target = find(tau_point(1, p));
        c.tau2_target = find(tau_point(2, p));
        c.sigma1_target = c.tau1_target;
        c.sigma2_target = c.tau2_target;
    }
    comps
}

/// How a modified relation is tested on one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// All terms have left factors of the same type: the relation is homogeneous in
    /// the scalings of `σ1(p)` and `σ2(p)` and must vanish as written.
    Homogeneous,
    /// `y x''` terms against `x y'` terms: must hold after a common choice of scalings.
    Exchange,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaEntry<F: Field> {
    pub component: usize,
    pub relation: usize,
    pub kind: RelationKind,
    pub residual: MultiPoly<F>,
}

impl<F: Field> GammaEntry<F> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaReport<F: Field> {
    pub entries: Vec<GammaEntry<F>>,
    /// Per component: the `y x''` and `x y'` parts of the exchange relations are both nonzero.
    pub scalings_nondegenerate: Vec<bool>,
}

impl<F: Field> GammaReport<F> {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(GammaEntry::holds) && self.scalings_nondegenerate.iter().all(|&b| b)
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.holds()).count() + self.scalings_nondegenerate.iter().filter(|&&b| !b).count()
    }
}

pub fn verify_gamma_relations<F: Field>(t: &F) -> GammaReport<F> {
    verify_gamma_relations_with(t, &flag_components(t))
}

/// Substitutes `p`, `σ1(p)` (primed) and `σ2(p)` (double-primed) into the printed
/// relations, adorning the right factor by the type of the left one.
pub fn verify_gamma_relations_with<F: Field>(t: &F, comps: &[FlagComponent<F>]) -> GammaReport<F> {
    let pc = point_context(&t.context());
    let rels = case_ih_display_terms(t);
    let coord = |p: &Point<F>, g: usize| p[g / 3][g % 3].clone();
    let mut entries = Vec::new();
    let mut nondeg = Vec::new();
    for c in comps {
        let p = c.polys(&pc);
        let s1 = sigma_point(c, 1, t);
        let s2 = sigma_point(c, 2, t);
        let mut exchange = Vec::new();
        for (ri, terms) in rels.iter().enumerate() {
            let mut x_part = MultiPoly::zero(&pc);
            let mut y_part = MultiPoly::zero(&pc);
            for (coef, g, h) in terms {
                if *g < 3 {
                    x_part = x_part.add(&coord(&p, *g).mul(&coord(&s1, *h)).scale(coef));
                } else {
                    y_part = y_part.add(&coord(&p, *g).mul(&coord(&s2, *h)).scale(coef));
                }
            }
            let mixed = terms.iter().any(|(_, g, _)| *g < 3) && terms.iter().any(|(_, g, _)| *g >= 3);
            if mixed {
                exchange.push((ri, x_part, y_part));
            } else {
                entries.push(GammaEntry { component: c.id, relation: ri, kind: RelationKind::Homogeneous, residual: x_part.add(&y_part) });
            }
        }
        let reference = exchange.iter().find(|(_, _, y)| !y.is_zero()).cloned();
        let ok = match &reference {
            Some((_, ex, _)) => !ex.is_zero(),
            None => exchange.iter().all(|(_, x, _)| x.is_zero()) && exchange.is_empty(),
        };
        nondeg.push(ok);
        for (ri, x, y) in &exchange {
            let residual = match &reference {
                Some((_, ex_ref, ey_ref)) => y.mul(ex_ref).sub(&x.mul(ey_ref)),
                None => x.clone(),
            };
            entries.push(GammaEntry { component: c.id, relation: *ri, kind: RelationKind::Exchange, residual });
        }
    }
    entries.sort_by_key(|e| (e.component, e.relation));
    GammaReport { entries, scalings_nondegenerate: nondeg }
}

/// `σ_i(p_C(λ, μ)) = p_{τ_i C}(λ, f μ)`, and `τ_i σ_i° = σ_i° τ_i` on every generic point.
pub fn decomposition_consistent<F: Field>(t: &F) -> bool {
    let comps = flag_components(t);
    let pc = point_context(&t.context());
    comps.iter().all(|c| {
        (1..=2).all(|i| {
            let (f, target) = if i == 1 { (c.sigma1_factor, c.sigma1_target) } else { (c.sigma2_factor, c.sigma2_target) };
            if target == 0 {
                return false;
            }
            let tc = &comps[target - 1];
            let tf = if i == 1 { tc.sigma1_factor } else { tc.sigma2_factor };
            let lhs = sigma_point(c, i, t);
            let rhs = scale_mu(&tc.polys(&pc), &f.value(t));
            let commuted = scale_mu(&tau_point(i, &c.polys(&pc)), &tf.value(t));
            lhs == rhs && lhs == commuted
        })
    })
}

/// A parameter value `(λ : μ)` on some component fixed by both `σ1` and `σ2`:
/// either `(0 : 1)` or the roots of `condition` in `μ` with `λ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint<F: Field> {
    pub component: usize,
    pub at_infinity: bool,
    pub condition: Option<UPoly<F>>,
}

pub fn sigma_fixed_points<F: Field>(t: &F) -> Vec<FixedPoint<F>> {
    sigma_fixed_points_with(t, &flag_components(t))
}

/// Solves `σ1(p) = p = σ2(p)` projectively on each component.
pub fn sigma_fixed_points_with<F: Field>(t: &F, comps: &[FlagComponent<F>]) -> Vec<FixedPoint<F>> {
    let ctx = t.context();
    let pc = point_context(&ctx);
    let (zero, one) = (F::zero(&ctx), F::one(&ctx));
    let mut out = Vec::new();
    for c in comps {
        let p = c.polys(&pc);
        let mut minors = Vec::new();
        for q in [sigma_point(c, 1, t), sigma_point(c, 2, t)] {
            for row in 0..2 {
                for a in 0..3 {
                    for b in a + 1..3 {
                        minors.push(p[row][a].mul(&q[row][b]).sub(&p[row][b].mul(&q[row][a])));
                    }
                }
            }
        }
        if minors.iter().all(|m| m.eval(&[zero.clone(), one.clone()]).is_zero()) {
            out.push(FixedPoint { component: c.id, at_infinity: true, condition: None });
        }
        let mut g = UPoly::zero(&ctx);
        for m in &minors {
            let coeffs = m.coefficients_in("m").expect("m is a variable");
            let u = UPoly::new(&ctx, coeffs.iter().map(|k| k.eval(&[one.clone(), zero.clone()])).collect());
            g = g.gcd(&u);
        }
        if g.is_zero() || g.degree().unwrap_or(0) > 0 {
            out.push(FixedPoint { component: c.id, at_infinity: false, condition: Some(g) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bqd::{quantum_determinants, Bqd};
    use crate::field::{Rational, Ring};
    use crate::ratfunc::RatFunc;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sample_t() -> Vec<Rational> {
        vec![q(2, 1), q(3, 1), q(-2, 1), q(1, 2), q(-3, 7), q(5, 4), q(-1, 1)]
    }

    #[test]
    fn smoothness_examples() {
        let pc = cubic_context::<Rational>(&());
        let (x, y, z) = (pc.var("x1"), pc.var("x2"), pc.var("x3"));
        let fermat = PlaneCubic::new(x.pow(3).add(&y.pow(3)).add(&z.pow(3))).unwrap();
        assert!(is_elliptic(&fermat).unwrap());
        assert!(is_smooth_by_rank(&fermat).unwrap());
        let tri = PlaneCubic::new(x.mul(&y).mul(&z)).unwrap();
        assert!(!is_elliptic(&tri).unwrap());
        assert!(!is_smooth_by_rank(&tri).unwrap());
        let h11 = PlaneCubic::hesse(&(), &q(1, 1), &q(1, 1));
        assert!(!is_elliptic(&h11).unwrap());
        assert!(!is_smooth_by_rank(&h11).unwrap());
        // nodal cubic y²z = x³ + x²z and a smooth Weierstrass cubic y²z = x³ − xz²
        let nodal = PlaneCubic::new(y.pow(2).mul(&z).sub(&x.pow(3)).sub(&x.pow(2).mul(&z))).unwrap();
        assert!(!is_elliptic(&nodal).unwrap());
        let smooth = PlaneCubic::new(y.pow(2).mul(&z).sub(&x.pow(3)).add(&x.mul(&z.pow(2)))).unwrap();
        assert!(is_elliptic(&smooth).unwrap());
        assert_eq!(is_elliptic(&PlaneCubic::new(MultiPoly::zero(&pc)).unwrap()), Err(GeometryError::ZeroCubic));
        assert_eq!(PlaneCubic::new(x.clone()).unwrap_err(), GeometryError::NotCubic);
    }

    #[test]
    fn hesse_fast_path_agrees_with_rank() {
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if a == 0 && b == 0 {
                    continue;
                }
                let c = PlaneCubic::hesse(&(), &q(a, 1), &q(b, 1));
                assert_eq!(is_elliptic(&c).unwrap(), is_smooth_by_rank(&c).unwrap(), "A={} B={}", a, b);
            }
        }
    }

    #[test]
    fn curves_of_normalized_family() {
        for t in sample_t() {
            if t == q(-1, 1) {
                continue;
            }
            let p = CaseIhParams::normalized(&t).unwrap();
            let atv = atv_curve(&p);
            assert!(atv.is_triangle());
            assert!(!is_elliptic(&atv).unwrap());
            let s = quantum_determinants(&Bqd::from_params(&p)).unwrap().s;
            assert!(is_elliptic(&PlaneCubic::new(s).unwrap()).unwrap());
            assert!(is_elliptic(&as_curve(&p)).unwrap());
        }
    }

    #[test]
    fn printed_as_curve_singular_at_minus_one() {
        let p = CaseIhParams::normalized(&q(-1, 1)).unwrap();
        assert!(!is_elliptic(&as_curve(&p)).unwrap());
        let s = quantum_determinants(&Bqd::from_params(&p)).unwrap().s;
        assert!(is_elliptic(&PlaneCubic::new(s).unwrap()).unwrap());
    }

    #[test]
    fn as_curve_shape() {
        let t = q(2, 1);
        let p = CaseIhParams::normalized(&t).unwrap();
        assert_eq!(as_curve(&p).hesse_coefficients(), Some((q(-2, 1), q(1, 1))));
        let fermat = CaseIhParams { alpha: q(1, 1), beta: q(-1, 1), gamma: q(2, 1), alpha_p: q(0, 1), beta_p: q(0, 1), gamma_p: q(1, 2) };
        let c = as_curve(&fermat);
        assert_eq!(c.hesse_coefficients(), Some((q(2, 1), q(0, 1))));
        assert!(is_elliptic(&c).unwrap());
    }

    #[test]
    fn atv_examples() {
        let ones = CaseIhParams { alpha: q(1, 1), beta: q(1, 1), gamma: q(1, 1), alpha_p: q(1, 3), beta_p: q(1, 3), gamma_p: q(1, 3) };
        let c = atv_curve(&ones);
        assert_eq!(c.hesse_coefficients(), Some((q(1, 1), q(1, 1))));
        assert!(!is_elliptic(&c).unwrap());
        let generic = CaseIhParams { alpha: q(1, 1), beta: q(2, 1), gamma: q(3, 1), alpha_p: q(0, 1), beta_p: q(0, 1), gamma_p: q(1, 3) };
        assert!(!as_curve(&generic).proportional_to(&atv_curve(&generic)));
        let ie = Bqd::case_ie(&q(2, 1)).unwrap().cyclic_params().unwrap();
        assert!(atv_curve(&ie).is_triangle());
        assert!(!is_elliptic(&atv_curve(&ie)).unwrap());
    }

    #[test]
    fn component_table() {
        let comps = flag_components(&q(2, 1));
        assert_eq!(comps.len(), 9);
        assert_eq!(comps.iter().filter(|c| c.is_interior()).count(), 3);
        let c5 = &comps[4];
        assert_eq!((c5.sigma1_factor, c5.sigma2_factor), (MuFactor::T2, MuFactor::T));
        let t1: Vec<usize> = comps.iter().map(|c| c.tau1_target).collect();
        assert_eq!(t1, [5, 6, 1, 2, 3, 4, 9, 7, 8]);
        let t2: Vec<usize> = comps.iter().map(|c| c.tau2_target).collect();
        assert_eq!(t2, [3, 4, 5, 6, 1, 2, 8, 9, 7]);
        let pc = point_context::<Rational>(&());
        for c in &comps {
            let [x, _] = c.polys(&pc);
            assert!(x[0].mul(&x[1]).mul(&x[2]).is_zero());
        }
    }

    #[test]
    fn gamma_relations_symbolic() {
        let r = verify_gamma_relations(&RatFunc::t());
        assert_eq!(r.entries.len(), 9 * 16);
        assert!(r.all_pass(), "{} failures", r.failures());
    }

    #[test]
    fn gamma_relations_rational() {
        for t in sample_t() {
            assert!(verify_gamma_relations(&t).all_pass());
        }
    }

    #[test]
    fn example_relation() {
        // y1 x1'' = x2 y2' on the component (0 1 0 / 0 λ μ)
        let t = RatFunc::t();
        let r = verify_gamma_relations(&t);
        let e = r.entries.iter().find(|e| e.component == 5 && e.relation == 6).unwrap();
        assert_eq!(e.kind, RelationKind::Exchange);
        assert!(e.holds());
    }

    #[test]
    fn wrong_factor_fails() {
        let t = RatFunc::t();
        let mut comps = flag_components(&t);
        comps[4].sigma1_factor = MuFactor::T;
        assert!(!verify_gamma_relations_with(&t, &comps).all_pass());
        let mut comps = flag_components(&t);
        comps[6].sigma2_factor = MuFactor::T;
        assert!(!verify_gamma_relations_with(&t, &comps).all_pass());
    }

    #[test]
    fn decomposition() {
        assert!(decomposition_consistent(&RatFunc::t()));
        assert!(decomposition_consistent(&q(3, 1)));
    }

    #[test]
    fn no_fixed_points() {
        assert!(sigma_fixed_points(&RatFunc::t()).is_empty());
        let t = RatFunc::t();
        let mut comps = flag_components(&t);
        for c in comps.iter_mut() {
            c.sigma1_factor = MuFactor::One;
            c.sigma2_factor = MuFactor::One;
        }
        assert!(sigma_fixed_points_with(&t, &comps[..6]).is_empty());
        let _ = sigma_fixed_points(&q(-1, 1));
    }
}
