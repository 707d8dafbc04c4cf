//! The (9+9)-generator algebra of a datum: relations, coproduct, counit and
//! antipode tables, checked at the level of the free algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bqd::{q_matrix, Bqd, BqdError};
use crate::field::Field;
use crate::matrix::{rref, Matrix};
use crate::poly::write_terms;

pub const NUM_GENERATORS: usize = 18;

/// Index of `t^i_j` (0-based).
pub fn t_index(i: usize, j: usize) -> usize {
    3 * i + j
}

/// Index of `u^α_β` (0-based).
pub fn u_index(a: usize, b: usize) -> usize {
    9 + 3 * a + b
}

pub fn generator_names() -> Vec<String> {
    let mut names = Vec::with_capacity(NUM_GENERATORS);
    for s in ["t", "u"] {
        for i in 1..=3 {
            for j in 1..=3 {
                names.push(format!("{}{}{}", s, i, j));
            }
        }
    }
    names
}

/// A noncommutative polynomial: words over the 18 generators with coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeElement<F: Field> {
    ctx: F::Context,
    terms: BTreeMap<Vec<usize>, F>,
}

impl<F: Field> FreeElement<F> {
    pub fn zero(ctx: &F::Context) -> Self {
        FreeElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn generator(ctx: &F::Context, g: usize) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(vec![g], F::one(ctx));
        e
    }

    pub fn add_term(&mut self, word: Vec<usize>, c: F) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(|| F::zero(&self.ctx));
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> F {
        self.terms.get(word).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&F::one(&self.ctx).neg()))
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(s));
        }
        out
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Coordinates in the basis `1, g, gh` (19 + 18² entries); `None` past length 2.
    pub fn to_vector(&self) -> Option<Vec<F>> {
        let n = NUM_GENERATORS;
        let mut v = vec![F::zero(&self.ctx); 1 + n + n * n];
        for (w, c) in &self.terms {
            let k = match w.as_slice() {
                [] => 0,
                [g] => 1 + g,
                [g, h] => 1 + n + n * g + h,
                _ => return None,
            };
            v[k] = c.clone();
        }
        Some(v)
    }

    pub fn display(&self) -> String {
        struct D<'a, F: Field>(&'a FreeElement<F>, Vec<String>);
        impl<F: Field> fmt::Display for D<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let names = &self.1;
                let mut terms: Vec<_> = self.0.terms.iter().collect();
                terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
                write_terms(
                    f,
                    terms.into_iter().map(|(w, c)| (c.clone(), w.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join("*"))),
                )
            }
        }
        format!("{}", D(self, generator_names()))
    }
}

/// The eight relation families, capitals first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    CapA,
    A,
    CapB,
    B,
    CapC,
    C,
    CapD,
    D,
}

impl Family {
    pub const ALL: [Family; 8] = [Family::CapA, Family::A, Family::CapB, Family::B, Family::CapC, Family::C, Family::CapD, Family::D];

    pub fn label(self) -> &'static str {
        match self {
            Family::CapA => "A",
            Family::A => "a",
            Family::CapB => "B",
            Family::B => "b",
            Family::CapC => "C",
            Family::C => "c",
            Family::CapD => "D",
            Family::D => "d",
        }
    }

    pub fn expected_count(self) -> usize {
        match self {
            Family::CapA | Family::A | Family::CapB | Family::B => 27,
            _ => 9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfRelation<F: Field> {
    pub family: Family,
    /// Free indices of the relation, 0-based, in the order they are written.
    pub indices: Vec<usize>,
    /// `lhs − rhs`.
    pub element: FreeElement<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfPresentation<F: Field> {
    ctx: F::Context,
    pub relations: Vec<HopfRelation<F>>,
    /// `Δ(g) = Σ left ⊗ right`, unit coefficients.
    pub coproduct: Vec<Vec<(usize, usize)>>,
    pub counit: Vec<F>,
    /// Column `g` holds `S(g)` in generator coordinates.
    pub antipode: Matrix<F>,
}

pub fn hopf_presentation<F: Field>(b: &Bqd<F>) -> HopfPresentation<F> {
    let ctx = b.context();
    let cap_a = |al: usize, i: usize, j: usize| b.cap_a.get(al, 3 * i + j).clone();
    let a = |i: usize, j: usize, al: usize| b.a.get(3 * i + j, al).clone();
    let cap_b = |i: usize, al: usize, be: usize| b.cap_b.get(i, 3 * al + be).clone();
    let bb = |al: usize, be: usize, i: usize| b.b.get(3 * al + be, i).clone();
    let cap_c = |al: usize, i: usize| b.cap_c.get(0, 3 * al + i).clone();
    let c = |i: usize, al: usize| b.c.get(3 * i + al, 0).clone();
    let cap_d = |i: usize, al: usize| b.cap_d.get(0, 3 * i + al).clone();
    let d = |al: usize, i: usize| b.d.get(3 * al + i, 0).clone();
    let (t, u) = (t_index, u_index);
    let r3 = || (0..27).map(|n| (n / 9, (n / 3) % 3, n % 3));
    let r2 = || (0..9).map(|n| (n / 3, n % 3));
    let mut relations = Vec::new();
    let mut push = |family, indices: Vec<usize>, f: &dyn Fn(&mut FreeElement<F>)| {
        let mut e = FreeElement::zero(&ctx);
        f(&mut e);
        relations.push(HopfRelation { family, indices, element: e });
    };
    let neg = |x: F| x.neg();

    for (al, k, l) in r3() {
        push(Family::CapA, vec![al, k, l], &|e| {
            for (i, j) in r2() {
                e.add_term(vec![t(i, k), t(j, l)], cap_a(al, i, j));
            }
            for be in 0..3 {
                e.add_term(vec![u(al, be)], neg(cap_a(be, k, l)));
            }
        });
    }
    for (i, j, be) in r3() {
        push(Family::A, vec![i, j, be], &|e| {
            for (k, l) in r2() {
                e.add_term(vec![t(i, k), t(j, l)], a(k, l, be));
            }
            for al in 0..3 {
                e.add_term(vec![u(al, be)], neg(a(i, j, al)));
            }
        });
    }
    for (i, ga, de) in r3() {
        push(Family::CapB, vec![i, ga, de], &|e| {
            for (al, be) in r2() {
                e.add_term(vec![u(al, ga), u(be, de)], cap_b(i, al, be));
            }
            for j in 0..3 {
                e.add_term(vec![t(i, j)], neg(cap_b(j, ga, de)));
            }
        });
    }
    for (al, be, j) in r3() {
        push(Family::B, vec![al, be, j], &|e| {
            for (ga, de) in r2() {
                e.add_term(vec![u(al, ga), u(be, de)], bb(ga, de, j));
            }
            for i in 0..3 {
                e.add_term(vec![t(i, j)], neg(bb(al, be, i)));
            }
        });
    }
    for (be, j) in r2() {
        push(Family::CapC, vec![be, j], &|e| {
            for (al, i) in r2() {
                e.add_term(vec![u(al, be), t(i, j)], cap_c(al, i));
            }
            e.add_term(vec![], neg(cap_c(be, j)));
        });
    }
    for (i, al) in r2() {
        push(Family::C, vec![i, al], &|e| {
            for (j, be) in r2() {
                e.add_term(vec![t(i, j), u(al, be)], c(j, be));
            }
            e.add_term(vec![], neg(c(i, al)));
        });
    }
    for (j, be) in r2() {
        push(Family::CapD, vec![j, be], &|e| {
            for (i, al) in r2() {
                e.add_term(vec![t(i, j), u(al, be)], cap_d(i, al));
            }
            e.add_term(vec![], neg(cap_d(j, be)));
        });
    }
    for (al, i) in r2() {
        push(Family::D, vec![al, i], &|e| {
            for (be, j) in r2() {
                e.add_term(vec![u(al, be), t(i, j)], d(be, j));
            }
            e.add_term(vec![], neg(d(al, i)));
        });
    }

    let mut coproduct = Vec::with_capacity(NUM_GENERATORS);
    let mut counit = Vec::with_capacity(NUM_GENERATORS);
    for s in [t, u] {
        for (i, j) in r2() {
            coproduct.push((0..3).map(|k| (s(i, k), s(k, j))).collect());
            counit.push(if i == j { F::one(&ctx) } else { F::zero(&ctx) });
        }
    }

    let mut antipode: Matrix<F> = Matrix::zero(&ctx, NUM_GENERATORS, NUM_GENERATORS);
    for (i, j) in r2() {
        for (al, be) in r2() {
            let v = antipode.get(u(al, be), t(i, j)).add(&c(i, be).mul(&cap_c(al, j)));
            antipode.set(u(al, be), t(i, j), v);
        }
    }
    for (al, be) in r2() {
        for (i, j) in r2() {
            let v = antipode.get(t(i, j), u(al, be)).add(&d(al, j).mul(&cap_d(i, be)));
            antipode.set(t(i, j), u(al, be), v);
        }
    }
    HopfPresentation { ctx, relations, coproduct, counit, antipode }
}

impl<F: Field> HopfPresentation<F> {
    pub fn context(&self) -> &F::Context {
        &self.ctx
    }

    pub fn family(&self, f: Family) -> impl Iterator<Item = &HopfRelation<F>> {
        self.relations.iter().filter(move |r| r.family == f)
    }

    pub fn family_counts(&self) -> Vec<(Family, usize)> {
        Family::ALL.iter().map(|&f| (f, self.family(f).count())).collect()
    }

    /// Dimension of the span of all relations in the free algebra.
    pub fn reduced_dimension(&self) -> usize {
        let rows: Vec<Vec<F>> = self.relations.iter().map(|r| r.element.to_vector().expect("length at most 2")).collect();
        let cols = rows.first().map_or(0, Vec::len);
        rref(&self.ctx, rows, cols).rank()
    }

    /// `S` extended as an anti-homomorphism fixing scalars.
    pub fn apply_antipode(&self, e: &FreeElement<F>) -> FreeElement<F> {
        let mut out = FreeElement::zero(&self.ctx);
        for (w, c) in e.terms() {
            let mut acc: Vec<(Vec<usize>, F)> = vec![(Vec::new(), c.clone())];
            for &g in w.iter().rev() {
                let mut next = Vec::new();
                for (prefix, pc) in &acc {
                    for h in 0..NUM_GENERATORS {
                        let s = self.antipode.get(h, g);
                        if !s.is_zero() {
                            let mut nw = prefix.clone();
                            nw.push(h);
                            next.push((nw, pc.mul(s)));
                        }
                    }
                }
                acc = next;
            }
            for (nw, nc) in acc {
                out.add_term(nw, nc);
            }
        }
        out
    }

    pub fn antipode_of(&self, g: usize) -> FreeElement<F> {
        self.apply_antipode(&FreeElement::generator(&self.ctx, g))
    }

    /// One line per relation: `label[i,j,k]: lhs - rhs = 0`, indices 1-based.
    pub fn dump_relations(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            let idx: Vec<String> = r.indices.iter().map(|i| format!("{}", i + 1)).collect();
            out.push_str(&format!("{}[{}]: {} = 0\n", r.family.label(), idx.join(","), r.element.display()));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntipodeSquareReport {
    /// `S²(t^i_j) = Q^i_k t^k_l (Q⁻¹)^l_j` for all `i, j`.
    pub identity_holds: bool,
    /// `S²(g) = g` for all 18 generators.
    pub fixes_generators: bool,
}

/// Compares `S²(t^i_j)` with `Q t Q⁻¹`, where `Q^i_k = c^{iα} D_{kα}` and
/// `(Q⁻¹)^l_j = d^{αl} C_{αj}`.
pub fn antipode_square_report<F: Field>(b: &Bqd<F>) -> AntipodeSquareReport {
    let h = hopf_presentation(b);
    let ctx = b.context();
    let qm = q_matrix(b);
    let mut identity_holds = true;
    let mut fixes_generators = true;
    for g in 0..NUM_GENERATORS {
        let s2 = h.apply_antipode(&h.antipode_of(g));
        if s2 != FreeElement::generator(&ctx, g) {
            fixes_generators = false;
        }
        if g < 9 {
            let (i, j) = (g / 3, g % 3);
            let mut expected = FreeElement::zero(&ctx);
            for k in 0..3 {
                for l in 0..3 {
                    expected.add_term(vec![t_index(k, l)], qm.q.get(i, k).mul(qm.q_inv.get(l, j)));
                }
            }
            if s2 != expected {
                identity_holds = false;
            }
        }
    }
    AntipodeSquareReport { identity_holds, fixes_generators }
}

pub fn antipode_square_identity<F: Field>(b: &Bqd<F>) -> bool {
    antipode_square_report(b).identity_holds
}

/// Renames `t ↔ u` in the presentation of the swapped datum and compares spans.
pub fn swap_stable<F: Field>(b: &Bqd<F>) -> Result<bool, BqdError> {
    let ctx = b.context();
    let swapped = b.apply_equivalence(&Matrix::identity(&ctx, 3), None, true)?;
    let h = hopf_presentation(b);
    let hs = hopf_presentation(&swapped);
    let rename = |g: usize| (g + 9) % NUM_GENERATORS;
    let rows = |p: &HopfPresentation<F>, ren: bool| -> Vec<Vec<F>> {
        p.relations
            .iter()
            .map(|r| {
                let mut e = FreeElement::zero(&ctx);
                for (w, c) in r.element.terms() {
                    e.add_term(w.iter().map(|&g| if ren { rename(g) } else { g }).collect(), c.clone());
                }
                e.to_vector().expect("length at most 2")
            })
            .collect()
    };
    let own = rows(&h, false);
    let other = rows(&hs, true);
    let cols = own[0].len();
    let e1 = rref(&ctx, own.clone(), cols);
    let e2 = rref(&ctx, other.clone(), cols);
    Ok(e1.rank() == e2.rank() && other.iter().all(|r| e1.contains(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, Ring};
    use crate::ratfunc::RatFunc;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn counts_and_tables() {
        let h = hopf_presentation(&Bqd::case_ih(&q(2, 1)).unwrap());
        for (f, n) in h.family_counts() {
            assert_eq!(n, f.expected_count(), "{}", f.label());
        }
        assert_eq!(h.relations.len(), 144);
        for (i, e) in h.counit.iter().enumerate() {
            let (a, b) = ((i % 9) / 3, i % 3);
            assert_eq!(e.is_one(), a == b);
            assert_eq!(e.is_zero(), a != b);
        }
        assert_eq!(h.coproduct[t_index(0, 2)], vec![(0, 2), (1, 5), (2, 8)]);
        assert_eq!(h.coproduct[u_index(1, 0)], vec![(12, 9), (13, 12), (14, 15)]);
    }

    #[test]
    fn type_i_antipode() {
        let h = hopf_presentation(&Bqd::case_ih(&q(2, 1)).unwrap());
        // S(t^i_j) = u^j_i for the canonical pairing
        let s = h.antipode_of(t_index(0, 1));
        assert_eq!(s, FreeElement::generator(h.context(), u_index(1, 0)));
    }

    #[test]
    fn canonical_c_relation() {
        let h = hopf_presentation(&Bqd::case_ih(&q(2, 1)).unwrap());
        let r = h.family(Family::CapC).find(|r| r.indices == [0, 0]).unwrap();
        assert_eq!(r.element.display(), "u11*t11 + u21*t21 + u31*t31 - 1");
    }

    #[test]
    fn square_identity() {
        for t in [q(2, 1), q(-3, 1), q(1, 2), q(5, 7)] {
            for b in [Bqd::case_ih(&t).unwrap(), Bqd::case_ie(&t).unwrap()] {
                let r = antipode_square_report(&b);
                assert!(r.identity_holds && r.fixes_generators);
            }
        }
        let r = antipode_square_report(&Bqd::case_ih(&RatFunc::t()).unwrap());
        assert!(r.identity_holds && r.fixes_generators);
    }

    #[test]
    fn rescaled_c_keeps_identity() {
        let mut b = Bqd::case_ih(&q(2, 1)).unwrap();
        b.c = b.c.scale(&q(5, 1));
        let r = antipode_square_report(&b);
        assert!(r.identity_holds);
        assert!(!r.fixes_generators);
    }

    #[test]
    fn swap() {
        assert!(swap_stable(&Bqd::case_ih(&q(2, 1)).unwrap()).unwrap());
        assert!(swap_stable(&Bqd::case_ie(&q(3, 1)).unwrap()).unwrap());
    }

    #[test]
    fn reduced_dimension_is_stable() {
        let d1 = hopf_presentation(&Bqd::case_ih(&q(2, 1)).unwrap()).reduced_dimension();
        let d2 = hopf_presentation(&Bqd::case_ih(&q(7, 3)).unwrap()).reduced_dimension();
        assert_eq!(d1, d2);
        assert!(d1 <= 144);
    }

    #[test]
    fn antipode_reverses_words() {
        let h = hopf_presentation(&Bqd::case_ih(&q(2, 1)).unwrap());
        let ctx = *h.context();
        let mut w = FreeElement::<Rational>::zero(&ctx);
        w.add_term(vec![t_index(0, 1), t_index(2, 2)], q(3, 1));
        let s = h.apply_antipode(&w);
        let mut expected = FreeElement::zero(&ctx);
        expected.add_term(vec![u_index(2, 2), u_index(1, 0)], q(3, 1));
        assert_eq!(s, expected);
    }

    #[test]
    fn dump_format() {
        let h = hopf_presentation(&Bqd::case_ih(&q(2, 1)).unwrap());
        let text = h.dump_relations();
        assert_eq!(text.lines().count(), 144);
        assert!(text.lines().next().unwrap().starts_with("A[1,1,1]: "));
    }
}
