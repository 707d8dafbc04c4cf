//! N²-graded quadratic presentations, shape algebras and their Hilbert functions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::bqd::Bqd;
use crate::field::Field;
use crate::matrix::{rref, Echelon, Matrix};
use crate::poly::write_terms;

/// Bidegree `(k, l)`: `k` letters of x-type, `l` of y-type.
pub type Degree = (usize, usize);

/// Default bound on the number of words in one graded component.
pub const DEFAULT_WORD_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("relation {0} is not homogeneous for the N^2 grading")]
    NotHomogeneous(usize),
    #[error("relation {index} has length {len}, expected {expected}")]
    BadLength { index: usize, len: usize, expected: usize },
    #[error("generator degrees must be (1,0) or (0,1)")]
    BadGeneratorDegree,
    #[error("component {degree:?} has {words} words, above the cap of {cap}")]
    SizeCap { degree: Degree, words: usize, cap: usize },
    #[error("presentations have different generators")]
    GeneratorMismatch,
}

/// Generators with bidegrees plus a canonical relation span in the degree-2 words.
///
/// A degree-2 word `g h` has index `g * n + h`.  The span is kept in reduced
/// row echelon form, so two presentations are equal iff their echelon rows are.
#[derive(Clone)]
pub struct QuadraticPresentation<F: Field> {
    ctx: F::Context,
    names: Vec<String>,
    degrees: Vec<Degree>,
    span: Echelon<F>,
}

impl<F: Field> fmt::Debug for QuadraticPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticPresentation({} generators, {} relations)", self.names.len(), self.span.rank())
    }
}

impl<F: Field> PartialEq for QuadraticPresentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degrees == other.degrees && self.span.rows == other.span.rows
    }
}

impl<F: Field> QuadraticPresentation<F> {
    pub fn new<S: AsRef<str>>(ctx: &F::Context, names: &[S], degrees: &[Degree], relations: Vec<Vec<F>>) -> Result<Self, ShapeError> {
        if names.len() != degrees.len() || degrees.iter().any(|&d| d != (1, 0) && d != (0, 1)) {
            return Err(ShapeError::BadGeneratorDegree);
        }
        let n = names.len();
        for (i, r) in relations.iter().enumerate() {
            if r.len() != n * n {
                return Err(ShapeError::BadLength { index: i, len: r.len(), expected: n * n });
            }
            let mut seen = None;
            for (w, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let d = add(degrees[w / n], degrees[w % n]);
                if *seen.get_or_insert(d) != d {
                    return Err(ShapeError::NotHomogeneous(i));
                }
            }
        }
        Ok(QuadraticPresentation {
            ctx: ctx.clone(),
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            degrees: degrees.to_vec(),
            span: rref(ctx, relations, n * n),
        })
    }

    /// Builds relations from sparse `(coefficient, left, right)` term lists.
    pub fn from_terms<S: AsRef<str>>(
        ctx: &F::Context,
        names: &[S],
        degrees: &[Degree],
        relations: &[Vec<(F, usize, usize)>],
    ) -> Result<Self, ShapeError> {
        let n = names.len();
        let rows = relations
            .iter()
            .map(|terms| {
                let mut v = vec![F::zero(ctx); n * n];
                for (c, g, h) in terms {
                    v[g * n + h] = v[g * n + h].add(c);
                }
                v
            })
            .collect();
        Self::new(ctx, names, degrees, rows)
    }

    pub fn context(&self) -> &F::Context {
        &self.ctx
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &Echelon<F> {
        &self.span
    }

    pub fn num_relations(&self) -> usize {
        self.span.rank()
    }

    pub fn word_degree(&self, word: &[usize]) -> Degree {
        word.iter().fold((0, 0), |acc, &g| add(acc, self.degrees[g]))
    }

    /// Bidegree of an echelon row (read off its pivot word).
    pub fn row_degree(&self, row: usize) -> Degree {
        let n = self.names.len();
        let p = self.span.pivots[row];
        add(self.degrees[p / n], self.degrees[p % n])
    }

    /// Echelon rows of one bidegree.
    pub fn stratum(&self, deg: Degree) -> Vec<Vec<F>> {
        (0..self.span.rank()).filter(|&r| self.row_degree(r) == deg).map(|r| self.span.rows[r].clone()).collect()
    }

    /// Relation count per bidegree, in increasing bidegree order.
    pub fn stratum_dims(&self) -> BTreeMap<Degree, usize> {
        let mut out = BTreeMap::new();
        for r in 0..self.span.rank() {
            *out.entry(self.row_degree(r)).or_insert(0) += 1;
        }
        out
    }

    pub fn same_span(&self, other: &Self) -> Result<bool, ShapeError> {
        if self.degrees != other.degrees {
            return Err(ShapeError::GeneratorMismatch);
        }
        Ok(self.span.rows == other.span.rows)
    }

    /// Whether every relation of `other` lies in this span.
    pub fn contains_span(&self, other: &Self) -> bool {
        other.span.rows.iter().all(|r| self.span.contains(r))
    }

    /// Applies the linear substitution `g ↦ Σ_a m[a][g] · a` to every relation.
    pub fn transform(&self, m: &Matrix<F>) -> Self {
        let n = self.names.len();
        let rows = self
            .span
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![F::zero(&self.ctx); n * n];
                for (w, c) in r.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (g, h) = (w / n, w % n);
                    for a in 0..n {
                        let ga = m.get(a, g);
                        if ga.is_zero() {
                            continue;
                        }
                        let cg = c.mul(ga);
                        for b in 0..n {
                            let hb = m.get(b, h);
                            if !hb.is_zero() {
                                out[a * n + b] = out[a * n + b].add(&cg.mul(hb));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        QuadraticPresentation {
            ctx: self.ctx.clone(),
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            span: rref(&self.ctx, rows, n * n),
        }
    }

    /// Renames generator `g` to `perm[g]`.
    pub fn permute_generators(&self, perm: &[usize]) -> Self {
        let n = self.names.len();
        let m = Matrix::from_fn(&self.ctx, n, n, |a, g| if perm[g] == a { F::one(&self.ctx) } else { F::zero(&self.ctx) });
        self.transform(&m)
    }

    pub fn map_scalars<G: Field>(&self, ctx: &G::Context, f: impl Fn(&F) -> G) -> QuadraticPresentation<G> {
        let n = self.names.len();
        let rows = self.span.rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        QuadraticPresentation {
            ctx: ctx.clone(),
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            span: rref(ctx, rows, n * n),
        }
    }

    /// Number of words of bidegree `deg`.
    pub fn word_count(&self, deg: Degree) -> usize {
        let nx = self.degrees.iter().filter(|&&d| d == (1, 0)).count();
        let ny = self.names.len() - nx;
        binomial(deg.0 + deg.1, deg.0).saturating_mul(nx.saturating_pow(deg.0 as u32)).saturating_mul(ny.saturating_pow(deg.1 as u32))
    }

    fn write_row(&self, f: &mut fmt::Formatter<'_>, row: &[F]) -> fmt::Result {
        let n = self.names.len();
        let terms = row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (c.clone(), alloc::format!("{}*{}", self.names[w / n], self.names[w % n])));
        write_terms(f, terms)
    }
}

/// One relation per line, `... = 0`, in echelon order.
impl<F: Field> fmt::Display for QuadraticPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.span.rows {
            self.write_row(f, row)?;
            f.write_str(" = 0\n")?;
        }
        Ok(())
    }
}

fn add(a: Degree, b: Degree) -> Degree {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: Degree, b: Degree) -> Option<Degree> {
    Some((a.0.checked_sub(b.0)?, a.1.checked_sub(b.1)?))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Names and bidegrees of the six shape-algebra generators `x1..x3, y1..y3`.
pub fn shape_generators() -> ([&'static str; 6], [Degree; 6]) {
    (["x1", "x2", "x3", "y1", "y2", "y3"], [(1, 0), (1, 0), (1, 0), (0, 1), (0, 1), (0, 1)])
}

/// Shape algebra of a BQD: `a^{ij}_α x_i x_j`, `b^{αβ}_i y_α y_β`, `c^{iα} x_i y_α`
/// and `y_α x_i + (q + q⁻¹) a^{jk}_α A^β_{ki} x_j y_β`.
pub fn shape_presentation<F: Field>(b: &Bqd<F>) -> QuadraticPresentation<F> {
    let ctx = b.context();
    let zero = F::zero(&ctx);
    let (names, degrees) = shape_generators();
    let x = |i: usize| i;
    let y = |a: usize| 3 + a;
    let qq = b.q.add(&b.q.inv().expect("q nonzero"));
    let mut rels: Vec<Vec<(F, usize, usize)>> = Vec::new();
    for al in 0..3 {
        rels.push(
            (0..9)
                .map(|w| (b.a.get(w, al).clone(), x(w / 3), x(w % 3)))
                .filter(|(c, _, _)| !c.is_zero())
                .collect(),
        );
    }
    for i in 0..3 {
        rels.push(
            (0..9)
                .map(|w| (b.b.get(w, i).clone(), y(w / 3), y(w % 3)))
                .filter(|(c, _, _)| !c.is_zero())
                .collect(),
        );
    }
    rels.push(
        (0..9)
            .map(|w| (b.c.get(w, 0).clone(), x(w / 3), y(w % 3)))
            .filter(|(c, _, _)| !c.is_zero())
            .collect(),
    );
    for al in 0..3 {
        for i in 0..3 {
            let mut terms = vec![(F::one(&ctx), y(al), x(i))];
            for j in 0..3 {
                for be in 0..3 {
                    let mut s = zero.clone();
                    for k in 0..3 {
                        s = s.add(&b.a.get(3 * j + k, al).mul(b.cap_a.get(be, 3 * k + i)));
                    }
                    if !s.is_zero() {
                        terms.push((qq.mul(&s), x(j), y(be)));
                    }
                }
            }
            rels.push(terms);
        }
    }
    QuadraticPresentation::from_terms(&ctx, &names, &degrees, &rels).expect("shape relations are homogeneous")
}

/// The Case I.h relations in their printed form:
/// `x3x2 = t x1²`, `t y2y3 = y1²`, the nine exchange relations and `Σ x_i y_i = 0` (plus cyclic images).
pub fn case_ih_display<F: Field>(t: &F) -> QuadraticPresentation<F> {
    let (names, degrees) = shape_generators();
    QuadraticPresentation::from_terms(&t.context(), &names, &degrees, &case_ih_display_terms(t)).expect("homogeneous")
}

/// The sixteen printed relations as `(coefficient, left, right)` lists, generators indexed `x1..x3, y1..y3`.
pub fn case_ih_display_terms<F: Field>(t: &F) -> Vec<Vec<(F, usize, usize)>> {
    let ctx = t.context();
    let one = F::one(&ctx);
    let m1 = one.neg();
    let mt = t.neg();
    let (x1, x2, x3, y1, y2, y3) = (0, 1, 2, 3, 4, 5);
    let r = |a: (&F, usize, usize), b: (&F, usize, usize)| vec![(a.0.clone(), a.1, a.2), (b.0.clone(), b.1, b.2)];
    vec![
        r((&one, x3, x2), (&mt, x1, x1)),
        r((&one, x1, x3), (&mt, x2, x2)),
        r((&one, x2, x1), (&mt, x3, x3)),
        r((t, y2, y3), (&m1, y1, y1)),
        r((t, y3, y1), (&m1, y2, y2)),
        r((t, y1, y2), (&m1, y3, y3)),
        r((&one, y1, x1), (&m1, x2, y2)),
        r((&one, y2, x1), (&mt, x2, y3)),
        r((t, y3, x1), (&m1, x2, y1)),
        r((t, y1, x2), (&m1, x3, y2)),
        r((&one, y2, x2), (&m1, x3, y3)),
        r((&one, y3, x2), (&mt, x3, y1)),
        r((&one, y1, x3), (&mt, x1, y2)),
        r((t, y2, x3), (&m1, x1, y3)),
        r((&one, y3, x3), (&m1, x1, y1)),
        vec![(one.clone(), x1, y1), (one.clone(), x2, y2), (one.clone(), x3, y3)],
    ]
}

/// Which side of the datum a quantum three-space lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    V,
    W,
}

/// `T(V)/(Im a)` or `T(W)/(Im b)`.
pub fn quantum_three_space<F: Field>(b: &Bqd<F>, side: Side) -> QuadraticPresentation<F> {
    let ctx = b.context();
    let (names, deg, map) = match side {
        Side::V => (["x1", "x2", "x3"], (1, 0), &b.a),
        Side::W => (["y1", "y2", "y3"], (0, 1), &b.b),
    };
    let rels = (0..3).map(|col| (0..9).map(|w| map.get(w, col).clone()).collect()).collect();
    QuadraticPresentation::new(&ctx, &names, &[deg; 3], rels).expect("homogeneous")
}

/// `d_(k,l) = (k+1)(l+1)(k+l+2)/2`.
pub fn expected_dimension(deg: Degree) -> usize {
    let (k, l) = deg;
    (k + 1) * (l + 1) * (k + l + 2) / 2
}

/// Dimension of the `(k,l)` component with a word-count cap.
pub fn graded_dimension<F: Field>(p: &QuadraticPresentation<F>, deg: Degree, cap: usize) -> Result<usize, ShapeError> {
    let words = p.word_count(deg);
    if words > cap {
        return Err(ShapeError::SizeCap { degree: deg, words, cap });
    }
    Ok(Hilbert::new(p).dimension(deg))
}

/// Same dimension computed in the full word basis: words minus the rank of all
/// one-position insertions `u ⊗ r ⊗ v`.
pub fn graded_dimension_direct<F: Field>(p: &QuadraticPresentation<F>, deg: Degree, cap: usize) -> Result<usize, ShapeError> {
    let words = p.word_count(deg);
    if words > cap {
        return Err(ShapeError::SizeCap { degree: deg, words, cap });
    }
    let len = deg.0 + deg.1;
    let n = p.num_generators();
    let basis = words_of_degree(p, deg);
    if len < 2 {
        return Ok(basis.len());
    }
    let index: BTreeMap<&[usize], usize> = basis.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let strata: BTreeMap<Degree, Vec<Vec<F>>> =
        p.stratum_dims().keys().map(|&d| (d, p.stratum(d))).collect();
    let zero = F::zero(&p.ctx);
    let mut rows = Vec::new();
    for pos in 0..len - 1 {
        let mut contexts = BTreeSet::new();
        for w in &basis {
            let mut key = w.clone();
            key[pos] = usize::MAX;
            key[pos + 1] = usize::MAX;
            contexts.insert((key, p.word_degree(&w[pos..pos + 2])));
        }
        for (key, d) in contexts {
            for rel in strata.get(&d).into_iter().flatten() {
                let mut row = vec![zero.clone(); basis.len()];
                let mut w = key.clone();
                for (ix, c) in rel.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    w[pos] = ix / n;
                    w[pos + 1] = ix % n;
                    row[index[w.as_slice()]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    let rank = rref(&p.ctx, rows, basis.len()).rank();
    Ok(basis.len() - rank)
}

fn words_of_degree<F: Field>(p: &QuadraticPresentation<F>, deg: Degree) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut degs = vec![(0, 0)];
    for _ in 0..deg.0 + deg.1 {
        let mut next = Vec::new();
        let mut next_degs = Vec::new();
        for (w, d) in out.iter().zip(&degs) {
            for g in 0..p.num_generators() {
                let nd = add(*d, p.degrees[g]);
                if nd.0 <= deg.0 && nd.1 <= deg.1 {
                    let mut nw = w.clone();
                    nw.push(g);
                    next.push(nw);
                    next_degs.push(nd);
                }
            }
        }
        out = next;
        degs = next_degs;
    }
    out
}

struct Component<F> {
    dim: usize,
    /// `red[g][s]`: image of `(basis element s of the component below) · g` in this component.
    red: Vec<Vec<Vec<F>>>,
}

/// Incremental Hilbert function: the `(k,l)` component is built as the quotient of
/// `A_{(k,l)-deg g} ⊗ g` (over all generators `g`) by the images of `A ⊗ R`.
pub struct Hilbert<'a, F: Field> {
    p: &'a QuadraticPresentation<F>,
    strata: Vec<(Degree, Vec<Vec<F>>)>,
    comps: BTreeMap<Degree, Component<F>>,
}

impl<'a, F: Field> Hilbert<'a, F> {
    pub fn new(p: &'a QuadraticPresentation<F>) -> Self {
        let strata = p.stratum_dims().keys().map(|&d| (d, p.stratum(d))).collect();
        Hilbert { p, strata, comps: BTreeMap::new() }
    }

    pub fn dimension(&mut self, deg: Degree) -> usize {
        for a in 0..=deg.0 {
            for b in 0..=deg.1 {
                if !self.comps.contains_key(&(a, b)) {
                    let c = self.build((a, b));
                    self.comps.insert((a, b), c);
                }
            }
        }
        self.comps[&deg].dim
    }

    /// Dimension of the total-degree-`n` part.
    pub fn total_dimension(&mut self, n: usize) -> usize {
        (0..=n).map(|k| self.dimension((k, n - k))).sum()
    }

    fn build(&self, deg: Degree) -> Component<F> {
        let p = self.p;
        let ctx = &p.ctx;
        let ng = p.num_generators();
        if deg == (0, 0) {
            return Component { dim: 1, red: (0..ng).map(|_| Vec::new()).collect() };
        }
        let mut offset = vec![usize::MAX; ng];
        let mut lower_dim = vec![0; ng];
        let mut cols = 0;
        for g in 0..ng {
            if let Some(d) = sub(deg, p.degrees[g]) {
                offset[g] = cols;
                lower_dim[g] = self.comps[&d].dim;
                cols += lower_dim[g];
            }
        }
        let zero = F::zero(ctx);
        let mut rows = Vec::new();
        for (d, rels) in &self.strata {
            let Some(c) = sub(deg, *d) else { continue };
            let base = self.comps[&c].dim;
            for rel in rels {
                for s0 in 0..base {
                    let mut row = vec![zero.clone(); cols];
                    for (ix, coef) in rel.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let (g, h) = (ix / ng, ix % ng);
                        let mid = add(c, p.degrees[g]);
                        let v = &self.comps[&mid].red[g][s0];
                        for (s, val) in v.iter().enumerate() {
                            if !val.is_zero() {
                                let k = offset[h] + s;
                                row[k] = row[k].add(&coef.mul(val));
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let e = rref(ctx, rows, cols);
        let free = e.free_columns();
        let dim = free.len();
        let mut free_index = vec![usize::MAX; cols];
        for (i, &f) in free.iter().enumerate() {
            free_index[f] = i;
        }
        let mut pivot_row = vec![usize::MAX; cols];
        for (r, &pc) in e.pivots.iter().enumerate() {
            pivot_row[pc] = r;
        }
        let one = F::one(ctx);
        let red = (0..ng)
            .map(|g| {
                if offset[g] == usize::MAX {
                    return Vec::new();
                }
                (0..lower_dim[g])
                    .map(|s| {
                        let col = offset[g] + s;
                        let mut v = vec![zero.clone(); dim];
                        if free_index[col] != usize::MAX {
                            v[free_index[col]] = one.clone();
                        } else {
                            let row = &e.rows[pivot_row[col]];
                            for (i, &f) in free.iter().enumerate() {
                                v[i] = row[f].neg();
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Component { dim, red }
    }
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionEntry {
    pub degree: Degree,
    pub computed: usize,
    pub expected: usize,
}

impl DimensionEntry {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

/// All `(k,l)` with `k + l <= max_total`, each compared against `d_(k,l)`.
pub fn dimension_table<F: Field>(p: &QuadraticPresentation<F>, max_total: usize, cap: usize) -> Result<Vec<DimensionEntry>, ShapeError> {
    let mut h = Hilbert::new(p);
    let mut out = Vec::new();
    for n in 0..=max_total {
        for k in (0..=n).rev() {
            let deg = (k, n - k);
            let words = p.word_count(deg);
            if words > cap {
                return Err(ShapeError::SizeCap { degree: deg, words, cap });
            }
            out.push(DimensionEntry { degree: deg, computed: h.dimension(deg), expected: expected_dimension(deg) });
        }
    }
    Ok(out)
}
