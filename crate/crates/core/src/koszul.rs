//! Distributivity of relation lattices, quadratic duals and the numerical Koszul test.
//!
//! The lattice in tensor degree `k` is generated by the subspaces
//! `R_i = A1^{⊗i} ⊗ R ⊗ A1^{⊗(k-2-i)}` of the `n^k` word space.  Word
//! coordinates split into blocks (connected components of the supports of
//! the generators' echelon rows); every generator is the direct sum of its
//! block pieces, so the lattice is a sublattice of the product of the block
//! lattices and is distributive iff every block lattice is.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::field::Field;
use crate::matrix::{rref, Echelon, Matrix};
use crate::shape::{Hilbert, QuadraticPresentation, ShapeError};
use crate::twist::{twist_presentation, v_map, TwistError, TwistingSystem};

/// Default bound on the number of lattice members per block.
pub const DEFAULT_LATTICE_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("tensor degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("v is not a permutation of words")]
    NotPermutation,
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Twist(#[from] TwistError),
}

/// A failing triple: `x ∩ (y + z) ≠ (x ∩ y) + (x ∩ z)`, given by dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityWitness {
    pub block: usize,
    pub dims: [usize; 3],
    pub lhs_dim: usize,
    pub rhs_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distributive,
    NotDistributive(DistributivityWitness),
    Inconclusive,
}

/// Per-degree outcome with the sizes involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityReport {
    pub degree: usize,
    pub verdict: Verdict,
    pub ambient: usize,
    pub blocks: usize,
    /// Sum over blocks of the lattice sizes.
    pub members: usize,
    pub largest_block_lattice: usize,
}

pub(crate) fn meet<F: Field>(ctx: &F::Context, a: &Echelon<F>, b: &Echelon<F>) -> Echelon<F> {
    let m = a.cols;
    if a.rank() == 0 || b.rank() == 0 {
        return rref(ctx, Vec::new(), m);
    }
    let zero = F::zero(ctx);
    let mut rows = Vec::with_capacity(a.rank() + b.rank());
    for r in &a.rows {
        let mut v = r.clone();
        v.extend(r.iter().cloned());
        rows.push(v);
    }
    for r in &b.rows {
        let mut v = r.clone();
        v.extend(core::iter::repeat(zero.clone()).take(m));
        rows.push(v);
    }
    let e = rref(ctx, rows, 2 * m);
    let out = e.rows.iter().zip(&e.pivots).filter(|(_, &p)| p >= m).map(|(r, _)| r[m..].to_vec()).collect();
    rref(ctx, out, m)
}

pub(crate) fn join<F: Field>(ctx: &F::Context, a: &Echelon<F>, b: &Echelon<F>) -> Echelon<F> {
    if a.rank() == 0 {
        return b.clone();
    }
    if b.rank() == 0 || a.rank() == a.cols {
        return a.clone();
    }
    rref(ctx, a.rows.iter().chain(&b.rows).cloned().collect(), a.cols)
}

/// The lattice generated by a few subspaces of one block, closed under `∩` and `+`.
#[derive(Clone, Debug)]
pub struct BlockLattice<F: Field> {
    /// Global word indices of the block's coordinates, increasing.
    pub coords: Vec<usize>,
    pub members: Vec<Echelon<F>>,
    /// Member ids of the generators, in order.
    pub generators: Vec<usize>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    pub closed: bool,
}

impl<F: Field> BlockLattice<F> {
    fn find_or_insert(&mut self, e: Echelon<F>, by_rank: &mut BTreeMap<usize, Vec<usize>>) -> usize {
        let bucket = by_rank.entry(e.rank()).or_default();
        if let Some(&i) = bucket.iter().find(|&&i| self.members[i] == e) {
            return i;
        }
        let i = self.members.len();
        self.members.push(e);
        bucket.push(i);
        i
    }

    fn build(ctx: &F::Context, coords: Vec<usize>, gens: Vec<Echelon<F>>, cap: usize) -> Self {
        let m = coords.len();
        let mut lat = BlockLattice { coords, members: Vec::new(), generators: Vec::new(), meet: Vec::new(), join: Vec::new(), closed: false };
        let mut by_rank = BTreeMap::new();
        lat.find_or_insert(rref(ctx, Vec::new(), m), &mut by_rank);
        let one = F::one(ctx);
        let ambient = (0..m)
            .map(|i| {
                let mut v = vec![F::zero(ctx); m];
                v[i] = one.clone();
                v
            })
            .collect();
        lat.find_or_insert(rref(ctx, ambient, m), &mut by_rank);
        for g in gens {
            let id = lat.find_or_insert(g, &mut by_rank);
            lat.generators.push(id);
        }
        let mut i = 0;
        while i < lat.members.len() {
            if lat.members.len() > cap {
                return lat;
            }
            lat.meet.push(vec![usize::MAX; i + 1]);
            lat.join.push(vec![usize::MAX; i + 1]);
            for j in 0..=i {
                let mt = meet(ctx, &lat.members[i], &lat.members[j]);
                let jn = join(ctx, &lat.members[i], &lat.members[j]);
                let mt = lat.find_or_insert(mt, &mut by_rank);
                let jn = lat.find_or_insert(jn, &mut by_rank);
                lat.meet[i][j] = mt;
                lat.join[i][j] = jn;
            }
            i += 1;
        }
        lat.closed = lat.members.len() <= cap;
        lat
    }

    pub fn meet_id(&self, a: usize, b: usize) -> usize {
        if a >= b {
            self.meet[a][b]
        } else {
            self.meet[b][a]
        }
    }

    pub fn join_id(&self, a: usize, b: usize) -> usize {
        if a >= b {
            self.join[a][b]
        } else {
            self.join[b][a]
        }
    }

    /// First triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn failing_triple(&self) -> Option<[usize; 3]> {
        let n = self.members.len();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    let lhs = self.meet_id(x, self.join_id(y, z));
                    let rhs = self.join_id(self.meet_id(x, y), self.meet_id(x, z));
                    if lhs != rhs {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }
}

/// The whole degree-`k` lattice, split into blocks.
#[derive(Clone, Debug)]
pub struct RelationLattice<F: Field> {
    pub degree: usize,
    pub ambient: usize,
    pub blocks: Vec<BlockLattice<F>>,
    /// `block_of[w]` for every word touched by some generator.
    pub block_of: BTreeMap<usize, usize>,
}

/// Sparse rows of `A1^{⊗i} ⊗ R ⊗ A1^{⊗(k-2-i)}` for `i = 0..k-1`.
pub fn shifted_relations<F: Field>(p: &QuadraticPresentation<F>, k: usize) -> Vec<Vec<Vec<(usize, F)>>> {
    let n = p.num_generators();
    let sparse: Vec<Vec<(usize, F)>> = p
        .relations()
        .rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w, c.clone())).collect())
        .collect();
    (0..k - 1)
        .map(|i| {
            let right = n.pow((k - 2 - i) as u32);
            let mut rows = Vec::new();
            for u in 0..n.pow(i as u32) {
                for r in &sparse {
                    for v in 0..right {
                        rows.push(r.iter().map(|(w, c)| ((u * n * n + w) * right + v, c.clone())).collect());
                    }
                }
            }
            rows
        })
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl<F: Field> RelationLattice<F> {
    pub fn build(p: &QuadraticPresentation<F>, k: usize, cap: usize) -> Result<Self, KoszulError> {
        if k < 2 {
            return Err(KoszulError::DegreeTooSmall(k));
        }
        let ctx = p.context();
        let ambient = p.num_generators().pow(k as u32);
        let gens = shifted_relations(p, k);
        let mut parent: Vec<usize> = (0..ambient).collect();
        let mut touched = vec![false; ambient];
        for rows in &gens {
            for r in rows {
                let first = r[0].0;
                touched[first] = true;
                for (w, _) in &r[1..] {
                    touched[*w] = true;
                    let (a, b) = (find(&mut parent, first), find(&mut parent, *w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut root_block = BTreeMap::new();
        let mut coords: Vec<Vec<usize>> = Vec::new();
        let mut block_of = BTreeMap::new();
        for w in 0..ambient {
            if !touched[w] {
                continue;
            }
            let r = find(&mut parent, w);
            let b = *root_block.entry(r).or_insert_with(|| {
                coords.push(Vec::new());
                coords.len() - 1
            });
            coords[b].push(w);
            block_of.insert(w, b);
        }
        let local: BTreeMap<usize, usize> =
            coords.iter().flat_map(|c| c.iter().enumerate().map(|(i, &w)| (w, i))).collect();
        let zero = F::zero(ctx);
        let mut per_block: Vec<Vec<Vec<Vec<F>>>> = coords.iter().map(|_| vec![Vec::new(); gens.len()]).collect();
        for (gi, rows) in gens.iter().enumerate() {
            for r in rows {
                let b = block_of[&r[0].0];
                let mut v = vec![zero.clone(); coords[b].len()];
                for (w, c) in r {
                    v[local[w]] = c.clone();
                }
                per_block[b][gi].push(v);
            }
        }
        let blocks = coords
            .into_iter()
            .zip(per_block)
            .map(|(c, gs)| {
                let m = c.len();
                let gens = gs.into_iter().map(|rows| rref(ctx, rows, m)).collect();
                BlockLattice::build(ctx, c, gens, cap)
            })
            .collect();
        Ok(RelationLattice { degree: k, ambient, blocks, block_of })
    }

    pub fn closed(&self) -> bool {
        self.blocks.iter().all(|b| b.closed)
    }

    pub fn verdict(&self) -> Verdict {
        for (i, b) in self.blocks.iter().enumerate() {
            if !b.closed {
                continue;
            }
            if let Some([x, y, z]) = b.failing_triple() {
                let lhs = b.meet_id(x, b.join_id(y, z));
                let rhs = b.join_id(b.meet_id(x, y), b.meet_id(x, z));
                return Verdict::NotDistributive(DistributivityWitness {
                    block: i,
                    dims: [b.members[x].rank(), b.members[y].rank(), b.members[z].rank()],
                    lhs_dim: b.members[lhs].rank(),
                    rhs_dim: b.members[rhs].rank(),
                });
            }
        }
        if self.closed() {
            Verdict::Distributive
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn report(&self) -> DistributivityReport {
        DistributivityReport {
            degree: self.degree,
            verdict: self.verdict(),
            ambient: self.ambient,
            blocks: self.blocks.len(),
            members: self.blocks.iter().map(|b| b.members.len()).sum(),
            largest_block_lattice: self.blocks.iter().map(|b| b.members.len()).max().unwrap_or(0),
        }
    }
}

pub fn distributivity_check<F: Field>(p: &QuadraticPresentation<F>, k: usize, cap: usize) -> Result<DistributivityReport, KoszulError> {
    Ok(RelationLattice::build(p, k, cap)?.report())
}

/// Generators unchanged, relations `R^⊥` for the pairing `⟨g h, g' h'⟩ = δ δ`.
pub fn quadratic_dual<F: Field>(p: &QuadraticPresentation<F>) -> QuadraticPresentation<F> {
    let ctx = p.context();
    let n2 = p.num_generators().pow(2);
    let rows = &p.relations().rows;
    let m = Matrix::from_fn(ctx, rows.len(), n2, |r, c| rows[r][c].clone());
    QuadraticPresentation::new(ctx, p.names(), p.degrees(), m.kernel()).expect("annihilator of a graded span is graded")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    /// `Σ_i (-1)^i dim A_i dim A!_{n-i}` for `n = 0..=N`.
    pub sums: Vec<i128>,
    pub pass: bool,
}

/// `H_A(z) · H_{A!}(-z) = 1` up to `z^N` in the total grading.
pub fn dual_series_test<F: Field>(p: &QuadraticPresentation<F>, n_max: usize, cap: usize) -> Result<SeriesReport, KoszulError> {
    for n in 0..=n_max {
        for k in 0..=n {
            let words = p.word_count((k, n - k));
            if words > cap {
                return Err(ShapeError::SizeCap { degree: (k, n - k), words, cap }.into());
            }
        }
    }
    let dual = quadratic_dual(p);
    let (mut h, mut hd) = (Hilbert::new(p), Hilbert::new(&dual));
    let dims: Vec<usize> = (0..=n_max).map(|n| h.total_dimension(n)).collect();
    let dual_dims: Vec<usize> = (0..=n_max).map(|n| hd.total_dimension(n)).collect();
    let sums: Vec<i128> = (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let term = dims[i] as i128 * dual_dims[n - i] as i128;
                    if i % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    let pass = sums[1..].iter().all(|&s| s == 0);
    Ok(SeriesReport { dims, dual_dims, sums, pass })
}

/// How `v` carries the lattice of `R` onto the lattice of the twisted relations `v⁻¹(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub degree: usize,
    pub members: usize,
    pub twisted_members: usize,
    /// Every twisted generator `A1^i ⊗ v⁻¹(R) ⊗ A1^j` is carried onto `A1^i ⊗ R ⊗ A1^j`.
    pub generators_match: bool,
    /// Every member of the twisted lattice is carried to a member of the original one
    /// of the same dimension, injectively and onto.
    pub bijective: bool,
    pub dims_preserved: bool,
}

impl TransportReport {
    pub fn pass(&self) -> bool {
        self.generators_match && self.bijective && self.dims_preserved
    }
}

pub fn transport_check<F: Field>(
    p: &QuadraticPresentation<F>,
    ts: &TwistingSystem<F>,
    k: usize,
    cap: usize,
) -> Result<TransportReport, KoszulError> {
    let ctx = p.context();
    let twisted = twist_presentation(p, ts)?;
    let perm = v_map(k, ts).as_permutation().ok_or(KoszulError::NotPermutation)?;
    let orig = RelationLattice::build(p, k, cap)?;
    let tw = RelationLattice::build(&twisted, k, cap)?;
    let mut report = TransportReport {
        degree: k,
        members: orig.blocks.iter().map(|b| b.members.len()).sum(),
        twisted_members: tw.blocks.iter().map(|b| b.members.len()).sum(),
        generators_match: true,
        bijective: orig.closed() && tw.closed(),
        dims_preserved: true,
    };
    let mut hit: Vec<Vec<bool>> = orig.blocks.iter().map(|b| vec![false; b.members.len()]).collect();
    for b in &tw.blocks {
        let image: Vec<usize> = b.coords.iter().map(|&w| perm[w]).collect();
        let Some(&ob) = orig.block_of.get(&image[0]) else {
            report.bijective = false;
            report.generators_match = false;
            continue;
        };
        let target = &orig.blocks[ob];
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted != target.coords {
            report.bijective = false;
            report.generators_match = false;
            continue;
        }
        let pos: BTreeMap<usize, usize> = target.coords.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let m = target.coords.len();
        let carried: Vec<Option<usize>> = b
            .members
            .iter()
            .map(|e| {
                let rows = e
                    .rows
                    .iter()
                    .map(|r| {
                        let mut v = vec![F::zero(ctx); m];
                        for (i, c) in r.iter().enumerate() {
                            v[pos[&image[i]]] = c.clone();
                        }
                        v
                    })
                    .collect();
                let e2 = rref(ctx, rows, m);
                target.members.iter().position(|x| *x == e2)
            })
            .collect();
        for (i, c) in carried.iter().enumerate() {
            match c {
                Some(j) => {
                    if hit[ob][*j] {
                        report.bijective = false;
                    }
                    hit[ob][*j] = true;
                    if target.members[*j].rank() != b.members[i].rank() {
                        report.dims_preserved = false;
                    }
                }
                None => report.bijective = false,
            }
        }
        for (gi, &g) in b.generators.iter().enumerate() {
            if carried[g] != Some(target.generators[gi]) {
                report.generators_match = false;
            }
        }
    }
    if hit.iter().flatten().any(|h| !h) {
        report.bijective = false;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Ring;
    use crate::bqd::Bqd;
    use crate::field::{Fp, PrimeModulus, Rational};
    use crate::primes::DEFAULT_PRIMES;
    use crate::shape::{shape_presentation, DEFAULT_WORD_CAP};
    use crate::twist::{permutation_matrix, standard_tau, untwisted_display};

    fn fp(x: u64) -> Fp {
        Fp::from_u64(&PrimeModulus::new(DEFAULT_PRIMES[0]).unwrap(), x)
    }

    fn shape_ih(t: u64) -> QuadraticPresentation<Fp> {
        shape_presentation(&Bqd::case_ih(&fp(t)).unwrap())
    }

    #[test]
    fn meet_and_join() {
        let e = |rows: Vec<Vec<i64>>| rref(&(), rows.into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect(), 3);
        let a = e(vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = e(vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(meet(&(), &a, &b), e(vec![vec![0, 1, 0]]));
        assert_eq!(join(&(), &a, &b).rank(), 3);
        let c = e(vec![vec![1, 1, 1]]);
        assert_eq!(meet(&(), &a, &c).rank(), 0);
    }

    #[test]
    fn three_lines_in_a_plane_are_not_distributive() {
        let e = |r: Vec<i64>| rref(&(), vec![r.into_iter().map(Rational::from_integer).collect()], 2);
        let lat = BlockLattice::build(&(), vec![0, 1], vec![e(vec![1, 0]), e(vec![0, 1]), e(vec![1, 1])], 100);
        assert!(lat.closed);
        assert!(lat.failing_triple().is_some());
    }

    #[test]
    fn degree_two_and_three() {
        let p = shape_ih(2);
        assert_eq!(distributivity_check(&p, 2, DEFAULT_LATTICE_CAP).unwrap().verdict, Verdict::Distributive);
        let ie = shape_presentation(&Bqd::case_ie(&fp(2)).unwrap());
        assert_eq!(distributivity_check(&ie, 3, DEFAULT_LATTICE_CAP).unwrap().verdict, Verdict::Distributive);
        let ie_q = shape_presentation(&Bqd::case_ie(&Rational::from_integer(2)).unwrap());
        assert_eq!(distributivity_check(&ie_q, 3, DEFAULT_LATTICE_CAP).unwrap().verdict, Verdict::Distributive);
        assert_eq!(distributivity_check(&p, 1, 10).unwrap_err(), KoszulError::DegreeTooSmall(1));
    }

    #[test]
    fn degree_four() {
        let r = distributivity_check(&shape_ih(2), 4, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Distributive);
        assert_eq!(r.ambient, 1296);
    }

    #[test]
    fn cap_gives_inconclusive() {
        let r = distributivity_check(&shape_ih(2), 3, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn generic_relations_are_not_distributive() {
        // three generic quadratic relations in two variables: x², y² and a mixed one
        let one = Rational::from_integer(1);
        let two = Rational::from_integer(2);
        let p = QuadraticPresentation::from_terms(
            &(),
            &["x", "y"],
            &[(1, 0), (1, 0)],
            &[vec![(one.clone(), 0, 0), (one.clone(), 0, 1), (two.clone(), 1, 0)], vec![(one.clone(), 1, 1), (two, 0, 1)]],
        )
        .unwrap();
        let r = distributivity_check(&p, 4, 200).unwrap();
        assert!(!matches!(r.verdict, Verdict::Distributive), "{:?}", r);
    }

    #[test]
    fn symmetric_algebra_dual() {
        let one = Rational::from_integer(1);
        let p = QuadraticPresentation::from_terms(&(), &["x", "y"], &[(1, 0); 2], &[vec![(one.clone(), 0, 1), (one.neg(), 1, 0)]]).unwrap();
        let d = quadratic_dual(&p);
        let expected = QuadraticPresentation::from_terms(
            &(),
            &["x", "y"],
            &[(1, 0); 2],
            &[vec![(one.clone(), 0, 0)], vec![(one.clone(), 1, 1)], vec![(one.clone(), 0, 1), (one.clone(), 1, 0)]],
        )
        .unwrap();
        assert_eq!(d, expected);
        assert_eq!(quadratic_dual(&d), p);
    }

    #[test]
    fn shape_dual_dimension() {
        let p = shape_ih(3);
        let d = quadratic_dual(&p);
        assert_eq!(d.num_relations(), 20);
        assert_eq!(p.num_relations() + d.num_relations(), 36);
        assert_eq!(quadratic_dual(&d), p);
    }

    #[test]
    fn series_for_symmetric_algebra() {
        let one = Rational::from_integer(1);
        let comm = |a: usize, b: usize| vec![(one.clone(), a, b), (one.neg(), b, a)];
        let p = QuadraticPresentation::from_terms(&(), &["x", "y", "z"], &[(1, 0); 3], &[comm(0, 1), comm(0, 2), comm(1, 2)]).unwrap();
        let r = dual_series_test(&p, 5, DEFAULT_WORD_CAP).unwrap();
        assert!(r.pass);
        assert_eq!(r.dims, [1, 3, 6, 10, 15, 21]);
        assert_eq!(r.dual_dims, [1, 3, 3, 1, 0, 0]);
    }

    #[test]
    fn series_for_shape() {
        let r = dual_series_test(&shape_ih(2), 5, DEFAULT_WORD_CAP).unwrap();
        assert!(r.pass, "{:?}", r);
        assert_eq!(r.dims, [1, 6, 20, 50, 105, 196]);
    }

    #[test]
    fn perturbed_series_fails() {
        let p = shape_ih(2);
        let mut rows = p.relations().rows.clone();
        // drop one exchange relation
        let drop = (0..rows.len()).find(|&r| p.row_degree(r) == (1, 1)).unwrap();
        rows.remove(drop);
        let q = QuadraticPresentation::new(p.context(), p.names(), p.degrees(), rows).unwrap();
        assert!(!dual_series_test(&q, 5, DEFAULT_WORD_CAP).unwrap().pass);
    }

    #[test]
    fn invariant_under_graded_base_change() {
        let p = shape_ih(5);
        let g = permutation_matrix::<Fp>(p.context(), &[1, 0, 2, 3, 5, 4]);
        let mut g = g;
        g.set(2, 0, fp(3));
        g.set(3, 5, fp(7));
        let q = p.transform(&g);
        for k in 2..=4 {
            let a = distributivity_check(&p, k, DEFAULT_LATTICE_CAP).unwrap();
            let b = distributivity_check(&q, k, DEFAULT_LATTICE_CAP).unwrap();
            assert_eq!(a.verdict, b.verdict);
        }
    }

    #[test]
    fn v_carries_lattices() {
        let ctx = PrimeModulus::new(DEFAULT_PRIMES[1]).unwrap();
        let t = Fp::from_u64(&ctx, 2);
        let p = untwisted_display(&t);
        let ts = standard_tau(&ctx);
        for k in 2..=4 {
            let r = transport_check(&p, &ts, k, DEFAULT_LATTICE_CAP).unwrap();
            assert!(r.pass(), "{:?}", r);
            assert_eq!(r.members, r.twisted_members);
        }
    }
}
