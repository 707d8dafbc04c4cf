//! Dense exact matrices.

use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("matrix is singular")]
    Singular,
}

/// Row-major dense matrix over a ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Context,
    data: Vec<R>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}  ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zero(ctx: &R::Context, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, ctx: ctx.clone(), data: alloc::vec![R::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &R::Context, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one(ctx);
        }
        m
    }

    pub fn from_fn<G: FnMut(usize, usize) -> R>(ctx: &R::Context, rows: usize, cols: usize, mut f: G) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, ctx: ctx.clone(), data }
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(ctx: &R::Context, rows: Vec<Vec<R>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::DimensionMismatch("ragged rows"));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, ctx: ctx.clone(), data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &R::Context {
        &self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring, G: Fn(&R) -> S>(&self, ctx: &S::Context, f: G) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn scale(&self, s: &R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data: self.data.iter().map(|x| x.mul(s)).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimensionMismatch("add"));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.add(&rhs.scale(&R::from_int(&self.ctx, -1)))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch("product"));
        }
        let mut out = Self::zero(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; row index of the result is `r1 * rhs.rows + r2`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        Self::from_fn(&self.ctx, self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self.get(r / rhs.rows, c / rhs.cols).mul(rhs.get(r % rhs.rows, c % rhs.cols))
        })
    }

    /// Fraction-free (Bareiss) determinant; every division is exact.
    pub fn det_bareiss(&self) -> Result<R, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(R::one(&self.ctx));
        }
        let mut m: Vec<Vec<R>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut prev = R::one(&self.ctx);
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(R::zero(&self.ctx)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = R::zero(&self.ctx);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Determinant by cofactor expansion along the first row; exponential, for cross-checks only.
    pub fn det_cofactor(&self) -> Result<R, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.is_empty() {
            return R::one(&self.ctx);
        }
        let mut acc = R::zero(&self.ctx);
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e.mul(&self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
}

/// Reduced row echelon form of a list of rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F: Field> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = alloc::vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` against the echelon rows; zero iff `v` lies in the row span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Ring::is_zero)
    }
}

/// Gauss-Jordan elimination over a field.
pub fn rref<F: Field>(ctx: &F::Context, mut rows: Vec<Vec<F>>, cols: usize) -> Echelon<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(below.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (x, y) in other.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    let _ = ctx;
    Echelon { rows, pivots, cols }
}

impl<F: Field> Matrix<F> {
    pub fn rref(&self) -> Echelon<F> {
        rref(&self.ctx, (0..self.rows).map(|r| self.row(r).to_vec()).collect(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Right kernel basis, one vector per free column, in reduced form:
    /// vector `k` has a 1 at free column `k` and zeros at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        let one = F::one(&self.ctx);
        e.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = alloc::vec![F::zero(&self.ctx); self.cols];
                v[f] = one.clone();
                for (row, &p) in e.rows.iter().zip(&e.pivots) {
                    v[p] = row[f].neg();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let rows = (0..n)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.extend((0..n).map(|c| if c == r { F::one(&self.ctx) } else { F::zero(&self.ctx) }));
                v
            })
            .collect();
        let e = rref(&self.ctx, rows, 2 * n);
        if e.rank() < n || e.pivots[n - 1] >= n {
            return Err(MatrixError::Singular);
        }
        Ok(Self::from_fn(&self.ctx, n, n, |r, c| e.rows[r][n + c].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeModulus, Rational};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(&(), rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(Matrix::<Rational>::identity(&(), 3).det_bareiss().unwrap(), q(1));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det_bareiss().unwrap(), q(-1));
        assert_eq!(mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det_bareiss().unwrap(), q(6));
        assert!(mat(&[&[1, 2]]).det_bareiss().is_err());
    }

    #[test]
    fn rank_and_kernel_basics() {
        let z = Matrix::<Rational>::zero(&(), 4, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
        let id = Matrix::<Rational>::identity(&(), 5);
        assert_eq!(id.rank(), 5);
        assert!(id.kernel().is_empty());
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        for v in m.kernel() {
            let col = Matrix::from_fn(&(), 3, 1, |r, _| v[r].clone());
            assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1, 0], &[0, 1, 4], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&(), 3));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).inverse(), Err(MatrixError::Singular));
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(entries in proptest::collection::vec(-9i64..10, 16)) {
            let m = Matrix::from_fn(&(), 4, 4, |r, c| q(entries[4 * r + c]));
            prop_assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
        }

        #[test]
        fn rank_over_q_matches_two_primes(entries in proptest::collection::vec(-3i64..4, 20)) {
            let m = Matrix::from_fn(&(), 4, 5, |r, c| q(entries[5 * r + c]));
            for p in crate::primes::DEFAULT_PRIMES {
                let modulus = PrimeModulus::new(p).unwrap();
                let mp = m.map(&modulus, |x| x.to_fp(&modulus).unwrap());
                prop_assert_eq!(mp.rank(), m.rank());
            }
        }

        #[test]
        fn kronecker_mixed_product(a in proptest::collection::vec(-3i64..4, 4), b in proptest::collection::vec(-3i64..4, 4)) {
            let ma = Matrix::from_fn(&(), 2, 2, |r, c| q(a[2 * r + c]));
            let mb = Matrix::from_fn(&(), 2, 2, |r, c| q(b[2 * r + c]));
            let lhs = ma.kronecker(&mb).mul(&mb.kronecker(&ma)).unwrap();
            let rhs = ma.mul(&mb).unwrap().kronecker(&mb.mul(&ma).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
