//! Sylvester resultants of multivariate polynomials.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::field::{Field, Ring};
use crate::matrix::Matrix;
use crate::poly::{MultiPoly, PolyError};

/// Sylvester matrix of `p` and `q` in `var`: `deg q` shifted rows of `p`'s
/// coefficients (highest first) above `deg p` shifted rows of `q`'s.
pub fn sylvester_matrix<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>, var: &str) -> Result<Matrix<MultiPoly<F>>, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let cp = p.coefficients_in(var)?;
    let cq = q.coefficients_in(var)?;
    let (m, n) = (cp.len() - 1, cq.len() - 1);
    if m == 0 || n == 0 {
        return Err(PolyError::ConstantInVariable(var.to_string()));
    }
    let size = m + n;
    let ctx = p.context();
    let row = |coeffs: &[MultiPoly<F>], deg: usize, shift: usize| -> Vec<MultiPoly<F>> {
        (0..size)
            .map(|c| match c.checked_sub(shift) {
                Some(k) if k <= deg => coeffs[deg - k].clone(),
                _ => MultiPoly::zero(&ctx),
            })
            .collect()
    };
    let mut rows = Vec::with_capacity(size);
    for s in 0..n {
        rows.push(row(&cp, m, s));
    }
    for s in 0..m {
        rows.push(row(&cq, n, s));
    }
    Ok(Matrix::from_rows(&ctx, rows).expect("square by construction"))
}

/// Determinant of the Sylvester matrix, as a polynomial without `var`.
pub fn resultant<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>, var: &str) -> Result<MultiPoly<F>, PolyError> {
    let s = sylvester_matrix(p, q, var)?;
    let d = s.det_bareiss().expect("square");
    d.drop_var(var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::PolyContext;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn ctx() -> PolyContext<Rational> {
        PolyContext::new(&["x", "a", "b"], ())
    }

    #[test]
    fn linear_resultant() {
        let c = ctx();
        let (x, a, b) = (c.var("x"), c.var("a"), c.var("b"));
        let r = resultant(&x.sub(&a), &x.sub(&b), "x").unwrap();
        assert_eq!(r.vars(), ["a", "b"]);
        assert_eq!(r.to_string(), "a - b");
    }

    #[test]
    fn common_root_gives_zero() {
        let c = ctx();
        let x = c.var("x");
        let x2 = x.mul(&x);
        assert!(resultant(&x2, &x2, "x").unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let c = ctx();
        let x = c.var("x");
        assert_eq!(resultant(&MultiPoly::zero(&c), &x, "x"), Err(PolyError::ZeroInput));
        assert!(matches!(resultant(&x, &x, "z"), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(resultant(&c.var("a"), &x, "x"), Err(PolyError::ConstantInVariable(_))));
    }

    #[test]
    fn product_of_root_differences() {
        // Res_x((x-1)(x-2), x-a) = (1-a)(2-a) up to sign
        let c = ctx();
        let (x, a) = (c.var("x"), c.var("a"));
        let p = x.sub(&c.int(1)).mul(&x.sub(&c.int(2)));
        let r = resultant(&p, &x.sub(&a), "x").unwrap();
        let a2 = r.poly_context().var("a");
        let one = r.poly_context().int(1);
        let two = r.poly_context().int(2);
        assert_eq!(r, one.sub(&a2).mul(&two.sub(&a2)));
    }

    proptest! {
        #[test]
        fn vanishes_iff_common_factor(r1 in -5i64..6, r2 in -5i64..6, r3 in -5i64..6, k in 1i64..4) {
            // p = (x - r1)(x - k a), q = (x - r2)(x - r3) share a factor iff some root coincides
            let c = ctx();
            let (x, a) = (c.var("x"), c.var("a"));
            let p = x.sub(&c.int(r1)).mul(&x.sub(&a.scale(&Rational::from_integer(k))));
            let q = x.sub(&c.int(r2)).mul(&x.sub(&c.int(r3)));
            let res = resultant(&p, &q, "x").unwrap();
            prop_assert_eq!(res.is_zero(), r1 == r2 || r1 == r3);
            let shared = p.mul(&x.sub(&c.var("b")));
            let q2 = q.mul(&x.sub(&c.var("b")));
            prop_assert!(resultant(&shared, &q2, "x").unwrap().is_zero());
        }
    }
}
