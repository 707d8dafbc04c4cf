//! Exact algebra for the quantum SL(3) verification suite.
//!
//! Everything here is pure computation over exact scalars: rationals,
//! rational functions in `t`, word-size prime fields and `Q(j)`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bqd;
pub mod classify;
pub mod field;
pub mod geometry;
pub mod hopf;
pub mod koszul;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod ratfunc;
pub mod resultant;
pub mod shape;
pub mod tensor;
pub mod twist;
pub mod upoly;

pub use field::{Field, Fp, PrimeModulus, Qj, Rational, Ring};
pub use poly::{Monomial, MultiPoly, PolyContext};
pub use ratfunc::RatFunc;
pub use upoly::UPoly;
