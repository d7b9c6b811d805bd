//! Exact arithmetic on the projective line: rationals, polynomials, rational
//! one-forms with residues and chart change, and dense rational matrices.

mod form;
mod matrix;
mod poly;
mod scalar;

pub use form::{FormError, OneForm, Point};
pub use matrix::{Mat, Solution};
pub use poly::Poly;
pub use scalar::{ParseScalarError, Scalar};
