//! Exact arithmetic: ℚ(i), formal τ = 2πi, polynomials and rational functions.

mod field;
mod gaussian;
pub mod linalg;
mod poly;
pub mod quotient;
mod ratfun;
pub mod roots;
mod tau;
mod unipoly;

pub use field::Field;
pub use gaussian::GaussianRational;
pub use poly::{gcd, Monomial, MultiPoly, Symbol};
pub use ratfun::{substitute_poly, RationalFunction};
pub use tau::TauScalar;
pub use unipoly::UniPoly;
