//! Exact arithmetic in Q[U,V] and Q(U,V).

mod bipoly;
mod linear;
mod parse;
mod ratfunc;
mod univariate;

pub use bipoly::{BiPoly, Monomial};
pub use linear::{identity, invert, mat_mul, solve_linear, Matrix};
pub use ratfunc::RatFunc;

pub type Rational = num_rational::BigRational;
