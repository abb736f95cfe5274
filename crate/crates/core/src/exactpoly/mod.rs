//! Exact univariate arithmetic over the rationals.
//!
//! [`Poly`] is the result type of every counting engine. [`HalfLaurent`]
//! carries normalized hook polynomials, whose exponents are half-integers
//! until they are assembled into honest polynomials.

mod laurent;
mod parser;
mod poly;

pub use laurent::HalfLaurent;
pub use parser::parse_polynomial;
pub use poly::{int, rat, Poly, Rational};
