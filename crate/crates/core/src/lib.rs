//! Exact counting polynomials for character stacks of surface groups.

pub mod arith;
pub mod error;
pub mod exactpoly;
pub mod genus_tables;
pub mod gln;
pub mod oracle;
pub mod partitions;
pub mod rootdata;

pub use error::{Error, ParseError, Result};
pub use exactpoly::{parse_polynomial, HalfLaurent, Poly, Rational};
pub use partitions::Partition;
