//! Exact integer-sequence transforms and their canonical eigen-sequences.
//!
//! The crate is organised bottom-up:
//!
//! - [`seq`]: exact rational sequences with an offset, plus the auxiliary
//!   operators R, L, N and M.
//! - [`series`]: truncated formal power series over the rationals.
//! - [`linear`], [`conv`], [`numtheory`], [`product`]: the sequence
//!   transforms, grouped by how they are computed.
//! - [`expr`]: operator expressions such as `R^2∘STIRLING` and their parser.
//! - [`eigen`]: solvers for sequences fixed by such expressions.
//! - [`catalog`]: the table of known eigen-sequences and the checks that
//!   reproduce them.
//!
//! Everything is exact. There is no floating point anywhere in the crate.

pub mod catalog;
pub mod conv;
pub mod eigen;
mod error;
pub mod expr;
pub mod linear;
pub mod numtheory;
pub mod product;
mod rational;
pub mod seq;
pub mod series;

pub use catalog::{Catalog, CatalogEntry, Property};
pub use eigen::{EigenProblem, OrbitReport};
pub use error::{Error, ParseError, Result};
pub use expr::{Factor, OpName, TransformExpr};
pub use rational::{format_rational, parse_rational, Rational};
pub use seq::{Offset, Sequence};
pub use series::PowerSeries;
