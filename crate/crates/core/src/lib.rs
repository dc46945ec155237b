pub mod complexes;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod lab;
mod parse;
pub mod poly;
pub mod projective;
pub mod sample;
pub mod twisted;
pub mod weyl;

pub use error::{Error, Result};
pub use field::{FieldElement, Prime};
pub use matrix::{FreeModuleMap, PolyMatrix};
pub use poly::{Monomial, Ring, SparsePolynomial, VarName};

/// Recorded in reports and mixed into cache keys.
pub const ENGINE_VERSION: &str = concat!("frobenius-lab/", env!("CARGO_PKG_VERSION"));
