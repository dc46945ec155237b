//! Exact linear algebra: dense reduction over F_p and Smith normal form over
//! k[y].

mod dense;
mod smith;

pub use dense::{FpMatrix, Rref, RowSpace};
pub use smith::{smith_normal_form, SmithDecomposition};
