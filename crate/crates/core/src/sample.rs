//! Seeded random inputs for sweeps and cross-checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Ring, SparsePolynomial};
use crate::weyl::VectorField;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial of total degree at most `max_degree` with up to `terms`
/// random terms.
pub fn polynomial(ring: Ring, max_degree: u32, terms: usize, rng: &mut impl Rng) -> SparsePolynomial {
    let n = ring.nvars();
    let p = ring.p();
    let mut out = SparsePolynomial::zero(ring);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            if n > 0 {
                e[rng.gen_range(0..n)] += 1;
            }
        }
        out.add_term(Monomial::from_exponents(&e), rng.gen_range(1..p));
    }
    out
}

pub fn vector_field(ring: Ring, max_degree: u32, terms: usize, rng: &mut impl Rng) -> VectorField {
    let coefficients = (0..ring.nvars()).map(|_| polynomial(ring, max_degree, terms, rng)).collect();
    VectorField::new(ring, coefficients).expect("coefficients share the ring")
}

/// A `rows × cols` matrix over a univariate ring with entries of degree at
/// most `max_degree`; roughly a third of the entries are zero.
pub fn univariate_matrix(ring: Ring, rows: usize, cols: usize, max_degree: u32, rng: &mut impl Rng) -> PolyMatrix {
    let mut m = PolyMatrix::zero(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_ratio(2, 3) {
                m.set(i, j, polynomial(ring, max_degree, 2, rng));
            }
        }
    }
    m
}
