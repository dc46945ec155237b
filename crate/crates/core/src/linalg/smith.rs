//! Smith normal form over the principal ideal domain k[y].
//!
//! This is deliberately its own code path (dense univariate Euclidean
//! arithmetic, no Gröbner bases): it serves as the oracle for one-variable
//! cohomology computations.

use crate::error::{Error, Result};
use crate::field;
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Ring, SparsePolynomial};

/// Dense univariate polynomial, coefficients from degree 0 up, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly(Vec<u32>);

impl UPoly {
    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn constant(c: u32) -> Self {
        UPoly(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    fn add(&self, o: &UPoly, p: u32) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| field::add(*self.0.get(i).unwrap_or(&0), *o.0.get(i).unwrap_or(&0), p))
            .collect();
        UPoly(v).trimmed()
    }

    fn scale(&self, c: u32, p: u32) -> UPoly {
        UPoly(self.0.iter().map(|&a| field::mul(a, c, p)).collect()).trimmed()
    }

    fn mul(&self, o: &UPoly, p: u32) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![0u32; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                v[i + j] = field::add(v[i + j], field::mul(a, b, p), p);
            }
        }
        UPoly(v).trimmed()
    }

    fn div_rem(&self, d: &UPoly, p: u32) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.0.len() - 1;
        let inv = field::inv(d.lc(), p);
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quo = vec![0u32; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = field::mul(rem[k + dd], inv, p);
            quo[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.0.iter().enumerate() {
                rem[k + j] = field::sub(rem[k + j], field::mul(c, b, p), p);
            }
        }
        rem.truncate(dd);
        (UPoly(quo).trimmed(), UPoly(rem).trimmed())
    }

    fn from_sparse(f: &SparsePolynomial) -> UPoly {
        let deg = f.total_degree().unwrap_or(0) as usize;
        let mut v = vec![0u32; deg + 1];
        for (m, c) in f.terms() {
            v[m.exponents()[0] as usize] = c;
        }
        UPoly(v).trimmed()
    }

    fn to_sparse(&self, ring: Ring) -> SparsePolynomial {
        SparsePolynomial::from_terms(
            ring,
            self.0.iter().enumerate().map(|(i, &c)| (Monomial::from_exponents(&[i as u32]), c)),
        )
    }
}

/// `U · M · V = D` with `D` diagonal, `d_i | d_{i+1}`, `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub d: PolyMatrix,
    /// Monic nonzero diagonal entries, in order.
    pub invariant_factors: Vec<SparsePolynomial>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// k-dimension of the cokernel, `None` when it contains a free part.
    pub fn cokernel_dimension(&self) -> Option<u64> {
        if self.rank() < self.d.rows() {
            return None;
        }
        Some(self.torsion_dimension())
    }

    /// Σ deg d_i: the k-dimension of the torsion part of the cokernel.
    pub fn torsion_dimension(&self) -> u64 {
        self.invariant_factors.iter().map(|d| d.total_degree().unwrap_or(0) as u64).sum()
    }

    /// Number of zero columns of `D`: the rank of the kernel.
    pub fn kernel_rank(&self) -> usize {
        self.d.cols() - self.rank()
    }
}

struct Work {
    p: u32,
    m: Vec<Vec<UPoly>>,
    u: Vec<Vec<UPoly>>,
    v: Vec<Vec<UPoly>>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.m.iter_mut().chain(self.v.iter_mut()) {
            row.swap(a, b);
        }
    }

    /// row_dst += c · row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &UPoly) {
        let p = self.p;
        for mat in [&mut self.m, &mut self.u] {
            let s = mat[src].clone();
            for (x, y) in mat[dst].iter_mut().zip(&s) {
                *x = x.add(&y.mul(c, p), p);
            }
        }
    }

    /// col_dst += c · col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &UPoly) {
        let p = self.p;
        for row in self.m.iter_mut().chain(self.v.iter_mut()) {
            let t = row[src].mul(c, p);
            row[dst] = row[dst].add(&t, p);
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let p = self.p;
        for mat in [&mut self.m, &mut self.u] {
            for x in mat[r].iter_mut() {
                *x = x.scale(c, p);
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<UPoly>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { UPoly::constant(1) } else { UPoly::zero() }).collect()).collect()
}

pub fn smith_normal_form(m: &PolyMatrix) -> Result<SmithDecomposition> {
    let ring = m.ring();
    if ring.nvars() != 1 {
        return Err(Error::NotUnivariate(format!("matrix over {ring}")));
    }
    let p = ring.p();
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        p,
        m: (0..rows).map(|i| (0..cols).map(|j| UPoly::from_sparse(m.get(i, j))).collect()).collect(),
        u: identity(rows),
        v: identity(cols),
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: nonzero entry of least degree in the trailing block
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.m[i][j].is_zero())
            .min_by_key(|&(i, j)| (w.m[i][j].degree(), i, j));
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if w.m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = w.m[i][t].div_rem(&w.m[t][t], p);
                w.add_row(i, t, &q.scale(p - 1, p));
                if !r.is_zero() {
                    w.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if w.m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.m[t][j].div_rem(&w.m[t][t], p);
                w.add_col(j, t, &q.scale(p - 1, p));
                if !r.is_zero() {
                    w.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // row and column clean; enforce divisibility of the rest
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.m[i][j].div_rem(&w.m[t][t], p).1.is_zero());
            match bad {
                Some((i, _)) => w.add_row(t, i, &UPoly::constant(1)),
                None => break,
            }
        }
        let lc = w.m[t][t].lc();
        if lc != 1 {
            w.scale_row(t, field::inv(lc, p));
        }
        t += 1;
    }

    let to_matrix = |a: &Vec<Vec<UPoly>>, r: usize, c: usize| {
        let mut out = PolyMatrix::zero(ring, r, c);
        for i in 0..r {
            for j in 0..c {
                out.set(i, j, a[i][j].to_sparse(ring));
            }
        }
        out
    };
    let d = to_matrix(&w.m, rows, cols);
    let invariant_factors =
        (0..rows.min(cols)).map(|i| d.get(i, i).clone()).take_while(|e| !e.is_zero()).collect();
    Ok(SmithDecomposition { u: to_matrix(&w.u, rows, rows), v: to_matrix(&w.v, cols, cols), d, invariant_factors })
}
