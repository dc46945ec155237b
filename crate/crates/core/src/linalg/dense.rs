use std::fmt;

use crate::field;

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

/// Outcome of [`FpMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Vec<Vec<u32>>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn from_signed(rows: &[&[i64]], p: u32) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let r: Vec<Vec<u32>> =
            rows.iter().map(|r| r.iter().map(|&v| field::reduce_signed(v, p)).collect()).collect();
        Self::from_rows(&r, cols, p)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p;
        let mut out = FpMatrix::zeros(self.rows, other.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = field::add(out.get(i, j), field::mul(a, b, p), p);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        FpMatrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| field::add(*a, *b, p)).collect(),
            ..self.clone()
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (a, b)| (acc + *a as u64 * *b as u64) % p as u64) as u32
            })
            .collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Exact reduced row echelon form, rank, pivot columns and a kernel basis.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let kernel = m.kernel_from_rref(&pivots);
        Rref { reduced: m, rank, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Reduces in place and returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = field::inv(self.get(r, c), p);
            if inv != 1 {
                for j in c..cols {
                    let v = field::mul(self.get(r, j), inv, p);
                    self.set(r, j, v);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            eliminate(head, pivot_row, cols, c, p);
            eliminate(&mut rest[..(rows - r - 1) * cols], pivot_row, cols, c, p);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn kernel_from_rref(&self, pivots: &[usize]) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field::neg(self.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }
}

fn eliminate(block: &mut [u32], pivot_row: &[u32], cols: usize, c: usize, p: u32) {
    for row in block.chunks_mut(cols) {
        let f = row[c];
        if f == 0 {
            continue;
        }
        let nf = field::neg(f, p) as u64;
        for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
            if y != 0 {
                *x = ((*x as u64 + nf * y as u64) % p as u64) as u32;
            }
        }
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A row space kept in reduced echelon form, for normal forms and membership.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize, p: u32) -> Self {
        RowSpace { dim, p, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(dim: usize, p: u32, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let vs: Vec<Vec<u32>> = vectors.into_iter().collect();
        if vs.is_empty() {
            return Self::new(dim, p);
        }
        let mut m = FpMatrix::from_rows(&vs, dim, p);
        let pivots = m.rref_in_place();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        RowSpace { dim, p, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` so that it vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let nf = field::neg(f, p) as u64;
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u64 + nf * y as u64) % p as u64) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of a member in the echelon basis (read off at pivots).
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let r = FpMatrix::identity(3, 7).rref();
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let r = FpMatrix::zeros(2, 4, 5).rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 4);
    }

    #[test]
    fn proportional_rows() {
        let m = FpMatrix::from_signed(&[&[1, 2], &[2, 4]], 5);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.len(), 1);
        assert!(m.apply(&r.kernel[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn row_space_membership() {
        let s = RowSpace::spanned_by(3, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 2, 1]));
        assert!(!s.contains(&[1, 0, 0]));
    }
}
