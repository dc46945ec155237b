//! Matrices of polynomials: the representation of every O-linear map between
//! free modules. Columns are images of source basis vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Ring, SparsePolynomial};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<SparsePolynomial>,
}

/// Free-module map `R^cols → R^rows`.
pub type FreeModuleMap = PolyMatrix;

impl PolyMatrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<SparsePolynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Shape("ragged rows".into()));
            }
            for e in row {
                ring.check_same(&e.ring())?;
                entries.push(e);
            }
        }
        Ok(PolyMatrix { ring, rows: nrows, cols: ncols, entries })
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<SparsePolynomial>]) -> Result<Self> {
        let mut m = Self::zero(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!("column {j} has length {}, expected {rows}", col.len())));
            }
            for (i, e) in col.iter().enumerate() {
                ring.check_same(&e.ring())?;
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    /// Parses `[[a, b], [c, d]]`-style rows of polynomial strings.
    pub fn parse_rows(ring: Ring, rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, parsed)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SparsePolynomial) {
        debug_assert_eq!(v.ring(), self.ring);
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &SparsePolynomial) {
        let k = i * self.cols + j;
        self.entries[k] = &self.entries[k] + v;
    }

    pub fn column(&self, j: usize) -> Vec<SparsePolynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<SparsePolynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SparsePolynomial::is_zero)
    }

    pub fn entries(&self) -> &[SparsePolynomial] {
        &self.entries
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[SparsePolynomial]) -> Result<Vec<SparsePolynomial>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let mut out = vec![self.ring.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: u32) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack of different row counts".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(self.ring, self.rows, &cols)
    }

    /// Applies `f` entrywise; `ring` is the ring of the results.
    pub fn map_entries(&self, ring: Ring, f: impl Fn(&SparsePolynomial) -> SparsePolynomial) -> PolyMatrix {
        PolyMatrix { ring, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Determinant by cofactor expansion along the first row; only meant for
    /// the small square matrices used in tests and oracles.
    pub fn determinant(&self) -> Result<SparsePolynomial> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        Ok(det_rec(self, &(0..self.rows).collect::<Vec<_>>(), 0))
    }
}

fn det_rec(m: &PolyMatrix, cols: &[usize], row: usize) -> SparsePolynomial {
    if cols.is_empty() {
        return m.ring.one();
    }
    let mut acc = m.ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let t = a * &det_rec(m, &rest, row + 1);
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    #[test]
    fn product_and_determinant() {
        let r = Ring::y(Prime::new(3).unwrap(), 1);
        let m = PolyMatrix::parse_rows(r, &[&["0", "1", "y0"], &["1", "0", "2"], &["0", "1", "0"]]).unwrap();
        assert_eq!(m.determinant().unwrap(), r.parse("y0").unwrap());
        let id = PolyMatrix::identity(r, 3);
        assert_eq!(m.checked_mul(&id).unwrap(), m);
        assert!(id.checked_mul(&PolyMatrix::zero(r, 2, 2)).is_err());
    }
}
