//! Hodge numbers and de Rham hypercohomology of `P¹`, `P²` and smooth plane
//! curves, via a pole-order truncated Čech–de Rham double complex.
//!
//! A section of `Ω^q` on `U_I = {x_I ≠ 0}` with pole order `k` is a basic
//! (Euler-contraction free) homogeneous form `ω / x_I^k` whose numerator has
//! weight `k·|I|`, where `x^a dx_K` has weight `|a| + |K|`. On a curve
//! `V(G)` numerators are taken modulo the forms `G·α + dG∧β`. Column `q`
//! of the grid uses pole order `D + q`, so `d` and `δ` both stay inside the
//! truncation.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{exterior_basis, wedge_left};
use crate::error::{Error, Result};
use crate::field::{self, Prime};
use crate::groebner::{module_groebner, quotient_k_dimension, FreeModuleVector, ModuleOrder};
use crate::linalg::{FpMatrix, RowSpace};
use crate::poly::{Ring, SparsePolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    equation: SparsePolynomial,
    degree: u32,
}

impl PlaneCurve {
    /// Checks that `G` is homogeneous in three variables and that
    /// `k[x]/(G, ∂G)` is finite, i.e. the affine cone is singular only at 0.
    pub fn new(g: SparsePolynomial) -> Result<Self> {
        let ring = g.ring();
        if ring.nvars() != 3 {
            return Err(Error::Shape(format!("a plane curve needs 3 variables, got {}", ring.nvars())));
        }
        let degree = g.total_degree().ok_or_else(|| Error::Shape("the zero polynomial is not a curve".into()))?;
        if g.terms().any(|(m, _)| m.degree() != degree) {
            return Err(Error::Shape(format!("{g} is not homogeneous")));
        }
        if degree == 0 {
            return Err(Error::Shape("a constant does not define a curve".into()));
        }
        let mut gens = vec![g.clone()];
        gens.extend((0..3).map(|i| g.diff(i)));
        let vs: Vec<FreeModuleVector> = gens.into_iter().map(|h| FreeModuleVector::new(ring, vec![h]).unwrap()).collect();
        let gb = module_groebner(ring, 1, &vs, ModuleOrder::TermOverPosition);
        if !quotient_k_dimension(1, &gb, 1).is_finite() {
            return Err(Error::NonSmooth(format!("{g} = 0 has a singular point")));
        }
        Ok(PlaneCurve { equation: g, degree })
    }

    pub fn equation(&self) -> &SparsePolynomial {
        &self.equation
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn genus(&self) -> u64 {
        let d = self.degree as u64;
        (d - 1) * (d - 2) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveVariety {
    Space { prime: Prime, n: usize },
    Curve(PlaneCurve),
}

impl ProjectiveVariety {
    pub fn projective_space(prime: Prime, n: usize) -> Result<Self> {
        if !(1..=2).contains(&n) {
            return Err(Error::Shape(format!("only P^1 and P^2 are supported, got P^{n}")));
        }
        Ok(ProjectiveVariety::Space { prime, n })
    }

    pub fn plane_curve(g: SparsePolynomial) -> Result<Self> {
        PlaneCurve::new(g).map(ProjectiveVariety::Curve)
    }

    pub fn prime(&self) -> Prime {
        match self {
            ProjectiveVariety::Space { prime, .. } => *prime,
            ProjectiveVariety::Curve(c) => c.equation.ring().prime(),
        }
    }

    /// Number of homogeneous coordinates.
    pub fn coordinates(&self) -> usize {
        match self {
            ProjectiveVariety::Space { n, .. } => n + 1,
            ProjectiveVariety::Curve(_) => 3,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            ProjectiveVariety::Space { n, .. } => *n,
            ProjectiveVariety::Curve(_) => 1,
        }
    }

    pub fn ring(&self) -> Ring {
        Ring::x(self.prime(), self.coordinates())
    }

    pub fn describe(&self) -> String {
        match self {
            ProjectiveVariety::Space { prime, n } => format!("P^{n} over F_{}", prime.get()),
            ProjectiveVariety::Curve(c) => format!("V({}) in P^2 over F_{}", c.equation, c.equation.p()),
        }
    }
}

type Key = (Vec<usize>, Vec<u32>);

fn monomials(m: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(0, degree, &mut vec![0; m], &mut out);
    }
    out
}

/// Homogeneous `q`-forms of weight `w` in `m` variables, by monomial basis.
struct FormSpace {
    basis: Vec<Key>,
    index: HashMap<Key, usize>,
    p: u32,
}

impl FormSpace {
    fn new(m: usize, q: usize, w: i64, p: u32) -> Self {
        let mut basis = Vec::new();
        if w >= q as i64 {
            for k in exterior_basis(m, q) {
                for a in monomials(m, (w - q as i64) as u32) {
                    basis.push((k.clone(), a));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        FormSpace { basis, index, p }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vector(&self, terms: impl IntoIterator<Item = (Key, u32)>) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (k, c) in terms {
            let i = self.index[&k];
            v[i] = field::add(v[i], c, self.p);
        }
        v
    }
}

fn signed(s: i32, c: u32, p: u32) -> u32 {
    if s < 0 {
        field::neg(c, p)
    } else {
        c
    }
}

fn mul_mono(key: &Key, b: &[u32]) -> Key {
    (key.0.clone(), key.1.iter().zip(b).map(|(x, y)| x + y).collect())
}

fn contract_euler(key: &Key, p: u32) -> Vec<(Key, u32)> {
    let (k, a) = key;
    k.iter()
        .enumerate()
        .map(|(t, &i)| {
            let mut rest = k.clone();
            rest.remove(t);
            let mut e = a.clone();
            e[i] += 1;
            ((rest, e), signed(if t % 2 == 0 { 1 } else { -1 }, 1, p))
        })
        .collect()
}

fn exterior_d(key: &Key, p: u32) -> Vec<(Key, u32)> {
    let (k, a) = key;
    let mut out = Vec::new();
    for (i, &e) in a.iter().enumerate() {
        let c = e % p;
        if c == 0 {
            continue;
        }
        if let Some((s, kk)) = wedge_left(i, k) {
            let mut b = a.clone();
            b[i] -= 1;
            out.push(((kk, b), signed(s, c, p)));
        }
    }
    out
}

/// `(Σ h_i dx_i) ∧ x^a dx_K`.
fn wedge_one(h: &[SparsePolynomial], key: &Key, p: u32) -> Vec<(Key, u32)> {
    let (k, a) = key;
    let mut out = Vec::new();
    for (i, hi) in h.iter().enumerate() {
        let Some((s, kk)) = wedge_left(i, k) else { continue };
        for (m, c) in hi.terms() {
            out.push(((kk.clone(), mul_mono(&(Vec::new(), a.clone()), m.exponents()).1), signed(s, c, p)));
        }
    }
    out
}

fn mul_poly(g: &SparsePolynomial, key: &Key) -> Vec<(Key, u32)> {
    g.terms().map(|(m, c)| (mul_mono(key, m.exponents()), c)).collect()
}

fn apply(src: &FormSpace, v: &[u32], op: impl Fn(&Key) -> Vec<(Key, u32)>, dst: &FormSpace) -> Vec<u32> {
    let p = src.p;
    let mut out = vec![0; dst.dim()];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (k, e) in op(&src.basis[i]) {
            let j = dst.index[&k];
            out[j] = field::add(out[j], field::mul(c, e, p), p);
        }
    }
    out
}

/// Numerators of `Γ(U_I, Ω^q)` at one weight: basic forms modulo relations.
struct Piece {
    space: FormSpace,
    relations: RowSpace,
    quotient: RowSpace,
}

impl Piece {
    fn build(x: &ProjectiveVariety, q: usize, w: i64) -> Piece {
        let p = x.prime().get();
        let m = x.coordinates();
        let space = FormSpace::new(m, q, w, p);
        let basic: Vec<Vec<u32>> = if q == 0 {
            (0..space.dim()).map(|i| unit(space.dim(), i)).collect()
        } else {
            let target = FormSpace::new(m, q - 1, w, p);
            let mut a = FpMatrix::zeros(target.dim(), space.dim(), p);
            for (j, key) in space.basis.iter().enumerate() {
                for (k, c) in contract_euler(key, p) {
                    let i = target.index[&k];
                    a.set(i, j, field::add(a.get(i, j), c, p));
                }
            }
            a.rref().kernel
        };
        let relations = match x {
            ProjectiveVariety::Curve(c) if !basic.is_empty() => {
                let g = &c.equation;
                let dg: Vec<SparsePolynomial> = (0..m).map(|i| g.diff(i)).collect();
                let wd = w - c.degree as i64;
                let mut gens = Vec::new();
                let s = FormSpace::new(m, q, wd, p);
                for key in &s.basis {
                    gens.push(space.vector(mul_poly(g, key)));
                }
                if q > 0 {
                    let s = FormSpace::new(m, q - 1, wd, p);
                    for key in &s.basis {
                        gens.push(space.vector(wedge_one(&dg, key, p)));
                    }
                }
                intersect(space.dim(), p, &basic, &gens)
            }
            _ => RowSpace::new(space.dim(), p),
        };
        let quotient = RowSpace::spanned_by(
            space.dim(),
            p,
            basic.into_iter().map(|mut v| {
                relations.reduce(&mut v);
                v
            }),
        );
        Piece { space, relations, quotient }
    }

    fn dim(&self) -> usize {
        self.quotient.dim()
    }

    fn coordinates(&self, mut v: Vec<u32>) -> Vec<u32> {
        self.relations.reduce(&mut v);
        debug_assert!(self.quotient.contains(&v));
        self.quotient.coordinates(&v)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `span(a) ∩ span(b)` with `a` linearly independent.
fn intersect(dim: usize, p: u32, a: &[Vec<u32>], b: &[Vec<u32>]) -> RowSpace {
    if a.is_empty() || b.is_empty() {
        return RowSpace::new(dim, p);
    }
    let mut m = FpMatrix::zeros(dim, a.len() + b.len(), p);
    for (j, v) in a.iter().chain(b).enumerate() {
        for (i, &c) in v.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    let kernel = m.rref().kernel;
    RowSpace::spanned_by(
        dim,
        p,
        kernel.into_iter().map(|z| {
            let mut v = vec![0u32; dim];
            for (coef, av) in z[..a.len()].iter().zip(a) {
                if *coef != 0 {
                    for (x, &y) in v.iter_mut().zip(av) {
                        *x = field::add(*x, field::mul(*coef, y, p), p);
                    }
                }
            }
            v
        }),
    )
}

/// Per-chart block sizes, for auditing the gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartBlock {
    pub form_degree: usize,
    pub chart: Vec<usize>,
    pub pole_order: u32,
    pub dimension: usize,
}

/// The truncated double complex `C^j(Ω^q)` at one truncation degree.
pub struct CechDeRhamGrid {
    truncation: u32,
    dim: usize,
    charts: Vec<Vec<Vec<usize>>>,
    /// `dims[q][j]`
    dims: Vec<Vec<usize>>,
    /// `cech[q][j]: C^j(Ω^q) → C^{j+1}(Ω^q)`
    cech: Vec<Vec<FpMatrix>>,
    /// `derham[q][j]: C^j(Ω^q) → C^j(Ω^{q+1})`, including the sign `(−1)^j`.
    derham: Vec<Vec<FpMatrix>>,
    blocks: Vec<ChartBlock>,
    p: u32,
}

fn x_power(m: usize, chart: &[usize], k: u32) -> Vec<u32> {
    let mut e = vec![0; m];
    for &i in chart {
        e[i] += k;
    }
    e
}

impl CechDeRhamGrid {
    pub fn build(x: &ProjectiveVariety, truncation: u32) -> Result<CechDeRhamGrid> {
        let p = x.prime().get();
        let m = x.coordinates();
        let dim = x.dimension();
        let charts: Vec<Vec<Vec<usize>>> = (0..m).map(|j| exterior_basis(m, j + 1)).collect();
        let pole = |q: usize| truncation + q as u32;

        let mut keys: Vec<(usize, i64)> = Vec::new();
        for q in 0..=dim {
            for s in 1..=m {
                keys.push((q, pole(q) as i64 * s as i64));
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let pieces: HashMap<(usize, i64), Piece> =
            keys.par_iter().map(|&(q, w)| ((q, w), Piece::build(x, q, w))).collect();
        let piece = |q: usize, chart: &[usize]| &pieces[&(q, pole(q) as i64 * chart.len() as i64)];

        let mut dims = vec![vec![0; m]; dim + 1];
        let mut offsets: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m]; dim + 1];
        let mut blocks = Vec::new();
        for q in 0..=dim {
            for j in 0..m {
                let mut off = 0;
                for chart in &charts[j] {
                    offsets[q][j].push(off);
                    let d = piece(q, chart).dim();
                    blocks.push(ChartBlock { form_degree: q, chart: chart.clone(), pole_order: pole(q), dimension: d });
                    off += d;
                }
                dims[q][j] = off;
            }
        }
        let chart_pos = |j: usize, chart: &[usize]| charts[j].iter().position(|c| c == chart).unwrap();

        let jobs: Vec<(usize, usize)> = (0..=dim).flat_map(|q| (0..m).map(move |j| (q, j))).collect();
        let built: Vec<((usize, usize), FpMatrix, Option<FpMatrix>)> = jobs
            .par_iter()
            .map(|&(q, j)| {
                let k = pole(q);
                let mut cech = FpMatrix::zeros(if j + 1 < m { dims[q][j + 1] } else { 0 }, dims[q][j], p);
                let mut dr = (q < dim).then(|| FpMatrix::zeros(dims[q + 1][j], dims[q][j], p));
                for (ci, chart) in charts[j].iter().enumerate() {
                    let src = piece(q, chart);
                    let col0 = offsets[q][j][ci];
                    for (bi, b) in src.quotient.basis().iter().enumerate() {
                        let col = col0 + bi;
                        if j + 1 < m {
                            for t in (0..m).filter(|t| !chart.contains(t)) {
                                let mut big = chart.clone();
                                big.push(t);
                                big.sort_unstable();
                                let sign = if big.iter().position(|&i| i == t).unwrap() % 2 == 0 { 1 } else { -1 };
                                let dst = piece(q, &big);
                                let shift = x_power(m, &[t], k);
                                let image = apply(&src.space, b, |key| vec![(mul_mono(key, &shift), 1)], &dst.space);
                                let coords = dst.coordinates(image);
                                let row0 = offsets[q][j + 1][chart_pos(j + 1, &big)];
                                for (r, c) in coords.into_iter().enumerate() {
                                    if c != 0 {
                                        cech.set(row0 + r, col, signed(sign, c, p));
                                    }
                                }
                            }
                        }
                        if let Some(dr) = dr.as_mut() {
                            let dst = piece(q + 1, chart);
                            let xi = x_power(m, chart, 1);
                            let dxi: Vec<SparsePolynomial> = (0..m)
                                .map(|i| {
                                    if chart.contains(&i) {
                                        let mut e = xi.clone();
                                        e[i] -= 1;
                                        SparsePolynomial::monomial(x.ring(), crate::poly::Monomial::from_exponents(&e), 1)
                                    } else {
                                        x.ring().zero()
                                    }
                                })
                                .collect();
                            let kk = field::neg(k % p, p);
                            let image = apply(
                                &src.space,
                                b,
                                |key| {
                                    let mut out: Vec<(Key, u32)> =
                                        exterior_d(key, p).into_iter().map(|(kk2, c)| (mul_mono(&kk2, &xi), c)).collect();
                                    if kk != 0 {
                                        out.extend(wedge_one(&dxi, key, p).into_iter().map(|(k2, c)| (k2, field::mul(c, kk, p))));
                                    }
                                    out
                                },
                                &dst.space,
                            );
                            let coords = dst.coordinates(image);
                            let row0 = offsets[q + 1][j][ci];
                            let sign = if j % 2 == 0 { 1 } else { -1 };
                            for (r, c) in coords.into_iter().enumerate() {
                                if c != 0 {
                                    dr.set(row0 + r, col, signed(sign, c, p));
                                }
                            }
                        }
                    }
                }
                ((q, j), cech, dr)
            })
            .collect();
        let mut cech = vec![Vec::new(); dim + 1];
        let mut derham = vec![Vec::new(); dim + 1];
        for ((q, _), c, d) in built {
            cech[q].push(c);
            if let Some(d) = d {
                derham[q].push(d);
            }
        }
        Ok(CechDeRhamGrid { truncation, dim, charts, dims, cech, derham, blocks, p })
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn blocks(&self) -> &[ChartBlock] {
        &self.blocks
    }

    pub fn chart_count(&self) -> usize {
        self.charts[0].len()
    }

    /// `δ² = 0`, `d² = 0` and `δd + dδ = 0`, as exact matrix identities.
    pub fn sanity(&self) -> GridSanity {
        let m = self.chart_count();
        let cech_squares = self.cech.iter().all(|row| row.windows(2).all(|w| w[1].mul(&w[0]).is_zero()));
        let derham_squares =
            (0..m).all(|j| (0..self.dim.saturating_sub(1)).all(|q| self.derham[q + 1][j].mul(&self.derham[q][j]).is_zero()));
        let anticommute = (0..self.dim).all(|q| {
            (0..m.saturating_sub(1)).all(|j| {
                let a = self.cech[q + 1][j].mul(&self.derham[q][j]);
                let b = self.derham[q][j + 1].mul(&self.cech[q][j]);
                a.add(&b).is_zero()
            })
        });
        GridSanity { cech_squares, derham_squares, anticommute }
    }

    /// `h[q][j] = dim H^j(X, Ω^q)`.
    pub fn hodge_numbers(&self) -> Vec<Vec<u64>> {
        let m = self.chart_count();
        (0..=self.dim)
            .map(|q| {
                let ranks: Vec<usize> = self.cech[q].iter().map(FpMatrix::rank).collect();
                (0..m.min(self.dim + 1))
                    .map(|j| {
                        let out = ranks.get(j).copied().unwrap_or(0);
                        let inc = if j > 0 { ranks[j - 1] } else { 0 };
                        (self.dims[q][j] - out - inc) as u64
                    })
                    .collect()
            })
            .collect()
    }

    /// Cohomology of the total complex, degrees `0..=2·dim`.
    pub fn derham(&self) -> Vec<u64> {
        let m = self.chart_count();
        let top = self.dim + m - 1;
        let spots = |n: usize| -> Vec<(usize, usize)> {
            (0..=self.dim).filter(|&q| q <= n && n - q < m).map(|q| (q, n - q)).collect()
        };
        let total_dims: Vec<usize> = (0..=top).map(|n| spots(n).iter().map(|&(q, j)| self.dims[q][j]).sum()).collect();
        let mut ranks = Vec::new();
        for n in 0..top {
            let src = spots(n);
            let dst = spots(n + 1);
            let offset = |list: &[(usize, usize)], at: (usize, usize)| -> usize {
                list.iter().take_while(|&&s| s != at).map(|&(q, j)| self.dims[q][j]).sum()
            };
            let mut mat = FpMatrix::zeros(total_dims[n + 1], total_dims[n], self.p);
            for &(q, j) in &src {
                let c0 = offset(&src, (q, j));
                if j + 1 < m {
                    place(&mut mat, &self.cech[q][j], offset(&dst, (q, j + 1)), c0);
                }
                if q < self.dim {
                    place(&mut mat, &self.derham[q][j], offset(&dst, (q + 1, j)), c0);
                }
            }
            ranks.push(mat.rank());
        }
        (0..=2 * self.dim)
            .map(|n| {
                let out = ranks.get(n).copied().unwrap_or(0);
                let inc = if n > 0 { ranks[n - 1] } else { 0 };
                (total_dims[n] - out - inc) as u64
            })
            .collect()
    }
}

fn place(dst: &mut FpMatrix, block: &FpMatrix, r0: usize, c0: usize) {
    for i in 0..block.rows() {
        for (j, &v) in block.row(i).iter().enumerate() {
            if v != 0 {
                dst.set(r0 + i, c0 + j, v);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSanity {
    pub cech_squares: bool,
    pub derham_squares: bool,
    pub anticommute: bool,
}

impl GridSanity {
    pub fn holds(&self) -> bool {
        self.cech_squares && self.derham_squares && self.anticommute
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPoint {
    pub truncation: u32,
    pub hodge: Vec<Vec<u64>>,
    pub derham: Vec<u64>,
    pub sanity: GridSanity,
}

/// Default truncation degree: `2d − 3` for a curve of degree `d`.
pub fn default_truncation(x: &ProjectiveVariety) -> u32 {
    match x {
        ProjectiveVariety::Space { .. } => 1,
        ProjectiveVariety::Curve(c) => (2 * c.degree).saturating_sub(3).max(1),
    }
}

/// Computes the grid at `D, D+1, …, D+window−1` and requires agreement.
pub fn stabilized_window(x: &ProjectiveVariety, truncation: u32, window: u32) -> Result<Vec<WindowPoint>> {
    let points: Vec<WindowPoint> = (truncation..truncation + window.max(1))
        .map(|d| {
            let grid = CechDeRhamGrid::build(x, d)?;
            Ok(WindowPoint { truncation: d, hodge: grid.hodge_numbers(), derham: grid.derham(), sanity: grid.sanity() })
        })
        .collect::<Result<_>>()?;
    if let Some(bad) = points.iter().find(|pt| !pt.sanity.holds()) {
        return Err(Error::InternalInconsistency(format!("grid identities fail at D = {}: {:?}", bad.truncation, bad.sanity)));
    }
    let first = &points[0];
    if points.iter().any(|pt| pt.hodge != first.hodge || pt.derham != first.derham) {
        return Err(Error::Unstabilized {
            truncation,
            window: points.iter().map(|pt| pt.hodge.iter().flatten().chain(&pt.derham).copied().collect()).collect(),
        });
    }
    Ok(points)
}

pub const DEFAULT_WINDOW: u32 = 3;

pub fn hodge_numbers(x: &ProjectiveVariety, truncation: Option<u32>) -> Result<Vec<Vec<u64>>> {
    let d = truncation.unwrap_or_else(|| default_truncation(x));
    Ok(stabilized_window(x, d, DEFAULT_WINDOW)?.swap_remove(0).hodge)
}

pub fn derham_hypercohomology(x: &ProjectiveVariety, truncation: Option<u32>) -> Result<Vec<u64>> {
    let d = truncation.unwrap_or_else(|| default_truncation(x));
    Ok(stabilized_window(x, d, DEFAULT_WINDOW)?.swap_remove(0).derham)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub variety: String,
    pub prime: u32,
    pub p_exceeds_dimension: bool,
    pub truncation: u32,
    pub window: Vec<WindowPoint>,
    pub hodge: Vec<Vec<u64>>,
    pub derham: Vec<u64>,
    pub hodge_sums: Vec<u64>,
    pub euler_matches: bool,
    pub blocks: Vec<ChartBlock>,
    pub passed: bool,
}

/// Degeneration at `E_1`: `dim H^i_dR = Σ_{q+j=i} h^{q,j}` for every `i`.
pub fn degeneration_check(x: &ProjectiveVariety, truncation: Option<u32>, window: Option<u32>) -> Result<DegenerationReport> {
    let d = truncation.unwrap_or_else(|| default_truncation(x));
    let window = stabilized_window(x, d, window.unwrap_or(DEFAULT_WINDOW))?;
    let hodge = window[0].hodge.clone();
    let derham = window[0].derham.clone();
    let n = x.dimension();
    let hodge_sums: Vec<u64> = (0..=2 * n)
        .map(|i| (0..=n).filter(|&q| q <= i && i - q <= n).map(|q| hodge[q][i - q]).sum())
        .collect();
    if let Some(i) = (0..=2 * n).find(|&i| derham[i] > hodge_sums[i]) {
        return Err(Error::InternalInconsistency(format!(
            "dim H^{i}_dR = {} exceeds the Hodge sum {}",
            derham[i], hodge_sums[i]
        )));
    }
    let alt = |v: &[u64]| v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
    let euler_matches = alt(&derham) == alt(&hodge_sums);
    let blocks = CechDeRhamGrid::build(x, d)?.blocks().to_vec();
    Ok(DegenerationReport {
        variety: x.describe(),
        prime: x.prime().get(),
        p_exceeds_dimension: x.prime().get() as usize > n,
        truncation: d,
        passed: derham == hodge_sums && euler_matches,
        window,
        hodge,
        derham,
        hodge_sums,
        euler_matches,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn curve(p: u32, g: &str) -> ProjectiveVariety {
        ProjectiveVariety::plane_curve(Ring::x(prime(p), 3).parse(g).unwrap()).unwrap()
    }

    #[test]
    fn projective_line() {
        for p in [2, 3, 5, 7] {
            let x = ProjectiveVariety::projective_space(prime(p), 1).unwrap();
            let r = degeneration_check(&x, None, None).unwrap();
            assert_eq!(r.hodge, vec![vec![1, 0], vec![0, 1]]);
            assert_eq!(r.derham, vec![1, 0, 1]);
            assert!(r.passed);
        }
    }

    #[test]
    fn projective_plane() {
        let x = ProjectiveVariety::projective_space(prime(3), 2).unwrap();
        let r = degeneration_check(&x, None, None).unwrap();
        assert_eq!(r.hodge, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(r.derham, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn elliptic_cubic() {
        let x = curve(5, "x0^3 + x1^3 + x2^3");
        let r = degeneration_check(&x, None, None).unwrap();
        assert_eq!(r.hodge, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(r.derham, vec![1, 2, 1]);
        assert!(r.passed);
    }

    #[test]
    fn singular_curves_are_rejected() {
        let r = Ring::x(prime(5), 3);
        assert!(matches!(
            ProjectiveVariety::plane_curve(r.parse("x0^3 + x1^3 + x0*x1*x2").unwrap()),
            Err(Error::NonSmooth(_))
        ));
        assert!(ProjectiveVariety::plane_curve(r.parse("x0^2 + x1").unwrap()).is_err());
    }
}
