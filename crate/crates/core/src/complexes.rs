//! Bounded cochain complexes of finitely presented modules over a polynomial
//! ring, and their cohomology measured in k-dimensions.
//!
//! Each term is `R^{n_q} / R^q` where `R^q` is an optional relation matrix
//! (absent for free terms). Differentials are matrices on the free covers,
//! columns are images of basis vectors.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    cache, columns_of, kernel_modulo, matrix_of, module_groebner, module_growth, quotient_k_dimension,
    FreeModuleVector, Growth, ModuleGroebnerBasis, ModuleOrder, QuotientDimension,
};
use crate::linalg::smith_normal_form;
use crate::matrix::PolyMatrix;
use crate::poly::{Ring, SparsePolynomial, VarName};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    lowest: i32,
    ranks: Vec<usize>,
    differentials: Vec<PolyMatrix>,
    relations: Vec<Option<PolyMatrix>>,
}

/// Free terms; `differentials[k]` maps degree `k` to `k + 1`.
pub fn make_complex(ring: Ring, ranks: Vec<usize>, differentials: Vec<PolyMatrix>) -> Result<ChainComplex> {
    let n = ranks.len();
    ChainComplex::new(ring, 0, ranks, differentials, vec![None; n])
}

impl ChainComplex {
    pub fn new(
        ring: Ring,
        lowest: i32,
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
        relations: Vec<Option<PolyMatrix>>,
    ) -> Result<ChainComplex> {
        if ranks.is_empty() {
            return Err(Error::Shape("a complex needs at least one term".into()));
        }
        if differentials.len() + 1 != ranks.len() || relations.len() != ranks.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials and {} relation slots",
                ranks.len(),
                ranks.len() - 1,
                ranks.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            ring.check_same(&d.ring())?;
            if (d.rows(), d.cols()) != (ranks[k + 1], ranks[k]) {
                return Err(Error::Shape(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    k as i32 + lowest,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        for (k, r) in relations.iter().enumerate() {
            if let Some(r) = r {
                ring.check_same(&r.ring())?;
                if r.rows() != ranks[k] {
                    return Err(Error::Shape(format!("relations of degree {} have {} rows", k as i32 + lowest, r.rows())));
                }
            }
        }
        let c = ChainComplex { ring, lowest, ranks, differentials, relations };
        c.check_square_zero()?;
        Ok(c)
    }

    fn relation_basis(&self, k: usize) -> Option<ModuleGroebnerBasis> {
        let r = self.relations[k].as_ref()?;
        Some(module_groebner(self.ring, self.ranks[k], &columns_of(r), ModuleOrder::TermOverPosition))
    }

    fn check_square_zero(&self) -> Result<()> {
        for k in 0..self.differentials.len().saturating_sub(1) {
            let dd = self.differentials[k + 1].checked_mul(&self.differentials[k])?;
            let target = self.relation_basis(k + 2);
            for v in columns_of(&dd) {
                let bad = match &target {
                    Some(gb) => !gb.contains(&v),
                    None => !v.is_zero(),
                };
                if bad {
                    return Err(Error::NonComplex { degree: k + self.lowest as usize, entry: v.to_string() });
                }
            }
        }
        // the differential must descend to the quotients
        for k in 0..self.differentials.len() {
            let Some(r) = &self.relations[k] else { continue };
            let image = self.differentials[k].checked_mul(r)?;
            let target = self.relation_basis(k + 1);
            for v in columns_of(&image) {
                let ok = match &target {
                    Some(gb) => gb.contains(&v),
                    None => v.is_zero(),
                };
                if !ok {
                    return Err(Error::Shape(format!(
                        "d^{} does not preserve relations: {v}",
                        k as i32 + self.lowest
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lowest_degree(&self) -> i32 {
        self.lowest
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.lowest..self.lowest + self.ranks.len() as i32
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    pub fn relations(&self) -> &[Option<PolyMatrix>] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Adds `0 → R →^1 R → 0` in degrees `k, k+1`.
    pub fn with_trivial_summand(&self, k: usize) -> Result<ChainComplex> {
        assert!(k + 1 < self.ranks.len());
        let mut ranks = self.ranks.clone();
        ranks[k] += 1;
        ranks[k + 1] += 1;
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let mut m = PolyMatrix::zero(self.ring, ranks[j + 1], ranks[j]);
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        m.set(r, c, d.get(r, c).clone());
                    }
                }
                if j == k {
                    m.set(ranks[j + 1] - 1, ranks[j] - 1, self.ring.one());
                }
                m
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(j, r)| {
                r.as_ref().map(|r| {
                    let mut m = PolyMatrix::zero(self.ring, ranks[j], r.cols());
                    for a in 0..r.rows() {
                        for b in 0..r.cols() {
                            m.set(a, b, r.get(a, b).clone());
                        }
                    }
                    m
                })
            })
            .collect();
        ChainComplex::new(self.ring, self.lowest, ranks, differentials, relations)
    }

    pub fn to_data(&self) -> ComplexData {
        let show = |m: &PolyMatrix| {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
        };
        ComplexData {
            prime: self.ring.p(),
            nvars: self.ring.nvars(),
            variables: self.ring.var_name().prefix().to_string(),
            lowest: self.lowest,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(show).collect(),
            relations: self.relations.iter().map(|r| r.as_ref().map(show)).collect(),
        }
    }

    pub fn from_data(data: &ComplexData) -> Result<ChainComplex> {
        let var = match data.variables.as_str() {
            "x" => VarName::X,
            "y" => VarName::Y,
            other => return Err(Error::Plan(format!("unknown variable prefix {other:?}"))),
        };
        let ring = Ring::new(crate::field::Prime::new(data.prime)?, data.nvars, var);
        let read = |rows: &Vec<Vec<String>>, nrows: usize, ncols: usize| -> Result<PolyMatrix> {
            let mut m = PolyMatrix::zero(ring, nrows, ncols);
            for (i, row) in rows.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    if i >= nrows || j >= ncols {
                        return Err(Error::Shape("serialized matrix larger than its extents".into()));
                    }
                    m.set(i, j, ring.parse(s)?);
                }
            }
            Ok(m)
        };
        let ranks = data.ranks.clone();
        let differentials = data
            .differentials
            .iter()
            .enumerate()
            .map(|(k, rows)| read(rows, *ranks.get(k + 1).unwrap_or(&0), ranks[k]))
            .collect::<Result<Vec<_>>>()?;
        let relations = data
            .relations
            .iter()
            .enumerate()
            .map(|(k, r)| {
                r.as_ref()
                    .map(|rows| read(rows, ranks[k], rows.first().map_or(0, Vec::len)))
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(ring, data.lowest, ranks, differentials, relations)
    }
}

/// Text form of a complex for reports: entries in the polynomial syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexData {
    pub prime: u32,
    pub nvars: usize,
    pub variables: String,
    pub lowest: i32,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<String>>>,
    pub relations: Vec<Option<Vec<Vec<String>>>>,
}

/// Subsets of `{0..n-1}` of size `q`, lexicographically.
pub fn exterior_basis(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, q, &mut Vec::new(), &mut out);
    out
}

/// `e_i ∧ e_K = sign · e_{K ∪ i}`; `None` when `i ∈ K`.
pub fn wedge_left(i: usize, k: &[usize]) -> Option<(i32, Vec<usize>)> {
    if k.contains(&i) {
        return None;
    }
    let before = k.iter().filter(|&&j| j < i).count();
    let mut merged = k.to_vec();
    merged.push(i);
    merged.sort_unstable();
    Some((if before % 2 == 0 { 1 } else { -1 }, merged))
}

/// `0 → ∧^0 → ∧^1 → … → ∧^n`, differential `ω ↦ (Σ s_i e_i) ∧ ω`.
pub fn koszul_complex(ring: Ring, elements: &[SparsePolynomial]) -> Result<ChainComplex> {
    for s in elements {
        ring.check_same(&s.ring())?;
    }
    let n = elements.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|q| exterior_basis(n, q)).collect();
    let ranks = bases.iter().map(Vec::len).collect();
    let mut differentials = Vec::new();
    for q in 0..n {
        let mut d = PolyMatrix::zero(ring, bases[q + 1].len(), bases[q].len());
        for (col, k) in bases[q].iter().enumerate() {
            for (i, s) in elements.iter().enumerate() {
                if let Some((sign, target)) = wedge_left(i, k) {
                    let row = bases[q + 1].binary_search(&target).unwrap();
                    let v = if sign > 0 { s.clone() } else { -s };
                    d.add_to(row, col, &v);
                }
            }
        }
        differentials.push(d);
    }
    make_complex(ring, ranks, differentials)
}

/// Cohomology in one degree, as `R^m / relations` with `m` kernel generators.
#[derive(Clone, Debug)]
pub struct CohomologyEntry {
    pub degree: i32,
    pub dimension: QuotientDimension,
    pub growth: Growth,
    /// Rank when the module was recognised as free.
    pub free_rank: Option<usize>,
    /// Kernel generators in the cover of the term, one per presentation generator.
    pub generators: Vec<FreeModuleVector>,
    pub relations: ModuleGroebnerBasis,
}

#[derive(Clone, Debug)]
pub struct CohomologyProfile {
    pub entries: Vec<CohomologyEntry>,
}

/// Degree-by-degree summary, the part that goes into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub degrees: Vec<i32>,
    pub dimensions: Vec<QuotientDimension>,
    pub growth: Vec<Growth>,
    pub free_ranks: Vec<Option<usize>>,
}

impl CohomologyProfile {
    pub fn dimensions(&self) -> Vec<QuotientDimension> {
        self.entries.iter().map(|e| e.dimension).collect()
    }

    pub fn finite_dimensions(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| e.dimension.finite()).collect()
    }

    pub fn free_ranks(&self) -> Vec<Option<usize>> {
        self.entries.iter().map(|e| e.free_rank).collect()
    }

    pub fn growth(&self) -> Vec<Growth> {
        self.entries.iter().map(|e| e.growth).collect()
    }

    /// `Σ (−1)^i dim H^i` when every term is finite.
    pub fn euler_characteristic(&self) -> Option<i64> {
        let dims = self.finite_dimensions()?;
        Some(
            self.entries
                .iter()
                .zip(dims)
                .map(|(e, d)| if e.degree.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
                .sum(),
        )
    }

    pub fn summary(&self) -> ProfileSummary {
        ProfileSummary {
            degrees: self.entries.iter().map(|e| e.degree).collect(),
            dimensions: self.dimensions(),
            growth: self.growth(),
            free_ranks: self.free_ranks(),
        }
    }
}

/// Eliminates presentation generators that a relation expresses through the
/// others (a relation with a nonzero constant entry), until none is left.
fn prune(ring: Ring, mut m: usize, mut rels: Vec<FreeModuleVector>) -> (usize, Vec<FreeModuleVector>) {
    loop {
        let found = rels.iter().enumerate().find_map(|(r, v)| {
            v.components().iter().position(|c| c.as_constant().is_some_and(|c| c != 0)).map(|j| (r, j))
        });
        let Some((r, j)) = found else {
            return (m, rels.into_iter().filter(|v| !v.is_zero()).collect());
        };
        let pivot = rels.swap_remove(r);
        let inv = crate::field::inv(pivot.get(j).as_constant().unwrap(), ring.p());
        rels = rels
            .into_iter()
            .map(|w| {
                let factor = w.get(j).scale(inv);
                let w = if factor.is_zero() { w } else { w.sub(&pivot.scale_by(&factor)) };
                let mut comps = w.into_components();
                comps.remove(j);
                FreeModuleVector::new(ring, comps).unwrap()
            })
            .filter(|w| !w.is_zero())
            .collect();
        m -= 1;
        if m == 0 {
            return (0, Vec::new());
        }
    }
}

fn free_rank(ring: Ring, m: usize, rel: &ModuleGroebnerBasis) -> Option<usize> {
    let (mut m, mut rels) = prune(ring, m, rel.generators());
    // a fresh basis can expose new constant entries
    for _ in 0..4 {
        if rels.is_empty() {
            return Some(m);
        }
        let gb = module_groebner(ring, m, &rels, ModuleOrder::PositionOverTerm);
        let (m2, r2) = prune(ring, m, gb.generators());
        if m2 == m {
            return if r2.is_empty() { Some(m) } else { None };
        }
        (m, rels) = (m2, r2);
    }
    rels.is_empty().then_some(m)
}

fn cohomology_at(c: &ChainComplex, k: usize, degree_cap: u32) -> Result<CohomologyEntry> {
    let ring = c.ring;
    let n = c.ranks[k];
    let kernel: Vec<FreeModuleVector> = if k + 1 < c.ranks.len() {
        let rel_next = c.relations[k + 1].clone().unwrap_or_else(|| PolyMatrix::zero(ring, c.ranks[k + 1], 0));
        kernel_modulo(&c.differentials[k], &rel_next)?
    } else {
        (0..n).map(|i| FreeModuleVector::unit(ring, n, i)).collect()
    };
    // keep a Gröbner basis of the kernel as generating set: smaller, canonical
    let kernel = module_groebner(ring, n, &kernel, ModuleOrder::PositionOverTerm).generators();
    let mut sub: Vec<FreeModuleVector> = Vec::new();
    if let Some(r) = &c.relations[k] {
        sub.extend(columns_of(r));
    }
    if k > 0 {
        sub.extend(columns_of(&c.differentials[k - 1]));
    }
    let m = kernel.len();
    let rel_vectors = if m == 0 {
        Vec::new()
    } else {
        let kmat = matrix_of(ring, n, &kernel);
        let smat = matrix_of(ring, n, &sub);
        kernel_modulo(&kmat, &smat)?
    };
    let relations = module_groebner(ring, m, &rel_vectors, ModuleOrder::TermOverPosition);
    let dimension = quotient_k_dimension(m, &relations, degree_cap);
    let growth = module_growth(m, &relations);
    let free_rank = free_rank(ring, m, &relations);
    Ok(CohomologyEntry { degree: c.lowest + k as i32, dimension, growth, free_rank, generators: kernel, relations })
}

/// `H^q = {u : d u ∈ R^{q+1}} / (R^q + im d^{q−1})`, all degrees in parallel.
pub fn cohomology_profile(c: &ChainComplex, degree_cap: u32) -> Result<CohomologyProfile> {
    let scope = cache::current();
    let entries = (0..c.ranks.len())
        .into_par_iter()
        .map(|k| cache::with_scope(scope.clone(), || cohomology_at(c, k, degree_cap)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyProfile { entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileComparison {
    Equal,
    FirstDominates,
    SecondDominates,
    Mixed,
}

/// Size of one cohomology group: finite dimensions below every infinite one,
/// infinite ones ordered by growth.
fn size_cmp(a: (QuotientDimension, Growth), b: (QuotientDimension, Growth)) -> Ordering {
    match (a.0, b.0) {
        (QuotientDimension::Finite(x), QuotientDimension::Finite(y)) => x.cmp(&y),
        (QuotientDimension::Finite(_), _) => Ordering::Less,
        (_, QuotientDimension::Finite(_)) => Ordering::Greater,
        _ => (a.1.krull_dim, a.1.multiplicity).cmp(&(b.1.krull_dim, b.1.multiplicity)),
    }
}

pub fn compare_summaries(a: &ProfileSummary, b: &ProfileSummary) -> Result<ProfileComparison> {
    if a.degrees != b.degrees {
        return Err(Error::Shape(format!("profiles over degrees {:?} and {:?}", a.degrees, b.degrees)));
    }
    let mut greater = false;
    let mut less = false;
    for i in 0..a.degrees.len() {
        match size_cmp((a.dimensions[i], a.growth[i]), (b.dimensions[i], b.growth[i])) {
            Ordering::Greater => greater = true,
            Ordering::Less => less = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (greater, less) {
        (false, false) => ProfileComparison::Equal,
        (true, false) => ProfileComparison::FirstDominates,
        (false, true) => ProfileComparison::SecondDominates,
        (true, true) => ProfileComparison::Mixed,
    })
}

pub fn compare_profiles(a: &CohomologyProfile, b: &CohomologyProfile) -> Result<ProfileComparison> {
    compare_summaries(&a.summary(), &b.summary())
}

/// Cohomology of a free complex over `k[y]` from Smith forms: per degree,
/// `(free rank, k-dimension of the torsion)`.
pub fn smith_profile(c: &ChainComplex) -> Result<Vec<(usize, u64)>> {
    if c.relations.iter().any(Option::is_some) {
        return Err(Error::Shape("Smith profile needs free terms".into()));
    }
    let forms = c.differentials.iter().map(smith_normal_form).collect::<Result<Vec<_>>>()?;
    Ok((0..c.ranks.len())
        .map(|k| {
            let out_rank = forms.get(k).map_or(0, |s| s.rank());
            let in_rank = if k > 0 { forms[k - 1].rank() } else { 0 };
            let torsion = if k > 0 { forms[k - 1].torsion_dimension() } else { 0 };
            (c.ranks[k] - out_rank - in_rank, torsion)
        })
        .collect())
}
