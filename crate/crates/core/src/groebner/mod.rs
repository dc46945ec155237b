//! Gröbner bases for submodules of free modules over `F_p[x_1..x_n]`.
//!
//! Buchberger's algorithm with the normal selection strategy: all pending
//! S-pairs of the lowest lcm degree are reduced together against a snapshot
//! of the basis (in parallel), then re-reduced and inserted one by one in a
//! fixed order, so the output does not depend on the thread schedule.
//! Returned bases are reduced (monic, inter-reduced, sorted), hence unique
//! for a given submodule and order.

pub mod cache;
mod hilbert;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field;
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Ring, SparsePolynomial};

pub use hilbert::{count_standard_monomials, Growth};

/// Monomial order on `R^rank`. Positions compare with index 0 largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleOrder {
    /// Position first, then grevlex. Eliminates leading coordinates.
    PositionOverTerm,
    /// Grevlex first, then position. Degree compatible.
    TermOverPosition,
}

impl ModuleOrder {
    fn tag(self) -> u8 {
        match self {
            ModuleOrder::PositionOverTerm => 0,
            ModuleOrder::TermOverPosition => 1,
        }
    }

    #[inline]
    fn cmp(self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        match self {
            ModuleOrder::PositionOverTerm => b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)),
            ModuleOrder::TermOverPosition => a.1.cmp(b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }
}

/// An element of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleVector {
    ring: Ring,
    components: Vec<SparsePolynomial>,
}

impl FreeModuleVector {
    pub fn new(ring: Ring, components: Vec<SparsePolynomial>) -> Result<Self> {
        for c in &components {
            ring.check_same(&c.ring())?;
        }
        Ok(FreeModuleVector { ring, components })
    }

    pub fn zero(ring: Ring, rank: usize) -> Self {
        FreeModuleVector { ring, components: vec![ring.zero(); rank] }
    }

    pub fn unit(ring: Ring, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.components[i] = ring.one();
        v
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[SparsePolynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<SparsePolynomial> {
        self.components
    }

    pub fn get(&self, i: usize) -> &SparsePolynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SparsePolynomial::is_zero)
    }

    pub fn scale_by(&self, f: &SparsePolynomial) -> Self {
        FreeModuleVector { ring: self.ring, components: self.components.iter().map(|c| c * f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        FreeModuleVector {
            ring: self.ring,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        FreeModuleVector {
            ring: self.ring,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Columns of a matrix as module vectors.
pub fn columns_of(m: &PolyMatrix) -> Vec<FreeModuleVector> {
    m.columns().into_iter().map(|c| FreeModuleVector { ring: m.ring(), components: c }).collect()
}

/// Matrix with the given vectors as columns.
pub fn matrix_of(ring: Ring, rank: usize, vs: &[FreeModuleVector]) -> PolyMatrix {
    let cols: Vec<Vec<SparsePolynomial>> = vs.iter().map(|v| v.components.clone()).collect();
    PolyMatrix::from_columns(ring, rank, &cols).expect("vectors of the stated rank")
}

// ---------------------------------------------------------------------------
// internal sparse vector representation

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub(crate) pos: u32,
    pub(crate) mono: Monomial,
    pub(crate) coef: u32,
}

/// Terms sorted in decreasing module order; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct MVec(pub(crate) Vec<Term>);

impl MVec {
    fn from_vector(v: &FreeModuleVector, order: ModuleOrder) -> MVec {
        let mut terms: Vec<Term> = v
            .components
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.terms().map(move |(m, c)| Term { pos: i as u32, mono: m.clone(), coef: c }))
            .collect();
        terms.sort_by(|a, b| order.cmp((b.pos, &b.mono), (a.pos, &a.mono)));
        MVec(terms)
    }

    fn to_vector(&self, ring: Ring, rank: usize) -> FreeModuleVector {
        let mut comps = vec![ring.zero(); rank];
        for t in &self.0 {
            comps[t.pos as usize].add_term(t.mono.clone(), t.coef);
        }
        FreeModuleVector { ring, components: comps }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &Term {
        &self.0[0]
    }

    fn monic(mut self, p: u32) -> MVec {
        if let Some(t) = self.0.first() {
            if t.coef != 1 {
                let inv = field::inv(t.coef, p);
                for t in self.0.iter_mut() {
                    t.coef = field::mul(t.coef, inv, p);
                }
            }
        }
        self
    }

    /// `self - c · m · g`
    fn sub_scaled(&self, c: u32, m: &Monomial, g: &MVec, order: ModuleOrder, p: u32) -> MVec {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let (a, b) = (&self.0, &g.0);
        let (mut i, mut j) = (0, 0);
        let nc = field::neg(c, p);
        let mut shifted: Option<Term> = b.first().map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coef: 0 });
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), shifted.as_ref()) {
                (Some(x), Some(y)) => order.cmp((x.pos, &x.mono), (y.pos, &y.mono)),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mut y = shifted.take().unwrap();
                    y.coef = field::mul(b[j].coef, nc, p);
                    out.push(y);
                    j += 1;
                    shifted = b.get(j).map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coef: 0 });
                }
                Ordering::Equal => {
                    let y = shifted.take().unwrap();
                    let v = field::add(a[i].coef, field::mul(b[j].coef, nc, p), p);
                    if v != 0 {
                        out.push(Term { pos: y.pos, mono: y.mono, coef: v });
                    }
                    i += 1;
                    j += 1;
                    shifted = b.get(j).map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coef: 0 });
                }
            }
        }
        MVec(out)
    }
}

struct Reducer<'a> {
    order: ModuleOrder,
    p: u32,
    basis: &'a [MVec],
    by_pos: &'a [Vec<usize>],
}

impl Reducer<'_> {
    fn find_divisor(&self, t: &Term) -> Option<usize> {
        self.by_pos
            .get(t.pos as usize)?
            .iter()
            .copied()
            .find(|&k| self.basis[k].lead().mono.divides(&t.mono))
    }

    /// Full reduction: no term of the result is divisible by a leading term.
    fn reduce(&self, mut f: MVec) -> MVec {
        let mut done: Vec<Term> = Vec::new();
        let mut start = 0;
        loop {
            if start >= f.0.len() {
                break;
            }
            let t = &f.0[start];
            match self.find_divisor(t) {
                Some(k) => {
                    let g = &self.basis[k];
                    let m = g.lead().mono.quotient_of(&t.mono).unwrap();
                    let c = field::mul(t.coef, field::inv(g.lead().coef, self.p), self.p);
                    // terms before `start` are final and larger than anything in c·m·g
                    let tail = MVec(f.0.split_off(start));
                    let reduced = tail.sub_scaled(c, &m, g, self.order, self.p);
                    f.0.extend(reduced.0);
                }
                None => start += 1,
            }
        }
        done.append(&mut f.0);
        MVec(done)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    degree: u32,
}

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGroebnerBasis {
    ring: Ring,
    rank: usize,
    order: ModuleOrder,
    elements: Vec<MVec>,
}

impl ModuleGroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> Vec<FreeModuleVector> {
        self.elements.iter().map(|e| e.to_vector(self.ring, self.rank)).collect()
    }

    /// Leading (position, monomial) of every element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|e| (e.lead().pos as usize, e.lead().mono.clone())).collect()
    }

    fn by_pos(&self) -> Vec<Vec<usize>> {
        let mut by_pos = vec![Vec::new(); self.rank];
        for (k, e) in self.elements.iter().enumerate() {
            by_pos[e.lead().pos as usize].push(k);
        }
        by_pos
    }

    pub fn normal_form(&self, v: &FreeModuleVector) -> FreeModuleVector {
        assert_eq!(v.rank(), self.rank, "vector rank differs from the basis' ambient rank");
        let by_pos = self.by_pos();
        let r = Reducer { order: self.order, p: self.ring.p(), basis: &self.elements, by_pos: &by_pos };
        r.reduce(MVec::from_vector(v, self.order)).to_vector(self.ring, self.rank)
    }

    pub fn contains(&self, v: &FreeModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Whether every vector of `other` lies in this submodule.
    pub fn contains_all(&self, other: &[FreeModuleVector]) -> bool {
        other.iter().all(|v| self.contains(v))
    }

    /// The whole free module.
    pub fn is_everything(&self) -> bool {
        let mut seen = vec![false; self.rank];
        for e in &self.elements {
            if e.lead().mono.is_one() {
                seen[e.lead().pos as usize] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Buchberger's criterion, checked from scratch.
    pub fn is_groebner(&self) -> bool {
        let by_pos = self.by_pos();
        let p = self.ring.p();
        let r = Reducer { order: self.order, p, basis: &self.elements, by_pos: &by_pos };
        for ks in &by_pos {
            for (a, &i) in ks.iter().enumerate() {
                for &j in &ks[a + 1..] {
                    let s = s_vector(&self.elements[i], &self.elements[j], self.order, p);
                    if !r.reduce(s).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn elements(&self) -> &[MVec] {
        &self.elements
    }

    pub(crate) fn from_parts(ring: Ring, rank: usize, order: ModuleOrder, elements: Vec<MVec>) -> Self {
        ModuleGroebnerBasis { ring, rank, order, elements }
    }

    /// Same submodule as `other` (both must share ring, rank and order).
    pub fn same_submodule(&self, other: &ModuleGroebnerBasis) -> bool {
        self.rank == other.rank && self.order == other.order && self.elements == other.elements
    }
}

fn s_vector(a: &MVec, b: &MVec, order: ModuleOrder, p: u32) -> MVec {
    let (la, lb) = (a.lead(), b.lead());
    let l = la.mono.lcm(&lb.mono);
    let ma = la.mono.quotient_of(&l).unwrap();
    let mb = lb.mono.quotient_of(&l).unwrap();
    // leading coefficients are 1 for basis elements
    let sa = MVec::default().sub_scaled(p - 1, &ma, a, order, p);
    sa.sub_scaled(1, &mb, b, order, p)
}

/// Gröbner basis of the submodule of `R^rank` generated by `gens`.
pub fn module_groebner(ring: Ring, rank: usize, gens: &[FreeModuleVector], order: ModuleOrder) -> ModuleGroebnerBasis {
    for g in gens {
        assert_eq!(g.rank(), rank, "generator of rank {} in ambient rank {rank}", g.rank());
        debug_assert_eq!(g.ring(), ring);
    }
    if let Some(hit) = cache::lookup(ring, rank, order, gens) {
        return hit;
    }
    let gb = buchberger(ring, rank, gens.iter().map(|g| MVec::from_vector(g, order)).collect(), order);
    cache::store(ring, rank, order, gens, &gb);
    gb
}

fn buchberger(ring: Ring, rank: usize, input: Vec<MVec>, order: ModuleOrder) -> ModuleGroebnerBasis {
    let p = ring.p();
    let ideal = rank == 1;
    let mut basis: Vec<MVec> = Vec::new();
    let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); rank];
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: BTreeSet<(usize, usize)> = BTreeSet::new();

    let insert = |h: MVec,
                      basis: &mut Vec<MVec>,
                      by_pos: &mut Vec<Vec<usize>>,
                      pending: &mut Vec<Pair>,
                      pending_set: &mut BTreeSet<(usize, usize)>| {
        let k = basis.len();
        let pos = h.lead().pos as usize;
        for &i in &by_pos[pos] {
            let degree = basis[i].lead().mono.lcm(&h.lead().mono).degree();
            pending.push(Pair { i, j: k, degree });
            pending_set.insert((i, k));
        }
        by_pos[pos].push(k);
        basis.push(h);
    };

    // seed with the inter-reduced input
    let mut seeds: Vec<MVec> = input.into_iter().filter(|v| !v.is_zero()).collect();
    seeds.sort_by(|a, b| order.cmp((a.lead().pos, &a.lead().mono), (b.lead().pos, &b.lead().mono)));
    for s in seeds {
        let r = Reducer { order, p, basis: &basis, by_pos: &by_pos };
        let h = r.reduce(s);
        if !h.is_zero() {
            insert(h.monic(p), &mut basis, &mut by_pos, &mut pending, &mut pending_set);
        }
    }

    while !pending.is_empty() {
        let dmin = pending.iter().map(|q| q.degree).min().unwrap();
        let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = pending.drain(..).partition(|q| q.degree == dmin);
        pending = rest;
        batch.sort_by_key(|q| (q.i, q.j));

        let mut chosen = Vec::new();
        for q in batch {
            pending_set.remove(&(q.i, q.j));
            let (a, b) = (&basis[q.i], &basis[q.j]);
            if ideal && a.lead().mono.is_coprime(&b.lead().mono) {
                continue;
            }
            let l = a.lead().mono.lcm(&b.lead().mono);
            let pos = a.lead().pos as usize;
            let chain = by_pos[pos].iter().any(|&k| {
                k != q.i
                    && k != q.j
                    && basis[k].lead().mono.divides(&l)
                    && !pending_set.contains(&(q.i.min(k), q.i.max(k)))
                    && !pending_set.contains(&(q.j.min(k), q.j.max(k)))
            });
            if !chain {
                chosen.push(q);
            }
        }

        let snapshot = Reducer { order, p, basis: &basis, by_pos: &by_pos };
        let reduced: Vec<MVec> = chosen
            .par_iter()
            .map(|q| snapshot.reduce(s_vector(&basis[q.i], &basis[q.j], order, p)))
            .collect();
        for h in reduced {
            if h.is_zero() {
                continue;
            }
            let r = Reducer { order, p, basis: &basis, by_pos: &by_pos };
            let h = r.reduce(h);
            if !h.is_zero() {
                insert(h.monic(p), &mut basis, &mut by_pos, &mut pending, &mut pending_set);
            }
        }
    }

    ModuleGroebnerBasis { ring, rank, order, elements: auto_reduce(basis, order, p, rank) }
}

fn auto_reduce(basis: Vec<MVec>, order: ModuleOrder, p: u32, rank: usize) -> Vec<MVec> {
    // minimal basis: drop elements whose leading term is divisible by another's
    let mut keep: Vec<MVec> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.lead();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.lead();
            j != i && lh.pos == lg.pos && lh.mono.divides(&lg.mono) && (lh.mono != lg.mono || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| order.cmp((a.lead().pos, &a.lead().mono), (b.lead().pos, &b.lead().mono)));
    let mut out = keep.clone();
    for i in 0..keep.len() {
        let others: Vec<MVec> = out.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let mut by_pos = vec![Vec::new(); rank];
        for (k, g) in others.iter().enumerate() {
            by_pos[g.lead().pos as usize].push(k);
        }
        let r = Reducer { order, p, basis: &others, by_pos: &by_pos };
        let lead = MVec(vec![out[i].0[0].clone()]);
        let tail = r.reduce(MVec(out[i].0[1..].to_vec()));
        let mut terms = lead.0;
        terms.extend(tail.0);
        out[i] = MVec(terms);
    }
    out
}

// ---------------------------------------------------------------------------
// kernels, lifts, quotients

/// Generators of `{v : M·v = 0}`, together with a Gröbner basis of the image.
#[derive(Clone, Debug)]
pub struct SyzygyData {
    pub kernel: Vec<FreeModuleVector>,
    pub image: ModuleGroebnerBasis,
}

fn augmented_basis(m: &PolyMatrix) -> ModuleGroebnerBasis {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let gens: Vec<FreeModuleVector> = (0..cols)
        .map(|j| {
            let mut comps = m.column(j);
            comps.extend((0..cols).map(|k| if k == j { ring.one() } else { ring.zero() }));
            FreeModuleVector { ring, components: comps }
        })
        .collect();
    module_groebner(ring, rows + cols, &gens, ModuleOrder::PositionOverTerm)
}

/// Syzygies of the columns of `m` by elimination in `R^{rows} ⊕ R^{cols}`.
pub fn syzygies(m: &PolyMatrix) -> SyzygyData {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let gb = augmented_basis(m);
    let mut kernel = Vec::new();
    let mut image = Vec::new();
    for e in gb.elements() {
        if (e.lead().pos as usize) < rows {
            let v: Vec<Term> = e.0.iter().filter(|t| (t.pos as usize) < rows).cloned().collect();
            image.push(MVec(v));
        } else {
            let v = e.to_vector(ring, rows + cols);
            kernel.push(FreeModuleVector { ring, components: v.components[rows..].to_vec() });
        }
    }
    // projections of the first block are a Gröbner basis of the image, but
    // their tails may still be reducible by each other
    let image = ModuleGroebnerBasis {
        ring,
        rank: rows,
        order: ModuleOrder::PositionOverTerm,
        elements: auto_reduce(image, ModuleOrder::PositionOverTerm, ring.p(), rows),
    };
    SyzygyData { kernel, image }
}

/// Generating set of the kernel of `m : R^cols → R^rows`.
pub fn kernel_of_map(m: &PolyMatrix) -> Vec<FreeModuleVector> {
    if m.cols() == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return (0..m.cols()).map(|i| FreeModuleVector::unit(m.ring(), m.cols(), i)).collect();
    }
    syzygies(m).kernel
}

/// Generators of `{u : M·u ∈ image(rel)}`.
pub fn kernel_modulo(m: &PolyMatrix, rel: &PolyMatrix) -> Result<Vec<FreeModuleVector>> {
    if m.rows() != rel.rows() {
        return Err(Error::Shape(format!("{} target rows vs {} relation rows", m.rows(), rel.rows())));
    }
    if rel.cols() == 0 {
        return Ok(kernel_of_map(m));
    }
    let s = m.cols();
    let full = m.hstack(rel)?;
    Ok(kernel_of_map(&full)
        .into_iter()
        .map(|v| FreeModuleVector { ring: v.ring, components: v.components[..s].to_vec() })
        .filter(|v| !v.is_zero())
        .collect())
}

/// A solution `u` of `M·u = v`, if one exists.
pub fn lift(m: &PolyMatrix, v: &FreeModuleVector) -> Option<Vec<SparsePolynomial>> {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    if v.is_zero() {
        return Some(vec![ring.zero(); cols]);
    }
    if cols == 0 {
        return None;
    }
    let gb = augmented_basis(m);
    let mut comps = v.components.clone();
    comps.extend((0..cols).map(|_| ring.zero()));
    let r = gb.normal_form(&FreeModuleVector { ring, components: comps });
    if r.components[..rows].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(r.components[rows..].iter().map(|c| -c).collect())
}

/// k-dimension of `R^rank / sub`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum QuotientDimension {
    Finite(u64),
    InfiniteOrAbove(u32),
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(d) => Some(d),
            QuotientDimension::InfiniteOrAbove(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QuotientDimension::Finite(_))
    }
}

impl std::fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientDimension::Finite(d) => write!(f, "{d}"),
            QuotientDimension::InfiniteOrAbove(_) => write!(f, "inf"),
        }
    }
}

/// Leading monomials of `sub` grouped by position.
fn leading_by_position(rank: usize, sub: &ModuleGroebnerBasis) -> Vec<Vec<Monomial>> {
    let mut lts = vec![Vec::new(); rank];
    for (pos, m) in sub.leading_terms() {
        lts[pos].push(m);
    }
    lts
}

/// Finiteness is read off the leading terms: every position needs a pure
/// power of every variable. The cap only guards the enumeration.
pub fn quotient_k_dimension(rank: usize, sub: &ModuleGroebnerBasis, degree_cap: u32) -> QuotientDimension {
    assert_eq!(rank, sub.rank(), "basis lives in a different ambient rank");
    let n = sub.ring().nvars();
    let lts = leading_by_position(rank, sub);
    let finite = lts.iter().all(|ms| {
        (0..n).all(|i| ms.iter().any(|m| m.is_one() || m.pure_power_variable() == Some(i)))
    });
    if !finite {
        return QuotientDimension::InfiniteOrAbove(degree_cap);
    }
    QuotientDimension::Finite(lts.iter().map(|ms| count_standard_monomials(n, ms)).sum())
}

/// Krull dimension and multiplicity of `R^rank / sub`. Computed from a
/// degree-compatible basis (recomputed if `sub` uses position-over-term).
pub fn module_growth(rank: usize, sub: &ModuleGroebnerBasis) -> Growth {
    let top;
    let basis = if sub.order() == ModuleOrder::TermOverPosition {
        sub
    } else {
        top = module_groebner(sub.ring(), rank, &sub.generators(), ModuleOrder::TermOverPosition);
        &top
    };
    hilbert::growth(sub.ring().nvars(), &leading_by_position(rank, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::x(Prime::new(p).unwrap(), n)
    }

    fn vecs(r: Ring, rows: &[&[&str]]) -> Vec<FreeModuleVector> {
        rows.iter()
            .map(|c| FreeModuleVector::new(r, c.iter().map(|s| r.parse(s).unwrap()).collect()).unwrap())
            .collect()
    }

    #[test]
    fn disjoint_positions_are_already_a_basis() {
        let r = ring(3, 2);
        let g = vecs(r, &[&["x0", "0"], &["0", "x1"]]);
        let gb = module_groebner(r, 2, &g, ModuleOrder::PositionOverTerm);
        assert_eq!(gb.len(), 2);
        assert!(gb.is_groebner());
        let mut got = gb.generators();
        let mut want = g.clone();
        got.sort_by_key(|v| v.to_string());
        want.sort_by_key(|v| v.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn unit_ideal() {
        let r = ring(5, 1);
        let gb = module_groebner(r, 1, &vecs(r, &[&["x0"], &["x0 + 1"]]), ModuleOrder::PositionOverTerm);
        assert_eq!(gb.generators(), vecs(r, &[&["1"]]));
        assert!(gb.is_everything());
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(7, 2);
        let m = PolyMatrix::parse_rows(r, &[&["x0", "x1"]]).unwrap();
        let k = kernel_of_map(&m);
        assert_eq!(k.len(), 1);
        let expected = vecs(r, &[&["x1", "-x0"]])[0].clone();
        let gb = module_groebner(r, 2, &k, ModuleOrder::PositionOverTerm);
        let gb2 = module_groebner(r, 2, &[expected], ModuleOrder::PositionOverTerm);
        assert!(gb.same_submodule(&gb2));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let r = ring(3, 2);
        assert!(kernel_of_map(&PolyMatrix::identity(r, 3)).iter().all(FreeModuleVector::is_zero));
    }

    #[test]
    fn quotient_dimensions() {
        let r = ring(3, 2);
        let gb = module_groebner(r, 1, &vecs(r, &[&["x0"], &["x1"]]), ModuleOrder::TermOverPosition);
        assert_eq!(quotient_k_dimension(1, &gb, 20), QuotientDimension::Finite(1));
        let r1 = ring(3, 1);
        let gb = module_groebner(r1, 1, &vecs(r1, &[&["x0^2"]]), ModuleOrder::TermOverPosition);
        assert_eq!(quotient_k_dimension(1, &gb, 20), QuotientDimension::Finite(2));
        let gb = module_groebner(r, 1, &vecs(r, &[&["x0"]]), ModuleOrder::TermOverPosition);
        assert_eq!(quotient_k_dimension(1, &gb, 20), QuotientDimension::InfiniteOrAbove(20));
        assert_eq!(module_growth(1, &gb), Growth { krull_dim: 1, multiplicity: 1 });
    }

    #[test]
    fn lift_solves_linear_systems() {
        let r = ring(5, 2);
        let m = PolyMatrix::parse_rows(r, &[&["x0", "x1"], &["1", "x0"]]).unwrap();
        let target = vecs(r, &[&["x0^2 + x1^2", "x0 + x0*x1"]])[0].clone();
        let u = lift(&m, &target).unwrap();
        assert_eq!(m.apply(&u).unwrap(), target.components().to_vec());
        let unreachable = vecs(r, &[&["1", "0"]])[0].clone();
        // det = x0^2 - x1 is not a unit, (1,0) is outside the image
        assert!(lift(&m, &unreachable).is_none());
    }

    #[test]
    fn kernel_modulo_relations() {
        // multiplication by x0 on R/(x0^2): kernel is generated by x0 mod x0^2
        let r = ring(3, 1);
        let m = PolyMatrix::parse_rows(r, &[&["x0"]]).unwrap();
        let rel = PolyMatrix::parse_rows(r, &[&["x0^2"]]).unwrap();
        let k = kernel_modulo(&m, &rel).unwrap();
        let gb = module_groebner(r, 1, &k, ModuleOrder::PositionOverTerm);
        assert_eq!(gb.generators(), vecs(r, &[&["x0"]]));
    }
}
