//! `F_*` of differential forms on affine space and on smooth affine
//! hypersurfaces, as complexes of `k[y]`-modules (`y_i = x_i^p`).
//!
//! `F_*Ω^q` has the basis `x^a dx_K` for `a ∈ [0,p)^n` and `|K| = q`, ordered
//! with `K` major (subsets lexicographically) and `a` minor (lexicographic).

use serde::{Deserialize, Serialize};

use crate::complexes::{cohomology_profile, exterior_basis, wedge_left, ChainComplex, ProfileSummary};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::groebner::{
    columns_of, kernel_modulo, lift, matrix_of, module_groebner, module_growth, FreeModuleVector, Growth,
    ModuleGroebnerBasis, ModuleOrder,
};
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Ring, SparsePolynomial};

/// The dictionary `k[x] ≅ ⊕_a k[y]·x^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusStructure {
    n: usize,
    p: u32,
    basis: Vec<Vec<u32>>,
    x: Ring,
    y: Ring,
}

impl FrobeniusStructure {
    pub fn new(prime: Prime, n: usize) -> Self {
        let p = prime.get();
        let mut basis = vec![Vec::new()];
        for _ in 0..n {
            basis = basis
                .into_iter()
                .flat_map(|a: Vec<u32>| {
                    (0..p).map(move |e| {
                        let mut b = a.clone();
                        b.push(e);
                        b
                    })
                })
                .collect();
        }
        FrobeniusStructure { n, p, basis, x: Ring::x(prime, n), y: Ring::y(prime, n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn x_ring(&self) -> Ring {
        self.x
    }

    pub fn y_ring(&self) -> Ring {
        self.y
    }

    /// Exponent tuples `a ∈ [0,p)^n`, lexicographic.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, a: &[u32]) -> usize {
        a.iter().fold(0, |acc, &e| acc * self.p as usize + e as usize)
    }

    /// Rank of `F_*Ω^q` over `k[y]`.
    pub fn form_rank(&self, q: usize) -> usize {
        self.rank() * exterior_basis(self.n, q).len()
    }

    /// Coefficients over `k[y]` of a `q`-form given by its `dx_K` coefficients.
    pub fn pushforward_form(&self, coeffs: &[SparsePolynomial]) -> Vec<SparsePolynomial> {
        coeffs.iter().flat_map(|c| frobenius_pushforward(c, self)).collect()
    }

    /// Inverse of [`Self::pushforward_form`].
    pub fn reconstruct_form(&self, v: &[SparsePolynomial]) -> Vec<SparsePolynomial> {
        v.chunks(self.rank()).map(|chunk| self.reconstruct(chunk)).collect()
    }

    /// `Σ_a c_a(x^p) x^a`.
    pub fn reconstruct(&self, components: &[SparsePolynomial]) -> SparsePolynomial {
        assert_eq!(components.len(), self.rank());
        let mut out = self.x.zero();
        for (a, c) in self.basis.iter().zip(components) {
            for (m, coef) in c.terms() {
                let e: Vec<u32> = m.exponents().iter().zip(a).map(|(q, r)| q * self.p + r).collect();
                out.add_term(Monomial::from_exponents(&e), coef);
            }
        }
        out
    }
}

/// Components `c_a(y)` with `f = Σ_a c_a(x^p) x^a`.
pub fn frobenius_pushforward(f: &SparsePolynomial, fs: &FrobeniusStructure) -> Vec<SparsePolynomial> {
    assert_eq!(f.ring().nvars(), fs.n, "polynomial in the wrong number of variables");
    let p = fs.p;
    let mut out = vec![fs.y.zero(); fs.rank()];
    for (m, c) in f.terms() {
        let r: Vec<u32> = m.exponents().iter().map(|e| e % p).collect();
        let q: Vec<u32> = m.exponents().iter().map(|e| e / p).collect();
        out[fs.index_of(&r)].add_term(Monomial::from_exponents(&q), c);
    }
    out
}

/// `d(Σ g_K dx_K) = Σ ∂_i g_K dx_i ∧ dx_K`; forms indexed by [`exterior_basis`].
pub fn exterior_derivative(n: usize, q: usize, form: &[SparsePolynomial], ring: Ring) -> Vec<SparsePolynomial> {
    let src = exterior_basis(n, q);
    let dst = exterior_basis(n, q + 1);
    let mut out = vec![ring.zero(); dst.len()];
    for (k, g) in src.iter().zip(form) {
        if g.is_zero() {
            continue;
        }
        for i in 0..n {
            if let Some((sign, t)) = wedge_left(i, k) {
                let dg = g.diff(i);
                let row = dst.binary_search(&t).unwrap();
                out[row] = if sign > 0 { &out[row] + &dg } else { &out[row] - &dg };
            }
        }
    }
    out
}

/// `(Σ h_i dx_i) ∧ ω`.
pub fn wedge_one_form(n: usize, q: usize, h: &[SparsePolynomial], form: &[SparsePolynomial], ring: Ring) -> Vec<SparsePolynomial> {
    let src = exterior_basis(n, q);
    let dst = exterior_basis(n, q + 1);
    let mut out = vec![ring.zero(); dst.len()];
    for (k, g) in src.iter().zip(form) {
        if g.is_zero() {
            continue;
        }
        for (i, hi) in h.iter().enumerate() {
            if let Some((sign, t)) = wedge_left(i, k) {
                let prod = hi * g;
                let row = dst.binary_search(&t).unwrap();
                out[row] = if sign > 0 { &out[row] + &prod } else { &out[row] - &prod };
            }
        }
    }
    out
}

/// Matrix over `k[y]` of an additive, `k[y]`-linear operator on forms:
/// column `(K, a)` is `F_*(op(x^a dx_K))`.
pub fn pushforward_operator(
    fs: &FrobeniusStructure,
    q: usize,
    target_degree: usize,
    op: impl Fn(&[SparsePolynomial]) -> Vec<SparsePolynomial>,
) -> PolyMatrix {
    let ks = exterior_basis(fs.n, q).len();
    let mut cols = Vec::with_capacity(ks * fs.rank());
    for k in 0..ks {
        for a in &fs.basis {
            let mut form = vec![fs.x.zero(); ks];
            form[k] = SparsePolynomial::monomial(fs.x, Monomial::from_exponents(a), 1);
            cols.push(fs.pushforward_form(&op(&form)));
        }
    }
    PolyMatrix::from_columns(fs.y, fs.form_rank(target_degree), &cols).expect("consistent form ranks")
}

/// Human-readable form `Σ g_K dx_K`.
pub fn form_to_string(n: usize, q: usize, form: &[SparsePolynomial]) -> String {
    let ks = exterior_basis(n, q);
    let parts: Vec<String> = ks
        .iter()
        .zip(form)
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| {
            let dx: Vec<String> = k.iter().map(|i| format!("dx{i}")).collect();
            let wedge = dx.join("^");
            match (g.as_constant(), wedge.is_empty()) {
                (_, true) => g.to_string(),
                (Some(1), false) => wedge,
                _ if g.len() == 1 => format!("{g}*{wedge}"),
                _ => format!("({g})*{wedge}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Smooth affine `X ⊂ A^n`: all of `A^n`, or one equation `g` with
/// `(g, ∂_1 g, …, ∂_n g) = (1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineVariety {
    ring: Ring,
    equation: Option<SparsePolynomial>,
    /// `h_0 g + Σ h_i ∂_i g = 1` for hypersurfaces.
    certificate: Vec<SparsePolynomial>,
}

impl AffineVariety {
    pub fn affine_space(prime: Prime, n: usize) -> Self {
        AffineVariety { ring: Ring::x(prime, n), equation: None, certificate: Vec::new() }
    }

    pub fn hypersurface(g: SparsePolynomial) -> Result<Self> {
        let ring = g.ring();
        if g.is_zero() || g.is_constant() {
            return Err(Error::NonSmooth(format!("equation {g} does not cut out a hypersurface")));
        }
        let mut gens = vec![g.clone()];
        gens.extend((0..ring.nvars()).map(|i| g.diff(i)));
        let m = PolyMatrix::from_rows(ring, vec![gens]).unwrap();
        let one = FreeModuleVector::unit(ring, 1, 0);
        let certificate = lift(&m, &one)
            .ok_or_else(|| Error::NonSmooth(format!("(g, ∂g) is a proper ideal for g = {g}")))?;
        Ok(AffineVariety { ring, equation: Some(g), certificate })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn equation(&self) -> Option<&SparsePolynomial> {
        self.equation.as_ref()
    }

    pub fn dimension(&self) -> usize {
        self.n() - usize::from(self.equation.is_some())
    }

    /// `p > dim X`, the standing hypothesis of the theorems.
    pub fn p_exceeds_dimension(&self) -> bool {
        self.ring.p() as usize > self.dimension()
    }

    /// Re-checks the smoothness certificate.
    pub fn certificate_holds(&self) -> bool {
        let Some(g) = &self.equation else { return true };
        let mut acc = &self.certificate[0] * g;
        for i in 0..self.n() {
            acc = &acc + &(&self.certificate[i + 1] * &g.diff(i));
        }
        acc == self.ring.one()
    }

    pub fn frobenius_structure(&self) -> FrobeniusStructure {
        FrobeniusStructure::new(self.ring.prime(), self.n())
    }

    /// The equation of `X′`, `g′ = π*g`.
    pub fn twisted_equation(&self) -> Option<SparsePolynomial> {
        self.equation.as_ref().map(SparsePolynomial::p_power_substitute)
    }

    pub fn describe(&self) -> String {
        match &self.equation {
            None => format!("A^{} over F_{}", self.n(), self.ring.p()),
            Some(g) => format!("V({g}) in A^{} over F_{}", self.n(), self.ring.p()),
        }
    }
}

/// Relations of `F_*Ω^q_X` in `F_*Ω^q_{A^n}`: `x^a g·dx_K` and `x^a dg ∧ dx_J`.
pub fn pushforward_relations(x: &AffineVariety, fs: &FrobeniusStructure, q: usize) -> Option<PolyMatrix> {
    let g = x.equation.as_ref()?;
    let n = fs.n;
    let ring = fs.x;
    let dg: Vec<SparsePolynomial> = (0..n).map(|i| g.diff(i)).collect();
    let mut cols = Vec::new();
    let ks = exterior_basis(n, q).len();
    for k in 0..ks {
        for a in &fs.basis {
            let mut form = vec![ring.zero(); ks];
            form[k] = g.mul_monomial(&Monomial::from_exponents(a), 1);
            cols.push(fs.pushforward_form(&form));
        }
    }
    if q > 0 {
        let js = exterior_basis(n, q - 1).len();
        for j in 0..js {
            for a in &fs.basis {
                let mut form = vec![ring.zero(); js];
                form[j] = SparsePolynomial::monomial(ring, Monomial::from_exponents(a), 1);
                cols.push(fs.pushforward_form(&wedge_one_form(n, q - 1, &dg, &form, ring)));
            }
        }
    }
    Some(PolyMatrix::from_columns(fs.y, fs.form_rank(q), &cols).unwrap())
}

/// `F_*Ω•_X` over `k[y]`.
pub fn build_derham_pushforward(x: &AffineVariety) -> Result<ChainComplex> {
    if !x.certificate_holds() {
        return Err(Error::NonSmooth(x.describe()));
    }
    let fs = x.frobenius_structure();
    let n = fs.n;
    let ranks = (0..=n).map(|q| fs.form_rank(q)).collect();
    let differentials =
        (0..n).map(|q| pushforward_operator(&fs, q, q + 1, |w| exterior_derivative(n, q, w, fs.x))).collect();
    let relations = (0..=n).map(|q| pushforward_relations(x, &fs, q)).collect();
    ChainComplex::new(fs.y, 0, ranks, differentials, relations)
}

/// `x_K^{p−1} dx_K`, the inverse-Cartier image of `dy_K`, as a `q`-form.
pub fn inverse_cartier_form(fs: &FrobeniusStructure, q: usize, k: usize) -> Vec<SparsePolynomial> {
    let ks = exterior_basis(fs.n, q);
    let mut e = vec![0u32; fs.n];
    for &i in &ks[k] {
        e[i] = fs.p - 1;
    }
    let mut form = vec![fs.x.zero(); ks.len()];
    form[k] = SparsePolynomial::monomial(fs.x, Monomial::from_exponents(&e), 1);
    form
}

/// Presentation matrix of `Ω^q_{X′}` over `k[y]`: `g′ dy_K`, `dg′ ∧ dy_J`.
pub fn twisted_forms_relations(x: &AffineVariety, q: usize) -> Option<PolyMatrix> {
    let g = x.twisted_equation()?;
    let y = g.ring();
    let n = x.n();
    let ks = exterior_basis(n, q).len();
    let mut cols = Vec::new();
    for k in 0..ks {
        let mut v = vec![y.zero(); ks];
        v[k] = g.clone();
        cols.push(v);
    }
    if q > 0 {
        let dg: Vec<SparsePolynomial> = (0..n).map(|i| g.diff(i)).collect();
        let js = exterior_basis(n, q - 1).len();
        for j in 0..js {
            let mut e = vec![y.zero(); js];
            e[j] = y.one();
            cols.push(wedge_one_form(n, q - 1, &dg, &e, y));
        }
    }
    Some(PolyMatrix::from_columns(y, ks, &cols).unwrap())
}

/// Per-degree outcome of the Cartier check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartierDegree {
    pub degree: usize,
    /// Rank of `Ω^q_{X′}`: multiplicity of `Ω^q_{X′}` over that of `O_{X′}`.
    pub expected_rank: u64,
    pub free_rank: Option<usize>,
    pub growth: Growth,
    pub expected_growth: Growth,
    /// The inverse-Cartier forms are closed.
    pub witnesses_closed: bool,
    /// Relations of `Ω^q_{X′}` map to zero classes.
    pub relations_respected: bool,
    /// Their classes generate `H^q`.
    pub witnesses_generate: bool,
    pub witnesses: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartierReport {
    pub variety: String,
    pub profile: ProfileSummary,
    pub degrees: Vec<CartierDegree>,
    pub passed: bool,
}

fn span_basis(ring: Ring, rank: usize, vs: &[FreeModuleVector]) -> ModuleGroebnerBasis {
    module_groebner(ring, rank, vs, ModuleOrder::TermOverPosition)
}

/// Checks `H^q(F_*Ω•_X) ≅ Ω^q_{X′}` through the explicit inverse Cartier map.
pub fn cartier_verify(x: &AffineVariety, degree_cap: u32) -> Result<CartierReport> {
    let c = build_derham_pushforward(x)?;
    let profile = cohomology_profile(&c, degree_cap)?;
    let fs = x.frobenius_structure();
    let (n, y) = (fs.n, fs.y);
    let graded_one = |rels: Option<PolyMatrix>, rank: usize| {
        let gens = rels.map(|r| columns_of(&r)).unwrap_or_default();
        module_growth(rank, &span_basis(y, rank, &gens))
    };
    let base = graded_one(twisted_forms_relations(x, 0), 1);
    let mut degrees = Vec::new();
    for q in 0..=n {
        let ks = exterior_basis(n, q).len();
        let rank = fs.form_rank(q);
        let forms: Vec<Vec<SparsePolynomial>> = (0..ks).map(|k| inverse_cartier_form(&fs, q, k)).collect();
        let witness_vectors: Vec<FreeModuleVector> =
            forms.iter().map(|w| FreeModuleVector::new(y, fs.pushforward_form(w)).unwrap()).collect();
        let rel_here = c.relations()[q].as_ref().map(columns_of).unwrap_or_default();

        let closed = if q < n {
            let next_rank = fs.form_rank(q + 1);
            let rel_next = c.relations()[q + 1].as_ref().map(columns_of).unwrap_or_default();
            let target = span_basis(y, next_rank, &rel_next);
            forms.iter().all(|w| {
                let dw = FreeModuleVector::new(y, fs.pushforward_form(&exterior_derivative(n, q, w, fs.x))).unwrap();
                target.contains(&dw)
            })
        } else {
            true
        };

        // boundaries plus relations, then with the witnesses added
        let mut exact: Vec<FreeModuleVector> = rel_here.clone();
        if q > 0 {
            exact.extend(columns_of(&c.differentials()[q - 1]));
        }
        let exact_basis = span_basis(y, rank, &exact);
        let relations_respected = match twisted_forms_relations(x, q) {
            None => true,
            Some(r) => columns_of(&r).iter().all(|col| {
                let mut v = FreeModuleVector::zero(y, rank);
                for (k, coef) in col.components().iter().enumerate() {
                    if !coef.is_zero() {
                        v = v.add(&witness_vectors[k].scale_by(coef));
                    }
                }
                exact_basis.contains(&v)
            }),
        };
        let mut with_witnesses = exact.clone();
        with_witnesses.extend(witness_vectors.iter().cloned());
        let span = span_basis(y, rank, &with_witnesses);
        let generates = span.contains_all(&profile.entries[q].generators);

        let expected_growth = graded_one(twisted_forms_relations(x, q), ks);
        let expected_rank = if base.multiplicity == 0 { 0 } else { expected_growth.multiplicity / base.multiplicity };
        let entry = &profile.entries[q];
        let iso = match x.equation {
            None => entry.free_rank == Some(ks),
            Some(_) => entry.growth == expected_growth,
        };
        let passed = closed && relations_respected && generates && iso;
        degrees.push(CartierDegree {
            degree: q,
            expected_rank,
            free_rank: entry.free_rank,
            growth: entry.growth,
            expected_growth,
            witnesses_closed: closed,
            relations_respected,
            witnesses_generate: generates,
            witnesses: forms.iter().map(|w| form_to_string(n, q, w)).collect(),
            passed,
        });
    }
    let passed = degrees.iter().all(|d| d.passed);
    Ok(CartierReport { variety: x.describe(), profile: profile.summary(), degrees, passed })
}

/// One term `R^{rank} / relations` of the obstruction sequence.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub name: &'static str,
    pub rank: usize,
    pub relations: Vec<FreeModuleVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub variety: String,
    pub terms: Vec<String>,
    pub generator_counts: Vec<usize>,
    /// Exactness at `O_{X′}`, `F_*O_X`, `F_*Z^1`, `Ω^1_{X′}`.
    pub exact: Vec<bool>,
    pub maps_well_defined: bool,
    pub compositions_vanish: bool,
    /// Generators of `F_*Z^1` as forms.
    pub closed_form_generators: Vec<String>,
    pub passed: bool,
}

/// `0 → O_{X′} → F_*O_X → F_*Z^1 → Ω^1_{X′} → 0` with all maps explicit.
#[derive(Clone, Debug)]
pub struct ObstructionSequence {
    pub modules: Vec<PresentedModule>,
    /// `maps[i] : modules[i] → modules[i + 1]`.
    pub maps: Vec<PolyMatrix>,
    pub report: ObstructionReport,
}

fn image_of(m: &PolyMatrix, vs: &[FreeModuleVector]) -> Vec<FreeModuleVector> {
    vs.iter().map(|v| FreeModuleVector::new(m.ring(), m.apply(v.components()).unwrap()).unwrap()).collect()
}

/// Here `Z^1` is the module of closed 1-forms, which is what makes the sequence exact.
pub fn build_obstruction_sequence(x: &AffineVariety) -> Result<ObstructionSequence> {
    let c = build_derham_pushforward(x)?;
    let fs = x.frobenius_structure();
    let (n, y) = (fs.n, fs.y);
    let rel_cols = |q: usize| c.relations().get(q).and_then(|r| r.as_ref()).map(columns_of).unwrap_or_default();
    let r0 = rel_cols(0);
    let r1 = rel_cols(1);
    let r1_mat = matrix_of(y, fs.form_rank(1), &r1);

    // closed 1-forms modulo relations
    let z_gens = if n >= 2 {
        let r2 = matrix_of(y, fs.form_rank(2), &rel_cols(2));
        kernel_modulo(&c.differentials()[1], &r2)?
    } else {
        (0..fs.form_rank(1)).map(|i| FreeModuleVector::unit(y, fs.form_rank(1), i)).collect()
    };
    let z = module_groebner(y, fs.form_rank(1), &z_gens, ModuleOrder::PositionOverTerm).generators();
    let z_mat = matrix_of(y, fs.form_rank(1), &z);
    let z_rel = kernel_modulo(&z_mat, &r1_mat)?;

    let o_rel: Vec<FreeModuleVector> = x
        .twisted_equation()
        .map(|g| vec![FreeModuleVector::new(y, vec![g]).unwrap()])
        .unwrap_or_default();
    let omega_rel = twisted_forms_relations(x, 1).map(|r| columns_of(&r)).unwrap_or_default();

    let modules = vec![
        PresentedModule { name: "O_X'", rank: 1, relations: o_rel },
        PresentedModule { name: "F_*O_X", rank: fs.rank(), relations: r0 },
        PresentedModule { name: "F_*Z^1", rank: z.len(), relations: z_rel },
        PresentedModule { name: "Omega^1_X'", rank: n, relations: omega_rel },
    ];

    // O_{X′} → F_*O_X: 1 ↦ 1
    let mut frob = PolyMatrix::zero(y, fs.rank(), 1);
    frob.set(0, 0, y.one());

    // F_*O_X → F_*Z^1: d in the coordinates of the closed-form generators
    let zr = z_mat.hstack(&r1_mat)?;
    let mut dmap = PolyMatrix::zero(y, z.len(), fs.rank());
    for (j, col) in columns_of(&c.differentials()[0]).iter().enumerate() {
        let u = lift(&zr, col).ok_or_else(|| Error::InternalInconsistency("exact form is not closed".into()))?;
        for (i, coef) in u.into_iter().take(z.len()).enumerate() {
            dmap.set(i, j, coef);
        }
    }

    // F_*Z^1 → Ω^1_{X′}: the Cartier operator, inverting dy_i ↦ x_i^{p−1} dx_i
    let inv_cartier: Vec<Vec<SparsePolynomial>> =
        (0..n).map(|i| fs.pushforward_form(&inverse_cartier_form(&fs, 1, i))).collect();
    let inv_mat = PolyMatrix::from_columns(y, fs.form_rank(1), &inv_cartier)?;
    let big = inv_mat.hstack(&c.differentials()[0])?.hstack(&r1_mat)?;
    let mut cartier = PolyMatrix::zero(y, n, z.len());
    for (j, zv) in z.iter().enumerate() {
        let u = lift(&big, zv)
            .ok_or_else(|| Error::InternalInconsistency(format!("closed form {zv} outside the Cartier span")))?;
        for (i, coef) in u.into_iter().take(n).enumerate() {
            cartier.set(i, j, coef);
        }
    }
    let maps = vec![frob, dmap, cartier];

    let sub = |m: &PresentedModule, extra: Vec<FreeModuleVector>| {
        let mut all = m.relations.clone();
        all.extend(extra);
        span_basis(y, m.rank, &all)
    };
    let mut maps_well_defined = true;
    let mut compositions_vanish = true;
    for i in 0..3 {
        let target = sub(&modules[i + 1], Vec::new());
        maps_well_defined &= target.contains_all(&image_of(&maps[i], &modules[i].relations));
        if i < 2 {
            let comp = maps[i + 1].checked_mul(&maps[i])?;
            compositions_vanish &= sub(&modules[i + 2], Vec::new()).contains_all(&columns_of(&comp));
        }
    }
    let mut exact = Vec::new();
    for i in 0..4 {
        let m = &modules[i];
        let kernel = if i < 3 {
            let target_rel = matrix_of(y, modules[i + 1].rank, &modules[i + 1].relations);
            kernel_modulo(&maps[i], &target_rel)?
        } else {
            (0..m.rank).map(|j| FreeModuleVector::unit(y, m.rank, j)).collect()
        };
        let image = if i > 0 { columns_of(&maps[i - 1]) } else { Vec::new() };
        let lhs = sub(m, kernel);
        let rhs = sub(m, image);
        exact.push(lhs.same_submodule(&rhs));
    }
    let closed_form_generators = z.iter().map(|v| form_to_string(n, 1, &fs.reconstruct_form(v.components()))).collect();
    let passed = maps_well_defined && compositions_vanish && exact.iter().all(|&e| e);
    let report = ObstructionReport {
        variety: x.describe(),
        terms: modules.iter().map(|m| m.name.to_string()).collect(),
        generator_counts: modules.iter().map(|m| m.rank).collect(),
        exact,
        maps_well_defined,
        compositions_vanish,
        closed_form_generators,
        passed,
    };
    Ok(ObstructionSequence { modules, maps, report })
}
