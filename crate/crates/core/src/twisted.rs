//! Twisted de Rham complexes of a superpotential `f` on affine space, its
//! critical locus, and the comparison of their cohomology.

use serde::{Deserialize, Serialize};

use crate::complexes::{
    cohomology_profile, compare_summaries, exterior_basis, koszul_complex, make_complex, ChainComplex,
    ProfileComparison, ProfileSummary,
};
use crate::error::{Error, Result};
use crate::frobenius::{exterior_derivative, frobenius_pushforward, pushforward_operator, wedge_one_form, FrobeniusStructure};
use crate::groebner::{
    kernel_modulo, lift, module_groebner, module_growth, FreeModuleVector, Growth, ModuleGroebnerBasis, ModuleOrder,
    QuotientDimension,
};
use crate::matrix::PolyMatrix;
use crate::poly::{Ring, SparsePolynomial};
use crate::weyl::{p_curvature, Connection, VectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    f: SparsePolynomial,
    partials: Vec<SparsePolynomial>,
    f_prime: SparsePolynomial,
}

impl Superpotential {
    pub fn new(f: SparsePolynomial) -> Self {
        let partials = (0..f.ring().nvars()).map(|i| f.diff(i)).collect();
        let f_prime = f.p_power_substitute();
        Superpotential { f, partials, f_prime }
    }

    pub fn f(&self) -> &SparsePolynomial {
        &self.f
    }

    pub fn ring(&self) -> Ring {
        self.f.ring()
    }

    pub fn n(&self) -> usize {
        self.f.ring().nvars()
    }

    pub fn partials(&self) -> &[SparsePolynomial] {
        &self.partials
    }

    /// `f′ = π*f` on `X′`.
    pub fn f_prime(&self) -> &SparsePolynomial {
        &self.f_prime
    }

    pub fn frobenius_structure(&self) -> FrobeniusStructure {
        FrobeniusStructure::new(self.ring().prime(), self.n())
    }
}

/// `F_*(Ω•_X, d − df∧)` over `k[y]`.
pub fn build_twisted_pushforward(sp: &Superpotential, fs: &FrobeniusStructure) -> Result<ChainComplex> {
    let n = sp.n();
    if fs.n() != n || fs.p() != sp.ring().p() {
        return Err(Error::Shape("Frobenius structure does not match the superpotential".into()));
    }
    let ranks = (0..=n).map(|q| fs.form_rank(q)).collect();
    let x = fs.x_ring();
    let differentials = (0..n)
        .map(|q| {
            pushforward_operator(fs, q, q + 1, |w| {
                let d = exterior_derivative(n, q, w, x);
                let t = wedge_one_form(n, q, &sp.partials, w, x);
                d.iter().zip(&t).map(|(a, b)| a - b).collect()
            })
        })
        .collect();
    make_complex(fs.y_ring(), ranks, differentials)
}

/// `(Ω•_{X′}, ∧df′)`: the Koszul complex on `∂f′/∂y_i`.
pub fn build_wedge_complex(sp: &Superpotential) -> Result<ChainComplex> {
    let fp = &sp.f_prime;
    let partials: Vec<SparsePolynomial> = (0..sp.n()).map(|i| fp.diff(i)).collect();
    koszul_complex(fp.ring(), &partials)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalLocusAnalysis {
    /// Generators of `J = (∂_1 f, …, ∂_n f)`.
    pub ideal: Vec<String>,
    pub empty: bool,
    pub dimension: Option<u32>,
    pub codimension: u32,
    /// `dim_k O_Z` when finite, otherwise the multiplicity of `O_Z`.
    pub multiplicity: u64,
    pub smooth: bool,
    pub split: bool,
    /// Why `smooth` or `split` failed.
    pub notes: Vec<String>,
}

fn ideal_basis(ring: Ring, gens: &[SparsePolynomial]) -> ModuleGroebnerBasis {
    let vs: Vec<FreeModuleVector> = gens.iter().map(|g| FreeModuleVector::new(ring, vec![g.clone()]).unwrap()).collect();
    module_groebner(ring, 1, &vs, ModuleOrder::TermOverPosition)
}

fn minors(m: &[Vec<SparsePolynomial>], size: usize) -> Vec<(Vec<usize>, SparsePolynomial)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in exterior_basis(rows, size) {
        for cs in exterior_basis(cols, size) {
            let sub: Vec<Vec<SparsePolynomial>> =
                rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let ring = m[0][0].ring();
            let det = PolyMatrix::from_rows(ring, sub).unwrap().determinant().unwrap();
            if !det.is_zero() {
                out.push((rs.clone(), det));
            }
        }
    }
    out
}

/// `h ∈ I·k[x]_m`, via an extra variable `t` and `1 − t·m`.
fn in_localization(ring: Ring, ideal: &[SparsePolynomial], m: &SparsePolynomial, h: &SparsePolynomial) -> bool {
    let big = ring.with_nvars(ring.nvars() + 1);
    let t = big.var(ring.nvars());
    let mut gens: Vec<SparsePolynomial> = ideal.iter().map(|g| g.extend_vars(big)).collect();
    gens.push(&big.one() - &(&t * &m.extend_vars(big)));
    let gb = ideal_basis(big, &gens);
    gb.contains(&FreeModuleVector::new(big, vec![h.extend_vars(big)]).unwrap())
}

/// Smoothness and first-order splitting of `Z = V(∂f)`.
///
/// Smooth means: of pure codimension `c` with `J + I_c(Hess) = (1)`, and on
/// each chart `D(m)` of a nonzero `c`-minor `m`, `J` is generated by the `c`
/// partials of that minor. Mixed-dimensional loci are reported non-smooth.
pub fn critical_locus(sp: &Superpotential) -> Result<CriticalLocusAnalysis> {
    let ring = sp.ring();
    let n = sp.n();
    let j = &sp.partials;
    let gb = ideal_basis(ring, j);
    let ideal = j.iter().map(ToString::to_string).collect();
    let mut notes = Vec::new();
    if gb.is_everything() {
        notes.push("critical locus is empty".into());
        return Ok(CriticalLocusAnalysis {
            ideal,
            empty: true,
            dimension: None,
            codimension: n as u32,
            multiplicity: 0,
            smooth: true,
            split: true,
            notes,
        });
    }
    let growth = module_growth(1, &gb);
    let dim = growth.krull_dim;
    let c = n - dim as usize;

    let hess: Vec<Vec<SparsePolynomial>> = j.iter().map(|g| (0..n).map(|i| g.diff(i)).collect()).collect();
    let mut smooth = true;
    let charts = if c == 0 { Vec::new() } else { minors(&hess, c) };
    if c > 0 {
        let mut with_minors = j.clone();
        with_minors.extend(charts.iter().map(|(_, m)| m.clone()));
        if !ideal_basis(ring, &with_minors).is_everything() {
            smooth = false;
            notes.push(format!("Jacobian rank drops below {c} on the critical locus"));
        }
    } else if !j.iter().all(SparsePolynomial::is_zero) {
        // codimension 0 but J ≠ 0: a nonreduced structure on all of X
        smooth = false;
        notes.push("J is nonzero of codimension 0".into());
    }
    if smooth {
        'charts: for (rows, m) in &charts {
            let local: Vec<SparsePolynomial> = rows.iter().map(|&r| j[r].clone()).collect();
            for (k, h) in j.iter().enumerate() {
                if rows.contains(&k) {
                    continue;
                }
                if !in_localization(ring, &local, m, h) {
                    smooth = false;
                    notes.push(format!("on the chart {m} != 0 the locus is not cut out by {c} partials"));
                    break 'charts;
                }
            }
        }
    }

    let split = if smooth { first_order_split(ring, j, &hess)? } else { false };
    if smooth && !split {
        notes.push("tangent sequence does not split".into());
    }
    Ok(CriticalLocusAnalysis {
        ideal,
        empty: false,
        dimension: Some(dim),
        codimension: c as u32,
        multiplicity: growth.multiplicity,
        smooth,
        split,
        notes,
    })
}

/// Solves for a retraction `R = K·U` of `O_Z^n` onto `T_Z = ker(Hess mod J)`
/// with `R·K ≡ K`.
fn first_order_split(ring: Ring, j: &[SparsePolynomial], hess: &[Vec<SparsePolynomial>]) -> Result<bool> {
    let n = ring.nvars();
    let h = PolyMatrix::from_rows(ring, hess.to_vec())?;
    let mut jrel = PolyMatrix::zero(ring, n, n * j.len());
    for i in 0..n {
        for (k, g) in j.iter().enumerate() {
            jrel.set(i, i * j.len() + k, g.clone());
        }
    }
    let kernel: Vec<FreeModuleVector> = kernel_modulo(&h, &jrel)?
        .into_iter()
        .filter(|v| {
            // drop generators that vanish on Z
            let gb = ideal_basis(ring, j);
            v.components().iter().any(|c| !gb.contains(&FreeModuleVector::new(ring, vec![c.clone()]).unwrap()))
        })
        .collect();
    let s = kernel.len();
    if s == 0 {
        return Ok(true);
    }
    let kk = |i: usize, a: usize| kernel[a].get(i).clone();
    // unknown U_{a,b} at column a*n + b; equation (K U K)_{i,c} = K_{i,c} at row i*s + c
    let mut l = PolyMatrix::zero(ring, n * s, s * n);
    for i in 0..n {
        for c in 0..s {
            for a in 0..s {
                for b in 0..n {
                    let v = &kk(i, a) * &kk(b, c);
                    if !v.is_zero() {
                        l.set(i * s + c, a * n + b, v);
                    }
                }
            }
        }
    }
    let mut rel = PolyMatrix::zero(ring, n * s, n * s * j.len());
    for r in 0..n * s {
        for (k, g) in j.iter().enumerate() {
            rel.set(r, r * j.len() + k, g.clone());
        }
    }
    let target = FreeModuleVector::new(ring, (0..n).flat_map(|i| (0..s).map(move |c| (i, c))).map(|(i, c)| kk(i, c)).collect())?;
    Ok(lift(&l.hstack(&rel)?, &target).is_some())
}

/// Expected growth of `H^i`: `Ω^{i−c}_{Z′} ⊗ ∧^c N`, locally free of rank
/// `C(dim Z, i − c)` on `Z′`.
pub fn predicted_growth(n: usize, locus: &CriticalLocusAnalysis) -> Vec<Growth> {
    let zero = Growth { krull_dim: 0, multiplicity: 0 };
    let Some(dim) = locus.dimension else { return vec![zero; n + 1] };
    let c = locus.codimension as usize;
    (0..=n)
        .map(|i| {
            if i < c || i - c > dim as usize {
                return zero;
            }
            let b = (i - c) as u64;
            let rank = binomial(dim as u64, b);
            Growth { krull_dim: dim, multiplicity: rank * locus.multiplicity }
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkReport {
    pub f: String,
    pub locus: CriticalLocusAnalysis,
    pub twisted: ProfileSummary,
    pub wedge: ProfileSummary,
    /// Present when the locus is smooth and split.
    pub predicted: Option<Vec<Growth>>,
    pub twisted_vs_wedge: ProfileComparison,
    pub matches_prediction: Option<bool>,
    pub euler_twisted: Option<i64>,
    pub euler_wedge: Option<i64>,
    /// The hypotheses under which the theorem speaks: smooth, split locus.
    pub hypotheses_hold: bool,
    /// Twisted cohomology is finite-dimensional (stand-in for properness).
    pub finite: bool,
}

impl BkReport {
    /// Degreewise equality of the two twisted profiles, and agreement with the
    /// prediction when one was made.
    pub fn agrees(&self) -> bool {
        self.twisted_vs_wedge == ProfileComparison::Equal && self.matches_prediction != Some(false)
    }
}

pub fn bk_report(sp: &Superpotential, degree_cap: u32) -> Result<BkReport> {
    let fs = sp.frobenius_structure();
    let twisted = cohomology_profile(&build_twisted_pushforward(sp, &fs)?, degree_cap)?;
    let wedge = cohomology_profile(&build_wedge_complex(sp)?, degree_cap)?;
    let locus = critical_locus(sp)?;
    let ts = twisted.summary();
    let ws = wedge.summary();
    let hypotheses_hold = locus.smooth && locus.split;
    let predicted = hypotheses_hold.then(|| predicted_growth(sp.n(), &locus));
    let matches_prediction = predicted.as_ref().map(|p| *p == ts.growth && *p == ws.growth);
    Ok(BkReport {
        f: sp.f.to_string(),
        twisted_vs_wedge: compare_summaries(&ts, &ws)?,
        finite: ts.dimensions.iter().all(|d| matches!(d, QuotientDimension::Finite(_))),
        euler_twisted: twisted.euler_characteristic(),
        euler_wedge: wedge.euler_characteristic(),
        locus,
        twisted: ts,
        wedge: ws,
        predicted,
        matches_prediction,
        hypotheses_hold,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSupportEntry {
    pub direction: usize,
    pub p_curvature: String,
    pub expected: String,
    /// `−∂f′/∂y_i`, the graph equation of `df′`.
    pub graph_equation: String,
    pub operator_matches: bool,
    pub graph_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSupportReport {
    pub f: String,
    pub entries: Vec<LSupportEntry>,
    pub passed: bool,
}

/// p-curvature of `L = ψ_*O` along each `∂_i` against `−(∂_i f)^p`, and its
/// push-forward against `−∂f′/∂y_i` sitting on the basis vector `1`.
pub fn verify_l_support(sp: &Superpotential) -> Result<LSupportReport> {
    let ring = sp.ring();
    let p = ring.p() as u64;
    let fs = sp.frobenius_structure();
    let conn = Connection::twisted_line(&sp.f);
    let mut entries = Vec::new();
    for i in 0..sp.n() {
        let psi = p_curvature(&conn, &VectorField::coordinate(ring, i))?;
        let got = psi.get(0, 0).clone();
        let expected = -&sp.partials[i].pow(p);
        let graph = -&sp.f_prime.diff(i);
        let pushed = frobenius_pushforward(&got, &fs);
        let graph_matches = pushed[0] == graph && pushed[1..].iter().all(SparsePolynomial::is_zero);
        entries.push(LSupportEntry {
            direction: i,
            p_curvature: got.to_string(),
            expected: expected.to_string(),
            graph_equation: graph.to_string(),
            operator_matches: got == expected,
            graph_matches,
        });
    }
    let passed = entries.iter().all(|e| e.operator_matches && e.graph_matches);
    Ok(LSupportReport { f: sp.f.to_string(), entries, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;
    use crate::frobenius::{build_derham_pushforward, AffineVariety};
    use crate::linalg::smith_normal_form;

    fn sp(p: u32, n: usize, f: &str) -> Superpotential {
        let r = Ring::x(Prime::new(p).unwrap(), n);
        Superpotential::new(r.parse(f).unwrap())
    }

    #[test]
    fn twisted_matrix_on_the_line() {
        let s = sp(3, 1, "x0^2");
        let c = build_twisted_pushforward(&s, &s.frobenius_structure()).unwrap();
        let d = &c.differentials()[0];
        let y = c.ring();
        let m = PolyMatrix::parse_rows(y, &[&["0", "1", "y0"], &["1", "0", "2"], &["0", "1", "0"]]).unwrap();
        assert_eq!(d, &m);
        assert_eq!(d.determinant().unwrap(), y.parse("y0").unwrap());
        assert_eq!(smith_normal_form(d).unwrap().cokernel_dimension(), Some(1));
    }

    #[test]
    fn untwisted_is_de_rham() {
        for f in ["0", "2"] {
            let s = sp(3, 2, f);
            let c = build_twisted_pushforward(&s, &s.frobenius_structure()).unwrap();
            let d = build_derham_pushforward(&AffineVariety::affine_space(Prime::new(3).unwrap(), 2)).unwrap();
            assert_eq!(c, d);
        }
    }

    #[test]
    fn critical_loci() {
        let l = critical_locus(&sp(3, 2, "x0^2 + x1^2")).unwrap();
        assert!(l.smooth && l.split);
        assert_eq!((l.dimension, l.codimension, l.multiplicity), (Some(0), 2, 1));
        let l = critical_locus(&sp(5, 1, "x0^3")).unwrap();
        assert!(!l.smooth);
        let l = critical_locus(&sp(3, 2, "x0^2")).unwrap();
        assert!(l.smooth && l.split);
        assert_eq!((l.dimension, l.codimension), (Some(1), 1));
        let l = critical_locus(&sp(3, 1, "x0")).unwrap();
        assert!(l.empty);
    }

    #[test]
    fn bk_on_small_cases() {
        let r = bk_report(&sp(3, 1, "x0^2"), 40).unwrap();
        assert_eq!(r.twisted.dimensions, vec![QuotientDimension::Finite(0), QuotientDimension::Finite(1)]);
        assert!(r.agrees() && r.hypotheses_hold);
        let r = bk_report(&sp(3, 1, "0"), 40).unwrap();
        assert_eq!(r.twisted.free_ranks, vec![Some(1), Some(1)]);
        assert_eq!(r.wedge.free_ranks, vec![Some(1), Some(1)]);
        assert!(r.agrees());
        let r = bk_report(&sp(3, 2, "x0^2"), 40).unwrap();
        assert!(r.agrees(), "{r:?}");
    }

    #[test]
    fn l_support() {
        for (p, n, f) in [(3, 1, "x0^2"), (2, 2, "x0*x1"), (3, 1, "0")] {
            let rep = verify_l_support(&sp(p, n, f)).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        let rep = verify_l_support(&sp(3, 1, "x0^2")).unwrap();
        assert_eq!(rep.entries[0].p_curvature, "x0^3");
    }
}
