//! Crystalline differential operators on affine n-space over F_p.
//!
//! Elements are kept in normal form `Σ c_{a,b} x^a ∂^b` (functions to the
//! left). Unlike Grothendieck's ring there are no divided powers: `∂^p` is a
//! nonzero central element.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field;
use crate::matrix::PolyMatrix;
use crate::parse::{parse_with, Expr};
use crate::poly::{Monomial, Ring, SparsePolynomial, VarName};

/// Normal-form element of the Weyl algebra over `ring` (x-variables).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    ring: Ring,
    terms: BTreeMap<(Monomial, Monomial), u32>,
}

impl WeylElement {
    pub fn zero(ring: Ring) -> Self {
        WeylElement { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::function(&ring.one())
    }

    /// Multiplication by a function.
    pub fn function(f: &SparsePolynomial) -> Self {
        let n = f.ring().nvars();
        let mut out = Self::zero(f.ring());
        for (m, c) in f.terms() {
            out.add_term(m.clone(), Monomial::one(n), c);
        }
        out
    }

    pub fn x(ring: Ring, i: usize) -> Self {
        Self::function(&ring.var(i))
    }

    pub fn d(ring: Ring, i: usize) -> Self {
        let n = ring.nvars();
        let mut out = Self::zero(ring);
        out.add_term(Monomial::one(n), Monomial::var(n, i), 1);
        out
    }

    /// `Σ θ_i ∂_i`.
    pub fn from_vector_field(theta: &VectorField) -> Self {
        let ring = theta.ring();
        let n = ring.nvars();
        let mut out = Self::zero(ring);
        for (i, g) in theta.coefficients().iter().enumerate() {
            for (m, c) in g.terms() {
                out.add_term(m.clone(), Monomial::var(n, i), c);
            }
        }
        out
    }

    pub fn parse(ring: Ring, text: &str) -> Result<Self> {
        let out = parse_with(&Self::zero(ring), text)?;
        out.check_guard()?;
        Ok(out)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(x-exponents, ∂-exponents, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, u32)> {
        self.terms.iter().map(|((a, b), &c)| (a, b, c))
    }

    /// Largest total ∂-degree; 0 for functions and for zero.
    pub fn d_degree(&self) -> u32 {
        self.terms.keys().map(|(_, b)| b.degree()).max().unwrap_or(0)
    }

    /// The function part, if the element has no ∂'s.
    pub fn as_function(&self) -> Option<SparsePolynomial> {
        if self.d_degree() > 0 {
            return None;
        }
        Some(SparsePolynomial::from_terms(self.ring, self.terms().map(|(a, _, c)| (a.clone(), c))))
    }

    /// Refuses operators whose ∂-degree exceeds `4p`.
    pub fn check_guard(&self) -> Result<()> {
        let limit = 4 * self.ring.p();
        let degree = self.d_degree();
        if degree > limit {
            return Err(Error::DegreeGuard { degree, limit });
        }
        Ok(())
    }

    fn add_term(&mut self, a: Monomial, b: Monomial, c: u32) {
        let p = self.ring.p();
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = field::add(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "Weyl elements over different rings");
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.ring);
        for (a, b, d) in self.terms() {
            out.add_term(a.clone(), b.clone(), field::mul(c, d, self.ring.p()));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ring.p() - 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Normal-form product, without the degree guard.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "Weyl elements over different rings");
        let p = self.ring.p();
        let n = self.ring.nvars();
        let mut out = Self::zero(self.ring);
        for (a, b, c1) in self.terms() {
            for (c, d, c2) in other.terms() {
                // x^a (∂^b x^c) ∂^d, one variable at a time:
                // ∂^b x^c = Σ_k C(b,k) c(c-1)..(c-k+1) x^{c-k} ∂^{b-k}
                let mut partial: Vec<(Vec<u32>, Vec<u32>, u32)> = vec![(Vec::new(), Vec::new(), field::mul(c1, c2, p))];
                for i in 0..n {
                    let (bi, ci) = (b.exponents()[i], c.exponents()[i]);
                    let mut next = Vec::new();
                    for k in 0..=bi.min(ci) {
                        let coef = field::mul(
                            field::binomial(bi as u64, k as u64, p),
                            field::falling_factorial(ci as u64, k as u64, p),
                            p,
                        );
                        if coef == 0 {
                            continue;
                        }
                        for (xs, ds, acc) in &partial {
                            let mut xs = xs.clone();
                            let mut ds = ds.clone();
                            xs.push(a.exponents()[i] + ci - k);
                            ds.push(bi - k + d.exponents()[i]);
                            next.push((xs, ds, field::mul(*acc, coef, p)));
                        }
                    }
                    partial = next;
                }
                for (xs, ds, coef) in partial {
                    out.add_term(Monomial::from_exponents(&xs), Monomial::from_exponents(&ds), coef);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

/// Checked normal-form product.
pub fn weyl_mul(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.ring.check_same(&b.ring)?;
    a.check_guard()?;
    b.check_guard()?;
    Ok(a.mul(b))
}

/// Action on functions: `∂_i` differentiates, `x_i` multiplies.
pub fn apply_operator(op: &WeylElement, g: &SparsePolynomial) -> Result<SparsePolynomial> {
    op.ring.check_same(&g.ring())?;
    let mut out = op.ring.zero();
    for (a, b, c) in op.terms() {
        let mut h = g.clone();
        for (i, &e) in b.exponents().iter().enumerate() {
            for _ in 0..e {
                h = h.diff(i);
            }
        }
        if !h.is_zero() {
            out = &out + &h.mul_monomial(a, c);
        }
    }
    Ok(out)
}

impl Expr for WeylElement {
    fn constant(&self, c: i64) -> Self {
        Self::function(&self.ring.constant(c))
    }

    fn variable(&self, prefix: char, index: usize) -> std::result::Result<Self, String> {
        let n = self.ring.nvars();
        if index >= n {
            return Err(format!("{prefix}{index} out of range for {n} variables"));
        }
        match prefix {
            'x' => Ok(Self::x(self.ring, index)),
            'd' => Ok(Self::d(self.ring, index)),
            _ => Err(format!("unknown generator {prefix}{index}; use x0.. and d0..")),
        }
    }

    fn add(&self, other: &Self) -> Self {
        WeylElement::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        WeylElement::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        WeylElement::mul(self, other)
    }

    fn pow(&self, e: u64) -> Self {
        WeylElement::pow(self, e)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), &c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if c != 1 || (a.is_one() && b.is_one()) {
                factors.push(c.to_string());
            }
            for (prefix, m) in [('x', a), ('d', b)] {
                for (i, &e) in m.exponents().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("{prefix}{i}")),
                        _ => factors.push(format!("{prefix}{i}^{e}")),
                    }
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `θ = Σ g_i ∂_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    coefficients: Vec<SparsePolynomial>,
    ring: Ring,
}

impl VectorField {
    pub fn new(ring: Ring, coefficients: Vec<SparsePolynomial>) -> Result<Self> {
        if coefficients.len() != ring.nvars() {
            return Err(Error::Shape(format!(
                "vector field needs {} coefficients, got {}",
                ring.nvars(),
                coefficients.len()
            )));
        }
        for c in &coefficients {
            ring.check_same(&c.ring())?;
        }
        Ok(VectorField { coefficients, ring })
    }

    /// The coordinate field `∂_i`.
    pub fn coordinate(ring: Ring, i: usize) -> Self {
        let coefficients = (0..ring.nvars()).map(|j| if i == j { ring.one() } else { ring.zero() }).collect();
        VectorField { coefficients, ring }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coefficients(&self) -> &[SparsePolynomial] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(SparsePolynomial::is_zero)
    }

    /// `θ(g)`.
    pub fn apply(&self, g: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.ring.zero();
        for (i, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &g.diff(i));
            }
        }
        out
    }

    /// Same coefficients read in the other coordinate ring (x ↔ y).
    pub fn relabel(&self, var: VarName) -> Self {
        let ring = self.ring.with_var_name(var);
        VectorField { coefficients: self.coefficients.iter().map(|c| c.in_ring(ring)).collect(), ring }
    }
}

/// `θ^[p] = Σ θ^p(x_i) ∂_i`, the derivation acting like `θ^p`.
pub fn restricted_power(theta: &VectorField) -> VectorField {
    let ring = theta.ring();
    let p = ring.p();
    let coefficients = (0..ring.nvars())
        .map(|i| {
            let mut h = ring.var(i);
            for _ in 0..p {
                h = theta.apply(&h);
            }
            h
        })
        .collect();
    VectorField { coefficients, ring }
}

/// `ι(θ′) = θ^p − θ^[p]`, where `θ` has the coefficients of `θ′` with every
/// `y_i` read as `x_i`. Then `ι(g(y)·θ′) = g(x^p)·ι(θ′)`.
pub fn center_map(theta_prime: &VectorField) -> WeylElement {
    let theta = theta_prime.relabel(VarName::X);
    let p = theta.ring().p() as u64;
    let t = WeylElement::from_vector_field(&theta);
    t.pow(p).sub(&WeylElement::from_vector_field(&restricted_power(&theta)))
}

/// `ψ_f`: `x_i ↦ x_i`, `∂_i ↦ ∂_i − ∂_i f`.
pub fn twist_automorphism(f: &SparsePolynomial, a: &WeylElement) -> Result<WeylElement> {
    let ring = a.ring();
    ring.check_same(&f.ring())?;
    a.check_guard()?;
    let n = ring.nvars();
    let images: Vec<WeylElement> =
        (0..n).map(|i| WeylElement::d(ring, i).sub(&WeylElement::function(&f.diff(i)))).collect();
    let mut out = WeylElement::zero(ring);
    for (xa, b, c) in a.terms() {
        let mut t = WeylElement::function(&SparsePolynomial::monomial(ring, xa.clone(), c));
        for (i, &e) in b.exponents().iter().enumerate() {
            if e > 0 {
                t = t.mul(&images[i].pow(e as u64));
            }
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// Flat connection `∇_{∂_i} = ∂_i + A_i` on `O^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    ring: Ring,
    rank: usize,
    matrices: Vec<PolyMatrix>,
}

impl Connection {
    pub fn new(ring: Ring, rank: usize, matrices: Vec<PolyMatrix>) -> Result<Self> {
        if matrices.len() != ring.nvars() {
            return Err(Error::Shape(format!("{} connection matrices for {} variables", matrices.len(), ring.nvars())));
        }
        for a in &matrices {
            ring.check_same(&a.ring())?;
            if (a.rows(), a.cols()) != (rank, rank) {
                return Err(Error::Shape(format!("connection matrix must be {rank}x{rank}")));
            }
        }
        let c = Connection { ring, rank, matrices };
        for i in 0..ring.nvars() {
            for j in i + 1..ring.nvars() {
                let (ai, aj) = (&c.matrices[i], &c.matrices[j]);
                let di_aj = aj.map_entries(ring, |e| e.diff(i));
                let dj_ai = ai.map_entries(ring, |e| e.diff(j));
                let bracket = ai.checked_mul(aj)?.checked_add(&aj.checked_mul(ai)?.scale(ring.p() - 1))?;
                let curvature = di_aj.checked_add(&dj_ai.scale(ring.p() - 1))?.checked_add(&bracket)?;
                if !curvature.is_zero() {
                    return Err(Error::NonFlat(format!("curvature in directions ({i}, {j}) is {curvature}")));
                }
            }
        }
        Ok(c)
    }

    pub fn trivial(ring: Ring, rank: usize) -> Self {
        Connection { ring, rank, matrices: vec![PolyMatrix::zero(ring, rank, rank); ring.nvars()] }
    }

    /// `L = ψ_* O`: the rank-one module on which `∂_i` acts as `∂_i − ∂_i f`.
    pub fn twisted_line(f: &SparsePolynomial) -> Self {
        let ring = f.ring();
        let matrices = (0..ring.nvars())
            .map(|i| PolyMatrix::from_rows(ring, vec![vec![-f.diff(i)]]).expect("1x1"))
            .collect();
        Connection { ring, rank: 1, matrices }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.matrices
    }

    /// `∇_θ(s) = Σ θ_i (∂_i s + A_i s)`.
    pub fn covariant(&self, theta: &VectorField, s: &[SparsePolynomial]) -> Vec<SparsePolynomial> {
        let mut out = vec![self.ring.zero(); self.rank];
        for (i, g) in theta.coefficients().iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let a_s = self.matrices[i].apply(s).expect("section of the right rank");
            for k in 0..self.rank {
                let t = &s[k].diff(i) + &a_s[k];
                out[k] = &out[k] + &(g * &t);
            }
        }
        out
    }

    /// `(∇_θ^p − ∇_{θ^[p]})(s)`.
    pub fn p_curvature_apply(&self, theta: &VectorField, s: &[SparsePolynomial]) -> Vec<SparsePolynomial> {
        let mut v = s.to_vec();
        for _ in 0..self.ring.p() {
            v = self.covariant(theta, &v);
        }
        let w = self.covariant(&restricted_power(theta), s);
        v.iter().zip(&w).map(|(a, b)| a - b).collect()
    }
}

/// Matrix of the O-linear operator `∇_θ^p − ∇_{θ^[p]}`.
pub fn p_curvature(conn: &Connection, theta: &VectorField) -> Result<PolyMatrix> {
    conn.ring.check_same(&theta.ring())?;
    let ring = conn.ring;
    let cols: Vec<Vec<SparsePolynomial>> = (0..conn.rank)
        .map(|k| {
            let e: Vec<SparsePolynomial> =
                (0..conn.rank).map(|j| if j == k { ring.one() } else { ring.zero() }).collect();
            conn.p_curvature_apply(theta, &e)
        })
        .collect();
    PolyMatrix::from_columns(ring, conn.rank, &cols)
}

/// `ψ(θ^p − θ^[p]) − (θ^p − θ^[p]) + (θf)^p`, zero exactly when the twist
/// moves the p-curvature of `θ` by `−(θf)^p`.
pub fn psi_lemma_defect(f: &SparsePolynomial, theta: &VectorField) -> Result<WeylElement> {
    let p = theta.ring().p() as u64;
    let t = WeylElement::from_vector_field(theta);
    let c = t.pow(p).sub(&WeylElement::from_vector_field(&restricted_power(theta)));
    let twisted = twist_automorphism(f, &c)?;
    let shift = WeylElement::function(&theta.apply(f).pow(p));
    Ok(twisted.sub(&c).add(&shift))
}

/// Nonzero commutators of `ι(θ′)` with the generators `x_i`, `∂_j`.
pub fn central_defects(theta_prime: &VectorField) -> Vec<WeylElement> {
    let iota = center_map(theta_prime);
    let ring = iota.ring();
    (0..ring.nvars())
        .flat_map(|i| [WeylElement::x(ring, i), WeylElement::d(ring, i)])
        .map(|g| iota.commutator(&g))
        .filter(|c| !c.is_zero())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylIdentityReport {
    pub prime: u32,
    pub n: usize,
    pub seed: u64,
    pub psi_lemma_checked: usize,
    pub psi_lemma_failures: usize,
    pub centrality_checked: usize,
    pub centrality_failures: usize,
    pub first_failure: Option<String>,
    pub passed: bool,
}

/// ψ-Lemma on `∂_i` for `samples` random `f` of degree ≤ 3, and centrality
/// of `ι(θ′)` for `samples` random `θ′` of coefficient degree ≤ 2.
pub fn weyl_identity_sweep(prime: crate::field::Prime, n: usize, samples: usize, seed: u64) -> Result<WeylIdentityReport> {
    let ring = Ring::x(prime, n);
    let yring = ring.with_var_name(VarName::Y);
    let mut rng = crate::sample::rng(seed);
    let mut report = WeylIdentityReport {
        prime: prime.get(),
        n,
        seed,
        psi_lemma_checked: 0,
        psi_lemma_failures: 0,
        centrality_checked: 0,
        centrality_failures: 0,
        first_failure: None,
        passed: false,
    };
    for _ in 0..samples {
        let f = crate::sample::polynomial(ring, 3, 4, &mut rng);
        for i in 0..n {
            report.psi_lemma_checked += 1;
            let defect = psi_lemma_defect(&f, &VectorField::coordinate(ring, i))?;
            if !defect.is_zero() {
                report.psi_lemma_failures += 1;
                report.first_failure.get_or_insert_with(|| format!("psi lemma, f = {f}, i = {i}: {defect}"));
            }
        }
    }
    for _ in 0..samples {
        let theta = crate::sample::vector_field(yring, 2, 3, &mut rng);
        report.centrality_checked += 1;
        let defects = central_defects(&theta);
        if !defects.is_empty() {
            report.centrality_failures += 1;
            report.first_failure.get_or_insert_with(|| format!("centrality, theta' = {:?}", theta.coefficients()));
        }
    }
    report.passed = report.psi_lemma_failures == 0 && report.centrality_failures == 0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::x(Prime::new(p).unwrap(), n)
    }

    fn w(r: Ring, s: &str) -> WeylElement {
        WeylElement::parse(r, s).unwrap()
    }

    #[test]
    fn defining_relation() {
        let r = ring(5, 1);
        assert_eq!(w(r, "d0*x0"), w(r, "x0*d0 + 1"));
        let r3 = ring(3, 1);
        assert!(w(r3, "d0^3").commutator(&w(r3, "x0")).is_zero());
    }

    #[test]
    fn twisted_cube() {
        let r = ring(3, 1);
        assert_eq!(w(r, "(d0 - 2*x0)^3"), w(r, "d0^3 + x0^3"));
    }

    #[test]
    fn action_on_functions() {
        let r = ring(3, 1);
        let x2 = r.parse("x0^2").unwrap();
        assert_eq!(apply_operator(&w(r, "d0"), &x2).unwrap(), r.parse("2*x0").unwrap());
        assert_eq!(apply_operator(&w(r, "x0*d0"), &r.var(0)).unwrap(), r.var(0));
        assert!(apply_operator(&w(r, "d0^3"), &r.parse("x0^3 + x0^5 + 1").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn restricted_powers() {
        let r = ring(3, 1);
        assert!(restricted_power(&VectorField::coordinate(r, 0)).is_zero());
        let xd = VectorField::new(r, vec![r.var(0)]).unwrap();
        assert_eq!(restricted_power(&xd), xd);
        let r2 = ring(2, 1);
        assert!(restricted_power(&VectorField::new(r2, vec![r2.parse("x0^2").unwrap()]).unwrap()).is_zero());
    }

    #[test]
    fn center_of_coordinate_field() {
        let r = ring(3, 1);
        let y = r.with_var_name(VarName::Y);
        let iota = center_map(&VectorField::coordinate(y, 0));
        assert_eq!(iota, w(r, "d0^3"));
        // ι(y ∂′) = x^p ι(∂′) at p = 2
        let r2 = ring(2, 1);
        let y2 = r2.with_var_name(VarName::Y);
        let iota = center_map(&VectorField::new(y2, vec![y2.var(0)]).unwrap());
        assert_eq!(iota, w(r2, "x0^2*d0^2"));
        assert!(iota.commutator(&w(r2, "x0")).is_zero());
        assert!(iota.commutator(&w(r2, "d0")).is_zero());
    }

    #[test]
    fn twist_of_center() {
        let r = ring(3, 1);
        let f = r.parse("x0^2").unwrap();
        assert_eq!(twist_automorphism(&f, &w(r, "x0")).unwrap(), w(r, "x0"));
        assert_eq!(twist_automorphism(&f, &w(r, "d0")).unwrap(), w(r, "d0 - 2*x0"));
        assert_eq!(twist_automorphism(&f, &w(r, "d0^3")).unwrap(), w(r, "d0^3 + x0^3"));
    }

    #[test]
    fn p_curvatures() {
        let r = ring(3, 1);
        let d = VectorField::coordinate(r, 0);
        assert!(p_curvature(&Connection::trivial(r, 2), &d).unwrap().is_zero());
        let l = Connection::twisted_line(&r.parse("x0^2").unwrap());
        assert_eq!(p_curvature(&l, &d).unwrap().get(0, 0), &r.parse("x0^3").unwrap());
        assert!(p_curvature(&Connection::twisted_line(&r.zero()), &d).unwrap().is_zero());
    }

    #[test]
    fn non_flat_is_rejected() {
        let r = ring(3, 2);
        let a0 = PolyMatrix::parse_rows(r, &[&["x1"]]).unwrap();
        let a1 = PolyMatrix::parse_rows(r, &[&["0"]]).unwrap();
        assert!(matches!(Connection::new(r, 1, vec![a0, a1]), Err(Error::NonFlat(_))));
    }

    #[test]
    fn degree_guard() {
        let r = ring(2, 1);
        assert!(matches!(WeylElement::parse(r, "d0^9"), Err(Error::DegreeGuard { degree: 9, limit: 8 })));
    }

    #[test]
    fn identity_sweep() {
        for p in [2, 3] {
            let r = weyl_identity_sweep(crate::field::Prime::new(p).unwrap(), 2, 4, 11).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.psi_lemma_checked, 8);
        }
    }
}
