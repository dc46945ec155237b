//! Acceptance gate: one line per criterion, exit status nonzero on any failure.
//!
//! Every computed value is compared against an oracle that does not go
//! through the Gröbner engine: Smith forms over k[y], weight-graded dense
//! linear algebra in the x-variables, Künneth products, or direct polynomial
//! calculus.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use frobenius_lab::complexes::{cohomology_profile, smith_profile, ChainComplex};
use frobenius_lab::frobenius::{build_derham_pushforward, build_obstruction_sequence, cartier_verify, AffineVariety};
use frobenius_lab::groebner::{columns_of, module_groebner, quotient_k_dimension, FreeModuleVector, ModuleOrder};
use frobenius_lab::linalg::{smith_normal_form, FpMatrix};
use frobenius_lab::projective::{degeneration_check, ProjectiveVariety};
use frobenius_lab::twisted::{
    bk_report, build_twisted_pushforward, build_wedge_complex, critical_locus, verify_l_support, Superpotential,
};
use frobenius_lab::weyl::{central_defects, p_curvature, psi_lemma_defect, Connection, VectorField};
use frobenius_lab::{sample, Monomial, PolyMatrix, Prime, Ring, SparsePolynomial, VarName};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn monomials(n: usize, degree: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=degree).rev() {
        for mut rest in monomials(n - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    if q == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, q - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
    }
    out
}

/// Weight-`w` piece of `Ω^q_{A^n}` in the x-variables, `wt(x^a dx_K) = |a| + |K|`.
fn weight_forms(n: usize, q: usize, w: u32) -> Vec<(Vec<usize>, Vec<u32>)> {
    if (w as usize) < q {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in subsets(n, q) {
        for a in monomials(n, w - q as u32) {
            out.push((k.clone(), a));
        }
    }
    out
}

/// De Rham `d: Ω^q_w → Ω^{q+1}_w`, straight from `d(x^a dx_K) = Σ a_i x^{a−e_i} dx_i ∧ dx_K`.
fn derham_block(n: usize, q: usize, w: u32, p: u32) -> FpMatrix {
    let src = weight_forms(n, q, w);
    let dst = weight_forms(n, q + 1, w);
    let index: BTreeMap<_, _> = dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = FpMatrix::zeros(dst.len(), src.len(), p);
    for (j, (k, a)) in src.iter().enumerate() {
        for i in 0..n {
            if a[i] % p == 0 || k.contains(&i) {
                continue;
            }
            let before = k.iter().filter(|&&t| t < i).count();
            let mut kk = k.clone();
            kk.push(i);
            kk.sort_unstable();
            let mut b = a.clone();
            b[i] -= 1;
            let c = a[i] % p;
            let v = if before % 2 == 0 { c } else { (p - c) % p };
            m.set(index[&(kk, b)], j, v);
        }
    }
    m
}

/// `dim H^q_w` of the de Rham complex of `A^n`, by dense ranks.
fn weight_cohomology(n: usize, w: u32, p: u32) -> Vec<usize> {
    let ranks: Vec<usize> = (0..n).map(|q| derham_block(n, q, w, p).rank()).collect();
    (0..=n)
        .map(|q| {
            let out = ranks.get(q).copied().unwrap_or(0);
            let inc = if q > 0 { ranks[q - 1] } else { 0 };
            weight_forms(n, q, w).len() - out - inc
        })
        .collect()
}

/// `#{b ∈ N^n : p|b| = w − shift}`.
fn y_monomials(n: usize, p: u32, w: u32, shift: u32) -> usize {
    if w < shift || (w - shift) % p != 0 {
        return 0;
    }
    monomials(n, (w - shift) / p).len()
}

fn criterion_1() -> Check {
    let x = AffineVariety::affine_space(prime(3), 1);
    let c = build_derham_pushforward(&x).map_err(|e| e.to_string())?;
    let y = c.ring();
    let expected = PolyMatrix::parse_rows(y, &[&["0", "1", "0"], &["0", "0", "2"], &["0", "0", "0"]]).unwrap();
    ensure(c.differentials()[0] == expected, || format!("matrix {}", c.differentials()[0]))?;
    let report = cartier_verify(&x, 64).map_err(|e| e.to_string())?;
    let ranks: Vec<Option<usize>> = report.degrees.iter().map(|d| d.free_rank).collect();
    ensure(ranks == vec![Some(1), Some(1)], || format!("free ranks {ranks:?}"))?;
    let h1 = &report.degrees[1];
    ensure(h1.witnesses == vec!["x0^2*dx0".to_string()], || format!("witnesses {:?}", h1.witnesses))?;
    ensure(h1.witnesses_closed && h1.witnesses_generate, || "x^2 dx does not generate H^1".into())?;
    let smith = smith_profile(&c).map_err(|e| e.to_string())?;
    ensure(smith == vec![(1, 0), (1, 0)], || format!("Smith oracle {smith:?}"))?;
    Ok("H^0, H^1 free of rank 1 over k[y]; H^1 = k[y]·[x^2 dx]; Smith oracle agrees".into())
}

fn criterion_2() -> Check {
    let mut cases = 0;
    for n in 1..=2 {
        for p in [2, 3, 5] {
            let x = AffineVariety::affine_space(prime(p), n);
            let report = cartier_verify(&x, 64).map_err(|e| e.to_string())?;
            for (q, d) in report.degrees.iter().enumerate() {
                ensure(d.free_rank == Some(binomial(n, q)) && d.passed, || {
                    format!("A^{n}, p = {p}: H^{q} free rank {:?}", d.free_rank)
                })?;
            }
            // oracle: weight pieces of the x-variable de Rham complex match a free
            // module of rank C(n,q) generated in weight pq
            for w in 0..=3 * p {
                let dims = weight_cohomology(n, w, p);
                for (q, &got) in dims.iter().enumerate() {
                    let want = binomial(n, q) * y_monomials(n, p, w, p * q as u32);
                    ensure(got == want, || format!("A^{n}, p = {p}, weight {w}: dim H^{q} = {got}, oracle {want}"))?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, p) cases: H^q free of rank C(n,q), weight-graded oracle agrees"))
}

/// `(∂_i − h)^p g` by iterating on polynomials.
fn twisted_power_on(g: &SparsePolynomial, h: &SparsePolynomial, i: usize, p: u32) -> SparsePolynomial {
    let mut s = g.clone();
    for _ in 0..p {
        s = &s.diff(i) - &(h * &s);
    }
    s
}

fn criterion_3() -> Check {
    let mut checked = 0;
    for p in [2, 3, 5] {
        let mut rng = sample::rng(1000 + p as u64);
        for k in 0..20 {
            let n = 1 + k % 2;
            let r = Ring::x(prime(p), n);
            let f = sample::polynomial(r, 3, 4, &mut rng);
            let g = sample::polynomial(r, 3, 3, &mut rng);
            for i in 0..n {
                let defect = psi_lemma_defect(&f, &VectorField::coordinate(r, i)).map_err(|e| e.to_string())?;
                ensure(defect.is_zero(), || format!("p = {p}, f = {f}, i = {i}: defect {defect}"))?;
                // oracle: on functions ∂^p acts as 0, so (∂ − ∂f)^p g = −(∂f)^p g
                let h = f.diff(i);
                let lhs = twisted_power_on(&g, &h, i, p);
                let rhs = -&(&h.pow(p as u64) * &g);
                ensure(lhs == rhs, || format!("p = {p}, f = {f}: (d - df)^p on {g} gives {lhs}, expected {rhs}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identities ψ(∂^p − ∂^[p]) = ∂^p − ∂^[p] − (∂f)^p, function-level oracle agrees"))
}

fn criterion_4() -> Check {
    let mut checked = 0;
    for p in [2, 3, 5] {
        let mut rng = sample::rng(2000 + p as u64);
        for k in 0..20 {
            let n = 1 + k % 2;
            let y = Ring::new(prime(p), n, VarName::Y);
            let theta = sample::vector_field(y, 2, 3, &mut rng);
            let defects = central_defects(&theta);
            ensure(defects.is_empty(), || format!("p = {p}, θ′ = {:?}: {defects:?}", theta.coefficients()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} random θ′: [ι(θ′), x_i] = [ι(θ′), ∂_j] = 0"))
}

fn criterion_5() -> Check {
    for n in 1..=2 {
        for p in [2, 3] {
            let x = AffineVariety::affine_space(prime(p), n);
            let seq = build_obstruction_sequence(&x).map_err(|e| e.to_string())?;
            let r = &seq.report;
            ensure(r.passed && r.exact.iter().all(|&e| e), || format!("A^{n}, p = {p}: exact {:?}", r.exact))?;
            // oracle: the sequence is weight-graded, so every weight piece has
            // vanishing alternating dimension sum
            for w in 0..=3 * p {
                let o_twist = y_monomials(n, p, w, 0) as i64;
                let o = monomials(n, w).len() as i64;
                let closed = {
                    let forms = weight_forms(n, 1, w).len();
                    let rank = if n >= 2 { derham_block(n, 1, w, p).rank() } else { 0 };
                    (forms - rank) as i64
                };
                let omega_twist = (n * y_monomials(n, p, w, p)) as i64;
                let chi = o_twist - o + closed - omega_twist;
                ensure(chi == 0, || format!("A^{n}, p = {p}, weight {w}: alternating sum {chi}"))?;
            }
        }
    }
    Ok("A^1, A^2 at p = 2, 3: exact at all four spots; weight-graded Euler oracle vanishes".into())
}

fn finite_dims(c: &ChainComplex) -> Result<Vec<u64>, String> {
    let prof = cohomology_profile(c, 64).map_err(|e| e.to_string())?;
    prof.finite_dimensions().ok_or_else(|| format!("infinite profile {:?}", prof.dimensions()))
}

fn kunneth(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn criterion_6() -> Check {
    for p in [3, 5] {
        let one = Superpotential::new(Ring::x(prime(p), 1).parse("x0^2").unwrap());
        let smith = smith_profile(&build_twisted_pushforward(&one, &one.frobenius_structure()).unwrap()).unwrap();
        ensure(smith.iter().all(|&(free, _)| free == 0), || format!("p = {p}: Smith {smith:?}"))?;
        let line: Vec<u64> = smith.iter().map(|&(_, t)| t).collect();
        for n in 1..=2 {
            let f = (0..n).map(|i| format!("x{i}^2")).collect::<Vec<_>>().join(" + ");
            let sp = Superpotential::new(Ring::x(prime(p), n).parse(&f).unwrap());
            let twisted = finite_dims(&build_twisted_pushforward(&sp, &sp.frobenius_structure()).unwrap())?;
            let wedge = finite_dims(&build_wedge_complex(&sp).unwrap())?;
            let mut expected = vec![0; n + 1];
            expected[n] = 1;
            // oracle: Smith form of the one-variable complex, Künneth for the sum
            let oracle = if n == 1 { line.clone() } else { kunneth(&line, &line) };
            ensure(oracle == expected, || format!("p = {p}, n = {n}: Smith/Künneth oracle {oracle:?}"))?;
            ensure(twisted == expected && wedge == expected, || {
                format!("p = {p}, {f}: twisted {twisted:?}, wedge {wedge:?}")
            })?;
            let r = bk_report(&sp, 64).map_err(|e| e.to_string())?;
            let predicted: Vec<u64> = r.predicted.as_ref().ok_or("no prediction")?.iter().map(|g| g.multiplicity).collect();
            ensure(r.hypotheses_hold && predicted == expected && r.agrees(), || {
                format!("p = {p}, {f}: predicted {predicted:?}, agrees {}", r.agrees())
            })?;
        }
    }
    Ok("Σ x_i^2, n = 1, 2, p = 3, 5: twisted = wedge = predicted = (0, …, 0, 1)".into())
}

/// Graded Koszul complex on linear forms over `k[y]`: `dim H^i` in degree `t`.
fn graded_koszul_dims(ring: Ring, elements: &[SparsePolynomial], t: u32) -> Vec<usize> {
    let n = ring.nvars();
    let p = ring.p();
    let r = elements.len();
    // K^i_t = ∧^i ⊗ S_t, the differential raises t by one
    let basis = |i: usize, t: u32| -> Vec<(Vec<usize>, Vec<u32>)> {
        subsets(r, i).into_iter().flat_map(|k| monomials(n, t).into_iter().map(move |a| (k.clone(), a))).collect()
    };
    let block = |i: usize, t: u32| -> FpMatrix {
        let src = basis(i, t);
        let dst = basis(i + 1, t + 1);
        let index: BTreeMap<_, _> = dst.iter().cloned().enumerate().map(|(j, k)| (k, j)).collect();
        let mut m = FpMatrix::zeros(dst.len(), src.len(), p);
        for (j, (k, a)) in src.iter().enumerate() {
            for (e, s) in elements.iter().enumerate() {
                if k.contains(&e) {
                    continue;
                }
                let before = k.iter().filter(|&&x| x < e).count();
                let mut kk = k.clone();
                kk.push(e);
                kk.sort_unstable();
                for (mono, c) in s.terms() {
                    let b: Vec<u32> = a.iter().zip(mono.exponents()).map(|(x, y)| x + y).collect();
                    let v = if before % 2 == 0 { c } else { (p - c) % p };
                    let row = index[&(kk.clone(), b)];
                    m.set(row, j, (m.get(row, j) + v) % p);
                }
            }
        }
        m
    };
    (0..=r)
        .map(|i| {
            let out = if i < r { block(i, t).rank() } else { 0 };
            let inc = if i > 0 && t > 0 { block(i - 1, t - 1).rank() } else { 0 };
            basis(i, t).len() - out - inc
        })
        .collect()
}

fn criterion_7() -> Check {
    let p = 3;
    let sp = Superpotential::new(Ring::x(prime(p), 2).parse("x0^2").unwrap());
    let locus = critical_locus(&sp).map_err(|e| e.to_string())?;
    ensure(locus.smooth && locus.split && locus.dimension == Some(1) && locus.codimension == 1, || {
        format!("critical locus {locus:?}")
    })?;
    let r = bk_report(&sp, 64).map_err(|e| e.to_string())?;
    ensure(r.twisted.growth == r.wedge.growth && r.agrees(), || {
        format!("twisted {:?} vs wedge {:?}", r.twisted.growth, r.wedge.growth)
    })?;
    // oracle for the twisted side: Smith data of the one-variable factors and
    // Künneth (finite ⊗ free k[y1]-module has growth (1, dim·rank))
    let a = Superpotential::new(Ring::x(prime(p), 1).parse("x0^2").unwrap());
    let sa = smith_profile(&build_twisted_pushforward(&a, &a.frobenius_structure()).unwrap()).unwrap();
    let sb = smith_profile(&build_derham_pushforward(&AffineVariety::affine_space(prime(p), 1)).unwrap()).unwrap();
    let mut oracle = vec![0u64; 3];
    for (i, &(_, tors)) in sa.iter().enumerate() {
        for (j, &(free, _)) in sb.iter().enumerate() {
            oracle[i + j] += tors * free as u64;
        }
    }
    let got: Vec<(u32, u64)> = r.twisted.growth.iter().map(|g| (g.krull_dim, g.multiplicity)).collect();
    let want: Vec<(u32, u64)> = oracle.iter().map(|&m| if m == 0 { (0, 0) } else { (1, m) }).collect();
    ensure(got == want, || format!("twisted growth {got:?}, Künneth oracle {want:?}"))?;
    // oracle for the wedge side: Hilbert function of the graded Koszul complex by dense ranks
    let y = sp.f_prime().ring();
    let partials: Vec<SparsePolynomial> = (0..2).map(|i| sp.f_prime().diff(i)).collect();
    for t in 4..8 {
        let dims = graded_koszul_dims(y, &partials, t);
        ensure(dims == vec![0, 1, 1], || format!("graded Koszul dims in degree {t}: {dims:?}"))?;
    }
    let wedge: Vec<(u32, u64)> = r.wedge.growth.iter().map(|g| (g.krull_dim, g.multiplicity)).collect();
    ensure(wedge == want, || format!("wedge growth {wedge:?}"))?;
    let described: Vec<String> = got.iter().map(|(d, m)| format!("(dim {d}, mult {m})")).collect();
    Ok(format!("f = x0^2 on A^2, p = 3: Z ≅ A^1 smooth, split; both profiles {}", described.join(" ")))
}

fn criterion_8() -> Check {
    let mut checked = 0;
    for p in [2, 3] {
        for (n, f) in [(1, "0"), (1, "x0^2"), (2, "x0*x1")] {
            let r = Ring::x(prime(p), n);
            let f = r.parse(f).unwrap();
            let sp = Superpotential::new(f.clone());
            let report = verify_l_support(&sp).map_err(|e| e.to_string())?;
            ensure(report.passed, || format!("p = {p}, f = {f}: {report:?}"))?;
            let conn = Connection::twisted_line(&f);
            for i in 0..n {
                let psi = p_curvature(&conn, &VectorField::coordinate(r, i)).map_err(|e| e.to_string())?;
                // oracle: ∇ = ∂ − ∂f on the section 1, iterated p times
                let direct = twisted_power_on(&r.one(), &f.diff(i), i, p);
                let want = -&f.diff(i).pow(p as u64);
                ensure(psi.get(0, 0) == &want && direct == want, || {
                    format!("p = {p}, f = {f}, i = {i}: p-curvature {}, direct {direct}, expected {want}", psi.get(0, 0))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} p-curvatures equal −(∂_i f)^p and the graph equations of df′"))
}

/// `g = 1 + d·t − dim (S/G)_t` for `t ≥ d`, with `dim (S/G)_t` from the rank
/// of multiplication by `G`.
fn genus_oracle(g: &SparsePolynomial, d: u32) -> u64 {
    let t = d + 2;
    let p = g.p();
    let src = monomials(3, t - d);
    let dst = monomials(3, t);
    let index: BTreeMap<_, _> = dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = FpMatrix::zeros(dst.len(), src.len(), p);
    for (j, a) in src.iter().enumerate() {
        for (mono, c) in g.terms() {
            let b: Vec<u32> = a.iter().zip(mono.exponents()).map(|(x, y)| x + y).collect();
            m.set(index[&b], j, c);
        }
    }
    let quotient = (dst.len() - m.rank()) as i64;
    (1 + (d * t) as i64 - quotient) as u64
}

fn criterion_9() -> Check {
    for p in [2, 3, 5, 7] {
        let x = ProjectiveVariety::projective_space(prime(p), 1).unwrap();
        let r = degeneration_check(&x, None, None).map_err(|e| e.to_string())?;
        ensure(r.passed && r.derham == vec![1, 0, 1], || format!("P^1, p = {p}: {:?}", r.derham))?;
    }
    let mut notes = Vec::new();
    for (p, g) in [(5, "x0^3 + x1^3 + x2^3"), (7, "x0^4 + x1^4 + x2^4")] {
        let poly = Ring::x(prime(p), 3).parse(g).unwrap();
        let d = poly.total_degree().unwrap();
        let genus = genus_oracle(&poly, d);
        let x = ProjectiveVariety::plane_curve(poly).map_err(|e| e.to_string())?;
        let r = degeneration_check(&x, None, None).map_err(|e| e.to_string())?;
        ensure(r.window.len() == 3 && r.window.iter().all(|w| w.hodge == r.hodge && w.derham == r.derham), || {
            format!("{g}: window disagrees")
        })?;
        ensure(r.hodge == vec![vec![1, genus], vec![genus, 1]], || format!("{g}: hodge {:?}, genus oracle {genus}", r.hodge))?;
        ensure(r.derham == vec![1, 2 * genus, 1] && r.passed, || format!("{g}: de Rham {:?}", r.derham))?;
        notes.push(format!("{g} over F_{p}: H^1_dR = {} = {genus}+{genus}", r.derham[1]));
    }
    Ok(format!("P^1 (p = 2, 3, 5, 7): (1, 0, 1); {}; all windows agree", notes.join("; ")))
}

/// `dim_k F^rank / M` by dense reduction of all monomial multiples of the
/// generators up to total degree `t`.
fn brute_quotient(ring: Ring, rank: usize, gens: &[FreeModuleVector], t: u32) -> usize {
    let n = ring.nvars();
    let p = ring.p();
    let monos: Vec<Vec<u32>> = (0..=t).flat_map(|d| monomials(n, d)).collect();
    let index: BTreeMap<(usize, Vec<u32>), usize> =
        (0..rank).flat_map(|i| monos.iter().map(move |m| (i, m.clone()))).enumerate().map(|(j, k)| (k, j)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let deg = g.components().iter().filter_map(SparsePolynomial::total_degree).max().unwrap_or(0);
        for m in monos.iter().filter(|m| m.iter().sum::<u32>() + deg <= t) {
            let mut row = vec![0u32; index.len()];
            for (i, c) in g.components().iter().enumerate() {
                for (mono, coef) in c.terms() {
                    let e: Vec<u32> = mono.exponents().iter().zip(m).map(|(x, y)| x + y).collect();
                    let k = index[&(i, e)];
                    row[k] = (row[k] + coef) % p;
                }
            }
            rows.push(row);
        }
    }
    let rank_m = if rows.is_empty() { 0 } else { FpMatrix::from_rows(&rows, index.len(), p).rank() };
    index.len() - rank_m
}

fn criterion_10() -> Check {
    let mut rng = sample::rng(77);
    for case in 0..50 {
        let p = [2, 3, 5, 7][case % 4];
        let r = Ring::x(prime(p), 1);
        let rows = 1 + case % 3;
        let cols = 1 + (case / 3) % 4;
        let m = sample::univariate_matrix(r, rows, cols, 3, &mut rng);
        let smith = smith_normal_form(&m).map_err(|e| e.to_string())?.cokernel_dimension();
        let gb = module_groebner(r, rows, &columns_of(&m), ModuleOrder::PositionOverTerm);
        let dim = quotient_k_dimension(rows, &gb, 64).finite();
        ensure(dim == smith, || format!("univariate case {case}: Gröbner {dim:?}, Smith {smith:?}\n{m}"))?;
    }
    for case in 0..50 {
        let p = [2, 3, 5][case % 3];
        let n = 1 + case % 3;
        let rank = 1 + (case / 3) % 3;
        let r = Ring::x(prime(p), n);
        let e = if n == 3 { 2 } else { 3 };
        let mut gens: Vec<FreeModuleVector> = (0..rank)
            .flat_map(|j| {
                (0..n).map(move |i| {
                    let mut ex = vec![0; n];
                    ex[i] = e;
                    let mut comps = vec![r.zero(); rank];
                    comps[j] = SparsePolynomial::monomial(r, Monomial::from_exponents(&ex), 1);
                    FreeModuleVector::new(r, comps).unwrap()
                })
            })
            .collect();
        for _ in 0..2 {
            let comps = (0..rank).map(|_| sample::polynomial(r, 3, 3, &mut rng)).collect();
            gens.push(FreeModuleVector::new(r, comps).unwrap());
        }
        let gb = module_groebner(r, rank, &gens, ModuleOrder::TermOverPosition);
        let dim = quotient_k_dimension(rank, &gb, 64).finite().ok_or("quotient reported infinite")?;
        let t0 = n as u32 * (e - 1) + 4;
        let (a, b) = (brute_quotient(r, rank, &gens, t0), brute_quotient(r, rank, &gens, t0 + 1));
        ensure(a == b && a as u64 == dim, || format!("multivariate case {case}: Gröbner {dim}, brute force {a}, {b}"))?;
    }
    Ok("50 univariate maps (Gröbner = Smith), 50 multivariate quotients (Gröbner = dense brute force)".into())
}

fn strip_timing(text: &str) -> Vec<serde_json::Value> {
    text.lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("timing");
            v
        })
        .collect()
}

fn criterion_11() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let cache = dir.join("cache");
    let run = |out: &Path| {
        Command::new(env!("CARGO_BIN_EXE_lab"))
            .args(["run", "--suite", "paper", "--format", "jsonlines", "--jobs", "4"])
            .arg("--cache")
            .arg(&cache)
            .arg("--out")
            .arg(out)
            .env_remove("FROBENIUS_LAB_CACHE")
            .status()
            .map_err(|e| e.to_string())
    };
    let (cold, warm) = (dir.join("cold.jsonl"), dir.join("warm.jsonl"));
    let s1 = run(&cold)?;
    let s2 = run(&warm)?;
    let a = std::fs::read_to_string(&cold).map_err(|e| e.to_string())?;
    let b = std::fs::read_to_string(&warm).map_err(|e| e.to_string())?;
    ensure(s1.success() && s2.success(), || format!("exit codes {s1}, {s2}"))?;
    let (ra, rb) = (strip_timing(&a), strip_timing(&b));
    ensure(!ra.is_empty() && ra == rb, || "cold and warm outputs differ outside timing".into())?;
    let hits: u64 = b.lines().map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["timing"]["cache_hits"].as_u64().unwrap()).sum();
    ensure(hits > 0, || "warm run never hit the cache".into())?;
    Ok(format!("{} records identical modulo timing (cold vs warm, {hits} warm cache hits); exit code 0", ra.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        ("Cartier matrix on A^1, p = 3", criterion_1, Duration::from_secs(1)),
        ("Cartier sweep", criterion_2, Duration::from_secs(30)),
        ("psi lemma", criterion_3, Duration::from_secs(10)),
        ("centrality of the p-curvature map", criterion_4, Duration::from_secs(10)),
        ("obstruction sequence exactness", criterion_5, Duration::from_secs(30)),
        ("BK equality, quadratic superpotentials", criterion_6, Duration::from_secs(60)),
        ("BK with positive-dimensional critical locus", criterion_7, Duration::from_secs(60)),
        ("L-support", criterion_8, Duration::from_secs(10)),
        ("projective degeneration", criterion_9, Duration::from_secs(300)),
        ("engine cross-validation", criterion_10, Duration::from_secs(60)),
        ("determinism and replay", criterion_11, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = elapsed > *budget;
        let (tag, detail) = match (&result, over) {
            (Ok(msg), false) => ("PASS", msg.clone()),
            (Ok(msg), true) => ("FAIL", format!("over budget {budget:?}: {msg}")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        writeln!(out, "criterion {:>2} {tag} [{:.2?}] {name}: {detail}", i + 1, elapsed).unwrap();
    }
    writeln!(out, "acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    drop(out);
    if failed > 0 {
        std::process::exit(1);
    }
}
