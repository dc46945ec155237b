//! Crystalline differential operators: the twist automorphism, the ψ-lemma
//! and centrality of ι(θ′) = θ^p − θ^[p].

use frobenius_lab::weyl::{
    center_map, psi_lemma_defect, twist_automorphism, weyl_identity_sweep, VectorField, WeylElement,
};
use frobenius_lab::{Prime, Ring, VarName};

fn main() -> frobenius_lab::Result<()> {
    let p = Prime::new(3)?;
    let r = Ring::x(p, 1);
    let f = r.parse("x0^2")?;
    let d = WeylElement::d(r, 0);
    println!("ψ_f(∂) for f = {f}: {}", twist_automorphism(&f, &d)?);
    println!("ψ_f(∂^3) = {}", twist_automorphism(&f, &d.pow(3))?);
    println!("ψ-lemma defect for ∂: {}", psi_lemma_defect(&f, &VectorField::coordinate(r, 0))?);

    let y = Ring::new(p, 1, VarName::Y);
    let theta = VectorField::new(y, vec![y.parse("y0")?])?;
    println!("ι(y0 ∂) = {}", center_map(&theta));

    for n in 1..=2 {
        let sweep = weyl_identity_sweep(p, n, 20, 7)?;
        println!(
            "n = {n}: ψ-lemma {}/{} and centrality {}/{} hold",
            sweep.psi_lemma_checked - sweep.psi_lemma_failures,
            sweep.psi_lemma_checked,
            sweep.centrality_checked - sweep.centrality_failures,
            sweep.centrality_checked
        );
    }
    Ok(())
}
