//! Cohomology of the Frobenius pushforward of the de Rham complex, checked
//! against the inverse Cartier map.

use frobenius_lab::frobenius::{build_derham_pushforward, cartier_verify, AffineVariety};
use frobenius_lab::{Prime, Ring};

fn main() -> frobenius_lab::Result<()> {
    let p = Prime::new(3)?;
    let line = AffineVariety::affine_space(p, 1);
    let c = build_derham_pushforward(&line)?;
    println!("F_* of d on A^1 over F_3, in the basis 1, x, x^2:\n{}", c.differentials()[0]);

    for x in [
        AffineVariety::affine_space(p, 2),
        AffineVariety::hypersurface(Ring::x(p, 2).parse("x0*x1 - 1")?)?,
    ] {
        let report = cartier_verify(&x, 64)?;
        println!("\n{} ({})", report.variety, if report.passed { "Cartier holds" } else { "Cartier FAILS" });
        for d in &report.degrees {
            println!(
                "  H^{}: expected rank {}, free rank {:?}, growth {:?}, witnesses {:?}",
                d.degree, d.expected_rank, d.free_rank, d.growth, d.witnesses
            );
        }
    }
    Ok(())
}
