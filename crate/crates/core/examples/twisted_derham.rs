//! Twisted de Rham complexes d − df∧ against the Koszul complex of df′ on
//! the Frobenius twist, with the predicted profile from the critical locus.

use frobenius_lab::twisted::{bk_report, Superpotential};
use frobenius_lab::{Prime, Ring};

fn main() -> frobenius_lab::Result<()> {
    for (p, n, f) in [(3, 1, "x0^2"), (5, 2, "x0^2 + x1^2"), (3, 2, "x0^2"), (5, 1, "x0^3")] {
        let sp = Superpotential::new(Ring::x(Prime::new(p)?, n).parse(f)?);
        let r = bk_report(&sp, 64)?;
        println!("f = {f} on A^{n}, p = {p}");
        println!(
            "  critical locus: dim {:?}, smooth {}, split {}",
            r.locus.dimension, r.locus.smooth, r.locus.split
        );
        println!("  twisted growth {:?}", r.twisted.growth);
        println!("  wedge growth   {:?}", r.wedge.growth);
        println!("  predicted      {:?}", r.predicted);
        println!("  agree: {}, hypotheses hold: {}", r.agrees(), r.hypotheses_hold);
    }
    Ok(())
}
