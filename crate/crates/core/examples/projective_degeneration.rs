//! Čech–de Rham hypercohomology of P^1, P^2 and smooth plane curves, compared
//! with the Hodge numbers.

use frobenius_lab::projective::{degeneration_check, ProjectiveVariety};
use frobenius_lab::{Prime, Ring};

fn main() -> frobenius_lab::Result<()> {
    let varieties = [
        ProjectiveVariety::projective_space(Prime::new(3)?, 1)?,
        ProjectiveVariety::projective_space(Prime::new(5)?, 2)?,
        ProjectiveVariety::plane_curve(Ring::x(Prime::new(5)?, 3).parse("x0^3 + x1^3 + x2^3")?)?,
        ProjectiveVariety::plane_curve(Ring::x(Prime::new(7)?, 3).parse("x0^4 + x1^4 + x2^4")?)?,
    ];
    for x in &varieties {
        let r = degeneration_check(x, None, None)?;
        println!("{}", r.variety);
        println!("  h^(q,j) = {:?}", r.hodge);
        println!("  H^i_dR  = {:?} (Hodge sums {:?})", r.derham, r.hodge_sums);
        println!("  truncation {}, stable over {} steps, degenerates: {}", r.truncation, r.window.len(), r.passed);
    }
    Ok(())
}
