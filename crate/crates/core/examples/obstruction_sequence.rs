//! The four-term sequence 0 → O_X′ → F_*O_X → F_*Z¹ → Ω¹_X′ → 0 built as
//! explicit maps of k[y]-modules.

use frobenius_lab::frobenius::{build_obstruction_sequence, AffineVariety};
use frobenius_lab::Prime;

fn main() -> frobenius_lab::Result<()> {
    for (p, n) in [(2, 1), (3, 2)] {
        let x = AffineVariety::affine_space(Prime::new(p)?, n);
        let seq = build_obstruction_sequence(&x)?;
        let r = &seq.report;
        println!("{}: {}", r.variety, r.terms.join(" → "));
        println!("  generators per term: {:?}", r.generator_counts);
        println!("  closed 1-forms: {}", r.closed_form_generators.join(", "));
        println!("  exact at each spot: {:?}, passed: {}", r.exact, r.passed);
    }
    Ok(())
}
