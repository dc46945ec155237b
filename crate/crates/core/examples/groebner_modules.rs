//! Module Gröbner bases, syzygies and quotient dimensions over F_p[x].

use frobenius_lab::groebner::{columns_of, module_groebner, quotient_k_dimension, syzygies, ModuleOrder};
use frobenius_lab::linalg::smith_normal_form;
use frobenius_lab::{PolyMatrix, Prime, Ring};

fn main() -> frobenius_lab::Result<()> {
    let r = Ring::x(Prime::new(5)?, 2);
    let m = PolyMatrix::parse_rows(r, &[&["x0^2", "x0*x1", "x1^3"], &["x1", "x0", "0"]])?;
    println!("M =\n{m}");

    let gb = module_groebner(r, 2, &columns_of(&m), ModuleOrder::PositionOverTerm);
    println!("Gröbner basis of the column span ({} elements):", gb.generators().len());
    for g in gb.generators() {
        println!("  {:?}", g.components().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    println!("dim_k coker M: {:?}", quotient_k_dimension(2, &gb, 64));

    let syz = syzygies(&m);
    println!("syzygies of the columns:");
    for s in &syz.kernel {
        println!("  {:?}", s.components().iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    let y = Ring::x(Prime::new(5)?, 1);
    let u = PolyMatrix::parse_rows(y, &[&["x0^2 + 1", "x0"], &["x0", "1"]])?;
    let smith = smith_normal_form(&u)?;
    let factors: Vec<String> = smith.invariant_factors.iter().map(ToString::to_string).collect();
    println!("Smith invariant factors of a univariate matrix: {factors:?}");
    let gb = module_groebner(y, 2, &columns_of(&u), ModuleOrder::PositionOverTerm);
    println!(
        "cokernel dimension: Smith {:?}, Gröbner {:?}",
        smith.cokernel_dimension(),
        quotient_k_dimension(2, &gb, 64).finite()
    );
    Ok(())
}
