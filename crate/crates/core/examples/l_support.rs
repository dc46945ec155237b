//! p-curvature of the connection d − df on O and the graph of df′.

use frobenius_lab::twisted::{verify_l_support, Superpotential};
use frobenius_lab::{Prime, Ring};

fn main() -> frobenius_lab::Result<()> {
    for (n, f) in [(1, "0"), (1, "x0^2"), (2, "x0*x1")] {
        let sp = Superpotential::new(Ring::x(Prime::new(3)?, n).parse(f)?);
        let report = verify_l_support(&sp)?;
        println!("f = {f}: passed {}", report.passed);
        for e in &report.entries {
            println!("  ψ(∂_{}) = {}   graph equation {}", e.direction, e.p_curvature, e.graph_equation);
        }
    }
    Ok(())
}
