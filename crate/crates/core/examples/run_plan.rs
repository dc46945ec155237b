//! Parses an experiment plan, runs it and prints the table and JSON lines.

use frobenius_lab::lab::{emit, parse_plan, run_plan, Format, RunOptions};

const PLAN: &str = r#"
prime: 3
experiments:
  - {id: line, kind: cartier, n: 1}
  - {id: hyperbola, kind: obstruction, n: 2, hypersurface: "x0*x1 - 1"}
  - {id: quadric, kind: bk, n: 2, f: "x0^2 + x1^2"}
  - {id: cusp, kind: bk, n: 1, f: "x0^4", mode: exploratory}
  - {id: conic, kind: projective_degeneration, projective: {G: "x0^2 + x1^2 + x2^2"}}
"#;

fn main() -> frobenius_lab::Result<()> {
    let plan = parse_plan(PLAN)?;
    let reports = run_plan(&plan, &RunOptions::default())?;
    print!("{}", emit(&reports, Format::Table));
    println!();
    print!("{}", emit(&reports[..1], Format::JsonLines));
    Ok(())
}
