//! Parsing, printing and running an iteration scheme written in the scheme language.

use std::collections::BTreeMap;

use exponent_bootstrap::dsl::{parse_scheme, pretty_scheme, run_scheme};
use exponent_bootstrap::Exponent;

const HALVING: &str = "
# reciprocal gap to the barrier shrinks by half each pass
scheme halving {
  param p;
  state q = 2;
  step {
    let Q0 = 2*p/(p - 2);
    let next = 1/((1/q + 1/Q0)/2);
    guard next - q > 1/1000 else terminate converged;
    q = next;
  }
}
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1);
    let source = match &path {
        Some(p) => std::fs::read_to_string(p)?,
        None => HALVING.to_string(),
    };
    let ast = parse_scheme(&source)?;
    println!("{}", pretty_scheme(&ast));

    let mut params = BTreeMap::new();
    for name in &ast.params {
        params.insert(name.clone(), "5".parse::<Exponent>()?);
    }
    let trace = run_scheme(&ast, &params, 200)?;
    print!("{}", trace.to_records(8));
    for w in &trace.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
