//! Final spaces for a handful of gravitino exponents.
//!
//! ```text
//! cargo run --example classify -- 4.15 21/5 5 inf
//! ```

use exponent_bootstrap::{classify, Exponent, Regime};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = ["4.05", "4.15", "21/5", "4.3", "5", "inf"].map(String::from).to_vec();
    }
    for text in &args {
        let p: Exponent = text.parse()?;
        let c = classify(&p)?;
        println!("p = {p}  ({})", p.to_decimal(6));
        println!("  regime       {}", c.regime.as_str());
        println!("  map space    L^{}", c.map_space);
        println!("  spinor space L^{}", c.spinor_space);
        if let Some(stall) = &c.stall {
            println!("  abstract iteration stalls at q* = {} ~ {}", stall.q_star, stall.q_star.to_decimal(9));
        }
        if c.regime == Regime::Two {
            println!("  (the stall is broken by the Euler-Lagrange step)");
        }
    }
    Ok(())
}
