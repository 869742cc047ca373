//! Breaking the stall with the Euler-Lagrange recurrence.
//!
//! In reciprocals each step subtracts `1/2 - 2/p`, so the barrier is crossed
//! after `ceil((1/q* - 1/Q0) / (1/2 - 2/p))` steps.

use exponent_bootstrap::{el_run, el_steps_needed, Exponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: Exponent = std::env::args().nth(1).unwrap_or_else(|| "21/5".into()).parse()?;
    let run = el_run(&p)?;
    println!("p = {p}, predicted steps = {}", el_steps_needed(&p)?);
    print!("{}", run.trace.to_records(8));
    println!("k* = {}", run.k_star);
    println!("map space L^{}, spinor space L^{}", run.classification.map_space, run.classification.spinor_space);
    Ok(())
}
