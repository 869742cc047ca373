//! Exact iteration of the abstract bootstrap, step by step.
//!
//! ```text
//! cargo run --example trace -- 5
//! cargo run --example trace -- 4.15
//! ```

use exponent_bootstrap::{bootstrap_run_with, BootstrapOptions, Exponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: Exponent = std::env::args().nth(1).unwrap_or_else(|| "5".into()).parse()?;
    let options = BootstrapOptions {
        max_steps: 40,
        ..BootstrapOptions::default()
    };
    let run = bootstrap_run_with(&p, &options)?;
    print!("{}", run.trace.to_records(10));
    if let Some(fp) = &run.fixed_points {
        if let Some(q) = &fp.q_minus {
            println!("# iterates approach q_minus = {} ~ {}", q, q.to_decimal(10));
        }
    }
    println!("# final map space L^{}", run.classification.map_space);
    Ok(())
}
