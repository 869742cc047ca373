//! Writes the fixed-point and trace figure data into a directory.
//!
//! ```text
//! cargo run --example figures -- out/
//! ```

use std::path::PathBuf;

use exponent_bootstrap::cli::figures::{fixed_points_csv, trace_csv, trace_svg};
use exponent_bootstrap::{parse_rational, Exponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;

    let lo = parse_rational("4.01")?;
    let hi = parse_rational("4.2")?;
    std::fs::write(dir.join("fixed_points.csv"), fixed_points_csv(&lo, &hi, 100, 12)?)?;

    let p: Exponent = "4.15".parse()?;
    std::fs::write(dir.join("trace.csv"), trace_csv(&p, 10_000, 12)?)?;
    std::fs::write(dir.join("trace.svg"), trace_svg(&p, 10_000)?)?;

    for name in ["fixed_points.csv", "trace.csv", "trace.svg"] {
        println!("{}", dir.join(name).display());
    }
    Ok(())
}
