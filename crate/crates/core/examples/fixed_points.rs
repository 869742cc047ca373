//! Roots of `Q(q) = q`, the barrier `2p/(p-2)` and the critical exponent.

use exponent_bootstrap::{critical_p, fixed_points, Exponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p0 = critical_p();
    println!("p0 = {p0} = {}", p0.to_decimal(40));
    println!();
    println!("{:>8}  {:>10}  {:>14}  {:>14}  {:>10}", "p", "radicand", "q_minus", "q_plus", "Q0");
    for text in ["4.01", "4.1", "21/5", "4.2127", "4.2128", "5", "8"] {
        let p: Exponent = text.parse()?;
        let fp = fixed_points(&p)?;
        let show = |x: &Option<Exponent>| x.as_ref().map_or("-".to_string(), |v| v.to_decimal(10));
        println!(
            "{:>8}  {:>10}  {:>14}  {:>14}  {:>10}   {}",
            text,
            fp.discriminant_sign.as_str(),
            show(&fp.q_minus),
            show(&fp.q_plus),
            fp.barrier.to_decimal(6),
            fp.q_minus.as_ref().map_or(String::new(), |q| q.to_string()),
        );
    }
    Ok(())
}
