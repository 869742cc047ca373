//! The spinor gain as a Morrey-space computation, checked against its closed form.

use exponent_bootstrap::rules::{dual_source_exponent, morrey_gain_at, spinor_gain};
use exponent_bootstrap::Exponent;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["3/2", "8/5", "7/4", "19/10"] {
        let s: BigRational = exponent_bootstrap::parse_rational(text)?;
        let dual = dual_source_exponent(&s)?;
        // sweep beta toward its upper end 2/s*
        let top = BigRational::from_integer(2.into()) / &dual;
        println!("s = {s}: s* = {dual}, beta < {top}");
        for k in [1, 5, 9, 99] {
            let beta = &top * BigRational::new(k.into(), (k + 1).into());
            let m = morrey_gain_at(&beta)?;
            println!(
                "  beta = {:<10} -> M^({}, {}) embeds in L^{}",
                beta.to_string(),
                m.integrability(),
                m.weight(),
                m.lebesgue_exponent().to_decimal(6)
            );
        }
        let gain = spinor_gain(&Exponent::from_rational(s)?.almost())?;
        println!("  supremum: spinor_gain = {gain}");
    }
    Ok(())
}
