//! Integrability exponents: exact rationals, quadratic surds and infinity,
//! with the "almost" (open supremum) flag.

mod exponent;
mod surd;

pub use exponent::{exp_compare, exp_holder, exp_sobolev_conj_2d, surd_eval, ExpValue, Exponent};
pub use surd::QuadraticSurd;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Parses `n`, `n/d` or a plain decimal such as `4.15` into an exact rational.
/// Decimals are converted digit by digit, never through binary floating point.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse(text, "empty number"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_int(n, text)?;
        let d = parse_int(d, text)?;
        if d.is_zero() {
            return Err(Error::parse(text, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(text, "malformed decimal"));
        }
        let negative = whole.starts_with('-');
        let whole = whole.trim_start_matches(['-', '+']);
        let whole = if whole.is_empty() { "0" } else { whole };
        let digits = format!("{whole}{frac}");
        let mut n = parse_int(&digits, text)?;
        if negative {
            n = -n;
        }
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    Ok(BigRational::from_integer(parse_int(s, text)?))
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(whole, "expected an integer, `a/b` or a decimal"));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::parse(whole, e.to_string()))
}

/// Debug-build check that `f` is strictly increasing near `x`, sampled at
/// `x` and `x * (1 - 2^-20)`. Used where an almost flag is pushed through a map.
pub(crate) fn debug_assert_increasing<F>(rule: &str, x: &Exponent, f: F)
where
    F: Fn(&Exponent) -> Result<Exponent>,
{
    if !cfg!(debug_assertions) || !x.is_rational() {
        return;
    }
    let shrink = BigRational::new(BigInt::from((1u64 << 20) - 1), BigInt::from(1u64 << 20));
    let Ok(lower) = x.scale(&shrink) else { return };
    if let (Ok(hi), Ok(lo)) = (f(x), f(&lower)) {
        debug_assert!(
            lo.lt(&hi),
            "{rule} is not increasing near {x}: f({lower}) = {lo}, f({x}) = {hi}"
        );
    }
}
