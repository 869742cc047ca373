use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{parse_rational, QuadraticSurd};
use crate::error::{Error, Result};

/// Magnitude part of an [`Exponent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpValue {
    Rational(BigRational),
    Surd(QuadraticSurd),
    Infinity,
}

/// An integrability exponent: a positive exact value or `+inf`, plus the
/// "almost" flag meaning every exponent strictly below is attained but the
/// value itself is not.
///
/// Equality is structural and includes the flag; use [`exp_compare`] to
/// order values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponent {
    value: ExpValue,
    almost: bool,
}

impl Exponent {
    pub fn from_rational(x: BigRational) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::NonPositive(x.to_string()));
        }
        Ok(Exponent {
            value: ExpValue::Rational(x),
            almost: false,
        })
    }

    pub fn from_surd(s: QuadraticSurd) -> Result<Self> {
        if s.signum() <= 0 {
            return Err(Error::NonPositive(s.to_string()));
        }
        let value = match s.as_rational() {
            Some(r) => ExpValue::Rational(r.clone()),
            None => ExpValue::Surd(s),
        };
        Ok(Exponent {
            value,
            almost: false,
        })
    }

    /// `n/d`; panics unless the ratio is positive.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into())).expect("positive ratio")
    }

    pub fn integer(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    pub fn infinity() -> Self {
        Exponent {
            value: ExpValue::Infinity,
            almost: false,
        }
    }

    /// Exponent whose reciprocal is `recip`; zero maps to infinity.
    pub fn from_reciprocal(recip: &QuadraticSurd) -> Result<Self> {
        if recip.is_zero() {
            return Ok(Self::infinity());
        }
        Self::from_surd(recip.recip()?)
    }

    pub fn value(&self) -> &ExpValue {
        &self.value
    }

    pub fn is_almost(&self) -> bool {
        self.almost
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.value, ExpValue::Infinity)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.value, ExpValue::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            ExpValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// The finite value as a surd, `None` for infinity.
    pub fn finite(&self) -> Option<QuadraticSurd> {
        match &self.value {
            ExpValue::Rational(r) => Some(QuadraticSurd::from_rational(r.clone())),
            ExpValue::Surd(s) => Some(s.clone()),
            ExpValue::Infinity => None,
        }
    }

    /// `1/x`, with `1/inf = 0`.
    pub fn reciprocal(&self) -> QuadraticSurd {
        match &self.value {
            ExpValue::Rational(r) => QuadraticSurd::from_rational(r.recip()),
            ExpValue::Surd(s) => s.recip().expect("positive surd is invertible"),
            ExpValue::Infinity => QuadraticSurd::zero(),
        }
    }

    pub fn with_almost(mut self, almost: bool) -> Self {
        self.almost = almost;
        self
    }

    /// Same value, flagged as an open supremum.
    pub fn almost(self) -> Self {
        self.with_almost(true)
    }

    /// Same value, flag cleared.
    pub fn attained(self) -> Self {
        self.with_almost(false)
    }

    pub fn same_value(&self, other: &Self) -> bool {
        exp_compare(self, other) == Ordering::Equal
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        exp_compare(self, other)
    }

    pub fn lt(&self, other: &Self) -> bool {
        exp_compare(self, other) == Ordering::Less
    }

    pub fn le(&self, other: &Self) -> bool {
        exp_compare(self, other) != Ordering::Greater
    }

    pub fn gt(&self, other: &Self) -> bool {
        exp_compare(self, other) == Ordering::Greater
    }

    pub fn ge(&self, other: &Self) -> bool {
        exp_compare(self, other) != Ordering::Less
    }

    /// Decimal rendering at `digits` fractional digits, `inf` for infinity.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self.finite() {
            Some(s) => s.to_decimal(digits),
            None => "inf".to_string(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.finite() {
            Some(s) => s.to_f64(),
            None => f64::INFINITY,
        }
    }

    /// Scales a finite exponent by a positive rational.
    pub fn scale(&self, k: &BigRational) -> Result<Self> {
        match self.finite() {
            Some(s) => Ok(Self::from_surd(s.scale(k))?.with_almost(self.almost)),
            None if k.is_positive() => Ok(self.clone()),
            None => Err(Error::NonPositive(k.to_string())),
        }
    }
}

/// Exact total order on values; the almost flag does not participate.
pub fn exp_compare(a: &Exponent, b: &Exponent) -> Ordering {
    match (a.finite(), b.finite()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(x), Some(y)) => x.exact_cmp(&y),
    }
}

/// Hölder combination: `1/r = 1/a + 1/b`. Infinity is the identity and the
/// almost flag is the OR of the inputs' flags.
pub fn exp_holder(a: &Exponent, b: &Exponent) -> Result<Exponent> {
    let recip = a.reciprocal().try_add(&b.reciprocal())?;
    Ok(Exponent::from_reciprocal(&recip)?.with_almost(a.almost || b.almost))
}

/// Two-dimensional Sobolev conjugate `2s/(2-s)` for `1 <= s <= 2`; at `s = 2`
/// the result is `inf` flagged almost.
pub fn exp_sobolev_conj_2d(s: &Exponent) -> Result<Exponent> {
    let one = Exponent::integer(1);
    let two = Exponent::integer(2);
    if s.lt(&one) || s.gt(&two) {
        return Err(Error::domain(
            "sobolev_conj_2d",
            format!("source exponent {s} outside [1, 2]"),
        ));
    }
    if s.same_value(&two) {
        return Ok(Exponent::infinity().almost());
    }
    let half = QuadraticSurd::from_ratio(1, 2);
    let recip = s.reciprocal().try_sub(&half)?;
    Ok(Exponent::from_reciprocal(&recip)?.with_almost(s.almost))
}

/// `surd_eval`: correctly rounded decimal rendering of a surd.
pub fn surd_eval(s: &QuadraticSurd, digits: usize) -> String {
    s.to_decimal(digits)
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ExpValue::Rational(r) => write!(f, "{r}")?,
            ExpValue::Surd(s) => write!(f, "{s}")?,
            ExpValue::Infinity => f.write_str("inf")?,
        }
        if self.almost {
            f.write_str("-o")?;
        }
        Ok(())
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Parses the exact serialized form (`num/den`, `a+b*sqrt(r)`, `inf`,
    /// each optionally suffixed with `-o`). Plain decimals are accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let (body, almost) = match text.strip_suffix("-o") {
            Some(rest) => (rest, true),
            None => (text, false),
        };
        let exp = if body == "inf" {
            Exponent::infinity()
        } else if body.contains("sqrt(") {
            Exponent::from_surd(body.parse()?)?
        } else {
            Exponent::from_rational(parse_rational(body)?)?
        };
        Ok(exp.with_almost(almost))
    }
}

impl From<u32> for Exponent {
    fn from(n: u32) -> Self {
        Exponent::from_rational(BigRational::from_integer(BigInt::from(n)))
            .expect("positive integer")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_traits::Zero;
    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn holder_examples() {
        assert_eq!(exp_holder(&e("4"), &e("4")).unwrap(), e("2"));
        assert_eq!(exp_holder(&e("inf"), &e("3")).unwrap(), e("3"));
        assert_eq!(exp_holder(&e("5"), &e("20/3")).unwrap(), e("20/7"));
        assert_eq!(exp_holder(&e("5-o"), &e("20/3")).unwrap(), e("20/7-o"));
        assert_eq!(exp_holder(&e("inf"), &e("inf")).unwrap(), e("inf"));
    }

    #[test]
    fn sobolev_conjugate_examples() {
        assert_eq!(exp_sobolev_conj_2d(&e("4/3")).unwrap(), e("4"));
        assert_eq!(exp_sobolev_conj_2d(&e("2")).unwrap(), e("inf-o"));
        assert_eq!(exp_sobolev_conj_2d(&e("1")).unwrap(), e("2"));
        assert_eq!(exp_sobolev_conj_2d(&e("3/2-o")).unwrap(), e("6-o"));
        assert!(exp_sobolev_conj_2d(&e("5/2")).is_err());
        assert!(exp_sobolev_conj_2d(&e("1/2")).is_err());
        assert!(exp_sobolev_conj_2d(&e("inf")).is_err());
    }

    #[test]
    fn compare_examples() {
        // q_- at p = 83/20
        let q_minus = e("20667/7507-83/7507*sqrt(1945)");
        assert_eq!(exp_compare(&q_minus, &e("227/100")), Ordering::Less);
        let p0 = e("8/5+16/15*sqrt(6)");
        assert_eq!(exp_compare(&p0, &e("21/5")), Ordering::Greater);
        assert_eq!(exp_compare(&e("3/2"), &e("3/2-o")), Ordering::Equal);
        assert_eq!(exp_compare(&e("inf"), &p0), Ordering::Greater);
    }

    #[test]
    fn serialization_forms() {
        for text in ["42/17-o", "5", "5/2", "inf", "inf-o", "8/5+16/15*sqrt(6)-o"] {
            assert_eq!(e(text).to_string(), text);
        }
        assert_eq!(e("4.15").to_string(), "83/20");
        assert!("0".parse::<Exponent>().is_err());
        assert!("-3".parse::<Exponent>().is_err());
        assert!("1-2*sqrt(2)".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }

    #[test]
    fn zero_irrational_part_is_rational() {
        let s = QuadraticSurd::new(
            BigRational::new(3.into(), 7.into()),
            BigRational::zero(),
            BigRational::from_integer(5.into()),
        )
        .unwrap();
        let x = Exponent::from_surd(s).unwrap();
        assert!(x.is_rational());
        assert_eq!(x, e("3/7"));
    }
}
