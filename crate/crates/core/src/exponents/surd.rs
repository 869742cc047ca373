//! Exact arithmetic in a single quadratic extension of the rationals.
//!
//! A [`QuadraticSurd`] is `a + b*sqrt(r)` with rational `a`, `b` and an integer
//! radicand `r`. Radicands are kept free of square factors (trial division up to
//! 2^16 followed by a perfect-square test of the cofactor), so values built
//! from the same quadratic field share a radicand and serialize identically.
//! Comparisons never touch floating point: signs are decided by squaring with
//! sign tracking.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::parse_rational;
use crate::error::{Error, Result};

const TRIAL_DIVISION_BOUND: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    // zero iff b is zero; otherwise >= 2 and not a perfect square
    r: BigInt,
}

impl QuadraticSurd {
    /// Builds `a + b*sqrt(r)`, normalizing the radicand. Negative radicands are rejected.
    pub fn new(a: BigRational, b: BigRational, r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::domain("surd", format!("negative radicand {r}")));
        }
        if b.is_zero() || r.is_zero() {
            return Ok(Self::from_rational(a));
        }
        // sqrt(n/d) = sqrt(n*d)/d
        let scaled = r.numer() * r.denom();
        let (outside, inside) = split_square(&scaled);
        let coeff = b * BigRational::new(outside, r.denom().clone());
        if inside.is_one() {
            return Ok(Self::from_rational(a + coeff));
        }
        Ok(QuadraticSurd {
            a,
            b: coeff,
            r: inside,
        })
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadraticSurd {
            a,
            b: BigRational::zero(),
            r: BigInt::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// `sqrt(x)` for a nonnegative rational `x`.
    pub fn sqrt(x: &BigRational) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), x.clone())
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            r: self.r.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            r: self.r.clone(),
        }
    }

    /// Sign of the exact value: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a^2 against b^2 r
        let d = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.r.clone());
        sa * sign_of(&d)
    }

    /// Expresses `other`'s irrational coefficient over `self`'s radicand.
    fn align(&self, other: &Self) -> Result<(BigRational, BigInt)> {
        if other.b.is_zero() {
            return Ok((BigRational::zero(), self.r.clone()));
        }
        if self.b.is_zero() || self.r == other.r {
            return Ok((other.b.clone(), other.r.clone()));
        }
        // sqrt(r2) = sqrt(r1 r2) / r1 * sqrt(r1)
        let prod = &self.r * &other.r;
        let root = prod.sqrt();
        if &root * &root == prod {
            let scale = BigRational::new(root, self.r.clone());
            Ok((&other.b * scale, self.r.clone()))
        } else {
            Err(Error::MixedRadicand(self.r.to_string(), other.r.to_string()))
        }
    }

    fn assemble(a: BigRational, b: BigRational, r: BigInt) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            QuadraticSurd { a, b, r }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.is_rational() && other.is_rational() {
            return Ok(Self::from_rational(&self.a + &other.a));
        }
        let (b2, r) = self.align(other)?;
        Ok(Self::assemble(&self.a + &other.a, &self.b + b2, r))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if other.is_rational() {
            return Ok(self.scale(&other.a));
        }
        if self.is_rational() {
            return Ok(other.scale(&self.a));
        }
        let (b2, r) = self.align(other)?;
        let rr = BigRational::from_integer(r.clone());
        let a = &self.a * &other.a + &self.b * &b2 * rr;
        let b = &self.a * &b2 + &other.a * &self.b;
        Ok(Self::assemble(a, b, r))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.a.recip()));
        }
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.r.clone());
        Ok(Self::assemble(
            &self.a / &norm,
            -(&self.b / &norm),
            self.r.clone(),
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::assemble(&self.a * k, &self.b * k, self.r.clone())
    }

    pub fn add_rational(&self, k: &BigRational) -> Self {
        QuadraticSurd {
            a: &self.a + k,
            b: self.b.clone(),
            r: self.r.clone(),
        }
    }

    /// Exact total order, also across different radicands.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        if self.is_rational() && other.is_rational() {
            return self.a.cmp(&other.a);
        }
        if let Ok(diff) = self.try_sub(other) {
            return diff.signum().cmp(&0);
        }
        // a1 + b1 sqrt(r1) - a2  versus  b2 sqrt(r2)
        let u = QuadraticSurd {
            a: &self.a - &other.a,
            b: self.b.clone(),
            r: self.r.clone(),
        };
        let su = u.signum();
        let sv = sign_of(&other.b);
        if su != sv {
            return su.cmp(&sv);
        }
        let rr1 = BigRational::from_integer(u.r.clone());
        let rr2 = BigRational::from_integer(other.r.clone());
        let squares = QuadraticSurd {
            a: &u.a * &u.a + &u.b * &u.b * rr1 - &other.b * &other.b * rr2,
            b: BigRational::from_integer(2.into()) * &u.a * &u.b,
            r: u.r.clone(),
        };
        let by_square = squares.signum().cmp(&0);
        if su > 0 {
            by_square
        } else {
            by_square.reverse()
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let fa = self.a.floor().to_integer();
        let bsq = &self.b * &self.b * BigRational::from_integer(self.r.clone());
        let s = bsq.floor().to_integer().sqrt();
        let mut n = if self.b.is_negative() {
            fa - s - 1
        } else {
            fa + s
        };
        while self.exact_cmp(&Self::from_rational(BigRational::from_integer(n.clone())))
            == Ordering::Less
        {
            n -= 1;
        }
        loop {
            let next: BigInt = &n + 1;
            if self.exact_cmp(&Self::from_rational(BigRational::from_integer(next.clone())))
                == Ordering::Less
            {
                break;
            }
            n = next;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Decimal rendering correctly rounded (half up) to `digits` fractional digits,
    /// with trailing zeros removed.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.signum() < 0 {
            let s = self.neg().to_decimal(digits);
            return if s == "0" { s } else { format!("-{s}") };
        }
        let scale = BigRational::from_integer(BigInt::from(10u32).pow(digits as u32));
        let half = BigRational::new(1.into(), 2.into());
        let n = self.scale(&scale).add_rational(&half).floor();
        let text = n.to_string();
        if digits == 0 {
            return text;
        }
        let padded = format!("{:0>width$}", text, width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    }

    /// Floating-point approximation, for plotting only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        a + b * r.sqrt()
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadraticSurd {}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exact_cmp(other)
    }
}

impl From<BigRational> for QuadraticSurd {
    fn from(a: BigRational) -> Self {
        Self::from_rational(a)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.r)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.r)
        }
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(at) = s.find("*sqrt(") else {
            return Ok(Self::from_rational(parse_rational(s)?));
        };
        let inner = s[at + "*sqrt(".len()..]
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(s, "unterminated sqrt("))?;
        let head = &s[..at];
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::parse(s, "expected `a+b*sqrt(r)`"))?;
        let a = parse_rational(&head[..split])?;
        let mut b = parse_rational(&head[split + 1..])?;
        if head[split..].starts_with('-') {
            b = -b;
        }
        let r = parse_rational(inner)?;
        Self::new(a, b, r)
    }
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Writes a positive integer `n` as `f^2 * m`, returning `(f, m)`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let root = n.sqrt();
    if &root * &root == *n {
        return (root, BigInt::one());
    }
    if let Some(small) = n.to_u128() {
        let (f, m) = split_square_u128(small);
        return (f.into(), m.into());
    }
    let mut outside = BigInt::one();
    let mut inside = n.clone();
    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_BOUND {
        let dd = BigInt::from(d * d);
        if dd > inside {
            break;
        }
        loop {
            let (q, rem) = inside.div_rem(&dd);
            if !rem.is_zero() {
                break;
            }
            inside = q;
            outside *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let root = inside.sqrt();
    if &root * &root == inside {
        outside *= root;
        inside = BigInt::one();
    }
    (outside, inside)
}

fn split_square_u128(mut inside: u128) -> (u128, u128) {
    let mut outside: u128 = 1;
    let mut d: u128 = 2;
    while d <= TRIAL_DIVISION_BOUND as u128 && d * d <= inside {
        while inside.is_multiple_of(d * d) {
            inside /= d * d;
            outside *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let root = inside.sqrt();
    if root * root == inside {
        outside *= root;
        inside = 1;
    }
    (outside, inside)
}
