//! Sampling and independent oracles shared by the integration tests.
#![allow(dead_code)]

use exponent_bootstrap::Exponent;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::strategy::{Just, Strategy, ValueTree};
use proptest::test_runner::TestRunner;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn e(s: &str) -> Exponent {
    s.parse().unwrap()
}

pub fn ex(r: &BigRational) -> Exponent {
    Exponent::from_rational(r.clone()).unwrap()
}

/// Rationals strictly inside `(lo, hi)` with denominators up to about 10^4.
pub fn rational_in(lo: BigRational, hi: BigRational) -> impl Strategy<Value = BigRational> {
    (2i64..10_000)
        .prop_flat_map(|den| (1i64..den, Just(den)))
        .prop_map(move |(k, den)| &lo + (&hi - &lo) * rat(k, den))
}

/// `n` deterministic draws from `strategy` (fixed seed).
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

/// A rational lower bound for `p_0 = 8/5 + (16/15)√6 = 4.2127890589...`.
pub fn p0_below() -> BigRational {
    rat(421_278, 100_000)
}

/// A rational upper bound for `p_0`.
pub fn p0_above() -> BigRational {
    rat(421_279, 100_000)
}

/// `Q(q) = 8p(p+q) / ((-3p²+6p+8)q + 6p² + 8p)`, written out directly.
pub fn oracle_map(p: &BigRational, q: &BigRational) -> BigRational {
    let (three, six, eight) = (rat(3, 1), rat(6, 1), rat(8, 1));
    let num = &eight * p * (p + q);
    let den = (-&three * p * p + &six * p + &eight) * q + &six * p * p + &eight * p;
    num / den
}

/// `T(q) = 8/(6 - 3s)` with `s = pq/(p+q)`.
pub fn oracle_spinor(p: &BigRational, q: &BigRational) -> BigRational {
    let s = p * q / (p + q);
    rat(8, 1) / (rat(6, 1) - rat(3, 1) * s)
}

pub fn f64_of(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

/// `q_-` in floating point from the quadratic formula.
pub fn q_minus_f64(p: f64) -> f64 {
    (3.0 * p * p - p * (-15.0 * p * p + 48.0 * p + 64.0).sqrt()) / (3.0 * p * p - 6.0 * p - 8.0)
}
