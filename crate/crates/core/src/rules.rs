//! Exponent-transfer maps: the source exponent of the coupling term, the
//! spinor gain from the Riesz potential estimate on Morrey spaces, and the
//! map gain from the Campanato/Rivière estimate.
//!
//! Hypotheses are hard preconditions. Case logic (clamping at `s >= 2`,
//! termination) belongs to the iteration drivers.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponents::{debug_assert_increasing, exp_holder, Exponent, QuadraticSurd};

fn four() -> Exponent {
    Exponent::integer(4)
}

fn two() -> Exponent {
    Exponent::integer(2)
}

/// A Morrey space `M^{p, lambda}` over a domain of dimension `m`.
///
/// `lambda = m` is plain `L^p`; `lambda = 0` is `L^inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorreyIndex {
    integrability: Exponent,
    weight: BigRational,
    dimension: u32,
}

impl MorreyIndex {
    pub fn new(integrability: Exponent, weight: BigRational, dimension: u32) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::domain("morrey", format!("dimension {dimension} < 2")));
        }
        if weight.is_negative() || weight > BigRational::from_integer(dimension.into()) {
            return Err(Error::domain(
                "morrey",
                format!("weight {weight} outside [0, {dimension}]"),
            ));
        }
        Ok(MorreyIndex {
            integrability,
            weight,
            dimension,
        })
    }

    pub fn integrability(&self) -> &Exponent {
        &self.integrability
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn is_lebesgue(&self) -> bool {
        self.weight == BigRational::from_integer(self.dimension.into())
    }

    pub fn is_bounded(&self) -> bool {
        self.weight.is_zero()
    }

    /// The Lebesgue exponent this Morrey space embeds into (`M^{p,l} ⊂ L^p`),
    /// or `inf` when the weight is zero.
    pub fn lebesgue_exponent(&self) -> Exponent {
        if self.is_bounded() {
            Exponent::infinity()
        } else {
            self.integrability.clone()
        }
    }
}

/// `s = pq/(p+q)`: integrability of the coupling term `∇φ·χ`.
pub fn source_exponent(p: &Exponent, q: &Exponent) -> Result<Exponent> {
    if !p.gt(&four()) {
        return Err(Error::domain("source_exponent", format!("need p > 4, got p = {p}")));
    }
    if !q.gt(&two()) {
        return Err(Error::domain("source_exponent", format!("need q > 2, got q = {q}")));
    }
    let s = exp_holder(p, q)?;
    if !s.gt(&Exponent::ratio(4, 3)) {
        return Err(Error::Internal(format!("source exponent {s} not above 4/3")));
    }
    Ok(s)
}

fn spinor_gain_value(s: &Exponent) -> Result<Exponent> {
    if s.same_value(&two()) {
        return Ok(Exponent::infinity().almost());
    }
    let s = s.finite().expect("bounded source exponent");
    let denom = QuadraticSurd::from_integer(6).try_sub(&s.scale(&BigRational::from_integer(3.into())))?;
    Ok(Exponent::from_surd(QuadraticSurd::from_integer(8).try_div(&denom)?)?.almost())
}

/// Spinor integrability `8/(6-3s)` reached (as an open supremum) from a source in
/// `M^{s,2}`, for `4/3 < s <= 2`. At `s = 2` the result is `inf` almost.
pub fn spinor_gain(s: &Exponent) -> Result<Exponent> {
    if !s.gt(&Exponent::ratio(4, 3)) {
        return Err(Error::domain(
            "spinor_gain",
            format!("source exponent {s} must exceed 4/3"),
        ));
    }
    if s.gt(&two()) {
        return Err(Error::domain(
            "spinor_gain",
            format!("source exponent {s} exceeds 2; clamp before applying"),
        ));
    }
    if s.is_almost() && s.lt(&two()) {
        debug_assert_increasing("spinor_gain", s, spinor_gain_value);
    }
    spinor_gain_value(s)
}

/// Riesz potential mapping `I_1: M^{q,λ} → M^{λq/(λ-q), λ}` for `1 < q < λ <= m`.
pub fn adams_riesz(q: &Exponent, weight: &BigRational, dimension: u32) -> Result<MorreyIndex> {
    let Some(qv) = q.finite() else {
        return Err(Error::domain("adams_riesz", "q must be finite"));
    };
    let lambda = QuadraticSurd::from_rational(weight.clone());
    if qv.exact_cmp(&QuadraticSurd::from_integer(1)).is_le() {
        return Err(Error::domain("adams_riesz", format!("need q > 1, got {q}")));
    }
    if qv.exact_cmp(&lambda).is_ge() {
        return Err(Error::domain(
            "adams_riesz",
            format!("need q < λ, got q = {q}, λ = {weight}"),
        ));
    }
    if *weight > BigRational::from_integer(dimension.into()) {
        return Err(Error::domain(
            "adams_riesz",
            format!("need λ <= m, got λ = {weight}, m = {dimension}"),
        ));
    }
    let image = lambda.try_mul(&qv)?.try_div(&lambda.try_sub(&qv)?)?;
    let integrability = Exponent::from_surd(image)?.with_almost(q.is_almost());
    MorreyIndex::new(integrability, weight.clone(), dimension)
}

/// `s* = 4s/(3s-4)`, the exponent with `3/4 = 1/s + 1/s*`.
pub fn dual_source_exponent(s: &BigRational) -> Result<BigRational> {
    let three = BigRational::from_integer(3.into());
    let four = BigRational::from_integer(4.into());
    let denom = &three * s - &four;
    if !denom.is_positive() {
        return Err(Error::domain("dual_source_exponent", format!("need s > 4/3, got {s}")));
    }
    Ok(&four * s / denom)
}

/// Adams–Riesz image behind the spinor gain: `q = 4/3`, `λ = 2 - 4β/3`,
/// `m = 2`, valid for `0 < β < 2/s*`. Equals `4(3-2β)/(3-6β)`.
pub fn morrey_gain_at(beta: &BigRational) -> Result<MorreyIndex> {
    let weight = BigRational::from_integer(2.into())
        - BigRational::new(4.into(), 3.into()) * beta;
    adams_riesz(&Exponent::ratio(4, 3), &weight, 2)
}

/// Which candidate attains the minimum in `σ = 2pt/(2(p+t)+pt) ∧ t/4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaBranch {
    /// `t >= 6p/(2+p)`: `σ = 2pt/(2(p+t)+pt)` and the gain is `pt/(p+t)`.
    Holder,
    /// `t < 6p/(2+p)`: `σ = t/4` and the gain is `2t/(8-t)`.
    Quarter,
}

fn check_sigma_domain(rule: &'static str, p: &Exponent, t: &Exponent) -> Result<()> {
    if !p.gt(&four()) {
        return Err(Error::domain(rule, format!("need p > 4, got p = {p}")));
    }
    if !t.gt(&four()) {
        return Err(Error::domain(rule, format!("need t > 4, got t = {t}")));
    }
    Ok(())
}

/// Branch selection by comparing `t` with `6p/(2+p)`.
pub fn sigma_branch(p: &Exponent, t: &Exponent) -> Result<SigmaBranch> {
    check_sigma_domain("sigma", p, t)?;
    let threshold = match p.finite() {
        Some(pv) => {
            let six_p = pv.scale(&BigRational::from_integer(6.into()));
            six_p.try_div(&pv.add_rational(&BigRational::from_integer(2.into())))?
        }
        None => QuadraticSurd::from_integer(6),
    };
    let below = match t.finite() {
        Some(tv) => tv.exact_cmp(&threshold).is_lt(),
        None => false,
    };
    Ok(if below {
        SigmaBranch::Quarter
    } else {
        SigmaBranch::Holder
    })
}

/// The Hölder candidate `2pt/(2(p+t)+pt)`, i.e. `1/σ = 1/2 + 1/p + 1/t`.
fn sigma_holder(p: &Exponent, t: &Exponent) -> Result<Exponent> {
    exp_holder(&two(), &exp_holder(p, t)?)
}

/// `t/4`.
fn sigma_quarter(t: &Exponent) -> Result<Exponent> {
    t.scale(&BigRational::new(1.into(), 4.into()))
}

/// `σ = 2pt/(2(p+t)+pt) ∧ t/4` for `p, t > 4` (either may be infinite).
pub fn sigma(p: &Exponent, t: &Exponent) -> Result<Exponent> {
    check_sigma_domain("sigma", p, t)?;
    let first = sigma_holder(p, t)?;
    let second = sigma_quarter(t)?;
    let almost = p.is_almost() || t.is_almost();
    let value = if second.lt(&first) { second } else { first };
    Ok(value.with_almost(almost))
}

fn map_gain_value(p: &Exponent, t: &Exponent) -> Result<Exponent> {
    let sig = sigma(p, t)?;
    // 2σ/(2-σ): 1/q = 1/σ - 1/2
    let recip = sig.reciprocal().try_sub(&QuadraticSurd::from_ratio(1, 2))?;
    Ok(Exponent::from_reciprocal(&recip)?.with_almost(sig.is_almost()))
}

/// Map-gradient integrability `2σ/(2-σ)` with `σ = sigma(p, t)`: equal to
/// `pt/(p+t)` on the Hölder branch and `2t/(8-t)` on the quarter branch.
pub fn map_gain(p: &Exponent, t: &Exponent) -> Result<Exponent> {
    check_sigma_domain("map_gain", p, t)?;
    if t.is_almost() && !t.is_infinite() {
        debug_assert_increasing("map_gain", t, |tt| map_gain_value(p, tt));
    }
    map_gain_value(p, t)
}

/// The first improvement from the a priori state `∇φ ∈ L^2`, `ψ ∈ L^4`:
/// `s_0 = 2p/(2+p)`, `t_1 = 2(p+2)/3`, `q_1 = 2p(p+2)/(5p+4)`, the last two almost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstImprovement {
    pub source: Exponent,
    pub spinor: Exponent,
    pub map: Exponent,
}

pub fn first_improvement(p: &Exponent) -> Result<FirstImprovement> {
    if !p.gt(&four()) {
        return Err(Error::domain("first_improvement", format!("need p > 4, got p = {p}")));
    }
    let source = exp_holder(p, &two())?;
    let spinor = spinor_gain(&source)?;
    let map = map_gain(p, &spinor)?;
    Ok(FirstImprovement { source, spinor, map })
}

/// `t_1 = 2(p+2)/3` computed directly, for cross-checking [`first_improvement`].
pub fn first_spinor_closed_form(p: &BigRational) -> BigRational {
    BigRational::new(2.into(), 3.into()) * (p + BigRational::from_integer(2.into()))
}

/// `q_1 = 2p(p+2)/(5p+4)` computed directly.
pub fn first_map_closed_form(p: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let five = BigRational::from_integer(5.into());
    let four = BigRational::from_integer(4.into());
    &two * p * (p + &two) / (five * p + four)
}

/// `(14p² - 8p)/(9p² - 14p + 8)`: above this `q`, the quarter branch would win
/// inside the abstract iteration.
pub fn quarter_branch_threshold(p: &BigRational) -> BigRational {
    let p2 = p * p;
    let num = BigRational::from_integer(14.into()) * &p2 - BigRational::from_integer(8.into()) * p;
    let den = BigRational::from_integer(9.into()) * &p2
        - BigRational::from_integer(14.into()) * p
        + BigRational::from_integer(8.into());
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn source_exponent_examples() {
        assert_eq!(source_exponent(&e("inf"), &e("3")).unwrap(), e("3"));
        assert_eq!(source_exponent(&e("6"), &e("48/17")).unwrap(), e("48/25"));
        let err = source_exponent(&e("5"), &e("2")).unwrap_err();
        assert!(err.to_string().contains("q > 2"), "{err}");
        let err = source_exponent(&e("4"), &e("3")).unwrap_err();
        assert!(err.to_string().contains("p > 4"), "{err}");
    }

    #[test]
    fn spinor_gain_examples() {
        assert_eq!(spinor_gain(&e("2")).unwrap(), e("inf-o"));
        assert_eq!(spinor_gain(&e("10/7")).unwrap(), e("14/3-o"));
        assert!(spinor_gain(&e("4/3")).is_err());
        assert!(spinor_gain(&e("9/4")).is_err());
        assert!(spinor_gain(&e("inf")).is_err());
        assert_eq!(spinor_gain(&e("10/7-o")).unwrap(), e("14/3-o"));
    }

    #[test]
    fn adams_riesz_examples() {
        let m = adams_riesz(&e("4/3"), &r(2, 1), 2).unwrap();
        assert_eq!(m.integrability(), &e("4"));
        assert_eq!(m.weight(), &r(2, 1));
        assert!(m.is_lebesgue());
        let m = adams_riesz(&e("4/3"), &r(11, 6), 2).unwrap();
        assert_eq!(m.integrability(), &e("44/9"));
        assert!(adams_riesz(&e("3/2"), &r(3, 2), 2).is_err());
        assert!(adams_riesz(&e("1"), &r(3, 2), 2).is_err());
        assert!(adams_riesz(&e("3/2"), &r(5, 2), 2).is_err());
        assert!(adams_riesz(&e("3/2"), &r(5, 2), 3).is_ok());
    }

    #[test]
    fn morrey_index_bounds() {
        assert!(MorreyIndex::new(e("2"), r(3, 1), 2).is_err());
        assert!(MorreyIndex::new(e("2"), r(-1, 1), 2).is_err());
        let bounded = MorreyIndex::new(e("2"), r(0, 1), 2).unwrap();
        assert!(bounded.is_bounded());
        assert_eq!(bounded.lebesgue_exponent(), e("inf"));
    }

    #[test]
    fn beta_family_at_one_eighth() {
        let m = morrey_gain_at(&r(1, 8)).unwrap();
        assert_eq!(m.integrability(), &e("44/9"));
        assert_eq!(m.weight(), &r(11, 6));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&e("5"), &e("inf")).unwrap(), e("10/7"));
        assert_eq!(sigma(&e("5"), &e("14/3")).unwrap(), e("35/32"));
        assert_eq!(sigma_branch(&e("5"), &e("14/3")).unwrap(), SigmaBranch::Holder);
        assert_eq!(sigma(&e("5"), &e("21/5")).unwrap(), e("21/20"));
        assert_eq!(sigma_branch(&e("5"), &e("21/5")).unwrap(), SigmaBranch::Quarter);
        assert!(sigma(&e("4"), &e("5")).is_err());
        assert!(sigma(&e("5"), &e("4")).is_err());
        assert_eq!(sigma(&e("inf"), &e("inf")).unwrap(), e("2"));
    }

    #[test]
    fn map_gain_examples() {
        assert_eq!(map_gain(&e("5"), &e("inf")).unwrap(), e("5"));
        assert_eq!(map_gain(&e("5"), &e("14/3")).unwrap(), e("70/29"));
        assert_eq!(map_gain(&e("5"), &e("21/5")).unwrap(), e("42/19"));
        assert_eq!(map_gain(&e("5"), &e("14/3-o")).unwrap(), e("70/29-o"));
        assert_eq!(map_gain(&e("inf"), &e("inf")).unwrap(), e("inf"));
    }

    #[test]
    fn first_improvement_at_five() {
        let first = first_improvement(&e("5")).unwrap();
        assert_eq!(first.source, e("10/7"));
        assert_eq!(first.spinor, e("14/3-o"));
        assert_eq!(first.map, e("70/29-o"));
        assert_eq!(first_spinor_closed_form(&r(5, 1)), r(14, 3));
        assert_eq!(first_map_closed_form(&r(5, 1)), r(70, 29));
    }

    #[test]
    fn threshold_below_two() {
        for p in [r(401, 100), r(5, 1), r(21, 5), r(1000, 1)] {
            assert!(quarter_branch_threshold(&p) < r(2, 1));
        }
    }

    #[test]
    fn dual_exponent() {
        assert_eq!(dual_source_exponent(&r(2, 1)).unwrap(), r(4, 1));
        assert!(dual_source_exponent(&r(4, 3)).is_err());
    }
}
