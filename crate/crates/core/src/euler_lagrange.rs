//! The coupled refinement for the Euler–Lagrange system. Starting from the
//! stall `(q_*, t_*)` of the abstract iteration, reciprocal exponents fall by
//! `1/2 - 2/p` per step until the map exponent reaches the barrier `Q_0(p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bootstrap::{
    bootstrap_run, critical_p, fixed_points, q_barrier, spinor_update, Classification, Regime,
    Stall, ASSUMPTION_NOTE, DEFAULT_MAX_STEPS,
};
use crate::error::{Error, Result};
use crate::exponents::{exp_holder, Exponent, QuadraticSurd};
use crate::trace::{CaseTag, IterationTrace, StateSnapshot};

fn half() -> QuadraticSurd {
    QuadraticSurd::from_ratio(1, 2)
}

fn finite_p(rule: &'static str, p: &Exponent) -> Result<QuadraticSurd> {
    if !p.gt(&Exponent::integer(4)) {
        return Err(Error::domain(rule, format!("need p > 4, got p = {p}")));
    }
    p.finite()
        .ok_or_else(|| Error::domain(rule, "p must be finite"))
}

/// `1/2 - 2/p`, the common difference of the reciprocal progressions.
pub fn reciprocal_step(p: &Exponent) -> Result<QuadraticSurd> {
    let pv = finite_p("reciprocal_step", p)?;
    half().try_sub(&pv.recip()?.scale(&BigRational::from_integer(2.into())))
}

/// One refinement step: `1/t' = 1/q + 1/p - 1/2`, then `1/q' = 1/p + 1/t'`.
///
/// Requires `2 < q < Q_0(p)`; at or above the barrier the caller should
/// already have stopped.
pub fn el_step(p: &Exponent, q: &Exponent) -> Result<(Exponent, Exponent)> {
    let pv = finite_p("el_step", p)?;
    if !q.gt(&Exponent::integer(2)) {
        return Err(Error::domain("el_step", format!("need q > 2, got q = {q}")));
    }
    let barrier = q_barrier(p)?;
    if q.ge(&barrier) {
        return Err(Error::domain(
            "el_step",
            format!("q = {q} is at or above the barrier {barrier}; terminal reached"),
        ));
    }
    let almost = p.is_almost() || q.is_almost();
    let inv_p = pv.recip()?;
    let inv_t = q.reciprocal().try_add(&inv_p)?.try_sub(&half())?;
    let t_next = Exponent::from_reciprocal(&inv_t)?.with_almost(almost);
    // the map gain must stay on its Hölder branch: t' > 6p/(2+p)
    let threshold = pv
        .scale(&BigRational::from_integer(6.into()))
        .try_div(&pv.add_rational(&BigRational::from_integer(2.into())))?;
    if let Some(tv) = t_next.finite() {
        if tv.exact_cmp(&threshold).is_le() {
            return Err(Error::Internal(format!(
                "branch condition t' > 6p/(2+p) fails at p = {p}, t' = {t_next}"
            )));
        }
    }
    let q_next = Exponent::from_reciprocal(&inv_p.try_add(&inv_t)?)?.with_almost(almost);
    Ok((t_next, q_next))
}

#[derive(Clone, Debug)]
pub struct ElRun {
    pub trace: IterationTrace,
    pub classification: Classification,
    pub k_star: usize,
}

/// Checks the handoff identities `q_* = pt_*/(p+t_*)`,
/// `(p/2)t_*/((p/2)+t_*) = pq_*/(p+q_*)` and the ordering `4 < p < 2q_* < t_*`.
pub fn check_handoff(p: &Exponent, q_star: &Exponent, t_star: &Exponent) -> Result<()> {
    let fail = |what: &str| Err(Error::Internal(format!("handoff {what} fails at p = {p}")));
    if !exp_holder(p, t_star)?.same_value(q_star) {
        return fail("identity q_* = pt_*/(p+t_*)");
    }
    let half_p = p.scale(&BigRational::new(1.into(), 2.into()))?;
    if !exp_holder(&half_p, t_star)?.same_value(&exp_holder(p, q_star)?) {
        return fail("identity (p/2)t_*/((p/2)+t_*) = pq_*/(p+q_*)");
    }
    let two_q = q_star.scale(&BigRational::from_integer(2.into()))?;
    if !(Exponent::integer(4).lt(p) && p.lt(&two_q) && two_q.lt(t_star)) {
        return fail("ordering 4 < p < 2q_* < t_*");
    }
    Ok(())
}

fn stall_point(p: &Exponent) -> Result<(Exponent, Exponent)> {
    let report = fixed_points(p)?;
    let q_minus = report
        .q_minus
        .ok_or_else(|| Error::domain("el_run", format!("no stall at p = {p}")))?;
    let t_star = spinor_update(p, &q_minus)?;
    Ok((q_minus.almost(), t_star.almost()))
}

fn above_critical(p: &Exponent) -> bool {
    match p.finite() {
        Some(pv) => pv.exact_cmp(&critical_p()).is_gt(),
        None => true,
    }
}

/// Runs the refinement. For `p > p_0` or `p = inf` the abstract result already
/// gives the final spaces and `k_star = 0`.
pub fn el_run(p: &Exponent) -> Result<ElRun> {
    if !p.gt(&Exponent::integer(4)) {
        return Err(Error::domain("el_run", format!("need p > 4, got p = {p}")));
    }
    if above_critical(p) {
        let run = bootstrap_run(p, DEFAULT_MAX_STEPS)?;
        return Ok(ElRun {
            trace: run.trace,
            classification: run.classification,
            k_star: 0,
        });
    }
    let (q_star, t_star) = stall_point(p)?;
    check_handoff(p, &q_star, &t_star)?;

    let barrier = q_barrier(p)?;
    let step = reciprocal_step(p)?;
    let inv_t0 = t_star.reciprocal();
    let inv_q0 = q_star.reciprocal();
    let snapshot = |q: &Exponent, t: &Exponent| {
        StateSnapshot::new(vec![("q".into(), q.clone()), ("t".into(), t.clone())])
    };
    let mut trace = IterationTrace::new(
        "euler_lagrange",
        vec![("p".into(), p.clone())],
        snapshot(&q_star, &t_star),
    );
    let mut q = q_star.clone();
    for k in 1..=DEFAULT_MAX_STEPS {
        let (t_next, q_next) = el_step(p, &q)?;
        let drop = step.scale(&BigRational::from_integer(k.into()));
        if t_next.reciprocal() != inv_t0.try_sub(&drop)? || q_next.reciprocal() != inv_q0.try_sub(&drop)? {
            return Err(Error::Internal(format!(
                "reciprocal progression broken at k = {k}, p = {p}"
            )));
        }
        let done = q_next.ge(&barrier);
        let case = if done { CaseTag::Barrier } else { CaseTag::ElStep };
        trace.push("euler_lagrange", snapshot(&q_next, &t_next), case);
        if done {
            let half_p = p.scale(&BigRational::new(1.into(), 2.into()))?;
            let classification = Classification {
                p: p.clone(),
                regime: Regime::Two,
                map_space: p.clone().attained(),
                spinor_space: half_p.attained(),
                stall: Some(Stall { q_star, t_star }),
                notes: vec![
                    ASSUMPTION_NOTE.to_string(),
                    "final step uses elliptic theory once the source exponent reaches 2; spaces are attained".to_string(),
                ],
            };
            return Ok(ElRun {
                trace,
                classification,
                k_star: k,
            });
        }
        q = q_next;
    }
    Err(Error::MaxSteps {
        steps: DEFAULT_MAX_STEPS,
        partial: Box::new(trace),
    })
}

/// Least `k` with `1/q_* - k(1/2 - 2/p) <= 1/Q_0(p)`, for `4 < p <= p_0`.
pub fn el_steps_needed(p: &Exponent) -> Result<BigInt> {
    finite_p("el_steps_needed", p)?;
    if above_critical(p) {
        return Err(Error::domain("el_steps_needed", format!("need p <= p_0, got p = {p}")));
    }
    let (q_star, _) = stall_point(p)?;
    let gap = q_star.reciprocal().try_sub(&q_barrier(p)?.reciprocal())?;
    let ratio = gap.try_div(&reciprocal_step(p)?)?;
    let k = ratio.ceil();
    Ok(if k < BigInt::zero() { BigInt::zero() } else { k })
}
