//! The abstract bootstrap: iterate the spinor and map gains from the first
//! improvement until the source exponent reaches 2, or detect the stall at the
//! smaller root of `(-3p²+6p+8)q² + 6p²q - 8p² = 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponents::{exp_holder, Exponent, QuadraticSurd};
use crate::rules::{first_improvement, map_gain, sigma_branch, spinor_gain, SigmaBranch};
use crate::trace::{CaseTag, IterationTrace, StateSnapshot};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

pub(crate) const ASSUMPTION_NOTE: &str =
    "smallness hypotheses on the coefficients are assumed to hold; estimate constants are not modeled";

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Current integrability pair for a fixed gravitino exponent `p`:
/// `∇φ ∈ L^q`, `ψ ∈ L^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityState {
    pub p: Exponent,
    pub q: Exponent,
    pub t: Exponent,
}

impl RegularityState {
    /// Validates `p > 4`, `q >= 2`, `t >= 4`. The a priori state `(q, t) = (2, 4)`
    /// is admitted so the first improvement is itself one step.
    pub fn new(p: Exponent, q: Exponent, t: Exponent) -> Result<Self> {
        if !p.gt(&Exponent::integer(4)) {
            return Err(Error::domain("state", format!("need p > 4, got p = {p}")));
        }
        if q.lt(&Exponent::integer(2)) {
            return Err(Error::domain("state", format!("need q >= 2, got q = {q}")));
        }
        if t.lt(&Exponent::integer(4)) {
            return Err(Error::domain("state", format!("need t >= 4, got t = {t}")));
        }
        Ok(RegularityState { p, q, t })
    }

    /// The a priori state `∇φ ∈ L^2`, `ψ ∈ L^4`.
    pub fn a_priori(p: Exponent) -> Result<Self> {
        Self::new(p, Exponent::integer(2), Exponent::integer(4))
    }

    pub fn snapshot(&self) -> StateSnapshot {
        StateSnapshot::new(vec![("q".into(), self.q.clone()), ("t".into(), self.t.clone())])
    }
}

/// `Q_0(p) = 2p/(p-2)`; `2` at `p = inf`.
pub fn q_barrier(p: &Exponent) -> Result<Exponent> {
    if !p.gt(&Exponent::integer(4)) {
        return Err(Error::domain("q_barrier", format!("need p > 4, got p = {p}")));
    }
    let Some(pv) = p.finite() else {
        return Ok(Exponent::integer(2));
    };
    let num = pv.scale(&rat(2));
    let den = pv.add_rational(&rat(-2));
    Exponent::from_surd(num.try_div(&den)?)
}

/// `p_0 = 8/5 + (16/15)√6`, the root of `-15p² + 48p + 64` above 4.
pub fn critical_p() -> QuadraticSurd {
    QuadraticSurd::new(
        BigRational::new(8.into(), 5.into()),
        BigRational::new(16.into(), 15.into()),
        rat(6),
    )
    .expect("constant surd")
}

/// `-15p² + 48p + 64`, the discriminant `4p²(-15p²+48p+64)` without its square factor.
pub fn stall_radicand(p: &QuadraticSurd) -> Result<QuadraticSurd> {
    let p2 = p.try_mul(p)?;
    Ok(p2.scale(&rat(-15)).try_add(&p.scale(&rat(48)))?.add_rational(&rat(64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscriminantSign {
    Negative,
    Zero,
    Positive,
}

impl DiscriminantSign {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiscriminantSign::Negative => "negative",
            DiscriminantSign::Zero => "zero",
            DiscriminantSign::Positive => "positive",
        }
    }
}

/// Fixed points of the map update `Q(q) = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub p: Exponent,
    pub radicand: BigRational,
    pub discriminant_sign: DiscriminantSign,
    pub q_minus: Option<Exponent>,
    pub q_plus: Option<Exponent>,
    pub barrier: Exponent,
    pub critical: QuadraticSurd,
}

impl FixedPointReport {
    pub fn has_roots(&self) -> bool {
        self.q_minus.is_some()
    }
}

/// Solves `(-3p²+6p+8)q² + 6p²q - 8p² = 0` exactly for finite `p > 4`:
/// `q_± = (3p² ± p√(-15p²+48p+64)) / (3p² - 6p - 8)`.
pub fn fixed_points(p: &Exponent) -> Result<FixedPointReport> {
    if !p.gt(&Exponent::integer(4)) {
        return Err(Error::domain("fixed_points", format!("need p > 4, got p = {p}")));
    }
    let Some(pv) = p.finite() else {
        return Err(Error::domain("fixed_points", "p must be finite"));
    };
    let rad_surd = stall_radicand(&pv)?;
    let Some(radicand) = rad_surd.as_rational().cloned() else {
        return Err(Error::domain(
            "fixed_points",
            format!("radicand {rad_surd} is irrational; roots leave the quadratic field"),
        ));
    };
    let discriminant_sign = if radicand.is_negative() {
        DiscriminantSign::Negative
    } else if radicand.is_zero() {
        DiscriminantSign::Zero
    } else {
        DiscriminantSign::Positive
    };
    let barrier = q_barrier(p)?;
    let (q_minus, q_plus) = if discriminant_sign == DiscriminantSign::Negative {
        (None, None)
    } else {
        let root = QuadraticSurd::sqrt(&radicand)?;
        let p2 = pv.try_mul(&pv)?;
        let lead = p2.scale(&rat(3));
        let spread = pv.try_mul(&root)?;
        let den = lead.try_sub(&pv.scale(&rat(6)))?.add_rational(&rat(-8));
        let minus = Exponent::from_surd(lead.try_sub(&spread)?.try_div(&den)?)?;
        let plus = Exponent::from_surd(lead.try_add(&spread)?.try_div(&den)?)?;
        debug_assert!(minus.le(&plus) && plus.lt(&barrier));
        (Some(minus), Some(plus))
    };
    Ok(FixedPointReport {
        p: p.clone(),
        radicand,
        discriminant_sign,
        q_minus,
        q_plus,
        barrier,
        critical: critical_p(),
    })
}

/// `T(q) = 8/(6 - 3s(q))` with `s(q) = pq/(p+q) < 2`.
pub fn spinor_update(p: &Exponent, q: &Exponent) -> Result<Exponent> {
    spinor_gain(&exp_holder(p, q)?)
}

/// `Q(q) = pT/(p+T)` with `T = T(q)`.
pub fn map_update(p: &Exponent, q: &Exponent) -> Result<Exponent> {
    map_gain(p, &spinor_update(p, q)?)
}

/// One pass of the abstract algorithm.
///
/// `s >= 2` returns `(q, t) = (p-o, inf-o)` tagged [`CaseTag::Shortcut`]. Otherwise
/// `T = T(q)`, `Q = Q(q)` and the case is 1 (`q < Q < Q_0`), 2 (`Q >= Q_0`) or
/// 3 (`Q <= q`); the returned state is `(Q, T)` in every case.
pub fn bootstrap_step(state: &RegularityState) -> Result<(RegularityState, CaseTag)> {
    let RegularityState { p, q, .. } = RegularityState::new(
        state.p.clone(),
        state.q.clone(),
        state.t.clone(),
    )?;
    let s = exp_holder(&p, &q)?;
    if s.ge(&Exponent::integer(2)) {
        let next = RegularityState {
            q: p.clone().almost(),
            t: Exponent::infinity().almost(),
            p,
        };
        return Ok((next, CaseTag::Shortcut));
    }
    let spinor = spinor_gain(&s)?;
    if sigma_branch(&p, &spinor)? != SigmaBranch::Holder {
        return Err(Error::Internal(format!(
            "quarter branch selected at p = {p}, q = {q}, T = {spinor}"
        )));
    }
    let map = map_gain(&p, &spinor)?;
    let barrier = q_barrier(&p)?;
    let case = if map.ge(&barrier) {
        CaseTag::Case2
    } else if map.le(&q) {
        CaseTag::Case3
    } else {
        CaseTag::Case1
    };
    Ok((RegularityState { p, q: map, t: spinor }, case))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `p > p_0` or `p = inf`: `φ ∈ W^{1,p}`, `ψ ∈ W^{1,p/2}`.
    One,
    /// `4 < p <= p_0`: the iteration stalls at `q_*`.
    Two,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::One => "one",
            Regime::Two => "two",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stall {
    pub q_star: Exponent,
    pub t_star: Exponent,
}

/// Final Sobolev exponents: `φ ∈ W^{1, map_space}`, `ψ ∈ W^{1, spinor_space}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub p: Exponent,
    pub regime: Regime,
    pub map_space: Exponent,
    pub spinor_space: Exponent,
    pub stall: Option<Stall>,
    pub notes: Vec<String>,
}

impl Classification {
    fn regime_one(p: &Exponent) -> Result<Self> {
        let mut notes = vec![ASSUMPTION_NOTE.to_string()];
        let (map_space, spinor_space) = if p.is_infinite() {
            notes.push(
                "at p = inf the iteration yields almost exponents; the attained statement W^{1,inf} is recorded, not asserted"
                    .to_string(),
            );
            (Exponent::infinity().almost(), Exponent::infinity().almost())
        } else {
            (p.clone().attained(), p.scale(&BigRational::new(1.into(), 2.into()))?.attained())
        };
        Ok(Classification {
            p: p.clone(),
            regime: Regime::One,
            map_space,
            spinor_space,
            stall: None,
            notes,
        })
    }

    fn regime_two(p: &Exponent, q_star: Exponent, t_star: Exponent) -> Result<Self> {
        let q_star = q_star.almost();
        let t_star = t_star.almost();
        // ψ ∈ W^{1, 2t_*/(2+t_*) - o}
        let spinor_space = exp_holder(&Exponent::integer(2), &t_star)?;
        Ok(Classification {
            p: p.clone(),
            regime: Regime::Two,
            map_space: q_star.clone(),
            spinor_space,
            stall: Some(Stall { q_star, t_star }),
            notes: vec![ASSUMPTION_NOTE.to_string()],
        })
    }
}

/// Analytic classification from the first improvement, without a trace.
pub fn classify(p: &Exponent) -> Result<Classification> {
    if !p.gt(&Exponent::integer(4)) {
        return Err(Error::domain("classify", format!("need p > 4, got p = {p}")));
    }
    if p.is_infinite() {
        return Classification::regime_one(p);
    }
    let report = fixed_points(p)?;
    let (Some(q_minus), Some(q_plus)) = (&report.q_minus, &report.q_plus) else {
        return Classification::regime_one(p);
    };
    let q1 = first_improvement(p)?.map;
    if q1.le(q_minus) {
        let t_star = spinor_update(p, q_minus)?;
        Classification::regime_two(p, q_minus.clone(), t_star)
    } else if q1.ge(q_plus) {
        Classification::regime_one(p)
    } else {
        Err(Error::Internal(format!(
            "first improvement {q1} lies between the fixed points at p = {p}"
        )))
    }
}

#[derive(Clone, Debug)]
pub struct BootstrapOptions {
    pub max_steps: usize,
    /// The regime-two witness stops once `q_- - q_k` is at most this gap.
    pub witness_gap: BigRational,
    /// Replaces the first-improvement start `(q_1, t_1)`.
    pub start: Option<(Exponent, Exponent)>,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        BootstrapOptions {
            max_steps: DEFAULT_MAX_STEPS,
            witness_gap: BigRational::new(1.into(), 10i64.pow(12).into()),
            start: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BootstrapRun {
    pub trace: IterationTrace,
    pub classification: Classification,
    pub fixed_points: Option<FixedPointReport>,
}

/// Runs the abstract algorithm from the first improvement with default options.
pub fn bootstrap_run(p: &Exponent, max_steps: usize) -> Result<BootstrapRun> {
    bootstrap_run_with(
        p,
        &BootstrapOptions {
            max_steps,
            ..Default::default()
        },
    )
}

/// Runs the abstract algorithm.
///
/// When the start lies at or below the smaller fixed point `q_-`, the stall is
/// reported analytically (`q_* = q_-`, `t_* = T(q_-)`) and the trace is a
/// witness of the monotone approach, cut once within `witness_gap` of `q_-`.
/// Otherwise the steps run until a terminal case, at most `max_steps` times.
pub fn bootstrap_run_with(p: &Exponent, options: &BootstrapOptions) -> Result<BootstrapRun> {
    if options.max_steps == 0 {
        return Err(Error::domain("bootstrap_run", "max_steps must be at least 1"));
    }
    let params = vec![("p".to_string(), p.clone())];
    if p.is_infinite() {
        // s_0 = 2 already: one shortcut step from the a priori state
        let start = RegularityState::a_priori(p.clone())?;
        let mut trace = IterationTrace::new("abstract", params, start.snapshot());
        let (next, case) = bootstrap_step(&start)?;
        trace.push("abstract", next.snapshot(), case);
        return Ok(BootstrapRun {
            trace,
            classification: Classification::regime_one(p)?,
            fixed_points: None,
        });
    }

    let (q0, t0) = match &options.start {
        Some((q, t)) => (q.clone(), t.clone()),
        None => {
            let first = first_improvement(p)?;
            (first.map, first.spinor)
        }
    };
    let mut state = RegularityState::new(p.clone(), q0, t0)?;
    let report = fixed_points(p)?;
    let mut trace = IterationTrace::new("abstract", params, state.snapshot());

    if let Some(q_minus) = report.q_minus.clone() {
        if state.q.le(&q_minus) {
            let gap = Exponent::from_rational(options.witness_gap.clone())?;
            let q_minus_surd = q_minus.finite().expect("finite root");
            while !state.q.same_value(&q_minus) && trace.len() < options.max_steps {
                let remaining = q_minus_surd.try_sub(&state.q.finite().expect("finite q"))?;
                if remaining.exact_cmp(&gap.finite().expect("finite gap")).is_le() {
                    break;
                }
                let (next, case) = bootstrap_step(&state)?;
                if case != CaseTag::Case1 || !next.q.lt(&q_minus) {
                    return Err(Error::Internal(format!(
                        "witness left the basin of q_- at step {} ({case})",
                        trace.len() + 1
                    )));
                }
                trace.push("abstract", next.snapshot(), case);
                state = next;
            }
            trace.terminal = Some(CaseTag::FixedPoint);
            let t_star = spinor_update(p, &q_minus)?;
            return Ok(BootstrapRun {
                trace,
                classification: Classification::regime_two(p, q_minus, t_star)?,
                fixed_points: Some(report),
            });
        }
    }

    while trace.len() < options.max_steps {
        let (next, case) = bootstrap_step(&state)?;
        trace.push("abstract", next.snapshot(), case.clone());
        match case {
            CaseTag::Case1 => state = next,
            CaseTag::Case3 => {
                let classification = Classification::regime_two(p, next.q, next.t)?;
                return Ok(BootstrapRun {
                    trace,
                    classification,
                    fixed_points: Some(report),
                });
            }
            _ => {
                return Ok(BootstrapRun {
                    trace,
                    classification: Classification::regime_one(p)?,
                    fixed_points: Some(report),
                });
            }
        }
    }
    Err(Error::MaxSteps {
        steps: options.max_steps,
        partial: Box::new(trace),
    })
}
