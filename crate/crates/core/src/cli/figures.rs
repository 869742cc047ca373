//! CSV and SVG data for the fixed-point comparison and iteration plots.

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::bootstrap::{bootstrap_run_with, fixed_points, q_barrier, BootstrapOptions};
use crate::error::{Error, Result};
use crate::exponents::Exponent;

/// `samples` uniformly spaced exact points from `lo` to `hi` inclusive.
pub fn sample_points(lo: &BigRational, hi: &BigRational, samples: usize) -> Vec<BigRational> {
    match samples {
        0 => Vec::new(),
        1 => vec![lo.clone()],
        n => {
            let step = (hi - lo) / BigRational::from_integer((n - 1).into());
            (0..n)
                .map(|i| lo + &step * BigRational::from_integer(i.into()))
                .collect()
        }
    }
}

/// Header `p,q_minus,q_plus,Q0`; root columns are empty where there are no roots.
pub fn fixed_points_csv(lo: &BigRational, hi: &BigRational, samples: usize, digits: usize) -> Result<String> {
    if samples == 0 {
        return Err(Error::domain("figure", "need at least one sample"));
    }
    if hi < lo {
        return Err(Error::domain("figure", "p-max is below p-min"));
    }
    let mut out = String::from("p,q_minus,q_plus,Q0\n");
    for p in sample_points(lo, hi, samples) {
        let pe = Exponent::from_rational(p)?;
        let report = fixed_points(&pe)?;
        let cell = |e: &Option<Exponent>| e.as_ref().map(|x| x.to_decimal(digits)).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            pe.to_decimal(digits),
            cell(&report.q_minus),
            cell(&report.q_plus),
            report.barrier.to_decimal(digits)
        );
    }
    Ok(out)
}

pub type TraceSeries = (Vec<(usize, Exponent, Exponent)>, Exponent);

/// Rows `(k, q_k, t_k)` of the abstract iteration and the barrier `Q_0(p)`.
pub fn trace_series(p: &Exponent, max_steps: usize) -> Result<TraceSeries> {
    let options = BootstrapOptions {
        max_steps,
        ..Default::default()
    };
    let run = bootstrap_run_with(p, &options)?;
    let get = |s: &crate::trace::StateSnapshot, n: &str| s.get(n).cloned().expect("q and t in state");
    let mut rows = vec![(0, get(&run.trace.initial, "q"), get(&run.trace.initial, "t"))];
    for step in &run.trace.steps {
        rows.push((step.k, get(&step.outgoing, "q"), get(&step.outgoing, "t")));
    }
    Ok((rows, q_barrier(p)?))
}

/// Header `k,q_k,t_k,Q0`.
pub fn trace_csv(p: &Exponent, max_steps: usize, digits: usize) -> Result<String> {
    let (rows, barrier) = trace_series(p, max_steps)?;
    let barrier = barrier.to_decimal(digits);
    let mut out = String::from("k,q_k,t_k,Q0\n");
    for (k, q, t) in rows {
        let _ = writeln!(out, "{k},{},{},{barrier}", q.to_decimal(digits), t.to_decimal(digits));
    }
    Ok(out)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

/// Polyline of `q_k` against `k` with a horizontal rule at `Q_0`.
pub fn trace_svg(p: &Exponent, max_steps: usize) -> Result<String> {
    let (rows, barrier) = trace_series(p, max_steps)?;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(_, q, _)| !q.is_infinite())
        .map(|(k, q, _)| (*k as f64, q.to_f64()))
        .collect();
    let q0 = barrier.to_f64();
    let kmax = pts.iter().map(|p| p.0).fold(1.0, f64::max);
    let mut lo = pts.iter().map(|p| p.1).fold(q0, f64::min);
    let mut hi = pts.iter().map(|p| p.1).fold(q0, f64::max);
    if hi - lo < 1e-9 {
        lo -= 0.5;
        hi += 0.5;
    }
    let x = |k: f64| MARGIN + k / kmax * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - (v - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="red" stroke-dasharray="4 3"/>"#,
        x(0.0),
        y(q0),
        x(kmax),
        y(q0)
    );
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="12">Q0 = {}</text>"#, x(0.0) + 4.0, y(q0) - 4.0, barrier.to_decimal(6));
    let coords: Vec<String> = pts.iter().map(|&(k, v)| format!("{:.2},{:.2}", x(k), y(v))).collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="black" points="{}"/>"#,
        coords.join(" ")
    );
    if let Some(&(k, v)) = pts.last() {
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="12">q_k (p = {p})</text>"#, x(k) - 90.0, y(v) + 16.0);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
