//! Exact evaluation and the step interpreter.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::{BinOp, Expr, Pos, SchemeAst, StmtKind};
use super::{SchemeError, SchemeErrorKind};
use crate::error::{Error, Result};
use crate::exponents::{Exponent, QuadraticSurd};
use crate::trace::{CaseTag, IterationTrace, StateSnapshot};

/// Intermediate values may be zero or negative; only `+inf` exists at infinity.
#[derive(Clone, Debug)]
enum Num {
    Finite(QuadraticSurd),
    PosInf,
}

#[derive(Clone, Debug)]
struct Value {
    num: Num,
    almost: bool,
}

impl Value {
    fn from_exponent(e: &Exponent) -> Self {
        let num = match e.finite() {
            Some(s) => Num::Finite(s),
            None => Num::PosInf,
        };
        Value {
            num,
            almost: e.is_almost(),
        }
    }

    fn to_exponent(&self) -> Result<Exponent> {
        let e = match &self.num {
            Num::Finite(s) => Exponent::from_surd(s.clone())?,
            Num::PosInf => Exponent::infinity(),
        };
        Ok(e.with_almost(self.almost))
    }

    fn cmp(&self, other: &Value) -> Ordering {
        match (&self.num, &other.num) {
            (Num::Finite(a), Num::Finite(b)) => a.exact_cmp(b),
            (Num::Finite(_), Num::PosInf) => Ordering::Less,
            (Num::PosInf, Num::Finite(_)) => Ordering::Greater,
            (Num::PosInf, Num::PosInf) => Ordering::Equal,
        }
    }

    fn scale(&self, k: &BigRational) -> Value {
        let num = match &self.num {
            Num::Finite(s) => Num::Finite(s.scale(k)),
            Num::PosInf => Num::PosInf,
        };
        Value {
            num,
            almost: self.almost,
        }
    }
}

fn binary(op: BinOp, a: Value, b: Value) -> Result<Value> {
    use Num::*;
    let almost = a.almost || b.almost;
    let num = match (op, a.num, b.num) {
        (BinOp::Add, Finite(x), Finite(y)) => Finite(x.try_add(&y)?),
        (BinOp::Add, _, _) => PosInf,
        (BinOp::Sub, Finite(x), Finite(y)) => Finite(x.try_sub(&y)?),
        (BinOp::Sub, PosInf, Finite(_)) => PosInf,
        (BinOp::Sub, _, PosInf) => return Err(Error::InfiniteArithmetic("subtracting infinity")),
        (BinOp::Mul, Finite(x), Finite(y)) => Finite(x.try_mul(&y)?),
        (BinOp::Mul, PosInf, PosInf) => PosInf,
        (BinOp::Mul, Finite(x), PosInf) | (BinOp::Mul, PosInf, Finite(x)) => {
            if x.signum() > 0 {
                PosInf
            } else {
                return Err(Error::InfiniteArithmetic("infinity times a non-positive value"));
            }
        }
        (BinOp::Div, Finite(x), Finite(y)) => {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Finite(x.try_div(&y)?)
        }
        (BinOp::Div, Finite(_), PosInf) => Finite(QuadraticSurd::zero()),
        (BinOp::Div, PosInf, Finite(y)) => {
            if y.signum() > 0 {
                PosInf
            } else if y.is_zero() {
                return Err(Error::DivisionByZero);
            } else {
                return Err(Error::InfiniteArithmetic("infinity over a negative value"));
            }
        }
        (BinOp::Div, PosInf, PosInf) => return Err(Error::InfiniteArithmetic("infinity over infinity")),
    };
    Ok(Value { num, almost })
}

type Env = Vec<(String, Value)>;

fn lookup<'a>(env: &'a Env, name: &str) -> Result<&'a Value> {
    env.iter()
        .rev()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v)
        .ok_or_else(|| Error::domain("eval_expr", format!("unbound identifier `{name}`")))
}

fn eval(expr: &Expr, env: &Env) -> Result<Value> {
    Ok(match expr {
        Expr::Lit(r) => Value {
            num: Num::Finite(QuadraticSurd::from_rational(r.clone())),
            almost: false,
        },
        Expr::Var(name) => lookup(env, name)?.clone(),
        Expr::Neg(e) => {
            let v = eval(e, env)?;
            match v.num {
                Num::Finite(s) => Value {
                    num: Num::Finite(s.neg()),
                    almost: v.almost,
                },
                Num::PosInf => return Err(Error::InfiniteArithmetic("negating infinity")),
            }
        }
        Expr::Bin(op, a, b) => binary(*op, eval(a, env)?, eval(b, env)?)?,
        Expr::Min(a, b) | Expr::Max(a, b) => {
            let (x, y) = (eval(a, env)?, eval(b, env)?);
            let want = if matches!(expr, Expr::Min(..)) { Ordering::Less } else { Ordering::Greater };
            match x.cmp(&y) {
                Ordering::Equal => Value {
                    almost: x.almost || y.almost,
                    num: x.num,
                },
                ord if ord == want => x,
                _ => y,
            }
        }
    })
}

/// Evaluates `expr` exactly. The result must be a positive exponent or `inf`.
pub fn eval_expr(expr: &Expr, bindings: &BTreeMap<String, Exponent>) -> Result<Exponent> {
    let env: Env = bindings
        .iter()
        .map(|(n, e)| (n.clone(), Value::from_exponent(e)))
        .collect();
    eval(expr, &env)?.to_exponent()
}

fn runtime(pos: Pos, what: &str, err: Error) -> Error {
    match err {
        Error::Scheme(e) => Error::Scheme(e),
        other => Error::Scheme(SchemeError::new(
            SchemeErrorKind::Runtime(format!("{what}: {other}")),
            pos,
        )),
    }
}

fn snapshot(ast: &SchemeAst, env: &Env) -> Result<StateSnapshot> {
    ast.state
        .iter()
        .map(|v| Ok((v.name.clone(), lookup(env, &v.name)?.to_exponent()?)))
        .collect::<Result<Vec<_>>>()
        .map(StateSnapshot::new)
}

fn set(env: &mut Env, name: &str, value: Value) {
    if let Some(slot) = env.iter_mut().rev().find(|(n, _)| n == name) {
        slot.1 = value;
    }
}

/// Runs the step statements without guards and returns the assigned values.
/// Used to probe monotonicity with a perturbed state.
fn shadow_pass(ast: &SchemeAst, mut env: Env, upto: usize) -> Option<Vec<(String, Value)>> {
    let mut assigned = Vec::new();
    for stmt in &ast.step[..upto] {
        match &stmt.kind {
            StmtKind::Let(name, e) => {
                let v = eval(e, &env).ok()?;
                env.push((name.clone(), v));
            }
            StmtKind::Assign(name, e) => {
                let v = eval(e, &env).ok()?;
                assigned.push((name.clone(), v.clone()));
                set(&mut env, name, v);
            }
            StmtKind::Guard { .. } => {}
        }
    }
    Some(assigned)
}

/// Executes a scheme: state initialisers once, then the step block until a
/// guard fails or `max_steps` passes have run.
///
/// Almost flags flow through arithmetic as if every update were increasing.
/// Each pass the state is also shrunk by a factor `1 - 2^-20` and the updates
/// recomputed; an update that comes out larger gets a warning in the trace.
pub fn run_scheme(
    ast: &SchemeAst,
    params: &BTreeMap<String, Exponent>,
    max_steps: usize,
) -> Result<IterationTrace> {
    if max_steps == 0 {
        return Err(Error::domain("run_scheme", "max_steps must be at least 1"));
    }
    for name in params.keys() {
        if !ast.params.contains(name) {
            return Err(Error::domain("run_scheme", format!("scheme has no parameter `{name}`")));
        }
    }
    let mut env: Env = Vec::new();
    let mut trace_params = Vec::new();
    for name in &ast.params {
        let value = params
            .get(name)
            .ok_or_else(|| Error::domain("run_scheme", format!("parameter `{name}` is not bound")))?;
        trace_params.push((name.clone(), value.clone()));
        env.push((name.clone(), Value::from_exponent(value)));
    }
    for var in &ast.state {
        let v = eval(&var.init, &env)
            .and_then(|v| v.to_exponent().map(|_| v))
            .map_err(|e| runtime(var.pos, &format!("initialising `{}`", var.name), e))?;
        env.push((var.name.clone(), v));
    }
    let n_state = env.len();
    let mut trace = IterationTrace::new(&ast.name, trace_params, snapshot(ast, &env)?);
    let shrink = BigRational::new(BigInt::from((1u64 << 20) - 1), BigInt::from(1u64 << 20));
    let mut warned: Vec<String> = Vec::new();

    for pass in 1..=max_steps {
        let start = env.clone();
        let mut assigned: Vec<(String, Value)> = Vec::new();
        let mut stop: Option<(usize, String)> = None;
        for (idx, stmt) in ast.step.iter().enumerate() {
            match &stmt.kind {
                StmtKind::Let(name, e) => {
                    let v = eval(e, &env).map_err(|err| runtime(stmt.pos, &format!("let {name}"), err))?;
                    env.push((name.clone(), v));
                }
                StmtKind::Assign(name, e) => {
                    let v = eval(e, &env)
                        .and_then(|v| v.to_exponent().map(|_| v))
                        .map_err(|err| runtime(stmt.pos, &format!("assigning `{name}`"), err))?;
                    assigned.push((name.clone(), v.clone()));
                    set(&mut env, name, v);
                }
                StmtKind::Guard { lhs, op, rhs, terminal } => {
                    let l = eval(lhs, &env).map_err(|err| runtime(stmt.pos, "guard", err))?;
                    let r = eval(rhs, &env).map_err(|err| runtime(stmt.pos, "guard", err))?;
                    if !op.holds(l.cmp(&r)) {
                        stop = Some((idx, terminal.clone()));
                        break;
                    }
                }
            }
        }

        let executed = stop.as_ref().map_or(ast.step.len(), |(i, _)| *i);
        let mut probe = start.clone();
        for slot in probe[ast.params.len()..n_state].iter_mut() {
            slot.1 = slot.1.scale(&shrink);
        }
        if let Some(shadow) = shadow_pass(ast, probe, executed) {
            for ((name, real), (_, low)) in assigned.iter().zip(&shadow) {
                if low.cmp(real) == Ordering::Greater && !warned.contains(name) {
                    warned.push(name.clone());
                    trace.warnings.push(format!(
                        "update of `{name}` is not verifiably monotone (pass {pass})"
                    ));
                }
            }
        }

        env.truncate(n_state);
        let state = snapshot(ast, &env)?;
        match stop {
            Some((_, terminal)) => {
                let mut tag = CaseTag::from_name(&terminal);
                if !tag.is_terminal() {
                    tag = CaseTag::Named(terminal);
                }
                trace.push(&ast.name, state, tag);
                return Ok(trace);
            }
            None => trace.push(&ast.name, state, CaseTag::Continue),
        }
    }
    Err(Error::MaxSteps {
        steps: max_steps,
        partial: Box::new(trace),
    })
}
