//! Iteration traces shared by the abstract driver, the Euler–Lagrange
//! recurrence and the scheme interpreter.

use std::fmt;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::exponents::Exponent;

/// Outcome label of one iteration step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// `q < Q(q) < Q_0`: keep iterating.
    Case1,
    /// `Q(q) >= Q_0`: the source exponent reaches 2.
    Case2,
    /// `Q(q) <= q`: no further gain.
    Case3,
    /// `s >= 2` on entry: best spaces reached at once.
    Shortcut,
    /// Stall detected analytically at the smaller fixed point.
    FixedPoint,
    /// One step of the Euler–Lagrange recurrence.
    ElStep,
    /// The Euler–Lagrange recurrence crossed the barrier `Q_0`.
    Barrier,
    /// Non-terminal pass of a user scheme.
    Continue,
    /// Terminal named in a user scheme.
    Named(String),
}

impl CaseTag {
    pub fn as_str(&self) -> &str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::Shortcut => "shortcut",
            CaseTag::FixedPoint => "fixed-point",
            CaseTag::ElStep => "el-step",
            CaseTag::Barrier => "barrier",
            CaseTag::Continue => "continue",
            CaseTag::Named(name) => name,
        }
    }

    /// Maps a terminal name to a built-in tag where one exists.
    pub fn from_name(name: &str) -> Self {
        match name {
            "case1" => CaseTag::Case1,
            "case2" => CaseTag::Case2,
            "case3" => CaseTag::Case3,
            "shortcut" => CaseTag::Shortcut,
            "fixed-point" | "fixed_point" => CaseTag::FixedPoint,
            "el-step" => CaseTag::ElStep,
            "barrier" => CaseTag::Barrier,
            "continue" => CaseTag::Continue,
            other => CaseTag::Named(other.to_string()),
        }
    }

    pub fn is_terminal(&self) -> bool {
        !matches!(self, CaseTag::Case1 | CaseTag::ElStep | CaseTag::Continue)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named state variables in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateSnapshot(pub Vec<(String, Exponent)>);

impl StateSnapshot {
    pub fn new(vars: Vec<(String, Exponent)>) -> Self {
        StateSnapshot(vars)
    }

    pub fn get(&self, name: &str) -> Option<&Exponent> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }

    pub fn values(&self) -> impl Iterator<Item = &Exponent> {
        self.0.iter().map(|(_, v)| v)
    }

    /// Same names and exactly equal values, ignoring almost flags.
    pub fn same_values(&self, other: &Self) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|((n1, v1), (n2, v2))| n1 == n2 && v1.same_value(v2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub k: usize,
    pub rule: String,
    pub incoming: StateSnapshot,
    pub outgoing: StateSnapshot,
    pub case: CaseTag,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IterationTrace {
    pub scheme: String,
    pub params: Vec<(String, Exponent)>,
    pub initial: StateSnapshot,
    pub steps: Vec<TraceStep>,
    pub terminal: Option<CaseTag>,
    pub warnings: Vec<String>,
}

impl IterationTrace {
    pub fn new(scheme: &str, params: Vec<(String, Exponent)>, initial: StateSnapshot) -> Self {
        IterationTrace {
            scheme: scheme.to_string(),
            params,
            initial,
            ..Default::default()
        }
    }

    /// Appends a step with the next consecutive index. A terminal case closes the trace.
    pub fn push(&mut self, rule: &str, outgoing: StateSnapshot, case: CaseTag) {
        debug_assert!(self.terminal.is_none(), "push after terminal");
        let incoming = self.current_state().clone();
        if case.is_terminal() {
            self.terminal = Some(case.clone());
        }
        self.steps.push(TraceStep {
            k: self.steps.len() + 1,
            rule: rule.to_string(),
            incoming,
            outgoing,
            case,
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The state after the last step, or the initial state.
    pub fn current_state(&self) -> &StateSnapshot {
        self.steps
            .last()
            .map(|s| &s.outgoing)
            .unwrap_or(&self.initial)
    }

    /// States the iteration occupied: the initial state and the outcome of
    /// every non-terminal step.
    pub fn occupied_states(&self) -> Vec<&StateSnapshot> {
        std::iter::once(&self.initial)
            .chain(
                self.steps
                    .iter()
                    .filter(|s| !s.case.is_terminal())
                    .map(|s| &s.outgoing),
            )
            .collect()
    }

    /// Line-delimited records: a header, a `k = 0` start row, then one row per
    /// step with exact and decimal forms of every state variable.
    pub fn to_records(&self, digits: usize) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(n, v)| format!("{n}={v}")).collect();
        let _ = writeln!(out, "# scheme={} {}", self.scheme, params.join(" "));
        let names: Vec<&str> = self.initial.names().collect();
        let mut header = vec!["k".to_string(), "case".to_string()];
        header.extend(names.iter().map(|n| n.to_string()));
        header.extend(names.iter().map(|n| format!("{n}_dec")));
        let _ = writeln!(out, "{}", header.join("\t"));
        let row = |k: usize, case: &str, state: &StateSnapshot| {
            let mut cells = vec![k.to_string(), case.to_string()];
            cells.extend(state.values().map(|v| v.to_string()));
            cells.extend(state.values().map(|v| v.to_decimal(digits)));
            cells.join("\t")
        };
        let _ = writeln!(out, "{}", row(0, "start", &self.initial));
        for step in &self.steps {
            let _ = writeln!(out, "{}", row(step.k, step.case.as_str(), &step.outgoing));
        }
        if let Some(t) = &self.terminal {
            let _ = writeln!(out, "# terminal={t}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "# warning: {w}");
        }
        out
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let state_json = |s: &StateSnapshot| {
            let mut map = serde_json::Map::new();
            for (n, v) in &s.0 {
                map.insert(n.clone(), json!({ "exact": v.to_string(), "decimal": v.to_decimal(digits) }));
            }
            Value::Object(map)
        };
        let params: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(n, v)| (n.clone(), Value::String(v.to_string())))
            .collect();
        json!({
            "scheme": self.scheme,
            "params": params,
            "initial": state_json(&self.initial),
            "steps": self.steps.iter().map(|s| json!({
                "k": s.k,
                "rule": s.rule,
                "case": s.case.as_str(),
                "state": state_json(&s.outgoing),
            })).collect::<Vec<_>>(),
            "terminal": self.terminal.as_ref().map(|t| t.as_str().to_string()),
            "warnings": self.warnings,
        })
    }
}
