use super::ast::SchemeAst;
use super::parser::parse_scheme;
use super::SchemeError;

/// The abstract gain iteration on `(q, t)`, started from the first improvement.
pub const ABSTRACT_SCHEME: &str = include_str!("../../schemes/abstract.scm-exp");

/// The Euler–Lagrange recurrence from an arbitrary map exponent `q0`.
pub const EULER_LAGRANGE_SCHEME: &str = include_str!("../../schemes/euler_lagrange.scm-exp");

/// Source text of a built-in scheme. Accepts `abstract`, `el` and `euler_lagrange`.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "abstract" => Some(ABSTRACT_SCHEME),
        "el" | "euler_lagrange" | "euler-lagrange" => Some(EULER_LAGRANGE_SCHEME),
        _ => None,
    }
}

pub fn builtin_scheme(name: &str) -> Option<Result<SchemeAst, SchemeError>> {
    builtin_source(name).map(parse_scheme)
}
