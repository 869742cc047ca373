//! A small language for exponent-iteration schemes.
//!
//! ```text
//! scheme halve {
//!   param p;
//!   state q = p;
//!   step {
//!     q = q/2;
//!     guard q > 1 else terminate small;
//!   }
//! }
//! ```
//!
//! Literals are exact (`3`, `3/4`); `#` starts a comment. Guards keep the
//! iteration going while their condition holds.

pub mod ast;
pub mod builtin;
mod eval;
mod lexer;
mod parser;
mod pretty;

use thiserror::Error;

pub use ast::{BinOp, CmpOp, Expr, Pos, SchemeAst, StateVar, Stmt, StmtKind};
pub use builtin::{builtin_scheme, builtin_source, ABSTRACT_SCHEME, EULER_LAGRANGE_SCHEME};
pub use eval::{eval_expr, run_scheme};
pub use lexer::is_keyword;
pub use parser::{parse_expr, parse_scheme};
pub use pretty::{pretty_expr, pretty_scheme};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemeErrorKind {
    #[error("{0}")]
    Lexical(String),
    #[error("found {found}, expected {}", expected.join(" or "))]
    Syntax { found: String, expected: Vec<String> },
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("`{0}` is already bound")]
    Duplicate(String),
    #[error("`{0}` is not a state variable and cannot be assigned")]
    NotAssignable(String),
    #[error("step block has no guard, so the scheme can never terminate")]
    NoGuard,
    #[error("{0}")]
    Runtime(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct SchemeError {
    pub kind: SchemeErrorKind,
    pub line: usize,
    pub col: usize,
}

impl SchemeError {
    pub(crate) fn new(kind: SchemeErrorKind, pos: Pos) -> Self {
        SchemeError {
            kind,
            line: pos.line,
            col: pos.col,
        }
    }
}
