//! Recursive descent, one token of lookahead.

use num_rational::BigRational;
use num_traits::Zero;

use super::ast::{BinOp, CmpOp, Expr, Pos, SchemeAst, StateVar, Stmt, StmtKind};
use super::lexer::{tokenize, Tok};
use super::{SchemeError, SchemeErrorKind};

type PResult<T> = Result<T, SchemeError>;

const EXPR_START: [&str; 6] = ["integer", "identifier", "`(`", "`-`", "`min`", "`max`"];
const EXPR_CONT: [&str; 4] = ["`+`", "`-`", "`*`", "`/`"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek2(&self) -> &Tok {
        let j = (self.i + 1).min(self.toks.len() - 1);
        &self.toks[j].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        let mut expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        expected.sort();
        expected.dedup();
        Err(SchemeError::new(
            SchemeErrorKind::Syntax {
                found: self.peek().describe(),
                expected,
            },
            self.pos(),
        ))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Pos> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.unexpected(&[&tok.describe()])
        }
    }

    /// Like `expect`, but reports that the preceding expression could also continue.
    fn expect_after_expr(&mut self, tok: Tok, extra: &[&str]) -> PResult<Pos> {
        if *self.peek() == tok {
            return Ok(self.bump().1);
        }
        let want = tok.describe();
        let mut all: Vec<&str> = vec![&want];
        all.extend(EXPR_CONT);
        all.extend(extra);
        self.unexpected(&all)
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.bump().1;
                Ok((name, pos))
            }
            _ => self.unexpected(&["identifier"]),
        }
    }

    fn bind(&mut self, name: &str, pos: Pos) -> PResult<()> {
        if self.scope.iter().any(|n| n == name) {
            return Err(SchemeError::new(SchemeErrorKind::Duplicate(name.to_string()), pos));
        }
        self.scope.push(name.to_string());
        Ok(())
    }

    fn scheme(&mut self) -> PResult<SchemeAst> {
        self.expect(Tok::Scheme)?;
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        self.expect(Tok::Param)?;
        let mut params = Vec::new();
        loop {
            let (p, pos) = self.ident()?;
            self.bind(&p, pos)?;
            params.push(p);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    break;
                }
                _ => return self.unexpected(&["`,`", "`;`"]),
            }
        }

        let mut state = Vec::new();
        if *self.peek() != Tok::State {
            return self.unexpected(&["`state`"]);
        }
        while *self.peek() == Tok::State {
            self.bump();
            let (var, pos) = self.ident()?;
            self.expect(Tok::Assign)?;
            let init = self.expr()?;
            self.expect_after_expr(Tok::Semi, &[])?;
            self.bind(&var, pos)?;
            state.push(StateVar { name: var, init, pos });
        }

        let step_pos = self.expect_step()?;
        self.expect(Tok::LBrace)?;
        let outer = self.scope.len();
        let mut step = Vec::new();
        loop {
            match self.peek() {
                Tok::Let | Tok::Guard | Tok::Ident(_) => step.push(self.stmt(&state)?),
                Tok::RBrace if !step.is_empty() => break,
                _ => return self.unexpected(&["`let`", "`guard`", "identifier", "`}`"][..if step.is_empty() { 3 } else { 4 }]),
            }
        }
        self.scope.truncate(outer);
        self.expect(Tok::RBrace)?;
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Eof)?;

        if !step.iter().any(|s| matches!(s.kind, StmtKind::Guard { .. })) {
            return Err(SchemeError::new(SchemeErrorKind::NoGuard, step_pos));
        }
        Ok(SchemeAst {
            name,
            params,
            state,
            step,
        })
    }

    fn expect_step(&mut self) -> PResult<Pos> {
        if *self.peek() == Tok::Step {
            Ok(self.bump().1)
        } else {
            self.unexpected(&["`state`", "`step`"])
        }
    }

    fn stmt(&mut self, state: &[StateVar]) -> PResult<Stmt> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Let => {
                self.bump();
                let (name, npos) = self.ident()?;
                self.expect(Tok::Assign)?;
                let e = self.expr()?;
                self.expect_after_expr(Tok::Semi, &[])?;
                self.bind(&name, npos)?;
                StmtKind::Let(name, e)
            }
            Tok::Guard => {
                self.bump();
                let lhs = self.expr()?;
                let op = match self.peek() {
                    Tok::Lt => CmpOp::Lt,
                    Tok::Le => CmpOp::Le,
                    Tok::Gt => CmpOp::Gt,
                    Tok::Ge => CmpOp::Ge,
                    Tok::EqEq => CmpOp::Eq,
                    _ => {
                        let mut want = vec!["`<`", "`<=`", "`>`", "`>=`", "`==`"];
                        want.extend(EXPR_CONT);
                        return self.unexpected(&want);
                    }
                };
                self.bump();
                let rhs = self.expr()?;
                self.expect_after_expr(Tok::Else, &[])?;
                self.expect(Tok::Terminate)?;
                let (terminal, _) = self.ident()?;
                self.expect(Tok::Semi)?;
                StmtKind::Guard {
                    lhs,
                    op,
                    rhs,
                    terminal,
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if !state.iter().any(|v| v.name == name) {
                    return Err(SchemeError::new(SchemeErrorKind::NotAssignable(name), pos));
                }
                self.expect(Tok::Assign)?;
                let e = self.expr()?;
                self.expect_after_expr(Tok::Semi, &[])?;
                StmtKind::Assign(name, e)
            }
            _ => return self.unexpected(&["`let`", "`guard`", "identifier"]),
        };
        Ok(Stmt { kind, pos })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor(false)?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor(op == BinOp::Div)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    /// `after_slash`: an integer directly after `/` is a plain divisor, so
    /// `a/1/2` stays `(a/1)/2`.
    fn factor(&mut self, after_slash: bool) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if !after_slash && *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek2().clone() {
                        self.bump();
                        let dpos = self.bump().1;
                        if d.is_zero() {
                            return Err(SchemeError::new(
                                SchemeErrorKind::Lexical("zero denominator in literal".into()),
                                dpos,
                            ));
                        }
                        return Ok(Expr::Lit(BigRational::new(n, d)));
                    }
                }
                Ok(Expr::Lit(BigRational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.bump();
                if !self.scope.contains(&name) {
                    return Err(SchemeError::new(SchemeErrorKind::Unbound(name), pos));
                }
                Ok(Expr::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_after_expr(Tok::RParen, &[])?;
                Ok(e)
            }
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.factor(after_slash)?)))
            }
            Tok::Min | Tok::Max => {
                let is_min = *self.peek() == Tok::Min;
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                self.expect_after_expr(Tok::Comma, &[])?;
                let b = self.expr()?;
                self.expect_after_expr(Tok::RParen, &[])?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if is_min { Expr::Min(a, b) } else { Expr::Max(a, b) })
            }
            _ => self.unexpected(&EXPR_START),
        }
    }
}

pub fn parse_scheme(text: &str) -> PResult<SchemeAst> {
    let mut p = Parser {
        toks: tokenize(text)?,
        i: 0,
        scope: Vec::new(),
    };
    p.scheme()
}

/// Parses a lone expression. Every identifier in `scope` may appear free;
/// pass `None` to accept any identifier.
pub fn parse_expr(text: &str, scope: Option<&[&str]>) -> PResult<Expr> {
    let toks = tokenize(text)?;
    let mut names: Vec<String> = match scope {
        Some(s) => s.iter().map(|n| n.to_string()).collect(),
        None => toks
            .iter()
            .filter_map(|(t, _)| match t {
                Tok::Ident(n) => Some(n.clone()),
                _ => None,
            })
            .collect(),
    };
    names.dedup();
    let mut p = Parser {
        toks,
        i: 0,
        scope: names,
    };
    let e = p.expr()?;
    p.expect_after_expr(Tok::Eof, &[])?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> Expr {
        Expr::Lit(BigRational::from_integer(BigInt::from(n)))
    }

    fn lit(n: i64, d: i64) -> Expr {
        Expr::Lit(BigRational::new(n.into(), d.into()))
    }

    fn var(s: &str) -> Expr {
        Expr::Var(s.into())
    }

    fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    #[test]
    fn depth_of_spinor_gain() {
        let e = parse_expr("8/(6-3*s)", None).unwrap();
        assert_eq!(e.depth(), 4);
        assert_eq!(e.root_op(), Some(BinOp::Div));
    }

    #[test]
    fn rational_literals_and_division() {
        assert_eq!(parse_expr("1/2", None).unwrap(), lit(1, 2));
        assert_eq!(
            parse_expr("a/1/2", None).unwrap(),
            bin(BinOp::Div, bin(BinOp::Div, var("a"), int(1)), int(2))
        );
        assert_eq!(parse_expr("2*3/4", None).unwrap(), bin(BinOp::Mul, int(2), lit(3, 4)));
        assert_eq!(
            parse_expr("1/q", None).unwrap(),
            bin(BinOp::Div, int(1), var("q"))
        );
        assert!(parse_expr("1/0", None).is_err());
    }

    #[test]
    fn missing_state_and_step() {
        let err = parse_scheme("scheme x { param p; }").unwrap_err();
        match &err.kind {
            SchemeErrorKind::Syntax { expected, found } => {
                assert_eq!(expected, &vec!["`state`".to_string()]);
                assert_eq!(found, "`}`");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!((err.line, err.col), (1, 21));
    }

    #[test]
    fn scope_errors() {
        let unbound = parse_scheme("scheme x { param p; state q = r; step { guard q < 1 else terminate a; } }")
            .unwrap_err();
        assert_eq!(unbound.kind, SchemeErrorKind::Unbound("r".into()));
        let dup = parse_scheme("scheme x { param p; state q = p; state q = 1; step { guard q < 1 else terminate a; } }")
            .unwrap_err();
        assert_eq!(dup.kind, SchemeErrorKind::Duplicate("q".into()));
        let later_let = parse_scheme(
            "scheme x { param p; state q = p; step { q = s; let s = 1; guard q < 1 else terminate a; } }",
        )
        .unwrap_err();
        assert_eq!(later_let.kind, SchemeErrorKind::Unbound("s".into()));
        let no_guard = parse_scheme("scheme x { param p; state q = p; step { q = q + 1; } }").unwrap_err();
        assert_eq!(no_guard.kind, SchemeErrorKind::NoGuard);
        let param_assign =
            parse_scheme("scheme x { param p; state q = p; step { p = 1; guard q < 1 else terminate a; } }")
                .unwrap_err();
        assert_eq!(param_assign.kind, SchemeErrorKind::NotAssignable("p".into()));
    }

    #[test]
    fn lets_are_local_to_one_pass() {
        let ast = parse_scheme(
            "scheme x { param p; state q = p; step { let s = q; guard s < 1 else terminate a; q = s + 1; } }",
        )
        .unwrap();
        assert_eq!(ast.step.len(), 3);
        assert_eq!(ast.terminals(), vec!["a"]);
    }
}
