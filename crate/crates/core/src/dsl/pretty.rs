use num_traits::One;

use super::ast::{BinOp, Expr, SchemeAst, StmtKind};

/// Binding strength: 1 additive, 2 multiplicative, 3 atoms and unary minus.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        _ => 3,
    }
}

fn is_plain_divisor(e: &Expr) -> bool {
    match e {
        Expr::Lit(r) => r.denom().is_one(),
        Expr::Var(_) | Expr::Min(..) | Expr::Max(..) => true,
        _ => false,
    }
}

pub fn pretty_expr(e: &Expr) -> String {
    match e {
        Expr::Lit(r) => r.to_string(),
        Expr::Var(name) => name.clone(),
        Expr::Neg(inner) => {
            if level(inner) < 3 {
                format!("-({})", pretty_expr(inner))
            } else {
                format!("-{}", pretty_expr(inner))
            }
        }
        Expr::Min(a, b) => format!("min({}, {})", pretty_expr(a), pretty_expr(b)),
        Expr::Max(a, b) => format!("max({}, {})", pretty_expr(a), pretty_expr(b)),
        Expr::Bin(op, a, b) => {
            let me = level(e);
            let mut left = pretty_expr(a);
            // `3/2` would lex back as one literal
            let glued = *op == BinOp::Div
                && matches!(**b, Expr::Lit(_))
                && left.ends_with(|c: char| c.is_ascii_digit());
            if level(a) < me || glued {
                left = format!("({left})");
            }
            let right_bare = match op {
                BinOp::Div => is_plain_divisor(b),
                _ => level(b) > me,
            };
            let right = if right_bare {
                pretty_expr(b)
            } else {
                format!("({})", pretty_expr(b))
            };
            match op {
                BinOp::Add | BinOp::Sub => format!("{left} {} {right}", op.symbol()),
                BinOp::Mul | BinOp::Div => format!("{left}{}{right}", op.symbol()),
            }
        }
    }
}

pub fn pretty_scheme(ast: &SchemeAst) -> String {
    let mut out = format!("scheme {} {{\n  param {};\n", ast.name, ast.params.join(", "));
    for var in &ast.state {
        out += &format!("  state {} = {};\n", var.name, pretty_expr(&var.init));
    }
    out += "  step {\n";
    for stmt in &ast.step {
        let line = match &stmt.kind {
            StmtKind::Let(name, e) => format!("let {name} = {};", pretty_expr(e)),
            StmtKind::Assign(name, e) => format!("{name} = {};", pretty_expr(e)),
            StmtKind::Guard { lhs, op, rhs, terminal } => format!(
                "guard {} {} {} else terminate {terminal};",
                pretty_expr(lhs),
                op.symbol(),
                pretty_expr(rhs)
            ),
        };
        out += &format!("    {line}\n");
    }
    out += "  }\n}\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::parse_expr;

    #[test]
    fn keeps_structure() {
        for src in [
            "a - (b - c)",
            "a/(b*c)",
            "a/1/2",
            "a*(1/2)",
            "a/(1/2)",
            "-(a + b)*c",
            "a/-b",
            "a/(-1/2)",
            "min(a, b - 1)/max(a, 2)",
            "(a + b) + c",
            "1/2/3",
            "--a",
            "(1)/2",
            "a*3/2/5",
            "(a*3)/2",
            "(-1)/2",
        ] {
            let e = parse_expr(src, None).unwrap();
            let printed = pretty_expr(&e);
            assert_eq!(parse_expr(&printed, None).unwrap(), e, "{src} -> {printed}");
        }
    }

    #[test]
    fn minimal_parentheses() {
        let e = parse_expr("((p*q))/((p+q))", None).unwrap();
        assert_eq!(pretty_expr(&e), "p*q/(p + q)");
    }
}
