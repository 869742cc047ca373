use num_rational::BigRational;

/// Source position, 1-based.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// Positions never take part in equality, so a reparsed pretty-print
/// compares equal to the original.
impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(BigRational),
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Height of the tree, counting leaves as 1.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Lit(_) | Expr::Var(_) => 1,
            Expr::Neg(e) => 1 + e.depth(),
            Expr::Bin(_, a, b) | Expr::Min(a, b) | Expr::Max(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn root_op(&self) -> Option<BinOp> {
        match self {
            Expr::Bin(op, _, _) => Some(*op),
            _ => None,
        }
    }

    /// Identifiers in left-to-right order, with repeats.
    pub fn identifiers(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_identifiers(&mut out);
        out
    }

    fn collect_identifiers<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Lit(_) => {}
            Expr::Var(name) => out.push(name),
            Expr::Neg(e) => e.collect_identifiers(out),
            Expr::Bin(_, a, b) | Expr::Min(a, b) | Expr::Max(a, b) => {
                a.collect_identifiers(out);
                b.collect_identifiers(out);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "==",
        }
    }

    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            CmpOp::Lt => ord == Less,
            CmpOp::Le => ord != Greater,
            CmpOp::Gt => ord == Greater,
            CmpOp::Ge => ord != Less,
            CmpOp::Eq => ord == Equal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Let(String, Expr),
    /// Continue while the condition holds; otherwise stop with the terminal.
    Guard {
        lhs: Expr,
        op: CmpOp,
        rhs: Expr,
        terminal: String,
    },
    Assign(String, Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVar {
    pub name: String,
    pub init: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeAst {
    pub name: String,
    pub params: Vec<String>,
    pub state: Vec<StateVar>,
    pub step: Vec<Stmt>,
}

impl SchemeAst {
    /// Terminal names in order of first appearance.
    pub fn terminals(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for stmt in &self.step {
            if let StmtKind::Guard { terminal, .. } = &stmt.kind {
                if !out.contains(&terminal.as_str()) {
                    out.push(terminal);
                }
            }
        }
        out
    }

    pub fn state_names(&self) -> impl Iterator<Item = &str> {
        self.state.iter().map(|v| v.name.as_str())
    }
}
