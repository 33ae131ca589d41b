//! A small imperative language of assignments, conditionals and
//! sequencing, its interpreter, and its encodings as next-state
//! expressions.

mod encode;
mod eval;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::logic::Sort;

pub use encode::{
    emit_vc, encode_restricted, encode_tuples, next_state_name, program_size, tuple_variables,
    vc_from_text,
};
pub use eval::{evaluate_foolp, evaluate_foolp_with, interpret_program, ArrayValue, Value};
pub use parse::parse_program;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProgramError {
    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("a conditional assigns to more than one variable")]
    NotRestrictedForm,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("16-bit integer overflow")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("specification: {0}")]
    Spec(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Not,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Gt,
    Ge,
    Lt,
    Le,
    Eq,
    Ne,
    And,
    Or,
}

impl BinOp {
    fn token(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Eq => "=",
            BinOp::Ne => "!=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }
}

/// Right-hand sides and conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PExpr {
    Int(i64),
    Bool(bool),
    Var(String),
    Unary(UnOp, Box<PExpr>),
    Binary(BinOp, Box<PExpr>, Box<PExpr>),
    /// `a[i]`
    Read(Box<PExpr>, Box<PExpr>),
    /// The array `a` with index `i` set to `v`; `a[i] := v` assigns it to `a`.
    Write(Box<PExpr>, Box<PExpr>, Box<PExpr>),
}

impl PExpr {
    pub fn bin(op: BinOp, a: PExpr, b: PExpr) -> PExpr {
        PExpr::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn var(name: &str) -> PExpr {
        PExpr::Var(name.to_string())
    }

    pub fn node_count(&self) -> usize {
        1 + match self {
            PExpr::Int(_) | PExpr::Bool(_) | PExpr::Var(_) => 0,
            PExpr::Unary(_, a) => a.node_count(),
            PExpr::Binary(_, a, b) | PExpr::Read(a, b) => a.node_count() + b.node_count(),
            PExpr::Write(a, i, v) => a.node_count() + i.node_count() + v.node_count(),
        }
    }
}

impl fmt::Display for PExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExpr::Int(n) => write!(f, "{n}"),
            PExpr::Bool(b) => write!(f, "{b}"),
            PExpr::Var(v) => write!(f, "{v}"),
            PExpr::Unary(UnOp::Neg, a) => write!(f, "-({a})"),
            PExpr::Unary(UnOp::Not, a) => write!(f, "!({a})"),
            PExpr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.token()),
            PExpr::Read(a, i) => write!(f, "{a}[{i}]"),
            PExpr::Write(a, i, v) => write!(f, "store({a}, {i}, {v})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Program {
    Skip,
    Assign(String, PExpr),
    If(PExpr, Box<Program>, Box<Program>),
    Seq(Box<Program>, Box<Program>),
}

impl Program {
    pub fn assign(x: &str, e: PExpr) -> Program {
        Program::Assign(x.to_string(), e)
    }

    pub fn ite(c: PExpr, a: Program, b: Program) -> Program {
        Program::If(c, Box::new(a), Box::new(b))
    }

    /// Right-nested sequence; `Skip` for no statements.
    pub fn seq(mut ps: Vec<Program>) -> Program {
        let Some(mut acc) = ps.pop() else {
            return Program::Skip;
        };
        while let Some(p) = ps.pop() {
            acc = Program::Seq(Box::new(p), Box::new(acc));
        }
        acc
    }

    /// Variables assigned anywhere in the program, in order of first assignment.
    pub fn assigned(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_assigned(&mut out);
        out
    }

    fn collect_assigned(&self, out: &mut Vec<String>) {
        match self {
            Program::Skip => {}
            Program::Assign(x, _) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Program::If(_, a, b) | Program::Seq(a, b) => {
                a.collect_assigned(out);
                b.collect_assigned(out);
            }
        }
    }

    /// Assignments and skips; a conditional counts once plus its branches.
    pub fn statement_count(&self) -> usize {
        match self {
            Program::Skip | Program::Assign(..) => 1,
            Program::If(_, a, b) => 1 + a.statement_count() + b.statement_count(),
            Program::Seq(a, b) => a.statement_count() + b.statement_count(),
        }
    }

    fn fmt_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            Program::Skip => writeln!(f, "{pad}skip;"),
            Program::Assign(x, PExpr::Write(a, i, v)) if **a == PExpr::Var(x.clone()) => {
                writeln!(f, "{pad}{x}[{i}] := {v};")
            }
            Program::Assign(x, e) => writeln!(f, "{pad}{x} := {e};"),
            Program::If(c, a, b) => {
                writeln!(f, "{pad}if ({c}) then {{")?;
                a.fmt_indented(f, depth + 1)?;
                writeln!(f, "{pad}}} else {{")?;
                b.fmt_indented(f, depth + 1)?;
                writeln!(f, "{pad}}}")
            }
            Program::Seq(a, b) => {
                a.fmt_indented(f, depth)?;
                b.fmt_indented(f, depth)
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_indented(f, 0)
    }
}

/// Whether every conditional assigns to exactly one variable across both branches.
pub fn check_restricted_form(p: &Program) -> bool {
    match p {
        Program::Skip | Program::Assign(..) => true,
        Program::If(_, a, b) => {
            let mut vars = a.assigned();
            b.collect_assigned(&mut vars);
            vars.len() == 1 && check_restricted_form(a) && check_restricted_form(b)
        }
        Program::Seq(a, b) => check_restricted_form(a) && check_restricted_form(b),
    }
}

/// Variable declarations followed by a statement list.
#[derive(Clone, Debug, PartialEq)]
pub struct ProgramFile {
    pub vars: Vec<(String, Sort)>,
    pub body: Program,
}

impl ProgramFile {
    pub fn sort_of(&self, var: &str) -> Option<&Sort> {
        self.vars.iter().find(|(n, _)| n == var).map(|(_, s)| s)
    }
}

impl fmt::Display for ProgramFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, s) in &self.vars {
            writeln!(f, "var {n} : {};", parse::sort_keyword(s))?;
        }
        write!(f, "{}", self.body)
    }
}

/// Values of program variables.
pub type ProgramState = BTreeMap<String, Value>;
