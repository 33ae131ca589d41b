//! Concrete syntax:
//!
//! ```text
//! var x, y : int;   var a : array(int, bool);   var b : bool;
//! x := e;   a[i] := e;   skip;   { s1 s2 ... }
//! if (e) then s [else s]
//! ```
//!
//! Expressions use `+ -` (unary and binary), `> >= < <= = !=`, `! && ||`,
//! integer literals, `true`, `false` and array reads `a[i]`. `//` starts a
//! comment.

use super::{BinOp, PExpr, Program, ProgramError, ProgramFile, UnOp};
use crate::logic::Sort;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

const SYMS: [&str; 21] = [
    ":=", ">=", "<=", "!=", "&&", "||", ";", ",", ":", "(", ")", "[", "]", "{", "}", "+", "-", ">",
    "<", "=", "!",
];

fn lex(src: &str) -> Result<Lexer, ProgramError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c == b'\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if src[i..].starts_with("//") {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(src[start..i].parse().map_err(|_| ProgramError::Parse {
                line,
                col,
                msg: "integer literal too large".into(),
            })?)
        } else if let Some(s) = SYMS.iter().find(|s| src[i..].starts_with(**s)) {
            i += s.len();
            Tok::Sym(s)
        } else {
            return Err(ProgramError::Parse {
                line,
                col,
                msg: format!("unexpected character `{}`", c as char),
            });
        };
        toks.push((tok, line, col));
        col += i - start;
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    vars: Vec<(String, Sort)>,
}

pub(super) fn sort_keyword(s: &Sort) -> String {
    match s {
        Sort::Int => "int".into(),
        Sort::Bool => "bool".into(),
        Sort::Array(i, v) => format!("array({}, {})", sort_keyword(i), sort_keyword(v)),
        other => other.to_string(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ProgramError> {
        let (_, line, col) = self.toks[self.pos];
        Err(ProgramError::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(t) if *t == s)
            || matches!(self.peek(), Tok::Ident(t) if t == s)
        {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ProgramError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`, found {:?}", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, ProgramError> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.pos += 1;
                Ok(s)
            }
            t => self.err(format!("expected identifier, found {t:?}")),
        }
    }

    fn sort(&mut self) -> Result<Sort, ProgramError> {
        let name = self.ident_or_keyword()?;
        match name.as_str() {
            "int" => Ok(Sort::Int),
            "bool" => Ok(Sort::Bool),
            "array" => {
                self.expect("(")?;
                let i = self.sort()?;
                self.expect(",")?;
                let v = self.sort()?;
                self.expect(")")?;
                if i != Sort::Int || matches!(v, Sort::Array(..)) {
                    return self.err("arrays are indexed by int and hold int or bool");
                }
                Ok(Sort::array(i, v))
            }
            other => self.err(format!("unknown sort `{other}`")),
        }
    }

    fn ident_or_keyword(&mut self) -> Result<String, ProgramError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            t => self.err(format!("expected identifier, found {t:?}")),
        }
    }

    fn var_sort(&self, name: &str) -> Result<Sort, ProgramError> {
        match self.vars.iter().find(|(n, _)| n == name) {
            Some((_, s)) => Ok(s.clone()),
            None => self.err(format!("undeclared variable `{name}`")),
        }
    }

    fn statements(&mut self, until: &str) -> Result<Program, ProgramError> {
        let mut ps = Vec::new();
        while !self.at_end(until) {
            ps.push(self.statement()?);
        }
        Ok(Program::seq(ps))
    }

    fn at_end(&self, until: &str) -> bool {
        match self.peek() {
            Tok::Eof => true,
            Tok::Sym(s) => *s == until,
            _ => false,
        }
    }

    fn statement(&mut self) -> Result<Program, ProgramError> {
        if self.eat("{") {
            let p = self.statements("}")?;
            self.expect("}")?;
            return Ok(p);
        }
        if self.eat("skip") {
            self.expect(";")?;
            return Ok(Program::Skip);
        }
        if self.eat("if") {
            self.expect("(")?;
            let c = self.expr()?;
            self.expect_sort(&c, &Sort::Bool)?;
            self.expect(")")?;
            self.expect("then")?;
            let a = self.statement()?;
            let b = if self.eat("else") {
                self.statement()?
            } else {
                Program::Skip
            };
            return Ok(Program::ite(c, a, b));
        }
        let x = self.ident()?;
        let xs = self.var_sort(&x)?;
        let rhs = if self.eat("[") {
            let Some((_, v)) = xs.as_array() else {
                return self.err(format!("`{x}` is not an array"));
            };
            let v = v.clone();
            let i = self.expr()?;
            self.expect_sort(&i, &Sort::Int)?;
            self.expect("]")?;
            self.expect(":=")?;
            let e = self.expr()?;
            self.expect_sort(&e, &v)?;
            PExpr::Write(Box::new(PExpr::Var(x.clone())), Box::new(i), Box::new(e))
        } else {
            self.expect(":=")?;
            let e = self.expr()?;
            self.expect_sort(&e, &xs)?;
            e
        };
        self.expect(";")?;
        Ok(Program::Assign(x, rhs))
    }

    fn expect_sort(&self, e: &PExpr, want: &Sort) -> Result<(), ProgramError> {
        let got = type_of(e, &self.vars)?;
        if &got == want {
            Ok(())
        } else {
            Err(ProgramError::Sort(format!(
                "`{e}` has sort {got}, expected {want}"
            )))
        }
    }

    fn expr(&mut self) -> Result<PExpr, ProgramError> {
        let mut a = self.conj()?;
        while self.eat("||") {
            a = PExpr::bin(BinOp::Or, a, self.conj()?);
        }
        Ok(a)
    }

    fn conj(&mut self) -> Result<PExpr, ProgramError> {
        let mut a = self.negation()?;
        while self.eat("&&") {
            a = PExpr::bin(BinOp::And, a, self.negation()?);
        }
        Ok(a)
    }

    fn negation(&mut self) -> Result<PExpr, ProgramError> {
        if self.eat("!") {
            return Ok(PExpr::Unary(UnOp::Not, Box::new(self.negation()?)));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<PExpr, ProgramError> {
        let a = self.additive()?;
        for (s, op) in [
            (">=", BinOp::Ge),
            ("<=", BinOp::Le),
            ("!=", BinOp::Ne),
            (">", BinOp::Gt),
            ("<", BinOp::Lt),
            ("=", BinOp::Eq),
        ] {
            if self.eat(s) {
                return Ok(PExpr::bin(op, a, self.additive()?));
            }
        }
        Ok(a)
    }

    fn additive(&mut self) -> Result<PExpr, ProgramError> {
        let mut a = self.unary()?;
        loop {
            if self.eat("+") {
                a = PExpr::bin(BinOp::Add, a, self.unary()?);
            } else if self.eat("-") {
                a = PExpr::bin(BinOp::Sub, a, self.unary()?);
            } else {
                return Ok(a);
            }
        }
    }

    fn unary(&mut self) -> Result<PExpr, ProgramError> {
        if self.eat("-") {
            return Ok(match self.unary()? {
                PExpr::Int(n) => PExpr::Int(-n),
                e => PExpr::Unary(UnOp::Neg, Box::new(e)),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<PExpr, ProgramError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(PExpr::Int(n))
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.pos += 1;
                Ok(PExpr::Bool(s == "true"))
            }
            Tok::Ident(_) => {
                let x = self.ident()?;
                self.var_sort(&x)?;
                let mut e = PExpr::Var(x);
                while self.eat("[") {
                    let i = self.expr()?;
                    self.expect("]")?;
                    e = PExpr::Read(Box::new(e), Box::new(i));
                }
                Ok(e)
            }
            t => self.err(format!("expected expression, found {t:?}")),
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(
        s,
        "var" | "if" | "then" | "else" | "skip" | "true" | "false"
    )
}

/// Sort of `e` given the variable declarations.
pub(super) fn type_of(e: &PExpr, vars: &[(String, Sort)]) -> Result<Sort, ProgramError> {
    let err = |msg: String| Err(ProgramError::Sort(msg));
    let want = |x: &PExpr, s: &Sort| -> Result<(), ProgramError> {
        let got = type_of(x, vars)?;
        if &got == s {
            Ok(())
        } else {
            Err(ProgramError::Sort(format!(
                "`{x}` has sort {got}, expected {s}"
            )))
        }
    };
    match e {
        PExpr::Int(_) => Ok(Sort::Int),
        PExpr::Bool(_) => Ok(Sort::Bool),
        PExpr::Var(x) => match vars.iter().find(|(n, _)| n == x) {
            Some((_, s)) => Ok(s.clone()),
            None => Err(ProgramError::UnboundVariable(x.clone())),
        },
        PExpr::Unary(UnOp::Neg, a) => want(a, &Sort::Int).map(|_| Sort::Int),
        PExpr::Unary(UnOp::Not, a) => want(a, &Sort::Bool).map(|_| Sort::Bool),
        PExpr::Binary(op, a, b) => match op {
            BinOp::Add | BinOp::Sub => {
                want(a, &Sort::Int)?;
                want(b, &Sort::Int)?;
                Ok(Sort::Int)
            }
            BinOp::Gt | BinOp::Ge | BinOp::Lt | BinOp::Le => {
                want(a, &Sort::Int)?;
                want(b, &Sort::Int)?;
                Ok(Sort::Bool)
            }
            BinOp::Eq | BinOp::Ne => {
                let s = type_of(a, vars)?;
                if matches!(s, Sort::Array(..)) {
                    return err(format!("cannot compare arrays in `{e}`"));
                }
                want(b, &s)?;
                Ok(Sort::Bool)
            }
            BinOp::And | BinOp::Or => {
                want(a, &Sort::Bool)?;
                want(b, &Sort::Bool)?;
                Ok(Sort::Bool)
            }
        },
        PExpr::Read(a, i) => {
            let s = type_of(a, vars)?;
            let Some((_, v)) = s.as_array() else {
                return err(format!("`{a}` is not an array"));
            };
            want(i, &Sort::Int)?;
            Ok(v.clone())
        }
        PExpr::Write(a, i, v) => {
            let s = type_of(a, vars)?;
            let Some((_, vs)) = s.as_array() else {
                return err(format!("`{a}` is not an array"));
            };
            want(i, &Sort::Int)?;
            want(v, vs)?;
            Ok(s)
        }
    }
}

/// Parses declarations and statements.
pub fn parse_program(src: &str) -> Result<ProgramFile, ProgramError> {
    let lexer = lex(src)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        vars: Vec::new(),
    };
    while p.eat("var") {
        let mut names = vec![p.ident()?];
        while p.eat(",") {
            names.push(p.ident()?);
        }
        p.expect(":")?;
        let s = p.sort()?;
        p.expect(";")?;
        for n in names {
            if p.vars.iter().any(|(m, _)| *m == n) {
                return p.err(format!("duplicate declaration of `{n}`"));
            }
            p.vars.push((n, s.clone()));
        }
    }
    let body = p.statements("")?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {:?}", p.peek()));
    }
    Ok(ProgramFile { vars: p.vars, body })
}
