//! TFF parser with the FOOL extensions. Parsing builds an untyped tree
//! which is then elaborated against the signature.

use std::path::{Path, PathBuf};

use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::logic::{
    Binding, Builtin, Expr, LogicError, Origin, Problem, Quantifier, Role, Signature, Sort, Symbol,
    SymbolKind, TypeDecl, Unit, UnitContent, Var,
};

/// Input language accepted by the parser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Dialect {
    /// TFF with the boolean sort, `$ite` and `$let`.
    #[default]
    Fool,
    /// Plain typed first-order TFF0: no formulas in term positions, no
    /// quantification over `$o`, and `$$`-prefixed symbols allowed.
    StrictTff0,
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub dialect: Dialect,
    /// Directory used to resolve relative includes before `$TPTP`.
    pub base_dir: Option<PathBuf>,
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    parse_problem_with(text, &ParseOptions::default())
}

pub fn parse_problem_with(text: &str, opts: &ParseOptions) -> Result<Problem, ParseError> {
    parse_into(text, opts, Problem::default())
}

/// Parses `text` appending to `problem`, whose signature may be pre-seeded.
pub fn parse_into(
    text: &str,
    opts: &ParseOptions,
    mut problem: Problem,
) -> Result<Problem, ParseError> {
    let mut conj = problem.conjecture().is_some();
    parse_units(text, opts, &mut problem, &mut conj, None)?;
    Ok(problem)
}

pub fn parse_file(path: &Path, opts: &ParseOptions) -> Result<Problem, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut o = opts.clone();
    if o.base_dir.is_none() {
        o.base_dir = path.parent().map(Path::to_path_buf);
    }
    parse_problem_with(&text, &o)
}

type Pos = (usize, usize);

#[derive(Clone, Debug)]
enum RawSort {
    Name(String, Pos),
    Array(Box<RawSort>, Box<RawSort>),
}

#[derive(Clone, Debug)]
enum RawType {
    TType,
    Fun(Vec<RawSort>, RawSort),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Functor {
    Plain,
    Quoted,
    Dollar,
    DollarDollar,
    Number,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum BinOp {
    Implies,
    RevImplies,
    Iff,
    Xor,
    Nor,
    Nand,
}

type RawVar = (String, Option<RawSort>, Pos);

#[derive(Clone, Debug)]
struct RawBinding {
    head: String,
    params: Vec<RawVar>,
    body: Raw,
    at: Pos,
}

#[derive(Clone, Debug)]
enum Raw {
    Var(String, Pos),
    Fun(String, Functor, Vec<Raw>, Pos),
    Eq(Box<Raw>, Box<Raw>, bool, Pos),
    Not(Box<Raw>),
    Bin(BinOp, Box<Raw>, Box<Raw>),
    Assoc(bool, Vec<Raw>),
    Quant(Quantifier, Vec<RawVar>, Box<Raw>),
    Ite(Box<Raw>, Box<Raw>, Box<Raw>, Pos),
    Let(Vec<RawBinding>, Box<Raw>, Pos),
}

impl Raw {
    fn pos(&self) -> Pos {
        match self {
            Raw::Var(_, p) | Raw::Fun(_, _, _, p) | Raw::Eq(_, _, _, p) => *p,
            Raw::Ite(.., p) | Raw::Let(.., p) => *p,
            Raw::Not(x) | Raw::Bin(_, x, _) | Raw::Quant(_, _, x) => x.pos(),
            Raw::Assoc(_, xs) => xs[0].pos(),
        }
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    i: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        let t = &self.toks[self.i];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = &self.toks[self.i];
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{}`", t.describe())))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            Tok::Lower(s) | Tok::Quoted(s) | Tok::Integer(s) => Ok(s),
            _ => {
                self.i -= 1;
                Err(self.error("a name"))
            }
        }
    }

    fn formula(&mut self) -> Result<Raw, ParseError> {
        let l = self.disjunction()?;
        let op = match self.peek() {
            Tok::Implies => BinOp::Implies,
            Tok::RevImplies => BinOp::RevImplies,
            Tok::Iff => BinOp::Iff,
            Tok::Xor => BinOp::Xor,
            Tok::Nor => BinOp::Nor,
            Tok::Nand => BinOp::Nand,
            _ => return Ok(l),
        };
        self.bump();
        let r = self.disjunction()?;
        Ok(Raw::Bin(op, Box::new(l), Box::new(r)))
    }

    fn disjunction(&mut self) -> Result<Raw, ParseError> {
        self.assoc(Tok::Or, false)
    }

    fn assoc(&mut self, sep: Tok, and: bool) -> Result<Raw, ParseError> {
        let first = if and {
            self.unary()?
        } else {
            self.assoc(Tok::And, true)?
        };
        if *self.peek() != sep {
            return Ok(first);
        }
        let mut xs = vec![first];
        while self.eat(&sep) {
            xs.push(if and {
                self.unary()?
            } else {
                self.assoc(Tok::And, true)?
            });
        }
        Ok(Raw::Assoc(and, xs))
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Raw::Not(Box::new(self.unary()?)))
            }
            Tok::Forall | Tok::Exists => {
                let q = if self.bump() == Tok::Forall {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                self.expect(Tok::LBracket)?;
                let vars = self.var_list(Tok::RBracket)?;
                self.expect(Tok::Colon)?;
                let body = self.unary()?;
                Ok(Raw::Quant(q, vars, Box::new(body)))
            }
            _ => self.equation(),
        }
    }

    fn var_list(&mut self, close: Tok) -> Result<Vec<RawVar>, ParseError> {
        let mut vars = Vec::new();
        loop {
            let at = self.pos();
            let name = match self.bump() {
                Tok::Upper(s) => s,
                _ => {
                    self.i -= 1;
                    return Err(self.error("a variable"));
                }
            };
            let sort = if self.eat(&Tok::Colon) {
                Some(self.sort()?)
            } else {
                None
            };
            vars.push((name, sort, at));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(close)?;
        Ok(vars)
    }

    fn equation(&mut self) -> Result<Raw, ParseError> {
        let l = self.atomic()?;
        let neg = match self.peek() {
            Tok::Eq => false,
            Tok::Neq => true,
            _ => return Ok(l),
        };
        let at = self.pos();
        self.bump();
        let r = self.atomic()?;
        Ok(Raw::Eq(Box::new(l), Box::new(r), neg, at))
    }

    fn args(&mut self) -> Result<Vec<Raw>, ParseError> {
        if !self.eat(&Tok::LParen) {
            return Ok(Vec::new());
        }
        let mut xs = vec![self.formula()?];
        while self.eat(&Tok::Comma) {
            xs.push(self.formula()?);
        }
        self.expect(Tok::RParen)?;
        Ok(xs)
    }

    fn atomic(&mut self) -> Result<Raw, ParseError> {
        let at = self.pos();
        match self.bump() {
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Upper(v) => Ok(Raw::Var(v, at)),
            Tok::Lower(f) => Ok(Raw::Fun(f, Functor::Plain, self.args()?, at)),
            Tok::Quoted(f) => Ok(Raw::Fun(f, Functor::Quoted, self.args()?, at)),
            Tok::Integer(n) => Ok(Raw::Fun(n, Functor::Number, Vec::new(), at)),
            Tok::DollarDollar(f) => Ok(Raw::Fun(f, Functor::DollarDollar, self.args()?, at)),
            Tok::Dollar(f) => self.dollar(f, at),
            _ => {
                self.i -= 1;
                Err(self.error("a term or formula"))
            }
        }
    }

    fn dollar(&mut self, f: String, at: Pos) -> Result<Raw, ParseError> {
        match f.as_str() {
            "$ite" | "$ite_f" | "$ite_t" => {
                let mut xs = self.args()?;
                if xs.len() != 3 {
                    return Err(ParseError::Syntax {
                        line: at.0,
                        col: at.1,
                        expected: format!("three arguments to {f}"),
                        found: format!("{} argument(s)", xs.len()),
                    });
                }
                let b = xs.pop().unwrap();
                let a = xs.pop().unwrap();
                let c = xs.pop().unwrap();
                Ok(Raw::Ite(Box::new(c), Box::new(a), Box::new(b), at))
            }
            "$let" => {
                self.expect(Tok::LParen)?;
                let mut bindings = vec![self.binding()?];
                while self.eat(&Tok::Semicolon) {
                    bindings.push(self.binding()?);
                }
                self.expect(Tok::Comma)?;
                let body = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(Raw::Let(bindings, Box::new(body), at))
            }
            "$let_tt" | "$let_tf" | "$let_ft" | "$let_ff" => {
                self.expect(Tok::LParen)?;
                let def = self.formula()?;
                self.expect(Tok::Comma)?;
                let body = self.formula()?;
                self.expect(Tok::RParen)?;
                let b = legacy_binding(def, at)?;
                Ok(Raw::Let(vec![b], Box::new(body), at))
            }
            _ => Ok(Raw::Fun(f, Functor::Dollar, self.args()?, at)),
        }
    }

    fn binding(&mut self) -> Result<RawBinding, ParseError> {
        let at = self.pos();
        let head = self.name()?;
        let params = if self.eat(&Tok::LParen) {
            self.var_list(Tok::RParen)?
        } else {
            Vec::new()
        };
        self.expect(Tok::Assign)?;
        let body = self.formula()?;
        Ok(RawBinding {
            head,
            params,
            body,
            at,
        })
    }

    fn sort(&mut self) -> Result<RawSort, ParseError> {
        let at = self.pos();
        match self.bump() {
            Tok::Dollar(s) if s == "$array" => {
                self.expect(Tok::LParen)?;
                let i = self.sort()?;
                self.expect(Tok::Comma)?;
                let v = self.sort()?;
                self.expect(Tok::RParen)?;
                Ok(RawSort::Array(Box::new(i), Box::new(v)))
            }
            Tok::Dollar(s) | Tok::DollarDollar(s) | Tok::Lower(s) | Tok::Quoted(s) => {
                Ok(RawSort::Name(s, at))
            }
            Tok::LParen => {
                let s = self.sort()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            _ => {
                self.i -= 1;
                Err(self.error("a sort"))
            }
        }
    }

    fn type_expr(&mut self) -> Result<RawType, ParseError> {
        if let Tok::Dollar(s) = self.peek() {
            if s == "$tType" {
                self.bump();
                return Ok(RawType::TType);
            }
        }
        if *self.peek() == Tok::LParen && !matches!(self.peek_at(1), Tok::LParen) {
            // `(s1 * ... * sn) > s` or a parenthesised type
            let save = self.i;
            self.bump();
            let first = self.sort()?;
            if *self.peek() == Tok::Star
                || (*self.peek() == Tok::RParen && *self.peek_at(1) == Tok::Arrow)
            {
                let mut args = vec![first];
                while self.eat(&Tok::Star) {
                    args.push(self.sort()?);
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Arrow)?;
                let res = self.sort()?;
                return Ok(RawType::Fun(args, res));
            }
            self.i = save;
        }
        if *self.peek() == Tok::LParen {
            self.bump();
            let t = self.type_expr()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        let s = self.sort()?;
        if self.eat(&Tok::Arrow) {
            let res = self.sort()?;
            return Ok(RawType::Fun(vec![s], res));
        }
        Ok(RawType::Fun(Vec::new(), s))
    }

    /// `name : type`, optionally parenthesised. Returns `None` for the name
    /// when the declaration omits it.
    fn type_decl(&mut self) -> Result<(Option<String>, RawType), ParseError> {
        let named = |p: &Parser| {
            matches!(
                p.peek(),
                Tok::Lower(_) | Tok::Quoted(_) | Tok::DollarDollar(_)
            ) && *p.peek_at(1) == Tok::Colon
        };
        if named(self) {
            let name = match self.bump() {
                Tok::Lower(s) | Tok::Quoted(s) | Tok::DollarDollar(s) => s,
                _ => unreachable!(),
            };
            self.bump();
            return Ok((Some(name), self.type_expr()?));
        }
        if *self.peek() == Tok::LParen {
            let save = self.i;
            self.bump();
            if named(self) {
                let r = self.type_decl()?;
                self.expect(Tok::RParen)?;
                return Ok(r);
            }
            self.i = save;
        }
        Ok((None, self.type_expr()?))
    }

    /// Skips one annotation term (balanced brackets).
    fn skip_term(&mut self) -> Result<(), ParseError> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                Tok::Eof => return Err(self.error("`)`")),
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket if depth == 0 => return Ok(()),
                Tok::RParen | Tok::RBracket => depth -= 1,
                Tok::Comma if depth == 0 => return Ok(()),
                _ => {}
            }
            self.bump();
        }
    }
}

/// Converts a legacy `$let_xx` definition `![X..]: (f(X..) = s)` or
/// `![X..]: (p(X..) <=> s)` into a binding.
fn legacy_binding(def: Raw, at: Pos) -> Result<RawBinding, ParseError> {
    let bad = |what: &str| ParseError::Syntax {
        line: at.0,
        col: at.1,
        expected: "a definition `![X..]: (f(X..) = s)` or `p(X..) <=> s`".into(),
        found: what.to_string(),
    };
    let (qvars, inner) = match def {
        Raw::Quant(Quantifier::Forall, vs, b) => (vs, *b),
        other => (Vec::new(), other),
    };
    let (lhs, rhs) = match inner {
        Raw::Eq(l, r, false, _) => (*l, *r),
        Raw::Bin(BinOp::Iff, l, r) => (*l, *r),
        _ => return Err(bad("another formula")),
    };
    let (head, args, hat) = match lhs {
        Raw::Fun(f, Functor::Plain | Functor::Quoted, args, p) => (f, args, p),
        _ => return Err(bad("a non-symbol definiendum")),
    };
    let mut params = Vec::new();
    for a in args {
        match a {
            Raw::Var(v, p) => {
                let sort = qvars.iter().find(|q| q.0 == v).and_then(|q| q.1.clone());
                params.push((v, sort, p));
            }
            _ => return Err(bad("a non-variable argument in the definiendum")),
        }
    }
    Ok(RawBinding {
        head,
        params,
        body: rhs,
        at: hat,
    })
}

fn map_role(r: &str) -> Role {
    match r {
        "conjecture" => Role::Conjecture,
        "hypothesis" | "negated_conjecture" => Role::Hypothesis,
        "type" => Role::Type,
        _ => Role::Axiom,
    }
}

fn parse_units(
    text: &str,
    opts: &ParseOptions,
    problem: &mut Problem,
    has_conjecture: &mut bool,
    only: Option<&[String]>,
) -> Result<(), ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, i: 0 };
    loop {
        let at = p.pos();
        let kw = match p.bump() {
            Tok::Eof => return Ok(()),
            Tok::Lower(k) => k,
            _ => {
                p.i -= 1;
                return Err(p.error("`tff`, `fof`, `cnf` or `include`"));
            }
        };
        match kw.as_str() {
            "include" => {
                p.expect(Tok::LParen)?;
                let file = match p.bump() {
                    Tok::Quoted(f) => f,
                    _ => {
                        p.i -= 1;
                        return Err(p.error("a quoted file name"));
                    }
                };
                let mut names = None;
                if p.eat(&Tok::Comma) {
                    p.expect(Tok::LBracket)?;
                    let mut ns = Vec::new();
                    while *p.peek() != Tok::RBracket {
                        ns.push(p.name()?);
                        if !p.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    p.expect(Tok::RBracket)?;
                    names = Some(ns);
                }
                p.expect(Tok::RParen)?;
                p.expect(Tok::Dot)?;
                let path = resolve_include(&file, opts).ok_or_else(|| ParseError::Io {
                    path: file.clone(),
                    msg: "include not found".into(),
                })?;
                let sub = std::fs::read_to_string(&path).map_err(|e| ParseError::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })?;
                let mut o = opts.clone();
                o.base_dir = path.parent().map(Path::to_path_buf);
                parse_units(&sub, &o, problem, has_conjecture, names.as_deref())?;
            }
            "tff" | "fof" | "cnf" => {
                p.expect(Tok::LParen)?;
                let name = p.name()?;
                p.expect(Tok::Comma)?;
                let role_name = match p.bump() {
                    Tok::Lower(r) => r,
                    _ => {
                        p.i -= 1;
                        return Err(p.error("a role"));
                    }
                };
                p.expect(Tok::Comma)?;
                let role = map_role(&role_name);
                let unit_at = p.pos();
                let content = if role == Role::Type {
                    let (sym, ty) = p.type_decl()?;
                    RawUnit::Type(sym.unwrap_or_else(|| name.clone()), ty)
                } else {
                    RawUnit::Formula(p.formula()?)
                };
                while p.eat(&Tok::Comma) {
                    p.skip_term()?;
                }
                p.expect(Tok::RParen)?;
                p.expect(Tok::Dot)?;
                if let Some(names) = only {
                    if role != Role::Type && !names.contains(&name) {
                        continue;
                    }
                }
                if role == Role::Conjecture {
                    if *has_conjecture {
                        return Err(ParseError::Syntax {
                            line: at.0,
                            col: at.1,
                            expected: "at most one conjecture".into(),
                            found: format!("conjecture `{name}`"),
                        });
                    }
                    *has_conjecture = true;
                }
                let unit = {
                    let mut el = Elaborator {
                        sig: &mut problem.signature,
                        dialect: opts.dialect,
                        vars: Vec::new(),
                        lets: Vec::new(),
                        implicit: if kw == "cnf" { Some(Vec::new()) } else { None },
                        at: unit_at,
                    };
                    el.unit(name, role, content)?
                };
                problem.units.push(unit);
            }
            "thf" => {
                return Err(ParseError::Syntax {
                    line: at.0,
                    col: at.1,
                    expected: "a tff unit (convert thf input with thf2tff first)".into(),
                    found: "thf".into(),
                })
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: at.0,
                    col: at.1,
                    expected: "`tff`, `fof`, `cnf` or `include`".into(),
                    found: kw,
                })
            }
        }
    }
}

fn resolve_include(file: &str, opts: &ParseOptions) -> Option<PathBuf> {
    let mut cands = Vec::new();
    if let Some(d) = &opts.base_dir {
        cands.push(d.join(file));
    }
    cands.push(PathBuf::from(file));
    if let Ok(t) = std::env::var("TPTP") {
        cands.push(Path::new(&t).join(file));
    }
    cands.into_iter().find(|c| c.is_file())
}

enum RawUnit {
    Type(String, RawType),
    Formula(Raw),
}

struct Elaborator<'s> {
    sig: &'s mut Signature,
    dialect: Dialect,
    vars: Vec<Var>,
    lets: Vec<Symbol>,
    /// Free variables collected in `cnf` units, which are implicitly universal.
    implicit: Option<Vec<Var>>,
    at: Pos,
}

fn deprecated_array(name: &str) -> bool {
    ["$array", "$select", "$store"].iter().any(|p| {
        name.strip_prefix(p)
            .is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
    })
}

impl Elaborator<'_> {
    fn strict(&self) -> bool {
        self.dialect == Dialect::StrictTff0
    }

    fn logic(&self, at: Pos, e: LogicError) -> ParseError {
        ParseError::Logic {
            line: at.0,
            col: at.1,
            source: e,
        }
    }

    fn syntax(&self, at: Pos, expected: &str, found: &str) -> ParseError {
        ParseError::Syntax {
            line: at.0,
            col: at.1,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    fn mismatch(&self, at: Pos, expected: &Sort, found: &Sort) -> ParseError {
        self.logic(
            at,
            LogicError::SortMismatch {
                path: format!("{}:{}", at.0, at.1),
                expected: expected.clone(),
                found: found.clone(),
            },
        )
    }

    fn unit(&mut self, name: String, role: Role, content: RawUnit) -> Result<Unit, ParseError> {
        match content {
            RawUnit::Type(sym, RawType::TType) => {
                if self.dialect == Dialect::Fool && sym.starts_with("$$") {
                    return Err(self.syntax(self.at, "a sort name", &sym));
                }
                self.sig
                    .declare_sort(&sym)
                    .map_err(|e| self.logic(self.at, e))?;
                Ok(Unit::sort_decl(name, &sym))
            }
            RawUnit::Type(sym, RawType::Fun(args, res)) => {
                if self.dialect == Dialect::Fool && sym.starts_with("$$") {
                    return Err(self.syntax(self.at, "a symbol name", &sym));
                }
                let mut asorts = Vec::new();
                for a in &args {
                    let s = self.sort(a)?;
                    if self.strict() && s.is_bool() {
                        return Err(self.syntax(
                            self.at,
                            "a non-boolean argument sort in TFF0",
                            "$o",
                        ));
                    }
                    asorts.push(s);
                }
                let rs = self.sort(&res)?;
                let kind = match Origin::parse_fresh_name(&sym) {
                    Some((o, _)) => SymbolKind::Fresh(o),
                    None if rs.is_bool() => SymbolKind::UserPredicate,
                    None => SymbolKind::UserFunction,
                };
                let s = Symbol::new(&sym, asorts, rs, kind);
                self.sig
                    .declare_symbol(s.clone())
                    .map_err(|e| self.logic(self.at, e))?;
                Ok(Unit::symbol_decl(name, s))
            }
            RawUnit::Formula(raw) => {
                let mut e = self.elab(&raw, Some(&Sort::Bool))?;
                if let Some(vs) = self.implicit.take() {
                    e = Expr::forall(vs, e);
                }
                Ok(Unit {
                    name,
                    role,
                    content: UnitContent::Formula(e),
                })
            }
        }
    }

    fn sort(&self, r: &RawSort) -> Result<Sort, ParseError> {
        match r {
            RawSort::Array(i, v) => Ok(Sort::array(self.sort(i)?, self.sort(v)?)),
            RawSort::Name(n, at) => match n.as_str() {
                "$o" => Ok(Sort::Bool),
                "$i" => Ok(Sort::Individual),
                "$int" => Ok(Sort::Int),
                _ if deprecated_array(n) => Err(self.syntax(
                    *at,
                    "a supported sort (the numbered array sorts were replaced by `$array(I, V)`)",
                    n,
                )),
                _ if n.starts_with("$$") && self.dialect == Dialect::Fool => {
                    Err(self.syntax(*at, "a sort (`$$` sorts are not part of FOOL input)", n))
                }
                _ if n.starts_with('$') && !n.starts_with("$$") => {
                    Err(self.syntax(*at, "`$o`, `$i`, `$int` or `$array`", n))
                }
                _ if self.sig.has_sort(n) => Ok(Sort::named(n)),
                _ => Err(self.logic(*at, LogicError::UndeclaredSymbol(n.clone()))),
            },
        }
    }

    fn check(&self, at: Pos, got: Sort, expected: Option<&Sort>) -> Result<Sort, ParseError> {
        match expected {
            Some(s) if *s != got => Err(self.mismatch(at, s, &got)),
            _ => Ok(got),
        }
    }

    fn lookup_symbol(&self, name: &str) -> Option<Symbol> {
        self.lets
            .iter()
            .rev()
            .find(|s| s.name() == name)
            .cloned()
            .or_else(|| self.sig.lookup(name).cloned())
    }

    fn is_flexible(&self, r: &Raw) -> bool {
        match r {
            Raw::Fun(f, Functor::Plain | Functor::Quoted, _, _) => self.lookup_symbol(f).is_none(),
            _ => false,
        }
    }

    fn bind_vars(&mut self, vs: &[RawVar]) -> Result<Vec<Var>, ParseError> {
        let mut out = Vec::new();
        for (name, s, at) in vs {
            let sort = match s {
                Some(s) => self.sort(s)?,
                None => Sort::Individual,
            };
            if self.strict() && sort.is_bool() {
                return Err(self.syntax(*at, "a non-boolean variable sort in TFF0", "$o"));
            }
            out.push(Var::new(name, sort));
        }
        Ok(out)
    }

    fn argument(&mut self, r: &Raw, expected: Option<&Sort>) -> Result<Expr, ParseError> {
        let e = self.elab(r, expected)?;
        if self.strict() && e.sort().is_bool() {
            return Err(self.syntax(
                r.pos(),
                "a term (formulas are not arguments in TFF0)",
                "a formula",
            ));
        }
        Ok(e)
    }

    fn elab(&mut self, r: &Raw, expected: Option<&Sort>) -> Result<Expr, ParseError> {
        match r {
            Raw::Var(name, at) => {
                let v = match self.vars.iter().rev().find(|v| &*v.name == name) {
                    Some(v) => v.clone(),
                    None => match &mut self.implicit {
                        Some(vs) => {
                            let v = match vs.iter().find(|v| &*v.name == name) {
                                Some(v) => v.clone(),
                                None => {
                                    let v = Var::new(name, Sort::Individual);
                                    vs.push(v.clone());
                                    v
                                }
                            };
                            v
                        }
                        None => {
                            return Err(self.logic(*at, LogicError::UndeclaredSymbol(name.clone())))
                        }
                    },
                };
                self.check(*at, v.sort.clone(), expected)?;
                Ok(Expr::Var(v))
            }
            Raw::Fun(name, kind, args, at) => self.application(name, *kind, args, *at, expected),
            Raw::Eq(l, rr, neg, at) => {
                self.check(*at, Sort::Bool, expected)?;
                let (le, re) = if self.is_flexible(l) && !self.is_flexible(rr) {
                    let re = self.elab(rr, None)?;
                    let le = self.elab(l, Some(&re.sort()))?;
                    (le, re)
                } else {
                    let le = self.elab(l, None)?;
                    let re = self.elab(rr, Some(&le.sort()))?;
                    (le, re)
                };
                if self.strict() && le.sort().is_bool() {
                    return Err(self.syntax(
                        *at,
                        "an equation between terms in TFF0",
                        "an equation between formulas",
                    ));
                }
                let e = Expr::eq(le, re);
                Ok(if *neg { Expr::not(e) } else { e })
            }
            Raw::Not(x) => {
                self.check(x.pos(), Sort::Bool, expected)?;
                Ok(Expr::not(self.elab(x, Some(&Sort::Bool))?))
            }
            Raw::Bin(op, a, b) => {
                self.check(a.pos(), Sort::Bool, expected)?;
                let x = self.elab(a, Some(&Sort::Bool))?;
                let y = self.elab(b, Some(&Sort::Bool))?;
                Ok(match op {
                    BinOp::Implies => Expr::implies(x, y),
                    BinOp::RevImplies => Expr::implies(y, x),
                    BinOp::Iff => Expr::iff(x, y),
                    BinOp::Xor => Expr::xor(x, y),
                    BinOp::Nor => Expr::not(Expr::or(vec![x, y])),
                    BinOp::Nand => Expr::not(Expr::and(vec![x, y])),
                })
            }
            Raw::Assoc(and, xs) => {
                self.check(xs[0].pos(), Sort::Bool, expected)?;
                let mut es = Vec::new();
                for x in xs {
                    es.push(self.elab(x, Some(&Sort::Bool))?);
                }
                Ok(if *and { Expr::and(es) } else { Expr::or(es) })
            }
            Raw::Quant(q, vs, body) => {
                self.check(body.pos(), Sort::Bool, expected)?;
                let vars = self.bind_vars(vs)?;
                let n = self.vars.len();
                self.vars.extend(vars.iter().cloned());
                let b = self.elab(body, Some(&Sort::Bool));
                self.vars.truncate(n);
                Ok(Expr::Quant(*q, vars, Box::new(b?)))
            }
            Raw::Ite(c, a, b, at) => {
                if self.strict() {
                    return Err(self.syntax(*at, "a TFF0 construct", "$ite"));
                }
                let ce = self.elab(c, Some(&Sort::Bool))?;
                let (ae, be) = if expected.is_none() && self.is_flexible(a) && !self.is_flexible(b)
                {
                    let be = self.elab(b, None)?;
                    let ae = self.elab(a, Some(&be.sort()))?;
                    (ae, be)
                } else {
                    let ae = self.elab(a, expected)?;
                    let be = self.elab(b, Some(&ae.sort()))?;
                    (ae, be)
                };
                Ok(Expr::ite(ce, ae, be))
            }
            Raw::Let(bs, body, at) => {
                if self.strict() {
                    return Err(self.syntax(*at, "a TFF0 construct", "$let"));
                }
                let mut out = Vec::new();
                for b in bs {
                    if out.iter().any(|o: &Binding| o.head.name() == b.head) {
                        return Err(
                            self.logic(b.at, LogicError::DuplicateDeclaration(b.head.clone()))
                        );
                    }
                    let params = self.bind_vars(&b.params)?;
                    for (k, p) in params.iter().enumerate() {
                        if params[..k].iter().any(|q| q.name == p.name) {
                            return Err(self.logic(
                                b.at,
                                LogicError::DuplicateDeclaration(p.name.to_string()),
                            ));
                        }
                    }
                    let n = self.vars.len();
                    self.vars.extend(params.iter().cloned());
                    let e = self.elab(&b.body, None);
                    self.vars.truncate(n);
                    let e = e?;
                    let head = Symbol::user(
                        &b.head,
                        params.iter().map(|p| p.sort.clone()).collect(),
                        e.sort(),
                    );
                    out.push(Binding {
                        head,
                        params,
                        body: e,
                    });
                }
                let n = self.lets.len();
                self.lets.extend(out.iter().map(|b| b.head.clone()));
                let t = self.elab(body, expected);
                self.lets.truncate(n);
                Ok(Expr::let_in(out, t?))
            }
        }
    }

    fn application(
        &mut self,
        name: &str,
        kind: Functor,
        args: &[Raw],
        at: Pos,
        expected: Option<&Sort>,
    ) -> Result<Expr, ParseError> {
        match kind {
            Functor::Number => {
                let n: i64 = name
                    .parse()
                    .map_err(|_| self.syntax(at, "an integer in the 64-bit range", name))?;
                self.check(at, Sort::Int, expected)?;
                Ok(Expr::numeral(n))
            }
            Functor::DollarDollar if self.dialect == Dialect::Fool => Err(self.syntax(
                at,
                "FOOL syntax (`$o`, `$true`, `$false`) instead of a `$$` symbol",
                name,
            )),
            Functor::Dollar => self.interpreted(name, args, at, expected),
            _ => {
                let sym = match self.lookup_symbol(name) {
                    Some(s) => s,
                    None => return self.default_typed(name, kind, args, at, expected),
                };
                if sym.arity() != args.len() {
                    return Err(self.logic(
                        at,
                        LogicError::ArityMismatch {
                            symbol: name.to_string(),
                            expected: sym.arity(),
                            found: args.len(),
                        },
                    ));
                }
                let mut es = Vec::new();
                for (a, s) in args.iter().zip(sym.args()) {
                    es.push(self.argument(a, Some(s))?);
                }
                self.check(at, sym.result().clone(), expected)?;
                Ok(Expr::app(sym, es))
            }
        }
    }

    fn default_typed(
        &mut self,
        name: &str,
        kind: Functor,
        args: &[Raw],
        at: Pos,
        expected: Option<&Sort>,
    ) -> Result<Expr, ParseError> {
        let result = match expected {
            Some(Sort::Bool) => Sort::Bool,
            None | Some(Sort::Individual) => Sort::Individual,
            Some(_) => return Err(self.logic(at, LogicError::UndeclaredSymbol(name.to_string()))),
        };
        let mut es = Vec::new();
        for a in args {
            let e = if self.is_flexible(a) {
                self.argument(a, Some(&Sort::Individual))?
            } else {
                self.argument(a, None)?
            };
            es.push(e);
        }
        let sorts = es.iter().map(Expr::sort).collect();
        let sym = match (kind, Origin::parse_fresh_name(name)) {
            (Functor::Quoted, Some((o, _))) => {
                Symbol::new(name, sorts, result, SymbolKind::Fresh(o))
            }
            _ => Symbol::user(name, sorts, result),
        };
        self.sig
            .declare_symbol(sym.clone())
            .map_err(|e| self.logic(at, e))?;
        Ok(Expr::app(sym, es))
    }

    fn interpreted(
        &mut self,
        name: &str,
        args: &[Raw],
        at: Pos,
        expected: Option<&Sort>,
    ) -> Result<Expr, ParseError> {
        let arity = |n: usize, this: &Self| {
            if args.len() == n {
                Ok(())
            } else {
                Err(this.logic(
                    at,
                    LogicError::ArityMismatch {
                        symbol: name.to_string(),
                        expected: n,
                        found: args.len(),
                    },
                ))
            }
        };
        match name {
            "$true" | "$false" => {
                arity(0, self)?;
                self.check(at, Sort::Bool, expected)?;
                Ok(Expr::bool_const(name == "$true"))
            }
            "$select" | "$store" => {
                let n = if name == "$select" { 2 } else { 3 };
                arity(n, self)?;
                let arr = self.argument(&args[0], None)?;
                let asort = arr.sort();
                let Some((isort, vsort)) = asort.as_array() else {
                    return Err(self.mismatch(
                        args[0].pos(),
                        &Sort::array(Sort::Individual, Sort::Individual),
                        &asort,
                    ));
                };
                let (isort, vsort) = (isort.clone(), vsort.clone());
                let idx = self.argument(&args[1], Some(&isort))?;
                if n == 2 {
                    self.check(at, vsort, expected)?;
                    Ok(Expr::app(Symbol::select(&asort).unwrap(), vec![arr, idx]))
                } else {
                    let val = self.argument(&args[2], Some(&vsort))?;
                    self.check(at, asort.clone(), expected)?;
                    Ok(Expr::app(Symbol::store(&asort).unwrap(), vec![arr, idx, val]))
                }
            }
            _ if deprecated_array(name) => Err(self.syntax(
                at,
                "`$select`/`$store` on `$array(I, V)` (numbered array symbols are no longer supported)",
                name,
            )),
            _ => {
                let Some((b, asorts, rsort)) = Builtin::arithmetic(name) else {
                    return Err(self.syntax(at, "a supported interpreted symbol", name));
                };
                arity(asorts.len(), self)?;
                let mut es = Vec::new();
                for (a, s) in args.iter().zip(&asorts) {
                    es.push(self.argument(a, Some(s))?);
                }
                self.check(at, rsort.clone(), expected)?;
                Ok(Expr::app(Symbol::builtin(b, asorts, rsort), es))
            }
        }
    }
}

/// Symbols declared by type units, in order.
pub fn declared_symbols(p: &Problem) -> Vec<Symbol> {
    p.units
        .iter()
        .filter_map(|u| match &u.content {
            UnitContent::Type(TypeDecl::Symbol(s)) => Some(s.clone()),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{alpha_equal, sort_of, Connective};

    fn formula(p: &Problem, name: &str) -> Expr {
        p.unit(name).unwrap().as_formula().unwrap().clone()
    }

    #[test]
    fn parses_declarations_and_default_types() {
        let p = parse_problem(
            "tff(person, type, person: $tType).\n\
             tff(says, type, says: (person * $o) > $o).\n\
             tff(a, axiom, ![P:person, S:$o]: (says(P, S) => S)).\n\
             tff(b, axiom, q(c)).",
        )
        .unwrap();
        assert!(p.signature.has_sort("person"));
        let q = p.signature.lookup("q").unwrap();
        assert_eq!(q.args(), &[Sort::Individual]);
        assert_eq!(q.result(), &Sort::Bool);
        assert_eq!(p.signature.lookup("c").unwrap().result(), &Sort::Individual);
        for u in p.formulas() {
            assert_eq!(
                sort_of(u.as_formula().unwrap(), &p.signature).unwrap(),
                Sort::Bool
            );
        }
    }

    #[test]
    fn precedence() {
        let p = parse_problem("tff(a, axiom, a & b | c => d).").unwrap();
        match formula(&p, "a") {
            Expr::Conn(Connective::Implies, xs) => match &xs[0] {
                Expr::Conn(Connective::Or, ys) => {
                    assert!(matches!(ys[0], Expr::Conn(Connective::And, _)))
                }
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn formulas_as_arguments() {
        let p = parse_problem(
            "tff(i, type, impl: ($o * $o) > $o).\n\
             tff(a, axiom, ![X:$o]: impl(X & p, ~X)).",
        )
        .unwrap();
        assert!(sort_of(&formula(&p, "a"), &p.signature).is_ok());
    }

    #[test]
    fn let_and_ite() {
        let p = parse_problem(
            "tff(f, type, f: ($i * $i) > $o).\n\
             tff(a, axiom, $let(a := b; b := a, f(a, b))).\n\
             tff(m, type, max: ($int * $int) > $int).\n\
             tff(d, axiom, ![X:$int, Y:$int]: (max(X, Y) = $ite($greatereq(X, Y), X, Y))).",
        )
        .unwrap();
        match formula(&p, "a") {
            Expr::Let(bs, _) => {
                assert_eq!(bs.len(), 2);
                assert_eq!(bs[0].head.name(), "a");
            }
            other => panic!("{other:?}"),
        }
        assert!(sort_of(&formula(&p, "d"), &p.signature).is_ok());
    }

    #[test]
    fn legacy_forms_normalise() {
        let legacy = parse_problem(
            "tff(p, type, p: ($i * $i) > $o).\n\
             tff(a, axiom, $let_tt(![Z:$i]: (f(Z) = Z), p(f(a), a))).",
        )
        .unwrap();
        let modern = parse_problem(
            "tff(p, type, p: ($i * $i) > $o).\n\
             tff(a, axiom, $let(f(Z) := Z, p(f(a), a))).",
        )
        .unwrap();
        assert!(alpha_equal(&formula(&legacy, "a"), &formula(&modern, "a")));
    }

    #[test]
    fn rejects_old_array_syntax_and_dollar_dollar() {
        let e = parse_problem("tff(a, type, a: $array1).").unwrap_err();
        assert!(e.to_string().contains("$array("), "{e}");
        let e = parse_problem("tff(a, axiom, p($$true)).").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { .. }));
    }

    #[test]
    fn sort_errors() {
        let e = parse_problem(
            "tff(c, type, c: $int).\n\
             tff(a, axiom, p(c) & c).",
        )
        .unwrap_err();
        assert!(
            matches!(e.logic(), Some(LogicError::SortMismatch { .. })),
            "{e}"
        );
        let e = parse_problem("tff(a, axiom, ![X:foo]: p(X)).").unwrap_err();
        assert!(matches!(e.logic(), Some(LogicError::UndeclaredSymbol(_))));
        let e = parse_problem("tff(a, type, c: $int). tff(b, type, c: $i).").unwrap_err();
        assert!(matches!(
            e.logic(),
            Some(LogicError::DuplicateDeclaration(_))
        ));
    }

    #[test]
    fn arrays_typed_from_argument() {
        let p = parse_problem(
            "tff(a, type, arr: $array($int, $o)).\n\
             tff(x, axiom, $select($store(arr, 1, $true), 2)).",
        )
        .unwrap();
        assert!(sort_of(&formula(&p, "x"), &p.signature).is_ok());
    }

    #[test]
    fn unnamed_type_declaration_uses_unit_name() {
        let p = parse_problem("tff(impl, type, ($o * $o) > $o).").unwrap();
        assert_eq!(p.signature.lookup("impl").unwrap().arity(), 2);
    }

    #[test]
    fn strict_dialect() {
        let opts = ParseOptions {
            dialect: Dialect::StrictTff0,
            ..Default::default()
        };
        let text = "tff(b, type, $$bool: $tType).\n\
                    tff(t, type, $$true: $$bool).\n\
                    tff(p, type, p: $$bool > $o).\n\
                    tff(a, axiom, ![X:$$bool]: (p(X) | X = $$true)).";
        let p = parse_problem_with(text, &opts).unwrap();
        assert_eq!(p.formulas().count(), 1);
        for bad in [
            "tff(a, axiom, ![X:$o]: X).",
            "tff(a, axiom, $ite(p, q, r)).",
            "tff(a, axiom, f(p & q) = c).",
        ] {
            assert!(parse_problem_with(bad, &opts).is_err(), "{bad}");
        }
    }

    #[test]
    fn two_conjectures_rejected() {
        assert!(parse_problem("tff(a, conjecture, p). tff(b, conjecture, q).").is_err());
    }

    #[test]
    fn cnf_variables_are_universal() {
        let p = parse_problem("cnf(c, axiom, p(X) | ~q(X, Y)).").unwrap();
        match formula(&p, "c") {
            Expr::Quant(Quantifier::Forall, vs, _) => assert_eq!(vs.len(), 2),
            other => panic!("{other:?}"),
        }
    }
}
