//! Expressions. Terms and formulas share one type: a formula is an
//! expression of sort `$o`.

use std::collections::HashSet;
use std::sync::Arc;

use super::{LogicError, Signature, Sort, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Arc<str>,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: &str, sort: Sort) -> Var {
        Var {
            name: Arc::from(name),
            sort,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Not,
    And,
    Or,
    Implies,
    Iff,
    Xor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// One definition `f(x1, ..., xn) := body` of a `$let`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binding {
    pub head: Symbol,
    pub params: Vec<Var>,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(Var),
    App(Symbol, Vec<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    Conn(Connective, Vec<Expr>),
    Quant(Quantifier, Vec<Var>, Box<Expr>),
    Ite(Box<Expr>, Box<Expr>, Box<Expr>),
    /// Simultaneous definitions in scope of the body.
    Let(Vec<Binding>, Box<Expr>),
    Tuple(Vec<Expr>),
    /// `let (c1, ..., cn) = value in body` binding constants to tuple components.
    TupleLet(Vec<Symbol>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str, sort: Sort) -> Expr {
        Expr::Var(Var::new(name, sort))
    }

    pub fn app(sym: Symbol, args: Vec<Expr>) -> Expr {
        Expr::App(sym, args)
    }

    pub fn constant(sym: Symbol) -> Expr {
        Expr::App(sym, Vec::new())
    }

    pub fn truth() -> Expr {
        Expr::constant(Symbol::truth())
    }

    pub fn falsity() -> Expr {
        Expr::constant(Symbol::falsity())
    }

    pub fn bool_const(b: bool) -> Expr {
        if b {
            Expr::truth()
        } else {
            Expr::falsity()
        }
    }

    pub fn numeral(n: i64) -> Expr {
        Expr::constant(Symbol::numeral(n))
    }

    pub fn eq(l: Expr, r: Expr) -> Expr {
        Expr::Eq(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Conn(Connective::Not, vec![e])
    }

    /// Conjunction; a single operand is returned unchanged.
    pub fn and(mut es: Vec<Expr>) -> Expr {
        if es.len() == 1 {
            es.pop().unwrap()
        } else {
            Expr::Conn(Connective::And, es)
        }
    }

    /// Disjunction; a single operand is returned unchanged.
    pub fn or(mut es: Vec<Expr>) -> Expr {
        if es.len() == 1 {
            es.pop().unwrap()
        } else {
            Expr::Conn(Connective::Or, es)
        }
    }

    pub fn implies(a: Expr, b: Expr) -> Expr {
        Expr::Conn(Connective::Implies, vec![a, b])
    }

    pub fn iff(a: Expr, b: Expr) -> Expr {
        Expr::Conn(Connective::Iff, vec![a, b])
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Conn(Connective::Xor, vec![a, b])
    }

    /// Universal closure over `vars`; no quantifier when `vars` is empty.
    pub fn forall(vars: Vec<Var>, body: Expr) -> Expr {
        if vars.is_empty() {
            body
        } else {
            Expr::Quant(Quantifier::Forall, vars, Box::new(body))
        }
    }

    pub fn exists(vars: Vec<Var>, body: Expr) -> Expr {
        if vars.is_empty() {
            body
        } else {
            Expr::Quant(Quantifier::Exists, vars, Box::new(body))
        }
    }

    pub fn ite(c: Expr, a: Expr, b: Expr) -> Expr {
        Expr::Ite(Box::new(c), Box::new(a), Box::new(b))
    }

    pub fn let_in(bindings: Vec<Binding>, body: Expr) -> Expr {
        Expr::Let(bindings, Box::new(body))
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Expr::App(s, a) if a.is_empty() && s.is_true())
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Expr::App(s, a) if a.is_empty() && s.is_false())
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Expr::Var(v) => Some(v),
            _ => None,
        }
    }

    /// Sort of a well-sorted expression, read off without checking.
    pub fn sort(&self) -> Sort {
        match self {
            Expr::Var(v) => v.sort.clone(),
            Expr::App(s, _) => s.result().clone(),
            Expr::Eq(..) | Expr::Conn(..) | Expr::Quant(..) => Sort::Bool,
            Expr::Ite(_, a, _) => a.sort(),
            Expr::Let(_, b) | Expr::TupleLet(_, _, b) => b.sort(),
            Expr::Tuple(es) => Sort::Tuple(es.iter().map(Expr::sort).collect()),
        }
    }

    /// Immediate subexpressions in left-to-right order.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Var(_) => Vec::new(),
            Expr::App(_, a) | Expr::Conn(_, a) | Expr::Tuple(a) => a.iter().collect(),
            Expr::Eq(l, r) => vec![l, r],
            Expr::Quant(_, _, b) => vec![b],
            Expr::Ite(c, a, b) => vec![c, a, b],
            Expr::Let(bs, t) => bs.iter().map(|b| &b.body).chain([&**t]).collect(),
            Expr::TupleLet(_, v, b) => vec![v, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.node_count())
            .sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Free variables in order of first occurrence, depth-first left to right.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        collect_free(self, &mut Vec::new(), &mut seen, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        self.free_vars().iter().any(|v| &*v.name == name)
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_var_names(&self, out: &mut HashSet<Arc<str>>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.name.clone());
            }
            Expr::Quant(_, vs, _) => out.extend(vs.iter().map(|v| v.name.clone())),
            Expr::Let(bs, _) => {
                for b in bs {
                    out.extend(b.params.iter().map(|v| v.name.clone()));
                }
            }
            _ => {}
        }
        for c in self.children() {
            c.all_var_names(out);
        }
    }

    /// Does `name` occur free as a function symbol (not shadowed by a let)?
    pub fn mentions_symbol(&self, name: &str) -> bool {
        match self {
            Expr::App(s, args) => s.name() == name || args.iter().any(|a| a.mentions_symbol(name)),
            Expr::Let(bs, t) => {
                bs.iter().any(|b| b.body.mentions_symbol(name))
                    || (!bs.iter().any(|b| b.head.name() == name) && t.mentions_symbol(name))
            }
            Expr::TupleLet(hs, v, b) => {
                v.mentions_symbol(name)
                    || (!hs.iter().any(|h| h.name() == name) && b.mentions_symbol(name))
            }
            _ => self.children().iter().any(|c| c.mentions_symbol(name)),
        }
    }

    /// True when the expression contains no `$ite`, `$let` or tuples.
    pub fn is_let_ite_free(&self) -> bool {
        match self {
            Expr::Ite(..) | Expr::Let(..) | Expr::Tuple(_) | Expr::TupleLet(..) => false,
            _ => self.children().iter().all(|c| c.is_let_ite_free()),
        }
    }

    /// Calls `f` on every function application, outermost first.
    pub fn visit_apps(&self, f: &mut dyn FnMut(&Symbol, &[Expr])) {
        if let Expr::App(s, a) = self {
            f(s, a);
        }
        for c in self.children() {
            c.visit_apps(f);
        }
    }
}

fn collect_free(e: &Expr, bound: &mut Vec<Arc<str>>, seen: &mut HashSet<Var>, out: &mut Vec<Var>) {
    match e {
        Expr::Var(v) => {
            if !bound.contains(&v.name) && seen.insert(v.clone()) {
                out.push(v.clone());
            }
        }
        Expr::Quant(_, vs, b) => {
            let n = bound.len();
            bound.extend(vs.iter().map(|v| v.name.clone()));
            collect_free(b, bound, seen, out);
            bound.truncate(n);
        }
        Expr::Let(bs, t) => {
            for b in bs {
                let n = bound.len();
                bound.extend(b.params.iter().map(|v| v.name.clone()));
                collect_free(&b.body, bound, seen, out);
                bound.truncate(n);
            }
            collect_free(t, bound, seen, out);
        }
        _ => {
            for c in e.children() {
                collect_free(c, bound, seen, out);
            }
        }
    }
}

/// Checked sort of `e`: verifies every application against its symbol's
/// type and every symbol against `sig` or an enclosing `$let`.
pub fn sort_of(e: &Expr, sig: &Signature) -> Result<Sort, LogicError> {
    let mut ck = Checker {
        sig,
        lets: Vec::new(),
        path: Vec::new(),
    };
    ck.check(e)
}

struct Checker<'a> {
    sig: &'a Signature,
    lets: Vec<Symbol>,
    path: Vec<usize>,
}

impl Checker<'_> {
    fn path(&self) -> String {
        let parts: Vec<String> = self.path.iter().map(|p| p.to_string()).collect();
        if parts.is_empty() {
            "root".into()
        } else {
            parts.join(".")
        }
    }

    fn mismatch(&self, expected: &Sort, found: &Sort) -> LogicError {
        LogicError::SortMismatch {
            path: self.path(),
            expected: expected.clone(),
            found: found.clone(),
        }
    }

    fn child(&mut self, k: usize, e: &Expr) -> Result<Sort, LogicError> {
        self.path.push(k);
        let r = self.check(e);
        self.path.pop();
        r
    }

    fn expect(&mut self, k: usize, e: &Expr, want: &Sort) -> Result<(), LogicError> {
        let got = self.child(k, e)?;
        if &got != want {
            self.path.push(k);
            let err = self.mismatch(want, &got);
            self.path.pop();
            return Err(err);
        }
        Ok(())
    }

    fn check_symbol(&self, s: &Symbol) -> Result<(), LogicError> {
        if s.is_interpreted() {
            return Ok(());
        }
        if let Some(l) = self.lets.iter().rev().find(|l| l.name() == s.name()) {
            return if l == s {
                Ok(())
            } else {
                Err(self.mismatch(l.result(), s.result()))
            };
        }
        match self.sig.lookup(s.name()) {
            Some(d) if d == s => Ok(()),
            Some(d) if d.args() != s.args() => Err(LogicError::ArityMismatch {
                symbol: s.name().to_string(),
                expected: d.arity(),
                found: s.arity(),
            }),
            Some(d) => Err(self.mismatch(d.result(), s.result())),
            None => Err(LogicError::UndeclaredSymbol(s.name().to_string())),
        }
    }

    fn check(&mut self, e: &Expr) -> Result<Sort, LogicError> {
        match e {
            Expr::Var(v) => Ok(v.sort.clone()),
            Expr::App(s, args) => {
                self.check_symbol(s)?;
                if args.len() != s.arity() {
                    return Err(LogicError::ArityMismatch {
                        symbol: s.name().to_string(),
                        expected: s.arity(),
                        found: args.len(),
                    });
                }
                for (k, (a, want)) in args.iter().zip(s.args()).enumerate() {
                    self.expect(k, a, want)?;
                }
                Ok(s.result().clone())
            }
            Expr::Eq(l, r) => {
                let ls = self.child(0, l)?;
                self.expect(1, r, &ls)?;
                Ok(Sort::Bool)
            }
            Expr::Conn(op, xs) => {
                let want = match op {
                    super::Connective::Not => Some(1),
                    super::Connective::And | super::Connective::Or => None,
                    _ => Some(2),
                };
                if let Some(n) = want {
                    if xs.len() != n {
                        return Err(LogicError::ArityMismatch {
                            symbol: format!("{op:?}"),
                            expected: n,
                            found: xs.len(),
                        });
                    }
                }
                for (k, x) in xs.iter().enumerate() {
                    self.expect(k, x, &Sort::Bool)?;
                }
                Ok(Sort::Bool)
            }
            Expr::Quant(_, _, b) => {
                self.expect(0, b, &Sort::Bool)?;
                Ok(Sort::Bool)
            }
            Expr::Ite(c, a, b) => {
                self.expect(0, c, &Sort::Bool)?;
                let s = self.child(1, a)?;
                self.expect(2, b, &s)?;
                Ok(s)
            }
            Expr::Let(bs, t) => {
                let mut heads = HashSet::new();
                for (k, b) in bs.iter().enumerate() {
                    if !heads.insert(b.head.name()) {
                        return Err(LogicError::DuplicateDeclaration(b.head.name().to_string()));
                    }
                    let mut params = HashSet::new();
                    for p in &b.params {
                        if !params.insert(&p.name) {
                            return Err(LogicError::DuplicateDeclaration(p.name.to_string()));
                        }
                    }
                    let psorts: Vec<Sort> = b.params.iter().map(|p| p.sort.clone()).collect();
                    if psorts != b.head.args() {
                        return Err(LogicError::ArityMismatch {
                            symbol: b.head.name().to_string(),
                            expected: b.head.arity(),
                            found: psorts.len(),
                        });
                    }
                    self.expect(k, &b.body, b.head.result())?;
                }
                let n = self.lets.len();
                self.lets.extend(bs.iter().map(|b| b.head.clone()));
                let r = self.child(bs.len(), t);
                self.lets.truncate(n);
                r
            }
            Expr::Tuple(es) => {
                let mut ss = Vec::new();
                for (k, x) in es.iter().enumerate() {
                    ss.push(self.child(k, x)?);
                }
                Ok(Sort::Tuple(ss))
            }
            Expr::TupleLet(hs, v, b) => {
                let want = Sort::Tuple(hs.iter().map(|h| h.result().clone()).collect());
                self.expect(0, v, &want)?;
                let n = self.lets.len();
                self.lets.extend(hs.iter().cloned());
                let r = self.child(1, b);
                self.lets.truncate(n);
                r
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_with(syms: &[Symbol]) -> Signature {
        let mut sig = Signature::new();
        for s in syms {
            sig.declare_symbol(s.clone()).unwrap();
        }
        sig
    }

    #[test]
    fn free_vars_in_first_occurrence_order() {
        let p = Symbol::user("p", vec![Sort::Individual; 3], Sort::Bool);
        let e = Expr::forall(
            vec![Var::new("Y", Sort::Individual)],
            Expr::app(
                p,
                vec![
                    Expr::var("Z", Sort::Individual),
                    Expr::var("Y", Sort::Individual),
                    Expr::var("X", Sort::Individual),
                ],
            ),
        );
        let names: Vec<_> = e.free_vars().iter().map(|v| v.name.to_string()).collect();
        assert_eq!(names, vec!["Z", "X"]);
    }

    #[test]
    fn let_parameters_are_bound_in_binding_body_only() {
        let f = Symbol::user("f", vec![Sort::Individual], Sort::Individual);
        let x = Var::new("X", Sort::Individual);
        let e = Expr::let_in(
            vec![Binding {
                head: f.clone(),
                params: vec![x.clone()],
                body: Expr::Var(x.clone()),
            }],
            Expr::app(f, vec![Expr::Var(x.clone())]),
        );
        assert_eq!(e.free_vars(), vec![x]);
    }

    #[test]
    fn sort_of_reports_mismatch_path() {
        let p = Symbol::user("p", vec![Sort::Int], Sort::Bool);
        let sig = sig_with(std::slice::from_ref(&p));
        let bad = Expr::and(vec![
            Expr::truth(),
            Expr::app(p.clone(), vec![Expr::var("X", Sort::Individual)]),
        ]);
        match sort_of(&bad, &sig) {
            Err(LogicError::SortMismatch { path, .. }) => assert_eq!(path, "1.0"),
            other => panic!("unexpected {other:?}"),
        }
        let good = Expr::app(p, vec![Expr::numeral(3)]);
        assert_eq!(sort_of(&good, &sig).unwrap(), Sort::Bool);
    }

    #[test]
    fn sort_of_rejects_undeclared() {
        let q = Symbol::user("q", vec![], Sort::Bool);
        assert!(matches!(
            sort_of(&Expr::constant(q), &Signature::new()),
            Err(LogicError::UndeclaredSymbol(_))
        ));
    }

    #[test]
    fn let_heads_are_in_scope_of_body() {
        let a = Symbol::constant("a", Sort::Int);
        let e = Expr::let_in(
            vec![Binding {
                head: a.clone(),
                params: vec![],
                body: Expr::numeral(1),
            }],
            Expr::eq(Expr::constant(a), Expr::numeral(2)),
        );
        assert_eq!(sort_of(&e, &Signature::new()).unwrap(), Sort::Bool);
    }

    #[test]
    fn mentions_symbol_respects_let_shadowing() {
        let a = Symbol::constant("a", Sort::Individual);
        let inner = Expr::let_in(
            vec![Binding {
                head: a.clone(),
                params: vec![],
                body: Expr::var("X", Sort::Individual),
            }],
            Expr::constant(a.clone()),
        );
        assert!(!inner.mentions_symbol("a"));
        let outer = Expr::let_in(
            vec![Binding {
                head: a.clone(),
                params: vec![],
                body: Expr::constant(a.clone()),
            }],
            Expr::constant(a),
        );
        assert!(outer.mentions_symbol("a"));
    }
}
