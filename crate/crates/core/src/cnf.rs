//! Clausal normal form for first-order problems.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;
use std::sync::Arc;

use crate::logic::{
    substitute, Connective, Expr, Origin, Problem, Quantifier, Role, Signature, Sort, Subst, Var,
};
use crate::tptp::{atom_name, print_expr};

/// Distribution is replaced by naming when both disjuncts have more clauses than this.
pub const NAMING_THRESHOLD: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Expr,
}

impl Literal {
    pub fn negated(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    fn same_atom(&self, other: &Literal) -> bool {
        match (&self.atom, &other.atom) {
            (Expr::Eq(a, b), Expr::Eq(c, d)) => (a == c && b == d) || (a == d && b == c),
            (x, y) => x == y,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClauseSource {
    Unit { name: String, role: Role },
    Naming(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub source: ClauseSource,
}

#[derive(Clone, Debug)]
pub struct ClauseSet {
    pub clauses: Vec<Clause>,
    pub signature: Signature,
    pub has_conjecture: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClausifyError {
    #[error("not a first-order formula: {0}")]
    NotFirstOrder(String),
}

#[derive(Clone, Debug)]
enum Nnf {
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    All(Vec<Var>, Box<Nnf>),
    Ex(Vec<Var>, Box<Nnf>),
}

fn top() -> Nnf {
    Nnf::And(Vec::new())
}

fn bottom() -> Nnf {
    Nnf::Or(Vec::new())
}

fn is_top(n: &Nnf) -> bool {
    matches!(n, Nnf::And(xs) if xs.is_empty())
}

fn is_bottom(n: &Nnf) -> bool {
    matches!(n, Nnf::Or(xs) if xs.is_empty())
}

fn mk_and(xs: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for x in xs {
        match x {
            x if is_top(&x) => {}
            x if is_bottom(&x) => return bottom(),
            Nnf::And(ys) => out.extend(ys),
            x => out.push(x),
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Nnf::And(out)
    }
}

fn mk_or(xs: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for x in xs {
        match x {
            x if is_bottom(&x) => {}
            x if is_top(&x) => return top(),
            Nnf::Or(ys) => out.extend(ys),
            x => out.push(x),
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Nnf::Or(out)
    }
}

fn mk_quant(all: bool, vs: Vec<Var>, b: Nnf) -> Nnf {
    let fv = nnf_free(&b);
    let vs: Vec<Var> = vs.into_iter().filter(|v| fv.contains(&v.name)).collect();
    if vs.is_empty() {
        b
    } else if all {
        Nnf::All(vs, Box::new(b))
    } else {
        Nnf::Ex(vs, Box::new(b))
    }
}

fn nnf_free(n: &Nnf) -> HashSet<Arc<str>> {
    let mut out = HashSet::new();
    fn go(n: &Nnf, out: &mut HashSet<Arc<str>>) {
        match n {
            Nnf::Lit(l) => out.extend(l.atom.free_vars().into_iter().map(|v| v.name)),
            Nnf::And(xs) | Nnf::Or(xs) => xs.iter().for_each(|x| go(x, out)),
            Nnf::All(vs, b) | Nnf::Ex(vs, b) => {
                let mut inner = HashSet::new();
                go(b, &mut inner);
                for v in vs {
                    inner.remove(&v.name);
                }
                out.extend(inner);
            }
        }
    }
    go(n, &mut out);
    out
}

fn literalish(e: &Expr) -> bool {
    match e {
        Expr::App(..) | Expr::Eq(..) => true,
        Expr::Conn(Connective::Not, xs) => literalish(&xs[0]),
        _ => false,
    }
}

struct Clausifier<'s> {
    sig: &'s mut Signature,
    /// Definitions introduced while converting, still to be clausified.
    pending: Vec<(Expr, String)>,
    /// Names already given to equivalence operands.
    names: HashMap<Expr, Expr>,
    var_counter: usize,
}

/// Number of clauses the CNF of `e` (or of its negation) would have without naming.
fn estimate(e: &Expr, pos: bool) -> usize {
    match e {
        Expr::Conn(Connective::Not, xs) => estimate(&xs[0], !pos),
        Expr::Conn(op @ (Connective::And | Connective::Or), xs) => {
            let it = xs.iter().map(|x| estimate(x, pos));
            if (*op == Connective::And) == pos {
                it.fold(0usize, usize::saturating_add)
            } else {
                it.fold(1usize, usize::saturating_mul)
            }
        }
        Expr::Conn(Connective::Implies, xs) => {
            let (a, b) = (estimate(&xs[0], !pos), estimate(&xs[1], pos));
            if pos {
                a.saturating_mul(b)
            } else {
                a.saturating_add(b)
            }
        }
        Expr::Conn(op @ (Connective::Iff | Connective::Xor), xs) => {
            let pos = if *op == Connective::Xor { !pos } else { pos };
            let (ap, an) = (estimate(&xs[0], true), estimate(&xs[0], false));
            let (bp, bn) = (estimate(&xs[1], true), estimate(&xs[1], false));
            if pos {
                an.saturating_mul(bp).saturating_add(ap.saturating_mul(bn))
            } else {
                ap.saturating_mul(bp).saturating_add(an.saturating_mul(bn))
            }
        }
        Expr::Quant(_, _, b) => estimate(b, pos),
        _ => 1,
    }
}

impl Clausifier<'_> {
    fn nnf(&mut self, e: &Expr, pos: bool) -> Result<Nnf, ClausifyError> {
        Ok(match e {
            Expr::App(s, _) if s.is_true() => {
                if pos {
                    top()
                } else {
                    bottom()
                }
            }
            Expr::App(s, _) if s.is_false() => {
                if pos {
                    bottom()
                } else {
                    top()
                }
            }
            Expr::App(..) => Nnf::Lit(Literal {
                positive: pos,
                atom: e.clone(),
            }),
            Expr::Eq(l, r) => {
                if l == r {
                    if pos {
                        top()
                    } else {
                        bottom()
                    }
                } else {
                    Nnf::Lit(Literal {
                        positive: pos,
                        atom: e.clone(),
                    })
                }
            }
            Expr::Conn(Connective::Not, xs) => self.nnf(&xs[0], !pos)?,
            Expr::Conn(Connective::And, xs) | Expr::Conn(Connective::Or, xs) => {
                let conj = matches!(e, Expr::Conn(Connective::And, _)) == pos;
                let mut out = Vec::new();
                for x in xs {
                    out.push(self.nnf(x, pos)?);
                }
                if conj {
                    mk_and(out)
                } else {
                    mk_or(out)
                }
            }
            Expr::Conn(Connective::Implies, xs) => {
                let a = self.nnf(&xs[0], !pos)?;
                let b = self.nnf(&xs[1], pos)?;
                if pos {
                    mk_or(vec![a, b])
                } else {
                    mk_and(vec![a, b])
                }
            }
            Expr::Conn(op @ (Connective::Iff | Connective::Xor), xs) => {
                let pos = if *op == Connective::Xor { !pos } else { pos };
                let a = self.name_operand(&xs[0])?;
                let b = self.name_operand(&xs[1])?;
                let (ap, an) = (self.nnf(&a, true)?, self.nnf(&a, false)?);
                let (bp, bn) = (self.nnf(&b, true)?, self.nnf(&b, false)?);
                if pos {
                    mk_and(vec![mk_or(vec![an, bp]), mk_or(vec![ap, bn])])
                } else {
                    mk_and(vec![mk_or(vec![ap, bp]), mk_or(vec![an, bn])])
                }
            }
            Expr::Quant(q, vs, b) => {
                let body = self.nnf(b, pos)?;
                mk_quant((*q == Quantifier::Forall) == pos, vs.clone(), body)
            }
            Expr::Var(v) => {
                return Err(ClausifyError::NotFirstOrder(format!(
                    "boolean variable {} in formula position",
                    v.name
                )))
            }
            other => return Err(ClausifyError::NotFirstOrder(print_expr(other))),
        })
    }

    /// Replaces an operand of an equivalence whose two polarities together
    /// expand to more than `NAMING_THRESHOLD` clauses by a fresh predicate
    /// applied to its free variables, queueing both directions of its definition.
    fn name_operand(&mut self, e: &Expr) -> Result<Expr, ClausifyError> {
        if literalish(e) || estimate(e, true).saturating_add(estimate(e, false)) <= NAMING_THRESHOLD
        {
            return Ok(e.clone());
        }
        if let Some(n) = self.names.get(e) {
            return Ok(n.clone());
        }
        let fv = e.free_vars();
        let n = self.sig.fresh_symbol(
            fv.iter().map(|v| v.sort.clone()).collect(),
            Sort::Bool,
            Origin::Naming,
        );
        let nx = Expr::app(n.clone(), fv.iter().cloned().map(Expr::Var).collect());
        self.pending.push((
            Expr::forall(fv.clone(), Expr::or(vec![Expr::not(nx.clone()), e.clone()])),
            n.name().to_string(),
        ));
        self.pending.push((
            Expr::forall(fv, Expr::or(vec![nx.clone(), Expr::not(e.clone())])),
            n.name().to_string(),
        ));
        self.names.insert(e.clone(), nx.clone());
        Ok(nx)
    }

    fn skolemize(&mut self, n: Nnf, m: &Subst) -> Result<Nnf, ClausifyError> {
        Ok(match n {
            Nnf::Lit(l) => Nnf::Lit(Literal {
                positive: l.positive,
                atom: substitute(&l.atom, m)
                    .map_err(|e| ClausifyError::NotFirstOrder(e.to_string()))?,
            }),
            Nnf::And(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.push(self.skolemize(x, m)?);
                }
                Nnf::And(out)
            }
            Nnf::Or(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.push(self.skolemize(x, m)?);
                }
                Nnf::Or(out)
            }
            Nnf::All(vs, b) => {
                let mut m2 = m.clone();
                for v in vs {
                    self.var_counter += 1;
                    let nv = Var::new(&format!("{}#{}", v.name, self.var_counter), v.sort.clone());
                    m2.insert(v.name.clone(), Expr::Var(nv));
                }
                self.skolemize(*b, &m2)?
            }
            Nnf::Ex(vs, b) => {
                let names: HashSet<Arc<str>> = vs.iter().map(|v| v.name.clone()).collect();
                let mut free: Vec<Arc<str>> = nnf_free(&b)
                    .into_iter()
                    .filter(|n| !names.contains(n))
                    .collect();
                free.sort();
                let mut args: Vec<Var> = Vec::new();
                for f in free {
                    let vars = match m.get(&f) {
                        Some(e) => e.free_vars(),
                        None => Vec::new(),
                    };
                    for v in vars {
                        if !args.contains(&v) {
                            args.push(v);
                        }
                    }
                }
                let mut m2 = m.clone();
                for v in vs {
                    let sk = self.sig.fresh_symbol(
                        args.iter().map(|a| a.sort.clone()).collect(),
                        v.sort.clone(),
                        Origin::Skolem,
                    );
                    m2.insert(
                        v.name.clone(),
                        Expr::app(sk, args.iter().cloned().map(Expr::Var).collect()),
                    );
                }
                self.skolemize(*b, &m2)?
            }
        })
    }

    fn cnf(&mut self, n: &Nnf, defs: &mut Vec<Vec<Literal>>) -> Vec<Vec<Literal>> {
        match n {
            Nnf::Lit(l) => vec![vec![l.clone()]],
            Nnf::And(xs) => xs.iter().flat_map(|x| self.cnf(x, defs)).collect(),
            Nnf::Or(xs) => {
                let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
                for x in xs {
                    let mut cs = self.cnf(x, defs);
                    if acc.len() > NAMING_THRESHOLD && cs.len() > NAMING_THRESHOLD {
                        let mut fv: Vec<Var> = Vec::new();
                        for c in &cs {
                            for l in c {
                                for v in l.atom.free_vars() {
                                    if !fv.contains(&v) {
                                        fv.push(v);
                                    }
                                }
                            }
                        }
                        let name = self.sig.fresh_symbol(
                            fv.iter().map(|v| v.sort.clone()).collect(),
                            Sort::Bool,
                            Origin::Naming,
                        );
                        let atom = Expr::app(name, fv.into_iter().map(Expr::Var).collect());
                        for c in cs {
                            let mut d = vec![Literal {
                                positive: false,
                                atom: atom.clone(),
                            }];
                            d.extend(c);
                            defs.push(d);
                        }
                        cs = vec![vec![Literal {
                            positive: true,
                            atom,
                        }]];
                    }
                    let mut next = Vec::with_capacity(acc.len() * cs.len());
                    for a in &acc {
                        for c in &cs {
                            let mut d = a.clone();
                            d.extend(c.iter().cloned());
                            next.push(d);
                        }
                    }
                    acc = next;
                }
                acc
            }
            Nnf::All(..) | Nnf::Ex(..) => unreachable!("quantifiers removed before distribution"),
        }
    }
}

fn miniscope(n: Nnf) -> Nnf {
    match n {
        Nnf::Lit(_) => n,
        Nnf::And(xs) => mk_and(xs.into_iter().map(miniscope).collect()),
        Nnf::Or(xs) => mk_or(xs.into_iter().map(miniscope).collect()),
        Nnf::All(vs, b) => push_quant(true, vs, miniscope(*b)),
        Nnf::Ex(vs, b) => push_quant(false, vs, miniscope(*b)),
    }
}

/// Moves a quantifier inwards: through the connective it distributes over,
/// and past operands that do not mention its variables.
fn push_quant(all: bool, vs: Vec<Var>, b: Nnf) -> Nnf {
    let mentions = |x: &Nnf| {
        let fv = nnf_free(x);
        vs.iter().any(|v| fv.contains(&v.name))
    };
    match b {
        Nnf::And(xs) if all => mk_and(
            xs.into_iter()
                .map(|x| push_quant(all, vs.clone(), x))
                .collect(),
        ),
        Nnf::Or(xs) if !all => mk_or(
            xs.into_iter()
                .map(|x| push_quant(all, vs.clone(), x))
                .collect(),
        ),
        Nnf::And(xs) | Nnf::Or(xs) if xs.len() > 1 => {
            // the remaining case: a universal over a disjunction or an existential over a conjunction
            let conj = !all;
            let (with, without): (Vec<Nnf>, Vec<Nnf>) = xs.into_iter().partition(|x| mentions(x));
            if without.is_empty() {
                let inner = if conj { Nnf::And(with) } else { Nnf::Or(with) };
                return mk_quant(all, vs, inner);
            }
            let inner = if conj { mk_and(with) } else { mk_or(with) };
            let q = mk_quant(all, vs, inner);
            let mut all_parts = without;
            all_parts.push(q);
            if conj {
                mk_and(all_parts)
            } else {
                mk_or(all_parts)
            }
        }
        other => mk_quant(all, vs, other),
    }
}

fn clean(lits: Vec<Literal>) -> Option<Vec<Literal>> {
    let mut out: Vec<Literal> = Vec::new();
    for l in lits {
        if let Expr::Eq(a, b) = &l.atom {
            if a == b {
                if l.positive {
                    return None;
                }
                continue;
            }
        }
        if out
            .iter()
            .any(|o| o.positive != l.positive && o.same_atom(&l))
        {
            return None;
        }
        if !out
            .iter()
            .any(|o| o.positive == l.positive && o.same_atom(&l))
        {
            out.push(l);
        }
    }
    Some(out)
}

/// Clausifies all formulas of a first-order problem; the conjecture is negated.
pub fn clausify(p: &Problem) -> Result<ClauseSet, ClausifyError> {
    let mut sig = p.signature.clone();
    let mut clauses = Vec::new();
    let mut has_conjecture = false;
    let mut cl = Clausifier {
        sig: &mut sig,
        pending: Vec::new(),
        names: HashMap::new(),
        var_counter: 0,
    };
    for u in p.formulas() {
        let mut e = u.as_formula().unwrap().clone();
        let role = if u.role == Role::Conjecture {
            has_conjecture = true;
            e = Expr::not(e);
            Role::Conjecture
        } else {
            u.role
        };
        let mut work = vec![(
            e,
            ClauseSource::Unit {
                name: u.name.clone(),
                role,
            },
        )];
        while let Some((f, src)) = work.pop() {
            let n = cl.nnf(&f, true)?;
            let n = miniscope(n);
            let n = cl.skolemize(n, &Subst::new())?;
            let mut defs = Vec::new();
            let cs = cl.cnf(&n, &mut defs);
            for c in cs {
                if let Some(lits) = clean(c) {
                    clauses.push(Clause {
                        literals: lits,
                        source: src.clone(),
                    });
                }
            }
            for d in defs {
                if let Some(lits) = clean(d) {
                    clauses.push(Clause {
                        literals: lits,
                        source: src.clone(),
                    });
                }
            }
            for (f, name) in cl.pending.drain(..) {
                work.push((f, ClauseSource::Naming(name)));
            }
        }
    }
    Ok(ClauseSet {
        clauses,
        signature: sig,
        has_conjecture,
    })
}

/// A clause as a TPTP `cnf` unit with variables renamed `X0, X1, ...`.
pub fn print_clause(name: &str, c: &Clause) -> String {
    let mut ren: HashMap<Arc<str>, usize> = HashMap::new();
    let mut m = Subst::new();
    for l in &c.literals {
        for v in l.atom.free_vars() {
            if !ren.contains_key(&v.name) {
                let k = ren.len();
                ren.insert(v.name.clone(), k);
                m.insert(v.name.clone(), Expr::var(&format!("X{k}"), v.sort.clone()));
            }
        }
    }
    let role = match &c.source {
        ClauseSource::Unit {
            role: Role::Conjecture,
            ..
        } => "negated_conjecture",
        _ => "axiom",
    };
    let mut out = format!("cnf({}, {role}, ", atom_name(name, false));
    if c.literals.is_empty() {
        out.push_str("$false");
    }
    for (k, l) in c.literals.iter().enumerate() {
        if k > 0 {
            out.push_str(" | ");
        }
        let atom = substitute(&l.atom, &m).unwrap_or_else(|_| l.atom.clone());
        let lit = if l.positive { atom } else { Expr::not(atom) };
        let _ = write!(out, "{}", print_expr(&lit));
    }
    out.push_str(").");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tptp::parse_problem;

    fn clauses(text: &str) -> ClauseSet {
        clausify(&parse_problem(text).unwrap()).unwrap()
    }

    #[test]
    fn conjecture_is_negated() {
        let cs = clauses("tff(a, conjecture, ![X:$i]: p(X)).");
        assert!(cs.has_conjecture);
        assert_eq!(cs.clauses.len(), 1);
        let l = &cs.clauses[0].literals[0];
        assert!(!l.positive);
        // the variable became a Skolem constant
        assert!(l.atom.is_closed());
    }

    #[test]
    fn skolem_functions_take_universal_arguments() {
        let cs = clauses("tff(a, axiom, ![X:$i]: ?[Y:$i]: r(X, Y)).");
        let l = &cs.clauses[0].literals[0];
        let Expr::App(_, args) = &l.atom else {
            panic!()
        };
        let Expr::App(sk, skargs) = &args[1] else {
            panic!()
        };
        assert_eq!(sk.origin(), Some(Origin::Skolem));
        assert_eq!(skargs.len(), 1);
    }

    #[test]
    fn miniscoping_drops_irrelevant_skolem_arguments() {
        let cs = clauses("tff(a, axiom, ![X:$i]: (p(X) | ?[Y:$i]: q(Y))).");
        for c in &cs.clauses {
            for l in &c.literals {
                if let Expr::App(s, args) = &l.atom {
                    if s.name() == "q" {
                        assert!(args[0].is_closed());
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_chains_stay_linear() {
        let mut text = String::from("tff(a, axiom, ");
        let n = 12;
        for k in 0..n {
            text.push_str(&format!("(p{k} <=> "));
        }
        text.push('q');
        text.push_str(&")".repeat(n));
        text.push_str(").");
        let cs = clauses(&text);
        assert!(cs.clauses.len() <= 8 * n, "{} clauses", cs.clauses.len());
    }

    #[test]
    fn distribution_names_large_disjuncts() {
        let conj = |c: char| {
            (0..6)
                .map(|k| format!("{c}{k}"))
                .collect::<Vec<_>>()
                .join(" & ")
        };
        let text = format!("tff(a, axiom, ({}) | ({})).", conj('p'), conj('q'));
        let cs = clauses(&text);
        assert!(cs.clauses.len() < 36, "{} clauses", cs.clauses.len());
    }

    #[test]
    fn tautologies_removed() {
        let cs = clauses("tff(a, axiom, p | ~p). tff(b, axiom, ![X:$i]: X = X).");
        assert!(cs.clauses.is_empty());
    }

    #[test]
    fn printing() {
        let cs = clauses("tff(a, axiom, ![X:$i, Y:$i]: (X = Y | ~p(X))).");
        let s = print_clause("c1", &cs.clauses[0]);
        assert_eq!(s, "cnf(c1, axiom, X0 = X1 | ~p(X0)).");
    }
}
