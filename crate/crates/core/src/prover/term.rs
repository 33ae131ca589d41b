//! Flat term representation used by the prover.

use std::collections::HashMap;
use std::fmt::Write;

use crate::logic::{Sort, Symbol};
use crate::tptp::symbol_name;

pub type SymId = u32;
pub type SortId = u32;

/// Sort of predicate atoms `p(..) = TT`.
pub const PROP: SortId = 0;
/// The truth constant of `PROP`.
pub const TT: SymId = 0;
pub const FALSE: SymId = 1;
pub const TRUE: SymId = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32, SortId),
    App(SymId, Vec<Term>),
}

impl Term {
    pub fn constant(f: SymId) -> Term {
        Term::App(f, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(..))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(..) => 1,
            Term::App(_, xs) => 1 + xs.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v, _) => Some(*v),
            Term::App(_, xs) => xs.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn contains_var(&self, v: u32) -> bool {
        match self {
            Term::Var(w, _) => *w == v,
            Term::App(_, xs) => xs.iter().any(|x| x.contains_var(v)),
        }
    }

    pub fn at(&self, pos: &[usize]) -> Option<&Term> {
        match pos.split_first() {
            None => Some(self),
            Some((k, rest)) => match self {
                Term::App(_, xs) => xs.get(*k)?.at(rest),
                Term::Var(..) => None,
            },
        }
    }

    pub fn replace_at(&self, pos: &[usize], by: &Term) -> Option<Term> {
        match pos.split_first() {
            None => Some(by.clone()),
            Some((k, rest)) => match self {
                Term::App(f, xs) => {
                    let mut ys = xs.clone();
                    let y = ys.get(*k)?.replace_at(rest, by)?;
                    ys[*k] = y;
                    Some(Term::App(*f, ys))
                }
                Term::Var(..) => None,
            },
        }
    }

    pub fn replace_all(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::App(f, xs) => Term::App(*f, xs.iter().map(|x| x.replace_all(from, to)).collect()),
            v => v.clone(),
        }
    }

    /// Positions of non-variable subterms, outermost first.
    pub fn positions(&self, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if let Term::App(_, xs) = self {
            out.push(prefix.clone());
            for (k, x) in xs.iter().enumerate() {
                prefix.push(k);
                x.positions(out, prefix);
                prefix.pop();
            }
        }
    }

    pub fn shift(&self, by: u32) -> Term {
        match self {
            Term::Var(v, s) => Term::Var(v + by, *s),
            Term::App(f, xs) => Term::App(*f, xs.iter().map(|x| x.shift(by)).collect()),
        }
    }

    pub fn subterms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        out.push(self);
        if let Term::App(_, xs) = self {
            for x in xs {
                x.subterms(out);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymInfo {
    pub name: String,
    pub args: Vec<SortId>,
    pub result: SortId,
    pub symbol: Option<Symbol>,
    pub precedence: usize,
}

/// Symbols and sorts of one prover run.
#[derive(Clone, Debug)]
pub struct SymTable {
    pub syms: Vec<SymInfo>,
    /// `None` is the predicate sort.
    pub sorts: Vec<Option<Sort>>,
    sort_ids: HashMap<Sort, SortId>,
    sym_ids: HashMap<Symbol, SymId>,
}

impl Default for SymTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymTable {
    pub fn new() -> SymTable {
        let mut t = SymTable {
            syms: Vec::new(),
            sorts: vec![None],
            sort_ids: HashMap::new(),
            sym_ids: HashMap::new(),
        };
        t.syms.push(SymInfo {
            name: "TT".into(),
            args: Vec::new(),
            result: PROP,
            symbol: None,
            precedence: 0,
        });
        let b = t.sort_id(&Sort::Bool);
        assert_eq!(t.symbol(&Symbol::falsity()), FALSE);
        assert_eq!(t.symbol(&Symbol::truth()), TRUE);
        debug_assert_eq!(b, 1);
        t
    }

    pub fn bool_sort(&self) -> SortId {
        1
    }

    pub fn sort_id(&mut self, s: &Sort) -> SortId {
        if let Some(id) = self.sort_ids.get(s) {
            return *id;
        }
        let id = self.sorts.len() as SortId;
        self.sorts.push(Some(s.clone()));
        self.sort_ids.insert(s.clone(), id);
        id
    }

    pub fn symbol(&mut self, s: &Symbol) -> SymId {
        if let Some(id) = self.sym_ids.get(s) {
            return *id;
        }
        let args = s.args().iter().map(|a| self.sort_id(a)).collect();
        let result = self.sort_id(s.result());
        let id = self.syms.len() as SymId;
        self.syms.push(SymInfo {
            name: symbol_name(s),
            args,
            result,
            symbol: Some(s.clone()),
            precedence: id as usize,
        });
        self.sym_ids.insert(s.clone(), id);
        id
    }

    pub fn lookup(&self, s: &Symbol) -> Option<SymId> {
        self.sym_ids.get(s).copied()
    }

    /// Reassigns precedences so that symbols are ordered as in `order`
    /// (after `TT`, `$false` and `$true`).
    pub fn set_precedence(&mut self, order: &[SymId]) {
        for (k, s) in order.iter().enumerate() {
            self.syms[*s as usize].precedence = 3 + k;
        }
    }

    pub fn result(&self, f: SymId) -> SortId {
        self.syms[f as usize].result
    }

    pub fn sort_of(&self, t: &Term) -> SortId {
        match t {
            Term::Var(_, s) => *s,
            Term::App(f, _) => self.result(*f),
        }
    }

    pub fn precedence(&self, f: SymId) -> usize {
        self.syms[f as usize].precedence
    }

    pub fn show(&self, t: &Term) -> String {
        let mut s = String::new();
        self.write(t, &mut s);
        s
    }

    fn write(&self, t: &Term, out: &mut String) {
        match t {
            Term::Var(v, _) => {
                let _ = write!(out, "X{v}");
            }
            Term::App(f, xs) => {
                out.push_str(&self.syms[*f as usize].name);
                if !xs.is_empty() {
                    out.push('(');
                    for (k, x) in xs.iter().enumerate() {
                        if k > 0 {
                            out.push(',');
                        }
                        self.write(x, out);
                    }
                    out.push(')');
                }
            }
        }
    }
}
