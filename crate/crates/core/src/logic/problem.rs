//! Problems: ordered lists of named units over a signature.

use super::{Expr, Signature, Sort, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Axiom,
    Hypothesis,
    Conjecture,
    Type,
}

impl Role {
    pub fn tptp_name(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Hypothesis => "hypothesis",
            Role::Conjecture => "conjecture",
            Role::Type => "type",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TypeDecl {
    Sort(String),
    Symbol(Symbol),
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnitContent {
    Type(TypeDecl),
    Formula(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Unit {
    pub name: String,
    pub role: Role,
    pub content: UnitContent,
}

impl Unit {
    pub fn formula(name: impl Into<String>, role: Role, e: Expr) -> Unit {
        Unit {
            name: name.into(),
            role,
            content: UnitContent::Formula(e),
        }
    }

    pub fn symbol_decl(name: impl Into<String>, sym: Symbol) -> Unit {
        Unit {
            name: name.into(),
            role: Role::Type,
            content: UnitContent::Type(TypeDecl::Symbol(sym)),
        }
    }

    pub fn sort_decl(name: impl Into<String>, sort: &str) -> Unit {
        Unit {
            name: name.into(),
            role: Role::Type,
            content: UnitContent::Type(TypeDecl::Sort(sort.to_string())),
        }
    }

    pub fn as_formula(&self) -> Option<&Expr> {
        match &self.content {
            UnitContent::Formula(e) => Some(e),
            UnitContent::Type(_) => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Problem {
    pub units: Vec<Unit>,
    pub signature: Signature,
}

impl Problem {
    pub fn formulas(&self) -> impl Iterator<Item = &Unit> {
        self.units.iter().filter(|u| u.as_formula().is_some())
    }

    pub fn conjecture(&self) -> Option<&Unit> {
        self.units.iter().find(|u| u.role == Role::Conjecture)
    }

    pub fn unit(&self, name: &str) -> Option<&Unit> {
        self.units.iter().find(|u| u.name == name)
    }

    /// All array sorts occurring in declarations or formulas.
    pub fn array_sorts(&self) -> Vec<Sort> {
        let mut out: Vec<Sort> = Vec::new();
        let mut add = |s: &Sort| collect_arrays(s, &mut out);
        for sym in self.signature.symbols() {
            for a in sym.args() {
                add(a);
            }
            add(sym.result());
        }
        for u in self.formulas() {
            let mut stack = vec![u.as_formula().unwrap()];
            while let Some(e) = stack.pop() {
                match e {
                    Expr::Var(v) => add(&v.sort),
                    Expr::App(s, _) => {
                        for a in s.args() {
                            add(a);
                        }
                        add(s.result());
                    }
                    Expr::Quant(_, vs, _) => vs.iter().for_each(|v| add(&v.sort)),
                    _ => {}
                }
                stack.extend(e.children());
            }
        }
        out
    }
}

fn collect_arrays(s: &Sort, out: &mut Vec<Sort>) {
    match s {
        Sort::Array(i, v) => {
            collect_arrays(i, out);
            collect_arrays(v, out);
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        Sort::Tuple(ms) => ms.iter().for_each(|m| collect_arrays(m, out)),
        _ => {}
    }
}
