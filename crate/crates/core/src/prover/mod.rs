//! Superposition prover with FOOL paramodulation.

mod clause;
mod infer;
mod kbo;
mod proof;
mod saturate;
mod term;
mod unify;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

pub use clause::{lit_compare, normalize, subsumes, Lit};
pub use infer::{fool_paramodulation_conclusion, fool_paramodulations, Derived, Inference};
pub use kbo::{kbo, kbo_compare, TermOrder, TermOrdering};
pub use proof::{check_proof, show_clause, CorruptProof, Proof, ProofStep};
pub use saturate::{saturate, Limits, Outcome, SaturationOptions, SaturationResult, Stats};
pub use term::{SortId, SymId, SymTable, Term, FALSE, PROP, TRUE, TT};
pub use unify::{apply, unify, Unifier};

use crate::cnf::{clausify, ClauseSet, ClauseSource, ClausifyError};
use crate::logic::{Expr, Problem, Role, Symbol};
use crate::translate::{translate_problem, BoolSemantics, TranslateError, TranslateOptions};

/// Converts clausified input into prover clauses. Boolean symbols that occur
/// as arguments or equation sides become functions into `$o`; all others are
/// predicates encoded as `p(..) = TT`.
pub fn prover_input(cs: &ClauseSet) -> (SymTable, Vec<(Vec<Lit>, Inference)>) {
    let mut tab = SymTable::new();
    for s in cs.signature.symbols() {
        tab.symbol(s);
    }
    let mut function_mode: HashSet<Symbol> = HashSet::new();
    for c in &cs.clauses {
        for l in &c.literals {
            match &l.atom {
                Expr::Eq(a, b) => {
                    mark_terms(a, &mut function_mode);
                    mark_terms(b, &mut function_mode);
                }
                Expr::App(_, xs) => xs.iter().for_each(|x| mark_terms(x, &mut function_mode)),
                _ => {}
            }
        }
    }
    let mut out = Vec::new();
    for c in &cs.clauses {
        let mut vars: HashMap<Arc<str>, u32> = HashMap::new();
        let mut lits = Vec::new();
        for l in &c.literals {
            let lit = match &l.atom {
                Expr::Eq(a, b) => {
                    let a = convert(a, &mut tab, &mut vars);
                    let b = convert(b, &mut tab, &mut vars);
                    Lit::new(l.positive, a, b)
                }
                Expr::App(p, xs) if !function_mode.contains(p) && !p.is_true() && !p.is_false() => {
                    let args = xs.iter().map(|x| convert(x, &mut tab, &mut vars)).collect();
                    let id = tab.symbol(p);
                    tab.syms[id as usize].result = PROP;
                    Lit::new(l.positive, Term::App(id, args), Term::constant(TT))
                }
                atom => {
                    let a = convert(atom, &mut tab, &mut vars);
                    Lit::new(l.positive, a, Term::constant(TRUE))
                }
            };
            lits.push(lit);
        }
        let inference = match &c.source {
            ClauseSource::Unit { name, role } => Inference::Input {
                name: name.clone(),
                conjecture: *role == Role::Conjecture,
            },
            ClauseSource::Naming(name) => Inference::Input {
                name: name.clone(),
                conjecture: false,
            },
        };
        out.push((lits, inference));
    }
    (tab, out)
}

fn mark_terms(e: &Expr, acc: &mut HashSet<Symbol>) {
    if let Expr::App(f, xs) = e {
        if f.result().is_bool() {
            acc.insert(f.clone());
        }
        xs.iter().for_each(|x| mark_terms(x, acc));
    }
}

fn convert(e: &Expr, tab: &mut SymTable, vars: &mut HashMap<Arc<str>, u32>) -> Term {
    match e {
        Expr::Var(v) => {
            let n = vars.len() as u32;
            let id = *vars.entry(v.name.clone()).or_insert(n);
            Term::Var(id, tab.sort_id(&v.sort))
        }
        Expr::App(f, xs) => {
            let args = xs.iter().map(|x| convert(x, tab, vars)).collect();
            Term::App(tab.symbol(f), args)
        }
        other => unreachable!("non-term in clause: {other}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SzsStatus {
    Theorem,
    Unsatisfiable,
    Satisfiable,
    CounterSatisfiable,
    GaveUp,
}

impl fmt::Display for SzsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SzsStatus::Theorem => "Theorem",
            SzsStatus::Unsatisfiable => "Unsatisfiable",
            SzsStatus::Satisfiable => "Satisfiable",
            SzsStatus::CounterSatisfiable => "CounterSatisfiable",
            SzsStatus::GaveUp => "GaveUp",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct ProveOptions {
    pub mode: BoolSemantics,
    pub theory_axioms: bool,
    pub limits: Limits,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            mode: BoolSemantics::ParamodulationReady,
            theory_axioms: true,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProveError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Clausify(#[from] ClausifyError),
}

#[derive(Clone, Debug)]
pub struct ProveResult {
    pub status: SzsStatus,
    pub saturation: SaturationResult,
    pub table: SymTable,
}

/// Translates, clausifies and saturates a FOOL problem.
pub fn prove(p: &Problem, opts: &ProveOptions) -> Result<ProveResult, ProveError> {
    let topts = TranslateOptions {
        mode: opts.mode,
        theory_axioms: opts.theory_axioms,
    };
    let (fol, _) = translate_problem(p, topts)?;
    let cs = clausify(&fol)?;
    Ok(prove_clauses(&cs, opts))
}

pub fn prove_clauses(cs: &ClauseSet, opts: &ProveOptions) -> ProveResult {
    let sopts = SaturationOptions {
        fool_paramodulation: opts.mode == BoolSemantics::ParamodulationReady,
        limits: opts.limits.clone(),
        ..SaturationOptions::default()
    };
    prove_clauses_with(cs, &sopts)
}

/// Saturates `cs` under explicit saturation options.
pub fn prove_clauses_with(cs: &ClauseSet, sopts: &SaturationOptions) -> ProveResult {
    let (table, input) = prover_input(cs);
    let saturation = saturate(input, &table, sopts);
    // Interpreted symbols are uninterpreted here, so saturation says nothing
    // about models of the intended theory.
    let interpreted = table
        .syms
        .iter()
        .filter_map(|s| s.symbol.as_ref())
        .any(|s| {
            s.is_interpreted()
                && !s.is_true()
                && !s.is_false()
                && s.builtin_kind().is_some_and(is_arithmetic)
        });
    let status = match (&saturation.outcome, cs.has_conjecture) {
        (Outcome::Refutation(_), true) => SzsStatus::Theorem,
        (Outcome::Refutation(_), false) => SzsStatus::Unsatisfiable,
        (Outcome::Saturated(_), _) if interpreted || sopts.set_of_support => SzsStatus::GaveUp,
        (Outcome::Saturated(_), true) => SzsStatus::CounterSatisfiable,
        (Outcome::Saturated(_), false) => SzsStatus::Satisfiable,
        (Outcome::ResourceOut, _) => SzsStatus::GaveUp,
    };
    ProveResult {
        status,
        saturation,
        table,
    }
}

fn is_arithmetic(b: crate::logic::Builtin) -> bool {
    use crate::logic::Builtin::*;
    !matches!(b, True | False | Select | Store)
}
