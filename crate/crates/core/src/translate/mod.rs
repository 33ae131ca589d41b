//! Translation of FOOL problems into ordinary many-sorted first-order
//! problems.

mod eliminate;

use std::fmt;

pub use eliminate::{eliminate_bool_variables, normalize_bool_equalities};

use eliminate::{Eliminator, Passes};

use crate::arrays;
use crate::logic::{
    Expr, LogicError, Origin, Problem, Quantifier, Role, Signature, Sort, Symbol, Unit,
    UnitContent, Var,
};
use crate::tptp::{print_expr, print_unit};

/// How the prover is told that `$o` has exactly two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoolSemantics {
    /// Emit `![X:$o]: (X = $true | X = $false)`.
    Axiomatized,
    /// Leave the domain axiom out; the prover's boolean paramodulation rule replaces it.
    #[default]
    ParamodulationReady,
}

#[derive(Clone, Copy, Debug)]
pub struct TranslateOptions {
    pub mode: BoolSemantics,
    pub theory_axioms: bool,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            mode: BoolSemantics::ParamodulationReady,
            theory_axioms: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TranslateError {
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pass {
    NormalizeEqualities,
    EliminateFool,
    BoolVariables,
    ArrayAxioms,
    BoolAxioms,
}

impl Pass {
    pub fn name(self) -> &'static str {
        match self {
            Pass::NormalizeEqualities => "normalize_bool_equalities",
            Pass::EliminateFool => "eliminate_fool",
            Pass::BoolVariables => "eliminate_bool_variables",
            Pass::ArrayAxioms => "array_axioms",
            Pass::BoolAxioms => "bool_axioms",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub pass: Pass,
    pub unit: String,
    pub before: Option<Expr>,
    pub after: Option<Expr>,
    pub introduced: Vec<Unit>,
}

#[derive(Clone, Debug, Default)]
pub struct TranslationTrace {
    pub steps: Vec<TraceStep>,
}

impl TranslationTrace {
    /// Rebuilds the translated unit list from `original` and the recorded steps.
    pub fn replay(&self, original: &Problem) -> Vec<Unit> {
        let mut out = Vec::new();
        for u in &original.units {
            let steps: Vec<&TraceStep> = self.steps.iter().filter(|s| s.unit == u.name).collect();
            match (&u.content, steps.last()) {
                (UnitContent::Formula(_), Some(last)) => {
                    let intro: Vec<&Unit> = steps.iter().flat_map(|s| &s.introduced).collect();
                    out.extend(
                        intro
                            .iter()
                            .filter(|i| i.role == Role::Type)
                            .map(|i| (*i).clone()),
                    );
                    out.push(Unit::formula(
                        u.name.clone(),
                        u.role,
                        last.after.clone().expect("formula step has a result"),
                    ));
                    out.extend(
                        intro
                            .iter()
                            .filter(|i| i.role != Role::Type)
                            .map(|i| (*i).clone()),
                    );
                }
                _ => out.push(u.clone()),
            }
        }
        for s in &self.steps {
            if s.before.is_none() && s.after.is_none() {
                out.extend(s.introduced.iter().cloned());
            }
        }
        out
    }
}

impl fmt::Display for TranslationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            if let (Some(b), Some(a)) = (&s.before, &s.after) {
                if b == a && s.introduced.is_empty() {
                    continue;
                }
                writeln!(f, "% [{}] {}: {}", s.pass.name(), s.unit, print_expr(b))?;
                writeln!(f, "%   ==> {}", print_expr(a))?;
            } else {
                writeln!(f, "% [{}]", s.pass.name())?;
            }
            for u in &s.introduced {
                writeln!(f, "%   + {}", print_unit(u))?;
            }
        }
        Ok(())
    }
}

fn run(e: &Expr, sig: &mut Signature, passes: Passes) -> Result<(Expr, Vec<Unit>), TranslateError> {
    let mut el = Eliminator::new(sig, passes);
    let out = el.process(e)?;
    let defs = el
        .defs
        .into_iter()
        .enumerate()
        .map(|(k, d)| Unit::formula(format!("fool_def_{k}"), Role::Axiom, d))
        .collect();
    Ok((out, defs))
}

/// Lifts formulas out of argument positions, leaving `$ite`/`$let` in place.
pub fn lift_formula_arguments(
    e: &Expr,
    sig: &mut Signature,
) -> Result<(Expr, Vec<Unit>), TranslateError> {
    run(
        e,
        sig,
        Passes {
            lift: true,
            ite: false,
            let_: false,
        },
    )
}

/// Replaces every `$ite` by a fresh symbol with two guarded definitions.
pub fn translate_ite(e: &Expr, sig: &mut Signature) -> Result<(Expr, Vec<Unit>), TranslateError> {
    run(
        e,
        sig,
        Passes {
            lift: false,
            ite: true,
            let_: false,
        },
    )
}

/// Replaces every `$let` by a fresh symbol with one definition per binding.
pub fn translate_let(e: &Expr, sig: &mut Signature) -> Result<(Expr, Vec<Unit>), TranslateError> {
    run(
        e,
        sig,
        Passes {
            lift: false,
            ite: false,
            let_: true,
        },
    )
}

/// The constant-distinctness axiom and, in axiomatized mode, the domain axiom.
pub fn emit_bool_axioms(mode: BoolSemantics) -> Vec<Unit> {
    let mut out = vec![Unit::formula(
        "fool_true_neq_false",
        Role::Axiom,
        Expr::not(Expr::eq(Expr::truth(), Expr::falsity())),
    )];
    if mode == BoolSemantics::Axiomatized {
        let x = Var::new("X", Sort::Bool);
        out.push(Unit::formula(
            "fool_bool_domain",
            Role::Axiom,
            Expr::forall(
                vec![x.clone()],
                Expr::or(vec![
                    Expr::eq(Expr::Var(x.clone()), Expr::truth()),
                    Expr::eq(Expr::Var(x), Expr::falsity()),
                ]),
            ),
        ));
    }
    out
}

fn type_unit(s: &Symbol) -> Unit {
    Unit::symbol_decl(format!("fool_type_{}", s.name()), s.clone())
}

/// Translates every formula of `p`; the result uses no `$ite`, `$let`,
/// formulas in term positions or boolean variables in formula positions.
pub fn translate_problem(
    p: &Problem,
    opts: TranslateOptions,
) -> Result<(Problem, TranslationTrace), TranslateError> {
    let mut sig = p.signature.clone();
    let mut trace = TranslationTrace::default();
    let mut units = Vec::new();
    let mut def_count = 0usize;
    for u in &p.units {
        let Some(e0) = u.as_formula() else {
            units.push(u.clone());
            continue;
        };
        let e1 = normalize_bool_equalities(e0);
        trace.steps.push(TraceStep {
            pass: Pass::NormalizeEqualities,
            unit: u.name.clone(),
            before: Some(e0.clone()),
            after: Some(e1.clone()),
            introduced: Vec::new(),
        });
        let mut el = Eliminator::new(
            &mut sig,
            Passes {
                lift: true,
                ite: true,
                let_: true,
            },
        );
        let e2 = el.process(&e1)?;
        let fresh = std::mem::take(&mut el.fresh);
        let defs = std::mem::take(&mut el.defs);
        let mut introduced: Vec<Unit> = fresh.iter().map(type_unit).collect();
        for d in defs {
            introduced.push(Unit::formula(
                format!("fool_def_{def_count}"),
                Role::Axiom,
                eliminate_bool_variables(&d),
            ));
            def_count += 1;
        }
        let e3 = eliminate_bool_variables(&e2);
        trace.steps.push(TraceStep {
            pass: Pass::EliminateFool,
            unit: u.name.clone(),
            before: Some(e1),
            after: Some(e2.clone()),
            introduced: introduced.clone(),
        });
        trace.steps.push(TraceStep {
            pass: Pass::BoolVariables,
            unit: u.name.clone(),
            before: Some(e2),
            after: Some(e3.clone()),
            introduced: Vec::new(),
        });
        units.extend(introduced.iter().filter(|i| i.role == Role::Type).cloned());
        units.push(Unit::formula(u.name.clone(), u.role, e3));
        units.extend(introduced.into_iter().filter(|i| i.role != Role::Type));
    }
    // Axioms already present, as in re-translated output, are not repeated.
    let present = |a: &Unit| p.units.iter().any(|u| u == a);
    if opts.theory_axioms {
        let mut ax = arrays::array_axioms(p);
        ax.retain(|a| !present(a));
        if !ax.is_empty() {
            units.extend(ax.iter().cloned());
            trace.steps.push(TraceStep {
                pass: Pass::ArrayAxioms,
                unit: String::new(),
                before: None,
                after: None,
                introduced: ax,
            });
        }
    }
    let mut bool_ax = emit_bool_axioms(opts.mode);
    bool_ax.retain(|a| !present(a));
    units.extend(bool_ax.iter().cloned());
    trace.steps.push(TraceStep {
        pass: Pass::BoolAxioms,
        unit: String::new(),
        before: None,
        after: None,
        introduced: bool_ax,
    });
    Ok((
        Problem {
            units,
            signature: sig,
        },
        trace,
    ))
}

/// Checks that `e` lies in the first-order fragment produced by
/// translation. Returns a description of the first violation.
pub fn check_first_order(e: &Expr) -> Result<(), String> {
    fn term(e: &Expr) -> Result<(), String> {
        match e {
            Expr::Var(_) => Ok(()),
            Expr::App(s, xs) => {
                if e.sort().is_bool()
                    && !s.is_true()
                    && !s.is_false()
                    && s.origin() != Some(Origin::Lift)
                {
                    return Err(format!("boolean argument {}", print_expr(e)));
                }
                xs.iter().try_for_each(term)
            }
            _ => Err(format!("non-term in argument position: {}", print_expr(e))),
        }
    }
    fn formula(e: &Expr) -> Result<(), String> {
        match e {
            Expr::Var(v) => Err(format!("boolean variable {} in formula position", v.name)),
            Expr::App(_, xs) => xs.iter().try_for_each(term),
            Expr::Eq(l, r) => {
                term(l)?;
                term(r)
            }
            Expr::Conn(_, xs) => xs.iter().try_for_each(formula),
            Expr::Quant(_, _, b) => formula(b),
            _ => Err(format!("FOOL construct {}", print_expr(e))),
        }
    }
    formula(e)
}

/// Universal closure of a formula's free variables.
pub fn close(e: Expr) -> Expr {
    let fv = e.free_vars();
    if fv.is_empty() {
        e
    } else {
        Expr::Quant(Quantifier::Forall, fv, Box::new(e))
    }
}
