//! Refutation proofs and their independent replay.

use std::collections::HashMap;

use super::clause::{normalize, Lit};
use super::infer::{replay, Inference};
use super::term::SymTable;
use crate::tptp::atom_name;

#[derive(Clone, Debug, PartialEq)]
pub struct ProofStep {
    pub id: usize,
    pub lits: Vec<Lit>,
    pub inference: Inference,
}

/// Proof steps in dependency order; the refutation ends with the empty clause.
#[derive(Clone, Debug)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
    pub table: SymTable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("corrupt proof at step {step}")]
pub struct CorruptProof {
    pub step: usize,
}

/// Replays every inference of `proof` from its recorded premises and unifier.
/// Returns `Ok(false)` when the steps are consistent but none is the empty clause.
pub fn check_proof(proof: &Proof) -> Result<bool, CorruptProof> {
    let mut seen: HashMap<usize, &Vec<Lit>> = HashMap::new();
    for step in &proof.steps {
        if seen.contains_key(&step.id) {
            return Err(CorruptProof { step: step.id });
        }
        if !matches!(step.inference, Inference::Input { .. }) {
            let parents = step.inference.parents();
            if parents.iter().any(|p| !seen.contains_key(p)) {
                return Err(CorruptProof { step: step.id });
            }
            let concl = replay(
                &step.inference,
                |k| seen.get(&k).map(|c| (*c).clone()),
                &proof.table,
            )
            .and_then(|c| normalize(c, false));
            if concl.as_ref() != Some(&step.lits) {
                return Err(CorruptProof { step: step.id });
            }
        }
        seen.insert(step.id, &step.lits);
    }
    Ok(proof.steps.last().is_some_and(|s| s.lits.is_empty()))
}

pub fn show_clause(lits: &[Lit], tab: &SymTable) -> String {
    if lits.is_empty() {
        return "$false".into();
    }
    lits.iter()
        .map(|l| l.show(tab))
        .collect::<Vec<_>>()
        .join(" | ")
}

impl Proof {
    /// The proof as a TPTP derivation.
    pub fn to_tptp(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let body = show_clause(&s.lits, &self.table);
            let line = match &s.inference {
                Inference::Input { name, conjecture } => {
                    let role = if *conjecture {
                        "negated_conjecture"
                    } else {
                        "axiom"
                    };
                    format!(
                        "cnf(c{}, {role}, {body}, file('input', {})).",
                        s.id,
                        atom_name(name, false)
                    )
                }
                inf => {
                    let parents = inf
                        .parents()
                        .iter()
                        .map(|p| format!("c{p}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    format!(
                        "cnf(c{}, plain, {body}, inference({}, [status(thm)], [{parents}])).",
                        s.id,
                        inf.rule_name()
                    )
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}
