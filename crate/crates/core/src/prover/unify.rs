//! Sort-respecting syntactic unification and matching.

use std::collections::HashMap;

use super::term::{SymTable, Term};

pub type Unifier = HashMap<u32, Term>;

pub fn apply(t: &Term, s: &Unifier) -> Term {
    match t {
        Term::Var(v, _) => match s.get(v) {
            Some(u) => apply(u, s),
            None => t.clone(),
        },
        Term::App(f, xs) => Term::App(*f, xs.iter().map(|x| apply(x, s)).collect()),
    }
}

fn walk<'a>(t: &'a Term, s: &'a Unifier) -> &'a Term {
    let mut cur = t;
    while let Term::Var(v, _) = cur {
        match s.get(v) {
            Some(u) => cur = u,
            None => break,
        }
    }
    cur
}

fn occurs(v: u32, t: &Term, s: &Unifier) -> bool {
    match walk(t, s) {
        Term::Var(w, _) => *w == v,
        Term::App(_, xs) => xs.iter().any(|x| occurs(v, x, s)),
    }
}

/// Extends `s` to a most general unifier of `a` and `b`.
pub fn unify_with(a: &Term, b: &Term, s: &mut Unifier, tab: &SymTable) -> bool {
    let (a_own, b_own);
    let a = match a {
        Term::Var(v, _) if s.contains_key(v) => {
            a_own = walk(a, s).clone();
            &a_own
        }
        _ => a,
    };
    let b = match b {
        Term::Var(v, _) if s.contains_key(v) => {
            b_own = walk(b, s).clone();
            &b_own
        }
        _ => b,
    };
    match (a, b) {
        (Term::Var(x, _), Term::Var(y, _)) if x == y => true,
        (Term::Var(x, sx), t) | (t, Term::Var(x, sx)) => {
            if tab.sort_of(t) != *sx || occurs(*x, t, s) {
                return false;
            }
            s.insert(*x, t.clone());
            true
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| unify_with(x, y, s, tab))
        }
    }
}

pub fn unify(a: &Term, b: &Term, tab: &SymTable) -> Option<Unifier> {
    let mut s = Unifier::new();
    unify_with(a, b, &mut s, tab).then_some(s)
}

/// Extends `s` so that `pattern` instantiated by `s` equals `target`.
pub fn match_with(pattern: &Term, target: &Term, s: &mut Unifier) -> bool {
    match (pattern, target) {
        (Term::Var(v, sv), _) => {
            if let Term::Var(_, st) = target {
                if st != sv {
                    return false;
                }
            }
            match s.get(v) {
                Some(b) => b == target,
                None => {
                    s.insert(*v, target.clone());
                    true
                }
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_with(x, y, s))
        }
        _ => false,
    }
}

/// Applies a matcher: bound variables are replaced once, without chasing.
pub fn instantiate(t: &Term, s: &Unifier) -> Term {
    match t {
        Term::Var(v, _) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, xs) => Term::App(*f, xs.iter().map(|x| instantiate(x, s)).collect()),
    }
}

/// Fully resolved form of a unifier, suitable for recording.
pub fn resolved(s: &Unifier) -> Vec<(u32, Term)> {
    let mut out: Vec<(u32, Term)> = s.keys().map(|k| (*k, apply(&s[k], s))).collect();
    out.sort_by_key(|(k, _)| *k);
    out
}
