//! Generating inference rules. Conclusions are built by pure functions so the
//! proof checker can replay them.

use std::collections::HashSet;

use super::clause::{is_maximal, max_var, not_smaller, Lit};
use super::kbo::{kbo, TermOrder};
use super::term::{SymTable, Term, FALSE, TRUE};
use super::unify::{apply, instantiate, match_with, resolved, unify, Unifier};

/// How a clause was obtained. Parent references are clause ids.
#[derive(Clone, Debug, PartialEq)]
pub enum Inference {
    Input {
        name: String,
        conjecture: bool,
    },
    Superposition {
        into: usize,
        into_lit: usize,
        into_left: bool,
        pos: Vec<usize>,
        from: usize,
        from_lit: usize,
        from_left: bool,
        unifier: Vec<(u32, Term)>,
    },
    EqResolution {
        parent: usize,
        lit: usize,
        unifier: Vec<(u32, Term)>,
    },
    EqFactoring {
        parent: usize,
        lit: usize,
        left: bool,
        other: usize,
        other_left: bool,
        unifier: Vec<(u32, Term)>,
    },
    FoolParamodulation {
        parent: usize,
        subterm: Term,
    },
    /// Resolution of literal `lit` of `clause` against the ground unit
    /// `unit`, regardless of literal ordering.
    UnitResolution {
        clause: usize,
        lit: usize,
        unit: usize,
        flip: bool,
        unifier: Vec<(u32, Term)>,
    },
    /// Removal of literals of `target` that are instances of the complement
    /// of a unit clause; pairs are (unit id, literal index at that point).
    UnitDeletion {
        target: usize,
        deletions: Vec<(usize, usize)>,
    },
    /// Rewriting of `target` by positive unit equations.
    Demodulation {
        target: usize,
        steps: Vec<Rewrite>,
    },
}

/// One rewrite of the subterm at `pos` in side `in_left` of literal `lit`
/// by the unit clause `unit`, oriented left to right when `left` holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub unit: usize,
    pub left: bool,
    pub lit: usize,
    pub in_left: bool,
    pub pos: Vec<usize>,
}

impl Inference {
    pub fn parents(&self) -> Vec<usize> {
        match self {
            Inference::Input { .. } => vec![],
            Inference::Superposition { into, from, .. } => vec![*into, *from],
            Inference::EqResolution { parent, .. }
            | Inference::EqFactoring { parent, .. }
            | Inference::FoolParamodulation { parent, .. } => vec![*parent],
            Inference::UnitResolution { clause, unit, .. } => vec![*clause, *unit],
            Inference::UnitDeletion { target, deletions } => {
                let mut v = vec![*target];
                for (u, _) in deletions {
                    if !v.contains(u) {
                        v.push(*u);
                    }
                }
                v
            }
            Inference::Demodulation { target, steps } => {
                let mut v = vec![*target];
                for r in steps {
                    if !v.contains(&r.unit) {
                        v.push(r.unit);
                    }
                }
                v
            }
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Inference::Input { .. } => "input",
            Inference::Superposition { .. } => "superposition",
            Inference::EqResolution { .. } => "equality_resolution",
            Inference::EqFactoring { .. } => "equality_factoring",
            Inference::FoolParamodulation { .. } => "fool_paramodulation",
            Inference::Demodulation { .. } => "demodulation",
            Inference::UnitDeletion { .. } => "unit_deletion",
            Inference::UnitResolution { .. } => "unit_resolution",
        }
    }
}

pub fn to_unifier(v: &[(u32, Term)]) -> Unifier {
    v.iter().cloned().collect()
}

/// Offset applied to the variables of the `from` premise of a superposition.
pub fn shift_for(into: &[Lit]) -> u32 {
    max_var(into).map_or(0, |m| m + 1)
}

pub fn shifted(c: &[Lit], by: u32) -> Vec<Lit> {
    c.iter().map(|l| l.map(|t| t.shift(by))).collect()
}

/// Conclusion of superposing `from[fl]` (oriented by `from_left`) into the
/// subterm at `pos` of `into[il]`. `from` must already be renamed apart.
#[allow(clippy::too_many_arguments)]
pub fn superposition_conclusion(
    into: &[Lit],
    il: usize,
    into_left: bool,
    pos: &[usize],
    from: &[Lit],
    fl: usize,
    from_left: bool,
    s: &Unifier,
) -> Option<Vec<Lit>> {
    let target = into.get(il)?;
    let eq = from.get(fl)?;
    if !eq.pos {
        return None;
    }
    let (side, other) = target.side(into_left);
    let (_, r) = eq.side(from_left);
    let rewritten = side.replace_at(pos, r)?;
    let new_lit = if into_left {
        Lit::new(target.pos, rewritten, other.clone())
    } else {
        Lit::new(target.pos, other.clone(), rewritten)
    };
    let mut out = Vec::new();
    for (k, l) in into.iter().enumerate() {
        out.push(if k == il {
            new_lit.apply(s)
        } else {
            l.apply(s)
        });
    }
    for (k, l) in from.iter().enumerate() {
        if k != fl {
            out.push(l.apply(s));
        }
    }
    Some(out)
}

/// Checks that `s` unifies the rewritten subterm with the equation side.
#[allow(clippy::too_many_arguments)]
pub fn superposition_unifies(
    into: &[Lit],
    il: usize,
    into_left: bool,
    pos: &[usize],
    from: &[Lit],
    fl: usize,
    from_left: bool,
    s: &Unifier,
) -> bool {
    let (Some(t), Some(e)) = (into.get(il), from.get(fl)) else {
        return false;
    };
    let Some(u) = t.side(into_left).0.at(pos) else {
        return false;
    };
    !u.is_var() && apply(u, s) == apply(e.side(from_left).0, s)
}

pub fn eq_resolution_conclusion(c: &[Lit], lit: usize, s: &Unifier) -> Option<Vec<Lit>> {
    let l = c.get(lit)?;
    if l.pos || apply(&l.l, s) != apply(&l.r, s) {
        return None;
    }
    Some(
        c.iter()
            .enumerate()
            .filter(|(k, _)| *k != lit)
            .map(|(_, l)| l.apply(s))
            .collect(),
    )
}

pub fn eq_factoring_conclusion(
    c: &[Lit],
    lit: usize,
    left: bool,
    other: usize,
    other_left: bool,
    s: &Unifier,
) -> Option<Vec<Lit>> {
    let (a, b) = (c.get(lit)?, c.get(other)?);
    if lit == other || !a.pos || !b.pos {
        return None;
    }
    let (sa, ta) = a.side(left);
    let (sb, tb) = b.side(other_left);
    if apply(sa, s) != apply(sb, s) {
        return None;
    }
    let mut out: Vec<Lit> = c
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != lit)
        .map(|(_, l)| l.apply(s))
        .collect();
    out.push(Lit::new(false, apply(ta, s), apply(tb, s)));
    Some(out)
}

pub fn fool_paramodulation_conclusion(c: &[Lit], u: &Term, tab: &SymTable) -> Option<Vec<Lit>> {
    if u.is_var() || tab.sort_of(u) != tab.bool_sort() || is_truth_value(u) {
        return None;
    }
    let t = Term::constant(TRUE);
    let mut out: Vec<Lit> = c.iter().map(|l| l.map(|x| x.replace_all(u, &t))).collect();
    out.push(Lit::new(true, u.clone(), Term::constant(FALSE)));
    Some(out)
}

fn is_truth_value(t: &Term) -> bool {
    *t == Term::constant(TRUE) || *t == Term::constant(FALSE)
}

/// A conclusion together with the inference that produced it.
pub type Derived = (Vec<Lit>, Inference);

fn instantiated(c: &[Lit], s: &Unifier) -> Vec<Lit> {
    c.iter().map(|l| l.apply(s)).collect()
}

/// Literals that are maximal before instantiation; only these can be
/// maximal in any instance.
pub fn maximal_flags(c: &[Lit], tab: &SymTable) -> Vec<bool> {
    (0..c.len()).map(|k| is_maximal(c, k, false, tab)).collect()
}

/// A clause with its precomputed [`maximal_flags`].
#[derive(Clone, Copy)]
pub struct Premise<'a> {
    pub lits: &'a [Lit],
    pub id: usize,
    pub maximal: &'a [bool],
}

/// All superposition inferences from `from` into `into`.
pub fn superpositions(into: Premise, from: Premise, tab: &SymTable, out: &mut Vec<Derived>) {
    let (iid, fid) = (into.id, from.id);
    let by = shift_for(into.lits);
    let from_s = shifted(from.lits, by);
    let into_max = into.maximal;
    let into = into.lits;
    for (fl, eq) in from_s.iter().enumerate() {
        if !eq.pos || !from.maximal[fl] {
            continue;
        }
        for from_left in [true, false] {
            let (l, r) = eq.side(from_left);
            if !not_smaller(l, r, tab) {
                continue;
            }
            let l_sort = tab.sort_of(l);
            for (il, target) in into.iter().enumerate() {
                if !into_max[il] {
                    continue;
                }
                for into_left in [true, false] {
                    let (side, other) = target.side(into_left);
                    if !not_smaller(side, other, tab) {
                        continue;
                    }
                    let mut ps = Vec::new();
                    side.positions(&mut ps, &mut Vec::new());
                    for p in ps {
                        let u = side.at(&p).unwrap();
                        if tab.sort_of(u) != l_sort {
                            continue;
                        }
                        if let (Term::App(f, _), Term::App(g, _)) = (u, l) {
                            if f != g {
                                continue;
                            }
                        }
                        let Some(s) = unify(u, l, tab) else { continue };
                        if !not_smaller(&apply(l, &s), &apply(r, &s), tab)
                            || !not_smaller(&apply(side, &s), &apply(other, &s), tab)
                        {
                            continue;
                        }
                        let fi = instantiated(&from_s, &s);
                        if !is_maximal(&fi, fl, true, tab) {
                            continue;
                        }
                        let ii = instantiated(into, &s);
                        if !is_maximal(&ii, il, target.pos, tab) {
                            continue;
                        }
                        let Some(c) = superposition_conclusion(
                            into, il, into_left, &p, &from_s, fl, from_left, &s,
                        ) else {
                            continue;
                        };
                        out.push((
                            c,
                            Inference::Superposition {
                                into: iid,
                                into_lit: il,
                                into_left,
                                pos: p,
                                from: fid,
                                from_lit: fl,
                                from_left,
                                unifier: resolved(&s),
                            },
                        ));
                    }
                }
            }
        }
    }
}

pub fn eq_resolutions(c: &[Lit], id: usize, tab: &SymTable, out: &mut Vec<Derived>) {
    for (k, l) in c.iter().enumerate() {
        if l.pos {
            continue;
        }
        let Some(s) = unify(&l.l, &l.r, tab) else {
            continue;
        };
        if !is_maximal(&instantiated(c, &s), k, false, tab) {
            continue;
        }
        if let Some(r) = eq_resolution_conclusion(c, k, &s) {
            out.push((
                r,
                Inference::EqResolution {
                    parent: id,
                    lit: k,
                    unifier: resolved(&s),
                },
            ));
        }
    }
}

pub fn eq_factorings(c: &[Lit], id: usize, tab: &SymTable, out: &mut Vec<Derived>) {
    for (i, a) in c.iter().enumerate() {
        if !a.pos {
            continue;
        }
        for (j, b) in c.iter().enumerate() {
            if i == j || !b.pos {
                continue;
            }
            for left in [true, false] {
                for other_left in [true, false] {
                    let (sa, ta) = a.side(left);
                    let (sb, _) = b.side(other_left);
                    let Some(s) = unify(sa, sb, tab) else {
                        continue;
                    };
                    if !not_smaller(&apply(sa, &s), &apply(ta, &s), tab) {
                        continue;
                    }
                    if !is_maximal(&instantiated(c, &s), i, false, tab) {
                        continue;
                    }
                    if let Some(r) = eq_factoring_conclusion(c, i, left, j, other_left, &s) {
                        out.push((
                            r,
                            Inference::EqFactoring {
                                parent: id,
                                lit: i,
                                left,
                                other: j,
                                other_left,
                                unifier: resolved(&s),
                            },
                        ));
                    }
                }
            }
        }
    }
}

/// Bool-sorted non-variable subterms other than `$true`/`$false` that occur in
/// a maximal side of a maximal literal.
pub fn fool_candidates(c: &[Lit], tab: &SymTable) -> Vec<Term> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (k, l) in c.iter().enumerate() {
        if !is_maximal(c, k, false, tab) {
            continue;
        }
        for left in [true, false] {
            let (side, other) = l.side(left);
            if !not_smaller(side, other, tab) {
                continue;
            }
            let mut subs = Vec::new();
            side.subterms(&mut subs);
            for u in subs {
                if !u.is_var()
                    && tab.sort_of(u) == tab.bool_sort()
                    && !is_truth_value(u)
                    && seen.insert(u.clone())
                {
                    out.push(u.clone());
                }
            }
        }
    }
    out
}

pub fn fool_paramodulations(c: &[Lit], id: usize, tab: &SymTable, out: &mut Vec<Derived>) {
    for u in fool_candidates(c, tab) {
        if let Some(r) = fool_paramodulation_conclusion(c, &u, tab) {
            out.push((
                r,
                Inference::FoolParamodulation {
                    parent: id,
                    subterm: u,
                },
            ));
        }
    }
}

/// Applies one recorded rewrite; the unit side is matched against the subterm.
pub fn rewrite_step(c: &[Lit], eq: &Lit, rw: &Rewrite) -> Option<Vec<Lit>> {
    if !eq.pos {
        return None;
    }
    let (l, r) = eq.side(rw.left);
    let target = c.get(rw.lit)?;
    let (side, other) = target.side(rw.in_left);
    let u = side.at(&rw.pos)?;
    let mut m = Unifier::new();
    if !match_with(l, u, &mut m) || r.max_var().is_some_and(|_| !vars_bound(r, &m)) {
        return None;
    }
    let new_side = side.replace_at(&rw.pos, &instantiate(r, &m))?;
    let lit = if rw.in_left {
        Lit::new(target.pos, new_side, other.clone())
    } else {
        Lit::new(target.pos, other.clone(), new_side)
    };
    let mut out = c.to_vec();
    out[rw.lit] = lit;
    Some(out)
}

fn vars_bound(t: &Term, m: &Unifier) -> bool {
    match t {
        Term::Var(v, _) => m.contains_key(v),
        Term::App(_, xs) => xs.iter().all(|x| vars_bound(x, m)),
    }
}

/// Rewrites `c` to normal form with the given positive unit equations, using
/// only instances whose left side is strictly greater than their right side.
pub fn demodulate(
    c: &[Lit],
    units: &[(usize, &Lit)],
    tab: &SymTable,
    max_steps: usize,
) -> Option<(Vec<Lit>, Vec<Rewrite>)> {
    let mut cur = c.to_vec();
    let mut steps = Vec::new();
    'outer: while steps.len() < max_steps {
        for (k, lit) in cur.iter().enumerate() {
            for in_left in [true, false] {
                let side = lit.side(in_left).0;
                let mut ps = Vec::new();
                side.positions(&mut ps, &mut Vec::new());
                for p in ps {
                    let u = side.at(&p).unwrap();
                    for (id, eq) in units {
                        for left in [true, false] {
                            let (l, r) = eq.side(left);
                            let (Term::App(f, _), Term::App(g, _)) = (l, u) else {
                                continue;
                            };
                            if f != g {
                                continue;
                            }
                            let mut m = Unifier::new();
                            if !match_with(l, u, &mut m) || !vars_bound(r, &m) {
                                continue;
                            }
                            let rr = instantiate(r, &m);
                            if kbo(u, &rr, tab) != TermOrder::Greater {
                                continue;
                            }
                            let rw = Rewrite {
                                unit: *id,
                                left,
                                lit: k,
                                in_left,
                                pos: p.clone(),
                            };
                            cur = rewrite_step(&cur, eq, &rw)?;
                            steps.push(rw);
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    (!steps.is_empty()).then_some((cur, steps))
}

pub fn is_ground_lit(l: &Lit) -> bool {
    l.l.max_var().is_none() && l.r.max_var().is_none()
}

pub fn unit_resolution_conclusion(
    c: &[Lit],
    lit: usize,
    unit: &Lit,
    flip: bool,
    s: &Unifier,
) -> Option<Vec<Lit>> {
    let l = c.get(lit)?;
    if l.pos == unit.pos || !is_ground_lit(unit) {
        return None;
    }
    let (a, b) = unit.side(!flip);
    if apply(&l.l, s) != *a || apply(&l.r, s) != *b {
        return None;
    }
    Some(
        c.iter()
            .enumerate()
            .filter(|(k, _)| *k != lit)
            .map(|(_, l)| l.apply(s))
            .collect(),
    )
}

/// Resolves every literal of `c` against the complementary ground unit `unit`.
pub fn unit_resolutions(
    c: &[Lit],
    cid: usize,
    unit: &Lit,
    uid: usize,
    tab: &SymTable,
    out: &mut Vec<Derived>,
) {
    for (k, l) in c.iter().enumerate() {
        if l.pos == unit.pos {
            continue;
        }
        for flip in [false, true] {
            let (a, b) = unit.side(!flip);
            let mut s = Unifier::new();
            if !(super::unify::unify_with(&l.l, a, &mut s, tab)
                && super::unify::unify_with(&l.r, b, &mut s, tab))
            {
                continue;
            }
            if let Some(r) = unit_resolution_conclusion(c, k, unit, flip, &s) {
                out.push((
                    r,
                    Inference::UnitResolution {
                        clause: cid,
                        lit: k,
                        unit: uid,
                        flip,
                        unifier: resolved(&s),
                    },
                ));
            }
        }
    }
}

/// Whether `target` is an instance of the complement of the unit literal `unit`.
pub fn deletes(unit: &Lit, target: &Lit) -> bool {
    if unit.pos == target.pos {
        return false;
    }
    [(&target.l, &target.r), (&target.r, &target.l)]
        .into_iter()
        .any(|(a, b)| {
            let mut m = Unifier::new();
            match_with(&unit.l, a, &mut m) && match_with(&unit.r, b, &mut m)
        })
}

/// The remaining literals and, per deleted literal, (unit, literal index).
pub type UnitDeletion = (Vec<Lit>, Vec<(usize, usize)>);

/// Deletes every literal of `c` refuted by one of `units`.
pub fn unit_deletions(c: &[Lit], units: &[(usize, &Lit)]) -> Option<UnitDeletion> {
    let mut cur = c.to_vec();
    let mut dels = Vec::new();
    let mut k = 0;
    while k < cur.len() {
        match units.iter().find(|(_, u)| deletes(u, &cur[k])) {
            Some((id, _)) => {
                dels.push((*id, k));
                cur.remove(k);
            }
            None => k += 1,
        }
    }
    (!dels.is_empty()).then_some((cur, dels))
}

/// Re-derives the conclusion of a non-input inference from its premises.
pub fn replay(
    inf: &Inference,
    premise: impl Fn(usize) -> Option<Vec<Lit>>,
    tab: &SymTable,
) -> Option<Vec<Lit>> {
    match inf {
        Inference::Input { .. } => None,
        Inference::Superposition {
            into,
            into_lit,
            into_left,
            pos,
            from,
            from_lit,
            from_left,
            unifier,
        } => {
            let ic = premise(*into)?;
            let fc = shifted(&premise(*from)?, shift_for(&ic));
            let s = to_unifier(unifier);
            if !superposition_unifies(
                &ic, *into_lit, *into_left, pos, &fc, *from_lit, *from_left, &s,
            ) {
                return None;
            }
            superposition_conclusion(
                &ic, *into_lit, *into_left, pos, &fc, *from_lit, *from_left, &s,
            )
        }
        Inference::EqResolution {
            parent,
            lit,
            unifier,
        } => eq_resolution_conclusion(&premise(*parent)?, *lit, &to_unifier(unifier)),
        Inference::EqFactoring {
            parent,
            lit,
            left,
            other,
            other_left,
            unifier,
        } => eq_factoring_conclusion(
            &premise(*parent)?,
            *lit,
            *left,
            *other,
            *other_left,
            &to_unifier(unifier),
        ),
        Inference::UnitResolution {
            clause,
            lit,
            unit,
            flip,
            unifier,
        } => {
            let u = premise(*unit)?;
            let [u] = u.as_slice() else { return None };
            unit_resolution_conclusion(&premise(*clause)?, *lit, u, *flip, &to_unifier(unifier))
        }
        Inference::UnitDeletion { target, deletions } => {
            let mut c = premise(*target)?;
            for (u, k) in deletions {
                let unit = premise(*u)?;
                let [l] = unit.as_slice() else { return None };
                if !deletes(l, c.get(*k)?) {
                    return None;
                }
                c.remove(*k);
            }
            Some(c)
        }
        Inference::Demodulation { target, steps } => {
            let mut c = premise(*target)?;
            for rw in steps {
                let unit = premise(rw.unit)?;
                let [eq] = unit.as_slice() else { return None };
                c = rewrite_step(&c, eq, rw)?;
            }
            Some(c)
        }
        Inference::FoolParamodulation { parent, subterm } => {
            let c = premise(*parent)?;
            let mut subs = Vec::new();
            for l in &c {
                l.l.subterms(&mut subs);
                l.r.subterms(&mut subs);
            }
            if !subs.contains(&subterm) {
                return None;
            }
            fool_paramodulation_conclusion(&c, subterm, tab)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Sort, Symbol};
    use crate::prover::term::{PROP, TT};

    #[test]
    fn fool_paramodulation_examples() {
        let mut t = SymTable::new();
        let p = t.symbol(&Symbol::user("p", vec![Sort::Bool], Sort::Bool));
        let q = t.symbol(&Symbol::user("q", vec![Sort::Bool], Sort::Bool));
        let f = t.symbol(&Symbol::user("f", vec![Sort::Individual], Sort::Bool));
        let a = t.symbol(&Symbol::constant("a", Sort::Individual));
        t.syms[p as usize].result = PROP;
        t.syms[q as usize].result = PROP;
        let fa = Term::App(f, vec![Term::constant(a)]);
        let c = vec![Lit::new(
            true,
            Term::App(p, vec![fa.clone()]),
            Term::constant(TT),
        )];
        let mut out = Vec::new();
        fool_paramodulations(&c, 0, &t, &mut out);
        assert_eq!(out.len(), 1);
        let expected = vec![
            Lit::new(
                true,
                Term::App(p, vec![Term::constant(TRUE)]),
                Term::constant(TT),
            ),
            Lit::new(true, fa, Term::constant(FALSE)),
        ];
        assert_eq!(out[0].0, expected);

        let qt = vec![Lit::new(
            true,
            Term::App(q, vec![Term::constant(TRUE)]),
            Term::constant(TT),
        )];
        let mut none = Vec::new();
        fool_paramodulations(&qt, 0, &t, &mut none);
        assert!(none.is_empty());

        let px = vec![Lit::new(
            true,
            Term::App(p, vec![Term::Var(0, t.bool_sort())]),
            Term::constant(TT),
        )];
        fool_paramodulations(&px, 0, &t, &mut none);
        assert!(none.is_empty());
    }

    #[test]
    fn superposition_replays() {
        let mut t = SymTable::new();
        let f = t.symbol(&Symbol::user("f", vec![Sort::Individual], Sort::Individual));
        let a = t.symbol(&Symbol::constant("a", Sort::Individual));
        let b = t.symbol(&Symbol::constant("b", Sort::Individual));
        let i = t.sort_of(&Term::constant(a));
        let into = vec![Lit::new(
            false,
            Term::App(f, vec![Term::constant(a)]),
            Term::constant(b),
        )];
        let from = vec![Lit::new(
            true,
            Term::App(f, vec![Term::Var(0, i)]),
            Term::Var(0, i),
        )];
        let mut out = Vec::new();
        let (im, fm) = (maximal_flags(&into, &t), maximal_flags(&from, &t));
        let ip = Premise {
            lits: &into,
            id: 0,
            maximal: &im,
        };
        let fp = Premise {
            lits: &from,
            id: 1,
            maximal: &fm,
        };
        superpositions(ip, fp, &t, &mut out);
        assert_eq!(out.len(), 1);
        let (c, inf) = &out[0];
        assert_eq!(
            c,
            &vec![Lit::new(false, Term::constant(a), Term::constant(b))]
        );
        let prem = |k: usize| Some(if k == 0 { into.clone() } else { from.clone() });
        assert_eq!(replay(inf, prem, &t).as_ref(), Some(c));
    }
}
