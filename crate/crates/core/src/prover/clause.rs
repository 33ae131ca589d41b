//! Prover literals and clauses.

use std::collections::HashMap;

use super::kbo::{kbo, TermOrder};
use super::term::{SymTable, Term, FALSE, TRUE, TT};
use super::unify::{apply, match_with, Unifier};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lit {
    pub pos: bool,
    pub l: Term,
    pub r: Term,
}

impl Lit {
    pub fn new(pos: bool, l: Term, r: Term) -> Lit {
        Lit { pos, l, r }
    }

    pub fn apply(&self, s: &Unifier) -> Lit {
        Lit::new(self.pos, apply(&self.l, s), apply(&self.r, s))
    }

    pub fn map(&self, f: impl Fn(&Term) -> Term) -> Lit {
        Lit::new(self.pos, f(&self.l), f(&self.r))
    }

    pub fn side(&self, left: bool) -> (&Term, &Term) {
        if left {
            (&self.l, &self.r)
        } else {
            (&self.r, &self.l)
        }
    }

    pub fn same_atom(&self, o: &Lit) -> bool {
        (self.l == o.l && self.r == o.r) || (self.l == o.r && self.r == o.l)
    }

    pub fn size(&self) -> usize {
        self.l.size() + self.r.size()
    }

    pub fn show(&self, tab: &SymTable) -> String {
        if self.r == Term::constant(TT) {
            let a = tab.show(&self.l);
            return if self.pos { a } else { format!("~{a}") };
        }
        let op = if self.pos { "=" } else { "!=" };
        format!("{} {op} {}", tab.show(&self.l), tab.show(&self.r))
    }
}

/// Orders two literals by the multiset extension of the term ordering.
pub fn lit_compare(a: &Lit, b: &Lit, tab: &SymTable) -> TermOrder {
    let ms = |x: &Lit| {
        if x.pos {
            vec![x.l.clone(), x.r.clone()]
        } else {
            vec![x.l.clone(), x.l.clone(), x.r.clone(), x.r.clone()]
        }
    };
    multiset_compare(ms(a), ms(b), tab)
}

fn multiset_compare(mut m: Vec<Term>, mut n: Vec<Term>, tab: &SymTable) -> TermOrder {
    let mut k = 0;
    while k < m.len() {
        if let Some(j) = n.iter().position(|t| *t == m[k]) {
            m.swap_remove(k);
            n.swap_remove(j);
        } else {
            k += 1;
        }
    }
    if m.is_empty() && n.is_empty() {
        return TermOrder::Equal;
    }
    let dominates = |xs: &[Term], ys: &[Term], want: TermOrder| {
        !xs.is_empty() && ys.iter().all(|y| xs.iter().any(|x| kbo(x, y, tab) == want))
    };
    if dominates(&m, &n, TermOrder::Greater) {
        TermOrder::Greater
    } else if dominates(&n, &m, TermOrder::Greater) {
        TermOrder::Less
    } else {
        TermOrder::Incomparable
    }
}

/// Whether literal `i` is maximal (or strictly maximal) among `lits`.
pub fn is_maximal(lits: &[Lit], i: usize, strict: bool, tab: &SymTable) -> bool {
    lits.iter().enumerate().all(|(j, l)| {
        if j == i {
            return true;
        }
        match lit_compare(l, &lits[i], tab) {
            TermOrder::Greater => false,
            TermOrder::Equal => !strict,
            _ => true,
        }
    })
}

/// Whether `s` may be the larger side of an equation `s = t`.
pub fn not_smaller(s: &Term, t: &Term, tab: &SymTable) -> bool {
    !matches!(kbo(s, t, tab), TermOrder::Less | TermOrder::Equal)
}

/// Removes trivial disequations and duplicate literals, renames variables
/// canonically and returns `None` for tautologies. With `bool_taut` set,
/// clauses containing `t = $true` and `t = $false` for the same `t` count as
/// tautologies.
pub fn normalize(lits: Vec<Lit>, bool_taut: bool) -> Option<Vec<Lit>> {
    let mut out: Vec<Lit> = Vec::with_capacity(lits.len());
    for l in lits {
        if l.l == l.r {
            if l.pos {
                return None;
            }
            continue;
        }
        if out.iter().any(|o| o.pos == l.pos && o.same_atom(&l)) {
            continue;
        }
        if out.iter().any(|o| o.pos != l.pos && o.same_atom(&l)) {
            return None;
        }
        out.push(l);
    }
    if bool_taut {
        let bool_side = |l: &Lit, c: u32| -> Option<Term> {
            if !l.pos {
                return None;
            }
            if l.r == Term::constant(c) {
                Some(l.l.clone())
            } else if l.l == Term::constant(c) {
                Some(l.r.clone())
            } else {
                None
            }
        };
        for a in &out {
            if let Some(t) = bool_side(a, TRUE) {
                if out.iter().any(|b| bool_side(b, FALSE).as_ref() == Some(&t)) {
                    return None;
                }
            }
        }
    }
    Some(rename_canonical(out))
}

fn rename_canonical(lits: Vec<Lit>) -> Vec<Lit> {
    let mut ren: HashMap<u32, u32> = HashMap::new();
    fn go(t: &Term, ren: &mut HashMap<u32, u32>) -> Term {
        match t {
            Term::Var(v, s) => {
                let n = ren.len() as u32;
                Term::Var(*ren.entry(*v).or_insert(n), *s)
            }
            Term::App(f, xs) => Term::App(*f, xs.iter().map(|x| go(x, ren)).collect()),
        }
    }
    lits.iter()
        .map(|l| {
            let a = go(&l.l, &mut ren);
            let b = go(&l.r, &mut ren);
            Lit::new(l.pos, a, b)
        })
        .collect()
}

pub fn max_var(lits: &[Lit]) -> Option<u32> {
    lits.iter()
        .flat_map(|l| [l.l.max_var(), l.r.max_var()])
        .flatten()
        .max()
}

pub fn clause_size(lits: &[Lit]) -> usize {
    lits.iter().map(Lit::size).sum()
}

pub fn clause_weight(lits: &[Lit]) -> usize {
    clause_size(lits)
}

/// Whether some instance of `c` is a sub-multiset of `d`.
pub fn subsumes(c: &[Lit], d: &[Lit]) -> bool {
    if c.len() > d.len() {
        return false;
    }
    let mut used = vec![false; d.len()];
    subsume_from(c, d, 0, &mut used, &Unifier::new())
}

fn subsume_from(c: &[Lit], d: &[Lit], k: usize, used: &mut [bool], s: &Unifier) -> bool {
    if k == c.len() {
        return true;
    }
    let lc = &c[k];
    for (j, ld) in d.iter().enumerate() {
        if used[j] || ld.pos != lc.pos {
            continue;
        }
        for flip in [false, true] {
            let (a, b) = if flip { (&ld.r, &ld.l) } else { (&ld.l, &ld.r) };
            let mut s2 = s.clone();
            if match_with(&lc.l, a, &mut s2) && match_with(&lc.r, b, &mut s2) {
                used[j] = true;
                if subsume_from(c, d, k + 1, used, &s2) {
                    return true;
                }
                used[j] = false;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Sort, Symbol};

    fn setup() -> (SymTable, u32, u32, u32, u32) {
        let mut t = SymTable::new();
        let p = t.symbol(&Symbol::user("p", vec![Sort::Individual], Sort::Bool));
        let a = t.symbol(&Symbol::constant("a", Sort::Individual));
        let b = t.symbol(&Symbol::constant("b", Sort::Individual));
        let i = t.sort_of(&Term::constant(a));
        (t, p, a, b, i)
    }

    fn atom(p: u32, x: Term) -> Term {
        Term::App(p, vec![x])
    }

    #[test]
    fn normalization_removes_duplicates_and_tautologies() {
        let (_, p, a, b, _) = setup();
        let pa = Lit::new(true, atom(p, Term::constant(a)), Term::constant(TT));
        let neg = Lit::new(false, atom(p, Term::constant(a)), Term::constant(TT));
        assert!(normalize(vec![pa.clone(), neg], false).is_none());
        let dup = normalize(vec![pa.clone(), pa.clone()], false).unwrap();
        assert_eq!(dup.len(), 1);
        let trivial = Lit::new(false, Term::constant(b), Term::constant(b));
        assert_eq!(normalize(vec![trivial], false).unwrap(), vec![]);
    }

    #[test]
    fn bool_tautology_only_when_enabled() {
        let (mut t, _, _, _, _) = setup();
        let g = t.symbol(&Symbol::constant("g", Sort::Bool));
        let c = vec![
            Lit::new(true, Term::constant(g), Term::constant(TRUE)),
            Lit::new(true, Term::constant(g), Term::constant(FALSE)),
        ];
        assert!(normalize(c.clone(), true).is_none());
        assert!(normalize(c, false).is_some());
    }

    #[test]
    fn subsumption_by_instance() {
        let (_, p, a, b, i) = setup();
        let px = Lit::new(true, atom(p, Term::Var(0, i)), Term::constant(TT));
        let pa = Lit::new(true, atom(p, Term::constant(a)), Term::constant(TT));
        let ab = Lit::new(true, Term::constant(a), Term::constant(b));
        assert!(subsumes(
            std::slice::from_ref(&px),
            &[ab.clone(), pa.clone()]
        ));
        assert!(!subsumes(&[pa], &[px]));
        let ba = Lit::new(true, Term::constant(b), Term::constant(a));
        assert!(subsumes(&[ba], &[ab]));
    }

    #[test]
    fn negative_literals_dominate_positive_ones_with_same_max() {
        let (t, p, a, _, _) = setup();
        let pa = atom(p, Term::constant(a));
        let pos = Lit::new(true, pa.clone(), Term::constant(TT));
        let neg = Lit::new(false, pa, Term::constant(TT));
        assert_eq!(lit_compare(&neg, &pos, &t), TermOrder::Greater);
        assert!(is_maximal(&[pos.clone(), neg.clone()], 1, true, &t));
        assert!(!is_maximal(&[pos, neg], 0, false, &t));
    }
}
