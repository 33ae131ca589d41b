//! Knuth-Bendix ordering with unit weights.

use super::term::{SymTable, Term};
use crate::logic::{Expr, Signature, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl TermOrder {
    pub fn reverse(self) -> TermOrder {
        match self {
            TermOrder::Greater => TermOrder::Less,
            TermOrder::Less => TermOrder::Greater,
            o => o,
        }
    }
}

fn var_counts(t: &Term, sign: i64, m: &mut Vec<(u32, i64)>) {
    match t {
        Term::Var(v, _) => match m.iter_mut().find(|(w, _)| w == v) {
            Some((_, c)) => *c += sign,
            None => m.push((*v, sign)),
        },
        Term::App(_, xs) => xs.iter().for_each(|x| var_counts(x, sign, m)),
    }
}

/// Compares `s` and `t` in the KBO with all weights 1 and the precedence of `tab`.
pub fn kbo(s: &Term, t: &Term, tab: &SymTable) -> TermOrder {
    if s == t {
        return TermOrder::Equal;
    }
    match (s, t) {
        (_, Term::Var(v, _)) => {
            return if s.contains_var(*v) {
                TermOrder::Greater
            } else {
                TermOrder::Incomparable
            };
        }
        (Term::Var(v, _), _) => {
            return if t.contains_var(*v) {
                TermOrder::Less
            } else {
                TermOrder::Incomparable
            };
        }
        _ => {}
    }
    let mut bal = Vec::new();
    var_counts(s, 1, &mut bal);
    var_counts(t, -1, &mut bal);
    let s_ge = bal.iter().all(|(_, c)| *c >= 0);
    let t_ge = bal.iter().all(|(_, c)| *c <= 0);
    let greater = if s_ge {
        TermOrder::Greater
    } else {
        TermOrder::Incomparable
    };
    let less = if t_ge {
        TermOrder::Less
    } else {
        TermOrder::Incomparable
    };
    let (ws, wt) = (s.size(), t.size());
    if ws > wt {
        return greater;
    }
    if ws < wt {
        return less;
    }
    let (Term::App(f, xs), Term::App(g, ys)) = (s, t) else {
        unreachable!()
    };
    let (pf, pg) = (tab.precedence(*f), tab.precedence(*g));
    if pf > pg {
        return greater;
    }
    if pf < pg {
        return less;
    }
    for (x, y) in xs.iter().zip(ys) {
        match kbo(x, y, tab) {
            TermOrder::Equal => continue,
            TermOrder::Greater => return greater,
            TermOrder::Less => return less,
            TermOrder::Incomparable => return TermOrder::Incomparable,
        }
    }
    TermOrder::Equal
}

/// A KBO over the symbols of a signature: `$false < $true <` declared symbols
/// in declaration order, interpreted symbols after them.
#[derive(Clone, Debug)]
pub struct TermOrdering {
    table: SymTable,
}

impl TermOrdering {
    pub fn from_signature(sig: &Signature) -> TermOrdering {
        let mut table = SymTable::new();
        for s in sig.symbols() {
            table.symbol(s);
        }
        TermOrdering { table }
    }

    fn convert(
        &mut self,
        e: &Expr,
        vars: &mut Vec<(std::sync::Arc<str>, crate::logic::Sort)>,
    ) -> Option<Term> {
        match e {
            Expr::Var(v) => {
                let key = (v.name.clone(), v.sort.clone());
                let id = match vars.iter().position(|k| *k == key) {
                    Some(i) => i,
                    None => {
                        vars.push(key);
                        vars.len() - 1
                    }
                };
                let s = self.table.sort_id(&v.sort);
                Some(Term::Var(id as u32, s))
            }
            Expr::App(f, xs) => {
                let id = self.sym(f);
                let args = xs
                    .iter()
                    .map(|x| self.convert(x, vars))
                    .collect::<Option<Vec<_>>>()?;
                Some(Term::App(id, args))
            }
            _ => None,
        }
    }

    fn sym(&mut self, f: &Symbol) -> u32 {
        self.table.symbol(f)
    }
}

/// KBO comparison of two first-order terms. Non-term expressions are incomparable.
pub fn kbo_compare(s: &Expr, t: &Expr, ord: &TermOrdering) -> TermOrder {
    let mut o = ord.clone();
    let mut vars = Vec::new();
    match (o.convert(s, &mut vars), o.convert(t, &mut vars)) {
        (Some(a), Some(b)) => kbo(&a, &b, &o.table),
        _ => TermOrder::Incomparable,
    }
}
