//! Equality up to renaming of bound variables, let-bound symbols and
//! freshly introduced symbols.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Expr, Symbol, Var};

pub fn alpha_equal(a: &Expr, b: &Expr) -> bool {
    AlphaEq::default().eq(a, b)
}

/// Alpha-equivalence that keeps the fresh-symbol bijection across calls,
/// so several expressions can be compared under one consistent renaming.
#[derive(Clone, Debug, Default)]
pub struct AlphaEq {
    fwd: HashMap<Symbol, Symbol>,
    bwd: HashMap<Symbol, Symbol>,
}

impl AlphaEq {
    /// Compares `a` and `b`; on failure the bijection is left unchanged.
    pub fn eq(&mut self, a: &Expr, b: &Expr) -> bool {
        let saved = (self.fwd.clone(), self.bwd.clone());
        let ok = self.go(a, b, &mut Vec::new(), &mut Vec::new());
        if !ok {
            (self.fwd, self.bwd) = saved;
        }
        ok
    }

    /// Records or checks that fresh symbol `a` corresponds to `b`.
    pub fn symbols(&mut self, a: &Symbol, b: &Symbol) -> bool {
        self.sym(a, b, &[])
    }

    fn sym(&mut self, a: &Symbol, b: &Symbol, bound: &[(Arc<str>, Arc<str>)]) -> bool {
        let la = bound.iter().rposition(|p| *p.0 == *a.name());
        let lb = bound.iter().rposition(|p| *p.1 == *b.name());
        if la.is_some() || lb.is_some() {
            return la == lb && a.args() == b.args() && a.result() == b.result();
        }
        if a.is_fresh() && b.is_fresh() {
            if a.args() != b.args() || a.result() != b.result() {
                return false;
            }
            match (self.fwd.get(a), self.bwd.get(b)) {
                (Some(x), Some(y)) => x == b && y == a,
                (None, None) => {
                    self.fwd.insert(a.clone(), b.clone());
                    self.bwd.insert(b.clone(), a.clone());
                    true
                }
                _ => false,
            }
        } else {
            a == b
        }
    }

    fn go(
        &mut self,
        a: &Expr,
        b: &Expr,
        vars: &mut Vec<(Arc<str>, Arc<str>)>,
        syms: &mut Vec<(Arc<str>, Arc<str>)>,
    ) -> bool {
        match (a, b) {
            (Expr::Var(x), Expr::Var(y)) => {
                if x.sort != y.sort {
                    return false;
                }
                let la = vars.iter().rposition(|p| p.0 == x.name);
                let lb = vars.iter().rposition(|p| p.1 == y.name);
                match (la, lb) {
                    (None, None) => x.name == y.name,
                    (l, r) => l == r,
                }
            }
            (Expr::App(f, xs), Expr::App(g, ys)) => {
                xs.len() == ys.len() && self.sym(f, g, syms) && self.all(xs, ys, vars, syms)
            }
            (Expr::Eq(l1, r1), Expr::Eq(l2, r2)) => {
                self.go(l1, l2, vars, syms) && self.go(r1, r2, vars, syms)
            }
            (Expr::Conn(o1, xs), Expr::Conn(o2, ys)) => {
                o1 == o2 && xs.len() == ys.len() && self.all(xs, ys, vars, syms)
            }
            (Expr::Quant(q1, v1, b1), Expr::Quant(q2, v2, b2)) => {
                if q1 != q2 || !same_sorts(v1, v2) {
                    return false;
                }
                let n = vars.len();
                vars.extend(
                    v1.iter()
                        .zip(v2)
                        .map(|(x, y)| (x.name.clone(), y.name.clone())),
                );
                let ok = self.go(b1, b2, vars, syms);
                vars.truncate(n);
                ok
            }
            (Expr::Ite(c1, a1, b1), Expr::Ite(c2, a2, b2)) => {
                self.go(c1, c2, vars, syms)
                    && self.go(a1, a2, vars, syms)
                    && self.go(b1, b2, vars, syms)
            }
            (Expr::Let(bs1, t1), Expr::Let(bs2, t2)) => {
                if bs1.len() != bs2.len() {
                    return false;
                }
                for (x, y) in bs1.iter().zip(bs2) {
                    if x.head.args() != y.head.args()
                        || x.head.result() != y.head.result()
                        || !same_sorts(&x.params, &y.params)
                    {
                        return false;
                    }
                    let n = vars.len();
                    vars.extend(
                        x.params
                            .iter()
                            .zip(&y.params)
                            .map(|(p, q)| (p.name.clone(), q.name.clone())),
                    );
                    let ok = self.go(&x.body, &y.body, vars, syms);
                    vars.truncate(n);
                    if !ok {
                        return false;
                    }
                }
                let n = syms.len();
                syms.extend(
                    bs1.iter()
                        .zip(bs2)
                        .map(|(x, y)| (x.head.name_arc(), y.head.name_arc())),
                );
                let ok = self.go(t1, t2, vars, syms);
                syms.truncate(n);
                ok
            }
            (Expr::Tuple(xs), Expr::Tuple(ys)) => {
                xs.len() == ys.len() && self.all(xs, ys, vars, syms)
            }
            (Expr::TupleLet(h1, v1, b1), Expr::TupleLet(h2, v2, b2)) => {
                if h1.len() != h2.len()
                    || h1.iter().zip(h2).any(|(x, y)| x.result() != y.result())
                    || !self.go(v1, v2, vars, syms)
                {
                    return false;
                }
                let n = syms.len();
                syms.extend(h1.iter().zip(h2).map(|(x, y)| (x.name_arc(), y.name_arc())));
                let ok = self.go(b1, b2, vars, syms);
                syms.truncate(n);
                ok
            }
            _ => false,
        }
    }

    fn all(
        &mut self,
        xs: &[Expr],
        ys: &[Expr],
        vars: &mut Vec<(Arc<str>, Arc<str>)>,
        syms: &mut Vec<(Arc<str>, Arc<str>)>,
    ) -> bool {
        xs.iter().zip(ys).all(|(x, y)| self.go(x, y, vars, syms))
    }
}

fn same_sorts(a: &[Var], b: &[Var]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.sort == y.sort)
}
