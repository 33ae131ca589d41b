//! Capture-avoiding substitution of expressions for variables.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{Binding, Expr, LogicError, Var};

/// Maps variable names to replacement expressions.
pub type Subst = HashMap<Arc<str>, Expr>;

/// Simultaneously replaces free variables of `e`. Bound variables that
/// would capture a free variable of a replacement are renamed.
pub fn substitute(e: &Expr, m: &Subst) -> Result<Expr, LogicError> {
    if m.is_empty() {
        return Ok(e.clone());
    }
    go(e, m)
}

/// A variable name based on `base` that is not in `avoid`.
pub fn fresh_var_name(base: &str, avoid: &HashSet<Arc<str>>) -> Arc<str> {
    let stem = match base.rsplit_once('_') {
        Some((s, n)) if !s.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) => s,
        _ => base,
    };
    (1..)
        .map(|k| Arc::from(format!("{stem}_{k}").as_str()))
        .find(|n| !avoid.contains(n))
        .unwrap()
}

fn go(e: &Expr, m: &Subst) -> Result<Expr, LogicError> {
    Ok(match e {
        Expr::Var(v) => match m.get(&v.name) {
            Some(r) => {
                let rs = r.sort();
                if rs != v.sort {
                    return Err(LogicError::SortMismatch {
                        path: format!("variable {}", v.name),
                        expected: v.sort.clone(),
                        found: rs,
                    });
                }
                r.clone()
            }
            None => e.clone(),
        },
        Expr::App(s, args) => Expr::App(s.clone(), map(args, m)?),
        Expr::Eq(l, r) => Expr::eq(go(l, m)?, go(r, m)?),
        Expr::Conn(op, xs) => Expr::Conn(*op, map(xs, m)?),
        Expr::Quant(q, vs, b) => {
            let (vs2, m2) = enter_binder(vs, b, m);
            Expr::Quant(*q, vs2, Box::new(go(b, &m2)?))
        }
        Expr::Ite(c, a, b) => Expr::ite(go(c, m)?, go(a, m)?, go(b, m)?),
        Expr::Let(bs, t) => {
            let mut out = Vec::with_capacity(bs.len());
            for b in bs {
                let (ps, m2) = enter_binder(&b.params, &b.body, m);
                out.push(Binding {
                    head: b.head.clone(),
                    params: ps,
                    body: go(&b.body, &m2)?,
                });
            }
            Expr::let_in(out, go(t, m)?)
        }
        Expr::Tuple(xs) => Expr::Tuple(map(xs, m)?),
        Expr::TupleLet(hs, v, b) => {
            Expr::TupleLet(hs.clone(), Box::new(go(v, m)?), Box::new(go(b, m)?))
        }
    })
}

fn map(xs: &[Expr], m: &Subst) -> Result<Vec<Expr>, LogicError> {
    xs.iter().map(|x| go(x, m)).collect()
}

fn enter_binder(vs: &[Var], body: &Expr, m: &Subst) -> (Vec<Var>, Subst) {
    let mut inner: Subst = m.clone();
    for v in vs {
        inner.remove(&v.name);
    }
    let body_free: HashSet<Arc<str>> = body.free_vars().into_iter().map(|v| v.name).collect();
    let mut incoming: HashSet<Arc<str>> = HashSet::new();
    for (k, r) in &inner {
        if body_free.contains(k) {
            incoming.extend(r.free_vars().into_iter().map(|v| v.name));
        }
    }
    if incoming.is_empty() {
        return (vs.to_vec(), inner);
    }
    let mut avoid: HashSet<Arc<str>> = incoming.clone();
    avoid.extend(body_free);
    avoid.extend(vs.iter().map(|v| v.name.clone()));
    let mut out = Vec::with_capacity(vs.len());
    for v in vs {
        if incoming.contains(&v.name) {
            let name = fresh_var_name(&v.name, &avoid);
            avoid.insert(name.clone());
            let nv = Var {
                name,
                sort: v.sort.clone(),
            };
            inner.insert(v.name.clone(), Expr::Var(nv.clone()));
            out.push(nv);
        } else {
            out.push(v.clone());
        }
    }
    (out, inner)
}
