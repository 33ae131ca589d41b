//! Removal of formulas in term positions, `$ite` and `$let` by naming
//! them with fresh symbols and emitting their definitions.

use std::collections::HashSet;
use std::sync::Arc;

use super::TranslateError;
use crate::logic::{
    fresh_var_name, substitute, Binding, Connective, Expr, Origin, Signature, Subst, Symbol, Var,
};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Passes {
    pub lift: bool,
    pub ite: bool,
    pub let_: bool,
}

pub(crate) struct Eliminator<'s> {
    pub sig: &'s mut Signature,
    pub passes: Passes,
    pub defs: Vec<Expr>,
    pub fresh: Vec<Symbol>,
}

fn pair(lhs: Expr, rhs: Expr) -> Expr {
    if lhs.sort().is_bool() {
        Expr::iff(lhs, rhs)
    } else {
        Expr::eq(lhs, rhs)
    }
}

fn vars_as_args(vs: &[Var]) -> Vec<Expr> {
    vs.iter().cloned().map(Expr::Var).collect()
}

impl<'s> Eliminator<'s> {
    pub fn new(sig: &'s mut Signature, passes: Passes) -> Self {
        Eliminator {
            sig,
            passes,
            defs: Vec::new(),
            fresh: Vec::new(),
        }
    }

    fn fresh_symbol(
        &mut self,
        args: Vec<crate::logic::Sort>,
        result: crate::logic::Sort,
        o: Origin,
    ) -> Symbol {
        let s = self.sig.fresh_symbol(args, result, o);
        if o != Origin::Rename {
            self.fresh.push(s.clone());
        }
        s
    }

    /// Processes an argument position: boolean non-variable results are
    /// replaced by a fresh boolean-valued function of their free variables.
    fn argument(&mut self, e: &Expr) -> Result<Expr, TranslateError> {
        let p = self.process(e)?;
        if self.passes.lift
            && p.sort().is_bool()
            && p.as_var().is_none()
            && !p.is_true()
            && !p.is_false()
        {
            let xs = p.free_vars();
            let g = self.fresh_symbol(
                xs.iter().map(|v| v.sort.clone()).collect(),
                crate::logic::Sort::Bool,
                Origin::Lift,
            );
            let gx = Expr::app(g, vars_as_args(&xs));
            self.defs.push(Expr::forall(
                xs,
                Expr::iff(p, Expr::eq(gx.clone(), Expr::truth())),
            ));
            return Ok(gx);
        }
        Ok(p)
    }

    pub fn process(&mut self, e: &Expr) -> Result<Expr, TranslateError> {
        Ok(match e {
            Expr::Var(_) => e.clone(),
            Expr::App(s, args) => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(self.argument(a)?);
                }
                Expr::App(s.clone(), out)
            }
            Expr::Eq(l, r) => Expr::eq(self.argument(l)?, self.argument(r)?),
            Expr::Conn(op, xs) => {
                let mut out = Vec::with_capacity(xs.len());
                for x in xs {
                    out.push(self.process(x)?);
                }
                Expr::Conn(*op, out)
            }
            Expr::Quant(q, vs, b) => Expr::Quant(*q, vs.clone(), Box::new(self.process(b)?)),
            Expr::Ite(c, a, b) => {
                let (c, a, b) = (self.process(c)?, self.process(a)?, self.process(b)?);
                if !self.passes.ite {
                    return Ok(Expr::ite(c, a, b));
                }
                let tmp = Expr::ite(c, a, b);
                let xs = tmp.free_vars();
                let Expr::Ite(c, a, b) = tmp else {
                    unreachable!()
                };
                let g = self.fresh_symbol(
                    xs.iter().map(|v| v.sort.clone()).collect(),
                    a.sort(),
                    Origin::Ite,
                );
                let gx = Expr::app(g, vars_as_args(&xs));
                self.defs.push(Expr::forall(
                    xs.clone(),
                    Expr::implies((*c).clone(), pair(gx.clone(), *a)),
                ));
                self.defs.push(Expr::forall(
                    xs,
                    Expr::implies(Expr::not(*c), pair(gx.clone(), *b)),
                ));
                gx
            }
            Expr::Let(bs, t) => {
                if !self.passes.let_ {
                    let mut out = Vec::with_capacity(bs.len());
                    for b in bs {
                        out.push(Binding {
                            head: b.head.clone(),
                            params: b.params.clone(),
                            body: self.process(&b.body)?,
                        });
                    }
                    return Ok(Expr::let_in(out, self.process(t)?));
                }
                self.eliminate_let(bs, t)?
            }
            Expr::Tuple(_) | Expr::TupleLet(..) => {
                return Err(TranslateError::Unsupported(
                    "tuple expressions have no first-order translation".into(),
                ))
            }
        })
    }

    fn eliminate_let(&mut self, bs: &[Binding], t: &Expr) -> Result<Expr, TranslateError> {
        let mut bs = bs.to_vec();
        let mut t = t.clone();
        // heads visible in later definitions would be captured once the
        // bindings are nested, so rename them first
        for i in 0..bs.len() {
            let f = bs[i].head.clone();
            if bs[i + 1..].iter().any(|b| b.body.mentions_symbol(f.name())) {
                let g = self.fresh_symbol(f.args().to_vec(), f.result().clone(), Origin::Rename);
                bs[i].head = g.clone();
                t = replace_apps(&t, &f, &g, &[])?;
            }
        }
        let mut nested = t;
        for b in bs.into_iter().rev() {
            nested = Expr::let_in(vec![b], nested);
        }
        let Expr::Let(mut one, body) = nested else {
            unreachable!()
        };
        self.single_let(one.pop().unwrap(), *body)
    }

    fn single_let(&mut self, b: Binding, t: Expr) -> Result<Expr, TranslateError> {
        let s = self.process(&b.body)?;
        let mut ys: Vec<Var> = Vec::new();
        for v in s.free_vars().into_iter().chain(t.free_vars()) {
            if !b.params.iter().any(|p| p.name == v.name) && !ys.contains(&v) {
                ys.push(v);
            }
        }
        let y_names: HashSet<Arc<str>> = ys.iter().map(|v| v.name.clone()).collect();
        let mut avoid = y_names.clone();
        s.all_var_names(&mut avoid);
        let mut zs = Vec::with_capacity(b.params.len());
        let mut ren = Subst::new();
        for p in &b.params {
            if y_names.contains(&p.name) {
                let n = fresh_var_name(&p.name, &avoid);
                avoid.insert(n.clone());
                let z = Var {
                    name: n,
                    sort: p.sort.clone(),
                };
                ren.insert(p.name.clone(), Expr::Var(z.clone()));
                zs.push(z);
            } else {
                zs.push(p.clone());
            }
        }
        let s = substitute(&s, &ren)?;
        let args: Vec<_> = zs.iter().chain(&ys).map(|v| v.sort.clone()).collect();
        let g = self.fresh_symbol(args, s.sort(), Origin::Let);
        let lhs = Expr::app(
            g.clone(),
            vars_as_args(&zs)
                .into_iter()
                .chain(vars_as_args(&ys))
                .collect(),
        );
        let all: Vec<Var> = zs.into_iter().chain(ys.iter().cloned()).collect();
        self.defs.push(Expr::forall(all, pair(lhs, s)));
        let t2 = replace_apps(&t, &b.head, &g, &ys)?;
        self.process(&t2)
    }
}

/// Replaces free applications `f(t..)` in `e` by `g(t.., ys..)`, renaming
/// binders of `e` that would capture one of `ys`.
pub(crate) fn replace_apps(
    e: &Expr,
    f: &Symbol,
    g: &Symbol,
    ys: &[Var],
) -> Result<Expr, TranslateError> {
    let names: HashSet<Arc<str>> = ys.iter().map(|v| v.name.clone()).collect();
    Repl {
        f,
        g,
        ys,
        names: &names,
    }
    .go(e)
}

struct Repl<'a> {
    f: &'a Symbol,
    g: &'a Symbol,
    ys: &'a [Var],
    names: &'a HashSet<Arc<str>>,
}

impl Repl<'_> {
    fn all(&self, xs: &[Expr]) -> Result<Vec<Expr>, TranslateError> {
        xs.iter().map(|x| self.go(x)).collect()
    }

    /// Renames binders in `vs` that clash with `ys`, adjusting `body`.
    fn rebind(&self, vs: &[Var], body: &Expr) -> Result<(Vec<Var>, Expr), TranslateError> {
        if !vs.iter().any(|v| self.names.contains(&v.name)) {
            return Ok((vs.to_vec(), body.clone()));
        }
        let mut avoid = self.names.clone();
        body.all_var_names(&mut avoid);
        avoid.extend(vs.iter().map(|v| v.name.clone()));
        let mut m = Subst::new();
        let mut out = Vec::with_capacity(vs.len());
        for v in vs {
            if self.names.contains(&v.name) {
                let n = fresh_var_name(&v.name, &avoid);
                avoid.insert(n.clone());
                let nv = Var {
                    name: n,
                    sort: v.sort.clone(),
                };
                m.insert(v.name.clone(), Expr::Var(nv.clone()));
                out.push(nv);
            } else {
                out.push(v.clone());
            }
        }
        Ok((out, substitute(body, &m)?))
    }

    fn go(&self, e: &Expr) -> Result<Expr, TranslateError> {
        Ok(match e {
            Expr::Var(_) => e.clone(),
            Expr::App(s, args) => {
                let mut a = self.all(args)?;
                if s.name() == self.f.name() {
                    a.extend(vars_as_args(self.ys));
                    Expr::App(self.g.clone(), a)
                } else {
                    Expr::App(s.clone(), a)
                }
            }
            Expr::Eq(l, r) => Expr::eq(self.go(l)?, self.go(r)?),
            Expr::Conn(op, xs) => Expr::Conn(*op, self.all(xs)?),
            Expr::Quant(q, vs, b) => {
                let (vs, b) = self.rebind(vs, b)?;
                Expr::Quant(*q, vs, Box::new(self.go(&b)?))
            }
            Expr::Ite(c, a, b) => Expr::ite(self.go(c)?, self.go(a)?, self.go(b)?),
            Expr::Let(bs, t) => {
                let mut out = Vec::with_capacity(bs.len());
                for b in bs {
                    let (ps, body) = self.rebind(&b.params, &b.body)?;
                    out.push(Binding {
                        head: b.head.clone(),
                        params: ps,
                        body: self.go(&body)?,
                    });
                }
                let shadowed = bs.iter().any(|b| b.head.name() == self.f.name());
                let t = if shadowed { (**t).clone() } else { self.go(t)? };
                Expr::let_in(out, t)
            }
            Expr::Tuple(xs) => Expr::Tuple(self.all(xs)?),
            Expr::TupleLet(hs, v, b) => {
                let shadowed = hs.iter().any(|h| h.name() == self.f.name());
                let b = if shadowed { (**b).clone() } else { self.go(b)? };
                Expr::TupleLet(hs.clone(), Box::new(self.go(v)?), Box::new(b))
            }
        })
    }
}

/// Rewrites equalities between booleans as equivalences, except between
/// two variables; an equivalence between two variables becomes an equality.
pub fn normalize_bool_equalities(e: &Expr) -> Expr {
    let rec = |xs: &[Expr]| xs.iter().map(normalize_bool_equalities).collect::<Vec<_>>();
    match e {
        Expr::Var(_) => e.clone(),
        Expr::App(s, xs) => Expr::App(s.clone(), rec(xs)),
        Expr::Eq(l, r) => {
            let (l, r) = (normalize_bool_equalities(l), normalize_bool_equalities(r));
            if l.sort().is_bool() && !(l.as_var().is_some() && r.as_var().is_some()) {
                Expr::iff(l, r)
            } else {
                Expr::eq(l, r)
            }
        }
        Expr::Conn(Connective::Iff, xs) if xs.iter().all(|x| x.as_var().is_some()) => {
            Expr::eq(xs[0].clone(), xs[1].clone())
        }
        Expr::Conn(op, xs) => Expr::Conn(*op, rec(xs)),
        Expr::Quant(q, vs, b) => {
            Expr::Quant(*q, vs.clone(), Box::new(normalize_bool_equalities(b)))
        }
        Expr::Ite(c, a, b) => Expr::ite(
            normalize_bool_equalities(c),
            normalize_bool_equalities(a),
            normalize_bool_equalities(b),
        ),
        Expr::Let(bs, t) => Expr::let_in(
            bs.iter()
                .map(|b| Binding {
                    head: b.head.clone(),
                    params: b.params.clone(),
                    body: normalize_bool_equalities(&b.body),
                })
                .collect(),
            normalize_bool_equalities(t),
        ),
        Expr::Tuple(xs) => Expr::Tuple(rec(xs)),
        Expr::TupleLet(hs, v, b) => Expr::TupleLet(
            hs.clone(),
            Box::new(normalize_bool_equalities(v)),
            Box::new(normalize_bool_equalities(b)),
        ),
    }
}

/// Replaces boolean variables in formula positions by `X = $true`.
pub fn eliminate_bool_variables(e: &Expr) -> Expr {
    walk(e, false)
}

fn walk(e: &Expr, term: bool) -> Expr {
    match e {
        Expr::Var(v) if !term && v.sort.is_bool() => Expr::eq(e.clone(), Expr::truth()),
        Expr::Var(_) => e.clone(),
        Expr::App(s, xs) => Expr::App(s.clone(), xs.iter().map(|x| walk(x, true)).collect()),
        Expr::Eq(l, r) => Expr::eq(walk(l, true), walk(r, true)),
        Expr::Conn(op, xs) => Expr::Conn(*op, xs.iter().map(|x| walk(x, false)).collect()),
        Expr::Quant(q, vs, b) => Expr::Quant(*q, vs.clone(), Box::new(walk(b, false))),
        Expr::Ite(c, a, b) => {
            let branch_term = term || !a.sort().is_bool();
            Expr::ite(walk(c, false), walk(a, branch_term), walk(b, branch_term))
        }
        Expr::Let(bs, t) => Expr::let_in(
            bs.iter()
                .map(|b| Binding {
                    head: b.head.clone(),
                    params: b.params.clone(),
                    body: walk(&b.body, false),
                })
                .collect(),
            walk(t, term),
        ),
        Expr::Tuple(xs) => Expr::Tuple(xs.iter().map(|x| walk(x, true)).collect()),
        Expr::TupleLet(hs, v, b) => {
            Expr::TupleLet(hs.clone(), Box::new(walk(v, true)), Box::new(walk(b, term)))
        }
    }
}
