//! Axioms for the polymorphic array theory, instantiated per array sort.

use crate::logic::{Builtin, Expr, Problem, Role, Sort, Symbol, Unit, Var};
use crate::translate::eliminate_bool_variables;

/// An array sort used by a problem, and whether `$store` is applied to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayInstance {
    pub sort: Sort,
    pub uses_store: bool,
}

/// Array sorts occurring in the formulas of `p`, in order of first occurrence.
/// Sorts mentioned only in declarations are not included.
pub fn array_instances(p: &Problem) -> Vec<ArrayInstance> {
    let mut out: Vec<ArrayInstance> = Vec::new();
    fn note(s: &Sort, out: &mut Vec<ArrayInstance>) {
        match s {
            Sort::Array(i, v) => {
                note(i, out);
                note(v, out);
                if !out.iter().any(|a| &a.sort == s) {
                    out.push(ArrayInstance {
                        sort: s.clone(),
                        uses_store: false,
                    });
                }
            }
            Sort::Tuple(ms) => ms.iter().for_each(|m| note(m, out)),
            _ => {}
        }
    }
    for u in p.formulas() {
        let mut stack = vec![u.as_formula().unwrap()];
        while let Some(e) = stack.pop() {
            match e {
                Expr::Var(v) => note(&v.sort, &mut out),
                Expr::App(s, _) => {
                    s.args().iter().for_each(|a| note(a, &mut out));
                    note(s.result(), &mut out);
                    if s.builtin_kind() == Some(Builtin::Store) {
                        let a = out.iter_mut().find(|a| &a.sort == s.result()).unwrap();
                        a.uses_store = true;
                    }
                }
                Expr::Quant(_, vs, _) => vs.iter().for_each(|v| note(&v.sort, &mut out)),
                Expr::Let(bs, _) => {
                    for b in bs {
                        b.params.iter().for_each(|v| note(&v.sort, &mut out));
                        note(b.head.result(), &mut out);
                    }
                }
                _ => {}
            }
            stack.extend(e.children());
        }
    }
    out
}

/// Axioms for one instance: read-over-write on the same and on a different
/// index, and extensionality. Only extensionality when `$store` is unused.
pub fn instantiate_array_axioms(inst: &ArrayInstance, tag: usize) -> Vec<Unit> {
    let arr = &inst.sort;
    let (isort, vsort) = arr.as_array().expect("array sort");
    let sel = Symbol::select(arr).unwrap();
    let st = Symbol::store(arr).unwrap();
    let a = Var::new("A", arr.clone());
    let b = Var::new("B", arr.clone());
    let i = Var::new("I", isort.clone());
    let j = Var::new("J", isort.clone());
    let v = Var::new("V", vsort.clone());
    let ev = |x: &Var| Expr::Var(x.clone());
    let select = |x: Expr, k: Expr| Expr::app(sel.clone(), vec![x, k]);
    let store = Expr::app(st, vec![ev(&a), ev(&i), ev(&v)]);
    let boolean = vsort.is_bool();
    let same = |l: Expr, r: Expr| {
        if boolean {
            Expr::iff(l, r)
        } else {
            Expr::eq(l, r)
        }
    };
    let mut out = Vec::new();
    let name = |k: &str| format!("fool_array_{tag}_{k}");
    if inst.uses_store {
        out.push(Unit::formula(
            name("read_write"),
            Role::Axiom,
            Expr::forall(
                vec![a.clone(), i.clone(), v.clone()],
                same(select(store.clone(), ev(&i)), ev(&v)),
            ),
        ));
        out.push(Unit::formula(
            name("read_other"),
            Role::Axiom,
            Expr::forall(
                vec![a.clone(), i.clone(), j.clone(), v.clone()],
                Expr::implies(
                    Expr::not(Expr::eq(ev(&i), ev(&j))),
                    same(select(store, ev(&j)), select(ev(&a), ev(&j))),
                ),
            ),
        ));
    }
    let differ = if boolean {
        Expr::xor(select(ev(&a), ev(&i)), select(ev(&b), ev(&i)))
    } else {
        Expr::not(Expr::eq(select(ev(&a), ev(&i)), select(ev(&b), ev(&i))))
    };
    out.push(Unit::formula(
        name("extensionality"),
        Role::Axiom,
        Expr::forall(
            vec![a.clone(), b.clone()],
            Expr::implies(
                Expr::not(Expr::eq(ev(&a), ev(&b))),
                Expr::exists(vec![i], differ),
            ),
        ),
    ));
    for u in &mut out {
        if let crate::logic::UnitContent::Formula(e) = &mut u.content {
            *e = eliminate_bool_variables(e);
        }
    }
    out
}

/// Axioms for every array instance of `p`.
pub fn array_axioms(p: &Problem) -> Vec<Unit> {
    array_instances(p)
        .iter()
        .enumerate()
        .flat_map(|(k, inst)| instantiate_array_axioms(inst, k))
        .collect()
}
