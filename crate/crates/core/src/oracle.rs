//! Brute-force satisfiability over small finite interpretations.
//!
//! Elements of every sort are numbered from zero. `$o` has the two elements
//! `0` (false) and `1` (true); `$int` is a finite slice of the integers with
//! saturating arithmetic; an array sort is the full function space from its
//! index domain to its value domain, encoded as a base-`|value|` number.
//! The search assigns function-table cells on demand: formulas are evaluated
//! in Kleene's three-valued logic over partial tables, and the first cell an
//! undetermined formula needed becomes the next branching point.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::cnf::ClauseSet;
use crate::logic::{Builtin, Connective, Expr, Problem, Quantifier, Role, Sort, Symbol, Var};
use crate::translate::close;

const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("no finite domain for sort {0}")]
    DomainMissing(Sort),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("value depends on an unassigned entry of `{0}`")]
    Partial(String),
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Inclusive bounds of the `$int` slice.
    pub int_range: (i64, i64),
    /// Largest admitted array domain.
    pub array_cap: usize,
    /// Search nodes explored before giving up, per domain-size vector.
    pub max_nodes: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            int_range: (-2, 2),
            array_cap: 16,
            max_nodes: 2_000_000,
        }
    }
}

/// An interpretation of finitely many uninterpreted symbols over finite
/// domains. Table cells are indexed by the mixed-radix number of the
/// argument elements, first argument most significant.
#[derive(Clone, Debug)]
pub struct FiniteStructure {
    config: OracleConfig,
    sizes: BTreeMap<Sort, usize>,
    syms: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    tables: Vec<Vec<u32>>,
}

impl FiniteStructure {
    /// A structure with the given sizes for uninterpreted sorts and empty
    /// tables for `symbols`.
    pub fn new(
        config: OracleConfig,
        sizes: BTreeMap<Sort, usize>,
        symbols: &[Symbol],
    ) -> Result<FiniteStructure, OracleError> {
        let mut m = FiniteStructure {
            config,
            sizes,
            syms: Vec::new(),
            index: HashMap::new(),
            tables: Vec::new(),
        };
        for s in symbols {
            if m.index.contains_key(s) || s.is_interpreted() {
                continue;
            }
            let mut cells = 1usize;
            for a in s.args() {
                cells = cells
                    .checked_mul(m.domain_size(a)?)
                    .filter(|c| *c <= 1 << 20)
                    .ok_or_else(|| OracleError::SearchSpaceTooLarge(format!("table of {s}")))?;
            }
            m.domain_size(s.result())?;
            m.index.insert(s.clone(), m.syms.len());
            m.syms.push(s.clone());
            m.tables.push(vec![UNSET; cells]);
        }
        Ok(m)
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn sizes(&self) -> &BTreeMap<Sort, usize> {
        &self.sizes
    }

    pub fn domain_size(&self, s: &Sort) -> Result<usize, OracleError> {
        match s {
            Sort::Bool => Ok(2),
            Sort::Int => Ok((self.config.int_range.1 - self.config.int_range.0 + 1) as usize),
            Sort::Individual | Sort::Named(_) => self
                .sizes
                .get(s)
                .copied()
                .ok_or_else(|| OracleError::DomainMissing(s.clone())),
            Sort::Array(i, v) => {
                let (n, m) = (self.domain_size(i)?, self.domain_size(v)?);
                u32::try_from(n)
                    .ok()
                    .and_then(|n| m.checked_pow(n))
                    .filter(|d| *d <= self.config.array_cap)
                    .ok_or_else(|| OracleError::SearchSpaceTooLarge(format!("array domain {s}")))
            }
            Sort::Tuple(_) => Err(OracleError::Unsupported(format!("tuple sort {s}"))),
        }
    }

    /// Element of `$int` denoting `n`, saturated to the slice.
    pub fn int(&self, n: i64) -> u32 {
        let (lo, hi) = self.config.int_range;
        (n.clamp(lo, hi) - lo) as u32
    }

    pub fn int_value(&self, e: u32) -> i64 {
        self.config.int_range.0 + e as i64
    }

    fn cell(&self, sym: usize, args: &[u32]) -> usize {
        let s = &self.syms[sym];
        let mut c = 0usize;
        for (a, sort) in args.iter().zip(s.args()) {
            c = c * self.domain_size(sort).unwrap() + *a as usize;
        }
        c
    }

    /// Sets the value of `sym` at `args`.
    pub fn set(&mut self, sym: &Symbol, args: &[u32], value: u32) {
        let k = self.index[sym];
        let c = self.cell(k, args);
        self.tables[k][c] = value;
    }

    /// Value of `sym` at `args`, if assigned.
    pub fn get(&self, sym: &Symbol, args: &[u32]) -> Option<u32> {
        let k = *self.index.get(sym)?;
        let v = self.tables[k][self.cell(k, args)];
        (v != UNSET).then_some(v)
    }

    fn fill_unset(&mut self) {
        for t in &mut self.tables {
            for v in t.iter_mut().filter(|v| **v == UNSET) {
                *v = 0;
            }
        }
    }

    fn show_elem(&self, s: &Sort, e: u32) -> String {
        match s {
            Sort::Bool => if e == 1 { "$true" } else { "$false" }.to_string(),
            Sort::Int => self.int_value(e).to_string(),
            Sort::Array(i, v) => {
                let (n, m) = (
                    self.domain_size(i).unwrap(),
                    self.domain_size(v).unwrap() as u32,
                );
                let mut x = e;
                let mut parts = Vec::new();
                for _ in 0..n {
                    parts.push(self.show_elem(v, x % m));
                    x /= m;
                }
                format!("[{}]", parts.join(","))
            }
            _ => format!("e{e}"),
        }
    }
}

impl fmt::Display for FiniteStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, n) in &self.sizes {
            writeln!(f, "|{s}| = {n}")?;
        }
        for (k, s) in self.syms.iter().enumerate() {
            let dims: Vec<usize> = s
                .args()
                .iter()
                .map(|a| self.domain_size(a).unwrap())
                .collect();
            for (c, v) in self.tables[k].iter().enumerate() {
                if *v == UNSET {
                    continue;
                }
                let mut rest = c;
                let mut args = vec![0u32; dims.len()];
                for j in (0..dims.len()).rev() {
                    args[j] = (rest % dims[j]) as u32;
                    rest /= dims[j];
                }
                let shown: Vec<String> = args
                    .iter()
                    .zip(s.args())
                    .map(|(a, srt)| self.show_elem(srt, *a))
                    .collect();
                let lhs = if shown.is_empty() {
                    s.name().to_string()
                } else {
                    format!("{}({})", s.name(), shown.join(","))
                };
                writeln!(f, "{lhs} = {}", self.show_elem(s.result(), *v))?;
            }
        }
        Ok(())
    }
}

struct Closure<'e> {
    params: &'e [Var],
    body: &'e Expr,
    env: Env<'e>,
}

#[derive(Clone, Default)]
struct Env<'e> {
    vars: Vec<(&'e str, u32)>,
    funcs: Vec<(&'e str, Rc<Closure<'e>>)>,
}

struct Evaluator<'m> {
    m: &'m FiniteStructure,
    missing: Option<(usize, usize)>,
}

fn kleene_and(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(0), _) | (_, Some(0)) => Some(0),
        (Some(1), Some(1)) => Some(1),
        _ => None,
    }
}

fn kleene_not(a: Option<u32>) -> Option<u32> {
    a.map(|v| 1 - v)
}

impl<'m> Evaluator<'m> {
    fn eval<'e>(&mut self, e: &'e Expr, env: &mut Env<'e>) -> Option<u32> {
        match e {
            Expr::Var(v) => Some(
                env.vars
                    .iter()
                    .rev()
                    .find(|(n, _)| *n == &*v.name)
                    .unwrap_or_else(|| panic!("unbound variable {}", v.name))
                    .1,
            ),
            Expr::App(s, args) => self.apply(s, args, env),
            Expr::Eq(l, r) => {
                let (a, b) = (self.eval(l, env), self.eval(r, env));
                Some(u32::from(a? == b?))
            }
            Expr::Conn(c, xs) => match c {
                Connective::Not => kleene_not(self.eval(&xs[0], env)),
                Connective::And => {
                    let mut acc = Some(1);
                    for x in xs {
                        acc = kleene_and(acc, self.eval(x, env));
                        if acc == Some(0) {
                            break;
                        }
                    }
                    acc
                }
                Connective::Or => {
                    let mut acc = Some(0);
                    for x in xs {
                        acc =
                            kleene_not(kleene_and(kleene_not(acc), kleene_not(self.eval(x, env))));
                        if acc == Some(1) {
                            break;
                        }
                    }
                    acc
                }
                Connective::Implies => {
                    let a = self.eval(&xs[0], env);
                    if a == Some(0) {
                        return Some(1);
                    }
                    let b = self.eval(&xs[1], env);
                    kleene_not(kleene_and(a, kleene_not(b)))
                }
                Connective::Iff | Connective::Xor => {
                    let (a, b) = (self.eval(&xs[0], env), self.eval(&xs[1], env));
                    let same = u32::from(a? == b?);
                    Some(if *c == Connective::Iff {
                        same
                    } else {
                        1 - same
                    })
                }
            },
            Expr::Quant(q, vs, body) => self.quantify(*q, vs, body, env),
            Expr::Ite(c, a, b) => match self.eval(c, env) {
                Some(1) => self.eval(a, env),
                Some(_) => self.eval(b, env),
                None => {
                    let (x, y) = (self.eval(a, env), self.eval(b, env));
                    if x.is_some() && x == y {
                        x
                    } else {
                        None
                    }
                }
            },
            Expr::Let(bs, body) => {
                let outer = env.clone();
                let n = env.funcs.len();
                for b in bs {
                    env.funcs.push((
                        b.head.name(),
                        Rc::new(Closure {
                            params: &b.params,
                            body: &b.body,
                            env: outer.clone(),
                        }),
                    ));
                }
                let r = self.eval(body, env);
                env.funcs.truncate(n);
                r
            }
            Expr::Tuple(_) | Expr::TupleLet(..) => {
                unreachable!("tuples are rejected before evaluation")
            }
        }
    }

    fn quantify<'e>(
        &mut self,
        q: Quantifier,
        vs: &'e [Var],
        body: &'e Expr,
        env: &mut Env<'e>,
    ) -> Option<u32> {
        let Some((v, rest)) = vs.split_first() else {
            return self.eval(body, env);
        };
        let n = self.m.domain_size(&v.sort).unwrap() as u32;
        let (stop, mut acc) = match q {
            Quantifier::Forall => (0, Some(1)),
            Quantifier::Exists => (1, Some(0)),
        };
        for x in 0..n {
            env.vars.push((&v.name, x));
            let r = self.quantify(q, rest, body, env);
            env.vars.pop();
            match r {
                Some(r) if r == stop => return Some(stop),
                Some(_) => {}
                None => acc = None,
            }
        }
        acc
    }

    fn apply<'e>(&mut self, s: &'e Symbol, args: &'e [Expr], env: &mut Env<'e>) -> Option<u32> {
        if let Some((_, c)) = env.funcs.iter().rev().find(|(n, _)| *n == s.name()) {
            let c = c.clone();
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                vals.push(self.eval(a, env));
            }
            let mut inner = c.env.clone();
            for (p, v) in c.params.iter().zip(vals) {
                inner.vars.push((&p.name, v?));
            }
            return self.eval(c.body, &mut inner);
        }
        let mut vals = Vec::with_capacity(args.len());
        let mut unknown = false;
        for a in args {
            let v = self.eval(a, env);
            unknown |= v.is_none();
            vals.push(v.unwrap_or(0));
        }
        if unknown {
            return None;
        }
        let m = self.m;
        if let Some(b) = s.builtin_kind() {
            let int = |k: usize| m.int_value(vals[k]);
            let bool = |b: bool| Some(u32::from(b));
            return match b {
                Builtin::True => Some(1),
                Builtin::False => Some(0),
                Builtin::Numeral(n) => Some(m.int(n)),
                Builtin::Sum => Some(m.int(int(0) + int(1))),
                Builtin::Difference => Some(m.int(int(0) - int(1))),
                Builtin::Product => Some(m.int(int(0) * int(1))),
                Builtin::Uminus => Some(m.int(-int(0))),
                Builtin::Greater => bool(int(0) > int(1)),
                Builtin::GreaterEq => bool(int(0) >= int(1)),
                Builtin::Less => bool(int(0) < int(1)),
                Builtin::LessEq => bool(int(0) <= int(1)),
                Builtin::Select | Builtin::Store => {
                    let (_, vs) = s.args()[0].as_array().unwrap();
                    let base = m.domain_size(vs).unwrap() as u32;
                    let w = base.pow(vals[1]);
                    let digit = (vals[0] / w) % base;
                    if b == Builtin::Select {
                        Some(digit)
                    } else {
                        Some(vals[0] - digit * w + vals[2] * w)
                    }
                }
            };
        }
        let k = *m
            .index
            .get(s)
            .unwrap_or_else(|| panic!("symbol {} has no table", s.name()));
        let c = m.cell(k, &vals);
        let v = m.tables[k][c];
        if v == UNSET {
            self.missing.get_or_insert((k, c));
            None
        } else {
            Some(v)
        }
    }
}

/// Value of the closed expression `e` in `m` under `assignment`.
pub fn evaluate(
    e: &Expr,
    m: &FiniteStructure,
    assignment: &[(Var, u32)],
) -> Result<u32, OracleError> {
    check_expr(e, m)?;
    for (v, _) in assignment {
        m.domain_size(&v.sort)?;
    }
    let mut env = Env {
        vars: assignment.iter().map(|(v, x)| (&*v.name, *x)).collect(),
        funcs: Vec::new(),
    };
    let mut ev = Evaluator { m, missing: None };
    ev.eval(e, &mut env).ok_or_else(|| {
        OracleError::Partial(
            ev.missing
                .map(|(k, _)| m.syms[k].name().to_string())
                .unwrap_or_default(),
        )
    })
}

fn check_expr(e: &Expr, m: &FiniteStructure) -> Result<(), OracleError> {
    let mut stack = vec![e];
    while let Some(e) = stack.pop() {
        match e {
            Expr::Tuple(_) | Expr::TupleLet(..) => {
                return Err(OracleError::Unsupported("tuple expression".into()))
            }
            Expr::Var(v) => {
                m.domain_size(&v.sort)?;
            }
            Expr::Quant(_, vs, _) => {
                for v in vs {
                    m.domain_size(&v.sort)?;
                }
            }
            Expr::Let(bs, _) => {
                for b in bs {
                    for p in &b.params {
                        m.domain_size(&p.sort)?;
                    }
                }
            }
            Expr::App(s, _) => {
                for a in s.args() {
                    m.domain_size(a)?;
                }
                m.domain_size(s.result())?;
            }
            _ => {}
        }
        stack.extend(e.children());
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// A model of every formula.
    Sat(Box<FiniteStructure>),
    /// No model with uninterpreted domains of at most this size.
    UnsatUpTo(usize),
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }
}

/// The formulas whose joint satisfiability `p` asks for: the axioms and
/// hypotheses together with the negated conjecture.
pub fn problem_formulas(p: &Problem) -> Vec<Expr> {
    p.formulas()
        .map(|u| {
            let e = close(u.as_formula().unwrap().clone());
            if u.role == Role::Conjecture {
                Expr::not(e)
            } else {
                e
            }
        })
        .collect()
}

/// Universal closures of the clauses of `cs`.
pub fn clause_formulas(cs: &ClauseSet) -> Vec<Expr> {
    cs.clauses
        .iter()
        .map(|c| {
            let lits: Vec<Expr> = c
                .literals
                .iter()
                .map(|l| {
                    if l.positive {
                        l.atom.clone()
                    } else {
                        Expr::not(l.atom.clone())
                    }
                })
                .collect();
            close(if lits.is_empty() {
                Expr::falsity()
            } else {
                Expr::or(lits)
            })
        })
        .collect()
}

fn uninterpreted_sorts(s: &Sort, out: &mut BTreeSet<Sort>) {
    match s {
        Sort::Individual | Sort::Named(_) => {
            out.insert(s.clone());
        }
        Sort::Array(i, v) => {
            uninterpreted_sorts(i, out);
            uninterpreted_sorts(v, out);
        }
        Sort::Tuple(ms) => ms.iter().for_each(|m| uninterpreted_sorts(m, out)),
        Sort::Bool | Sort::Int => {}
    }
}

fn signature_of(fs: &[Expr]) -> (Vec<Symbol>, BTreeSet<Sort>) {
    let mut syms = Vec::new();
    let mut seen = BTreeSet::new();
    let mut sorts = BTreeSet::new();
    for f in fs {
        let mut stack = vec![f];
        while let Some(e) = stack.pop() {
            match e {
                Expr::App(s, _) => {
                    for a in s.args() {
                        uninterpreted_sorts(a, &mut sorts);
                    }
                    uninterpreted_sorts(s.result(), &mut sorts);
                    if !s.is_interpreted() && seen.insert(s.clone()) {
                        syms.push(s.clone());
                    }
                }
                Expr::Var(v) => uninterpreted_sorts(&v.sort, &mut sorts),
                Expr::Quant(_, vs, _) => vs
                    .iter()
                    .for_each(|v| uninterpreted_sorts(&v.sort, &mut sorts)),
                Expr::Let(bs, _) => {
                    for b in bs {
                        b.params
                            .iter()
                            .for_each(|v| uninterpreted_sorts(&v.sort, &mut sorts));
                    }
                }
                _ => {}
            }
            stack.extend(e.children());
        }
    }
    (syms, sorts)
}

struct Search<'c> {
    m: FiniteStructure,
    nodes: u64,
    limit: u64,
    constants: Vec<usize>,
    cfg: &'c OracleConfig,
}

impl Search<'_> {
    /// Assigns uninterpreted constants first, each to an element already
    /// used by an earlier constant of its sort or to the next unused one.
    fn constants(&mut self, k: usize, fs: &[Expr]) -> Result<bool, OracleError> {
        let Some(&sym) = self.constants.get(k) else {
            return self.cells(fs, (0..fs.len()).collect());
        };
        let sort = self.m.syms[sym].result().clone();
        let used = self.constants[..k]
            .iter()
            .filter(|&&c| *self.m.syms[c].result() == sort)
            .map(|&c| self.m.tables[c][0] + 1)
            .max()
            .unwrap_or(0);
        let n = (self.m.domain_size(&sort)? as u32).min(used + 1);
        for v in 0..n {
            self.m.tables[sym][0] = v;
            if self.constants(k + 1, fs)? {
                return Ok(true);
            }
        }
        self.m.tables[sym][0] = UNSET;
        Ok(false)
    }

    fn cells(&mut self, fs: &[Expr], open: Vec<usize>) -> Result<bool, OracleError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(OracleError::SearchSpaceTooLarge(format!(
                "more than {} search nodes",
                self.cfg.max_nodes
            )));
        }
        let mut still_open = Vec::new();
        let mut branch = None;
        for i in open {
            let mut ev = Evaluator {
                m: &self.m,
                missing: None,
            };
            match ev.eval(&fs[i], &mut Env::default()) {
                Some(0) => return Ok(false),
                Some(_) => {}
                None => {
                    still_open.push(i);
                    if branch.is_none() {
                        branch = ev.missing;
                    }
                }
            }
        }
        let Some((sym, cell)) = branch else {
            return Ok(true);
        };
        let n = self.m.domain_size(self.m.syms[sym].result())? as u32;
        for v in 0..n {
            self.m.tables[sym][cell] = v;
            if self.cells(fs, still_open.clone())? {
                return Ok(true);
            }
        }
        self.m.tables[sym][cell] = UNSET;
        Ok(false)
    }
}

/// Searches for a model of `fs` with every uninterpreted sort of size at
/// most `k`, smaller total sizes first.
pub fn satisfiable_formulas(
    fs: &[Expr],
    k: usize,
    cfg: &OracleConfig,
) -> Result<Verdict, OracleError> {
    let (syms, sorts) = signature_of(fs);
    let sorts: Vec<Sort> = sorts.into_iter().collect();
    let mut vectors: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in &sorts {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                (1..=k).map(move |n| {
                    let mut w = v.clone();
                    w.push(n);
                    w
                })
            })
            .collect();
    }
    vectors.sort_by_key(|v| v.iter().sum::<usize>());
    let mut nodes = 0;
    for sizes in vectors {
        let sizes: BTreeMap<Sort, usize> = sorts.iter().cloned().zip(sizes).collect();
        let m = FiniteStructure::new(cfg.clone(), sizes, &syms)?;
        for f in fs {
            check_expr(f, &m)?;
        }
        let constants = (0..m.syms.len())
            .filter(|&i| m.syms[i].arity() == 0 && m.syms[i].result().is_uninterpreted())
            .collect();
        let mut s = Search {
            m,
            nodes,
            limit: nodes + cfg.max_nodes,
            constants,
            cfg,
        };
        if s.constants(0, fs)? {
            s.m.fill_unset();
            return Ok(Verdict::Sat(Box::new(s.m)));
        }
        nodes = s.nodes;
    }
    Ok(Verdict::UnsatUpTo(k))
}

/// Whether `p` (axioms plus negated conjecture) has a model with
/// uninterpreted domains of size at most `k`.
pub fn satisfiable_within(
    p: &Problem,
    k: usize,
    cfg: &OracleConfig,
) -> Result<Verdict, OracleError> {
    satisfiable_formulas(&problem_formulas(p), k, cfg)
}

/// Whether the two problems get the same verdict at bound `k`.
pub fn equisatisfiable_check(
    original: &Problem,
    translated: &Problem,
    k: usize,
    cfg: &OracleConfig,
) -> Result<bool, OracleError> {
    Ok(satisfiable_within(original, k, cfg)?.is_sat()
        == satisfiable_within(translated, k, cfg)?.is_sat())
}
