//! Big-step semantics of programs and call-by-value evaluation of the
//! quantifier-free expressions produced by the encoders. Integers are
//! 16-bit; overflow is an error.

use std::collections::BTreeMap;
use std::rc::Rc;

use super::{BinOp, PExpr, Program, ProgramError, ProgramState, UnOp};
use crate::logic::{Builtin, Connective, Expr, Var};

/// A total map from `i16` indices: `default` everywhere except `entries`.
/// Entries equal to the default are never stored, so equality is extensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayValue {
    pub default: Box<Value>,
    pub entries: BTreeMap<i16, Value>,
}

impl ArrayValue {
    pub fn constant(v: Value) -> ArrayValue {
        ArrayValue {
            default: Box::new(v),
            entries: BTreeMap::new(),
        }
    }

    pub fn read(&self, i: i16) -> &Value {
        self.entries.get(&i).unwrap_or(&self.default)
    }

    pub fn write(&self, i: i16, v: Value) -> ArrayValue {
        let mut out = self.clone();
        if v == *out.default {
            out.entries.remove(&i);
        } else {
            out.entries.insert(i, v);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i16),
    Bool(bool),
    Array(ArrayValue),
    Tuple(Vec<Value>),
}

impl Value {
    fn int(&self) -> Result<i16, ProgramError> {
        match self {
            Value::Int(n) => Ok(*n),
            v => Err(ProgramError::Sort(format!(
                "expected an integer, got {v:?}"
            ))),
        }
    }

    fn bool(&self) -> Result<bool, ProgramError> {
        match self {
            Value::Bool(b) => Ok(*b),
            v => Err(ProgramError::Sort(format!("expected a boolean, got {v:?}"))),
        }
    }

    fn array(&self) -> Result<&ArrayValue, ProgramError> {
        match self {
            Value::Array(a) => Ok(a),
            v => Err(ProgramError::Sort(format!("expected an array, got {v:?}"))),
        }
    }
}

fn literal(n: i64) -> Result<i16, ProgramError> {
    i16::try_from(n).map_err(|_| ProgramError::Overflow)
}

fn add(a: i16, b: i16) -> Result<i16, ProgramError> {
    a.checked_add(b).ok_or(ProgramError::Overflow)
}

fn sub(a: i16, b: i16) -> Result<i16, ProgramError> {
    a.checked_sub(b).ok_or(ProgramError::Overflow)
}

fn neg(a: i16) -> Result<i16, ProgramError> {
    a.checked_neg().ok_or(ProgramError::Overflow)
}

fn eval_pexpr(e: &PExpr, s: &ProgramState) -> Result<Value, ProgramError> {
    Ok(match e {
        PExpr::Int(n) => Value::Int(literal(*n)?),
        PExpr::Bool(b) => Value::Bool(*b),
        PExpr::Var(x) => s
            .get(x)
            .cloned()
            .ok_or_else(|| ProgramError::UnboundVariable(x.clone()))?,
        PExpr::Unary(UnOp::Neg, a) => Value::Int(neg(eval_pexpr(a, s)?.int()?)?),
        PExpr::Unary(UnOp::Not, a) => Value::Bool(!eval_pexpr(a, s)?.bool()?),
        PExpr::Binary(op, a, b) => {
            let (a, b) = (eval_pexpr(a, s)?, eval_pexpr(b, s)?);
            match op {
                BinOp::Add => Value::Int(add(a.int()?, b.int()?)?),
                BinOp::Sub => Value::Int(sub(a.int()?, b.int()?)?),
                BinOp::Gt => Value::Bool(a.int()? > b.int()?),
                BinOp::Ge => Value::Bool(a.int()? >= b.int()?),
                BinOp::Lt => Value::Bool(a.int()? < b.int()?),
                BinOp::Le => Value::Bool(a.int()? <= b.int()?),
                BinOp::Eq => Value::Bool(a == b),
                BinOp::Ne => Value::Bool(a != b),
                BinOp::And => Value::Bool(a.bool()? && b.bool()?),
                BinOp::Or => Value::Bool(a.bool()? || b.bool()?),
            }
        }
        PExpr::Read(a, i) => {
            let a = eval_pexpr(a, s)?;
            a.array()?.read(eval_pexpr(i, s)?.int()?).clone()
        }
        PExpr::Write(a, i, v) => {
            let a = eval_pexpr(a, s)?;
            let i = eval_pexpr(i, s)?.int()?;
            Value::Array(a.array()?.write(i, eval_pexpr(v, s)?))
        }
    })
}

/// Runs `p` from `initial`.
pub fn interpret_program(
    p: &Program,
    initial: &ProgramState,
) -> Result<ProgramState, ProgramError> {
    let mut s = initial.clone();
    run(p, &mut s)?;
    Ok(s)
}

fn run(p: &Program, s: &mut ProgramState) -> Result<(), ProgramError> {
    match p {
        Program::Skip => {}
        Program::Assign(x, e) => {
            let v = eval_pexpr(e, s)?;
            s.insert(x.clone(), v);
        }
        Program::If(c, a, b) => {
            if eval_pexpr(c, s)?.bool()? {
                run(a, s)?
            } else {
                run(b, s)?
            }
        }
        Program::Seq(a, b) => {
            run(a, s)?;
            run(b, s)?;
        }
    }
    Ok(())
}

struct Closure<'e> {
    params: &'e [Var],
    body: &'e Expr,
    env: Env<'e>,
}

#[derive(Clone)]
enum Entry<'e> {
    Val(Value),
    Fun(Rc<Closure<'e>>),
}

type Env<'e> = Vec<(&'e str, Entry<'e>)>;

/// External interpretation of symbols that are neither interpreted nor bound.
pub type Functions<'f> = &'f dyn Fn(&str, &[Value]) -> Option<Value>;

struct Evaluator<'f> {
    funcs: Functions<'f>,
}

impl Evaluator<'_> {
    fn eval<'e>(&self, e: &'e Expr, env: &mut Env<'e>) -> Result<Value, ProgramError> {
        match e {
            Expr::Var(v) => self.lookup(&v.name, &[], env),
            Expr::App(s, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a, env)?);
                }
                if env.iter().any(|(n, _)| *n == s.name()) {
                    return self.lookup(s.name(), &vals, env);
                }
                match s.builtin_kind() {
                    Some(b) => builtin(b, &vals),
                    None => self.lookup(s.name(), &vals, env),
                }
            }
            Expr::Eq(l, r) => Ok(Value::Bool(self.eval(l, env)? == self.eval(r, env)?)),
            Expr::Conn(c, xs) => {
                let mut bs = Vec::with_capacity(xs.len());
                for x in xs {
                    bs.push(self.eval(x, env)?.bool()?);
                }
                Ok(Value::Bool(match c {
                    Connective::Not => !bs[0],
                    Connective::And => bs.iter().all(|b| *b),
                    Connective::Or => bs.iter().any(|b| *b),
                    Connective::Implies => !bs[0] || bs[1],
                    Connective::Iff => bs[0] == bs[1],
                    Connective::Xor => bs[0] != bs[1],
                }))
            }
            Expr::Quant(..) => Err(ProgramError::Unsupported("quantifier".into())),
            Expr::Ite(c, a, b) => {
                if self.eval(c, env)?.bool()? {
                    self.eval(a, env)
                } else {
                    self.eval(b, env)
                }
            }
            Expr::Let(bs, body) => {
                let outer = env.clone();
                let mut entries = Vec::with_capacity(bs.len());
                for b in bs {
                    let entry = if b.params.is_empty() {
                        Entry::Val(self.eval(&b.body, &mut outer.clone())?)
                    } else {
                        Entry::Fun(Rc::new(Closure {
                            params: &b.params,
                            body: &b.body,
                            env: outer.clone(),
                        }))
                    };
                    entries.push((b.head.name(), entry));
                }
                let n = env.len();
                env.extend(entries);
                let r = self.eval(body, env);
                env.truncate(n);
                r
            }
            Expr::Tuple(xs) => {
                let mut vs = Vec::with_capacity(xs.len());
                for x in xs {
                    vs.push(self.eval(x, env)?);
                }
                Ok(Value::Tuple(vs))
            }
            Expr::TupleLet(syms, value, body) => {
                let Value::Tuple(vs) = self.eval(value, env)? else {
                    return Err(ProgramError::Sort("tuple binding of a non-tuple".into()));
                };
                if vs.len() != syms.len() {
                    return Err(ProgramError::Sort("tuple arity mismatch".into()));
                }
                let n = env.len();
                env.extend(
                    syms.iter()
                        .map(|s| s.name())
                        .zip(vs.into_iter().map(Entry::Val)),
                );
                let r = self.eval(body, env);
                env.truncate(n);
                r
            }
        }
    }

    fn lookup<'e>(&self, name: &str, args: &[Value], env: &Env<'e>) -> Result<Value, ProgramError> {
        match env.iter().rev().find(|(n, _)| *n == name) {
            Some((_, Entry::Val(v))) if args.is_empty() => Ok(v.clone()),
            Some((_, Entry::Fun(c))) if c.params.len() == args.len() => {
                let mut inner = c.env.clone();
                inner.extend(
                    c.params
                        .iter()
                        .map(|p| &*p.name)
                        .zip(args.iter().cloned().map(Entry::Val)),
                );
                self.eval(c.body, &mut inner)
            }
            Some(_) => Err(ProgramError::Sort(format!(
                "`{name}` applied to {} arguments",
                args.len()
            ))),
            None => (self.funcs)(name, args)
                .ok_or_else(|| ProgramError::UnboundVariable(name.to_string())),
        }
    }
}

fn builtin(b: Builtin, v: &[Value]) -> Result<Value, ProgramError> {
    Ok(match b {
        Builtin::True => Value::Bool(true),
        Builtin::False => Value::Bool(false),
        Builtin::Numeral(n) => Value::Int(literal(n)?),
        Builtin::Sum => Value::Int(add(v[0].int()?, v[1].int()?)?),
        Builtin::Difference => Value::Int(sub(v[0].int()?, v[1].int()?)?),
        Builtin::Product => Value::Int(
            v[0].int()?
                .checked_mul(v[1].int()?)
                .ok_or(ProgramError::Overflow)?,
        ),
        Builtin::Uminus => Value::Int(neg(v[0].int()?)?),
        Builtin::Greater => Value::Bool(v[0].int()? > v[1].int()?),
        Builtin::GreaterEq => Value::Bool(v[0].int()? >= v[1].int()?),
        Builtin::Less => Value::Bool(v[0].int()? < v[1].int()?),
        Builtin::LessEq => Value::Bool(v[0].int()? <= v[1].int()?),
        Builtin::Select => v[0].array()?.read(v[1].int()?).clone(),
        Builtin::Store => Value::Array(v[0].array()?.write(v[1].int()?, v[2].clone())),
    })
}

/// Value of `e` with the program variables bound by `env`.
pub fn evaluate_foolp(e: &Expr, env: &ProgramState) -> Result<Value, ProgramError> {
    evaluate_foolp_with(e, env, &|_, _| None)
}

/// As [`evaluate_foolp`], with `funcs` interpreting any remaining symbols.
pub fn evaluate_foolp_with(
    e: &Expr,
    env: &ProgramState,
    funcs: Functions<'_>,
) -> Result<Value, ProgramError> {
    let mut bound: Env<'_> = env
        .iter()
        .map(|(k, v)| (k.as_str(), Entry::Val(v.clone())))
        .collect();
    Evaluator { funcs }.eval(e, &mut bound)
}
