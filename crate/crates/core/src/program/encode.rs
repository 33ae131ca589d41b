//! Next-state encodings. Program variables become constants of their
//! sort; `let` rebinds them.

use super::{check_restricted_form, BinOp, PExpr, Program, ProgramError, ProgramFile, UnOp};
use crate::logic::{Binding, Builtin, Expr, Problem, Role, Sort, Symbol, Unit, UnitContent};
use crate::tptp::parse_problem;

struct Encoder<'p> {
    prog: &'p ProgramFile,
}

fn arith(name: &str, args: Vec<Expr>) -> Expr {
    let (b, a, r) = Builtin::arithmetic(name).unwrap();
    Expr::app(Symbol::builtin(b, a, r), args)
}

impl Encoder<'_> {
    fn sym(&self, x: &str) -> Result<Symbol, ProgramError> {
        let s = self
            .prog
            .sort_of(x)
            .ok_or_else(|| ProgramError::UnboundVariable(x.to_string()))?;
        Ok(Symbol::constant(x, s.clone()))
    }

    fn var(&self, x: &str) -> Result<Expr, ProgramError> {
        Ok(Expr::constant(self.sym(x)?))
    }

    fn expr(&self, e: &PExpr) -> Result<Expr, ProgramError> {
        Ok(match e {
            PExpr::Int(n) => Expr::numeral(*n),
            PExpr::Bool(b) => Expr::bool_const(*b),
            PExpr::Var(x) => self.var(x)?,
            PExpr::Unary(UnOp::Neg, a) => arith("$uminus", vec![self.expr(a)?]),
            PExpr::Unary(UnOp::Not, a) => Expr::not(self.expr(a)?),
            PExpr::Binary(op, a, b) => {
                let (a, b) = (self.expr(a)?, self.expr(b)?);
                match op {
                    BinOp::Add => arith("$sum", vec![a, b]),
                    BinOp::Sub => arith("$difference", vec![a, b]),
                    BinOp::Gt => arith("$greater", vec![a, b]),
                    BinOp::Ge => arith("$greatereq", vec![a, b]),
                    BinOp::Lt => arith("$less", vec![a, b]),
                    BinOp::Le => arith("$lesseq", vec![a, b]),
                    BinOp::Eq => Expr::eq(a, b),
                    BinOp::Ne => Expr::not(Expr::eq(a, b)),
                    BinOp::And => Expr::and(vec![a, b]),
                    BinOp::Or => Expr::or(vec![a, b]),
                }
            }
            PExpr::Read(a, i) => {
                let sort = super::parse::type_of(a, &self.prog.vars)?;
                Expr::app(
                    Symbol::select(&sort).unwrap(),
                    vec![self.expr(a)?, self.expr(i)?],
                )
            }
            PExpr::Write(a, i, v) => {
                let sort = super::parse::type_of(a, &self.prog.vars)?;
                Expr::app(
                    Symbol::store(&sort).unwrap(),
                    vec![self.expr(a)?, self.expr(i)?, self.expr(v)?],
                )
            }
        })
    }

    fn bind(&self, x: &str, value: Expr, body: Expr) -> Result<Expr, ProgramError> {
        Ok(Expr::let_in(
            vec![Binding {
                head: self.sym(x)?,
                params: Vec::new(),
                body: value,
            }],
            body,
        ))
    }

    /// `[p]` with the final body replaced by `tail`; `x := x` adds no binding.
    fn restricted(&self, p: &Program, tail: Expr) -> Result<Expr, ProgramError> {
        match p {
            Program::Skip => Ok(tail),
            Program::Assign(x, PExpr::Var(y)) if x == y => Ok(tail),
            Program::Assign(x, e) => self.bind(x, self.expr(e)?, tail),
            Program::If(c, a, b) => {
                let x = &p.assigned()[0];
                let v = Expr::ite(
                    self.expr(c)?,
                    self.restricted(a, self.var(x)?)?,
                    self.restricted(b, self.var(x)?)?,
                );
                self.bind(x, v, tail)
            }
            Program::Seq(a, b) => {
                let rest = self.restricted(b, tail)?;
                self.restricted(a, rest)
            }
        }
    }

    fn tuple(&self, xs: &[Symbol], members: Vec<Expr>) -> Expr {
        if xs.len() == 1 {
            members.into_iter().next().unwrap()
        } else {
            Expr::Tuple(members)
        }
    }

    fn tuple_let(&self, xs: &[Symbol], value: Expr, body: Expr) -> Expr {
        if xs.len() == 1 {
            Expr::let_in(
                vec![Binding {
                    head: xs[0].clone(),
                    params: Vec::new(),
                    body: value,
                }],
                body,
            )
        } else {
            Expr::TupleLet(xs.to_vec(), Box::new(value), Box::new(body))
        }
    }

    fn all(&self, xs: &[Symbol]) -> Expr {
        self.tuple(xs, xs.iter().cloned().map(Expr::constant).collect())
    }

    fn tuples(&self, p: &Program, xs: &[Symbol], tail: Expr) -> Result<Expr, ProgramError> {
        match p {
            Program::Skip => Ok(tail),
            Program::Assign(x, e) => {
                let members = xs
                    .iter()
                    .map(|s| {
                        if s.name() == x {
                            self.expr(e)
                        } else {
                            Ok(Expr::constant(s.clone()))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.tuple_let(xs, self.tuple(xs, members), tail))
            }
            Program::If(c, a, b) => {
                let v = Expr::ite(
                    self.expr(c)?,
                    self.tuples(a, xs, self.all(xs))?,
                    self.tuples(b, xs, self.all(xs))?,
                );
                Ok(self.tuple_let(xs, v, tail))
            }
            Program::Seq(a, b) => {
                let rest = self.tuples(b, xs, tail)?;
                self.tuples(a, xs, rest)
            }
        }
    }
}

/// The next-state value of `observed` after `prog`, without tuples.
pub fn encode_restricted(prog: &ProgramFile, observed: &str) -> Result<Expr, ProgramError> {
    if !check_restricted_form(&prog.body) {
        return Err(ProgramError::NotRestrictedForm);
    }
    let enc = Encoder { prog };
    enc.restricted(&prog.body, enc.var(observed)?)
}

/// Assigned variables in declaration order: the components of
/// [`encode_tuples`].
pub fn tuple_variables(prog: &ProgramFile) -> Vec<String> {
    let assigned = prog.body.assigned();
    prog.vars
        .iter()
        .filter(|(x, _)| assigned.contains(x))
        .map(|(x, _)| x.clone())
        .collect()
}

/// The tuple of next-state values of the [`tuple_variables`]. With one
/// assigned variable the tuple degenerates to that variable.
pub fn encode_tuples(prog: &ProgramFile) -> Result<Expr, ProgramError> {
    let enc = Encoder { prog };
    let xs = tuple_variables(prog)
        .iter()
        .map(|x| enc.sym(x))
        .collect::<Result<Vec<_>, _>>()?;
    if xs.is_empty() {
        return Ok(Expr::Tuple(Vec::new()));
    }
    let e = enc.tuples(&prog.body, &xs, enc.all(&xs))?;
    debug_assert!(e.node_count() <= 4 * xs.len() * program_size(&prog.body));
    Ok(e)
}

/// Statements plus expression nodes.
pub fn program_size(p: &Program) -> usize {
    match p {
        Program::Skip => 1,
        Program::Assign(_, e) => 1 + e.node_count(),
        Program::If(c, a, b) => 1 + c.node_count() + program_size(a) + program_size(b),
        Program::Seq(a, b) => program_size(a) + program_size(b),
    }
}

/// Name of the constant holding the next-state value of `var`.
pub fn next_state_name(var: &str) -> String {
    format!("{var}1")
}

/// Declarations of the program variables and of the next-state constants
/// of `observed`, a `transition_relation` hypothesis per observed variable
/// equating its next-state constant with the encoding, then the units of
/// `spec`.
pub fn emit_vc(
    prog: &ProgramFile,
    spec: &Problem,
    observed: &[String],
) -> Result<Problem, ProgramError> {
    let mut units = Vec::new();
    let mut sig = spec.signature.clone();
    let mut declared = Vec::new();
    for (x, s) in &prog.vars {
        units.push(Unit::symbol_decl(x.clone(), Symbol::constant(x, s.clone())));
        declared.push(x.clone());
    }
    let mut relations = Vec::new();
    for x in observed {
        let s = prog
            .sort_of(x)
            .ok_or_else(|| ProgramError::UnboundVariable(x.clone()))?;
        let next = next_state_name(x);
        let sym = Symbol::constant(&next, s.clone());
        sig.declare_symbol(sym.clone())
            .map_err(|e| ProgramError::Spec(e.to_string()))?;
        units.push(Unit::symbol_decl(next.clone(), sym.clone()));
        declared.push(next);
        let name = if observed.len() == 1 {
            "transition_relation".to_string()
        } else {
            format!("transition_relation_{x}")
        };
        let rhs = encode_restricted(prog, x)?;
        relations.push(Unit::formula(
            name,
            Role::Hypothesis,
            Expr::eq(Expr::constant(sym), rhs),
        ));
    }
    units.extend(relations);
    for u in &spec.units {
        if let UnitContent::Type(crate::logic::TypeDecl::Symbol(s)) = &u.content {
            if declared.iter().any(|d| d == s.name()) {
                continue;
            }
        }
        units.push(u.clone());
    }
    Ok(Problem {
        units,
        signature: sig,
    })
}

fn declarations(prog: &ProgramFile, with_next: bool) -> String {
    let mut out = String::new();
    let assigned = prog.body.assigned();
    for (x, s) in &prog.vars {
        out.push_str(&format!("tff({x}, type, {x}: {}).\n", tptp_sort(s)));
        if with_next && assigned.contains(x) {
            let n = next_state_name(x);
            out.push_str(&format!("tff({n}, type, {n}: {}).\n", tptp_sort(s)));
        }
    }
    out
}

fn tptp_sort(s: &Sort) -> String {
    s.to_string()
}

/// Builds the verification problem from program text and specification
/// text. The specification is TPTP over the program variables and the
/// next-state constants `x1` of assigned variables; the variables whose
/// next-state constant it mentions are observed.
pub fn vc_from_text(program: &str, spec: &str) -> Result<Problem, ProgramError> {
    let prog = super::parse_program(program)?;
    let full = format!("{}{spec}", declarations(&prog, true));
    let parsed = parse_problem(&full).map_err(|e| ProgramError::Spec(e.to_string()))?;
    let observed: Vec<String> = prog
        .body
        .assigned()
        .into_iter()
        .filter(|x| {
            let n = next_state_name(x);
            parsed
                .formulas()
                .any(|u| u.as_formula().unwrap().mentions_symbol(&n))
        })
        .collect();
    let assigned = prog.body.assigned();
    let prepended = |name: &str| {
        prog.sort_of(name).is_some() || assigned.iter().any(|x| next_state_name(x) == name)
    };
    let units = parsed
        .units
        .iter()
        .filter(|u| {
            !matches!(&u.content,
                UnitContent::Type(crate::logic::TypeDecl::Symbol(s)) if prepended(s.name()))
        })
        .cloned()
        .collect();
    let spec_problem = Problem {
        units,
        signature: parsed.signature,
    };
    emit_vc(&prog, &spec_problem, &observed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::alpha_equal;
    use crate::program::parse_program;

    const MAX_PROGRAM: &str = "var x, y, max, res : int;
        res := x;
        if (x > y) then max := x; else max := y;
        if (max > 0) then res := res + max; else res := res - max;";

    #[test]
    fn single_assignment() {
        let p = parse_program("var x : int; x := x + 1;").unwrap();
        let want =
            parse_problem("tff(x, type, x: $int). tff(a, axiom, $let(x := $sum(x, 1), x) = x).")
                .unwrap();
        let Expr::Eq(l, _) = want.formulas().next().unwrap().as_formula().unwrap() else {
            panic!()
        };
        assert!(alpha_equal(&encode_restricted(&p, "x").unwrap(), l));
        assert!(alpha_equal(&encode_tuples(&p).unwrap(), l));
    }

    #[test]
    fn swap_is_not_restricted() {
        let p = parse_program("var x, y, t : int; if (x > y) then { t := x; x := y; y := t; }")
            .unwrap();
        assert_eq!(
            encode_restricted(&p, "x"),
            Err(ProgramError::NotRestrictedForm)
        );
        let e = encode_tuples(&p).unwrap();
        let Expr::TupleLet(xs, v, body) = &e else {
            panic!("{e:?}")
        };
        assert_eq!(xs.len(), 3);
        assert!(matches!(&**v, Expr::Ite(..)));
        assert!(matches!(&**body, Expr::Tuple(m) if m.len() == 3));
    }

    #[test]
    fn each_program_expression_occurs_once() {
        let p = parse_program(MAX_PROGRAM).unwrap();
        let e = encode_restricted(&p, "res").unwrap();
        let text = e.to_string();
        assert_eq!(text.matches("$greater(x, y)").count(), 1);
        assert_eq!(text.matches("$sum(res, max)").count(), 1);
        assert_eq!(text.matches("$difference(res, max)").count(), 1);
    }

    #[test]
    fn trivial_vc() {
        let prob = vc_from_text("var x : int; x := 1;", "tff(c, conjecture, $true).").unwrap();
        assert!(prob.unit("transition_relation").is_none());
        assert!(prob.unit("c").is_some());
    }
}
