//! TPTP output. The default form is FOOL TFF; `show_fool` renders the
//! boolean sort as an ordinary sort `$$bool` so the output is plain TFF0.

use std::collections::HashSet;
use std::fmt::{self, Write};
use std::sync::Arc;

use crate::logic::{
    Builtin, Connective, Expr, Problem, Quantifier, Sort, Symbol, TypeDecl, Unit, UnitContent,
};

#[derive(Clone, Copy, Debug, Default)]
pub struct PrintOptions {
    pub show_fool: bool,
}

pub fn print_problem(p: &Problem, opts: PrintOptions) -> String {
    let ctx = Ctx::new(p, opts);
    let mut out = String::new();
    if opts.show_fool {
        out.push_str("tff(fool_bool_sort, type, $$bool: $tType).\n");
        out.push_str("tff(fool_true_decl, type, $$true: $$bool).\n");
        out.push_str("tff(fool_false_decl, type, $$false: $$bool).\n");
    }
    for u in &p.units {
        ctx.unit(u, &mut out);
        out.push('\n');
    }
    out
}

pub fn print_unit(u: &Unit) -> String {
    let ctx = Ctx {
        show_fool: false,
        term_used: HashSet::new(),
    };
    let mut out = String::new();
    ctx.unit(u, &mut out);
    out
}

pub fn print_expr(e: &Expr) -> String {
    let ctx = Ctx {
        show_fool: false,
        term_used: HashSet::new(),
    };
    let mut out = String::new();
    ctx.expr(e, false, &mut out);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_expr(self))
    }
}

/// TPTP rendering of a symbol name: bare when it is a lower word, quoted otherwise.
pub fn symbol_name(s: &Symbol) -> String {
    if let Some(b) = s.builtin_kind() {
        return b.tptp_name();
    }
    atom_name(s.name(), s.is_fresh())
}

pub fn atom_name(name: &str, force_quote: bool) -> String {
    let lower = name.starts_with(|c: char| c.is_ascii_lowercase())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let dd = name.starts_with("$$")
        && name[2..]
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_');
    if (lower || dd) && !force_quote {
        name.to_string()
    } else {
        let mut s = String::from("'");
        for c in name.chars() {
            if c == '\'' || c == '\\' {
                s.push('\\');
            }
            s.push(c);
        }
        s.push('\'');
        s
    }
}

/// A TPTP variable name for `name`, prefixing `V_` when it is not an upper word.
pub fn var_name(name: &str) -> String {
    let upper = name.starts_with(|c: char| c.is_ascii_uppercase())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if upper {
        name.to_string()
    } else {
        let clean: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        format!("V_{clean}")
    }
}

struct Ctx {
    show_fool: bool,
    /// Boolean symbols that occur in term positions.
    term_used: HashSet<Arc<str>>,
}

impl Ctx {
    fn new(p: &Problem, opts: PrintOptions) -> Ctx {
        let mut term_used = HashSet::new();
        if opts.show_fool {
            for u in p.formulas() {
                collect_term_used(u.as_formula().unwrap(), false, &mut term_used);
            }
        }
        Ctx {
            show_fool: opts.show_fool,
            term_used,
        }
    }

    fn sort(&self, s: &Sort, out: &mut String) {
        match s {
            Sort::Bool if self.show_fool => out.push_str("$$bool"),
            Sort::Array(i, v) => {
                out.push_str("$array(");
                self.sort(i, out);
                out.push_str(", ");
                self.sort(v, out);
                out.push(')');
            }
            _ => {
                let _ = write!(out, "{s}");
            }
        }
    }

    fn is_term_used(&self, s: &Symbol) -> bool {
        self.show_fool
            && s.result().is_bool()
            && (self.term_used.contains(s.name()) || s.builtin_kind() == Some(Builtin::Select))
    }

    fn unit(&self, u: &Unit, out: &mut String) {
        let _ = write!(
            out,
            "tff({}, {}, ",
            atom_name(&u.name, false),
            u.role.tptp_name()
        );
        match &u.content {
            UnitContent::Type(TypeDecl::Sort(s)) => {
                let _ = write!(out, "{}: $tType", atom_name(s, false));
            }
            UnitContent::Type(TypeDecl::Symbol(s)) => {
                let _ = write!(out, "{}: ", symbol_name(s));
                match s.arity() {
                    0 => {}
                    1 => {
                        self.sort(&s.args()[0], out);
                        out.push_str(" > ");
                    }
                    _ => {
                        out.push('(');
                        for (k, a) in s.args().iter().enumerate() {
                            if k > 0 {
                                out.push_str(" * ");
                            }
                            self.sort(a, out);
                        }
                        out.push_str(") > ");
                    }
                }
                if s.result().is_bool() && !self.term_used.contains(s.name()) {
                    out.push_str("$o");
                } else {
                    self.sort(s.result(), out);
                }
            }
            UnitContent::Formula(e) => self.expr(e, false, out),
        }
        out.push_str(").");
    }

    fn args(&self, xs: &[Expr], out: &mut String) {
        if xs.is_empty() {
            return;
        }
        out.push('(');
        for (k, x) in xs.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            self.expr(x, true, out);
        }
        out.push(')');
    }

    fn vars(&self, vs: &[crate::logic::Var], out: &mut String) {
        for (k, v) in vs.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&var_name(&v.name));
            out.push(':');
            self.sort(&v.sort, out);
        }
    }

    /// Operand of a binary connective or negation, parenthesised when it
    /// is itself a non-unary connective or a quantified formula.
    fn operand(&self, e: &Expr, out: &mut String) {
        let wrap = match e {
            Expr::Conn(Connective::Not, _) => false,
            Expr::Conn(..) | Expr::Quant(..) => true,
            _ => false,
        };
        if wrap {
            out.push('(');
        }
        self.expr(e, false, out);
        if wrap {
            out.push(')');
        }
    }

    fn side(&self, e: &Expr, out: &mut String) {
        let wrap = matches!(e, Expr::Conn(..) | Expr::Quant(..) | Expr::Eq(..));
        if wrap {
            out.push('(');
        }
        self.expr(e, true, out);
        if wrap {
            out.push(')');
        }
    }

    fn expr(&self, e: &Expr, term: bool, out: &mut String) {
        match e {
            Expr::Var(v) => {
                if self.show_fool && !term && v.sort.is_bool() {
                    let _ = write!(out, "({} = $$true)", var_name(&v.name));
                } else {
                    out.push_str(&var_name(&v.name));
                }
            }
            Expr::App(s, xs) => {
                if self.show_fool && (s.is_true() || s.is_false()) {
                    out.push_str(match (term, s.is_true()) {
                        (true, true) => "$$true",
                        (true, false) => "$$false",
                        (false, true) => "$true",
                        (false, false) => "$false",
                    });
                    return;
                }
                let wrap = !term && self.is_term_used(s);
                if wrap {
                    out.push('(');
                }
                out.push_str(&symbol_name(s));
                self.args(xs, out);
                if wrap {
                    out.push_str(" = $$true)");
                }
            }
            Expr::Eq(l, r) => {
                self.side(l, out);
                out.push_str(" = ");
                self.side(r, out);
            }
            Expr::Conn(Connective::Not, xs) => match &xs[0] {
                Expr::Eq(l, r) => {
                    self.side(l, out);
                    out.push_str(" != ");
                    self.side(r, out);
                }
                x => {
                    out.push('~');
                    let wrap = matches!(x, Expr::Conn(..) | Expr::Quant(..))
                        && !matches!(x, Expr::Conn(Connective::Not, _));
                    if wrap {
                        out.push('(');
                    }
                    self.expr(x, false, out);
                    if wrap {
                        out.push(')');
                    }
                }
            },
            Expr::Conn(op, xs) => {
                if xs.is_empty() {
                    out.push_str(if *op == Connective::And {
                        "$true"
                    } else {
                        "$false"
                    });
                    return;
                }
                let sep = match op {
                    Connective::And => " & ",
                    Connective::Or => " | ",
                    Connective::Implies => " => ",
                    Connective::Iff => " <=> ",
                    Connective::Xor => " <~> ",
                    Connective::Not => unreachable!(),
                };
                let single = xs.len() == 1;
                if single {
                    // a one-operand conjunction or disjunction prints with an identity
                    out.push('(');
                }
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        out.push_str(sep);
                    }
                    self.operand(x, out);
                }
                if single {
                    out.push_str(if *op == Connective::And {
                        " & $true)"
                    } else {
                        " | $false)"
                    });
                }
            }
            Expr::Quant(q, vs, b) => {
                out.push(if *q == Quantifier::Forall { '!' } else { '?' });
                out.push('[');
                self.vars(vs, out);
                out.push_str("]: ");
                let wrap = matches!(&**b, Expr::Conn(op, _) if *op != Connective::Not)
                    || matches!(&**b, Expr::Eq(..));
                if wrap {
                    out.push('(');
                }
                self.expr(b, false, out);
                if wrap {
                    out.push(')');
                }
            }
            Expr::Ite(c, a, b) => {
                out.push_str("$ite(");
                self.expr(c, false, out);
                out.push_str(", ");
                self.expr(a, term || !a.sort().is_bool(), out);
                out.push_str(", ");
                self.expr(b, term || !b.sort().is_bool(), out);
                out.push(')');
            }
            Expr::Let(bs, t) => {
                out.push_str("$let(");
                for (k, b) in bs.iter().enumerate() {
                    if k > 0 {
                        out.push_str("; ");
                    }
                    out.push_str(&symbol_name(&b.head));
                    if !b.params.is_empty() {
                        out.push('(');
                        self.vars(&b.params, out);
                        out.push(')');
                    }
                    out.push_str(" := ");
                    self.expr(&b.body, false, out);
                }
                out.push_str(", ");
                self.expr(t, term, out);
                out.push(')');
            }
            Expr::Tuple(xs) => {
                out.push('[');
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    self.expr(x, true, out);
                }
                out.push(']');
            }
            Expr::TupleLet(hs, v, b) => {
                out.push_str("$let([");
                for (k, h) in hs.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&symbol_name(h));
                }
                out.push_str("] := ");
                self.expr(v, true, out);
                out.push_str(", ");
                self.expr(b, term, out);
                out.push(')');
            }
        }
    }
}

fn collect_term_used(e: &Expr, term: bool, out: &mut HashSet<Arc<str>>) {
    match e {
        Expr::App(s, xs) => {
            if term && s.result().is_bool() && !s.is_interpreted() {
                out.insert(s.name_arc());
            }
            for x in xs {
                collect_term_used(x, true, out);
            }
        }
        Expr::Eq(l, r) => {
            collect_term_used(l, true, out);
            collect_term_used(r, true, out);
        }
        _ => {
            for c in e.children() {
                collect_term_used(c, false, out);
            }
        }
    }
}
