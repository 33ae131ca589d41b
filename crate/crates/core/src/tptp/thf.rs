//! Conversion of first-order THF input into TFF: curried types become
//! product types and `@` applications become ordinary applications.
//! Lambdas, partial applications and higher-order types are rejected.

use std::collections::HashMap;

use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

/// Rewrites every `thf` unit of `text` as a `tff` unit; other text is kept.
pub fn thf_to_tff(text: &str) -> Result<String, ParseError> {
    let toks = tokenize(text)?;
    let mut c = Conv {
        toks: &toks,
        i: 0,
        arity: HashMap::new(),
    };
    let mut out = String::new();
    let mut copied = 0;
    while *c.peek() != Tok::Eof {
        let unit_start = c.toks[c.i].start;
        let is_thf =
            matches!(c.peek(), Tok::Lower(k) if k == "thf") && *c.peek_at(1) == Tok::LParen;
        if !is_thf {
            c.bump();
            continue;
        }
        out.push_str(&text[copied..unit_start]);
        out.push_str("tff");
        c.bump();
        let header_start = c.toks[c.i].start;
        c.expect(Tok::LParen)?;
        c.bump();
        c.expect(Tok::Comma)?;
        let role = match c.bump() {
            Tok::Lower(r) => r,
            _ => return Err(c.err_prev("a role")),
        };
        c.expect(Tok::Comma)?;
        let body_start = c.toks[c.i].start;
        out.push_str(&text[header_start..body_start]);
        if role == "type" {
            out.push_str(&c.type_decl()?);
        } else {
            let f = c.formula()?;
            out.push_str(&f.render());
        }
        copied = c.toks[c.i].start;
    }
    out.push_str(&text[copied..]);
    Ok(out)
}

#[derive(Debug)]
enum Ty {
    Base(String),
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn is_base(&self) -> bool {
        matches!(self, Ty::Base(_))
    }
}

#[derive(Debug)]
enum F {
    Atom(String),
    App(String, Vec<F>),
    Not(Box<F>),
    Bin(&'static str, Box<F>, Box<F>),
    Assoc(&'static str, Vec<F>),
    Eq(Box<F>, Box<F>, bool),
    Quant(char, Vec<(String, Option<String>)>, Box<F>),
}

impl F {
    fn render(&self) -> String {
        match self {
            F::Atom(a) => a.clone(),
            F::App(h, xs) => {
                let args: Vec<String> = xs.iter().map(F::render).collect();
                format!("{h}({})", args.join(", "))
            }
            F::Not(x) => format!("~{}", x.render_operand()),
            F::Bin(op, l, r) => format!("{} {op} {}", l.render_operand(), r.render_operand()),
            F::Assoc(op, xs) => {
                let parts: Vec<String> = xs.iter().map(F::render_operand).collect();
                parts.join(&format!(" {op} "))
            }
            F::Eq(l, r, neg) => format!(
                "{} {} {}",
                l.render_operand(),
                if *neg { "!=" } else { "=" },
                r.render_operand()
            ),
            F::Quant(q, vs, b) => {
                let vars: Vec<String> = vs
                    .iter()
                    .map(|(v, s)| match s {
                        Some(s) => format!("{v}:{s}"),
                        None => v.clone(),
                    })
                    .collect();
                format!("{q}[{}]: {}", vars.join(", "), b.render_operand())
            }
        }
    }

    fn render_operand(&self) -> String {
        match self {
            F::Atom(_) | F::App(..) | F::Not(_) => self.render(),
            _ => format!("({})", self.render()),
        }
    }
}

struct Conv<'a> {
    toks: &'a [Token],
    i: usize,
    arity: HashMap<String, usize>,
}

impl Conv<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err_at(&self, k: usize, expected: &str) -> ParseError {
        let t = &self.toks[k];
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.tok.describe(),
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        self.err_at(self.i, expected)
    }

    fn err_prev(&self, expected: &str) -> ParseError {
        self.err_at(self.i.saturating_sub(1), expected)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("`{}`", t.describe())))
        }
    }

    fn word(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            Tok::Lower(s) => Ok(s),
            Tok::Quoted(s) => Ok(super::atom_name(&s, true)),
            Tok::Dollar(s) | Tok::DollarDollar(s) | Tok::Integer(s) => Ok(s),
            _ => Err(self.err_prev("a symbol")),
        }
    }

    fn ty(&mut self) -> Result<Ty, ParseError> {
        let lhs = if *self.peek() == Tok::LParen {
            self.bump();
            let t = self.ty()?;
            self.expect(Tok::RParen)?;
            t
        } else if *self.peek() == Tok::Star || *self.peek() == Tok::Plus {
            return Err(self.err("a first-order THF type"));
        } else {
            Ty::Base(self.base_sort()?)
        };
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.ty()?;
            return Ok(Ty::Arrow(Box::new(lhs), Box::new(rhs)));
        }
        if *self.peek() == Tok::Star {
            return Err(self.err("a curried THF type"));
        }
        Ok(lhs)
    }

    fn base_sort(&mut self) -> Result<String, ParseError> {
        let w = self.word()?;
        if w == "$array" && *self.peek() == Tok::LParen {
            self.bump();
            let a = self.base_sort()?;
            self.expect(Tok::Comma)?;
            let b = self.base_sort()?;
            self.expect(Tok::RParen)?;
            return Ok(format!("$array({a}, {b})"));
        }
        Ok(w)
    }

    fn type_decl(&mut self) -> Result<String, ParseError> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let name = self.word()?;
        self.expect(Tok::Colon)?;
        let start = self.i;
        let ty = self.ty()?;
        if paren {
            self.expect(Tok::RParen)?;
        }
        let mut args = Vec::new();
        let mut cur = ty;
        while let Ty::Arrow(a, b) = cur {
            match *a {
                Ty::Base(s) => args.push(s),
                Ty::Arrow(..) => {
                    return Err(self.err_at(start, "a first-order type (no function arguments)"))
                }
            }
            cur = *b;
        }
        let Ty::Base(res) = cur else { unreachable!() };
        self.arity.insert(name.clone(), args.len());
        Ok(match args.len() {
            0 => format!("{name}: {res}"),
            1 => format!("{name}: {} > {res}", args[0]),
            _ => format!("{name}: ({}) > {res}", args.join(" * ")),
        })
    }

    fn formula(&mut self) -> Result<F, ParseError> {
        let l = self.assoc("|")?;
        let op = match self.peek() {
            Tok::Implies => "=>",
            Tok::RevImplies => "<=",
            Tok::Iff => "<=>",
            Tok::Xor => "<~>",
            Tok::Nor => "~|",
            Tok::Nand => "~&",
            _ => return Ok(l),
        };
        self.bump();
        let r = self.assoc("|")?;
        Ok(F::Bin(op, Box::new(l), Box::new(r)))
    }

    fn assoc(&mut self, op: &'static str) -> Result<F, ParseError> {
        let (tok, next) = if op == "|" {
            (Tok::Or, "&")
        } else {
            (Tok::And, "")
        };
        let sub = |c: &mut Self| {
            if next.is_empty() {
                c.equation()
            } else {
                c.assoc(next)
            }
        };
        let first = sub(self)?;
        if *self.peek() != tok {
            return Ok(first);
        }
        let mut xs = vec![first];
        while *self.peek() == tok {
            self.bump();
            xs.push(sub(self)?);
        }
        Ok(F::Assoc(op, xs))
    }

    fn equation(&mut self) -> Result<F, ParseError> {
        let l = self.application()?;
        let neg = match self.peek() {
            Tok::Eq => false,
            Tok::Neq => true,
            _ => return Ok(l),
        };
        self.bump();
        let r = self.application()?;
        Ok(F::Eq(Box::new(l), Box::new(r), neg))
    }

    fn application(&mut self) -> Result<F, ParseError> {
        let head_at = self.i;
        let head = self.unary()?;
        if *self.peek() != Tok::At {
            if let F::Atom(a) = &head {
                if self.arity.get(a).is_some_and(|n| *n > 0) {
                    return Err(self.err_at(head_at, "a fully applied symbol"));
                }
            }
            return Ok(head);
        }
        let name = match head {
            F::Atom(a) if !a.starts_with(|c: char| c.is_ascii_uppercase()) => a,
            _ => return Err(self.err_at(head_at, "a symbol at the head of an application")),
        };
        let mut args = Vec::new();
        while *self.peek() == Tok::At {
            self.bump();
            if *self.peek() == Tok::Plus {
                return Err(self.err("a first-order THF construct"));
            }
            args.push(self.unary()?);
        }
        if let Some(n) = self.arity.get(&name) {
            if *n != args.len() {
                return Err(self.err_at(head_at, &format!("{n} argument(s) for `{name}`")));
            }
        }
        Ok(F::App(name, args))
    }

    fn unary(&mut self) -> Result<F, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(F::Not(Box::new(self.unary()?)))
            }
            Tok::Forall | Tok::Exists => {
                let q = if self.bump() == Tok::Forall { '!' } else { '?' };
                if *self.peek() != Tok::LBracket {
                    return Err(self.err("`[` (higher-order quantifiers are not supported)"));
                }
                self.bump();
                let mut vars = Vec::new();
                loop {
                    let v = match self.bump() {
                        Tok::Upper(v) => v,
                        _ => return Err(self.err_prev("a variable")),
                    };
                    let sort = if *self.peek() == Tok::Colon {
                        self.bump();
                        let at = self.i;
                        let t = self.ty()?;
                        if !t.is_base() {
                            return Err(self.err_at(at, "a first-order variable sort"));
                        }
                        let Ty::Base(s) = t else { unreachable!() };
                        Some(s)
                    } else {
                        None
                    };
                    vars.push((v, sort));
                    if *self.peek() != Tok::Comma {
                        break;
                    }
                    self.bump();
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::Colon)?;
                let body = self.unary()?;
                Ok(F::Quant(q, vars, Box::new(body)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Lambda => Err(self.err("a first-order THF construct (lambda abstraction found)")),
            Tok::Upper(v) => {
                self.bump();
                Ok(F::Atom(v))
            }
            Tok::Lower(_)
            | Tok::Quoted(_)
            | Tok::Dollar(_)
            | Tok::DollarDollar(_)
            | Tok::Integer(_) => Ok(F::Atom(self.word()?)),
            _ => Err(self.err("a THF formula")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squash(s: &str) -> String {
        s.chars().filter(|c| !c.is_whitespace()).collect()
    }

    #[test]
    fn curried_type_becomes_product() {
        let out = thf_to_tff("thf(a,type,f: $i > $i > $o).").unwrap();
        assert_eq!(squash(&out), squash("tff(a,type,f: ($i * $i) > $o)."));
    }

    #[test]
    fn application_chains() {
        let out =
            thf_to_tff("thf(a,type,f: $i > $i > $o).\nthf(b,axiom,![X:$i]: (f @ X @ X)).").unwrap();
        assert!(squash(&out).contains("![X:$i]:f(X,X)"), "{out}");
    }

    #[test]
    fn rejects_higher_order() {
        assert!(thf_to_tff("thf(a,axiom,(^[X:$i]: X) = c).").is_err());
        assert!(thf_to_tff("thf(a,type,g: ($i > $o) > $o).").is_err());
        assert!(thf_to_tff("thf(a,type,f: $i > $i > $o).\nthf(b,axiom,p @ (f @ c)).").is_err());
        assert!(thf_to_tff("thf(a,axiom,![F:$i > $o]: (F @ c)).").is_err());
    }

    #[test]
    fn converted_output_parses() {
        let out = thf_to_tff(
            "thf(a,type,f: $i > $i > $o).\nthf(c,type,c: $i).\nthf(b,axiom,~ (f @ c @ c) | (c = c)).",
        )
        .unwrap();
        crate::tptp::parse_problem(&out).unwrap();
    }
}
