//! Function and predicate symbols.

use std::fmt;
use std::sync::Arc;

use super::Sort;

/// Which transformation introduced a fresh symbol. The tag doubles as the
/// name prefix, so printed fresh symbols can be recognised when re-parsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Lift,
    Ite,
    Let,
    Rename,
    Skolem,
    Naming,
}

impl Origin {
    pub const ALL: [Origin; 6] = [
        Origin::Lift,
        Origin::Ite,
        Origin::Let,
        Origin::Rename,
        Origin::Skolem,
        Origin::Naming,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Origin::Lift => "bG",
            Origin::Ite => "iG",
            Origin::Let => "lG",
            Origin::Rename => "rG",
            Origin::Skolem => "sK",
            Origin::Naming => "nP",
        }
    }

    /// Recognise a fresh-symbol name `<tag><digits>` and return its origin and counter.
    pub fn parse_fresh_name(name: &str) -> Option<(Origin, usize)> {
        Origin::ALL.iter().find_map(|o| {
            let rest = name.strip_prefix(o.tag())?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            rest.parse().ok().map(|n| (*o, n))
        })
    }
}

/// Interpreted symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    True,
    False,
    Numeral(i64),
    Sum,
    Difference,
    Product,
    Uminus,
    Greater,
    GreaterEq,
    Less,
    LessEq,
    Select,
    Store,
}

impl Builtin {
    pub fn tptp_name(self) -> String {
        match self {
            Builtin::True => "$true".into(),
            Builtin::False => "$false".into(),
            Builtin::Numeral(n) => n.to_string(),
            Builtin::Sum => "$sum".into(),
            Builtin::Difference => "$difference".into(),
            Builtin::Product => "$product".into(),
            Builtin::Uminus => "$uminus".into(),
            Builtin::Greater => "$greater".into(),
            Builtin::GreaterEq => "$greatereq".into(),
            Builtin::Less => "$less".into(),
            Builtin::LessEq => "$lesseq".into(),
            Builtin::Select => "$select".into(),
            Builtin::Store => "$store".into(),
        }
    }

    /// Arithmetic builtin by its TPTP name, with its fixed type.
    pub fn arithmetic(name: &str) -> Option<(Builtin, Vec<Sort>, Sort)> {
        let int2 = || vec![Sort::Int, Sort::Int];
        Some(match name {
            "$sum" => (Builtin::Sum, int2(), Sort::Int),
            "$difference" => (Builtin::Difference, int2(), Sort::Int),
            "$product" => (Builtin::Product, int2(), Sort::Int),
            "$uminus" => (Builtin::Uminus, vec![Sort::Int], Sort::Int),
            "$greater" => (Builtin::Greater, int2(), Sort::Bool),
            "$greatereq" => (Builtin::GreaterEq, int2(), Sort::Bool),
            "$less" => (Builtin::Less, int2(), Sort::Bool),
            "$lesseq" => (Builtin::LessEq, int2(), Sort::Bool),
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    UserFunction,
    UserPredicate,
    Interpreted(Builtin),
    Fresh(Origin),
}

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct SymbolData {
    name: Arc<str>,
    args: Vec<Sort>,
    result: Sort,
    kind: SymbolKind,
}

/// A symbol with its type. Cheap to clone; equality is by content.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<SymbolData>);

impl Symbol {
    pub fn new(name: &str, args: Vec<Sort>, result: Sort, kind: SymbolKind) -> Symbol {
        Symbol(Arc::new(SymbolData {
            name: Arc::from(name),
            args,
            result,
            kind,
        }))
    }

    /// A user symbol; a `$o` result makes it a predicate.
    pub fn user(name: &str, args: Vec<Sort>, result: Sort) -> Symbol {
        let kind = if result.is_bool() {
            SymbolKind::UserPredicate
        } else {
            SymbolKind::UserFunction
        };
        Symbol::new(name, args, result, kind)
    }

    pub fn constant(name: &str, sort: Sort) -> Symbol {
        Symbol::user(name, Vec::new(), sort)
    }

    pub fn builtin(b: Builtin, args: Vec<Sort>, result: Sort) -> Symbol {
        Symbol::new(&b.tptp_name(), args, result, SymbolKind::Interpreted(b))
    }

    pub fn truth() -> Symbol {
        Symbol::builtin(Builtin::True, Vec::new(), Sort::Bool)
    }

    pub fn falsity() -> Symbol {
        Symbol::builtin(Builtin::False, Vec::new(), Sort::Bool)
    }

    pub fn numeral(n: i64) -> Symbol {
        Symbol::builtin(Builtin::Numeral(n), Vec::new(), Sort::Int)
    }

    pub fn select(array: &Sort) -> Option<Symbol> {
        let (i, v) = array.as_array()?;
        Some(Symbol::builtin(
            Builtin::Select,
            vec![array.clone(), i.clone()],
            v.clone(),
        ))
    }

    pub fn store(array: &Sort) -> Option<Symbol> {
        let (i, v) = array.as_array()?;
        Some(Symbol::builtin(
            Builtin::Store,
            vec![array.clone(), i.clone(), v.clone()],
            array.clone(),
        ))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn name_arc(&self) -> Arc<str> {
        self.0.name.clone()
    }

    pub fn args(&self) -> &[Sort] {
        &self.0.args
    }

    pub fn result(&self) -> &Sort {
        &self.0.result
    }

    pub fn kind(&self) -> SymbolKind {
        self.0.kind
    }

    pub fn arity(&self) -> usize {
        self.0.args.len()
    }

    pub fn builtin_kind(&self) -> Option<Builtin> {
        match self.0.kind {
            SymbolKind::Interpreted(b) => Some(b),
            _ => None,
        }
    }

    pub fn origin(&self) -> Option<Origin> {
        match self.0.kind {
            SymbolKind::Fresh(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_fresh(&self) -> bool {
        self.origin().is_some()
    }

    pub fn is_interpreted(&self) -> bool {
        self.builtin_kind().is_some()
    }

    pub fn is_true(&self) -> bool {
        self.builtin_kind() == Some(Builtin::True)
    }

    pub fn is_false(&self) -> bool {
        self.builtin_kind() == Some(Builtin::False)
    }

    /// Same symbol with a different name; kind is recomputed for user symbols.
    pub fn renamed(&self, name: &str, kind: SymbolKind) -> Symbol {
        Symbol::new(name, self.0.args.clone(), self.0.result.clone(), kind)
    }

    /// Same name and kind with extra trailing argument sorts.
    pub fn with_args(&self, args: Vec<Sort>) -> Symbol {
        Symbol::new(&self.0.name, args, self.0.result.clone(), self.0.kind)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_round_trip() {
        for o in Origin::ALL {
            let name = format!("{}{}", o.tag(), 17);
            assert_eq!(Origin::parse_fresh_name(&name), Some((o, 17)));
        }
        assert_eq!(Origin::parse_fresh_name("iG"), None);
        assert_eq!(Origin::parse_fresh_name("iGx1"), None);
        assert_eq!(Origin::parse_fresh_name("max"), None);
    }

    #[test]
    fn content_equality() {
        let a = Symbol::user("p", vec![Sort::Individual], Sort::Bool);
        let b = Symbol::user("p", vec![Sort::Individual], Sort::Bool);
        let c = Symbol::user("p", vec![Sort::Int], Sort::Bool);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.kind(), SymbolKind::UserPredicate);
    }

    #[test]
    fn array_symbols_typed_from_sort() {
        let arr = Sort::array(Sort::Int, Sort::Bool);
        let sel = Symbol::select(&arr).unwrap();
        assert_eq!(sel.args(), &[arr.clone(), Sort::Int]);
        assert_eq!(sel.result(), &Sort::Bool);
        let st = Symbol::store(&arr).unwrap();
        assert_eq!(st.result(), &arr);
        assert!(Symbol::select(&Sort::Int).is_none());
    }
}
