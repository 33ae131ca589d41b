//! Sorts of the many-sorted language.

use std::fmt;
use std::sync::Arc;

/// A sort. `Bool` is the interpreted two-element sort, `Individual` is the
/// default TPTP sort `$i` and `Int` the interpreted integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Bool,
    Individual,
    Int,
    Named(Arc<str>),
    Array(Box<Sort>, Box<Sort>),
    Tuple(Vec<Sort>),
}

impl Sort {
    pub fn named(name: &str) -> Sort {
        Sort::Named(Arc::from(name))
    }

    pub fn array(index: Sort, value: Sort) -> Sort {
        Sort::Array(Box::new(index), Box::new(value))
    }

    pub fn is_bool(&self) -> bool {
        matches!(self, Sort::Bool)
    }

    /// Index and value sort of an array sort.
    pub fn as_array(&self) -> Option<(&Sort, &Sort)> {
        match self {
            Sort::Array(i, v) => Some((i, v)),
            _ => None,
        }
    }

    /// True when the sort carries no interpretation (`$i` or a declared sort).
    pub fn is_uninterpreted(&self) -> bool {
        matches!(self, Sort::Individual | Sort::Named(_))
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => f.write_str("$o"),
            Sort::Individual => f.write_str("$i"),
            Sort::Int => f.write_str("$int"),
            Sort::Named(n) => f.write_str(n),
            Sort::Array(i, v) => write!(f, "$array({i}, {v})"),
            Sort::Tuple(ms) => {
                f.write_str("[")?;
                for (k, m) in ms.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_tptp_names() {
        let s = Sort::array(Sort::Int, Sort::Bool);
        assert_eq!(s.to_string(), "$array($int, $o)");
        assert_eq!(Sort::named("person").to_string(), "person");
    }

    #[test]
    fn array_accessors() {
        let s = Sort::array(Sort::Int, Sort::Individual);
        assert_eq!(s.as_array(), Some((&Sort::Int, &Sort::Individual)));
        assert!(Sort::Individual.is_uninterpreted());
        assert!(!Sort::Int.is_uninterpreted());
    }
}
