//! Sorts, symbols, expressions, substitution and alpha-equivalence.

mod alpha;
mod expr;
mod problem;
mod signature;
mod sort;
mod subst;
mod symbol;

pub use alpha::{alpha_equal, AlphaEq};
pub use expr::{sort_of, Binding, Connective, Expr, Quantifier, Var};
pub use problem::{Problem, Role, TypeDecl, Unit, UnitContent};
pub use signature::Signature;
pub use sort::Sort;
pub use subst::{fresh_var_name, substitute, Subst};
pub use symbol::{Builtin, Origin, Symbol, SymbolKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LogicError {
    #[error("sort mismatch at {path}: expected {expected}, found {found}")]
    SortMismatch {
        path: String,
        expected: Sort,
        found: Sort,
    },
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("`{symbol}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
}
