//! TPTP input and output.

mod lexer;
mod parser;
mod printer;
pub mod thf;

pub use parser::{
    declared_symbols, parse_file, parse_into, parse_problem, parse_problem_with, Dialect,
    ParseOptions,
};
pub use printer::{
    atom_name, print_expr, print_problem, print_unit, symbol_name, var_name, PrintOptions,
};

use crate::logic::LogicError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: expected {expected}, found `{found}`")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: {source}")]
    Logic {
        line: usize,
        col: usize,
        source: LogicError,
    },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl ParseError {
    /// The sort or declaration error behind this parse error, if any.
    pub fn logic(&self) -> Option<&LogicError> {
        match self {
            ParseError::Logic { source, .. } => Some(source),
            _ => None,
        }
    }
}
