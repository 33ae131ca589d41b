//! Parsing, translation and proving for FOOL, first-order logic extended
//! with a first-class boolean sort, `$ite`, `$let` and polymorphic arrays.

pub mod arrays;
pub mod cnf;
pub mod logic;
pub mod oracle;
pub mod program;
pub mod prover;
pub mod tptp;
pub mod translate;
