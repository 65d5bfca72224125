//! PCF with a single base type: parsing, typing and denotation.

mod denote;
mod syntax;
mod types;

pub use denote::{arena_of, denote, denote_source};
pub use syntax::{parse, Program, Span, Term, TermKind, Type};
pub use types::typecheck;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcfError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("type error at {line}:{col}: {msg}")]
    Type { line: usize, col: usize, msg: String },
}

impl PcfError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            PcfError::Syntax { line, col, .. } | PcfError::Type { line, col, .. } => (*line, *col),
        }
    }
}
