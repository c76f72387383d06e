//! The session language: `space`, `orient`, `chain` and `relative`
//! definitions followed by commands, one statement per line.

mod lexer;
mod parser;
mod runner;

pub use lexer::{lex, Span, Tok, Token};
pub use parser::{parse, ChainExpr, Command, Diagnostic, Expr, ExprKind, FormExpr, Session, Severity, Stmt, StmtKind, Variety};
pub use runner::{check, parse_checked, property, resolve, run, run_source, Format, Options, Transcript, PROPERTIES};
