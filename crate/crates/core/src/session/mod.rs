//! The session language: parsing, printing and running `.slab` files.

mod ast;
mod eval;
mod lexer;
mod parser;
mod printer;
mod run;

pub use ast::*;
pub use eval::eval_expr;
pub use lexer::{tokenize, Span, Tok, Token};
pub use parser::{parse_expr, parse_session};
pub use printer::{print_expr, print_session, print_stmt};
pub use run::{run, Entry, Meta, Report, RunConfig};
