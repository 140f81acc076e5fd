//! The `.euclid` theory language: tokens, syntax trees, parser, printer.

pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use ast::TheoryAst;
pub use diag::{Diagnostic, DiagnosticKind, Span};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_theory};
pub use printer::print_theory;
