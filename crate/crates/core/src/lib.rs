//! A verification kernel for constructive theories in Euclid's style.
//!
//! Objects come into being only through construction operations
//! ([`production`]); equalities between them are inferred only by cited
//! rules ([`deduction`]). Theories are written in the `.euclid` language
//! ([`lang`]) and checked proposition by proposition ([`checker`]).

pub mod checker;
pub mod cli;
pub mod deduction;
pub mod error;
pub mod lang;
pub mod naming;
pub mod production;
pub mod schema;

pub use error::{KernelError, Result};

/// The bundled Book I corpus.
pub const BOOK1: &str = include_str!("../../../corpus/book1.euclid");
