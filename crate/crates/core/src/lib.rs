//! Words, substitutions and S-adic subshift languages.
//!
//! The crate is organized bottom-up: [`words`] holds periodicity kernels,
//! [`morphism`] substitutions, [`language`] directive sequences and the
//! finite-length language engine, [`coding`] factorizations, recognizability
//! and return-word codings, and [`constructions`] the explicit families and
//! bound checkers built on top of them.

pub mod coding;
pub mod constructions;
pub mod error;
pub mod format;
pub mod language;
pub mod morphism;
pub mod report;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
pub use language::{DirectiveSequence, LanguageProvider, LanguageTable, Status, Tail};
pub use morphism::Morphism;
pub use report::Report;
pub use words::{Alphabet, PowerWindow, Symbol, Word};
