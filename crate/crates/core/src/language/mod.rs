//! Directive sequences and the finite-length languages of the subshifts they
//! generate.
//!
//! The engine deepens `τ_[level,m)` until the length-`N` factors of the
//! recurrent-letter images agree at two consecutive depths and the shortest
//! image reaches `2N`. Tables are exact when the sequence is primitive
//! (hinted or certified from occurrence matrices) and lower approximations
//! otherwise.

mod complexity;
mod dirseq;
mod engine;
mod growth;
mod provider;
mod table;
mod windows;

pub use complexity::{
    complexity, find_low_growth_length, find_sparse_low_growth, pcom_estimate, power_set,
    right_special, ComplexityTable, SparseCertificate,
};
pub use dirseq::{DirectiveSequence, Tail};
pub use engine::{recurrent_letters, Budget, SAdicLanguage};
pub use growth::{certify_primitive, contract, growth_report, positive_block_end, ContractMode, GrowthRow};
pub use provider::{CodedLanguage, LanguageProvider, PeriodicLanguage};
pub use table::{LanguageTable, Status};

pub(crate) use provider::{table_from_texts, Memo};

use std::sync::Arc;

use crate::error::Result;
use crate::morphism::Morphism;

/// Stationary Fibonacci sequence `0 -> 01, 1 -> 0`.
pub fn fibonacci() -> DirectiveSequence {
    DirectiveSequence::stationary(Morphism::fibonacci()).expect("fibonacci")
}

/// Stationary Thue–Morse sequence `0 -> 01, 1 -> 10`.
pub fn thue_morse() -> DirectiveSequence {
    DirectiveSequence::stationary(Morphism::thue_morse()).expect("thue-morse")
}

/// Level-0 language of a directive sequence behind a shared handle.
pub fn language_of(dirseq: &DirectiveSequence, level: usize) -> Result<Arc<SAdicLanguage>> {
    SAdicLanguage::shared(dirseq.clone(), level)
}
