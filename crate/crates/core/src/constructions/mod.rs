//! Explicit constructions and finite bound checkers: the gap scale, special
//! decompositions, the two-letter family with linear complexity, the
//! interval-counting samples, covers of a word by short pieces, complexity
//! bounds from power covers and occurrence synchronization.

mod bounds;
mod counting;
mod cover;
mod decompose;
mod gap;
mod negative;
mod sync;

pub use bounds::{first_difference_bound, power_cover_px_bound, DifferenceBound, PowerCoverBound};
pub use counting::{enumerate_p, is_in_k, sample_p_minus_k, P_BUDGET};
pub use cover::{cfpz_cover, CoverSet};
pub use decompose::{decompose_special, Decomposition, DecompositionTag};
pub use gap::{gap_epsilon, DEFAULT_GAP_SCALE};
pub use negative::{negative_dirseq, negative_family_verify, negative_tau, NegativeFamilyParams};
pub use sync::synchronize_occurrences;
