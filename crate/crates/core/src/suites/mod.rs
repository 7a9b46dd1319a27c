//! Verification suites: exhaustive small-scale sweeps and explicit
//! instances, each checked against reference implementations written from
//! the definitions.

mod coding;
mod constructions;
mod language;
mod morphisms;
mod oracles;
mod words;

pub use coding::{composition_checks, return_word_coding, special_codings};
pub use constructions::{cfpz_random, complexity_bounds, counting_instances, negative_family};
pub use language::{bounded_differences, contraction, right_special_bounds, stationary_languages};
pub use morphisms::morphism_properties;
pub use words::{combinatorial_lemmas, conjugacy_sweep, fine_wilf_sweep, root_period_sweep};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Words,
    Morphisms,
    Language,
    Coding,
    Constructions,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Words,
        Suite::Morphisms,
        Suite::Language,
        Suite::Coding,
        Suite::Constructions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Words => "words",
            Suite::Morphisms => "morphisms",
            Suite::Language => "language",
            Suite::Coding => "coding",
            Suite::Constructions => "constructions",
        }
    }

    /// Runs every check of the suite; randomized parts draw from `seed`.
    pub fn run(self, seed: u64) -> Result<Report> {
        let parts = match self {
            Suite::Words => vec![fine_wilf_sweep()?, root_period_sweep()?, conjugacy_sweep()?, combinatorial_lemmas()?],
            Suite::Morphisms => vec![morphism_properties(seed, 1000)?],
            Suite::Language => vec![
                stationary_languages(40)?,
                right_special_bounds(30)?,
                bounded_differences(40)?,
                contraction(24)?,
            ],
            Suite::Coding => vec![return_word_coding()?, composition_checks()?, special_codings()?],
            Suite::Constructions => vec![
                counting_instances()?,
                cfpz_random(seed, 20)?,
                complexity_bounds()?,
                negative_family(1, 1, 512)?,
            ],
        };
        let mut report = Report::new(self.name());
        for part in parts {
            report.merge(part);
        }
        Ok(report)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}
