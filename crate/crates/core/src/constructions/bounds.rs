use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::language::LanguageProvider;
use crate::words::{root, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCoverBound {
    /// `|W|·#(root W)²`
    pub bound: u128,
    /// `p(⟨W⟩)`
    pub actual: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceBound {
    pub ell: usize,
    /// `256·#A·#(root W)²·|W|²`; the bound itself is this over `ℓ²`.
    pub numerator: u128,
    /// `p(ℓ+1) - p(ℓ)`
    pub actual: i64,
    pub pass: bool,
}

impl DifferenceBound {
    pub fn bound(&self) -> f64 {
        self.numerator as f64 / (self.ell * self.ell) as f64
    }
}

struct Cover {
    longest: usize,
    shortest: usize,
    roots: usize,
}

/// Checks that every legal word of length `2|W|` reads as a suffix of a
/// block, whole blocks, then a prefix of a block, which is what the
/// inclusion `X ⊆ ∪ S^k W^Z` means at that window size.
fn certify_cover(lang: &dyn LanguageProvider, blocks: &[Word]) -> Result<Cover> {
    if blocks.is_empty() || blocks.iter().any(Word::is_empty) {
        return Err(Error::invalid("block set must be nonempty with nonempty words"));
    }
    let longest = blocks.iter().map(Word::len).max().unwrap();
    let shortest = blocks.iter().map(Word::len).min().unwrap();
    let len = 2 * longest;
    let mut bad = None;
    lang.table(len)?.for_each_word(len, |x| {
        if bad.is_none() && !parses(x, blocks) {
            bad = Some(Word::from(x));
        }
    })?;
    if let Some(x) = bad {
        return Err(Error::invalid(format!("legal word {x} is not covered by the blocks")));
    }
    let roots: BTreeSet<Word> = blocks.iter().map(root).collect::<Result<_>>()?;
    Ok(Cover {
        longest,
        shortest,
        roots: roots.len(),
    })
}

fn parses(x: &[u8], blocks: &[Word]) -> bool {
    let n = x.len();
    let mut boundary = vec![false; n + 1];
    for (i, slot) in boundary.iter_mut().enumerate() {
        *slot = blocks.iter().any(|b| b.len() > i && b.as_slice().ends_with(&x[..i]));
    }
    for i in 0..=n {
        if !boundary[i] {
            continue;
        }
        let rest = &x[i..];
        if blocks.iter().any(|b| b.len() >= rest.len() && b.as_slice().starts_with(rest)) {
            return true;
        }
        for b in blocks {
            if rest.starts_with(b.as_slice()) {
                boundary[i + b.len()] = true;
            }
        }
    }
    false
}

/// `p(⟨W⟩) ≤ |W|·#(root W)²` for a block set covering the subshift.
pub fn power_cover_px_bound(lang: &dyn LanguageProvider, blocks: &[Word]) -> Result<PowerCoverBound> {
    let cover = certify_cover(lang, blocks)?;
    let bound = cover.longest as u128 * (cover.roots as u128).pow(2);
    let actual = lang.count(cover.shortest)?;
    Ok(PowerCoverBound {
        bound,
        actual,
        pass: actual as u128 <= bound,
    })
}

/// `p(ℓ+1) - p(ℓ) ≤ 256·#A·#(root W)²·|W|²/ℓ²` for `ℓ < ⟨W⟩`.
pub fn first_difference_bound(lang: &dyn LanguageProvider, blocks: &[Word], ell: usize) -> Result<DifferenceBound> {
    let cover = certify_cover(lang, blocks)?;
    if ell == 0 || ell >= cover.shortest {
        return Err(Error::invalid(format!(
            "ℓ = {ell} must lie in [1, ⟨W⟩ = {})",
            cover.shortest
        )));
    }
    let numerator = 256
        * lang.alphabet().len() as u128
        * (cover.roots as u128).pow(2)
        * (cover.longest as u128).pow(2);
    let actual = lang.count(ell + 1)? as i64 - lang.count(ell)? as i64;
    let pass = actual <= 0 || (actual as u128) * (ell as u128).pow(2) <= numerator;
    Ok(DifferenceBound {
        ell,
        numerator,
        actual,
        pass,
    })
}
