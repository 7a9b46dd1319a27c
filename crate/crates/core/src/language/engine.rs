use std::sync::Arc;

use super::dirseq::{DirectiveSequence, Tail};
use super::growth::certify_primitive;
use super::provider::{table_from_texts, LanguageProvider, Memo};
use super::table::{LanguageTable, Status};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol};

/// Limits on how far the engine may deepen before giving up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_depth: usize,
    pub max_symbols: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_depth: 64,
            max_symbols: 10_000_000,
        }
    }
}

/// Letters of `A_m` that occur in `τ_[m,m')(b)` for arbitrarily deep `m'`,
/// as alphabet positions, for every `m` in `0..count`.
pub fn recurrent_letters(dirseq: &DirectiveSequence, count: usize) -> Vec<Vec<bool>> {
    let letters_of = |m: usize, deeper: &[bool]| -> Vec<bool> {
        let tau = dirseq.level(m).expect("level in range");
        let mut out = vec![false; tau.target().len()];
        for (b, img) in tau.images().iter().enumerate() {
            if deeper[b] {
                for &s in img {
                    out[tau.target().index_of(s).expect("image letter")] = true;
                }
            }
        }
        out
    };

    let (stop, mut deepest) = match dirseq.tail() {
        Tail::Finite => {
            let len = dirseq.levels().len();
            (len, vec![true; dirseq.alphabet(len).expect("last alphabet").len()])
        }
        Tail::RepeatLast(p) => {
            // Greatest fixed point S_m = letters(τ_m(S_{m+1})) on the cycle.
            let t0 = dirseq.tail_start().expect("periodic");
            let mut cycle: Vec<Vec<bool>> = (0..p)
                .map(|r| vec![true; dirseq.alphabet(t0 + r).expect("alphabet").len()])
                .collect();
            loop {
                let mut changed = false;
                for r in (0..p).rev() {
                    let next = letters_of(t0 + r, &cycle[(r + 1) % p]);
                    if next != cycle[r] {
                        cycle[r] = next;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            let far = count.max(t0);
            let start = far + (p - (far - t0) % p) % p;
            (start, cycle[(start - t0) % p].clone())
        }
    };

    let mut out = vec![Vec::new(); count];
    if stop < count {
        out[stop] = deepest.clone();
    }
    let mut m = stop;
    while m > 0 {
        m -= 1;
        deepest = letters_of(m, &deepest);
        if m < count {
            out[m] = deepest.clone();
        }
    }
    out
}

/// Finite-length languages of `X^(level)` for a directive sequence.
pub struct SAdicLanguage {
    dirseq: DirectiveSequence,
    level: usize,
    budget: Budget,
    alphabet: Alphabet,
    status: Status,
    memo: Memo,
}

impl SAdicLanguage {
    pub fn new(dirseq: DirectiveSequence, level: usize) -> Result<Self> {
        let alphabet = dirseq
            .alphabet(level)
            .ok_or_else(|| Error::invalid(format!("level {level} is beyond the sequence")))?
            .clone();
        let status = match dirseq.tail() {
            Tail::Finite => Status::LowerApproximation,
            Tail::RepeatLast(_) if dirseq.primitive_hint() || certify_primitive(&dirseq) => {
                Status::Exact
            }
            Tail::RepeatLast(_) => Status::LowerApproximation,
        };
        Ok(SAdicLanguage {
            dirseq,
            level,
            budget: Budget::default(),
            alphabet,
            status,
            memo: Memo::default(),
        })
    }

    pub fn shared(dirseq: DirectiveSequence, level: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(SAdicLanguage::new(dirseq, level)?))
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn dirseq(&self) -> &DirectiveSequence {
        &self.dirseq
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn status(&self) -> Status {
        self.status
    }

    fn build(&self, len: usize) -> Result<LanguageTable> {
        let level = self.level;
        let last = level + self.budget.max_depth;
        let recurrent = recurrent_letters(&self.dirseq, last + 2);
        let finite_end = self.dirseq.finite_len();

        // Images τ_[level,m)(a) for recurrent a, and lengths for all letters.
        let mut images: Vec<Option<Vec<Symbol>>> = self
            .alphabet
            .symbols()
            .iter()
            .enumerate()
            .map(|(i, &s)| recurrent[level][i].then(|| vec![s]))
            .collect();
        let mut lengths: Vec<u128> = vec![1; self.alphabet.len()];
        let mut previous: Option<LanguageTable> = None;

        for m in level..=last {
            let texts: Vec<&[Symbol]> = images.iter().flatten().map(Vec::as_slice).collect();
            let current = if texts.iter().any(|t| t.len() >= len) {
                Some(table_from_texts(&self.alphabet, &texts, len, self.status)?)
            } else {
                None
            };
            let shortest = lengths.iter().copied().min().unwrap_or(0);
            if let (Some(prev), Some(cur)) = (&previous, &current) {
                if shortest >= 2 * len as u128 && same_words(prev, cur) {
                    return Ok(current.unwrap().with_origin(level, Some(m)));
                }
            }
            if Some(m) == finite_end {
                return match current {
                    Some(t) => Ok(t
                        .with_origin(level, Some(m))
                        .into_lower_approximation()),
                    None => Err(Error::resource(format!(
                        "finite sequence ends at level {m} before words of length {len} appear"
                    ))),
                };
            }
            previous = current;
            if m == last {
                break;
            }

            let tau = self.dirseq.level(m).expect("level");
            let mut next_images = Vec::with_capacity(tau.source().len());
            let mut next_lengths = Vec::with_capacity(tau.source().len());
            let mut total = 0usize;
            for (b, img) in tau.images().iter().enumerate() {
                let l = img.iter().fold(0u128, |acc, &s| {
                    acc.saturating_add(lengths[self.pos(tau.target(), s)])
                });
                next_lengths.push(l);
                if recurrent[m + 1][b] {
                    let mut out = Vec::new();
                    for &s in img {
                        let src = images[self.pos(tau.target(), s)]
                            .as_ref()
                            .expect("letters of recurrent images are recurrent");
                        total += src.len();
                        if total > self.budget.max_symbols {
                            return Err(Error::resource(format!(
                                "expanding level {} exceeds {} symbols while seeking words of length {len}",
                                m + 1,
                                self.budget.max_symbols
                            )));
                        }
                        out.extend_from_slice(src);
                    }
                    next_images.push(Some(out));
                } else {
                    next_images.push(None);
                }
            }
            images = next_images;
            lengths = next_lengths;
        }
        Err(Error::resource(format!(
            "no stabilization for length {len} within {} levels below level {level} (shortest image {})",
            self.budget.max_depth,
            lengths.iter().min().copied().unwrap_or(0)
        )))
    }

    fn pos(&self, alphabet: &Alphabet, s: Symbol) -> usize {
        alphabet.index_of(s).expect("symbol in alphabet")
    }
}

fn same_words(a: &LanguageTable, b: &LanguageTable) -> bool {
    a.max_len() == b.max_len() && a.flat() == b.flat()
}

impl LanguageProvider for SAdicLanguage {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn table(&self, len: usize) -> Result<Arc<LanguageTable>> {
        self.memo.get(len, |len| self.build(len))
    }
}
