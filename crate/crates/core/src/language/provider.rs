use std::sync::{Arc, Mutex};

use super::table::{LanguageTable, Status};
use super::windows::distinct_windows;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::words::{Alphabet, Symbol, Word};

/// Anything that can list the legal words of a subshift up to a length.
pub trait LanguageProvider: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    /// A table covering at least lengths `1..=len`.
    fn table(&self, len: usize) -> Result<Arc<LanguageTable>>;

    fn words(&self, len: usize) -> Result<Vec<Word>> {
        self.table(len.max(1))?.words(len)
    }

    fn count(&self, len: usize) -> Result<usize> {
        self.table(len.max(1))?.count(len)
    }

    fn contains(&self, w: &[Symbol]) -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        self.table(w.len())?.contains(w)
    }
}

/// Single-slot cache that grows geometrically so repeated queries at
/// increasing lengths rebuild only logarithmically often.
#[derive(Default)]
pub(crate) struct Memo {
    slot: Mutex<Option<Arc<LanguageTable>>>,
}

impl Memo {
    pub(crate) fn get(
        &self,
        len: usize,
        build: impl Fn(usize) -> Result<LanguageTable>,
    ) -> Result<Arc<LanguageTable>> {
        if len == 0 {
            return Err(Error::invalid("length must be at least 1"));
        }
        let mut slot = self.slot.lock().expect("language cache poisoned");
        if let Some(t) = slot.as_ref() {
            if t.max_len() >= len {
                return Ok(Arc::clone(t));
            }
        }
        let cached = slot.as_ref().map_or(0, |t| t.max_len());
        let target = len.max(2 * cached);
        let table = match build(target) {
            Err(Error::Resource(_)) if target > len => build(len)?,
            other => other?,
        };
        let table = Arc::new(table);
        *slot = Some(Arc::clone(&table));
        Ok(table)
    }
}

/// Sorted distinct length-`len` factors of `texts` packed into a table.
pub(crate) fn table_from_texts(
    alphabet: &Alphabet,
    texts: &[&[Symbol]],
    len: usize,
    status: Status,
) -> Result<LanguageTable> {
    let reps = distinct_windows(texts, len);
    let mut flat = Vec::with_capacity(reps.len() * len);
    for (ti, off) in reps {
        flat.extend_from_slice(&texts[ti][off..off + len]);
    }
    LanguageTable::from_sorted_flat(alphabet.clone(), len, flat, status)
}

/// Language of the periodic orbit `t^Z`.
pub struct PeriodicLanguage {
    base: Word,
    alphabet: Alphabet,
    memo: Memo,
}

impl PeriodicLanguage {
    pub fn new(base: Word, alphabet: Alphabet) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::invalid("periodic base must be nonempty"));
        }
        alphabet.check_word(&base)?;
        Ok(PeriodicLanguage {
            base,
            alphabet,
            memo: Memo::default(),
        })
    }

    pub fn base(&self) -> &Word {
        &self.base
    }
}

impl LanguageProvider for PeriodicLanguage {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn table(&self, len: usize) -> Result<Arc<LanguageTable>> {
        self.memo.get(len, |len| {
            let reps = len.div_ceil(self.base.len()) + 1;
            let text = self.base.pow(reps);
            table_from_texts(&self.alphabet, &[text.as_slice()], len, Status::Exact)
        })
    }
}

/// Language of the subshift generated by `σ(Z)` and its shifts.
pub struct CodedLanguage {
    upper: Arc<dyn LanguageProvider>,
    sigma: Morphism,
    memo: Memo,
}

impl CodedLanguage {
    pub fn new(upper: Arc<dyn LanguageProvider>, sigma: Morphism) -> Result<Self> {
        if upper.alphabet() != sigma.source() {
            return Err(Error::invalid(
                "morphism source differs from the upper language alphabet",
            ));
        }
        Ok(CodedLanguage {
            upper,
            sigma,
            memo: Memo::default(),
        })
    }

    pub fn sigma(&self) -> &Morphism {
        &self.sigma
    }

    pub fn upper(&self) -> &Arc<dyn LanguageProvider> {
        &self.upper
    }

    /// Upper words long enough that every length-`len` factor of `σ(Z)` lies
    /// inside the image of one of them.
    pub fn upper_span(&self, len: usize) -> usize {
        2 + (len - 1).div_ceil(self.sigma.min_len())
    }
}

impl LanguageProvider for CodedLanguage {
    fn alphabet(&self) -> &Alphabet {
        self.sigma.target()
    }

    fn table(&self, len: usize) -> Result<Arc<LanguageTable>> {
        self.memo.get(len, |len| {
            let q = self.upper_span(len);
            let upper = self.upper.table(q)?;
            let mut images = Vec::new();
            upper.for_each_word(q, |v| {
                let mut img = Vec::new();
                for &a in v {
                    img.extend_from_slice(self.sigma.image(a).expect("upper word").as_slice());
                }
                images.push(img);
            })?;
            let refs: Vec<&[Symbol]> = images.iter().map(Vec::as_slice).collect();
            table_from_texts(self.sigma.target(), &refs, len, upper.status())
        })
    }
}
