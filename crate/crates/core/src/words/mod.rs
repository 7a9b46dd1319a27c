//! Finite words over small alphabets and the periodicity toolkit built on them.
//!
//! Symbols are small integer ids. An [`Alphabet`] fixes an ordered list of ids
//! (with optional display glyphs); a [`Word`] is a plain symbol sequence and is
//! validated against an alphabet only at API boundaries that need it.

mod lyndon;
mod periodicity;

use std::fmt;
use std::ops::{Index, Range};

use crate::error::{Error, Result};

pub use lyndon::{least_rotation, lyndon_words, primitive_representatives};
pub use periodicity::{
    aperiodicity_witness, are_conjugate, failure_function, fine_wilf, global_period_from_local,
    is_periodic_by, is_primitive, occurs_in_power, overlap_synchronize, period, power_window_sync,
    root, shift_fixes_power, LocalPeriodCover, OrbitWitness,
};

pub type Symbol = u8;

/// Default cap on the number of symbols a [`PowerWindow`] may materialize.
pub const DEFAULT_WINDOW_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    glyphs: Option<Vec<String>>,
    lookup: Vec<Option<u8>>,
}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        let mut lookup = vec![None; 256];
        for (pos, &s) in symbols.iter().enumerate() {
            if lookup[s as usize].is_some() {
                return Err(Error::invalid(format!("duplicate symbol {s} in alphabet")));
            }
            lookup[s as usize] = Some(pos as u8);
        }
        Ok(Alphabet {
            symbols,
            glyphs: None,
            lookup,
        })
    }

    /// The alphabet `{0, 1, ..., size - 1}`.
    pub fn range(size: usize) -> Result<Self> {
        if size == 0 || size > 256 {
            return Err(Error::invalid(format!("alphabet size {size} out of range 1..=256")));
        }
        Alphabet::new((0..size).map(|s| s as Symbol).collect())
    }

    pub fn binary() -> Self {
        Alphabet::range(2).expect("binary alphabet")
    }

    pub fn with_glyphs(mut self, glyphs: Vec<String>) -> Result<Self> {
        if glyphs.len() != self.symbols.len() {
            return Err(Error::invalid("glyph count does not match alphabet size"));
        }
        self.glyphs = Some(glyphs);
        Ok(self)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn glyphs(&self) -> Option<&[String]> {
        self.glyphs.as_deref()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.lookup[s as usize].is_some()
    }

    /// Position of `s` in the alphabet order.
    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        self.lookup[s as usize].map(usize::from)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|&&s| !self.contains(s)) {
            Some(s) => Err(Error::invalid(format!(
                "symbol {s} of word {w} is not in the alphabet"
            ))),
            None => Ok(()),
        }
    }

    /// Render a word with this alphabet's glyphs (falls back to ids).
    pub fn render(&self, w: &Word) -> String {
        match &self.glyphs {
            None => w.to_string(),
            Some(glyphs) => {
                let parts: Vec<&str> = w
                    .iter()
                    .map(|&s| glyphs[self.index_of(s).expect("symbol in alphabet")].as_str())
                    .collect();
                if parts.iter().all(|g| g.chars().count() == 1) {
                    parts.concat()
                } else {
                    parts.join(" ")
                }
            }
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses `"0110"` digit-wise, `"abba"` letter-wise (`a` = 0), or a
    /// whitespace-separated list of ids such as `"10 11 3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.chars().all(|c| c.is_ascii_digit()) {
            return Ok(Word(s.bytes().map(|b| b - b'0').collect()));
        }
        if s.chars().all(|c| c.is_ascii_lowercase()) {
            return Ok(Word(s.bytes().map(|b| b - b'a').collect()));
        }
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<Symbol>()
                    .map_err(|_| Error::invalid(format!("cannot parse symbol {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn from_letters(s: &str) -> Self {
        Word(s.bytes().map(|b| b - b'a').collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn factor(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.factor(0..len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.factor(self.len() - len..self.len())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self^k`; `k = 0` gives the empty word.
    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// First position at which `pattern` occurs in `self`.
    pub fn find(&self, pattern: &[Symbol]) -> Option<usize> {
        find_slice(&self.0, pattern)
    }

    pub fn contains_factor(&self, pattern: &[Symbol]) -> bool {
        self.find(pattern).is_some()
    }

    /// Symbols that occur in the word, sorted and deduplicated.
    pub fn letters(&self) -> Vec<Symbol> {
        let mut seen = [false; 256];
        for &s in &self.0 {
            seen[s as usize] = true;
        }
        (0..=255u8).filter(|&s| seen[s as usize]).collect()
    }
}

pub(crate) fn find_slice(hay: &[Symbol], pattern: &[Symbol]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    if pattern.len() > hay.len() {
        return None;
    }
    hay.windows(pattern.len()).position(|win| win == pattern)
}

impl Index<usize> for Word {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

/// The factor `t^Z_[lo, hi)` of the bi-infinite periodic point `...ttt.ttt...`
/// whose coordinate 0 carries `t[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerWindow {
    base: Word,
    lo: i64,
    hi: i64,
}

impl PowerWindow {
    pub fn new(base: Word, lo: i64, hi: i64) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::invalid("power window base must be nonempty"));
        }
        if lo > hi {
            return Err(Error::invalid(format!("power window bounds {lo} > {hi}")));
        }
        Ok(PowerWindow { base, lo, hi })
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn symbol_at(&self, i: i64) -> Symbol {
        let n = self.base.len() as i64;
        self.base[i.rem_euclid(n) as usize]
    }

    pub fn materialize(&self) -> Result<Word> {
        self.materialize_with_limit(DEFAULT_WINDOW_LIMIT)
    }

    pub fn materialize_with_limit(&self, limit: usize) -> Result<Word> {
        if self.len() > limit {
            return Err(Error::resource(format!(
                "power window of length {} exceeds the limit {limit}",
                self.len()
            )));
        }
        Ok((self.lo..self.hi).map(|i| self.symbol_at(i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(vec![]).is_err());
        assert!(Alphabet::new(vec![0, 1, 0]).is_err());
        let a = Alphabet::new(vec![3, 1]).unwrap();
        assert_eq!(a.index_of(1), Some(1));
        assert!(!a.contains(0));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Word::parse("0110").unwrap(), Word::new(vec![0, 1, 1, 0]));
        assert_eq!(Word::parse("abba").unwrap(), Word::new(vec![0, 1, 1, 0]));
        assert_eq!(Word::parse("10 11 3").unwrap(), Word::new(vec![10, 11, 3]));
        assert_eq!(Word::parse("").unwrap(), Word::empty());
        assert_eq!(Word::new(vec![10, 2]).to_string(), "10 2");
    }

    #[test]
    fn power_window_symbols() {
        let w = PowerWindow::new(Word::from_letters("ab"), -3, 2).unwrap();
        assert_eq!(w.materialize().unwrap(), Word::from_letters("babab"));
        assert!(PowerWindow::new(Word::empty(), 0, 1).is_err());
        let big = PowerWindow::new(Word::from_letters("a"), 0, 100).unwrap();
        assert!(matches!(
            big.materialize_with_limit(10),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn render_with_glyphs() {
        let a = Alphabet::binary()
            .with_glyphs(vec!["x".into(), "y".into()])
            .unwrap();
        assert_eq!(a.render(&Word::parse("0110").unwrap()), "xyyx");
    }
}
