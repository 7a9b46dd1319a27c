use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    LowerApproximation,
}

impl Status {
    pub fn meet(self, other: Status) -> Status {
        if self == Status::Exact && other == Status::Exact {
            Status::Exact
        } else {
            Status::LowerApproximation
        }
    }
}

/// Legal words of one top length, sorted, with the longest common prefix of
/// each adjacent pair. Shorter lengths are read off as prefixes, which is
/// sound because subshift languages are right-extendable.
#[derive(Clone, Debug)]
pub struct LanguageTable {
    alphabet: Alphabet,
    len: usize,
    words: Vec<Symbol>,
    lcp: Vec<usize>,
    status: Status,
    level: usize,
    depth: Option<usize>,
}

impl LanguageTable {
    /// `flat` holds distinct words of length `len`, concatenated in sorted order.
    pub(crate) fn from_sorted_flat(
        alphabet: Alphabet,
        len: usize,
        flat: Vec<Symbol>,
        status: Status,
    ) -> Result<Self> {
        if len == 0 {
            return Err(Error::invalid("table length must be positive"));
        }
        if flat.is_empty() {
            return Err(Error::internal(format!("no legal words of length {len}")));
        }
        let count = flat.len() / len;
        let mut lcp = vec![0; count];
        for i in 1..count {
            let a = &flat[(i - 1) * len..i * len];
            let b = &flat[i * len..(i + 1) * len];
            let l = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            if l == len || a > b {
                return Err(Error::internal("table words are not strictly increasing"));
            }
            lcp[i] = l;
        }
        Ok(LanguageTable {
            alphabet,
            len,
            words: flat,
            lcp,
            status,
            level: 0,
            depth: None,
        })
    }

    pub fn from_words(alphabet: Alphabet, mut words: Vec<Word>, status: Status) -> Result<Self> {
        words.sort();
        words.dedup();
        let len = words.first().map(Word::len).unwrap_or(0);
        if words.iter().any(|w| w.len() != len) {
            return Err(Error::invalid("table words must share one length"));
        }
        for w in &words {
            alphabet.check_word(w)?;
        }
        let flat = words.into_iter().flat_map(Word::into_vec).collect();
        LanguageTable::from_sorted_flat(alphabet, len, flat, status)
    }

    pub(crate) fn with_origin(mut self, level: usize, depth: Option<usize>) -> Self {
        self.level = level;
        self.depth = depth;
        self
    }

    pub(crate) fn into_lower_approximation(mut self) -> Self {
        self.status = Status::LowerApproximation;
        self
    }

    pub(crate) fn flat(&self) -> &[Symbol] {
        &self.words
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.len
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Depth `m` at which the generating images stabilized, when known.
    pub fn stabilization_depth(&self) -> Option<usize> {
        self.depth
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len > self.len {
            Err(Error::invalid(format!(
                "length {len} exceeds the table length {}",
                self.len
            )))
        } else {
            Ok(())
        }
    }

    fn top(&self, i: usize) -> &[Symbol] {
        &self.words[i * self.len..(i + 1) * self.len]
    }

    fn top_count(&self) -> usize {
        self.lcp.len()
    }

    /// Number of legal words of length `len`.
    pub fn count(&self, len: usize) -> Result<usize> {
        self.check_len(len)?;
        Ok(1 + self.lcp[1..].iter().filter(|&&l| l < len).count())
    }

    /// `p(1), …, p(max_len)` in one pass.
    pub fn counts(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.len + 1];
        for &l in &self.lcp[1..] {
            hist[l] += 1;
        }
        let mut out = Vec::with_capacity(self.len);
        let mut acc = 1;
        for &h in hist.iter().take(self.len) {
            acc += h;
            out.push(acc);
        }
        out
    }

    /// Indices of the first top word for each distinct prefix of length `len`.
    fn representatives(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.top_count()).filter(move |&i| i == 0 || self.lcp[i] < len)
    }

    pub fn words(&self, len: usize) -> Result<Vec<Word>> {
        self.check_len(len)?;
        Ok(self
            .representatives(len)
            .map(|i| Word::from(&self.top(i)[..len]))
            .collect())
    }

    /// Calls `f` on each legal word of length `len` without allocating.
    pub fn for_each_word(&self, len: usize, mut f: impl FnMut(&[Symbol])) -> Result<()> {
        self.check_len(len)?;
        for i in self.representatives(len) {
            f(&self.top(i)[..len]);
        }
        Ok(())
    }

    /// Membership for words no longer than the table length.
    pub fn contains(&self, w: &[Symbol]) -> Result<bool> {
        self.check_len(w.len())?;
        let k = w.len();
        let idx = partition_point(self.top_count(), |i| self.top(i)[..k].cmp(w) == Ordering::Less);
        Ok(idx < self.top_count() && &self.top(idx)[..k] == w)
    }
}

fn partition_point(n: usize, mut pred: impl FnMut(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_counts() {
        let words = ["0010", "0100", "0101", "1001", "1010"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        let t = LanguageTable::from_words(Alphabet::binary(), words, Status::Exact).unwrap();
        assert_eq!(t.counts(), vec![2, 3, 4, 5]);
        assert_eq!(t.count(2).unwrap(), 3);
        let two: Vec<String> = t.words(2).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(two, ["00", "01", "10"]);
        assert!(t.contains(&[0, 1, 0]).unwrap());
        assert!(!t.contains(&[1, 1]).unwrap());
        assert!(t.contains(&[1, 0, 1, 0]).unwrap());
        assert!(t.count(5).is_err());
    }
}
