use super::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Lyndon words over `alphabet` (in its order) of length at most `maxlen`,
/// in lexicographic order. Duval's successor iteration.
pub fn lyndon_words(alphabet: &Alphabet, maxlen: usize) -> Vec<Word> {
    let syms = alphabet.symbols();
    let k = syms.len();
    let mut out = Vec::new();
    if maxlen == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.iter().map(|&i| syms[i]).collect());
        let m = w.len();
        while w.len() < maxlen {
            let next = w[w.len() - m];
            w.push(next);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// One representative per rotation class of primitive words of length
/// `1..=maxlen`: the least rotation. Sorted by length, then lexicographically
/// with respect to the alphabet order.
pub fn primitive_representatives(alphabet: &Alphabet, maxlen: usize) -> Result<Vec<Word>> {
    if maxlen == 0 {
        return Err(Error::invalid("maxlen must be at least 1"));
    }
    let mut words = lyndon_words(alphabet, maxlen);
    // lyndon_words yields alphabet-order lex; a stable sort by length keeps it.
    words.sort_by_key(Word::len);
    Ok(words)
}

/// Least rotation of `w` under the natural symbol order (two-pointer scan).
pub fn least_rotation(w: &Word) -> Word {
    let s: &[Symbol] = w.as_slice();
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let start = i.min(j);
    (0..n).map(|t| s[(start + t) % n]).collect()
}
