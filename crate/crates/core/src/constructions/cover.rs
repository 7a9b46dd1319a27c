use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// A set of factors of `w`, stored as deduplicated spans of `w`.
#[derive(Clone, Debug)]
pub struct CoverSet {
    pub w: Word,
    pub ell: usize,
    /// `(start, len)` of one occurrence per distinct word.
    pub spans: Vec<(usize, usize)>,
    /// Number of dyadic levels `i` with `2^i ℓ < |w|`.
    pub levels: usize,
}

impl CoverSet {
    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn words(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self
            .spans
            .iter()
            .map(|&(s, l)| self.w.factor(s..s + l))
            .collect();
        out.sort();
        out
    }
}

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

struct Hasher {
    prefix: Vec<u64>,
    powers: Vec<u64>,
}

impl Hasher {
    fn new(x: &[Symbol]) -> Self {
        let mut prefix = vec![0; x.len() + 1];
        let mut powers = vec![1; x.len() + 1];
        for (i, &s) in x.iter().enumerate() {
            prefix[i + 1] = (mul_mod(prefix[i], BASE) + s as u64 + 1) % MODULUS;
            powers[i + 1] = mul_mod(powers[i], BASE);
        }
        Hasher { prefix, powers }
    }

    fn hash(&self, start: usize, len: usize) -> u64 {
        let hi = self.prefix[start + len];
        let lo = mul_mod(self.prefix[start], self.powers[len]);
        (hi + MODULUS - lo) % MODULUS
    }
}

/// Distinct factors of `x`, keyed by length and hash with byte comparison on hit.
struct SpanSet<'a> {
    x: &'a [Symbol],
    hasher: Hasher,
    buckets: HashMap<(usize, u64), Vec<usize>>,
    spans: Vec<(usize, usize)>,
}

impl<'a> SpanSet<'a> {
    fn new(x: &'a [Symbol]) -> Self {
        SpanSet {
            x,
            hasher: Hasher::new(x),
            buckets: HashMap::new(),
            spans: Vec::new(),
        }
    }

    fn find(&self, start: usize, len: usize) -> Option<usize> {
        let key = (len, self.hasher.hash(start, len));
        let piece = &self.x[start..start + len];
        self.buckets.get(&key)?.iter().copied().find(|&id| {
            let (s, l) = self.spans[id];
            &self.x[s..s + l] == piece
        })
    }

    fn insert(&mut self, start: usize, len: usize) {
        if self.find(start, len).is_none() {
            let key = (len, self.hasher.hash(start, len));
            self.buckets.entry(key).or_default().push(self.spans.len());
            self.spans.push((start, len));
        }
    }
}

/// Prefixes and suffixes of length at least `ℓ` of the pieces cut from `w`
/// at `⌊(8k + j)|w| / 2^(i+3)⌋`, for every level `i` with `2^i ℓ < |w|` and
/// phase `j < 8`. Every factor of length at least `64ℓ` is a product of two
/// of them; this and the size bounds are re-verified before returning.
pub fn cfpz_cover(w: &Word, ell: usize) -> Result<CoverSet> {
    let n = w.len();
    if ell == 0 || ell > n {
        return Err(Error::invalid(format!("need 1 ≤ ℓ ≤ |w|, got ℓ = {ell}, |w| = {n}")));
    }
    let x = w.as_slice();
    let mut set = SpanSet::new(x);
    let mut levels = 0;
    while (1usize << levels) * ell < n {
        let i = levels;
        for j in 0..8u128 {
            let denom = 1u128 << (i + 3);
            let mut cuts = vec![0usize];
            for k in 0.. {
                let c = ((8 * k as u128 + j) * n as u128 / denom) as usize;
                if c >= n {
                    break;
                }
                if c > 0 {
                    cuts.push(c);
                }
            }
            cuts.push(n);
            cuts.dedup();
            for piece in cuts.windows(2) {
                let (a, b) = (piece[0], piece[1]);
                for m in ell..=b - a {
                    set.insert(a, m);
                    set.insert(b - m, m);
                }
            }
        }
        levels += 1;
    }
    let cover = CoverSet {
        w: w.clone(),
        ell,
        spans: set.spans.clone(),
        levels,
    };
    verify(&cover, &set)?;
    Ok(cover)
}

fn verify(cover: &CoverSet, set: &SpanSet<'_>) -> Result<()> {
    let n = cover.w.len();
    let ell = cover.ell;
    let mut per_len = vec![0usize; n + 1];
    for &(_, l) in &cover.spans {
        per_len[l] += 1;
    }
    if let Some(l) = (1..=n).find(|&l| per_len[l] * ell > 32 * n) {
        return Err(Error::internal(format!(
            "{} cover words of length {l} exceed 32|w|/ℓ",
            per_len[l]
        )));
    }
    if cover.spans.iter().any(|&(_, l)| l < ell || l > n) {
        return Err(Error::internal("cover word length outside [ℓ, |w|]"));
    }

    let long = 64 * ell;
    if long > n {
        return Ok(());
    }
    // lengths m ≥ ℓ with w[s, s+m) in the cover, one bitset per start
    let words = (n + 64) / 64;
    let mut member = vec![vec![0u64; words]; n + 1];
    for (s, bits) in member.iter_mut().enumerate().take(n) {
        for m in ell..=n - s {
            if set.find(s, m).is_some() {
                bits[m / 64] |= 1 << (m % 64);
            }
        }
    }
    let mut reach = vec![0u64; words];
    for a in 0..=n - long {
        reach.iter_mut().for_each(|b| *b = 0);
        for m in ell..=n - a {
            if member[a][m / 64] >> (m % 64) & 1 == 1 {
                shift_or(&mut reach, &member[a + m], m);
            }
        }
        if let Some(len) = (long..=n - a).find(|&l| reach[l / 64] >> (l % 64) & 1 == 0) {
            return Err(Error::internal(format!(
                "factor at {a} of length {len} is not a product of two cover words"
            )));
        }
    }
    Ok(())
}

/// `dst |= src << shift` on little-endian bitsets of equal length.
fn shift_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for i in (words..dst.len()).rev() {
        let j = i - words;
        let mut v = src[j] << bits;
        if bits > 0 && j > 0 {
            v |= src[j - 1] >> (64 - bits);
        }
        dst[i] |= v;
    }
}
