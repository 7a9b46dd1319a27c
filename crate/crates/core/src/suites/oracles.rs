//! Quadratic reference implementations, written from the definitions and
//! sharing no code with the kernels they check.

use std::collections::HashSet;

use crate::morphism::Morphism;
use crate::words::{Symbol, Word};

/// Every word of length `len` over `{0, .., k-1}`, in lexicographic order.
pub(crate) fn each_word(k: u8, len: usize, mut f: impl FnMut(&[Symbol])) {
    let mut w = vec![0u8; len];
    loop {
        f(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if w[i] + 1 < k {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
    }
}

pub(crate) fn words_up_to(k: u8, max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        each_word(k, len, |w| out.push(w.to_vec()));
    }
    out
}

/// Least `p` with `w[i] = w[i + p]` wherever both are defined.
pub(crate) fn period(w: &[Symbol]) -> usize {
    (1..=w.len())
        .find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
        .unwrap_or(0)
}

/// Whether `w` is `u^k` for some `k ≥ 1`.
pub(crate) fn is_power_of(w: &[Symbol], u: &[Symbol]) -> bool {
    !u.is_empty() && w.len() % u.len() == 0 && w.chunks(u.len()).all(|c| c == u)
}

/// Shortest prefix `u` with `w = u^k`.
pub(crate) fn root(w: &[Symbol]) -> Vec<Symbol> {
    let d = (1..=w.len()).find(|&d| is_power_of(w, &w[..d])).unwrap_or(0);
    w[..d].to_vec()
}

/// Least word that both `u` and `v` are powers of.
pub(crate) fn common_root(u: &[Symbol], v: &[Symbol]) -> Option<Vec<Symbol>> {
    (1..=u.len().min(v.len()))
        .find(|&d| is_power_of(u, &u[..d]) && is_power_of(v, &u[..d]))
        .map(|d| u[..d].to_vec())
}

/// `t^Z_[i, i+len)`.
pub(crate) fn power_window(t: &[Symbol], i: i64, len: usize) -> Vec<Symbol> {
    let n = t.len() as i64;
    (0..len as i64).map(|k| t[(i + k).rem_euclid(n) as usize]).collect()
}

/// Whether `x` is a factor of some power of `t`, by trying every phase.
pub(crate) fn occurs_in_power(x: &[Symbol], t: &[Symbol]) -> bool {
    (0..t.len() as i64).any(|i| power_window(t, i, x.len()) == x)
}

pub(crate) fn rotations(w: &[Symbol]) -> Vec<Vec<Symbol>> {
    (0..w.len().max(1))
        .map(|i| [&w[i.min(w.len())..], &w[..i.min(w.len())]].concat())
        .collect()
}

/// Number of primitive necklaces of length `n` over `k` letters.
pub(crate) fn necklace_count(k: u64, n: u64) -> u64 {
    fn mobius(mut n: u64) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let total: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * k.pow((n / d) as u32) as i64)
        .sum();
    (total / n as i64) as u64
}

/// Iterates `σ` from `0` until the word has at least `min_len` symbols.
pub(crate) fn fixed_point(sigma: &Morphism, min_len: usize) -> Vec<Symbol> {
    let mut x = vec![sigma.source().symbols()[0]];
    while x.len() < min_len {
        let mut next = Vec::with_capacity(2 * x.len());
        for &a in &x {
            next.extend_from_slice(sigma.image(a).expect("letter").as_slice());
        }
        x = next;
    }
    x
}

/// Distinct length-`len` windows of `x`.
pub(crate) fn factor_set(x: &[Symbol], len: usize) -> HashSet<&[Symbol]> {
    x.windows(len).collect()
}

pub(crate) fn to_words(set: HashSet<&[Symbol]>) -> Vec<Word> {
    let mut out: Vec<Word> = set.into_iter().map(Word::from).collect();
    out.sort();
    out
}
