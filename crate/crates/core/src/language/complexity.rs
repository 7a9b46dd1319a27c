use std::fmt::Write as _;

use super::provider::LanguageProvider;
use super::table::Status;
use crate::error::{Error, Result};
use crate::words::Word;

/// `p(1), …, p(max_len)` of a language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityTable {
    values: Vec<usize>,
    status: Status,
}

impl ComplexityTable {
    /// `values[i]` is `p(i + 1)`.
    pub fn from_values(values: Vec<usize>, status: Status) -> Result<Self> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::invalid("complexity values must be positive and nonempty"));
        }
        Ok(ComplexityTable { values, status })
    }

    pub fn max_len(&self) -> usize {
        self.values.len()
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn p(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// `p(n+1) - p(n)`, when both are in the table.
    pub fn delta(&self, n: usize) -> Option<i64> {
        Some(self.p(n + 1)? as i64 - self.p(n)? as i64)
    }

    /// CSV with header `n,p,delta`; the last row leaves `delta` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,delta\n");
        for n in 1..=self.max_len() {
            let delta = self.delta(n).map(|d| d.to_string()).unwrap_or_default();
            writeln!(out, "{n},{},{delta}", self.p(n).unwrap()).unwrap();
        }
        out
    }
}

pub fn complexity(lang: &dyn LanguageProvider, max_len: usize) -> Result<ComplexityTable> {
    if max_len == 0 {
        return Err(Error::invalid("max length must be at least 1"));
    }
    let table = lang.table(max_len)?;
    let mut values = table.counts();
    values.truncate(max_len);
    ComplexityTable::from_values(values, table.status())
}

/// Right-special words of length `n`, sorted. Checks the two-sided bound
/// `Δp(n) / #A ≤ #RS_n ≤ Δp(n)` before returning.
pub fn right_special(lang: &dyn LanguageProvider, n: usize) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::invalid("length must be at least 1"));
    }
    let table = lang.table(n + 1)?;
    let mut special = Vec::new();
    let mut current: Option<(Vec<u8>, usize)> = None;
    table.for_each_word(n + 1, |w| {
        let (head, _) = w.split_at(n);
        match &mut current {
            Some((prev, count)) if prev.as_slice() == head => *count += 1,
            _ => {
                if let Some((prev, count)) = current.take() {
                    if count >= 2 {
                        special.push(Word::new(prev));
                    }
                }
                current = Some((head.to_vec(), 1));
            }
        }
    })?;
    if let Some((prev, count)) = current {
        if count >= 2 {
            special.push(Word::new(prev));
        }
    }

    let delta = table.count(n + 1)? - table.count(n)?;
    let k = lang.alphabet().len();
    if special.len() > delta || delta > k * special.len() {
        return Err(Error::internal(format!(
            "special-word bound fails at n = {n}: #RS = {}, delta = {delta}, #A = {k}",
            special.len()
        )));
    }
    Ok(special)
}

/// Exponents `k ≤ k_max` with `u v^k w` legal for some `u, w ≠ v` of length `|v|`.
pub fn power_set(lang: &dyn LanguageProvider, v: &Word, k_max: usize) -> Result<Vec<usize>> {
    if v.is_empty() {
        return Err(Error::invalid("power base must be nonempty"));
    }
    let table = lang.table((k_max + 2) * v.len())?;
    if !table.contains(v.as_slice())? {
        return Ok(Vec::new());
    }
    let contexts: Vec<Word> = table
        .words(v.len())?
        .into_iter()
        .filter(|u| u != v)
        .collect();
    let mut out = Vec::new();
    for k in 1..=k_max {
        let body = v.pow(k);
        let found = contexts.iter().any(|u| {
            let left = u.concat(&body);
            table.contains(left.as_slice()).unwrap_or(false)
                && contexts
                    .iter()
                    .any(|w| table.contains(left.concat(w).as_slice()).unwrap_or(false))
        });
        if found {
            out.push(k);
        }
    }
    Ok(out)
}

/// Largest `#Pow(v)` (truncated at `k_max`) over legal bases of length at
/// most `max_base_len`. A lower bound for the power complexity.
pub fn pcom_estimate(
    lang: &dyn LanguageProvider,
    max_base_len: usize,
    k_max: usize,
) -> Result<(usize, Option<Word>)> {
    let mut best = (0, None);
    for len in 1..=max_base_len {
        for v in lang.words(len)? {
            let count = power_set(lang, &v, k_max)?.len();
            if count > best.0 {
                best = (count, Some(v));
            }
        }
    }
    Ok(best)
}

/// Least `m ∈ [n, 2n)` with `p(m+1) - p(m) ≤ 2d`.
///
/// The precondition checked is the averaging inequality `p(2n) - p(n) ≤ 2dn`,
/// which is all the existence argument needs and follows from `p(ℓ) ≤ dℓ`.
pub fn find_low_growth_length(table: &ComplexityTable, n: usize, d: usize) -> Result<usize> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("n and d must be positive"));
    }
    if table.max_len() < 2 * n {
        return Err(Error::invalid(format!(
            "table stops at {} but [n, 2n] = [{n}, {}] is needed",
            table.max_len(),
            2 * n
        )));
    }
    let rise = table.p(2 * n).unwrap() as i64 - table.p(n).unwrap() as i64;
    if rise > (2 * d * n) as i64 {
        return Err(Error::invalid(format!(
            "p({}) - p({n}) = {rise} exceeds 2·{d}·{n}",
            2 * n
        )));
    }
    (n..2 * n)
        .find(|&m| table.delta(m).unwrap() <= 2 * d as i64)
        .ok_or_else(|| Error::internal(format!("no low-growth length in [{n}, {})", 2 * n)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseCertificate {
    pub m: usize,
    /// The length `k ≥ 2 n_min` that anchored the scan.
    pub k: usize,
    pub p_m: usize,
    pub delta_m: i64,
}

/// Finds `m ≥ n_min` with `p(m) ≤ 3dm` and `p(m+1) - p(m) ≤ 2d` by scanning
/// `[⌊k/2⌋, k)` below lengths `k ≥ 2 n_min` whose increments average at most
/// `2d` there, i.e. `p(k) - p(⌊k/2⌋) ≤ dk` (implied by `p(k) ≤ dk`).
pub fn find_sparse_low_growth(
    table: &ComplexityTable,
    d: usize,
    n_min: usize,
) -> Result<SparseCertificate> {
    if d == 0 || n_min == 0 {
        return Err(Error::invalid("d and n_min must be positive"));
    }
    for k in (2 * n_min).max(2)..=table.max_len() {
        let rise = table.p(k).unwrap().saturating_sub(table.p(k / 2).unwrap());
        if rise > d * k {
            continue;
        }
        for m in k / 2..k {
            let p_m = table.p(m).unwrap();
            let delta_m = table.delta(m).unwrap();
            if p_m <= 3 * d * m && delta_m <= 2 * d as i64 {
                return Ok(SparseCertificate { m, k, p_m, delta_m });
            }
        }
    }
    Err(Error::NotFound(format!(
        "no k ≥ {} in the table averages to a low-growth length",
        2 * n_min
    )))
}
