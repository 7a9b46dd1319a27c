use std::collections::HashMap;

use super::dirseq::{DirectiveSequence, Tail};
use crate::error::{Error, Result};
use crate::morphism::Morphism;

type BoolMatrix = Vec<Vec<bool>>;

fn bool_product(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).any(|k| row[k] && b[k][j]))
                .collect()
        })
        .collect()
}

fn all_true(m: &BoolMatrix) -> bool {
    m.iter().all(|row| row.iter().all(|&x| x))
}

/// Certifies that for every `n` some `τ_[n,m)` is positive, by multiplying
/// occurrence matrices over one pass of the prefix plus enough turns of the
/// periodic block. Finite sequences are never certified.
pub fn certify_primitive(dirseq: &DirectiveSequence) -> bool {
    let Tail::RepeatLast(p) = dirseq.tail() else {
        return false;
    };
    let t0 = dirseq.tail_start().expect("periodic tail");
    let r = (0..t0 + p)
        .map(|n| dirseq.alphabet(n).map_or(0, |a| a.len()))
        .max()
        .unwrap_or(1);
    let horizon = t0 + p * (r * r + 2);
    (0..t0 + p).all(|n| positive_block_end(dirseq, n, n + horizon).is_some())
}

/// Least `m` in `(n, limit]` with `τ_[n,m)` positive.
pub fn positive_block_end(dirseq: &DirectiveSequence, n: usize, limit: usize) -> Option<usize> {
    let mut acc = dirseq.level(n)?.occurrence_matrix();
    for m in n + 1..=limit {
        if all_true(&acc) {
            return Some(m);
        }
        let next = dirseq.level(m)?;
        acc = bool_product(&acc, &next.occurrence_matrix());
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    /// `⟨τ_[0,n)⟩`
    pub min_len: u128,
    /// `|τ_[0,n)|`
    pub max_len: u128,
    pub positive: bool,
}

/// Length metrics and positivity of `τ_[0,n)` for `n = 1..=depth`, computed
/// from length vectors and occurrence matrices, never from images.
pub fn growth_report(dirseq: &DirectiveSequence, depth: usize) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::with_capacity(depth);
    let top = dirseq
        .alphabet(0)
        .ok_or_else(|| Error::invalid("empty sequence"))?;
    let mut occ: BoolMatrix = (0..top.len())
        .map(|i| (0..top.len()).map(|j| i == j).collect())
        .collect();
    // lengths of τ_[0,n)(a) for a in A_n
    let mut lengths: Vec<u128> = vec![1; top.len()];
    for n in 1..=depth {
        let tau = dirseq
            .level(n - 1)
            .ok_or_else(|| Error::invalid(format!("level {} is beyond the sequence", n - 1)))?;
        lengths = image_lengths(tau, &lengths);
        occ = bool_product(&occ, &tau.occurrence_matrix());
        rows.push(GrowthRow {
            n,
            min_len: lengths.iter().copied().min().unwrap_or(0),
            max_len: lengths.iter().copied().max().unwrap_or(0),
            positive: all_true(&occ),
        });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractMode {
    /// Cut each block as soon as its shortest image reaches the given length.
    Growth(usize),
    /// Fixed-size telescoping.
    Blocks(usize),
}

/// Telescopes the sequence into blocks `τ_[n_k, n_{k+1})`. The cut pattern
/// in the periodic tail depends only on the phase of `n_k`, so the result is
/// again eventually periodic.
pub fn contract(dirseq: &DirectiveSequence, mode: ContractMode) -> Result<DirectiveSequence> {
    const MAX_BLOCK: usize = 64;
    match mode {
        ContractMode::Growth(d) if d < 1 => return Err(Error::invalid("growth target must be positive")),
        ContractMode::Blocks(0) => return Err(Error::invalid("block size must be positive")),
        _ => {}
    }
    let block_end = |start: usize| -> Result<Option<usize>> {
        match mode {
            ContractMode::Blocks(k) => {
                let end = start + k;
                Ok(dirseq.level(end - 1).map(|_| end))
            }
            ContractMode::Growth(d) => {
                let base = dirseq.alphabet(start).expect("alphabet").len();
                let mut lengths: Vec<u128> = vec![1; base];
                for end in start + 1..=start + MAX_BLOCK {
                    let Some(tau) = dirseq.level(end - 1) else {
                        return Ok(None);
                    };
                    lengths = image_lengths(tau, &lengths);
                    if lengths.iter().all(|&l| l >= d as u128) {
                        return Ok(Some(end));
                    }
                }
                Err(Error::resource(format!(
                    "shortest image stays below {d} for {MAX_BLOCK} levels from level {start}"
                )))
            }
        }
    };

    let mut cuts = vec![0usize];
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let tail = loop {
        let start = *cuts.last().unwrap();
        if let (Tail::RepeatLast(p), Some(t0)) = (dirseq.tail(), dirseq.tail_start()) {
            if start >= t0 {
                let phase = (start - t0) % p;
                if let Some(&k) = seen.get(&phase) {
                    break Tail::RepeatLast(cuts.len() - 1 - k);
                }
                seen.insert(phase, cuts.len() - 1);
            }
        }
        match block_end(start)? {
            Some(end) => cuts.push(end),
            None => break Tail::Finite,
        }
    };
    if cuts.len() < 2 {
        return Err(Error::invalid("sequence too short for one block"));
    }
    let levels = cuts
        .windows(2)
        .map(|w| dirseq.compose_range(w[0], w[1]))
        .collect::<Result<Vec<Morphism>>>()?;
    Ok(DirectiveSequence::new(levels, tail)?.with_primitive_hint(dirseq.primitive_hint()))
}

fn image_lengths(tau: &Morphism, lengths: &[u128]) -> Vec<u128> {
    tau.images()
        .iter()
        .map(|img| {
            img.iter().fold(0u128, |acc, &s| {
                acc.saturating_add(lengths[tau.target().index_of(s).expect("letter")])
            })
        })
        .collect()
}
