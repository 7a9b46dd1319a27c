use std::collections::{BTreeMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::constructions::{
    cfpz_cover, enumerate_p, first_difference_bound, negative_family_verify, power_cover_px_bound,
    sample_p_minus_k, NegativeFamilyParams,
};
use crate::error::{Error, Result};
use crate::language::{self, complexity, LanguageProvider};
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::{Symbol, Word};

/// The explicit linear-complexity family for `levels` levels of one block
/// each, unit scales and minimal exponents.
pub fn negative_family(levels: usize, depth: usize, k_max: usize) -> Result<Report> {
    let params = NegativeFamilyParams::minimal(&vec![1; levels], &vec![1; levels])?;
    negative_family_verify(&params, depth, k_max)
}

/// Whether `target` is a non-negative combination of at most `d` integers
/// from `[⌈n/d⌉, dn)`, by trying every combination directly.
fn in_k_directly(target: u64, n: u64, d: u64) -> bool {
    let range: Vec<u64> = (n.div_ceil(d)..d * n).collect();
    let combo = |coins: &[u64]| -> bool {
        match coins {
            [a] => target % a == 0,
            [a, b] => (0..=target / a).any(|i| (target - i * a) % b == 0),
            _ => unreachable!(),
        }
    };
    match d {
        1 => range.iter().any(|&a| combo(&[a])),
        2 => range.iter().any(|&a| range.iter().any(|&b| combo(&[a, b]))),
        _ => unreachable!(),
    }
}

/// The two micro-instances at `n = 8, n₀ = 1, ℓ = 1`: a sample outside `K`
/// for `d = 1` and none for `d = 2`.
pub fn counting_instances() -> Result<Report> {
    let mut report = Report::new("counting");
    let (n, n0) = (8, 1);
    let p = enumerate_p(n, n0, 1)?;
    let in_range = p.iter().all(|t| t.len() == 1 && (8 * n..16 * n).contains(&(t[0] * n0)));
    report.check("p-range", in_range && p.len() == 64, format!("#P = {}", p.len()));

    let one = sample_p_minus_k(n, n0, 1, 1)?;
    let expected_one = p.iter().find(|t| !in_k_directly(t[0], n, 1)).cloned();
    report.check("d=1/sample", one.is_some() && one == expected_one, format!("{one:?}"));

    let two = sample_p_minus_k(n, n0, 2, 1)?;
    let expected_two = p.iter().find(|t| !in_k_directly(t[0], n, 2)).cloned();
    report.check("d=2/none", two.is_none() && expected_two.is_none(), format!("{two:?}"));
    Ok(report)
}

/// Independent check of the cover guarantees. Factors are identified by
/// their first occurrence, computed from a full longest-common-extension
/// table, so no hashing is involved.
fn check_cover(x: &[Symbol], ell: usize, spans: &[(usize, usize)]) -> std::result::Result<(), String> {
    let n = x.len();
    let stride = n + 1;
    let mut lce = vec![0u16; stride * stride];
    for i in (0..n).rev() {
        for j in (0..n).rev() {
            if x[i] == x[j] {
                lce[i * stride + j] = lce[(i + 1) * stride + j + 1] + 1;
            }
        }
    }
    // first[len] for the factor starting at b
    let first_occurrences = |b: usize| -> Vec<u32> {
        let mut first = vec![0u32; n - b + 1];
        let mut covered = 0usize;
        for i in 0..=b {
            let l = lce[i * stride + b] as usize;
            while covered < l {
                covered += 1;
                first[covered] = i as u32;
            }
        }
        first
    };

    let mut members: HashSet<(u32, u32)> = HashSet::new();
    let mut firsts: Vec<Vec<u32>> = (0..n).map(first_occurrences).collect();
    for &(s, l) in spans {
        if l < ell || l > n || s + l > n {
            return Err(format!("span ({s}, {l}) out of range"));
        }
        if !members.insert((firsts[s][l], l as u32)) {
            return Err(format!("factor at ({s}, {l}) listed twice"));
        }
    }
    let mut per_length: BTreeMap<u32, usize> = BTreeMap::new();
    for &(_, l) in &members {
        *per_length.entry(l).or_default() += 1;
    }
    if let Some((l, c)) = per_length.iter().find(|(_, &c)| c * ell > 32 * n) {
        return Err(format!("{c} words of length {l}"));
    }

    let words = stride.div_ceil(64);
    let mut next = vec![0u64; n * words];
    let mut starts: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 0..n {
        for len in 1..=n - b {
            if members.contains(&(firsts[b][len], len as u32)) {
                let e = b + len;
                next[b * words + e / 64] |= 1 << (e % 64);
                starts[b].push(len);
            }
        }
    }
    firsts.clear();
    let mut reach = vec![0u64; words];
    for a in 0..n {
        reach.iter_mut().for_each(|r| *r = 0);
        for &m in &starts[a] {
            let mid = a + m;
            if mid < n {
                for (r, &w) in reach.iter_mut().zip(&next[mid * words..(mid + 1) * words]) {
                    *r |= w;
                }
            }
        }
        for e in a + 64 * ell..=n {
            if reach[e / 64] >> (e % 64) & 1 == 0 {
                return Err(format!("factor [{a}, {e}) is not a product of two cover words"));
            }
        }
    }
    Ok(())
}

/// Covers of random binary words with lengths in `[64, 4096]` and
/// `ℓ ∈ {1, 2, 4, 8}`.
pub fn cfpz_random(seed: u64, count: usize) -> Result<Report> {
    let mut report = Report::new("cfpz-cover");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failure = None;
    let mut sizes = 0usize;
    for case in 0..count {
        let len = rng.gen_range(64..=4096usize);
        let ell = [1, 2, 4, 8][rng.gen_range(0..4)];
        let x: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        let cover = cfpz_cover(&Word::from(x.as_slice()), ell)?;
        sizes += cover.len();
        if let Err(e) = check_cover(&x, ell, &cover.spans) {
            failure.get_or_insert(format!("case {case} (|w| = {len}, ℓ = {ell}): {e}"));
        }
    }
    let ok = failure.is_none();
    report.check(
        "guarantees",
        ok,
        failure.unwrap_or_else(|| format!("{count} words, {sizes} cover words in total")),
    );
    Ok(report)
}

fn image_blocks(sigma: &Morphism, depth: usize) -> Result<Vec<Word>> {
    let mut block = sigma.clone();
    for _ in 1..depth {
        block = block.compose(sigma)?;
    }
    Ok(block.images().to_vec())
}

/// Complexity bounds from power covers by the depth-5 and depth-6 image
/// sets of Fibonacci and Thue–Morse, the first-difference bound at every
/// admissible `ℓ`.
pub fn complexity_bounds() -> Result<Report> {
    let mut report = Report::new("complexity-bounds");
    for (name, dirseq, sigma) in [
        ("fibonacci", language::fibonacci(), Morphism::fibonacci()),
        ("thue-morse", language::thue_morse(), Morphism::thue_morse()),
    ] {
        let lang = language::language_of(&dirseq, 0)?;
        for depth in [5, 6] {
            let blocks = image_blocks(&sigma, depth)?;
            let b = power_cover_px_bound(lang.as_ref(), &blocks)?;
            let shortest = blocks.iter().map(Word::len).min().unwrap_or(0);
            let independent = lang.words(shortest)?.len() == b.actual;
            report.check(
                format!("{name}/depth-{depth}/power-cover"),
                b.pass && independent,
                format!("p = {} <= {}", b.actual, b.bound),
            );

            let table = complexity(lang.as_ref(), shortest)?;
            let mut failed = None;
            for ell in 1..shortest {
                let d = first_difference_bound(lang.as_ref(), &blocks, ell)?;
                let delta = table.delta(ell).ok_or_else(|| Error::internal("table too short"))?;
                if !d.pass || d.actual != delta {
                    failed.get_or_insert(format!("ℓ = {ell}: {} vs {:.1}", d.actual, d.bound()));
                }
            }
            report.check(
                format!("{name}/depth-{depth}/first-difference"),
                failed.is_none(),
                failed.unwrap_or_else(|| format!("ℓ in 1..{shortest}")),
            );
        }
    }
    Ok(report)
}
