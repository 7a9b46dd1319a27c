use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sadic_core::constructions::{
    cfpz_cover, decompose_special, enumerate_p, first_difference_bound, gap_epsilon, is_in_k,
    negative_family_verify, negative_tau, power_cover_px_bound, sample_p_minus_k,
    synchronize_occurrences, DecompositionTag, NegativeFamilyParams,
};
use sadic_core::language::{self, PeriodicLanguage, SAdicLanguage};
use sadic_core::words::lyndon_words;
use sadic_core::{Alphabet, Error, Morphism, Word};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn random_word(rng: &mut StdRng, len: usize) -> Word {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

#[test]
fn gap_examples() {
    assert_eq!(gap_epsilon(&[1000, 2], 2, 4).unwrap(), 31);
    assert_eq!(gap_epsilon(&[500, 500, 500], 2, 4).unwrap(), gap_epsilon(&[500], 2, 4).unwrap());
    assert!(matches!(gap_epsilon(&[5, 1], 2, 4), Err(Error::InvalidArgument(_))));
    // L = d₀³ with d₀ = 8: band 1 is (8, 64], already empty, so ε = ⌊2L/d₀²⌋
    assert_eq!(gap_epsilon(&[512], 2, 4).unwrap(), 16);
}

#[test]
fn gap_dichotomy_on_random_multisets() {
    let mut rng = StdRng::seed_from_u64(0);
    for _ in 0..10_000 {
        let d = rng.gen_range(2..5u64);
        let scale = rng.gen_range(2..6u64);
        let count = rng.gen_range(1..4usize);
        let d0 = (d * scale) as u128;
        let floor = d0.pow(count as u32 + 2) / d as u128;
        let big = rng.gen_range(floor..floor * 50) as u64;
        let mut lengths = vec![big];
        lengths.extend((1..count).map(|_| rng.gen_range(1..=big)));
        let eps = gap_epsilon(&lengths, d, scale).unwrap();
        for &x in &lengths {
            assert!(x > scale * eps || x * d <= eps, "{lengths:?} d={d} M={scale} ε={eps}");
        }
        assert!(eps < big / d);
        assert!(eps as u128 >= d as u128 * big as u128 / d0.pow(count as u32 + 2));
    }
}

/// `s^Z_[-99ε, 99ε)` written out.
fn orbit_window(s: &Word, eps: usize) -> Vec<u8> {
    let q = s.len() as i64;
    (-(99 * eps as i64)..99 * eps as i64)
        .map(|t| s[t.rem_euclid(q) as usize])
        .collect()
}

/// Minimal `(|vu|, tag)` over all decompositions, by explicit enumeration.
fn brute_decompose(x: &Word, eps: usize) -> Option<(usize, DecompositionTag)> {
    let n = x.len();
    let bases = lyndon_words(&Alphabet::binary(), eps);
    let windows: BTreeSet<Vec<u8>> = bases.iter().map(|s| orbit_window(s, eps)).collect();
    let hits = |a: usize| windows.contains(&x.as_slice()[a..a + 198 * eps]);
    let mut best: Option<(usize, DecompositionTag)> = None;
    for a in 0..=n - 198 * eps {
        let right = n - a - 198 * eps;
        if 2 * a + 1000 * eps >= n && 2 * right + 1000 * eps >= n && hits(a) {
            best = Some((a + 99 * eps, DecompositionTag::A));
            break;
        }
    }
    let f = (n - 1000 * eps) / 2;
    if (f..=f + 802 * eps).all(|a| !hits(a)) {
        let split = f + 500 * eps;
        if best.is_none_or(|(s, _)| split < s) {
            best = Some((split, DecompositionTag::B));
        }
    }
    best
}

#[test]
fn decomposition_examples() {
    let zeros = Word::new(vec![0; 1000]);
    let d = decompose_special(&zeros, 1).unwrap();
    assert_eq!(d.tag, DecompositionTag::A);
    assert_eq!(d.base, Some(w("0")));
    assert!(d.v.is_empty());
    assert_eq!(d.u.len(), 99);

    let alternating = w("01").pow(500);
    let d = decompose_special(&alternating, 1).unwrap();
    assert_eq!(d.tag, DecompositionTag::B);
    assert_eq!((d.v.len(), d.u.len(), d.u2.len()), (0, 500, 500));

    let mut rng = StdRng::seed_from_u64(1);
    let mut planted = random_word(&mut rng, 2600).into_vec();
    for (i, slot) in planted[250..700].iter_mut().enumerate() {
        *slot = (i % 2) as u8;
    }
    let planted = Word::new(planted);
    let d = decompose_special(&planted, 2).unwrap();
    assert_eq!(d.tag, DecompositionTag::A);
    assert_eq!(d.base, Some(w("01")));
    assert_eq!(brute_decompose(&planted, 2), Some((d.split(), d.tag)));
    let whole = d.v.concat(&d.u).concat(&d.u2).concat(&d.v2);
    assert_eq!(whole, planted);

    assert!(matches!(decompose_special(&w("01"), 1), Err(Error::InvalidArgument(_))));
}

#[test]
fn decomposition_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(2);
    for case in 0..60 {
        let eps = 1 + case % 2;
        let n = rng.gen_range(1000 * eps..=(1000 * eps + 1500).min(5000));
        let mut x = random_word(&mut rng, n).into_vec();
        for _ in 0..rng.gen_range(0..3) {
            let q = rng.gen_range(1..=eps);
            let base: Vec<u8> = (0..q).map(|_| rng.gen_range(0..2)).collect();
            let len = rng.gen_range(150 * eps..260 * eps).min(n);
            let at = rng.gen_range(0..=n - len);
            for t in 0..len {
                x[at + t] = base[t % q];
            }
        }
        let x = Word::new(x);
        match (decompose_special(&x, eps), brute_decompose(&x, eps)) {
            (Ok(d), Some(expected)) => {
                assert_eq!((d.split(), d.tag), expected, "case {case}");
                assert_eq!(d.v.concat(&d.u).concat(&d.u2).concat(&d.v2), x);
            }
            (Err(Error::HypothesisViolated { .. }), None) => {}
            (got, expected) => panic!("case {case}: {got:?} vs {expected:?}"),
        }
    }
}

#[test]
fn negative_family_morphisms() {
    let params = NegativeFamilyParams::minimal(&[1], &[1]).unwrap();
    let tau = negative_tau(&params, 0).unwrap();
    assert_eq!(tau.image(0).unwrap().to_string(), "0000000011111111");
    assert_eq!(tau.image(1).unwrap().to_string(), "1111111100000000");
    let two = NegativeFamilyParams::new(vec![1], vec![vec![8, 64]]).unwrap();
    let tau2 = negative_tau(&two, 0).unwrap();
    assert_eq!((tau2.image(0).unwrap().len(), tau2.image(1).unwrap().len()), (144, 144));
    assert!(NegativeFamilyParams::new(vec![1], vec![vec![16]]).is_err());
    assert!(NegativeFamilyParams::new(vec![1], vec![vec![7]]).is_err());

    let image = tau.apply(&w("00")).unwrap();
    let needle: Vec<u8> = [vec![1], vec![0; 8], vec![1]].concat();
    assert!(image.contains_factor(&needle));
}

#[test]
fn negative_family_small_instance() {
    let params = NegativeFamilyParams::minimal(&[1], &[1]).unwrap();
    let report = negative_family_verify(&params, 1, 512).unwrap();
    assert_eq!(report.items.len(), 5);
    let failed: Vec<&str> = report.failures().map(|i| i.name.as_str()).collect();
    // windows of radius |τ_0| = 16 inside τ_0(0)^16 and τ_0(1)^16 coincide
    assert_eq!(failed, ["recognizable/1"], "{report}");
    assert!(report.notes.iter().any(|n| n.contains("least radius at level 1: 125")), "{report}");
}

#[test]
fn counting_examples() {
    // p_1 ranges over [8n, 16n) = [64, 128); with d = 1 the set interval [8, 8) is empty
    assert_eq!(sample_p_minus_k(8, 1, 1, 1).unwrap(), Some(vec![64]));
    assert_eq!(sample_p_minus_k(8, 1, 2, 1).unwrap(), None);
    assert!(is_in_k(&[64], 8, 2).unwrap());
    assert!(is_in_k(&[12], 8, 2).unwrap());
    assert!(!is_in_k(&[64], 8, 1).unwrap());

    for (n, n0, ell) in [(8, 1, 1), (4, 3, 2), (2, 1, 2), (5, 2, 1)] {
        let p = enumerate_p(n, n0, ell).unwrap();
        let floor: f64 = (1..=ell as i32).map(|j| 8f64.powi(j) * n as f64 / n0 as f64).product();
        assert!(p.len() as f64 >= floor.floor(), "n={n} n0={n0} ℓ={ell}");
        for t in &p {
            for (j, &pj) in t.iter().enumerate() {
                let low = 8u64.pow(j as u32 + 1) * n;
                assert!(pj * n0 >= low && pj * n0 < 2 * low);
            }
        }
    }
    assert!(matches!(enumerate_p(8, 1, 5), Err(Error::Resource(_))));
    assert!(matches!(is_in_k(&[100], 100, 3), Err(Error::Resource(_))));
}

/// Independent check of the three cover guarantees by listing every factor.
fn brute_cover_check(x: &Word, ell: usize, cover: &[Word]) {
    let n = x.len();
    let set: BTreeSet<&Word> = cover.iter().collect();
    assert!(cover.iter().all(|v| v.len() >= ell && v.len() <= n));
    for len in 1..=n {
        let count = cover.iter().filter(|v| v.len() == len).count();
        assert!(count * ell <= 32 * n);
    }
    for a in 0..n {
        for len in (64 * ell)..=n - a {
            let u = x.factor(a..a + len);
            let split = (ell..=len - ell).any(|m| {
                set.contains(&u.prefix(m)) && set.contains(&u.suffix(len - m))
            });
            assert!(split, "factor at {a} of length {len}");
        }
    }
}

#[test]
fn cover_examples() {
    let x = w("01").pow(8);
    let cover = cfpz_cover(&x, x.len()).unwrap();
    assert!(cover.is_empty());
    assert_eq!(cover.levels, 0);

    let x = w("01").pow(32);
    let cover = cfpz_cover(&x, 1).unwrap();
    let words = cover.words();
    brute_cover_check(&x, 1, &words);

    let mut rng = StdRng::seed_from_u64(3);
    let x = random_word(&mut rng, 256);
    let cover = cfpz_cover(&x, 2).unwrap();
    brute_cover_check(&x, 2, &cover.words());
    assert!(matches!(cfpz_cover(&x, 0), Err(Error::InvalidArgument(_))));
}

fn image_blocks(sigma: &Morphism, depth: usize) -> Vec<Word> {
    let mut block = sigma.clone();
    for _ in 1..depth {
        block = block.compose(sigma).unwrap();
    }
    block.images().to_vec()
}

#[test]
fn power_cover_bounds() {
    let fib = SAdicLanguage::new(language::fibonacci(), 0).unwrap();
    let blocks = image_blocks(&Morphism::fibonacci(), 6);
    let b = power_cover_px_bound(&fib, &blocks).unwrap();
    assert!(b.pass);
    assert_eq!(b.actual, blocks.iter().map(Word::len).min().unwrap() + 1);
    assert_eq!(b.bound, 21 * 4);

    let tm = SAdicLanguage::new(language::thue_morse(), 0).unwrap();
    let b = power_cover_px_bound(&tm, &image_blocks(&Morphism::thue_morse(), 5)).unwrap();
    assert!(b.pass);

    let base = w("0010");
    let periodic = PeriodicLanguage::new(base.clone(), Alphabet::binary()).unwrap();
    let b = power_cover_px_bound(&periodic, &[base.clone()]).unwrap();
    assert!(b.pass && b.actual <= base.len());

    assert!(matches!(
        power_cover_px_bound(&fib, &[w("0")]),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn first_difference_bounds() {
    let fib = SAdicLanguage::new(language::fibonacci(), 0).unwrap();
    let blocks = image_blocks(&Morphism::fibonacci(), 7);
    let shortest = blocks.iter().map(Word::len).min().unwrap();
    for ell in [1, shortest - 1] {
        let b = first_difference_bound(&fib, &blocks, ell).unwrap();
        assert!(b.pass);
        assert_eq!(b.actual, 1);
    }
    let tm = SAdicLanguage::new(language::thue_morse(), 0).unwrap();
    let blocks = image_blocks(&Morphism::thue_morse(), 6);
    let b = first_difference_bound(&tm, &blocks, 32).unwrap();
    assert!(b.pass && b.bound() > b.actual as f64);
    assert!(first_difference_bound(&tm, &blocks, 64).is_err());
}

/// Shortest `w` such that every `x_[p_i, p_j)` is a power of it.
fn divisor_oracle(x: &Word, positions: &[usize]) -> Word {
    let mut p = positions.to_vec();
    p.sort_unstable();
    let gap = p[1] - p[0];
    (1..=gap)
        .filter(|q| p.windows(2).all(|pair| (pair[1] - pair[0]) % q == 0))
        .map(|q| x.factor(p[0]..p[0] + q))
        .find(|cand| {
            p.iter().enumerate().all(|(i, &a)| {
                p[i + 1..].iter().all(|&b| x.factor(a..b) == cand.pow((b - a) / cand.len()))
            })
        })
        .unwrap()
}

#[test]
fn synchronization() {
    let x = w("ab").pow(10);
    let y = w("abababab");
    let got = synchronize_occurrences(&x, &y, &[0, 2], &[8, 8]).unwrap();
    assert_eq!(got, w("ab"));
    assert_eq!(got, divisor_oracle(&x, &[0, 2]));
    let got = synchronize_occurrences(&x, &y, &[0, 2, 4], &[8, 8, 8]).unwrap();
    assert_eq!(got, divisor_oracle(&x, &[0, 2, 4]));
    assert_eq!(synchronize_occurrences(&x, &y, &[2], &[6]).unwrap(), w("ab"));

    assert!(synchronize_occurrences(&x, &y, &[0, 6], &[8, 8]).is_err());
    assert!(synchronize_occurrences(&x, &y, &[0, 0], &[8, 8]).is_err());
    assert!(synchronize_occurrences(&x, &y, &[1], &[4]).is_err());

    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..200 {
        let q = rng.gen_range(1..5);
        let base = random_word(&mut rng, q);
        let x = base.pow(40);
        let l = rng.gen_range(8 * q..20 * q);
        let y = x.prefix(l);
        let k = rng.gen_range(1..4);
        let mut positions: Vec<usize> = (0..k).map(|i| i * q).collect();
        positions.dedup();
        let lengths = vec![l; positions.len()];
        let got = synchronize_occurrences(&x, &y, &positions, &lengths).unwrap();
        if positions.len() > 1 {
            assert_eq!(got, divisor_oracle(&x, &positions));
        }
    }
}
