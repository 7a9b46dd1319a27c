use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::oracles::each_word;
use crate::error::Result;
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::{Alphabet, Symbol, Word};

fn random_morphism(rng: &mut StdRng, source: usize, target: usize, positive: bool) -> Result<Morphism> {
    let images = (0..source)
        .map(|_| {
            let len = rng.gen_range(1..=5usize).max(if positive { target } else { 1 });
            let mut img: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..target) as Symbol).collect();
            if positive {
                // plant every letter at distinct positions
                let mut slots: Vec<usize> = (0..len).collect();
                for s in 0..target {
                    let k = rng.gen_range(0..slots.len());
                    img[slots.swap_remove(k)] = s as Symbol;
                }
            }
            Word::new(img)
        })
        .collect();
    Morphism::new(Alphabet::range(source)?, Alphabet::range(target)?, images)
}

/// Direct image of a word letter by letter, without `apply`.
fn expand(sigma: &Morphism, w: &[Symbol]) -> Vec<Symbol> {
    w.iter()
        .flat_map(|&a| sigma.images()[a as usize].as_slice().to_vec())
        .collect()
}

/// Associativity, length metrics, positivity and `apply ∘ compose` on a
/// seeded corpus of random morphisms plus the named examples.
pub fn morphism_properties(seed: u64, cases: usize) -> Result<Report> {
    let mut report = Report::new("morphisms");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut assoc = None;
    let mut metrics = None;
    let mut applied = None;
    let mut positive = None;
    let mut applied_cases = 0usize;
    for case in 0..cases {
        let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=4)).collect();
        let outer = random_morphism(&mut rng, sizes[1], sizes[0], false)?;
        let mid = random_morphism(&mut rng, sizes[2], sizes[1], false)?;
        let inner = random_morphism(&mut rng, sizes[3], sizes[2], false)?;

        let left = outer.compose(&mid)?.compose(&inner)?;
        let right = outer.compose(&mid.compose(&inner)?)?;
        if left != right && assoc.is_none() {
            assoc = Some(format!("case {case}: {outer} / {mid} / {inner}"));
        }

        let both = outer.compose(&mid)?;
        let bounded = both.max_len() <= outer.max_len() * mid.max_len()
            && both.min_len() >= outer.min_len() * mid.min_len();
        if !bounded && metrics.is_none() {
            metrics = Some(format!("case {case}: {outer} ∘ {mid}"));
        }

        if sizes[2] <= 3 {
            for len in 0..=6 {
                each_word(sizes[2] as u8, len, |w| {
                    applied_cases += 1;
                    let got = both.apply(&Word::from(w)).map(Word::into_vec);
                    let want = expand(&outer, &expand(&mid, w));
                    if got.as_ref() != Ok(&want) && applied.is_none() {
                        applied = Some(format!("case {case}: word {}", Word::from(w)));
                    }
                });
            }
        }

        let p = random_morphism(&mut rng, sizes[1], sizes[0], true)?;
        let q = random_morphism(&mut rng, sizes[2], sizes[1], true)?;
        let ok = p.is_positive() && q.is_positive() && p.compose(&q)?.is_positive() && p.compose(&mid)?.is_positive();
        if !ok && positive.is_none() {
            positive = Some(format!("case {case}: {p} ∘ {q}"));
        }
    }
    let verdict = |f: Option<String>, what: String| (f.is_none(), f.unwrap_or(what));
    let (ok, detail) = verdict(assoc, format!("{cases} triples"));
    report.check("compose-associative", ok, detail);
    let (ok, detail) = verdict(metrics, format!("{cases} pairs"));
    report.check("length-metrics", ok, detail);
    let (ok, detail) = verdict(applied, format!("{applied_cases} words"));
    report.check("apply-of-compose", ok, detail);
    let (ok, detail) = verdict(positive, format!("{cases} pairs"));
    report.check("positivity-preserved", ok, detail);

    let fib = Morphism::fibonacci();
    let tm = Morphism::thue_morse();
    let constant = Morphism::from_strs(&["00", "00"])?;
    report.check(
        "fibonacci-metrics",
        (fib.max_len(), fib.min_len(), fib.is_positive(), fib.is_proper(), fib.is_injective_on_letters())
            == (2, 1, false, false, true),
        fib.to_string(),
    );
    report.check(
        "thue-morse-metrics",
        (tm.max_len(), tm.min_len(), tm.is_positive(), tm.is_proper(), tm.is_injective_on_letters())
            == (2, 2, true, false, true),
        tm.to_string(),
    );
    report.check("constant-not-injective", !constant.is_injective_on_letters(), constant.to_string());
    let fib2 = fib.compose(&fib)?;
    report.check(
        "fibonacci-squared",
        fib2.images() == [Word::parse("010")?, Word::parse("01")?],
        fib2.to_string(),
    );
    let tm2 = tm.compose(&tm)?;
    report.check(
        "thue-morse-squared",
        tm2.images() == [Word::parse("0110")?, Word::parse("1001")?],
        tm2.to_string(),
    );
    let id = Morphism::identity(fib.target());
    report.check("identity-left-unit", id.compose(&fib)? == fib, "");
    Ok(report)
}
