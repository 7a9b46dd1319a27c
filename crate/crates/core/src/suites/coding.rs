use std::collections::{BTreeSet, HashMap, HashSet};

use super::oracles::fixed_point;
use crate::coding::{
    clopen_coding, composition_recognizability_check, recognizability_radius, special_coding, ClopenSet, Coding,
    CompositionVerdict,
};
use crate::error::Result;
use crate::language::{self, LanguageProvider};
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::{Symbol, Word};

/// Return words to the cylinder `[1]` of the Fibonacci subshift and the
/// coding they induce, with cuts compared to occurrences along a long
/// fixed-point prefix.
pub fn return_word_coding() -> Result<Report> {
    let mut report = Report::new("return-words");
    let set = ClopenSet::cylinder(Word::parse("1")?);
    let coding = clopen_coding(&language::fibonacci(), 0, &set)?;
    let images: BTreeSet<Word> = coding.coding.sigma().images().iter().cloned().collect();
    let expected: BTreeSet<Word> = [Word::parse("10")?, Word::parse("100")?].into_iter().collect();
    report.check("fibonacci/[1]/returns", images == expected, format!("{images:?}"));
    report.check(
        "fibonacci/[1]/syndetic-bound",
        coding.returns.syndetic_bound == 3,
        format!("ℓ = {}", coding.returns.syndetic_bound),
    );

    // Parse a fixed-point prefix at its occurrences of 1.
    let x = fixed_point(&Morphism::fibonacci(), 100_000);
    let occ: Vec<usize> = (0..x.len()).filter(|&i| x[i] == 1).collect();
    let pieces: HashSet<&[Symbol]> = occ.windows(2).map(|p| &x[p[0]..p[1]]).collect();
    let parsed = pieces.len() == images.len() && pieces.iter().all(|p| images.contains(&Word::from(*p)));
    report.check("fibonacci/[1]/fixed-point-parse", parsed, format!("{} occurrences", occ.len()));
    // Cuts of the coding along the parse are exactly those occurrences.
    let by_image: HashMap<&[Symbol], usize> = coding
        .coding
        .sigma()
        .images()
        .iter()
        .map(Word::as_slice)
        .zip(0..)
        .collect();
    let mut cut = occ[0];
    let mut cuts = vec![cut];
    while let Some(&next) = occ.iter().find(|&&o| o > cut) {
        if !by_image.contains_key(&x[cut..next]) {
            break;
        }
        cut = next;
        cuts.push(cut);
    }
    report.check("fibonacci/[1]/cuts-are-occurrences", cuts == occ, format!("{} cuts", cuts.len()));
    report.merge(coding.report);

    let tm = clopen_coding(&language::thue_morse(), 0, &ClopenSet::cylinder(Word::parse("00")?))?;
    report.merge(Report { title: "thue-morse/[00]".into(), ..tm.report });
    Ok(report)
}

/// Recognizability under composition for Fibonacci with itself and for a
/// pair whose inner coding is not recognizable.
pub fn composition_checks() -> Result<Report> {
    let mut report = Report::new("composition");
    let fib = Morphism::fibonacci();
    let z = language::language_of(&language::fibonacci(), 0)?;
    let check = composition_recognizability_check(&fib, &fib, z.clone(), 16)?;
    report.check(
        "fibonacci-squared/all-recognizable",
        check.composed.is_some() && check.inner.is_some() && check.outer.is_some(),
        format!("{:?} {:?} {:?}", check.composed, check.inner, check.outer),
    );
    report.check("fibonacci-squared/verdict", check.verdict == CompositionVerdict::Consistent, "");
    report.merge(Report { title: "fibonacci-squared".into(), ..check.report() });

    let flat = Morphism::from_strs(&["01", "01"])?;
    let check = composition_recognizability_check(&flat, &fib, z.clone(), 12)?;
    report.check(
        "flat-then-fibonacci/inner-fails",
        check.inner.is_none() && check.composed.is_none(),
        format!("composed {:?}, inner {:?}, outer {:?}", check.composed, check.inner, check.outer),
    );
    report.check("flat-then-fibonacci/verdict", check.verdict == CompositionVerdict::Consistent, "");
    report.merge(Report { title: "flat-then-fibonacci".into(), ..check.report() });

    // Radius of the Fibonacci coding against windows of a fixed point.
    let coding = Coding::new(fib.clone(), z as std::sync::Arc<dyn LanguageProvider>)?;
    let d = recognizability_radius(&coding, 16)?;
    let x = fixed_point(&fib, 20_000);
    let mut pre = vec![0u8];
    while fib.apply(&Word::from(pre.as_slice()))?.len() < x.len() {
        pre = fib.apply(&Word::from(pre.as_slice()))?.into_vec();
    }
    let mut owner = Vec::with_capacity(x.len());
    for &a in &pre {
        for k in 0..fib.images()[a as usize].len() {
            owner.push((k, a));
        }
    }
    let single = |d: usize| {
        let mut seen: HashMap<&[Symbol], (usize, Symbol)> = HashMap::new();
        (d..x.len() - d).all(|i| *seen.entry(&x[i - d..i + d]).or_insert(owner[i]) == owner[i])
    };
    let ok = d.is_some_and(|d| single(d) && (d == 1 || !single(d - 1)));
    report.check("fibonacci/least-radius", ok, format!("{d:?}"));
    Ok(report)
}

/// Return-word codings to right-special cylinders.
pub fn special_codings() -> Result<Report> {
    let mut report = Report::new("special-coding");
    for (name, dirseq, n) in [("fibonacci", language::fibonacci(), 3), ("thue-morse", language::thue_morse(), 2)] {
        let coding = special_coding(&dirseq, 0, n)?;
        report.merge(Report { title: format!("{name}/n={n}"), ..coding.report });
        report.merge(Report { title: format!("{name}/n={n}/clopen"), ..coding.coding.report });
    }
    Ok(report)
}
