use std::collections::HashSet;

use super::oracles::{factor_set, fixed_point, to_words};
use crate::error::Result;
use crate::language::{self, complexity, contract, right_special, ContractMode, LanguageProvider};
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::Symbol;

const ORACLE_LEN: usize = 100_000;

/// Languages of the Fibonacci and Thue–Morse subshifts against the factors
/// of a long fixed-point prefix, with `p(n) = n + 1` for Fibonacci.
pub fn stationary_languages(max_len: usize) -> Result<Report> {
    let mut report = Report::new("languages");
    for (name, dirseq, sigma) in [
        ("fibonacci", language::fibonacci(), Morphism::fibonacci()),
        ("thue-morse", language::thue_morse(), Morphism::thue_morse()),
    ] {
        let lang = language::language_of(&dirseq, 0)?;
        let x = fixed_point(&sigma, ORACLE_LEN);
        let mut mismatch = None;
        for len in 1..=max_len {
            if lang.words(len)? != to_words(factor_set(&x, len)) {
                mismatch.get_or_insert(len);
            }
        }
        report.check(
            format!("{name}/matches-fixed-point"),
            mismatch.is_none(),
            match mismatch {
                None => format!("lengths 1..={max_len} over {} symbols", x.len()),
                Some(len) => format!("length {len} differs"),
            },
        );

        let table = complexity(lang.as_ref(), max_len + 1)?;
        let below = (1..=max_len).find(|&n| table.p(n).unwrap() < n + 1);
        report.check(
            format!("{name}/morse-hedlund-floor"),
            below.is_none(),
            below.map_or(String::new(), |n| format!("p({n}) = {}", table.p(n).unwrap())),
        );
        if name == "fibonacci" {
            let off = (1..=max_len).find(|&n| table.p(n) != Some(n + 1));
            report.check(
                "fibonacci/p(n)=n+1",
                off.is_none(),
                off.map_or(format!("n <= {max_len}"), |n| format!("p({n}) = {}", table.p(n).unwrap())),
            );
        }

        let top = lang.table(max_len)?;
        let mut closed = true;
        let mut extendable = true;
        for len in 2..=max_len {
            let shorter: HashSet<Vec<Symbol>> = top.words(len - 1)?.into_iter().map(|w| w.into_vec()).collect();
            let longer = top.words(len)?;
            closed &= longer.iter().all(|w| {
                shorter.contains(&w.as_slice()[1..]) && shorter.contains(&w.as_slice()[..len - 1])
            });
            let prefixes: HashSet<&[Symbol]> = longer.iter().map(|w| &w.as_slice()[..len - 1]).collect();
            extendable &= shorter.iter().all(|w| prefixes.contains(w.as_slice()));
        }
        report.check(format!("{name}/factor-closed"), closed, "");
        report.check(format!("{name}/right-extendable"), extendable, "");
    }
    Ok(report)
}

/// `Δp(n) / #A ≤ #RS_n ≤ Δp(n)`, with right-special words compared to the
/// extensions seen in a fixed-point prefix.
pub fn right_special_bounds(max_len: usize) -> Result<Report> {
    let mut report = Report::new("right-special");
    for (name, dirseq, sigma) in [
        ("fibonacci", language::fibonacci(), Morphism::fibonacci()),
        ("thue-morse", language::thue_morse(), Morphism::thue_morse()),
    ] {
        let lang = language::language_of(&dirseq, 0)?;
        let x = fixed_point(&sigma, ORACLE_LEN);
        let k = lang.alphabet().len();
        let mut bound = None;
        let mut oracle = None;
        for n in 1..=max_len {
            let rs = right_special(lang.as_ref(), n)?;
            let shorter = factor_set(&x, n);
            let longer = factor_set(&x, n + 1);
            let delta = longer.len() - shorter.len();
            if !(delta <= k * rs.len() && rs.len() <= delta) {
                bound.get_or_insert(format!("n={n}: #RS={} delta={delta}", rs.len()));
            }
            let mut expected: Vec<&[Symbol]> = shorter
                .iter()
                .copied()
                .filter(|w| longer.iter().filter(|l| &l[..n] == *w).count() >= 2)
                .collect();
            expected.sort();
            let got: Vec<&[Symbol]> = rs.iter().map(|w| w.as_slice()).collect();
            if got != expected {
                oracle.get_or_insert(format!("n={n}"));
            }
        }
        report.check(
            format!("{name}/two-sided-bound"),
            bound.is_none(),
            bound.unwrap_or(format!("n <= {max_len}")),
        );
        report.check(
            format!("{name}/matches-extension-scan"),
            oracle.is_none(),
            oracle.unwrap_or(format!("n <= {max_len}")),
        );
    }
    Ok(report)
}

/// Largest first difference of `p` over `n ≤ max_len`: exactly 1 for
/// Fibonacci and at most 4 for Thue–Morse.
pub fn bounded_differences(max_len: usize) -> Result<Report> {
    let mut report = Report::new("first-differences");
    for (name, dirseq, ok) in [
        ("fibonacci", language::fibonacci(), (|d: i64| d == 1) as fn(i64) -> bool),
        ("thue-morse", language::thue_morse(), |d: i64| d <= 4),
    ] {
        let lang = language::language_of(&dirseq, 0)?;
        let table = complexity(lang.as_ref(), max_len + 1)?;
        let max = (1..=max_len).filter_map(|n| table.delta(n)).max().unwrap_or(0);
        report.check(format!("{name}/max-delta"), ok(max), format!("max = {max}"));
    }
    Ok(report)
}

/// Telescoping keeps the level-0 language.
pub fn contraction(max_len: usize) -> Result<Report> {
    let mut report = Report::new("contract");
    for (name, dirseq, target) in [
        ("fibonacci", language::fibonacci(), 2),
        ("thue-morse", language::thue_morse(), 4),
    ] {
        let contracted = contract(&dirseq, ContractMode::Growth(target))?;
        let before = language::language_of(&dirseq, 0)?;
        let after = language::language_of(&contracted, 0)?;
        let same = before.words(max_len)? == after.words(max_len)?;
        let grows = contracted.levels().iter().all(|m| m.min_len() >= target);
        report.check(format!("{name}/same-language"), same, format!("length {max_len}"));
        report.check(format!("{name}/growth-target"), grows, format!("target {target}"));
    }
    Ok(report)
}
