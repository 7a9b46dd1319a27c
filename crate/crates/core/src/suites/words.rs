use std::collections::HashSet;

use super::oracles::{self, each_word, power_window, words_up_to};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::words::{
    aperiodicity_witness, are_conjugate, fine_wilf, global_period_from_local, is_primitive, least_rotation,
    overlap_synchronize, period, power_window_sync, primitive_representatives, root, shift_fixes_power,
    Alphabet, Symbol, Word,
};

/// First counterexample of a sweep, kept alongside the case count.
#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self, report: &mut Report, name: &str) {
        match self.failure {
            None => report.check(name, true, format!("{} cases", self.cases)),
            Some(f) => report.check(name, false, f),
        };
    }
}

fn show(w: &[Symbol]) -> String {
    Word::from(w).to_string()
}

/// The Fine–Wilf implication over all binary `u, v` with `|u|, |v| ≤ 6` and
/// every common prefix `w` of `u^inf` and `v^inf`.
pub fn fine_wilf_sweep() -> Result<Report> {
    let mut report = Report::new("fine-wilf");
    let mut implication = Tally::default();
    let mut direct = Tally::default();
    let mut sharp: Option<String> = None;
    let words = words_up_to(2, 6);
    for u in &words {
        for v in &words {
            let (lu, lv) = (u.len(), v.len());
            let common = oracles::common_root(u, v);
            let cap = lu + lv;
            let lcp = (0..cap).take_while(|&i| u[i % lu] == v[i % lv]).count();
            for len in 1..=lcp {
                let w = power_window(u, 0, len);
                let got = fine_wilf(&Word::from(u.as_slice()), &Word::from(v.as_slice()), &Word::from(w.as_slice()))?
                    .map(Word::into_vec);
                let describe = || format!("u={} v={} w={} got {:?}", show(u), show(v), show(&w), got.as_deref().map(show));
                if len + 1 >= lu + lv {
                    implication.record(common.is_some() && got == common, describe);
                } else {
                    direct.record(got == common, describe);
                }
                if len + 2 == lu + lv && common.is_none() && sharp.is_none() {
                    sharp = Some(format!("u={} v={} w={}", show(u), show(v), show(&w)));
                }
            }
        }
    }
    implication.finish(&mut report, "implication");
    direct.finish(&mut report, "below-threshold-direct-check");
    let found = sharp.is_some();
    report.check("sharpness", found, sharp.unwrap_or_else(|| "no counterexample at |u|+|v|-2".into()));
    Ok(report)
}

/// `period` and `root` against the definitions on all binary words up to
/// length 14 and ternary words up to length 10.
pub fn root_period_sweep() -> Result<Report> {
    let mut report = Report::new("root-period");
    for (k, max_len) in [(2u8, 14usize), (3, 10)] {
        let mut per = Tally::default();
        let mut rt = Tally::default();
        let mut prim = Tally::default();
        for len in 1..=max_len {
            each_word(k, len, |w| {
                let word = Word::from(w);
                let p = period(&word).unwrap_or(0);
                per.record(p == oracles::period(w), || format!("period({}) = {p}", show(w)));
                let r = root(&word).map(Word::into_vec).unwrap_or_default();
                let expected = oracles::root(w);
                rt.record(r == expected, || format!("root({}) = {}", show(w), show(&r)));
                prim.record(is_primitive(&word) == (expected.len() == len), || {
                    format!("is_primitive({})", show(w))
                });
            });
        }
        per.finish(&mut report, &format!("period/{k}-ary/len<={max_len}"));
        rt.finish(&mut report, &format!("root/{k}-ary/len<={max_len}"));
        prim.finish(&mut report, &format!("primitive/{k}-ary/len<={max_len}"));
    }

    let mut idem = Tally::default();
    for w in words_up_to(2, 10) {
        let r = root(&Word::from(w.as_slice()))?;
        idem.record(root(&r)? == r, || format!("root(root({}))", show(&w)));
        for k in 1..=3 {
            let rk = root(&Word::from(w.as_slice()).pow(k))?;
            idem.record(rk == r, || format!("root({}^{k})", show(&w)));
        }
    }
    idem.finish(&mut report, "root-idempotence");
    Ok(report)
}

/// Rotation classes and their least representatives.
pub fn conjugacy_sweep() -> Result<Report> {
    let mut report = Report::new("conjugacy");
    let mut relation = Tally::default();
    let mut equivalence = Tally::default();
    for len in 1..=8 {
        let mut words = Vec::new();
        each_word(2, len, |w| words.push(w.to_vec()));
        let n = words.len();
        let mut related = vec![false; n * n];
        for (i, u) in words.iter().enumerate() {
            let rots: HashSet<Vec<Symbol>> = oracles::rotations(u).into_iter().collect();
            let wu = Word::from(u.as_slice());
            for (j, v) in words.iter().enumerate() {
                let got = are_conjugate(&wu, &Word::from(v.as_slice()));
                related[i * n + j] = got;
                relation.record(got == rots.contains(v), || format!("are_conjugate({}, {})", show(u), show(v)));
            }
        }
        for i in 0..n {
            equivalence.record(related[i * n + i], || format!("{} not conjugate to itself", show(&words[i])));
            for j in 0..n {
                let r = related[i * n + j];
                equivalence.record(r == related[j * n + i], || {
                    format!("asymmetric on {}, {}", show(&words[i]), show(&words[j]))
                });
                if !r {
                    continue;
                }
                for m in 0..n {
                    if related[j * n + m] {
                        equivalence.record(related[i * n + m], || {
                            format!("intransitive on {}, {}, {}", show(&words[i]), show(&words[j]), show(&words[m]))
                        });
                    }
                }
            }
        }
    }
    relation.finish(&mut report, "rotation-oracle/len<=8");
    equivalence.finish(&mut report, "equivalence/len<=8");

    for (k, max_len) in [(2u8, 12usize), (3, 7)] {
        let alphabet = Alphabet::range(k as usize)?;
        let reps = primitive_representatives(&alphabet, max_len)?;
        let mut counts = Tally::default();
        for len in 1..=max_len {
            let got = reps.iter().filter(|w| w.len() == len).count() as u64;
            let want = oracles::necklace_count(k as u64, len as u64);
            counts.record(got == want, || format!("length {len}: {got} representatives, expected {want}"));
        }
        let mut least = Tally::default();
        for w in &reps {
            let rots = oracles::rotations(w.as_slice());
            let min = rots.iter().min().expect("rotation").clone();
            let distinct = rots.iter().collect::<HashSet<_>>().len() == w.len();
            least.record(w.as_slice() == min.as_slice() && distinct, || format!("{w} is not a least primitive rotation"));
            least.record(least_rotation(w) == *w, || format!("least_rotation({w})"));
        }
        counts.finish(&mut report, &format!("necklace-count/{k}-ary/len<={max_len}"));
        least.finish(&mut report, &format!("representatives/{k}-ary/len<={max_len}"));
    }
    Ok(report)
}

/// The periodicity lemmas over exhaustive small instances.
pub fn combinatorial_lemmas() -> Result<Report> {
    let mut report = Report::new("lemmas");
    root_is_period(&mut report)?;
    power_orbits(&mut report)?;
    overlap_sync(&mut report)?;
    prefix_suffix_sync(&mut report)?;
    period_gluing(&mut report)?;
    local_to_global(&mut report)?;
    localization(&mut report)?;
    Ok(report)
}

/// `|w| ≥ 2|root w|` forces `per(w) = |root w|`, and always
/// `per(w) ≤ |root w| ≤ |w|`.
fn root_is_period(report: &mut Report) -> Result<()> {
    for (k, max_len) in [(2u8, 14usize), (3, 14)] {
        let mut tally = Tally::default();
        let mut err = None;
        for len in 1..=max_len {
            each_word(k, len, |w| {
                let word = Word::from(w);
                let (p, r) = match (period(&word), root(&word)) {
                    (Ok(p), Ok(r)) => (p, r.len()),
                    (Err(e), _) | (_, Err(e)) => {
                        err.get_or_insert(e);
                        return;
                    }
                };
                let ok = p <= r && r <= len && (len < 2 * r || p == r);
                tally.record(ok, || format!("{}: per {p}, |root| {r}", show(w)));
            });
        }
        if let Some(e) = err {
            return Err(e);
        }
        tally.finish(report, &format!("root-equals-period/{k}-ary/len<={max_len}"));
    }
    Ok(())
}

/// Window equality of two bi-infinite powers over `|s| + |t| - 1` symbols
/// forces equal orbits; a shift fixes `t^Z` exactly at multiples of
/// `|root t|`.
fn power_orbits(report: &mut Report) -> Result<()> {
    let bases = words_up_to(2, 4);
    let mut sync = Tally::default();
    let mut fixes = Tally::default();
    for t in &bases {
        let wt = Word::from(t.as_slice());
        let r = oracles::root(t).len() as i64;
        for i in -6i64..=6 {
            let moved = power_window(t, i, 2 * t.len()) == power_window(t, 0, 2 * t.len());
            let got = shift_fixes_power(&wt, i)?;
            fixes.record(got == moved && got == (i % r == 0), || format!("shift {i} of {}", show(t)));
        }
        for s in &bases {
            let ws = Word::from(s.as_slice());
            let ell = t.len() + s.len() - 1;
            let lcm = t.len() * s.len();
            for i in -6i64..=6 {
                for j in -6i64..=6 {
                    let equal = power_window(t, i, ell) == power_window(s, j, ell);
                    let orbit = power_window(t, i, 4 * lcm) == power_window(s, j, 4 * lcm);
                    let got = power_window_sync(&wt, &ws, i, j, ell as i64)?;
                    let describe = || format!("t={} s={} i={i} j={j}", show(t), show(s));
                    match got {
                        Some(witness) => sync.record(
                            equal && orbit && oracles::occurs_in_power(witness.base.as_slice(), t)
                                && witness.base.len() == oracles::root(t).len(),
                            describe,
                        ),
                        None => sync.record(!equal, describe),
                    }
                }
            }
        }
    }
    sync.finish(report, "power-window-sync/len<=4/shifts<=6");
    fixes.finish(report, "shift-fixes-power/len<=4/shifts<=6");
    Ok(())
}

/// `uv` in `t^inf` and `vw` in `s^inf` with a long enough overlap `v`
/// place `uvw` in both; shorter overlaps report the direct check.
fn overlap_sync(report: &mut Report) -> Result<()> {
    let bases = words_up_to(2, 3);
    let mut long = Tally::default();
    let mut short = Tally::default();
    for t in &bases {
        for s in &bases {
            let threshold = t.len() + s.len() - 1;
            for lv in 1..=threshold + 1 {
                for i in 0..t.len() as i64 {
                    let v = power_window(t, i, lv);
                    for j in (0..s.len() as i64).filter(|&j| power_window(s, j, lv) == v) {
                        for lu in 0..=3 {
                            let u = power_window(t, i - lu as i64, lu);
                            for lw in 0..=3 {
                                let w = power_window(s, j + lv as i64, lw);
                                let uvw = [u.as_slice(), &v, &w].concat();
                                let both = oracles::occurs_in_power(&uvw, t) && oracles::occurs_in_power(&uvw, s);
                                let got = overlap_synchronize(
                                    &Word::from(u.as_slice()),
                                    &Word::from(v.as_slice()),
                                    &Word::from(w.as_slice()),
                                    &Word::from(t.as_slice()),
                                    &Word::from(s.as_slice()),
                                );
                                let describe = || {
                                    format!("u={} v={} w={} t={} s={}: {got:?}", show(&u), show(&v), show(&w), show(t), show(s))
                                };
                                if lv >= threshold {
                                    long.record(got == Ok(true) && both, describe);
                                } else {
                                    short.record(got == Ok(both), describe);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    long.finish(report, "overlap-sync/long-overlap");
    short.finish(report, "overlap-sync/short-overlap");
    Ok(())
}

/// `uv` a prefix of `t^inf`, `vw` a suffix of a power of `t` and `|v| ≥ 2|t|`
/// make `uvw` a power of `root t`.
fn prefix_suffix_sync(report: &mut Report) -> Result<()> {
    let mut tally = Tally::default();
    for t in words_up_to(2, 4) {
        let r = root(&Word::from(t.as_slice()))?;
        let n = t.len();
        for lv in 2 * n..=2 * n + 3 {
            for lu in 0..=6 {
                let uv = power_window(&t, 0, lu + lv);
                let v = &uv[lu..];
                for lw in 0..=6 {
                    // vw is the suffix of t^m of length lv + lw, so it starts at -(lv + lw)
                    let vw = power_window(&t, -((lv + lw) as i64), lv + lw);
                    if &vw[..lv] != v {
                        continue;
                    }
                    let uvw = [&uv[..], &vw[lv..]].concat();
                    tally.record(oracles::is_power_of(&uvw, r.as_slice()), || {
                        format!("t={} |u|={lu} |v|={lv} |w|={lw}", show(&t))
                    });
                }
            }
        }
    }
    tally.finish(report, "prefix-suffix-sync/len<=4");
    Ok(())
}

/// `|v| ≥ per(uv) + per(vw)` gives `per(uvw) = per(uv) = per(vw)`.
fn period_gluing(report: &mut Report) -> Result<()> {
    let mut tally = Tally::default();
    let per = |x: &[Symbol]| if x.is_empty() { Ok(0) } else { period(&Word::from(x)) };
    for len in 1..=12 {
        let mut err = None;
        each_word(2, len, |x| {
            for a in 0..=len {
                for b in a..=len {
                    let (uv, vw, v) = (&x[..b], &x[a..], b - a);
                    let (puv, pvw) = match (per(uv), per(vw)) {
                        (Ok(p), Ok(q)) => (p, q),
                        (Err(e), _) | (_, Err(e)) => {
                            err.get_or_insert(e);
                            return;
                        }
                    };
                    if v == 0 || v < puv + pvw {
                        continue;
                    }
                    let p = oracles::period(x);
                    tally.record(p == puv && p == pvw, || format!("uvw={} |u|={a} |v|={v}", show(x)));
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    tally.finish(report, "period-gluing/len<=12");
    Ok(())
}

/// Local periodicity in bases from `V` over windows of length `2|V|`
/// transfers to the whole word.
fn local_to_global(report: &mut Report) -> Result<()> {
    let pool = words_up_to(2, 2);
    let mut accepted = Tally::default();
    let mut rejected = Tally::default();
    for mask in 1u32..(1 << pool.len()) {
        let bases: Vec<Vec<Symbol>> = (0..pool.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pool[i].clone())
            .collect();
        let words: Vec<Word> = bases.iter().map(|b| Word::from(b.as_slice())).collect();
        let size = bases.iter().map(Vec::len).max().expect("nonempty");
        let window = 2 * size;
        for len in window..=10 {
            each_word(2, len, |u| {
                let hypothesis = u
                    .windows(window)
                    .all(|f| bases.iter().any(|b| oracles::occurs_in_power(f, b)));
                let got = global_period_from_local(&Word::from(u), &words);
                let describe = |got: &Result<_>| format!("u={} V={words:?}: {got:?}", show(u));
                if hypothesis {
                    let ok = match &got {
                        Ok(cover) => {
                            oracles::period(u) <= size
                                && cover.period_bound == size
                                && cover.assignments.iter().all(|(pos, f, b)| {
                                    &u[*pos..*pos + window] == f.as_slice()
                                        && oracles::occurs_in_power(f.as_slice(), b.as_slice())
                                        && oracles::occurs_in_power(u, b.as_slice())
                                })
                        }
                        Err(_) => false,
                    };
                    accepted.record(ok, || describe(&got));
                } else {
                    let ok = matches!(got, Err(Error::HypothesisViolated { .. }));
                    rejected.record(ok, || describe(&got));
                }
            });
        }
    }
    accepted.finish(report, "local-to-global/hypothesis-holds");
    rejected.finish(report, "local-to-global/hypothesis-fails");
    Ok(())
}

/// Long factors inherit the period of the word; aperiodicity is witnessed
/// by a factor of length `2k`.
fn localization(report: &mut Report) -> Result<()> {
    let mut factors = Tally::default();
    let mut witnesses = Tally::default();
    for u in words_up_to(2, 12) {
        let p = oracles::period(&u);
        for a in 0..u.len() {
            for b in a + 2 * p..=u.len() {
                let t = &u[a..b];
                let got = period(&Word::from(t))?;
                factors.record(got == p, || format!("factor {} of {} has period {got}", show(t), show(&u)));
            }
        }
        let word = Word::from(u.as_slice());
        for k in 1..=7 {
            let got = aperiodicity_witness(&word, k);
            let describe = || format!("u={} k={k}: {got:?}", show(&u));
            let ok = match &got {
                Ok(None) => p <= k,
                Ok(Some((pos, t))) => {
                    p > k
                        && t.len() == 2 * k
                        && u.get(*pos..*pos + 2 * k) == Some(t.as_slice())
                        && oracles::period(t.as_slice()) > k
                }
                Err(Error::InvalidArgument(_)) => p > k && u.len() < 2 * k,
                Err(_) => false,
            };
            witnesses.record(ok, describe);
        }
    }
    factors.finish(report, "period-localization/len<=12");
    witnesses.finish(report, "aperiodicity-witness/len<=12");
    Ok(())
}
