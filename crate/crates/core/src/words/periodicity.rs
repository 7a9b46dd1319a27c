use std::collections::BTreeMap;

use super::{find_slice, PowerWindow, Symbol, Word};
use crate::error::{Error, Result};

/// Classical border table: `f[i]` is the length of the longest proper border
/// of `w[..=i]`.
pub fn failure_function(w: &[Symbol]) -> Vec<usize> {
    let mut f = vec![0; w.len()];
    let mut b = 0;
    for i in 1..w.len() {
        while b > 0 && w[i] != w[b] {
            b = f[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        f[i] = b;
    }
    f
}

fn nonempty(w: &Word, what: &str) -> Result<()> {
    if w.is_empty() {
        Err(Error::invalid(format!("{what} must be nonempty")))
    } else {
        Ok(())
    }
}

/// Least `p` such that `w` occurs in a power of a word of length `p`.
pub fn period(w: &Word) -> Result<usize> {
    nonempty(w, "word")?;
    let f = failure_function(w.as_slice());
    Ok(w.len() - f[w.len() - 1])
}

/// Shortest prefix `u` with `w = u^k`.
pub fn root(w: &Word) -> Result<Word> {
    let p = period(w)?;
    if w.len() % p == 0 {
        Ok(w.prefix(p))
    } else {
        Ok(w.clone())
    }
}

pub fn is_primitive(w: &Word) -> bool {
    match period(w) {
        Ok(p) => p == w.len() || w.len() % p != 0,
        Err(_) => false,
    }
}

/// Whether `w` is a factor of `u^n` for some `n`. The empty word occurs everywhere.
pub fn occurs_in_power(w: &[Symbol], u: &[Symbol]) -> bool {
    if w.is_empty() {
        return true;
    }
    if u.is_empty() {
        return false;
    }
    let reps = w.len().div_ceil(u.len()) + 1;
    find_slice(&u.repeat(reps), w).is_some()
}

pub fn is_periodic_by(w: &Word, u: &Word) -> Result<bool> {
    nonempty(w, "word")?;
    nonempty(u, "base")?;
    Ok(occurs_in_power(w.as_slice(), u.as_slice()))
}

/// `u` and `v` are conjugate (`ur = rv` for some `r`), i.e. rotations of each other.
pub fn are_conjugate(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && u.concat(u).contains_factor(v.as_slice())
}

fn is_prefix_of_power(w: &Word, u: &Word) -> bool {
    w.iter().enumerate().all(|(i, &s)| s == u[i % u.len()])
}

/// Common root of `u` and `v` given a shared prefix `w` of `u^inf` and `v^inf`.
///
/// When `|w| >= |u| + |v| - 1` a common root always exists. Below that bound
/// the answer is decided directly, so the sharpness boundary can be probed.
pub fn fine_wilf(u: &Word, v: &Word, w: &Word) -> Result<Option<Word>> {
    nonempty(u, "u")?;
    nonempty(v, "v")?;
    if !is_prefix_of_power(w, u) || !is_prefix_of_power(w, v) {
        return Err(Error::invalid(format!(
            "{w} is not a common prefix of {u}^inf and {v}^inf"
        )));
    }
    let ru = root(u)?;
    let rv = root(v)?;
    if w.len() + 1 >= u.len() + v.len() {
        if ru != rv {
            return Err(Error::internal(format!(
                "periodicity bound met but roots {ru} and {rv} differ"
            )));
        }
        return Ok(Some(ru));
    }
    Ok((ru == rv).then_some(ru))
}

/// Whether `S^i t^Z = t^Z`.
pub fn shift_fixes_power(t: &Word, i: i64) -> Result<bool> {
    let r = root(t)?;
    Ok(i.rem_euclid(r.len() as i64) == 0)
}

/// Certificate that `S^i t^Z = base^Z = S^j s^Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub base: Word,
}

/// Compares `t^Z_[i, i+len)` with `s^Z_[j, j+len)`; when they agree and the
/// orbits coincide, returns the common shifted base.
pub fn power_window_sync(
    t: &Word,
    s: &Word,
    i: i64,
    j: i64,
    len: i64,
) -> Result<Option<OrbitWitness>> {
    if len < 0 {
        return Err(Error::invalid(format!("window length {len} is negative")));
    }
    let tw = PowerWindow::new(t.clone(), i, i + len)?.materialize()?;
    let sw = PowerWindow::new(s.clone(), j, j + len)?.materialize()?;
    if tw != sw {
        return Ok(None);
    }
    let t0 = PowerWindow::new(t.clone(), i, i + t.len() as i64)?.materialize()?;
    let s0 = PowerWindow::new(s.clone(), j, j + s.len() as i64)?.materialize()?;
    let rt = root(&t0)?;
    let rs = root(&s0)?;
    if rt == rs {
        Ok(Some(OrbitWitness { base: rt }))
    } else if len as usize + 1 >= t.len() + s.len() {
        Err(Error::internal(format!(
            "windows of length {len} agree but orbits of {t} and {s} differ"
        )))
    } else {
        Ok(None)
    }
}

/// If `uv` occurs in `t^inf` and `vw` in `s^inf`, decides whether `uvw`
/// occurs in both. With `|v| >= |t| + |s| - 1` the answer is always yes.
pub fn overlap_synchronize(u: &Word, v: &Word, w: &Word, t: &Word, s: &Word) -> Result<bool> {
    nonempty(t, "t")?;
    nonempty(s, "s")?;
    let uv = u.concat(v);
    let vw = v.concat(w);
    if !occurs_in_power(uv.as_slice(), t.as_slice()) {
        return Err(Error::invalid(format!("{uv} does not occur in {t}^inf")));
    }
    if !occurs_in_power(vw.as_slice(), s.as_slice()) {
        return Err(Error::invalid(format!("{vw} does not occur in {s}^inf")));
    }
    let uvw = uv.concat(w);
    let both = occurs_in_power(uvw.as_slice(), t.as_slice())
        && occurs_in_power(uvw.as_slice(), s.as_slice());
    if v.len() + 1 >= t.len() + s.len() && !both {
        return Err(Error::internal(format!(
            "{uvw} fails to synchronize in {t}^inf and {s}^inf"
        )));
    }
    Ok(both)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPeriodCover {
    /// `(first position, factor, chosen base)` for each distinct factor of
    /// length `2 * max |V|`.
    pub assignments: Vec<(usize, Word, Word)>,
    /// `max |V|`, an upper bound for `per(u)`.
    pub period_bound: usize,
}

/// Transfers local periodicity to a global one: if every factor of `u` of
/// length `2|V|` lies in `w^Z` for some `w` in `V`, then `u` itself lies in
/// each such `w^Z`.
pub fn global_period_from_local(u: &Word, bases: &[Word]) -> Result<LocalPeriodCover> {
    if bases.is_empty() || bases.iter().any(Word::is_empty) {
        return Err(Error::invalid("base set must be a nonempty set of nonempty words"));
    }
    let mut sorted: Vec<&Word> = bases.iter().collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let max_len = sorted.iter().map(|w| w.len()).max().unwrap_or(0);
    let window = 2 * max_len;
    if u.len() < window {
        return Err(Error::invalid(format!(
            "|u| = {} is shorter than 2|V| = {window}",
            u.len()
        )));
    }

    let mut chosen: BTreeMap<Word, (usize, Word)> = BTreeMap::new();
    for pos in 0..=u.len() - window {
        let f = u.factor(pos..pos + window);
        if chosen.contains_key(&f) {
            continue;
        }
        let base = sorted
            .iter()
            .find(|b| occurs_in_power(f.as_slice(), b.as_slice()))
            .ok_or_else(|| {
                Error::hypothesis(
                    format!("factor at position {pos} occurs in no w^Z with w in V"),
                    &f,
                )
            })?;
        chosen.insert(f, (pos, (*base).clone()));
    }

    for (_, base) in chosen.values() {
        if !occurs_in_power(u.as_slice(), base.as_slice()) {
            return Err(Error::internal(format!("{u} does not occur in {base}^Z")));
        }
    }
    let bound = max_len;
    if period(u)? > bound {
        return Err(Error::internal(format!("per({u}) exceeds {bound}")));
    }
    let mut assignments: Vec<(usize, Word, Word)> = chosen
        .into_iter()
        .map(|(f, (pos, base))| (pos, f, base))
        .collect();
    assignments.sort_by_key(|a| a.0);
    Ok(LocalPeriodCover {
        assignments,
        period_bound: bound,
    })
}

/// A factor `t` of `u` with `|t| = 2k` and `per(t) > k`, when `per(u) > k`.
pub fn aperiodicity_witness(u: &Word, k: usize) -> Result<Option<(usize, Word)>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let p = period(u)?;
    if p <= k {
        return Ok(None);
    }
    if u.len() < 2 * k {
        return Err(Error::invalid(format!(
            "|u| = {} < 2k = {} while per(u) = {p} > k",
            u.len(),
            2 * k
        )));
    }
    for pos in 0..=u.len() - 2 * k {
        let t = u.factor(pos..pos + 2 * k);
        if period(&t)? > k {
            return Ok(Some((pos, t)));
        }
    }
    Err(Error::internal(format!(
        "no aperiodic factor of length {} in {u}",
        2 * k
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(s)
    }

    fn brute_period(w: &Word) -> usize {
        (1..=w.len())
            .find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
            .unwrap()
    }

    #[test]
    fn root_examples() {
        assert_eq!(root(&w("abab")).unwrap(), w("ab"));
        assert_eq!(root(&w("aab")).unwrap(), w("aab"));
        assert_eq!(root(&w("aaaaaa")).unwrap(), w("a"));
        assert!(matches!(root(&Word::empty()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn period_examples() {
        for (s, expected) in [("aba", 2), ("aabaa", 3), ("abcd", 4)] {
            assert_eq!(brute_period(&w(s)), expected);
            assert_eq!(period(&w(s)).unwrap(), expected);
        }
        assert!(period(&Word::empty()).is_err());
    }

    #[test]
    fn periodic_by_examples() {
        assert!(is_periodic_by(&w("baba"), &w("ab")).unwrap());
        assert!(!is_periodic_by(&w("aab"), &w("ab")).unwrap());
        assert!(is_periodic_by(&w("ab"), &w("abab")).unwrap());
        assert!(is_periodic_by(&Word::empty(), &w("ab")).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        assert!(are_conjugate(&w("ab"), &w("ba")));
        assert!(are_conjugate(&w("aab"), &w("aba")));
        assert!(!are_conjugate(&w("aab"), &w("abb")));
    }

    #[test]
    fn fine_wilf_examples() {
        assert_eq!(fine_wilf(&w("ab"), &w("abab"), &w("ababa")).unwrap(), Some(w("ab")));
        assert_eq!(fine_wilf(&w("a"), &w("a"), &w("a")).unwrap(), Some(w("a")));
        assert_eq!(fine_wilf(&w("ab"), &w("aba"), &w("aba")).unwrap(), None);
        assert!(fine_wilf(&w("ab"), &w("ba"), &w("a")).is_err());
    }

    #[test]
    fn shift_examples() {
        assert!(shift_fixes_power(&w("abab"), 2).unwrap());
        assert!(!shift_fixes_power(&w("ab"), 1).unwrap());
        assert!(shift_fixes_power(&w("aba"), 3).unwrap());
        assert!(shift_fixes_power(&w("ab"), -4).unwrap());
    }

    #[test]
    fn window_sync_examples() {
        let wit = power_window_sync(&w("ab"), &w("ba"), 0, 1, 4).unwrap();
        assert_eq!(wit, Some(OrbitWitness { base: w("ab") }));
        assert!(power_window_sync(&w("ab"), &w("ab"), 0, 0, 0).unwrap().is_some());
        assert_eq!(power_window_sync(&w("ab"), &w("aa"), 0, 0, 3).unwrap(), None);
        assert!(power_window_sync(&w("ab"), &w("aa"), 0, 0, -1).is_err());
    }

    #[test]
    fn overlap_examples() {
        assert!(overlap_synchronize(&w("a"), &w("bab"), &w("a"), &w("ab"), &w("ba")).unwrap());
        assert!(overlap_synchronize(&w(""), &w("ab"), &w(""), &w("ab"), &w("ab")).unwrap());
        assert!(overlap_synchronize(&w("a"), &w("b"), &w("a"), &w("ab"), &w("ba")).unwrap());
        // below the bound the direct check may fail
        assert!(!overlap_synchronize(&w("a"), &w("b"), &w("b"), &w("ab"), &w("b")).unwrap());
        assert!(overlap_synchronize(&w("aa"), &w("b"), &w(""), &w("ab"), &w("b")).is_err());
    }

    #[test]
    fn local_to_global_examples() {
        let c = global_period_from_local(&w("ababab"), &[w("ab")]).unwrap();
        assert_eq!(c.period_bound, 2);
        assert!(c.assignments.iter().all(|(_, _, b)| *b == w("ab")));
        let c = global_period_from_local(&w("abab"), &[w("ba")]).unwrap();
        assert_eq!(c.period_bound, 2);
        match global_period_from_local(&w("aabb"), &[w("ab")]) {
            Err(Error::HypothesisViolated { witness, .. }) => assert_eq!(witness, "0011"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn aperiodicity_examples() {
        assert_eq!(aperiodicity_witness(&w("aabb"), 1).unwrap(), Some((1, w("ab"))));
        assert_eq!(aperiodicity_witness(&w("abab"), 2).unwrap(), None);
        assert_eq!(aperiodicity_witness(&w("aaab"), 1).unwrap(), Some((2, w("ab"))));
        assert!(aperiodicity_witness(&w("abc"), 2).is_err());
        assert!(aperiodicity_witness(&w("ab"), 0).is_err());
    }
}
