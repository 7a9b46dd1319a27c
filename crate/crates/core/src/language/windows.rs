use crate::words::Symbol;

/// Distinct length-`n` factors of the given texts, in lexicographic order,
/// each reported once as `(text index, offset)` of some occurrence.
pub(crate) fn distinct_windows(texts: &[&[Symbol]], n: usize) -> Vec<(usize, usize)> {
    assert!(n >= 1, "window length must be positive");
    let total: usize = texts.iter().map(|t| t.len() + 1).sum();
    if n <= 16 {
        return distinct_short(texts, n);
    }

    // Concatenate with unique separators above every symbol. Rank 0 stands
    // for positions past the end.
    let mut text: Vec<u32> = Vec::with_capacity(total);
    let mut origin: Vec<(usize, usize)> = Vec::new();
    for (ti, t) in texts.iter().enumerate() {
        for (off, &s) in t.iter().enumerate() {
            if off + n <= t.len() {
                origin.push((ti, off));
            }
            text.push(s as u32 + 1);
        }
        text.push(257 + ti as u32);
    }
    let starts: Vec<usize> = {
        let mut acc = Vec::with_capacity(texts.len());
        let mut pos = 0;
        for t in texts {
            acc.push(pos);
            pos += t.len() + 1;
        }
        acc
    };
    let m = text.len();
    let mut rank = text;
    let mut keyed: Vec<(u64, u32)> = Vec::with_capacity(m);
    let mut span = 1;
    while span * 2 <= n {
        keyed.clear();
        keyed.extend((0..m).map(|i| {
            let hi = rank[i] as u64;
            let lo = if i + span < m { rank[i + span] as u64 } else { 0 };
            ((hi << 32) | lo, i as u32)
        }));
        keyed.sort_unstable();
        let mut next = vec![0u32; m];
        let mut r = 0u32;
        let mut prev = u64::MAX;
        for &(k, i) in &keyed {
            if k != prev {
                r += 1;
                prev = k;
            }
            next[i as usize] = r;
        }
        rank = next;
        span *= 2;
    }

    // Two overlapping windows of length `span` determine a window of length n.
    let shift = n - span;
    let mut cands: Vec<(u64, usize, usize)> = origin
        .into_iter()
        .map(|(ti, off)| {
            let i = starts[ti] + off;
            (((rank[i] as u64) << 32) | rank[i + shift] as u64, ti, off)
        })
        .collect();
    cands.sort_unstable();
    cands.dedup_by_key(|c| c.0);
    cands.into_iter().map(|(_, ti, off)| (ti, off)).collect()
}

fn distinct_short(texts: &[&[Symbol]], n: usize) -> Vec<(usize, usize)> {
    let mut cands: Vec<(u128, usize, usize)> = Vec::new();
    for (ti, t) in texts.iter().enumerate() {
        if t.len() < n {
            continue;
        }
        for off in 0..=t.len() - n {
            let key = t[off..off + n]
                .iter()
                .fold(0u128, |acc, &s| (acc << 8) | s as u128);
            cands.push((key, ti, off));
        }
    }
    cands.sort_unstable();
    cands.dedup_by_key(|c| c.0);
    cands.into_iter().map(|(_, ti, off)| (ti, off)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(texts: &[&[Symbol]], n: usize) -> Vec<Vec<Symbol>> {
        let mut set = BTreeSet::new();
        for t in texts {
            if t.len() >= n {
                for w in t.windows(n) {
                    set.insert(w.to_vec());
                }
            }
        }
        set.into_iter().collect()
    }

    #[test]
    fn agrees_with_set_oracle() {
        let mut seed = 7u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for round in 0..40 {
            let k = 2 + round % 3;
            let texts: Vec<Vec<Symbol>> = (0..1 + round % 4)
                .map(|_| {
                    let len = (next() % 120) as usize;
                    (0..len).map(|_| (next() % k as u64) as Symbol).collect()
                })
                .collect();
            let refs: Vec<&[Symbol]> = texts.iter().map(|t| t.as_slice()).collect();
            for n in [1, 3, 16, 17, 20, 33, 64] {
                let got: Vec<Vec<Symbol>> = distinct_windows(&refs, n)
                    .into_iter()
                    .map(|(ti, off)| refs[ti][off..off + n].to_vec())
                    .collect();
                assert_eq!(got, brute(&refs, n), "round {round} n {n}");
            }
        }
    }

    #[test]
    fn periodic_text() {
        let t: Vec<Symbol> = [0, 1].repeat(100);
        let got = distinct_windows(&[&t], 50);
        assert_eq!(got.len(), 2);
    }
}
