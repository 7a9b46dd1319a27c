use crate::error::{Error, Result};

/// Largest number of tuples `enumerate_p` will produce.
pub const P_BUDGET: u128 = 1_000_000;

/// Integer range of `p` with `p·n₀ ∈ [8^j n, 2·8^j n)`.
fn p_range(n: u64, n0: u64, j: u32) -> std::ops::Range<u64> {
    let low = 8u64.pow(j) * n;
    low.div_ceil(n0)..(2 * low).div_ceil(n0)
}

/// All `(p_1, …, p_ℓ)` with `p_j n₀ ∈ [8^j n, 2·8^j n)`, in lexicographic order.
pub fn enumerate_p(n: u64, n0: u64, ell: usize) -> Result<Vec<Vec<u64>>> {
    if n == 0 || n0 == 0 || ell == 0 {
        return Err(Error::invalid("n, n0 and ℓ must be positive"));
    }
    let ranges: Vec<_> = (1..=ell as u32).map(|j| p_range(n, n0, j)).collect();
    let size = ranges
        .iter()
        .map(|r| (r.end - r.start) as u128)
        .try_fold(1u128, |acc, s| acc.checked_mul(s))
        .unwrap_or(u128::MAX);
    if size > P_BUDGET {
        return Err(Error::resource(format!("#P = {size} exceeds {P_BUDGET}")));
    }
    let mut out = vec![Vec::new()];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                r.clone().map(move |p| {
                    let mut t = prefix.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Whether every entry is a non-negative integer combination of some set of
/// at most `d` integers in `[n/d, dn)`.
///
/// Exhaustive over candidate sets, so restricted to `d ≤ 3` and intervals
/// with at most 64 integers.
pub fn is_in_k(tuple: &[u64], n: u64, d: u64) -> Result<bool> {
    if d == 0 || n == 0 {
        return Err(Error::invalid("n and d must be positive"));
    }
    let lo = n.div_ceil(d);
    let hi = d * n;
    let width = hi.saturating_sub(lo);
    if d > 3 || width > 64 {
        return Err(Error::resource(format!(
            "set search over {width} integers with d = {d} is beyond the micro scale"
        )));
    }
    let target = tuple.iter().copied().max().unwrap_or(0) as usize;
    let candidates: Vec<u64> = (lo..hi).collect();
    let mut chosen = Vec::new();
    Ok(search(&candidates, 0, d as usize, &mut chosen, tuple, target))
}

fn search(candidates: &[u64], from: usize, room: usize, chosen: &mut Vec<u64>, tuple: &[u64], target: usize) -> bool {
    if !chosen.is_empty() && representable(chosen, tuple, target) {
        return true;
    }
    if room == 0 {
        return false;
    }
    for i in from..candidates.len() {
        chosen.push(candidates[i]);
        let found = search(candidates, i + 1, room - 1, chosen, tuple, target);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}

fn representable(coins: &[u64], tuple: &[u64], target: usize) -> bool {
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for s in 1..=target {
        reach[s] = coins.iter().any(|&c| c as usize <= s && reach[s - c as usize]);
    }
    tuple.iter().all(|&k| reach[k as usize])
}

/// The first tuple of `P(n, n₀, ℓ)` outside `K(n, d, ℓ)`, if any.
pub fn sample_p_minus_k(n: u64, n0: u64, d: u64, ell: usize) -> Result<Option<Vec<u64>>> {
    for tuple in enumerate_p(n, n0, ell)? {
        if !is_in_k(&tuple, n, d)? {
            return Ok(Some(tuple));
        }
    }
    Ok(None)
}
