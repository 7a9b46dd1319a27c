use crate::error::{Error, Result};
use crate::words::{root, Word};

/// Given occurrences `x_[p_j, p_j + ℓ_j) = y_[0, ℓ_j)` at pairwise distances
/// at most `ℓ_k / 2`, the common word `w` of which every `x_[p_i, p_j)` is a
/// power.
pub fn synchronize_occurrences(
    x: &Word,
    y: &Word,
    positions: &[usize],
    lengths: &[usize],
) -> Result<Word> {
    if positions.is_empty() || positions.len() != lengths.len() {
        return Err(Error::invalid("positions and lengths must be nonempty and of equal size"));
    }
    if lengths.contains(&0) {
        return Err(Error::invalid("occurrence lengths must be positive"));
    }
    let mut occ: Vec<(usize, usize)> = positions.iter().copied().zip(lengths.iter().copied()).collect();
    occ.sort_unstable();
    if occ.windows(2).any(|p| p[0].0 == p[1].0) {
        return Err(Error::invalid("positions must be distinct"));
    }
    for &(p, l) in &occ {
        if p + l > x.len() || l > y.len() || x.as_slice()[p..p + l] != y.as_slice()[..l] {
            return Err(Error::invalid(format!(
                "x does not read y_[0,{l}) at position {p}"
            )));
        }
    }
    let spread = occ.last().unwrap().0 - occ[0].0;
    let shortest = occ.iter().map(|o| o.1).min().unwrap();
    if 2 * spread > shortest {
        return Err(Error::invalid(format!(
            "positions spread over {spread}, more than half the shortest length {shortest}"
        )));
    }
    let (p0, l0) = occ[0];
    if occ.len() == 1 {
        return root(&x.factor(p0..p0 + l0));
    }
    let w = root(&x.factor(p0..occ[1].0))?;
    let q = w.len();
    let follows_w = |from: usize, to: usize| (from..to).all(|t| x[t] == w[(t - from) % q]);
    for (i, &(pi, li)) in occ.iter().enumerate() {
        for &(pj, lj) in &occ[i + 1..] {
            let power = (pj - pi) % q == 0 && follows_w(pi, pj);
            if !power || !follows_w(pi, pj + li.min(lj)) {
                return Err(Error::internal(format!(
                    "occurrences at {pi} and {pj} do not synchronize on {w}"
                )));
            }
        }
    }
    Ok(w)
}
