use crate::error::{Error, Result};

pub const DEFAULT_GAP_SCALE: u64 = 10_000;

/// A scale `ε` such that every length is either `> Mε` or `≤ ε/d`.
///
/// With `d₀ = M·d` and `L` the largest length, the bands
/// `(L/d₀^(ℓ+1), L/d₀^ℓ]` for `ℓ = 1..=#lengths+1` cannot all be occupied,
/// and the least empty band `ℓ*` gives `ε = ⌊d·L / d₀^(ℓ*+1)⌋`.
pub fn gap_epsilon(lengths: &[u64], d: u64, scale: u64) -> Result<u64> {
    if d < 2 || scale < 2 {
        return Err(Error::invalid("d and the scale must be at least 2"));
    }
    let big = *lengths
        .iter()
        .max()
        .ok_or_else(|| Error::invalid("no lengths given"))? as u128;
    let d0 = scale as u128 * d as u128;
    let pow = |e: u32| d0.checked_pow(e);
    let in_band = |x: u128, band: u32| -> bool {
        // L/d₀^(band+1) < x ≤ L/d₀^band
        let inner = pow(band).map_or(false, |p| x.checked_mul(p).is_some_and(|v| v <= big));
        let outer = pow(band + 1).map_or(true, |p| x.checked_mul(p).map_or(true, |v| v > big));
        inner && outer
    };
    let band = (1..=lengths.len() as u32 + 1)
        .find(|&b| !lengths.iter().any(|&x| in_band(x as u128, b)))
        .expect("pigeonhole leaves a band empty");
    let eps = pow(band + 1).map_or(0, |p| d as u128 * big / p);
    if eps == 0 {
        return Err(Error::invalid(format!(
            "lengths too small: the empty band {band} gives ε = 0"
        )));
    }
    let eps = eps as u64;
    for &x in lengths {
        let x = x as u128;
        let far = x > scale as u128 * eps as u128;
        let near = x * d as u128 <= eps as u128;
        if !(far || near) {
            return Err(Error::internal(format!("length {x} falls inside the gap of ε = {eps}")));
        }
    }
    Ok(eps)
}
