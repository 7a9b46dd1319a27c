use crate::error::{Error, Result};
use crate::words::{is_primitive, least_rotation, period, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionTag {
    /// `uu'` is the central window of a short periodic orbit.
    A,
    /// `uu'` avoids every such window.
    B,
}

/// `w = v·u·u'·v'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub v: Word,
    pub u: Word,
    pub u2: Word,
    pub v2: Word,
    pub tag: DecompositionTag,
    pub eps: usize,
    /// The Lyndon base `s` of the periodic window, for tag A.
    pub base: Option<Word>,
}

impl Decomposition {
    /// `|v·u|`, the quantity being minimized.
    pub fn split(&self) -> usize {
        self.v.len() + self.u.len()
    }
}

/// The Lyndon word `s` with `|s| ≤ eps` and `window = s^Z_[-half, half)`,
/// where `half = |window| / 2`, if there is one.
pub(crate) fn periodic_base(window: &[u8], eps: usize) -> Option<Word> {
    let w = Word::from(window);
    let p = period(&w).ok()?;
    if p > eps {
        return None;
    }
    // position 0 of the orbit sits at index half of the window
    let half = window.len() / 2;
    let s = Word::from(&window[half..half + p]);
    (is_primitive(&s) && least_rotation(&s) == s).then_some(s)
}

/// Splits `w` with `|w| ≥ 1000ε` as `v·u·u'·v'`, minimizing `|v·u|`, then
/// preferring tag A, then the least `u`.
pub fn decompose_special(w: &Word, eps: usize) -> Result<Decomposition> {
    let n = w.len();
    if eps == 0 || n < 1000 * eps {
        return Err(Error::invalid(format!(
            "word of length {n} is shorter than 1000ε = {}",
            1000 * eps
        )));
    }
    let lo = (n - 1000 * eps).div_ceil(2);
    let floor_v = (n - 1000 * eps) / 2;
    let window = 198 * eps;
    let x = w.as_slice();

    let first_a = (lo..=n - window - lo)
        .find_map(|a| periodic_base(&x[a..a + window], eps).map(|s| (a, s)));
    let b_valid = (floor_v..=floor_v + 1000 * eps - window)
        .all(|a| periodic_base(&x[a..a + window], eps).is_none());

    let tag_a = |a: usize, s: Word| Decomposition {
        v: w.factor(0..a),
        u: w.factor(a..a + 99 * eps),
        u2: w.factor(a + 99 * eps..a + window),
        v2: w.factor(a + window..n),
        tag: DecompositionTag::A,
        eps,
        base: Some(s),
    };
    let tag_b = || Decomposition {
        v: w.factor(0..floor_v),
        u: w.factor(floor_v..floor_v + 500 * eps),
        u2: w.factor(floor_v + 500 * eps..floor_v + 1000 * eps),
        v2: w.factor(floor_v + 1000 * eps..n),
        tag: DecompositionTag::B,
        eps,
        base: None,
    };
    match (first_a, b_valid) {
        (Some((a, _)), true) if a + 99 * eps > floor_v + 500 * eps => Ok(tag_b()),
        (Some((a, s)), _) => Ok(tag_a(a, s)),
        (None, true) => Ok(tag_b()),
        (None, false) => Err(Error::hypothesis(
            "a periodic window starts at ⌊(n-1000ε)/2⌋ but no window start is allowed there",
            format!("n = {n}, ε = {eps}"),
        )),
    }
}
