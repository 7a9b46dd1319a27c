//! Codings `(Y, σ)` of a subshift: factorizations and cut positions,
//! recognizability radii, return words to clopen sets and the codings built
//! from them.
//!
//! Everything acts on finite windows. A window of radius `d` is
//! `x_[-d, d)`, stored as a word of length `2d` whose index `d` is position 0.

mod clopen;

pub use clopen::{
    clopen_coding, clopen_coding_on, return_words, special_coding, special_coding_on,
    ClopenCoding, ClopenSet, DerivedLanguage, ReturnWords, SpecialCoding,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::language::{CodedLanguage, LanguageProvider};
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::{Symbol, Word};

/// `x = S^k σ(y)` seen through a finite window `y_[0, |window|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    k: usize,
    window: Word,
    lengths: Vec<usize>,
}

impl Factorization {
    pub fn new(sigma: &Morphism, k: usize, window: Word) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::invalid("factorization window must be nonempty"));
        }
        let lengths = window
            .iter()
            .map(|&a| sigma.image(a).map(Word::len))
            .collect::<Result<Vec<_>>>()?;
        if k >= lengths[0] {
            return Err(Error::invalid(format!(
                "offset {k} is not below |σ(y_0)| = {}",
                lengths[0]
            )));
        }
        Ok(Factorization { k, window, lengths })
    }

    pub fn offset(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> &Word {
        &self.window
    }

    /// `c_j = -k + |σ(y_[0,j))|` for `0 ≤ j ≤ |window|`.
    pub fn cut(&self, j: usize) -> Result<i64> {
        if j > self.lengths.len() {
            return Err(Error::invalid(format!(
                "cut index {j} outside 0..={}",
                self.lengths.len()
            )));
        }
        Ok(self.lengths[..j].iter().sum::<usize>() as i64 - self.k as i64)
    }

    pub fn cuts(&self) -> Vec<i64> {
        let mut acc = -(self.k as i64);
        let mut out = vec![acc];
        for &l in &self.lengths {
            acc += l as i64;
            out.push(acc);
        }
        out
    }
}

pub fn cut_function(f: &Factorization, j: usize) -> Result<i64> {
    f.cut(j)
}

/// A morphism together with the language of the subshift it codes from.
#[derive(Clone)]
pub struct Coding {
    sigma: Morphism,
    upper: Arc<dyn LanguageProvider>,
    radius: Option<usize>,
}

impl fmt::Debug for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coding")
            .field("sigma", &self.sigma)
            .field("radius", &self.radius)
            .finish()
    }
}

impl Coding {
    pub fn new(sigma: Morphism, upper: Arc<dyn LanguageProvider>) -> Result<Self> {
        if upper.alphabet() != sigma.source() {
            return Err(Error::invalid(
                "morphism source differs from the upper language alphabet",
            ));
        }
        Ok(Coding {
            sigma,
            upper,
            radius: None,
        })
    }

    pub fn identity(lang: Arc<dyn LanguageProvider>) -> Self {
        Coding {
            sigma: Morphism::identity(lang.alphabet()),
            upper: lang,
            radius: None,
        }
    }

    pub fn sigma(&self) -> &Morphism {
        &self.sigma
    }

    pub fn upper(&self) -> &Arc<dyn LanguageProvider> {
        &self.upper
    }

    /// Recognizability radius, set only after a successful search.
    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    /// The coded subshift `X = ∪ S^k σ(Y)`.
    pub fn lower(&self) -> CodedLanguage {
        CodedLanguage::new(Arc::clone(&self.upper), self.sigma.clone()).expect("checked alphabets")
    }

    /// Searches radii up to `d_max` and records the least one found.
    pub fn with_radius_search(mut self, d_max: usize) -> Result<Self> {
        self.radius = recognizability_radius(&self, d_max)?;
        Ok(self)
    }

    /// Half-width, in upper letters, of the upper words whose images cover
    /// every radius-`d` window around a point of `σ(y_0)`.
    fn half_span(&self, d: usize) -> usize {
        d.div_ceil(self.sigma.min_len())
    }

    /// Calls `f(window, k, y_0)` for every radius-`d` window of the coded
    /// subshift and every factorization that produces it.
    fn for_each_anchored(&self, d: usize, mut f: impl FnMut(&[Symbol], usize, Symbol)) -> Result<()> {
        let h = self.half_span(d);
        let q = 2 * h + 1;
        let table = self.upper.table(q)?;
        let mut image = Vec::new();
        table.for_each_word(q, |v| {
            image.clear();
            let mut center = 0;
            for (i, &a) in v.iter().enumerate() {
                if i == h {
                    center = image.len();
                }
                image.extend_from_slice(self.sigma.image(a).expect("upper letter").as_slice());
            }
            let y0 = v[h];
            for k in 0..self.sigma.image(y0).expect("upper letter").len() {
                let zero = center + k;
                f(&image[zero - d..zero + d], k, y0);
            }
        })
    }
}

/// Every radius-`d` window mapped to the sorted set of `(k, y_0)` that
/// produce it.
#[derive(Clone, Debug, Default)]
pub struct WindowMap {
    radius: usize,
    entries: HashMap<Vec<Symbol>, Vec<(usize, Symbol)>>,
}

impl WindowMap {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, window: &[Symbol]) -> Option<&[(usize, Symbol)]> {
        self.entries.get(window).map(Vec::as_slice)
    }

    /// The lexicographically least window with more than one factorization.
    pub fn first_ambiguity(&self) -> Option<(Word, Vec<(usize, Symbol)>)> {
        self.entries
            .iter()
            .filter(|(_, pairs)| pairs.len() > 1)
            .min_by(|a, b| a.0.cmp(b.0))
            .map(|(w, pairs)| (Word::from(w.as_slice()), pairs.clone()))
    }

    pub fn is_single_valued(&self) -> bool {
        self.entries.values().all(|p| p.len() == 1)
    }
}

pub fn factorization_map(coding: &Coding, d: usize) -> Result<WindowMap> {
    if d == 0 {
        return Err(Error::invalid("radius must be at least 1"));
    }
    let mut entries: HashMap<Vec<Symbol>, Vec<(usize, Symbol)>> = HashMap::new();
    coding.for_each_anchored(d, |window, k, y0| {
        let pairs = entries.entry(window.to_vec()).or_default();
        if let Err(at) = pairs.binary_search(&(k, y0)) {
            pairs.insert(at, (k, y0));
        }
    })?;
    Ok(WindowMap { radius: d, entries })
}

/// All `(k, y_0)` compatible with the radius-`d` window `w = x_[-d, d)`.
pub fn window_factorizations(coding: &Coding, w: &Word, d: usize) -> Result<Vec<(usize, Symbol)>> {
    if d == 0 || w.len() != 2 * d {
        return Err(Error::invalid(format!(
            "window of length {} does not have radius {d}",
            w.len()
        )));
    }
    let mut out = Vec::new();
    coding.for_each_anchored(d, |window, k, y0| {
        if window == w.as_slice() {
            out.push((k, y0));
        }
    })?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Least `d ≤ d_max` at which every window has a single factorization.
///
/// Single-valuedness is monotone in `d` (a wider window's pairs are a subset
/// of those of its central sub-window), so the search doubles and then
/// bisects.
pub fn recognizability_radius(coding: &Coding, d_max: usize) -> Result<Option<usize>> {
    if d_max == 0 {
        return Err(Error::invalid("d_max must be at least 1"));
    }
    let ok = |d: usize| factorization_map(coding, d).map(|m| m.is_single_valued());
    let mut lo = 0;
    let mut hi = 1;
    loop {
        if ok(hi)? {
            break;
        }
        if hi == d_max {
            return Ok(None);
        }
        lo = hi;
        hi = (2 * hi).min(d_max);
    }
    // invariant: lo fails (or is 0), hi passes
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionVerdict {
    /// Composed radius found exactly when both factor radii were found.
    Consistent,
    /// One side found within `d_max` and the other not; a larger search may
    /// settle it.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionCheck {
    /// Radius of `(Z, τ∘σ)`.
    pub composed: Option<usize>,
    /// Radius of `(Z, σ)`.
    pub inner: Option<usize>,
    /// Radius of `(Y, τ)` with `Y` the subshift coded by `σ`.
    pub outer: Option<usize>,
    pub d_max: usize,
    pub verdict: CompositionVerdict,
}

impl CompositionCheck {
    pub fn report(&self) -> Report {
        let show = |r: Option<usize>| r.map_or_else(|| format!(">{}", self.d_max), |d| d.to_string());
        let mut report = Report::new("composition");
        let both = self.inner.is_some() && self.outer.is_some();
        report.check(
            "factors-imply-composed",
            !both || self.composed.is_some(),
            format!("inner={} outer={}", show(self.inner), show(self.outer)),
        );
        report.check(
            "composed-implies-factors",
            self.composed.is_none() || both,
            format!("composed={}", show(self.composed)),
        );
        if self.verdict == CompositionVerdict::Undecided {
            report.note(format!("undecided within d_max = {}", self.d_max));
        }
        report
    }
}

/// Compares recognizability of `(Z, τ∘σ)` with that of `(Z, σ)` and `(Y, τ)`.
pub fn composition_recognizability_check(
    sigma: &Morphism,
    tau: &Morphism,
    z: Arc<dyn LanguageProvider>,
    d_max: usize,
) -> Result<CompositionCheck> {
    let composed = tau.compose(sigma)?;
    let inner = Coding::new(sigma.clone(), Arc::clone(&z))?;
    let y: Arc<dyn LanguageProvider> = Arc::new(inner.lower());
    let outer = Coding::new(tau.clone(), y)?;
    let whole = Coding::new(composed, z)?;

    let composed = recognizability_radius(&whole, d_max)?;
    let inner = recognizability_radius(&inner, d_max)?;
    let outer = recognizability_radius(&outer, d_max)?;
    let verdict = if composed.is_some() == (inner.is_some() && outer.is_some()) {
        CompositionVerdict::Consistent
    } else {
        CompositionVerdict::Undecided
    };
    Ok(CompositionCheck {
        composed,
        inner,
        outer,
        d_max,
        verdict,
    })
}
