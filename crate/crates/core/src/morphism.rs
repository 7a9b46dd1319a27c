//! Substitutions `A -> B+`.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};

/// A morphism from `source` to nonempty words over `target`.
///
/// Images are stored in source-alphabet order. Equality is extensional.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::invalid(format!(
                "{} images for a source alphabet of size {}",
                images.len(),
                source.len()
            )));
        }
        for (a, img) in source.symbols().iter().zip(&images) {
            if img.is_empty() {
                return Err(Error::invalid(format!("image of letter {a} is empty")));
            }
            target.check_word(img)?;
        }
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// Endomorphism of `{0, .., k-1}` from image strings, e.g. `["01", "0"]`.
    pub fn from_strs(images: &[&str]) -> Result<Self> {
        let words = images
            .iter()
            .map(|s| Word::parse(s))
            .collect::<Result<Vec<_>>>()?;
        let size = words
            .iter()
            .flat_map(|w| w.iter().copied())
            .map(|s| s as usize + 1)
            .max()
            .unwrap_or(0)
            .max(images.len());
        let source = Alphabet::range(images.len())?;
        let target = Alphabet::range(size)?;
        Morphism::new(source, target, words)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let images = alphabet.symbols().iter().map(|&s| Word::new(vec![s])).collect();
        Morphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images,
        }
    }

    pub fn fibonacci() -> Self {
        Morphism::from_strs(&["01", "0"]).expect("fibonacci")
    }

    pub fn thue_morse() -> Self {
        Morphism::from_strs(&["01", "10"]).expect("thue-morse")
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Symbol) -> Result<&Word> {
        self.source
            .index_of(a)
            .map(|i| &self.images[i])
            .ok_or_else(|| Error::invalid(format!("letter {a} is not in the source alphabet")))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &a in w {
            out.extend_from_slice(self.image(a)?.as_slice());
        }
        Ok(Word::new(out))
    }

    /// `apply(left) . apply(right)` with the centre at `|apply(left)|`.
    pub fn apply_two_sided(&self, left: &Word, right: &Word) -> Result<(Word, usize)> {
        let l = self.apply(left)?;
        let center = l.len();
        Ok((l.concat(&self.apply(right)?), center))
    }

    /// `self ∘ inner`, i.e. `c -> self(inner(c))`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target != self.source {
            return Err(Error::invalid(
                "target of the inner morphism differs from the source of the outer one",
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// `|σ|`, the longest image length.
    pub fn max_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    /// `⟨σ⟩`, the shortest image length.
    pub fn min_len(&self) -> usize {
        self.images.iter().map(Word::len).min().unwrap_or(0)
    }

    /// Every target letter occurs in every image.
    pub fn is_positive(&self) -> bool {
        self.images.iter().all(|img| {
            let letters = img.letters();
            self.target.symbols().iter().all(|s| letters.binary_search(s).is_ok())
        })
    }

    /// All images start with one common letter and end with one common letter.
    pub fn is_proper(&self) -> bool {
        let first = self.images[0][0];
        let last = self.images[0][self.images[0].len() - 1];
        self.images
            .iter()
            .all(|img| img[0] == first && img[img.len() - 1] == last)
    }

    pub fn is_injective_on_letters(&self) -> bool {
        let mut sorted: Vec<&Word> = self.images.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|p| p[0] != p[1])
    }

    /// Boolean occurrence matrix: `m[b][a]` is set when target letter `b`
    /// (by alphabet position) occurs in the image of source letter `a`.
    pub fn occurrence_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.source.len()]; self.target.len()];
        for (a, img) in self.images.iter().enumerate() {
            for &s in img {
                let b = self.target.index_of(s).expect("image over target");
                m[b][a] = true;
            }
        }
        m
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({self})")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .symbols()
            .iter()
            .zip(&self.images)
            .map(|(a, img)| format!("{a}->{img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let fib = Morphism::fibonacci();
        let tm = Morphism::thue_morse();
        assert_eq!(fib.apply(&w("01")).unwrap(), w("010"));
        assert_eq!(fib.apply(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(tm.apply(&w("011")).unwrap(), w("011010"));
        assert!(fib.apply(&w("2")).is_err());
    }

    #[test]
    fn two_sided_examples() {
        let fib = Morphism::fibonacci();
        assert_eq!(fib.apply_two_sided(&w("1"), &w("0")).unwrap(), (w("001"), 1));
        assert_eq!(
            fib.apply_two_sided(&Word::empty(), &Word::empty()).unwrap(),
            (Word::empty(), 0)
        );
        let tm = Morphism::thue_morse();
        assert_eq!(tm.apply_two_sided(&w("0"), &w("1")).unwrap(), (w("0110"), 2));
    }

    #[test]
    fn compose_examples() {
        let fib = Morphism::fibonacci();
        let ff = fib.compose(&fib).unwrap();
        assert_eq!(ff.images(), &[w("010"), w("01")]);
        let id = Morphism::identity(fib.source());
        assert_eq!(id.compose(&fib).unwrap(), fib);
        let tm = Morphism::thue_morse();
        let tt = tm.compose(&tm).unwrap();
        assert_eq!(tt.images(), &[w("0110"), w("1001")]);
        let big = Morphism::from_strs(&["0", "1", "2"]).unwrap();
        assert!(fib.compose(&big).is_err());
    }

    #[test]
    fn metrics_and_predicates() {
        let fib = Morphism::fibonacci();
        assert_eq!((fib.max_len(), fib.min_len()), (2, 1));
        assert!(!fib.is_positive());
        assert!(!fib.is_proper());
        assert!(fib.is_injective_on_letters());
        let tm = Morphism::thue_morse();
        assert_eq!((tm.max_len(), tm.min_len()), (2, 2));
        assert!(tm.is_positive());
        assert!(!tm.is_proper());
        assert!(tm.is_injective_on_letters());
        let constant = Morphism::new(
            Alphabet::binary(),
            Alphabet::range(1).unwrap(),
            vec![w("00"), w("00")],
        )
        .unwrap();
        assert!(!constant.is_injective_on_letters());
        assert!(constant.is_proper());
    }

    #[test]
    fn rejects_bad_images() {
        let a = Alphabet::binary();
        assert!(Morphism::new(a.clone(), a.clone(), vec![w("0")]).is_err());
        assert!(Morphism::new(a.clone(), a.clone(), vec![w("0"), Word::empty()]).is_err());
        assert!(Morphism::new(a.clone(), a, vec![w("0"), w("2")]).is_err());
    }
}
