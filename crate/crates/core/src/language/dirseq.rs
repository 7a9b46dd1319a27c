use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::words::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// The last `p` levels repeat forever.
    RepeatLast(usize),
    /// No levels beyond the listed ones. Only useful for diagnostics: such
    /// sequences never produce exact languages.
    Finite,
}

/// `τ_0: A_1 -> A_0+, τ_1: A_2 -> A_1+, ...` with an eventually periodic tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectiveSequence {
    levels: Vec<Morphism>,
    tail: Tail,
    primitive_hint: bool,
}

impl DirectiveSequence {
    pub fn new(levels: Vec<Morphism>, tail: Tail) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("a directive sequence needs at least one level"));
        }
        for (n, pair) in levels.windows(2).enumerate() {
            if pair[0].source() != pair[1].target() {
                return Err(Error::invalid(format!(
                    "level {} does not chain into level {n}",
                    n + 1
                )));
            }
        }
        if let Tail::RepeatLast(p) = tail {
            if p == 0 || p > levels.len() {
                return Err(Error::invalid(format!(
                    "tail period {p} out of range 1..={}",
                    levels.len()
                )));
            }
            let first = &levels[levels.len() - p];
            let last = &levels[levels.len() - 1];
            if last.source() != first.target() {
                return Err(Error::invalid(format!(
                    "repeated block of length {p} is not closed: level {} does not chain into level {}",
                    levels.len() - p,
                    levels.len() - 1
                )));
            }
        }
        Ok(DirectiveSequence {
            levels,
            tail,
            primitive_hint: false,
        })
    }

    pub fn stationary(sigma: Morphism) -> Result<Self> {
        DirectiveSequence::new(vec![sigma], Tail::RepeatLast(1))
    }

    /// Marks the sequence as known to be primitive. Exactness is then
    /// granted without certification.
    pub fn with_primitive_hint(mut self, hint: bool) -> Self {
        self.primitive_hint = hint;
        self
    }

    pub fn primitive_hint(&self) -> bool {
        self.primitive_hint
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn levels(&self) -> &[Morphism] {
        &self.levels
    }

    /// Index of the first level of the repeated block, if any.
    pub fn tail_start(&self) -> Option<usize> {
        match self.tail {
            Tail::RepeatLast(p) => Some(self.levels.len() - p),
            Tail::Finite => None,
        }
    }

    /// Number of levels if the sequence is finite.
    pub fn finite_len(&self) -> Option<usize> {
        match self.tail {
            Tail::RepeatLast(_) => None,
            Tail::Finite => Some(self.levels.len()),
        }
    }

    /// `τ_n`, unfolding the periodic tail.
    pub fn level(&self, n: usize) -> Option<&Morphism> {
        let len = self.levels.len();
        if n < len {
            return Some(&self.levels[n]);
        }
        match self.tail {
            Tail::RepeatLast(p) => Some(&self.levels[len - p + (n - len) % p]),
            Tail::Finite => None,
        }
    }

    /// `A_n`, the alphabet at level `n`.
    pub fn alphabet(&self, n: usize) -> Option<&Alphabet> {
        match self.level(n) {
            Some(m) => Some(m.target()),
            None if Some(n) == self.finite_len() => Some(self.levels[n - 1].source()),
            None => None,
        }
    }

    /// `τ_[n,m) = τ_n ∘ … ∘ τ_{m-1}`; the identity on `A_n` when `m = n`.
    pub fn compose_range(&self, n: usize, m: usize) -> Result<Morphism> {
        if m < n {
            return Err(Error::invalid(format!("empty range [{n}, {m})")));
        }
        let base = self
            .alphabet(n)
            .ok_or_else(|| Error::invalid(format!("level {n} is beyond the sequence")))?;
        let mut acc = Morphism::identity(base);
        for k in n..m {
            let next = self
                .level(k)
                .ok_or_else(|| Error::invalid(format!("level {k} is beyond the sequence")))?;
            acc = acc.compose(next)?;
        }
        Ok(acc)
    }

    /// The sequence shifted to start at `level`, i.e. the one generating the
    /// level-`level` subshift.
    pub fn shifted(&self, level: usize) -> Result<DirectiveSequence> {
        let len = self.levels.len();
        let levels: Vec<Morphism> = match self.tail {
            Tail::Finite if level >= len => {
                return Err(Error::invalid(format!("level {level} is beyond the sequence")))
            }
            Tail::Finite => self.levels[level..].to_vec(),
            Tail::RepeatLast(p) if level + p <= len => self.levels[level..].to_vec(),
            Tail::RepeatLast(p) => (level..level + p)
                .map(|k| self.level(k).expect("periodic tail").clone())
                .collect(),
        };
        Ok(DirectiveSequence::new(levels, self.tail)?.with_primitive_hint(self.primitive_hint))
    }
}
