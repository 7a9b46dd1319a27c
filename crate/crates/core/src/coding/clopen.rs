use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{factorization_map, recognizability_radius, Coding};
use crate::error::{Error, Result};
use crate::language::{
    complexity, right_special, table_from_texts, LanguageProvider, LanguageTable, Memo,
    SAdicLanguage, Status,
};
use crate::language::DirectiveSequence;
use crate::morphism::Morphism;
use crate::report::Report;
use crate::words::{Alphabet, Symbol, Word};

/// Finite union of cylinders `{x : x_[-|u|, |v|) = uv}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenSet {
    cylinders: Vec<(Word, Word)>,
    left: usize,
    right: usize,
}

impl ClopenSet {
    pub fn new(mut cylinders: Vec<(Word, Word)>) -> Result<Self> {
        if cylinders.is_empty() {
            return Err(Error::invalid("clopen set needs at least one cylinder"));
        }
        cylinders.sort();
        cylinders.dedup();
        let left = cylinders.iter().map(|(u, _)| u.len()).max().unwrap_or(0);
        let right = cylinders.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        Ok(ClopenSet {
            cylinders,
            left,
            right,
        })
    }

    /// The whole space.
    pub fn full() -> Self {
        ClopenSet::new(vec![(Word::empty(), Word::empty())]).expect("nonempty")
    }

    /// `{x : x_[0, |v|) = v}`.
    pub fn cylinder(v: Word) -> Self {
        ClopenSet::new(vec![(Word::empty(), v)]).expect("nonempty")
    }

    /// Union of `[v]` over the given words.
    pub fn cylinders_of(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        ClopenSet::new(words.into_iter().map(|v| (Word::empty(), v)).collect())
    }

    pub fn cylinders(&self) -> &[(Word, Word)] {
        &self.cylinders
    }

    /// `r`, the largest context length on either side.
    pub fn radius(&self) -> usize {
        self.left.max(self.right)
    }

    pub fn left_radius(&self) -> usize {
        self.left
    }

    pub fn right_radius(&self) -> usize {
        self.right
    }

    /// Whether the shift of `w` to position `i` lies in the set; `None` when
    /// `w` is too short around `i` to tell.
    pub fn occurs_at(&self, w: &[Symbol], i: usize) -> Option<bool> {
        if i < self.left || i + self.right > w.len() {
            return None;
        }
        Some(self.cylinders.iter().any(|(u, v)| {
            w[i - u.len()..i] == *u.as_slice() && w[i..i + v.len()] == *v.as_slice()
        }))
    }

    /// Occurrence positions among those decidable inside `w`.
    pub fn occurrences(&self, w: &[Symbol]) -> Vec<usize> {
        if w.len() < self.left + self.right {
            return Vec::new();
        }
        (self.left..=w.len() - self.right)
            .filter(|&i| self.occurs_at(w, i) == Some(true))
            .collect()
    }

    fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for (u, v) in &self.cylinders {
            alphabet.check_word(u)?;
            alphabet.check_word(v)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnWords {
    /// In coding-letter order: first occurrence as a return in the least
    /// scanned word, then lexicographic.
    pub words: Vec<Word>,
    /// Largest gap between consecutive occurrences seen in the scan.
    pub syndetic_bound: usize,
    /// Length of the legal words in the final, stable scan.
    pub scan_length: usize,
    pub status: Status,
}

struct Scan {
    returns: BTreeSet<Word>,
    /// Every word had an occurrence and no gap at its edges longer than the
    /// longest return seen.
    covered: bool,
    any: bool,
}

fn scan(table: &LanguageTable, set: &ClopenSet, len: usize) -> Result<Scan> {
    let mut returns = BTreeSet::new();
    let mut edges = Vec::new();
    let mut any = false;
    let mut missing = false;
    table.for_each_word(len, |w| {
        let occ = set.occurrences(w);
        match (occ.first(), occ.last()) {
            (Some(&first), Some(&last)) => {
                any = true;
                edges.push((first - set.left, len - set.right - last));
                for pair in occ.windows(2) {
                    returns.insert(Word::from(&w[pair[0]..pair[1]]));
                }
            }
            _ => missing = true,
        }
    })?;
    let ell = returns.iter().map(Word::len).max().unwrap_or(0);
    let covered = !missing && edges.iter().all(|&(a, b)| a < ell && b < ell);
    Ok(Scan {
        returns,
        covered,
        any,
    })
}

/// Return words to `set`, read off consecutive occurrences in all legal
/// words of `scan_length`, doubling the length until the set is stable.
pub fn return_words(
    lang: &dyn LanguageProvider,
    set: &ClopenSet,
    scan_length: usize,
) -> Result<ReturnWords> {
    const RESCANS: usize = 10;
    set.check_alphabet(lang.alphabet())?;
    let mut len = scan_length.max(set.left + set.right + 2);
    let mut previous: Option<BTreeSet<Word>> = None;
    for round in 0..RESCANS {
        let table = lang.table(len)?;
        let found = scan(&table, set, len)?;
        if round == 0 && !found.any {
            return Err(Error::NotFound(format!(
                "clopen set does not occur in legal words of length {len}"
            )));
        }
        if found.covered && previous.as_ref() == Some(&found.returns) {
            let mut least = Vec::new();
            table.for_each_word(len, |w| {
                if least.is_empty() {
                    least = w.to_vec();
                }
            })?;
            return Ok(ReturnWords {
                words: canonical_order(found.returns, set, &least),
                syndetic_bound: 0,
                scan_length: len,
                status: table.status(),
            }
            .with_bound());
        }
        previous = Some(found.returns);
        len *= 2;
    }
    Err(Error::resource(format!(
        "return words did not stabilize by scan length {}",
        len / 2
    )))
}

impl ReturnWords {
    fn with_bound(mut self) -> Self {
        self.syndetic_bound = self.words.iter().map(Word::len).max().unwrap_or(0);
        self
    }
}

fn canonical_order(returns: BTreeSet<Word>, set: &ClopenSet, least: &[Symbol]) -> Vec<Word> {
    let occ = set.occurrences(least);
    let mut first: HashMap<&[Symbol], usize> = HashMap::new();
    for pair in occ.windows(2) {
        first.entry(&least[pair[0]..pair[1]]).or_insert(pair[0]);
    }
    let mut words: Vec<Word> = returns.into_iter().collect();
    words.sort_by_key(|w| (first.get(w.as_slice()).copied().unwrap_or(usize::MAX), w.clone()));
    words
}

/// Language of the derived subshift: sequences of return words to a clopen
/// set, read along points of the base subshift.
pub struct DerivedLanguage {
    base: Arc<dyn LanguageProvider>,
    set: ClopenSet,
    index: HashMap<Vec<Symbol>, Symbol>,
    syndetic_bound: usize,
    alphabet: Alphabet,
    memo: Memo,
}

impl DerivedLanguage {
    pub fn new(base: Arc<dyn LanguageProvider>, set: ClopenSet, returns: &ReturnWords) -> Result<Self> {
        if returns.words.is_empty() || returns.words.len() > 256 {
            return Err(Error::invalid(format!(
                "{} return words do not fit a symbol alphabet",
                returns.words.len()
            )));
        }
        let index = returns
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice().to_vec(), i as Symbol))
            .collect();
        Ok(DerivedLanguage {
            base,
            set,
            index,
            syndetic_bound: returns.syndetic_bound,
            alphabet: Alphabet::range(returns.words.len())?,
            memo: Memo::default(),
        })
    }

    fn build(&self, len: usize) -> Result<LanguageTable> {
        // `len` consecutive returns span at most `len · ℓ` symbols
        let span = len * self.syndetic_bound + self.set.left + self.set.right;
        let table = self.base.table(span)?;
        let mut texts = Vec::new();
        let mut unknown = None;
        table.for_each_word(span, |w| {
            let occ = self.set.occurrences(w);
            let mut coded = Vec::with_capacity(occ.len());
            for pair in occ.windows(2) {
                match self.index.get(&w[pair[0]..pair[1]]) {
                    Some(&a) => coded.push(a),
                    None => unknown = Some(Word::from(&w[pair[0]..pair[1]])),
                }
            }
            if coded.len() >= len {
                texts.push(coded);
            }
        })?;
        if let Some(w) = unknown {
            return Err(Error::resource(format!(
                "return word {w} was missed by the scan; rescan with a longer length"
            )));
        }
        let refs: Vec<&[Symbol]> = texts.iter().map(Vec::as_slice).collect();
        table_from_texts(&self.alphabet, &refs, len, table.status())
    }
}

impl LanguageProvider for DerivedLanguage {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn table(&self, len: usize) -> Result<Arc<LanguageTable>> {
        self.memo.get(len, |len| self.build(len))
    }
}

#[derive(Clone, Debug)]
pub struct ClopenCoding {
    /// Return-word coding with its recognizability radius recorded.
    pub coding: Coding,
    pub set: ClopenSet,
    pub returns: ReturnWords,
    pub report: Report,
}

/// Return-word coding of `X^(level)` with respect to `set`.
pub fn clopen_coding(dirseq: &DirectiveSequence, level: usize, set: &ClopenSet) -> Result<ClopenCoding> {
    let lang = SAdicLanguage::shared(dirseq.clone(), level)?;
    clopen_coding_on(lang, set, 32)
}

/// Builds the coding and checks its three guarantees: images no longer than
/// the syndetic bound `ℓ`, a recognizability radius at most `ℓ + r`, and cut
/// positions equal to occurrence positions.
pub fn clopen_coding_on(
    lang: Arc<dyn LanguageProvider>,
    set: &ClopenSet,
    scan_length: usize,
) -> Result<ClopenCoding> {
    let returns = return_words(lang.as_ref(), set, scan_length)?;
    let ell = returns.syndetic_bound;
    let sigma = Morphism::new(
        Alphabet::range(returns.words.len())?,
        lang.alphabet().clone(),
        returns.words.clone(),
    )?;
    let upper = Arc::new(DerivedLanguage::new(Arc::clone(&lang), set.clone(), &returns)?);
    let mut coding = Coding::new(sigma, upper)?;
    let mut report = Report::new("clopen-coding");

    report.check(
        "image-length",
        coding.sigma.max_len() <= ell,
        format!("|σ| = {} ≤ ℓ = {ell}", coding.sigma.max_len()),
    );
    let bound = ell + set.radius();
    let radius = recognizability_radius(&coding, bound)?;
    coding.radius = radius;
    report.check(
        "radius",
        radius.is_some(),
        match radius {
            Some(d) => format!("{d} ≤ ℓ + r = {bound}"),
            None => format!("no radius ≤ {bound}"),
        },
    );
    match radius {
        Some(d) => {
            let (cuts_ok, witness) = cuts_match_occurrences(&coding, set, d)?;
            report.check("cuts-are-occurrences", cuts_ok, witness);
            let (round_ok, witness) = round_trip(&coding, d)?;
            report.check("round-trip", round_ok, witness);
        }
        None => {
            let (cuts_ok, witness) = cuts_match_occurrences(&coding, set, bound)?;
            report.check("cuts-are-occurrences", cuts_ok, witness);
        }
    }
    Ok(ClopenCoding {
        coding,
        set: set.clone(),
        returns,
        report,
    })
}

/// Over legal upper words long enough to cover radius-`d` windows, every
/// decidable position of `σ(v)` is a cut iff the set occurs there.
fn cuts_match_occurrences(coding: &Coding, set: &ClopenSet, d: usize) -> Result<(bool, String)> {
    let q = 2 * (coding.half_span(d.max(set.radius())) + 1) + 1;
    let table = coding.upper.table(q)?;
    let mut bad = None;
    let mut checked = 0usize;
    table.for_each_word(q, |v| {
        if bad.is_some() {
            return;
        }
        let mut image = Vec::new();
        let mut cuts = BTreeSet::new();
        for &a in v {
            cuts.insert(image.len());
            image.extend_from_slice(coding.sigma.image(a).expect("letter").as_slice());
        }
        cuts.insert(image.len());
        let occ: BTreeSet<usize> = set.occurrences(&image).into_iter().collect();
        let lo = set.left;
        let hi = image.len() - set.right;
        let decidable_cuts: BTreeSet<usize> = cuts.range(lo..=hi).copied().collect();
        checked += 1;
        if decidable_cuts != occ {
            bad = Some(Word::from(v));
        }
    })?;
    Ok(match bad {
        None => (true, format!("{checked} upper words of length {q}")),
        Some(v) => (false, format!("upper word {v}")),
    })
}

/// At every cut of `σ(v)` with room for a radius-`d` window, the window
/// refactorizes as `(0, v_j)` and nothing else.
fn round_trip(coding: &Coding, d: usize) -> Result<(bool, String)> {
    let map = factorization_map(coding, d)?;
    let q = 2 * coding.half_span(d) + 3;
    let table = coding.upper.table(q)?;
    let mut bad = None;
    table.for_each_word(q, |v| {
        if bad.is_some() {
            return;
        }
        let mut image = Vec::new();
        let mut starts = Vec::new();
        for &a in v {
            starts.push(image.len());
            image.extend_from_slice(coding.sigma.image(a).expect("letter").as_slice());
        }
        for (j, &c) in starts.iter().enumerate() {
            if c >= d && c + d <= image.len() {
                let window = &image[c - d..c + d];
                if map.get(window) != Some(&[(0, v[j])][..]) {
                    bad = Some(Word::from(window));
                }
            }
        }
    })?;
    Ok(match bad {
        None => (true, String::new()),
        Some(w) => (false, format!("window {w}")),
    })
}

#[derive(Clone, Debug)]
pub struct SpecialCoding {
    pub coding: ClopenCoding,
    pub special: Vec<Word>,
    /// `max(⌈p(n)/n⌉, p(n+1) - p(n), #A)`
    pub d: usize,
    pub n: usize,
    pub report: Report,
}

/// Return-word coding to the cylinder of right-special words of length `n`.
pub fn special_coding(dirseq: &DirectiveSequence, level: usize, n: usize) -> Result<SpecialCoding> {
    let lang = SAdicLanguage::shared(dirseq.clone(), level)?;
    special_coding_on(lang, n)
}

pub fn special_coding_on(lang: Arc<SAdicLanguage>, n: usize) -> Result<SpecialCoding> {
    let special = right_special(lang.as_ref(), n)?;
    if special.is_empty() {
        return Err(Error::hypothesis(
            format!("no right-special words of length {n}; the subshift is periodic at this scale"),
            "",
        ));
    }
    let table = complexity(lang.as_ref(), n + 1)?;
    let p = table.p(n).unwrap();
    let delta = table.delta(n).unwrap() as usize;
    let k = lang.alphabet().len();
    let d = p.div_ceil(n).max(delta).max(k);

    let set = ClopenSet::cylinders_of(special.iter().cloned())?;
    let provider: Arc<dyn LanguageProvider> = lang;
    let coded = clopen_coding_on(provider, &set, 2 * (p + n))?;
    let returns = coded.returns.words.len();
    let ell = coded.returns.syndetic_bound;

    let mut report = Report::new("special-coding");
    report.check(
        "letters",
        returns <= d * d * d,
        format!("#C = {returns} ≤ d³ = {}", d * d * d),
    );
    report.check(
        "image-length",
        coded.coding.sigma.max_len() <= (d + 1) * n,
        format!("{} ≤ (d+1)n = {}", coded.coding.sigma.max_len(), (d + 1) * n),
    );
    let radius = match coded.coding.radius {
        Some(r) => Some(r),
        None => recognizability_radius(&coded.coding, (d + 2) * n)?,
    };
    report.check(
        "radius",
        radius.is_some_and(|r| r <= (d + 2) * n),
        format!(
            "{} ≤ (d+2)n = {}",
            radius.map_or_else(|| "none".into(), |r| r.to_string()),
            (d + 2) * n
        ),
    );
    let cuts = coded
        .report
        .items
        .iter()
        .find(|i| i.name == "cuts-are-occurrences")
        .expect("cut check");
    report.check("cuts-are-right-special", cuts.pass, cuts.detail.clone());
    report.check(
        "return-count",
        returns <= k * special.len(),
        format!("{returns} ≤ #A·#RS = {}", k * special.len()),
    );
    report.check(
        "syndetic",
        ell <= p + n,
        format!("ℓ = {ell} ≤ p(n) + n = {}", p + n),
    );
    report.note(format!("n = {n}, d = {d}, #RS = {}", special.len()));
    Ok(SpecialCoding {
        coding: coded,
        special,
        d,
        n,
        report,
    })
}
