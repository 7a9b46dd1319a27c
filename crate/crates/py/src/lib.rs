use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sadic_core::coding::{clopen_coding_on, recognizability_radius as radius, ClopenSet, Coding as CoreCoding};
use sadic_core::constructions::cfpz_cover;
use sadic_core::format::{parse_dirseq as parse, serialize_dirseq};
use sadic_core::language::{complexity, contract, pcom_estimate, right_special, ContractMode, SAdicLanguage};
use sadic_core::suites::Suite;
use sadic_core::words::{
    are_conjugate, fine_wilf, is_periodic_by, is_primitive, least_rotation, period, root,
};
use sadic_core::{DirectiveSequence as CoreDirSeq, Error, LanguageProvider, Morphism as CoreMorphism, Status, Word as CoreWord};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::VerificationFailed { .. } | Error::Internal(_) | Error::Resource(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for sadic_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A finite word over small integer symbols.
///
/// Built from a string of digits (``"0110"``), a space-separated id list
/// (``"0 12 3"``) or a list of ints.
#[pyclass(frozen, eq, skip_from_py_object, module = "sadic")]
#[derive(Clone, PartialEq, Eq)]
struct Word(CoreWord);

fn words(ws: Vec<CoreWord>) -> Vec<Word> {
    ws.into_iter().map(Word).collect()
}

#[pymethods]
impl Word {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = value.extract::<String>() {
            return CoreWord::parse(&s).map(Word).py();
        }
        let ids: Vec<u8> = value.extract()?;
        Ok(Word(ids.into()))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &Word) -> Word {
        Word(self.0.concat(&other.0))
    }

    fn __mul__(&self, k: usize) -> Word {
        Word(self.0.pow(k))
    }

    fn to_list(&self) -> Vec<u8> {
        self.0.as_slice().to_vec()
    }

    /// Least period.
    fn period(&self) -> PyResult<usize> {
        period(&self.0).py()
    }

    /// Primitive root.
    fn root(&self) -> PyResult<Word> {
        root(&self.0).map(Word).py()
    }

    fn is_primitive(&self) -> bool {
        is_primitive(&self.0)
    }

    fn is_conjugate(&self, other: &Word) -> bool {
        are_conjugate(&self.0, &other.0)
    }

    /// Lexicographically least rotation.
    fn least_rotation(&self) -> Word {
        Word(least_rotation(&self.0))
    }

    /// Whether this word is a factor of some power of `u`.
    fn is_periodic_by(&self, u: &Word) -> PyResult<bool> {
        is_periodic_by(&self.0, &u.0).py()
    }
}

/// Common primitive root forced on `u` and `v` by a long enough factor `w`
/// of both their powers, or None when the overlap is too short to decide.
#[pyfunction]
fn fine_wilf_root(u: &Word, v: &Word, w: &Word) -> PyResult<Option<Word>> {
    Ok(fine_wilf(&u.0, &v.0, &w.0).py()?.map(Word))
}

/// A substitution. Letters of the source alphabet are mapped in order.
#[pyclass(frozen, skip_from_py_object, module = "sadic")]
#[derive(Clone)]
struct Morphism(CoreMorphism);

#[pymethods]
impl Morphism {
    /// Images of `0, 1, ...` in the notation accepted by `Word`.
    #[new]
    fn new(images: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        CoreMorphism::from_strs(&refs).map(Morphism).py()
    }

    #[staticmethod]
    fn fibonacci() -> Self {
        Morphism(CoreMorphism::fibonacci())
    }

    #[staticmethod]
    fn thue_morse() -> Self {
        Morphism(CoreMorphism::thue_morse())
    }

    #[getter]
    fn images(&self) -> Vec<Word> {
        words(self.0.images().to_vec())
    }

    fn apply(&self, w: &Word) -> PyResult<Word> {
        self.0.apply(&w.0).map(Word).py()
    }

    /// `self ∘ inner`.
    fn compose(&self, inner: &Morphism) -> PyResult<Morphism> {
        self.0.compose(&inner.0).map(Morphism).py()
    }

    fn max_len(&self) -> usize {
        self.0.max_len()
    }

    fn min_len(&self) -> usize {
        self.0.min_len()
    }

    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    fn __repr__(&self) -> String {
        format!("Morphism({})", self.0)
    }
}

/// A directive sequence with its tail rule.
#[pyclass(frozen, skip_from_py_object, module = "sadic")]
#[derive(Clone)]
struct DirectiveSequence(CoreDirSeq);

#[pymethods]
impl DirectiveSequence {
    /// Parses the line-oriented text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse(text).map(DirectiveSequence).py()
    }

    /// A single morphism repeated forever.
    #[staticmethod]
    fn stationary(sigma: &Morphism, primitive: bool) -> PyResult<Self> {
        let ds = CoreDirSeq::stationary(sigma.0.clone()).py()?;
        Ok(DirectiveSequence(ds.with_primitive_hint(primitive)))
    }

    /// Morphism at level `n`.
    fn level(&self, n: usize) -> Option<Morphism> {
        self.0.level(n).cloned().map(Morphism)
    }

    /// Composition of levels `n..m`.
    fn compose_range(&self, n: usize, m: usize) -> PyResult<Morphism> {
        self.0.compose_range(n, m).map(Morphism).py()
    }

    /// Telescopes either until images reach `growth` or by `blocks` levels.
    #[pyo3(signature = (*, growth=None, blocks=None))]
    fn contract(&self, growth: Option<usize>, blocks: Option<usize>) -> PyResult<Self> {
        let mode = match (growth, blocks) {
            (Some(d), None) => ContractMode::Growth(d),
            (None, Some(k)) => ContractMode::Blocks(k),
            _ => return Err(PyValueError::new_err("give exactly one of growth or blocks")),
        };
        contract(&self.0, mode).map(DirectiveSequence).py()
    }

    fn __str__(&self) -> String {
        serialize_dirseq(&self.0)
    }
}

/// The finite-length language of one level of a directive sequence.
#[pyclass(frozen, module = "sadic")]
struct Language {
    inner: Arc<SAdicLanguage>,
}

#[pymethods]
impl Language {
    #[new]
    #[pyo3(signature = (dirseq, level=0))]
    fn new(dirseq: &DirectiveSequence, level: usize) -> PyResult<Self> {
        let inner = SAdicLanguage::shared(dirseq.0.clone(), level).py()?;
        Ok(Language { inner })
    }

    /// True when the tables are the exact language rather than a lower
    /// approximation.
    #[getter]
    fn exact(&self) -> bool {
        self.inner.status() == Status::Exact
    }

    /// Legal words of length `n`, sorted.
    fn words(&self, n: usize) -> PyResult<Vec<Word>> {
        self.inner.words(n).map(words).py()
    }

    fn contains(&self, w: &Word) -> PyResult<bool> {
        self.inner.contains(w.0.as_slice()).py()
    }

    /// `[p(1), ..., p(max_len)]`.
    fn complexity(&self, max_len: usize) -> PyResult<Vec<usize>> {
        Ok(complexity(self.inner.as_ref(), max_len).py()?.values().to_vec())
    }

    fn right_special(&self, n: usize) -> PyResult<Vec<Word>> {
        right_special(self.inner.as_ref(), n).map(words).py()
    }

    /// Best power count over bases up to `max_base`: `(count, base)`.
    #[pyo3(signature = (max_base=4, k_max=8))]
    fn pcom(&self, max_base: usize, k_max: usize) -> PyResult<(usize, Option<Word>)> {
        let (count, base) = pcom_estimate(self.inner.as_ref(), max_base, k_max).py()?;
        Ok((count, base.map(Word)))
    }

    /// Return words to the cylinder `[v]`, in coding-letter order.
    #[pyo3(signature = (v, scan=32))]
    fn return_words(&self, py: Python<'_>, v: &Word, scan: usize) -> PyResult<Vec<Word>> {
        let lang = self.inner.clone();
        let set = ClopenSet::cylinder(v.0.clone());
        let coding = py.detach(|| clopen_coding_on(lang, &set, scan)).py()?;
        Ok(words(coding.returns.words))
    }
}

/// Least recognizability radius of level `level` over the language one
/// level up, or None if it exceeds `d_max`.
#[pyfunction]
#[pyo3(signature = (dirseq, level=0, d_max=64))]
fn recognizability_radius(dirseq: &DirectiveSequence, level: usize, d_max: usize) -> PyResult<Option<usize>> {
    let tau = dirseq
        .0
        .level(level)
        .cloned()
        .ok_or_else(|| PyValueError::new_err(format!("no level {level}")))?;
    let upper: Arc<dyn LanguageProvider> = SAdicLanguage::shared(dirseq.0.clone(), level + 1).py()?;
    let coding = CoreCoding::new(tau, upper).py()?;
    radius(&coding, d_max).py()
}

/// Distinct words of the factor cover of `w` at scale `ell`.
#[pyfunction]
fn cover(w: &Word, ell: usize) -> PyResult<Vec<Word>> {
    Ok(words(cfpz_cover(&w.0, ell).py()?.words()))
}

/// Runs one verification suite, or all of them; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (suite="all", seed=0))]
fn verify(py: Python<'_>, suite: &str, seed: u64) -> PyResult<(bool, String)> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().py()?]
    };
    py.detach(|| {
        let mut text = String::new();
        let mut ok = true;
        for s in suites {
            let report = s.run(seed)?;
            ok &= report.passed();
            text.push_str(&report.to_string());
        }
        Ok((ok, text))
    })
    .py()
}

#[pymodule]
fn sadic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<Morphism>()?;
    m.add_class::<DirectiveSequence>()?;
    m.add_class::<Language>()?;
    m.add_function(wrap_pyfunction!(fine_wilf_root, m)?)?;
    m.add_function(wrap_pyfunction!(recognizability_radius, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
