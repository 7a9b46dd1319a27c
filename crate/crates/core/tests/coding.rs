use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use sadic_core::coding::{
    clopen_coding, composition_recognizability_check, cut_function, factorization_map,
    recognizability_radius, return_words, special_coding, window_factorizations, ClopenSet, Coding,
    CompositionVerdict, Factorization,
};
use sadic_core::language::{self, LanguageProvider, SAdicLanguage};
use sadic_core::{DirectiveSequence, Error, Morphism, Symbol, Word};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn fib_lang() -> Arc<dyn LanguageProvider> {
    language::language_of(&language::fibonacci(), 0).unwrap()
}

fn tm_lang() -> Arc<dyn LanguageProvider> {
    language::language_of(&language::thue_morse(), 0).unwrap()
}

/// `σ^m(0)` and `σ^(m-1)(0)`, long enough that every short factor of the
/// subshift occurs away from the left edge.
fn fixed_point_pair(sigma: &Morphism, min_len: usize) -> (Vec<Symbol>, Vec<Symbol>) {
    let mut pre = w("0");
    let mut x = sigma.apply(&pre).unwrap();
    while x.len() < min_len {
        pre = x.clone();
        x = sigma.apply(&x).unwrap();
    }
    (x.into_vec(), pre.into_vec())
}

/// Windows of `x = σ(pre)` mapped to the `(k, y_0)` read off the known cuts.
fn oracle_map(sigma: &Morphism, min_len: usize, d: usize) -> HashMap<Vec<Symbol>, BTreeSet<(usize, Symbol)>> {
    let (x, pre) = fixed_point_pair(sigma, min_len);
    let mut owner = Vec::with_capacity(x.len());
    for &a in &pre {
        for k in 0..sigma.image(a).unwrap().len() {
            owner.push((k, a));
        }
    }
    let mut map: HashMap<Vec<Symbol>, BTreeSet<(usize, Symbol)>> = HashMap::new();
    for i in d..x.len() - d {
        map.entry(x[i - d..i + d].to_vec()).or_default().insert(owner[i]);
    }
    map
}

#[test]
fn cut_function_examples() {
    let fib = Morphism::fibonacci();
    let f = Factorization::new(&fib, 0, w("01")).unwrap();
    assert_eq!(f.cuts(), vec![0, 2, 3]);
    let f = Factorization::new(&fib, 1, w("0")).unwrap();
    assert_eq!(cut_function(&f, 0).unwrap(), -1);
    let f = Factorization::new(&fib, 0, w("010")).unwrap();
    assert_eq!(f.cuts(), vec![0, 2, 3, 5]);
    assert!(f.cut(4).is_err());
    assert!(Factorization::new(&fib, 1, w("1")).is_err());
    let c = f.cuts();
    assert!(c.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn window_factorizations_match_fixed_point_scan() {
    let coding = Coding::new(Morphism::fibonacci(), fib_lang()).unwrap();
    let oracle = oracle_map(&Morphism::fibonacci(), 5000, 2);
    let got = window_factorizations(&coding, &w("0100"), 2).unwrap();
    let expected: Vec<(usize, Symbol)> = oracle[&vec![0, 1, 0, 0]].iter().copied().collect();
    assert_eq!(got, expected);

    let map = factorization_map(&coding, 2).unwrap();
    assert_eq!(map.len(), oracle.len());
    for (window, pairs) in &oracle {
        let got: BTreeSet<_> = map.get(window).unwrap().iter().copied().collect();
        assert_eq!(&got, pairs);
    }

    let id = Coding::identity(tm_lang());
    for window in tm_lang().words(2).unwrap() {
        assert_eq!(window_factorizations(&id, &window, 1).unwrap(), vec![(0, window[1])]);
    }
    assert!(window_factorizations(&id, &w("010"), 1).is_err());
}

#[test]
fn radius_matches_oracle() {
    for (sigma, lang) in [
        (Morphism::fibonacci(), fib_lang()),
        (Morphism::thue_morse(), tm_lang()),
    ] {
        let coding = Coding::new(sigma.clone(), lang).unwrap();
        let d = recognizability_radius(&coding, 16).unwrap().expect("recognizable");
        let single = |d: usize| oracle_map(&sigma, 20_000, d).values().all(|s| s.len() == 1);
        assert!(single(d), "{sigma} at {d}");
        if d > 1 {
            assert!(!single(d - 1), "{sigma} at {}", d - 1);
        }
    }
    let id = Coding::identity(fib_lang());
    assert_eq!(recognizability_radius(&id, 4).unwrap(), Some(1));
}

#[test]
fn radius_uniqueness_by_quadratic_scan() {
    let coding = Coding::new(Morphism::fibonacci(), fib_lang()).unwrap();
    let d = recognizability_radius(&coding, 8).unwrap().unwrap();
    let (x, pre) = fixed_point_pair(&Morphism::fibonacci(), 600);
    let mut owner = Vec::new();
    for &a in &pre {
        for k in 0..Morphism::fibonacci().image(a).unwrap().len() {
            owner.push((k, a));
        }
    }
    for i in d..x.len() - d {
        for j in i + 1..x.len() - d {
            if x[i - d..i + d] == x[j - d..j + d] {
                assert_eq!(owner[i], owner[j], "positions {i} and {j}");
            }
        }
    }
}

#[test]
fn equal_images_are_not_recognizable() {
    let sigma = Morphism::from_strs(&["01", "01"]).unwrap();
    let coding = Coding::new(sigma, fib_lang()).unwrap();
    assert_eq!(recognizability_radius(&coding, 12).unwrap(), None);
    let map = factorization_map(&coding, 3).unwrap();
    let (_, pairs) = map.first_ambiguity().unwrap();
    let letters: BTreeSet<Symbol> = pairs.iter().map(|p| p.1).collect();
    assert_eq!(letters.len(), 2);
}

#[test]
fn composition_checks() {
    let fib = Morphism::fibonacci();
    let check = composition_recognizability_check(&fib, &fib, fib_lang(), 16).unwrap();
    assert_eq!(check.verdict, CompositionVerdict::Consistent);
    assert!(check.composed.is_some() && check.inner.is_some() && check.outer.is_some());
    assert!(check.report().passed());

    let id = Morphism::identity(fib_lang().alphabet());
    let check = composition_recognizability_check(&id, &id, fib_lang(), 4).unwrap();
    assert_eq!((check.composed, check.inner, check.outer), (Some(1), Some(1), Some(1)));

    let flat = Morphism::from_strs(&["01", "01"]).unwrap();
    let check = composition_recognizability_check(&flat, &fib, fib_lang(), 12).unwrap();
    assert_eq!(check.inner, None);
    assert_eq!(check.composed, None);
    assert!(check.outer.is_some());
    assert_eq!(check.verdict, CompositionVerdict::Consistent);
    assert!(check.report().passed());
}

fn scanned_returns(x: &[Symbol], set: &ClopenSet) -> BTreeSet<Word> {
    let occ = set.occurrences(x);
    occ.windows(2).map(|p| Word::from(&x[p[0]..p[1]])).collect()
}

#[test]
fn return_word_examples() {
    let set = ClopenSet::cylinder(w("1"));
    let r = return_words(fib_lang().as_ref(), &set, 8).unwrap();
    let got: BTreeSet<Word> = r.words.iter().cloned().collect();
    assert_eq!(got, [w("10"), w("100")].into_iter().collect());
    assert_eq!(r.syndetic_bound, 3);

    let full = return_words(tm_lang().as_ref(), &ClopenSet::full(), 4).unwrap();
    assert_eq!(full.words, vec![w("0"), w("1")]);

    let set = ClopenSet::cylinder(w("00"));
    let r = return_words(tm_lang().as_ref(), &set, 8).unwrap();
    let (x, _) = fixed_point_pair(&Morphism::thue_morse(), 50_000);
    let got: BTreeSet<Word> = r.words.iter().cloned().collect();
    assert_eq!(got, scanned_returns(&x, &set));

    let absent = ClopenSet::cylinder(w("111"));
    assert!(matches!(
        return_words(tm_lang().as_ref(), &absent, 8),
        Err(Error::NotFound(_))
    ));
}

#[test]
fn clopen_codings() {
    let fib = clopen_coding(&language::fibonacci(), 0, &ClopenSet::cylinder(w("1"))).unwrap();
    assert!(fib.report.passed(), "{}", fib.report);
    let images: BTreeSet<Word> = fib.coding.sigma().images().iter().cloned().collect();
    assert_eq!(images, [w("10"), w("100")].into_iter().collect());
    let radius = fib.coding.radius().unwrap();
    assert!(radius <= fib.returns.syndetic_bound + 1);

    let tm = clopen_coding(&language::thue_morse(), 0, &ClopenSet::cylinder(w("0"))).unwrap();
    assert!(tm.report.passed(), "{}", tm.report);
    let (x, _) = fixed_point_pair(&Morphism::thue_morse(), 50_000);
    let got: BTreeSet<Word> = tm.coding.sigma().images().iter().cloned().collect();
    assert_eq!(got, scanned_returns(&x, &ClopenSet::cylinder(w("0"))));

    let full = clopen_coding(&language::fibonacci(), 0, &ClopenSet::full()).unwrap();
    assert_eq!(full.coding.radius(), Some(1));
    assert!(full.coding.sigma().images().iter().all(|i| i.len() == 1));

    // the coded subshift is the original one
    let lower = tm.coding.lower();
    assert_eq!(lower.words(12).unwrap(), tm_lang().words(12).unwrap());
}

#[test]
fn return_letter_order_follows_least_word() {
    let r = return_words(fib_lang().as_ref(), &ClopenSet::cylinder(w("1")), 8).unwrap();
    let least = fib_lang().words(r.scan_length).unwrap()[0].clone();
    let set = ClopenSet::cylinder(w("1"));
    let occ = set.occurrences(least.as_slice());
    let first = Word::from(&least.as_slice()[occ[0]..occ[1]]);
    assert_eq!(r.words[0], first);
}

#[test]
fn special_codings() {
    let fib = special_coding(&language::fibonacci(), 0, 3).unwrap();
    assert_eq!(fib.special, vec![w("010")]);
    assert!(fib.report.passed(), "{}", fib.report);
    assert!(fib.coding.report.passed());

    let tm = special_coding(&language::thue_morse(), 0, 2).unwrap();
    assert_eq!(tm.special, vec![w("01"), w("10")]);
    assert!(tm.report.passed(), "{}", tm.report);

    let periodic = DirectiveSequence::stationary(Morphism::from_strs(&["01", "01"]).unwrap()).unwrap();
    assert!(matches!(
        special_coding(&periodic, 0, 2),
        Err(Error::HypothesisViolated { .. })
    ));
}

#[test]
fn codings_of_a_deeper_level() {
    // (X^(1), τ_0) for the Fibonacci sequence is the substitution coding itself
    let upper: Arc<dyn LanguageProvider> = Arc::new(SAdicLanguage::new(language::fibonacci(), 1).unwrap());
    let coding = Coding::new(Morphism::fibonacci(), upper).unwrap();
    assert_eq!(coding.lower().words(10).unwrap(), fib_lang().words(10).unwrap());
}
