use proptest::prelude::*;
use sadic_core::words::{
    aperiodicity_witness, are_conjugate, fine_wilf, global_period_from_local, is_periodic_by, least_rotation,
    overlap_synchronize, period, power_window_sync, primitive_representatives, root,
};
use sadic_core::{Alphabet, PowerWindow, Word};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn brute_period(x: &[u8]) -> usize {
    (1..=x.len()).find(|&p| (p..x.len()).all(|i| x[i] == x[i - p])).unwrap()
}

fn brute_root(x: &[u8]) -> Vec<u8> {
    let d = (1..=x.len())
        .find(|&d| x.len() % d == 0 && x.chunks(d).all(|c| c == &x[..d]))
        .unwrap();
    x[..d].to_vec()
}

/// Whether `x` is a factor of `t^k` for `k` large enough.
fn in_power(x: &[u8], t: &[u8]) -> bool {
    let reps = x.len() / t.len() + 2;
    let p: Vec<u8> = t.iter().copied().cycle().take(reps * t.len()).collect();
    p.windows(x.len()).any(|win| win == x)
}

fn rotations(x: &[u8]) -> Vec<Vec<u8>> {
    (0..x.len()).map(|i| [&x[i..], &x[..i]].concat()).collect()
}

#[test]
fn period_examples_against_brute_force() {
    for (s, p) in [("aba", 2), ("aabaa", 3), ("abcd", 4)] {
        let x = Word::from_letters(s);
        assert_eq!(period(&x).unwrap(), p);
        assert_eq!(brute_period(x.as_slice()), p);
    }
}

#[test]
fn fine_wilf_examples_against_common_power_search() {
    let common = |u: &[u8], v: &[u8]| {
        (1..=u.len().min(v.len())).find_map(|d| {
            let t = &u[..d];
            let pw = |x: &[u8]| x.len() % d == 0 && x.chunks(d).all(|c| c == t);
            (pw(u) && pw(v)).then(|| t.to_vec())
        })
    };
    let got = fine_wilf(&Word::from_letters("ab"), &Word::from_letters("abab"), &Word::from_letters("ababa")).unwrap();
    assert_eq!(got.map(Word::into_vec), common(&[0, 1], &[0, 1, 0, 1]));
    let got = fine_wilf(&Word::from_letters("ab"), &Word::from_letters("aba"), &Word::from_letters("aba")).unwrap();
    assert_eq!(got, None);
    assert_eq!(common(&[0, 1], &[0, 1, 0]), None);
    assert!(fine_wilf(&w("01"), &w("00"), &w("01")).is_err());
}

#[test]
fn window_sync_example_by_materializing() {
    let (t, s) = (Word::from_letters("ab"), Word::from_letters("ba"));
    let a = PowerWindow::new(t.clone(), 0, 4).unwrap().materialize().unwrap();
    let b = PowerWindow::new(s.clone(), 1, 5).unwrap().materialize().unwrap();
    assert_eq!(a, b);
    let witness = power_window_sync(&t, &s, 0, 1, 4).unwrap().unwrap();
    assert!(in_power(witness.base.as_slice(), t.as_slice()));
    assert_eq!(power_window_sync(&t, &Word::from_letters("aa"), 0, 0, 3).unwrap(), None);
}

#[test]
fn overlap_examples_by_factor_search() {
    let lw = Word::from_letters;
    let (t, s) = (lw("ab"), lw("ba"));
    let uvw = lw("ababa");
    let expected = in_power(uvw.as_slice(), t.as_slice()) && in_power(uvw.as_slice(), s.as_slice());
    assert_eq!(overlap_synchronize(&lw("a"), &lw("bab"), &lw("a"), &t, &s).unwrap(), expected);
    assert!(expected);
    let short = lw("aba");
    let expected = in_power(short.as_slice(), t.as_slice()) && in_power(short.as_slice(), s.as_slice());
    assert_eq!(overlap_synchronize(&lw("a"), &lw("b"), &lw("a"), &t, &s).unwrap(), expected);
}

#[test]
fn local_to_global_example() {
    let cover = global_period_from_local(&Word::from_letters("abab"), &[Word::from_letters("ba")]).unwrap();
    assert_eq!(cover.period_bound, 2);
    assert!(cover
        .assignments
        .iter()
        .all(|(_, f, b)| in_power(f.as_slice(), b.as_slice())));
}

#[test]
fn aperiodicity_examples_by_factor_scan() {
    for (s, k, pos) in [("aabb", 1, 1), ("aaab", 1, 2)] {
        let u = Word::from_letters(s);
        let first = (0..=u.len() - 2 * k)
            .find(|&i| brute_period(&u.as_slice()[i..i + 2 * k]) > k)
            .unwrap();
        assert_eq!(first, pos);
        let (got, t) = aperiodicity_witness(&u, k).unwrap().unwrap();
        assert_eq!((got, t), (pos, Word::from_letters("ab")));
    }
}

#[test]
fn primitive_representatives_by_rotation_dedup() {
    let brute = |n: usize| -> Vec<Vec<u8>> {
        let mut reps: Vec<Vec<u8>> = (0..1u32 << n)
            .map(|m| (0..n).map(|i| (m >> (n - 1 - i) & 1) as u8).collect::<Vec<u8>>())
            .filter(|x| brute_root(x).len() == n)
            .map(|x| rotations(&x).into_iter().min().unwrap())
            .collect();
        reps.sort();
        reps.dedup();
        reps
    };
    let got = primitive_representatives(&Alphabet::binary(), 2).unwrap();
    let mut expected: Vec<Vec<u8>> = brute(1).into_iter().chain(brute(2)).collect();
    expected.sort();
    let mut got: Vec<Vec<u8>> = got.into_iter().map(Word::into_vec).collect();
    got.sort();
    assert_eq!(got, expected);
    assert_eq!(brute(3).len(), 2);
    let three = primitive_representatives(&Alphabet::binary(), 3).unwrap();
    assert_eq!(three.iter().filter(|x| x.len() == 3).count(), 2);
}

fn word(max_len: usize, k: u8) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..k, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn period_and_root_match_definitions(x in word(40, 3)) {
        let wx = Word::from(x.as_slice());
        prop_assert_eq!(period(&wx).unwrap(), brute_period(&x));
        prop_assert_eq!(root(&wx).unwrap().into_vec(), brute_root(&x));
    }

    #[test]
    fn powers_have_the_same_root(x in word(8, 2), k in 1usize..5) {
        let wx = Word::from(x.as_slice());
        prop_assert_eq!(root(&wx.pow(k)).unwrap(), root(&wx).unwrap());
    }

    #[test]
    fn conjugacy_is_rotation(x in word(10, 2), shift in 0usize..10, other in word(10, 2)) {
        let s = shift % x.len();
        let rotated = [&x[s..], &x[..s]].concat();
        prop_assert!(are_conjugate(&Word::from(x.as_slice()), &Word::from(rotated.as_slice())));
        let expected = other.len() == x.len() && rotations(&x).contains(&other);
        prop_assert_eq!(are_conjugate(&Word::from(x.as_slice()), &Word::from(other.as_slice())), expected);
        prop_assert_eq!(least_rotation(&Word::from(x.as_slice())).into_vec(), rotations(&x).into_iter().min().unwrap());
    }

    #[test]
    fn periodic_by_is_factor_of_power(x in word(12, 2), u in word(4, 2)) {
        let got = is_periodic_by(&Word::from(x.as_slice()), &Word::from(u.as_slice())).unwrap();
        prop_assert_eq!(got, in_power(&x, &u));
    }

    #[test]
    fn long_common_prefix_forces_common_root(u in word(7, 2), k in 1usize..4, j in 1usize..4) {
        // u^k and u^j share u^inf as prefix of their powers
        let a = Word::from(u.as_slice()).pow(k);
        let b = Word::from(u.as_slice()).pow(j);
        let len = a.len() + b.len() - 1;
        let prefix: Vec<u8> = u.iter().copied().cycle().take(len).collect();
        let got = fine_wilf(&a, &b, &Word::from(prefix.as_slice())).unwrap();
        prop_assert_eq!(got.map(Word::into_vec), Some(brute_root(&u)));
    }
}
