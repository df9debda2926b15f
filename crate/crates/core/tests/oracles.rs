//! Engine results against brute-force string oracles.

use std::collections::BTreeSet;

use proptest::prelude::*;
use wordperm_core::doubling::{forward_images, DoublingContext};
use wordperm_core::enumerate::enumerate_perms;
use wordperm_core::perm::extract_subperm;
use wordperm_core::word::{factor_set, letters_to_string};
use wordperm_core::{InfiniteWord, WordSpec};

const PREFIX: usize = 1 << 15;

fn fixed_point(zero: &str, one: &str, len: usize) -> Vec<u8> {
    let mut w = b"0".to_vec();
    while w.len() < len {
        w = w
            .iter()
            .flat_map(|&c| if c == b'0' { zero.bytes() } else { one.bytes() })
            .collect();
    }
    w.truncate(len);
    w
}

fn standard_word(directive: &[usize], len: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"1".to_vec(), b"0".to_vec());
    let mut i = 0;
    while cur.len() < len + 2 {
        let a = directive[i % directive.len()];
        let reps = if i == 0 { a - 1 } else { a };
        let mut next = cur.repeat(reps);
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
        i += 1;
    }
    cur.truncate(len);
    cur
}

fn naive(spec: &str, len: usize) -> Vec<u8> {
    match spec {
        "fib" => fixed_point("01", "0", len),
        "tm" => fixed_point("01", "10", len),
        "pd" => fixed_point("01", "00", len),
        _ => unreachable!(),
    }
}

fn spec(name: &str) -> WordSpec {
    match name {
        "fib" => WordSpec::fibonacci(),
        "tm" => WordSpec::thue_morse(),
        "pd" => WordSpec::period_doubling(),
        _ => unreachable!(),
    }
}

/// Ranks of positions `a..a+n` by direct slice comparison.
fn naive_perm(w: &[u8], a: usize, n: usize) -> Vec<u32> {
    let mut idx: Vec<usize> = (a..a + n).collect();
    idx.sort_by(|&x, &y| {
        let (sx, sy) = (&w[x..], &w[y..]);
        let len = sx.len().min(sy.len());
        assert_ne!(sx[..len], sy[..len], "oracle prefix too short");
        sx[..len].cmp(&sy[..len])
    });
    let mut ranks = vec![0; n];
    for (r, i) in idx.into_iter().enumerate() {
        ranks[i - a] = r as u32 + 1;
    }
    ranks
}

fn string(w: &InfiniteWord, len: usize) -> String {
    letters_to_string(&w.materialized()[..len])
}

#[test]
fn prefixes_match_string_rewriting() {
    for name in ["fib", "tm", "pd"] {
        let mut w = InfiniteWord::new(spec(name)).unwrap();
        w.ensure(5000).unwrap();
        assert_eq!(string(&w, 5000).as_bytes(), &naive(name, 5000)[..]);
    }
    for dir in [vec![1usize], vec![2, 1, 1, 1], vec![1, 2], vec![3]] {
        let spec = WordSpec::sturmian(dir.iter().map(|&a| a as u32).collect()).unwrap();
        let mut w = InfiniteWord::new(spec).unwrap();
        w.ensure(5000).unwrap();
        assert_eq!(
            string(&w, 5000).as_bytes(),
            &standard_word(&dir, 5000)[..],
            "{dir:?}"
        );
    }
}

#[test]
fn wrappers_match_string_transforms() {
    let base = naive("tm", 4000);
    let mut d = InfiniteWord::new(WordSpec::thue_morse().double()).unwrap();
    d.ensure(8000).unwrap();
    let doubled: Vec<u8> = base.iter().flat_map(|&c| [c, c]).collect();
    assert_eq!(string(&d, 8000).as_bytes(), &doubled[..]);

    let mut c = InfiniteWord::new(WordSpec::fibonacci().complement().shift(7)).unwrap();
    c.ensure(3000).unwrap();
    let expect: Vec<u8> = naive("fib", 3007)[7..].iter().map(|&x| x ^ 1).collect();
    assert_eq!(string(&c, 3000).as_bytes(), &expect[..]);
}

#[test]
fn fixed_point_and_monotone_prefixes() {
    let mut w = InfiniteWord::new(WordSpec::period_doubling()).unwrap();
    let short = string(
        &{
            w.ensure(100).unwrap();
            w.clone()
        },
        100,
    );
    w.ensure(20_000).unwrap();
    assert_eq!(string(&w, 100), short);
    let letters = string(&w, 10_000);
    let image: String = letters
        .chars()
        .map(|c| if c == '0' { "01" } else { "00" })
        .collect();
    assert_eq!(&image[..10_000], letters);
    let mut again = InfiniteWord::new(WordSpec::period_doubling()).unwrap();
    again.ensure(10_000).unwrap();
    assert_eq!(string(&again, 10_000), letters);
}

#[test]
fn sturmian_factor_complexity() {
    for s in [
        WordSpec::fibonacci(),
        WordSpec::sturmian(vec![2, 1, 1, 1]).unwrap(),
        WordSpec::sturmian(vec![1, 2]).unwrap(),
    ] {
        let mut w = InfiniteWord::new(s.clone()).unwrap();
        for n in 1..=30 {
            let f = factor_set(&mut w, n, 1 << 14).unwrap();
            assert_eq!(f.count(), n + 1, "{s} n = {n}");
            assert!(f.converged());
        }
    }
}

#[test]
fn enumerated_sets_match_naive_sets() {
    for name in ["fib", "tm", "pd"] {
        let w_str = naive(name, PREFIX);
        let mut w = InfiniteWord::new(spec(name)).unwrap();
        let horizon = 1500;
        let reports = enumerate_perms(&mut w, 1..=12, horizon).unwrap();
        let mut previous = 0;
        for r in reports {
            let naive_set: BTreeSet<Vec<u32>> =
                (0..horizon).map(|a| naive_perm(&w_str, a, r.n)).collect();
            let ours: BTreeSet<Vec<u32>> = r.perms.keys().map(|p| p.ranks().to_vec()).collect();
            assert_eq!(ours, naive_set, "{name} n = {}", r.n);
            assert!(r.tau() >= previous, "tau must not decrease");
            previous = r.tau();
        }
    }
}

#[test]
fn doubled_shift_order_matches_the_case_table() {
    use rand::{Rng, SeedableRng};
    for name in ["fib", "tm", "pd"] {
        let base = naive(name, PREFIX / 2);
        let doubled: Vec<u8> = base.iter().flat_map(|&c| [c, c]).collect();
        let mut ctx = DoublingContext::new(spec(name), 1 << 12).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let a = rng.gen_range(0..4000);
            let b = rng.gen_range(0..4000);
            if a == b {
                continue;
            }
            let o = ctx.order_doubled_shifts(a, b).unwrap();
            let got: Vec<usize> = o.order.to_vec();
            let mut want = vec![2 * a, 2 * a + 1, 2 * b, 2 * b + 1];
            want.sort_by(|&x, &y| doubled[x..].cmp(&doubled[y..]));
            assert_eq!(got, want, "{name} a = {a} b = {b} case {:?}", o.case);
        }
    }
}

#[test]
fn delta_matches_naive_doubled_extraction() {
    for name in ["fib", "tm", "pd"] {
        let base = naive(name, PREFIX / 2);
        let doubled: Vec<u8> = base.iter().flat_map(|&c| [c, c]).collect();
        let mut ctx = DoublingContext::new(spec(name), 1 << 12).unwrap();
        ctx.set_cross_check(false);
        let lo = ctx.threshold().window;
        for a in (0..3000).step_by(37) {
            for n in [lo, lo + 3, lo + 11] {
                let r = ctx.delta(a, n).unwrap();
                assert_eq!(
                    r.image.ranks(),
                    &naive_perm(&doubled, 2 * a, 2 * n)[..],
                    "{name} {a} {n}"
                );
            }
        }
    }
}

#[test]
fn delta_is_well_defined_and_onto_even_starts() {
    for name in ["fib", "tm", "pd"] {
        let mut ctx = DoublingContext::new(spec(name), 1 << 12).unwrap();
        let n = ctx.threshold().window + 2;
        let horizon = 1 << 12;
        let set = forward_images(&mut ctx, n, horizon).unwrap();
        assert_eq!(set.rejected, 0);
        // Every start, not just first occurrences: equal inputs, equal images.
        let mut seen = std::collections::BTreeMap::new();
        let mut repeats = 0;
        for a in 0..1500 {
            let r = ctx.delta(a, n).unwrap();
            if let Some(img) = seen.insert(r.input.clone(), r.image.clone()) {
                assert_eq!(img, r.image, "{name} a = {a}");
                repeats += 1;
            }
        }
        assert!(repeats > 1000);
        let images: BTreeSet<_> = set.results.iter().map(|r| r.image.clone()).collect();
        let mut d = InfiniteWord::new(spec(name).double()).unwrap();
        let dr = enumerate_perms(&mut d, 2 * n..=2 * n, horizon)
            .unwrap()
            .remove(0);
        for (p, occ) in &dr.perms {
            if occ.first_even.is_some() {
                assert!(images.contains(p), "{name}: {p} has no preimage");
            }
        }
    }
}

fn word_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("fib"), Just("tm"), Just("pd")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extraction_matches_oracle(name in word_name(), a in 0usize..4000, n in 1usize..40) {
        let w_str = naive(name, PREFIX);
        let mut w = InfiniteWord::new(spec(name)).unwrap();
        let p = extract_subperm(&mut w, a, n).unwrap();
        prop_assert_eq!(p.ranks(), &naive_perm(&w_str, a, n)[..]);

        // Ranks form a permutation of 1..=n.
        let mut sorted = p.ranks().to_vec();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (1..=n as u32).collect::<Vec<_>>());

        if n >= 2 {
            // The form spells the factor.
            let form = letters_to_string(&p.form().unwrap());
            prop_assert_eq!(form.as_bytes(), &w_str[a..a + n - 1]);
        }

        // Equal letters preserve the order of successors.
        let r = p.ranks();
        for i in 0..n.saturating_sub(1) {
            for j in 0..n - 1 {
                if i != j && w_str[a + i] == w_str[a + j] {
                    prop_assert_eq!(r[i] < r[j], r[i + 1] < r[j + 1]);
                }
            }
        }
    }

    #[test]
    fn restrictions_match_re_extraction(name in word_name(), a in 0usize..4000, n in 3usize..40) {
        let mut w = InfiniteWord::new(spec(name)).unwrap();
        let p = extract_subperm(&mut w, a, n).unwrap();
        prop_assert_eq!(p.restrict_left().unwrap(), extract_subperm(&mut w, a, n - 1).unwrap());
        prop_assert_eq!(p.restrict_right().unwrap(), extract_subperm(&mut w, a + 1, n - 1).unwrap());
        prop_assert_eq!(p.restrict_middle().unwrap(), extract_subperm(&mut w, a + 1, n - 2).unwrap());
    }

    #[test]
    fn complement_word_gives_complement_perm(name in word_name(), a in 0usize..4000, n in 1usize..40) {
        let mut w = InfiniteWord::new(spec(name)).unwrap();
        let mut c = InfiniteWord::new(spec(name).complement()).unwrap();
        let p = extract_subperm(&mut w, a, n).unwrap();
        prop_assert_eq!(extract_subperm(&mut c, a, n).unwrap(), p.complement());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_sturmian_directives(directive in prop::collection::vec(1u32..=3, 1..4)) {
        let mut w = InfiniteWord::new(WordSpec::sturmian(directive).unwrap()).unwrap();
        for r in enumerate_perms(&mut w, 2..=10, 1 << 13).unwrap() {
            prop_assert_eq!(r.tau(), r.n);
            prop_assert_eq!(factor_set(&mut w, r.n, 1 << 13).unwrap().count(), r.n + 1);
        }
    }
}
