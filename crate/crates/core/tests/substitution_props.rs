mod common;

use common::substitution;
use proptest::prelude::*;
use substral::substitution::{AbelianMatrix, Substitution};

fn naive_power(s: &Substitution, k: u32, a: usize) -> Vec<usize> {
    let mut w = vec![a];
    for _ in 0..k {
        w = s.apply(&w);
    }
    w
}

/// Builds a substitution whose abelianization is `m`: the image of `j`
/// lists `m[i][j]` copies of each `i`.
fn from_matrix(m: &[Vec<u64>]) -> Substitution {
    let d = m.len();
    let images = (0..d)
        .map(|j| (0..d).flat_map(|i| std::iter::repeat_n(i, m[i][j] as usize)).collect())
        .collect();
    Substitution::new(images).unwrap()
}

/// Least `k ≤ 64` with a positive `m^k`, by boolean matrix powers.
fn brute_primitive(m: &[Vec<u64>]) -> Option<u32> {
    let d = m.len();
    let b: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p = b.clone();
    for k in 1..=64 {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(k);
        }
        p = (0..d)
            .map(|i| (0..d).map(|j| (0..d).any(|l| p[i][l] && b[l][j])).collect())
            .collect();
    }
    None
}

fn matrix4() -> impl Strategy<Value = Vec<Vec<u64>>> {
    proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0u64), 1 => 1u64..3], 4), 4)
        .prop_filter("every column is nonzero", |m| (0..4).all(|j| m.iter().any(|r| r[j] > 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelianization_is_multiplicative(
        (s, t) in (1usize..=5).prop_flat_map(|d| {
            let img = move || proptest::collection::vec(proptest::collection::vec(0..d, 1..=4), d);
            (img(), img())
        })
    ) {
        let s = Substitution::new(s).unwrap();
        let t = Substitution::new(t).unwrap();
        let composed = s.compose(&t).unwrap().abelianization();
        prop_assert_eq!(composed, s.abelianization().mul(&t.abelianization()));
    }

    #[test]
    fn power_is_iterated_application(s in substitution(4, 3), k in 1u32..=4) {
        let p = s.power(k).unwrap();
        for a in 0..s.size() {
            prop_assert_eq!(p.image(a), &naive_power(&s, k, a)[..]);
        }
    }

    #[test]
    fn primitivity_matches_brute_force(m in matrix4()) {
        let s = from_matrix(&m);
        prop_assert_eq!(s.abelianization(), AbelianMatrix::new(m.clone()));
        prop_assert_eq!(s.is_primitive(), brute_primitive(&m));
    }

    #[test]
    fn initial_injectivity_survives_powers(s in substitution(4, 3), k in 1u32..=4) {
        prop_assert_eq!(s.power(k).unwrap().initial_letter_injective(), s.initial_letter_injective());
    }

    #[test]
    fn final_letter_power_is_constant(s in substitution(4, 3)) {
        let f = s.final_letters_eventually_constant();
        let lasts = |k: u32| -> Vec<usize> {
            (0..s.size()).map(|a| *naive_power(&s, k, a).last().unwrap()).collect()
        };
        match f.power {
            Some(k) => {
                prop_assert!(f.constant);
                let l = lasts(k);
                prop_assert!(l.iter().all(|&x| Some(x) == f.letter));
                if k > 1 {
                    let before = lasts(k - 1);
                    prop_assert!(before.iter().any(|&x| x != before[0]));
                }
            }
            None => {
                prop_assert!(!f.constant);
                for k in 1..=(s.size() as u32 + 1) {
                    let l = lasts(k);
                    prop_assert!(l.iter().any(|&x| x != l[0]));
                }
            }
        }
    }

    #[test]
    fn factors_extend_and_occur(
        s in substitution(3, 3).prop_filter("primitive, expanding", |s| {
            s.is_primitive().is_some() && common::is_expanding(s)
        }),
        n in 1usize..=5,
    ) {
        let short = s.factors(n).unwrap();
        let long = s.factors(n + 1).unwrap();
        for w in &short {
            prop_assert!(long.iter().any(|v| v.len() == n + 1 && v.starts_with(w)), "{:?}", w);
            prop_assert!(long.contains(w));
        }
        let mut text = vec![0usize];
        while text.len() < 4000 {
            text = s.apply(&text);
        }
        for w in &short {
            prop_assert!(text.windows(w.len()).any(|x| x == &w[..]), "{:?} not in φ^m(1)", w);
        }
    }
}
