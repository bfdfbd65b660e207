mod common;

use proptest::prelude::*;
use siegel_euler::weyl::{
    dot_action, enumerate_signed_perms, kostant_gl, permutation_sign, split_lin_her, weyl_set, DominantWeight,
    GSpWeight, SignedPermutation, WeylKind,
};
use siegel_euler::Error;

#[test]
fn weyl_sets_match_brute_force() {
    for n in 1..=5 {
        let group = enumerate_signed_perms(n).unwrap();
        assert_eq!(group.len(), (1 << n) * common::factorial(n));
        for a in 0..=n {
            for b in 0..=(n - a) / 2 {
                for kind in [WeylKind::W, WeylKind::WPrime] {
                    let expect: Vec<SignedPermutation> =
                        group.iter().filter(|w| common::in_weyl_set(w, kind, a, b)).cloned().collect();
                    let got = weyl_set(kind, a, b, n).unwrap();
                    assert_eq!(got, expect, "{kind:?}({a}, {b}, {n})");
                    let size = common::factorial(n) / (common::factorial(a) * common::factorial(b) * common::factorial(n - a - 2 * b));
                    assert_eq!(got.len(), size, "|{kind:?}({a}, {b}, {n})|");
                }
            }
        }
    }
}

#[test]
fn weyl_set_rejects_oversized_levi() {
    assert!(matches!(weyl_set(WeylKind::W, 2, 1, 3), Err(Error::Domain(_))));
    assert!(matches!(enumerate_signed_perms(9), Err(Error::SizeLimit(_))));
}

#[test]
fn kostant_gl_matches_brute_force() {
    for a in 0..=5usize {
        for b in 0..=3usize {
            let n = a + 2 * b;
            if n == 0 || n > 7 {
                continue;
            }
            let expect = common::kostant_brute_force(a, b);
            let got = kostant_gl(a, b);
            assert_eq!(got, expect, "𝔖({a}, {b})");
            assert_eq!(got.len(), common::factorial(n) / (common::factorial(a) * (1 << b) * common::factorial(b)));
        }
    }
}

#[test]
fn permutation_signs() {
    assert_eq!(permutation_sign(&[1, 2, 3]), 1);
    assert_eq!(permutation_sign(&[2, 1, 3]), -1);
    assert_eq!(permutation_sign(&[2, 3, 1]), 1);
}

#[test]
fn dot_action_of_identity_and_reflection() {
    let mu = DominantWeight::new(vec![4, 2], 0).unwrap().to_gsp();
    assert_eq!(dot_action(&SignedPermutation::identity(2), &mu).unwrap(), mu);
    let flip = SignedPermutation::new(vec![1, -2]).unwrap();
    let moved = dot_action(&flip, &mu).unwrap();
    assert_eq!(moved.entries, vec![4, -4]);
    assert_eq!(moved.similitude, -3);
    let (lin, her) = split_lin_her(&moved, 1, 0).unwrap();
    assert_eq!((lin.0, her.entries), (vec![4], vec![-4]));
}

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        |(perm, flips)| {
            let images = perm.into_iter().zip(flips).map(|(x, f)| if f { -x } else { x }).collect();
            SignedPermutation::new(images).unwrap()
        },
    )
}

fn pair_and_weight() -> impl Strategy<Value = (SignedPermutation, SignedPermutation, GSpWeight)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            signed_perm(n),
            signed_perm(n),
            prop::collection::vec(-8i64..8, n),
            -10i64..10,
        )
            .prop_map(|(v, w, entries, m)| {
                let total: i64 = entries.iter().sum();
                let similitude = if total % 2 == 0 { m * 2 } else { m * 2 + 1 };
                (v, w, GSpWeight { entries, similitude })
            })
    })
}

proptest! {
    #[test]
    fn inverse_and_composition((v, w, _) in pair_and_weight()) {
        let n = v.rank();
        let id = SignedPermutation::identity(n);
        prop_assert_eq!(v.compose(&v.inverse()).unwrap(), id.clone());
        prop_assert_eq!(v.inverse().compose(&v).unwrap(), id);
        let vw = v.compose(&w).unwrap();
        for i in 1..=n as i32 {
            prop_assert_eq!(vw.apply(i), v.apply(w.apply(i)));
            prop_assert_eq!(vw.apply(-i), -vw.apply(i));
        }
        prop_assert_eq!(vw.sign(), v.sign() * w.sign());
    }

    #[test]
    fn dot_action_is_a_group_action((v, w, mu) in pair_and_weight()) {
        let vw = v.compose(&w).unwrap();
        let lhs = dot_action(&vw, &mu).unwrap();
        let rhs = dot_action(&v, &dot_action(&w, &mu).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let back = dot_action(&v.inverse(), &dot_action(&v, &mu).unwrap()).unwrap();
        prop_assert_eq!(back, mu);
    }
}
