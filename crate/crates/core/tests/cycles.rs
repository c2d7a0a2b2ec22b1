mod common;

use common::{naive_iterate, naive_pleasant};
use gwa_core::cycles::{classify_sequence, Cycle, SequenceClass};
use proptest::prelude::*;

fn c(pairs: &[(i64, i64)]) -> Cycle {
    Cycle::from_pairs(pairs.iter().copied())
}

fn cycle() -> impl Strategy<Value = Cycle> {
    (-4i64..=4, prop::collection::vec(-3i64..=3, 0..7)).prop_map(|(lo, v)| Cycle::from_dense(lo, &v))
}

#[test]
fn shift_and_iterate_examples() {
    let g = c(&[(0, 1), (1, -1), (2, 1)]);
    assert_eq!(g.shift(1), c(&[(-1, 1), (0, -1), (1, 1)]));
    assert_eq!(g.iterate(1), g);
    assert_eq!(g.iterate(2), c(&[(0, 1), (3, 1)]));
    assert_eq!(g.iterate(-2), c(&[(-2, -1), (1, -1)]));
    assert_eq!(g.iterate(0), Cycle::zero());
}

#[test]
fn lattice_examples() {
    let d = c(&[(0, 1), (1, -1), (2, 1)]);
    assert_eq!(d.pos_part(), c(&[(0, 1), (2, 1)]));
    assert_eq!(d.abs(), c(&[(0, 1), (1, 1), (2, 1)]));
    assert_eq!((-&d).pos_part(), Cycle::point(1));
    assert_eq!(d.span(), 2);
    assert_eq!(d.degree(), 1);
    assert!(!d.is_effective());
    assert!(Cycle::zero().is_effective());
}

#[test]
fn alternating_examples() {
    let g = c(&[(-3, 1), (-1, -1), (0, 1), (5, -1), (6, 1)]);
    assert!(g.is_pleasantly_alternating());
    assert!(Cycle::point(0).is_pleasantly_alternating());
    assert!(!c(&[(0, 1), (1, -1)]).is_pleasantly_alternating());
    assert!(!c(&[(0, -1), (1, 1), (2, -1)]).is_pleasantly_alternating());
    assert!(!c(&[(0, 2)]).is_pleasantly_alternating());
}

/// All cycles supported in `[0, 4]` with coefficients in `{-1, 0, 1}`
/// agree with the sign-pattern definition.
#[test]
fn alternation_exhaustive() {
    let mut count = 0;
    for code in 0..3i64.pow(5) {
        let mut k = code;
        let v: Vec<i64> = (0..5)
            .map(|_| {
                let d = k % 3 - 1;
                k /= 3;
                d
            })
            .collect();
        let g = Cycle::from_dense(0, &v);
        assert_eq!(g.is_pleasantly_alternating(), naive_pleasant(&g), "{g}");
        count += usize::from(naive_pleasant(&g));
    }
    // 5 + 10 + 1 subsets of odd size
    assert_eq!(count, 16);
}

/// `G_n` effective for all large `n` only for positive multiples of an
/// alternating cycle or with some pinned index; checked against direct
/// iteration on every cycle with small support.
#[test]
fn classification_exhaustive() {
    for code in 0..5i64.pow(4) {
        let mut k = code;
        let v: Vec<i64> = (0..4)
            .map(|_| {
                let d = k % 5 - 2;
                k /= 5;
                d
            })
            .collect();
        let g = Cycle::from_dense(0, &v);
        if g.is_zero() {
            continue;
        }
        let big_n = g.span().max(1);
        let eventually = (big_n..big_n + 12).all(|n| naive_iterate(&g, n).is_effective());
        match classify_sequence(&g, 12) {
            Ok(SequenceClass::Pinned { index }) => {
                assert!(eventually);
                for n in big_n..big_n + 12 {
                    let gn = naive_iterate(&g, n);
                    assert!(gn.coeff(index) >= 1 && gn.coeff(index + n) >= 1, "{g} n={n}");
                }
            }
            Ok(SequenceClass::AlternatingMultiple { d, base }) => {
                assert!(eventually);
                assert!(naive_pleasant(&base));
                assert_eq!(&(d * &base), &g);
            }
            Err(_) => assert!(!eventually, "{g} rejected though G_n is effective"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn iterate_matches_definition(g in cycle(), n in -8i64..=8) {
        prop_assert_eq!(g.iterate(n), naive_iterate(&g, n));
    }

    #[test]
    fn cocycle(g in cycle(), m in -6i64..=6, n in -6i64..=6) {
        prop_assert_eq!(g.iterate(m + n), &g.iterate(m) + &g.iterate(n).shift(-m));
    }

    #[test]
    fn reflection(g in cycle(), n in -6i64..=6) {
        prop_assert_eq!(g.iterate(-n), -&g.iterate(n).shift(n));
    }

    #[test]
    fn degree_is_linear(g in cycle(), n in -6i64..=6) {
        prop_assert_eq!(g.iterate(n).degree(), n * g.degree());
    }

    #[test]
    fn support_bounds(g in cycle(), n in 1i64..=8) {
        prop_assume!(!g.is_zero());
        let gn = g.iterate(n);
        if let (Some(lo), Some(hi)) = (gn.min_index(), gn.max_index()) {
            prop_assert!(lo >= g.min_index().unwrap());
            prop_assert!(hi <= g.max_index().unwrap() + n - 1);
        }
    }

    #[test]
    fn lattice_laws(a in cycle(), b in cycle()) {
        prop_assert_eq!(&a.pos_part() - &(-&a).pos_part(), a.clone());
        prop_assert_eq!(&a.pos_part() + &(-&a).pos_part(), a.abs());
        prop_assert_eq!(&a.max(&b) + &a.min(&b), &a + &b);
        prop_assert!(a.min(&b).le(&a) && a.le(&a.max(&b)));
    }

    #[test]
    fn alternating_cycles_have_effective_iterates(v in prop::collection::vec(any::<bool>(), 1..8), k in 0i64..10) {
        let idx: Vec<i64> = v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as i64).collect();
        prop_assume!(idx.len() % 2 == 1);
        let g = Cycle::from_pairs(idx.iter().enumerate().map(|(t, &i)| (i, if t % 2 == 0 { 1 } else { -1 })));
        prop_assert!(g.is_pleasantly_alternating());
        let n = g.span().max(1) + k;
        prop_assert!(g.iterate(n).is_effective());
        prop_assert!(g.iterate(n).abs() == g.iterate(n));
    }
}
