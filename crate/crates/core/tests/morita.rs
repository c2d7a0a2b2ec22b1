mod common;

use std::collections::BTreeSet;

use common::{naive_iterate, naive_pleasant, pz, q};
use gwa_core::cycles::Cycle;
use gwa_core::fraction::Frac;
use gwa_core::graded::{GradedRingSpec, Pieces};
use gwa_core::morita::{build_l, check_morita, cycle_from_s, end_of_module, s_from_cycle};
use gwa_core::sigma::SigmaLine;
use gwa_core::verify::Verdict;
use gwa_core::{Poly, Q};
use proptest::prelude::*;

fn subsets(n: i64) -> impl Iterator<Item = BTreeSet<i64>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

/// `gₙ = H[(-Gₙ)⁺]` for `J = R`, with translates taken term by term.
fn naive_h_piece(line: &SigmaLine<Q>, g: &Cycle, h: &Poly<Q>, n: i64) -> Poly<Q> {
    let mut acc = Poly::one();
    for (i, a) in naive_iterate(g, n).iter() {
        if a < 0 {
            acc = &acc * &line.apply(h, i).pow(a.unsigned_abs() as u32);
        }
    }
    line.normalize(&acc)
}

#[test]
fn s_roundtrip_and_shape() {
    for s in subsets(6) {
        let g = cycle_from_s(&s, 0);
        assert!(naive_pleasant(&g), "{g}");
        if s.contains(&0) {
            // Z₀ cancels and the remaining offsets move down by one
            let rest: BTreeSet<i64> = s.iter().filter(|&&i| i > 0).map(|i| i - 1).collect();
            assert_eq!(g, cycle_from_s(&rest, 1));
            continue;
        }
        assert_eq!(g.min_index(), Some(0));
        assert_eq!(s_from_cycle(&g).unwrap(), s);
        // partial sums of coefficients are 1 off S and 0 on S
        let mut sum = 0;
        for i in 0..=g.max_index().unwrap() {
            sum += g.coeff(i);
            assert_eq!(sum, if s.contains(&i) { 0 } else { 1 });
        }
    }
}

#[test]
fn end_matches_pieces_additive() {
    let line = SigmaLine::<Q>::additive().unwrap();
    for h in [pz(&[0, 1]), pz(&[0, 0, 1])] {
        for s in subsets(4) {
            let l = build_l(&line, &h, &s, -20, 24).unwrap();
            let end = end_of_module(&l, 8).unwrap();
            let g = cycle_from_s(&s, 0);
            for m in -8..=8 {
                let expect = Frac::from_poly(naive_h_piece(&line, &g, &h, m));
                assert_eq!(end.generator(m).unwrap(), &expect, "S = {s:?}, h = {h}, m = {m}");
            }
        }
    }
}

#[test]
fn end_matches_pieces_multiplicative() {
    let line = SigmaLine::multiplicative(q(3)).unwrap();
    let h = pz(&[-1, 1]);
    for s in subsets(3) {
        let l = build_l(&line, &h, &s, -16, 19).unwrap();
        let end = end_of_module(&l, 6).unwrap();
        let g = cycle_from_s(&s, 0);
        for m in -6..=6 {
            assert_eq!(end.generator(m).unwrap(), &Frac::from_poly(naive_h_piece(&line, &g, &h, m)));
        }
    }
}

#[test]
fn full_check_covers_both_sides() {
    let line = SigmaLine::<Q>::additive().unwrap();
    let u = pz(&[0, 1]);
    let g = Cycle::from_pairs([(2, 1), (3, -1), (5, 1)]);
    for (h, j) in [(&u, &pz(&[1])), (&pz(&[1]), &u), (&u, &u), (&pz(&[0, 0, 1]), &u)] {
        let spec = GradedRingSpec::new(line.clone(), &u, g.clone(), h, j).unwrap();
        let r = check_morita(&spec, 6).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "h = {h}, j = {j}: {}", r.witness);
        assert_eq!(r.witness["base"], 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn end_is_pieces_for_shifted_cycles(mask in 0u32..32, a in -3i64..=3, hpow in 1u32..=2, mult in any::<bool>()) {
        let s: BTreeSet<i64> = (0..5).filter(|&i| mask & (1 << i) != 0).collect();
        let line = if mult { SigmaLine::multiplicative(q(2)).unwrap() } else { SigmaLine::<Q>::additive().unwrap() };
        let qq = pz(&[-1, 1]);
        let g = cycle_from_s(&s, a);
        prop_assert_eq!(g.shift(a), cycle_from_s(&s, 0));
        let spec = GradedRingSpec::new(line, &qq, g, &qq.pow(hpow), &Poly::one()).unwrap();
        let r = check_morita(&spec, 5).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass);
        for n in -5..=5 {
            prop_assert_eq!(spec.generator(n).unwrap(), naive_h_piece(spec.line(), spec.cycle(), spec.h(), n));
        }
    }
}
