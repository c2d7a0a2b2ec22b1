mod common;

use common::{from_roots, pz, q, qf, sylvester_resultant};
use gwa_core::laurent::LaurentPoly;
use gwa_core::parse::{parse_laurent, parse_poly};
use gwa_core::{AlgebraError, Poly, RatFunc, Q};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| pz(&c))
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = Poly<Q>> {
    small_poly(max_deg).prop_filter("nonconstant", |p| p.degree().unwrap_or(0) >= 1)
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(2), small_poly(2).prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(n, d))
}

#[test]
fn gcd_examples() {
    assert_eq!(pz(&[-1, 0, 1]).gcd(&pz(&[-1, 1])).unwrap(), pz(&[-1, 1]));
    assert_eq!(pz(&[0, 1]).gcd(&pz(&[1])).unwrap(), pz(&[1]));
    let a = &pz(&[0, 1]) * &pz(&[-3, 1]);
    let b = &pz(&[3, 1]) * &pz(&[-3, 1]);
    assert_eq!(a.gcd(&b).unwrap(), pz(&[-3, 1]));
    assert!(matches!(Poly::<Q>::zero().gcd(&Poly::zero()), Err(AlgebraError::GcdUndefined)));
}

#[test]
fn resultant_examples() {
    // Res(u - α, b) = b(α)
    assert_eq!(pz(&[0, 1]).resultant(&pz(&[3, 1])).unwrap(), pz(&[3, 1]).eval(&q(0)));
    assert_eq!(pz(&[-1, 1]).resultant(&pz(&[-1, 1])).unwrap(), q(0));
    // Res(u² + 1, u² + 4) = b(i)·b(-i) over the Gaussian integers, b(±i) = -1 + 4
    let b_at = |re: i64, im: i64| (re * re - im * im + 4, 2 * re * im);
    let (x, y) = (b_at(0, 1), b_at(0, -1));
    let prod = x.0 * y.0 - x.1 * y.1;
    assert_eq!(pz(&[1, 0, 1]).resultant(&pz(&[4, 0, 1])).unwrap(), q(prod));
    assert!(Poly::<Q>::zero().resultant(&pz(&[1, 1])).is_err());
}

#[test]
fn cauchy_examples() {
    let formula = |c: &[i64]| {
        let lead = q(*c.last().unwrap()).abs();
        q(1) + c[..c.len() - 1].iter().map(|&a| q(a).abs() / lead.clone()).max().unwrap()
    };
    for c in [&[-5, 1][..], &[0, 1], &[-8, 0, 2]] {
        assert_eq!(pz(c).cauchy_root_bound().unwrap(), formula(c));
    }
    assert_eq!(pz(&[-5, 1]).cauchy_root_bound().unwrap(), q(6));
    assert_eq!(pz(&[0, 1]).cauchy_root_bound().unwrap(), q(1));
    assert_eq!(pz(&[-8, 0, 2]).cauchy_root_bound().unwrap(), q(5));
    assert!(matches!(pz(&[4]).cauchy_root_bound(), Err(AlgebraError::ConstantInput(_))));
}

#[test]
fn laurent_examples() {
    let l: LaurentPoly<Q> = parse_laurent("u^-2*(u - 1)").unwrap();
    assert_eq!(l.normalize().unwrap(), (-2, pz(&[-1, 1])));
    let l: LaurentPoly<Q> = parse_laurent("u^3").unwrap();
    assert_eq!(l.normalize().unwrap(), (3, pz(&[1])));
    let l: LaurentPoly<Q> = parse_laurent("u^-1 + 1").unwrap();
    assert_eq!(l.normalize().unwrap(), (-1, pz(&[1, 1])));
    assert!(LaurentPoly::<Q>::zero().normalize().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_matches_sylvester(a in nonconstant(4), b in nonconstant(4)) {
        prop_assert_eq!(a.resultant(&b).unwrap(), sylvester_resultant(&a, &b));
    }

    #[test]
    fn resultant_vanishes_iff_common_root(
        ra in prop::collection::vec(-4i64..=4, 1..4),
        rb in prop::collection::vec(-4i64..=4, 1..4),
    ) {
        let a = from_roots(&ra.iter().map(|&x| q(x)).collect::<Vec<_>>());
        let b = from_roots(&rb.iter().map(|&x| q(x)).collect::<Vec<_>>());
        let shared = ra.iter().any(|x| rb.contains(x));
        prop_assert_eq!(a.resultant(&b).unwrap().is_zero(), shared);
        prop_assert_eq!(!a.gcd(&b).unwrap().is_constant(), shared);
    }

    #[test]
    fn gcd_scales_by_common_factor(a in small_poly(3), b in small_poly(3), c in nonconstant(2)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let lhs = (&a * &c).gcd(&(&b * &c)).unwrap();
        let rhs = (&c.monic() * &a.gcd(&b).unwrap()).monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_and_is_greatest(a in nonconstant(4), b in nonconstant(4), c in nonconstant(2)) {
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        let (ac, bc) = (&a * &c, &b * &c);
        prop_assert!(c.divides(&ac.gcd(&bc).unwrap()));
    }

    #[test]
    fn root_bounds_hold(roots in prop::collection::vec(rational(), 1..5), lead in 1i64..5) {
        let f = from_roots(&roots).scale(&q(lead));
        let b = f.cauchy_root_bound().unwrap();
        let t = f.root_modulus_bound().unwrap();
        prop_assert!(t <= b);
        for r in &roots {
            prop_assert!(r.abs() <= t);
        }
        if let Some(v) = f.valuation() {
            let core = f.shift_down(v);
            if !core.is_constant() {
                let inner = f.inner_root_bound().unwrap();
                for r in roots.iter().filter(|r| !r.is_zero()) {
                    prop_assert!(r.abs() >= inner);
                }
            }
        }
    }

    #[test]
    fn rational_roots_exact(roots in prop::collection::vec(rational(), 1..5)) {
        let f = &from_roots(&roots) * &pz(&[1, 0, 1]);
        let mut expect = roots.clone();
        expect.sort();
        expect.dedup();
        let mut got = f.rational_roots().unwrap();
        got.sort();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn laurent_roundtrip(shift in -5i64..5, core in small_poly(3)) {
        prop_assume!(!core.is_zero());
        let l = LaurentPoly::with_shift(shift, core);
        let (k, c) = l.normalize().unwrap();
        prop_assert!(!c.coeff(0).is_zero());
        prop_assert_eq!(LaurentPoly::with_shift(k, c), l);
    }

    #[test]
    fn rational_arithmetic_exact(x in rational(), y in rational()) {
        prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
        if !y.is_zero() {
            prop_assert_eq!((x.clone() * y.clone()) / y, x);
        }
    }

    #[test]
    fn ratfunc_arithmetic_exact(x in ratfunc(), y in ratfunc()) {
        prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
        if !y.is_zero() {
            prop_assert_eq!((x.clone() * y.clone()) / y, x.clone());
        }
        prop_assert!(x.denom().lc().is_one());
    }

    #[test]
    fn display_parse_roundtrip(f in small_poly(4), g in prop::collection::vec(ratfunc(), 1..4)) {
        prop_assert_eq!(parse_poly::<Q>(&f.to_string()).unwrap(), f);
        let h = Poly::from_coeffs(g);
        prop_assert_eq!(parse_poly::<RatFunc>(&h.to_string()).unwrap(), h);
    }
}
