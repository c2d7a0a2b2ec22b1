//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use gwa_core::cycles::Cycle;
use gwa_core::{Poly, Q};
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn pz(c: &[i64]) -> Poly<Q> {
    Poly::from_coeffs(c.iter().map(|&x| q(x)).collect())
}

pub fn from_roots(roots: &[Q]) -> Poly<Q> {
    roots
        .iter()
        .fold(Poly::one(), |acc, r| &acc * &Poly::from_coeffs(vec![-r.clone(), Q::one()]))
}

/// Determinant of the Sylvester matrix by Gaussian elimination over ℚ.
pub fn sylvester_resultant(a: &Poly<Q>, b: &Poly<Q>) -> Q {
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return Q::one();
    }
    let mut rows = vec![vec![Q::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            rows[r][r + m - k] = a.coeff(k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            rows[n + r][r + n - k] = b.coeff(k);
        }
    }
    determinant(rows)
}

pub fn determinant(mut rows: Vec<Vec<Q>>) -> Q {
    let size = rows.len();
    let mut det = Q::one();
    for c in 0..size {
        let Some(p) = (c..size).find(|&r| !rows[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        let pivot = rows[c][c].clone();
        det *= pivot.clone();
        for r in c + 1..size {
            let f = rows[r][c].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for k in c..size {
                let v = rows[c][k].clone() * f.clone();
                rows[r][k] -= v;
            }
        }
    }
    det
}

/// `G_n` summed straight from the definition.
pub fn naive_iterate(g: &Cycle, n: i64) -> Cycle {
    let mut acc = Cycle::zero();
    if n >= 0 {
        for k in 0..n {
            acc = &acc + &g.shift(-k);
        }
    } else {
        for k in 1..=-n {
            acc = &acc - &g.shift(k);
        }
    }
    acc
}

/// Nonzero coefficients read left to right are `+1, -1, …, +1`.
pub fn naive_pleasant(g: &Cycle) -> bool {
    let c: Vec<i64> = g.iter().map(|(_, a)| a).collect();
    !c.is_empty() && c.len() % 2 == 1 && c.iter().enumerate().all(|(t, &a)| a == if t % 2 == 0 { 1 } else { -1 })
}

pub fn random_pleasant(rng: &mut impl Rng, max_span: i64) -> Cycle {
    let slots = (max_span + 1) as usize;
    let k = 2 * rng.gen_range(0..(slots + 1) / 2) + 1;
    let mut idx: Vec<usize> = sample(rng, slots, k).into_vec();
    idx.sort_unstable();
    let off = rng.gen_range(-3..=3);
    Cycle::from_pairs(
        idx.into_iter()
            .enumerate()
            .map(|(t, i)| (i as i64 + off, if t % 2 == 0 { 1 } else { -1 }))
            .collect::<Vec<_>>(),
    )
}

pub fn random_rational(rng: &mut impl Rng, num: i64, den: i64) -> Q {
    qf(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Shift `n ≠ 0` with `r₂ = r₁ + n` for some pair of roots, smallest `|n|`.
pub fn additive_collision(roots: &[Q]) -> Option<i64> {
    let mut best: Option<i64> = None;
    for a in roots {
        for b in roots {
            let d = b.clone() - a.clone();
            if d.is_integer() && !d.is_zero() {
                let n = i64::try_from(d.to_integer()).unwrap();
                if best.map_or(true, |m| n.abs() < m.abs()) {
                    best = Some(n);
                }
            }
        }
    }
    best
}

/// Some `n ≠ 0` with `r₂ = pⁿ·r₁` for nonzero roots.
pub fn multiplicative_collision(roots: &[Q], p: &Q) -> Option<i64> {
    for a in roots {
        for b in roots {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ratio = b.clone() / a.clone();
            let mut pw = p.clone();
            for n in 1..64 {
                if pw.abs() > q(1 << 40) || pw.abs() < qf(1, 1 << 40) {
                    break;
                }
                if ratio == pw {
                    return Some(n);
                }
                if ratio == pw.recip() {
                    return Some(-n);
                }
                pw *= p.clone();
            }
        }
    }
    None
}
