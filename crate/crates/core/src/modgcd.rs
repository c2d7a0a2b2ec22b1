//! Multi-modular gcd over ℚ: monic gcd images modulo word-sized primes,
//! combined by CRT and rational reconstruction, accepted only after exact
//! trial division.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::scalar::Q;

const MAX_PRIMES: usize = 256;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Integer polynomial with the same roots, coefficients low to high.
fn integer_coeffs(f: &Poly<Q>) -> Vec<BigInt> {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    f.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()
}

fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    c.iter().map(|x| x.mod_floor(&pb).to_u64().expect("residue fits")).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn monic_mod(v: &mut [u64], p: u64) {
    if let Some(&lc) = v.last() {
        let inv = pow_mod(lc, p - 2, p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
}

/// `a mod b` for monic `b`.
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (k, &bk) in b.iter().enumerate() {
                let t = mul_mod(lead, bk, p);
                a[shift + k] = (a[shift + k] + p - t) % p;
            }
        }
        a.pop();
    }
    trim(&mut a);
    a
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    monic_mod(&mut a, p);
    monic_mod(&mut b, p);
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
        monic_mod(&mut b, p);
    }
    a
}

/// `n/d ≡ c (mod m)` with `|n|, |d| ≤ √(m/2)`.
fn rational_reconstruct(c: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), c.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Q::new(n, d))
}

/// Monic gcd of two rational polynomials, not both zero. `None` when the
/// prime budget runs out before a candidate survives trial division.
pub(crate) fn gcd_rational(a: &Poly<Q>, b: &Poly<Q>) -> Option<Poly<Q>> {
    if a.is_zero() {
        return Some(b.monic());
    }
    if b.is_zero() {
        return Some(a.monic());
    }
    let (ai, bi) = (integer_coeffs(a), integer_coeffs(b));
    let (la, lb) = (ai.last().unwrap().clone(), bi.last().unwrap().clone());
    let mut deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut last: Option<Poly<Q>> = None;
    let mut count = 0usize;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (&la % &pb).is_zero() || (&lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(&ai, p), reduce(&bi, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(Poly::one());
        }
        if d > deg {
            continue;
        }
        if d < deg {
            deg = d;
            modulus = pb;
            acc = g.iter().map(|&x| BigInt::from(x)).collect();
            last = None;
            count = 1;
            continue;
        }
        // CRT: x ≡ acc (mod M), x ≡ g (mod p)
        let inv = BigInt::from(pow_mod((&modulus % &pb).to_u64().unwrap(), p - 2, p));
        let mut settled = true;
        for (x, &gk) in acc.iter_mut().zip(&g) {
            let diff = (BigInt::from(gk) - &*x).mod_floor(&pb);
            if !diff.is_zero() {
                settled = false;
                *x += &modulus * ((diff * &inv) % &pb);
            }
        }
        let old = std::mem::replace(&mut modulus, BigInt::zero());
        modulus = &old * &pb;
        let half = &modulus >> 1;
        for x in acc.iter_mut() {
            *x = x.mod_floor(&modulus);
            if *x > half {
                *x -= &modulus;
            }
        }
        count += 1;
        // reconstruct when the lifted integers stop moving, or at powers of two
        if !settled && !count.is_power_of_two() {
            continue;
        }
        let candidate: Option<Vec<Q>> = acc.iter().map(|x| rational_reconstruct(x, &modulus)).collect();
        let Some(coeffs) = candidate else {
            continue;
        };
        let cand = Poly::from_coeffs(coeffs);
        if (settled || last.as_ref() == Some(&cand)) && a.rem(&cand).is_zero() && b.rem(&cand).is_zero() {
            return Some(cand);
        }
        last = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn pq(s: &str) -> Poly<Q> {
        parse_poly(s).unwrap()
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(primes().iter().take(4).all(|&p| is_prime(p)));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let c = BigInt::from(3) * BigInt::from(pow_mod(7, 1_000_000_005, 1_000_000_007));
        assert_eq!(rational_reconstruct(&c, &m), Some(Q::new(3.into(), 7.into())));
    }

    #[test]
    fn gcd_examples() {
        let a = pq("(u - 1/3)^2*(u^2 + 5)*(u + 7)");
        let b = pq("(u - 1/3)*(u^2 + 5)*(u - 2)^3");
        assert_eq!(gcd_rational(&a, &b).unwrap(), pq("(u - 1/3)*(u^2 + 5)"));
        assert_eq!(gcd_rational(&pq("u + 1"), &pq("u - 1")).unwrap(), pq("1"));
        let big = pq("(u - 123456789/987654321)^3*(u + 1)");
        assert_eq!(gcd_rational(&big, &pq("(u - 123456789/987654321)^2")).unwrap(), pq("(u - 123456789/987654321)^2"));
    }
}
