//! Coefficient fields: the rationals and the rational function field in a
//! transcendental parameter `p`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;

pub type Q = BigRational;

/// An exact coefficient field of characteristic zero.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: &Q) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    /// `Some` when the element lies in the prime field ℚ.
    fn to_rational(&self) -> Option<Q>;

    /// The transcendental generator of the field, when there is one.
    fn parameter() -> Option<Self>;

    /// The same element viewed in ℚ(p).
    fn to_ratfunc(&self) -> RatFunc;

    /// Whether the printed form starts with a minus sign that may be factored out.
    fn is_negative(&self) -> bool;

    /// Whether the printed form can stand as a factor without parentheses.
    fn is_atomic(&self) -> bool;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Coefficients of the product of two nonzero coefficient vectors.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }

    /// Quotient and remainder when a faster exact route than field division
    /// applies; `d` is nonzero with `d.len() <= a.len()`.
    fn div_rem_coeffs(_a: &[Self], _d: &[Self]) -> Option<(Vec<Self>, Vec<Self>)> {
        None
    }

    fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }

    fn parameter() -> Option<Self> {
        None
    }

    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_rational(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_atomic(&self) -> bool {
        true
    }

    /// Integer convolution over a common denominator.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (ai, da) = integer_form(a);
        let (bi, db) = integer_form(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in ai.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bi.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        out.into_iter().map(|c| Q::new(c, den.clone())).collect()
    }

    /// Long division over ℤ for integer `a` and monic integer `d`.
    fn div_rem_coeffs(a: &[Self], d: &[Self]) -> Option<(Vec<Self>, Vec<Self>)> {
        if !d.last()?.is_one() || !a.iter().chain(d).all(|c| c.is_integer()) {
            return None;
        }
        let mut r: Vec<BigInt> = a.iter().map(|c| c.numer().clone()).collect();
        let dv: Vec<BigInt> = d.iter().map(|c| c.numer().clone()).collect();
        let dd = dv.len() - 1;
        let mut quot = vec![BigInt::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut r[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (i, di) in dv.iter().enumerate().take(dd) {
                if !di.is_zero() {
                    r[k + i] -= &c * di;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        let wrap = |v: Vec<BigInt>| v.into_iter().map(Q::from_integer).collect();
        Some((wrap(quot), wrap(r)))
    }
}

/// Integer numerators over the least common denominator.
fn integer_form(c: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = c.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (ints, den)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Element of ℚ(p): coprime numerator and monic denominator in ℚ[p].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly<Q>,
    den: Poly<Q>,
}

impl RatFunc {
    pub fn new(num: Poly<Q>, den: Poly<Q>) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(p)");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).expect("denominator is nonzero");
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let lc = den.lc().clone();
        if !lc.is_one() {
            num = num.scale(&lc.inv());
            den = den.scale(&lc.inv());
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: Poly<Q>) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    /// The generator `p`.
    pub fn p() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Q> {
        &self.den
    }

    /// If this element is `c * p^k`, return `(c, k)`.
    pub fn as_monomial(&self) -> Option<(Q, i64)> {
        let (nc, nk) = self.num.as_monomial()?;
        let (dc, dk) = self.den.as_monomial()?;
        Some((nc / dc, nk as i64 - dk as i64))
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den);
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;

    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero in Q(p)");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Scalar for RatFunc {
    fn from_rational(q: &Q) -> Self {
        Self::from_poly(Poly::constant(q.clone()))
    }

    fn to_rational(&self) -> Option<Q> {
        if self.num.is_zero() {
            return Some(Q::zero());
        }
        if self.num.degree() == Some(0) && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    fn parameter() -> Option<Self> {
        Some(Self::p())
    }

    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }

    fn is_negative(&self) -> bool {
        self.den.is_one() && self.num.num_terms() == 1 && Signed::is_negative(self.num.lc())
    }

    fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.num_terms() <= 1
    }
}

impl Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.display_in("p").to_string();
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = self.den.display_in("p").to_string();
        let wrap = |s: String, many: bool| if many { format!("({s})") } else { s };
        write!(
            f,
            "{}/{}",
            wrap(num, self.num.num_terms() > 1),
            wrap(den, self.den.num_terms() > 1 || !self.den.lc().is_one())
        )
    }
}
