use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::poly::{write_terms, Poly};
use crate::scalar::Scalar;

/// Laurent polynomial `u^shift * core`, where `core` has a nonzero constant
/// term (or is zero, in which case `shift` is 0).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LaurentPoly<S> {
    shift: i64,
    core: Poly<S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly {
            shift: 0,
            core: Poly::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<S>) -> Self {
        Self::with_shift(0, p)
    }

    /// `u^shift * p` for an arbitrary polynomial `p`.
    pub fn with_shift(shift: i64, p: Poly<S>) -> Self {
        match p.valuation() {
            None => Self::zero(),
            Some(v) => LaurentPoly {
                shift: shift + v as i64,
                core: p.shift_down(v),
            },
        }
    }

    pub fn monomial(c: S, k: i64) -> Self {
        Self::with_shift(k, Poly::constant(c))
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (k, c)| &acc + &Self::monomial(c, k))
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_zero()
    }

    pub fn unit_exponent(&self) -> i64 {
        self.shift
    }

    pub fn core(&self) -> &Poly<S> {
        &self.core
    }

    /// `(k, core)` with `self = u^k * core` and `core(0) != 0`.
    pub fn normalize(&self) -> Result<(i64, Poly<S>)> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInput("laurent_normalize"));
        }
        Ok((self.shift, self.core.clone()))
    }

    /// The polynomial this represents, when no exponent is negative.
    pub fn to_poly(&self) -> Option<Poly<S>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        (self.shift >= 0).then(|| self.core.shift_up(self.shift as usize))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.core.degree().map(|d| self.shift + d as i64)
    }

    pub fn coeff(&self, k: i64) -> S {
        if k < self.shift {
            return S::zero();
        }
        self.core.coeff((k - self.shift) as usize)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> + '_ {
        self.core
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.shift + k as i64, c))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::with_shift(self.shift, self.core.scale(c))
    }

    /// `f(c * u)`
    pub fn scale_var(&self, c: &S) -> Self {
        Self::with_shift(self.shift, self.core.scale_var(c)).scale(&c.pow(self.shift))
    }
}

impl<S: Scalar> Add for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn add(self, rhs: &LaurentPoly<S>) -> LaurentPoly<S> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(rhs.shift);
        let a = self.core.shift_up((self.shift - lo) as usize);
        let b = rhs.core.shift_up((rhs.shift - lo) as usize);
        LaurentPoly::with_shift(lo, &a + &b)
    }
}

impl<S: Scalar> Neg for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn neg(self) -> LaurentPoly<S> {
        LaurentPoly {
            shift: self.shift,
            core: -&self.core,
        }
    }
}

impl<S: Scalar> Sub for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn sub(self, rhs: &LaurentPoly<S>) -> LaurentPoly<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;

    fn mul(self, rhs: &LaurentPoly<S>) -> LaurentPoly<S> {
        LaurentPoly::with_shift(self.shift + rhs.shift, &self.core * &rhs.core)
    }
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, S)> = self.terms().map(|(k, c)| (k, c.clone())).collect();
        write_terms(f, terms.into_iter().rev(), "u")
    }
}
