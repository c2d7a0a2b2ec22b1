//! Fractions `num/den` of polynomials, used as generators of fractional ideals.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::sigma::SigmaLine;

/// Reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Frac<S> {
    num: Poly<S>,
    den: Poly<S>,
}

impl<S: Scalar> Frac<S> {
    pub fn new(num: Poly<S>, den: Poly<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroInput("fraction denominator"));
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        if num.is_constant() || den.is_constant() {
            return Ok(Self::normalized(num, den));
        }
        let g = num.gcd(&den)?;
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Ok(Self::normalized(num, den))
    }

    /// Coprime parts scaled to a monic denominator.
    fn normalized(num: Poly<S>, den: Poly<S>) -> Self {
        let lc = den.lc().inv();
        Frac {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(num: Poly<S>) -> Self {
        Frac {
            num,
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<S> {
        &self.num
    }

    pub fn den(&self) -> &Poly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial, when the denominator is 1.
    pub fn to_poly(&self) -> Option<&Poly<S>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInput("fraction inverse"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(AlgebraError::ZeroInput("fraction inverse"));
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// `σᵐ` keeps numerator and denominator coprime.
    pub fn apply_sigma(&self, line: &SigmaLine<S>, m: i64) -> Self {
        Self::normalized(line.apply(&self.num, m), line.apply(&self.den, m))
    }

    /// Canonical generator of the fractional ideal `(self)` of `T`.
    pub fn ideal(&self, line: &SigmaLine<S>) -> Self {
        Frac {
            num: line.normalize(&self.num),
            den: line.normalize(&self.den),
        }
    }

    /// Generator of `(self) ∩ (other)` for ideal generators.
    pub fn ideal_intersection(&self, line: &SigmaLine<S>, other: &Self) -> Result<Self> {
        Ok(Frac {
            num: line.lcm(&self.num, &other.num)?,
            den: line.gcd(&self.den, &other.den)?,
        })
    }

    /// Generator of `(self) + (other)`.
    pub fn ideal_sum(&self, line: &SigmaLine<S>, other: &Self) -> Result<Self> {
        Ok(Frac {
            num: line.gcd(&self.num, &other.num)?,
            den: line.lcm(&self.den, &other.den)?,
        })
    }
}

impl<S: Scalar> fmt::Display for Frac<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Q;

    fn fr(n: &str, d: &str) -> Frac<Q> {
        Frac::new(parse_poly(n).unwrap(), parse_poly(d).unwrap()).unwrap()
    }

    #[test]
    fn reduces() {
        let x = fr("u^2 - 1", "2*u - 2");
        assert_eq!(x, fr("u/2 + 1/2", "1"));
        assert!(Frac::<Q>::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn ideal_lattice() {
        let a = SigmaLine::<Q>::additive().unwrap();
        let x = fr("u*(u+1)", "u+2");
        let y = fr("u", "(u+2)*(u+3)");
        assert_eq!(x.ideal_intersection(&a, &y).unwrap(), fr("u*(u+1)", "u+2"));
        assert_eq!(x.ideal_sum(&a, &y).unwrap(), fr("u", "(u+2)*(u+3)"));
    }
}
