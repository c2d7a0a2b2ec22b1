//! Elements `Σ fₙtⁿ` of `T[t, t⁻¹; σ]`, with `t·a = σ(a)·t`.

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::LaurentPoly;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::sigma::SigmaLine;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SkewElement<S> {
    terms: BTreeMap<i64, LaurentPoly<S>>,
}

impl<S: Scalar> SkewElement<S> {
    pub fn zero() -> Self {
        SkewElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(LaurentPoly::one(), 0)
    }

    /// `f·tⁿ`
    pub fn monomial(f: LaurentPoly<S>, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(n, f);
        }
        SkewElement { terms }
    }

    pub fn from_poly(f: Poly<S>, n: i64) -> Self {
        Self::monomial(LaurentPoly::from_poly(f), n)
    }

    /// `tⁿ`
    pub fn t(n: i64) -> Self {
        Self::monomial(LaurentPoly::one(), n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> LaurentPoly<S> {
        self.terms.get(&n).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly<S>)> + '_ {
        self.terms.iter().map(|(&n, f)| (n, f))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (n, f) in &other.terms {
            let v = &terms.get(n).cloned().unwrap_or_else(LaurentPoly::zero) + f;
            if v.is_zero() {
                terms.remove(n);
            } else {
                terms.insert(*n, v);
            }
        }
        SkewElement { terms }
    }

    pub fn neg(&self) -> Self {
        SkewElement {
            terms: self.terms.iter().map(|(&n, f)| (n, -f)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `(f tᵐ)(g tⁿ) = f σᵐ(g) t^{m+n}`, extended bilinearly.
    pub fn mul(&self, line: &SigmaLine<S>, other: &Self) -> Self {
        let mut acc = Self::zero();
        for (&m, f) in &self.terms {
            for (&n, g) in &other.terms {
                acc = acc.add(&Self::monomial(f * &line.apply_laurent(g, m), m + n));
            }
        }
        acc
    }

    pub fn pow(&self, line: &SigmaLine<S>, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(line, self))
    }

    /// The anti-automorphism `f tⁿ ↦ σ⁻ⁿ(f) t⁻ⁿ`.
    pub fn psi(&self, line: &SigmaLine<S>) -> Self {
        SkewElement {
            terms: self
                .terms
                .iter()
                .map(|(&n, f)| (-n, line.apply_laurent(f, -n)))
                .collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for SkewElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (n, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Q;

    fn el(s: &str, n: i64) -> SkewElement<Q> {
        SkewElement::from_poly(parse_poly(s).unwrap(), n)
    }

    #[test]
    fn monomial_rule() {
        let a = SigmaLine::<Q>::additive().unwrap();
        assert_eq!(el("1", 1).mul(&a, &el("u", -1)), el("u + 1", 0));
        assert_eq!(el("u", -1).mul(&a, &el("1", 1)), el("u", 0));
        let x = el("u^2 + 3", 2).add(&el("u", -1));
        assert_eq!(SkewElement::one().mul(&a, &x), x);
    }

    #[test]
    fn psi_examples() {
        let a = SigmaLine::<Q>::additive().unwrap();
        assert_eq!(SkewElement::<Q>::t(1).psi(&a), SkewElement::t(-1));
        assert_eq!(el("u", 2).psi(&a), el("u - 2", -2));
        assert_eq!(SkewElement::<Q>::one().psi(&a), SkewElement::one());
    }

    #[test]
    fn display() {
        assert_eq!(el("u", -1).add(&el("1", 2)).to_string(), "(1)*t^2 + (u)*t^-1");
    }
}
