//! Formal integer combinations `Σ aᵢZᵢ` of the translates `Zᵢ` of one closed set.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgebraError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cycle {
    coeffs: BTreeMap<i64, i64>,
}

impl Cycle {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single symbol `Zᵢ`.
    pub fn point(i: i64) -> Self {
        Self::from_pairs([(i, 1)])
    }

    /// Builds from `(index, coefficient)` pairs; repeated indices add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, a) in pairs {
            *coeffs.entry(i).or_insert(0) += a;
        }
        coeffs.retain(|_, a| *a != 0);
        Cycle { coeffs }
    }

    /// Coefficients `a_lo, a_lo+1, …` starting at index `lo`.
    pub fn from_dense(lo: i64, coeffs: &[i64]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(k, &a)| (lo + k as i64, a)))
    }

    pub fn coeff(&self, i: i64) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero `(index, coefficient)` pairs in increasing index order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &a)| (i, a))
    }

    pub fn min_index(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_index - min_index`, or 0 for the zero cycle.
    pub fn span(&self) -> i64 {
        match (self.min_index(), self.max_index()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// Sum of all coefficients.
    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&a| a > 0)
    }

    /// `σʲ`: the coefficient of `Zᵢ` in the result is that of `Z_{i+j}` here.
    pub fn shift(&self, j: i64) -> Self {
        Cycle {
            coeffs: self.coeffs.iter().map(|(&i, &a)| (i - j, a)).collect(),
        }
    }

    /// `G_n`: `G + σ⁻¹(G) + … + σ^{-n+1}(G)` for `n > 0`, zero for `n = 0`,
    /// and `-(σ(G) + … + σ^{|n|}(G))` for `n < 0`.
    pub fn iterate(&self, n: i64) -> Self {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        let (shifts, sign) = if n >= 0 { (-(n - 1)..=0, 1) } else { (1..=-n, -1) };
        for k in shifts {
            for (&i, &a) in &self.coeffs {
                *acc.entry(i - k).or_insert(0) += sign * a;
            }
        }
        acc.retain(|_, a| *a != 0);
        Cycle { coeffs: acc }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        let keys = self.coeffs.keys().chain(other.coeffs.keys());
        Self::from_pairs(
            keys.collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .map(|&i| (i, f(self.coeff(i), other.coeff(i))))
                .collect::<Vec<_>>(),
        )
    }

    fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self::from_pairs(self.iter().map(|(i, a)| (i, f(a))).collect::<Vec<_>>())
    }

    pub fn max(&self, other: &Self) -> Self {
        self.zip_with(other, i64::max)
    }

    pub fn min(&self, other: &Self) -> Self {
        self.zip_with(other, i64::min)
    }

    /// `D⁺ = max(D, 0)`
    pub fn pos_part(&self) -> Self {
        self.map(|a| a.max(0))
    }

    pub fn abs(&self) -> Self {
        self.map(i64::abs)
    }

    /// Coefficientwise `min(1, ·)`.
    pub fn truncate_at_one(&self) -> Self {
        self.map(|a| a.min(1))
    }

    /// `self ≤ other` coefficientwise.
    pub fn le(&self, other: &Self) -> bool {
        (other - self).coeffs.values().all(|&a| a >= 0)
    }

    /// Endpoints `(r, s)` when the nonzero coefficients read `1, -1, …, 1`.
    pub fn pleasant_endpoints(&self) -> Option<(i64, i64)> {
        let mut expect = 1;
        for &a in self.coeffs.values() {
            if a != expect {
                return None;
            }
            expect = -expect;
        }
        // an odd count of terms ends on +1
        (expect == -1).then(|| (self.min_index().unwrap(), self.max_index().unwrap()))
    }

    pub fn is_pleasantly_alternating(&self) -> bool {
        self.pleasant_endpoints().is_some()
    }
}

impl Add for &Cycle {
    type Output = Cycle;

    fn add(self, rhs: &Cycle) -> Cycle {
        Cycle::from_pairs(self.iter().chain(rhs.iter()).collect::<Vec<_>>())
    }
}

impl Sub for &Cycle {
    type Output = Cycle;

    fn sub(self, rhs: &Cycle) -> Cycle {
        self + &(-rhs)
    }
}

impl Neg for &Cycle {
    type Output = Cycle;

    fn neg(self) -> Cycle {
        self.map(|a| -a)
    }
}

impl Mul<&Cycle> for i64 {
    type Output = Cycle;

    fn mul(self, rhs: &Cycle) -> Cycle {
        rhs.map(|a| self * a)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cycle {
            type Output = Cycle;
            fn $m(self, rhs: Cycle) -> Cycle {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, a)) in self.iter().enumerate() {
            let mag = a.abs();
            match (k, a < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "Z{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle({self})")
    }
}

impl Serialize for Cycle {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.collect_seq(self.iter().map(|(i, a)| [i, a]))
    }
}

impl<'de> Deserialize<'de> for Cycle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, i64)> = Vec::deserialize(d)?;
        Ok(Cycle::from_pairs(pairs))
    }
}

/// Outcome of [`classify_sequence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SequenceClass {
    /// `Zᵢ ≤ min(G_n, σⁿ(G_n))` for every `n ≥ N`.
    Pinned { index: i64 },
    /// `G = d · base` with `base` pleasantly alternating.
    AlternatingMultiple { d: i64, base: Cycle },
}

/// Sorts a cycle whose `G_n` are effective for large `n` into the two
/// possible shapes.
///
/// With the support moved to `[0, N]`, put `dᵢ = Σ_{j≤i} gⱼ` and
/// `eᵢ = Σ_{j>i} gⱼ`. For `n ≥ N`,
///
/// `G_n = Σ_{i<N} dᵢZᵢ + d·(Z_N + … + Z_{n-1}) + Σ_{i<N} eᵢZ_{n+i}`
///
/// so the coefficient of `Zᵢ` (`0 ≤ i < N`) in `min(G_n, σⁿ(G_n))` is
/// `min(dᵢ, eᵢ)` independent of `n`. The window is checked by direct
/// computation as well.
pub fn classify_sequence(g: &Cycle, window: i64) -> Result<SequenceClass> {
    let (r, s) = match (g.min_index(), g.max_index()) {
        (Some(r), Some(s)) => (r, s),
        _ => return Err(AlgebraError::HypothesisViolated("zero cycle".into())),
    };
    let big_n = s - r;
    for n in big_n.max(1)..=big_n.max(1) + window {
        let gn = g.iterate(n);
        if !gn.is_effective() {
            return Err(AlgebraError::HypothesisViolated(format!(
                "G_{n} = {gn} is not effective"
            )));
        }
    }
    let total = g.degree();
    let mut partial = 0;
    let mut pinned = None;
    for i in 0..big_n {
        partial += g.coeff(r + i);
        if partial > 0 && total - partial > 0 {
            pinned = Some(r + i);
            break;
        }
    }
    let min_at = |n: i64| {
        let gn = g.iterate(n);
        gn.min(&gn.shift(n))
    };
    if let Some(index) = pinned {
        for n in big_n.max(1)..=big_n.max(1) + window {
            if !Cycle::point(index).le(&min_at(n)) {
                return Err(AlgebraError::HypothesisViolated(format!(
                    "index {index} not pinned at n = {n}"
                )));
            }
        }
        return Ok(SequenceClass::Pinned { index });
    }
    if total <= 0 || g.iter().any(|(_, a)| a % total != 0) {
        return Err(AlgebraError::HypothesisViolated(format!(
            "{g} is not a multiple of an alternating cycle"
        )));
    }
    let base = g.map(|a| a / total);
    if !base.is_pleasantly_alternating() {
        return Err(AlgebraError::NotPleasantlyAlternating(base.to_string()));
    }
    for n in big_n.max(1)..=big_n.max(1) + window {
        let m = min_at(n);
        if !m.is_zero() {
            return Err(AlgebraError::HypothesisViolated(format!(
                "min(G_{n}, σ^{n} G_{n}) = {m}"
            )));
        }
    }
    Ok(SequenceClass::AlternatingMultiple { d: total, base })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(pairs: &[(i64, i64)]) -> Cycle {
        Cycle::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Cycle::point(0).shift(1), Cycle::point(-1));
        assert_eq!(Cycle::zero().shift(5), Cycle::zero());
        let g = c(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(g.shift(-1), c(&[(1, 1), (2, -1), (3, 1)]));
    }

    #[test]
    fn iterate_examples() {
        let g = c(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(g.iterate(3), c(&[(0, 1), (2, 1), (4, 1)]));
        assert_eq!(g.iterate(0), Cycle::zero());
        assert_eq!(g.iterate(-1), c(&[(-1, -1), (0, 1), (1, -1)]));
    }

    #[test]
    fn lattice_operations() {
        let a = c(&[(-1, -1), (0, 1), (1, -1)]);
        assert_eq!(a.pos_part(), Cycle::point(0));
        assert_eq!(Cycle::zero().max(&Cycle::zero()), Cycle::zero());
        assert_eq!(c(&[(0, 1), (1, -1)]).abs(), c(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn alternation() {
        let g = c(&[(-3, 1), (-1, -1), (0, 1), (5, -1), (6, 1)]);
        assert_eq!(g.pleasant_endpoints(), Some((-3, 6)));
        assert!(Cycle::point(0).is_pleasantly_alternating());
        assert!(!c(&[(0, 1), (1, 1)]).is_pleasantly_alternating());
        assert!(!c(&[(0, 1), (1, -1)]).is_pleasantly_alternating());
        assert!(!Cycle::zero().is_pleasantly_alternating());
    }

    #[test]
    fn classify_examples() {
        let g = c(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(
            classify_sequence(&g, 20).unwrap(),
            SequenceClass::AlternatingMultiple { d: 1, base: g.clone() }
        );
        assert_eq!(
            classify_sequence(&c(&[(0, 2)]), 10).unwrap(),
            SequenceClass::AlternatingMultiple { d: 2, base: Cycle::point(0) }
        );
        let g = c(&[(0, 1), (1, 1), (2, -1), (3, 1)]);
        match classify_sequence(&g, 10).unwrap() {
            SequenceClass::Pinned { index } => assert!((0..=2).contains(&index)),
            other => panic!("expected pinned, got {other:?}"),
        }
        assert!(matches!(
            classify_sequence(&c(&[(0, 1), (1, -2)]), 10),
            Err(AlgebraError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn json_form() {
        let g = c(&[(2, 1), (0, 1), (1, -1)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, "[[0,1],[1,-1],[2,1]]");
        assert_eq!(serde_json::from_str::<Cycle>(&s).unwrap(), g);
        assert_eq!(g.to_string(), "Z0 - Z1 + Z2");
    }
}
