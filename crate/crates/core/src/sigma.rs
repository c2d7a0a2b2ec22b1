//! The automorphism `σ` on a one-dimensional `T`: `u ↦ u + 1` on `ℚ[u]` or
//! `u ↦ p·u` on `F[u, u⁻¹]`, and orbit bookkeeping for its action.
//!
//! Orientation: `σᵐ(f)(u) = f(u + m)` in the additive case and `f(pᵐu)` in
//! the multiplicative case. The coefficient of `Zᵢ` in a support cycle is the
//! exponent of `σⁱ(q)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::laurent::LaurentPoly;
use crate::poly::Poly;
use crate::scalar::{RatFunc, Scalar, Q};

/// Default scan radius when no completeness bound is available.
pub const SYMBOLIC_WINDOW: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LineKind {
    Additive,
    Multiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Completeness {
    Certified,
    Windowed,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Certified => "CERTIFIED",
            Completeness::Windowed => "WINDOWED",
        })
    }
}

/// Indices `i` with `gcd(f, σⁱ(q)) ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub indices: Vec<i64>,
    pub completeness: Completeness,
    /// The scanned range `[-radius, radius]`.
    pub radius: i64,
}

/// `(T, σ)` for one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLine<S> {
    kind: LineKind,
    p: S,
}

/// Defining generator of a `σ`-orbit's base point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPoint<S>(Poly<S>);

impl<S: Scalar> OrbitPoint<S> {
    pub fn q(&self) -> &Poly<S> {
        &self.0
    }
}

impl<S: Scalar> SigmaLine<S> {
    /// `σ(u) = u + 1` over ℚ.
    pub fn additive() -> Result<Self> {
        if S::parameter().is_some() {
            return Err(AlgebraError::InvalidRing(
                "the additive line is defined over the rationals only".into(),
            ));
        }
        Ok(SigmaLine {
            kind: LineKind::Additive,
            p: S::one(),
        })
    }

    /// `σ(u) = p·u`; `p` is a rational other than `0, ±1`, or the symbol `p`.
    pub fn multiplicative(p: S) -> Result<Self> {
        match p.to_rational() {
            Some(r) => {
                if r.is_zero() || r.abs().is_one() {
                    return Err(AlgebraError::InvalidRing(format!(
                        "parameter {r} is zero or a root of unity"
                    )));
                }
            }
            None => {
                if Some(&p) != S::parameter().as_ref() {
                    return Err(AlgebraError::InvalidRing(format!(
                        "symbolic parameter must be p itself, got {p}"
                    )));
                }
            }
        }
        Ok(SigmaLine {
            kind: LineKind::Multiplicative,
            p,
        })
    }

    pub fn kind(&self) -> LineKind {
        self.kind
    }

    /// The multiplier `p` (one for the additive line).
    pub fn parameter(&self) -> &S {
        &self.p
    }

    pub fn is_symbolic(&self) -> bool {
        self.kind == LineKind::Multiplicative && self.p.to_rational().is_none()
    }

    pub fn apply(&self, f: &Poly<S>, m: i64) -> Poly<S> {
        if m == 0 {
            return f.clone();
        }
        match self.kind {
            LineKind::Additive => f.taylor_shift(&S::from_int(m)),
            LineKind::Multiplicative => f.scale_var(&self.p.pow(m)),
        }
    }

    /// # Panics
    /// On the additive line, if `f` has negative exponents (they are not in `ℚ[u]`).
    pub fn apply_laurent(&self, f: &LaurentPoly<S>, m: i64) -> LaurentPoly<S> {
        match self.kind {
            LineKind::Additive => {
                let poly = f.to_poly().expect("additive line acts on ℚ[u] only");
                LaurentPoly::from_poly(self.apply(&poly, m))
            }
            LineKind::Multiplicative => f.scale_var(&self.p.pow(m)),
        }
    }

    /// Canonical generator of the ideal `(f)` of `T`: monic, and with the
    /// power of `u` removed on the multiplicative line.
    pub fn normalize(&self, f: &Poly<S>) -> Poly<S> {
        if f.is_zero() {
            return Poly::zero();
        }
        let f = match self.kind {
            LineKind::Additive => f.clone(),
            LineKind::Multiplicative => f.shift_down(f.valuation().unwrap_or(0)),
        };
        f.monic()
    }

    pub fn normalize_laurent(&self, f: &LaurentPoly<S>) -> Result<Poly<S>> {
        match self.kind {
            LineKind::Additive => f
                .to_poly()
                .map(|p| p.monic())
                .ok_or(AlgebraError::InvalidRing("negative exponent in ℚ[u]".into())),
            LineKind::Multiplicative => Ok(f.normalize()?.1.monic()),
        }
    }

    /// Whether `f` is a unit of `T`.
    pub fn is_unit(&self, f: &Poly<S>) -> bool {
        !f.is_zero() && self.normalize(f).is_one()
    }

    pub fn gcd(&self, a: &Poly<S>, b: &Poly<S>) -> Result<Poly<S>> {
        Ok(self.normalize(&a.gcd(b)?))
    }

    pub fn lcm(&self, a: &Poly<S>, b: &Poly<S>) -> Result<Poly<S>> {
        Ok(self.normalize(&a.lcm(b)?))
    }

    /// `a | b` in `T`.
    pub fn divides(&self, a: &Poly<S>, b: &Poly<S>) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        self.normalize(a).divides(b)
    }

    /// `b / a` in `T`, normalized, when `a | b`.
    pub fn quotient(&self, b: &Poly<S>, a: &Poly<S>) -> Option<Poly<S>> {
        let a = self.normalize(a);
        b.exact_div(&a).map(|q| self.normalize(&q))
    }

    pub fn orbit_point(&self, q: &Poly<S>) -> Result<OrbitPoint<S>> {
        let n = self.normalize(q);
        if n.is_zero() {
            return Err(AlgebraError::ZeroInput("orbit point"));
        }
        if n.is_constant() {
            return Err(AlgebraError::ConstantInput("orbit point"));
        }
        Ok(OrbitPoint(n))
    }

    fn scan(&self, f: &Poly<S>, q: &Poly<S>, radius: i64) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for i in -radius..=radius {
            if !f.gcd(&self.apply(q, i))?.is_constant() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// All `i` with `gcd(f, σⁱ(q)) ≠ 1`.
    ///
    /// Additive: a shared root `α = β - i` forces `|i| ≤ B(f) + B(q)`.
    /// Rational `p`: `|p|^i = |β|/|α|` is bounded through outer and inner root
    /// bounds. Symbolic `p`: exact when either side splits into factors with
    /// roots `c·pᵏ`; otherwise a scan of radius `window`.
    pub fn orbit_incidence(&self, f: &Poly<S>, q: &OrbitPoint<S>, window: i64) -> Result<Incidence> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroInput("orbit_incidence"));
        }
        let f = self.normalize(f);
        if f.is_constant() {
            return Ok(Incidence {
                indices: Vec::new(),
                completeness: Completeness::Certified,
                radius: 0,
            });
        }
        let q = q.q();
        let rational = (
            f.to_rational_poly(),
            q.to_rational_poly(),
            self.p.to_rational(),
        );
        match (self.kind, rational) {
            (LineKind::Additive, (Some(fr), Some(qr), _)) => {
                let b = fr.root_modulus_bound()? + qr.root_modulus_bound()?;
                let radius = ceil(&b);
                Ok(Incidence {
                    indices: self.scan(&f, q, radius)?,
                    completeness: Completeness::Certified,
                    radius,
                })
            }
            (LineKind::Additive, _) => Err(AlgebraError::InvalidRing(
                "additive line needs rational coefficients".into(),
            )),
            (LineKind::Multiplicative, (Some(fr), Some(qr), Some(p))) => {
                let ratio = (qr.root_modulus_bound()? / fr.inner_root_bound()?)
                    .max(fr.root_modulus_bound()? / qr.inner_root_bound()?);
                let radius = log_ceil(&p, &ratio);
                Ok(Incidence {
                    indices: self.scan(&f, q, radius)?,
                    completeness: Completeness::Certified,
                    radius,
                })
            }
            (LineKind::Multiplicative, _) if self.is_symbolic() => {
                let fs = f.map_coeffs(|c| c.to_ratfunc());
                let qs = q.map_coeffs(|c| c.to_ratfunc());
                let (mf, mq) = (monomial_roots(&fs), monomial_roots(&qs));
                if mf.complete || mq.complete {
                    let mut idx = Vec::new();
                    for (k, hf) in &mf.parts {
                        for (l, hq) in &mq.parts {
                            if !hf.gcd(hq)?.is_constant() {
                                idx.push(l - k);
                            }
                        }
                    }
                    idx.sort();
                    idx.dedup();
                    let radius = idx.iter().map(|i| i.abs()).max().unwrap_or(0);
                    return Ok(Incidence {
                        indices: idx,
                        completeness: Completeness::Certified,
                        radius,
                    });
                }
                Ok(Incidence {
                    indices: self.scan(&f, q, window)?,
                    completeness: Completeness::Windowed,
                    radius: window,
                })
            }
            _ => Ok(Incidence {
                indices: self.scan(&f, q, window)?,
                completeness: Completeness::Windowed,
                radius: window,
            }),
        }
    }

    /// Largest `m` with `σⁱ(q)^m | f`.
    pub fn multiplicity(&self, f: &Poly<S>, q: &OrbitPoint<S>, i: i64) -> Result<u32> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroInput("multiplicity"));
        }
        let d = self.normalize(&self.apply(q.q(), i));
        let mut f = f.clone();
        let mut m = 0;
        while let Some(next) = f.exact_div(&d) {
            f = next;
            m += 1;
        }
        Ok(m)
    }

    /// Some `i` with `σⁱ(q1)` associate to `q2`.
    pub fn same_orbit(&self, q1: &OrbitPoint<S>, q2: &OrbitPoint<S>) -> Result<Option<i64>> {
        if q1.q().degree() != q2.q().degree() {
            return Ok(None);
        }
        let inc = self.orbit_incidence(q2.q(), q1, SYMBOLIC_WINDOW)?;
        Ok(inc
            .indices
            .into_iter()
            .find(|&i| self.normalize(&self.apply(q1.q(), i)) == *q2.q()))
    }
}

fn ceil(x: &Q) -> i64 {
    let c = x.ceil().to_integer();
    i64::try_from(c).expect("bound fits in i64")
}

/// Least `k ≥ 0` with `max(|p|, 1/|p|)^k ≥ m`.
fn log_ceil(p: &Q, m: &Q) -> i64 {
    let mut base = p.abs();
    if base < Q::one() {
        base = base.recip();
    }
    let mut k = 0;
    let mut acc = Q::one();
    while acc < *m {
        acc *= base.clone();
        k += 1;
    }
    k
}

/// Factors of `f ∈ ℚ(p)[u]` whose roots have the form `c·pᵏ` with `c`
/// algebraic over ℚ: `parts[k]` is the monic `h ∈ ℚ[w]` such that
/// `pᵏ^{deg h}·h(u/pᵏ)` divides `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRoots {
    pub parts: BTreeMap<i64, Poly<Q>>,
    /// Whether these factors account for the whole degree of `f`.
    pub complete: bool,
}

/// Clears denominators, substitutes `u = pᵏw` and takes the gcd of the
/// coefficients of each power of `p`. A root `c·pᵏ` needs two terms of
/// equal `p`-degree after the substitution, so `|k|` is at most the spread
/// of `p`-degrees.
pub fn monomial_roots(f: &Poly<RatFunc>) -> MonomialRoots {
    let mut parts = BTreeMap::new();
    let Some(v) = f.valuation() else {
        return MonomialRoots { parts, complete: true };
    };
    let f = f.shift_down(v);
    let deg = f.degree().unwrap_or(0);
    let den = f
        .coeffs()
        .iter()
        .fold(Poly::<Q>::one(), |acc, c| acc.lcm(c.denom()).expect("nonzero"));
    let mut terms: Vec<(i64, i64, Q)> = Vec::new();
    for (a, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let num = c.numer() * &den.exact_div(c.denom()).expect("lcm");
        for (b, x) in num.coeffs().iter().enumerate() {
            if !x.is_zero() {
                terms.push((a as i64, b as i64, x.clone()));
            }
        }
    }
    let lo = terms.iter().map(|t| t.1).min().unwrap_or(0);
    let hi = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut found = 0;
    for k in -(hi - lo)..=(hi - lo) {
        let mut slices: BTreeMap<i64, Vec<Q>> = BTreeMap::new();
        for (a, b, x) in &terms {
            let row = slices.entry(k * a + b).or_default();
            if row.len() <= *a as usize {
                row.resize(*a as usize + 1, Q::zero());
            }
            row[*a as usize] += x.clone();
        }
        let mut h = Poly::<Q>::zero();
        for row in slices.into_values() {
            h = h.gcd(&Poly::from_coeffs(row)).unwrap_or_else(|_| Poly::zero());
            if h.is_one() {
                break;
            }
        }
        if h.is_zero() {
            continue;
        }
        let h = h.shift_down(h.valuation().unwrap_or(0));
        if !h.is_constant() {
            found += h.degree().unwrap();
            parts.insert(k, h.monic());
        }
    }
    MonomialRoots {
        parts,
        complete: found == deg,
    }
}

/// Data of a torus `T = k[x₁, x₂^{±1}, …]` (additive `x₁` present) or
/// `k[x₂^{±1}, …]`, with `σ(x₁) = x₁ + 1` and `σ(xᵢ) = pᵢxᵢ`.
/// Multiplicative variables are named `x2, x3, …` in both cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDescriptor {
    additive: bool,
    params: Vec<Q>,
}

impl TorusDescriptor {
    /// Rejects parameters that fail to generate a free abelian group of rank
    /// `params.len()`.
    pub fn new(additive: bool, params: Vec<Q>) -> Result<Self> {
        if !additive && params.is_empty() {
            return Err(AlgebraError::InvalidRing("torus of dimension 0".into()));
        }
        if let Some(bad) = params.iter().find(|p| p.is_zero()) {
            return Err(AlgebraError::InvalidRing(format!("parameter {bad} is zero")));
        }
        if multiplicative_rank(&params) != params.len() {
            return Err(AlgebraError::InvalidRing(format!(
                "parameters {} satisfy a multiplicative relation",
                params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
        Ok(TorusDescriptor { additive, params })
    }

    pub fn dim(&self) -> usize {
        self.params.len() + usize::from(self.additive)
    }

    pub fn has_additive(&self) -> bool {
        self.additive
    }

    /// `p₂, p₃, …` in variable order.
    pub fn params(&self) -> &[Q] {
        &self.params
    }
}

/// Pairwise coprime integers `> 1` such that every input is a product of
/// their powers.
fn coprime_base(inputs: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = inputs.iter().filter(|n| **n > BigInt::one()).cloned().collect();
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if g > BigInt::one() {
                    let a = &base[i] / &g;
                    let b = &base[j] / &g;
                    base.remove(j);
                    base.remove(i);
                    base.extend([g, a, b].into_iter().filter(|x| *x > BigInt::one()));
                    base.sort();
                    base.dedup();
                    continue 'outer;
                }
            }
        }
        return base;
    }
}

fn valuation_in(mut n: BigInt, b: &BigInt) -> i64 {
    let mut v = 0;
    while (&n % b).is_zero() {
        n /= b;
        v += 1;
    }
    v
}

/// Rank of the subgroup of `ℚ^×` generated by `params` modulo torsion.
pub fn multiplicative_rank(params: &[Q]) -> usize {
    let ints: Vec<BigInt> = params
        .iter()
        .flat_map(|p| [p.numer().abs(), p.denom().abs()])
        .collect();
    let base = coprime_base(&ints);
    let mut rows: Vec<Vec<Q>> = params
        .iter()
        .map(|p| {
            base.iter()
                .map(|b| {
                    let v = valuation_in(p.numer().abs(), b) - valuation_in(p.denom().abs(), b);
                    Q::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    rank(&mut rows)
}

fn rank(rows: &mut [Vec<Q>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / rows[r][c].clone();
                for k in c..cols {
                    let t = f.clone() * rows[r][k].clone();
                    rows[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}
