//! Deciding whether `Z ∩ σⁱ(Z) = ∅` for all `i ≠ 0`.
//!
//! On a line this is root bookkeeping: no two roots of `f` may differ by an
//! integer (additive) or have ratio a power of `ρ` (multiplicative). On a
//! torus a hypersurface is lonely only if `f` lives on one variable, either
//! `x₁` alone or a single monomial `z = x₂^{i₂}⋯x_d^{i_d}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::parse::ExprTarget;
use crate::poly::Poly;
use crate::scalar::{RatFunc, Scalar, Q};
use crate::sigma::{Completeness, SigmaLine, TorusDescriptor, SYMBOLIC_WINDOW};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `gcd(f, σⁿ(f)) ≠ 1`
    Shift(i64),
    /// A common zero of `f` and `σⁿ(f)`; coordinates in variable order.
    Point { point: Vec<Q>, shift: i64 },
    /// Inputs `first` and `second` satisfy `σ^shift(first) ~ second`.
    Pair { first: usize, second: usize, shift: i64 },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Shift(n) => json!({ "shift": n }),
            Witness::Point { point, shift } => json!({
                "point": point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "shift": shift,
            }),
            Witness::Pair { first, second, shift } => json!({
                "pair": [first, second],
                "shift": shift,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LonelyVerdict {
    pub lonely: bool,
    pub witness: Option<Witness>,
    pub certificate: Completeness,
}

impl LonelyVerdict {
    fn lonely(certificate: Completeness) -> Self {
        LonelyVerdict {
            lonely: true,
            witness: None,
            certificate,
        }
    }

    fn not_lonely(witness: Option<Witness>) -> Self {
        LonelyVerdict {
            lonely: false,
            witness,
            certificate: Completeness::Certified,
        }
    }

    pub fn certified(&self) -> bool {
        self.certificate == Completeness::Certified
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lonely": self.lonely,
            "witness": self.witness.as_ref().map_or(Value::Null, Witness::to_json),
            "certificate": self.certificate.to_string(),
        })
    }
}

fn ceil_i64(x: &Q) -> i64 {
    i64::try_from(x.ceil().to_integer()).expect("bound fits in i64")
}

/// No two roots of `f` differ by a nonzero integer. Two such roots differ by
/// at most `2·B(f)`, so the resultant scan is complete.
pub fn is_lonely_additive(f: &Poly<Q>) -> Result<LonelyVerdict> {
    let bound = f.root_modulus_bound()?;
    for n in 1..=ceil_i64(&(bound * Q::from_integer(2.into()))) {
        if f.resultant(&f.taylor_shift(&Q::from_integer(n.into())))?.is_zero() {
            return Ok(LonelyVerdict::not_lonely(Some(Witness::Shift(n))));
        }
    }
    Ok(LonelyVerdict::lonely(Completeness::Certified))
}

/// No two roots of `f` have ratio `ρⁿ`, `n ≠ 0`.
///
/// Rational `ρ`: root moduli lie in `[1/B(rev f), B(f)]`, which bounds `n`.
/// Symbolic `ρ`: exact when `f` splits into factors with roots `c·ρᵏ`,
/// otherwise a windowed scan.
pub fn is_lonely_multiplicative<S: Scalar>(f: &Poly<S>, rho: &S) -> Result<LonelyVerdict> {
    if f.is_constant() {
        return Err(AlgebraError::ConstantInput("is_lonely_multiplicative"));
    }
    if f.coeff(0).is_zero() {
        return Err(AlgebraError::NormalizeFirst);
    }
    match (f.to_rational_poly(), rho.to_rational()) {
        (Some(fr), Some(r)) => {
            if r.is_zero() || r.abs().is_one() {
                return Err(AlgebraError::InvalidRing(format!("ρ = {r} has modulus 1")));
            }
            let ratio = fr.root_modulus_bound()? / fr.inner_root_bound()?;
            let mut base = r.abs();
            if base < Q::one() {
                base = base.recip();
            }
            let (mut n, mut acc) = (0i64, Q::one());
            loop {
                n += 1;
                acc *= base.clone();
                let shifted = fr.scale_var(&r.pow(n as i32));
                if fr.resultant(&shifted)?.is_zero() {
                    return Ok(LonelyVerdict::not_lonely(Some(Witness::Shift(n))));
                }
                if acc >= ratio {
                    return Ok(LonelyVerdict::lonely(Completeness::Certified));
                }
            }
        }
        _ => {
            let line = SigmaLine::multiplicative(rho.clone())?;
            let point = line.orbit_point(f)?;
            let inc = line.orbit_incidence(f, &point, SYMBOLIC_WINDOW)?;
            Ok(verdict_from_incidence(&inc.indices, inc.completeness))
        }
    }
}

fn verdict_from_incidence(indices: &[i64], completeness: Completeness) -> LonelyVerdict {
    let shift = indices
        .iter()
        .copied()
        .filter(|&i| i != 0)
        .min_by_key(|&i| (i.abs(), i < 0));
    match shift {
        Some(n) => LonelyVerdict::not_lonely(Some(Witness::Shift(n))),
        None => LonelyVerdict::lonely(completeness),
    }
}

/// Whether `V(f)` is lonely for the given line.
pub fn is_lonely_line<S: Scalar>(line: &SigmaLine<S>, f: &Poly<S>) -> Result<LonelyVerdict> {
    let f = line.normalize(f);
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput("is_lonely"));
    }
    if f.is_constant() {
        return Err(AlgebraError::ConstantInput("is_lonely"));
    }
    match line.parameter().to_rational() {
        Some(_) if line.kind() == crate::sigma::LineKind::Additive => {
            let fr = f
                .to_rational_poly()
                .ok_or_else(|| AlgebraError::InvalidRing("additive line needs rational coefficients".into()))?;
            is_lonely_additive(&fr)
        }
        _ => is_lonely_multiplicative(&f, line.parameter()),
    }
}

/// A finite set of orbit points is lonely iff no two of them share an orbit.
pub fn is_lonely_points<S: Scalar>(line: &SigmaLine<S>, points: &[Poly<S>]) -> Result<LonelyVerdict> {
    if points.is_empty() {
        return Err(AlgebraError::ZeroInput("is_lonely_points"));
    }
    let pts = points.iter().map(|q| line.orbit_point(q)).collect::<Result<Vec<_>>>()?;
    let mut certificate = Completeness::Certified;
    for (a, pa) in pts.iter().enumerate() {
        for (b, pb) in pts.iter().enumerate().skip(a + 1) {
            let inc = line.orbit_incidence(pb.q(), pa, SYMBOLIC_WINDOW)?;
            if inc.completeness == Completeness::Windowed {
                certificate = Completeness::Windowed;
            }
            if let Some(&i) = inc.indices.first() {
                return Ok(LonelyVerdict::not_lonely(Some(Witness::Pair {
                    first: a,
                    second: b,
                    shift: i,
                })));
            }
        }
    }
    Ok(LonelyVerdict::lonely(certificate))
}

/// Laurent polynomial over ℚ in `x1, x2, …`; position `k` of an exponent
/// vector belongs to `x_{k+1}`. Vectors carry no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<i64>, Q>,
}

fn trim(mut e: Vec<i64>) -> Vec<i64> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exp(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
            .collect(),
    )
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<i64>, Q)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(trim(e), c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<i64>, c: Q) {
        let v = self.terms.remove(&e).unwrap_or_else(Q::zero) + c;
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Q)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest variable position used, plus one.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Positions of variables that occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&k| self.terms.keys().any(|e| e.get(k).copied().unwrap_or(0) != 0))
            .collect()
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let m = e.iter().enumerate().fold(c.clone(), |m, (k, &a)| m * point[k].pow(a as i32));
            acc + m
        })
    }

    /// `σⁿ`: `x₁ ↦ x₁ + n` if `additive`, and `xₖ ↦ p_k^n xₖ` for the
    /// multiplicative positions `first_mult..`.
    pub fn apply_sigma(&self, torus: &TorusDescriptor, n: i64) -> MultiPoly {
        // multiplicative coordinates start at x2
        let first = 1;
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut scale = c.clone();
            for (k, &a) in e.iter().enumerate().skip(first) {
                if a != 0 {
                    scale *= torus.params()[k - first].pow((n * a) as i32);
                }
            }
            let a1 = e.first().copied().unwrap_or(0);
            if a1 == 0 || n == 0 {
                out.add_term(e.clone(), scale);
                continue;
            }
            // (x₁ + n)^{a1}
            let mut binom = BigInt::one();
            for k in 0..=a1 {
                let mut e2 = e.clone();
                e2[0] = k;
                let coeff = Q::from_integer(binom.clone()) * Q::from_integer(BigInt::from(n)).pow((a1 - k) as i32);
                out.add_term(trim(e2), scale.clone() * coeff);
                binom = binom * BigInt::from(a1 - k) / BigInt::from(k + 1);
            }
        }
        out
    }

    /// Divides by the multiplicative part of the smallest support monomial so
    /// that the support meets `{x₁ⁱ}`.
    pub fn unit_normalize(&self) -> MultiPoly {
        let Some(first) = self.terms.keys().next() else {
            return self.clone();
        };
        let mut unit: Vec<i64> = first.iter().map(|&a| -a).collect();
        if let Some(u0) = unit.first_mut() {
            *u0 = 0;
        }
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| (add_exp(e, &unit), c.clone())))
    }

    /// `f` as a polynomial in `x1` alone.
    pub fn to_x1_poly(&self) -> Option<Poly<Q>> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.len() > 1 || e.first().is_some_and(|&a| a < 0) {
                return None;
            }
            let k = e.first().copied().unwrap_or(0) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Q::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(Poly::from_coeffs(coeffs))
    }
}

impl ExprTarget for MultiPoly {
    fn constant(c: Q) -> Self {
        MultiPoly::from_terms([(Vec::new(), c)])
    }

    fn variable(name: &str) -> Option<Self> {
        let k: usize = name.strip_prefix('x')?.parse().ok()?;
        if k == 0 {
            return None;
        }
        let mut e = vec![0; k];
        e[k - 1] = 1;
        Some(MultiPoly::from_terms([(e, Q::one())]))
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        ExprTarget::add(self, &ExprTarget::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(add_exp(a, b), c.clone() * d.clone());
            }
        }
        out
    }

    fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    fn pow(&self, e: i64) -> std::result::Result<Self, String> {
        if e >= 0 {
            return Ok((0..e).fold(Self::constant(Q::one()), |acc, _| ExprTarget::mul(&acc, self)));
        }
        if self.terms.len() != 1 {
            return Err("negative exponent on a non-monomial".into());
        }
        let (ex, c) = self.terms.iter().next().unwrap();
        Ok(MultiPoly::from_terms([(
            ex.iter().map(|&a| a * e).collect(),
            c.pow(e as i32),
        )]))
    }

    fn div(&self, rhs: &Self) -> std::result::Result<Self, String> {
        match rhs.terms.len() {
            0 => Err("division by zero".into()),
            1 => Ok(ExprTarget::mul(self, &ExprTarget::pow(rhs, -1)?)),
            _ => Err("division by a non-monomial".into()),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
                .collect();
            let neg = Signed::is_negative(c);
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `f = z^shift · g(z)` with `z = x^direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReduction {
    /// Primitive exponent vector, first nonzero entry positive.
    pub direction: Vec<i64>,
    pub shift: i64,
    /// Polynomial in `z` with nonzero constant term.
    pub g: Poly<Q>,
}

impl LineReduction {
    pub fn expand(&self) -> MultiPoly {
        MultiPoly::from_terms(self.g.coeffs().iter().enumerate().map(|(k, c)| {
            let m = self.shift + k as i64;
            (self.direction.iter().map(|&v| v * m).collect(), c.clone())
        }))
    }
}

/// Writes `f` as a Laurent polynomial in one monomial, if its support lies
/// on a line through the origin.
pub fn lattice_line_reduce(f: &MultiPoly) -> Option<LineReduction> {
    let first = f.terms.keys().find(|e| !e.is_empty())?;
    let g = first.iter().fold(0i64, |g, &a| g.gcd(&a));
    let lead = first.iter().find(|&&a| a != 0).copied()?;
    let sign = if lead < 0 { -1 } else { 1 };
    let dir: Vec<i64> = first.iter().map(|&a| sign * a / g).collect();
    let pivot = dir.iter().position(|&a| a != 0)?;
    let mut by_k: BTreeMap<i64, Q> = BTreeMap::new();
    for (e, c) in &f.terms {
        let a = e.get(pivot).copied().unwrap_or(0);
        if a % dir[pivot] != 0 {
            return None;
        }
        let k = a / dir[pivot];
        let expect: Vec<i64> = trim(dir.iter().map(|&v| v * k).collect());
        if *e != expect {
            return None;
        }
        by_k.insert(k, c.clone());
    }
    let lo = *by_k.keys().next()?;
    let hi = *by_k.keys().next_back()?;
    let coeffs = (lo..=hi).map(|k| by_k.get(&k).cloned().unwrap_or_else(Q::zero)).collect();
    Some(LineReduction {
        direction: dir,
        shift: lo,
        g: Poly::from_coeffs(coeffs),
    })
}

/// Torus-level decision.
pub fn is_lonely(torus: &TorusDescriptor, f: &MultiPoly) -> Result<LonelyVerdict> {
    let nmult = torus.params().len();
    let used = f.used_vars();
    for &k in &used {
        let ok = if k == 0 { torus.has_additive() } else { k <= nmult };
        if !ok {
            return Err(AlgebraError::DimensionMismatch(format!(
                "x{} is not a coordinate of this torus",
                k + 1
            )));
        }
    }
    if f.terms.keys().any(|e| e.first().is_some_and(|&a| a < 0)) {
        return Err(AlgebraError::DimensionMismatch("x1 is not invertible".into()));
    }
    let f = f.unit_normalize();
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput("is_lonely"));
    }
    let used = f.used_vars();
    let uses_x1 = used.contains(&0);
    let uses_mult = used.iter().any(|&k| k > 0);
    if uses_x1 && !uses_mult {
        return is_lonely_additive(&f.to_x1_poly().expect("x1 only"));
    }
    if !uses_x1 && !uses_mult {
        return Err(AlgebraError::ConstantInput("is_lonely: f is a unit"));
    }
    if !uses_x1 {
        if let Some(red) = lattice_line_reduce(&f) {
            let rho = red
                .direction
                .iter()
                .enumerate()
                .skip(1)
                .fold(Q::one(), |acc, (k, &v)| acc * torus.params()[k - 1].pow(v as i32));
            return is_lonely_multiplicative(&red.g, &rho);
        }
    }
    Ok(LonelyVerdict::not_lonely(find_point_witness(torus, &f)))
}

/// Checks that `point` is a common zero of `f` and `σ^shift(f)` with nonzero
/// multiplicative coordinates. `point` lists the torus coordinates in order.
pub fn validate_point(torus: &TorusDescriptor, f: &MultiPoly, point: &[Q], shift: i64) -> bool {
    let full = full_point(torus, point);
    let mult_ok = full.iter().skip(1).all(|c| !c.is_zero());
    mult_ok && f.eval(&full).is_zero() && f.apply_sigma(torus, shift).eval(&full).is_zero()
}

fn full_point(torus: &TorusDescriptor, point: &[Q]) -> Vec<Q> {
    if torus.has_additive() {
        point.to_vec()
    } else {
        std::iter::once(Q::zero()).chain(point.iter().cloned()).collect()
    }
}

/// Best effort: fix all but two variables, eliminate one by a resultant and
/// look for rational solutions.
fn find_point_witness(torus: &TorusDescriptor, f: &MultiPoly) -> Option<Witness> {
    let used = f.used_vars();
    if used.len() < 2 {
        return None;
    }
    let total = 1 + torus.params().len();
    let (va, vb) = (used[0], used[1]);
    let fills = [Q::one(), Q::from_integer(2.into()), -Q::one()];
    for n in 1..=3 {
        let fnn = f.apply_sigma(torus, n);
        for fill in &fills {
            let mut base = vec![fill.clone(); total];
            base[0] = if torus.has_additive() { fill.clone() } else { Q::zero() };
            for a in solve_pair(f, &fnn, va, vb, &base) {
                let pt: Vec<Q> = if torus.has_additive() { a.clone() } else { a[1..].to_vec() };
                if validate_point(torus, f, &pt, n) {
                    return Some(Witness::Point { point: pt, shift: n });
                }
            }
        }
    }
    None
}

/// Bivariate slice of `f` in positions `(va, vb)` as a polynomial in `b` over
/// ℚ(a), with other coordinates from `base` and monomial units cleared.
fn bivariate(f: &MultiPoly, va: usize, vb: usize, base: &[Q]) -> Poly<RatFunc> {
    let mut terms: Vec<(i64, i64, Q)> = Vec::new();
    for (e, c) in &f.terms {
        let mut coeff = c.clone();
        for (k, &a) in e.iter().enumerate() {
            if k != va && k != vb && a != 0 {
                coeff *= base[k].pow(a as i32);
            }
        }
        terms.push((e.get(va).copied().unwrap_or(0), e.get(vb).copied().unwrap_or(0), coeff));
    }
    let amin = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
    let bmin = terms.iter().map(|t| t.1).min().unwrap_or(0).min(0);
    let mut rows: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for (a, b, c) in terms {
        let row = rows.entry((b - bmin) as usize).or_default();
        let ai = (a - amin) as usize;
        if row.len() <= ai {
            row.resize(ai + 1, Q::zero());
        }
        row[ai] += c;
    }
    let deg = rows.keys().next_back().copied().unwrap_or(0);
    let coeffs = (0..=deg)
        .map(|k| RatFunc::from_poly(Poly::from_coeffs(rows.remove(&k).unwrap_or_default())))
        .collect();
    Poly::from_coeffs(coeffs)
}

fn solve_pair(f: &MultiPoly, g: &MultiPoly, va: usize, vb: usize, base: &[Q]) -> Vec<Vec<Q>> {
    let (fb, gb) = (bivariate(f, va, vb, base), bivariate(g, va, vb, base));
    let mut a_values: Vec<Q> = Vec::new();
    if let Ok(res) = fb.resultant(&gb) {
        if res.is_zero() {
            a_values.extend((1..=4).flat_map(|k| [Q::from_integer(k.into()), -Q::from_integer(k.into())]));
        } else if let Some(roots) = res.numer().rational_roots() {
            a_values.extend(roots);
        }
    }
    let mut out = Vec::new();
    for a in a_values {
        if va > 0 && a.is_zero() {
            continue;
        }
        let at = |p: &Poly<RatFunc>| -> Poly<Q> {
            Poly::from_coeffs(p.coeffs().iter().map(|c| c.numer().eval(&a) / c.denom().eval(&a)).collect())
        };
        let (fa, ga) = (at(&fb), at(&gb));
        let Ok(common) = fa.gcd(&ga) else { continue };
        if common.is_constant() {
            continue;
        }
        for b in common.rational_roots().unwrap_or_default() {
            if b.is_zero() {
                continue;
            }
            let mut pt = base.to_vec();
            pt[va] = a.clone();
            pt[vb] = b;
            out.push(pt);
        }
    }
    out
}
