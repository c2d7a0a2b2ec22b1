//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::scalar::{Scalar, Q};

/// Polynomial in one variable, coefficients stored low degree first with no
/// trailing zeros. The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `u - c`
    pub fn linear_root(c: S) -> Self {
        Self::from_coeffs(vec![-c, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lc(&self) -> &S {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn as_monomial(&self) -> Option<(S, usize)> {
        if self.num_terms() != 1 {
            return None;
        }
        let k = self.degree()?;
        Some((self.coeffs[k].clone(), k))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Multiply by `u^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `u^k`; the caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `f(u + a)`
    pub fn taylor_shift(&self, a: &S) -> Self {
        if a.is_zero() || self.is_constant() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let t = c[k + 1].clone() * a.clone();
                c[k] = c[k].clone() + t;
            }
        }
        Self::from_coeffs(c)
    }

    /// `f(c * u)`
    pub fn scale_var(&self, c: &S) -> Self {
        let mut pw = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Self::from_coeffs(out)
    }

    /// `u^deg f(1/u)`
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        if let Some((q, r)) = S::div_rem_coeffs(&self.coeffs, &d.coeffs) {
            return (Self::from_coeffs(q), Self::from_coeffs(r));
        }
        let inv_lc = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut quot = vec![S::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = r[k + dd].clone() * inv_lc.clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * di.clone();
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdUndefined);
        }
        if let (Some(a), Some(b)) = (self.to_rational_poly(), other.to_rational_poly()) {
            if let Some(g) = crate::modgcd::gcd_rational(&a, &b) {
                return Ok(Self::from_rational_poly(&g));
            }
        }
        // monic remainders keep coefficient growth in check
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Err(AlgebraError::ZeroInput("lcm"));
        }
        let g = self.gcd(other)?;
        Ok((self * &other.exact_div(&g).expect("gcd divides")).monic())
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInput("squarefree_part"));
        }
        if self.is_constant() {
            return Ok(Self::one());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g).expect("gcd divides").monic())
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let (Some(sa), Some(sd)) = (self.degree(), d.degree()) else {
            return Self::zero();
        };
        if sa < sd {
            return self.clone();
        }
        let e = (sa - sd + 1) as i64;
        self.scale(&d.lc().pow(e)).rem(d)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// The same polynomial when every coefficient is rational.
    pub fn to_rational_poly(&self) -> Option<Poly<Q>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_rational())
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_coeffs(coeffs))
    }

    pub fn from_rational_poly(p: &Poly<Q>) -> Self {
        p.map_coeffs(S::from_rational)
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, var }
    }

    /// Resultant `Res_u(self, other)` by the subresultant remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<S> {
        if self.is_zero() || other.is_zero() {
            return Err(AlgebraError::ZeroInput("resultant"));
        }
        Ok(subresultant(self, other))
    }
}

fn subresultant<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> S {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = S::one();
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    if b.degree() == Some(0) {
        return sign * b.lc().pow(a.degree().unwrap() as i64);
    }
    let mut g = S::one();
    let mut h = S::one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (dega - degb) as i64;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign = -sign;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return S::zero();
        }
        a = b;
        let divisor = g.clone() * h.pow(delta);
        b = r.scale(&divisor.inv());
        g = a.lc().clone();
        h = g.pow(delta) / h.pow(delta - 1);
        if b.degree() == Some(0) {
            let dega = a.degree().unwrap() as i64;
            let hh = b.lc().pow(dega) / h.pow(dega - 1);
            return sign * hh;
        }
    }
}

/// Rational `x ≥ r^{1/k}` with denominator 16.
fn root_upper(r: &Q, k: u32) -> Q {
    use num_bigint::BigInt;
    let scale = BigInt::from(16).pow(k);
    let target = (r * Q::from_integer(scale)).ceil().to_integer();
    let mut n = target.nth_root(k);
    if n.pow(k) < target {
        n += 1;
    }
    Q::new(n, BigInt::from(16))
}

impl Poly<Q> {
    /// `1 + max |aᵢ/a_d|`: every complex root has modulus at most this.
    pub fn cauchy_root_bound(&self) -> Result<Q> {
        let (cauchy, _) = self.root_bounds("cauchy_root_bound")?;
        Ok(cauchy)
    }

    /// The smaller of the Cauchy bound and the Fujiwara bound
    /// `2·max |a_{d-k}/a_d|^{1/k}` (k-th roots rounded up to sixteenths).
    pub fn root_modulus_bound(&self) -> Result<Q> {
        let (cauchy, fujiwara) = self.root_bounds("root_modulus_bound")?;
        Ok(cauchy.min(fujiwara))
    }

    fn root_bounds(&self, what: &'static str) -> Result<(Q, Q)> {
        let d = match self.degree() {
            None => return Err(AlgebraError::ZeroInput(what)),
            Some(0) => return Err(AlgebraError::ConstantInput(what)),
            Some(d) => d,
        };
        let lead = self.lc().abs();
        let ratios: Vec<Q> = self.coeffs[..d].iter().map(|c| c.abs() / lead.clone()).collect();
        let cauchy = Q::one() + ratios.iter().max().cloned().unwrap_or_else(Q::zero);
        let fujiwara = ratios
            .iter()
            .enumerate()
            .map(|(i, r)| root_upper(r, (d - i) as u32))
            .max()
            .unwrap_or_else(Q::zero)
            * Q::from_integer(2.into());
        Ok((cauchy, fujiwara))
    }

    /// Positive lower bound on the modulus of every nonzero root, from the
    /// Cauchy bound of the reversed polynomial.
    pub fn inner_root_bound(&self) -> Result<Q> {
        let v = self.valuation().ok_or(AlgebraError::ZeroInput("inner_root_bound"))?;
        let core = self.shift_down(v);
        if core.is_constant() {
            return Err(AlgebraError::ConstantInput("inner_root_bound"));
        }
        Ok(core.reverse().root_modulus_bound()?.recip())
    }

    /// All rational roots, without multiplicity, by the rational root test.
    /// Coefficients whose integer forms are too large to enumerate divisors of
    /// are reported as `None`.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut roots = Vec::new();
        let mut f = self.clone();
        if let Some(v) = f.valuation() {
            if v > 0 {
                roots.push(Q::zero());
                f = f.shift_down(v);
            }
        }
        if f.is_constant() {
            return Some(roots);
        }
        let f = f.squarefree_part().ok()?;
        let den_lcm = f
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = f
            .coeffs
            .iter()
            .map(|c| (c.clone() * Q::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let a0 = divisors(&ints[0].abs())?;
        let an = divisors(&ints[ints.len() - 1].abs())?;
        let mut cands: Vec<Q> = Vec::new();
        for p in &a0 {
            for qd in &an {
                let c = Q::new(p.clone(), qd.clone());
                cands.push(c.clone());
                cands.push(-c);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if f.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;

    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;

    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;

    fn neg(self) -> Poly<S> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;

    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(S::mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;

            fn $m(self, rhs: Poly<S>) -> Poly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;

    fn neg(self) -> Poly<S> {
        -&self
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a Poly<S>,
    var: &'a str,
}

/// Writes `c * var^k` terms in descending order: `3*u^2 - u + 1/2`.
pub(crate) fn write_terms<S: Scalar>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, S)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = if neg { -c } else { c };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let body = if a.is_atomic() {
            a.to_string()
        } else {
            format!("({a})")
        };
        if k == 0 {
            f.write_str(&body)?;
            continue;
        }
        if !a.is_one() {
            write!(f, "{body}*")?;
        }
        if k == 1 {
            f.write_str(var)?;
        } else {
            write!(f, "{var}^{k}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .poly
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(k, c)| (k as i64, c.clone()));
        write_terms(f, terms, self.var)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("u").fmt(f)
    }
}
