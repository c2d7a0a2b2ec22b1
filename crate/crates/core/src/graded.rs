//! The rings `B(G, H, J) = ⊕ H[(-G_n)⁺] J[G_n⁺] tⁿ` inside `T[t, t⁻¹; σ]`,
//! with `T` a principal ideal domain so that every piece is `gₙ·T·tⁿ`.

use std::collections::BTreeMap;

use crate::cycles::Cycle;
use crate::error::{AlgebraError, Result};
use crate::fraction::Frac;
use crate::lonely::{is_lonely_line, Witness};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::sigma::{OrbitPoint, SigmaLine};
use crate::skew::SkewElement;

/// A graded subring of `T[t, t⁻¹; σ]` given by one ideal generator per degree.
pub trait Pieces<S: Scalar> {
    fn line(&self) -> &SigmaLine<S>;

    /// Normalized generator `gₙ` of the degree-`n` piece.
    fn generator(&self, n: i64) -> Result<Poly<S>>;

    /// Whether every coefficient of `a` lies in the matching piece.
    fn contains(&self, a: &SkewElement<S>) -> Result<bool> {
        for (n, c) in a.terms() {
            let g = self.generator(n)?;
            let Ok(core) = self.line().normalize_laurent(c) else {
                return Ok(false);
            };
            if !g.divides(&core) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `∏ᵢ σⁱ(h)^{dᵢ}` for effective `D = Σ dᵢZᵢ`.
pub fn translate_product<S: Scalar>(line: &SigmaLine<S>, h: &Poly<S>, d: &Cycle) -> Result<Poly<S>> {
    if !d.is_effective() {
        return Err(AlgebraError::CycleNotEffective(d.to_string()));
    }
    if line.is_unit(h) {
        return Ok(Poly::one());
    }
    let mut acc = Poly::one();
    for (i, a) in d.iter() {
        acc = &acc * &line.apply(h, i).pow(a as u32);
    }
    Ok(line.normalize(&acc))
}

/// Data `(σ, q, G, h, j)` of one `B(G, H, J)` with `H = (h)`, `J = (j)`
/// supported on `Z = V(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRingSpec<S> {
    line: SigmaLine<S>,
    orbit: OrbitPoint<S>,
    g: Cycle,
    h: Poly<S>,
    j: Poly<S>,
}

impl<S: Scalar> GradedRingSpec<S> {
    /// Validates alternation of `G`, that `h` and `j` are supported on
    /// `V(q)`, and that `V(q)` is `σ`-lonely.
    pub fn new(line: SigmaLine<S>, q: &Poly<S>, g: Cycle, h: &Poly<S>, j: &Poly<S>) -> Result<Self> {
        let spec = Self::new_unchecked(line, q, g, h, j)?;
        if !spec.g.is_pleasantly_alternating() {
            return Err(AlgebraError::NotPleasantlyAlternating(spec.g.to_string()));
        }
        let q = spec.orbit.q();
        if q.gcd(&q.derivative())?.degree() != Some(0) {
            return Err(AlgebraError::InvalidSpec(format!("orbit generator {q} is not squarefree")));
        }
        for (name, f) in [("h", &spec.h), ("j", &spec.j)] {
            let k = f.degree().unwrap_or(0) as u32;
            if !f.divides(&q.pow(k)) {
                return Err(AlgebraError::InvalidSpec(format!(
                    "{name} = {f} is not supported on V({q})"
                )));
            }
        }
        let verdict = is_lonely_line(&spec.line, q)?;
        if !verdict.certified() {
            return Err(AlgebraError::Uncertified(q.to_string()));
        }
        if !verdict.lonely {
            let shift = match verdict.witness {
                Some(Witness::Shift(n)) => n,
                _ => 0,
            };
            return Err(AlgebraError::OrbitViolation {
                first: q.to_string(),
                second: spec.line.normalize(&spec.line.apply(q, shift)).to_string(),
                shift,
            });
        }
        Ok(spec)
    }

    /// Builds without the alternation, support or loneliness checks. Used for
    /// negative controls.
    pub fn new_unchecked(line: SigmaLine<S>, q: &Poly<S>, g: Cycle, h: &Poly<S>, j: &Poly<S>) -> Result<Self> {
        if h.is_zero() || j.is_zero() {
            return Err(AlgebraError::ZeroInput("ideal generator"));
        }
        let orbit = line.orbit_point(q)?;
        let (h, j) = (line.normalize(h), line.normalize(j));
        Ok(GradedRingSpec { line, orbit, g, h, j })
    }

    pub fn orbit(&self) -> &OrbitPoint<S> {
        &self.orbit
    }

    pub fn cycle(&self) -> &Cycle {
        &self.g
    }

    pub fn h(&self) -> &Poly<S> {
        &self.h
    }

    pub fn j(&self) -> &Poly<S> {
        &self.j
    }

    /// `N = s - r` for the endpoints of `G`.
    pub fn span(&self) -> i64 {
        self.g.span()
    }

    /// The same data with `H` and `J` exchanged: the image under `ψ`.
    pub fn swapped(&self) -> Self {
        GradedRingSpec {
            h: self.j.clone(),
            j: self.h.clone(),
            ..self.clone()
        }
    }

    pub fn with_generators(&self, h: &Poly<S>, j: &Poly<S>) -> Self {
        GradedRingSpec {
            h: self.line.normalize(h),
            j: self.line.normalize(j),
            ..self.clone()
        }
    }

    /// `gₙ = h[(-G_n)⁺] · j[G_n⁺]`
    pub fn piece_generator(&self, n: i64) -> Poly<S> {
        let gn = self.g.iterate(n);
        let hp = translate_product(&self.line, &self.h, &(-&gn).pos_part()).expect("positive part");
        let jp = translate_product(&self.line, &self.j, &gn.pos_part()).expect("positive part");
        self.line.normalize(&(&hp * &jp))
    }
}

impl<S: Scalar> Pieces<S> for GradedRingSpec<S> {
    fn line(&self) -> &SigmaLine<S> {
        &self.line
    }

    fn generator(&self, n: i64) -> Result<Poly<S>> {
        Ok(self.piece_generator(n))
    }
}

/// `⋂ B(G⁽ⁱ⁾, H⁽ⁱ⁾, J⁽ⁱ⁾)` over specs on pairwise distinct orbits; the
/// generators multiply.
#[derive(Clone, Debug)]
pub struct Intersection<S> {
    specs: Vec<GradedRingSpec<S>>,
}

impl<S: Scalar> Intersection<S> {
    pub fn new(specs: Vec<GradedRingSpec<S>>) -> Result<Self> {
        let first = specs
            .first()
            .ok_or_else(|| AlgebraError::InvalidSpec("empty intersection".into()))?;
        if specs.iter().any(|s| s.line != first.line) {
            return Err(AlgebraError::InvalidSpec("specs over different rings".into()));
        }
        let union = specs.iter().fold(Poly::one(), |acc, s| &acc * s.orbit.q());
        let verdict = is_lonely_line(&first.line, &union)?;
        if !verdict.lonely {
            return Err(AlgebraError::InvalidSpec(
                "orbits of the components are not separated".into(),
            ));
        }
        Ok(Intersection { specs })
    }

    pub fn specs(&self) -> &[GradedRingSpec<S>] {
        &self.specs
    }
}

impl<S: Scalar> Pieces<S> for Intersection<S> {
    fn line(&self) -> &SigmaLine<S> {
        &self.specs[0].line
    }

    fn generator(&self, n: i64) -> Result<Poly<S>> {
        let prod = self
            .specs
            .iter()
            .fold(Poly::one(), |acc, s| &acc * &s.piece_generator(n));
        Ok(self.line().normalize(&prod))
    }
}

/// Generators stored for a finite range of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceTable<S> {
    line: SigmaLine<S>,
    gens: BTreeMap<i64, Poly<S>>,
}

impl<S: Scalar> PieceTable<S> {
    pub fn new(line: SigmaLine<S>, gens: BTreeMap<i64, Poly<S>>) -> Self {
        let gens = gens.into_iter().map(|(n, g)| (n, line.normalize(&g))).collect();
        PieceTable { line, gens }
    }

    /// Tabulates `pieces` on `[lo, hi]`.
    pub fn tabulate(pieces: &dyn Pieces<S>, lo: i64, hi: i64) -> Result<Self> {
        let gens = (lo..=hi)
            .map(|n| pieces.generator(n).map(|g| (n, g)))
            .collect::<Result<_>>()?;
        Ok(PieceTable {
            line: pieces.line().clone(),
            gens,
        })
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.gens.keys().next()?, *self.gens.keys().next_back()?))
    }

    pub fn generators(&self) -> &BTreeMap<i64, Poly<S>> {
        &self.gens
    }

    pub fn set(&mut self, n: i64, g: Poly<S>) {
        self.gens.insert(n, self.line.normalize(&g));
    }

    /// Pieces of `ψ(B)`: degree `n` is `σⁿ(g₋ₙ)`.
    pub fn psi(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|(&n, g)| (-n, self.line.normalize(&self.line.apply(g, -n))))
            .collect();
        PieceTable {
            line: self.line.clone(),
            gens,
        }
    }
}

impl<S: Scalar> Pieces<S> for PieceTable<S> {
    fn line(&self) -> &SigmaLine<S> {
        &self.line
    }

    fn generator(&self, n: i64) -> Result<Poly<S>> {
        self.gens.get(&n).cloned().ok_or_else(|| {
            let (lo, hi) = self.range().unwrap_or((0, -1));
            AlgebraError::WindowTooSmall(format!("degree {n} outside tabulated range [{lo}, {hi}]"))
        })
    }
}

/// `x = t`, `y = f·t⁻¹` and the spec `B(Z₀, (σ(f)), T)` they generate.
#[derive(Clone, Debug)]
pub struct GwaEmbedding<S> {
    pub x: SkewElement<S>,
    pub y: SkewElement<S>,
    pub spec: GradedRingSpec<S>,
}

/// Realizes the generalized Weyl algebra `T(σ, f)` as a `B(G, H, J)`.
///
/// Requires that no two roots of `f` lie on one orbit.
pub fn gwa_embed<S: Scalar>(line: &SigmaLine<S>, f: &Poly<S>) -> Result<GwaEmbedding<S>> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput("gwa_embed"));
    }
    if line.normalize(f).is_constant() {
        return Err(AlgebraError::ConstantInput("gwa_embed"));
    }
    let rad = line.normalize(&f.squarefree_part()?);
    let verdict = is_lonely_line(line, &rad)?;
    if !verdict.certified() {
        return Err(AlgebraError::Uncertified(rad.to_string()));
    }
    if let (false, Some(Witness::Shift(i))) = (verdict.lonely, &verdict.witness) {
        let first = line.gcd(&rad, &line.apply(&rad, *i))?;
        let second = line.normalize(&line.apply(&first, -i));
        return Err(AlgebraError::OrbitViolation {
            first: first.to_string(),
            second: second.to_string(),
            shift: *i,
        });
    }
    let h = line.apply(f, 1);
    let q = line.apply(&rad, 1);
    let spec = GradedRingSpec::new(line.clone(), &q, Cycle::point(0), &h, &Poly::one())?;
    Ok(GwaEmbedding {
        x: SkewElement::t(1),
        y: SkewElement::from_poly(f.clone(), -1),
        spec,
    })
}

/// A `Pic`-twist: piece `n` rescaled by `xₙ = x σ(x) ⋯ σⁿ⁻¹(x)`, with
/// `x₋ₙ = (σ⁻¹(x) ⋯ σ⁻ⁿ(x))⁻¹`.
#[derive(Clone, Debug)]
pub struct Twist<S> {
    pub cocycle: BTreeMap<i64, Frac<S>>,
    pub pieces: BTreeMap<i64, Frac<S>>,
}

impl<S: Scalar> Twist<S> {
    /// First degree whose twisted generator is not a polynomial.
    pub fn first_nonintegral(&self) -> Option<i64> {
        self.pieces
            .iter()
            .find(|(_, g)| g.to_poly().is_none())
            .map(|(&n, _)| n)
    }
}

pub fn twist_cocycle<S: Scalar>(line: &SigmaLine<S>, x: &Frac<S>, n: i64) -> Result<Frac<S>> {
    if x.is_zero() {
        return Err(AlgebraError::ZeroInput("pic_twist"));
    }
    let mut acc = Frac::one();
    if n >= 0 {
        for i in 0..n {
            acc = acc.mul(&x.apply_sigma(line, i));
        }
        Ok(acc)
    } else {
        for i in 1..=-n {
            acc = acc.mul(&x.apply_sigma(line, -i));
        }
        acc.inv()
    }
}

pub fn pic_twist<S: Scalar>(pieces: &dyn Pieces<S>, x: &Frac<S>, lo: i64, hi: i64) -> Result<Twist<S>> {
    let line = pieces.line();
    let mut cocycle = BTreeMap::new();
    let mut out = BTreeMap::new();
    for n in lo..=hi {
        let xn = twist_cocycle(line, x, n)?;
        let g = Frac::from_poly(pieces.generator(n)?);
        out.insert(n, xn.mul(&g).ideal(line));
        cocycle.insert(n, xn);
    }
    Ok(Twist {
        cocycle,
        pieces: out,
    })
}
