//! Progenerator right ideals of `A = B(Z₀, H, R)` and their endomorphism
//! rings, which realize `B(G, H, R)` for pleasantly alternating `G`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::cycles::Cycle;
use crate::error::{AlgebraError, Result};
use crate::fraction::Frac;
use crate::graded::{translate_product, GradedRingSpec, PieceTable, Pieces};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::sigma::SigmaLine;
use crate::verify::{Report, Verdict};

/// `Z_a + σ⁻¹(D) - D` with `D = Σ_{j∈S} Z_{a+j}`.
pub fn cycle_from_s(s: &BTreeSet<i64>, a: i64) -> Cycle {
    let d = Cycle::from_pairs(s.iter().map(|&j| (a + j, 1)).collect::<Vec<_>>());
    &(&Cycle::point(a) + &d.shift(-1)) - &d
}

/// Offsets `i ≥ 0`, relative to the lowest index of `G`, at which the partial
/// sums of the coefficients vanish.
pub fn s_from_cycle(g: &Cycle) -> Result<BTreeSet<i64>> {
    if !g.is_pleasantly_alternating() {
        return Err(AlgebraError::NotPleasantlyAlternating(g.to_string()));
    }
    let a = g.min_index().expect("nonzero cycle");
    let mut sum = 0;
    let mut s = BTreeSet::new();
    for i in a..=g.max_index().expect("nonzero cycle") {
        sum += g.coeff(i);
        if sum == 0 {
            s.insert(i - a);
        }
    }
    Ok(s)
}

/// Degree-wise fractional generators `n ↦ ℓₙ` on a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFractionalModule<S> {
    line: SigmaLine<S>,
    gens: BTreeMap<i64, Frac<S>>,
}

impl<S: Scalar> GradedFractionalModule<S> {
    pub fn new(line: SigmaLine<S>, gens: BTreeMap<i64, Frac<S>>) -> Result<Self> {
        if gens.values().any(Frac::is_zero) {
            return Err(AlgebraError::ZeroInput("module generator"));
        }
        let gens = gens.into_iter().map(|(n, g)| (n, g.ideal(&line))).collect();
        Ok(GradedFractionalModule { line, gens })
    }

    pub fn line(&self) -> &SigmaLine<S> {
        &self.line
    }

    pub fn generator(&self, n: i64) -> Result<&Frac<S>> {
        self.gens
            .get(&n)
            .ok_or_else(|| AlgebraError::WindowTooSmall(format!("degree {n} outside module window")))
    }

    pub fn generators(&self) -> &BTreeMap<i64, Frac<S>> {
        &self.gens
    }

    pub fn range(&self) -> (i64, i64) {
        (
            *self.gens.keys().next().expect("nonempty module"),
            *self.gens.keys().next_back().expect("nonempty module"),
        )
    }

    /// Polynomial generators, when every piece is integral.
    pub fn to_table(&self) -> Option<PieceTable<S>> {
        let gens = self
            .gens
            .iter()
            .map(|(&n, g)| g.to_poly().map(|p| (n, p.clone())))
            .collect::<Option<_>>()?;
        Some(PieceTable::new(self.line.clone(), gens))
    }

    pub fn to_json(&self) -> Value {
        let m: BTreeMap<String, String> = self
            .gens
            .iter()
            .map(|(n, g)| (n.to_string(), format!("({})/({})", g.num(), g.den())))
            .collect();
        json!(m)
    }
}

/// `aₙ = H[max(-Gₙ, 0)]` for `G = Z₀`: `R` in degrees `n ≥ 0`,
/// `H[Zₙ + … + Z₋₁]` below.
pub fn base_piece<S: Scalar>(line: &SigmaLine<S>, h: &Poly<S>, n: i64) -> Result<Poly<S>> {
    translate_product(line, h, &(-&Cycle::point(0).iterate(n)).pos_part())
}

/// `ℓₙ = H[Eₙ + Σ_{j∈S, n≤j} Zⱼ]` on `[lo, hi]`.
pub fn build_l<S: Scalar>(
    line: &SigmaLine<S>,
    h: &Poly<S>,
    s: &BTreeSet<i64>,
    lo: i64,
    hi: i64,
) -> Result<GradedFractionalModule<S>> {
    let mut gens = BTreeMap::new();
    for n in lo..=hi {
        let e = (-&Cycle::point(0).iterate(n)).pos_part();
        let extra = Cycle::from_pairs(s.iter().filter(|&&j| n <= j).map(|&j| (j, 1)).collect::<Vec<_>>());
        gens.insert(n, Frac::from_poly(translate_product(line, h, &(&e + &extra))?));
    }
    GradedFractionalModule::new(line.clone(), gens)
}

/// Generator of `{x ∈ K : x·(a) ⊆ (b)}`, i.e. the reduced ratio `b/a`.
pub fn hom_generator<S: Scalar>(line: &SigmaLine<S>, a: &Frac<S>, b: &Frac<S>) -> Result<Frac<S>> {
    if a.is_zero() || b.is_zero() {
        return Err(AlgebraError::ZeroInput("hom_generator"));
    }
    Ok(b.div(a)?.ideal(line))
}

/// `∩ₙ hom(σᵐ(ℓₙ), targetₙ₊ₘ)` over every `n` with both degrees available.
/// The first two and last two terms must agree, so that the omitted degrees
/// repeat the tails.
fn degree_intersection<S: Scalar>(
    l: &GradedFractionalModule<S>,
    target: &dyn Fn(i64) -> Result<Frac<S>>,
    target_range: (i64, i64),
    m: i64,
) -> Result<Frac<S>> {
    let line = l.line();
    let (llo, lhi) = l.range();
    let lo = llo.max(target_range.0 - m);
    let hi = lhi.min(target_range.1 - m);
    if hi - lo < 3 {
        return Err(AlgebraError::WindowTooSmall(format!("degree {m}")));
    }
    let term = |n: i64| hom_generator(line, &l.generator(n)?.apply_sigma(line, m), &target(n + m)?);
    if term(lo)? != term(lo + 1)? || term(hi)? != term(hi - 1)? {
        return Err(AlgebraError::NotStabilized(lo, hi));
    }
    let mut acc = term(lo)?;
    for n in lo + 1..=hi {
        acc = acc.ideal_intersection(line, &term(n)?)?;
    }
    Ok(acc)
}

/// Degree-`m` generators of `{x : xL ⊆ L}` for `|m| ≤ window`.
pub fn end_of_module<S: Scalar>(l: &GradedFractionalModule<S>, window: i64) -> Result<GradedFractionalModule<S>> {
    let target = |n: i64| l.generator(n).cloned();
    let gens = (-window..=window)
        .map(|m| Ok((m, degree_intersection(l, &target, l.range(), m)?)))
        .collect::<Result<_>>()?;
    GradedFractionalModule::new(l.line().clone(), gens)
}

/// Degree-`m` generators of `{x : xL ⊆ A}` for `|m| ≤ window`, with `A`
/// tabulated on the same window as `L`.
pub fn hom_module<S: Scalar>(
    l: &GradedFractionalModule<S>,
    a: &PieceTable<S>,
    window: i64,
) -> Result<GradedFractionalModule<S>> {
    let range = a.range().ok_or(AlgebraError::ZeroInput("empty ring table"))?;
    let target = |n: i64| Ok(Frac::from_poly(a.generator(n)?));
    let gens = (-window..=window)
        .map(|m| Ok((m, degree_intersection(l, &target, range, m)?)))
        .collect::<Result<_>>()?;
    GradedFractionalModule::new(l.line().clone(), gens)
}

/// Generator of `Σₙ Xₙ σⁿ(Y_{k-n})` over the degrees present in both.
fn product_piece<S: Scalar>(
    x: &GradedFractionalModule<S>,
    y: &GradedFractionalModule<S>,
    k: i64,
) -> Result<Frac<S>> {
    let line = x.line();
    let mut acc: Option<Frac<S>> = None;
    for (&n, xn) in x.generators() {
        if let Ok(yk) = y.generator(k - n) {
            let p = xn.mul(&yk.apply_sigma(line, n)).ideal(line);
            acc = Some(match acc {
                None => p,
                Some(a) => a.ideal_sum(line, &p)?,
            });
        }
    }
    acc.ok_or_else(|| AlgebraError::WindowTooSmall(format!("no products in degree {k}")))
}

struct Side<S> {
    end: GradedFractionalModule<S>,
    s: BTreeSet<i64>,
}

fn fail(window: i64, witness: Value) -> Report {
    Report {
        check: "morita".into(),
        verdict: Verdict::Fail,
        window: [-window, window],
        witness,
    }
}

/// Builds `L` over `B(Z₀, h, R)`, its dual `M = Hom(L, A)` and `End(L)`, and
/// checks the pairings `M·L = A`, `L·M = End(L)` on the window.
fn build_side<S: Scalar>(
    line: &SigmaLine<S>,
    g0: &Cycle,
    h: &Poly<S>,
    window: i64,
) -> Result<std::result::Result<Side<S>, Value>> {
    let s = s_from_cycle(g0)?;
    let top = s.iter().next_back().copied().unwrap_or(0);
    let reach = 2 * window + top + 4;
    let l = build_l(line, h, &s, -reach, top + reach)?;
    let a = PieceTable::new(
        line.clone(),
        (-reach..=top + reach)
            .map(|n| Ok((n, base_piece(line, h, n)?)))
            .collect::<Result<_>>()?,
    );
    let end = end_of_module(&l, window)?;
    let m = hom_module(&l, &a, reach - top - 4)?;
    for k in -window..=window {
        let ml = product_piece(&m, &l, k)?;
        let ak = Frac::from_poly(a.generator(k)?);
        if ml != ak {
            return Ok(Err(json!({ "pairing": "M·L", "degree": k, "got": ml.to_string(), "expected": ak.to_string() })));
        }
        let lm = product_piece(&l, &m, k)?;
        let ek = end.generator(k)?;
        if &lm != ek {
            return Ok(Err(json!({ "pairing": "L·M", "degree": k, "got": lm.to_string(), "expected": ek.to_string() })));
        }
    }
    let tail = top + 1;
    if l.generator(tail)? != &Frac::one() || m.generator(tail)? != &Frac::one() {
        return Ok(Err(json!({ "tail": tail })));
    }
    Ok(Ok(Side { end, s }))
}

/// Compares `End(L)` for `L` built from `S = s_from_cycle(G)` with the
/// pieces of `target` on `[-window, window]`.
///
/// The `H`-side ring `B(G, H, R)` is `End(L)` over `B(Z₀, H, R)`; the `J`-side
/// ring `B(G, R, J)` is `ψ` of the `H`-side construction for `J`; the target
/// is their intersection.
pub fn check_morita_against<S: Scalar>(
    spec: &GradedRingSpec<S>,
    target: &dyn Pieces<S>,
    window: i64,
) -> Result<Report> {
    let line = spec.line();
    let g = spec.cycle();
    let a = g.min_index().ok_or(AlgebraError::ZeroInput("cycle"))?;
    let g0 = g.shift(a);
    let hs = line.normalize(&line.apply(spec.h(), a));
    let js = line.normalize(&line.apply(spec.j(), a));

    let h_side = match build_side(line, &g0, &hs, window)? {
        Ok(side) => side,
        Err(w) => return Ok(fail(window, json!({ "side": "H", "detail": w }))),
    };
    let j_side = match build_side(line, &g0, &js, window)? {
        Ok(side) => side,
        Err(w) => return Ok(fail(window, json!({ "side": "J", "detail": w }))),
    };
    let h_ring = spec.with_generators(spec.h(), &Poly::one());
    let j_ring = spec.with_generators(&Poly::one(), spec.j());
    let h_end = h_side.end.to_table();
    let j_end = j_side.end.to_table().map(|t| t.psi());
    let (h_end, j_end) = match (h_end, j_end) {
        (Some(h), Some(j)) => (h, j),
        _ => return Ok(fail(window, json!({ "detail": "non-integral endomorphism piece" }))),
    };
    for n in -window..=window {
        let (eh, ej) = (h_end.generator(n)?, j_end.generator(n)?);
        if eh != h_ring.generator(n)? {
            return Ok(fail(
                window,
                json!({ "side": "H", "degree": n, "end": eh.to_string(), "ring": h_ring.generator(n)?.to_string() }),
            ));
        }
        if ej != j_ring.generator(n)? {
            return Ok(fail(
                window,
                json!({ "side": "J", "degree": n, "end": ej.to_string(), "ring": j_ring.generator(n)?.to_string() }),
            ));
        }
        let both = line.lcm(&eh, &ej)?;
        let t = target.generator(n)?;
        if both != t {
            return Ok(fail(
                window,
                json!({ "degree": n, "end": both.to_string(), "target": t.to_string() }),
            ));
        }
    }
    Ok(Report {
        check: "morita".into(),
        verdict: Verdict::Pass,
        window: [-window, window],
        witness: json!({ "S": h_side.s, "base": a }),
    })
}

pub fn check_morita<S: Scalar>(spec: &GradedRingSpec<S>, window: i64) -> Result<Report> {
    check_morita_against(spec, spec, window)
}
