//! Executable forms of the identities satisfied by `B(G, H, J)` over a
//! principal ideal domain, each evaluated on a finite window of degrees.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cycles::Cycle;
use crate::error::{AlgebraError, Result};
use crate::graded::{PieceTable, Pieces};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::sigma::{Completeness, OrbitPoint, SigmaLine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "WINDOWED-PASS")]
    WindowedPass,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::WindowedPass => "WINDOWED-PASS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub verdict: Verdict,
    pub window: [i64; 2],
    pub witness: Value,
}

impl Report {
    fn new(check: &str, verdict: Verdict, window: [i64; 2], witness: Value) -> Self {
        Report {
            check: check.to_string(),
            verdict,
            window,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn table<S: Scalar>(pieces: &dyn Pieces<S>, lo: i64, hi: i64) -> Result<PieceTable<S>> {
    PieceTable::tabulate(pieces, lo, hi)
}

/// `gₘ·σᵐ(gₙ)`, the generator of `BₘBₙ`.
fn product<S: Scalar>(line: &SigmaLine<S>, gm: &Poly<S>, m: i64, gn: &Poly<S>) -> Poly<S> {
    line.normalize(&(gm * &line.apply(gn, m)))
}

/// `BₙB₋ₙ + B₋ₙBₙ = R`, i.e. `gcd(gₙσⁿ(g₋ₙ), g₋ₙσ⁻ⁿ(gₙ)) = 1`, for `n ∈ [lo, hi]`.
pub fn check_comaximality<S: Scalar>(pieces: &dyn Pieces<S>, lo: i64, hi: i64) -> Result<Report> {
    let line = pieces.line();
    let r = lo.abs().max(hi.abs());
    let t = table(pieces, -r, r)?;
    for n in lo..=hi {
        let (gp, gm) = (t.generator(n)?, t.generator(-n)?);
        let a = product(line, &gp, n, &gm);
        let b = product(line, &gm, -n, &gp);
        let g = line.gcd(&a, &b)?;
        if !g.is_one() {
            return Ok(Report::new(
                "comaximality",
                Verdict::Fail,
                [lo, hi],
                json!({ "n": n, "common_factor": g.to_string() }),
            ));
        }
    }
    Ok(Report::new("comaximality", Verdict::Pass, [lo, hi], Value::Null))
}

/// `Σ_{n ≤ i ≤ n+window} (IᵢσⁱI₋ᵢ + I₋ᵢσ⁻ⁱIᵢ) = R`: a necessary condition for
/// simplicity, certified on the window only.
pub fn check_simplicity_criterion<S: Scalar>(pieces: &dyn Pieces<S>, n: i64, window: i64) -> Result<Report> {
    let line = pieces.line();
    let t = table(pieces, -n - window, n + window)?;
    let mut acc = Poly::zero();
    for i in n..=n + window {
        let (gp, gm) = (t.generator(i)?, t.generator(-i)?);
        acc = line.gcd(&acc, &product(line, &gp, i, &gm))?;
        acc = line.gcd(&acc, &product(line, &gm, -i, &gp))?;
        if acc.is_one() {
            return Ok(Report::new(
                "simplicity",
                Verdict::WindowedPass,
                [n, n + window],
                json!({ "reached_unit_at": i }),
            ));
        }
    }
    Ok(Report::new(
        "simplicity",
        Verdict::Fail,
        [n, n + window],
        json!({ "common_factor": acc.to_string() }),
    ))
}

/// `Bₙ = Σ_{i=1}^{r} BᵢBₙ₋ᵢ` for `r < n ≤ window`.
pub fn check_quasi_fg<S: Scalar>(pieces: &dyn Pieces<S>, r: i64, window: i64) -> Result<Report> {
    if window <= r {
        return Err(AlgebraError::WindowTooSmall(format!("window {window} must exceed r = {r}")));
    }
    let line = pieces.line();
    let t = table(pieces, 1, window)?;
    for n in r + 1..=window {
        let mut acc = Poly::zero();
        for i in 1..=r {
            acc = line.gcd(&acc, &product(line, &t.generator(i)?, i, &t.generator(n - i)?))?;
        }
        let gn = t.generator(n)?;
        if acc != gn {
            return Ok(Report::new(
                "quasi_fg",
                Verdict::Fail,
                [r + 1, window],
                json!({ "n": n, "expected": gn.to_string(), "sum_of_products": acc.to_string() }),
            ));
        }
    }
    Ok(Report::new("quasi_fg", Verdict::Pass, [r + 1, window], json!({ "r": r })))
}

/// `BₘBₙ ⊆ Bₘ₊ₙ` for `|m|, |n| ≤ bound`.
pub fn check_closure<S: Scalar>(pieces: &dyn Pieces<S>, bound: i64) -> Result<Report> {
    let line = pieces.line();
    let t = table(pieces, -2 * bound, 2 * bound)?;
    for m in -bound..=bound {
        for n in -bound..=bound {
            let p = product(line, &t.generator(m)?, m, &t.generator(n)?);
            let g = t.generator(m + n)?;
            if !g.divides(&p) {
                return Ok(Report::new(
                    "closure",
                    Verdict::Fail,
                    [-bound, bound],
                    json!({ "m": m, "n": n, "product": p.to_string(), "target": g.to_string() }),
                ));
            }
        }
    }
    Ok(Report::new("closure", Verdict::Pass, [-bound, bound], Value::Null))
}

/// `BₘBₙ = Bₘ₊ₙ` for `m, n ∈ [N, N+extent]` and for `m, n ∈ [-N-extent, -N]`.
pub fn check_stable_range<S: Scalar>(pieces: &dyn Pieces<S>, big_n: i64, extent: i64) -> Result<Report> {
    let line = pieces.line();
    let hi = 2 * (big_n + extent);
    let t = table(pieces, -hi, hi)?;
    for sign in [1, -1] {
        for a in big_n..=big_n + extent {
            for b in big_n..=big_n + extent {
                let (m, n) = (sign * a, sign * b);
                let p = product(line, &t.generator(m)?, m, &t.generator(n)?);
                let g = t.generator(m + n)?;
                if p != g {
                    return Ok(Report::new(
                        "stable_range",
                        Verdict::Fail,
                        [big_n, big_n + extent],
                        json!({ "m": m, "n": n, "product": p.to_string(), "target": g.to_string() }),
                    ));
                }
            }
        }
    }
    Ok(Report::new("stable_range", Verdict::Pass, [big_n, big_n + extent], Value::Null))
}

/// Every `Bₙ` with `|n| ≤ bound` lies in the subring generated by the pieces
/// of degree `|i| ≤ m`, `m = max(2N - 1, 1)`.
///
/// The generated piece is `Vₙ = Eₙ·gₙ`, and `Eₙ` is computed by closing under
/// right multiplication by generators: `Vₐ·σᵃ(gᵢ) = Eₐ·cₐᵢ·gₐ₊ᵢ` with
/// `cₐᵢ = gₐσᵃ(gᵢ)/gₐ₊ᵢ`. Intermediate degrees are confined to
/// `[-bound - m, bound + m]`, widened to `[-bound - 4m, bound + 4m]` if that
/// does not suffice. Confinement only drops products, so a pass is exact.
pub fn check_generation<S: Scalar>(pieces: &dyn Pieces<S>, big_n: i64, bound: i64) -> Result<Report> {
    let m = (2 * big_n - 1).max(1);
    let mut last = None;
    for ext in [bound + m, bound + 4 * m] {
        match generated_excess(pieces, m, bound, ext)? {
            Ok(()) => return Ok(Report::new("generation", Verdict::Pass, [-bound, bound], json!({ "m": m, "extent": ext }))),
            Err(w) => last = Some(w),
        }
    }
    Ok(Report::new("generation", Verdict::Fail, [-bound, bound], last.unwrap_or(Value::Null)))
}

/// `Ok(())` when every `Eₙ`, `|n| ≤ bound`, reaches 1; otherwise the first
/// offending degree.
fn generated_excess<S: Scalar>(pieces: &dyn Pieces<S>, m: i64, bound: i64, ext: i64) -> Result<std::result::Result<(), Value>> {
    let line = pieces.line();
    let t = table(pieces, -ext.max(m), ext.max(m))?;
    let mut excess: BTreeMap<i64, Poly<S>> = (-m..=m).map(|i| (i, Poly::one())).collect();
    let mut cofactor: BTreeMap<(i64, i64), Poly<S>> = BTreeMap::new();
    let done = |e: &BTreeMap<i64, Poly<S>>| (-bound..=bound).all(|n| e.get(&n).is_some_and(Poly::is_one));
    let mut frontier: Vec<i64> = excess.keys().copied().collect();
    while !frontier.is_empty() && !done(&excess) {
        let mut changed = std::collections::BTreeSet::new();
        for a in frontier {
            let ea = excess[&a].clone();
            for i in -m..=m {
                let n = a + i;
                if n.abs() > ext || excess.get(&n).is_some_and(Poly::is_one) {
                    continue;
                }
                let c = match cofactor.get(&(a, i)) {
                    Some(c) => c.clone(),
                    None => {
                        let (ga, gi, gn) = (t.generator(a)?, t.generator(i)?, t.generator(n)?);
                        let p = product(line, &ga, a, &gi);
                        let Some(c) = line.quotient(&p, &gn) else {
                            return Ok(Err(json!({ "m": m, "a": a, "i": i, "product_outside": n })));
                        };
                        cofactor.insert((a, i), c.clone());
                        c
                    }
                };
                let cand = line.normalize(&(&ea * &c));
                let next = match excess.get(&n) {
                    Some(old) if old.divides(&cand) => continue,
                    Some(old) => line.gcd(old, &cand)?,
                    None => cand,
                };
                excess.insert(n, next);
                changed.insert(n);
            }
        }
        frontier = changed.into_iter().collect();
    }
    for n in -bound..=bound {
        match excess.get(&n) {
            Some(e) if e.is_one() => {}
            e => {
                let g = t.generator(n)?;
                let generated = e.map(|e| (e * &g).to_string());
                return Ok(Err(json!({ "n": n, "m": m, "generated": generated, "piece": g.to_string() })));
            }
        }
    }
    Ok(Ok(()))
}

/// Multiplicities of the pieces along the orbit of `q`: `F_n` has coefficient
/// `m` at `Zᵢ` when `σⁱ(q)^m` exactly divides `gₙ`; `E_n = min(1, F_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSequence {
    pub f: BTreeMap<i64, Cycle>,
    pub e: BTreeMap<i64, Cycle>,
}

impl SupportSequence {
    pub fn to_json(&self) -> Value {
        let f: BTreeMap<String, &Cycle> = self.f.iter().map(|(n, c)| (n.to_string(), c)).collect();
        json!({ "F": f })
    }
}

pub fn support_cycle_sequence<S: Scalar>(
    pieces: &dyn Pieces<S>,
    q: &OrbitPoint<S>,
    window: i64,
) -> Result<SupportSequence> {
    let line = pieces.line();
    let mut f = BTreeMap::new();
    for n in -window..=window {
        let g = pieces.generator(n)?;
        let inc = line.orbit_incidence(&g, q, window)?;
        if inc.completeness != Completeness::Certified {
            return Err(AlgebraError::Uncertified(g.to_string()));
        }
        let mut pairs = Vec::new();
        for i in inc.indices {
            pairs.push((i, line.multiplicity(&g, q, i)? as i64));
        }
        f.insert(n, Cycle::from_pairs(pairs));
    }
    let e = f.iter().map(|(&n, c)| (n, c.truncate_at_one())).collect();
    Ok(SupportSequence { f, e })
}

/// Which of `E_n = |G_n|`, `E_n = G_n⁺`, `E_n = (-G_n)⁺` holds on the window.
pub fn check_trichotomy(seq: &SupportSequence, g: &Cycle) -> Report {
    let lo = seq.e.keys().next().copied().unwrap_or(0);
    let hi = seq.e.keys().next_back().copied().unwrap_or(0);
    let cases: [(&str, fn(&Cycle) -> Cycle); 3] = [
        ("I", |c| c.abs()),
        ("II", |c| c.pos_part()),
        ("III", |c| (-c).pos_part()),
    ];
    let mut first_mismatch = Vec::new();
    for (label, rule) in cases {
        let bad = seq.e.iter().find(|(&n, e)| **e != rule(&g.iterate(n)));
        match bad {
            None => {
                return Report::new("trichotomy", Verdict::Pass, [lo, hi], json!({ "case": label }));
            }
            Some((&n, e)) => first_mismatch.push(json!({
                "case": label,
                "n": n,
                "E_n": e,
                "expected": rule(&g.iterate(n)),
            })),
        }
    }
    Report::new("trichotomy", Verdict::Fail, [lo, hi], Value::Array(first_mismatch))
}

/// Support sequence of `ψ(B)` is `n ↦ σ⁻ⁿ(F₋ₙ)`, since `I'ₙ = σⁿ(I₋ₙ)`.
pub fn check_psi_duality<S: Scalar>(pieces: &dyn Pieces<S>, q: &OrbitPoint<S>, window: i64) -> Result<Report> {
    let t = table(pieces, -window, window)?;
    let direct = support_cycle_sequence(&t, q, window)?;
    let dual = support_cycle_sequence(&t.psi(), q, window)?;
    for n in -window..=window {
        let expected = direct.f[&-n].shift(-n);
        if dual.f[&n] != expected {
            return Ok(Report::new(
                "psi_duality",
                Verdict::Fail,
                [-window, window],
                json!({ "n": n, "psi_F_n": dual.f[&n], "expected": expected }),
            ));
        }
    }
    Ok(Report::new("psi_duality", Verdict::Pass, [-window, window], Value::Null))
}

/// Recovers `(G, Ω)` from a sequence with `E_n = G_n - Ω` on a tail.
///
/// `E_{n+1} - E_n = σ⁻ⁿ(G)`, so `G = σⁿ(E_{n+1} - E_n)` and `Ω = G_n - E_n`.
/// Both must be constant on a final stretch covering at least half the
/// window (and at least three degrees).
pub fn recover_cycle_data(e: &BTreeMap<i64, Cycle>) -> Result<(Cycle, Cycle)> {
    let keys: Vec<i64> = e.keys().copied().collect();
    let (lo, hi) = match (keys.first(), keys.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(AlgebraError::NotStabilized(0, 0)),
    };
    if keys.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(AlgebraError::InvalidSpec("sequence degrees must be consecutive".into()));
    }
    let need = ((keys.len() as i64 + 1) / 2).max(3);
    if (keys.len() as i64) < need {
        return Err(AlgebraError::NotStabilized(lo, hi));
    }
    let g_at = |n: i64| (&e[&(n + 1)] - &e[&n]).shift(n);
    let g = g_at(hi - 1);
    let omega = &g.iterate(hi) - &e[&hi];
    let mut start = hi;
    while start > lo {
        let n = start - 1;
        if g_at(n) != g || &g.iterate(n) - &e[&n] != omega {
            break;
        }
        start = n;
    }
    if hi - start + 1 < need {
        return Err(AlgebraError::NotStabilized(lo, hi));
    }
    if !omega.is_effective() {
        return Err(AlgebraError::CycleNotEffective(omega.to_string()));
    }
    Ok((g, omega))
}
