use std::collections::{BTreeMap, BTreeSet};

use gwa_core::cycles::{classify_sequence, Cycle, SequenceClass};
use gwa_core::error::AlgebraError;
use gwa_core::graded::{gwa_embed, GradedRingSpec, Pieces};
use gwa_core::lonely::{is_lonely, is_lonely_line, MultiPoly};
use gwa_core::morita::{build_l, check_morita, cycle_from_s, end_of_module};
use gwa_core::parse::{parse_expr, parse_poly};
use gwa_core::sigma::SigmaLine;
use gwa_core::verify::{
    check_closure, check_comaximality, check_generation, check_psi_duality, check_quasi_fg, check_simplicity_criterion,
    check_stable_range, check_trichotomy, support_cycle_sequence, Report, Verdict,
};
use gwa_core::{Poly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io::{piece_dump, Ring, RingDesc, Scenario, SpecDesc};
use crate::with_line;

pub const CHECKS: &[&str] = &[
    "closure",
    "comaximality",
    "simplicity",
    "quasi_fg",
    "stable_range",
    "generation",
    "trichotomy",
    "psi_duality",
    "morita",
    "pieces",
];

pub type CmdResult = std::result::Result<Outcome, AlgebraError>;

/// JSON body of a command and whether any check in it failed.
#[derive(Debug)]
pub struct Outcome {
    pub body: Value,
    pub failed: bool,
}

impl Outcome {
    fn reports(reports: Vec<Report>, extra: Value) -> Self {
        let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
        let mut body = json!({ "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>() });
        if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
            b.extend(e);
        }
        Outcome { body, failed }
    }
}

fn report(check: &str, verdict: Verdict, window: [i64; 2], witness: Value) -> Report {
    Report {
        check: check.to_string(),
        verdict,
        window,
        witness,
    }
}

fn orbit_violation(e: AlgebraError) -> CmdResult {
    match e {
        AlgebraError::OrbitViolation { first, second, shift } => Ok(Outcome {
            body: json!({ "orbit_violation": { "first": first, "second": second, "shift": shift } }),
            failed: true,
        }),
        e => Err(e),
    }
}

pub fn build(ring: &Ring, f: Option<&str>, spec: Option<&SpecDesc>, window: i64) -> CmdResult {
    with_line!(ring, |line| build_on(line, f, spec, window))
}

fn build_on<S: Scalar>(line: SigmaLine<S>, f: Option<&str>, spec: Option<&SpecDesc>, window: i64) -> CmdResult {
    let spec = match (f, spec) {
        (Some(f), _) => match gwa_embed(&line, &parse_poly(f)?) {
            Ok(e) => e.spec,
            Err(e) => return orbit_violation(e),
        },
        (None, Some(s)) => s.build(line)?,
        (None, None) => return Err(AlgebraError::InvalidSpec("build needs --f or --spec".into())),
    };
    Ok(Outcome {
        body: json!({ "spec": SpecDesc::of(&spec), "pieces": piece_dump(&spec, window)? }),
        failed: false,
    })
}

pub fn gwa(ring: &Ring, f: &str, window: i64) -> CmdResult {
    with_line!(ring, |line| gwa_on(line, f, window))
}

fn gwa_on<S: Scalar>(line: SigmaLine<S>, f: &str, window: i64) -> CmdResult {
    let f: Poly<S> = parse_poly(f)?;
    match gwa_embed(&line, &f) {
        Ok(e) => {
            let xy = e.x.mul(&line, &e.y);
            let yx = e.y.mul(&line, &e.x);
            Ok(Outcome {
                body: json!({
                    "x": e.x.to_string(),
                    "y": e.y.to_string(),
                    "xy": xy.to_string(),
                    "yx": yx.to_string(),
                    "spec": SpecDesc::of(&e.spec),
                    "pieces": piece_dump(&e.spec, window)?,
                }),
                failed: false,
            })
        }
        Err(e) => orbit_violation(e),
    }
}

pub fn verify(
    ring: &Ring,
    spec: &SpecDesc,
    pieces: Option<&BTreeMap<i64, String>>,
    checks: &[(String, i64)],
) -> CmdResult {
    with_line!(ring, |line| {
        let spec = match spec.build(line) {
            Ok(s) => s,
            Err(e) => return orbit_violation(e),
        };
        let reports = checks
            .iter()
            .map(|(name, w)| run_check(&spec, name, *w, pieces))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Outcome::reports(reports, json!({})))
    })
}

/// Dispatches a named check with the window conventions of the command line:
/// `N` is the span of `G`, and stable-range claims are tested from `N` on.
pub fn run_check<S: Scalar>(
    spec: &GradedRingSpec<S>,
    name: &str,
    w: i64,
    pieces: Option<&BTreeMap<i64, String>>,
) -> Result<Report, AlgebraError> {
    let n = spec.span();
    if w < n {
        return Err(AlgebraError::WindowTooSmall(format!("window {w} is below the span {n} of G")));
    }
    match name {
        "closure" => check_closure(spec, w),
        "comaximality" => check_comaximality(spec, n, n + w),
        "simplicity" => check_simplicity_criterion(spec, 1, w),
        "quasi_fg" => {
            let r = (2 * n).max(1);
            check_quasi_fg(spec, r, r + w)
        }
        "stable_range" => check_stable_range(spec, n, w),
        "generation" => check_generation(spec, n, w),
        "trichotomy" => Ok(check_trichotomy(&support_cycle_sequence(spec, spec.orbit(), w)?, spec.cycle())),
        "psi_duality" => check_psi_duality(spec, spec.orbit(), w),
        "morita" => check_morita(spec, w),
        "pieces" => {
            let dump = pieces.ok_or_else(|| AlgebraError::InvalidSpec("the pieces check needs a build output".into()))?;
            let (lo, hi) = match (dump.keys().next(), dump.keys().next_back()) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err(AlgebraError::InvalidSpec("empty piece dump".into())),
            };
            for (&k, s) in dump {
                let g = spec.generator(k)?.to_string();
                if &g != s {
                    return Ok(report("pieces", Verdict::Fail, [lo, hi], json!({ "n": k, "file": s, "computed": g })));
                }
            }
            Ok(report("pieces", Verdict::Pass, [lo, hi], Value::Null))
        }
        other => Err(AlgebraError::InvalidSpec(format!(
            "unknown check {other:?}; expected one of {}",
            CHECKS.join(", ")
        ))),
    }
}

pub fn lonely(ring: &RingDesc, f: &str) -> CmdResult {
    let verdict = if ring.is_torus() || f.contains('x') {
        let torus = ring.torus()?;
        let mp: MultiPoly = parse_expr(f)?;
        is_lonely(&torus, &mp)?
    } else {
        with_line!(&ring.line()?, |line| is_lonely_line(&line, &parse_poly(f)?)?)
    };
    let mut body = verdict.to_json();
    if let Value::Object(o) = &mut body {
        o.insert("f".into(), json!(f));
    }
    Ok(Outcome {
        body,
        failed: !verdict.lonely,
    })
}

pub fn morita(ring: &Ring, s: &BTreeSet<i64>, orbit: &str, h: &str, j: &str, window: i64) -> CmdResult {
    with_line!(ring, |line| {
        let h_poly = parse_poly(h)?;
        let spec = GradedRingSpec::new(line.clone(), &parse_poly(orbit)?, cycle_from_s(s, 0), &h_poly, &parse_poly(j)?)?;
        let r = check_morita(&spec, window)?;
        let top = s.iter().next_back().copied().unwrap_or(0);
        let reach = 2 * window + top + 4;
        let end = end_of_module(&build_l(&line, &h_poly, s, -reach, top + reach)?, window)?;
        Ok(Outcome::reports(
            vec![r],
            json!({ "spec": SpecDesc::of(&spec), "end": end.to_json() }),
        ))
    })
}

/// Random pleasantly alternating cycle with support in `[0, max_span]`.
pub fn random_pleasant(rng: &mut impl Rng, max_span: i64) -> Cycle {
    let slots = (max_span + 1) as usize;
    let k = 2 * rng.gen_range(0..(slots + 1) / 2) + 1;
    let mut idx: Vec<i64> = rand::seq::index::sample(rng, slots, k).into_iter().map(|i| i as i64).collect();
    idx.sort_unstable();
    Cycle::from_pairs(idx.into_iter().enumerate().map(|(t, i)| (i, if t % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>())
}

/// Coefficient-level identities of `G_n` on `|m|, |n| ≤ window`.
pub fn cycle_suite(g: &Cycle, window: i64) -> Vec<Report> {
    let big_n = g.span();
    let w = [-window, window];
    let mut out = Vec::new();
    let first_bad = |ok: &dyn Fn(i64, i64) -> bool| {
        (-window..=window).flat_map(|m| (-window..=window).map(move |n| (m, n))).find(|&(m, n)| !ok(m, n))
    };
    let cocycle = first_bad(&|m, n| &g.iterate(m) + &g.iterate(n).shift(-m) == g.iterate(m + n));
    out.push(match cocycle {
        None => report("cocycle", Verdict::Pass, w, Value::Null),
        Some((m, n)) => report("cocycle", Verdict::Fail, w, json!({ "m": m, "n": n })),
    });
    let reflection = (-window..=window).find(|&n| g.iterate(n) != -&g.iterate(-n).shift(-n));
    out.push(match reflection {
        None => report("reflection", Verdict::Pass, w, Value::Null),
        Some(n) => report("reflection", Verdict::Fail, w, json!({ "n": n })),
    });
    let degree = (-window..=window).find(|&n| g.iterate(n).degree() != n * g.degree());
    out.push(match degree {
        None => report("degree", Verdict::Pass, w, Value::Null),
        Some(n) => report("degree", Verdict::Fail, w, json!({ "n": n })),
    });
    if !g.is_pleasantly_alternating() {
        out.push(report("alternation", Verdict::Fail, w, json!({ "G": g })));
        return out;
    }
    out.push(report("alternation", Verdict::Pass, w, json!({ "N": big_n })));
    let hi = big_n + window;
    let bounds = (-hi..=hi).find(|&n| {
        let (lo_c, hi_c) = match n {
            n if n >= big_n => (0, 1),
            n if n <= -big_n => (-1, 0),
            _ => (-1, 1),
        };
        g.iterate(n).iter().any(|(_, a)| a < lo_c || a > hi_c)
    });
    out.push(match bounds {
        None => report("coefficient_bounds", Verdict::Pass, [-hi, hi], Value::Null),
        Some(n) => report("coefficient_bounds", Verdict::Fail, [-hi, hi], json!({ "n": n, "G_n": g.iterate(n) })),
    });
    let min_zero = (big_n..=hi).find(|&n| {
        let gn = g.iterate(n);
        !gn.min(&gn.shift(n)).is_zero()
    });
    out.push(match min_zero {
        None => report("min_zero", Verdict::Pass, [big_n, hi], Value::Null),
        Some(n) => report("min_zero", Verdict::Fail, [big_n, hi], json!({ "n": n })),
    });
    out.push(match classify_sequence(g, window) {
        Ok(SequenceClass::AlternatingMultiple { d: 1, ref base }) if base == g => {
            report("classification", Verdict::Pass, [big_n, hi], json!({ "kind": "ALTERNATING_MULTIPLE", "d": 1 }))
        }
        Ok(c) => report("classification", Verdict::Fail, [big_n, hi], json!(c)),
        Err(e) => report("classification", Verdict::Fail, [big_n, hi], json!({ "error": e.to_string() })),
    });
    out
}

pub fn cycles(g: Option<&Cycle>, window: i64, seed: Option<u64>) -> CmdResult {
    let (g, seed) = match (g, seed) {
        (Some(g), _) => (g.clone(), None),
        (None, Some(s)) => (random_pleasant(&mut ChaCha8Rng::seed_from_u64(s), 8), Some(s)),
        (None, None) => return Err(AlgebraError::InvalidSpec("cycles needs --G or --seed".into())),
    };
    let reports = cycle_suite(&g, window);
    Ok(Outcome::reports(reports, json!({ "G": g, "seed": seed })))
}

pub fn run(sc: &Scenario, default_window: i64) -> CmdResult {
    if sc.version != crate::io::VERSION {
        return Err(AlgebraError::InvalidSpec(format!("unsupported config version {}", sc.version)));
    }
    let mut entries = Vec::new();
    let mut failed = false;
    let mut push = |target: Value, out: Outcome| {
        failed |= out.failed;
        entries.push(json!({ "target": target, "result": out.body }));
    };
    let mut specs = sc.specs.clone();
    let mut rng = sc.seed.map(ChaCha8Rng::seed_from_u64);
    for check in &sc.checks {
        let w = check.window.unwrap_or(default_window);
        match check.name.as_str() {
            "lonely" => {
                let ring = sc.ring.clone().ok_or_else(|| AlgebraError::InvalidRing("lonely needs a ring".into()))?;
                for f in &sc.polys {
                    push(json!(f), lonely(&ring, f)?);
                }
            }
            "cycles" => {
                if specs.is_empty() {
                    let rng = rng
                        .as_mut()
                        .ok_or_else(|| AlgebraError::InvalidSpec("cycles without specs needs a seed".into()))?;
                    let g = random_pleasant(rng, 8);
                    push(json!(g), cycles(Some(&g), w, None)?);
                }
                for s in &specs {
                    push(json!(s.g), cycles(Some(&s.g), w, None)?);
                }
            }
            _ => {
                for s in &mut specs {
                    let ring_desc = s
                        .ring
                        .clone()
                        .or_else(|| sc.ring.clone())
                        .ok_or_else(|| AlgebraError::InvalidRing("spec without ring".into()))?;
                    s.ring.get_or_insert(ring_desc.clone());
                    let out = verify(&ring_desc.line()?, s, None, &[(check.name.clone(), w)])?;
                    push(json!(s), out);
                }
            }
        }
    }
    Ok(Outcome {
        body: json!({ "seed": sc.seed, "results": entries }),
        failed,
    })
}
