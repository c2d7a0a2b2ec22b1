//! End-to-end acceptance criteria. Each prints one PASS/FAIL line; the
//! process exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    additive_collision, from_roots, multiplicative_collision, naive_iterate, naive_pleasant, pz, q, qf,
    random_pleasant, random_rational,
};
use gwa_core::cycles::{classify_sequence, Cycle, SequenceClass};
use gwa_core::fraction::Frac;
use gwa_core::graded::{gwa_embed, GradedRingSpec, PieceTable, Pieces};
use gwa_core::laurent::LaurentPoly;
use gwa_core::lonely::{
    is_lonely, is_lonely_additive, is_lonely_multiplicative, lattice_line_reduce, validate_point, LonelyVerdict,
    Witness,
};
use gwa_core::morita::{build_l, cycle_from_s, end_of_module};
use gwa_core::parse::parse_expr;
use gwa_core::sigma::{SigmaLine, TorusDescriptor};
use gwa_core::skew::SkewElement;
use gwa_core::verify::{
    check_closure, check_comaximality, check_generation, check_stable_range, check_trichotomy, recover_cycle_data,
    support_cycle_sequence, Verdict,
};
use gwa_core::{Poly, Q};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn additive() -> SigmaLine<Q> {
    SigmaLine::additive().unwrap()
}

fn mult(p: Q) -> SigmaLine<Q> {
    SigmaLine::multiplicative(p).unwrap()
}

/// `gₙ` from the definition: translates of `h` at negative and of `j` at
/// positive coefficients of `Gₙ`.
fn naive_piece(line: &SigmaLine<Q>, g: &Cycle, h: &Poly<Q>, j: &Poly<Q>, n: i64) -> Poly<Q> {
    let mut acc = Poly::one();
    for (i, a) in naive_iterate(g, n).iter() {
        let f = if a > 0 { j } else { h };
        acc = &acc * &line.apply(f, i).pow(a.unsigned_abs() as u32);
    }
    line.normalize(&acc)
}

fn cycle_identities() -> Outcome {
    let mut r = rng(1);
    let mut checked = 0usize;
    for _ in 0..500 {
        let g = random_pleasant(&mut r, 8);
        ensure!(naive_pleasant(&g), "generator produced {g}");
        let big_n = g.span();
        let it: BTreeMap<i64, Cycle> = (-40..=40).map(|n| (n, g.iterate(n))).collect();
        for n in -20..=20 {
            ensure!(it[&n] == naive_iterate(&g, n), "G = {g}: iterate({n}) disagrees with the definition");
            ensure!(it[&n].iter().all(|(_, a)| (-1..=1).contains(&a)), "G = {g}: G_{n} = {} has a coefficient outside [-1, 1]", it[&n]);
        }
        for m in -20..=20 {
            for n in -20..=20 {
                let rhs = &it[&m] + &it[&n].shift(-m);
                ensure!(it[&(m + n)] == rhs, "G = {g}: G_{{{m}+{n}}} != G_{m} + σ^{{-{m}}}(G_{n})");
                checked += 1;
            }
        }
        for n in big_n..=big_n + 20 {
            let gn = &it[&n];
            ensure!(gn.min(&gn.shift(n)).is_zero(), "G = {g}: min(G_{n}, σ^{n}G_{n}) != 0");
        }
    }
    Ok(format!("500 cycles, {checked} cocycle identities"))
}

fn exhaustive_classification() -> Outcome {
    let (mut effective, mut pinned, mut multiples) = (0, 0, 0);
    let mut total = 0;
    for code in 0..5i64.pow(5) {
        let digits: Vec<i64> = (0..5).map(|k| (code / 5i64.pow(k)) % 5 - 2).collect();
        if digits[0] == 0 {
            continue;
        }
        total += 1;
        let g = Cycle::from_dense(0, &digits);
        let big_n = g.span();
        let eff = (big_n..=big_n + 16).all(|n| naive_iterate(&g, n).is_effective());
        let class = classify_sequence(&g, 16);
        if !eff {
            ensure!(class.is_err(), "{g}: classified although some G_n is not effective");
            continue;
        }
        effective += 1;
        match class {
            Ok(SequenceClass::Pinned { index }) => {
                for n in big_n..=big_n + 16 {
                    let gn = naive_iterate(&g, n);
                    let low = gn.min(&gn.shift(n));
                    ensure!(low.coeff(index) >= 1, "{g}: Z_{index} not below min(G_{n}, σ^{n}G_{n}) = {low}");
                }
                pinned += 1;
            }
            Ok(SequenceClass::AlternatingMultiple { d, base }) => {
                ensure!(d >= 1 && naive_pleasant(&base), "{g}: bad decomposition {d}·{base}");
                ensure!(d * &base == g, "{g} != {d}·{base}");
                multiples += 1;
            }
            Err(e) => return Err(format!("{g}: effective on the window but rejected: {e}")),
        }
    }
    Ok(format!("{total} cycles, {effective} effective: {pinned} pinned, {multiples} alternating multiples"))
}

fn weyl_algebra() -> Outcome {
    let line = additive();
    let e = gwa_embed(&line, &pz(&[0, 1])).map_err(|e| e.to_string())?;
    let comm = e.x.mul(&line, &e.y).sub(&e.y.mul(&line, &e.x));
    ensure!(comm == SkewElement::one(), "xy - yx = {comm:?}");
    let mut yn = SkewElement::one();
    for n in 1..=12 {
        yn = yn.mul(&line, &e.y);
        let c = yn.coeff(-n).to_poly().ok_or("non-polynomial coefficient")?;
        let falling = from_roots(&(0..n).map(q).collect::<Vec<_>>());
        ensure!(c == falling, "coefficient of y^{n} is {c}");
        let g = e.spec.piece_generator(-n);
        ensure!(g == line.normalize(&c), "piece {} is {g}, coefficient of y^{n} is {c}", -n);
    }
    Ok("xy - yx = 1, pieces -1..-12 match powers of y".into())
}

/// Rational roots in pairwise distinct orbits, checked against the root oracle.
fn lonely_roots(r: &mut ChaCha8Rng, p: Option<&Q>) -> Vec<Q> {
    loop {
        let k = r.gen_range(1..=2);
        let roots: Vec<Q> = (0..k).map(|_| random_rational(r, 6, 3)).collect();
        let distinct = roots.iter().collect::<BTreeSet<_>>().len() == roots.len();
        let ok = match p {
            None => additive_collision(&roots).is_none(),
            Some(p) => roots.iter().all(|x| !x.is_zero()) && multiplicative_collision(&roots, p).is_none(),
        };
        if distinct && ok {
            return roots;
        }
    }
}

fn ring_axioms() -> Outcome {
    let mut r = rng(4);
    let params = [q(2), q(3), qf(1, 2), q(-2), qf(3, 2)];
    let mut worst = (Duration::ZERO, String::new());
    for k in 0..100 {
        let p = (k % 2 == 1).then(|| params.choose(&mut r).unwrap().clone());
        let line = p.clone().map_or_else(additive, mult);
        let roots = lonely_roots(&mut r, p.as_ref());
        let qq = from_roots(&roots);
        let pick = |r: &mut ChaCha8Rng| {
            let c = r.gen_range(0..=2);
            from_roots(&(0..c).map(|_| roots.choose(r).unwrap().clone()).collect::<Vec<_>>())
        };
        let (h, j) = (pick(&mut r), pick(&mut r));
        let g = random_pleasant(&mut r, 4);
        let label = format!("line {:?} q = {qq}, G = {g}, h = {h}, j = {j}", p);
        let spec = GradedRingSpec::new(line, &qq, g, &h, &j).map_err(|e| format!("{label}: rejected: {e}"))?;
        let big_n = spec.span();
        let t0 = Instant::now();
        let reports = [
            check_closure(&spec, 12),
            check_stable_range(&spec, big_n, 6),
            check_comaximality(&spec, big_n, big_n + 6),
            check_generation(&spec, big_n, 12),
        ];
        for rep in reports {
            let rep = rep.map_err(|e| format!("{label}: {e}"))?;
            ensure!(rep.passed(), "{label}: {} failed: {}", rep.check, rep.witness);
        }
        let dt = t0.elapsed();
        if dt > worst.0 {
            worst = (dt, label);
        }
    }
    Ok(format!("100 specs, slowest {:.2}s", worst.0.as_secs_f64()))
}

/// Up to three terms `f·tⁿ`; `f` is a Laurent polynomial when `u` is a unit.
fn random_element(r: &mut ChaCha8Rng, laurent: bool) -> SkewElement<Q> {
    (0..r.gen_range(1..=3)).fold(SkewElement::zero(), |acc, _| {
        let c: Vec<i64> = (0..r.gen_range(1..=3)).map(|_| r.gen_range(-4..=4)).collect();
        let shift = if laurent { r.gen_range(-1..=1) } else { 0 };
        let f = LaurentPoly::with_shift(shift, pz(&c));
        acc.add(&SkewElement::monomial(f, r.gen_range(-2..=2)))
    })
}

fn psi_anti_isomorphism() -> Outcome {
    let mut r = rng(5);
    let lines = [additive(), mult(q(2)), mult(qf(-1, 3))];
    for k in 0..200 {
        let line = &lines[k % 3];
        let laurent = k % 3 != 0;
        let (a, b) = (random_element(&mut r, laurent), random_element(&mut r, laurent));
        let lhs = a.mul(line, &b).psi(line);
        let rhs = b.psi(line).mul(line, &a.psi(line));
        ensure!(lhs == rhs, "ψ(ab) != ψ(b)ψ(a) for a = {a:?}, b = {b:?}");
    }
    for k in 0..20 {
        let line = if k % 2 == 0 { additive() } else { mult(q(3)) };
        let qq = pz(&[-1, 1]);
        let h = qq.pow(r.gen_range(1..=2));
        let g = random_pleasant(&mut r, 5);
        let spec = GradedRingSpec::new(line.clone(), &qq, g.clone(), &h, &Poly::one()).map_err(|e| e.to_string())?;
        let psi = PieceTable::tabulate(&spec, -10, 10).map_err(|e| e.to_string())?.psi();
        for n in -10..=10 {
            let expect = naive_piece(&line, &g, &Poly::one(), &h, n);
            let got = psi.generator(n).map_err(|e| e.to_string())?;
            ensure!(got == expect, "G = {g}, h = {h}: ψ piece {n} is {got}, B(G, R, H) has {expect}");
        }
    }
    Ok("200 element pairs, 20 specs on ±10".into())
}

fn morita_identity() -> Outcome {
    let line = additive();
    let mut count = 0;
    for h in [pz(&[0, 1]), pz(&[0, 0, 1])] {
        for mask in 0u32..16 {
            let s: BTreeSet<i64> = (0..4).filter(|&i| mask & (1 << i) != 0).collect();
            let l = build_l(&line, &h, &s, -20, 24).map_err(|e| e.to_string())?;
            let end = end_of_module(&l, 8).map_err(|e| e.to_string())?;
            let g = cycle_from_s(&s, 0);
            let spec = GradedRingSpec::new(line.clone(), &pz(&[0, 1]), g.clone(), &h, &Poly::one())
                .map_err(|e| e.to_string())?;
            for m in -8..=8 {
                let got = end.generator(m).map_err(|e| e.to_string())?;
                let piece = spec.piece_generator(m);
                ensure!(piece == naive_piece(&line, &g, &h, &Poly::one(), m), "piece formula mismatch");
                ensure!(got == &Frac::from_poly(piece.clone()), "S = {s:?}, h = {h}, m = {m}: End gives {got}, ring has {piece}");
                count += 1;
            }
        }
    }
    Ok(format!("32 modules, {count} degrees"))
}

fn trichotomy() -> Outcome {
    let mut r = rng(7);
    let rings = [(additive(), pz(&[0, 1])), (mult(q(2)), pz(&[-1, 1]))];
    for _ in 0..20 {
        let g = random_pleasant(&mut r, 5);
        for (line, qq) in &rings {
            let one = Poly::one();
            let cases: [(&Poly<Q>, &Poly<Q>, &str, fn(&Cycle) -> Cycle); 3] = [
                (qq, qq, "I", |c| c.abs()),
                (&one, qq, "II", |c| c.pos_part()),
                (qq, &one, "III", |c| (-c).pos_part()),
            ];
            for (h, j, label, rule) in cases {
                let spec = GradedRingSpec::new(line.clone(), qq, g.clone(), h, j).map_err(|e| e.to_string())?;
                let seq = support_cycle_sequence(&spec, spec.orbit(), 10).map_err(|e| e.to_string())?;
                for n in -10..=10 {
                    let expect = rule(&naive_iterate(&g, n));
                    ensure!(seq.e[&n] == expect, "G = {g}, case {label}: E_{n} = {}, expected {expect}", seq.e[&n]);
                }
                let rep = check_trichotomy(&seq, &g);
                ensure!(rep.passed() && rep.witness["case"] == label, "G = {g}: reported {}, expected {label}", rep.witness);
            }
        }
    }
    Ok("20 cycles × 2 rings × 3 cases on ±10".into())
}

fn recovery() -> Outcome {
    let mut r = rng(8);
    let mut rejected = 0;
    for _ in 0..100 {
        let g = random_pleasant(&mut r, 6);
        let omega = Cycle::from_pairs((-3..=3).map(|i| (i, r.gen_range(0..=2))).collect::<Vec<_>>());
        let start = g.span() + r.gen_range(0..=3);
        let len = 12;
        let seq: BTreeMap<i64, Cycle> = (start..start + len).map(|n| (n, &naive_iterate(&g, n) - &omega)).collect();
        let got = recover_cycle_data(&seq).map_err(|e| format!("G = {g}, Ω = {omega}: {e}"))?;
        ensure!(got == (g.clone(), omega.clone()), "G = {g}, Ω = {omega}: recovered {got:?}");

        let mut bad = seq.clone();
        let n = start + r.gen_range(len / 2..len);
        let i = r.gen_range(-4..=start + len + 6);
        let sign = if r.gen_bool(0.5) { 1 } else { -1 };
        let e = &bad[&n] + &(sign * &Cycle::point(i));
        bad.insert(n, e);
        ensure!(recover_cycle_data(&bad).is_err(), "perturbation at n = {n}, Z_{i} accepted for G = {g}");
        rejected += 1;
    }
    Ok(format!("100 recoveries exact, {rejected} perturbations rejected"))
}

fn shift_witness_holds(v: &LonelyVerdict, f: &Poly<Q>, line: &SigmaLine<Q>) -> bool {
    match v.witness {
        Some(Witness::Shift(n)) => n != 0 && !f.gcd(&line.apply(f, n)).unwrap().is_constant(),
        _ => false,
    }
}

fn lonely_decisions() -> Outcome {
    let mut r = rng(9);
    let params = [q(2), q(3), qf(1, 2), qf(1, 3), q(-2)];
    let mut not_lonely = 0;
    for k in 0..400 {
        let multiplicative = k % 2 == 1;
        let count = r.gen_range(1..=4);
        let mut roots: Vec<Q> = (0..count).map(|_| random_rational(&mut r, 8, 3)).collect();
        if multiplicative {
            roots.retain(|x| !x.is_zero());
            if roots.is_empty() {
                roots.push(q(1));
            }
        }
        let mut f = from_roots(&roots);
        if r.gen_bool(0.3) {
            f = &f * &pz(&[1, 0, 1]);
        }
        let (v, expect, line) = if multiplicative {
            let p = params.choose(&mut r).unwrap().clone();
            let v = is_lonely_multiplicative(&f, &p).map_err(|e| e.to_string())?;
            (v, multiplicative_collision(&roots, &p).is_none(), mult(p))
        } else {
            let v = is_lonely_additive(&f).map_err(|e| e.to_string())?;
            (v, additive_collision(&roots).is_none(), additive())
        };
        ensure!(v.certified(), "uncertified verdict for {f}");
        ensure!(v.lonely == expect, "f = {f}: decided {}, oracle {expect}", v.lonely);
        if !v.lonely {
            ensure!(shift_witness_holds(&v, &f, &line), "f = {f}: witness {:?} does not validate", v.witness);
            not_lonely += 1;
        }
    }

    let t = TorusDescriptor::new(false, vec![q(2), q(3)]).map_err(|e| e.to_string())?;
    let f = parse_expr("1 + x2 + x3").map_err(|e| e.to_string())?;
    let v = is_lonely(&t, &f).map_err(|e| e.to_string())?;
    ensure!(!v.lonely, "1 + x2 + x3 reported lonely");
    match &v.witness {
        Some(Witness::Point { point, shift }) => {
            ensure!(validate_point(&t, &f, point, *shift), "witness point does not validate");
            let full = [Q::zero(), point[0].clone(), point[1].clone()];
            let s2 = q(2).pow(*shift as i32);
            let s3 = q(3).pow(*shift as i32);
            let at = Q::one() + full[1].clone() + full[2].clone();
            let shifted = Q::one() + s2 * full[1].clone() + s3 * full[2].clone();
            ensure!(at.is_zero() && shifted.is_zero(), "point is not a common zero");
        }
        other => return Err(format!("expected a point witness, got {other:?}")),
    }
    let f = parse_expr("1 + x2*x3").map_err(|e| e.to_string())?;
    let red = lattice_line_reduce(&f).ok_or("1 + x2*x3 not reduced to a line")?;
    let rho = red
        .direction
        .iter()
        .skip(1)
        .zip([q(2), q(3)])
        .fold(Q::one(), |acc, (&v, p)| acc * p.pow(v as i32));
    ensure!(rho == q(6), "ρ = {rho}");
    ensure!(is_lonely_multiplicative(&red.g, &rho).map_err(|e| e.to_string())?.lonely, "1 + z not lonely for ρ = 6");
    let v = is_lonely(&t, &f).map_err(|e| e.to_string())?;
    ensure!(v.lonely && v.certified(), "1 + x2*x3 not certified lonely");
    Ok(format!("400 univariate inputs ({not_lonely} not lonely, all witnesses valid), torus examples"))
}

fn negative_control() -> Outcome {
    let qq = pz(&[0, -1, 1]);
    ensure!(GradedRingSpec::new(additive(), &qq, Cycle::point(0), &qq, &qq).is_err(), "u(u - 1) accepted as lonely");
    let spec = GradedRingSpec::new_unchecked(additive(), &qq, Cycle::point(0), &qq, &qq).map_err(|e| e.to_string())?;
    let big_n = spec.span();
    let rep = check_comaximality(&spec, big_n.max(1), big_n + 6).map_err(|e| e.to_string())?;
    ensure!(rep.verdict == Verdict::Fail, "comaximality passed");
    let n = rep.witness["n"].as_i64().ok_or("no degree in witness")?;
    let factor = rep.witness["common_factor"].as_str().ok_or("no common factor")?.to_string();
    ensure!(n <= big_n + 6, "failure at n = {n}");
    let a = &spec.generator(n).unwrap() * &additive().apply(&spec.generator(-n).unwrap(), n);
    let b = &spec.generator(-n).unwrap() * &additive().apply(&spec.generator(n).unwrap(), -n);
    let common = a.gcd(&b).map_err(|e| e.to_string())?;
    ensure!(!common.is_constant() && common.to_string() == factor, "reported {factor}, direct gcd {common}");
    Ok(format!("fails at n = {n} with common factor {factor}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("cycle identity suite", 10, cycle_identities),
        ("exhaustive cycle classification", 30, exhaustive_classification),
        ("Weyl algebra identities", 1, weyl_algebra),
        ("ring axioms on random specs", 60, ring_axioms),
        ("ψ anti-isomorphism", 10, psi_anti_isomorphism),
        ("Morita endomorphism identity", 30, morita_identity),
        ("trichotomy", 20, trichotomy),
        ("divisor-sequence recovery", 5, recovery),
        ("lonely decisions", 30, lonely_decisions),
        ("non-lonely negative control", 5, negative_control),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let secs = t0.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(d) if secs >= limit as f64 => Err(format!("{d}; over the {limit}s limit")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s < {limit}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s, limit {limit}s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
