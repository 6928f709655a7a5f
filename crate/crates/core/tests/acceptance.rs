//! Acceptance gate. Runs without the libtest harness so that the per-criterion
//! lines are always printed; exits nonzero when any criterion fails.

use std::time::{Duration, Instant};

use overinterp::algcurves::{
    alpha_exponent, forcing_count, min_degree_curve, monomial_count, AlphaClass, AlphaOptions, PointSet2, RANK_TOL,
};
use overinterp::harness::{self, Degrees, ExperimentConfig, Kind, PointsSpec, RunReport, Shape};
use overinterp::numcore::count_zeros_in_disk;
use overinterp::overconv::{a1_of_t, b_const};
use overinterp::ratinterp::{classify_rational_overinterp, pade, pade_row_stabilizes, Alpha, Schedule, Verdict};
use overinterp::taylorbounds::disk_constants;
use overinterp::{CatalogFunction, ComplexPoly, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(cfg: &ExperimentConfig) -> Result<RunReport, String> {
    harness::run(cfg).map_err(|e| e.to_string())
}

fn rows_with(rep: &RunReport, anchor_prefix: &str) -> (usize, usize) {
    let rows: Vec<_> = rep.rows.iter().filter(|r| r.anchor.starts_with(anchor_prefix)).collect();
    (rows.len(), rows.iter().filter(|r| !r.holds).count())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn lagrange_suite() -> Outcome {
    let mut cfg = ExperimentConfig::new(Kind::LagrangeBound);
    cfg.trials = Some(1000);
    cfg.seed = 2024;
    let rep = run(&cfg)?;
    ensure(rep.errors.is_empty(), || format!("{} trials errored, first: {:?}", rep.errors.len(), rep.errors.first()))?;
    let ids: std::collections::BTreeSet<&str> =
        rep.table("trials").into_iter().flat_map(|t| t.column("function").unwrap_or_default()).collect();
    ensure(ids.len() == 6, || format!("catalog coverage {ids:?}"))?;
    let (n, bad) = rows_with(&rep, "M(s, f - L_n f)");
    ensure(n == 1000 && bad == 0, || format!("{n} trials, {bad} violations"))?;
    Ok(format!("{n} trials over {} functions, 0 violations", ids.len()))
}

fn constant_system() -> Outcome {
    // Closed forms at r = 1/2: s = 2/3, a1 = 24/25, A = 4 ln 10 / ln(25/24),
    // delta = ln(25/24) / (4 ln 2).
    let dc = disk_constants(0.5).map_err(|e| e.to_string())?;
    let ln_q = (25.0f64 / 24.0).ln();
    let expect = [
        ("s", dc.s, 2.0 / 3.0),
        ("a1", dc.a1, 0.96),
        ("A", dc.big_a, 4.0 * 10f64.ln() / ln_q),
        ("delta", dc.delta, ln_q / (4.0 * 2f64.ln())),
    ];
    for (name, got, want) in expect {
        ensure(rel(got, want) < 1e-6, || format!("{name} = {got}, expected {want}"))?;
    }
    ensure(rel(dc.big_a, 225.62) < 1e-4 && rel(dc.delta, 0.01472) < 1e-3, || {
        format!("A = {}, delta = {} far from the published values", dc.big_a, dc.delta)
    })?;
    let a1 = a1_of_t(0.5).map_err(|e| e.to_string())?;
    let b = b_const(0.5).map_err(|e| e.to_string())?;
    ensure((a1 - 0.96).abs() < 1e-12, || format!("a1_of_t(0.5) = {a1}"))?;
    ensure((b - 180.0 / 181.0).abs() < 1e-12, || format!("b(0.5) = {b}"))?;
    Ok(format!("A = {:.6}, delta = {:.8}, b = 180/181", dc.big_a, dc.delta))
}

fn witness_suite() -> Outcome {
    let cfg = ExperimentConfig::new(Kind::CoeffDecay);
    let rep = run(&cfg)?;
    ensure(rep.errors.is_empty(), || {
        format!("{} witnesses errored, first: {:?}", rep.errors.len(), rep.errors.first())
    })?;
    let t = rep.table("witnesses").ok_or("no witness table")?;
    ensure(t.rows.len() == 200, || format!("{} witnesses", t.rows.len()))?;
    let dc = disk_constants(0.5).map_err(|e| e.to_string())?;
    for (n, big_n) in t.column("n").unwrap().iter().zip(t.column("N").unwrap()) {
        let n: usize = n.parse().unwrap();
        let big_n: usize = big_n.parse().unwrap();
        ensure(n <= 4 && big_n == dc.min_zero_count(n), || format!("n = {n}, N = {big_n}"))?;
    }
    let (coeffs, bad) = rows_with(&rep, "|f_k|");
    let (decrements, bad_dec) = rows_with(&rep, "M(r,g)");
    ensure(coeffs > 0 && bad == 0, || format!("{coeffs} coefficients, {bad} violations"))?;
    ensure(decrements == 200 && bad_dec == 0, || format!("{decrements} decrement checks, {bad_dec} violations"))?;
    Ok(format!("200 witnesses, {coeffs} certified coefficients, 0 violations"))
}

fn zero_counting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut done = 0;
    while done < 500 {
        let deg = rng.random_range(1..=16);
        let roots: Vec<C64> = (0..deg)
            .map(|_| C64::from_polar(1.5 * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let t = rng.random_range(0.1..1.4);
        if roots.iter().any(|z| (z.norm() - t).abs() < 1e-3) {
            continue;
        }
        let truth = roots.iter().filter(|z| z.norm() < t).count();
        let p = ComplexPoly::from_roots(&roots);
        let got = count_zeros_in_disk(&p, t, 1e-4).map_err(|e| format!("case {done}: {e}"))?;
        ensure(got.count == truth, || format!("case {done}: counted {} expected {truth} at t = {t}", got.count))?;
        done += 1;
    }
    Ok("500/500 counts exact".into())
}

fn pade_rows() -> Outcome {
    let f = CatalogFunction::rational(ComplexPoly::from_real(&[1.0, 3.0]), ComplexPoly::from_real(&[1.0, -2.0]))
        .map_err(|e| e.to_string())?;
    let stab = pade_row_stabilizes(&f.taylor(60), 1, 1, 10).map_err(|e| e.to_string())?;
    ensure(stab.stable && stab.first_n == Some(1), || format!("row not stable from n=1: {:?}", stab.first_n))?;
    let worst = stab.entries.iter().filter_map(|e| e.cross_difference).fold(0.0, f64::max);
    ensure(worst < 1e-9, || format!("cross-difference {worst:e}"))?;
    let exp = CatalogFunction::exp().taylor(60);
    for n in 1..=10 {
        let e = pade(&exp, n, 1).map_err(|e| e.to_string())?;
        let v = e.vanish_order;
        ensure(v.order == n + 2 && !v.saturated, || format!("exp n={n}: vanish order {v:?}"))?;
    }
    Ok(format!("stable from n=1 (max cross-difference {worst:.1e}); exp orders n+2 for n=1..10"))
}

fn classifier() -> Outcome {
    let schedule = Schedule::default_rational();
    let poly = CatalogFunction::polynomial(ComplexPoly::from_real(&[1.0, 0.0, 0.0, 1.0]));
    let cases = [
        ("geom", CatalogFunction::geometric(), "RationalQ1"),
        ("exp", CatalogFunction::exp(), "Entire"),
        ("poly", poly, "Polynomial"),
    ];
    let mut alpha_err = f64::NAN;
    for (id, f, want) in cases {
        let cls = classify_rational_overinterp(&f, 0.5, &schedule).map_err(|e| format!("{id}: {e}"))?;
        ensure(cls.verdict.name() == want, || format!("{id}: {:?}", cls.verdict))?;
        if id == "poly" {
            ensure(matches!(cls.verdict, Verdict::Polynomial { degree: Some(3) }), || format!("{:?}", cls.verdict))?;
        }
        if id == "geom" {
            let limit = cls.trace.as_ref().and_then(|t| t.alpha_limit).ok_or("geom: no alpha limit")?;
            alpha_err = limit.distance(Alpha::Finite(C64::new(1.0, 0.0)));
            ensure(alpha_err < 5e-3, || format!("geom: alpha limit {limit:?}"))?;
        }
    }
    Ok(format!("RationalQ1 / Entire / Polynomial; |alpha - 1| = {alpha_err:.1e}"))
}

fn circle_suite() -> Outcome {
    let rep = run(&ExperimentConfig::new(Kind::CircleSelect))?;
    ensure(rep.errors.is_empty(), || format!("{} errors, first: {:?}", rep.errors.len(), rep.errors.first()))?;
    let (bw, bw_bad) = rows_with(&rep, "M(1,Q)");
    ensure(bw == 100 && bw_bad == 0, || format!("Bernstein-Walsh: {bw} trials, {bw_bad} violations"))?;
    let (masks, mask_bad) = rows_with(&rep, "|F_n|");
    ensure(masks > 0 && mask_bad == 0, || format!("F_n masks: {masks}, {mask_bad} below the bound"))?;
    let v = rep.verdict_of("circle-select").unwrap_or("missing");
    ensure(v.starts_with("t="), || format!("select_circle: {v}"))?;
    Ok(format!("{bw} Bernstein-Walsh, {masks} masks, {v}"))
}

fn curve_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cfg = ExperimentConfig::new(Kind::CurveFit);
    cfg.points = Some(PointsSpec::Generate { shape: Shape::Parabola, count: 20 });
    cfg.trials = Some(1000);
    let rep = run(&cfg)?;
    ensure(rep.verdict_of("curve-fit") == Some("degree=2"), || format!("parabola: {:?}", rep.verdict_of("curve-fit")))?;
    ensure(rep.errors.is_empty(), || format!("{} Bezout errors, first: {:?}", rep.errors.len(), rep.errors.first()))?;
    let (bez, bez_bad) = rows_with(&rep, "|S cap X|");
    ensure(bez == 1000 && bez_bad == 0, || format!("Bezout: {bez} trials, {bez_bad} violations"))?;

    let generic = PointSet2::random(50, &mut rng).map_err(|e| e.to_string())?;
    let d = min_degree_curve(&generic, RANK_TOL, 12).map_err(|e| e.to_string())?.degree;
    ensure(d == 9, || format!("50 generic points: degree {d}"))?;

    for k in 1..=6 {
        ensure(forcing_count(k) == monomial_count(k) - 1, || format!("forcing count k={k}"))?;
        for trial in 0..200 {
            let s = PointSet2::random(forcing_count(k), &mut rng).map_err(|e| e.to_string())?;
            let m = min_degree_curve(&s, RANK_TOL, k).map_err(|e| format!("k={k} trial={trial}: {e}"))?;
            ensure(m.degree <= k, || format!("k={k} trial={trial}: degree {}", m.degree))?;
        }
    }

    let (a, b) = (C64::new(0.3, -0.2), C64::new(0.5, 0.1));
    let line: Vec<(C64, C64)> = (0..60)
        .map(|_| {
            let t = C64::from_polar(rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
            (t, a * t + b)
        })
        .collect();
    let line = PointSet2::new(line, 1e-12).map_err(|e| e.to_string())?;
    let opts = AlphaOptions::default();
    let on_line = alpha_exponent(&line, &opts).map_err(|e| e.to_string())?;
    ensure((0.75..=1.25).contains(&on_line.alpha_hat), || format!("collinear slope {}", on_line.alpha_hat))?;
    ensure(on_line.class == AlphaClass::OnCurve { degree: 1 }, || format!("collinear class {:?}", on_line.class))?;
    let cloud = PointSet2::random(100, &mut rng).map_err(|e| e.to_string())?;
    let spread = alpha_exponent(&cloud, &opts).map_err(|e| e.to_string())?;
    ensure(spread.alpha_hat >= 1.75, || format!("generic slope {}", spread.alpha_hat))?;
    Ok(format!(
        "degrees 2 and 9, {bez} Bezout trials, forcing k=1..6, slopes {:.3} and {:.3}",
        on_line.alpha_hat, spread.alpha_hat
    ))
}

fn non_implication() -> Outcome {
    let mut cfg = ExperimentConfig::new(Kind::OverconvRate);
    cfg.pair_classify = true;
    cfg.degrees = Some(Degrees { lo: 1, hi: 16 });
    let rep = run(&cfg)?;
    let rate = rep.verdict_of("overconv-rate").unwrap_or("missing");
    let cls = rep.verdict_of("classify-rational").unwrap_or("missing");
    ensure(rate == "overconvergent" && cls == "NoOverinterpolation", || {
        format!("overconv-rate {rate}, classify-rational {cls}")
    })?;
    Ok(format!("lacunary-factorial: {rate} and {cls} in one report"))
}

/// Name, wall-clock budget, check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("remainder bound suite", Duration::from_secs(60), lagrange_suite),
        ("constant system", Duration::from_secs(10), constant_system),
        ("witness coefficient decay", Duration::from_secs(120), witness_suite),
        ("zero counting", Duration::from_secs(30), zero_counting),
        ("pade rows", Duration::from_secs(10), pade_rows),
        ("rational classifier", Duration::from_secs(120), classifier),
        ("circle selection suite", Duration::from_secs(120), circle_suite),
        ("algebraic curve suite", Duration::from_secs(180), curve_suite),
        ("overconvergence without overinterpolation", Duration::from_secs(60), non_implication),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *budget => Err(format!("{msg}; over budget of {}s", budget.as_secs())),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {} {name} ({:.2}s): {msg}", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({:.2}s): {msg}", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
