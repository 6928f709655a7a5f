//! One pipeline per experiment kind.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::catalog_lookup;
use super::config::{Approximants, Coef, Degrees, ExperimentConfig, Family, FunctionSpec, Kind, PointsSpec, Shape};
use super::report::{cell, InequalityRow, RunReport, Table};
use crate::algcurves::{
    alpha_exponent, bezout_check, min_degree_curve, AlphaClass, AlphaOptions, BivarPoly, PointSet2,
};
use crate::numcore::{max_modulus, Analytic, CatalogFunction, ComplexPoly, FnAnalytic, InequalityCheck, C64};
use crate::overconv::{bernstein_walsh_check, overconv_rate, select_circle, taylor_section_rate, RateReport};
use crate::polyinterp::{verify_remainder, NodeSet, REMAINDER_SLACK};
use crate::ratinterp::{classify_rational_overinterp, pade, pade_row_stabilizes, Schedule};
use crate::taylorbounds::{coeff_bound, disk_constants, synth_witness, zero_decrement_check, CHECK_SLACK};
use crate::{Error, Result};

const ANCHOR_REMAINDER: &str = "M(s, f - L_n f) <= M(R,f) R/(R-s) ((s+r)/(R-r))^(n+1)";
const ANCHOR_DECAY: &str = "|f_k| <= M(R,f) R_+^-(n+1) a^N for n < k <= delta N";
const ANCHOR_DECREMENT: &str = "M(r,g) <= M(s,g) (2rs/(r^2+s^2))^N";
const ANCHOR_PADE: &str = "ord(f - P_n/Q_n) >= n + m + 1";
const ANCHOR_LIMSUP: &str = "limsup |alpha_n| >= 1/rho";
const ANCHOR_BW: &str = "M(1,Q) <= (2/r)^m when M(r/2,Q) = 1";
const ANCHOR_FN: &str = "|F_n| >= (1-r)/2 - 36 e h r";
const ANCHOR_NULL: &str = "max |X(p)| / |row(p)| <= 10 tol";
const ANCHOR_BEZOUT: &str = "|S cap X| <= deg Gamma deg X";
const ANCHOR_GADGET: &str = "|S cap (L_1 ... L_{n-1})| >= n - 1";

/// Run the pipeline named by `config.kind`. Module errors are captured per
/// unit of work; only an invalid config aborts.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let start = Clock::start();
    let mut rep = RunReport::new(config.clone());
    match config.kind {
        Kind::LagrangeBound => lagrange_bound(config, &mut rep)?,
        Kind::CoeffDecay => coeff_decay(config, &mut rep)?,
        Kind::PadeRow => pade_row(config, &mut rep)?,
        Kind::ClassifyRational => classify(config, &mut rep)?,
        Kind::CircleSelect => circle_select(config, &mut rep)?,
        Kind::OverconvRate => overconv(config, &mut rep)?,
        Kind::CurveFit => curve_fit(config, &mut rep)?,
        Kind::AlphaExponent => alpha(config, &mut rep)?,
    }
    rep.finish();
    rep.wall_clock_ms = start.elapsed_ms();
    Ok(rep)
}

/// Wall clock; `std::time::Instant` panics on wasm32-unknown-unknown.
struct Clock(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Clock {
    fn start() -> Self {
        Clock(
            #[cfg(not(target_arch = "wasm32"))]
            std::time::Instant::now(),
        )
    }

    fn elapsed_ms(&self) -> u128 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_millis();
        #[cfg(target_arch = "wasm32")]
        0
    }
}

/// Generator for unit of work `i`: one ChaCha stream per index.
fn trial_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn disk_point(rng: &mut impl Rng, radius: f64) -> C64 {
    C64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
}

fn random_poly(deg: usize, rng: &mut impl Rng) -> ComplexPoly {
    let mut c: Vec<C64> = (0..=deg).map(|_| disk_point(rng, 1.0)).collect();
    // keep the nominal degree
    if c[deg].norm() < 0.1 {
        c[deg] += C64::new(0.5, 0.0);
    }
    ComplexPoly::new(c)
}

fn function_or(cfg: &ExperimentConfig, default: FunctionSpec) -> Result<CatalogFunction> {
    catalog_lookup(cfg.function.as_ref().unwrap_or(&default))
}

fn rational_spec(p: &[f64], q: &[f64]) -> FunctionSpec {
    FunctionSpec {
        p: Some(p.iter().map(|&x| Coef::Real(x)).collect()),
        q: Some(q.iter().map(|&x| Coef::Real(x)).collect()),
        ..FunctionSpec::id("rational")
    }
}

/// Every catalog entry once, with representative parameters.
pub fn default_catalog(seed: u64) -> Vec<CatalogFunction> {
    let poly = FunctionSpec {
        p: Some(vec![Coef::Real(1.0), Coef::Real(0.0), Coef::Real(0.0), Coef::Real(1.0)]),
        ..FunctionSpec::id("poly")
    };
    let random = FunctionSpec { seed: Some(seed), ..FunctionSpec::id("random-radius-one") };
    [
        poly,
        rational_spec(&[1.0, 1.0], &[1.0, -2.0]),
        FunctionSpec::id("geom"),
        FunctionSpec::id("exp"),
        FunctionSpec::id("lacunary-factorial"),
        random,
    ]
    .iter()
    .map(|s| catalog_lookup(s).expect("built-in catalog entries resolve"))
    .collect()
}

fn lagrange_bound(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let fs = match &cfg.function {
        Some(spec) => vec![catalog_lookup(spec)?],
        None => default_catalog(cfg.seed),
    };
    let trials = cfg.trials.unwrap_or(100);
    let deg = cfg.degrees.unwrap_or(Degrees { lo: 1, hi: 12 });
    let idx: Vec<usize> = (0..trials).collect();
    let results = crate::par_map(&idx, |&i| {
        let mut rng = trial_rng(cfg.seed, i);
        let f = &fs[i % fs.len()];
        let n = rng.random_range(deg.lo..=deg.hi);
        let rho = f.rho_known().unwrap_or(f64::INFINITY).min(4.0);
        let r = cfg.radii.r.unwrap_or_else(|| rho * rng.random_range(0.05..0.5));
        let big_r = cfg.radii.big_r.unwrap_or_else(|| r + (rho - r) * rng.random_range(0.2..0.9));
        let s = cfg.radii.s.unwrap_or_else(|| big_r * rng.random_range(0.1..0.95));
        let check = NodeSet::random_in_disk(n + 1, r, &mut rng).and_then(|nodes| verify_remainder(f, &nodes, s, big_r));
        (f.id().to_string(), n, r, s, big_r, check)
    });
    let mut t = Table::new("trials", &["trial", "function", "n", "r", "s", "R", "lhs", "rhs", "holds", "kappa"]);
    for (i, (id, n, r, s, big_r, check)) in results.into_iter().enumerate() {
        let ctx = format!("trial={i} function={id} n={n}");
        if let Some(c) = rep.capture(ctx.clone(), check) {
            let ic = InequalityCheck { lhs: c.lhs, rhs: c.rhs, holds: c.holds };
            rep.rows.push(InequalityRow::new(ctx, "polyinterp", ANCHOR_REMAINDER, ic, REMAINDER_SLACK));
            t.push(vec![
                cell(i),
                id,
                cell(n),
                cell(r),
                cell(s),
                cell(big_r),
                cell(c.lhs),
                cell(c.rhs),
                cell(c.holds),
                cell(c.kappa),
            ]);
        }
    }
    let bad = rep.rows.iter().filter(|r| !r.holds).count();
    rep.verdict("lagrange-bound", if bad == 0 { "holds".to_string() } else { format!("{bad} violations") });
    rep.tables.push(t);
    Ok(())
}

/// `prod (z - z_j)/sqrt(rs) h(z)`: a constant multiple of `f - P` that
/// neither underflows on `|z| = r` nor overflows on `|z| = s`.
fn scaled_remainder<'a>(roots: &'a [C64], scale: f64, h: &'a CatalogFunction) -> impl Analytic + 'a {
    FnAnalytic::new(move |z| roots.iter().fold(h.eval(z), |acc, &zj| acc * ((z - zj) / scale)))
}

fn coeff_decay(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let r = cfg.radii.r.unwrap_or(0.5);
    let dc = disk_constants(r).map_err(|e| Error::Config(e.to_string()))?;
    let h = function_or(cfg, FunctionSpec::id("exp"))?;
    let deg = cfg.degrees.unwrap_or(Degrees { lo: 0, hi: 4 });
    let big_r = cfg.radii.big_r.unwrap_or(1.0);
    let s = cfg.radii.s.unwrap_or(dc.s);
    let trials = cfg.trials.unwrap_or(200);
    let idx: Vec<usize> = (0..trials).collect();
    let results = crate::par_map(&idx, |&i| -> Result<_> {
        let mut rng = trial_rng(cfg.seed, i);
        let n = deg.lo + i % (deg.hi - deg.lo + 1);
        let big_n = cfg.big_n.unwrap_or(0).max(dc.min_zero_count(n));
        let p = random_poly(n, &mut rng);
        let roots = NodeSet::random_in_disk(big_n, r, &mut rng)?;
        let f = synth_witness(&p, &roots, &h);
        let mrf = max_modulus(&f, big_r, 1e-10)?.value;
        let cert = coeff_bound(&dc, n, big_n, big_r, mrf)?;
        let checks = cert.check(&f.taylor(cert.k_last + 2))?;
        let g = scaled_remainder(roots.nodes(), (r * s).sqrt(), &h);
        let decrement = zero_decrement_check(&g, r, s, big_n)?;
        Ok((n, big_n, cert, checks, decrement))
    });
    let mut t = Table::new(
        "witnesses",
        &["trial", "n", "N", "R", "M", "k_first", "k_last", "log2_bound", "max_abs_coeff", "holds"],
    );
    for (i, res) in results.into_iter().enumerate() {
        let Some((n, big_n, cert, checks, decrement)) = rep.capture(format!("trial={i}"), res) else {
            continue;
        };
        for (k, c) in cert.ks().zip(&checks) {
            let ctx = format!("trial={i} n={n} N={big_n} k={k}");
            rep.rows.push(InequalityRow::new(ctx, "taylorbounds", ANCHOR_DECAY, *c, CHECK_SLACK));
        }
        let ctx = format!("trial={i} n={n} N={big_n}");
        rep.rows.push(InequalityRow::new(ctx, "taylorbounds", ANCHOR_DECREMENT, decrement, CHECK_SLACK));
        let max_c = checks.iter().map(|c| c.lhs).fold(0.0, f64::max);
        t.push(vec![
            cell(i),
            cell(n),
            cell(big_n),
            cell(big_r),
            cell(cert.mrf),
            cell(cert.k_first),
            cell(cert.k_last),
            cell(cert.log2_bound),
            cell(max_c),
            cell(checks.iter().all(|c| c.holds)),
        ]);
    }
    let bad = rep.rows.iter().filter(|r| !r.holds).count();
    rep.verdict("coeff-decay", if bad == 0 { "holds".to_string() } else { format!("{bad} violations") });
    rep.tables.push(t);
    Ok(())
}

fn pade_row(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let f = function_or(cfg, rational_spec(&[1.0, 3.0], &[1.0, -2.0]))?;
    let m = cfg.m.unwrap_or(1);
    let deg = cfg.degrees.unwrap_or(Degrees { lo: 1, hi: 10 });
    if deg.hi <= deg.lo {
        return Err(Error::Config("pade-row needs at least two degrees".into()));
    }
    let series = f.taylor(deg.hi + m + 40);
    let Some(stab) = rep.capture("row", pade_row_stabilizes(&series, m, deg.lo, deg.hi)) else {
        rep.verdict("pade-row", "error");
        return Ok(());
    };
    let mut t = Table::new("row", &["n", "m", "vanish_order", "saturated", "cross_difference", "degenerate"]);
    for e in &stab.entries {
        let (order, sat) =
            e.vanish_order.map_or((String::new(), String::new()), |v| (cell(v.order), cell(v.saturated)));
        t.push(vec![
            cell(e.n),
            cell(m),
            order,
            sat,
            e.cross_difference.map(cell).unwrap_or_default(),
            cell(e.degenerate),
        ]);
        if let Some(v) = e.vanish_order {
            let ic = InequalityCheck::new((e.n + m + 1) as f64, v.order as f64, 0.0);
            rep.rows.push(InequalityRow::new(format!("n={} m={m}", e.n), "ratinterp", ANCHOR_PADE, ic, 0.0));
        }
    }
    let verdict = match stab.first_n {
        Some(n0) if stab.stable => format!("stable from n={n0}"),
        _ => "not stable".to_string(),
    };
    rep.verdict("pade-row", verdict);
    rep.tables.push(t);
    Ok(())
}

fn schedule_of(cfg: &ExperimentConfig) -> Result<Schedule> {
    cfg.schedule.as_ref().map_or_else(|| Ok(Schedule::default_rational()), |s| s.build())
}

/// Classify `f` and record the verdict, trace and decay tables under `label`.
fn classify_into(f: &CatalogFunction, cfg: &ExperimentConfig, label: &str, rep: &mut RunReport) -> Result<()> {
    let r = cfg.radii.r.unwrap_or(0.5);
    let schedule = schedule_of(cfg)?;
    let Some(cls) = rep.capture(label, classify_rational_overinterp(f, r, &schedule)) else {
        rep.verdict(label, "error");
        return Ok(());
    };
    rep.verdict(label, cls.verdict.name());
    rep.verdict("ratio-bound", cell(cls.ratio_bound));
    if let Some(tr) = &cls.trace {
        if let Some(a) = tr.alpha_limit {
            rep.verdict("alpha-limit-modulus", cell(a.modulus()));
        }
        if let Some(chk) = tr.limsup_floor {
            rep.rows.push(InequalityRow::new(label, "ratinterp", ANCHOR_LIMSUP, chk, 0.0));
        }
        let mut t = Table::new(
            "trace",
            &["n", "N", "alpha_re", "alpha_im", "alpha_abs", "residual", "relative_residual", "null_dim", "degenerate"],
        );
        for e in &tr.entries {
            let (re, im) =
                e.alpha.and_then(|a| a.finite()).map_or((String::new(), String::new()), |z| (cell(z.re), cell(z.im)));
            t.push(vec![
                cell(e.n),
                cell(e.big_n),
                re,
                im,
                e.alpha.map(|a| cell(a.modulus())).unwrap_or_default(),
                cell(e.residual),
                cell(e.relative_residual),
                cell(e.null_dim),
                cell(e.degenerate),
            ]);
        }
        rep.tables.push(t);
    }
    if !cls.decay.is_empty() {
        let mut t = Table::new("decay", &["n", "N", "log2_coeff", "log2_bound", "holds"]);
        for d in &cls.decay {
            t.push(vec![cell(d.n), cell(d.big_n), cell(d.log2_coeff), cell(d.log2_bound), cell(d.holds)]);
        }
        rep.tables.push(t);
    }
    Ok(())
}

fn classify(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let f = function_or(cfg, FunctionSpec::id("geom"))?;
    classify_into(&f, cfg, "classify-rational", rep)
}

fn circle_select(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let r = cfg.radii.r.unwrap_or(0.5);
    let trials = cfg.trials.unwrap_or(100);
    let idx: Vec<usize> = (0..trials).collect();
    let bw = crate::par_map(&idx, |&i| {
        let mut rng = trial_rng(cfg.seed, i);
        let m = 1 + i % 4;
        (m, bernstein_walsh_check(&random_poly(m, &mut rng), m, r))
    });
    let mut tb = Table::new("bernstein-walsh", &["trial", "m", "lhs", "rhs", "holds"]);
    for (i, (m, res)) in bw.into_iter().enumerate() {
        let ctx = format!("trial={i} m={m}");
        if let Some(c) = rep.capture(ctx.clone(), res) {
            tb.push(vec![cell(i), cell(m), cell(c.lhs), cell(c.rhs), cell(c.holds)]);
            rep.rows.push(InequalityRow::new(ctx, "overconv", ANCHOR_BW, c, 1e-9));
        }
    }
    rep.tables.push(tb);

    let deg = cfg.degrees.unwrap_or(Degrees { lo: 1, hi: 24 });
    let ns: Vec<usize> = (deg.lo.max(1)..=deg.hi).collect();
    let qs: Vec<(ComplexPoly, usize)> = match cfg.family {
        Family::Sweep => {
            let phi = (5f64.sqrt() - 1.0) / 2.0;
            ns.iter()
                .map(|&n| {
                    let t0 = r + (n as f64 * phi).fract() * (1.0 - r) / 2.0;
                    (ComplexPoly::new(vec![C64::new(-t0, 0.0), C64::new(1.0, 0.0)]), 1)
                })
                .collect()
        }
        Family::PadeRow => {
            let f = function_or(cfg, FunctionSpec::id("exp"))?;
            let m = cfg.m.unwrap_or(1);
            let series = f.taylor(deg.hi + m + 40);
            let mut out = Vec::new();
            for &n in &ns {
                match pade(&series, n, m) {
                    Ok(e) => out.push((e.r.q.clone(), m)),
                    Err(e) => return Err(Error::Config(format!("pade({n}, {m}) failed: {e}"))),
                }
            }
            out
        }
    };
    let d: Vec<f64> = ns.iter().map(|&n| (-(n as f64)).exp2()).collect();
    let Some(sel) = rep.capture("select-circle", select_circle(&qs, &d, r)) else {
        rep.verdict("circle-select", "no circle");
        return Ok(());
    };
    let j = sel.t_grid.iter().position(|&t| t == sel.chosen_t).expect("chosen radius is a grid point");
    let mut tm = Table::new("masks", &["n", "h", "measure", "lower_bound", "grid_slack", "contains_t"]);
    for (k, mask) in sel.masks.iter().enumerate() {
        tm.push(vec![
            cell(ns[k]),
            cell(sel.h[k]),
            cell(mask.measure),
            cell(mask.lower_bound),
            cell(mask.grid_slack),
            cell(mask.mask[j]),
        ]);
        rep.rows.push(InequalityRow::new(format!("n={}", ns[k]), "overconv", ANCHOR_FN, mask.check(), 0.0));
    }
    rep.tables.push(tm);
    rep.verdict("circle-select", format!("t={} n0={}", sel.chosen_t, ns[sel.n0]));
    rep.verdict("grid", cell(sel.t_grid.len()));
    Ok(())
}

fn rate_table(rate: &RateReport) -> Table {
    let mut t = Table::new("rates", &["n", "log2_error", "root", "at_floor"]);
    for i in 0..rate.ns.len() {
        t.push(vec![cell(rate.ns[i]), cell(rate.log2_errors[i]), cell(rate.roots[i]), cell(rate.at_floor[i])]);
    }
    t
}

fn overconv(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let f = function_or(cfg, FunctionSpec::id("lacunary-factorial"))?;
    let r = cfg.radii.r.unwrap_or(0.5);
    let t = cfg.radii.t.unwrap_or((1.0 + r) / 2.0);
    let deg = cfg.degrees.unwrap_or(Degrees { lo: 1, hi: 16 });
    let ns: Vec<usize> = (deg.lo..=deg.hi).collect();
    let rate = match cfg.approximants {
        Approximants::TaylorSections => {
            let series = f.taylor(deg.hi + 1);
            if series.has_log_channel() {
                taylor_section_rate(&f, &ns, t)
            } else {
                let rs: Vec<(usize, ComplexPoly)> = ns.iter().map(|&n| (n, series.section(n))).collect();
                overconv_rate(&f, &rs, t)
            }
        }
        Approximants::PadeRow => {
            let m = cfg.m.unwrap_or(1);
            let series = f.taylor(deg.hi + m + 40);
            ns.iter()
                .map(|&n| pade(&series, n, m).map(|e| (n, e.r)))
                .collect::<Result<Vec<_>>>()
                .and_then(|rs| overconv_rate(&f, &rs, t))
        }
    };
    match rep.capture("overconv-rate", rate) {
        Some(rate) => {
            let v = serde_json::to_value(rate.verdict)?;
            rep.verdict("overconv-rate", v.as_str().unwrap_or_default());
            rep.tables.push(rate_table(&rate));
        }
        None => rep.verdict("overconv-rate", "error"),
    }
    if cfg.pair_classify {
        classify_into(&f, cfg, "classify-rational", rep)?;
    }
    Ok(())
}

fn load_points(cfg: &ExperimentConfig, default: PointsSpec) -> Result<PointSet2> {
    let spec = cfg.points.clone().unwrap_or(default);
    match spec {
        PointsSpec::Csv(path) => {
            let file = std::fs::File::open(&path)
                .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
            PointSet2::read_csv(file, cfg.tolerances.dedup)
        }
        PointsSpec::Generate { shape, count } => {
            let mut rng = trial_rng(cfg.seed, usize::MAX);
            match shape {
                Shape::Random => PointSet2::random(count, &mut rng),
                Shape::Parabola | Shape::Line => {
                    let (a, b) = (C64::new(0.3, -0.2), C64::new(0.5, 0.1));
                    let pts = (0..count)
                        .map(|_| {
                            let x = disk_point(&mut rng, 1.0);
                            (x, if shape == Shape::Parabola { x * x } else { a * x + b })
                        })
                        .collect();
                    PointSet2::new(pts, cfg.tolerances.dedup)
                }
            }
        }
    }
}

fn points_table(s: &PointSet2) -> Table {
    let mut t = Table::new("points", &["re_x", "im_x", "re_y", "im_y"]);
    for (x, y) in s.points() {
        t.push(vec![cell(x.re), cell(x.im), cell(y.re), cell(y.im)]);
    }
    t
}

fn curve_fit(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let s = load_points(cfg, PointsSpec::Generate { shape: Shape::Parabola, count: 20 })?;
    let cap = cfg.degrees.map_or(12, |d| d.hi);
    let tol = cfg.tolerances.rank;
    rep.tables.push(points_table(&s));
    let Some(mc) = rep.capture("min-degree-curve", min_degree_curve(&s, tol, cap)) else {
        rep.verdict("curve-fit", "no curve");
        return Ok(());
    };
    rep.verdict("curve-fit", format!("degree={}", mc.degree));
    let chk = InequalityCheck::new(mc.residual, 10.0 * tol, 0.0);
    rep.rows.push(InequalityRow::new("curve", "algcurves", ANCHOR_NULL, chk, 0.0));
    let mut tc = Table::new("curve", &["i", "j", "re", "im"]);
    for dsum in 0..=mc.curve.nominal_degree() {
        for j in 0..=dsum {
            let c = mc.curve.coeff(dsum - j, j);
            tc.push(vec![cell(dsum - j), cell(j), cell(c.re), cell(c.im)]);
        }
    }
    rep.tables.push(tc);

    let trials = cfg.trials.unwrap_or(100);
    let idx: Vec<usize> = (0..trials).collect();
    let checks = crate::par_map(&idx, |&i| {
        let mut rng = trial_rng(cfg.seed, i);
        let x = BivarPoly::random(1 + i % 4, &mut rng);
        bezout_check(&s, &mc.curve, &x, cfg.tolerances.count)
    });
    for (i, c) in checks.into_iter().enumerate() {
        let ctx = format!("trial={i} deg_x={}", 1 + i % 4);
        if let Some(c) = rep.capture(ctx.clone(), c) {
            let ic = InequalityCheck::new(c.count as f64, c.bound as f64, 0.0);
            rep.rows.push(InequalityRow::new(ctx, "algcurves", ANCHOR_BEZOUT, ic, 0.0));
        }
    }
    Ok(())
}

fn alpha(cfg: &ExperimentConfig, rep: &mut RunReport) -> Result<()> {
    let s = load_points(cfg, PointsSpec::Generate { shape: Shape::Random, count: 100 })?;
    rep.tables.push(points_table(&s));
    let opts = AlphaOptions {
        trials: cfg.trials.unwrap_or(50),
        degrees: cfg.degrees.map(|d| (d.lo, d.hi)),
        seed: cfg.seed,
        tol: cfg.tolerances.count,
    };
    let Some(a) = rep.capture("alpha-exponent", alpha_exponent(&s, &opts)) else {
        rep.verdict("alpha-exponent", "error");
        return Ok(());
    };
    let class = match a.class {
        AlphaClass::Finite => "Finite".to_string(),
        AlphaClass::OnCurve { degree } => format!("OnCurve(degree={degree})"),
        AlphaClass::AlphaAtLeast2 => "AlphaAtLeast2".to_string(),
        AlphaClass::Inconclusive => "Inconclusive".to_string(),
    };
    rep.verdict("alpha-exponent", class);
    rep.verdict("alpha-hat", cell(a.alpha_hat));
    rep.verdict("A-hat", cell(a.a_hat));
    if let Some(g) = a.gadget_count {
        let need = s.len().saturating_sub(1);
        rep.rows.push(InequalityRow::new(
            "gadget",
            "algcurves",
            ANCHOR_GADGET,
            InequalityCheck::new(need as f64, g as f64, 0.0),
            0.0,
        ));
    }
    let mut t = Table::new("alpha", &["degree", "max_count", "random_max", "subset_max", "line_union_max"]);
    for row in &a.rows {
        t.push(vec![
            cell(row.degree),
            cell(row.max_count),
            cell(row.random_max),
            cell(row.subset_max),
            cell(row.line_union_max),
        ]);
    }
    rep.tables.push(t);
    Ok(())
}
