//! Browser bindings: JSON string in, JSON string out.

use num_complex::Complex64;
use overinterp::algcurves::{min_degree_curve, PointSet2, RANK_TOL};
use overinterp::harness::{catalog_lookup, Coef, FunctionSpec};
use overinterp::polyinterp::{verify_remainder, NodeSet};
use overinterp::ratinterp::{classify_rational_overinterp, Schedule};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

#[derive(Deserialize)]
struct FunctionIn {
    id: String,
    #[serde(default)]
    p: Option<Vec<Coef>>,
    #[serde(default)]
    q: Option<Vec<Coef>>,
    #[serde(default)]
    seed: Option<u64>,
}

impl FunctionIn {
    fn spec(self) -> FunctionSpec {
        FunctionSpec { p: self.p, q: self.q, seed: self.seed, ..FunctionSpec::id(&self.id) }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(input: &str) -> Result<T, String> {
    serde_json::from_str(input).map_err(|e| format!("bad input: {e}"))
}

fn emit<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[derive(Deserialize)]
struct ClassifyIn {
    function: FunctionIn,
    r: f64,
    #[serde(default = "default_hi")]
    max_degree: usize,
}

fn default_hi() -> usize {
    12
}

#[derive(Serialize)]
struct TracePoint {
    n: usize,
    big_n: usize,
    alpha: Option<[f64; 2]>,
    relative_residual: f64,
}

#[derive(Serialize)]
struct ClassifyOut {
    verdict: &'static str,
    alpha_limit: Option<[f64; 2]>,
    trace: Vec<TracePoint>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn classify_impl(input: &str) -> Result<ClassifyOut, String> {
    let inp: ClassifyIn = parse(input)?;
    let f = catalog_lookup(&inp.function.spec()).map_err(|e| e.to_string())?;
    let schedule = Schedule::squares(2, inp.max_degree.clamp(3, 16)).map_err(|e| e.to_string())?;
    let cls = classify_rational_overinterp(&f, inp.r, &schedule).map_err(|e| e.to_string())?;
    let (alpha_limit, trace) = match &cls.trace {
        Some(t) => (
            t.alpha_limit.and_then(|a| a.finite()).map(pair),
            t.entries
                .iter()
                .map(|e| TracePoint {
                    n: e.n,
                    big_n: e.big_n,
                    alpha: e.alpha.and_then(|a| a.finite()).map(pair),
                    relative_residual: e.relative_residual,
                })
                .collect(),
        ),
        None => (None, Vec::new()),
    };
    Ok(ClassifyOut { verdict: cls.verdict.name(), alpha_limit, trace })
}

/// Classify a catalog function: `{"function": {"id": "geom"}, "r": 0.5}`.
#[wasm_bindgen]
pub fn classify(input: &str) -> String {
    emit(classify_impl(input))
}

#[derive(Deserialize)]
struct RemainderIn {
    function: FunctionIn,
    n: usize,
    r: f64,
    s: f64,
    #[serde(rename = "R")]
    big_r: f64,
    #[serde(default)]
    seed: u64,
}

#[derive(Serialize)]
struct RemainderOut {
    lhs: f64,
    rhs: f64,
    holds: bool,
    nodes: Vec<[f64; 2]>,
}

fn remainder_impl(input: &str) -> Result<RemainderOut, String> {
    use rand_chacha::rand_core::SeedableRng;
    let inp: RemainderIn = parse(input)?;
    if inp.n > 40 {
        return Err("degree above 40 is not supported here".into());
    }
    let f = catalog_lookup(&inp.function.spec()).map_err(|e| e.to_string())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(inp.seed);
    let nodes = NodeSet::random_in_disk(inp.n + 1, inp.r, &mut rng).map_err(|e| e.to_string())?;
    let c = verify_remainder(&f, &nodes, inp.s, inp.big_r).map_err(|e| e.to_string())?;
    Ok(RemainderOut {
        lhs: c.lhs,
        rhs: c.rhs,
        holds: c.holds,
        nodes: nodes.nodes().iter().copied().map(pair).collect(),
    })
}

/// Interpolate at random nodes and compare the error with the remainder bound:
/// `{"function": {"id": "exp"}, "n": 8, "r": 0.5, "s": 0.8, "R": 2, "seed": 1}`.
#[wasm_bindgen]
pub fn remainder_check(input: &str) -> String {
    emit(remainder_impl(input))
}

#[derive(Deserialize)]
struct CurveIn {
    /// Rows `[re_x, im_x, re_y, im_y]`.
    points: Vec<[f64; 4]>,
    #[serde(default = "default_cap")]
    cap: usize,
}

fn default_cap() -> usize {
    8
}

#[derive(Serialize)]
struct CurveOut {
    degree: usize,
    /// `(i, j, re, im)` for the coefficient of `x^i y^j`.
    terms: Vec<(usize, usize, f64, f64)>,
    residual: f64,
}

fn curve_impl(input: &str) -> Result<CurveOut, String> {
    let inp: CurveIn = parse(input)?;
    let pts = inp.points.iter().map(|p| (Complex64::new(p[0], p[1]), Complex64::new(p[2], p[3]))).collect();
    let s = PointSet2::new(pts, 1e-12).map_err(|e| e.to_string())?;
    let mc = min_degree_curve(&s, RANK_TOL, inp.cap.min(12)).map_err(|e| e.to_string())?;
    let mut terms = Vec::new();
    for d in 0..=mc.degree {
        for j in 0..=d {
            let c = mc.curve.coeff(d - j, j);
            if c.norm() > 1e-10 {
                terms.push((d - j, j, c.re, c.im));
            }
        }
    }
    Ok(CurveOut { degree: mc.degree, terms, residual: mc.residual })
}

/// Minimal-degree curve through points: `{"points": [[0,0,0,0], [1,0,1,0]]}`.
#[wasm_bindgen]
pub fn curve_through(input: &str) -> String {
    emit(curve_impl(input))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_geom() {
        let out = classify(r#"{"function": {"id": "geom"}, "r": 0.5}"#);
        assert!(out.contains("\"verdict\":\"RationalQ1\""), "{out}");
    }

    #[test]
    fn remainder_holds() {
        let out = remainder_check(r#"{"function": {"id": "exp"}, "n": 6, "r": 0.5, "s": 0.8, "R": 2.0, "seed": 3}"#);
        assert!(out.contains("\"holds\":true"), "{out}");
    }

    #[test]
    fn curve_line() {
        let out = curve_through(r#"{"points": [[0,0,1,0],[1,0,3,0],[2,0,5,0],[-1,0,-1,0]]}"#);
        assert!(out.contains("\"degree\":1"), "{out}");
    }

    #[test]
    fn errors_are_json() {
        assert!(classify("{").starts_with("{\"error\""));
        assert!(classify(r#"{"function": {"id": "nope"}, "r": 0.5}"#).contains("unknown function id"));
    }
}
