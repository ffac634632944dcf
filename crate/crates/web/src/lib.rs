//! Browser bindings. Each exported function wraps a plain Rust function that
//! returns `Result<String, String>`, so the logic is testable natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use lindisc_core::{
    lindisc_at, parse_formula, round_gadget, verify_gap, GapConfig, Mode, RMatrix, RVector, Rational, Sign,
};

/// Largest grid side the landscape view will evaluate.
pub const MAX_RESOLUTION: u32 = 120;

#[derive(Serialize)]
struct GadgetView {
    z: [u8; 3],
    case: String,
    residual: Vec<String>,
    norm: String,
    sum_dev: String,
    bounds_ok: bool,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("`{s}`: {e}"))
}

/// Gadget rounding of `(u1, u2, u3)` with sign `±1`, as JSON with exact fields.
pub fn gadget_json(u1: &str, u2: &str, u3: &str, sign: i32) -> Result<String, String> {
    let u = [rational(u1)?, rational(u2)?, rational(u3)?];
    let sign = Sign::from_i64(sign as i64).map_err(|e| e.to_string())?;
    let g = round_gadget(&u, sign).map_err(|e| e.to_string())?;
    let view = GadgetView {
        z: g.z,
        case: g.case.to_string(),
        residual: g.residual.iter().map(|r| r.to_string()).collect(),
        norm: g.g_norm.to_string(),
        sum_dev: g.sum_dev.to_string(),
        bounds_ok: g.satisfies_bounds(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Landscape {
    resolution: u32,
    /// `values[i][j] = lindisc(A, (i/r, j/r))` as floats for colouring.
    values: Vec<Vec<f64>>,
    max: String,
    max_at: [String; 2],
}

/// `lindisc(A, w)` over the grid `{0, 1/r, …, 1}²` for a two-column matrix.
pub fn landscape_json(matrix_text: &str, resolution: u32) -> Result<String, String> {
    let a = RMatrix::parse(matrix_text).map_err(|e| e.to_string())?;
    if a.cols() != 2 {
        return Err(format!("the landscape needs exactly 2 columns, got {}", a.cols()));
    }
    if resolution == 0 || resolution > MAX_RESOLUTION {
        return Err(format!("resolution must be in 1..={MAX_RESOLUTION}"));
    }
    let r = resolution as i64;
    let mut best: Option<(Rational, [String; 2])> = None;
    let mut values = Vec::with_capacity(resolution as usize + 1);
    for i in 0..=r {
        let mut row = Vec::with_capacity(resolution as usize + 1);
        for j in 0..=r {
            let w = RVector::new(vec![Rational::frac(i, r), Rational::frac(j, r)]);
            let v = lindisc_at(&a, &w).map_err(|e| e.to_string())?.value;
            row.push(v.to_f64());
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, [w[0].to_string(), w[1].to_string()]));
            }
        }
        values.push(row);
    }
    let (max, max_at) = best.expect("grid is non-empty");
    serde_json::to_string(&Landscape { resolution, values, max: max.to_string(), max_at })
        .map_err(|e| e.to_string())
}

/// Runs the gap check on a DIMACS formula and returns the text report.
pub fn gap_report(formula_text: &str, mode: &str, samples: u32, seed: u64) -> Result<String, String> {
    let qf = parse_formula(formula_text).map_err(|e| e.to_string())?;
    let mode: Mode = mode.parse()?;
    let cfg = GapConfig { mode, samples: samples as usize, seed, ..GapConfig::default() };
    let report = verify_gap("input", &qf, &cfg).map_err(|e| e.to_string())?;
    Ok(report.render())
}

#[wasm_bindgen]
pub fn gadget(u1: &str, u2: &str, u3: &str, sign: i32) -> Result<String, JsValue> {
    gadget_json(u1, u2, u3, sign).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn landscape(matrix_text: &str, resolution: u32) -> Result<String, JsValue> {
    landscape_json(matrix_text, resolution).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn gap(formula_text: &str, mode: &str, samples: u32, seed: u32) -> Result<String, JsValue> {
    gap_report(formula_text, mode, samples, seed as u64).map_err(|e| JsValue::from_str(&e))
}
