//! Browser front end for `monogamy-core`.
//!
//! Each exported function returns a JSON string that `www/index.html` draws
//! onto a canvas. The plain-Rust halves ([`curves`], [`lemma_grid`],
//! [`explore`]) carry the logic so they can be tested natively.

use std::f64::consts::FRAC_PI_2;

use monogamy_core::bounds::{check_scalar_lemma, ScalarLemma};
use monogamy_core::{b_of, g_of, Complex64, Error, MeasureKind, MonogamyParams, PairProfile, Result, StateVector};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curves {
    pub concurrence: Vec<f64>,
    pub bures: Vec<f64>,
    pub geometric: Vec<f64>,
}

/// `B(C)` and `G(C)` at `points` evenly spaced concurrences in `[0, 1]`.
pub fn curves(points: usize) -> Result<Curves> {
    if points < 2 {
        return Err(Error::Param("need at least two curve points".into()));
    }
    let concurrence: Vec<f64> = (0..points).map(|i| i as f64 / (points - 1) as f64).collect();
    let bures = concurrence.iter().map(|&c| b_of(c)).collect::<Result<_>>()?;
    let geometric = concurrence.iter().map(|&c| g_of(c)).collect::<Result<_>>()?;
    Ok(Curves { concurrence, bures, geometric })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaGrid {
    pub inequality: ScalarLemma,
    pub eta: f64,
    pub resolution: usize,
    /// `values[j][i]` is the residual at `(x_i, y_j)`; `None` outside the disk.
    pub values: Vec<Vec<Option<f64>>>,
    pub min_residual: f64,
    pub argmin: [f64; 2],
}

/// Residual of a quarter-disk inequality on a `resolution²` lattice over `[0, 1]²`.
pub fn lemma_grid(name: &str, eta: f64, resolution: usize) -> Result<LemmaGrid> {
    let which: ScalarLemma = name.parse()?;
    if !ScalarLemma::QUARTER_DISK.contains(&which) {
        return Err(Error::Param(format!("{which} is not defined on the quarter disk")));
    }
    if !(2..=400).contains(&resolution) {
        return Err(Error::Param(format!("resolution {resolution} must be in 2..=400")));
    }
    let step = 1.0 / (resolution - 1) as f64;
    let mut grid = LemmaGrid {
        inequality: which,
        eta,
        resolution,
        values: Vec::with_capacity(resolution),
        min_residual: f64::INFINITY,
        argmin: [0.0, 0.0],
    };
    for j in 0..resolution {
        let y = j as f64 * step;
        let mut row = Vec::with_capacity(resolution);
        for i in 0..resolution {
            let x = i as f64 * step;
            if x * x + y * y > 1.0 {
                row.push(None);
                continue;
            }
            let r = check_scalar_lemma(which, &[x, y, eta])?;
            if r < grid.min_residual {
                grid.min_residual = r;
                grid.argmin = [x, y];
            }
            row.push(Some(r));
        }
        grid.values.push(row);
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Side {
    pub rhs: f64,
    pub residual: f64,
    pub conditions_met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exploration {
    pub amplitudes: Vec<[f64; 2]>,
    pub cut: f64,
    pub pairs: Vec<f64>,
    pub lhs: f64,
    pub power: Side,
    pub sorted_power: Side,
    pub split_power: Side,
}

/// Four-qubit state `cos θ |W_w⟩ + sin θ |GHZ⟩` with `θ = mix · π/2`, where
/// `|W_w⟩ = Σ wᵢ |0…1ᵢ…0⟩` (normalized). Reports the cut and pair values of
/// `kind` and the three power-type bounds.
pub fn explore(weights: &[f64], mix: f64, kind: MeasureKind, eta: f64, k: f64, k_prime: f64) -> Result<Exploration> {
    if weights.len() != 4 || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Param("need four nonnegative weights".into()));
    }
    if !(0.0..=1.0).contains(&mix) {
        return Err(Error::Param(format!("mix {mix} must be in [0, 1]")));
    }
    if kind == MeasureKind::Concurrence {
        return Err(Error::Param("power bounds need bures or geometric".into()));
    }
    let w_norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    let theta = mix * FRAC_PI_2;
    let (cw, cg) = if w_norm > 0.0 { (theta.cos() / w_norm, theta.sin()) } else { (0.0, 1.0) };
    let mut amps = vec![Complex64::new(0.0, 0.0); 16];
    for (q, w) in weights.iter().enumerate() {
        amps[1 << (3 - q)] += cw * w;
    }
    amps[0] += cg * std::f64::consts::FRAC_1_SQRT_2;
    amps[15] += cg * std::f64::consts::FRAC_1_SQRT_2;
    let psi = StateVector::normalized(amps)?;

    let profile = PairProfile::from_state(&psi)?;
    let side =
        |r: monogamy_core::MonogamyReport| Side { rhs: r.rhs, residual: r.residual, conditions_met: r.conditions_met };
    let power = profile.power(kind, eta)?;
    let lhs = power.lhs;
    Ok(Exploration {
        amplitudes: psi.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        cut: profile.cut_measure(kind)?,
        pairs: profile.pair_measures(kind)?,
        lhs,
        power: side(power),
        sorted_power: side(profile.sorted_power(kind, eta)?),
        split_power: side(profile.split_power(kind, MonogamyParams { eta, k, k_prime, m: 1 })?),
    })
}

fn to_js<T: Serialize>(value: Result<T>) -> std::result::Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = curves)]
pub fn curves_js(points: usize) -> std::result::Result<String, JsError> {
    to_js(curves(points))
}

#[wasm_bindgen(js_name = lemmaGrid)]
pub fn lemma_grid_js(name: &str, eta: f64, resolution: usize) -> std::result::Result<String, JsError> {
    to_js(lemma_grid(name, eta, resolution))
}

#[wasm_bindgen(js_name = explore)]
pub fn explore_js(
    weights: Vec<f64>,
    mix: f64,
    kind: &str,
    eta: f64,
    k: f64,
    k_prime: f64,
) -> std::result::Result<String, JsError> {
    let kind = kind.parse::<MeasureKind>().map_err(|e| JsError::new(&e.to_string()))?;
    to_js(explore(&weights, mix, kind, eta, k, k_prime))
}

/// Names accepted by `lemmaGrid`.
#[wasm_bindgen(js_name = lemmaNames)]
pub fn lemma_names() -> Vec<String> {
    ScalarLemma::QUARTER_DISK.iter().map(|l| l.as_str().to_owned()).collect()
}
