//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and run natively as well.

use cdim_core::apartment::{Budget, Grid};
use cdim_core::distance::{apartment_ball, wall_distance, Metric};
use cdim_core::growth::ball_sum;
use cdim_core::point::fmt_rational;
use cdim_core::{ApartmentPoint, RootDatum, RootSystemType};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Plots and balls stay small enough for an interactive page.
const MAX_RADIUS: u32 = 8;

fn datum(ty: &str) -> Result<RootDatum, String> {
    let t: RootSystemType = ty.parse().map_err(|e: cdim_core::Error| e.to_string())?;
    Ok(RootDatum::build(t))
}

fn check_radius(radius: u32) -> Result<(), String> {
    if radius > MAX_RADIUS {
        Err(format!("radius is limited to {MAX_RADIUS} in the browser"))
    } else {
        Ok(())
    }
}

/// Euclidean basis vectors for the fundamental coweights of a rank-2 type:
/// their Gram matrix is the inverse of the simple-root Gram matrix.
fn plane_basis(d: &RootDatum) -> [[f64; 2]; 2] {
    let g = d.gram_matrix();
    let det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) as f64;
    let (a, b, c) = (g[1][1] as f64 / det, -g[0][1] as f64 / det, g[0][0] as f64 / det);
    let e1 = [a.sqrt(), 0.0];
    let e2 = [b / a.sqrt(), (c - b * b / a).sqrt()];
    [e1, e2]
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn info_json(ty: &str) -> Result<String, String> {
    let d = datum(ty)?;
    serde_json::to_string(&d.summary()).map_err(|e| e.to_string())
}

/// Vertices of `B(o, radius)` with plane coordinates and types, plus the
/// edges `d = 1` among them. Rank 2 only.
pub fn apartment_plot_json(ty: &str, radius: u32) -> Result<String, String> {
    check_radius(radius)?;
    let d = datum(ty)?;
    if d.rank() != 2 {
        return Err("plots are available for rank-2 types only".into());
    }
    let o = ApartmentPoint::origin(2);
    let ball = apartment_ball(&d, &o, radius, &Budget::default()).map_err(|e| e.to_string())?;
    let [e1, e2] = plane_basis(&d);
    let grid = Grid::new(&d);
    let metric = Metric::new(grid.clone());
    let scaled: Vec<Vec<i64>> = ball.points().iter().map(|p| grid.to_scaled(p).expect("vertex")).collect();
    let vertices: Vec<Value> = ball
        .points()
        .iter()
        .zip(ball.types())
        .zip(&scaled)
        .map(|((p, &kind), g)| {
            let (t1, t2) = (to_f64(&p.coords()[0]), to_f64(&p.coords()[1]));
            json!({
                "t": p.to_strings(),
                "xy": [t1 * e1[0] + t2 * e2[0], t1 * e1[1] + t2 * e2[1]],
                "type": kind,
                "special": grid.is_special(g),
                "distance_from_origin": metric.distance(&[0, 0], g),
            })
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..scaled.len() {
        for j in i + 1..scaled.len() {
            if metric.distance(&scaled[i], &scaled[j]) == 1 {
                edges.push([i, j]);
            }
        }
    }
    Ok(json!({"type": ty.to_uppercase(), "radius": radius, "vertices": vertices, "edges": edges}).to_string())
}

/// Both distances between two vertices given as fraction strings.
pub fn distance_json(ty: &str, x: &str, y: &str) -> Result<String, String> {
    let d = datum(ty)?;
    let px = ApartmentPoint::parse(x).map_err(|e| e.to_string())?;
    let py = ApartmentPoint::parse(y).map_err(|e| e.to_string())?;
    let rep = wall_distance(&d, &px, &py).map_err(|e| e.to_string())?;
    let mut metric = Metric::new(Grid::new(&d));
    let (gx, gy) = (metric.grid().to_scaled(&px).expect("vertex"), metric.grid().to_scaled(&py).expect("vertex"));
    let ds = metric.simplicial_distance(&gx, &gy, 4 * rep.d + 8).map_err(|e| e.to_string())?;
    Ok(json!({
        "d": rep.d,
        "d_simplicial": ds,
        "witness_root": rep.witness_root.map(|r| r.to_string()),
        "wall_count": rep.wall_count,
    })
    .to_string())
}

/// `S(r)` and `γ·S(r)` with their values at `q`.
pub fn ball_sum_json(ty: &str, radius: u32, q: u32) -> Result<String, String> {
    check_radius(radius)?;
    if q < 2 {
        return Err("q must be at least 2".into());
    }
    let d = datum(ty)?;
    let rep = ball_sum(&d, radius, &Budget::with_candidates(5_000_000)).map_err(|e| e.to_string())?;
    let q0 = BigRational::from_integer(q.into());
    Ok(json!({
        "lower_poly": rep.lower_poly.to_string(),
        "upper_poly": rep.upper_poly.to_string(),
        "lower_value": fmt_rational(&rep.lower_poly.evaluate(&q0)),
        "upper_value": fmt_rational(&rep.upper_poly.evaluate(&q0)),
        "vertex_count_chamber": rep.vertex_count_chamber,
        "max_two_rho": fmt_rational(&rep.max_two_rho),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn info(ty: &str) -> Result<String, JsValue> {
    info_json(ty).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn apartment_plot(ty: &str, radius: u32) -> Result<String, JsValue> {
    apartment_plot_json(ty, radius).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn distance(ty: &str, x: &str, y: &str) -> Result<String, JsValue> {
    distance_json(ty, x, y).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = ballSum)]
pub fn ball_sum_js(ty: &str, radius: u32, q: u32) -> Result<String, JsValue> {
    ball_sum_json(ty, radius, q).map_err(|e| JsValue::from_str(&e))
}
