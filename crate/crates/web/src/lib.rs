//! Browser bindings. Every export takes plain numbers or text and returns
//! a JSON string, either `{"ok": ...}` or `{"error": "..."}`, so the page
//! needs no generated TypeScript types.

use std::str::FromStr;

use hlverify::gpoly::GPolySpec;
use hlverify::irreducibility::{full_exclusion_scan, newton_polygon, Valuation};
use hlverify::smoothness::{evaluate, FindingVerdict, ProgressionWindow};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest number of windows one scan request may evaluate.
pub const MAX_SCAN_WINDOWS: u64 = 20_000;

#[derive(Debug, Serialize)]
pub struct PolygonView {
    pub prime: u64,
    /// (index, valuation) for every nonzero coefficient.
    pub points: Vec<(usize, u64)>,
    pub edges: Vec<EdgeView>,
}

#[derive(Debug, Serialize)]
pub struct EdgeView {
    pub from: (usize, u64),
    pub to: (usize, u64),
    pub slope: String,
}

fn parse_coeffs(text: &str) -> Result<Vec<BigInt>, String> {
    let coeffs = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| BigInt::from_str(t).map_err(|_| format!("'{t}' is not an integer")))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() < 2 {
        return Err("enter at least two coefficients".into());
    }
    Ok(coeffs)
}

/// Newton polygon of a polynomial given as comma or space separated
/// coefficients, constant term first.
pub fn polygon(coeffs: &str, p: u64) -> Result<PolygonView, String> {
    if !hlverify::arith::is_prime_u64(p) {
        return Err(format!("{p} is not prime"));
    }
    let np = newton_polygon(&parse_coeffs(coeffs)?, p).map_err(|e| e.to_string())?;
    let points = np
        .points
        .iter()
        .filter_map(|pt| match pt.valuation {
            Valuation::Finite(v) => Some((pt.index, v)),
            Valuation::Infinite => None,
        })
        .collect();
    let edges = np.edges.iter().map(|e| EdgeView { from: e.from, to: e.to, slope: e.slope.to_string() }).collect();
    Ok(PolygonView { prime: p, points, edges })
}

#[derive(Debug, Serialize)]
pub struct ScanRow {
    pub m: u64,
    pub gpf: u64,
    pub threshold: String,
    pub exception: bool,
}

/// P(Δ(m, d, k)) against its threshold for every admissible m in
/// [m_from, m_to] with m > dk.
pub fn gpf_scan(d: u64, k: u64, m_from: u64, m_to: u64) -> Result<Vec<ScanRow>, String> {
    if d != 2 && d != 3 {
        return Err("d must be 2 or 3".into());
    }
    if k < 2 {
        return Err("k must be at least 2".into());
    }
    let lo = m_from.max(d * k + 1);
    if m_to < lo {
        return Ok(Vec::new());
    }
    if m_to - lo >= MAX_SCAN_WINDOWS {
        return Err(format!("at most {MAX_SCAN_WINDOWS} values of m per scan"));
    }
    (lo..=m_to)
        .filter(|m| m % d != 0)
        .map(|m| {
            let w = ProgressionWindow::new(m, d, k).map_err(|e| e.to_string())?;
            let f = evaluate(w);
            Ok(ScanRow { m, gpf: f.gpf, threshold: f.threshold, exception: f.verdict == FindingVerdict::Exception })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ExclusionRow {
    pub k: u64,
    pub status: String,
    pub witness: Option<u64>,
    pub reason: String,
}

/// Factor-degree exclusion for the polynomial with all a_j = 1.
pub fn exclusion(n: u64, u: u64, alpha: u64, d: u64) -> Result<Vec<ExclusionRow>, String> {
    if n > 2000 {
        return Err("n is limited to 2000 here".into());
    }
    let spec = GPolySpec::unit(n, u, alpha, d).map_err(|e| e.to_string())?;
    let rows = full_exclusion_scan(&spec).map_err(|e| e.to_string())?;
    Ok(rows
        .into_iter()
        .map(|r| ExclusionRow { k: r.k, status: r.status.to_string(), witness: r.witness_prime, reason: r.reason })
        .collect())
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen]
pub fn newton_polygon_json(coeffs: &str, p: u32) -> String {
    respond(polygon(coeffs, p as u64))
}

#[wasm_bindgen]
pub fn gpf_scan_json(d: u32, k: u32, m_from: u32, m_to: u32) -> String {
    respond(gpf_scan(d as u64, k as u64, m_from as u64, m_to as u64))
}

#[wasm_bindgen]
pub fn exclusion_scan_json(n: u32, u: u32, alpha: u32, d: u32) -> String {
    respond(exclusion(n as u64, u as u64, alpha as u64, d as u64))
}
