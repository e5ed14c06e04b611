//! WebAssembly bindings for the demo page in `www/`. Each export returns a
//! JSON string; the plain functions underneath are what the tests call.

use std::sync::Arc;

use serde_json::{json, Value};
use stronggenus::draw::{self, Highlight};
use stronggenus::embedding::Side;
use stronggenus::planarity::{self, Planarity};
use stronggenus::search::{self, SearchConfig, SearchValue};
use stronggenus::{bounds, families, Embedding, Graph};
use wasm_bindgen::prelude::*;

/// Graphs larger than this are refused; the search runs on the UI thread.
pub const MAX_VERTICES: usize = 40;

fn value_json(v: SearchValue) -> Value {
    match v {
        SearchValue::Genus(g) => json!(g),
        SearchValue::AboveCap => json!("above_cap"),
        SearchValue::Infinite => json!("infinite"),
        SearchValue::Unknown => json!("unknown"),
    }
}

fn face_at(e: &Embedding, v: usize) -> usize {
    e.faces().face_of(e.graph().darts_at(v)[0], Side::Plus)
}

/// The plane part of `hex_cylinder(rings)` with its nested rings drawn and
/// the distance bound.
pub fn hex_instance(rings: usize) -> Result<Value, String> {
    if rings == 0 || 6 * rings + 4 > MAX_VERTICES {
        return Err(format!("rings must be between 1 and {}", (MAX_VERTICES - 4) / 6));
    }
    let inst = families::hex_cylinder(rings).map_err(|e| e.to_string())?;
    let e = &inst.reference_planar;
    let q = e.facial_distance(inst.x, inst.y).map_err(|e| e.to_string())?;
    let cert = planarity::prop1_certificate(e, inst.x, inst.y).map_err(|e| e.to_string())?;
    let highlight = Highlight { cycles: cert.cycles.clone(), terminals: vec![inst.x, inst.y] };
    let svg = draw::svg(e, face_at(e, inst.y), &highlight, 480);
    Ok(json!({
        "vertices": inst.graph.vertex_count(),
        "edges": inst.graph.edge_count(),
        "x": inst.x + 1,
        "y": inst.y + 1,
        "facial_distance": q,
        "thm1_bound": bounds::thm1_bound(q as u64).map_err(|e| e.to_string())?,
        "genus": 1,
        "toroidal_chi": inst.reference_toroidal.as_ref().map(|t| t.euler_characteristic()),
        "rings": cert.cycles.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "svg": svg,
    }))
}

/// Strong-genus search on `hex_cylinder(rings)` up to genus `cap`.
pub fn hex_strong_search(rings: usize, cap: u32) -> Result<Value, String> {
    if rings == 0 || 6 * rings + 4 > MAX_VERTICES {
        return Err(format!("rings must be between 1 and {}", (MAX_VERTICES - 4) / 6));
    }
    let inst = families::hex_cylinder(rings).map_err(|e| e.to_string())?;
    let r = search::strong_genus(&inst.graph, &SearchConfig { cap: Some(cap), ..SearchConfig::default() }).map_err(|e| e.to_string())?;
    Ok(json!({
        "rings": rings,
        "cap": cap,
        "value": value_json(r.value),
        "lower_bound": r.lower_bound,
        "exhaustive": r.exhaustive,
        "nodes": r.nodes_explored,
        "genus": 1,
    }))
}

/// Planarity, minimum genus and strong genus of a graph given in the
/// `p n m` / `e u v` text format, with a drawing when it is planar.
pub fn analyze(text: &str, cap: u32) -> Result<Value, String> {
    let g = Arc::new(Graph::parse(text).map_err(|e| e.to_string())?);
    if g.vertex_count() > MAX_VERTICES {
        return Err(format!("at most {MAX_VERTICES} vertices"));
    }
    if !g.is_connected() {
        return Err("graph must be connected".into());
    }
    let cfg = SearchConfig { cap: Some(cap), ..SearchConfig::default() };
    let mg = search::min_genus(&g, &cfg).map_err(|e| e.to_string())?;
    let sg = search::strong_genus(&g, &cfg).map_err(|e| e.to_string())?;
    let plane = planarity::planar_embedding(&g).map_err(|e| e.to_string())?;
    let svg = match &plane {
        Planarity::Planar(e) if g.edge_count() > 0 => Some(draw::svg(e, 0, &Highlight::default(), 480)),
        _ => None,
    };
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "planar": plane.is_planar(),
        "min_genus": value_json(mg.value),
        "strong_genus": value_json(sg.value),
        "strong_lower_bound": sg.lower_bound,
        "svg": svg,
    }))
}

fn export(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = hexInstance)]
pub fn hex_instance_js(rings: usize) -> Result<String, JsError> {
    export(hex_instance(rings))
}

#[wasm_bindgen(js_name = hexStrongSearch)]
pub fn hex_strong_search_js(rings: usize, cap: u32) -> Result<String, JsError> {
    export(hex_strong_search(rings, cap))
}

#[wasm_bindgen(js_name = analyzeGraph)]
pub fn analyze_js(text: &str, cap: u32) -> Result<String, JsError> {
    export(analyze(text, cap))
}
