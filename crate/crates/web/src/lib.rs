//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes the graph as text (a family spec such as `cycle:7`,
//! a graph6 string, or an edge list like `0-1,1-2`) and a sequence such as
//! `1,2,2,const`, and returns a JSON string. Errors come back as a thrown
//! string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use spack_core::critical::{double_coloring, is_critical_with};
use spack_core::families::FamilySpec;
use spack_core::graph::{parse_edge_list, parse_graph6, Edge, Graph};
use spack_core::solver::{chi_s_with, SolverConfig};
use spack_core::PackingSequence;

/// Keeps a single call responsive in the browser.
const NODE_BUDGET: u64 = 2_000_000;

fn config() -> SolverConfig {
    SolverConfig { node_budget: NODE_BUDGET, time_limit: None }
}

struct Input {
    graph: Graph,
    family: Option<FamilySpec>,
}

fn parse_graph(text: &str) -> Result<Input, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty graph".into());
    }
    if let Ok(family) = text.parse::<FamilySpec>() {
        let graph = family.generate().map_err(|e| e.to_string())?;
        return Ok(Input { graph, family: Some(family) });
    }
    if !text.contains(char::is_whitespace) && !text.contains(['-', ',']) {
        return parse_graph6(text).map(|graph| Input { graph, family: None }).map_err(|e| e.to_string());
    }
    let lines: String = text.split([',', ';', '\n']).map(|p| p.trim().replace('-', " ")).collect::<Vec<_>>().join("\n");
    parse_edge_list(&lines).map(|graph| Input { graph, family: None }).map_err(|e| e.to_string())
}

fn parse_seq(text: &str) -> Result<PackingSequence, String> {
    text.trim().parse().map_err(|e: spack_core::sequence::SequenceError| e.to_string())
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>())
}

/// `{"n", "edges", "chi", "witness"}`.
pub fn chi_json(graph: &str, seq: &str) -> Result<String, String> {
    let input = parse_graph(graph)?;
    let seq = parse_seq(seq)?;
    let r = chi_s_with(&input.graph, &seq, &config()).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": input.graph.n(),
        "edges": edges_json(&input.graph),
        "chi": r.value,
        "witness": r.witness,
    })
    .to_string())
}

/// `{"n", "edges", "chi", "per_edge", "per_vertex", "is_critical", "is_vertex_critical"}`.
pub fn criticality_json(graph: &str, seq: &str) -> Result<String, String> {
    let input = parse_graph(graph)?;
    let seq = parse_seq(seq)?;
    let r = is_critical_with(&input.graph, &seq, &config()).map_err(|e| e.to_string())?;
    let mut v = serde_json::to_value(&r).expect("serializable");
    v["n"] = json!(input.graph.n());
    v["edges"] = edges_json(&input.graph);
    Ok(v.to_string())
}

/// Colors `G - e` optimally and lifts the coloring to `G`. A negative `u`
/// selects the family's distinguished edge.
pub fn double_json(graph: &str, seq: &str, u: i32, v: i32) -> Result<String, String> {
    let input = parse_graph(graph)?;
    let seq = parse_seq(seq)?;
    let g = &input.graph;
    let e: Edge = if u < 0 || v < 0 {
        input
            .family
            .as_ref()
            .and_then(|f| f.distinguished_edge().ok().flatten())
            .ok_or("pick an edge: this graph has no distinguished one")?
    } else {
        (u as usize, v as usize)
    };
    let h = g.delete_edge(e.0, e.1).map_err(|err| err.to_string())?;
    let before = chi_s_with(&h, &seq, &config()).map_err(|err| err.to_string())?;
    let d = double_coloring(g, e, &seq, &before.witness).map_err(|err| err.to_string())?;
    Ok(json!({
        "n": g.n(),
        "edges": edges_json(g),
        "edge": [e.0, e.1],
        "input": before.witness,
        "input_colors": d.input_colors,
        "coloring": d.coloring,
        "colors_used": d.coloring.num_colors(),
        "recolored": d.recolored,
        "swapped": d.swapped,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn chi(graph: &str, seq: &str) -> Result<String, JsValue> {
    chi_json(graph, seq).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn criticality(graph: &str, seq: &str) -> Result<String, JsValue> {
    criticality_json(graph, seq).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn double(graph: &str, seq: &str, u: i32, v: i32) -> Result<String, JsValue> {
    double_json(graph, seq, u, v).map_err(|e| JsValue::from_str(&e))
}
