//! Enumeration of small graphs and the registered checks that compare
//! computed results with the predicted classifications and bounds.
//!
//! Every check returns a [`TheoremCheck`] record. A check passes iff the
//! observation matches the prediction on the whole tested range; a timeout
//! anywhere turns an otherwise clean run into `SKIPPED`.

mod checks;
mod enumerate;

pub use enumerate::{enumerate_connected_graphs, enumerate_graphs, enumerate_trees, ENUM_LIMIT, TREE_LIMIT};

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::critical::{critical_given_chi, vertex_critical_given_chi};
use crate::families::FamilyError;
use crate::graph::{canonical_form_bounded, emit_graph6, parse_graph6, Edge, Graph, GraphError};
use crate::sequence::{PackingSequence, SequenceError};
use crate::solver::{chi_s_with, is_k_colorable_with, lower_bound, Coloring, SolveError, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownTheorem(String),
    #[error("sequence {sequence} is outside the class tested by {id}")]
    OutsideClass { id: String, sequence: String },
    #[error("corpus line {line}: {source}")]
    Corpus { line: usize, source: GraphError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub sequence: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub colorings: Vec<Coloring>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<(usize, usize)>,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: String,
    pub verdict: Verdict,
    pub params: CheckParams,
    pub expected: String,
    pub observed: String,
    pub counterexample: Option<Counterexample>,
    /// Instances abandoned on budget exhaustion.
    pub skipped: Vec<String>,
}

impl TheoremCheck {
    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Bounds and overrides for [`verify_theorem`]. Unset fields fall back to
/// each check's own defaults.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub n_max: Option<usize>,
    pub n_range: Option<(usize, usize)>,
    pub sequences: Option<Vec<PackingSequence>>,
    pub solver: SolverConfig,
    /// Extra graphs, used for orders above [`ENUM_LIMIT`].
    pub corpus: Option<Arc<Vec<Graph>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckInfo {
    pub id: &'static str,
    pub summary: &'static str,
}

/// Every registered check, in run order.
pub fn registry() -> &'static [CheckInfo] {
    checks::REGISTRY
}

pub fn verify_theorem(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    checks::run(id, opts)
}

/// Runs every registered check.
pub fn verify_all(opts: &VerifyOptions) -> Result<Vec<TheoremCheck>, VerifyError> {
    registry().iter().map(|c| verify_theorem(c.id, opts)).collect()
}

/// Parses one graph6 string per line; blank lines and `#` comments are skipped.
pub fn read_graph6_corpus(text: &str) -> Result<Vec<Graph>, VerifyError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|source| VerifyError::Corpus { line: i + 1, source }))
        .collect()
}

/// Graphs found by a search, plus those abandoned on timeout.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Search {
    pub found: Vec<Graph>,
    pub skipped: Vec<Graph>,
}

/// All connected graphs on at most `n_max` vertices with `χ_S = k` that
/// are critical.
pub fn find_k_critical(n_max: usize, seq: &PackingSequence, k: u32, cfg: &SolverConfig) -> Result<Search, VerifyError> {
    let graphs = connected_up_to(n_max)?;
    Ok(find_k_in(&graphs, seq, k, false, cfg))
}

/// As [`find_k_critical`] for vertex-criticality.
pub fn find_k_vertex_critical(
    n_max: usize,
    seq: &PackingSequence,
    k: u32,
    cfg: &SolverConfig,
) -> Result<Search, VerifyError> {
    let graphs = connected_up_to(n_max)?;
    Ok(find_k_in(&graphs, seq, k, true, cfg))
}

fn connected_up_to(n_max: usize) -> Result<Vec<Graph>, VerifyError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_connected_graphs(n)?);
    }
    Ok(out)
}

/// `χ_S(G) = k`, decided without computing `χ_S` when it is far from `k`.
pub(crate) fn chi_equals(g: &Graph, seq: &PackingSequence, k: u32, cfg: &SolverConfig) -> Result<bool, SolveError> {
    if k == 0 || k as usize > g.n() || lower_bound(g, seq) > k {
        return Ok(false);
    }
    if k > 1 && is_k_colorable_with(g, seq, k - 1, cfg)?.is_some() {
        return Ok(false);
    }
    Ok(is_k_colorable_with(g, seq, k, cfg)?.is_some())
}

pub(crate) fn find_k_in(graphs: &[Graph], seq: &PackingSequence, k: u32, vertex: bool, cfg: &SolverConfig) -> Search {
    let verdicts: Vec<Result<bool, SolveError>> = graphs
        .par_iter()
        .map(|g| {
            if !chi_equals(g, seq, k, cfg)? {
                return Ok(false);
            }
            if vertex {
                vertex_critical_given_chi(g, seq, k, cfg)
            } else {
                critical_given_chi(g, seq, k, cfg)
            }
        })
        .collect();
    let mut search = Search::default();
    for (g, v) in graphs.iter().zip(verdicts) {
        match v {
            Ok(true) => search.found.push(g.clone()),
            Ok(false) => {}
            Err(_) => search.skipped.push(g.clone()),
        }
    }
    search
}

pub(crate) fn key(g: &Graph) -> Vec<u8> {
    canonical_form_bounded(g, 64).expect("corpus graphs have at most 64 vertices")
}

pub(crate) fn keys(graphs: &[Graph]) -> HashSet<Vec<u8>> {
    enumerate::key_set(graphs)
}

/// A cut edge whose deletion more than halves `χ_S` rounded up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutEdgeObservation {
    pub graph6: String,
    pub edge: Edge,
    pub chi: u32,
    pub chi_minus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CutEdgeExploration {
    pub graphs: usize,
    pub cut_edges: usize,
    /// Cut edges with `2 χ_S(G - e) < χ_S(G) + 1`.
    pub below_refined_bound: Vec<CutEdgeObservation>,
    pub skipped: Vec<String>,
}

/// Looks for cut edges `e` with `χ_S(G - e) < (χ_S(G) + 1) / 2` among
/// connected graphs on at most `n_max` vertices. Nothing is asserted.
pub fn explore_cut_edges(n_max: usize, seq: &PackingSequence, cfg: &SolverConfig) -> Result<CutEdgeExploration, VerifyError> {
    let graphs = connected_up_to(n_max)?;
    explore_cut_edges_in(&graphs, seq, cfg)
}

pub fn explore_cut_edges_in(
    graphs: &[Graph],
    seq: &PackingSequence,
    cfg: &SolverConfig,
) -> Result<CutEdgeExploration, VerifyError> {
    type PerGraph = Result<(usize, Vec<CutEdgeObservation>), String>;
    let per_graph: Vec<PerGraph> = graphs
        .par_iter()
        .map(|g| {
            let g6 = emit_graph6(g);
            let skip = |e: SolveError| format!("{g6}: {e}");
            let chi = chi_s_with(g, seq, cfg).map_err(skip)?.value;
            let mut cuts = 0;
            let mut below = Vec::new();
            for (u, v) in g.edges() {
                if !g.is_cut_edge(u, v).expect("edge from edge list") {
                    continue;
                }
                cuts += 1;
                let h = g.delete_edge(u, v).expect("edge from edge list");
                let chi_minus = chi_s_with(&h, seq, cfg).map_err(skip)?.value;
                if 2 * chi_minus < chi + 1 {
                    below.push(CutEdgeObservation { graph6: g6.clone(), edge: (u, v), chi, chi_minus });
                }
            }
            Ok((cuts, below))
        })
        .collect();
    let mut out = CutEdgeExploration { graphs: graphs.len(), ..Default::default() };
    for r in per_graph {
        match r {
            Ok((cuts, below)) => {
                out.cut_edges += cuts;
                out.below_refined_bound.extend(below);
            }
            Err(s) => out.skipped.push(s),
        }
    }
    Ok(out)
}
