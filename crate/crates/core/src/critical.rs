//! Criticality verdicts, problematic pairs and the edge-doubling recoloring.
//!
//! Deleting an edge or a vertex never raises `χ_S`, so "χ_S drops" is the
//! same as "the smaller graph is `(χ_S(G) - 1)`-colorable". The fast
//! verdicts use that decision form; [`is_critical`] computes every value.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{all_pairs_distance, Edge, Graph, GraphError};
use crate::sequence::PackingSequence;
use crate::solver::{chi_s_with, is_k_colorable_with, validate_coloring, Coloring, SolveError, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("coloring is not a valid S-packing coloring of G - e")]
    InvalidInputColoring,
    #[error("no vertex covers all {color}-problematic pairs {pairs:?}")]
    ClaimViolation { color: u32, pairs: Vec<Edge> },
    /// Budget ran out; `partial` holds every value computed before that.
    #[error("search budget exhausted ({source})")]
    Timeout { partial: Box<PartialReport>, source: SolveError },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PartialReport {
    pub chi: Option<u32>,
    pub per_edge: Vec<(Edge, u32)>,
    pub per_vertex: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub chi: u32,
    /// `χ_S(G - e)` for every edge, in edge order.
    pub per_edge: Vec<(Edge, u32)>,
    /// `χ_S(G - v)`; empty for `K_1`.
    pub per_vertex: Vec<(usize, u32)>,
    pub is_critical: bool,
    pub is_vertex_critical: bool,
}

fn timeout(partial: PartialReport, err: SolveError) -> CriticalError {
    match err {
        SolveError::Timeout { .. } => CriticalError::Timeout { partial: Box::new(partial), source: err },
        other => CriticalError::Solve(other),
    }
}

pub fn is_critical(g: &Graph, seq: &PackingSequence) -> Result<CriticalityReport, CriticalError> {
    is_critical_with(g, seq, &SolverConfig::default())
}

/// Full report: `χ_S` of `G`, of every `G - e` and of every `G - v`.
pub fn is_critical_with(
    g: &Graph,
    seq: &PackingSequence,
    cfg: &SolverConfig,
) -> Result<CriticalityReport, CriticalError> {
    let mut partial = PartialReport::default();
    let chi = chi_s_with(g, seq, cfg).map_err(|e| timeout(partial.clone(), e))?.value;
    partial.chi = Some(chi);
    for (u, v) in g.edges() {
        let h = g.delete_edge(u, v)?;
        let value = chi_s_with(&h, seq, cfg).map_err(|e| timeout(partial.clone(), e))?.value;
        partial.per_edge.push(((u, v), value));
    }
    if g.n() > 1 {
        for v in 0..g.n() {
            let h = g.delete_vertex(v)?;
            let value = chi_s_with(&h, seq, cfg).map_err(|e| timeout(partial.clone(), e))?.value;
            partial.per_vertex.push((v, value));
        }
    }
    let is_critical = if g.n() == 1 {
        true
    } else if g.has_isolated_vertex() {
        false
    } else {
        partial.per_edge.iter().all(|&(_, x)| x < chi)
    };
    let is_vertex_critical = partial.per_vertex.iter().all(|&(_, x)| x < chi);
    Ok(CriticalityReport {
        chi,
        per_edge: partial.per_edge,
        per_vertex: partial.per_vertex,
        is_critical,
        is_vertex_critical,
    })
}

/// Criticality verdict, stopping at the first edge whose deletion keeps `χ_S`.
pub fn critical_verdict(g: &Graph, seq: &PackingSequence, cfg: &SolverConfig) -> Result<bool, SolveError> {
    if g.n() == 1 {
        return Ok(true);
    }
    if g.has_isolated_vertex() {
        return Ok(false);
    }
    let chi = chi_s_with(g, seq, cfg)?.value;
    critical_given_chi(g, seq, chi, cfg)
}

/// As [`critical_verdict`] for a caller that already knows `χ_S(G) = chi`.
pub fn critical_given_chi(g: &Graph, seq: &PackingSequence, chi: u32, cfg: &SolverConfig) -> Result<bool, SolveError> {
    if g.n() == 1 {
        return Ok(true);
    }
    if g.has_isolated_vertex() {
        return Ok(false);
    }
    for (u, v) in g.edges() {
        let h = g.delete_edge(u, v).expect("edge from edge list");
        if is_k_colorable_with(&h, seq, chi - 1, cfg)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_vertex_critical(g: &Graph, seq: &PackingSequence) -> Result<bool, SolveError> {
    vertex_critical_verdict(g, seq, &SolverConfig::default())
}

/// True iff every `G - v` has smaller `χ_S`. `K_1` counts as vertex-critical.
pub fn vertex_critical_verdict(g: &Graph, seq: &PackingSequence, cfg: &SolverConfig) -> Result<bool, SolveError> {
    if g.n() == 1 {
        return Ok(true);
    }
    let chi = chi_s_with(g, seq, cfg)?.value;
    vertex_critical_given_chi(g, seq, chi, cfg)
}

pub fn vertex_critical_given_chi(
    g: &Graph,
    seq: &PackingSequence,
    chi: u32,
    cfg: &SolverConfig,
) -> Result<bool, SolveError> {
    if g.n() == 1 {
        return Ok(true);
    }
    for v in 0..g.n() {
        let h = g.delete_vertex(v).expect("vertex in range");
        if is_k_colorable_with(&h, seq, chi - 1, cfg)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same-colored pairs of a coloring of `G - e` that violate the packing
/// condition in `G`, grouped by color.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ProblematicPairs {
    by_color: BTreeMap<u32, Vec<Edge>>,
}

impl ProblematicPairs {
    /// Pairs of color `t`, as `(x, y)` with `x < y`, lexicographically.
    pub fn pairs(&self, t: u32) -> &[Edge] {
        self.by_color.get(&t).map_or(&[], Vec::as_slice)
    }

    /// Colors that have at least one problematic pair.
    pub fn colors(&self) -> impl Iterator<Item = u32> + '_ {
        self.by_color.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.by_color.is_empty()
    }

    pub fn total(&self) -> usize {
        self.by_color.values().map(Vec::len).sum()
    }
}

fn check_input(g: &Graph, (u, v): Edge, seq: &PackingSequence, c: &Coloring) -> Result<Graph, CriticalError> {
    let h = g.delete_edge(u, v)?;
    match validate_coloring(&h, seq, c) {
        Ok(true) => Ok(h),
        Ok(false) | Err(SolveError::PartialColoring { .. }) => Err(CriticalError::InvalidInputColoring),
        Err(other) => Err(other.into()),
    }
}

/// `c` must be a valid coloring of `G - e`.
pub fn problematic_pairs(
    g: &Graph,
    e: Edge,
    seq: &PackingSequence,
    c: &Coloring,
) -> Result<ProblematicPairs, CriticalError> {
    check_input(g, e, seq, c)?;
    Ok(pairs_unchecked(g, seq, c))
}

fn pairs_unchecked(g: &Graph, seq: &PackingSequence, c: &Coloring) -> ProblematicPairs {
    let d = all_pairs_distance(g);
    let mut by_color: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            let t = c.color(x);
            if t == c.color(y) && !d.get(x, y).exceeds(seq.s(t as usize)) {
                by_color.entry(t).or_default().push((x, y));
            }
        }
    }
    ProblematicPairs { by_color }
}

/// Smallest vertex lying in every pair; `None` if there is none or the
/// list is empty.
pub fn cover_vertex(pairs: &[Edge]) -> Option<usize> {
    let &(a, b) = pairs.first()?;
    let (lo, hi) = (a.min(b), a.max(b));
    [lo, hi].into_iter().find(|&z| pairs.iter().all(|&(x, y)| x == z || y == z))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Doubling {
    pub coloring: Coloring,
    /// Largest color of the input coloring.
    pub input_colors: u32,
    /// Recolored vertices; the `i`-th gets color `input_colors + 1 + i`.
    pub recolored: Vec<usize>,
    /// Whether colors 1 and 2 were first exchanged on the far side of a cut edge.
    pub swapped: bool,
    /// Smallest input color without problematic pairs, if any.
    pub free_color: Option<u32>,
}

/// Turns a coloring of `G - e` into a coloring of `G`: one vertex covering
/// all problematic pairs of each color is moved to a fresh color.
///
/// When `s_1 = s_2 = 2`, `e` is a cut edge and its endpoints carry colors 1
/// and 2, those two colors are first exchanged on the component of `G - e`
/// containing the second endpoint, so that one of them becomes free.
pub fn double_coloring(g: &Graph, e: Edge, seq: &PackingSequence, c: &Coloring) -> Result<Doubling, CriticalError> {
    let h = check_input(g, e, seq, c)?;
    let (u, v) = e;
    let input_colors = c.num_colors();
    let mut colors = c.colors().to_vec();
    let mut swapped = false;
    let ends = (colors[u].min(colors[v]), colors[u].max(colors[v]));
    if seq.s(1) == 2 && seq.s(2) == 2 && ends == (1, 2) && g.is_cut_edge(u, v)? {
        let side = h.components().into_iter().find(|comp| comp.binary_search(&v).is_ok()).expect("v is a vertex");
        for w in side {
            colors[w] = match colors[w] {
                1 => 2,
                2 => 1,
                x => x,
            };
        }
        swapped = true;
    }
    let base = Coloring::new(colors.clone());
    let pairs = pairs_unchecked(g, seq, &base);
    let free_color = (1..=input_colors).find(|&t| pairs.pairs(t).is_empty());
    let mut recolored = Vec::new();
    for t in pairs.colors() {
        let list = pairs.pairs(t);
        let z = cover_vertex(list).ok_or_else(|| CriticalError::ClaimViolation { color: t, pairs: list.to_vec() })?;
        colors[z] = input_colors + 1 + recolored.len() as u32;
        recolored.push(z);
    }
    Ok(Doubling { coloring: Coloring::new(colors), input_colors, recolored, swapped, free_color })
}

/// Which strengthened bound applies to an edge, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refinement {
    /// `s_1 = 1`, `s_2 ≤ 2` and some component has at least three vertices.
    SmallStart,
    /// `s_1 = s_2 = s_3 = 2` and `χ_S(G - e) ≥ 3`.
    AllTwos,
    /// `s_2 ≤ 2`, `e` is a cut edge and `χ_S(G - e) ≥ 2`.
    CutEdge,
}

impl Refinement {
    /// Every refinement whose hypotheses hold for `e`, given `χ_S(G - e)`.
    pub fn applicable(g: &Graph, seq: &PackingSequence, e: Edge, chi_minus: u32) -> Result<Vec<Self>, GraphError> {
        let (s1, s2, s3) = (seq.s(1), seq.s(2), seq.s(3));
        let mut out = Vec::new();
        if s1 == 1 && s2 <= 2 && g.components().iter().any(|c| c.len() >= 3) {
            out.push(Refinement::SmallStart);
        }
        if s1 == 2 && s2 == 2 && s3 == 2 && chi_minus >= 3 {
            out.push(Refinement::AllTwos);
        }
        if s2 <= 2 && chi_minus >= 2 && g.is_cut_edge(e.0, e.1)? {
            out.push(Refinement::CutEdge);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub edge: Edge,
    pub chi_minus: u32,
    pub refinements: Vec<Refinement>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeBoundReport {
    pub chi: u32,
    pub edges: Vec<EdgeBound>,
}

impl EdgeBoundReport {
    pub fn holds(&self) -> bool {
        self.edges.iter().all(|e| e.holds)
    }
}

pub fn check_edge_bound(g: &Graph, seq: &PackingSequence) -> Result<EdgeBoundReport, CriticalError> {
    check_edge_bound_with(g, seq, &SolverConfig::default())
}

/// `2 χ_S(G - e) ≥ χ_S(G)` for every edge, and `2 χ_S(G - e) ≥ χ_S(G) + 1`
/// where some [`Refinement`] applies.
pub fn check_edge_bound_with(
    g: &Graph,
    seq: &PackingSequence,
    cfg: &SolverConfig,
) -> Result<EdgeBoundReport, CriticalError> {
    let chi = chi_s_with(g, seq, cfg)?.value;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let h = g.delete_edge(u, v)?;
        let chi_minus = chi_s_with(&h, seq, cfg)?.value;
        let refinements = Refinement::applicable(g, seq, (u, v), chi_minus)?;
        let need = if refinements.is_empty() { chi } else { chi + 1 };
        edges.push(EdgeBound { edge: (u, v), chi_minus, refinements, holds: 2 * chi_minus >= need });
    }
    Ok(EdgeBoundReport { chi, edges })
}
