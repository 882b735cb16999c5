use serde::Serialize;

use super::{all_pairs_distance, DistanceMatrix, Edge, Graph, GraphError};

/// Which endpoint of an edge `uv` a vertex is strictly closer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    U,
    V,
    Tie,
}

/// Partition of `V(G)` for an edge `uv` into `W_uv` (strictly closer to
/// `u`), `W_vu` (strictly closer to `v`) and the tie set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePartition {
    pub edge: Edge,
    pub w_uv: Vec<usize>,
    pub w_vu: Vec<usize>,
    pub ties: Vec<usize>,
}

impl EdgePartition {
    pub fn side_of(&self, w: usize) -> Side {
        if self.w_uv.binary_search(&w).is_ok() {
            Side::U
        } else if self.w_vu.binary_search(&w).is_ok() {
            Side::V
        } else {
            Side::Tie
        }
    }
}

/// W-sets of `e = (u, v)` in `g`. Pairs of equal distances, including two
/// unreachable ones, land in the tie set.
pub fn w_partition(g: &Graph, e: Edge) -> Result<EdgePartition, GraphError> {
    if !g.has_edge(e.0, e.1) {
        return Err(GraphError::MissingEdge(e.0, e.1));
    }
    Ok(partition_from(&all_pairs_distance(g), e))
}

/// Same partition computed from a precomputed distance matrix. The edge is
/// not required to be present, which is what makes recomputation on `G - e`
/// possible.
pub(crate) fn partition_from(d: &DistanceMatrix, (u, v): Edge) -> EdgePartition {
    let mut p = EdgePartition { edge: (u, v), w_uv: Vec::new(), w_vu: Vec::new(), ties: Vec::new() };
    for w in 0..d.n() {
        let (du, dv) = (d.get(u, w), d.get(v, w));
        match du.cmp(&dv) {
            std::cmp::Ordering::Less => p.w_uv.push(w),
            std::cmp::Ordering::Greater => p.w_vu.push(w),
            std::cmp::Ordering::Equal => p.ties.push(w),
        }
    }
    p
}

/// W-sets of `(u, v)` measured in `g - uv`.
pub fn w_partition_after_removal(g: &Graph, e: Edge) -> Result<EdgePartition, GraphError> {
    let h = g.delete_edge(e.0, e.1)?;
    Ok(partition_from(&all_pairs_distance(&h), e))
}
