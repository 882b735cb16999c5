//! Simple undirected graphs on dense vertex indices `0..n`.

mod canon;
mod distance;
mod io;
mod wsets;

pub use canon::{canonical_form, canonical_form_bounded, canonical_graph, is_isomorphic, CANON_LIMIT};
pub use distance::{all_pairs_distance, girth, Distance, DistanceMatrix, Girth};
pub use io::{emit_graph6, parse_edge_list, parse_graph6};
pub use wsets::{w_partition, w_partition_after_removal, EdgePartition, Side};

use std::fmt;

use thiserror::Error;

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graphs must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(usize),
    #[error("cannot delete the last vertex of a graph")]
    DeleteLastVertex,
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },
    #[error("malformed edge list at byte {offset}: {reason}")]
    MalformedEdgeList { offset: usize, reason: String },
    #[error("graph has {n} vertices, limit is {limit}")]
    SizeLimit { n: usize, limit: usize },
}

/// Simple undirected graph. Neighbor lists are kept sorted so that two
/// graphs with the same edge set compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n ≥ 1` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(Graph { adj: vec![Vec::new(); n] })
    }

    /// Builds a graph from an edge list. Repeated pairs collapse to one edge.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Copy of the graph with edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// `G - e`; all vertices are kept.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        Ok(g)
    }

    /// `G - v`, re-indexed densely.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.delete_vertex_mapped(v).map(|(g, _)| g)
    }

    /// `G - v` together with the old index of every new vertex.
    pub fn delete_vertex_mapped(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        if v >= self.n() {
            return Err(GraphError::MissingVertex(v));
        }
        if self.n() == 1 {
            return Err(GraphError::DeleteLastVertex);
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        Ok((self.induced_subgraph(&keep), keep))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    ///
    /// Panics if `vertices` is empty, repeats a vertex or is out of range.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        assert!(!vertices.is_empty(), "induced subgraph needs a vertex");
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            assert!(index[v] == usize::MAX, "repeated vertex {v}");
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut nb: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        Graph { adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![Vec::new(); self.n()];
        for (v, nb) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = nb.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            adj[perm[v]] = mapped;
        }
        Graph { adj }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff removing `uv` increases the number of components.
    pub fn is_cut_edge(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        let h = self.delete_edge(u, v)?;
        Ok(h.components().len() > self.components().len())
    }

    /// A vertex adjacent to every other vertex.
    pub fn is_universal(&self, v: usize) -> bool {
        self.adj[v].len() + 1 == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n() && self.is_connected()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
