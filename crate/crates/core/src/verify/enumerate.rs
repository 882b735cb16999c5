//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices come from graphs on `n - 1` by adding a vertex
//! with every possible neighborhood; duplicates are rejected by canonical
//! form. Trees grow by attaching a leaf. Results are cached per order.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::graph::{canonical_form_bounded, canonical_graph, Graph, GraphError};

/// Largest order the internal graph generator handles.
pub const ENUM_LIMIT: usize = 8;
/// Largest order the tree generator handles.
pub const TREE_LIMIT: usize = 10;

type Cache = Mutex<HashMap<usize, Arc<Vec<Graph>>>>;

fn graph_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn tree_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Canonically labeled representatives, sorted by graph6 string.
fn dedupe(candidates: Vec<Graph>) -> Vec<Graph> {
    let mut keyed: Vec<(Vec<u8>, Graph)> = candidates
        .into_par_iter()
        .map(|g| {
            let c = canonical_graph(&g).expect("order within canonical limit");
            (canonical_form_bounded(&c, 64).unwrap(), c)
        })
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, g)| g).collect()
}

/// One graph per isomorphism class on exactly `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Arc<Vec<Graph>>, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if n > ENUM_LIMIT {
        return Err(GraphError::SizeLimit { n, limit: ENUM_LIMIT });
    }
    if let Some(hit) = graph_cache().lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let graphs = if n == 1 {
        vec![Graph::empty(1)?]
    } else {
        let smaller = enumerate_graphs(n - 1)?;
        let m = n - 1;
        let candidates: Vec<Graph> = smaller
            .iter()
            .flat_map(|h| {
                (0u32..1 << m).map(move |mask| {
                    let mut edges: Vec<(usize, usize)> = h.edges().collect();
                    edges.extend((0..m).filter(|&i| mask >> i & 1 == 1).map(|i| (i, m)));
                    Graph::from_edges(n, &edges).expect("valid extension")
                })
            })
            .collect();
        dedupe(candidates)
    };
    let graphs = Arc::new(graphs);
    graph_cache().lock().unwrap().insert(n, graphs.clone());
    Ok(graphs)
}

/// One connected graph per isomorphism class on exactly `n` vertices.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(enumerate_graphs(n)?.iter().filter(|g| g.is_connected()).cloned().collect())
}

/// One tree per isomorphism class on exactly `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<Arc<Vec<Graph>>, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if n > TREE_LIMIT {
        return Err(GraphError::SizeLimit { n, limit: TREE_LIMIT });
    }
    if let Some(hit) = tree_cache().lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let trees = if n == 1 {
        vec![Graph::empty(1)?]
    } else {
        let smaller = enumerate_trees(n - 1)?;
        let candidates: Vec<Graph> = smaller
            .iter()
            .flat_map(|t| {
                (0..n - 1).map(move |v| {
                    let mut edges: Vec<(usize, usize)> = t.edges().collect();
                    edges.push((v, n - 1));
                    Graph::from_edges(n, &edges).expect("valid extension")
                })
            })
            .collect();
        dedupe(candidates)
    };
    let trees = Arc::new(trees);
    tree_cache().lock().unwrap().insert(n, trees.clone());
    Ok(trees)
}

/// Canonical keys of a graph list, for set comparisons.
pub(crate) fn key_set(graphs: &[Graph]) -> HashSet<Vec<u8>> {
    graphs.iter().map(|g| canonical_form_bounded(g, 64).expect("at most 64 vertices")).collect()
}
