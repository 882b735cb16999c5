//! Canonical labeling by partition refinement with individualization.
//!
//! The canonical form is the lexicographically largest graph6 string over
//! all leaves of the individualization-refinement tree. Refinement only
//! looks at cell membership and neighbor counts, so the set of leaf strings
//! is a graph invariant. Twin vertices in a target cell are explored once:
//! swapping two twins is an automorphism fixing the current node.

use super::{emit_graph6, parse_graph6, Graph, GraphError};

/// Default vertex bound for canonicalization.
pub const CANON_LIMIT: usize = 10;

type Partition = Vec<Vec<usize>>;

/// Canonical graph6 bytes, for graphs with at most [`CANON_LIMIT`] vertices.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    canonical_form_bounded(g, CANON_LIMIT)
}

/// Canonical form with a caller-chosen bound (at most 64).
pub fn canonical_form_bounded(g: &Graph, limit: usize) -> Result<Vec<u8>, GraphError> {
    let limit = limit.min(64);
    if g.n() > limit {
        return Err(GraphError::SizeLimit { n: g.n(), limit });
    }
    let adj = bit_rows(g);
    let mut search = Search { g, adj: &adj, best: None };
    let degree_cells = initial_partition(g);
    let root = refine(&adj, degree_cells);
    search.explore(root);
    Ok(search.best.expect("search visits at least one leaf"))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph, GraphError> {
    let form = canonical_form(g)?;
    Ok(parse_graph6(std::str::from_utf8(&form).expect("graph6 is ASCII")).expect("own output parses"))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

fn bit_rows(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

fn initial_partition(g: &Graph) -> Partition {
    let mut by_degree: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut cells: Partition = Vec::new();
    let mut last = usize::MAX;
    for (d, v) in by_degree {
        if d != last {
            cells.push(Vec::new());
            last = d;
        }
        cells.last_mut().unwrap().push(v);
    }
    cells
}

/// Splits cells by neighbor counts into each splitter cell until the
/// partition is equitable. Sub-cells are ordered by count.
fn refine(adj: &[u64], mut cells: Partition) -> Partition {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s].iter().fold(0u64, |m, &v| m | 1 << v);
            let mut next: Partition = Vec::with_capacity(cells.len());
            let mut split_any = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((adj[v] & splitter).count_ones(), v)).collect();
                keyed.sort_unstable();
                let first = keyed[0].0;
                if keyed.iter().all(|&(k, _)| k == first) {
                    next.push(cell.clone());
                    continue;
                }
                split_any = true;
                let mut last = u32::MAX;
                for (k, v) in keyed {
                    if k != last {
                        next.push(Vec::new());
                        last = k;
                    }
                    next.last_mut().unwrap().push(v);
                }
            }
            if split_any {
                cells = next;
                changed = true;
                break;
            }
            s += 1;
        }
    }
    cells
}

struct Search<'a> {
    g: &'a Graph,
    adj: &'a [u64],
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn explore(&mut self, cells: Partition) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = &cells[target];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut child: Partition = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            let refined = refine(self.adj, child);
            self.explore(refined);
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let mask = !(1u64 << a | 1u64 << b);
        self.adj[a] & mask == self.adj[b] & mask
    }

    fn leaf(&mut self, cells: &Partition) {
        let mut perm = vec![0; self.g.n()];
        for (label, cell) in cells.iter().enumerate() {
            perm[cell[0]] = label;
        }
        let form = emit_graph6(&self.g.relabel(&perm)).into_bytes();
        if self.best.as_ref().map_or(true, |b| form > *b) {
            self.best = Some(form);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &e)
    }

    #[test]
    fn path_vs_star() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!is_isomorphic(&p4, &star).unwrap());
    }

    #[test]
    fn relabeled_cycle() {
        let a = cycle(5);
        let b = graph(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
        assert!(is_isomorphic(&a, &b).unwrap());
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn same_degrees_different_graphs() {
        // C_6 versus two triangles: both 2-regular.
        let two_triangles = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_isomorphic(&cycle(6), &two_triangles).unwrap());
    }

    #[test]
    fn size_limit() {
        let g = Graph::empty(11).unwrap();
        assert_eq!(canonical_form(&g), Err(GraphError::SizeLimit { n: 11, limit: 10 }));
        assert!(canonical_form_bounded(&g, 12).is_ok());
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        let k10 = graph(10, &(0..10).flat_map(|i| (i + 1..10).map(move |j| (i, j))).collect::<Vec<_>>());
        assert_eq!(canonical_form(&k10).unwrap(), emit_graph6(&k10).into_bytes());
        let matching = graph(10, &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]);
        let shuffled = graph(10, &[(0, 9), (1, 8), (2, 7), (3, 6), (4, 5)]);
        assert!(is_isomorphic(&matching, &shuffled).unwrap());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(g in arb_graph(), seed in any::<u64>()) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
            let c = canonical_graph(&g).unwrap();
            prop_assert!(c.edge_count() == g.edge_count());
        }
    }
}
