use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::Graph;

/// Shortest-path distance. `Unreachable` orders above every finite value,
/// so `d > Finite(s)` reads as "farther than `s`" for disconnected pairs too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    /// `d > s`.
    pub fn exceeds(self, s: u32) -> bool {
        self > Distance::Finite(s)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => write!(f, "inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Unreachable => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }

    /// Largest distance; `Unreachable` for disconnected graphs.
    pub fn diameter(&self) -> Distance {
        self.d.iter().copied().max().unwrap_or(Distance::Finite(0))
    }

    /// Largest finite distance, i.e. the largest component diameter.
    pub fn max_finite(&self) -> u32 {
        self.d.iter().filter_map(|d| d.finite()).max().unwrap_or(0)
    }
}

/// BFS from every vertex.
pub fn all_pairs_distance(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![Distance::Unreachable; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for src in 0..n {
        let row = &mut d[src * n..(src + 1) * n];
        row[src] = Distance::Finite(0);
        queue.clear();
        queue.push_back((src, 0u32));
        while let Some((v, dv)) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if row[w] == Distance::Unreachable {
                    row[w] = Distance::Finite(dv + 1);
                    queue.push_back((w, dv + 1));
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// Length of a shortest cycle; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[src] = 0;
        parent[src] = usize::MAX;
        queue.clear();
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &e)
    }

    #[test]
    fn path_metric() {
        let d = all_pairs_distance(&graph(4, &[(0, 1), (1, 2), (2, 3)]));
        assert_eq!(d.get(0, 3), Distance::Finite(3));
        assert_eq!(d.diameter(), Distance::Finite(3));
    }

    #[test]
    fn cycle_diameter() {
        assert_eq!(all_pairs_distance(&cycle(5)).diameter(), Distance::Finite(2));
    }

    #[test]
    fn disconnected_pairs_are_unreachable() {
        let d = all_pairs_distance(&graph(3, &[(0, 1)]));
        assert_eq!(d.get(0, 2), Distance::Unreachable);
        assert_eq!(d.diameter(), Distance::Unreachable);
        assert_eq!(d.max_finite(), 1);
        assert!(d.get(0, 2).exceeds(u32::MAX));
    }

    #[test]
    fn girth_examples() {
        let tree = graph(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]);
        assert_eq!(girth(&tree), Girth::Infinite);
        assert_eq!(girth(&cycle(7)), Girth::Finite(7));
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(girth(&k4), Girth::Finite(3));
        // C_4 with a pendant path; girth must ignore the long way round.
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]);
        assert_eq!(girth(&g), Girth::Finite(4));
        assert!(Girth::Infinite > Girth::Finite(100));
    }

    fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
        let n = g.n();
        let mut d = vec![vec![None; n]; n];
        for v in 0..n {
            d[v][v] = Some(0);
            for &w in g.neighbors(v) {
                d[v][w] = Some(1);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                        if d[i][j].map_or(true, |c| a + b < c) {
                            d[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        d
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..(n * 2 + 1)).prop_map(move |pairs| {
                let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn bfs_matches_floyd_warshall(g in arb_graph(32)) {
            let d = all_pairs_distance(&g);
            let fw = floyd_warshall(&g);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    prop_assert_eq!(d.get(u, v).finite(), fw[u][v]);
                    prop_assert_eq!(d.get(u, v), d.get(v, u));
                }
            }
        }
    }
}
