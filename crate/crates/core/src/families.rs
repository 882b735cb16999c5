//! Named graphs and gadget constructions with fixed labelings.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{all_pairs_distance, Distance, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("parameter out of range for {family}: {reason}")]
    ParameterOutOfRange { family: &'static str, reason: String },
    #[error("host graph needs {needed} universal vertices, found {found}")]
    MissingUniversalVertex { needed: usize, found: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

/// The sporadic graphs `G_1, ..., G_8` as 1-based edge lists.
const SPORADIC: [(usize, &[(usize, usize)]); 8] = [
    (5, &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
    (6, &[(1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6)]),
    (5, &[(1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (3, 5)]),
    (6, &[(1, 2), (2, 3), (3, 4), (2, 5), (3, 5), (5, 6)]),
    (8, &[(1, 6), (1, 2), (2, 3), (3, 4), (4, 5), (4, 7), (5, 8)]),
    (8, &[(1, 5), (1, 6), (1, 2), (2, 3), (3, 4), (4, 7), (4, 8)]),
    (7, &[(1, 5), (1, 2), (2, 3), (3, 4), (2, 6), (3, 7)]),
    (6, &[(1, 4), (1, 2), (2, 3), (2, 5), (3, 6)]),
];

/// A named graph or construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `P_n`, `n ≥ 1`.
    Path(usize),
    /// `C_n`, `n ≥ 3`.
    Cycle(usize),
    /// `K_n`, `n ≥ 1`.
    Complete(usize),
    /// `K_{1,k}`, `k ≥ 1`; the center is vertex 0.
    Star(usize),
    /// A triangle with a pendant edge.
    Z1,
    /// `K_4` minus an edge.
    Diamond,
    /// `X_{2k}` for the given even order `2k ≥ 6` of the underlying path:
    /// a pendant vertex is attached to both support vertices of `P_{2k}`.
    X(usize),
    /// `G_1, ..., G_8`.
    Sporadic(u8),
    /// Two copies of `K_{1,k}`, `k ≥ 3`, joined by an edge between leaves.
    StarBridge(usize),
    /// `K_k` and `K_{k+1}`, `k ≥ 2`, joined by a path of length 3.
    CliquePath(usize),
    /// Two copies of a host with a universal vertex, joined by an edge
    /// between their universal vertices.
    UniversalDouble(Box<FamilySpec>),
    /// Two copies of a host with universal vertices `x, y`; copies joined by
    /// `xx'` and by a path of length 3 from `y` to `y'`.
    NonCut(Box<FamilySpec>),
}

fn out_of_range(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::ParameterOutOfRange { family, reason: reason.into() }
}

fn path_edges(n: usize) -> Vec<Edge> {
    (1..n).map(|i| (i - 1, i)).collect()
}

fn clique_edges(vertices: impl Iterator<Item = usize> + Clone) -> Vec<Edge> {
    let vs: Vec<usize> = vertices.collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

fn universal_vertices(h: &Graph) -> Vec<usize> {
    (0..h.n()).filter(|&v| h.is_universal(v)).collect()
}

fn disjoint_double(h: &Graph) -> Vec<Edge> {
    let k = h.n();
    h.edges().flat_map(|(a, b)| [(a, b), (a + k, b + k)]).collect()
}

impl FamilySpec {
    /// The graph with its documented labeling.
    pub fn generate(&self) -> Result<Graph, FamilyError> {
        let g = match self {
            FamilySpec::Path(n) => {
                if *n < 1 {
                    return Err(out_of_range("path", "n >= 1"));
                }
                Graph::from_edges(*n, &path_edges(*n))
            }
            FamilySpec::Cycle(n) => {
                if *n < 3 {
                    return Err(out_of_range("cycle", "n >= 3"));
                }
                let mut e = path_edges(*n);
                e.push((n - 1, 0));
                Graph::from_edges(*n, &e)
            }
            FamilySpec::Complete(n) => {
                if *n < 1 {
                    return Err(out_of_range("complete", "n >= 1"));
                }
                Graph::from_edges(*n, &clique_edges(0..*n))
            }
            FamilySpec::Star(k) => {
                if *k < 1 {
                    return Err(out_of_range("star", "k >= 1"));
                }
                Graph::from_edges(k + 1, &(1..=*k).map(|i| (0, i)).collect::<Vec<_>>())
            }
            FamilySpec::Z1 => Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]),
            FamilySpec::Diamond => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
            FamilySpec::X(order) => {
                if *order < 6 || order % 2 != 0 {
                    return Err(out_of_range("x", "path order 2k must be even and at least 6"));
                }
                let n = *order;
                let mut e = path_edges(n);
                e.push((1, n));
                e.push((n - 2, n + 1));
                Graph::from_edges(n + 2, &e)
            }
            FamilySpec::Sporadic(i) => {
                let Some((n, edges)) = SPORADIC.get((*i as usize).wrapping_sub(1)) else {
                    return Err(out_of_range("g", "index must be 1..=8"));
                };
                let e: Vec<Edge> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
                Graph::from_edges(*n, &e)
            }
            FamilySpec::StarBridge(k) => {
                if *k < 3 {
                    return Err(out_of_range("star_bridge", "k >= 3"));
                }
                let b = k + 1;
                let mut e: Vec<Edge> = (1..=*k).flat_map(|i| [(0, i), (b, b + i)]).collect();
                e.push((1, b + 1));
                Graph::from_edges(2 * b, &e)
            }
            FamilySpec::CliquePath(k) => {
                if *k < 2 {
                    return Err(out_of_range("clique_path", "k >= 2"));
                }
                let (k, n) = (*k, 2 * k + 3);
                let mut e = clique_edges(0..k);
                e.extend(clique_edges(k..2 * k + 1));
                e.extend([(0, 2 * k + 1), (2 * k + 1, 2 * k + 2), (2 * k + 2, k)]);
                Graph::from_edges(n, &e)
            }
            FamilySpec::UniversalDouble(host) => {
                let h = host.generate()?;
                let x = *universal_vertices(&h)
                    .first()
                    .ok_or(FamilyError::MissingUniversalVertex { needed: 1, found: 0 })?;
                let mut e = disjoint_double(&h);
                e.push((x, x + h.n()));
                Graph::from_edges(2 * h.n(), &e)
            }
            FamilySpec::NonCut(host) => {
                let h = host.generate()?;
                let u = universal_vertices(&h);
                if u.len() < 2 {
                    return Err(FamilyError::MissingUniversalVertex { needed: 2, found: u.len() });
                }
                let (x, y, k) = (u[0], u[1], h.n());
                let mut e = disjoint_double(&h);
                e.push((x, x + k));
                e.extend([(y, 2 * k), (2 * k, 2 * k + 1), (2 * k + 1, y + k)]);
                Graph::from_edges(2 * k + 2, &e)
            }
        };
        Ok(g.expect("family constructions produce valid edge lists"))
    }

    /// The edge singled out by a gadget construction: the bridge of
    /// `star_bridge`, the path edge at `K_{k+1}` of `clique_path`, and the
    /// edge between universal vertices of the doubled hosts.
    pub fn distinguished_edge(&self) -> Result<Option<Edge>, FamilyError> {
        Ok(match self {
            FamilySpec::StarBridge(k) => Some((1, k + 2)),
            FamilySpec::CliquePath(k) => Some((*k, 2 * k + 2)),
            FamilySpec::UniversalDouble(host) | FamilySpec::NonCut(host) => {
                let h = host.generate()?;
                let x = *universal_vertices(&h)
                    .first()
                    .ok_or(FamilyError::MissingUniversalVertex { needed: 1, found: 0 })?;
                Some((x, x + h.n()))
            }
            _ => None,
        })
    }

    /// Vertex count, without building the graph where it is cheap to know.
    pub fn order(&self) -> Result<usize, FamilyError> {
        Ok(match self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Complete(n) => *n,
            FamilySpec::Star(k) => k + 1,
            FamilySpec::Z1 | FamilySpec::Diamond => 4,
            FamilySpec::X(order) => order + 2,
            _ => self.generate()?.n(),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
            FamilySpec::Z1 => write!(f, "z1"),
            FamilySpec::Diamond => write!(f, "diamond"),
            FamilySpec::X(order) => write!(f, "x:{order}"),
            FamilySpec::Sporadic(i) => write!(f, "g:{i}"),
            FamilySpec::StarBridge(k) => write!(f, "star_bridge:{k}"),
            FamilySpec::CliquePath(k) => write!(f, "clique_path:{k}"),
            FamilySpec::UniversalDouble(h) => write!(f, "universal_double:{h}"),
            FamilySpec::NonCut(h) => write!(f, "non_cut:{h}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// `name:params`, e.g. `path:14`, `x:6`, `g:3`, `non_cut:complete:3`.
    /// Names are case-insensitive; `G3` is accepted for `g:3`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lower = text.trim().to_ascii_lowercase();
        let (name, rest) = match lower.split_once(':') {
            Some((name, rest)) => (name.to_string(), Some(rest.to_string())),
            None => (lower.clone(), None),
        };
        let unknown = || FamilyError::UnknownFamily(text.to_string());
        let int = |family: &'static str| -> Result<usize, FamilyError> {
            let r = rest.as_deref().ok_or_else(|| out_of_range(family, "missing parameter"))?;
            r.trim().parse().map_err(|_| out_of_range(family, format!("bad integer {r:?}")))
        };
        let host = |family: &'static str| -> Result<Box<FamilySpec>, FamilyError> {
            let r = rest.as_deref().ok_or_else(|| out_of_range(family, "missing host family"))?;
            Ok(Box::new(r.parse()?))
        };
        Ok(match name.as_str() {
            "path" | "p" => FamilySpec::Path(int("path")?),
            "cycle" | "c" => FamilySpec::Cycle(int("cycle")?),
            "complete" | "k" => FamilySpec::Complete(int("complete")?),
            "star" => FamilySpec::Star(int("star")?),
            "z1" if rest.is_none() => FamilySpec::Z1,
            "diamond" if rest.is_none() => FamilySpec::Diamond,
            "x" => FamilySpec::X(int("x")?),
            "g" => FamilySpec::Sporadic(int("g")?.min(u8::MAX as usize) as u8),
            "star_bridge" => FamilySpec::StarBridge(int("star_bridge")?),
            "clique_path" => FamilySpec::CliquePath(int("clique_path")?),
            "universal_double" => FamilySpec::UniversalDouble(host("universal_double")?),
            "non_cut" => FamilySpec::NonCut(host("non_cut")?),
            other if rest.is_none() && other.len() == 2 && other.starts_with('g') => {
                FamilySpec::Sporadic(other[1..].parse().map_err(|_| unknown())?)
            }
            _ => return Err(unknown()),
        })
    }
}

/// Parses and generates in one step.
pub fn generate(spec: &str) -> Result<Graph, FamilyError> {
    spec.parse::<FamilySpec>()?.generate()
}

/// Membership of `C_n` in the cycle class indexed by `s_4`: `n ≥ 5` and
/// either `n ≡ 1, 2 (mod 4)`, or `n ≡ 3 (mod 4)` and `s_4 < ⌊n/2⌋`.
pub fn in_c_s4(n: usize, s4: u32) -> bool {
    n >= 5 && (matches!(n % 4, 1 | 2) || (n % 4 == 3 && (s4 as usize) < n / 2))
}

/// `diam(G) = k` and every edge deletion increases the diameter
/// (disconnecting counts as an increase).
pub fn is_diameter_k_critical(g: &Graph, k: u32) -> Result<bool, FamilyError> {
    let diam = all_pairs_distance(g).diameter();
    if diam == Distance::Unreachable {
        return Err(FamilyError::Disconnected);
    }
    if diam != Distance::Finite(k) {
        return Ok(false);
    }
    Ok(g.edges().all(|(u, v)| {
        let h = g.delete_edge(u, v).expect("edge from edge list");
        all_pairs_distance(&h).diameter() > diam
    }))
}
