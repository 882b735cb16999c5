//! Exact S-packing colorability and `χ_S`.
//!
//! The exact search colors one connected component at a time. Vertices are
//! taken in order of descending degree (ties by index); color `i` is
//! available to `v` iff no vertex already in class `i` lies within distance
//! `s_i` of `v`.
//!
//! Two colors whose terms agree once capped at the component diameter are
//! interchangeable, so within such a block a new color is opened only after
//! all smaller colors of the block are in use.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{all_pairs_distance, DistanceMatrix, Graph};
use crate::sequence::PackingSequence;

/// Largest component the exact search accepts.
pub const MAX_COMPONENT: usize = 128;
/// Largest graph [`brute_force_chi`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("coloring covers {colored} of {n} vertices")]
    PartialColoring { colored: usize, n: usize },
    #[error("search budget exhausted after {nodes} nodes; {lower} <= chi_S <= {upper}")]
    Timeout { lower: u32, upper: u32, nodes: u64 },
    #[error("graph of order {n} exceeds the limit {limit}")]
    SizeLimit { n: usize, limit: usize },
}

/// Vertex coloring with colors `1, 2, ...`; `0` marks an uncolored vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Largest color used.
    pub fn num_colors(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.colors
    }
}

impl From<Vec<u32>> for Coloring {
    fn from(colors: Vec<u32>) -> Self {
        Coloring { colors }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Search nodes allowed per call.
    pub node_budget: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_budget: 100_000_000, time_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiResult {
    pub value: u32,
    pub witness: Coloring,
    pub nodes_explored: u64,
}

/// Checks the packing condition pair by pair from the distance matrix.
pub fn validate_coloring(g: &Graph, seq: &PackingSequence, c: &Coloring) -> Result<bool, SolveError> {
    validate_with(&all_pairs_distance(g), seq, c)
}

pub(crate) fn validate_with(d: &DistanceMatrix, seq: &PackingSequence, c: &Coloring) -> Result<bool, SolveError> {
    let n = d.n();
    let colored = c.colors.iter().filter(|&&x| x > 0).count();
    if c.len() != n || colored != n {
        return Err(SolveError::PartialColoring { colored: colored.min(n), n });
    }
    for u in 0..n {
        for v in u + 1..n {
            let i = c.colors[u];
            if i == c.colors[v] && !d.get(u, v).exceeds(seq.s(i as usize)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A witness coloring with colors in `1..=k`, or `None` if none exists.
pub fn is_k_colorable(g: &Graph, seq: &PackingSequence, k: u32) -> Result<Option<Coloring>, SolveError> {
    is_k_colorable_with(g, seq, k, &SolverConfig::default())
}

pub fn is_k_colorable_with(
    g: &Graph,
    seq: &PackingSequence,
    k: u32,
    cfg: &SolverConfig,
) -> Result<Option<Coloring>, SolveError> {
    let mut budget = Budget::new(cfg);
    let mut colors = vec![0u32; g.n()];
    for comp in g.components() {
        let mut cs = ComponentSolver::new(g, &comp, seq)?;
        let found = if let Some((value, colors)) = cs.by_diameter() {
            (value <= k).then_some(colors)
        } else if cs.lower_bound() > k {
            None
        } else {
            let greedy = cs.greedy();
            if max_color(&greedy) <= k {
                Some(greedy)
            } else {
                cs.decide(k, &mut budget).map_err(|_| SolveError::Timeout {
                    lower: 1,
                    upper: g.n() as u32,
                    nodes: budget.nodes,
                })?
            }
        };
        match found {
            Some(local) => {
                for (i, &v) in comp.iter().enumerate() {
                    colors[v] = local[i];
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Coloring::new(colors)))
}

/// `χ_S(G)` with a witness.
pub fn chi_s(g: &Graph, seq: &PackingSequence) -> Result<ChiResult, SolveError> {
    chi_s_with(g, seq, &SolverConfig::default())
}

pub fn chi_s_with(g: &Graph, seq: &PackingSequence, cfg: &SolverConfig) -> Result<ChiResult, SolveError> {
    let mut budget = Budget::new(cfg);
    let comps = g.components();
    let mut colors = vec![0u32; g.n()];
    let mut value = 0;
    let mut solvers = Vec::with_capacity(comps.len());
    for comp in &comps {
        solvers.push(ComponentSolver::new(g, comp, seq)?);
    }
    let upper_all: Vec<u32> = solvers.iter().map(|s| max_color(&s.greedy())).collect();
    for (idx, (comp, cs)) in comps.iter().zip(solvers.iter_mut()).enumerate() {
        let (k, local) = match cs.chi(&mut budget) {
            Ok(found) => found,
            Err(proven) => {
                return Err(SolveError::Timeout {
                    lower: proven.max(value),
                    upper: upper_all.iter().copied().max().unwrap_or(1),
                    nodes: budget.nodes,
                })
            }
        };
        debug_assert!(k <= upper_all[idx]);
        value = value.max(k);
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = local[i];
        }
    }
    Ok(ChiResult { value, witness: Coloring::new(colors), nodes_explored: budget.nodes })
}

/// First-fit coloring over descending degree order.
pub fn greedy_coloring(g: &Graph, seq: &PackingSequence) -> Coloring {
    let d = all_pairs_distance(g);
    let mut colors = vec![0u32; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in degree_order(g, &(0..g.n()).collect::<Vec<_>>()) {
        let i = (0..)
            .find(|&i| {
                i >= classes.len() || classes[i].iter().all(|&w| d.get(v, w).exceeds(seq.s(i + 1)))
            })
            .unwrap();
        if i == classes.len() {
            classes.push(Vec::new());
        }
        classes[i].push(v);
        colors[v] = i as u32 + 1;
    }
    Coloring::new(colors)
}

/// Number of colors of [`greedy_coloring`].
pub fn greedy_upper_bound(g: &Graph, seq: &PackingSequence) -> u32 {
    greedy_coloring(g, seq).num_colors()
}

/// Largest set of vertices pairwise within distance `s_1`. Such vertices
/// need distinct colors, so this never exceeds `χ_S`.
pub fn lower_bound(g: &Graph, seq: &PackingSequence) -> u32 {
    let d = all_pairs_distance(g);
    let s1 = seq.s(1);
    let masks: Vec<Vec<bool>> =
        (0..g.n()).map(|u| (0..g.n()).map(|v| u != v && !d.get(u, v).exceeds(s1)).collect()).collect();
    max_clique(&masks) as u32
}

/// `n - P + 1`, where `P` is the largest set of vertices pairwise farther
/// apart than `s_1`. Exact whenever `diam(G) ≤ s_2`, because then only color
/// 1 can repeat. Returns `None` when the hypothesis fails.
pub fn diameter_rule(g: &Graph, seq: &PackingSequence) -> Option<u32> {
    let d = all_pairs_distance(g);
    if d.diameter().exceeds(seq.s(2)) {
        return None;
    }
    let s1 = seq.s(1);
    let far: Vec<Vec<bool>> =
        (0..g.n()).map(|u| (0..g.n()).map(|v| u != v && d.get(u, v).exceeds(s1)).collect()).collect();
    Some((g.n() - max_clique(&far) + 1) as u32)
}

fn max_clique(adj: &[Vec<bool>]) -> usize {
    max_clique_members(adj).len()
}

fn max_clique_members(adj: &[Vec<bool>]) -> Vec<usize> {
    fn grow(adj: &[Vec<bool>], cand: Vec<usize>, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cand.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if current.len() + cand.len() - i <= best.len() {
                return;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            current.push(v);
            grow(adj, next, current, best);
            current.pop();
        }
    }
    let mut best = Vec::new();
    grow(adj, (0..adj.len()).collect(), &mut Vec::new(), &mut best);
    best
}

/// Exhaustive `χ_S` over all maps `V → [k]`, `k = 1, 2, ...`. Test oracle.
pub fn brute_force_chi(g: &Graph, seq: &PackingSequence) -> Result<u32, SolveError> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SolveError::SizeLimit { n, limit: BRUTE_FORCE_LIMIT });
    }
    let d = all_pairs_distance(g);
    for k in 1..=n as u32 {
        let mut colors = vec![1u32; n];
        loop {
            if validate_with(&d, seq, &Coloring::new(colors.clone()))? {
                return Ok(k);
            }
            let mut i = 0;
            while i < n && colors[i] == k {
                colors[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!("n distinct colors always work")
}

fn max_color(c: &[u32]) -> u32 {
    c.iter().copied().max().unwrap_or(0)
}

fn degree_order(g: &Graph, vertices: &[usize]) -> Vec<usize> {
    let mut order = vertices.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct Budget {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
}

struct OutOfBudget;

impl Budget {
    fn new(cfg: &SolverConfig) -> Self {
        Budget { nodes: 0, limit: cfg.node_budget, deadline: cfg.time_limit.map(|t| Instant::now() + t) }
    }

    fn tick(&mut self) -> Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(OutOfBudget);
        }
        if self.nodes % 4096 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(OutOfBudget);
                }
            }
        }
        Ok(())
    }
}

/// Exact search state for one connected component.
struct ComponentSolver<'s> {
    /// Local graph; vertex `i` is the `i`-th component vertex.
    local: Graph,
    dist: DistanceMatrix,
    seq: &'s PackingSequence,
    diameter: u32,
    order: Vec<usize>,
    near_cache: HashMap<u32, Vec<u128>>,
}

impl<'s> ComponentSolver<'s> {
    fn new(g: &Graph, comp: &[usize], seq: &'s PackingSequence) -> Result<Self, SolveError> {
        if comp.len() > MAX_COMPONENT {
            return Err(SolveError::SizeLimit { n: comp.len(), limit: MAX_COMPONENT });
        }
        let local = g.induced_subgraph(comp);
        let dist = all_pairs_distance(&local);
        let diameter = dist.max_finite();
        let order = degree_order(&local, &(0..local.n()).collect::<Vec<_>>());
        Ok(ComponentSolver { local, dist, seq, diameter, order, near_cache: HashMap::new() })
    }

    fn lower_bound(&self) -> u32 {
        lower_bound(&self.local, self.seq)
    }

    /// Optimal coloring when `diam ≤ s_2`: a largest set of vertices pairwise
    /// farther apart than `s_1` gets color 1, every other vertex its own color.
    fn by_diameter(&self) -> Option<(u32, Vec<u32>)> {
        if self.diameter > self.seq.s(2) {
            return None;
        }
        let n = self.local.n();
        let s1 = self.seq.s(1);
        let far: Vec<Vec<bool>> =
            (0..n).map(|u| (0..n).map(|v| u != v && self.dist.get(u, v).exceeds(s1)).collect()).collect();
        let ones = max_clique_members(&far);
        let mut colors = vec![0u32; n];
        for &v in &ones {
            colors[v] = 1;
        }
        let mut next = 2;
        for c in colors.iter_mut().filter(|c| **c == 0) {
            *c = next;
            next += 1;
        }
        Some(((n - ones.len() + 1) as u32, colors))
    }

    fn greedy(&self) -> Vec<u32> {
        greedy_coloring(&self.local, self.seq).into_inner()
    }

    /// Capped term: colors with equal capped terms are interchangeable.
    fn capped(&self, color: usize) -> u32 {
        self.seq.s(color + 1).min(self.diameter)
    }

    fn near(&mut self, threshold: u32) -> Vec<u128> {
        let dist = &self.dist;
        self.near_cache
            .entry(threshold)
            .or_insert_with(|| {
                (0..dist.n())
                    .map(|v| {
                        (0..dist.n())
                            .filter(|&w| w != v && !dist.get(v, w).exceeds(threshold))
                            .fold(0u128, |m, w| m | 1 << w)
                    })
                    .collect()
            })
            .clone()
    }

    /// Exact `χ_S` of the component. On budget exhaustion, returns the
    /// largest `k` such that fewer than `k` colors were proven insufficient.
    fn chi(&mut self, budget: &mut Budget) -> Result<(u32, Vec<u32>), u32> {
        if let Some(found) = self.by_diameter() {
            return Ok(found);
        }
        let greedy = self.greedy();
        let upper = max_color(&greedy);
        let mut k = self.lower_bound().max(1);
        while k < upper {
            match self.decide(k, budget) {
                Ok(Some(c)) => return Ok((k, c)),
                Ok(None) => k += 1,
                Err(OutOfBudget) => return Err(k),
            }
        }
        Ok((upper, greedy))
    }

    fn decide(&mut self, k: u32, budget: &mut Budget) -> Result<Option<Vec<u32>>, OutOfBudget> {
        let n = self.local.n();
        let k = (k as usize).min(n);
        let thresholds: Vec<u32> = (0..k).map(|c| self.capped(c)).collect();
        let mut near = Vec::with_capacity(k);
        let mut block_start = Vec::with_capacity(k);
        for c in 0..k {
            near.push(if c > 0 && thresholds[c] == thresholds[c - 1] {
                // shares the block of c - 1
                block_start.push(block_start[c - 1]);
                None
            } else {
                block_start.push(c);
                Some(self.near(thresholds[c]))
            });
        }
        let masks: Vec<Vec<u128>> = {
            let mut last = Vec::new();
            near.into_iter()
                .map(|m| {
                    if let Some(m) = m {
                        last = m;
                    }
                    last.clone()
                })
                .collect()
        };
        let mut state = Dfs {
            order: &self.order,
            near: masks,
            block_start,
            opened: vec![0; k],
            members: vec![0; k],
            assign: vec![0; n],
            k,
        };
        if state.run(0, budget)? {
            Ok(Some(state.assign.iter().map(|&c| c as u32 + 1).collect()))
        } else {
            Ok(None)
        }
    }
}

struct Dfs<'a> {
    order: &'a [usize],
    /// `near[c][v]`: vertices within the capped term of color `c` from `v`.
    near: Vec<Vec<u128>>,
    block_start: Vec<usize>,
    /// Colors in use per block, indexed by block start.
    opened: Vec<usize>,
    members: Vec<u128>,
    assign: Vec<usize>,
    k: usize,
}

impl Dfs<'_> {
    fn run(&mut self, pos: usize, budget: &mut Budget) -> Result<bool, OutOfBudget> {
        budget.tick()?;
        if pos == self.order.len() {
            return Ok(true);
        }
        let v = self.order[pos];
        let bit = 1u128 << v;
        let mut c = 0;
        while c < self.k {
            let start = self.block_start[c];
            let frontier = start + self.opened[start];
            if c > frontier {
                // skip the rest of this block
                c += 1;
                while c < self.k && self.block_start[c] == start {
                    c += 1;
                }
                continue;
            }
            if self.near[c][v] & self.members[c] == 0 {
                let opening = c == frontier;
                self.members[c] |= bit;
                self.assign[v] = c;
                if opening {
                    self.opened[start] += 1;
                }
                if self.run(pos + 1, budget)? {
                    return Ok(true);
                }
                if opening {
                    self.opened[start] -= 1;
                }
                self.members[c] &= !bit;
            }
            c += 1;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PackingSequence {
        s.parse().unwrap()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn validator() {
        let alt = Coloring::new(vec![1, 2, 1, 2]);
        assert!(validate_coloring(&cycle(4), &seq("1,1,const"), &alt).unwrap());
        assert!(!validate_coloring(&cycle(4), &seq("1,2,const"), &alt).unwrap());
        assert!(validate_coloring(&Graph::empty(1).unwrap(), &seq("1,inc"), &Coloring::new(vec![1])).unwrap());
        assert_eq!(
            validate_coloring(&cycle(4), &seq("1,inc"), &Coloring::new(vec![1, 0, 1, 2])),
            Err(SolveError::PartialColoring { colored: 3, n: 4 })
        );
        assert!(validate_coloring(&cycle(4), &seq("1,inc"), &Coloring::new(vec![1, 2])).is_err());
    }

    #[test]
    fn decision_examples() {
        assert_eq!(is_k_colorable(&cycle(5), &seq("1,1,const"), 2).unwrap(), None);
        let w = is_k_colorable(&path(6), &seq("1,2,2,const"), 3).unwrap().unwrap();
        assert!(validate_coloring(&path(6), &seq("1,2,2,const"), &w).unwrap());
        assert!(w.num_colors() <= 3);
        for s in ["1,1,const", "1,inc", "3,const"] {
            assert_eq!(is_k_colorable(&complete(4), &seq(s), 3).unwrap(), None);
        }
    }

    #[test]
    fn p6_pattern_is_123123() {
        let g = path(6);
        let s = seq("1,2,2,const");
        let c = Coloring::new(vec![1, 2, 3, 1, 2, 3]);
        assert!(validate_coloring(&g, &s, &c).unwrap());
        assert_eq!(chi_s(&g, &s).unwrap().value, 3);
    }

    #[test]
    fn chi_examples() {
        // Seven colors suffice: 1 on {0,3,6,9,12}, 2 on {2,7,11}, 3 on {1,13}.
        assert_eq!(chi_s(&path(14), &seq("2,3,11,const")).unwrap().value, 7);
        assert_eq!(chi_s(&path(7), &seq("2,3,11,const")).unwrap().value, 4);
        assert_eq!(chi_s(&cycle(7), &seq("2,const")).unwrap().value, 4);
        assert_eq!(chi_s(&Graph::empty(1).unwrap(), &seq("1,inc")).unwrap().value, 1);
        assert_eq!(chi_s(&cycle(5), &seq("1,2,2,const")).unwrap().value, 4);
        assert_eq!(chi_s(&path(5), &seq("1,2,2,const")).unwrap().value, 3);
    }

    #[test]
    fn disconnected_takes_max_over_components() {
        // C_5 plus a disjoint edge.
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6)]).unwrap();
        let r = chi_s(&g, &seq("1,1,const")).unwrap();
        assert_eq!(r.value, 3);
        assert!(validate_coloring(&g, &seq("1,1,const"), &r.witness).unwrap());
        assert_eq!(chi_s(&Graph::empty(4).unwrap(), &seq("5,const")).unwrap().value, 1);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_chi(&path(3), &seq("1,1,const")).unwrap(), 2);
        for s in ["1,1,const", "2,inc", "4,const"] {
            assert_eq!(brute_force_chi(&complete(3), &seq(s)).unwrap(), 3);
        }
        assert_eq!(brute_force_chi(&path(9), &seq("1,inc")), Err(SolveError::SizeLimit { n: 9, limit: 8 }));
    }

    #[test]
    fn greedy_bounds() {
        for n in 1..7 {
            assert_eq!(greedy_upper_bound(&complete(n), &seq("1,inc")), n as u32);
        }
        assert!(greedy_upper_bound(&cycle(6), &seq("1,1,const")) <= 3);
        let g = path(14);
        let s = seq("2,3,11,const");
        let c = greedy_coloring(&g, &s);
        assert!(validate_coloring(&g, &s, &c).unwrap());
        assert!(c.num_colors() >= 7);
    }

    #[test]
    fn lower_bound_is_clique_in_distance_power() {
        assert_eq!(lower_bound(&path(14), &seq("2,3,11,const")), 3);
        assert_eq!(lower_bound(&cycle(9), &seq("4,const")), 9);
        assert_eq!(lower_bound(&Graph::empty(3).unwrap(), &seq("7,const")), 1);
    }

    #[test]
    fn diameter_rule_on_stars_and_cliques() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        for s in ["1,2,const", "1,inc", "1,5,const"] {
            let s = seq(s);
            assert_eq!(diameter_rule(&star, &s), Some(2));
            assert_eq!(chi_s(&star, &s).unwrap().value, 2);
        }
        assert_eq!(diameter_rule(&complete(5), &seq("1,1,const")), Some(5));
        assert_eq!(diameter_rule(&path(5), &seq("1,2,const")), None);
    }

    #[test]
    fn timeout_is_reported() {
        let cfg = SolverConfig { node_budget: 10, time_limit: None };
        match chi_s_with(&path(14), &seq("2,3,11,const"), &cfg) {
            Err(SolveError::Timeout { lower, upper, .. }) => {
                assert!(lower >= 3 && lower <= 7);
                assert!(upper >= 7);
            }
            other => panic!("expected timeout, got {other:?}"),
        }
    }
}
