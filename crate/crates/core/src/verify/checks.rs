use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{
    enumerate_graphs, enumerate_trees, find_k_in, key, keys, CheckInfo, CheckParams, Counterexample, TheoremCheck,
    Verdict, VerifyError, VerifyOptions, ENUM_LIMIT,
};
use crate::critical::{
    critical_given_chi, critical_verdict, double_coloring, vertex_critical_given_chi, CriticalError, Refinement,
};
use crate::families::{in_c_s4, is_diameter_k_critical, FamilySpec};
use crate::graph::{
    all_pairs_distance, emit_graph6, girth, w_partition, w_partition_after_removal, Edge, Girth, Graph,
    GraphError,
};
use crate::sequence::{PackingSequence, SequencePattern};
use crate::solver::{chi_s_with, greedy_coloring, validate_coloring, Coloring, SolveError};

pub(super) const REGISTRY: &[CheckInfo] = &[
    CheckInfo { id: "obs.1critical", summary: "K_1 is the only 1-critical graph" },
    CheckInfo { id: "prop.2critical", summary: "K_2 is the only 2-critical graph" },
    CheckInfo { id: "prop.s222", summary: "4-vertex-critical graphs for (2,2,2,...)" },
    CheckInfo { id: "manycases.i", summary: "3-critical graphs for s1=s2=1" },
    CheckInfo { id: "manycases.ii", summary: "3-critical graphs for s1=1, s2>=2" },
    CheckInfo { id: "manycases.iii", summary: "3-critical graphs for s1>=2" },
    CheckInfo { id: "manycases.iv", summary: "4-critical graphs for (2,2,2,...)" },
    CheckInfo { id: "manycases.v", summary: "4-critical graphs for s1=s2=2, s3>=3" },
    CheckInfo { id: "manycases.vi", summary: "4-critical graphs for s1=2, s2>=3" },
    CheckInfo { id: "manycases.vii", summary: "4-critical graphs for s1>=3" },
    CheckInfo { id: "smallcases.i", summary: "4-critical graphs for (1,3,3,...)" },
    CheckInfo { id: "smallcases.ii", summary: "4-critical graphs for s1=1, s2=3, s3>=4" },
    CheckInfo { id: "smallcases.iii", summary: "4-critical graphs for s1=1, s2>=4" },
    CheckInfo { id: "cyclessmall.i", summary: "C_n is not critical when n <= s1+1" },
    CheckInfo { id: "cyclessmall.ii", summary: "C_n is critical when s1+2 <= n <= 2s1+1" },
    CheckInfo { id: "cycles1big.i", summary: "s1=1, n <= s2+2: C_n critical iff n odd" },
    CheckInfo { id: "cycles1big.ii", summary: "s1=1, s2+3 <= n <= 2s2+1: C_n critical" },
    CheckInfo { id: "cycles1small.i", summary: "s1=s2=1: C_n critical iff n odd" },
    CheckInfo { id: "cycles1small.ii", summary: "(1,2,2,...): C_n critical iff n in {3,5}" },
    CheckInfo { id: "cycles1small.iii", summary: "s1=1, s2>=2, s3=3: C_n critical iff 4 does not divide n" },
    CheckInfo { id: "cycles.distance", summary: "distance colorings of cycles: closed form and criticality" },
    CheckInfo { id: "lemma.wsets", summary: "W-sets of an edge survive its deletion" },
    CheckInfo { id: "edgebound.i", summary: "2 chi(G-e) >= chi(G)" },
    CheckInfo { id: "edgebound.ii", summary: "2 chi(G-e) >= chi(G)+1 for s1=1, s2<=2" },
    CheckInfo { id: "edgebound.iii", summary: "2 chi(G-e) >= chi(G)+1 for (2,2,2,...) when chi(G-e)>=3" },
    CheckInfo { id: "edgebound.cut", summary: "2 chi(G-e) >= chi(G)+1 for cut edges when s2<=2" },
    CheckInfo { id: "doubling", summary: "the recoloring of G-e is a valid coloring of G within the bound" },
    CheckInfo { id: "sharpness", summary: "the gadgets attain the edge-removal bounds" },
    CheckInfo { id: "sharpness.p14", summary: "P_14 and its middle edge under (2,3,11,...)" },
    CheckInfo { id: "prop.trees", summary: "trees: critical iff vertex-critical" },
    CheckInfo { id: "prop.diamcritical", summary: "diameter k-critical graphs are critical for s1=k" },
    CheckInfo { id: "cor.girth", summary: "diam k and girth >= k+2 give diameter k-critical and critical" },
    CheckInfo { id: "lemma.connected", summary: "critical graphs are connected" },
    CheckInfo { id: "lemma.vertexcritical", summary: "critical graphs are vertex-critical" },
];

/// Sequences used where a check quantifies over all of `S`.
const GENERAL_SEQS: &[&str] =
    &["1,const", "1,inc", "1,2,2,const", "2,2,2,const", "2,3,const", "3,const", "1,3,3,const"];
/// The seven sequences of the edge-removal checks.
const EDGE_SEQS: &[&str] =
    &["1,1,const", "1,2,const", "1,2,3,inc", "2,2,const", "1,3,const", "2,5,const", "3,3,const"];
const TREE_SEQS: &[&str] = &[
    "1,1,const",
    "1,2,2,const",
    "1,inc",
    "2,2,const",
    "2,3,const",
    "3,const",
    "1,3,3,const",
    "1,3,4,const",
];

enum Reps {
    Pattern(&'static str),
    List(&'static [&'static str]),
}

/// The class a check is about and the sequences it runs by default.
struct Class {
    membership: &'static str,
    reps: Reps,
}

fn sequences(id: &str, class: &Class, opts: &VerifyOptions) -> Result<Vec<PackingSequence>, VerifyError> {
    let pattern: SequencePattern = class.membership.parse()?;
    let depth = pattern.constraints().len();
    let seqs = match &opts.sequences {
        Some(s) => s.clone(),
        None => match class.reps {
            Reps::Pattern(p) => {
                let p: SequencePattern = p.parse()?;
                p.representatives(p.constraints().len() + 1)?
            }
            Reps::List(list) => parse_all(list),
        },
    };
    if let Some(bad) = seqs.iter().find(|s| !pattern.matches(s, depth)) {
        return Err(VerifyError::OutsideClass { id: id.to_string(), sequence: bad.to_string() });
    }
    Ok(seqs)
}

fn parse_all(list: &[&str]) -> Vec<PackingSequence> {
    list.iter().map(|s| s.parse().expect("built-in sequence parses")).collect()
}

fn seq_names(seqs: &[PackingSequence]) -> Vec<String> {
    seqs.iter().map(ToString::to_string).collect()
}

enum Outcome {
    Holds,
    Violated(Counterexample),
    Skipped(String),
}

fn violation(g: &Graph, seq: &PackingSequence, detail: String) -> Outcome {
    Outcome::Violated(Counterexample {
        graph6: emit_graph6(g),
        sequence: seq.to_string(),
        detail,
        colorings: Vec::new(),
    })
}

fn skipped(g: &Graph, seq: &PackingSequence, err: impl std::fmt::Display) -> Outcome {
    Outcome::Skipped(format!("{} under {}: {}", emit_graph6(g), seq, err))
}

struct Tally {
    checked: usize,
    violation: Option<Counterexample>,
    skipped: Vec<String>,
}

/// Evaluates `f` on every item in parallel; keeps the first violation in
/// item order.
fn tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Outcome + Sync + Send) -> Tally {
    let outcomes: Vec<Outcome> = items.par_iter().map(f).collect();
    let mut t = Tally { checked: items.len(), violation: None, skipped: Vec::new() };
    for o in outcomes {
        match o {
            Outcome::Holds => {}
            Outcome::Violated(c) => {
                if t.violation.is_none() {
                    t.violation = Some(c);
                }
            }
            Outcome::Skipped(s) => t.skipped.push(s),
        }
    }
    t
}

fn finish(
    id: &str,
    params: CheckParams,
    expected: String,
    observed: String,
    counterexample: Option<Counterexample>,
    skipped: Vec<String>,
) -> TheoremCheck {
    let verdict = if counterexample.is_some() {
        Verdict::Fail
    } else if !skipped.is_empty() {
        Verdict::Skipped
    } else {
        Verdict::Pass
    };
    TheoremCheck { id: id.to_string(), verdict, params, expected, observed, counterexample, skipped }
}

fn finish_tally(id: &str, params: CheckParams, expected: &str, t: Tally) -> TheoremCheck {
    let bad = usize::from(t.violation.is_some());
    let observed = format!("{} instances, {} with a violation, {} skipped", t.checked, bad, t.skipped.len());
    finish(id, params, expected.to_string(), observed, t.violation, t.skipped)
}

/// Graphs on at most `n_max` vertices: the internal enumeration up to
/// [`ENUM_LIMIT`] and corpus graphs above it. Also returns the keys of the
/// corpus graphs that were used.
fn universe(
    n_max: usize,
    connected: bool,
    opts: &VerifyOptions,
) -> Result<(Vec<Graph>, HashSet<Vec<u8>>), VerifyError> {
    if n_max > ENUM_LIMIT && opts.corpus.is_none() {
        return Err(GraphError::SizeLimit { n: n_max, limit: ENUM_LIMIT }.into());
    }
    let mut out = Vec::new();
    for n in 1..=n_max.min(ENUM_LIMIT) {
        out.extend(enumerate_graphs(n)?.iter().filter(|g| !connected || g.is_connected()).cloned());
    }
    let mut big = HashSet::new();
    if let Some(corpus) = &opts.corpus {
        for g in corpus.iter() {
            let wanted = g.n() > ENUM_LIMIT && g.n() <= n_max.min(64) && (!connected || g.is_connected());
            if wanted && big.insert(key(g)) {
                out.push(g.clone());
            }
        }
    }
    Ok((out, big))
}

pub(super) fn run(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    use FamilySpec as F;
    let general = || Class { membership: ">=1", reps: Reps::List(GENERAL_SEQS) };
    let pat = |p: &'static str| Class { membership: p, reps: Reps::Pattern(p) };
    match id {
        "obs.1critical" => classification(
            &Classification {
                id,
                class: general(),
                k: 1,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Complete(1)],
                expected_text: "{K_1}",
            },
            opts,
        ),
        "prop.2critical" => classification(
            &Classification {
                id,
                class: general(),
                k: 2,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Path(2)],
                expected_text: "{K_2}",
            },
            opts,
        ),
        "prop.s222" => classification(
            &Classification {
                id,
                class: pat("2,2,2"),
                k: 4,
                vertex: true,
                n_max: 7,
                expected: |n_max, _| {
                    let mut v = vec![F::Star(3), F::Z1, F::Diamond, F::Complete(4)];
                    v.extend((4..=n_max).filter(|n| n % 3 != 0).map(F::Cycle));
                    v
                },
                expected_text: "{K_{1,3}, Z_1, K_4-e, K_4} + {C_n: n >= 4, 3 does not divide n} (vertex-critical)",
            },
            opts,
        ),
        "manycases.i" => classification(
            &Classification {
                id,
                class: pat("1,1"),
                k: 3,
                vertex: false,
                n_max: 7,
                expected: |n_max, _| (3..=n_max).step_by(2).map(F::Cycle).collect(),
                expected_text: "{C_{2k+1}: k >= 1}",
            },
            opts,
        ),
        "manycases.ii" => classification(
            &Classification {
                id,
                class: pat("1,>=2"),
                k: 3,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Cycle(3), F::Path(4)],
                expected_text: "{C_3, P_4}",
            },
            opts,
        ),
        "manycases.iii" => classification(
            &Classification {
                id,
                class: pat(">=2"),
                k: 3,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Path(3)],
                expected_text: "{P_3}",
            },
            opts,
        ),
        "manycases.iv" => classification(
            &Classification {
                id,
                class: pat("2,2,2"),
                k: 4,
                vertex: false,
                n_max: 7,
                expected: |n_max, _| {
                    let mut v = vec![F::Star(3)];
                    v.extend((4..=n_max).filter(|n| n % 3 != 0).map(F::Cycle));
                    v
                },
                expected_text: "{K_{1,3}} + {C_n: n >= 4, 3 does not divide n}",
            },
            opts,
        ),
        "manycases.v" => classification(
            &Classification {
                id,
                class: pat("2,2,>=3"),
                k: 4,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Star(3), F::Cycle(4), F::Path(6)],
                expected_text: "{K_{1,3}, C_4, P_6}",
            },
            opts,
        ),
        "manycases.vi" => classification(
            &Classification {
                id,
                class: pat("2,>=3"),
                k: 4,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Star(3), F::Cycle(4), F::Path(5)],
                expected_text: "{K_{1,3}, C_4, P_5}",
            },
            opts,
        ),
        "manycases.vii" => classification(
            &Classification {
                id,
                class: pat(">=3"),
                k: 4,
                vertex: false,
                n_max: 7,
                expected: |_, _| vec![F::Star(3), F::Path(4)],
                expected_text: "{K_{1,3}, P_4}",
            },
            opts,
        ),
        "smallcases.i" => classification(
            &Classification {
                id,
                class: pat("1,3,3"),
                k: 4,
                vertex: false,
                n_max: 8,
                expected: |n_max, seq| {
                    let mut v = vec![F::Complete(4), F::Sporadic(1), F::Sporadic(2)];
                    v.extend((5..=n_max).filter(|&n| in_c_s4(n, seq.s(4))).map(F::Cycle));
                    v.extend((6..).step_by(2).take_while(|o| o + 2 <= n_max).map(F::X));
                    v
                },
                expected_text: "{K_4, G_1, G_2} + C_{s_4} + {X_{2k}: k >= 3}",
            },
            opts,
        ),
        "smallcases.ii" => classification(
            &Classification {
                id,
                class: pat("1,3,>=4"),
                k: 4,
                vertex: false,
                n_max: 8,
                expected: |_, _| {
                    let mut v = vec![F::Complete(4), F::Cycle(5), F::Cycle(6), F::Path(8)];
                    v.extend((1..=7).map(F::Sporadic));
                    v
                },
                expected_text: "{K_4, C_5, C_6, P_8, G_1, ..., G_7}",
            },
            opts,
        ),
        "smallcases.iii" => classification(
            &Classification {
                id,
                class: pat("1,>=4"),
                k: 4,
                vertex: false,
                n_max: 6,
                expected: |_, _| vec![F::Complete(4), F::Cycle(5), F::Path(6), F::Sporadic(8)],
                expected_text: "{K_4, C_5, P_6, G_8}",
            },
            opts,
        ),
        "cyclessmall.i" => cycles(
            &CycleCheck {
                id,
                class: Class { membership: ">=1", reps: Reps::List(CYCLE_SMALL_SEQS) },
                predicate: |n, s| (n as u32 <= s.s(1) + 1).then_some(false),
                expected_text: "C_n not critical for n <= s_1 + 1",
            },
            opts,
        ),
        "cyclessmall.ii" => cycles(
            &CycleCheck {
                id,
                class: Class { membership: ">=1", reps: Reps::List(CYCLE_SMALL_SEQS) },
                predicate: |n, s| {
                    let n = n as u32;
                    (s.s(1) + 2 <= n && n <= 2 * s.s(1) + 1).then_some(true)
                },
                expected_text: "C_n critical for s_1 + 2 <= n <= 2 s_1 + 1",
            },
            opts,
        ),
        "cycles1big.i" => cycles(
            &CycleCheck {
                id,
                class: Class { membership: "1", reps: Reps::List(CYCLE_BIG_SEQS) },
                predicate: |n, s| (n as u32 <= s.s(2) + 2).then_some(n % 2 == 1),
                expected_text: "for n <= s_2 + 2: C_n critical iff n odd",
            },
            opts,
        ),
        "cycles1big.ii" => cycles(
            &CycleCheck {
                id,
                class: Class { membership: "1", reps: Reps::List(CYCLE_BIG_SEQS) },
                predicate: |n, s| {
                    let n = n as u32;
                    (s.s(2) + 3 <= n && n <= 2 * s.s(2) + 1).then_some(true)
                },
                expected_text: "C_n critical for s_2 + 3 <= n <= 2 s_2 + 1",
            },
            opts,
        ),
        "cycles1small.i" => cycles(
            &CycleCheck { id, class: pat("1,1"), predicate: |n, _| Some(n % 2 == 1), expected_text: "C_n critical iff n odd" },
            opts,
        ),
        "cycles1small.ii" => cycles(
            &CycleCheck {
                id,
                class: pat("1,2,2"),
                predicate: |n, _| Some(n == 3 || n == 5),
                expected_text: "C_n critical iff n in {3, 5}",
            },
            opts,
        ),
        "cycles1small.iii" => cycles(
            &CycleCheck {
                id,
                class: pat("1,>=2,3"),
                predicate: |n, _| Some(n % 4 != 0),
                expected_text: "C_n critical iff 4 does not divide n",
            },
            opts,
        ),
        "cycles.distance" => distance_cycles(id, opts),
        "lemma.wsets" => wsets(id, opts),
        "edgebound.i" => edge_bound(id, None, opts),
        "edgebound.ii" => edge_bound(id, Some(Refinement::SmallStart), opts),
        "edgebound.iii" => edge_bound(id, Some(Refinement::AllTwos), opts),
        "edgebound.cut" => edge_bound(id, Some(Refinement::CutEdge), opts),
        "doubling" => doubling(id, opts),
        "sharpness" => sharpness(id, opts),
        "sharpness.p14" => sharpness_p14(id, opts),
        "prop.trees" => trees(id, opts),
        "prop.diamcritical" => diameter_critical(id, opts),
        "cor.girth" => girth_check(id, opts),
        "lemma.connected" => lemma_connected(id, opts),
        "lemma.vertexcritical" => lemma_vertex_critical(id, opts),
        _ => Err(VerifyError::UnknownTheorem(id.to_string())),
    }
}

struct Classification<'a> {
    id: &'a str,
    class: Class,
    k: u32,
    vertex: bool,
    n_max: usize,
    expected: fn(usize, &PackingSequence) -> Vec<FamilySpec>,
    expected_text: &'static str,
}

fn classification(c: &Classification, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(c.n_max);
    let seqs = sequences(c.id, &c.class, opts)?;
    let (graphs, big) = universe(n_max, true, opts)?;
    let mut observed = Vec::new();
    let mut counterexample = None;
    let mut skipped = Vec::new();
    for seq in &seqs {
        let mut names: HashMap<Vec<u8>, String> = HashMap::new();
        let mut expected = HashSet::new();
        for spec in (c.expected)(n_max, seq) {
            let g = spec.generate()?;
            if g.n() > n_max {
                continue;
            }
            let k = key(&g);
            if g.n() > ENUM_LIMIT && !big.contains(&k) {
                continue;
            }
            names.entry(k.clone()).or_insert_with(|| spec.to_string());
            expected.insert(k);
        }
        let search = find_k_in(&graphs, seq, c.k, c.vertex, &opts.solver);
        skipped.extend(search.skipped.iter().map(|g| format!("{} under {}", emit_graph6(g), seq)));
        let found = keys(&search.found);
        let mut labels: Vec<String> = search
            .found
            .iter()
            .map(|g| names.get(&key(g)).cloned().unwrap_or_else(|| format!("g6:{}", emit_graph6(g))))
            .collect();
        labels.sort();
        observed.push(format!("{}: {{{}}}", seq, labels.join(", ")));
        if counterexample.is_none() {
            let kind = if c.vertex { "vertex-critical" } else { "critical" };
            if let Some(g) = search.found.iter().find(|g| !expected.contains(&key(g))) {
                counterexample = Some(Counterexample {
                    graph6: emit_graph6(g),
                    sequence: seq.to_string(),
                    detail: format!("{}-{} but not predicted", c.k, kind),
                    colorings: Vec::new(),
                });
            } else if let Some(k) = expected.iter().find(|k| !found.contains(*k)) {
                let name = &names[k];
                let skipped_it = search.skipped.iter().any(|g| &key(g) == k);
                if !skipped_it {
                    counterexample = Some(Counterexample {
                        graph6: String::from_utf8(k.clone()).expect("graph6 is ASCII"),
                        sequence: seq.to_string(),
                        detail: format!("{name} predicted {}-{} but not found", c.k, kind),
                        colorings: Vec::new(),
                    });
                }
            }
        }
    }
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: seq_names(&seqs) };
    let expected = format!("{} restricted to n <= {}", c.expected_text, n_max);
    Ok(finish(c.id, params, expected, observed.join("; "), counterexample, skipped))
}

const CYCLE_SMALL_SEQS: &[&str] = &["2,const", "3,inc", "5,const", "8,8,9,const", "11,inc", "23,const"];
const CYCLE_BIG_SEQS: &[&str] =
    &["1,1,const", "1,2,const", "1,3,inc", "1,5,const", "1,8,9,const", "1,11,const", "1,22,const"];

struct CycleCheck<'a> {
    id: &'a str,
    class: Class,
    /// Predicted criticality of `C_n`, or `None` outside the claim's range.
    predicate: fn(usize, &PackingSequence) -> Option<bool>,
    expected_text: &'static str,
}

fn cycle(n: usize) -> Graph {
    FamilySpec::Cycle(n).generate().expect("n >= 3")
}

fn cycles(c: &CycleCheck, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let (lo, hi) = opts.n_range.unwrap_or((3, 24));
    let seqs = sequences(c.id, &c.class, opts)?;
    let items: Vec<(usize, usize, bool)> = seqs
        .iter()
        .enumerate()
        .flat_map(|(i, s)| (lo.max(3)..=hi).filter_map(move |n| (c.predicate)(n, s).map(|want| (i, n, want))))
        .collect();
    let results: Vec<Result<bool, SolveError>> =
        items.par_iter().map(|&(i, n, _)| critical_verdict(&cycle(n), &seqs[i], &opts.solver)).collect();
    let mut counterexample = None;
    let mut skipped = Vec::new();
    let mut critical: Vec<Vec<usize>> = vec![Vec::new(); seqs.len()];
    let mut tested: Vec<usize> = vec![0; seqs.len()];
    for (&(i, n, want), r) in items.iter().zip(results) {
        tested[i] += 1;
        match r {
            Ok(got) => {
                if got {
                    critical[i].push(n);
                }
                if got != want && counterexample.is_none() {
                    let g = cycle(n);
                    counterexample = Some(Counterexample {
                        graph6: emit_graph6(&g),
                        sequence: seqs[i].to_string(),
                        detail: format!("C_{n}: predicted critical={want}, observed {got}"),
                        colorings: Vec::new(),
                    });
                }
            }
            Err(e) => skipped.push(format!("C_{n} under {}: {e}", seqs[i])),
        }
    }
    let observed = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{s}: {} lengths tested, critical {:?}", tested[i], critical[i]))
        .collect::<Vec<_>>()
        .join("; ");
    let params = CheckParams { n_max: None, n_range: Some((lo, hi)), representatives: seq_names(&seqs) };
    Ok(finish(c.id, params, c.expected_text.to_string(), observed, counterexample, skipped))
}

/// `χ_k(C_n) = k + 1 + ⌈r / ℓ⌉` with `n = ℓ (k + 1) + r`, `0 ≤ r ≤ k`.
pub(crate) fn distance_chi_cycle(k: u32, n: usize) -> u32 {
    let (k1, n) = (k as usize + 1, n);
    let (l, r) = (n / k1, n % k1);
    (k1 + r.div_ceil(l)) as u32
}

fn distance_cycles(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let seqs: Vec<PackingSequence> = match &opts.sequences {
        Some(s) => s.clone(),
        None => (1..=4).map(PackingSequence::constant).collect(),
    };
    for s in &seqs {
        let constant = s.tail() == crate::sequence::Tail::Const && s.prefix().iter().all(|&x| x == s.s(1));
        if !constant {
            return Err(VerifyError::OutsideClass { id: id.to_string(), sequence: s.to_string() });
        }
    }
    let (lo, hi) = opts.n_range.unwrap_or((1, 30));
    let items: Vec<(PackingSequence, usize)> = seqs
        .iter()
        .flat_map(|s| (lo.max(3).max(s.s(1) as usize + 1)..=hi).map(move |n| (s.clone(), n)))
        .collect();
    let t = tally(&items, |(s, n)| {
        let g = cycle(*n);
        let k = s.s(1);
        let chi = match chi_s_with(&g, s, &opts.solver) {
            Ok(r) => r.value,
            Err(e) => return skipped(&g, s, e),
        };
        let want = distance_chi_cycle(k, *n);
        if chi != want {
            return violation(&g, s, format!("chi(C_{n}) = {chi}, closed form gives {want}"));
        }
        match critical_given_chi(&g, s, chi, &opts.solver) {
            Ok(c) if c == (n % (k as usize + 1) != 0) => Outcome::Holds,
            Ok(c) => violation(&g, s, format!("C_{n} critical={c}, predicted {}", !c)),
            Err(e) => skipped(&g, s, e),
        }
    });
    let params = CheckParams { n_max: None, n_range: Some((lo, hi)), representatives: seq_names(&seqs) };
    Ok(finish_tally(
        id,
        params,
        "chi_k(C_n) = k+1+ceil(r/l) and C_n critical iff n is not divisible by k+1, for n >= k+1",
        t,
    ))
}

fn wsets(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(7);
    let (graphs, _) = universe(n_max, true, opts)?;
    let dummy: PackingSequence = "1,const".parse().expect("valid");
    let t = tally(&graphs, |g| {
        for (u, v) in g.edges() {
            let a = w_partition(g, (u, v)).expect("edge");
            let b = w_partition_after_removal(g, (u, v)).expect("edge");
            if a.w_uv != b.w_uv || a.w_vu != b.w_vu {
                return violation(g, &dummy, format!("W-sets of {u}-{v} change on deletion"));
            }
        }
        Outcome::Holds
    });
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: Vec::new() };
    let mut check = finish_tally(id, params, "W_uv and W_vu equal in G and G-e for every edge", t);
    if let Some(c) = check.counterexample.as_mut() {
        c.sequence.clear();
    }
    Ok(check)
}

fn graph_seq_items(graphs: &[Graph], seqs: &[PackingSequence]) -> Vec<(usize, usize)> {
    (0..graphs.len()).flat_map(|g| (0..seqs.len()).map(move |s| (g, s))).collect()
}

fn edge_bound(id: &str, refinement: Option<Refinement>, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(6);
    let seqs = sequences(id, &Class { membership: ">=1", reps: Reps::List(EDGE_SEQS) }, opts)?;
    let (graphs, _) = universe(n_max, true, opts)?;
    let items = graph_seq_items(&graphs, &seqs);
    let t = tally(&items, |&(gi, si)| {
        let (g, s) = (&graphs[gi], &seqs[si]);
        let report = match crate::critical::check_edge_bound_with(g, s, &opts.solver) {
            Ok(r) => r,
            Err(e) => return skipped(g, s, e),
        };
        for b in &report.edges {
            let need = match refinement {
                None => report.chi,
                Some(r) if b.refinements.contains(&r) => report.chi + 1,
                Some(_) => continue,
            };
            if 2 * b.chi_minus < need {
                let (u, v) = b.edge;
                return violation(
                    g,
                    s,
                    format!("edge {u}-{v}: chi(G) = {}, chi(G-e) = {}", report.chi, b.chi_minus),
                );
            }
        }
        Outcome::Holds
    });
    let expected = match refinement {
        None => "2 chi(G-e) >= chi(G) for every edge",
        Some(Refinement::SmallStart) => "2 chi(G-e) >= chi(G)+1 when s1=1, s2<=2 and a component has >= 3 vertices",
        Some(Refinement::AllTwos) => "2 chi(G-e) >= chi(G)+1 when s1=s2=s3=2 and chi(G-e) >= 3",
        Some(Refinement::CutEdge) => "2 chi(G-e) >= chi(G)+1 when s2<=2, e is a cut edge and chi(G-e) >= 2",
    };
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: seq_names(&seqs) };
    Ok(finish_tally(id, params, expected, t))
}

fn doubling(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(6);
    let seqs = sequences(id, &Class { membership: ">=1", reps: Reps::List(EDGE_SEQS) }, opts)?;
    let (graphs, _) = universe(n_max, true, opts)?;
    let items = graph_seq_items(&graphs, &seqs);
    let t = tally(&items, |&(gi, si)| {
        let (g, s) = (&graphs[gi], &seqs[si]);
        for (u, v) in g.edges() {
            let h = g.delete_edge(u, v).expect("edge");
            let best = match chi_s_with(&h, s, &opts.solver) {
                Ok(r) => r,
                Err(e) => return skipped(g, s, e),
            };
            let refined = !Refinement::applicable(g, s, (u, v), best.value).expect("edge").is_empty();
            for input in [best.witness.clone(), greedy_coloring(&h, s)] {
                if let Some(o) = doubling_instance(g, s, (u, v), &input, refined) {
                    return o;
                }
            }
        }
        Outcome::Holds
    });
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: seq_names(&seqs) };
    Ok(finish_tally(
        id,
        params,
        "output valid on G with at most 2k' colors (2k'-1 under a refinement), a cover vertex always exists",
        t,
    ))
}

fn doubling_instance(g: &Graph, s: &PackingSequence, e: Edge, input: &Coloring, refined: bool) -> Option<Outcome> {
    let with_colorings = |detail: String, out: Option<&Coloring>| {
        let mut colorings = vec![input.clone()];
        colorings.extend(out.cloned());
        Outcome::Violated(Counterexample { graph6: emit_graph6(g), sequence: s.to_string(), detail, colorings })
    };
    let d = match double_coloring(g, e, s, input) {
        Ok(d) => d,
        Err(CriticalError::ClaimViolation { color, pairs }) => {
            return Some(with_colorings(format!("edge {e:?}: no cover for color {color}, pairs {pairs:?}"), None))
        }
        Err(other) => return Some(with_colorings(format!("edge {e:?}: {other}"), None)),
    };
    let k = d.input_colors;
    let limit = if refined { 2 * k - 1 } else { 2 * k };
    if !validate_coloring(g, s, &d.coloring).expect("complete coloring") {
        return Some(with_colorings(format!("edge {e:?}: output is not a valid coloring"), Some(&d.coloring)));
    }
    if d.coloring.num_colors() > limit {
        let used = d.coloring.num_colors();
        return Some(with_colorings(format!("edge {e:?}: {used} colors, limit {limit}"), Some(&d.coloring)));
    }
    None
}

struct Gadget {
    name: String,
    graph: Graph,
    seq: PackingSequence,
    edge: Edge,
    chi: u32,
    chi_minus: u32,
}

fn gadget(spec: &str, seq: &str, edge: Option<Edge>, chi: u32, chi_minus: u32) -> Result<Gadget, VerifyError> {
    let f: FamilySpec = spec.parse()?;
    let graph = f.generate()?;
    let edge = match edge {
        Some(e) => e,
        None => f.distinguished_edge()?.expect("gadget has a distinguished edge"),
    };
    let seq = seq.parse()?;
    Ok(Gadget { name: spec.to_string(), graph, seq, edge, chi, chi_minus })
}

fn sharpness_p14(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let gadgets = vec![
        gadget("path:14", "2,3,11,const", Some((6, 7)), 8, 4)?,
        gadget("path:14", "2,3,11,inc", Some((6, 7)), 8, 4)?,
    ];
    let reps = vec!["2,3,11,const".into(), "2,3,11,inc".into()];
    gadget_check(id, gadgets, reps, "chi(P_14) = 8 and chi(P_14 - middle edge) = 4", opts)
}

fn sharpness(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let mut gadgets = vec![
        gadget("star_bridge:3", "1,3,const", None, 4, 2)?,
        gadget("star_bridge:4", "1,3,const", None, 4, 2)?,
        gadget("clique_path:2", "2,5,const", None, 6, 3)?,
        gadget("clique_path:3", "2,5,const", None, 8, 4)?,
        gadget("cycle:5", "1,1,const", Some((0, 1)), 3, 2)?,
        gadget("cycle:7", "1,1,const", Some((0, 1)), 3, 2)?,
    ];
    for m in 3..=5u32 {
        let h = format!("complete:{m}");
        gadgets.push(gadget(&format!("universal_double:{h}"), "3,3,const", None, 2 * m, m)?);
        gadgets.push(gadget(&format!("non_cut:{h}"), "3,3,const", None, 2 * m + 2, m + 2)?);
    }
    // Two copies of K_{1,3} joined at their centers.
    let centers = Graph::from_edges(8, &[(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7), (0, 4)])?;
    gadgets.push(Gadget {
        name: "star centers joined".into(),
        graph: centers,
        seq: "1,2,const".parse()?,
        edge: (0, 4),
        chi: 3,
        chi_minus: 2,
    });
    let reps = vec!["1,1,const".into(), "1,2,const".into(), "1,3,const".into(), "2,5,const".into(), "3,3,const".into()];
    gadget_check(
        id,
        gadgets,
        reps,
        "each gadget attains its predicted chi(G)/chi(G-e); non_cut ratios decrease with n(H)",
        opts,
    )
}

fn gadget_check(
    id: &str,
    gadgets: Vec<Gadget>,
    representatives: Vec<String>,
    expected: &str,
    opts: &VerifyOptions,
) -> Result<TheoremCheck, VerifyError> {
    let results: Vec<Result<(u32, u32, Coloring), SolveError>> = gadgets
        .par_iter()
        .map(|gd| {
            let full = chi_s_with(&gd.graph, &gd.seq, &opts.solver)?;
            let h = gd.graph.delete_edge(gd.edge.0, gd.edge.1).expect("gadget edge");
            Ok((full.value, chi_s_with(&h, &gd.seq, &opts.solver)?.value, full.witness))
        })
        .collect();
    let mut observed = Vec::new();
    let mut counterexample = None;
    let mut skipped = Vec::new();
    let mut non_cut_ratios = Vec::new();
    for (gd, r) in gadgets.iter().zip(results) {
        match r {
            Ok((chi, chi_minus, witness)) => {
                observed.push(format!("{} {}: {}/{}", gd.name, gd.seq, chi, chi_minus));
                if gd.name.starts_with("non_cut") {
                    non_cut_ratios.push((chi_minus, chi));
                }
                if (chi, chi_minus) != (gd.chi, gd.chi_minus) && counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        graph6: emit_graph6(&gd.graph),
                        sequence: gd.seq.to_string(),
                        detail: format!(
                            "{}: chi/chi(G-e) = {}/{}, predicted {}/{}",
                            gd.name, chi, chi_minus, gd.chi, gd.chi_minus
                        ),
                        colorings: vec![witness],
                    });
                }
            }
            Err(e) => skipped.push(format!("{} under {}: {e}", gd.name, gd.seq)),
        }
    }
    // chi(G-e)/chi(G) must decrease strictly along non_cut(K_3), non_cut(K_4), non_cut(K_5).
    let decreasing = non_cut_ratios.windows(2).all(|w| (w[1].0 as u64) * (w[0].1 as u64) < (w[0].0 as u64) * (w[1].1 as u64));
    if !decreasing && counterexample.is_none() && skipped.is_empty() {
        counterexample = Some(Counterexample {
            graph6: String::new(),
            sequence: "3,3,const".into(),
            detail: format!("non_cut ratios not decreasing: {non_cut_ratios:?}"),
            colorings: Vec::new(),
        });
    }
    let params = CheckParams { n_max: None, n_range: None, representatives };
    Ok(finish(id, params, expected.to_string(), observed.join("; "), counterexample, skipped))
}

fn trees(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(9);
    let seqs = sequences(id, &Class { membership: ">=1", reps: Reps::List(TREE_SEQS) }, opts)?;
    let mut graphs = Vec::new();
    for n in 1..=n_max {
        graphs.extend(enumerate_trees(n)?.iter().cloned());
    }
    let items = graph_seq_items(&graphs, &seqs);
    let t = tally(&items, |&(gi, si)| {
        let (g, s) = (&graphs[gi], &seqs[si]);
        let verdicts = chi_s_with(g, s, &opts.solver).and_then(|r| {
            Ok((critical_given_chi(g, s, r.value, &opts.solver)?, vertex_critical_given_chi(g, s, r.value, &opts.solver)?))
        });
        match verdicts {
            Ok((a, b)) if a == b => Outcome::Holds,
            Ok((a, b)) => violation(g, s, format!("critical={a}, vertex-critical={b}")),
            Err(e) => skipped(g, s, e),
        }
    });
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: seq_names(&seqs) };
    Ok(finish_tally(id, params, "every tree is critical iff it is vertex-critical", t))
}

fn diameter_of(g: &Graph) -> Option<u32> {
    all_pairs_distance(g).diameter().finite()
}

/// `(k, const)`, `(k, inc)` and `(k, k+2, const)`, or the caller's
/// sequences with `s_1 = k`.
fn seqs_with_first(k: u32, opts: &VerifyOptions) -> Vec<PackingSequence> {
    match &opts.sequences {
        Some(list) => list.iter().filter(|s| s.s(1) == k).cloned().collect(),
        None => vec![
            PackingSequence::constant(k),
            PackingSequence::new(vec![k], crate::sequence::Tail::Inc).expect("valid"),
            PackingSequence::new(vec![k, k + 2], crate::sequence::Tail::Const).expect("valid"),
        ],
    }
}

fn diameter_critical(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(7);
    let (graphs, _) = universe(n_max, true, opts)?;
    let items: Vec<(usize, PackingSequence)> = graphs
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let k = diameter_of(g)?;
            (k >= 1 && is_diameter_k_critical(g, k).expect("connected")).then_some((i, k))
        })
        .flat_map(|(i, k)| seqs_with_first(k, opts).into_iter().map(move |s| (i, s)))
        .collect();
    let t = tally(&items, |(gi, s)| {
        let g = &graphs[*gi];
        match critical_verdict(g, s, &opts.solver) {
            Ok(true) => Outcome::Holds,
            Ok(false) => violation(g, s, "diameter-critical but not critical".into()),
            Err(e) => skipped(g, s, e),
        }
    });
    let mut reps: Vec<String> = items.iter().map(|(_, s)| s.to_string()).collect();
    reps.sort();
    reps.dedup();
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: reps };
    Ok(finish_tally(id, params, "every diameter k-critical graph is critical when s1 = k", t))
}

fn girth_check(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(7);
    let (graphs, _) = universe(n_max, true, opts)?;
    let items: Vec<(usize, u32)> = graphs
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let k = diameter_of(g)?;
            let long = match girth(g) {
                Girth::Infinite => true,
                Girth::Finite(l) => l >= k as usize + 2,
            };
            (k >= 1 && long).then_some((i, k))
        })
        .collect();
    let t = tally(&items, |&(gi, k)| {
        let g = &graphs[gi];
        let s = PackingSequence::constant(k);
        if !is_diameter_k_critical(g, k).expect("connected") {
            return violation(g, &s, format!("diameter {k}, girth >= {} but not diameter-critical", k + 2));
        }
        match critical_verdict(g, &s, &opts.solver) {
            Ok(true) => Outcome::Holds,
            Ok(false) => violation(g, &s, "not critical".into()),
            Err(e) => skipped(g, &s, e),
        }
    });
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: vec!["k,const".into()] };
    Ok(finish_tally(id, params, "diam k and girth >= k+2 imply diameter k-critical and critical for (k,k,...)", t))
}

fn all_graphs(n_max: usize, opts: &VerifyOptions) -> Result<Vec<Graph>, VerifyError> {
    Ok(universe(n_max, false, opts)?.0)
}

fn lemma_connected(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(7);
    let seqs = sequences(id, &Class { membership: ">=1", reps: Reps::List(GENERAL_SEQS) }, opts)?;
    let graphs: Vec<Graph> = all_graphs(n_max, opts)?.into_iter().filter(|g| !g.is_connected()).collect();
    let items = graph_seq_items(&graphs, &seqs);
    let t = tally(&items, |&(gi, si)| {
        let (g, s) = (&graphs[gi], &seqs[si]);
        match critical_verdict(g, s, &opts.solver) {
            Ok(false) => Outcome::Holds,
            Ok(true) => violation(g, s, "disconnected but critical".into()),
            Err(e) => skipped(g, s, e),
        }
    });
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: seq_names(&seqs) };
    Ok(finish_tally(id, params, "no disconnected graph is critical", t))
}

fn lemma_vertex_critical(id: &str, opts: &VerifyOptions) -> Result<TheoremCheck, VerifyError> {
    let n_max = opts.n_max.unwrap_or(7);
    let seqs = sequences(id, &Class { membership: ">=1", reps: Reps::List(GENERAL_SEQS) }, opts)?;
    let graphs = all_graphs(n_max, opts)?;
    let items = graph_seq_items(&graphs, &seqs);
    let t = tally(&items, |&(gi, si)| {
        let (g, s) = (&graphs[gi], &seqs[si]);
        let verdicts = chi_s_with(g, s, &opts.solver).and_then(|r| {
            if !critical_given_chi(g, s, r.value, &opts.solver)? {
                return Ok(true);
            }
            vertex_critical_given_chi(g, s, r.value, &opts.solver)
        });
        match verdicts {
            Ok(true) => Outcome::Holds,
            Ok(false) => violation(g, s, "critical but not vertex-critical".into()),
            Err(e) => skipped(g, s, e),
        }
    });
    let params = CheckParams { n_max: Some(n_max), n_range: None, representatives: seq_names(&seqs) };
    Ok(finish_tally(id, params, "every critical graph is vertex-critical", t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_small_values() {
        assert_eq!(distance_chi_cycle(1, 4), 2);
        assert_eq!(distance_chi_cycle(1, 5), 3);
        assert_eq!(distance_chi_cycle(2, 6), 3);
        assert_eq!(distance_chi_cycle(2, 7), 4);
        assert_eq!(distance_chi_cycle(2, 4), 4);
        assert_eq!(distance_chi_cycle(4, 5), 5);
    }

    #[test]
    fn registry_ids_are_unique_and_dispatch() {
        let ids: HashSet<&str> = REGISTRY.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
        let opts = VerifyOptions::default();
        assert!(matches!(run("nope", &opts), Err(VerifyError::UnknownTheorem(_))));
    }

    #[test]
    fn outside_class_is_rejected() {
        let opts = VerifyOptions { sequences: Some(vec!["2,const".parse().unwrap()]), ..Default::default() };
        assert!(matches!(run("manycases.i", &opts), Err(VerifyError::OutsideClass { .. })));
    }

    #[test]
    fn enumeration_bound_without_corpus() {
        let opts = VerifyOptions { n_max: Some(9), ..Default::default() };
        assert!(matches!(run("manycases.iii", &opts), Err(VerifyError::Graph(GraphError::SizeLimit { .. }))));
    }

    #[test]
    fn small_classification_passes() {
        let opts = VerifyOptions { n_max: Some(5), ..Default::default() };
        let c = run("manycases.vii", &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
        assert!(c.observed.contains("star:3"));
    }
}
