//! Acceptance criteria. Runs as a plain binary (`harness = false`) so that
//! every criterion prints one line whether it passes or not:
//!
//! `[PASS] <n> <title> (<seconds>s): <details>`
//!
//! A criterion whose predicted value is contradicted by the computation
//! prints `[FAIL]`. The process then succeeds only if the contradiction is
//! exactly the one listed in `KNOWN_DEVIATIONS`, each of which is confirmed
//! elsewhere by an explicit witness or an independent oracle. Any other
//! failure, or a listed deviation that no longer occurs, exits non-zero.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use spack_core::families::FamilySpec;
use spack_core::graph::{canonical_form, Graph};
use spack_core::solver::{brute_force_chi, chi_s, validate_coloring};
use spack_core::verify::{
    enumerate_connected_graphs, find_k_critical, verify_theorem, Verdict, VerifyOptions,
};
use spack_core::{PackingSequence, SequencePattern, SolverConfig};

const P14_LIMIT: Duration = Duration::from_secs(30);
const CYCLE_LIMIT: Duration = Duration::from_secs(60);
const CLASSIFICATION_LIMIT: Duration = Duration::from_secs(600);
const ORACLE_LIMIT: Duration = Duration::from_secs(900);

const EDGE_SEQS: [&str; 7] =
    ["1,1,const", "1,2,const", "1,2,3,inc", "2,2,const", "1,3,const", "2,5,const", "3,3,const"];

/// Criteria whose predicted values do not hold, with the exact observed
/// divergence. Each entry is `(criterion, divergence)`.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[
    (1, "chi(P_14) = 7 under 2,3,11,const; chi(P_14) = 7 under 2,3,11,inc"),
    (
        3,
        "many-cases (iv) 2,2,2,const: missing {cycle:5}; \
         small-cases (i) 1,3,3,const: extra {g:4, g:7}; \
         small-cases (ii) 1,3,4,const: missing {g:3}; \
         small-cases (iii) 1,4,const: extra {g:1}",
    ),
];

struct Outcome {
    pass: bool,
    details: String,
    /// Divergences from the predicted values; empty when `pass`.
    divergence: String,
}

fn seq(s: &str) -> PackingSequence {
    s.parse().unwrap()
}

fn graph(spec: &str) -> Graph {
    spec.parse::<FamilySpec>().unwrap().generate().unwrap()
}

fn time_check(outcome: &mut Outcome, elapsed: Duration, limit: Duration) {
    if elapsed > limit {
        outcome.pass = false;
        outcome.details.push_str(&format!("; over the {}s limit", limit.as_secs()));
    }
}

fn criterion_1() -> Outcome {
    let mut values = Vec::new();
    let mut divergence = Vec::new();
    let mut pass = true;
    let mut details = Vec::new();
    let split = graph("path:14").delete_edge(6, 7).unwrap();
    for s in ["2,3,11,const", "2,3,11,inc"] {
        let s = seq(s);
        let r = chi_s(&graph("path:14"), &s).unwrap();
        assert!(validate_coloring(&graph("path:14"), &s, &r.witness).unwrap());
        let minus = chi_s(&split, &s).unwrap().value;
        values.push((r.value, minus));
        details.push(format!("{s}: chi(P_14) = {} (predicted 8), chi(P_14 - e) = {minus} (predicted 4)", r.value));
        if r.value != 8 {
            pass = false;
            divergence.push(format!("chi(P_14) = {} under {s}", r.value));
        }
        if minus != 4 {
            pass = false;
            divergence.push(format!("chi(P_14 - e) = {minus} under {s}"));
        }
    }
    Outcome { pass, details: details.join("; "), divergence: divergence.join("; ") }
}

/// `k + 1 + ⌈r / ℓ⌉` with `n = ℓ (k + 1) + r`.
fn distance_formula(k: usize, n: usize) -> u32 {
    let (l, r) = (n / (k + 1), n % (k + 1));
    (k + 1 + r.div_ceil(l)) as u32
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for k in 1..=4usize {
        let s = PackingSequence::constant(k as u32);
        for n in (k + 1).max(3)..=30 {
            count += 1;
            let got = chi_s(&graph(&format!("cycle:{n}")), &s).unwrap().value;
            if got != distance_formula(k, n) {
                bad.push(format!("k={k} n={n}: {got} vs {}", distance_formula(k, n)));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        details: format!("{count} (k, n) pairs, {} mismatches {bad:?}", bad.len()),
        divergence: bad.join("; "),
    }
}

fn keys(specs: &[String]) -> Vec<(Vec<u8>, String)> {
    specs.iter().map(|s| (canonical_form(&graph(s)).unwrap(), s.clone())).collect()
}

/// Compares the k-critical graphs on at most `n_max` vertices against the
/// predicted list; returns `(missing, extra)` with extras named after the
/// sporadic graphs when they match one.
fn classify(s: &PackingSequence, k: u32, n_max: usize, predicted: &[String]) -> (Vec<String>, Vec<String>) {
    let found = find_k_critical(n_max, s, k, &SolverConfig::default()).unwrap();
    assert!(found.skipped.is_empty());
    let found: BTreeSet<Vec<u8>> = found.found.iter().map(|g| canonical_form(g).unwrap()).collect();
    let predicted = keys(predicted);
    let mut names: Vec<String> = (1..=8).map(|i| format!("g:{i}")).collect();
    names.extend(predicted.iter().map(|(_, n)| n.clone()));
    let named = keys(&names);
    let missing = predicted.iter().filter(|(k, _)| !found.contains(k)).map(|(_, n)| n.clone()).collect();
    let extra = found
        .iter()
        .filter(|k| !predicted.iter().any(|(p, _)| p == *k))
        .map(|k| {
            named
                .iter()
                .find(|(p, _)| p == k)
                .map(|(_, n)| n.clone())
                .unwrap_or_else(|| format!("g6:{}", String::from_utf8_lossy(k)))
        })
        .collect();
    (missing, extra)
}

fn criterion_3() -> Outcome {
    let strs = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let minimal = |p: &str| p.parse::<SequencePattern>().unwrap().representatives(1).unwrap().remove(0);
    let cases: Vec<(&str, PackingSequence, u32, usize, Vec<String>)> = vec![
        ("many-cases (i)", minimal("1,1"), 3, 7, strs(&["cycle:3", "cycle:5", "cycle:7"])),
        ("many-cases (ii)", minimal("1,>=2"), 3, 7, strs(&["cycle:3", "path:4"])),
        ("many-cases (iii)", minimal(">=2"), 3, 7, strs(&["path:3"])),
        ("many-cases (iv)", minimal("2,2,2"), 4, 7, strs(&["star:3", "cycle:4", "cycle:5", "cycle:7"])),
        ("many-cases (v)", minimal("2,2,>=3"), 4, 7, strs(&["star:3", "cycle:4", "path:6"])),
        ("many-cases (vi)", minimal("2,>=3"), 4, 7, strs(&["star:3", "cycle:4", "path:5"])),
        ("many-cases (vii)", minimal(">=3"), 4, 7, strs(&["star:3", "path:4"])),
        (
            "small-cases (i)",
            seq("1,3,3,const"),
            4,
            8,
            strs(&["complete:4", "g:1", "g:2", "cycle:5", "cycle:6", "x:6"]),
        ),
        (
            "small-cases (ii)",
            seq("1,3,4,const"),
            4,
            8,
            strs(&["complete:4", "cycle:5", "cycle:6", "path:8", "g:1", "g:2", "g:3", "g:4", "g:5", "g:6", "g:7"]),
        ),
        ("small-cases (iii)", seq("1,4,const"), 4, 6, strs(&["complete:4", "cycle:5", "path:6", "g:8"])),
    ];
    let mut details = Vec::new();
    let mut divergence = Vec::new();
    for (name, s, k, n_max, predicted) in &cases {
        let (missing, extra) = classify(s, *k, *n_max, predicted);
        let mut parts = Vec::new();
        if !missing.is_empty() {
            parts.push(format!("missing {{{}}}", missing.join(", ")));
        }
        if !extra.is_empty() {
            parts.push(format!("extra {{{}}}", extra.join(", ")));
        }
        if parts.is_empty() {
            details.push(format!("{name} ok"));
        } else {
            let d = format!("{name} {s}: {}", parts.join(", "));
            details.push(d.clone());
            divergence.push(d);
        }
    }
    Outcome { pass: divergence.is_empty(), details: details.join("; "), divergence: divergence.join("; ") }
}

/// Runs registered checks with their default parameters or the overrides.
fn checks(ids: &[&str], opts: impl Fn(&str) -> VerifyOptions) -> Outcome {
    let mut details = Vec::new();
    let mut bad = Vec::new();
    for id in ids {
        let c = verify_theorem(id, &opts(id)).unwrap();
        details.push(format!("{id} {:?}: {}", c.verdict, c.observed));
        if c.verdict != Verdict::Pass {
            bad.push(format!("{id}: {:?} {:?}", c.verdict, c.counterexample.map(|x| x.detail)));
        }
    }
    Outcome { pass: bad.is_empty(), details: details.join("; "), divergence: bad.join("; ") }
}

fn criterion_4() -> Outcome {
    // Minimal representative of each hypothesis class.
    let minimal = |id: &str| -> Vec<PackingSequence> {
        match id {
            "cyclessmall.i" | "cyclessmall.ii" => vec![seq("1,const"), seq("2,const"), seq("3,const")],
            "cycles1big.i" | "cycles1big.ii" => vec![seq("1,1,const"), seq("1,2,const"), seq("1,3,const")],
            "cycles1small.i" => vec![seq("1,1,const")],
            "cycles1small.ii" => vec![seq("1,2,2,const")],
            _ => vec![seq("1,2,3,const")],
        }
    };
    let ids = [
        "cyclessmall.i",
        "cyclessmall.ii",
        "cycles1big.i",
        "cycles1big.ii",
        "cycles1small.i",
        "cycles1small.ii",
        "cycles1small.iii",
    ];
    checks(&ids, |id| VerifyOptions { n_range: Some((3, 24)), sequences: Some(minimal(id)), ..Default::default() })
}

fn criterion_5() -> Outcome {
    let sequences = Some(EDGE_SEQS.iter().map(|s| seq(s)).collect());
    checks(&["edgebound.i", "edgebound.ii", "edgebound.iii", "edgebound.cut"], |_| VerifyOptions {
        n_max: Some(6),
        sequences: sequences.clone(),
        ..Default::default()
    })
}

fn criterion_6() -> Outcome {
    let cases = [
        ("star_bridge:3", "1,3,const", 4, 2),
        ("clique_path:2", "2,5,const", 6, 3),
        ("universal_double:complete:3", "3,3,const", 6, 3),
        ("non_cut:complete:3", "3,3,const", 8, 5),
    ];
    let mut details = Vec::new();
    let mut bad = Vec::new();
    for (spec, s, chi, minus) in cases {
        let f: FamilySpec = spec.parse().unwrap();
        let g = f.generate().unwrap();
        let (u, v) = f.distinguished_edge().unwrap().unwrap();
        let got = chi_s(&g, &seq(s)).unwrap().value;
        let got_minus = chi_s(&g.delete_edge(u, v).unwrap(), &seq(s)).unwrap().value;
        details.push(format!("{spec} {s}: {got}/{got_minus}"));
        if (got, got_minus) != (chi, minus) {
            bad.push(format!("{spec}: {got}/{got_minus}, predicted {chi}/{minus}"));
        }
    }
    // chi(G-e)/chi(G) along non_cut(K_m), m = 3, 4, 5, must decrease strictly.
    let ratios: Vec<(u32, u32)> = (3..=5)
        .map(|m| {
            let f: FamilySpec = format!("non_cut:complete:{m}").parse().unwrap();
            let g = f.generate().unwrap();
            let (u, v) = f.distinguished_edge().unwrap().unwrap();
            let s = seq("3,3,const");
            (chi_s(&g.delete_edge(u, v).unwrap(), &s).unwrap().value, chi_s(&g, &s).unwrap().value)
        })
        .collect();
    let decreasing = ratios.windows(2).all(|w| w[1].0 * w[0].1 < w[0].0 * w[1].1);
    details.push(format!("non_cut ratios {ratios:?}"));
    if !decreasing {
        bad.push(format!("ratios not decreasing: {ratios:?}"));
    }
    Outcome { pass: bad.is_empty(), details: details.join("; "), divergence: bad.join("; ") }
}

fn criterion_7() -> Outcome {
    let sequences = Some(EDGE_SEQS.iter().map(|s| seq(s)).collect());
    checks(&["doubling"], |_| VerifyOptions { n_max: Some(6), sequences: sequences.clone(), ..Default::default() })
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        for g in enumerate_connected_graphs(n).unwrap() {
            for s in EDGE_SEQS {
                count += 1;
                let a = chi_s(&g, &seq(s)).unwrap().value;
                let b = brute_force_chi(&g, &seq(s)).unwrap();
                if a != b {
                    bad.push(format!("{} under {s}: {a} vs {b}", spack_core::graph::emit_graph6(&g)));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        details: format!("{count} (graph, sequence) pairs, {} discrepancies", bad.len()),
        divergence: bad.join("; "),
    }
}

fn criterion_9() -> Outcome {
    checks(&["lemma.wsets"], |_| VerifyOptions { n_max: Some(7), ..Default::default() })
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Option<Duration>); 9] = [
        (1, "chi_S(P_14) and its middle edge", criterion_1, Some(P14_LIMIT)),
        (2, "distance colorings of cycles", criterion_2, Some(CYCLE_LIMIT)),
        (3, "classification at desk scale", criterion_3, Some(CLASSIFICATION_LIMIT)),
        (4, "cycle criticality, 3 <= n <= 24", criterion_4, None),
        (5, "edge-removal bounds, n <= 6", criterion_5, None),
        (6, "sharpness gadgets", criterion_6, None),
        (7, "doubling construction, n <= 6", criterion_7, None),
        (8, "solver vs brute force, n <= 6", criterion_8, Some(ORACLE_LIMIT)),
        (9, "W-sets survive edge deletion, n <= 7", criterion_9, None),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            time_check(&mut outcome, elapsed, limit);
        }
        let mark = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{mark}] {id} {title} ({:.2}s): {}", elapsed.as_secs_f64(), outcome.details);
        let known = KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id).map(|(_, d)| *d);
        match (outcome.pass, known) {
            (true, None) => {}
            (false, Some(d)) if d == outcome.divergence => println!("       known deviation: {d}"),
            (false, _) => unexpected.push(format!("criterion {id}: {}", outcome.divergence)),
            (true, Some(_)) => unexpected.push(format!("criterion {id}: listed deviation no longer occurs")),
        }
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        std::process::exit(1);
    }
    println!("acceptance: {} criteria, {} known deviations", criteria.len(), KNOWN_DEVIATIONS.len());
}
