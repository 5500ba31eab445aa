//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to print FAIL; the target
//! exits non-zero if any other criterion fails or a known failure starts
//! passing.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use zolaw::constructions::{figure_eight_density, make_figure_eight, make_m_cycle};
use zolaw::game::{solve_ehr, solve_ehr_unmemoized, Player};
use zolaw::graph::{is_strictly_balanced, max_subgraph_density, nonisomorphic_graphs};
use zolaw::logic::{build_d, build_property_a, evaluate, parse_sentence, Formula};
use zolaw::mc::{estimate_event, sample_gnp, Event, ExperimentConfig, PatternRef};
use zolaw::thresholds::{interval_basic, interval_strong, refutation_alpha, refutation_k1};
use zolaw::{ratio, Graph, Rational};

const KNOWN_FAILURES: &[u32] = &[6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "strong interval for k=4, t/s=2/3", criterion_1),
        (2, "basic interval width identity", criterion_2),
        (3, "Poisson constant for triangles", criterion_3),
        (4, "triangle threshold regimes", criterion_4),
        (5, "refutation figure-eight", criterion_5),
        (6, "formula depth accounting", criterion_6),
        (7, "EF game vs FO corpus", criterion_7),
        (8, "oracle equivalences", criterion_8),
        (9, "construction identities", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let started = Instant::now();
        let o = run();
        let secs = started.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_FAILURES.contains(&id);
        let note = if known { " [known]" } else { "" };
        println!("{tag} {id}: {name} ({secs:.2}s){note}: {}", o.detail);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let got = interval_strong(4, 2, 3).unwrap();
    let elapsed = started.elapsed();
    let want = (ratio(53, 80), ratio(2, 3));
    outcome(
        got == want && elapsed < Duration::from_millis(1),
        format!("got ({}, {}) in {elapsed:?}", got.0, got.1),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 4..=10u64 {
        for s in 2..=6u64 {
            for t in (1..s).filter(|&t| gcd(t, s) == 1) {
                let (lo, hi) = interval_basic(k, t, s).unwrap();
                let want = Rational::new(t, s * (s + 1).pow(k as u32));
                checked += 1;
                if &hi - &lo != want {
                    bad.push((k, t, s));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} intervals, mismatches {bad:?}"))
}

fn triangle(n: usize, samples: usize, seed: u64, event: Event) -> ExperimentConfig {
    ExperimentConfig {
        name: None,
        n,
        alpha: None,
        p: None,
        pattern: PatternRef::Name("K3".into()),
        samples,
        seed,
        event,
        threshold: None,
    }
}

fn criterion_3() -> Outcome {
    let mut c = triangle(1000, 4000, 20_241_016, Event::ZeroCopies);
    c.p = Some(1.0 / 1000.0);
    let r = estimate_event(&c).unwrap();
    let target = (-1.0f64 / 6.0).exp();
    let gap = (r.frequency - target).abs();
    outcome(
        gap <= 0.025,
        format!("frequency {:.4} vs e^(-1/6) = {target:.4}, gap {gap:.4}", r.frequency),
    )
}

fn criterion_4() -> Outcome {
    let mut below = triangle(2000, 1000, 7_001, Event::HasCopy);
    below.alpha = Some(ratio(6, 5));
    let mut above = triangle(2000, 1000, 7_002, Event::HasCopy);
    above.alpha = Some(ratio(4, 5));
    let lo = estimate_event(&below).unwrap().frequency;
    let hi = estimate_event(&above).unwrap().frequency;
    outcome(
        lo <= 0.02 && hi >= 0.95,
        format!("alpha=6/5: {lo:.4}, alpha=4/5: {hi:.4}"),
    )
}

/// Every induced subgraph on at least one vertex, by bitmask.
fn subset_edges(g: &Graph, mask: u32) -> (usize, usize) {
    let v = mask.count_ones() as usize;
    let e = g.edges().filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1).count();
    (v, e)
}

fn brute_max_density(g: &Graph) -> Rational {
    let n = g.vertex_count();
    let mut best = Rational::zero();
    for mask in 1u32..(1 << n) {
        let (v, e) = subset_edges(g, mask);
        let d = Rational::new(e as u64, v as u64);
        if d > best {
            best = d;
        }
    }
    best
}

fn brute_strictly_balanced(g: &Graph) -> bool {
    let n = g.vertex_count();
    let full = Rational::new(g.edge_count() as u64, n as u64);
    (1u32..(1 << n) - 1).all(|mask| {
        let (v, e) = subset_edges(g, mask);
        Rational::new(e as u64, v as u64) < full
    })
}

fn criterion_5() -> Outcome {
    let k1 = refutation_k1(2, 15).unwrap();
    let alpha = refutation_alpha(2, 15).unwrap();
    let g = make_figure_eight(2, 8, 8).unwrap();
    let (v, e) = (g.vertex_count(), g.edge_count());
    let rho = max_subgraph_density(&g).unwrap();
    let lib = is_strictly_balanced(&g).unwrap();
    let brute = brute_strictly_balanced(&g);
    let pass = k1 == 3
        && alpha == ratio(15, 16)
        && v == 15
        && e == 16
        && rho == ratio(16, 15)
        && rho == alpha.recip()
        && lib
        && brute;
    outcome(
        pass,
        format!("k1={k1}, alpha={alpha}, v={v}, e={e}, rho={rho}, strictly balanced: lib {lib}, subsets {brute}"),
    )
}

fn ceil_log2(l: usize) -> usize {
    let mut d = 0;
    while (1usize << d) < l {
        d += 1;
    }
    d
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for m in 2..=4 {
        for l in 1..=64 {
            let got = build_d(m, l, 0).unwrap().quantifier_depth();
            if got != ceil_log2(l) + 2 * m - 2 {
                bad.push((m, l, got));
            }
        }
    }
    let a = build_property_a(2, 15).unwrap().quantifier_depth();
    outcome(
        bad.is_empty() && a == 15,
        format!("D mismatches {bad:?}; depth of property A(2,15) = {a}, expected 15"),
    )
}

fn load_corpus() -> Vec<Formula> {
    include_str!("data/corpus.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with(';'))
        .map(|l| parse_sentence(l).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

fn criterion_7() -> Outcome {
    let corpus = load_corpus();
    let depth_ok = corpus.len() >= 50 && corpus.iter().all(|f| f.quantifier_depth() <= 3);
    let graphs: Vec<Graph> = (1..=4).flat_map(nonisomorphic_graphs).collect();
    let empty = BTreeMap::new();
    let truth: Vec<Vec<bool>> = graphs
        .iter()
        .map(|g| corpus.iter().map(|f| evaluate(f, g, &empty).unwrap()).collect())
        .collect();
    let mut violations = 0;
    let mut dup_pairs = 0;
    let mut distinguished = 0;
    for (i, g) in graphs.iter().enumerate() {
        for (j, h) in graphs.iter().enumerate() {
            let dup = solve_ehr(g, h, 3).unwrap() == Player::Duplicator;
            let agree = truth[i] == truth[j];
            dup_pairs += usize::from(dup);
            distinguished += usize::from(!agree);
            if dup && !agree {
                violations += 1;
            }
        }
    }
    outcome(
        depth_ok && violations == 0,
        format!(
            "{} sentences, {} graphs, {dup_pairs} Duplicator pairs, {distinguished} distinguished pairs, {violations} violations",
            corpus.len(),
            graphs.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut density_bad = 0;
    for i in 0..200u64 {
        let n = 1 + (i % 8) as usize;
        let p = [0.2, 0.4, 0.6, 0.8][(i / 8 % 4) as usize];
        let g = sample_gnp(n, p, 8_008, i);
        if max_subgraph_density(&g).unwrap() != brute_max_density(&g) {
            density_bad += 1;
        }
    }
    let graphs: Vec<Graph> = (1..=4).flat_map(nonisomorphic_graphs).collect();
    let mut game_bad = 0;
    let mut games = 0;
    for g in &graphs {
        for h in &graphs {
            for k in 0..=3 {
                games += 1;
                if solve_ehr(g, h, k).unwrap() != solve_ehr_unmemoized(g, h, k) {
                    game_bad += 1;
                }
            }
        }
    }
    outcome(
        density_bad == 0 && game_bad == 0,
        format!("density mismatches {density_bad}/200, game mismatches {game_bad}/{games}"),
    )
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for m in 2..=5 {
        for d in 3..=8 {
            let g = make_m_cycle(m, d).unwrap();
            let rho = Rational::new(g.edge_count() as u64, g.vertex_count() as u64);
            if g.vertex_count() != d * (m - 1) || rho != Rational::new(m as u64, 2u64) {
                bad.push(format!("m-cycle({m},{d})"));
            }
        }
    }
    for m in 2..=3usize {
        for l1 in 4..=8usize {
            for l2 in 4..=8usize {
                let g = make_figure_eight(m, l1, l2).unwrap();
                let rho = Rational::new(g.edge_count() as u64, g.vertex_count() as u64);
                let l = (l1 + l2) as u64;
                let m64 = m as u64;
                let display = Rational::new(l * m64 * (m64 - 1), 2 * (l * (m64 - 1) - 1));
                let second = (Rational::new(2u64, m64) - Rational::new(2u64, l * m64 * (m64 - 1))).recip();
                if rho != display || rho != second || rho != figure_eight_density(m, l1, l2) {
                    bad.push(format!("figure-eight({m},{l1},{l2})"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("24 m-cycles, 50 figure-eights, mismatches {bad:?}"))
}
