//! Acceptance suite. Each test covers one numbered criterion and prints a
//! pass/fail line (visible with --nocapture, and always shown on failure).
//!
//! Three checks encode targets that are analytically out of reach for the
//! algorithms as built; they are asserted anyway, fail honestly, and carry
//! the numeric evidence in their messages:
//! * criterion 3's demand that the planted clique+path instance end in a
//!   dense witness (its spectral gap clears the certificate threshold by
//!   three orders of magnitude, so it certifies instead);
//! * criterion 7 (the top-degree vertices of G(1e5, 2e-5) touch ~1.6x the
//!   allowed edge count in every seed);
//! * criterion 8's trimmed-density and extraction clauses (trimming the
//!   prescribed 248 highest-degree vertices costs ~1400 edges and drops
//!   the giant's density below 1).

mod common;

use common::{clique_plus_path, complete, cycle, grid, petersen, random_connected, rng};
use xpk_core::expansion::{min_separator_exact, separator_lower_bound, vertex_expansion_exact};
use xpk_core::extraction::{
    existential_oracle, extract_expander, ExtractionOutcome, ExtractionParams,
};
use xpk_core::games::{
    criterion_sums, greedy_degree_strategy, maker_minor_pipeline, play_game,
    potential_attack_strategy, potential_blocker_strategy, random_edge_strategy, Family, GameKind,
    GameState, Side, Strategy,
};
use xpk_core::graph::{induced_subgraph, subset_stats, Graph};
use xpk_core::random::{
    giant_pipeline, gnp_sparsity_alpha, monte_carlo_local_sparsity, monte_carlo_touch,
    StageOutcome,
};
use xpk_core::rational::{rat, rat_to_f64, Rat};
use xpk_core::spectral::{cheeger_exact, lambda1, sweep_cut};

const MC_SEED: u64 = 0x2026_08_09;

fn conclude(id: u32, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("[{id:>2}/12] {name}: PASS");
    } else {
        println!("[{id:>2}/12] {name}: FAIL ({} issue(s))", failures.len());
        for f in &failures {
            println!("        - {f}");
        }
        panic!(
            "criterion {id} ({name}) failed:\n{}",
            failures.join("\n")
        );
    }
}

fn sandwich_corpus() -> Vec<Graph> {
    (0..500u64)
        .map(|stream| {
            let n = 4 + (stream as usize % 11);
            let mut r = rng(0xc0de, stream);
            let extra = (stream as usize % (n / 2 + 2)) + 1;
            random_connected(&mut r, n, extra)
        })
        .collect()
}

#[test]
fn criterion_01_cheeger_sandwich() {
    let mut failures = Vec::new();
    for (i, g) in sandwich_corpus().iter().enumerate() {
        let (h, _) = cheeger_exact(g).unwrap();
        let h = rat_to_f64(&h);
        let lambda = lambda1(g, 1e-10).unwrap().lambda1;
        if !(h * h / 2.0 - 1e-9 <= lambda && lambda <= 2.0 * h + 1e-9) {
            failures.push(format!("graph {i}: h={h}, lambda={lambda}"));
        }
    }
    // tightness: C4 attains lambda = 2h
    let c4 = cycle(4);
    let (h, _) = cheeger_exact(&c4).unwrap();
    let lambda = lambda1(&c4, 1e-12).unwrap().lambda1;
    if (lambda - 2.0 * rat_to_f64(&h)).abs() > 1e-9 {
        failures.push(format!("C4 not tight: lambda={lambda}, 2h={}", 2.0 * rat_to_f64(&h)));
    }
    conclude(1, "cheeger sandwich on 500 random connected graphs", failures);
}

#[test]
fn criterion_02_sweep_guarantee() {
    let mut failures = Vec::new();
    for (i, g) in sandwich_corpus().iter().enumerate() {
        let spec = lambda1(g, 1e-10).unwrap();
        let cut = sweep_cut(g, &spec).unwrap();
        let stats = subset_stats(g, &cut.cut_set).unwrap();
        let vol_total = 2 * g.m();
        if 2 * stats.volume > vol_total {
            failures.push(format!("graph {i}: cut side has the larger volume"));
        }
        let bound =
            (2.0 * spec.lambda1).sqrt() * stats.volume as f64 + 1e-9 * stats.volume as f64;
        if stats.boundary as f64 > bound {
            failures.push(format!(
                "graph {i}: boundary {} exceeds sqrt(2 lambda) vol = {bound}",
                stats.boundary
            ));
        }
    }
    conclude(2, "sweep-cut guarantee on the same corpus", failures);
}

struct DichotomyInstance {
    label: String,
    graph: Graph,
    params: ExtractionParams,
    expect_dense: bool,
}

fn dichotomy_corpus() -> Vec<DichotomyInstance> {
    let mut corpus = Vec::new();

    // sparse random graphs, patched connected and up to density, degree cap
    // taken from the instance
    let sizes = [100, 150, 200, 250, 400, 600, 800, 1000, 1500, 2000];
    for stream in 0..80u64 {
        let n = sizes[stream as usize % sizes.len()];
        let mut r = rng(0xa11a, stream);
        let base = xpk_core::random::gnp_with_rng(n, 3.4 / n as f64, &mut r);
        let mut edges: Vec<(u32, u32)> = base.edges().collect();
        // connect components serially through their smallest ids
        let comps = xpk_core::graph::connected_components(&base);
        for pair in comps.windows(2) {
            edges.push((pair[0].members()[0], pair[1].members()[0]));
        }
        let mut g = Graph::from_edges(n, &edges).unwrap();
        // top up the density using the lowest-degree vertices
        let need = (3 * n).div_ceil(2) + 1;
        while g.m() < need {
            let mut order: Vec<u32> = g.vertices().collect();
            order.sort_by_key(|&v| (g.degree(v), v));
            let mut added = false;
            'outer: for &u in order.iter().take(12) {
                for &v in order.iter().take(12) {
                    if u < v && !g.has_edge(u, v) {
                        let mut e: Vec<(u32, u32)> = g.edges().collect();
                        e.push((u, v));
                        g = Graph::from_edges(n, &e).unwrap();
                        added = true;
                        break 'outer;
                    }
                }
            }
            assert!(added, "density top-up stalled");
        }
        let cap = g.max_degree() as u32;
        corpus.push(DichotomyInstance {
            label: format!("gnp-{n}-{stream}"),
            graph: g,
            params: ExtractionParams::new(rat(3, 2), rat(6, 5), rat(1, 10), cap).unwrap(),
            expect_dense: false,
        });
    }

    // square grids, including the 20x20 instance at its published params
    for k in 5..=24usize {
        let g = grid(k, k);
        let density = g.density();
        let c2 = (Rat::from_integer(1) + density) / Rat::from_integer(2);
        let (c1, c2) = if k == 20 {
            (rat(19, 10), rat(3, 2))
        } else {
            (density, c2)
        };
        corpus.push(DichotomyInstance {
            label: format!("grid-{k}x{k}"),
            graph: g,
            params: ExtractionParams::new(c1, c2, rat(1, 10), 4).unwrap(),
            expect_dense: false,
        });
        if k % 2 == 0 {
            let g = grid(k, k);
            corpus.push(DichotomyInstance {
                label: format!("grid-{k}x{k}-wide-alpha"),
                graph: g,
                params: ExtractionParams::new(density, c2, rat(1, 4), 4).unwrap(),
                expect_dense: false,
            });
        }
    }

    // planted clique + path, the classic witness-shaped instances
    let shapes = [
        (16usize, 130usize),
        (17, 170),
        (18, 220),
        (19, 260),
        (20, 300),
        (21, 340),
        (22, 380),
        (23, 410),
        (24, 450),
        (25, 500),
    ];
    for (i, &(k, n)) in shapes.iter().enumerate() {
        for (j, alpha) in [rat(2, 25), rat(1, 10), rat(3, 25)].into_iter().enumerate() {
            for (l, c2) in [rat(6, 5), rat(5, 4)].into_iter().enumerate() {
                let g = clique_plus_path(k, n);
                corpus.push(DichotomyInstance {
                    label: format!("clique-path-{k}-{n}-{i}{j}{l}"),
                    graph: g,
                    params: ExtractionParams::new(rat(3, 2), c2, alpha, k as u32).unwrap(),
                    expect_dense: false,
                });
            }
        }
    }

    // disconnected clique + path unions: these must peel down to a dense
    // witness
    let mix_shapes = [
        (16usize, 8usize, 10usize),
        (14, 6, 12),
        (18, 10, 9),
        (20, 10, 11),
        (15, 7, 11),
        (17, 9, 10),
        (19, 8, 12),
        (21, 12, 9),
    ];
    for (i, &(k, paths, plen)) in mix_shapes.iter().enumerate() {
        let mut edges = Vec::new();
        for u in 0..k as u32 {
            for v in u + 1..k as u32 {
                edges.push((u, v));
            }
        }
        let mut next = k as u32;
        for _ in 0..paths {
            for t in 0..plen as u32 - 1 {
                edges.push((next + t, next + t + 1));
            }
            next += plen as u32;
        }
        let n = k + paths * plen;
        let g = Graph::from_edges(n, &edges).unwrap();
        assert!(g.density() >= rat(3, 2), "mix {i} too sparse");
        let alpha = Rat::new((k + plen + 2) as i64, n as i64);
        for (j, c2) in [rat(6, 5), rat(13, 10)].into_iter().enumerate() {
            corpus.push(DichotomyInstance {
                label: format!("mix-{i}-{j}"),
                graph: g.clone(),
                params: ExtractionParams::new(rat(3, 2), c2, alpha, (k - 1) as u32).unwrap(),
                expect_dense: true,
            });
        }
    }

    // small instances (n <= 20) for the exact-expansion add-on
    let mut small: Vec<(String, Graph, ExtractionParams)> = Vec::new();
    {
        let mut k5_iso_edges = Vec::new();
        for u in 0..5u32 {
            for v in u + 1..5 {
                k5_iso_edges.push((u, v));
            }
        }
        let k5_iso = Graph::from_edges(6, &k5_iso_edges).unwrap();
        small.push((
            "k5-plus-isolated".into(),
            k5_iso,
            ExtractionParams::new(rat(3, 2), rat(6, 5), rat(1, 2), 4).unwrap(),
        ));
    }
    for n in 8..=20usize {
        // circulant C_n(1,2): 4-regular, density 2
        let mut edges = Vec::new();
        for v in 0..n as u32 {
            edges.push((v, (v + 1) % n as u32));
            edges.push((v, (v + 2) % n as u32));
        }
        let edges: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        small.push((
            format!("circulant-{n}"),
            g,
            ExtractionParams::new(rat(9, 5), rat(7, 5), rat(1, 4), 4).unwrap(),
        ));
    }
    for n in [6usize, 8, 10, 12, 14, 16, 18, 20] {
        // prism: two n/2-cycles plus a perfect matching, 3-regular
        let half = n / 2;
        let mut edges = Vec::new();
        for v in 0..half as u32 {
            edges.push((v, (v + 1) % half as u32));
            edges.push((half as u32 + v, half as u32 + (v + 1) % half as u32));
            edges.push((v, half as u32 + v));
        }
        let edges: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        small.push((
            format!("prism-{n}"),
            g,
            ExtractionParams::new(rat(3, 2), rat(5, 4), rat(1, 4), 3).unwrap(),
        ));
    }
    for n in 5..=10usize {
        small.push((
            format!("complete-{n}"),
            complete(n),
            ExtractionParams::new(rat(2, 1), rat(3, 2), rat(1, 2), (n - 1) as u32).unwrap(),
        ));
    }
    for (label, graph, params) in small {
        corpus.push(DichotomyInstance { label, graph, params, expect_dense: false });
    }

    corpus
}

#[test]
fn criterion_03_extraction_dichotomy() {
    let corpus = dichotomy_corpus();
    println!("        corpus size: {}", corpus.len());
    assert!(corpus.len() >= 200, "corpus has only {} instances", corpus.len());
    let mut failures = Vec::new();
    let mut dense_seen = 0;
    let mut expander_seen = 0;
    for inst in &corpus {
        let g = &inst.graph;
        let p = &inst.params;
        let th = p.thresholds();
        let alpha_n = p.alpha * Rat::from_integer(g.n() as i64);
        let out = match extract_expander(g, p) {
            Ok(out) => out,
            Err(e) => {
                failures.push(format!("{}: extraction failed: {e}", inst.label));
                continue;
            }
        };
        match &out {
            ExtractionOutcome::Dense(w) => {
                dense_seen += 1;
                let stats = subset_stats(g, &w.w).unwrap();
                if stats.within != w.spanned_edges {
                    failures.push(format!("{}: witness edge count mismatch", inst.label));
                }
                if Rat::from_integer(stats.within as i64)
                    < p.c2 * Rat::from_integer(w.w.len() as i64)
                {
                    failures.push(format!("{}: witness below c2 density", inst.label));
                }
                if Rat::from_integer(w.w.len() as i64) > alpha_n {
                    failures.push(format!("{}: witness larger than alpha*n", inst.label));
                }
            }
            ExtractionOutcome::Expander(cert) => {
                expander_seen += 1;
                if Rat::from_integer(cert.vertices.len() as i64) < alpha_n {
                    failures.push(format!("{}: certificate smaller than alpha*n", inst.label));
                }
                let sub = induced_subgraph(g, &cert.vertices).unwrap();
                let fresh = lambda1(&sub.graph, 1e-10).unwrap().lambda1;
                if fresh < th.lambda_star - 1e-12 {
                    failures.push(format!(
                        "{}: recomputed lambda {fresh} under lambda* {}",
                        inst.label, th.lambda_star
                    ));
                }
                if g.n() <= 20 {
                    let gamma = vertex_expansion_exact(&sub.graph).unwrap().gamma;
                    if rat_to_f64(&gamma) < th.gamma_alg {
                        failures.push(format!(
                            "{}: exact expansion {gamma} under gamma_alg {}",
                            inst.label, th.gamma_alg
                        ));
                    }
                }
            }
        }
        if inst.expect_dense && !matches!(out, ExtractionOutcome::Dense(_)) {
            failures.push(format!("{}: expected a dense witness", inst.label));
        }
    }
    println!("        outcomes: {dense_seen} dense witnesses, {expander_seen} certificates");

    // the named clique+path instance is required to end in a dense witness;
    // in fact its spectral gap (>= h^2/2 ~ 8.3e-7 via the bridge cut) beats
    // lambda* ~ 1.4e-9, so the run certifies instead -- kept failing
    let g = clique_plus_path(25, 500);
    let p = ExtractionParams::new(rat(3, 2), rat(6, 5), rat(1, 10), 25).unwrap();
    match extract_expander(&g, &p) {
        Ok(ExtractionOutcome::Dense(_)) => {}
        Ok(ExtractionOutcome::Expander(cert)) => failures.push(format!(
            "clique-path-25-500: returned a certificate (lambda {} >= lambda* {:.3e}) instead of the dense witness",
            cert.lambda_achieved,
            p.thresholds().lambda_star
        )),
        Err(e) => failures.push(format!("clique-path-25-500: {e}")),
    }
    conclude(3, "extraction dichotomy re-verifies on 200 graphs", failures);
}

#[test]
fn criterion_04_existential_route_exact_floor() {
    let p = ExtractionParams::new(rat(3, 2), rat(13, 10), rat(1, 4), 4).unwrap();
    let gamma_floor = rat(1, 40); // (c1-c2)/(cap * ceil(log2(1/alpha)))
    assert_eq!(p.thresholds().gamma_exist_rat(), gamma_floor);
    let mut failures = Vec::new();
    let mut tested = 0;
    for stream in 0..80u64 {
        let n = 8 + (stream as usize % 5);
        let mut r = rng(0x04ac, stream);
        let m = (3 * n).div_ceil(2);
        let g = common::random_degree_capped(&mut r, n, m, 4);
        if g.m() < m {
            continue;
        }
        tested += 1;
        match existential_oracle(&g, &p) {
            Ok((set, gamma)) => {
                if Rat::from_integer(set.len() as i64) < rat(1, 4) * Rat::from_integer(n as i64) {
                    failures.push(format!("stream {stream}: subgraph under alpha*n"));
                }
                if gamma < gamma_floor {
                    failures.push(format!("stream {stream}: gamma {gamma} < 1/40"));
                }
                let sub = induced_subgraph(&g, &set).unwrap();
                if vertex_expansion_exact(&sub.graph).unwrap().gamma != gamma {
                    failures.push(format!("stream {stream}: reported gamma is not exact"));
                }
            }
            Err(e) => failures.push(format!("stream {stream}: {e}")),
        }
    }
    println!("        corpus size: {tested}");
    assert!(tested >= 50, "only {tested} instances materialized");
    conclude(4, "existential route meets the exact expansion floor", failures);
}

#[test]
fn criterion_05_separator_floor() {
    let mut corpus: Vec<(String, Graph)> = vec![
        ("petersen".into(), petersen()),
        ("c12".into(), cycle(12)),
        ("k6".into(), complete(6)),
        ("grid3x4".into(), grid(3, 4)),
        ("grid2x6".into(), grid(2, 6)),
        ("path9".into(), common::path(9)),
    ];
    for stream in 0..60u64 {
        let n = 4 + (stream as usize % 9);
        let mut r = rng(0x05e9, stream);
        corpus.push((
            format!("rand-{stream}"),
            random_connected(&mut r, n, (stream as usize % n) + 1),
        ));
    }
    let mut failures = Vec::new();
    for (label, g) in &corpus {
        let gamma = vertex_expansion_exact(g).unwrap().gamma;
        if let Some(sep) = min_separator_exact(g).unwrap() {
            let bound = separator_lower_bound(&gamma, g.n());
            if Rat::from_integer(sep.s.len() as i64) < bound {
                failures.push(format!(
                    "{label}: separator {} below gamma*n/(3(gamma+1)) = {bound}",
                    sep.s.len()
                ));
            }
        }
    }
    println!("        corpus size: {}", corpus.len());
    conclude(5, "separator floor holds exhaustively", failures);
}

#[test]
fn criterion_06_local_sparsity_monte_carlo() {
    let alpha = gnp_sparsity_alpha(&rat(2, 1), &rat(3, 2));
    let mut failures = Vec::new();
    if (alpha - 0.003375).abs() > 1e-12 {
        failures.push(format!("alpha formula gave {alpha}, expected 0.003375"));
    }
    let report =
        monte_carlo_local_sparsity(100_000, &rat(2, 1), &rat(3, 2), 20, 2_000_000, MC_SEED)
            .unwrap();
    println!(
        "        20 trials: {} violations, {} inconclusive, {} passes",
        report.violations, report.inconclusive, report.passes
    );
    if report.violations != 0 {
        failures.push(format!("{} violation verdicts, expected none", report.violations));
    }
    conclude(6, "local sparsity of G(1e5, 2/n), 20 seeds", failures);
}

#[test]
fn criterion_07_touch_bound_monte_carlo() {
    // delta n / ln(1/delta) = 217 trimmed, allowance 1000 touched edges;
    // the 217 highest degrees of G(1e5, 2/n) sum to ~1650 in every draw,
    // so honest verdicts are violations -- this check documents the gap
    let report = monte_carlo_touch(100_000, 2.0, &rat(1, 100), 20, MC_SEED).unwrap();
    println!(
        "        20 trials: {} violations, {} inconclusive, {} passes",
        report.violations, report.inconclusive, report.passes
    );
    let mut failures = Vec::new();
    if report.violations != 0 {
        failures.push(format!(
            "{} of 20 trials found a verified touch violation (top-degree sets exceed the allowance by ~60%)",
            report.violations
        ));
    }
    conclude(7, "touch bound of G(1e5, 2/n) at delta=0.01, 20 seeds", failures);
}

#[test]
fn criterion_08_giant_pipeline() {
    // fixed point of y = 1 - exp(-1.2 y), solved here independently
    let c = 1.2f64;
    let (mut lo, mut hi) = (1e-9, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 1.0 - (-c * mid).exp() > mid {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let ystar = 0.5 * (lo + hi);
    println!("        survival fixed point y* = {ystar:.6}");

    let params = ExtractionParams::new(rat(3, 2), rat(6, 5), rat(1, 10), 30).unwrap();
    let eps = rat(1, 5);
    let density_floor = Rat::from_integer(1) + rat(1, 25) / Rat::from_integer(7);
    let degree_cap = 4.0 * 5.0f64.ln();
    let mut failures = Vec::new();
    let mut density_ok = 0;
    let mut extraction_ok = 0;
    let mut degree_ok = 0;
    for seed in 0..20u64 {
        let report = giant_pipeline(100_000, &eps, MC_SEED.wrapping_add(seed), &params).unwrap();
        if (report.giant_fraction - ystar).abs() > 0.02 {
            failures.push(format!(
                "seed {seed}: giant fraction {:.5} strays from y* by more than 0.02",
                report.giant_fraction
            ));
        }
        let density = Rat::new(report.trimmed_density.num, report.trimmed_density.den);
        if density >= density_floor {
            density_ok += 1;
        }
        if report.trimmed_max_degree as f64 <= degree_cap {
            degree_ok += 1;
        }
        match &report.extraction_outcome {
            StageOutcome::Completed { .. } => extraction_ok += 1,
            StageOutcome::Failed { .. } => {}
        }
    }
    println!(
        "        trimmed density >= 1+eps^2/7 in {density_ok}/20; extraction completed in {extraction_ok}/20; degree cap held in {degree_ok}/20"
    );
    if density_ok < 18 {
        failures.push(format!(
            "trimmed density >= 1+eps^2/7 in only {density_ok}/20 seeds (the prescribed trim of 248 top-degree vertices removes ~1400 edges and pushes the density to ~0.975)"
        ));
    }
    if extraction_ok < 20 {
        failures.push(format!(
            "extraction completed in only {extraction_ok}/20 seeds (density below 1 violates every admissible precondition)"
        ));
    }
    if degree_ok < 18 {
        failures.push(format!(
            "trimmed max degree <= 4 ln(1/eps) in only {degree_ok}/20 seeds"
        ));
    }
    conclude(8, "giant-component pipeline at n=1e5, eps=0.2", failures);
}

#[test]
fn criterion_09_triangle_blocking_tournament() {
    let fam = Family::triangles(5);
    let sums = criterion_sums(&fam, 2);
    let mut failures = Vec::new();
    let expected = num::BigRational::new(10.into(), 27.into());
    if sums.sum != expected {
        failures.push(format!("criterion sum {} is not 10/27", sums.sum));
    }
    if !sums.beck_holds {
        failures.push("10/27 < 1 must register as a blocking guarantee".into());
    }
    let opponents = ["random", "greedy", "potential-attack"];
    for opponent in opponents {
        let mut blocked = 0;
        for seed in 0..200u64 {
            let mut maker: Box<dyn Strategy> = match opponent {
                "random" => Box::new(random_edge_strategy(seed)),
                "greedy" => Box::new(greedy_degree_strategy()),
                _ => Box::new(potential_attack_strategy(fam.clone(), 2)),
            };
            let mut blocker = potential_blocker_strategy(fam.clone(), 2);
            let state = GameState::new(5, 2, GameKind::MakerBreaker, Side::B, seed).unwrap();
            let out = play_game(state, maker.as_mut(), &mut blocker).unwrap();
            if fam.member_inside(&out.graph_a).is_none() {
                blocked += 1;
            }
        }
        println!("        maker={opponent}: blocked {blocked}/200");
        if blocked != 200 {
            failures.push(format!("{opponent} maker completed a triangle in {} games", 200 - blocked));
        }
    }
    for opponent in opponents {
        let mut clean = 0;
        for seed in 0..200u64 {
            let mut avoider: Box<dyn Strategy> = match opponent {
                "random" => Box::new(random_edge_strategy(seed)),
                "greedy" => Box::new(greedy_degree_strategy()),
                _ => Box::new(potential_attack_strategy(fam.clone(), 2)),
            };
            let mut enforcer = potential_blocker_strategy(fam.clone(), 2);
            let state = GameState::new(5, 2, GameKind::AvoiderEnforcer, Side::B, seed).unwrap();
            let out = play_game(state, avoider.as_mut(), &mut enforcer).unwrap();
            if fam.member_inside(&out.graph_a).is_none() {
                clean += 1;
            }
        }
        println!("        avoider={opponent}: triangle-free {clean}/200");
        if clean != 200 {
            failures.push(format!(
                "avoider ({opponent}) ended with a triangle in {} games",
                200 - clean
            ));
        }
    }
    conclude(9, "triangle blocking at bias 2 on K5", failures);
}

#[test]
fn criterion_10_client_floor() {
    let floor = 45 / 4;
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let fam = Family::triangles(10);
        let mut client: Box<dyn Strategy> = match seed % 3 {
            0 => Box::new(random_edge_strategy(seed)),
            1 => Box::new(greedy_degree_strategy()),
            _ => Box::new(potential_attack_strategy(fam.clone(), 3)),
        };
        let mut waiter: Box<dyn Strategy> = match (seed / 3) % 2 {
            0 => Box::new(random_edge_strategy(seed ^ 0xff)),
            _ => Box::new(potential_blocker_strategy(fam, 3)),
        };
        let state = GameState::new(10, 3, GameKind::ClientWaiter, Side::B, seed).unwrap();
        let out = play_game(state, client.as_mut(), waiter.as_mut()).unwrap();
        if out.graph_a.m() < floor {
            failures.push(format!("seed {seed}: client got {} < {floor}", out.graph_a.m()));
        }
    }
    conclude(10, "client edge floor over 100 games at (n=10, b=3)", failures);
}

#[test]
fn criterion_11_maker_minor_pipeline() {
    let eps = rat(2, 5);
    let mut failures = Vec::new();
    let mut edge_floor_ok = 0;
    let mut props_ok = 0;
    let mut complete_ok = 0;
    let mut eligible = 0;
    for seed in 0..50u64 {
        let mut breaker = random_edge_strategy(seed ^ 0xb4ea);
        let report = maker_minor_pipeline(60, &eps, 18, seed, &mut breaker).unwrap();
        if report.board.edge_floor_ok {
            edge_floor_ok += 1;
        }
        let props = report.board.all_hold();
        if props {
            props_ok += 1;
            eligible += 1;
            if report.degree_bound_ok == Some(false) {
                failures.push(format!("seed {seed}: trimmed degree exceeds eps/(2 delta)"));
            }
            match &report.extraction {
                StageOutcome::Completed { outcome: ExtractionOutcome::Expander(_) } => {
                    match &report.minor {
                        Some(stage) if stage.validated && stage.order >= 4 => complete_ok += 1,
                        Some(stage) => failures.push(format!(
                            "seed {seed}: minor order {} (validated={})",
                            stage.order, stage.validated
                        )),
                        None => failures.push(format!("seed {seed}: minor stage missing")),
                    }
                }
                StageOutcome::Completed { .. } => {
                    failures.push(format!("seed {seed}: extraction returned a dense witness"))
                }
                StageOutcome::Failed { error } => {
                    failures.push(format!("seed {seed}: extraction failed: {error}"))
                }
            }
        }
    }
    println!(
        "        edge floor {edge_floor_ok}/50, all three properties {props_ok}/50, full chain {complete_ok}/{eligible}"
    );
    if edge_floor_ok != 50 {
        failures.push(format!("edge floor held in only {edge_floor_ok}/50 seeds"));
    }
    if (props_ok as f64) < 0.8 * 50.0 {
        failures.push(format!("properties held in only {props_ok}/50 seeds (< 80%)"));
    }
    conclude(11, "random-Maker minor pipeline at (n=60, eps=0.4, b=18)", failures);
}

#[test]
fn criterion_12_minor_oracle_agreement() {
    let mut failures = Vec::new();
    let mut corpus: Vec<(String, Graph)> = vec![
        ("k5".into(), complete(5)),
        ("c7".into(), cycle(7)),
        ("path8".into(), common::path(8)),
        ("grid2x4".into(), grid(2, 4)),
    ];
    for stream in 0..30u64 {
        let n = 5 + (stream as usize % 6);
        let mut r = rng(0x0c12, stream);
        let max_extra = (14usize.saturating_sub(n - 1)).min(n * (n - 1) / 2 - (n - 1));
        let g = random_connected(&mut r, n, stream as usize % (max_extra + 1));
        if g.m() <= 14 {
            // at most 14 edges: no room for an order-6 model, so the
            // capped exact search computes the true maximum
            corpus.push((format!("rand-{stream}"), g));
        }
    }
    println!("        corpus size: {}", corpus.len());
    for (label, g) in &corpus {
        let exact = xpk_core::minors::clique_minor_exact_max(g).unwrap();
        let greedy = xpk_core::minors::clique_minor_greedy(g, 7, 10).unwrap();
        if greedy.order() > exact {
            failures.push(format!("{label}: greedy {} beats exact {exact}", greedy.order()));
        }
        if xpk_core::minors::validate_clique_model(g, &greedy).is_err() {
            failures.push(format!("{label}: greedy model invalid"));
        }
    }
    let exact_petersen = xpk_core::minors::clique_minor_exact_max(&petersen()).unwrap();
    if exact_petersen != 5 {
        failures.push(format!("petersen exact order {exact_petersen}, expected 5"));
    }
    conclude(12, "greedy minor is dominated by the exact oracle", failures);
}
