//! Seeded G(n,p) generation and the Monte-Carlo experiments: local sparsity
//! of sparse random graphs, the edge-touch bound, and the giant-component
//! extraction pipeline.
//!
//! The PRNG is pinned: ChaCha12, seeded with the experiment seed, one
//! stream per trial (`set_stream(trial)`), so trials replay bit-identically
//! and can run in any order or in parallel.

use crate::extraction::{extract_expander, ExtractionOutcome, ExtractionParams};
use crate::graph::{connected_components, induced_subgraph, trim_high_degree, Graph};
use crate::rational::{ceil_times, rat_to_f64, Rat, RatRepr};
use crate::sparsity::{local_sparsity_verdict, touch_bound_verdict, SparsityStatus, SparsityVerdict};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RandomError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// One G(n,p) draw: every vertex pair appears independently with
/// probability p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GnpSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

/// The per-trial generator: ChaCha12 keyed by the experiment seed, with the
/// trial index as the stream id.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Sample G(n,p). For p <= 0.1 the walk over the C(n,2) pair slots uses
/// inverted-geometric skipping, so the expected time is O(p n^2 + n).
pub fn gnp(spec: &GnpSpec) -> Graph {
    let mut rng = ChaCha12Rng::seed_from_u64(spec.seed);
    gnp_with_rng(spec.n, spec.p, &mut rng)
}

pub fn gnp_with_rng(n: usize, p: f64, rng: &mut ChaCha12Rng) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0,1]");
    let total: u64 = (n as u64) * (n as u64 - 1) / 2;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    if n < 2 || p == 0.0 {
        return Graph::from_edges(n, &edges).unwrap();
    }
    if p >= 1.0 {
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        return Graph::from_edges(n, &edges).unwrap();
    }
    if p <= 0.1 {
        // skip ~ Geometric(p) over pair indices in lexicographic order
        let log1p = (-p).ln_1p();
        let mut slot: u64 = 0; // next candidate pair index
        // decode walks forward, so keep the row cursor between edges
        let mut row: u64 = 0;
        let mut row_start: u64 = 0; // index of (row, row+1)
        loop {
            let u: f64 = rng.gen();
            let skip = (1.0 - u).ln() / log1p;
            if !skip.is_finite() || skip >= (total - slot) as f64 {
                break;
            }
            slot += skip as u64;
            if slot >= total {
                break;
            }
            while row_start + (n as u64 - 1 - row) <= slot {
                row_start += n as u64 - 1 - row;
                row += 1;
            }
            let col = row + 1 + (slot - row_start);
            edges.push((row as u32, col as u32));
            slot += 1;
            if slot >= total {
                break;
            }
        }
    } else {
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// The sparsity scale alpha = (c2 / (5 c1))^(c2/(c2-1)) under which a
/// random graph of density ~c1 is locally sparse with high probability.
pub fn gnp_sparsity_alpha(c1: &Rat, c2: &Rat) -> f64 {
    let base = rat_to_f64(c2) / (5.0 * rat_to_f64(c1));
    let exponent = rat_to_f64(c2) / (rat_to_f64(c2) - 1.0);
    base.powf(exponent)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub edges: usize,
    pub status: SparsityStatus,
    pub witness_size: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct McReport {
    pub trials: u32,
    pub violations: u32,
    pub inconclusive: u32,
    pub passes: u32,
    pub violation_rate: f64,
    /// 95% Wilson interval for the violation rate
    pub violation_ci: (f64, f64),
    pub rows: Vec<TrialRow>,
}

fn wilson_interval(successes: u32, trials: u32) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn tally(rows: Vec<TrialRow>) -> McReport {
    let trials = rows.len() as u32;
    let violations = rows
        .iter()
        .filter(|r| r.status == SparsityStatus::Violation)
        .count() as u32;
    let inconclusive = rows
        .iter()
        .filter(|r| r.status == SparsityStatus::Inconclusive)
        .count() as u32;
    let passes = trials - violations - inconclusive;
    McReport {
        trials,
        violations,
        inconclusive,
        passes,
        violation_rate: if trials == 0 { 0.0 } else { violations as f64 / trials as f64 },
        violation_ci: wilson_interval(violations, trials),
        rows,
    }
}

/// Monte-Carlo check of local sparsity: each trial draws G(n, c1/n) and runs
/// the local-sparsity verdict at the alpha given by [`gnp_sparsity_alpha`].
pub fn monte_carlo_local_sparsity(
    n: usize,
    c1: &Rat,
    c2: &Rat,
    trials: u32,
    effort: u64,
    seed: u64,
) -> Result<McReport, RandomError> {
    if !(c1 > c2 && *c2 > Rat::from_integer(1)) {
        return Err(RandomError::InvalidParams(format!(
            "need c1 > c2 > 1, got c1 = {c1}, c2 = {c2}"
        )));
    }
    let alpha = gnp_sparsity_alpha(c1, c2);
    // the verdict takes an exact fraction; quantize alpha at 1e-9, which
    // leaves floor(alpha*n) unchanged for every n used here
    let alpha_rat = Rat::new((alpha * 1e9).floor() as i64, 1_000_000_000);
    let p = rat_to_f64(c1) / n as f64;
    let mut rows = Vec::with_capacity(trials as usize);
    for trial in 0..trials as u64 {
        let mut rng = trial_rng(seed, trial);
        let g = gnp_with_rng(n, p, &mut rng);
        let verdict = if alpha_rat <= Rat::from_integer(0) {
            // alpha so small the constraint is empty
            SparsityVerdict {
                status: SparsityStatus::PassExact,
                witness: None,
                effort_used: 0,
                best_density: None,
            }
        } else {
            local_sparsity_verdict(&g, c2, &alpha_rat, effort)
                .map_err(|e| RandomError::InvalidParams(e.to_string()))?
        };
        rows.push(TrialRow {
            trial,
            edges: g.m(),
            witness_size: verdict.witness.as_ref().map(|w| w.len()),
            status: verdict.status,
        });
    }
    Ok(tally(rows))
}

/// Monte-Carlo check of the edge-touch bound: each trial draws G(n, c/n)
/// and asks whether every floor(delta*n/ln(1/delta))-set touches fewer than
/// ceil(delta*n) edges.
pub fn monte_carlo_touch(
    n: usize,
    c: f64,
    delta: &Rat,
    trials: u32,
    seed: u64,
) -> Result<McReport, RandomError> {
    if c < 0.0 {
        return Err(RandomError::InvalidParams(format!("need c >= 0, got {c}")));
    }
    let delta_f = rat_to_f64(delta);
    if !(delta_f > 0.0 && delta_f < 1.0 / std::f64::consts::E) {
        return Err(RandomError::InvalidParams(format!(
            "need 0 < delta < 1/e, got {delta}"
        )));
    }
    let dn = delta_f * n as f64;
    let m = (dn / (1.0 / delta_f).ln()).floor() as usize;
    let t = ceil_times(delta, n);
    let p = (c / n as f64).min(1.0);
    let mut rows = Vec::with_capacity(trials as usize);
    for trial in 0..trials as u64 {
        let mut rng = trial_rng(seed, trial);
        let g = gnp_with_rng(n, p, &mut rng);
        let verdict = touch_bound_verdict(&g, m, t)
            .map_err(|e| RandomError::InvalidParams(e.to_string()))?;
        rows.push(TrialRow {
            trial,
            edges: g.m(),
            witness_size: verdict.witness.as_ref().map(|w| w.len()),
            status: verdict.status,
        });
    }
    Ok(tally(rows))
}

/// Extraction attempted at the end of the pipeline; failures are data, not
/// panics, so the report always materializes.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status")]
pub enum StageOutcome {
    Completed { outcome: ExtractionOutcome },
    Failed { error: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub eps: RatRepr,
    pub seed: u64,
    pub total_edges: usize,
    pub giant_size: usize,
    pub giant_fraction: f64,
    pub giant_density: RatRepr,
    pub trim_count: usize,
    pub trimmed_size: usize,
    pub trimmed_density: RatRepr,
    pub trimmed_max_degree: usize,
    pub extraction_outcome: StageOutcome,
}

/// Draw G(n, (1+eps)/n), take the largest component, trim the
/// floor(eps^3/(2 ln(1/eps)) * n) highest-degree vertices, and run the
/// extraction on what is left.
pub fn giant_pipeline(
    n: usize,
    eps: &Rat,
    seed: u64,
    params: &ExtractionParams,
) -> Result<PipelineReport, RandomError> {
    let one = Rat::from_integer(1);
    if !(*eps > Rat::from_integer(0) && *eps < one) {
        return Err(RandomError::InvalidParams(format!(
            "need 0 < eps < 1, got {eps}"
        )));
    }
    let eps_f = rat_to_f64(eps);
    let p = (1.0 + eps_f) / n as f64;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = gnp_with_rng(n, p, &mut rng);
    let comps = connected_components(&g);
    let giant = comps.into_iter().next().expect("n >= 1");
    let giant_sub = induced_subgraph(&g, &giant).expect("giant is nonempty");
    let giant_size = giant_sub.graph.n();
    let giant_density = giant_sub.graph.density();

    let eps_cubed_n = rat_to_f64(&(*eps * *eps * *eps * Rat::from_integer(n as i64)));
    let trim_count = (eps_cubed_n / (2.0 * (1.0 / eps_f).ln())).floor() as usize;
    if trim_count >= giant_size {
        return Err(RandomError::InvalidParams(format!(
            "trim count {trim_count} swallows the whole giant ({giant_size} vertices)"
        )));
    }
    let (trimmed_shell, removed) =
        trim_high_degree(&giant_sub.graph, trim_count).expect("count checked above");
    let kept = removed.complement(giant_size);
    let trimmed = induced_subgraph(&trimmed_shell, &kept).expect("kept side is nonempty");
    let trimmed_size = trimmed.graph.n();
    debug_assert_eq!(trimmed_size, giant_size - trim_count);

    let extraction_outcome = match extract_expander(&trimmed.graph, params) {
        Ok(outcome) => StageOutcome::Completed { outcome },
        Err(e) => StageOutcome::Failed { error: e.to_string() },
    };

    Ok(PipelineReport {
        n,
        eps: (*eps).into(),
        seed,
        total_edges: g.m(),
        giant_size,
        giant_fraction: giant_size as f64 / n as f64,
        giant_density: giant_density.into(),
        trim_count,
        trimmed_size,
        trimmed_density: trimmed.graph.density().into(),
        trimmed_max_degree: trimmed.graph.max_degree(),
        extraction_outcome,
    })
}
