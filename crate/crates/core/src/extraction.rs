//! The expander-or-dense-witness dichotomy.
//!
//! [`extract_expander`] peels a globally dense bounded-degree graph with
//! spectral sweep cuts until it either shrinks below the alpha*n size cap
//! (yielding a small vertex set that is provably dense) or reaches a
//! subgraph whose spectral gap clears lambda*, which certifies vertex
//! expansion through the Cheeger chain. [`existential_oracle`] runs the
//! exhaustive density iteration instead — exponential, so capped at toy
//! size — and serves as the independent route the tests compare against.
//!
//! Both outcome variants are re-verified before they are returned.

use crate::expansion::vertex_expansion_exact;
use crate::graph::{induced_subgraph, subset_stats, Graph, GraphError, VertexSet};
use crate::rational::{ceil_log2_inverse, rat_to_f64, Rat, RatRepr};
use crate::spectral::{lambda1, sweep_cut, SpectralError, DEFAULT_TOL};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtractionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("density {num}/{den} is below the required c1", num = .density.num, den = .density.den)]
    PreconditionDensity { density: RatRepr, required: RatRepr },
    #[error("max degree {max_degree} exceeds the cap {cap}")]
    PreconditionDegree { max_degree: usize, cap: u32 },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
    #[error("graph has {n} vertices, exhaustive oracle capped at {max}")]
    TooLarge { n: usize, max: usize },
    #[error("hypothesis {hypothesis:?} fails; witness {witness:?}")]
    HypothesisViolated {
        hypothesis: Hypothesis,
        witness: VertexSet,
    },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    GlobalDensity,
    LocalSparsity,
    MaxDegree,
}

/// The fixed constants of one extraction problem: densities c1 > c2 > 1,
/// the size fraction alpha in (0,1) and the degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionParams {
    pub c1: Rat,
    pub c2: Rat,
    pub alpha: Rat,
    pub delta_cap: u32,
}

impl ExtractionParams {
    pub fn new(c1: Rat, c2: Rat, alpha: Rat, delta_cap: u32) -> Result<Self, ExtractionError> {
        let one = Rat::from_integer(1);
        if !(c1 > c2 && c2 > one) {
            return Err(ExtractionError::InvalidParams(format!(
                "need c1 > c2 > 1, got c1 = {c1}, c2 = {c2}"
            )));
        }
        if !(alpha > Rat::from_integer(0) && alpha < one) {
            return Err(ExtractionError::InvalidParams(format!(
                "need 0 < alpha < 1, got {alpha}"
            )));
        }
        if delta_cap < 1 {
            return Err(ExtractionError::InvalidParams("delta_cap must be >= 1".into()));
        }
        Ok(ExtractionParams { c1, c2, alpha, delta_cap })
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds::derive(self)
    }
}

/// All derived constants.
///
/// The existential route works in `level_count` halving levels with a
/// per-level density budget `delta_exist` and delivers expansion
/// `gamma_exist`. The algorithmic route peels for at most ~`k_alg` keep
/// steps with budget `delta_alg`; its spectral threshold `lambda_star` is
/// the point where the sweep guarantee e <= sqrt(2 lambda) * Delta * |W|
/// crosses the needed delta_alg * |W|, and a graph passing it is a
/// `gamma_alg`-expander by the Cheeger chain.
#[derive(Debug, Clone, Serialize)]
pub struct Thresholds {
    pub level_count: u32,
    pub delta_exist: RatRepr,
    pub gamma_exist: RatRepr,
    pub k_alg: f64,
    pub k_alg_ceil: u32,
    pub delta_alg: f64,
    pub lambda_star: f64,
    pub gamma_alg: f64,
    #[serde(skip)]
    delta_exist_rat: Rat,
    #[serde(skip)]
    gamma_exist_rat: Rat,
    #[serde(skip)]
    c1: Rat,
}

impl Thresholds {
    fn derive(p: &ExtractionParams) -> Thresholds {
        let level_count = ceil_log2_inverse(&p.alpha);
        debug_assert!(level_count >= 1);
        let gap = p.c1 - p.c2;
        let delta_exist = gap / Rat::from_integer(level_count as i64);
        let gamma_exist = gap
            / (Rat::from_integer(p.delta_cap as i64) * Rat::from_integer(level_count as i64));
        let alpha = rat_to_f64(&p.alpha);
        let k_alg = alpha.ln() / (1.0 - 1.0 / (2.0 * p.delta_cap as f64)).ln();
        let delta_alg = rat_to_f64(&gap) / (2.0 * k_alg);
        let cap = p.delta_cap as f64;
        let lambda_star = delta_alg * delta_alg / (2.0 * cap * cap);
        let gamma_alg = lambda_star / (2.0 * cap);
        Thresholds {
            level_count,
            delta_exist: delta_exist.into(),
            gamma_exist: gamma_exist.into(),
            k_alg,
            k_alg_ceil: k_alg.ceil() as u32,
            delta_alg,
            lambda_star,
            gamma_alg,
            delta_exist_rat: delta_exist,
            gamma_exist_rat: gamma_exist,
            c1: p.c1,
        }
    }

    /// The density floor at level i of the existential route: c1 - i*delta.
    pub fn beta(&self, i: u32) -> Rat {
        self.c1 - Rat::from_integer(i as i64) * self.delta_exist_rat
    }

    pub fn delta_exist_rat(&self) -> Rat {
        self.delta_exist_rat
    }

    pub fn gamma_exist_rat(&self) -> Rat {
        self.gamma_exist_rat
    }
}

/// One entry of the iteration log. Densities are exact.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "step")]
pub enum TraceStep {
    RemoveIsolated {
        removed: Vec<u32>,
        size_after: usize,
    },
    Spectral {
        size: usize,
        edges: usize,
        density: RatRepr,
        lambda: f64,
        residual: f64,
    },
    PeelDelete {
        cut_size: usize,
        boundary: usize,
        touched: usize,
        size_after: usize,
    },
    PeelKeep {
        cut_size: usize,
        boundary: usize,
        touched: usize,
        keep_steps: u32,
    },
    Certificate {
        size: usize,
        lambda: f64,
    },
    DenseHalt {
        size: usize,
        within: usize,
    },
}

pub type Trace = Vec<TraceStep>;

#[derive(Debug, Clone, Serialize)]
pub struct ExpanderCertificate {
    /// vertices of the expander, in the ids of the input graph
    pub vertices: VertexSet,
    pub lambda_achieved: f64,
    pub gamma_lower_bound: f64,
    pub trace: Trace,
}

#[derive(Debug, Clone, Serialize)]
pub struct DenseWitness {
    pub w: VertexSet,
    pub spanned_edges: usize,
    pub trace: Trace,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome")]
pub enum ExtractionOutcome {
    Expander(ExpanderCertificate),
    Dense(DenseWitness),
}

impl ExtractionOutcome {
    pub fn trace(&self) -> &Trace {
        match self {
            ExtractionOutcome::Expander(c) => &c.trace,
            ExtractionOutcome::Dense(d) => &d.trace,
        }
    }

    pub fn is_expander(&self) -> bool {
        matches!(self, ExtractionOutcome::Expander(_))
    }
}

fn size_at_most(size: usize, frac: &Rat, n: usize) -> bool {
    // size <= frac * n
    Rat::from_integer(size as i64) <= *frac * Rat::from_integer(n as i64)
}

fn density_at_least(m: usize, size: usize, bound: &Rat) -> bool {
    // m / size >= bound
    Rat::new(m as i64, size as i64) >= *bound
}

/// Peel G until a small dense set or a spectrally certified expander
/// appears.
///
/// Loop shape, starting from the full vertex set: stop with a dense witness
/// once |V_i| <= alpha*n; otherwise drop isolated vertices (all of them in
/// one step), compute lambda(G_i), certify if it clears lambda*, and
/// otherwise take the sweep cut W_i and either delete it (touches at most
/// d_i|W_i| edges — this cannot lower the density) or recurse into it.
pub fn extract_expander(
    g: &Graph,
    params: &ExtractionParams,
) -> Result<ExtractionOutcome, ExtractionError> {
    let th = params.thresholds();
    if g.density() < params.c1 {
        return Err(ExtractionError::PreconditionDensity {
            density: g.density().into(),
            required: params.c1.into(),
        });
    }
    if g.max_degree() > params.delta_cap as usize {
        return Err(ExtractionError::PreconditionDegree {
            max_degree: g.max_degree(),
            cap: params.delta_cap,
        });
    }
    let n0 = g.n();
    let mut current: VertexSet = g.vertices().collect();
    let mut trace: Trace = Vec::new();
    let mut keep_steps = 0u32;

    for _iter in 0..=n0 + 1 {
        if size_at_most(current.len(), &params.alpha, n0) {
            let stats = subset_stats(g, &current)?;
            if !density_at_least(stats.within, current.len(), &params.c2) {
                return Err(ExtractionError::InternalInvariantViolated(format!(
                    "candidate witness of size {} spans only {} edges, below c2 = {}",
                    current.len(),
                    stats.within,
                    params.c2
                )));
            }
            trace.push(TraceStep::DenseHalt {
                size: current.len(),
                within: stats.within,
            });
            return Ok(ExtractionOutcome::Dense(DenseWitness {
                w: current,
                spanned_edges: stats.within,
                trace,
            }));
        }

        let sub = induced_subgraph(g, &current)?;
        let gi = &sub.graph;

        let isolated: Vec<u32> = gi
            .vertices()
            .filter(|&v| gi.degree(v) == 0)
            .map(|v| sub.original_id(v))
            .collect();
        if !isolated.is_empty() {
            let iso_set = VertexSet::new(isolated.clone());
            current = VertexSet::new(
                current.iter().filter(|v| !iso_set.contains(*v)).collect(),
            );
            trace.push(TraceStep::RemoveIsolated {
                removed: isolated,
                size_after: current.len(),
            });
            continue;
        }

        let ni = gi.n();
        let mi = gi.m();
        if !density_at_least(mi, ni, &params.c2) {
            return Err(ExtractionError::InternalInvariantViolated(format!(
                "density {}/{} fell below c2 = {} at size {} > alpha*n",
                mi, ni, params.c2, ni
            )));
        }

        let spec = lambda1(gi, DEFAULT_TOL)?;
        trace.push(TraceStep::Spectral {
            size: ni,
            edges: mi,
            density: gi.density().into(),
            lambda: spec.lambda1,
            residual: spec.residual,
        });

        if spec.lambda1 >= th.lambda_star {
            // re-verify from scratch before certifying
            let recheck = lambda1(gi, DEFAULT_TOL)?;
            if recheck.lambda1 < th.lambda_star {
                return Err(ExtractionError::InternalInvariantViolated(format!(
                    "certificate recheck lambda {} fell below lambda* {}",
                    recheck.lambda1, th.lambda_star
                )));
            }
            trace.push(TraceStep::Certificate {
                size: ni,
                lambda: spec.lambda1,
            });
            return Ok(ExtractionOutcome::Expander(ExpanderCertificate {
                vertices: current,
                lambda_achieved: spec.lambda1,
                gamma_lower_bound: spec.lambda1 / (2.0 * params.delta_cap as f64),
                trace,
            }));
        }

        let cut = sweep_cut(gi, &spec)?;
        let local_stats = subset_stats(gi, &cut.cut_set)?;
        let touched = local_stats.touching;
        let w_orig = sub.restore(&cut.cut_set);
        // touched <= d_i |W| decides deletion; ties delete
        if (touched as u128) * (ni as u128) <= (mi as u128) * (cut.cut_set.len() as u128) {
            current = VertexSet::new(
                current.iter().filter(|v| !w_orig.contains(*v)).collect(),
            );
            trace.push(TraceStep::PeelDelete {
                cut_size: w_orig.len(),
                boundary: local_stats.boundary,
                touched,
                size_after: current.len(),
            });
        } else {
            keep_steps += 1;
            trace.push(TraceStep::PeelKeep {
                cut_size: w_orig.len(),
                boundary: local_stats.boundary,
                touched,
                keep_steps,
            });
            current = w_orig;
        }
    }
    Err(ExtractionError::InternalInvariantViolated(
        "peeling failed to terminate within n iterations".into(),
    ))
}

const ORACLE_MAX_N: usize = 14;

/// The exhaustive existential route, usable only at toy scale. Verifies the
/// three hypotheses exhaustively, then iterates: find the smallest induced
/// subgraph of density >= beta_i, descend into a half-sized subset of
/// density >= beta_{i+1} while one exists, and return the final level with
/// its exact vertex expansion.
pub fn existential_oracle(
    g: &Graph,
    params: &ExtractionParams,
) -> Result<(VertexSet, Rat), ExtractionError> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(ExtractionError::TooLarge { n, max: ORACLE_MAX_N });
    }
    let th = params.thresholds();

    if g.density() < params.c1 {
        return Err(ExtractionError::HypothesisViolated {
            hypothesis: Hypothesis::GlobalDensity,
            witness: g.vertices().collect(),
        });
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) > params.delta_cap as usize) {
        return Err(ExtractionError::HypothesisViolated {
            hypothesis: Hypothesis::MaxDegree,
            witness: VertexSet::new(vec![v]),
        });
    }
    if let Some(w) = local_sparsity_counterexample(g, &params.c2, &params.alpha) {
        return Err(ExtractionError::HypothesisViolated {
            hypothesis: Hypothesis::LocalSparsity,
            witness: w,
        });
    }

    let alpha_n = params.alpha * Rat::from_integer(n as i64);
    let mut current: VertexSet = g.vertices().collect();
    for level in 0..=th.level_count {
        let beta_i = th.beta(level);
        let sub = induced_subgraph(g, &current)?;
        let h_local = minimal_dense_subset(&sub.graph, &beta_i).ok_or_else(|| {
            ExtractionError::InternalInvariantViolated(format!(
                "no subgraph of density >= beta_{level} = {beta_i} found; the level graph \
                 itself should qualify"
            ))
        })?;
        let h_orig = sub.restore(&h_local);
        let h_sub = induced_subgraph(g, &h_orig)?;
        let hg = &h_sub.graph;

        if level == th.level_count {
            return Err(ExtractionError::InternalInvariantViolated(
                "density iteration reached the final level; local sparsity should forbid this"
                    .into(),
            ));
        }

        let beta_next = th.beta(level + 1);
        let descend = half_sized_dense_subset(hg, &beta_next, &alpha_n);
        match descend {
            Some(w_local) => {
                current = h_sub.restore(&w_local);
            }
            None => {
                // halt: hg is the expander
                if Rat::from_integer(hg.n() as i64) < alpha_n {
                    return Err(ExtractionError::InternalInvariantViolated(format!(
                        "final subgraph has {} vertices, below alpha*n = {alpha_n}",
                        hg.n()
                    )));
                }
                let profile = vertex_expansion_exact(hg).map_err(|e| {
                    ExtractionError::InternalInvariantViolated(format!(
                        "expansion of the final subgraph unavailable: {e}"
                    ))
                })?;
                return Ok((h_orig, profile.gamma));
            }
        }
    }
    unreachable!("loop returns or errors within level_count iterations")
}

/// Exhaustive counterexample search for "every |W| <= alpha*n spans fewer
/// than c2|W| edges". The oracle's n <= 14 cap makes this affordable.
fn local_sparsity_counterexample(g: &Graph, c2: &Rat, alpha: &Rat) -> Option<VertexSet> {
    let n = g.n();
    let kmax = crate::rational::floor_times(alpha, n);
    if kmax == 0 {
        return None;
    }
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    for mask in 1u32..=full {
        let size = mask.count_ones() as usize;
        if size > kmax {
            continue;
        }
        let within = within_edges(&adj, mask) as usize;
        if Rat::from_integer(within as i64) >= *c2 * Rat::from_integer(size as i64) {
            return Some(mask_to_set(mask, n));
        }
    }
    None
}

fn within_edges(adj: &[u32], mask: u32) -> u32 {
    let mut within2 = 0u32;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        within2 += (adj[v as usize] & mask).count_ones();
    }
    within2 / 2
}

fn mask_to_set(mask: u32, n: usize) -> VertexSet {
    VertexSet::new((0..n as u32).filter(|&v| mask & (1 << v) != 0).collect())
}

/// Smallest-cardinality (hence inclusion-minimal) nonempty subset whose
/// induced density reaches `beta`. Size-ascending, then numeric mask order.
fn minimal_dense_subset(g: &Graph, beta: &Rat) -> Option<VertexSet> {
    let n = g.n();
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 1u32..=full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=n {
        for &mask in &by_size[size] {
            let within = within_edges(&adj, mask) as usize;
            if density_at_least(within, size, beta) {
                return Some(mask_to_set(mask, n));
            }
        }
    }
    None
}

/// First subset W (size-ascending, then numeric mask order) with
/// alpha*n <= |W| <= |U|/2 spanning at least `beta_next * |W|` edges.
fn half_sized_dense_subset(g: &Graph, beta_next: &Rat, alpha_n: &Rat) -> Option<VertexSet> {
    let n = g.n();
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 1u32..=full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=n / 2 {
        if Rat::from_integer(size as i64) < *alpha_n {
            continue;
        }
        for &mask in &by_size[size] {
            let within = within_edges(&adj, mask) as usize;
            if Rat::from_integer(within as i64) >= *beta_next * Rat::from_integer(size as i64) {
                return Some(mask_to_set(mask, n));
            }
        }
    }
    None
}

/// Spectral certification of vertex expansion: returns lambda(G) / (2 Δ(G)).
///
/// Chain: lambda <= 2h gives h >= lambda/2; with no isolated vertex every W
/// with |W| <= n/2 has min-side volume >= |W|, so its edge boundary is at
/// least h|W|; dividing by the max degree bounds |N(W)| from below.
pub fn certify_spectral_expansion(g: &Graph) -> Result<f64, ExtractionError> {
    let spec = lambda1(g, DEFAULT_TOL)?;
    Ok(spec.lambda1 / (2.0 * g.max_degree() as f64))
}
