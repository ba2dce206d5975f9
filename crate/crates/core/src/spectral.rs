//! Normalized-Laplacian spectral gap, constructive Cheeger sweep cuts, and
//! exact Cheeger constants on small graphs.
//!
//! The eigensolver is self-contained. Graphs with up to 64 vertices go
//! through a dense cyclic-Jacobi eigendecomposition, which acts as the
//! correctness anchor; larger graphs use Lanczos on the shifted operator
//! 2I - L with full reorthogonalization and deflation of the degree-weighted
//! constant vector. The reported eigenvalue is always the Rayleigh quotient
//! of the returned vector, so the sweep-cut guarantee below holds for the
//! reported numbers, not just for exact arithmetic.

use crate::graph::{is_connected, Graph, VertexSet};
use crate::rational::Rat;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("vertex {0} is isolated; the normalized Laplacian is undefined at degree 0")]
    IsolatedVertex(u32),
    #[error("graph has {0} vertices, need at least 2")]
    TooSmall(usize),
    #[error("no convergence within the iteration budget; best residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("graph has {n} vertices, exhaustive search capped at {max}")]
    TooLarge { n: usize, max: usize },
}

/// Second-smallest eigenvalue of the normalized Laplacian with its unit
/// eigenvector and the achieved backward error ||L x - lambda x||.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub lambda1: f64,
    pub eigvec: Vec<f64>,
    pub residual: f64,
}

pub const DENSE_CUTOFF: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-8;
const MAX_RESTARTS: usize = 10;
const MAX_APPLIES_PER_RESTART: usize = 10_000;

struct LaplacianOp<'g> {
    g: &'g Graph,
    inv_sqrt_deg: Vec<f64>,
}

impl<'g> LaplacianOp<'g> {
    fn new(g: &'g Graph) -> Result<Self, SpectralError> {
        if g.n() < 2 {
            return Err(SpectralError::TooSmall(g.n()));
        }
        if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
            return Err(SpectralError::IsolatedVertex(v));
        }
        let inv_sqrt_deg = g
            .vertices()
            .map(|v| 1.0 / (g.degree(v) as f64).sqrt())
            .collect();
        Ok(LaplacianOp { g, inv_sqrt_deg })
    }

    /// y = L x with L = I - D^{-1/2} A D^{-1/2}.
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for v in 0..self.g.n() {
            let mut acc = 0.0;
            for &u in self.g.neighbors(v as u32) {
                acc += x[u as usize] * self.inv_sqrt_deg[u as usize];
            }
            y[v] = x[v] - acc * self.inv_sqrt_deg[v];
        }
    }

    /// The lambda=0 eigenvector D^{1/2} 1, normalized.
    fn trivial_eigvec(&self) -> Vec<f64> {
        let mut v0: Vec<f64> = self
            .g
            .vertices()
            .map(|v| (self.g.degree(v) as f64).sqrt())
            .collect();
        normalize(&mut v0);
        v0
    }

    fn rayleigh_and_residual(&self, x: &[f64]) -> (f64, f64) {
        let mut lx = vec![0.0; x.len()];
        self.apply(x, &mut lx);
        let lambda = dot(x, &lx);
        let mut r2 = 0.0;
        for i in 0..x.len() {
            let d = lx[i] - lambda * x[i];
            r2 += d * d;
        }
        (lambda, r2.sqrt())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Cyclic Jacobi eigendecomposition of a dense symmetric matrix (row-major,
/// n x n). Returns eigenvalues and the orthogonal matrix of eigenvectors as
/// columns. Deterministic and accurate to ~1e-14 for the sizes used here.
fn jacobi_eigh(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off <= 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = c * aip - s * aiq;
                        a[p * n + i] = a[i * n + p];
                        a[i * n + q] = s * aip + c * aiq;
                        a[q * n + i] = a[i * n + q];
                    }
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    let eigvals: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    (eigvals, v)
}

/// lambda(G) by dense eigendecomposition. Valid for any size but O(n^3);
/// [`lambda1`] switches to it automatically for n <= 64.
pub fn lambda1_dense(g: &Graph) -> Result<SpectralResult, SpectralError> {
    let op = LaplacianOp::new(g)?;
    let n = g.n();
    let mut mat = vec![0.0f64; n * n];
    for v in 0..n {
        mat[v * n + v] = 1.0;
        for &u in g.neighbors(v as u32) {
            mat[v * n + u as usize] = -op.inv_sqrt_deg[v] * op.inv_sqrt_deg[u as usize];
        }
    }
    let (eigvals, eigvecs) = jacobi_eigh(&mut mat, n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigvals[i].total_cmp(&eigvals[j]));
    let second = order[1];
    let mut x: Vec<f64> = (0..n).map(|i| eigvecs[i * n + second]).collect();
    // The zero eigenspace of a disconnected graph is degenerate; force the
    // returned vector orthogonal to the trivial eigenvector.
    let v0 = op.trivial_eigvec();
    let proj = dot(&x, &v0);
    axpy(&mut x, -proj, &v0);
    normalize(&mut x);
    let (lambda1, residual) = op.rayleigh_and_residual(&x);
    Ok(SpectralResult {
        lambda1,
        eigvec: x,
        residual,
    })
}

/// Number of eigenvalues of the symmetric tridiagonal (alpha, beta) that
/// are strictly below x, by the Sturm pivot recurrence.
fn sturm_count_below(alpha: &[f64], beta: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..alpha.len() {
        let off = if i == 0 { 0.0 } else { beta[i - 1] };
        d = alpha[i] - x - off * off / d;
        if d == 0.0 {
            d = 1e-300;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest Ritz pair of a symmetric tridiagonal matrix: bisection on the
/// Sturm sequence for the eigenvalue, inverse iteration for the vector.
/// O(k) per bisection step, so convergence checks stay cheap even at large
/// Krylov dimensions.
fn tridiag_largest(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let k = alpha.len();
    if k == 1 {
        return (alpha[0], vec![1.0]);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let left = if i == 0 { 0.0 } else { beta[i - 1].abs() };
        let right = if i + 1 < k { beta[i].abs() } else { 0.0 };
        lo = lo.min(alpha[i] - left - right);
        hi = hi.max(alpha[i] + left + right);
    }
    let scale = hi.abs().max(lo.abs()).max(1e-30);
    let mut a = lo;
    let mut b = hi + scale * 1e-12;
    for _ in 0..90 {
        let mid = 0.5 * (a + b);
        if sturm_count_below(alpha, beta, mid) >= k {
            b = mid; // all eigenvalues below mid
        } else {
            a = mid;
        }
        if b - a <= scale * 1e-15 {
            break;
        }
    }
    let theta = 0.5 * (a + b);
    // inverse iteration on (T - theta I); a tiny shift keeps the solve
    // nonsingular when theta is essentially exact
    let shift = theta + scale * 1e-13;
    let mut z = vec![1.0f64; k];
    normalize(&mut z);
    for _ in 0..4 {
        let mut y = z.clone();
        solve_shifted_tridiag(alpha, beta, shift, &mut y);
        if normalize(&mut y) == 0.0 {
            break;
        }
        z = y;
    }
    // Rayleigh quotient of z in T as the reported Ritz value
    let mut tz = vec![0.0f64; k];
    for i in 0..k {
        tz[i] = alpha[i] * z[i];
        if i > 0 {
            tz[i] += beta[i - 1] * z[i - 1];
        }
        if i + 1 < k {
            tz[i] += beta[i] * z[i + 1];
        }
    }
    (dot(&z, &tz), z)
}

/// Solve (T - shift I) x = rhs in place for tridiagonal T, by LU with a
/// floor on the pivots (inverse-iteration quality is all that is needed).
fn solve_shifted_tridiag(alpha: &[f64], beta: &[f64], shift: f64, rhs: &mut [f64]) {
    let k = alpha.len();
    let mut diag: Vec<f64> = (0..k).map(|i| alpha[i] - shift).collect();
    let upper: Vec<f64> = (0..k.saturating_sub(1)).map(|i| beta[i]).collect();
    // forward elimination
    for i in 0..k - 1 {
        if diag[i].abs() < 1e-280 {
            diag[i] = 1e-280_f64.copysign(if diag[i] == 0.0 { 1.0 } else { diag[i] });
        }
        let factor = beta[i] / diag[i];
        diag[i + 1] -= factor * upper[i];
        let r = rhs[i];
        rhs[i + 1] -= factor * r;
    }
    if diag[k - 1].abs() < 1e-280 {
        diag[k - 1] = 1e-280;
    }
    rhs[k - 1] /= diag[k - 1];
    for i in (0..k - 1).rev() {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
}

/// lambda(G) by restarted Lanczos on B = 2I - L with full
/// reorthogonalization and deflation of the trivial eigenvector.
pub fn lambda1_iterative(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    let op = LaplacianOp::new(g)?;
    let n = g.n();
    let v0 = op.trivial_eigvec();
    let tol_abs = tol * 2.0; // relative to the spectral range [0, 2]
    let max_dim = (n - 1).min(220);

    let mut rng = ChaCha12Rng::seed_from_u64(0x5bd1_e995);
    let mut start: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let mut best: Option<SpectralResult> = None;

    let mut scratch = vec![0.0; n];
    for _restart in 0..MAX_RESTARTS {
        // orthonormalize the start vector against v0
        let proj = dot(&start, &v0);
        axpy(&mut start, -proj, &v0);
        if normalize(&mut start) < 1e-12 {
            start = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let proj = dot(&start, &v0);
            axpy(&mut start, -proj, &v0);
            normalize(&mut start);
        }

        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut applies = 0usize;
        let mut exhausted = false;

        while alphas.len() < max_dim && applies < MAX_APPLIES_PER_RESTART {
            let q = basis.last().unwrap().clone();
            // w = (2I - L) q
            op.apply(&q, &mut scratch);
            applies += 1;
            let mut w: Vec<f64> = q.iter().zip(&scratch).map(|(qi, li)| 2.0 * qi - li).collect();
            if let Some(beta_prev) = betas.last() {
                let prev = &basis[basis.len() - 2];
                axpy(&mut w, -beta_prev, prev);
            }
            let alpha = dot(&w, &q);
            axpy(&mut w, -alpha, &q);
            alphas.push(alpha);
            // full reorthogonalization, twice, including the deflated vector
            for _ in 0..2 {
                let p = dot(&w, &v0);
                axpy(&mut w, -p, &v0);
                for b in &basis {
                    let p = dot(&w, b);
                    axpy(&mut w, -p, b);
                }
            }
            let beta = dot(&w, &w).sqrt();
            if beta < 1e-13 {
                exhausted = true;
                break;
            }
            let k = alphas.len();
            if k % 4 == 0 || k == max_dim {
                let (_, z) = tridiag_largest(&alphas, &betas);
                if beta * z[k - 1].abs() <= tol_abs * 0.25 {
                    break;
                }
            }
            betas.push(beta);
            let mut next = w;
            for x in next.iter_mut() {
                *x /= beta;
            }
            basis.push(next);
        }

        let k = alphas.len();
        if k == 0 {
            continue;
        }
        let (_theta, z) = tridiag_largest(&alphas, &betas);
        let mut y = vec![0.0; n];
        for (zi, b) in z.iter().zip(&basis) {
            axpy(&mut y, *zi, b);
        }
        let p = dot(&y, &v0);
        axpy(&mut y, -p, &v0);
        normalize(&mut y);
        let (lambda, residual) = op.rayleigh_and_residual(&y);
        let candidate = SpectralResult {
            lambda1: lambda,
            eigvec: y.clone(),
            residual,
        };
        let improved = best
            .as_ref()
            .map_or(true, |b| candidate.residual < b.residual);
        if improved {
            best = Some(candidate);
        }
        if best.as_ref().unwrap().residual <= tol_abs {
            return Ok(best.unwrap());
        }
        if exhausted {
            // Krylov space exhausted: the Ritz pair is exact up to rounding.
            return Ok(best.unwrap());
        }
        start = y;
    }
    Err(SpectralError::NoConvergence {
        residual: best.map_or(f64::INFINITY, |b| b.residual),
    })
}

/// Second-smallest normalized-Laplacian eigenvalue of G to relative
/// tolerance `tol`: dense eigendecomposition for n <= 64, restarted Lanczos
/// beyond.
pub fn lambda1(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    if g.n() <= DENSE_CUTOFF {
        lambda1_dense(g)
    } else {
        lambda1_iterative(g, tol)
    }
}

/// A sweep cut: the minimum-conductance prefix of the vertices ordered by
/// eigvec[v] / sqrt(deg v), oriented so vol(W) <= vol(V)/2. Satisfies the
/// constructive Cheeger bound e(W, V\W) <= sqrt(2 lambda1) * vol(W).
#[derive(Debug, Clone)]
pub struct SweepCut {
    pub cut_set: VertexSet,
    pub edge_boundary: usize,
    pub vol_w: usize,
    pub conductance: f64,
}

pub fn sweep_cut(g: &Graph, spec: &SpectralResult) -> Result<SweepCut, SpectralError> {
    let op = LaplacianOp::new(g)?;
    let n = g.n();
    assert_eq!(spec.eigvec.len(), n, "eigenvector size mismatch");
    let mut order: Vec<u32> = (0..n as u32).collect();
    let key = |v: u32| spec.eigvec[v as usize] * op.inv_sqrt_deg[v as usize];
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)).then(a.cmp(&b)));

    let vol_total: u64 = (2 * g.m()) as u64;
    let mut in_prefix = vec![false; n];
    let mut boundary: u64 = 0;
    let mut vol: u64 = 0;
    // best = (boundary, min_vol, prefix_len); exact comparisons only
    let mut best: Option<(u64, u64, usize)> = None;
    for (idx, &v) in order.iter().enumerate().take(n - 1) {
        let deg = g.degree(v) as u64;
        let inside = g
            .neighbors(v)
            .iter()
            .filter(|&&u| in_prefix[u as usize])
            .count() as u64;
        boundary = boundary + deg - 2 * inside;
        vol += deg;
        in_prefix[v as usize] = true;
        let min_vol = vol.min(vol_total - vol);
        let better = match best {
            None => true,
            Some((bb, bv, _)) => {
                // boundary/min_vol < bb/bv, ties to the smaller min-side volume
                let lhs = (boundary as u128) * (bv as u128);
                let rhs = (bb as u128) * (min_vol as u128);
                lhs < rhs || (lhs == rhs && min_vol < bv)
            }
        };
        if better {
            best = Some((boundary, min_vol, idx + 1));
        }
    }
    let (bb, bv, len) = best.expect("n >= 2 guarantees a prefix cut");
    let prefix: Vec<u32> = order[..len].to_vec();
    let prefix_vol: u64 = prefix.iter().map(|&v| g.degree(v) as u64).sum();
    let cut_set = if 2 * prefix_vol <= vol_total {
        VertexSet::new(prefix)
    } else {
        VertexSet::new(prefix).complement(n)
    };
    Ok(SweepCut {
        cut_set,
        edge_boundary: bb as usize,
        vol_w: bv as usize,
        conductance: bb as f64 / bv as f64,
    })
}

/// Exact Cheeger constant h(G) = min over cuts of boundary / min-side volume,
/// by exhaustive enumeration with exact rational arithmetic. Capped at
/// n <= 20. A disconnected graph reports h = 0 with a component as witness.
pub fn cheeger_exact(g: &Graph) -> Result<(Rat, VertexSet), SpectralError> {
    const MAX_N: usize = 20;
    let n = g.n();
    if n < 2 {
        return Err(SpectralError::TooSmall(n));
    }
    if n > MAX_N {
        return Err(SpectralError::TooLarge { n, max: MAX_N });
    }
    if !is_connected(g) {
        let part = crate::graph::connected_components(g).into_iter().next().unwrap();
        return Ok((Rat::from_integer(0), part));
    }
    let adj_mask: Vec<u32> = (0..n as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u32, |acc, &u| acc | (1u32 << u))
        })
        .collect();
    let deg: Vec<u64> = (0..n as u32).map(|v| g.degree(v) as u64).collect();
    let vol_total: u64 = 2 * g.m() as u64;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<(u64, u64, u32)> = None;
    // every cut has exactly one side containing vertex 0
    let mut mask: u32 = 1;
    while mask <= full {
        if mask & 1 == 1 && mask != full {
            let mut boundary: u64 = 0;
            let mut vol: u64 = 0;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                boundary += (adj_mask[v as usize] & !mask).count_ones() as u64;
                vol += deg[v as usize];
            }
            let min_vol = vol.min(vol_total - vol);
            let better = match best {
                None => true,
                Some((bb, bv, _)) => {
                    (boundary as u128) * (bv as u128) < (bb as u128) * (min_vol as u128)
                }
            };
            if better {
                best = Some((boundary, min_vol, mask));
            }
        }
        mask += 2; // keep bit 0 set
    }
    let (bb, bv, mask) = best.expect("connected graph with n >= 2 has a cut");
    let witness = VertexSet::new((0..n as u32).filter(|&v| mask & (1 << v) != 0).collect());
    Ok((Rat::new(bb as i64, bv as i64), witness))
}
