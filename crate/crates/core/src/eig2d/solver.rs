//! Smallest eigenpairs of the discrete operators.
//!
//! Small blocks go to a dense symmetric eigensolver (Householder
//! tridiagonalisation + implicit QR). Larger blocks use shift-invert subspace
//! iteration with a banded Cholesky factor and Rayleigh–Ritz on A⁻¹; each block
//! result is certified by an LDLᵀ inertia count of A − σI, and the merged
//! result is certified across blocks.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Float;

use super::banded::BandedSym;
use super::grid::{Dense, DiscreteOperator, Parity};
use crate::error::{Error, Result};

/// Default limit for dense solves (matrix dimension).
pub const DENSE_LIMIT: usize = 4096;
/// Blocks up to this size are solved densely under [`Method::Auto`].
pub const AUTO_DENSE_MAX: usize = 512;
/// Residual contract ‖Av − λv‖ ≤ RESIDUAL_TOL ‖A‖.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    Auto,
    Dense,
    Banded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub method: Method,
    pub dense_limit: usize,
    /// Split by the reflection symmetries of the rectangle.
    pub fold: bool,
    pub vectors: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { method: Method::Auto, dense_limit: DENSE_LIMIT, fold: true, vectors: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs {
    /// Ascending.
    pub values: Vec<f64>,
    /// Full-grid, orthonormal in the Euclidean inner product; empty unless requested.
    pub vectors: Vec<Vec<f64>>,
    /// ‖Av − λv‖ per pair.
    pub residuals: Vec<f64>,
    /// Bound on ‖A‖ (infinity norm).
    pub norm: f64,
}

fn sign_fix(v: &mut [f64]) {
    let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * m) {
        if *first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

fn residual(a: &BandedSym, v: &[f64], lambda: f64) -> f64 {
    let mut av = vec![0.0; v.len()];
    a.matvec(v, &mut av);
    av.iter().zip(v).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt()
}

/// k smallest eigenpairs of a dense symmetric matrix (row-major n×n).
pub fn dense_smallest(a: &Dense, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.n;
    if k > n {
        return Err(Error::Domain("k exceeds the matrix dimension"));
    }
    let (asym, i, j) = a.asymmetry();
    if asym > 1e-12 {
        return Err(Error::NotSymmetric(i, j));
    }
    let m = DMatrix::from_row_slice(n, n, &a.a);
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]).then(x.cmp(&y)));
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    for &c in order.iter().take(k) {
        values.push(eig.eigenvalues[c]);
        let mut v: Vec<f64> = eig.eigenvectors.column(c).iter().copied().collect();
        sign_fix(&mut v);
        vectors.push(v);
    }
    Ok((values, vectors))
}

fn band_to_dense(a: &BandedSym) -> Dense {
    let n = a.dim();
    let mut d = Dense::zeros(n);
    for i in 0..n {
        for j in i.saturating_sub(a.bandwidth())..=(i + a.bandwidth()).min(n.saturating_sub(1)) {
            d.set(i, j, a.get(i, j));
        }
    }
    d
}

// Golden-ratio start block: deterministic, generic enough to meet every eigenvector.
fn start_block(n: usize, p: usize) -> DMatrix<f64> {
    const G: f64 = 0.618_033_988_749_894_9;
    DMatrix::from_fn(n, p, |i, j| {
        let t = ((i * p + j + 1) as f64 * G).fract();
        let s = ((i + 1) as f64 * (j + 1) as f64 * G * G).fract();
        t - 0.5 + 0.25 * (s - 0.5)
    })
}

/// At least `want` smallest eigenpairs of a banded SPD block; the count is
/// extended so the cut falls into a spectral gap. Values ascending.
fn subspace_smallest(a: &BandedSym, want: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.dim();
    let chol = a.cholesky()?;
    let mut p = (2 * want + 8).min(n);
    for _attempt in 0..4 {
        if p >= n || 3 * p >= n {
            let (v, x) = dense_smallest(&band_to_dense(a), n)?;
            return Ok((v, x));
        }
        let mut x = start_block(n, p);
        let mut prev: Vec<f64> = vec![0.0; p];
        let mut steady = 0;
        let mut result = None;
        for it in 0..400 {
            let q = x.clone().qr().q();
            let mut z = q.clone();
            for mut col in z.column_iter_mut() {
                chol.solve_in_place(col.as_mut_slice());
            }
            let mut h = q.transpose() * &z;
            h = (&h + h.transpose()) * 0.5;
            let eig = SymmetricEigen::new(h);
            let mut order: Vec<usize> = (0..p).collect();
            // largest μ = smallest λ first
            order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
            let v = DMatrix::from_fn(p, p, |r, c| eig.eigenvectors[(r, order[c])]);
            let theta: Vec<f64> = order.iter().map(|&c| 1.0 / eig.eigenvalues[c]).collect();
            x = &z * &v;
            let change = (0..want).map(|i| ((theta[i] - prev[i]) / theta[i]).abs()).fold(0.0, f64::max);
            prev = theta.clone();
            steady = if it > 0 && change <= 1e-13 { steady + 1 } else { 0 };
            if steady >= 2 {
                result = Some((theta, &q * &v));
                break;
            }
        }
        let Some((theta, ritz)) = result else {
            return Err(Error::Internal("subspace iteration did not converge"));
        };
        // move the cut into a gap
        let mut kb = want;
        while kb < p - 1 && theta[kb] - theta[kb - 1] <= 1e-9 * theta[kb] {
            kb += 1;
        }
        if kb >= p - 1 {
            p = (2 * p).min(n);
            continue;
        }
        let sigma = 0.5 * (theta[kb - 1] + theta[kb]);
        match a.count_below(sigma) {
            Ok(c) if c == kb => {
                let vectors = (0..kb)
                    .map(|c| {
                        let mut v: Vec<f64> = ritz.column(c).iter().copied().collect();
                        sign_fix(&mut v);
                        v
                    })
                    .collect();
                return Ok((theta[..kb].to_vec(), vectors));
            }
            _ => p = (2 * p).min(n),
        }
    }
    Err(Error::Internal("eigenvalue count certification failed"))
}

fn solve_block(a: &BandedSym, want: usize, opts: &SolverOptions) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.dim();
    let want = want.min(n);
    let dense = match opts.method {
        Method::Dense => {
            if n > opts.dense_limit {
                return Err(Error::TooLarge { dim: n, limit: opts.dense_limit });
            }
            true
        }
        Method::Auto => n <= AUTO_DENSE_MAX.min(opts.dense_limit),
        Method::Banded => false,
    };
    if dense {
        dense_smallest(&band_to_dense(a), want)
    } else {
        subspace_smallest(a, want)
    }
}

struct BlockResult {
    px: Parity,
    py: Parity,
    band: BandedSym,
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    exhausted: bool,
}

/// The k smallest eigenpairs of a discrete operator, values ascending.
pub fn smallest_eigs(op: &DiscreteOperator, k: usize, opts: &SolverOptions) -> Result<EigenPairs> {
    let g = &op.grid;
    if k == 0 || k > op.dimension() {
        return Err(Error::Domain("need 1 <= k <= dimension"));
    }
    let parities: Vec<(Parity, Parity)> = if opts.fold {
        let mut v = Vec::new();
        for px in [Parity::Even, Parity::Odd] {
            for py in [Parity::Even, Parity::Odd] {
                if px.block_len(g.nx) > 0 && py.block_len(g.ny) > 0 {
                    v.push((px, py));
                }
            }
        }
        v
    } else {
        vec![(Parity::Full, Parity::Full)]
    };
    let share = k.div_ceil(parities.len()) + 8;
    let mut blocks: Vec<BlockResult> = Vec::new();
    for &(px, py) in &parities {
        let band = op.block(px, py);
        let (values, vectors) = solve_block(&band, share, opts)?;
        let exhausted = values.len() >= band.dim();
        blocks.push(BlockResult { px, py, band, values, vectors, exhausted });
    }
    // a block may hide eigenvalues below the k-th only if its own list stops earlier
    loop {
        let mut all: Vec<(f64, usize, usize)> = Vec::new();
        for (b, r) in blocks.iter().enumerate() {
            all.extend(r.values.iter().enumerate().map(|(i, &v)| (v, b, i)));
        }
        all.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        if all.len() < k {
            return Err(Error::Internal("blocks returned too few eigenvalues"));
        }
        let kth = all[k - 1].0;
        let mut grew = false;
        for r in blocks.iter_mut() {
            let top = r.values.last().copied().unwrap_or(f64::NEG_INFINITY);
            if !r.exhausted && top <= kth {
                let want = 2 * r.values.len().max(1);
                let (values, vectors) = solve_block(&r.band, want, opts)?;
                r.exhausted = values.len() >= r.band.dim();
                r.values = values;
                r.vectors = vectors;
                grew = true;
            }
        }
        if grew {
            continue;
        }
        let norm = blocks.iter().map(|r| r.band.norm_inf()).fold(0.0, f64::max);
        let mut out = EigenPairs { values: Vec::with_capacity(k), vectors: Vec::new(), residuals: Vec::with_capacity(k), norm };
        for &(v, b, i) in all.iter().take(k) {
            let r = &blocks[b];
            out.values.push(v);
            let res = residual(&r.band, &r.vectors[i], v);
            if res > RESIDUAL_TOL * norm {
                return Err(Error::Internal("eigenpair residual above tolerance"));
            }
            out.residuals.push(res);
            if opts.vectors {
                let mut full = op.unfold(r.px, r.py, &r.vectors[i]);
                sign_fix(&mut full);
                out.vectors.push(full);
            }
        }
        return Ok(out);
    }
}
