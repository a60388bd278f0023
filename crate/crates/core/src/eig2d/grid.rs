//! Grids on rectangles and the finite-difference operators as Kronecker sums of
//! 1D matrices, with reflection folding into parity blocks.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::banded::BandedSym;
use crate::domain::DomainSpec;
use crate::error::{Error, Result};

/// Interior points of a uniform grid; hx = Lx/(nx+1), hy = Ly/(ny+1).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub hx: f64,
    pub hy: f64,
    pub dom: DomainSpec,
}

impl Grid2D {
    /// `cells_x` × `cells_y` cells, i.e. (cells − 1) interior points per axis.
    pub fn with_cells(dom: &DomainSpec, cells_x: usize, cells_y: usize) -> Result<Self> {
        let DomainSpec::Rectangle { lx, ly } = *dom else {
            return Err(Error::Unsupported("finite-difference grids outside rectangles", dom.dim()));
        };
        if cells_x < 2 || cells_y < 2 {
            return Err(Error::Domain("need at least 2 cells per axis"));
        }
        Ok(Self { nx: cells_x - 1, ny: cells_y - 1, hx: lx / cells_x as f64, hy: ly / cells_y as f64, dom: *dom })
    }

    /// n cells along each side.
    pub fn uniform(dom: &DomainSpec, n: usize) -> Result<Self> {
        Self::with_cells(dom, n, n)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cells per side (nx + 1).
    pub fn cells(&self) -> (usize, usize) {
        (self.nx + 1, self.ny + 1)
    }

    /// Flat index of interior point (ix, iy), 0-based.
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.ny + iy
    }

    /// Coordinates of interior point (ix, iy).
    pub fn point(&self, ix: usize, iy: usize) -> (f64, f64) {
        ((ix + 1) as f64 * self.hx, (iy + 1) as f64 * self.hy)
    }
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    /// Largest |i − j| with a nonzero entry.
    pub fn bandwidth(&self) -> usize {
        let mut bw = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) != 0.0 {
                    bw = bw.max(i.abs_diff(j));
                }
            }
        }
        bw
    }

    /// Largest |a_ij − a_ji| relative to the largest entry, with its position.
    pub fn asymmetry(&self) -> (f64, usize, usize) {
        let scale = self.a.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mut worst = (0.0, 0, 0);
        for i in 0..self.n {
            for j in 0..i {
                let d = (self.get(i, j) - self.get(j, i)).abs() / scale;
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }
}

/// tridiag(−1, 2, −1)/h²: minus the Dirichlet second difference.
pub fn second_difference(n: usize, h: f64) -> Dense {
    let mut m = Dense::zeros(n);
    let s = 1.0 / (h * h);
    for i in 0..n {
        m.set(i, i, 2.0 * s);
        if i + 1 < n {
            m.set(i, i + 1, -s);
            m.set(i + 1, i, -s);
        }
    }
    m
}

/// Clamped fourth difference: (1, −4, 6, −4, 1)/h⁴ with u₀ = 0 and the ghost
/// reflection u₋₁ = u₁, so the first and last rows read (7, −4, 1)/h⁴.
pub fn fourth_difference(n: usize, h: f64) -> Dense {
    let mut m = Dense::zeros(n);
    let s = 1.0 / h.powi(4);
    for i in 0..n {
        m.set(i, i, 6.0 * s);
        for (off, c) in [(1usize, -4.0), (2, 1.0)] {
            if i + off < n {
                m.set(i, i + off, c * s);
                m.set(i + off, i, c * s);
            }
        }
    }
    if n > 0 {
        m.set(0, 0, m.get(0, 0) + s);
        m.set(n - 1, n - 1, m.get(n - 1, n - 1) + s);
    }
    m
}

/// Symmetry class of vectors under the reflection i ↦ n − 1 − i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Parity {
    Full,
    Even,
    Odd,
}

impl Parity {
    pub fn block_len(self, n: usize) -> usize {
        match self {
            Self::Full => n,
            Self::Even => n.div_ceil(2),
            Self::Odd => n / 2,
        }
    }

    /// Column b of the orthonormal basis P as (index, weight) pairs.
    fn basis(self, n: usize, b: usize) -> [(usize, f64); 2] {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        match self {
            Self::Full => [(b, 1.0), (b, 0.0)],
            Self::Even if n % 2 == 1 && b == n / 2 => [(b, 1.0), (b, 0.0)],
            Self::Even => [(b, r), (n - 1 - b, r)],
            Self::Odd => [(b, r), (n - 1 - b, -r)],
        }
    }

    /// Pᵀ M P for a matrix commuting with the reflection.
    pub fn fold(self, m: &Dense) -> Dense {
        let n = m.n;
        let k = self.block_len(n);
        let mut out = Dense::zeros(k);
        for a in 0..k {
            for b in 0..k {
                let mut s = 0.0;
                for (i, wi) in self.basis(n, a) {
                    for (j, wj) in self.basis(n, b) {
                        if wi != 0.0 && wj != 0.0 {
                            s += wi * wj * m.get(i, j);
                        }
                    }
                }
                out.set(a, b, s);
            }
        }
        out
    }

    /// P x: block coordinates back to the full axis.
    pub fn unfold(self, n: usize, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (b, &v) in x.iter().enumerate() {
            for (i, w) in self.basis(n, b) {
                out[i] += w * v;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OperatorKind {
    /// −Δ with u = 0 (5-point stencil).
    DirichletLaplacian,
    /// Δ² with u = ∂u/∂ν = 0 (13-point stencil, ghost reflection).
    ClampedBilaplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    Identity,
    Second,
    Fourth,
}

/// Σ_t c_t X_t ⊗ Y_t on a grid; symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub grid: Grid2D,
    pub kind: OperatorKind,
    terms: Vec<(f64, Factor, Factor)>,
}

impl DiscreteOperator {
    pub fn dimension(&self) -> usize {
        self.grid.len()
    }

    fn factor(&self, f: Factor, n: usize, h: f64) -> Dense {
        match f {
            Factor::Identity => Dense::identity(n),
            Factor::Second => second_difference(n, h),
            Factor::Fourth => fourth_difference(n, h),
        }
    }

    /// Folded 1D factors of every term for a parity block.
    fn folded_terms(&self, px: Parity, py: Parity) -> Vec<(f64, Dense, Dense)> {
        let g = &self.grid;
        self.terms
            .iter()
            .map(|&(c, fx, fy)| (c, px.fold(&self.factor(fx, g.nx, g.hx)), py.fold(&self.factor(fy, g.ny, g.hy))))
            .collect()
    }

    /// The (px, py) parity block in band storage; Full × Full is the whole operator.
    pub fn block(&self, px: Parity, py: Parity) -> BandedSym {
        let terms = self.folded_terms(px, py);
        let (mx, my) = (px.block_len(self.grid.nx), py.block_len(self.grid.ny));
        let bwx = terms.iter().map(|t| t.1.bandwidth()).max().unwrap_or(0);
        let bwy = terms.iter().map(|t| t.2.bandwidth()).max().unwrap_or(0);
        let mut band = BandedSym::zeros(mx * my, bwx * my + bwy);
        for ix in 0..mx {
            for jx in ix.saturating_sub(bwx)..=ix {
                for iy in 0..my {
                    let jy_hi = if jx == ix { iy } else { (iy + bwy).min(my - 1) };
                    for jy in iy.saturating_sub(bwy)..=jy_hi {
                        let v: f64 = terms.iter().map(|(c, x, y)| c * x.get(ix, jx) * y.get(iy, jy)).sum();
                        if v != 0.0 {
                            band.set(ix * my + iy, jx * my + jy, v);
                        }
                    }
                }
            }
        }
        band
    }

    /// Dense matrix of the whole operator (small grids only).
    pub fn to_dense(&self) -> Dense {
        let g = &self.grid;
        let n = g.len();
        let mut m = Dense::zeros(n);
        for &(c, fx, fy) in &self.terms {
            let x = self.factor(fx, g.nx, g.hx);
            let y = self.factor(fy, g.ny, g.hy);
            for ix in 0..g.nx {
                for jx in 0..g.nx {
                    let a = x.get(ix, jx);
                    if a == 0.0 {
                        continue;
                    }
                    for iy in 0..g.ny {
                        for jy in 0..g.ny {
                            let b = y.get(iy, jy);
                            if b != 0.0 {
                                let (r, s) = (g.index(ix, iy), g.index(jx, jy));
                                m.set(r, s, m.get(r, s) + c * a * b);
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Block eigenvector back to the full grid.
    pub fn unfold(&self, px: Parity, py: Parity, v: &[f64]) -> Vec<f64> {
        let g = &self.grid;
        let (mx, my) = (px.block_len(g.nx), py.block_len(g.ny));
        let cols: Vec<Vec<f64>> = (0..mx).map(|ix| py.unfold(g.ny, &v[ix * my..(ix + 1) * my])).collect();
        let mut out = vec![0.0; g.len()];
        for iy in 0..g.ny {
            let line: Vec<f64> = cols.iter().map(|c| c[iy]).collect();
            let full = px.unfold(g.nx, &line);
            for ix in 0..g.nx {
                out[g.index(ix, iy)] = full[ix];
            }
        }
        out
    }
}

pub fn assemble_dirichlet_laplacian(grid: &Grid2D) -> DiscreteOperator {
    DiscreteOperator {
        grid: *grid,
        kind: OperatorKind::DirichletLaplacian,
        terms: vec![(1.0, Factor::Second, Factor::Identity), (1.0, Factor::Identity, Factor::Second)],
    }
}

pub fn assemble_clamped_bilaplacian(grid: &Grid2D) -> DiscreteOperator {
    DiscreteOperator {
        grid: *grid,
        kind: OperatorKind::ClampedBilaplacian,
        terms: vec![
            (1.0, Factor::Fourth, Factor::Identity),
            (2.0, Factor::Second, Factor::Second),
            (1.0, Factor::Identity, Factor::Fourth),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamped_stencil_centre() {
        let g = Grid2D::uniform(&DomainSpec::unit_square(), 8).unwrap();
        let a = assemble_clamped_bilaplacian(&g).to_dense();
        let c = g.index(3, 3);
        let h4 = g.hx.powi(4);
        assert!((a.get(c, c) * h4 - 20.0).abs() < 1e-9);
        assert!((a.get(c, g.index(4, 3)) * h4 + 8.0).abs() < 1e-9);
        assert!((a.get(c, g.index(4, 4)) * h4 - 2.0).abs() < 1e-9);
        assert!((a.get(c, g.index(5, 3)) * h4 - 1.0).abs() < 1e-9);
        assert!(a.asymmetry().0 < 1e-12);
        let b = fourth_difference(5, 1.0);
        assert_eq!((b.get(0, 0), b.get(0, 1), b.get(0, 2)), (7.0, -4.0, 1.0));
    }

    #[test]
    fn band_matches_dense() {
        let g = Grid2D::with_cells(&DomainSpec::rectangle(1.5, 1.0).unwrap(), 7, 6).unwrap();
        let op = assemble_clamped_bilaplacian(&g);
        let d = op.to_dense();
        let b = op.block(Parity::Full, Parity::Full);
        for i in 0..d.n {
            for j in 0..d.n {
                assert!((d.get(i, j) - b.get(i, j)).abs() < 1e-9 * d.get(0, 0));
            }
        }
    }

    #[test]
    fn folding_is_orthogonal() {
        for n in [5, 6] {
            let m = fourth_difference(n, 1.0);
            for p in [Parity::Even, Parity::Odd] {
                let x: Vec<f64> = (0..p.block_len(n)).map(|i| i as f64 + 1.0).collect();
                let full = p.unfold(n, &x);
                let norm: f64 = full.iter().map(|v| v * v).sum();
                let xn: f64 = x.iter().map(|v| v * v).sum();
                assert!((norm - xn).abs() < 1e-12);
                assert!(p.fold(&m).asymmetry().0 < 1e-15);
            }
        }
    }
}
