//! Refinement studies (three grids, Richardson extrapolation with tolerance
//! bands) and the eigenvalue comparison checks between plate and Laplacian spectra.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use super::exact::{laplacian_spectrum_exact, navier1_spectrum_exact};
use super::grid::{assemble_clamped_bilaplacian, assemble_dirichlet_laplacian, Grid2D, OperatorKind};
use super::solver::{smallest_eigs, SolverOptions};
use crate::bc::BoundaryCondition;
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::report::BoundReport;
use crate::spectra1d::comparison_chain_1d;
use crate::spectrum::{Source, Spectrum};

/// Width of the band as a multiple of the last refinement gap.
pub const BAND_FACTOR: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Extrapolated {
    /// Richardson limit assuming O(h²) convergence.
    pub limit: f64,
    /// BAND_FACTOR × |finest − previous|.
    pub band: f64,
    pub finest: f64,
    /// Observed convergence order from the last three grids (NaN with two grids).
    pub order: f64,
}

impl Extrapolated {
    pub fn lower(&self) -> f64 {
        self.limit - self.band
    }

    pub fn upper(&self) -> f64 {
        self.limit + self.band
    }
}

/// Per-mode Richardson extrapolation from sorted values on grids with the given cell counts.
pub fn richardson(values: &[Vec<f64>], cells: &[usize]) -> Result<Vec<Extrapolated>> {
    let g = values.len();
    if g < 2 || cells.len() != g {
        return Err(Error::Domain("need at least two grids with matching cell counts"));
    }
    if cells.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("grids must be strictly increasing"));
    }
    let k = values.iter().map(Vec::len).min().unwrap_or(0);
    let r = cells[g - 1] as f64 / cells[g - 2] as f64;
    Ok((0..k)
        .map(|j| {
            let (f, m) = (values[g - 1][j], values[g - 2][j]);
            let order = if g >= 3 {
                let c = values[g - 3][j];
                let r0 = cells[g - 2] as f64 / cells[g - 3] as f64;
                ((c - m).abs() / (m - f).abs()).ln() / r0.ln()
            } else {
                f64::NAN
            };
            Extrapolated { limit: f + (f - m) / (r * r - 1.0), band: BAND_FACTOR * (f - m).abs(), finest: f, order }
        })
        .collect())
}

/// One operator solved on a sequence of grids.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RefinementStudy {
    pub dom: DomainSpec,
    pub kind: OperatorKind,
    pub cells: Vec<usize>,
    pub values: Vec<Vec<f64>>,
    pub extrapolated: Vec<Extrapolated>,
}

impl RefinementStudy {
    /// Extrapolated limits as a spectrum (sorted; ties inside bands may reorder).
    pub fn to_spectrum(&self, bc: BoundaryCondition) -> Result<Spectrum> {
        let mut v: Vec<f64> = self.extrapolated.iter().map(|e| e.limit).collect();
        v.sort_by(f64::total_cmp);
        let src = Source::Extrapolated { coarsest: self.cells[0], finest: *self.cells.last().unwrap_or(&0) };
        Spectrum::new(v, self.dom, bc, src)
    }

    /// Values of the finest grid.
    pub fn finest_spectrum(&self, bc: BoundaryCondition) -> Result<Spectrum> {
        let n = *self.cells.last().ok_or(Error::Internal("empty study"))?;
        let v = self.values.last().cloned().unwrap_or_default();
        Spectrum::new(v, self.dom, bc, Source::FiniteDifference { nx: n, ny: n })
    }
}

/// Solves `kind` on each grid (n cells per side) for the k smallest eigenvalues.
pub fn refinement_study(dom: &DomainSpec, kind: OperatorKind, cells: &[usize], k: usize, opts: &SolverOptions) -> Result<RefinementStudy> {
    let mut values = Vec::with_capacity(cells.len());
    for &n in cells {
        let g = Grid2D::uniform(dom, n)?;
        let op = match kind {
            OperatorKind::DirichletLaplacian => assemble_dirichlet_laplacian(&g),
            OperatorKind::ClampedBilaplacian => assemble_clamped_bilaplacian(&g),
        };
        values.push(smallest_eigs(&op, k, opts)?.values);
    }
    let extrapolated = richardson(&values, cells)?;
    Ok(RefinementStudy { dom: *dom, kind, cells: cells.to_vec(), values, extrapolated })
}

/// Closed-form eigenvalues of the 5-point Dirichlet Laplacian on a grid, ascending.
pub fn discrete_laplacian_values(g: &Grid2D, count: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(g.len());
    for m in 1..=g.nx {
        let sx = (m as f64 * PI / (2.0 * (g.nx + 1) as f64)).sin();
        for n in 1..=g.ny {
            let sy = (n as f64 * PI / (2.0 * (g.ny + 1) as f64)).sin();
            v.push(4.0 / (g.hx * g.hx) * sx * sx + 4.0 / (g.hy * g.hy) * sy * sy);
        }
    }
    v.sort_by(f64::total_cmp);
    v.truncate(count);
    v
}

/// Number of modes in the per-grid discrete comparison.
pub const DISCRETE_CHAIN_MODES: usize = 20;

/// λ_j² ≤ Λ_j and Λ̃_j(1) ≤ Λ_j on a rectangle (clamped values from the
/// refinement study, band applied against the inequality), the per-grid discrete
/// analogue (FD clamped ≥ squared FD Laplacian), and the exact 1D chain for j ≤ j_max_1d.
pub fn comparison_report(study: &RefinementStudy, k_max: usize, j_max_1d: usize) -> Result<Vec<BoundReport>> {
    if study.kind != OperatorKind::ClampedBilaplacian {
        return Err(Error::Domain("comparison needs a clamped-plate study"));
    }
    if study.extrapolated.len() < k_max {
        return Err(Error::InsufficientSpectrum { have: study.extrapolated.len(), z: f64::NAN });
    }
    let lam = laplacian_spectrum_exact(&study.dom, k_max)?;
    let nav = navier1_spectrum_exact(&study.dom, k_max)?;
    let mut out = Vec::new();
    for j in 0..k_max {
        let e = study.extrapolated[j];
        let l2 = lam.values()[j] * lam.values()[j];
        let note = format!("limit {:.6e} band {:.3e}", e.limit, e.band);
        out.push(BoundReport::le("compare.laplacian_squared", "full-chain", l2, e.lower()).params((j + 1) as f64, f64::NAN).note(note.clone()));
        out.push(BoundReport::le("compare.navier_a1", "dirichlet-navier", nav.values()[j], e.lower()).params((j + 1) as f64, f64::NAN).note(note));
    }
    for (gi, &n) in study.cells.iter().enumerate() {
        let g = Grid2D::uniform(&study.dom, n)?;
        let fd_lap = discrete_laplacian_values(&g, DISCRETE_CHAIN_MODES);
        for (j, (&c, &l)) in study.values[gi].iter().zip(&fd_lap).enumerate() {
            out.push(BoundReport::ge("compare.discrete_chain", "full-chain", c, l * l).params((j + 1) as f64, n as f64));
        }
    }
    out.extend(comparison_chain_1d(j_max_1d)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_exact_for_quadratic_error() {
        // v(h) = 10 + 3h²
        let cells = [8usize, 16, 32];
        let values: Vec<Vec<f64>> = cells.iter().map(|&n| alloc::vec![10.0 + 3.0 / (n * n) as f64]).collect();
        let e = richardson(&values, &cells).unwrap()[0];
        assert!((e.limit - 10.0).abs() < 1e-12);
        assert!((e.order - 2.0).abs() < 1e-9);
        assert!(richardson(&values[..1], &cells[..1]).is_err());
    }

    #[test]
    fn small_comparison_holds() {
        let sq = DomainSpec::unit_square();
        let s = refinement_study(&sq, OperatorKind::ClampedBilaplacian, &[8, 16, 32], 6, &SolverOptions::default()).unwrap();
        for w in s.values.windows(2) {
            // clamped FD eigenvalues approach the limit from one side here
            assert!((w[1][0] - s.extrapolated[0].limit).abs() < (w[0][0] - s.extrapolated[0].limit).abs());
        }
        let r = comparison_report(&s, 4, 10).unwrap();
        assert!(r.iter().all(|x| !x.is_failure()), "{:?}", r.iter().find(|x| x.is_failure()));
        let spec = s.to_spectrum(BoundaryCondition::dirichlet()).unwrap();
        assert_eq!(spec.len(), 6);
    }
}
