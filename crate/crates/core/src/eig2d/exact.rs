//! Separable closed-form spectra on rectangles.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::bc::{BcKind, BoundaryCondition};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::spectrum::{Source, Spectrum};

fn sides(dom: &DomainSpec) -> Result<(f64, f64)> {
    match *dom {
        DomainSpec::Rectangle { lx, ly } => Ok((lx, ly)),
        DomainSpec::Interval { .. } => Err(Error::Unsupported("separable rectangle spectra", 1)),
    }
}

fn separable(dom: &DomainSpec, count: usize, first: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1"));
    }
    let (lx, ly) = sides(dom)?;
    // the `count` smallest values use indices below first + count
    let top = first + count;
    let mut v = Vec::with_capacity((top - first) * (top - first));
    for m in first..top {
        for n in first..top {
            let (a, b) = (m as f64 / lx, n as f64 / ly);
            v.push(PI * PI * (a * a + b * b));
        }
    }
    v.sort_by(f64::total_cmp);
    v.truncate(count);
    Ok(v)
}

/// Dirichlet Laplacian: π²(m²/Lx² + n²/Ly²), m, n ≥ 1.
pub fn laplacian_spectrum_exact(dom: &DomainSpec, count: usize) -> Result<Spectrum> {
    Spectrum::new(separable(dom, count, 1)?, *dom, BoundaryCondition::laplacian_dirichlet(), Source::Exact)
}

/// Neumann Laplacian: π²(m²/Lx² + n²/Ly²), m, n ≥ 0.
pub fn neumann_laplacian_spectrum_exact(dom: &DomainSpec, count: usize) -> Result<Spectrum> {
    Spectrum::new(separable(dom, count, 0)?, *dom, BoundaryCondition::laplacian_neumann(), Source::Exact)
}

/// Navier plate at a = 1: squares of the Dirichlet Laplacian eigenvalues.
pub fn navier1_spectrum_exact(dom: &DomainSpec, count: usize) -> Result<Spectrum> {
    let v = separable(dom, count, 1)?.into_iter().map(|l| l * l).collect();
    Spectrum::new(v, *dom, BoundaryCondition::Plate { kind: BcKind::Navier, a: 1.0 }, Source::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_values() {
        let sq = DomainSpec::unit_square();
        let s = laplacian_spectrum_exact(&sq, 3).unwrap();
        let p2 = PI * PI;
        assert!((s.values()[0] - 2.0 * p2).abs() < 1e-12);
        assert_eq!(s.values()[1], s.values()[2]);
        assert!((s.values()[1] - 5.0 * p2).abs() < 1e-12);
        let r = laplacian_spectrum_exact(&DomainSpec::rectangle(2.0, 1.0).unwrap(), 1).unwrap();
        assert!((r.values()[0] - 1.25 * p2).abs() < 1e-12);
        let n = navier1_spectrum_exact(&sq, 3).unwrap();
        assert!((n.values()[0] - 4.0 * p2 * p2).abs() < 1e-9);
        assert_eq!(n.values()[1], n.values()[2]);
        let big = navier1_spectrum_exact(&sq.scaled(2.0), 3).unwrap();
        assert!((big.values()[0] * 16.0 / n.values()[0] - 1.0).abs() < 1e-14);
        let mu = neumann_laplacian_spectrum_exact(&sq, 4).unwrap();
        assert_eq!(mu.values()[0], 0.0);
        assert_eq!(mu.kernel_dim(), 1);
    }
}
