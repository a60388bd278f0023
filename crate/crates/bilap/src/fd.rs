//! Clamped-plate refinement studies with the spectrum cache in front of the solver.

use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, Result};
use bilap_core::eig2d::{
    assemble_clamped_bilaplacian, richardson, smallest_eigs, Grid2D, OperatorKind, RefinementStudy, SolverOptions,
};
use bilap_core::{BoundaryCondition, DomainSpec, Source, Spectrum};

use crate::cache::{cache_key, cache_spectrum, lookup};
use crate::report::SolveTiming;

/// Default refinement sequence (cells per side).
pub const DEFAULT_GRIDS: [usize; 3] = [32, 64, 128];

/// k smallest clamped eigenvalues on each grid; cached per grid when `cache` is set.
pub fn clamped_study(
    dom: &DomainSpec,
    cells: &[usize],
    k: usize,
    cache: Option<&Path>,
    timings: &mut Vec<SolveTiming>,
) -> Result<RefinementStudy> {
    if dom.dim() != 2 {
        return Err(anyhow!("finite differences need a rectangle"));
    }
    let bc = BoundaryCondition::dirichlet();
    let mut values = Vec::with_capacity(cells.len());
    for &n in cells {
        let grid = Grid2D::uniform(dom, n).map_err(|e| anyhow!("{e}"))?;
        let source = Source::FiniteDifference { nx: grid.nx, ny: grid.ny };
        let key = cache_key(dom, &bc, &source);
        let start = Instant::now();
        if let Some(hit) = cache.and_then(|d| lookup(d, &key, k)) {
            let secs = start.elapsed().as_secs_f64();
            log::info!("cache hit {key} ({secs:.3} s)");
            timings.push(SolveTiming { key, cache_hit: true, seconds: secs });
            values.push(hit.values()[..k].to_vec());
            continue;
        }
        let op = assemble_clamped_bilaplacian(&grid);
        let pairs = smallest_eigs(&op, k, &SolverOptions::default()).map_err(|e| anyhow!("grid {n}: {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        log::info!("solved {key}: {k} modes in {secs:.3} s");
        timings.push(SolveTiming { key, cache_hit: false, seconds: secs });
        if let Some(dir) = cache {
            let spec = Spectrum::new(pairs.values.clone(), *dom, bc, source).map_err(|e| anyhow!("{e}"))?;
            if let Err(e) = cache_spectrum(&spec, dir) {
                log::warn!("could not write cache: {e:#}");
            }
        }
        values.push(pairs.values);
    }
    let extrapolated = richardson(&values, cells).map_err(|e| anyhow!("{e}"))?;
    Ok(RefinementStudy { dom: *dom, kind: OperatorKind::ClampedBilaplacian, cells: cells.to_vec(), values, extrapolated })
}
