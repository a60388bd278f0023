//! Discrete quadratic-form energies of grid functions with zero boundary values.

use num_traits::Float;

use super::grid::Grid2D;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Energies {
    /// ∫|∇u|²: squared forward differences over all cell edges.
    pub grad: f64,
    /// ∫(Δu)² with the 5-point Laplacian.
    pub lap: f64,
    /// ∫|D²u|² = ∫u_xx² + u_yy² + 2u_xy², mixed term on cells.
    pub hessian: f64,
}

/// Energies of u (interior values, zero on the boundary ring), normalised by the
/// discrete L² norm Σu² hx hy. For sine-product vectors the values equal the
/// discrete eigenvalue λ_h (gradient) and λ_h² (Laplacian and Hessian) exactly.
pub fn form_energies(u: &[f64], grid: &Grid2D) -> Energies {
    let (nx, ny, hx, hy) = (grid.nx as isize, grid.ny as isize, grid.hx, grid.hy);
    let at = |i: isize, j: isize| -> f64 {
        if i < 0 || j < 0 || i >= nx || j >= ny {
            0.0
        } else {
            u[grid.index(i as usize, j as usize)]
        }
    };
    let area = hx * hy;
    let mass: f64 = u.iter().map(|v| v * v).sum::<f64>() * area;
    if !(mass > 0.0) {
        return Energies { grad: 0.0, lap: 0.0, hessian: 0.0 };
    }
    let (mut grad, mut lap, mut hess) = (0.0, 0.0, 0.0);
    for i in -1..nx {
        for j in -1..ny {
            let c = at(i, j);
            // edges to the right and above, cells to the upper right
            if j >= 0 {
                grad += ((at(i + 1, j) - c) / hx).powi(2);
            }
            if i >= 0 {
                grad += ((at(i, j + 1) - c) / hy).powi(2);
            }
            let uxy = (at(i + 1, j + 1) - at(i + 1, j) - at(i, j + 1) + c) / (hx * hy);
            hess += 2.0 * uxy * uxy;
            if i >= 0 && j >= 0 {
                let uxx = (at(i + 1, j) - 2.0 * c + at(i - 1, j)) / (hx * hx);
                let uyy = (at(i, j + 1) - 2.0 * c + at(i, j - 1)) / (hy * hy);
                lap += (uxx + uyy).powi(2);
                hess += uxx * uxx + uyy * uyy;
            }
        }
    }
    Energies { grad: grad * area / mass, lap: lap * area / mass, hessian: hess * area / mass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainSpec;
    use alloc::vec::Vec;
    use core::f64::consts::PI;

    fn sampled(g: &Grid2D, m: f64, n: f64) -> Vec<f64> {
        let mut u = alloc::vec![0.0; g.len()];
        for i in 0..g.nx {
            for j in 0..g.ny {
                let (x, y) = g.point(i, j);
                u[g.index(i, j)] = (m * PI * x).sin() * (n * PI * y).sin();
            }
        }
        u
    }

    #[test]
    fn sine_energies_converge() {
        let mut prev = f64::INFINITY;
        for cells in [16, 32, 64] {
            let g = Grid2D::uniform(&DomainSpec::unit_square(), cells).unwrap();
            let e = form_energies(&sampled(&g, 1.0, 1.0), &g);
            let err = (e.grad - 2.0 * PI * PI).abs();
            assert!(err < prev / 3.5);
            prev = err;
            // exact discrete identities for sine vectors
            let s = (PI / (2.0 * cells as f64)).sin();
            let lam = 2.0 * 4.0 * (cells * cells) as f64 * s * s;
            assert!((e.grad - lam).abs() < 1e-10 * lam);
            assert!((e.lap - lam * lam).abs() < 1e-9 * lam * lam);
            assert!((e.hessian - lam * lam).abs() < 1e-9 * lam * lam);
        }
    }

    #[test]
    fn cauchy_schwarz_and_zero() {
        let g = Grid2D::with_cells(&DomainSpec::rectangle(1.0, 0.8).unwrap(), 10, 9).unwrap();
        let u: Vec<f64> = (0..g.len()).map(|i| ((i * 7 % 11) as f64 - 5.0) / 3.0).collect();
        let e = form_energies(&u, &g);
        assert!(e.grad * e.grad <= e.lap * (1.0 + 1e-12));
        let z = alloc::vec![0.0; g.len()];
        assert_eq!(form_energies(&z, &g).grad, 0.0);
    }
}
