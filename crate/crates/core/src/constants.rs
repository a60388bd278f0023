//! Dimensional constants of the semiclassical and averaged-variational bounds.

use core::f64::consts::PI;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::special::gamma;

/// Volume of the unit ball in R^d.
pub fn unit_ball_volume(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    PI.powf(h) / gamma(1.0 + h)
}

/// Constants that depend only on the dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DimensionalConstants {
    pub d: usize,
    /// Unit-ball volume B_d.
    pub b: f64,
    /// Weyl constant C_d = (2π)² B_d^{-2/d}.
    pub c: f64,
    /// Gradient constant of the mollified indicator (A_d, not squared).
    pub a_grad: f64,
    /// Laplacian constant of the mollified indicator (Ã_d, not squared).
    pub a_lap: f64,
    pub a_d: f64,
    pub b_d: f64,
    pub c_d: f64,
    pub m_d: f64,
}

impl DimensionalConstants {
    pub fn a_grad_sq(&self) -> f64 {
        self.a_grad * self.a_grad
    }

    pub fn a_lap_sq(&self) -> f64 {
        self.a_lap * self.a_lap
    }

    /// Normalisation of the radial bump f(r) = k (r² − 1)² with unit mass.
    pub fn bump_normalisation(&self) -> f64 {
        let d = self.d as f64;
        (d * d + 6.0 * d + 8.0) / (8.0 * self.b)
    }
}

pub fn dimensional_constants(d: usize) -> Result<DimensionalConstants> {
    if d < 1 {
        return Err(Error::InvalidDimension(d));
    }
    let df = d as f64;
    let b = unit_ball_volume(d);
    let c = (2.0 * PI).powi(2) * b.powf(-2.0 / df);
    let a2 = 8.0 * df * (df + 2.0) * (df + 4.0) / (df + 6.0);
    let ratio = df / (df + 2.0);
    let at2 = 64.0 * df * df * (df + 4.0).powi(2) * ratio.powi(d as i32);
    let a_d = (df + 2.0) * (df + 4.0) * (df + 6.0) * (df + 8.0) / (384.0 * b);
    let b_d = a_d * (df * (df + 8.0) / 3.0).powf(df / 2.0);
    let c_d = (8.0 + df * (df - 2.0)) * (df + 6.0) * (df + 8.0) / 6.0;
    let m_d = 8.0
        * (df * (df + 2.0) / (df + 6.0)).sqrt()
        * (2.0 + (df + 6.0).powi(2) / ((df + 2.0).powi(2) * (df + 4.0)) * ratio.powi(d as i32));
    Ok(DimensionalConstants {
        d,
        b,
        c,
        a_grad: a2.sqrt(),
        a_lap: at2.sqrt(),
        a_d,
        b_d,
        c_d,
        m_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensions() {
        let k1 = dimensional_constants(1).unwrap();
        assert!((k1.b - 2.0).abs() < 1e-14);
        assert!((k1.c - PI * PI).abs() < 1e-12);
        let k2 = dimensional_constants(2).unwrap();
        assert!((k2.b - PI).abs() < 1e-14);
        assert!((k2.c - 4.0 * PI).abs() < 1e-13);
        assert!((k2.a_grad_sq() - 48.0).abs() < 1e-12);
        assert!((k2.a_lap_sq() - 2304.0).abs() < 1e-9);
        assert!((k2.m_d - 52.0 / 3.0).abs() < 1e-12);
        assert!((k2.a_d - 5.0 / PI).abs() < 1e-14);
        assert!((k2.c_d - 320.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(dimensional_constants(0), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn bump_has_unit_mass_in_the_plane() {
        // ∫_{|x|<1} k (r²−1)² dx = k·2π/6
        let k2 = dimensional_constants(2).unwrap();
        assert!((k2.bump_normalisation() * 2.0 * PI / 6.0 - 1.0).abs() < 1e-14);
    }
}
