//! Ordered eigenvalue sequences with their provenance.

use alloc::vec::Vec;

use crate::bc::BoundaryCondition;
use crate::domain::DomainSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Source {
    Exact,
    /// Finite differences with `nx × ny` interior points (ny = 1 for 1D).
    FiniteDifference { nx: usize, ny: usize },
    /// Richardson extrapolation from grids with `coarsest` ... `finest` cells per side.
    Extrapolated { coarsest: usize, finest: usize },
    Predicted,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    values: Vec<f64>,
    domain: DomainSpec,
    bc: BoundaryCondition,
    source: Source,
    kernel_dim: usize,
}

impl Spectrum {
    /// Rejects negative, non-finite or out-of-order input.
    pub fn new(values: Vec<f64>, domain: DomainSpec, bc: BoundaryCondition, source: Source) -> Result<Self> {
        let mut prev = 0.0;
        for (i, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v >= prev) {
                return Err(Error::Unordered(i));
            }
            prev = v;
        }
        let kernel_dim = values.iter().take_while(|&&v| v == 0.0).count();
        Ok(Self { values, domain, bc, source, kernel_dim })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain(&self) -> DomainSpec {
        self.domain
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    /// Mean of the first k values.
    pub fn average(&self, k: usize) -> Option<f64> {
        if k == 0 || k > self.values.len() {
            return None;
        }
        Some(self.values[..k].iter().sum::<f64>() / k as f64)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ordering_enforced() {
        let dom = DomainSpec::interval(1.0).unwrap();
        let bc = BoundaryCondition::pair(2, 3).unwrap();
        assert_eq!(
            Spectrum::new(vec![0.0, 2.0, 1.0], dom, bc, Source::Exact),
            Err(Error::Unordered(2))
        );
        assert!(Spectrum::new(vec![-1.0], dom, bc, Source::Exact).is_err());
        let s = Spectrum::new(vec![0.0, 0.0, 3.0], dom, bc, Source::Exact).unwrap();
        assert_eq!(s.kernel_dim(), 2);
        assert_eq!(s.average(3), Some(1.0));
    }
}
