//! Boundary conditions: the four plate conditions in d ≥ 2 and the six 1D pairs.

use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BcKind {
    Dirichlet,
    Navier,
    KuttlerSigillito,
    Neumann,
}

/// 1D problem u'''' = Λu with u^{(i)} = u^{(j)} = 0 at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pair {
    i: u8,
    j: u8,
}

impl Pair {
    pub const DIRICHLET: Pair = Pair { i: 0, j: 1 };
    pub const NAVIER: Pair = Pair { i: 0, j: 2 };
    pub const DIRICHLET_NEUMANN: Pair = Pair { i: 0, j: 3 };
    pub const NEUMANN_DIRICHLET: Pair = Pair { i: 1, j: 2 };
    pub const KUTTLER_SIGILLITO: Pair = Pair { i: 1, j: 3 };
    pub const NEUMANN: Pair = Pair { i: 2, j: 3 };
    pub const ALL: [Pair; 6] = [
        Self::DIRICHLET,
        Self::NAVIER,
        Self::DIRICHLET_NEUMANN,
        Self::NEUMANN_DIRICHLET,
        Self::KUTTLER_SIGILLITO,
        Self::NEUMANN,
    ];

    pub fn new(i: u8, j: u8) -> Result<Self> {
        if i < j && j <= 3 {
            Ok(Self { i, j })
        } else {
            Err(Error::InvalidPair(i, j))
        }
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    /// Dimension of the kernel (zero modes).
    pub fn kernel_dim(&self) -> usize {
        match (self.i, self.j) {
            (0, 1) | (0, 2) => 0,
            (2, 3) => 2,
            _ => 1,
        }
    }

    /// Boundary coefficient of the one-dimensional Riesz-mean expansion.
    pub fn second_coefficient(&self) -> f64 {
        (self.i as f64 + self.j as f64 - 3.0) / 2.0
    }

    pub fn name(&self) -> &'static str {
        match (self.i, self.j) {
            (0, 1) => "dirichlet",
            (0, 2) => "navier",
            (0, 3) => "dirichlet-neumann",
            (1, 2) => "neumann-dirichlet",
            (1, 3) => "kuttler-sigillito",
            _ => "neumann",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BoundaryCondition {
    /// Plate condition with Poisson ratio `a` (ignored for Dirichlet).
    Plate { kind: BcKind, a: f64 },
    OneD(Pair),
    /// Second-order Laplacian spectra used for comparison: Dirichlet or Neumann.
    Laplacian { neumann: bool },
}

impl BoundaryCondition {
    pub fn dirichlet() -> Self {
        Self::Plate { kind: BcKind::Dirichlet, a: 0.0 }
    }

    pub fn plate(kind: BcKind, a: f64, d: usize) -> Result<Self> {
        let bc = Self::Plate { kind, a };
        bc.validate(d)?;
        Ok(bc)
    }

    pub fn laplacian_dirichlet() -> Self {
        Self::Laplacian { neumann: false }
    }

    pub fn laplacian_neumann() -> Self {
        Self::Laplacian { neumann: true }
    }

    pub fn pair(i: u8, j: u8) -> Result<Self> {
        Ok(Self::OneD(Pair::new(i, j)?))
    }

    /// Admissible Poisson ratios: a ∈ (−1/(d−1), 1], with a = 1 only for Navier and
    /// Kuttler–Sigillito.
    pub fn validate(&self, d: usize) -> Result<()> {
        match *self {
            Self::Laplacian { .. } => Ok(()),
            Self::OneD(_) => {
                if d == 1 {
                    Ok(())
                } else {
                    Err(Error::Unsupported("1D pair boundary condition", d))
                }
            }
            Self::Plate { kind, a } => {
                if d < 2 {
                    return Err(Error::Unsupported("plate boundary condition", d));
                }
                if kind == BcKind::Dirichlet {
                    return Ok(());
                }
                let lo = -1.0 / (d as f64 - 1.0);
                if !(a > lo && a <= 1.0) {
                    return Err(Error::Domain("Poisson ratio outside (-1/(d-1), 1]"));
                }
                if a == 1.0 && kind == BcKind::Neumann {
                    return Err(Error::Domain("a = 1 is not admissible for Neumann"));
                }
                Ok(())
            }
        }
    }

    /// a = 1 is the limit case where Navier/Kuttler–Sigillito become squares of Laplacians.
    pub fn is_limit_case(&self) -> bool {
        matches!(self, Self::Plate { kind, a } if *kind != BcKind::Dirichlet && *a == 1.0)
    }

    pub fn kernel_dim(&self) -> usize {
        match self {
            Self::OneD(p) => p.kernel_dim(),
            Self::Plate { .. } => 0,
            Self::Laplacian { neumann } => usize::from(*neumann),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert!(Pair::new(2, 1).is_err());
        assert!(Pair::new(1, 4).is_err());
        assert!(Pair::new(1, 1).is_err());
        let dims: [usize; 6] = Pair::ALL.map(|p| p.kernel_dim());
        assert_eq!(dims, [0, 0, 1, 1, 1, 2]);
        assert_eq!(Pair::NEUMANN.second_coefficient(), 1.0);
    }

    #[test]
    fn poisson_ratio_range() {
        assert!(BoundaryCondition::plate(BcKind::Navier, 1.0, 2).unwrap().is_limit_case());
        assert!(BoundaryCondition::plate(BcKind::Neumann, 1.0, 2).is_err());
        assert!(BoundaryCondition::plate(BcKind::Neumann, -1.0, 2).is_err());
        assert!(BoundaryCondition::plate(BcKind::Neumann, -0.49, 3).is_ok());
        assert!(BoundaryCondition::plate(BcKind::Neumann, -0.5, 3).is_err());
        assert!(BoundaryCondition::plate(BcKind::Dirichlet, 7.0, 2).is_ok());
    }
}
