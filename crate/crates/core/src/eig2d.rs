//! Finite-difference eigenvalue problems on rectangles: Dirichlet Laplacian,
//! clamped bilaplacian, exact separable spectra, discrete energies and the
//! refinement-banded comparison checks.

pub mod banded;
pub mod compare;
pub mod energies;
pub mod exact;
pub mod grid;
pub mod solver;

pub use compare::*;
pub use energies::form_energies;
pub use exact::*;
pub use grid::{assemble_clamped_bilaplacian, assemble_dirichlet_laplacian, DiscreteOperator, Grid2D, OperatorKind, Parity};
pub use solver::{smallest_eigs, EigenPairs, Method, SolverOptions};
