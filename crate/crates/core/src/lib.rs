//! Spectra of fourth-order (biharmonic) eigenvalue problems and explicit bounds on them.
//!
//! The crate is `no_std` + `alloc`: exact 1D spectra from the roots of
//! cos γ cosh γ = 1, Riesz means and counting functions, Weyl constants and
//! two-term predictions, averaged-variational upper bounds with concrete test
//! functions, and finite-difference plate eigensolvers on rectangles.
//! Every check produces a [`BoundReport`].
#![no_std]
// `num_traits::Float` supplies the float math without std; whenever std is in the
// crate graph (unit tests, or a dependent that links it) its inherent methods shadow
// the trait and the import looks unused.
#![allow(unused_imports)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod avp;
pub mod bc;
pub mod constants;
pub mod domain;
pub mod eig2d;
pub mod error;
pub mod report;
pub mod riesz;
pub mod roots1d;
pub mod semiclassical;
pub mod special;
pub mod spectra1d;
pub mod spectrum;

pub use bc::{BcKind, BoundaryCondition, Pair};
pub use constants::{dimensional_constants, DimensionalConstants};
pub use domain::DomainSpec;
pub use error::{Error, Result};
pub use report::{BoundReport, Relation};
pub use spectrum::{Source, Spectrum};
