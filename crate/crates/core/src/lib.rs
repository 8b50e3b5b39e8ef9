//! Computational kernels for Eisenstein K3 surfaces: exact `ℤ[ζ]` lattice
//! arithmetic, branch-curve invariants on `ℙ¹×ℙ¹`, resultant-based fiber
//! analysis, the cycle construction on the normalized family, singular
//! quadrature for its periods and normal function, and Picard-Fuchs
//! certification.

pub mod analytic;
pub mod branch;
pub mod cycle;
pub mod eisenstein;
pub mod error;
pub mod fmt17;
pub mod poly;
pub mod quadrature;

pub use analytic::{GridSpec, PicardFuchsOperator, ResidualReport, Verdict};
pub use branch::{BranchConfig, Component, InvariantPair};
pub use cycle::{CoverPoint, FormalChain, NormalizedFamily, RationalCurveChart};
pub use eisenstein::{DiscriminantGroup, EisensteinInt, IsometricLattice};
pub use error::{Error, Result};
pub use poly::{BivarPoly, FiberReport, ParamBivarPoly};
pub use quadrature::{GValue, QuadResult};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
