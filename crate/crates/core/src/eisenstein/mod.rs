//! Exact arithmetic in `ℤ[ζ]`, integral lattices with an isometry of order 3,
//! the induced Hermitian form, and discriminant groups via Smith normal form.

mod int;
pub mod intmat;
mod lattice;
mod snf;

pub use int::{eis_mul, eis_norm, zeta_c, EisensteinInt};
pub use lattice::{hermitian_form, IsometricLattice};
pub use snf::{discriminant_group, smith_diagonal, DiscriminantGroup};
