//! Exact polynomial algebra over ℚ: univariate and bivariate polynomials,
//! Sylvester resultants, singular points and special fibers of branch
//! curves, and the resolution-section identity over `ℤ[ζ][t]`.

mod bivar;
mod fibers;
mod resolution;
mod resultant;
pub mod roots;
mod upoly;

pub use bivar::{parse_rational, BivarPoly, ParamBivarPoly};
pub use fibers::{
    content_in_y, ensure_squarefree, find_special_fibers, roots_of_squarefree, roots_with_multiplicity,
    singular_points, Direction, FiberKind, FiberReport, FiberScan, FiberWarning, PlanePoint, Root, SingularPoint,
    CLUSTER_RADIUS,
};
pub use resolution::{
    verify_resolution_section, verify_resolution_section_with, EisPoly, ResolutionResidual, SectionVariant,
};
pub use resultant::{determinant, interpolate, resultant_uni, resultant_x, resultant_y, sylvester_matrix};
pub use upoly::{q, q_frac, q_to_f64, UniPoly};
