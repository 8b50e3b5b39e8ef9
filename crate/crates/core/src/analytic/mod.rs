//! Gauss hypergeometric functions, the Picard-Fuchs operator of type
//! `(2/3, 2/3, 1)`, Chebyshev spectral differentiation, and residual-based
//! certification of the homogeneous and inhomogeneous equations.

mod chebyshev;
mod pf;
mod potential;
mod special;
mod verify;

pub use chebyshev::{chebyshev_points, ChebModel};
pub use pf::{pf_apply, pf_apply_with, PfApplied, PicardFuchsOperator};
pub use potential::{
    potential_sweep, verify_potential_identity, verify_potential_identity_with, PotentialSweep, PotentialVariant,
    POTENTIAL_STEP,
};
pub use special::{beta, gamma, gauss_2f1, gauss_2f1_series, hypergeometric_ode};
pub use verify::{
    certificate_from_model, euler_crosscheck, fit_on_grid, independence_certificate, independence_certificate_with,
    g_sampler, period_sampler, verify_period_ode_opts,
    inhomogeneous_report, one_minus_zeta, residual_report, verify_inhomogeneous_ode, verify_inhomogeneous_ode_opts,
    verify_inhomogeneous_ode_with, verify_period_ode, verify_period_ode_with, EulerCheck, GridSpec,
    IndependenceCertificate, ResidualReport, Verdict, VerifyOptions,
};
