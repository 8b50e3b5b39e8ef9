//! Double-exponential quadrature for integrands with algebraic endpoint
//! singularities, the period integral `P(λ)`, and the improper double
//! integral `G(λ)`.

mod monte_carlo;
mod periods;
mod tanh_sinh;

pub use monte_carlo::{g_monte_carlo, McEstimate};
pub use periods::{
    g_value, g_value_with, incomplete_inner, period_derivative, period_value, period_value_with, GValue,
};
pub use tanh_sinh::{de_quad, de_quad_endpoints, de_quad_with, QuadOptions, QuadResult};
