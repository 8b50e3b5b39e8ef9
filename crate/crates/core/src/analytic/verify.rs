use num_complex::Complex64;
use serde::Serialize;

use super::chebyshev::{chebyshev_points, ChebModel};
use super::pf::{pf_apply, PfApplied};
use super::special::{gamma, gauss_2f1};
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::quadrature::{g_value_with, period_value_with, QuadOptions};

/// Residual-grid specification `lo:hi:n`; the grid is the `n` Chebyshev
/// points of the second kind on `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridSpec {
    pub const PERIOD_DEFAULT: GridSpec = GridSpec { lo: 0.05, hi: 0.9, n: 33 };
    pub const INHOMOGENEOUS_DEFAULT: GridSpec = GridSpec { lo: 0.1, hi: 0.9, n: 33 };

    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo > 0.0 && hi < 1.0 && lo < hi) {
            return Err(Error::Domain(format!("grid bounds must satisfy 0 < lo < hi < 1, got {lo}:{hi}")));
        }
        if n < 3 {
            return Err(Error::Domain(format!("grid needs n >= 3 points, got {n}")));
        }
        Ok(Self { lo, hi, n })
    }

    /// Parses `lo:hi:n`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("grid must look like lo:hi:n, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else { return Err(bad()) };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, n)
    }

    pub fn points(&self) -> Vec<f64> {
        let mut p = chebyshev_points(self.lo, self.hi, self.n - 1);
        p.reverse();
        p
    }

    /// Equally spaced points, for sweeps.
    pub fn linspace(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i + 1 == self.n { self.hi } else { self.lo + step * i as f64 }).collect()
    }

    pub fn within(&self, lo: f64, hi: f64) -> Result<()> {
        const SLACK: f64 = 1e-12;
        if self.lo < lo - SLACK || self.hi > hi + SLACK {
            return Err(Error::Domain(format!("grid [{}, {}] must lie inside [{lo}, {hi}]", self.lo, self.hi)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<Complex64>,
    pub max_abs: f64,
    pub tol: f64,
    pub verdict: Verdict,
    pub model_degree: usize,
    /// Last-two-coefficient magnitude relative to the largest coefficient.
    pub trailing_ratio: f64,
    pub noise_floor: f64,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Degree of the Chebyshev model of the sampled function.
    pub degree: usize,
    /// Tolerance handed to the quadrature for each sample.
    pub quad_tol: f64,
    pub quad: QuadOptions,
}

impl VerifyOptions {
    pub fn period() -> Self {
        Self { degree: 64, quad_tol: 1e-13, quad: QuadOptions::default() }
    }

    pub fn inhomogeneous() -> Self {
        Self { degree: 64, quad_tol: 1e-8, quad: QuadOptions::default() }
    }
}

/// Chebyshev model of `f` on the grid interval.
pub fn fit_on_grid<F>(grid: &GridSpec, degree: usize, f: F) -> Result<ChebModel>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    ChebModel::fit(grid.lo, grid.hi, degree, f)
}

/// Evaluates `𝒟f − rhs` on the grid and grades it against `tol`.
///
/// `scale` multiplies each residual to give the reported complex value.
pub fn residual_report<R>(model: &ChebModel, grid: &GridSpec, tol: f64, rhs: R, scale: Complex64) -> Result<ResidualReport>
where
    R: Fn(f64) -> f64,
{
    let applied: PfApplied = pf_apply(model)?;
    let points = grid.points();
    let residuals: Vec<Complex64> = points.iter().map(|&l| scale * (applied.eval(l) - rhs(l))).collect();
    let max_abs = residuals.iter().fold(0.0, |m: f64, r| m.max(r.norm()));
    let noise_floor = model.second_derivative_noise_floor() * scale.norm();
    let mut diagnostics = Vec::new();
    let mut verdict = if max_abs < tol { Verdict::Pass } else { Verdict::Fail };
    if tol < noise_floor {
        verdict = Verdict::Fail;
        diagnostics.push(format!("tolerance below differentiation noise floor (estimated floor {noise_floor:.3e})"));
    }
    if !max_abs.is_finite() {
        verdict = Verdict::Fail;
        diagnostics.push("non-finite residual".into());
    }
    Ok(ResidualReport {
        grid: points,
        residuals,
        max_abs,
        tol,
        verdict,
        model_degree: model.degree(),
        trailing_ratio: model.trailing() / model.max_coeff().max(f64::MIN_POSITIVE),
        noise_floor,
        diagnostics,
    })
}

pub fn period_sampler(opts: VerifyOptions) -> impl Fn(f64) -> Result<f64> + Sync {
    move |l| Ok(period_value_with(l, opts.quad_tol, opts.quad)?.require_converged()?.value)
}

pub fn g_sampler(opts: VerifyOptions) -> impl Fn(f64) -> Result<f64> + Sync {
    move |l| Ok(g_value_with(l, opts.quad_tol, opts.quad)?.require_converged()?.g_real)
}

/// `max |𝒟P|` over the grid for the period `P(λ)`.
pub fn verify_period_ode(grid: &GridSpec, tol: f64) -> Result<ResidualReport> {
    verify_period_ode_opts(grid, tol, VerifyOptions::period())
}

pub fn verify_period_ode_opts(grid: &GridSpec, tol: f64, opts: VerifyOptions) -> Result<ResidualReport> {
    verify_period_ode_with(grid, tol, opts.degree, period_sampler(opts))
}

/// As [`verify_period_ode`] for any sampled function.
pub fn verify_period_ode_with<F>(grid: &GridSpec, tol: f64, degree: usize, f: F) -> Result<ResidualReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    grid.within(0.05, 0.9)?;
    let model = fit_on_grid(grid, degree, f)?;
    residual_report(&model, grid, tol, |_| 0.0, Complex64::new(1.0, 0.0))
}

/// `max |𝒟g − 1/(λ − 1)|` over the grid for `g = G/(1 − ζ)`.
pub fn verify_inhomogeneous_ode(grid: &GridSpec, tol: f64) -> Result<ResidualReport> {
    verify_inhomogeneous_ode_opts(grid, tol, VerifyOptions::inhomogeneous())
}

pub fn verify_inhomogeneous_ode_opts(grid: &GridSpec, tol: f64, opts: VerifyOptions) -> Result<ResidualReport> {
    verify_inhomogeneous_ode_with(grid, tol, opts.degree, g_sampler(opts))
}

pub fn verify_inhomogeneous_ode_with<F>(grid: &GridSpec, tol: f64, degree: usize, f: F) -> Result<ResidualReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    grid.within(0.1, 0.9)?;
    let model = fit_on_grid(grid, degree, f)?;
    inhomogeneous_report(&model, grid, tol)
}

/// Grades a fitted model of `g` against `𝒟g = 1/(λ − 1)`.
pub fn inhomogeneous_report(model: &ChebModel, grid: &GridSpec, tol: f64) -> Result<ResidualReport> {
    let mut r = residual_report(model, grid, tol, |l| 1.0 / (l - 1.0), Complex64::new(1.0, 0.0))?;
    r.diagnostics.push(
        "residuals are for g = G/(1 - zeta); multiplying by (1 - zeta) gives DG - (1 - zeta)/(lambda - 1), of modulus sqrt(3) times larger".into(),
    );
    Ok(r)
}

/// `(1 − ζ)` as a complex number.
pub fn one_minus_zeta() -> Complex64 {
    (EisensteinInt::ONE - EisensteinInt::ZETA).to_complex()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EulerCheck {
    pub lambda: f64,
    pub period: f64,
    pub hypergeometric: f64,
    pub residual: f64,
}

/// `|P(λ) − Γ(2/3)Γ(1/3)·₂F₁(2/3, 2/3; 1; λ)|` for `λ ∈ [0, 0.9]`.
pub fn euler_crosscheck(lambda: f64, tol: f64) -> Result<EulerCheck> {
    if !(0.0..=0.9).contains(&lambda) {
        return Err(Error::Domain(format!("lambda must lie in [0, 0.9], got {lambda}")));
    }
    let period = period_value_with(lambda, tol, QuadOptions::default())?.require_converged()?.value;
    let hypergeometric = gamma(2.0 / 3.0) * gamma(1.0 / 3.0) * gauss_2f1(2.0 / 3.0, 2.0 / 3.0, 1.0, lambda)?;
    Ok(EulerCheck { lambda, period, hypergeometric, residual: (period - hypergeometric).abs() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndependenceCertificate {
    /// `max |𝒟f − 1/(λ − 1)|` over the grid.
    pub inhomogeneous_residual: f64,
    /// `min |𝒟f|` over the grid: how far `f` is from being annihilated.
    pub min_abs_pf: f64,
    pub margin: f64,
    pub tol: f64,
    pub certified: bool,
    pub statement: String,
}

/// Certifies that the sampled function solves the inhomogeneous equation
/// while `𝒟f` stays bounded away from zero, so it is not a combination of
/// solutions of `𝒟f = 0`.
pub fn certificate_from_model(model: &ChebModel, grid: &GridSpec, tol: f64) -> Result<IndependenceCertificate> {
    let applied = pf_apply(model)?;
    let pts = grid.points();
    let pf: Vec<f64> = pts.iter().map(|&l| applied.eval(l)).collect();
    let inhomogeneous_residual = pts.iter().zip(&pf).fold(0.0, |m: f64, (&l, v)| m.max((v - 1.0 / (l - 1.0)).abs()));
    let min_abs_pf = pf.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let certified = inhomogeneous_residual < tol && min_abs_pf > tol;
    let statement = if certified {
        format!("Df = 1/(lambda - 1) to {inhomogeneous_residual:.3e} while |Df| >= {min_abs_pf:.3e}: f is not annihilated by D, so it is not a linear combination of periods")
    } else if inhomogeneous_residual >= tol {
        format!("inhomogeneous residual {inhomogeneous_residual:.3e} is not below {tol:.1e}; no certificate")
    } else {
        format!("|Df| drops to {min_abs_pf:.3e}; no certificate")
    };
    Ok(IndependenceCertificate { inhomogeneous_residual, min_abs_pf, margin: min_abs_pf - inhomogeneous_residual, tol, certified, statement })
}

pub fn independence_certificate(grid: &GridSpec, tol: f64) -> Result<IndependenceCertificate> {
    let opts = VerifyOptions::inhomogeneous();
    independence_certificate_with(grid, tol, opts.degree, g_sampler(opts))
}

pub fn independence_certificate_with<F>(grid: &GridSpec, tol: f64, degree: usize, f: F) -> Result<IndependenceCertificate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    grid.within(0.1, 0.9)?;
    let model = fit_on_grid(grid, degree, f)?;
    certificate_from_model(&model, grid, tol)
}
