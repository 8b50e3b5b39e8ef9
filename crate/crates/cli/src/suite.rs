//! The consolidated run behind `paper-suite`.

use std::f64::consts::PI;

use eisk3_core::analytic::{
    beta, certificate_from_model, euler_crosscheck, fit_on_grid, g_sampler, inhomogeneous_report, period_sampler,
    verify_period_ode_opts, GridSpec, VerifyOptions,
};
use eisk3_core::branch::{catalog, expected_a, invariants, moduli_dimension_check, CATALOG_RANKS};
use eisk3_core::eisenstein::{hermitian_form, EisensteinInt, IsometricLattice};
use eisk3_core::poly::{find_special_fibers, Direction, FiberKind, ParamBivarPoly};
use eisk3_core::quadrature::{de_quad_endpoints, g_monte_carlo, g_value_with, period_value_with};
use eisk3_core::{BigRational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::{self, Ctx, INHOMOGENEOUS_TOL};
use crate::report::{verdict_str, Outcome};

pub struct SuiteOptions {
    pub mc_samples: u64,
}

struct Section {
    name: &'static str,
    passed: bool,
    details: Value,
}

impl Section {
    fn new(name: &'static str, passed: bool, details: Value) -> Self {
        Self { name, passed, details }
    }

    fn to_json(&self) -> Value {
        json!({"name": self.name, "verdict": verdict_str(self.passed), "details": self.details})
    }
}

fn invariant_section() -> Result<Section> {
    let mut rows = Vec::new();
    let mut ok = true;
    for r in CATALOG_RANKS {
        let inv = invariants(&catalog(r)?);
        let good = inv.r == r && inv.a == expected_a(r);
        ok &= good;
        rows.push(json!([inv.r, inv.a, good]));
    }
    Ok(Section::new("invariants", ok, json!({"rows_r_a_ok": rows})))
}

fn dimension_section() -> Result<Section> {
    let checks = CATALOG_RANKS.iter().map(|&r| moduli_dimension_check(r)).collect::<Result<Vec<_>>>()?;
    let ok = checks.iter().all(|c| c.agree);
    Ok(Section::new("dimension_check", ok, json!({"family_dims": checks.iter().map(|c| c.family_dim).collect::<Vec<_>>()})))
}

fn hermitian_section(seed: u64) -> Result<Section> {
    let a2 = IsometricLattice::a2();
    let h11 = hermitian_form(&a2, &[1, 0], &[1, 0])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for _ in 0..100 {
        let blocks = rng.random_range(1..=3);
        let lat = IsometricLattice::random_eisenstein(blocks, &mut rng);
        let n = lat.rank();
        let x: Vec<i64> = (0..n).map(|_| rng.random_range(-5..=5)).collect();
        let y: Vec<i64> = (0..n).map(|_| rng.random_range(-5..=5)).collect();
        let hxy = hermitian_form(&lat, &x, &y)?;
        let sesqui = hermitian_form(&lat, &lat.apply(&x)?, &y)? == EisensteinInt::ZETA.checked_mul(hxy)?;
        let herm = hermitian_form(&lat, &y, &x)? == hxy.conj();
        if !(sesqui && herm) {
            failures += 1;
        }
    }
    let ok = h11 == EisensteinInt::from_int(3) && failures == 0;
    Ok(Section::new("hermitian", ok, json!({"a2_h_e1_e1": h11.to_string(), "random_lattices": 100, "failures": failures})))
}

fn quadrature_section(ctx: &Ctx) -> Result<Section> {
    let thirds = [1.0 / 3.0, 2.0 / 3.0, 1.0, 4.0 / 3.0];
    let mut worst_beta: f64 = 0.0;
    let mut cases = 0;
    for &p in &thirds {
        for &q in &thirds {
            let r = de_quad_endpoints(|_, ta, tb| ta.powf(p - 1.0) * tb.powf(q - 1.0), 0.0, 1.0, 1e-14, ctx.quad)?;
            worst_beta = worst_beta.max((r.value / beta(p, q) - 1.0).abs());
            cases += 1;
        }
    }
    // ∫₀² t^{p−1}(2 − t)^{p−1} dt = 2^{2p−1} B(p, p)
    for &p in &thirds {
        let r = de_quad_endpoints(|_, ta, tb| (ta * tb).powf(p - 1.0), 0.0, 2.0, 1e-14, ctx.quad)?;
        worst_beta = worst_beta.max((r.value / (2f64.powf(2.0 * p - 1.0) * beta(p, p)) - 1.0).abs());
        cases += 1;
    }
    let p0 = period_value_with(0.0, 1e-13, ctx.quad)?.value;
    let p0_err = (p0 - 2.0 * PI / 3f64.sqrt()).abs();
    let mut worst_closed: f64 = 0.0;
    for i in 1..=9 {
        let l = i as f64 / 10.0;
        let r = de_quad_endpoints(|x, _, tb| tb.powf(-1.0 / 3.0) * (1.0 - l * x).powf(-5.0 / 3.0), 0.0, 1.0, 1e-13, ctx.quad)?;
        worst_closed = worst_closed.max((r.value - 1.5 / (1.0 - l)).abs());
    }
    let ok = worst_beta < 1e-10 && p0_err < 1e-8 && worst_closed < 1e-9;
    Ok(Section::new(
        "quadrature_oracles",
        ok,
        json!({"beta_cases": cases, "beta_max_rel_err": worst_beta, "p0_err": p0_err, "closed_form_max_err": worst_closed}),
    ))
}

fn euler_section() -> Result<Section> {
    let mut worst: f64 = 0.0;
    for i in 1..=18 {
        worst = worst.max(euler_crosscheck(i as f64 * 0.05, 1e-13)?.residual);
    }
    Ok(Section::new("euler_crosscheck", worst < 1e-8, json!({"points": 18, "max_residual": worst})))
}

fn period_ode_section(ctx: &Ctx) -> Result<Section> {
    let opts = VerifyOptions { quad: ctx.quad, ..VerifyOptions::period() };
    let r = verify_period_ode_opts(&GridSpec::PERIOD_DEFAULT, commands::PF_TOL, opts)?;
    Ok(Section::new(
        "picard_fuchs_homogeneous",
        r.verdict.passed(),
        json!({"max_abs": r.max_abs, "tol": r.tol, "grid_points": r.grid.len(), "diagnostics": r.diagnostics}),
    ))
}

fn inhomogeneous_section(ctx: &Ctx) -> Result<Section> {
    let grid = GridSpec::INHOMOGENEOUS_DEFAULT;
    let tol = ctx.tol_or(INHOMOGENEOUS_TOL);
    let g_opts = VerifyOptions { quad: ctx.quad, ..VerifyOptions::inhomogeneous() };
    let model = fit_on_grid(&grid, g_opts.degree, g_sampler(g_opts))?;
    let report = inhomogeneous_report(&model, &grid, tol)?;
    let cert = certificate_from_model(&model, &grid, tol)?;
    let p_opts = VerifyOptions { quad: ctx.quad, ..VerifyOptions::period() };
    let control_model = fit_on_grid(&grid, p_opts.degree, period_sampler(p_opts))?;
    let control = inhomogeneous_report(&control_model, &grid, tol)?;
    let control_fails = !control.verdict.passed() && control.max_abs >= 1.1;
    let ok = report.verdict.passed() && cert.certified && control_fails;
    Ok(Section::new(
        "picard_fuchs_inhomogeneous",
        ok,
        json!({
            "max_abs": report.max_abs, "tol": tol, "diagnostics": report.diagnostics,
            "certificate": cert.statement, "margin": cert.margin,
            "homogeneous_control_max_abs": control.max_abs, "homogeneous_control_fails": control_fails,
        }),
    ))
}

fn outcome_section(name: &'static str, out: Outcome, keys: &[&str]) -> Section {
    let details: serde_json::Map<String, Value> =
        keys.iter().filter_map(|k| out.payload.get(*k).map(|v| ((*k).to_string(), v.clone()))).collect();
    Section::new(name, out.passed, Value::Object(details))
}

fn cycle_section(seed: u64) -> Result<Section> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut failures = Vec::new();
    for _ in 0..20 {
        let l: f64 = rng.random_range(0.01..0.99);
        if !commands::cycle_check(l)?.passed {
            failures.push(l);
        }
    }
    Ok(Section::new("cycle_construction", failures.is_empty(), json!({"random_lambdas": 20, "failures": failures})))
}

fn fiber_section() -> Result<Section> {
    let h = ParamBivarPoly::normalized_family().specialize(&BigRational::new(1.into(), 2.into()));
    let node_passing_at = |dir: Direction, value: &str| -> Result<bool> {
        let scan = find_special_fibers(&h, dir)?;
        Ok(scan.fibers.iter().any(|f| f.kind == FiberKind::NodePassing && f.exact_value.as_deref() == Some(value)))
    };
    let first = node_passing_at(Direction::One, "0")?;
    let second = node_passing_at(Direction::Two, "1")?;
    Ok(Section::new(
        "special_fibers",
        first && second,
        json!({"direction_1_node_passing_at_0": first, "direction_2_node_passing_at_1": second}),
    ))
}

fn monte_carlo_section(ctx: &Ctx, samples: u64) -> Result<Section> {
    let g = g_value_with(0.5, 1e-10, ctx.quad)?;
    let mc = g_monte_carlo(0.5, samples, ctx.seed)?;
    let z = (mc.mean - g.g_real) / mc.std_error;
    Ok(Section::new(
        "monte_carlo_g",
        g.converged && z.abs() <= 3.0,
        json!({"lambda": 0.5, "quadrature": g.g_real, "monte_carlo": mc.mean, "std_error": mc.std_error, "samples": samples, "z_score": z}),
    ))
}

pub fn run(ctx: &Ctx, opts: &SuiteOptions) -> Result<Outcome> {
    let sections = vec![
        invariant_section()?,
        dimension_section()?,
        hermitian_section(ctx.seed)?,
        quadrature_section(ctx)?,
        euler_section()?,
        period_ode_section(ctx)?,
        inhomogeneous_section(ctx)?,
        outcome_section("potential_identity", commands::potential_check(&Ctx { tol: None, ..*ctx }, 10)?, &["sweeps"]),
        cycle_section(ctx.seed)?,
        outcome_section("chain_algebra", commands::chain_check()?, &["residual", "boundaries_closed"]),
        outcome_section("resolution_section", commands::resolution_check(3)?, &["zeta_replaced_by_one"]),
        fiber_section()?,
        monte_carlo_section(ctx, opts.mc_samples)?,
    ];
    let passed = sections.iter().all(|s| s.passed);
    let summary: Vec<Value> = sections.iter().map(|s| json!([s.name, verdict_str(s.passed)])).collect();
    Ok(Outcome::new(passed)
        .field("seed", ctx.seed)
        .field("level_cap", ctx.quad.level_cap)
        .field("summary", summary)
        .field("sections", sections.iter().map(Section::to_json).collect::<Vec<_>>()))
}
