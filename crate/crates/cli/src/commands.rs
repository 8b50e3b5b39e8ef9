use std::fs;
use std::path::Path;

use eisk3_core::analytic::{
    certificate_from_model, fit_on_grid, g_sampler, gamma, gauss_2f1, inhomogeneous_report, period_sampler,
    potential_sweep, verify_period_ode_opts, GridSpec, PotentialSweep, PotentialVariant, VerifyOptions,
};
use eisk3_core::branch::{
    ball_dimension, catalog, classify, degeneration_chain, expected_a, family_dimension, invariants,
    moduli_dimension_check, BranchConfig, CATALOG_RANKS,
};
use eisk3_core::cycle::{
    build_cycle_functions, chain_boundary_check, fiber_over_q12, path_endpoints, two_chain_boundaries, CoverPoint,
    NormalizedFamily,
};
use eisk3_core::eisenstein::{discriminant_group, hermitian_form, EisensteinInt, IsometricLattice};
use eisk3_core::poly::{
    find_special_fibers, parse_rational, singular_points, verify_resolution_section,
    verify_resolution_section_with, Direction, ParamBivarPoly, SectionVariant,
};
use eisk3_core::quadrature::{g_monte_carlo, g_value_with, period_value_with, QuadOptions};
use eisk3_core::{Complex64, Error, Result};
use serde_json::{json, Value};

use crate::report::{to_value, Cell, Csv, Outcome, TYPO_LEDGER};

pub const PERIOD_TOL: f64 = 1e-12;
pub const G_TOL: f64 = 1e-8;
pub const PF_TOL: f64 = 1e-5;
pub const INHOMOGENEOUS_TOL: f64 = 1e-4;
pub const POTENTIAL_TOL: f64 = 1e-8;
/// Lower bound a misprinted variant must exceed.
pub const TYPO_FLOOR: f64 = 1e-2;

/// Flags shared by all subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub tol: Option<f64>,
    pub quad: QuadOptions,
    pub seed: u64,
}

impl Ctx {
    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn components_label(cfg: &BranchConfig) -> String {
    cfg.components()
        .iter()
        .map(|c| if c.nodes > 0 { format!("{}x{}", c.bidegree, c.nodes) } else { c.bidegree.to_string() })
        .collect::<Vec<_>>()
        .join("+")
}

fn catalog_configs(r: Option<i64>) -> Result<Vec<BranchConfig>> {
    match r {
        Some(r) => Ok(vec![catalog(r)?]),
        None => CATALOG_RANKS.iter().map(|&r| catalog(r)).collect(),
    }
}

/// Points of a sweep: a single `λ`, the uniform points of a grid, or `default`.
fn sweep_points(lambda: Option<f64>, grid: Option<&str>, default: f64) -> Result<Vec<f64>> {
    match (lambda, grid) {
        (Some(_), Some(_)) => Err(Error::Domain("give either --lambda or --grid, not both".into())),
        (Some(l), None) => Ok(vec![l]),
        (None, Some(g)) => Ok(GridSpec::parse(g)?.linspace()),
        (None, None) => Ok(vec![default]),
    }
}

pub fn invariants_table(r: Option<i64>, config: Option<&Path>) -> Result<Outcome> {
    let configs = match (r, config) {
        (Some(_), Some(_)) => return Err(Error::Domain("give either --r or --config, not both".into())),
        (_, Some(path)) => vec![BranchConfig::from_json(&read(path)?)?],
        (r, None) => catalog_configs(r)?,
    };
    let mut csv = Csv::new(&["r", "a", "n", "k", "family_dim", "ball_dim"]);
    let mut rows = Vec::new();
    for cfg in &configs {
        let inv = invariants(cfg);
        let (family_dim, ball_dim) = (family_dimension(cfg), ball_dimension(inv.r));
        csv.row(&[Cell::Int(inv.r), Cell::Int(inv.a), Cell::Int(inv.n), Cell::Int(inv.k), Cell::Int(family_dim), Cell::Int(ball_dim)]);
        rows.push(json!({
            "r": inv.r, "a": inv.a, "n": inv.n, "k": inv.k,
            "family_dim": family_dim, "ball_dim": ball_dim,
            "components": components_label(cfg),
        }));
    }
    Ok(Outcome::new(true).field("rows", rows).with_csv(csv.finish()))
}

pub fn catalog_table(r: Option<i64>) -> Result<Outcome> {
    let mut csv = Csv::new(&["r", "a", "expected_a", "components", "in_region", "on_extremal_line"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for (cfg, r) in catalog_configs(r)?.iter().zip(r.map_or(CATALOG_RANKS.to_vec(), |r| vec![r])) {
        let inv = invariants(cfg);
        let region = classify(inv.r, inv.a);
        let ok = inv.r == r && inv.a == expected_a(r) && region.on_extremal_line();
        passed &= ok;
        csv.row(&[
            Cell::Int(inv.r),
            Cell::Int(inv.a),
            Cell::Int(expected_a(r)),
            Cell::Text(components_label(cfg)),
            Cell::Bool(region.in_region),
            Cell::Bool(region.on_extremal_line()),
        ]);
        rows.push(json!({
            "r": r, "invariants": to_value(&inv), "expected_a": expected_a(r),
            "components": to_value(cfg.components()), "region": to_value(&region), "ok": ok,
        }));
    }
    Ok(Outcome::new(passed).field("rows", rows).field("degeneration_chain", degeneration_chain()).with_csv(csv.finish()))
}

pub fn dimension_table() -> Result<Outcome> {
    let checks = CATALOG_RANKS.iter().map(|&r| moduli_dimension_check(r)).collect::<Result<Vec<_>>>()?;
    let mut csv = Csv::new(&["r", "family_dim", "ball_dim", "agree"]);
    for c in &checks {
        csv.row(&[Cell::Int(c.r), Cell::Int(c.family_dim), Cell::Int(c.ball_dim), Cell::Bool(c.agree)]);
    }
    let passed = checks.iter().all(|c| c.agree);
    Ok(Outcome::new(passed).field("rows", checks).with_csv(csv.finish()))
}

pub fn lattice_report(input: &Path) -> Result<Outcome> {
    let lat = IsometricLattice::from_json(&read(input)?)?;
    let disc = discriminant_group(lat.gram())?;
    let mut out = Outcome::new(lat.is_eisenstein())
        .field("rank", lat.rank())
        .field("is_eisenstein", lat.is_eisenstein())
        .field("discriminant_invariant_factors", disc.invariant_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>())
        .field("discriminant_order", disc.order().to_string())
        .field("three_rank", disc.p_rank(3))
        .field("three_elementary", disc.is_3_elementary());
    if lat.is_eisenstein() {
        let n = lat.rank();
        let basis = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let row = (0..n).map(|j| hermitian_form(&lat, &basis(i), &basis(j))).collect::<Result<Vec<EisensteinInt>>>()?;
            rows.push(row);
        }
        out = out.field("hermitian_gram", rows);
    }
    Ok(out)
}

pub fn tangents(poly: Option<&Path>, direction: u8, lambda: Option<&str>) -> Result<Outcome> {
    let family = match poly {
        Some(path) => ParamBivarPoly::from_json(&read(path)?)?,
        None => ParamBivarPoly::normalized_family(),
    };
    let lambda = parse_rational(lambda.unwrap_or("1/2"))?;
    let h = family.specialize(&lambda);
    let direction = Direction::try_from(direction)?;
    let singular = singular_points(&h)?;
    let scan = find_special_fibers(&h, direction)?;
    let mut csv = Csv::new(&["value_re", "value_im", "exact_value", "kind", "contact", "resultant_multiplicity"]);
    for f in &scan.fibers {
        csv.row(&[
            Cell::Float(f.value.re),
            Cell::Float(f.value.im),
            Cell::Text(f.exact_value.clone().unwrap_or_default()),
            Cell::Text(to_value(&f.kind).as_str().unwrap_or_default().to_string()),
            Cell::Int(f.contact as i64),
            Cell::Int(f.resultant_multiplicity as i64),
        ]);
    }
    Ok(Outcome::new(true)
        .field("polynomial", h.to_string())
        .field("lambda", if family.has_parameter() { Value::from(lambda.to_string()) } else { Value::Null })
        .field("direction", direction)
        .field("singular_points", singular)
        .field("fibers", &scan.fibers)
        .field("warnings", &scan.warnings)
        .with_csv(csv.finish()))
}

pub fn cycle_check(lambda: f64) -> Result<Outcome> {
    let fam = NormalizedFamily::real(lambda)?;
    let fiber = fiber_over_q12(&fam)?;
    let fiber_exact = fiber.iter().enumerate().all(|(i, p)| {
        let expected = CoverPoint {
            x: Complex64::new(0.0, 0.0),
            y: Complex64::new(1.0, 0.0),
            z: EisensteinInt::zeta_pow(i as i64).to_complex(),
        };
        p.distance(&expected) < 1e-12
    });
    let funcs = build_cycle_functions(&fam)?;
    let chain = chain_boundary_check();
    let passed = fiber_exact && funcs.verified() && chain.residual.is_zero() && chain.boundaries_closed;
    Ok(Outcome::new(passed)
        .field("lambda", lambda)
        .field("fiber_points", fiber)
        .field("fiber_exact", fiber_exact)
        .field("f1", funcs.f1.to_string())
        .field("f2", funcs.f2.to_string())
        .field("divisor_c1", &funcs.c1)
        .field("divisor_c2", &funcs.c2)
        .field("total_divisor", &funcs.total_divisor)
        .field("max_surface_residual", funcs.max_surface_residual)
        .field("chain_residual", chain.residual.to_string()))
}

pub fn chain_check() -> Result<Outcome> {
    let chain = chain_boundary_check();
    let boundaries: serde_json::Map<String, Value> =
        two_chain_boundaries().into_iter().map(|(k, v)| (k, Value::from(v.to_string()))).collect();
    let endpoints: serde_json::Map<String, Value> =
        path_endpoints().into_iter().map(|(k, (a, b))| (k, json!([a, b]))).collect();
    Ok(Outcome::new(chain.residual.is_zero() && chain.boundaries_closed)
        .field("combination", chain.combination.to_string())
        .field("boundary", chain.boundary.to_string())
        .field("target", chain.target.to_string())
        .field("residual", chain.residual.to_string())
        .field("boundaries_closed", chain.boundaries_closed)
        .field("two_chain_boundaries", boundaries)
        .field("path_endpoints", endpoints))
}

pub fn period(ctx: &Ctx, lambda: Option<f64>, grid: Option<&str>) -> Result<Outcome> {
    let tol = ctx.tol_or(PERIOD_TOL);
    let mut csv = Csv::new(&["lambda", "value", "err_estimate", "converged"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for l in sweep_points(lambda, grid, 0.5)? {
        let r = period_value_with(l, tol, ctx.quad)?;
        passed &= r.converged;
        let hypergeometric = if l <= 0.9 {
            Some(gamma(2.0 / 3.0) * gamma(1.0 / 3.0) * gauss_2f1(2.0 / 3.0, 2.0 / 3.0, 1.0, l)?)
        } else {
            None
        };
        csv.row(&[Cell::Float(l), Cell::Float(r.value), Cell::Float(r.err_estimate), Cell::Bool(r.converged)]);
        rows.push(json!({"lambda": l, "quadrature": to_value(&r), "hypergeometric": hypergeometric}));
    }
    Ok(Outcome::new(passed).field("tol", tol).field("values", rows).with_csv(csv.finish()))
}

pub fn gvalue(ctx: &Ctx, lambda: Option<f64>, grid: Option<&str>, mc_samples: Option<u64>) -> Result<Outcome> {
    let tol = ctx.tol_or(G_TOL);
    let mut csv = Csv::new(&["lambda", "g_real", "g_re", "g_im", "err_estimate", "converged"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for l in sweep_points(lambda, grid, 0.5)? {
        let g = g_value_with(l, tol, ctx.quad)?;
        passed &= g.converged;
        let mut row = json!({"lambda": l, "value": to_value(&g)});
        if let Some(n) = mc_samples {
            let mc = g_monte_carlo(l, n, ctx.seed)?;
            let z = (mc.mean - g.g_real) / mc.std_error;
            passed &= z.abs() <= 3.0;
            row["monte_carlo"] = json!({"estimate": to_value(&mc), "z_score": z, "seed": ctx.seed});
        }
        csv.row(&[
            Cell::Float(l),
            Cell::Float(g.g_real),
            Cell::Float(g.g.re),
            Cell::Float(g.g.im),
            Cell::Float(g.err_estimate),
            Cell::Bool(g.converged),
        ]);
        rows.push(row);
    }
    Ok(Outcome::new(passed).field("tol", tol).field("values", rows).with_csv(csv.finish()))
}

fn residual_csv(grid: &[f64], residuals: &[Complex64]) -> String {
    let mut csv = Csv::new(&["lambda", "residual_re", "residual_im"]);
    for (l, r) in grid.iter().zip(residuals) {
        csv.row(&[Cell::Float(*l), Cell::Float(r.re), Cell::Float(r.im)]);
    }
    csv.finish()
}

fn merge(mut out: Outcome, value: Value) -> Outcome {
    if let Value::Object(m) = value {
        out.payload.extend(m);
    }
    out
}

pub fn verify_pf(ctx: &Ctx, grid: Option<&str>, degree: usize) -> Result<Outcome> {
    let tol = ctx.tol_or(PF_TOL);
    let grid = grid.map(GridSpec::parse).transpose()?.unwrap_or(GridSpec::PERIOD_DEFAULT);
    let opts = VerifyOptions { degree, quad: ctx.quad, ..VerifyOptions::period() };
    let report = verify_period_ode_opts(&grid, tol, opts)?;
    let csv = residual_csv(&report.grid, &report.residuals);
    let out = Outcome::new(report.verdict.passed()).field("grid_spec", grid).field("typo_ledger", TYPO_LEDGER);
    Ok(merge(out, to_value(&report)).with_csv(csv))
}

pub fn verify_inhomog(ctx: &Ctx, grid: Option<&str>, degree: usize, quad_tol: f64, control: bool) -> Result<Outcome> {
    let tol = ctx.tol_or(INHOMOGENEOUS_TOL);
    let grid = grid.map(GridSpec::parse).transpose()?.unwrap_or(GridSpec::INHOMOGENEOUS_DEFAULT);
    grid.within(0.1, 0.9)?;
    let model = if control {
        let opts = VerifyOptions { degree, quad: ctx.quad, ..VerifyOptions::period() };
        fit_on_grid(&grid, degree, period_sampler(opts))?
    } else {
        let opts = VerifyOptions { degree, quad_tol, quad: ctx.quad };
        fit_on_grid(&grid, degree, g_sampler(opts))?
    };
    let report = inhomogeneous_report(&model, &grid, tol)?;
    let cert = certificate_from_model(&model, &grid, tol)?;
    let passed = report.verdict.passed() && cert.certified;
    let csv = residual_csv(&report.grid, &report.residuals);
    let out = Outcome::new(passed)
        .field("grid_spec", grid)
        .field("sampled", if control { "period (homogeneous control)" } else { "g = G/(1 - zeta)" })
        .field("quad_tol", quad_tol)
        .field("max_abs_times_one_minus_zeta", report.max_abs * 3f64.sqrt())
        .field("certificate", cert)
        .field("typo_ledger", TYPO_LEDGER);
    Ok(merge(out, to_value(&report)).with_csv(csv))
}

fn sweep_min(s: &PotentialSweep) -> f64 {
    s.points.iter().fold(f64::INFINITY, |m, p| m.min(p.2))
}

pub fn potential_check(ctx: &Ctx, n: usize) -> Result<Outcome> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2 grid points per axis, got {n}")));
    }
    let tol = ctx.tol_or(POTENTIAL_TOL);
    let variants = [
        ("consistent", PotentialVariant::CONSISTENT),
        ("exponent_typo", PotentialVariant::EXPONENT_TYPO),
        ("constant_typo", PotentialVariant::CONSTANT_TYPO),
    ];
    let mut csv = Csv::new(&["variant", "t", "lambda", "residual"]);
    let mut sweeps = serde_json::Map::new();
    let mut passed = true;
    for (name, v) in variants {
        let s = potential_sweep(n, v)?;
        let min = sweep_min(&s);
        let ok = if name == "consistent" { s.max_residual < tol } else { min > TYPO_FLOOR };
        passed &= ok;
        for &(t, l, r) in &s.points {
            csv.row(&[Cell::Text(name.into()), Cell::Float(t), Cell::Float(l), Cell::Float(r)]);
        }
        sweeps.insert(
            name.into(),
            json!({"variant": to_value(&v), "max_residual": s.max_residual, "min_residual": min, "ok": ok}),
        );
    }
    Ok(Outcome::new(passed)
        .field("tol", tol)
        .field("typo_floor", TYPO_FLOOR)
        .field("n", n)
        .field("sweeps", sweeps)
        .field("typo_ledger", TYPO_LEDGER)
        .with_csv(csv.finish()))
}

pub fn resolution_check(max_n: u32) -> Result<Outcome> {
    if max_n == 0 {
        return Err(Error::Domain("--max-n must be at least 1".into()));
    }
    let residuals: Vec<_> = (1..=max_n).map(verify_resolution_section).collect();
    let control = verify_resolution_section_with(1, SectionVariant::ZetaReplacedByOne);
    let passed = residuals.iter().all(|r| r.is_zero()) && !control.is_zero();
    Ok(Outcome::new(passed)
        .field("residuals", residuals)
        .field("zeta_replaced_by_one", json!({"residual": to_value(&control), "vanishes": control.is_zero()})))
}
