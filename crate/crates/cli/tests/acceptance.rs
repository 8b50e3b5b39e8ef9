//! The twelve acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use eisk3_core::analytic::{
    period_sampler, potential_sweep, verify_inhomogeneous_ode, verify_inhomogeneous_ode_with, verify_period_ode,
    GridSpec, PotentialVariant, VerifyOptions,
};
use eisk3_core::branch::{catalog, invariants, moduli_dimension_check, CATALOG_RANKS};
use eisk3_core::cycle::{build_cycle_functions, chain_boundary_check, fiber_over_q12, Chart, RationalCurveChart};
use eisk3_core::eisenstein::{hermitian_form, EisensteinInt, IsometricLattice};
use eisk3_core::poly::verify_resolution_section;
use eisk3_core::quadrature::{de_quad_endpoints, period_value, QuadOptions};
use eisk3_core::{Complex64, NormalizedFamily, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(bool, String)>;

const GAMMA_THIRD: f64 = 2.678_938_534_707_747_6;
const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;

/// `Γ(k/3)` for `k ≥ 1` from the two tabulated values and `Γ(x + 1) = xΓ(x)`.
fn gamma_thirds(k: u32) -> f64 {
    match k {
        1 => GAMMA_THIRD,
        2 => GAMMA_TWO_THIRDS,
        3 => 1.0,
        k => (k as f64 / 3.0 - 1.0) * gamma_thirds(k - 3),
    }
}

fn zeta() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

fn invariant_table() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut ok = true;
    for r in CATALOG_RANKS {
        let inv = invariants(&catalog(r)?);
        let a = if r <= 10 { 1 + r / 2 } else { 11 - r / 2 };
        ok &= (inv.r, inv.a) == (r, a);
    }
    let elapsed = start.elapsed();
    Ok((ok && elapsed < Duration::from_millis(1), format!("9 ranks in {elapsed:?}")))
}

fn dimension_check() -> Result<(bool, String)> {
    let mut ok = true;
    for r in CATALOG_RANKS {
        let d = moduli_dimension_check(r)?;
        ok &= d.agree && d.family_dim == 10 - r / 2;
    }
    Ok((ok, "family_dim = 10 - r/2 for all nine".into()))
}

fn hermitian_suite() -> Result<(bool, String)> {
    let h11 = hermitian_form(&IsometricLattice::a2(), &[1, 0], &[1, 0])?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    for _ in 0..100 {
        let lat = IsometricLattice::random_eisenstein(rng.random_range(1..=3), &mut rng);
        let n = lat.rank();
        let x: Vec<i64> = (0..n).map(|_| rng.random_range(-6..=6)).collect();
        let y: Vec<i64> = (0..n).map(|_| rng.random_range(-6..=6)).collect();
        let lhs = hermitian_form(&lat, &lat.apply(&x)?, &y)?;
        let rhs = EisensteinInt::ZETA * hermitian_form(&lat, &x, &y)?;
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok((h11 == EisensteinInt::from_int(3) && failures == 0, format!("h(e1,e1) = {h11}, {failures} failures in 100")))
}

fn quadrature_suite() -> Result<(bool, String)> {
    let start = Instant::now();
    let opts = QuadOptions::default();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for p in 1..=4u32 {
        for q in 1..=4u32 {
            let (pf, qf) = (p as f64 / 3.0, q as f64 / 3.0);
            let exact = gamma_thirds(p) * gamma_thirds(q) / gamma_thirds(p + q);
            let r = de_quad_endpoints(|_, a, b| a.powf(pf - 1.0) * b.powf(qf - 1.0), 0.0, 1.0, 1e-14, opts)?;
            worst = worst.max((r.value / exact - 1.0).abs());
            cases += 1;
        }
    }
    // t = 2s on the symmetric integrals over [0, 2]
    for p in 1..=4u32 {
        let pf = p as f64 / 3.0;
        let exact = 2f64.powf(2.0 * pf - 1.0) * gamma_thirds(p).powi(2) / gamma_thirds(2 * p);
        let r = de_quad_endpoints(|_, a, b| (a * b).powf(pf - 1.0), 0.0, 2.0, 1e-14, opts)?;
        worst = worst.max((r.value / exact - 1.0).abs());
        cases += 1;
    }
    let p0 = (period_value(1e-14, 1e-13)?.value - 2.0 * PI / 3f64.sqrt()).abs();
    let mut closed: f64 = 0.0;
    for i in 1..=9 {
        let l = i as f64 / 10.0;
        let r = de_quad_endpoints(|x, _, b| b.powf(-1.0 / 3.0) * (1.0 - l * x).powf(-5.0 / 3.0), 0.0, 1.0, 1e-13, opts)?;
        closed = closed.max((r.value - 3.0 / (2.0 * (1.0 - l))).abs());
    }
    let elapsed = start.elapsed();
    let ok = cases == 20 && worst < 1e-10 && p0 < 1e-8 && closed < 1e-9 && elapsed < Duration::from_secs(10);
    Ok((ok, format!("beta rel {worst:.1e} over {cases}, P(0+) {p0:.1e}, closed form {closed:.1e}, {elapsed:.2?}")))
}

/// `₂F₁(2/3, 2/3; 1; λ)` by direct summation.
fn hypergeometric_sum(l: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for n in 0..5000 {
        let n = n as f64;
        term *= (2.0 / 3.0 + n).powi(2) / ((1.0 + n) * (1.0 + n)) * l;
        sum += term;
    }
    sum
}

fn euler_crosscheck() -> Result<(bool, String)> {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 1..=18 {
        let l = 0.05 * i as f64;
        let p = period_value(l, 1e-13)?.require_converged()?.value;
        worst = worst.max((p - GAMMA_THIRD * GAMMA_TWO_THIRDS * hypergeometric_sum(l)).abs());
    }
    let elapsed = start.elapsed();
    Ok((worst < 1e-8 && elapsed < Duration::from_secs(30), format!("max {worst:.1e}, {elapsed:.2?}")))
}

fn homogeneous_pf() -> Result<(bool, String)> {
    let r = verify_period_ode(&GridSpec::PERIOD_DEFAULT, 1e-5)?;
    Ok((r.verdict.passed() && r.max_abs < 1e-5, format!("max |DP| = {:.2e}", r.max_abs)))
}

fn inhomogeneous_pf() -> Result<(bool, String)> {
    let start = Instant::now();
    let grid = GridSpec::INHOMOGENEOUS_DEFAULT;
    let r = verify_inhomogeneous_ode(&grid, 1e-4)?;
    let elapsed = start.elapsed();
    let opts = VerifyOptions::period();
    let control = verify_inhomogeneous_ode_with(&grid, 1e-4, opts.degree, period_sampler(opts))?;
    let ok = r.verdict.passed()
        && r.max_abs < 1e-4
        && elapsed < Duration::from_secs(300)
        && !control.verdict.passed()
        && control.max_abs >= 1.1;
    Ok((ok, format!("max {:.2e} in {elapsed:.2?}; homogeneous control {:.2e}", r.max_abs, control.max_abs)))
}

fn potential_identity() -> Result<(bool, String)> {
    let good = potential_sweep(10, PotentialVariant::CONSISTENT)?.max_residual;
    let min_of = |v| -> Result<f64> { Ok(potential_sweep(10, v)?.points.iter().fold(f64::INFINITY, |m, p| m.min(p.2))) };
    let exponent = min_of(PotentialVariant::EXPONENT_TYPO)?;
    let constant = min_of(PotentialVariant::CONSTANT_TYPO)?;
    Ok((
        good < 1e-8 && exponent > 1e-2 && constant > 1e-2,
        format!("consistent {good:.1e}; misprints at least {exponent:.1e} and {constant:.1e}"),
    ))
}

fn cycle_construction() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = zeta();
    let one = Complex64::new(1.0, 0.0);
    let mut ok = true;
    for _ in 0..20 {
        let fam = NormalizedFamily::real(rng.random_range(0.01..0.99))?;
        let fiber = fiber_over_q12(&fam)?;
        for (i, p) in fiber.iter().enumerate() {
            ok &= p.x.norm() < 1e-12 && (p.y - one).norm() < 1e-12 && (p.z - w.powu(i as u32)).norm() < 1e-12;
        }
        let funcs = build_cycle_functions(&fam)?;
        ok &= funcs.verified();
        // f₁ on C₁: p₀ at s = 1, p₁ at s = ζ²; f₂ on C₂: p₀ at u = 1, p₁ at u = ζ.
        ok &= funcs.f1.eval(w * w).norm() < 1e-12 && funcs.f1.eval_inverse(one).norm() < 1e-12;
        ok &= funcs.f2.eval(one).norm() < 1e-12 && funcs.f2.eval_inverse(w).norm() < 1e-12;
        let c1 = RationalCurveChart::new(Chart::C1, fam);
        let c2 = RationalCurveChart::new(Chart::C2, fam);
        ok &= c1.point(w * w).distance(&fiber[1]) < 1e-12 && c2.point(w).distance(&fiber[1]) < 1e-12;
    }
    Ok((ok, "20 random lambda".into()))
}

fn chain_algebra() -> Result<(bool, String)> {
    let c = chain_boundary_check();
    Ok((c.residual.is_zero() && c.boundaries_closed, format!("boundary {} vs {}", c.boundary, c.target)))
}

fn resolution_section() -> Result<(bool, String)> {
    let ok = (1..=3).all(|n| verify_resolution_section(n).is_zero());
    Ok((ok, "N = 1, 2, 3".into()))
}

fn determinism() -> Result<(bool, String)> {
    let dir = tempfile::tempdir().expect("temp dir");
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_eisk3"))
            .args(["paper-suite", "--seed", "5", "--tol", "1e-4", "--output"])
            .arg(&path)
            .status()
            .expect("run eisk3");
        (status.success(), std::fs::read(&path).unwrap_or_default())
    };
    let (ok1, a) = run("a.json");
    let (ok2, b) = run("b.json");
    Ok((ok1 && ok2 && !a.is_empty() && a == b, format!("{} bytes, exit ok {}", a.len(), ok1 && ok2)))
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("invariant table", invariant_table),
        ("dimension check", dimension_check),
        ("hermitian suite", hermitian_suite),
        ("quadrature oracles", quadrature_suite),
        ("euler cross-check", euler_crosscheck),
        ("homogeneous Picard-Fuchs", homogeneous_pf),
        ("inhomogeneous certification", inhomogeneous_pf),
        ("potential identity", potential_identity),
        ("cycle construction", cycle_construction),
        ("chain algebra", chain_algebra),
        ("resolution section", resolution_section),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {name}: {} ({detail})", i + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
