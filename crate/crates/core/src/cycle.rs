//! The normalized family `z³ = y(y − x)(1 − x)(1 − λx)`: the fiber over
//! `q₁₂ = (0, 1)`, rational charts of the curves `C₁ ⊂ {x = 0}` and
//! `C₂ ⊂ {y = 1}`, the functions `f₁`, `f₂` with opposite divisors, and the
//! formal boundary bookkeeping of the 2-chain relation.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::eisenstein::{zeta_c, EisensteinInt};
use crate::error::{Error, Result};
use crate::poly::{BivarPoly, ParamBivarPoly};

/// Tolerance for `|z³ − h_λ(x, y)|` on constructed points.
pub const ON_SURFACE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizedFamily {
    pub lambda: Complex64,
}

impl NormalizedFamily {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if !lambda.is_finite() || lambda.norm() < 1e-14 || (lambda - 1.0).norm() < 1e-14 {
            return Err(Error::Domain(format!("lambda must avoid 0, 1 and infinity, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn real(lambda: f64) -> Result<Self> {
        Self::new(Complex64::new(lambda, 0.0))
    }

    /// `h_λ(x, y) = y(y − x)(1 − x)(1 − λx)`
    pub fn h(&self, x: Complex64, y: Complex64) -> Complex64 {
        y * (y - x) * (1.0 - x) * (1.0 - self.lambda * x)
    }

    /// Exact branch polynomial for rational `λ`.
    pub fn branch_polynomial(lambda: &BigRational) -> BivarPoly {
        ParamBivarPoly::normalized_family().specialize(lambda)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoverPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CoverPoint {
    /// `|z³ − h_λ(x, y)|`
    pub fn residual(&self, fam: &NormalizedFamily) -> f64 {
        (self.z.powu(3) - fam.h(self.x, self.y)).norm()
    }

    /// The covering transformation `(x, y, z) ↦ (x, y, ζz)`.
    pub fn sigma(&self) -> Self {
        Self { z: zeta_c() * self.z, ..*self }
    }

    pub fn distance(&self, o: &Self) -> f64 {
        ((self.x - o.x).norm_sqr() + (self.y - o.y).norm_sqr() + (self.z - o.z).norm_sqr()).sqrt()
    }
}

/// The three points over `q₁₂ = (0, 1)`: `p_i = (0, 1, ζⁱ)`.
pub fn fiber_over_q12(fam: &NormalizedFamily) -> Result<[CoverPoint; 3]> {
    let (x, y) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let h = fam.h(x, y);
    if (h - 1.0).norm() > ON_SURFACE_TOL {
        return Err(Error::Domain(format!("h(0, 1) = {h}, expected 1")));
    }
    let w = zeta_c();
    Ok([0, 1, 2].map(|i| CoverPoint { x, y, z: w.powu(i) }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// `x = 0, y = s³, z = s²`
    C1,
    /// `y = 1, x = (u³ − 1)/(u³ − λ), z = (1 − x)·u`
    C2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalCurveChart {
    pub which: Chart,
    pub parameter: &'static str,
    pub family: NormalizedFamily,
    /// Parameter values of `p₀, p₁, p₂`.
    pub marked: [Complex64; 3],
}

impl RationalCurveChart {
    pub fn new(which: Chart, family: NormalizedFamily) -> Self {
        let w = zeta_c();
        let one = Complex64::new(1.0, 0.0);
        let (parameter, marked) = match which {
            Chart::C1 => ("s", [one, w * w, w]),
            Chart::C2 => ("u", [one, w, w * w]),
        };
        Self { which, parameter, family, marked }
    }

    pub fn point(&self, t: Complex64) -> CoverPoint {
        match self.which {
            Chart::C1 => CoverPoint { x: Complex64::new(0.0, 0.0), y: t.powu(3), z: t * t },
            Chart::C2 => {
                let u3 = t.powu(3);
                let d = u3 - self.family.lambda;
                let x = (u3 - 1.0) / d;
                let one_minus_x = (1.0 - self.family.lambda) / d;
                CoverPoint { x, y: Complex64::new(1.0, 0.0), z: one_minus_x * t }
            }
        }
    }

    /// The multiplier `m` with `σ(point(t)) = point(m·t)`, exactly in `ℤ[ζ]`.
    pub fn sigma_multiplier(&self) -> EisensteinInt {
        match self.which {
            Chart::C1 => EisensteinInt::ZETA2,
            Chart::C2 => EisensteinInt::ZETA,
        }
    }

    pub fn sigma_param(&self, t: Complex64) -> Complex64 {
        self.sigma_multiplier().to_complex() * t
    }

    pub fn marked_points(&self) -> [CoverPoint; 3] {
        self.marked.map(|t| self.point(t))
    }
}

/// `f(t) = (t − zero)/(t − pole)` on a chart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MobiusFunction {
    pub chart: Chart,
    pub zero: Complex64,
    pub pole: Complex64,
}

impl MobiusFunction {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        (t - self.zero) / (t - self.pole)
    }

    /// `1/f`, finite at the pole.
    pub fn eval_inverse(&self, t: Complex64) -> Complex64 {
        (t - self.pole) / (t - self.zero)
    }
}

impl fmt::Display for MobiusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.chart {
            Chart::C1 => "s",
            Chart::C2 => "u",
        };
        write!(f, "({v} - ({:.6}))/({v} - ({:.6}))", self.zero, self.pole)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorReport {
    pub chart: Chart,
    /// Formal divisor on the marked-point labels `p0`, `p1`, `p2`.
    pub divisor: BTreeMap<String, i64>,
    /// `|f|` at the point labelled as the zero.
    pub value_at_zero: f64,
    /// `|1/f|` at the point labelled as the pole.
    pub inverse_at_pole: f64,
    /// `|f(t)|` at a large parameter value; tends to 1.
    pub modulus_at_large: f64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleFunctions {
    pub f1: MobiusFunction,
    pub f2: MobiusFunction,
    pub c1: DivisorReport,
    pub c2: DivisorReport,
    /// `div(f₁) + div(f₂)`; zero when the higher Chow relation holds.
    pub total_divisor: BTreeMap<String, i64>,
    /// Largest `|z³ − h_λ|` over the marked points of both charts.
    pub max_surface_residual: f64,
}

impl CycleFunctions {
    pub fn verified(&self) -> bool {
        self.c1.verified && self.c2.verified && self.total_divisor.values().all(|&v| v == 0)
    }
}

fn divisor_report(chart: &RationalCurveChart, f: &MobiusFunction, zero_label: usize, pole_label: usize) -> DivisorReport {
    let zero_t = chart.marked[zero_label];
    let pole_t = chart.marked[pole_label];
    let value_at_zero = f.eval(zero_t).norm();
    let inverse_at_pole = f.eval_inverse(pole_t).norm();
    let modulus_at_large = f.eval(Complex64::new(1e8, 1e8)).norm();
    let mut divisor = BTreeMap::new();
    *divisor.entry(format!("p{zero_label}")).or_insert(0) += 1;
    *divisor.entry(format!("p{pole_label}")).or_insert(0) -= 1;
    let verified = value_at_zero < 1e-12
        && inverse_at_pole < 1e-12
        && (modulus_at_large - 1.0).abs() < 1e-6
        // Exactly one zero and one pole: no other marked point is hit.
        && (0..3).filter(|&i| i != zero_label && i != pole_label).all(|i| {
            let v = f.eval(chart.marked[i]).norm();
            v > 1e-6 && v.is_finite()
        });
    DivisorReport { chart: chart.which, divisor, value_at_zero, inverse_at_pole, modulus_at_large, verified }
}

/// `f₁ = (s − ζ²)/(s − 1)` on `C₁` with `div = p₁ − p₀`, and
/// `f₂ = (u − 1)/(u − ζ)` on `C₂` with `div = p₀ − p₁`.
pub fn build_cycle_functions(fam: &NormalizedFamily) -> Result<CycleFunctions> {
    let c1 = RationalCurveChart::new(Chart::C1, *fam);
    let c2 = RationalCurveChart::new(Chart::C2, *fam);
    let fiber = fiber_over_q12(fam)?;
    let mut max_surface_residual: f64 = 0.0;
    for chart in [&c1, &c2] {
        for (p, q) in chart.marked_points().iter().zip(&fiber) {
            if p.distance(q) > 1e-12 {
                return Err(Error::Domain(format!("{:?} marked point {p:?} is not over q12", chart.which)));
            }
            max_surface_residual = max_surface_residual.max(p.residual(fam));
        }
    }
    let f1 = MobiusFunction { chart: Chart::C1, zero: c1.marked[1], pole: c1.marked[0] };
    let f2 = MobiusFunction { chart: Chart::C2, zero: c2.marked[0], pole: c2.marked[1] };
    let r1 = divisor_report(&c1, &f1, 1, 0);
    let r2 = divisor_report(&c2, &f2, 0, 1);
    let mut total_divisor = r1.divisor.clone();
    for (k, v) in &r2.divisor {
        *total_divisor.entry(k.clone()).or_insert(0) += v;
    }
    Ok(CycleFunctions { f1, f2, c1: r1, c2: r2, total_divisor, max_surface_residual })
}

/// An integer combination of opaque chain symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormalChain(pub BTreeMap<String, i64>);

impl FormalChain {
    pub fn symbol(name: &str) -> Self {
        Self::from_terms(&[(name, 1)])
    }

    pub fn from_terms(terms: &[(&str, i64)]) -> Self {
        let mut c = Self::default();
        for (s, k) in terms {
            c.add_term(s, *k);
        }
        c
    }

    pub fn add_term(&mut self, s: &str, k: i64) {
        let e = self.0.entry(s.to_string()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(s);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: i64) {
        for (s, v) in &other.0 {
            self.add_term(s, k * v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, s: &str) -> i64 {
        self.0.get(s).copied().unwrap_or(0)
    }

    /// Linear extension of a boundary table; symbols absent from the table
    /// contribute nothing.
    pub fn boundary(&self, table: &BTreeMap<String, FormalChain>) -> FormalChain {
        let mut out = FormalChain::default();
        for (s, k) in &self.0 {
            if let Some(b) = table.get(s) {
                out.add_scaled(b, *k);
            }
        }
        out
    }
}

impl fmt::Display for FormalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, k)) in self.0.iter().enumerate() {
            let sign = match (i, *k < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            match k.abs() {
                1 => write!(f, "{sign}{s}")?,
                m => write!(f, "{sign}{m}*{s}")?,
            }
        }
        Ok(())
    }
}

/// Boundaries of the 2-chains, for `i = 0, 1`.
pub fn two_chain_boundaries() -> BTreeMap<String, FormalChain> {
    let mut t = BTreeMap::new();
    for i in 0..2 {
        t.insert(
            format!("Gamma_{i}"),
            FormalChain::from_terms(&[
                (&format!("gamma_{{1,{i}}}"), 1),
                (&format!("gamma_{{0,0,{i}}}"), 1),
                ("gamma_b", 1),
                (&format!("gamma_{{1,1,{i}}}"), 1),
                (&format!("gamma_{{2,{i}}}"), 1),
            ]),
        );
    }
    t.insert("Gamma_q1".into(), FormalChain::from_terms(&[("gamma_{0,0,0}", 1), ("gamma_{0,0,1}", -1)]));
    t.insert("Gamma_q2".into(), FormalChain::from_terms(&[("gamma_{1,1,0}", 1), ("gamma_{1,1,1}", -1)]));
    t.insert(
        "Gamma_c1".into(),
        FormalChain::from_terms(&[("gamma_{1,0}", 1), ("gamma_{1,1}", -1), ("gamma_1", -1)]),
    );
    t.insert(
        "Gamma_c2".into(),
        FormalChain::from_terms(&[("gamma_{2,0}", 1), ("gamma_{2,1}", -1), ("gamma_2", -1)]),
    );
    t
}

/// Endpoints `(start, end)` of each path, in point symbols. Used to check
/// that every listed boundary is closed.
pub fn path_endpoints() -> BTreeMap<String, (String, String)> {
    let mut t = BTreeMap::new();
    let mut put = |g: &str, a: &str, b: &str| {
        t.insert(g.to_string(), (a.to_string(), b.to_string()));
    };
    put("gamma_b", "p_{1,1}", "p_{2,1}");
    put("gamma_1", "p_0", "p_1");
    put("gamma_2", "p_1", "p_0");
    for i in 0..2 {
        put(&format!("gamma_{{0,0,{i}}}"), "p_{1,0}", "p_{1,1}");
        put(&format!("gamma_{{1,1,{i}}}"), "p_{2,1}", "p_{2,0}");
        put(&format!("gamma_{{1,{i}}}"), &format!("p_{i}"), "p_{1,0}");
        put(&format!("gamma_{{2,{i}}}"), "p_{2,0}", &format!("p_{i}"));
    }
    t
}

/// `∂` of a 1-chain as a 0-chain (`end − start`).
pub fn path_boundary(chain: &FormalChain) -> FormalChain {
    let ends = path_endpoints();
    let mut out = FormalChain::default();
    for (g, k) in &chain.0 {
        if let Some((a, b)) = ends.get(g) {
            out.add_term(b, *k);
            out.add_term(a, -*k);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChainVariant {
    #[default]
    Full,
    /// Drops `Γ_{q₂}` from the combination.
    OmitGammaQ2,
    /// Uses `+Γ₁` instead of `−Γ₁`.
    FlipGamma1,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainCheck {
    pub combination: FormalChain,
    pub boundary: FormalChain,
    pub target: FormalChain,
    /// `∂(combination) − target`
    pub residual: FormalChain,
    /// Every table entry has closed boundary.
    pub boundaries_closed: bool,
}

pub fn chain_boundary_check() -> ChainCheck {
    chain_boundary_check_with(ChainVariant::Full)
}

pub fn chain_boundary_check_with(variant: ChainVariant) -> ChainCheck {
    let table = two_chain_boundaries();
    let mut terms = vec![
        ("Gamma_0", 1),
        ("Gamma_1", -1),
        ("Gamma_q1", -1),
        ("Gamma_q2", -1),
        ("Gamma_c1", -1),
        ("Gamma_c2", -1),
    ];
    match variant {
        ChainVariant::Full => {}
        ChainVariant::OmitGammaQ2 => terms.retain(|(s, _)| *s != "Gamma_q2"),
        ChainVariant::FlipGamma1 => terms[1].1 = 1,
    }
    let combination = FormalChain::from_terms(&terms);
    let boundary = combination.boundary(&table);
    let target = FormalChain::from_terms(&[("gamma_1", 1), ("gamma_2", 1)]);
    let mut residual = boundary.clone();
    residual.add_scaled(&target, -1);
    let boundaries_closed = table.values().all(|b| path_boundary(b).is_zero());
    ChainCheck { combination, boundary, target, residual, boundaries_closed }
}
