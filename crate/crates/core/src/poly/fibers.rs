//! Singular points of a plane curve `h = 0` and the fibers `x = α`
//! (direction 1) or `y = β` (direction 2) meeting it with contact of order 2.
//!
//! Everything is done in the affine chart. Multiplicity decisions are exact
//! whenever the fiber coordinate is rational; otherwise they fall back to
//! relative zero tests at [`CLUSTER_RADIUS`].

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bivar::BivarPoly;
use super::resultant::resultant_y;
use super::roots::{complex_roots, exact_rational_roots, rational_poly_roots};
use super::upoly::{q_to_f64, UniPoly};
use crate::error::{Error, Result};

/// Relative radius under which two numerical roots, or a value and zero,
/// are identified.
pub const CLUSTER_RADIUS: f64 = 1e-8;

/// A root of a rational polynomial: exact when rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub approx: Complex64,
    pub exact: Option<BigRational>,
}

impl Root {
    fn exact(r: BigRational) -> Self {
        Self { approx: Complex64::new(q_to_f64(&r), 0.0), exact: Some(r) }
    }

    fn approx(z: Complex64) -> Self {
        Self { approx: z, exact: None }
    }

    pub fn is_real(&self) -> bool {
        self.exact.is_some() || self.approx.im == 0.0
    }
}

/// Roots of a squarefree rational polynomial, rational ones exact.
pub fn roots_of_squarefree(p: &UniPoly) -> Vec<Root> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let rational = exact_rational_roots(p);
    let mut rest = p.clone();
    for r in &rational {
        rest = rest.div_exact(&UniPoly::new(vec![-r.clone(), BigRational::one()]));
    }
    let mut out: Vec<Root> = rational.into_iter().map(Root::exact).collect();
    out.extend(rational_poly_roots(&rest).into_iter().map(Root::approx));
    out
}

/// `(root, multiplicity)` for every root of `p`.
pub fn roots_with_multiplicity(p: &UniPoly) -> Vec<(Root, usize)> {
    p.squarefree_decomposition()
        .into_iter()
        .flat_map(|(f, m)| roots_of_squarefree(&f).into_iter().map(move |r| (r, m)))
        .collect()
}

/// The content of `h` as a polynomial in `y`: the gcd of its `ℚ[x]`
/// coefficients. Its roots are the vertical line components.
pub fn content_in_y(h: &BivarPoly) -> UniPoly {
    h.coeffs_in_y().iter().fold(UniPoly::zero(), |g, c| UniPoly::gcd(&g, c))
}

/// Rejects polynomials with a repeated factor.
pub fn ensure_squarefree(h: &BivarPoly) -> Result<()> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("curve equation"));
    }
    let content = content_in_y(h);
    if !content.is_squarefree() {
        return Err(Error::NotSquarefree(format!("repeated vertical factor in content {content}")));
    }
    if h.deg_y().unwrap_or(0) > 0 {
        let r = resultant_y(h, &h.partial_y())?;
        if r.is_zero() {
            return Err(Error::NotSquarefree("gcd(h, dh/dy) has positive degree".into()));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlanePoint {
    pub x: Complex64,
    pub y: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    pub point: PlanePoint,
    /// Exact coordinates when both are rational.
    pub exact: Option<(String, String)>,
    /// `h_xx·h_yy − h_xy²` at the point.
    pub hessian: Complex64,
    /// Ordinary double point: nonzero Hessian determinant.
    pub nodal: bool,
}

struct Partials {
    h: BivarPoly,
    hx: BivarPoly,
    hy: BivarPoly,
    hxx: BivarPoly,
    hxy: BivarPoly,
    hyy: BivarPoly,
}

impl Partials {
    fn new(h: &BivarPoly) -> Self {
        let hx = h.partial_x();
        let hy = h.partial_y();
        Self { h: h.clone(), hxx: hx.partial_x(), hxy: hx.partial_y(), hyy: hy.partial_y(), hx, hy }
    }

    fn hessian_c(&self, x: Complex64, y: Complex64) -> (Complex64, f64) {
        let (a, b, c) = (self.hxx.eval_c(x, y), self.hyy.eval_c(x, y), self.hxy.eval_c(x, y));
        let scale = self.hxx.magnitude_c(x, y) * self.hyy.magnitude_c(x, y) + self.hxy.magnitude_c(x, y).powi(2);
        (a * b - c * c, scale)
    }

    fn hessian_exact(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let (a, b, c) = (self.hxx.eval(x, y), self.hyy.eval(x, y), self.hxy.eval(x, y));
        a * b - &c * &c
    }
}

fn near_zero(v: Complex64, scale: f64) -> bool {
    v.norm() <= CLUSTER_RADIUS * scale.max(1.0)
}

/// Common zeros of `h`, `∂h/∂x`, `∂h/∂y` in the affine chart.
///
/// x-coordinates are roots of `Res_y(h, ∂h/∂y)`; over each, the
/// y-coordinates are common roots of the three restrictions.
pub fn singular_points(h: &BivarPoly) -> Result<Vec<SingularPoint>> {
    ensure_squarefree(h)?;
    let d = Partials::new(h);
    if h.deg_y().unwrap_or(0) == 0 {
        // Union of vertical lines, reduced: no singularities in the chart.
        return Ok(vec![]);
    }
    let r = resultant_y(h, &d.hy)?;
    let mut out = Vec::new();
    for (alpha, _) in roots_with_multiplicity(&r) {
        match &alpha.exact {
            Some(a) => {
                let g = [d.h.at_x(a), d.hx.at_x(a), d.hy.at_x(a)]
                    .iter()
                    .fold(UniPoly::zero(), |g, p| UniPoly::gcd(&g, p));
                for beta in roots_of_squarefree(&g.monic()) {
                    let (hess, nodal, exact) = match &beta.exact {
                        Some(b) => {
                            let hv = d.hessian_exact(a, b);
                            (Complex64::new(q_to_f64(&hv), 0.0), !hv.is_zero(), Some((a.to_string(), b.to_string())))
                        }
                        None => {
                            let (hv, s) = d.hessian_c(alpha.approx, beta.approx);
                            (hv, !near_zero(hv, s), None)
                        }
                    };
                    out.push(SingularPoint {
                        point: PlanePoint { x: alpha.approx, y: beta.approx },
                        exact,
                        hessian: hess,
                        nodal,
                    });
                }
            }
            None => {
                let x = alpha.approx;
                // Candidates: roots of ∂h/∂y(α, ·), else of h(α, ·).
                let hy = d.hy.at_x_c(x);
                let cands = if hy.iter().any(|c| c.norm() > 0.0) { complex_roots(&hy) } else { complex_roots(&d.h.at_x_c(x)) };
                let mut seen: Vec<Complex64> = Vec::new();
                for y in cands {
                    if seen.iter().any(|s| (s - y).norm() <= CLUSTER_RADIUS * y.norm().max(1.0)) {
                        continue;
                    }
                    let ok = [&d.h, &d.hx, &d.hy].iter().all(|p| near_zero(p.eval_c(x, y), p.magnitude_c(x, y)));
                    if ok {
                        seen.push(y);
                        let (hv, s) = d.hessian_c(x, y);
                        out.push(SingularPoint { point: PlanePoint { x, y }, exact: None, hessian: hv, nodal: !near_zero(hv, s) });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberKind {
    Tangent,
    NodePassing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// Fibers `x = α`, members of `|O(1,0)|`.
    One,
    /// Fibers `y = β`, members of `|O(0,1)|`.
    Two,
}

impl TryFrom<u8> for Direction {
    type Error = Error;
    fn try_from(d: u8) -> Result<Self> {
        match d {
            1 => Ok(Direction::One),
            2 => Ok(Direction::Two),
            _ => Err(Error::Domain(format!("direction must be 1 or 2, got {d}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberReport {
    pub direction: Direction,
    /// The fiber coordinate (`α` or `β`).
    pub value: Complex64,
    pub exact_value: Option<String>,
    /// Multiplicity of the fiber coordinate as a root of the resultant.
    pub resultant_multiplicity: usize,
    /// Intersection multiplicity of the fiber and `B` at the tangency point.
    pub contact: usize,
    pub kind: FiberKind,
    /// In `(x, y)` coordinates.
    pub tangency_point: PlanePoint,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "warning", rename_all = "snake_case")]
pub enum FiberWarning {
    /// The fiber is itself a component of `B`; its multiplicity is infinite.
    LineComponent { value: Complex64 },
    /// Contact of order > 2: excluded from the fiber list.
    HigherContact { value: Complex64, point: PlanePoint, contact: usize },
    /// The double contact sits at a singular point that is not a node.
    NonNodalSingularity { value: Complex64, point: PlanePoint },
    /// The resultant multiplicity does not match the simple/double root rule
    /// for the classified kind (e.g. two tangencies on one fiber).
    MultiplicityMismatch { value: Complex64, resultant_multiplicity: usize, kinds: Vec<FiberKind> },
    /// The resultant vanishes only because of contact at infinity.
    AtInfinity { value: Complex64 },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FiberScan {
    pub fibers: Vec<FiberReport>,
    pub warnings: Vec<FiberWarning>,
}

/// Fibers of `direction` meeting `h = 0` with contact exactly 2 at some
/// point, classified as tangent or node-passing.
///
/// Candidates are roots of `Res_y(h, ∂h/∂y)` (direction 1) or
/// `Res_x(h, ∂h/∂x)` (direction 2). Each candidate is confirmed on the
/// fiber itself: the contact order at a point is the multiplicity of the
/// point as a root of the restriction of `h`. Contact above 2 is rejected
/// with a warning, as are fibers that are components of the curve.
pub fn find_special_fibers(h: &BivarPoly, direction: Direction) -> Result<FiberScan> {
    ensure_squarefree(h)?;
    let work = match direction {
        Direction::One => h.clone(),
        Direction::Two => h.swap_xy(),
    };
    let dy = work.deg_y().unwrap_or(0);
    if dy == 0 {
        return Err(Error::ZeroPolynomial("curve has no points off its line components in this direction"));
    }
    let d = Partials::new(&work);
    let res = resultant_y(&work, &d.hy)?;
    let content = content_in_y(&work);
    let orient = |fiber: Complex64, other: Complex64| match direction {
        Direction::One => PlanePoint { x: fiber, y: other },
        Direction::Two => PlanePoint { x: other, y: fiber },
    };

    let mut scan = FiberScan::default();
    for (alpha, mult) in roots_with_multiplicity(&res) {
        let is_line = match &alpha.exact {
            Some(a) => content.degree().unwrap_or(0) > 0 && content.eval(a).is_zero(),
            None => content.degree().unwrap_or(0) > 0 && near_zero(content.eval_c(alpha.approx), 1.0),
        };
        if is_line {
            scan.warnings.push(FiberWarning::LineComponent { value: alpha.approx });
            continue;
        }

        // (β, contact order, singular?) for each multiple point on the fiber.
        let mut points: Vec<(Complex64, usize, bool)> = Vec::new();
        let lc_vanishes;
        match &alpha.exact {
            Some(a) => {
                let g = work.at_x(a);
                lc_vanishes = g.degree() != Some(dy as usize);
                let hx_a = d.hx.at_x(a);
                for (f, k) in g.squarefree_decomposition() {
                    if k < 2 {
                        continue;
                    }
                    let sing = UniPoly::gcd(&f, &hx_a);
                    for beta in roots_of_squarefree(&f) {
                        let singular = match &beta.exact {
                            Some(b) => sing.degree().unwrap_or(0) > 0 && sing.eval(b).is_zero(),
                            None => sing.degree().unwrap_or(0) > 0 && near_zero(sing.eval_c(beta.approx), 1.0),
                        };
                        points.push((beta.approx, k, singular));
                    }
                }
            }
            None => {
                let x = alpha.approx;
                let gc = work.at_x_c(x);
                lc_vanishes = gc.get(dy as usize).is_none_or(|c| near_zero(*c, 1.0));
                let hy = d.hy.at_x_c(x);
                let mut derivs = vec![work.clone()];
                for _ in 0..dy {
                    let next = derivs.last().unwrap().partial_y();
                    derivs.push(next);
                }
                for y in complex_roots(&hy) {
                    if points.iter().any(|(b, _, _)| (b - y).norm() <= CLUSTER_RADIUS * y.norm().max(1.0)) {
                        continue;
                    }
                    if !near_zero(work.eval_c(x, y), work.magnitude_c(x, y)) {
                        continue;
                    }
                    let contact = (1..derivs.len())
                        .find(|&k| !near_zero(derivs[k].eval_c(x, y), derivs[k].magnitude_c(x, y)))
                        .unwrap_or(derivs.len());
                    let singular = near_zero(d.hx.eval_c(x, y), d.hx.magnitude_c(x, y));
                    points.push((y, contact, singular));
                }
            }
        }

        if points.is_empty() {
            if lc_vanishes {
                scan.warnings.push(FiberWarning::AtInfinity { value: alpha.approx });
            }
            continue;
        }

        let mut kinds = Vec::new();
        for (beta, contact, singular) in points {
            let point = orient(alpha.approx, beta);
            if contact > 2 {
                scan.warnings.push(FiberWarning::HigherContact { value: alpha.approx, point, contact });
                continue;
            }
            let kind = if singular {
                let (hv, s) = d.hessian_c(alpha.approx, beta);
                if near_zero(hv, s) {
                    scan.warnings.push(FiberWarning::NonNodalSingularity { value: alpha.approx, point });
                    continue;
                }
                FiberKind::NodePassing
            } else {
                FiberKind::Tangent
            };
            kinds.push(kind);
            scan.fibers.push(FiberReport {
                direction,
                value: alpha.approx,
                exact_value: alpha.exact.as_ref().map(ToString::to_string),
                resultant_multiplicity: mult,
                contact,
                kind,
                tangency_point: point,
            });
        }
        let expected = match kinds.as_slice() {
            [FiberKind::Tangent] => Some(1),
            [FiberKind::NodePassing] => Some(2),
            [] => None,
            _ => Some(0),
        };
        if expected.is_some_and(|e| e != mult) {
            scan.warnings.push(FiberWarning::MultiplicityMismatch { value: alpha.approx, resultant_multiplicity: mult, kinds });
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::bivar::ParamBivarPoly;
    use crate::poly::upoly::q_frac;

    fn family(lambda: BigRational) -> BivarPoly {
        ParamBivarPoly::normalized_family().specialize(&lambda)
    }

    fn has_point(pts: &[SingularPoint], x: f64, y: f64) -> bool {
        pts.iter().any(|p| (p.point.x - Complex64::new(x, 0.0)).norm() < 1e-9 && (p.point.y - Complex64::new(y, 0.0)).norm() < 1e-9)
    }

    #[test]
    fn family_nodes() {
        let pts = singular_points(&family(q_frac(1, 2))).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, 0.0), (2.0, 2.0)] {
            assert!(has_point(&pts, x, y), "missing node ({x}, {y})");
        }
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().all(|p| p.nodal && p.exact.is_some()));
    }

    #[test]
    fn smooth_cubic_has_no_singular_points() {
        // y² − x³ − x − 1
        let h = BivarPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1), (1, 0, -1), (0, 0, -1)]);
        assert!(singular_points(&h).unwrap().is_empty());
    }

    #[test]
    fn crossing_lines_node() {
        let h = BivarPoly::product_of_linear(&[(0, -1, 1), (0, 1, 1)]);
        let pts = singular_points(&h).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].nodal && has_point(&pts, 0.0, 0.0));
    }

    #[test]
    fn cusp_is_not_nodal() {
        // y² − x³
        let h = BivarPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1)]);
        let pts = singular_points(&h).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(!pts[0].nodal);
    }

    #[test]
    fn repeated_factor_rejected() {
        let h = BivarPoly::product_of_linear(&[(0, -1, 1), (0, -1, 1)]);
        assert!(matches!(singular_points(&h), Err(Error::NotSquarefree(_))));
        let v = BivarPoly::product_of_linear(&[(1, -1, 0), (1, -1, 0), (0, 0, 1)]);
        assert!(matches!(find_special_fibers(&v, Direction::One), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn parabola_tangent_fiber() {
        let h = BivarPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
        let scan = find_special_fibers(&h, Direction::One).unwrap();
        assert!(scan.warnings.is_empty());
        assert_eq!(scan.fibers.len(), 1);
        let f = &scan.fibers[0];
        assert_eq!((f.kind, f.contact, f.resultant_multiplicity), (FiberKind::Tangent, 2, 1));
        assert_eq!(f.exact_value.as_deref(), Some("0"));
    }

    #[test]
    fn family_direction_one() {
        let scan = find_special_fibers(&family(q_frac(1, 2)), Direction::One).unwrap();
        assert_eq!(scan.fibers.len(), 1);
        let f = &scan.fibers[0];
        assert_eq!(f.kind, FiberKind::NodePassing);
        assert_eq!(f.resultant_multiplicity, 2);
        assert!(f.tangency_point.x.norm() < 1e-12 && f.tangency_point.y.norm() < 1e-12);
        let lines = scan.warnings.iter().filter(|w| matches!(w, FiberWarning::LineComponent { .. })).count();
        assert_eq!(lines, 2);
    }

    #[test]
    fn family_direction_two() {
        let scan = find_special_fibers(&family(q_frac(1, 2)), Direction::Two).unwrap();
        let at_one = scan.fibers.iter().find(|f| f.exact_value.as_deref() == Some("1")).unwrap();
        assert_eq!(at_one.kind, FiberKind::NodePassing);
        assert!((at_one.tangency_point.x - 1.0).norm() < 1e-12 && (at_one.tangency_point.y - 1.0).norm() < 1e-12);
        assert!(scan.warnings.iter().any(|w| matches!(w, FiberWarning::LineComponent { value } if value.norm() < 1e-12)));
    }

    #[test]
    fn irrational_tangent_fibers() {
        // x² + y² − 2: tangent fibers x = ±√2
        let h = BivarPoly::from_int_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -2)]);
        let scan = find_special_fibers(&h, Direction::One).unwrap();
        assert_eq!(scan.fibers.len(), 2);
        for f in &scan.fibers {
            assert_eq!(f.kind, FiberKind::Tangent);
            assert!(f.exact_value.is_none());
            assert!((f.value.re.abs() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn higher_contact_rejected() {
        // y³ − x: the fiber x = 0 meets with contact 3
        let h = BivarPoly::from_int_terms(&[(0, 3, 1), (1, 0, -1)]);
        let scan = find_special_fibers(&h, Direction::One).unwrap();
        assert!(scan.fibers.is_empty());
        assert!(matches!(scan.warnings[0], FiberWarning::HigherContact { contact: 3, .. }));
    }

    #[test]
    fn two_tangencies_on_one_fiber_warn() {
        // (y² − x)((y − 3)² − x): both parabolas tangent to x = 0
        let a = BivarPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
        let b = BivarPoly::from_int_terms(&[(0, 2, 1), (0, 1, -6), (0, 0, 9), (1, 0, -1)]);
        let scan = find_special_fibers(&a.mul(&b), Direction::One).unwrap();
        let zero: Vec<_> = scan.fibers.iter().filter(|f| f.exact_value.as_deref() == Some("0")).collect();
        assert_eq!(zero.len(), 2);
        assert!(scan.warnings.iter().any(|w| matches!(w, FiberWarning::MultiplicityMismatch { .. })));
    }
}
