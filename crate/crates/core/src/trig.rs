//! Hyperbolic trigonometry with complex-valued sides and angles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extmeasure::{complex_arccos, ext_sinh, ExtScalar};
use crate::projplane::{join, line_angle, segment_lengths, Category, ProjError, ProjPoint};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("argument must be finite")]
    InfiniteArgument,
    #[error("argument must be real")]
    NonRealArgument,
    #[error("no real Lambert quadrangle: sinh a · sinh d = {0} exceeds 1")]
    NoRealSolution(f64),
    #[error("no real right-angled pentagon: sinh a · sinh b = {0} is at most 1")]
    NoRealPentagon(f64),
    #[error("the angle at C is not a right angle (cos = {0})")]
    NotRightAngled(f64),
    #[error("vertex C must be a real point")]
    NonRealRightVertex,
    #[error(transparent)]
    Proj(#[from] ProjError),
}

fn c(x: ExtScalar) -> Result<Complex64, TrigError> {
    x.to_complex().ok_or(TrigError::InfiniteArgument)
}

fn real(x: ExtScalar) -> Result<f64, TrigError> {
    let z = c(x)?;
    if z.im != 0.0 {
        return Err(TrigError::NonRealArgument);
    }
    Ok(z.re)
}

/// Inverse hyperbolic cosine with the branch choices of the extended
/// lengths: imaginary parts in `[0, π]`, real inputs treated exactly.
pub fn ext_arccosh(z: Complex64) -> Complex64 {
    const CLAMP: f64 = 1e-12;
    if z.im == 0.0 {
        let x = z.re;
        if x >= 1.0 - CLAMP {
            return Complex64::new(x.max(1.0).acosh(), 0.0);
        }
        if x <= -1.0 {
            return Complex64::new((-x).acosh(), PI);
        }
        return Complex64::new(0.0, x.acos());
    }
    z.acosh()
}

/// Sides, angles, semiperimeter and half-defect of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleData {
    pub a: ExtScalar,
    pub b: ExtScalar,
    pub c: ExtScalar,
    pub alpha: ExtScalar,
    pub beta: ExtScalar,
    pub gamma: ExtScalar,
    pub s: ExtScalar,
    pub delta: ExtScalar,
}

impl TriangleData {
    /// Completes the data from the three sides with the law of cosines.
    pub fn from_sides(a: ExtScalar, b: ExtScalar, cc: ExtScalar) -> Result<Self, TrigError> {
        let (za, zb, zc) = (c(a)?, c(b)?, c(cc)?);
        let angle = |x: Complex64, y: Complex64, z: Complex64| {
            complex_arccos((y.cosh() * z.cosh() - x.cosh()) / (y.sinh() * z.sinh()))
        };
        Ok(Self::from_parts([za, zb, zc], [angle(za, zb, zc), angle(zb, zc, za), angle(zc, za, zb)]))
    }

    pub fn from_parts(sides: [Complex64; 3], angles: [Complex64; 3]) -> Self {
        let s = (sides[0] + sides[1] + sides[2]) / 2.0;
        let delta = (Complex64::from(PI) - angles[0] - angles[1] - angles[2]) / 2.0;
        TriangleData {
            a: sides[0].into(),
            b: sides[1].into(),
            c: sides[2].into(),
            alpha: angles[0].into(),
            beta: angles[1].into(),
            gamma: angles[2].into(),
            s: s.into(),
            delta: delta.into(),
        }
    }

    /// Complex values of `(a, b, c)` and `(α, β, γ)`.
    pub fn complex_parts(&self) -> ([Complex64; 3], [Complex64; 3]) {
        let f = |x: ExtScalar| x.to_complex_lossy();
        ([f(self.a), f(self.b), f(self.c)], [f(self.alpha), f(self.beta), f(self.gamma)])
    }
}

/// Third side from two sides and their included angle.
pub fn side_from_cosine_law(a: ExtScalar, b: ExtScalar, gamma: ExtScalar) -> Result<ExtScalar, TrigError> {
    let (a, b, g) = (c(a)?, c(b)?, c(gamma)?);
    let ch = a.cosh() * b.cosh() - a.sinh() * b.sinh() * g.cos();
    Ok(ext_arccosh(ch).into())
}

/// Third angle from two angles and the side between them.
pub fn angle_from_dual_cosine_law(alpha: ExtScalar, beta: ExtScalar, side: ExtScalar) -> Result<ExtScalar, TrigError> {
    let (al, be, s) = (c(alpha)?, c(beta)?, c(side)?);
    let cg = -al.cos() * be.cos() + al.sin() * be.sin() * s.cosh();
    Ok(complex_arccos(cg).into())
}

/// Largest deviation of `sinh a sin β − sinh b sin α` over the three pairs.
pub fn sine_law_residual(t: &TriangleData) -> f64 {
    let (s, g) = t.complex_parts();
    (0..3)
        .map(|i| {
            let j = (i + 1) % 3;
            (s[i].sinh() * g[j].sin() - s[j].sinh() * g[i].sin()).norm()
        })
        .fold(0.0, f64::max)
}

/// Area as the angle defect `π − (α + β + γ)`.
pub fn defect_area(t: &TriangleData) -> ExtScalar {
    let (_, g) = t.complex_parts();
    (Complex64::from(PI) - g[0] - g[1] - g[2]).into()
}

/// Area from the height `m_a` and the signed pieces `a1`, `a2` it cuts from
/// its base. Each right triangle contributes `2·atan(tanh(a_i/2) tanh(m_a/2))`.
pub fn area_via_height(a1: ExtScalar, a2: ExtScalar, m_a: ExtScalar) -> Result<ExtScalar, TrigError> {
    let (a1, a2, m) = (c(a1)?, c(a2)?, c(m_a)?);
    let h = (m / 2.0).tanh();
    let part = |x: Complex64| ((x / 2.0).tanh() * h).atan() * 2.0;
    Ok((part(a1) + part(a2)).into())
}

/// Heron-type area: `tan(T/4)² = Π tanh` of the half semiperimeter pieces.
pub fn heron_area(a: ExtScalar, b: ExtScalar, cc: ExtScalar) -> Result<ExtScalar, TrigError> {
    let (a, b, cc) = (c(a)?, c(b)?, c(cc)?);
    let s = (a + b + cc) / 2.0;
    let t = |x: Complex64| (x / 2.0).tanh();
    let prod = t(s) * t(s - a) * t(s - b) * t(s - cc);
    Ok((prod.sqrt().atan() * 4.0).into())
}

/// Quadrangle with three right angles; `phi` is the fourth angle.
///
/// `a` and `d` are the sides meeting at the right angle opposite `phi`;
/// `b` is opposite `a` and `c` is opposite `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambertData {
    pub a: ExtScalar,
    pub b: ExtScalar,
    pub c: ExtScalar,
    pub d: ExtScalar,
    pub phi: ExtScalar,
}

impl LambertData {
    /// Residuals of the ten scalar relations, written without divisions.
    pub fn residuals(&self) -> Option<[f64; 10]> {
        let (a, b, c, d, phi) = (
            self.a.to_complex()?,
            self.b.to_complex()?,
            self.c.to_complex()?,
            self.d.to_complex()?,
            self.phi.to_complex()?,
        );
        let r = [
            b.tanh() - d.tanh() * a.cosh(),
            c.tanh() - a.tanh() * d.cosh(),
            b.sinh() - d.sinh() * c.cosh(),
            c.sinh() - a.sinh() * b.cosh(),
            phi.cos() - b.tanh() * c.tanh(),
            phi.cos() - a.sinh() * d.sinh(),
            phi.sin() * b.cosh() - d.cosh(),
            phi.sin() * c.cosh() - a.cosh(),
            phi.sin() * a.tanh() * b.sinh() - phi.cos(),
            phi.sin() * d.tanh() * c.sinh() - phi.cos(),
        ];
        Some(r.map(|z| z.norm()))
    }
}

/// Solves the quadrangle from the sides `a`, `d` adjacent to the right
/// angle opposite `phi`. At `sinh a sinh d = 1` the sides `b`, `c` are
/// infinite and `phi = 0`.
pub fn lambert_solve(a: ExtScalar, d: ExtScalar) -> Result<LambertData, TrigError> {
    const BOUNDARY: f64 = 1e-12;
    let (ra, rd) = (real(a)?, real(d)?);
    let k = ra.sinh() * rd.sinh();
    if k > 1.0 + BOUNDARY {
        return Err(TrigError::NoRealSolution(k));
    }
    if (k - 1.0).abs() <= BOUNDARY {
        return Ok(LambertData { a, b: ExtScalar::PLUS_INF, c: ExtScalar::PLUS_INF, d, phi: ExtScalar::ZERO });
    }
    let b = (rd.tanh() * ra.cosh()).atanh();
    let c = (ra.tanh() * rd.cosh()).atanh();
    let phi = k.clamp(-1.0, 1.0).acos();
    Ok(LambertData { a, b: ExtScalar::real(b), c: ExtScalar::real(c), d, phi: ExtScalar::real(phi) })
}

/// Sides of a right-angled pentagon; `a, b` adjacent, `d` opposite their
/// common vertex, `c` next to `b` and `e` next to `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pentagon {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl Pentagon {
    /// Residuals of the three relations, each relative to its larger side.
    pub fn residuals(&self) -> [f64; 3] {
        let k = (self.a.sinh().powi(2) * self.b.sinh().powi(2) - 1.0).sqrt();
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1.0);
        [
            rel(self.d.cosh(), self.a.sinh() * self.b.sinh()),
            rel(self.c.sinh() * k, self.a.cosh()),
            rel(self.e.sinh() * k, self.b.cosh()),
        ]
    }
}

pub fn pentagon_solve(a: ExtScalar, b: ExtScalar) -> Result<Pentagon, TrigError> {
    let (a, b) = (real(a)?, real(b)?);
    let k = a.sinh() * b.sinh();
    if k <= 1.0 + 1e-12 {
        return Err(TrigError::NoRealPentagon(k));
    }
    let root = (k * k - 1.0).sqrt();
    Ok(Pentagon { a, b, c: (a.cosh() / root).asinh(), d: k.acosh(), e: (b.cosh() / root).asinh() })
}

/// Vertex configuration of a right triangle with a real right angle at `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SineCase {
    AllReal,
    InfiniteVertex,
    IdealVertex,
    InfiniteAndIdeal,
    Pentagon,
    HypotenuseAtInfinity,
    IdealHypotenuse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SineOutcome {
    /// `|sinh a − sinh c · sin α|`.
    Residual(f64),
    /// Both sides infinite with the same sign.
    InfiniteAgreement,
    /// The right-hand side is a product `∞ · 0`.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineReport {
    pub case: SineCase,
    pub outcome: SineOutcome,
    pub a: ExtScalar,
    pub c: ExtScalar,
    pub alpha: ExtScalar,
}

impl SineReport {
    pub fn passes(&self, tol: f64) -> bool {
        match self.outcome {
            SineOutcome::Residual(r) => r < tol,
            _ => true,
        }
    }
}

/// Checks `sinh a = sinh c · sin α` for a right angle at the real vertex `C`,
/// with `a = BC`, `c = AB` and `α` the angle at `A`, all in extended measure.
pub fn extended_sine_check(a: &ProjPoint, b: &ProjPoint, cv: &ProjPoint) -> Result<SineReport, TrigError> {
    if cv.category() != Category::Real {
        return Err(TrigError::NonRealRightVertex);
    }
    let ca = join(cv, a)?;
    let cb = join(cv, b)?;
    let cos_c = ca.rep().q(cb.rep());
    if cos_c.abs() > 1e-9 {
        return Err(TrigError::NotRightAngled(cos_c));
    }
    let ab = join(a, b)?;
    let case = classify_sine_case(a.category(), b.category(), ab.category());

    let side_a = segment_lengths(b, cv)?.forward;
    let side_c = segment_lengths(a, b)?.forward;
    let alpha = line_angle(&ab, &ca)?.forward;

    let lhs = ext_sinh(side_a);
    let sinh_c = ext_sinh(side_c);
    let outcome = match alpha.to_complex() {
        None => SineOutcome::Indeterminate,
        Some(al) => {
            let sin_al = al.sin();
            match (sinh_c.to_complex(), lhs.to_complex()) {
                (None, _) if sin_al.norm() < 1e-12 => SineOutcome::Indeterminate,
                (None, None) => {
                    let rhs_sign = sinh_c.re().signum() as f64 * sin_al.re.signum();
                    if sin_al.im.abs() < 1e-12 && rhs_sign == lhs.re().signum() as f64 {
                        SineOutcome::InfiniteAgreement
                    } else {
                        SineOutcome::Residual(f64::INFINITY)
                    }
                }
                (Some(sc), Some(l)) => SineOutcome::Residual((l - sc * sin_al).norm()),
                _ => SineOutcome::Residual(f64::INFINITY),
            }
        }
    };
    Ok(SineReport { case, outcome, a: side_a, c: side_c, alpha })
}

fn classify_sine_case(a: Category, b: Category, line: Category) -> SineCase {
    use Category::*;
    match line {
        AtInfinity => SineCase::HypotenuseAtInfinity,
        Ideal => SineCase::IdealHypotenuse,
        Real => {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            match (lo, hi) {
                (Real, Real) => SineCase::AllReal,
                (Real, AtInfinity) | (AtInfinity, AtInfinity) => SineCase::InfiniteVertex,
                (Real, Ideal) => SineCase::IdealVertex,
                (AtInfinity, Ideal) => SineCase::InfiniteAndIdeal,
                _ => SineCase::Pentagon,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> ExtScalar {
        ExtScalar::real(x)
    }

    #[test]
    fn cosine_law_anchors() {
        let c = side_from_cosine_law(r(1.0), r(1.0), r(PI / 2.0)).unwrap();
        assert!((c.to_complex().unwrap().re - 1f64.cosh().powi(2).acosh()).abs() < 1e-14);
        let c = side_from_cosine_law(r(1.0), r(1.0), r(PI)).unwrap();
        assert!(c.approx_eq(r(2.0), 1e-7));
        let c = side_from_cosine_law(r(0.0), r(0.8), r(1.1)).unwrap();
        assert!(c.approx_eq(r(0.8), 1e-12));
    }

    #[test]
    fn dual_cosine_law_degenerate_point() {
        let g = angle_from_dual_cosine_law(r(0.7), r(1.1), r(0.0)).unwrap();
        assert!(g.approx_eq(r(PI - 1.8), 1e-12));
    }

    #[test]
    fn equilateral_angle() {
        let t = TriangleData::from_sides(r(1.0), r(1.0), r(1.0)).unwrap();
        let expected = (1f64.cosh() / (1f64.cosh() + 1.0)).acos();
        assert!(t.alpha.approx_eq(r(expected), 1e-14));
        assert!(sine_law_residual(&t) < 1e-15);
    }

    #[test]
    fn areas_agree_on_equilateral() {
        let t = TriangleData::from_sides(r(1.0), r(1.0), r(1.0)).unwrap();
        let defect = defect_area(&t);
        let heron = heron_area(r(1.0), r(1.0), r(1.0)).unwrap();
        let alpha = t.alpha.to_complex().unwrap().re;
        let m = (1f64.sinh() * alpha.sin()).asinh();
        let h = area_via_height(r(0.5), r(0.5), r(m)).unwrap();
        assert!(defect.approx_eq(heron, 1e-12));
        assert!(defect.approx_eq(h, 1e-12));
        assert!(area_via_height(r(0.4), r(-0.4), r(0.9)).unwrap().approx_eq(r(0.0), 1e-15));
        assert!(area_via_height(r(0.4), r(0.3), r(0.0)).unwrap().approx_eq(r(0.0), 1e-15));
    }

    #[test]
    fn heron_degenerate() {
        assert!(heron_area(r(2.0), r(1.2), r(0.8)).unwrap().approx_eq(r(0.0), 1e-12));
    }

    #[test]
    fn lambert() {
        let l = lambert_solve(r(0.5), r(0.5)).unwrap();
        assert!(l.residuals().unwrap().iter().all(|&x| x < 1e-12));
        let l = lambert_solve(r(0.0), r(0.7)).unwrap();
        assert!(l.b.approx_eq(r(0.7), 1e-15) && l.c.approx_eq(r(0.0), 1e-15));
        assert!(l.phi.approx_eq(r(PI / 2.0), 1e-15));
        let a = 1f64.asinh();
        let l = lambert_solve(r(a), r(a)).unwrap();
        assert_eq!(l.phi, ExtScalar::ZERO);
        assert_eq!(l.b, ExtScalar::PLUS_INF);
        assert!(matches!(lambert_solve(r(1.0), r(1.0)), Err(TrigError::NoRealSolution(_))));
    }

    #[test]
    fn pentagon() {
        let p = pentagon_solve(r(1.0), r(1.0)).unwrap();
        assert!((p.d.cosh() - 1f64.sinh().powi(2)).abs() < 1e-14);
        assert!(p.residuals().iter().all(|&x| x < 1e-12));
        let q = pentagon_solve(r(1.3), r(0.9)).unwrap();
        let s = pentagon_solve(r(0.9), r(1.3)).unwrap();
        assert!((q.c - s.e).abs() < 1e-14 && (q.e - s.c).abs() < 1e-14);
        let edge = 1f64.asinh();
        assert!(matches!(pentagon_solve(r(edge), r(edge)), Err(TrigError::NoRealPentagon(_))));
    }
}
