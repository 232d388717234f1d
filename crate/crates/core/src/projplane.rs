//! Projective model of the extended hyperbolic plane.
//!
//! Points and lines are vectors of a three dimensional space carrying the
//! Minkowski form `Q(u, v) = u.x v.x + u.y v.y − u.z v.z`. A point is real
//! inside the absolute (`Q < 0`), at infinity on it and ideal outside.
//! Lines are stored by their poles, so a line is real when `Q > 0`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extmeasure::{ext_arccos, ExtScalar};

/// Default relative tolerance for the sign tests of `Q`.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjError {
    #[error("the zero vector does not represent a projective element")]
    ZeroVector,
    #[error("arguments coincide projectively")]
    CoincidentArguments,
    #[error("points coincide projectively")]
    CoincidentPoints,
    #[error("lines coincide projectively")]
    CoincidentLines,
    #[error("categories {0:?} and {1:?} cannot lie on a {2:?} line")]
    InconsistentCategories(Category, Category, Category),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MVec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MVec {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        MVec { x, y, z }
    }

    /// The origin of the hyperboloid model.
    pub const ORIGIN: MVec = MVec::new(0.0, 0.0, 1.0);

    pub fn q(self, o: MVec) -> f64 {
        self.x * o.x + self.y * o.y - self.z * o.z
    }

    pub fn q_self(self) -> f64 {
        self.q(self)
    }

    pub fn euclid_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// Vector `Q`-orthogonal to both arguments.
    pub fn cross(self, o: MVec) -> MVec {
        MVec::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, -(self.x * o.y - self.y * o.x))
    }

    pub fn det(a: MVec, b: MVec, c: MVec) -> f64 {
        a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        MVec::new(a[0], a[1], a[2])
    }

    /// Real point at distance `d` from the origin in direction `theta`.
    pub fn real_point(d: f64, theta: f64) -> Self {
        MVec::new(d.sinh() * theta.cos(), d.sinh() * theta.sin(), d.cosh())
    }

    /// Point of the absolute in direction `theta`.
    pub fn boundary_point(theta: f64) -> Self {
        MVec::new(theta.cos(), theta.sin(), 1.0)
    }

    /// Hyperboloid point of a Poincaré disk coordinate `(u, v)`, `u² + v² < 1`.
    pub fn from_disk(u: f64, v: f64) -> Self {
        let r2 = u * u + v * v;
        let k = 1.0 / (1.0 - r2);
        MVec::new(2.0 * u * k, 2.0 * v * k, (1.0 + r2) * k)
    }

    /// Poincaré disk image of a real point or a point at infinity.
    pub fn to_disk(self) -> (f64, f64) {
        let p = if self.z < 0.0 { -self } else { self };
        let n = (-p.q_self()).max(0.0).sqrt();
        (p.x / (p.z + n), p.y / (p.z + n))
    }
}

impl Add for MVec {
    type Output = MVec;
    fn add(self, o: MVec) -> MVec {
        MVec::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for MVec {
    type Output = MVec;
    fn sub(self, o: MVec) -> MVec {
        MVec::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        MVec::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for MVec {
    type Output = MVec;
    fn mul(self, k: f64) -> MVec {
        MVec::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Mul<MVec> for f64 {
    type Output = MVec;
    fn mul(self, v: MVec) -> MVec {
        v * self
    }
}

impl fmt::Display for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Real, at infinity, or ideal. The order is used to pick table cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    Real,
    AtInfinity,
    Ideal,
}

impl Category {
    pub fn dual(self) -> Category {
        match self {
            Category::Real => Category::Ideal,
            Category::AtInfinity => Category::AtInfinity,
            Category::Ideal => Category::Real,
        }
    }
}

fn sign_class(v: MVec, tol: f64) -> Result<i8, ProjError> {
    let n2 = v.x * v.x + v.y * v.y + v.z * v.z;
    if n2 == 0.0 || !n2.is_finite() {
        return Err(ProjError::ZeroVector);
    }
    let q = v.q_self();
    Ok(if q.abs() <= tol * n2 {
        0
    } else if q < 0.0 {
        -1
    } else {
        1
    })
}

/// Scales a timelike vector to `Q = −1` on the upper sheet.
fn unit_timelike(v: MVec) -> MVec {
    let s = 1.0 / (-v.q_self()).sqrt();
    if v.z < 0.0 {
        v * -s
    } else {
        v * s
    }
}

/// Scales a spacelike vector to `Q = 1`, keeping its sign.
fn unit_spacelike(v: MVec) -> MVec {
    v * (1.0 / v.q_self().sqrt())
}

fn unit_null(v: MVec) -> MVec {
    v * (1.0 / v.z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint {
    rep: MVec,
    category: Category,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjLine {
    rep: MVec,
    category: Category,
}

/// Classifies and normalizes a point.
///
/// Real points get `Q = −1, z > 0`; ideal points `Q = 1` with their sign
/// kept, because the sign selects segments; points at infinity `z = 1`.
pub fn classify_point(p: MVec, tol: f64) -> Result<ProjPoint, ProjError> {
    let (rep, category) = match sign_class(p, tol)? {
        -1 => (unit_timelike(p), Category::Real),
        0 => (unit_null(p), Category::AtInfinity),
        _ => (unit_spacelike(p), Category::Ideal),
    };
    Ok(ProjPoint { rep, category })
}

/// Classifies and normalizes a line given by its pole vector.
pub fn classify_line(l: MVec, tol: f64) -> Result<ProjLine, ProjError> {
    let (rep, category) = match sign_class(l, tol)? {
        1 => (unit_spacelike(l), Category::Real),
        0 => (unit_null(l), Category::AtInfinity),
        _ => (unit_timelike(l), Category::Ideal),
    };
    Ok(ProjLine { rep, category })
}

impl ProjPoint {
    pub fn new(p: MVec) -> Result<Self, ProjError> {
        classify_point(p, DEFAULT_TOL)
    }

    pub fn real_at(d: f64, theta: f64) -> Self {
        ProjPoint { rep: MVec::real_point(d, theta), category: Category::Real }
    }

    pub fn at_infinity(theta: f64) -> Self {
        ProjPoint { rep: MVec::boundary_point(theta), category: Category::AtInfinity }
    }

    pub fn rep(&self) -> MVec {
        self.rep
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn is_real(&self) -> bool {
        self.category == Category::Real
    }

    /// Same point with the opposite representative (matters only for ideal points).
    pub fn flipped(&self) -> Self {
        match self.category {
            Category::Ideal => ProjPoint { rep: -self.rep, category: self.category },
            _ => *self,
        }
    }

    /// Projective equality up to `tol` on the normalized cross product.
    pub fn same_as(&self, o: &ProjPoint, tol: f64) -> bool {
        let a = self.rep * (1.0 / self.rep.euclid_norm());
        let b = o.rep * (1.0 / o.rep.euclid_norm());
        a.cross(b).euclid_norm() <= tol
    }

    /// Hyperbolic distance between two real points.
    pub fn distance(&self, o: &ProjPoint) -> f64 {
        (-self.rep.q(o.rep)).max(1.0).acosh()
    }
}

impl ProjLine {
    pub fn new(l: MVec) -> Result<Self, ProjError> {
        classify_line(l, DEFAULT_TOL)
    }

    pub fn rep(&self) -> MVec {
        self.rep
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn flipped(&self) -> Self {
        ProjLine { rep: -self.rep, category: self.category }
    }

    /// `Q(rep, p)`; zero means incidence. For a real line and real point
    /// this is the hyperbolic sine of the signed distance.
    pub fn incidence(&self, p: &ProjPoint) -> f64 {
        self.rep.q(p.rep)
    }

    pub fn contains(&self, p: &ProjPoint, tol: f64) -> bool {
        self.incidence(p).abs() <= tol * self.rep.euclid_norm() * p.rep.euclid_norm()
    }

    /// Signed distance of a real point from a real line.
    pub fn signed_distance(&self, p: &ProjPoint) -> f64 {
        self.incidence(p).asinh()
    }
}

pub fn polar(p: &ProjPoint) -> ProjLine {
    ProjLine { rep: p.rep, category: p.category.dual() }
}

pub fn pole(l: &ProjLine) -> ProjPoint {
    ProjPoint { rep: l.rep, category: l.category.dual() }
}

fn nonparallel_cross(a: MVec, b: MVec) -> Option<MVec> {
    let na = a.euclid_norm();
    let nb = b.euclid_norm();
    let c = a.cross(b);
    if c.euclid_norm() <= 1e-12 * na * nb {
        None
    } else {
        Some(c)
    }
}

pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, ProjError> {
    let c = nonparallel_cross(p.rep, q.rep).ok_or(ProjError::CoincidentArguments)?;
    classify_line(c, DEFAULT_TOL)
}

pub fn meet(a: &ProjLine, b: &ProjLine) -> Result<ProjPoint, ProjError> {
    let c = nonparallel_cross(a.rep, b.rep).ok_or(ProjError::CoincidentArguments)?;
    classify_point(c, DEFAULT_TOL)
}

/// The two complementary measures between a pair of elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentPair {
    pub forward: ExtScalar,
    pub backward: ExtScalar,
}

impl SegmentPair {
    pub fn new(forward: ExtScalar, backward: ExtScalar) -> Self {
        SegmentPair { forward, backward }
    }

    fn finite(forward: ExtScalar) -> Self {
        SegmentPair { forward, backward: ExtScalar::PI_I - forward }
    }

    fn infinite(plus_forward: bool) -> Self {
        if plus_forward {
            SegmentPair { forward: ExtScalar::PLUS_INF, backward: ExtScalar::MINUS_INF }
        } else {
            SegmentPair { forward: ExtScalar::MINUS_INF, backward: ExtScalar::PLUS_INF }
        }
    }

    pub fn swapped(self) -> Self {
        SegmentPair { forward: self.backward, backward: self.forward }
    }

    /// `forward + backward`, the whole line when both are finite.
    pub fn total(&self) -> ExtScalar {
        self.forward + self.backward
    }
}

/// Cell of the line-at-infinity table for two points at infinity.
/// A tangent line meets the absolute once, so the geometry never reaches it.
pub fn tangent_line_boundary_pair() -> SegmentPair {
    SegmentPair::new(ExtScalar::ZERO, ExtScalar::PI_I)
}

/// Lengths of the two segments between `a` and `b`.
///
/// The forward segment is `{t·a + (1−t)·b : 0 ≤ t ≤ 1}` for the normalized
/// representatives, so flipping the sign of an ideal point swaps segments.
pub fn segment_lengths(a: &ProjPoint, b: &ProjPoint) -> Result<SegmentPair, ProjError> {
    let line = join(a, b).map_err(|_| ProjError::CoincidentPoints)?;
    if a.category > b.category {
        return Ok(segment_lengths_on(line.category, b, a)?.swapped());
    }
    segment_lengths_on(line.category, a, b)
}

fn segment_lengths_on(line: Category, a: &ProjPoint, b: &ProjPoint) -> Result<SegmentPair, ProjError> {
    use Category::*;
    let q = a.rep.q(b.rep);
    let half = ExtScalar::HALF_PI_I;
    let pair = match (line, a.category, b.category) {
        (Real, Real, Real) => SegmentPair::finite(ExtScalar::real((-q).max(1.0).acosh())),
        (Real, Real, AtInfinity) | (Real, AtInfinity, AtInfinity) => SegmentPair::infinite(true),
        (Real, Real, Ideal) => {
            let s = (-q).asinh();
            SegmentPair::new(ExtScalar::real(s) + half, ExtScalar::real(-s) + half)
        }
        (Real, AtInfinity, Ideal) => SegmentPair::infinite(q < 0.0),
        (Real, Ideal, Ideal) => {
            let d = q.abs().max(1.0).acosh();
            if q < 0.0 {
                SegmentPair::new(ExtScalar::from_parts(d, PI), ExtScalar::real(-d))
            } else {
                SegmentPair::new(ExtScalar::real(-d), ExtScalar::from_parts(d, PI))
            }
        }
        (AtInfinity, AtInfinity, Ideal) => SegmentPair::new(half, half),
        (AtInfinity, Ideal, Ideal) => {
            if q > 0.0 {
                SegmentPair::finite(ExtScalar::ZERO)
            } else {
                SegmentPair::finite(ExtScalar::PI_I)
            }
        }
        (AtInfinity, AtInfinity, AtInfinity) => tangent_line_boundary_pair(),
        (Ideal, Ideal, Ideal) => SegmentPair::finite(ExtScalar::from_parts(0.0, q.clamp(-1.0, 1.0).acos())),
        (l, x, y) => return Err(ProjError::InconsistentCategories(x, y, l)),
    };
    Ok(pair)
}

/// The two angle measures between lines `a` and `b`.
pub fn line_angle(a: &ProjLine, b: &ProjLine) -> Result<SegmentPair, ProjError> {
    let m = meet(a, b).map_err(|_| ProjError::CoincidentLines)?;
    if a.category < b.category {
        return Ok(line_angle_at(m.category, b, a)?.swapped());
    }
    line_angle_at(m.category, a, b)
}

fn line_angle_at(m: Category, a: &ProjLine, b: &ProjLine) -> Result<SegmentPair, ProjError> {
    use Category::*;
    let q = a.rep.q(b.rep);
    let pi = ExtScalar::real(PI);
    let angle = |forward: ExtScalar| SegmentPair::new(forward, pi - forward);
    let pair = match (a.category, b.category, m) {
        (Real, Real, Real) => angle(ExtScalar::real(q.clamp(-1.0, 1.0).acos())),
        (Real, Real, AtInfinity) => angle(ExtScalar::real(if q > 0.0 { 0.0 } else { PI })),
        (Real, Real, Ideal) => angle(ext_arccos(q)),
        (AtInfinity, Real, AtInfinity) => SegmentPair::new(ExtScalar::real(FRAC_PI_2), ExtScalar::real(FRAC_PI_2)),
        (AtInfinity, Real, Ideal) => SegmentPair::infinite(q < 0.0),
        (Ideal, Real, Ideal) => angle(ExtScalar::from_parts(FRAC_PI_2, q.asinh())),
        (AtInfinity, AtInfinity, Ideal) | (Ideal, AtInfinity, Ideal) => SegmentPair::infinite(true),
        (Ideal, Ideal, Ideal) => angle(ExtScalar::from_parts(0.0, -(-q).max(1.0).acosh())),
        (x, y, point) => return Err(ProjError::InconsistentCategories(x, y, point)),
    };
    Ok(pair)
}

/// Outcome of comparing a distance with the angle of the polars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualityReport {
    /// Both measures finite: `|AB − i·∠(a, b)|` minimised over the
    /// domain choices, and the same comparison after applying `cosh`.
    Finite { residual: f64, cosh_residual: f64 },
    /// Infinite measures; `consistent` tells whether both sides are infinite.
    Infinite { consistent: bool },
}

/// Compares `segment_lengths(A, B)` with `i · line_angle(polar A, polar B)`.
pub fn duality_check(a: &ProjPoint, b: &ProjPoint) -> Result<DualityReport, ProjError> {
    let seg = segment_lengths(a, b)?;
    let ang = line_angle(&polar(a), &polar(b)).map_err(|_| ProjError::CoincidentPoints)?;
    let i = num_complex::Complex64::i();
    let segs = [seg.forward, seg.backward];
    let angs = [ang.forward, ang.backward];
    if segs.iter().chain(angs.iter()).any(|s| !s.is_finite()) {
        let consistent = segs.iter().any(|s| !s.is_finite()) && angs.iter().any(|s| !s.is_finite());
        return Ok(DualityReport::Infinite { consistent });
    }
    let s = seg.forward.to_complex().unwrap_or_default();
    let mut residual = f64::INFINITY;
    let mut cosh_residual = f64::INFINITY;
    for g in angs {
        let t = i * g.to_complex().unwrap_or_default();
        residual = residual.min((s - t).norm());
        cosh_residual = cosh_residual.min((s.cosh() - t.cosh()).norm());
    }
    Ok(DualityReport::Finite { residual, cosh_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ExtScalar, b: ExtScalar) -> bool {
        a.approx_eq(b, 1e-12)
    }

    #[test]
    fn classification() {
        assert_eq!(classify_point(MVec::new(0.0, 0.0, 1.0), DEFAULT_TOL).unwrap().category(), Category::Real);
        assert_eq!(classify_point(MVec::new(1.0, 0.0, 1.0), DEFAULT_TOL).unwrap().category(), Category::AtInfinity);
        assert_eq!(classify_point(MVec::new(1.0, 0.0, 0.0), DEFAULT_TOL).unwrap().category(), Category::Ideal);
        assert_eq!(classify_point(MVec::default(), DEFAULT_TOL), Err(ProjError::ZeroVector));
        let p = classify_point(MVec::new(0.0, 0.0, -3.0), DEFAULT_TOL).unwrap();
        assert_eq!(p.rep(), MVec::ORIGIN);
    }

    #[test]
    fn polarity() {
        let ideal = ProjPoint::new(MVec::new(1.0, 0.0, 0.0)).unwrap();
        let l = polar(&ideal);
        assert_eq!(l.category(), Category::Real);
        assert!(l.contains(&ProjPoint::real_at(0.7, std::f64::consts::FRAC_PI_2), 1e-12));
        assert_eq!(polar(&ProjPoint::real_at(0.0, 0.0)).category(), Category::Ideal);
        assert_eq!(pole(&l), ideal);
    }

    #[test]
    fn join_and_meet() {
        let a = ProjPoint::real_at(0.0, 0.0);
        let b = ProjPoint::real_at(1.0, 0.0);
        let l = join(&a, &b).unwrap();
        assert!(l.rep().x.abs() < 1e-15 && l.rep().z.abs() < 1e-15);
        assert_eq!(join(&a, &a), Err(ProjError::CoincidentArguments));
        let c = ProjPoint::real_at(0.4, 1.0);
        let m = meet(&join(&c, &a).unwrap(), &join(&c, &b).unwrap()).unwrap();
        assert!(m.same_as(&c, 1e-12));
    }

    #[test]
    fn real_pair_lengths() {
        let p = segment_lengths(&ProjPoint::real_at(0.0, 0.0), &ProjPoint::real_at(1.0, 0.0)).unwrap();
        assert!(close(p.forward, ExtScalar::real(1.0)));
        assert!(close(p.backward, ExtScalar::from_parts(-1.0, PI)));
    }

    #[test]
    fn real_ideal_lengths_follow_polar_crossing() {
        let a = ProjPoint::real_at(0.0, 0.0);
        // polar of b is the line x = sinh(0.5)·… at distance 0.5 from the origin
        let b = ProjPoint::new(MVec::new(0.5f64.cosh(), 0.0, 0.5f64.sinh())).unwrap();
        let p = segment_lengths(&a, &b).unwrap();
        let d = 0.5;
        assert!(close(p.forward, ExtScalar::from_parts(d, FRAC_PI_2)));
        assert!(close(p.backward, ExtScalar::from_parts(-d, FRAC_PI_2)));
        let f = segment_lengths(&a, &b.flipped()).unwrap();
        assert!(close(f.forward, ExtScalar::from_parts(-d, FRAC_PI_2)));
    }

    #[test]
    fn boundary_pairs() {
        let a = ProjPoint::real_at(0.3, 0.2);
        let b = ProjPoint::at_infinity(1.0);
        let p = segment_lengths(&a, &b).unwrap();
        assert_eq!(p, SegmentPair::new(ExtScalar::PLUS_INF, ExtScalar::MINUS_INF));
        assert_eq!(tangent_line_boundary_pair(), SegmentPair::new(ExtScalar::ZERO, ExtScalar::PI_I));
    }

    #[test]
    fn line_angles() {
        let o = ProjPoint::real_at(0.0, 0.0);
        let l = join(&o, &ProjPoint::real_at(1.0, 0.0)).unwrap();
        let m = join(&o, &ProjPoint::real_at(1.0, 0.6)).unwrap();
        let a = line_angle(&l, &m).unwrap();
        assert!(close(a.forward, ExtScalar::real(0.6)) || close(a.backward, ExtScalar::real(0.6)));
        let n = join(&ProjPoint::at_infinity(0.0), &ProjPoint::real_at(1.0, 2.0)).unwrap();
        let a = line_angle(&l, &n).unwrap();
        assert!(a.forward.approx_eq(ExtScalar::ZERO, 1e-9) || a.forward.approx_eq(ExtScalar::real(PI), 1e-9));
    }

    #[test]
    fn ultraparallel_angle_is_perpendicular_length() {
        // lines x = ±sinh(p/2) at the origin's perpendicular
        let p = 0.9f64;
        let l = ProjLine::new(MVec::new((p / 2.0).cosh(), 0.0, (p / 2.0).sinh())).unwrap();
        let m = ProjLine::new(MVec::new((p / 2.0).cosh(), 0.0, -(p / 2.0).sinh())).unwrap();
        let a = line_angle(&l, &m).unwrap();
        let z = a.forward.to_complex().unwrap();
        assert!((z.cos().re - p.cosh()).abs() < 1e-12);
        assert!((z.re).abs() < 1e-12 || (z.re - PI).abs() < 1e-12);
    }

    #[test]
    fn duality_for_real_points() {
        let a = ProjPoint::real_at(0.3, 0.1);
        let b = ProjPoint::real_at(1.2, 2.0);
        match duality_check(&a, &b).unwrap() {
            DualityReport::Finite { residual, .. } => assert!(residual < 1e-10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disk_round_trip() {
        let p = MVec::real_point(1.3, 0.4);
        let (u, v) = p.to_disk();
        let q = MVec::from_disk(u, v);
        assert!((p - q).euclid_norm() < 1e-12);
    }
}
