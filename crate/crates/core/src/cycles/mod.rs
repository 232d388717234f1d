//! Circles, paracycles and hypercycles as one object.
//!
//! A cycle is the locus `{x real : Q(x, axis) = level}` with `x` scaled to
//! `Q(x, x) = −1`. The pair `(axis, level)` is treated as a vector of a
//! four dimensional space with the form `B((u, λ), (v, μ)) = Q(u, v) + λμ`.
//! In these coordinates two unit cycles touch exactly when `B = ±1`, a real
//! point `x` is the null vector `(x, −1)`, and reflection in a unit cycle is
//! the inversion of the hyperbolic plane in that cycle.
//!
//! The sign of the pair is an orientation: the inside of a cycle is
//! `{x : Q(x, axis) > level}`. Cycles built from a center and radius have
//! the disk as inside.

mod apollonius;
mod inversion;
mod similitude;

pub use apollonius::{tangent_cycles, Touch};
pub use inversion::{inversion_swapping, invert_cycle, invert_point, Inversion};
pub use similitude::{
    closed_form_circle_centers, predicted_external_category, secant_ratio_check, similitude_axes, similitude_centers,
    tangent_intersection_centers, SecantRatio, SimilitudeAxes, SimilitudeCase, SimilitudePair,
};

use nalgebra::Vector4;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extmeasure::{ext_tanh, ExtScalar};
use crate::projplane::{classify_point, segment_lengths, Category, MVec, ProjError, ProjLine, ProjPoint, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CycleError {
    #[error("the cycle has no real points")]
    EmptyCycle,
    #[error("a cycle with its center at infinity needs a point to fix it")]
    ParacycleNeedsPoint,
    #[error("the chord does not meet the cycle in real points")]
    NoIntersection,
    #[error("the chord does not pass through the point")]
    NotOnChord,
    #[error("the cycles are concentric")]
    ConcentricCycles,
    #[error("the cycles coincide")]
    IdenticalCycles,
    #[error("the cycles have no external center of similitude")]
    NoExternalCenter,
    #[error("the point is the center of the inversion")]
    CenterInput,
    #[error("only real points and points at infinity can be inverted")]
    UnsupportedPoint,
    #[error("the image lies beyond the boundary of the plane")]
    BeyondBoundary,
    #[error("no cycle satisfies the tangency conditions")]
    NoSolution,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(&'static str),
    #[error(transparent)]
    Proj(#[from] ProjError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleKind {
    Circle,
    Paracycle,
    Hypercycle,
    PointCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TangencyKind {
    /// The insides are disjoint.
    External,
    /// One inside contains the other.
    Internal,
    None,
}

/// Residual below which [`tangency`] reports a kind.
pub const TANGENCY_TOL: f64 = 1e-6;

pub(crate) type V4 = Vector4<f64>;

pub(crate) fn bform(a: &V4, b: &V4) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2] + a[3] * b[3]
}

pub(crate) fn gmul(a: &V4) -> V4 {
    V4::new(a[0], a[1], -a[2], a[3])
}

/// Null vector of a real point or a point at infinity.
pub(crate) fn point_vector(p: &ProjPoint) -> Option<V4> {
    let r = p.rep();
    match p.category() {
        Category::Real => Some(V4::new(r.x, r.y, r.z, -1.0)),
        Category::AtInfinity => Some(V4::new(r.x, r.y, r.z, 0.0)),
        Category::Ideal => None,
    }
}

/// Point represented by a null vector, or `None` off the hyperboloid.
pub(crate) fn vector_point(v: &V4) -> Option<ProjPoint> {
    let u = MVec::new(v[0], v[1], v[2]);
    if v[3].abs() <= 1e-12 * u.euclid_norm() {
        return classify_point(u, 1e-6).ok();
    }
    let x = u * (-1.0 / v[3]);
    if x.z <= 0.0 {
        return None;
    }
    classify_point(x, DEFAULT_TOL).ok().filter(|p| p.is_real())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cycle {
    axis: MVec,
    level: f64,
}

impl Cycle {
    /// Oriented cycle `{x : Q(x, axis) = level}`; fails when it has no real points.
    pub fn new(axis: MVec, level: f64) -> Result<Self, CycleError> {
        if axis.is_zero() || !level.is_finite() {
            return Err(ProjError::ZeroVector.into());
        }
        let c = Cycle { axis, level };
        c.classify()?;
        Ok(c)
    }

    pub(crate) fn from_vector(v: &V4) -> Result<Self, CycleError> {
        Cycle::new(MVec::new(v[0], v[1], v[2]), v[3])
    }

    /// The geodesic with pole `l`, oriented so that its inside is `Q(x, l) > 0`.
    pub fn line(l: &ProjLine) -> Result<Self, CycleError> {
        if l.category() != Category::Real {
            return Err(CycleError::EmptyCycle);
        }
        Ok(Cycle { axis: l.rep(), level: 0.0 })
    }

    /// The degenerate cycle consisting of one real point.
    pub fn point(p: &ProjPoint) -> Result<Self, CycleError> {
        if !p.is_real() {
            return Err(CycleError::EmptyCycle);
        }
        Ok(Cycle { axis: p.rep(), level: -1.0 })
    }

    pub fn axis(&self) -> MVec {
        self.axis
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn vector(&self) -> V4 {
        V4::new(self.axis.x, self.axis.y, self.axis.z, self.level)
    }

    /// `B` of the cycle with itself; zero for point cycles.
    pub fn norm_sq(&self) -> f64 {
        let v = self.vector();
        bform(&v, &v)
    }

    /// Representative with `B = 1`; point cycles keep `level = −1`.
    pub fn unit_vector(&self) -> V4 {
        let n = self.norm_sq();
        if self.kind() == CycleKind::PointCycle || n <= 0.0 {
            self.vector()
        } else {
            self.vector() / n.sqrt()
        }
    }

    /// Same point set, opposite orientation.
    pub fn reversed(&self) -> Self {
        Cycle { axis: -self.axis, level: -self.level }
    }

    /// Orientation whose inside is the Euclidean inside of the disk image.
    /// Geodesics through the origin keep their orientation.
    pub fn canonical(&self) -> Self {
        if self.disk_a() > 0.0 {
            self.reversed()
        } else {
            *self
        }
    }

    fn disk_a(&self) -> f64 {
        self.level - self.axis.z
    }

    /// Axis scaled as a unit timelike, null or spacelike vector, and the
    /// level scaled along.
    fn normalized(&self) -> (MVec, f64, i8) {
        let q = self.axis.q_self();
        let n2 = self.axis.euclid_norm().powi(2);
        if q.abs() <= 1e-9 * n2 {
            let k = 1.0 / self.axis.z;
            (self.axis * k, self.level * k, 0)
        } else if q < 0.0 {
            let k = (-q).sqrt().recip() * self.axis.z.signum();
            (self.axis * k, self.level * k, -1)
        } else {
            let k = q.sqrt().recip();
            (self.axis * k, self.level * k, 1)
        }
    }

    fn classify(&self) -> Result<CycleKind, CycleError> {
        let (_, lvl, sign) = self.normalized();
        match sign {
            -1 if (lvl + 1.0).abs() <= 1e-9 => Ok(CycleKind::PointCycle),
            -1 if lvl < -1.0 => Ok(CycleKind::Circle),
            -1 => Err(CycleError::EmptyCycle),
            0 if lvl < 0.0 => Ok(CycleKind::Paracycle),
            0 => Err(CycleError::EmptyCycle),
            _ => Ok(CycleKind::Hypercycle),
        }
    }

    pub fn kind(&self) -> CycleKind {
        self.classify().unwrap_or(CycleKind::PointCycle)
    }

    /// A geodesic: hypercycle at distance zero from its axis.
    pub fn is_line(&self) -> bool {
        self.kind() == CycleKind::Hypercycle && self.normalized().1.abs() <= 1e-12
    }

    pub fn center(&self) -> ProjPoint {
        let (u, lvl, _) = self.normalized();
        let rep = match self.kind() {
            CycleKind::Hypercycle if lvl < 0.0 => -u,
            _ => u,
        };
        classify_point(rep, 1e-6).unwrap_or_else(|_| ProjPoint::real_at(0.0, 0.0))
    }

    /// Extended radius: real for circles, `+∞` for paracycles and
    /// `d + (π/2)i` for hypercycles at distance `d` from their axis.
    pub fn radius(&self) -> ExtScalar {
        let (_, lvl, _) = self.normalized();
        match self.kind() {
            CycleKind::Circle => ExtScalar::real((-lvl).max(1.0).acosh()),
            CycleKind::PointCycle => ExtScalar::ZERO,
            CycleKind::Paracycle => ExtScalar::PLUS_INF,
            CycleKind::Hypercycle => ExtScalar::from_parts(lvl.abs().asinh(), std::f64::consts::FRAC_PI_2),
        }
    }

    /// `Q(x, axis) − level` for a real point `x`; positive inside.
    pub fn side(&self, p: &ProjPoint) -> f64 {
        self.axis.q(p.rep()) - self.level
    }

    pub fn contains(&self, p: &ProjPoint, tol: f64) -> bool {
        let scale = self.axis.euclid_norm().max(self.level.abs()) * p.rep().euclid_norm();
        self.side(p).abs() <= tol * scale
    }

    /// Euclidean center and radius of the image in the Poincaré disk;
    /// `None` for geodesics through the origin.
    pub fn disk_circle(&self) -> Option<((f64, f64), f64)> {
        let a = self.disk_a();
        let n = self.norm_sq().max(0.0).sqrt();
        if a.abs() <= 1e-12 * (n + self.level.abs()) {
            return None;
        }
        Some(((-self.axis.x / a, -self.axis.y / a), n / a.abs()))
    }

    /// Euclidean radius of the disk image, infinite for straight images.
    pub fn disk_radius(&self) -> f64 {
        self.disk_circle().map_or(f64::INFINITY, |(_, r)| r)
    }

    /// `n` real points of the cycle, spread over the part inside the disk.
    pub fn sample_points(&self, n: usize) -> Vec<ProjPoint> {
        let mut out = Vec::with_capacity(n);
        if self.kind() == CycleKind::PointCycle {
            out.push(self.center());
            return out;
        }
        match self.disk_circle() {
            Some(((cx, cy), r)) => {
                let steps = 16 * n.max(1);
                let inside: Vec<f64> = (0..steps)
                    .map(|k| std::f64::consts::TAU * k as f64 / steps as f64)
                    .filter(|t| (cx + r * t.cos()).hypot(cy + r * t.sin()) < 1.0 - 1e-9)
                    .collect();
                if inside.is_empty() {
                    return out;
                }
                for k in 0..n {
                    let t = inside[(k * inside.len()) / n];
                    let (u, v) = (cx + r * t.cos(), cy + r * t.sin());
                    if let Ok(p) = classify_point(MVec::from_disk(u, v), DEFAULT_TOL) {
                        out.push(p);
                    }
                }
            }
            None => {
                let dir = (-self.axis.y, self.axis.x);
                let len = dir.0.hypot(dir.1);
                for k in 0..n {
                    let s = -0.98 + 1.96 * (k as f64 + 0.5) / n as f64;
                    let (u, v) = (s * dir.0 / len, s * dir.1 / len);
                    if let Ok(p) = classify_point(MVec::from_disk(u, v), DEFAULT_TOL) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

/// Cycle of points at extended distance `r` from `center`.
pub fn cycle_from_center_radius(center: &ProjPoint, r: ExtScalar) -> Result<Cycle, CycleError> {
    let z = r.to_complex().ok_or(CycleError::ParacycleNeedsPoint)?;
    match center.category() {
        Category::Real => {
            let ch = z.cosh();
            if ch.im.abs() > 1e-12 || ch.re < 1.0 - 1e-12 {
                return Err(CycleError::EmptyCycle);
            }
            if (ch.re - 1.0).abs() <= 1e-15 {
                return Cycle::point(center);
            }
            Ok(Cycle { axis: center.rep(), level: -ch.re }.canonical())
        }
        Category::Ideal => {
            if (z.im - std::f64::consts::FRAC_PI_2).abs() > 1e-12 {
                return Err(CycleError::EmptyCycle);
            }
            Ok(Cycle { axis: center.rep(), level: z.re.sinh() }.canonical())
        }
        Category::AtInfinity => Err(CycleError::ParacycleNeedsPoint),
    }
}

/// Paracycle with center `center` at infinity through the real point `p`.
pub fn paracycle_through(center: &ProjPoint, p: &ProjPoint) -> Result<Cycle, CycleError> {
    if center.category() != Category::AtInfinity || !p.is_real() {
        return Err(CycleError::EmptyCycle);
    }
    Ok(Cycle { axis: center.rep(), level: center.rep().q(p.rep()) }.canonical())
}

/// Inversive product `B(c1, c2)` of the unit representatives.
pub fn inversive_product(c1: &Cycle, c2: &Cycle) -> f64 {
    bform(&c1.unit_vector(), &c2.unit_vector())
}

/// Tangency test on oriented cycles.
///
/// The residual is `|B(c1, c2) ± 1|` on unit representatives, minimised
/// over the sign; `−1` means disjoint insides and `+1` nested ones. With a
/// point cycle the residual is `|B|`, zero when the point lies on the other
/// cycle.
pub fn tangency(c1: &Cycle, c2: &Cycle) -> (f64, TangencyKind) {
    let i = inversive_product(c1, c2);
    if c1.kind() == CycleKind::PointCycle || c2.kind() == CycleKind::PointCycle {
        let r = i.abs();
        return (r, if r <= TANGENCY_TOL { TangencyKind::External } else { TangencyKind::None });
    }
    let (ext, int) = ((i + 1.0).abs(), (i - 1.0).abs());
    let (r, kind) = if ext <= int { (ext, TangencyKind::External) } else { (int, TangencyKind::Internal) };
    (r, if r <= TANGENCY_TOL { kind } else { TangencyKind::None })
}

/// Point where two tangent cycles touch, when it is real.
pub fn contact_point(c1: &Cycle, c2: &Cycle) -> Option<ProjPoint> {
    let i = inversive_product(c1, c2);
    let s = if i < 0.0 { -1.0 } else { 1.0 };
    let v = c1.unit_vector() - c2.unit_vector() * s;
    vector_point(&v)
}

/// Real points where a real line meets a cycle, with their signed
/// arclength parameter along the line.
pub fn line_cycle_intersections(chord: &ProjLine, c: &Cycle) -> Result<Vec<(f64, ProjPoint)>, CycleError> {
    let (t, s) = line_frame(chord)?;
    let (a, b) = (t.q(c.axis), s.q(c.axis));
    // a cosh θ + b sinh θ = level, with w = e^θ
    let (qa, qb, qc) = (a + b, -2.0 * c.level, a - b);
    let mut ws = Vec::new();
    if qa.abs() <= 1e-14 * (a.abs() + b.abs()) {
        if qb != 0.0 {
            ws.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        let scale = qb * qb + (4.0 * qa * qc).abs();
        if disc < -1e-12 * scale {
            return Err(CycleError::NoIntersection);
        }
        let root = disc.max(0.0).sqrt();
        let q = -0.5 * (qb + qb.signum() * root);
        if q != 0.0 {
            ws.push(q / qa);
            ws.push(qc / q);
        } else {
            ws.push(0.0);
        }
    }
    let mut out: Vec<(f64, ProjPoint)> = ws
        .into_iter()
        .filter(|w| *w > 0.0 && w.is_finite())
        .map(|w| {
            let th = w.ln();
            let p = t * th.cosh() + s * th.sinh();
            (th, classify_point(p, DEFAULT_TOL).unwrap_or_else(|_| ProjPoint::real_at(0.0, 0.0)))
        })
        .collect();
    if out.is_empty() {
        return Err(CycleError::NoIntersection);
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(out)
}

/// Unit timelike `t` and unit spacelike `s` spanning a real line, with
/// `t` the foot of the perpendicular from the origin.
pub(crate) fn line_frame(chord: &ProjLine) -> Result<(MVec, MVec), CycleError> {
    if chord.category() != Category::Real {
        return Err(CycleError::NoIntersection);
    }
    let l = chord.rep();
    let o = MVec::ORIGIN;
    let t = o - l * (o.q(l) / l.q_self());
    let t = t * (1.0 / (-t.q_self()).sqrt());
    let s = l.cross(t);
    let s = s * (1.0 / s.q_self().sqrt());
    Ok((t, s))
}

/// Signed arclength parameter of a real point on a real line.
pub(crate) fn line_parameter(chord: &ProjLine, p: &ProjPoint) -> Result<f64, CycleError> {
    let (_, s) = line_frame(chord)?;
    Ok(p.rep().q(s).asinh())
}

/// `tanh(PX/2)` with the extended length `PX` along `chord`.
pub(crate) fn half_tanh_along(
    p: &ProjPoint,
    x: &ProjPoint,
    theta_x: f64,
    chord: &ProjLine,
) -> Result<ExtScalar, CycleError> {
    let len = match p.category() {
        Category::Real => ExtScalar::real(theta_x - line_parameter(chord, p)?),
        _ => segment_lengths(p, x)?.forward,
    };
    let half = match len.to_complex() {
        Some(z) => ExtScalar::finite(z / 2.0),
        None => len,
    };
    Ok(ext_tanh(half))
}

/// Power of `p` with respect to `c` measured along `chord`:
/// `tanh(PA/2) · tanh(PB/2)` for the two points where the chord meets the cycle.
pub fn power(p: &ProjPoint, c: &Cycle, chord: &ProjLine) -> Result<ExtScalar, CycleError> {
    if !chord.contains(p, 1e-9) {
        return Err(CycleError::NotOnChord);
    }
    let hits = line_cycle_intersections(chord, c)?;
    let (ta, pa) = hits[0];
    let (tb, pb) = *hits.last().unwrap_or(&hits[0]);
    let fa = half_tanh_along(p, &pa, ta, chord)?;
    let fb = half_tanh_along(p, &pb, tb, chord)?;
    let prod = fa.to_complex_lossy() * fb.to_complex_lossy();
    Ok(ExtScalar::finite(prod))
}

/// Closed-form power of a real point: `(Q(x, axis) − level)/(Q(x, axis) + level)`.
pub fn power_of_real_point(p: &ProjPoint, c: &Cycle) -> Option<f64> {
    if !p.is_real() {
        return None;
    }
    let a = c.axis.q(p.rep());
    Some((a - c.level) / (a + c.level))
}

/// Locus of equal power: the line with pole `level₂·axis₁ − level₁·axis₂`.
pub fn power_axis(c1: &Cycle, c2: &Cycle) -> Result<ProjLine, CycleError> {
    let (u1, u2) = (c1.axis, c2.axis);
    let unit = |v: MVec| v * (1.0 / v.euclid_norm());
    if unit(u1).cross(unit(u2)).euclid_norm() <= 1e-12 {
        let same = (c1.unit_vector() - c2.unit_vector()).norm() <= 1e-12
            || (c1.unit_vector() + c2.unit_vector()).norm() <= 1e-12;
        return Err(if same { CycleError::IdenticalCycles } else { CycleError::ConcentricCycles });
    }
    let rep = u1 * c2.level - u2 * c1.level;
    Ok(ProjLine::new(rep)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(d: f64, th: f64, r: f64) -> Cycle {
        cycle_from_center_radius(&ProjPoint::real_at(d, th), ExtScalar::real(r)).unwrap()
    }

    #[test]
    fn kinds_and_radii() {
        let c = circle(0.4, 1.0, 0.5);
        assert_eq!(c.kind(), CycleKind::Circle);
        assert!(c.radius().approx_eq(ExtScalar::real(0.5), 1e-12));
        assert!(c.center().same_as(&ProjPoint::real_at(0.4, 1.0), 1e-12));
        let ideal = ProjPoint::new(MVec::new(1.0, 0.0, 0.0)).unwrap();
        let h = cycle_from_center_radius(&ideal, ExtScalar::from_parts(0.3, std::f64::consts::FRAC_PI_2)).unwrap();
        assert_eq!(h.kind(), CycleKind::Hypercycle);
        assert!(h.radius().approx_eq(ExtScalar::from_parts(0.3, std::f64::consts::FRAC_PI_2), 1e-12));
        let pc = paracycle_through(&ProjPoint::at_infinity(0.3), &ProjPoint::real_at(0.2, 2.0)).unwrap();
        assert_eq!(pc.kind(), CycleKind::Paracycle);
        assert_eq!(pc.radius(), ExtScalar::PLUS_INF);
        let p = cycle_from_center_radius(&ProjPoint::real_at(0.1, 0.0), ExtScalar::ZERO).unwrap();
        assert_eq!(p.kind(), CycleKind::PointCycle);
        assert_eq!(Cycle::new(MVec::ORIGIN, -0.5), Err(CycleError::EmptyCycle));
    }

    #[test]
    fn points_lie_on_cycle_at_radius() {
        let c = circle(0.7, -0.4, 0.9);
        for p in c.sample_points(12) {
            assert!(c.contains(&p, 1e-12));
            assert!((p.distance(&c.center()) - 0.9).abs() < 1e-10);
        }
        let ideal = ProjPoint::new(MVec::new(0.3, 1.2, 0.5)).unwrap();
        let r = ExtScalar::from_parts(0.6, std::f64::consts::FRAC_PI_2);
        let h = cycle_from_center_radius(&ideal, r).unwrap();
        let pts = h.sample_points(10);
        assert!(!pts.is_empty());
        for p in pts {
            let seg = segment_lengths(&h.center(), &p).unwrap();
            assert!(seg.forward.approx_eq(r, 1e-9), "{} vs {}", seg.forward, r);
        }
    }

    #[test]
    fn tangency_kinds() {
        let a = circle(0.0, 0.0, 0.5);
        let b = circle(0.8, 0.0, 0.3);
        assert_eq!(tangency(&a, &b).1, TangencyKind::External);
        assert!(tangency(&a, &b).0 < 1e-12);
        let c = circle(0.2, 0.0, 0.3);
        assert_eq!(tangency(&a, &c).1, TangencyKind::Internal);
        let far = circle(3.0, 1.0, 0.3);
        let (r, k) = tangency(&a, &far);
        assert!(r > 0.1 && k == TangencyKind::None);
        let p = contact_point(&a, &b).unwrap();
        assert!(p.same_as(&ProjPoint::real_at(0.5, 0.0), 1e-9));
    }

    #[test]
    fn power_at_center() {
        let c = circle(0.0, 0.0, 0.8);
        let p = ProjPoint::real_at(0.0, 0.0);
        let chord = crate::projplane::join(&p, &ProjPoint::real_at(1.0, 0.3)).unwrap();
        let pw = power(&p, &c, &chord).unwrap();
        assert!(pw.approx_eq(ExtScalar::real(-(0.4f64.tanh().powi(2))), 1e-12));
        assert!((power_of_real_point(&p, &c).unwrap() + 0.4f64.tanh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn power_axis_of_congruent_circles() {
        let a = circle(0.6, 0.0, 0.3);
        let b = circle(0.6, std::f64::consts::PI, 0.3);
        let ax = power_axis(&a, &b).unwrap();
        assert!(ax.contains(&ProjPoint::real_at(0.0, 0.0), 1e-12));
        assert!(ax.contains(&ProjPoint::real_at(1.0, std::f64::consts::FRAC_PI_2), 1e-12));
        let c = circle(0.6, 0.0, 0.5);
        assert_eq!(power_axis(&a, &c), Err(CycleError::ConcentricCycles));
    }
}
