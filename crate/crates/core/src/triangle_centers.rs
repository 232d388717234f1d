//! Staudtians, triangular coordinates and the classical centers of a
//! triangle: centroid, circumcenters, incenter and excenters.
//!
//! Centers are built geometrically from medians, bisectors and
//! perpendicular bisectors; the closed formulas relating them to sides and
//! angles are evaluated separately and collected as residuals in an
//! [`IdentityReport`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{point_vector, tangency, Cycle, CycleError, CycleKind};
use crate::extmeasure::{ext_tanh, ExtScalar};
use crate::projplane::{
    classify_point, join, meet, pole, segment_lengths, Category, MVec, ProjError, ProjLine, ProjPoint,
};
use crate::trig::{defect_area, TriangleData, TrigError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CenterError {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("the triangle must have real vertices and real sides")]
    NonRealTriangle,
    #[error("the three points lie on a circle: tanh d = {0} is not below 1")]
    NotHypercyclic(f64),
    #[error("circumcenter and incenter must both be real points")]
    NonRealCenters,
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Trig(#[from] TrigError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Which of the two segments between two vertices is taken as the side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentChoice {
    Forward,
    Backward,
}

/// A triangle with its vertices, the chosen sides and the derived data.
/// Side `a` lies opposite vertex `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypTriangle {
    vertices: [ProjPoint; 3],
    choices: [SegmentChoice; 3],
    data: TriangleData,
}

fn unit(v: MVec) -> MVec {
    v * (1.0 / v.euclid_norm())
}

impl HypTriangle {
    pub fn new(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> Result<Self, CenterError> {
        Self::with_choices(a, b, c, [SegmentChoice::Forward; 3])
    }

    pub fn with_choices(
        a: ProjPoint,
        b: ProjPoint,
        c: ProjPoint,
        choices: [SegmentChoice; 3],
    ) -> Result<Self, CenterError> {
        let vertices = [a, b, c];
        if MVec::det(unit(a.rep()), unit(b.rep()), unit(c.rep())).abs() <= 1e-12 {
            return Err(CenterError::DegenerateTriangle);
        }
        let side = |i: usize| -> Result<ExtScalar, CenterError> {
            let pair = segment_lengths(&vertices[(i + 1) % 3], &vertices[(i + 2) % 3])?;
            Ok(match choices[i] {
                SegmentChoice::Forward => pair.forward,
                SegmentChoice::Backward => pair.backward,
            })
        };
        let data = TriangleData::from_sides(side(0)?, side(1)?, side(2)?)?;
        Ok(HypTriangle { vertices, choices, data })
    }

    /// Real triangle with the given sides: `C` at the origin, `A` on the
    /// positive first axis, `B` on the positive side of it.
    pub fn from_sides(a: f64, b: f64, c: f64) -> Result<Self, CenterError> {
        let ok = a > 0.0 && b > 0.0 && c > 0.0 && a < b + c && b < a + c && c < a + b;
        if !ok || !(a + b + c).is_finite() {
            return Err(CenterError::DegenerateTriangle);
        }
        let gamma = ((a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh())).clamp(-1.0, 1.0).acos();
        Self::new(ProjPoint::real_at(b, 0.0), ProjPoint::real_at(a, gamma), ProjPoint::real_at(0.0, 0.0))
    }

    pub fn vertices(&self) -> [ProjPoint; 3] {
        self.vertices
    }

    pub fn choices(&self) -> [SegmentChoice; 3] {
        self.choices
    }

    pub fn data(&self) -> &TriangleData {
        &self.data
    }

    /// Real vertices joined by their real segments.
    pub fn is_real(&self) -> bool {
        self.vertices.iter().all(ProjPoint::is_real) && self.choices.iter().all(|c| *c == SegmentChoice::Forward)
    }

    /// The same shape with all sides multiplied by `eps`.
    pub fn scaled(&self, eps: f64) -> Result<Self, CenterError> {
        let r = RealTriangle::of(self)?;
        Self::from_sides(eps * r.side[0], eps * r.side[1], eps * r.side[2])
    }

    /// Heights `h_A, h_B, h_C`, measured from each vertex to the foot on
    /// the opposite side line.
    pub fn heights(&self) -> Result<[ExtScalar; 3], CenterError> {
        let mut out = [ExtScalar::ZERO; 3];
        for (i, h) in out.iter_mut().enumerate() {
            let v = &self.vertices[i];
            let side = join(&self.vertices[(i + 1) % 3], &self.vertices[(i + 2) % 3])?;
            let foot = meet(&side, &join(v, &pole(&side))?)?;
            *h = segment_lengths(v, &foot)?.forward;
        }
        Ok(out)
    }
}

/// Real data of a real triangle with normalized vertex vectors.
#[derive(Debug, Clone, Copy)]
struct RealTriangle {
    side: [f64; 3],
    angle: [f64; 3],
    s: f64,
    delta: f64,
    v: [MVec; 3],
    n: f64,
    big_n: f64,
}

impl RealTriangle {
    fn of(t: &HypTriangle) -> Result<Self, CenterError> {
        if !t.is_real() {
            return Err(CenterError::NonRealTriangle);
        }
        let (sides, angles) = t.data.complex_parts();
        let re = |z: Complex64| {
            if z.im.abs() <= 1e-12 && z.re.is_finite() {
                Ok(z.re)
            } else {
                Err(CenterError::NonRealTriangle)
            }
        };
        let side = [re(sides[0])?, re(sides[1])?, re(sides[2])?];
        let angle = [re(angles[0])?, re(angles[1])?, re(angles[2])?];
        let s = (side[0] + side[1] + side[2]) / 2.0;
        let delta = (std::f64::consts::PI - angle[0] - angle[1] - angle[2]) / 2.0;
        let n = (s.sinh() * (s - side[0]).sinh() * (s - side[1]).sinh() * (s - side[2]).sinh()).max(0.0).sqrt();
        let big_n = (delta.sin() * (delta + angle[0]).sin() * (delta + angle[1]).sin() * (delta + angle[2]).sin())
            .max(0.0)
            .sqrt();
        if n <= 1e-300 {
            return Err(CenterError::DegenerateTriangle);
        }
        let v = t.vertices.map(|p| p.rep());
        Ok(RealTriangle { side, angle, s, delta, v, n, big_n })
    }

    fn cyc(&self, i: usize) -> (usize, usize, usize) {
        (i, (i + 1) % 3, (i + 2) % 3)
    }

    /// Sign making the Staudtians of interior points positive.
    fn orientation(&self) -> f64 {
        MVec::det(self.v[0], self.v[1], self.v[2]).signum()
    }

    /// Pole of the side opposite vertex `i`, scaled to `Q = 1` and turned
    /// so that the vertex lies on its positive side.
    fn side_pole(&self, i: usize) -> MVec {
        let (_, j, k) = self.cyc(i);
        let p = self.v[j].cross(self.v[k]);
        let p = p * (1.0 / p.q_self().sqrt());
        if p.q(self.v[i]) < 0.0 {
            -p
        } else {
            p
        }
    }
}

fn csqrt(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1e-15 * (1.0 + z.norm()) && z.re < 0.0 && z.re > -1e-15 {
        return Complex64::new(0.0, 0.0);
    }
    z.sqrt()
}

/// Staudtian `√(sinh s · sinh(s−a) · sinh(s−b) · sinh(s−c))` of three sides.
pub fn staudtian_of_sides(a: ExtScalar, b: ExtScalar, c: ExtScalar) -> ExtScalar {
    let [a, b, c] = [a, b, c].map(|x| x.to_complex_lossy());
    let s = (a + b + c) / 2.0;
    ExtScalar::finite(csqrt(s.sinh() * (s - a).sinh() * (s - b).sinh() * (s - c).sinh()))
}

/// Angular Staudtian `√(sin δ · sin(δ+α) · sin(δ+β) · sin(δ+γ))` with
/// `2δ = π − α − β − γ`.
pub fn angular_staudtian_of_angles(alpha: ExtScalar, beta: ExtScalar, gamma: ExtScalar) -> ExtScalar {
    let [al, be, ga] = [alpha, beta, gamma].map(|x| x.to_complex_lossy());
    let d = (Complex64::from(std::f64::consts::PI) - al - be - ga) / 2.0;
    ExtScalar::finite(csqrt(d.sin() * (d + al).sin() * (d + be).sin() * (d + ga).sin()))
}

pub fn staudtian(t: &HypTriangle) -> ExtScalar {
    staudtian_of_sides(t.data.a, t.data.b, t.data.c)
}

pub fn angular_staudtian(t: &HypTriangle) -> ExtScalar {
    angular_staudtian_of_angles(t.data.alpha, t.data.beta, t.data.gamma)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
}

/// Named residuals of identities evaluated on one configuration.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
}

impl IdentityReport {
    fn record(&mut self, name: impl Into<String>, lhs: f64, rhs: f64) {
        self.record_c(name, lhs.into(), rhs.into());
    }

    fn record_c(&mut self, name: impl Into<String>, lhs: Complex64, rhs: Complex64) {
        let residual = if lhs.is_finite() && rhs.is_finite() { rel(lhs, rhs) } else { f64::INFINITY };
        self.checks.push(IdentityCheck { name: name.into(), residual });
    }

    fn record_raw(&mut self, name: impl Into<String>, residual: f64) {
        self.checks.push(IdentityCheck { name: name.into(), residual });
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn failing(&self, tol: f64) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| c.residual.is_nan() || c.residual > tol).collect()
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }
}

const NAMES: [&str; 3] = ["A", "B", "C"];

/// Staudtian formulas for the sides, the angles and the heights of a real triangle.
pub fn staudtian_identity_suite(t: &HypTriangle) -> Result<IdentityReport, CenterError> {
    let r = RealTriangle::of(t)?;
    let (x, g, s, d, n, nn) = (r.side, r.angle, r.s, r.delta, r.n, r.big_n);
    let h = t.heights()?.map(|h| h.to_complex_lossy().re);
    let mut rep = IdentityReport::default();
    rep.record(
        "half-angle sines",
        (g[0] / 2.0).sin() * (g[1] / 2.0).sin() * (g[2] / 2.0).sin(),
        n * n / (s.sinh() * x[0].sinh() * x[1].sinh() * x[2].sinh()),
    );
    rep.record("staudtian as determinant", n, MVec::det(r.v[0], r.v[1], r.v[2]).abs() / 2.0);
    rep.record("staudtian link", 2.0 * n * n, nn * x[0].sinh() * x[1].sinh() * x[2].sinh());
    for i in 0..3 {
        let (_, j, k) = r.cyc(i);
        let v = NAMES[i];
        rep.record(format!("sine from staudtian at {v}"), g[i].sin(), 2.0 * n / (x[j].sinh() * x[k].sinh()));
        rep.record(format!("staudtian from height at {v}"), n, 0.5 * h[i].sinh() * x[i].sinh());
        rep.record(
            format!("half-side sinh opposite {v}"),
            (x[i] / 2.0).sinh(),
            (d.sin() * (d + g[i]).sin() / (g[j].sin() * g[k].sin())).sqrt(),
        );
        rep.record(
            format!("half-side cosh opposite {v}"),
            (x[i] / 2.0).cosh(),
            ((d + g[j]).sin() * (d + g[k]).sin() / (g[j].sin() * g[k].sin())).sqrt(),
        );
        rep.record(
            format!("side from angular staudtian opposite {v}"),
            x[i].sinh(),
            2.0 * nn / (g[j].sin() * g[k].sin()),
        );
        rep.record(format!("angular staudtian from height at {v}"), nn, 0.5 * h[i].sinh() * g[i].sin());
        rep.record(format!("staudtian ratio at {v}"), nn / n, g[i].sin() / x[i].sinh());
    }
    rep.record(
        "half-side cosh product",
        (x[0] / 2.0).cosh() * (x[1] / 2.0).cosh() * (x[2] / 2.0).cosh(),
        nn * nn / (g[0].sin() * g[1].sin() * g[2].sin() * d.sin()),
    );
    Ok(rep)
}

/// Projective triple `(n_A(X) : n_B(X) : n_C(X))` of signed Staudtians of
/// the triangles `XBC`, `AXC`, `ABX`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangularCoords {
    pub n_a: ExtScalar,
    pub n_b: ExtScalar,
    pub n_c: ExtScalar,
}

impl TriangularCoords {
    pub fn values(&self) -> [f64; 3] {
        [self.n_a, self.n_b, self.n_c].map(|x| x.to_complex_lossy().re)
    }

    /// Distance of the triple from `target` as points of the projective
    /// plane: the norm of the cross product of the normalized triples.
    pub fn deviation_from(&self, target: [f64; 3]) -> f64 {
        let (a, b) = (MVec::from_array(self.values()), MVec::from_array(target));
        let (a, b) = (a * (1.0 / a.euclid_norm()), b * (1.0 / b.euclid_norm()));
        let c = [a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x];
        c.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

fn normalized_rep(x: &ProjPoint) -> MVec {
    match x.category() {
        Category::Real => x.rep(),
        _ => unit(x.rep()),
    }
}

/// Triangular coordinates of a point. For a real point these are the
/// signed Staudtians themselves; otherwise only their ratios are meaningful.
pub fn triangular_coords(x: &ProjPoint, t: &HypTriangle) -> Result<TriangularCoords, CenterError> {
    let r = RealTriangle::of(t)?;
    let p = normalized_rep(x);
    let o = r.orientation() / 2.0;
    let [a, b, c] = r.v;
    Ok(TriangularCoords {
        n_a: ExtScalar::real(o * MVec::det(p, b, c)),
        n_b: ExtScalar::real(o * MVec::det(a, p, c)),
        n_c: ExtScalar::real(o * MVec::det(a, b, p)),
    })
}

fn dist(p: MVec, q: MVec) -> f64 {
    (-p.q(q)).max(1.0).acosh()
}

/// For each vertex, the cevian through `x` meets the opposite side at a
/// foot dividing it in the signed ratio `sinh(BX_A)/sinh(X_A C)` (cyclic);
/// returns the deviations of those ratios from `n_C(X)/n_B(X)` (cyclic).
pub fn section_ratio_residuals(x: &ProjPoint, t: &HypTriangle) -> Result<[f64; 3], CenterError> {
    let r = RealTriangle::of(t)?;
    let coords = triangular_coords(x, t)?.values();
    let mut out = [0.0; 3];
    for i in 0..3 {
        let (_, j, k) = r.cyc(i);
        let side = join(&t.vertices[j], &t.vertices[k])?;
        let foot = meet(&join(&t.vertices[i], x)?, &side)?;
        // foot = β·B + γ·C with γ/β the signed ratio of the sines of BX_A and X_A C
        let f = foot.rep();
        let ch = r.side[i].cosh();
        let (qb, qc) = (f.q(r.v[j]), f.q(r.v[k]));
        let beta = (-qb + ch * qc) / (1.0 - ch * ch);
        let gamma = (-qc + ch * qb) / (1.0 - ch * ch);
        let ratio = gamma / beta;
        out[i] = (ratio - coords[k] / coords[j]).abs() / 1f64.max(ratio.abs());
    }
    Ok(out)
}

fn concurrency(lines: [&ProjLine; 3]) -> f64 {
    let [a, b, c] = lines.map(|l| unit(l.rep()));
    MVec::det(a, b, c).abs()
}

/// Representative of the middle point of the segment between two points:
/// `x ± y`, whichever is a real point, `x + y` first.
fn midpoint_rep(x: MVec, y: MVec) -> MVec {
    let (p, m) = (x + y, x - y);
    if p.q_self() < 0.0 || m.q_self() >= 0.0 {
        p
    } else {
        m
    }
}

fn point(v: MVec) -> Result<ProjPoint, CenterError> {
    Ok(classify_point(v, 1e-9)?)
}

/// Medians of a triangle as lines from each vertex to the middle point of
/// the opposite side. For ideal vertices the middle point is that of the
/// real segment cut out by their polars.
pub fn medians(t: &HypTriangle) -> Result<[ProjLine; 3], CenterError> {
    let v = t.vertices;
    let median = |i: usize| -> Result<ProjLine, CenterError> {
        let m = point(midpoint_rep(v[(i + 1) % 3].rep(), v[(i + 2) % 3].rep()))?;
        Ok(join(&v[i], &m)?)
    };
    Ok([median(0)?, median(1)?, median(2)?])
}

/// Common point of the medians and how far the third median misses the
/// meet of the first two.
pub fn centroid(t: &HypTriangle) -> Result<(ProjPoint, f64), CenterError> {
    let m = medians(t)?;
    let c = meet(&m[0], &m[1])?;
    Ok((c, concurrency([&m[0], &m[1], &m[2]])))
}

/// A line with a witness point fixing its positive side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestLine {
    pub line: ProjLine,
    pub witness: ProjPoint,
}

impl TestLine {
    pub fn new(line: ProjLine, witness: ProjPoint) -> Self {
        TestLine { line, witness }
    }

    /// Hyperbolic sine of the signed distance of a real point.
    pub fn sinh_signed_distance(&self, p: MVec) -> f64 {
        let l = self.line.rep();
        let l = l * (1.0 / l.q_self().sqrt());
        let sign = l.q(self.witness.rep()).signum();
        sign * l.q(p)
    }
}

/// Centroid of a real triangle with the ratio, center-of-gravity and
/// minimality properties checked against `line` and the point `y`.
pub fn centroid_report(
    t: &HypTriangle,
    line: &TestLine,
    y: &ProjPoint,
) -> Result<(ProjPoint, IdentityReport), CenterError> {
    let r = RealTriangle::of(t)?;
    let (m, conc) = centroid(t)?;
    let mv = m.rep();
    let coords = triangular_coords(&m, t)?.values();
    let mut rep = IdentityReport::default();
    rep.record_raw("medians concurrent", conc);
    rep.record("centroid coordinates equal", coords[0], coords[1]);
    rep.record("centroid coordinates equal (second pair)", coords[1], coords[2]);
    let weight = (1.0 + 2.0 * (1.0 + r.side.iter().map(|x| x.cosh()).sum::<f64>())).sqrt();
    rep.record("staudtian over centroid coordinate", r.n / coords[0], weight);
    for i in 0..3 {
        let (_, j, k) = r.cyc(i);
        let foot = unit_timelike(r.v[j] + r.v[k]);
        let v = NAMES[i];
        rep.record(
            format!("vertex to centroid over centroid to foot at {v}"),
            dist(r.v[i], mv).sinh() / dist(mv, foot).sinh(),
            2.0 * (r.side[i] / 2.0).cosh(),
        );
        rep.record(
            format!("median over centroid to foot at {v}"),
            dist(r.v[i], foot).sinh() / dist(mv, foot).sinh(),
            r.n / coords[i],
        );
    }
    let sd: f64 = r.v.iter().map(|p| line.sinh_signed_distance(*p)).sum();
    rep.record("center of gravity", line.sinh_signed_distance(mv), sd / weight);
    let yv = y.rep();
    let sum_cosh: f64 = r.v.iter().map(|p| dist(yv, *p).cosh()).sum();
    rep.record("minimality", dist(yv, mv).cosh(), sum_cosh / (r.n / coords[0]));
    let at_m: f64 = r.v.iter().map(|p| dist(mv, *p).cosh()).sum();
    rep.record("minimality at the centroid", at_m, weight);
    Ok((m, rep))
}

fn unit_timelike(v: MVec) -> MVec {
    let v = v * (1.0 / (-v.q_self()).sqrt());
    if v.z < 0.0 {
        -v
    } else {
        v
    }
}

/// A circumscribed cycle: through all three vertices for the first
/// variant, and with the vertex of the variant on the opposite branch of
/// the hypercycle for the other three.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circumcycle {
    pub center: ProjPoint,
    pub radius: ExtScalar,
    pub cycle: Cycle,
    /// Largest deviation of the vertices from the cycle or its other branch.
    pub through_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circumcenters {
    /// `O, O_A, O_B, O_C`.
    pub cycles: [Circumcycle; 4],
    pub report: IdentityReport,
}

fn on_cycle_residual(c: &Cycle, p: &ProjPoint, other_branch: bool) -> f64 {
    let c = if other_branch { Cycle::new(-c.axis(), c.level()).unwrap_or(*c) } else { *c };
    let pv = point_vector(p).expect("real vertex");
    let u = c.unit_vector();
    let pv = pv / pv.norm();
    (u[0] * pv[0] + u[1] * pv[1] - u[2] * pv[2] + u[3] * pv[3]).abs()
}

/// Perpendicular bisectors of the sides and their common points. In the
/// variant for a vertex the two sides through it are replaced by their
/// complementary segments, whose middle points are ideal.
pub fn circumcenters(t: &HypTriangle) -> Result<Circumcenters, CenterError> {
    let r = RealTriangle::of(t)?;
    let [a, b, c] = r.v;
    // poles of the perpendicular bisectors of BC, CA, AB for the real segments
    let bis = [b - c, c - a, a - b];
    let alt = [b + c, c + a, a + b];
    let mut cycles = Vec::with_capacity(4);
    for variant in 0..4 {
        let pick = |side: usize| if variant == 0 || variant == side + 1 { bis[side] } else { alt[side] };
        let l1 = ProjLine::new(pick(0))?;
        let l2 = ProjLine::new(pick(1))?;
        let o = meet(&l1, &l2)?;
        let ov = normalized_rep(&o);
        let on = if variant == 0 { 0 } else { variant % 3 };
        let cycle = Cycle::new(ov, ov.q(r.v[on]))?;
        let through_residual = (0..3)
            .map(|i| on_cycle_residual(&cycle, &t.vertices[i], variant != 0 && i == variant - 1))
            .fold(0.0, f64::max);
        cycles.push(Circumcycle { center: cycle.center(), radius: cycle.radius(), cycle, through_residual });
    }
    let cycles: [Circumcycle; 4] = cycles.try_into().expect("four variants");

    let (x, g, d, n, nn) = (r.side, r.angle, r.delta, r.n, r.big_n);
    let mut rep = IdentityReport::default();
    let th = |c: &Circumcycle| ext_tanh(c.radius).to_complex_lossy();
    let sh = |v: f64| (v / 2.0).sinh();
    let ch = |v: f64| (v / 2.0).cosh();
    rep.record_c("circumradius from angles", th(&cycles[0]), (d.sin() / nn).into());
    rep.record_c("circumradius from sides", th(&cycles[0]), (2.0 * sh(x[0]) * sh(x[1]) * sh(x[2]) / n).into());
    for i in 0..3 {
        let (_, j, k) = r.cyc(i);
        let v = NAMES[i];
        let cy = &cycles[i + 1];
        rep.record_c(format!("circumradius variant {v} from angles"), th(cy), ((d + g[i]).sin() / nn).into());
        rep.record_c(
            format!("circumradius variant {v} from sides"),
            th(cy),
            (2.0 * sh(x[i]) * ch(x[j]) * ch(x[k]) / n).into(),
        );
        let mut choices = [SegmentChoice::Backward; 3];
        choices[i] = SegmentChoice::Forward;
        let vt = HypTriangle::with_choices(t.vertices[0], t.vertices[1], t.vertices[2], choices)?;
        let (vx, vg) = vt.data.complex_parts();
        // branch of the Staudtian fixed by the sine relation at the vertex
        let vn = vg[i].sin() * vx[j].sinh() * vx[k].sinh() / 2.0;
        rep.record_c(format!("variant staudtian squared at {v}"), vn * vn, staudtian(&vt).to_complex_lossy().powi(2));
        let prod = (vx[0] / 2.0).sinh() * (vx[1] / 2.0).sinh() * (vx[2] / 2.0).sinh();
        // the complementary segments give the radius of the other branch, so only the square is fixed
        rep.record_c(
            format!("circumradius variant {v} from complex sides, squared"),
            th(cy).powi(2),
            (prod * 2.0 / vn).powi(2),
        );
    }
    let o = triangular_coords(&cycles[0].center, t)?;
    let target = [0, 1, 2].map(|i| (d + g[i]).cos() * x[i].sinh());
    rep.record_raw("circumcenter coordinates", o.deviation_from(target));
    for (i, cy) in cycles.iter().enumerate() {
        rep.record_raw(format!("circumcycle {i} through vertices"), cy.through_residual);
    }
    Ok(Circumcenters { cycles, report: rep })
}

/// Common distance `d` of three points of a hypercycle from its axis,
/// `tanh d = n / (2 sinh(a/2) sinh(b/2) sinh(c/2))`.
pub fn hypercycle_three_point_distance(a: ExtScalar, b: ExtScalar, c: ExtScalar) -> Result<ExtScalar, CenterError> {
    let n = staudtian_of_sides(a, b, c).to_complex_lossy();
    let [a, b, c] = [a, b, c].map(|x| x.to_complex_lossy());
    let v = n / (2.0 * (a / 2.0).sinh() * (b / 2.0).sinh() * (c / 2.0).sinh());
    if v.im.abs() > 1e-12 || !v.re.is_finite() || v.re <= 0.0 {
        return Err(CenterError::DegenerateTriangle);
    }
    if v.re >= 1.0 {
        return Err(CenterError::NotHypercyclic(v.re));
    }
    Ok(ExtScalar::real(v.re.atanh()))
}

/// An inscribed or escribed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Incycle {
    pub center: ProjPoint,
    pub radius: ExtScalar,
    pub cycle: Cycle,
    /// Largest tangency residual against the three side lines.
    pub touch_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InCenters {
    /// `I, I_A, I_B, I_C`.
    pub cycles: [Incycle; 4],
    pub report: IdentityReport,
}

/// Point at distance `d` from the real point `p` toward the real point `q`.
fn toward(p: MVec, q: MVec, d: f64) -> MVec {
    let l = dist(p, q);
    let u = (q - p * l.cosh()) * (1.0 / l.sinh());
    p * d.cosh() + u * d.sinh()
}

/// Interior angle bisectors, each through a vertex and the middle point of
/// the points at unit distance along its two sides.
pub fn interior_bisectors(t: &HypTriangle) -> Result<[ProjLine; 3], CenterError> {
    let r = RealTriangle::of(t)?;
    let bis = |i: usize| -> Result<ProjLine, CenterError> {
        let (_, j, k) = r.cyc(i);
        let m = point(toward(r.v[i], r.v[j], 1.0) + toward(r.v[i], r.v[k], 1.0))?;
        Ok(join(&t.vertices[i], &m)?)
    };
    Ok([bis(0)?, bis(1)?, bis(2)?])
}

/// Cycle centered at `x` touching the real line with unit pole `l`.
fn touching_cycle(x: MVec, l: MVec) -> Result<Cycle, CenterError> {
    let foot = x - l * x.q(l);
    let lambda = (-foot.q_self()).max(0.0).sqrt();
    Ok(Cycle::new(x, -foot.z.signum() * lambda)?)
}

/// Incircle and the three excycles with the radius formulas checked.
pub fn incenter_excenters(t: &HypTriangle) -> Result<InCenters, CenterError> {
    let r = RealTriangle::of(t)?;
    let l = [r.side_pole(0), r.side_pole(1), r.side_pole(2)];
    let bis = interior_bisectors(t)?;
    let incenter = meet(&bis[0], &bis[1])?;
    let centers = [
        normalized_rep(&incenter),
        unit((l[0] + l[1]).cross(l[1] - l[2])),
        unit((l[1] + l[2]).cross(l[2] - l[0])),
        unit((l[2] + l[0]).cross(l[0] - l[1])),
    ];
    let lines = l.map(|p| Cycle::line(&ProjLine::new(p).expect("real side")).expect("line cycle"));
    let mut cycles = Vec::with_capacity(4);
    for (idx, x) in centers.into_iter().enumerate() {
        let touch_line = if idx == 0 { 0 } else { idx - 1 };
        let cycle = touching_cycle(x, l[touch_line])?;
        let touch_residual = lines.iter().map(|ln| tangency(&cycle, ln).0).fold(0.0, f64::max);
        cycles.push(Incycle { center: cycle.center(), radius: cycle.radius(), cycle, touch_residual });
    }
    let cycles: [Incycle; 4] = cycles.try_into().expect("four cycles");

    let (x, g, s, d, n, nn) = (r.side, r.angle, r.s, r.delta, r.n, r.big_n);
    let circ = circumcenters(t)?;
    let tanh_r = |c: &Incycle| ext_tanh(c.radius).to_complex_lossy();
    let coth_r = |c: &Incycle| Complex64::from(1.0) / tanh_r(c);
    let tanh_big: [Complex64; 4] = [0, 1, 2, 3].map(|i| ext_tanh(circ.cycles[i].radius).to_complex_lossy());
    let sd = [d.sin(), (d + g[0]).sin(), (d + g[1]).sin(), (d + g[2]).sin()];

    let mut rep = IdentityReport::default();
    rep.record_raw("interior bisectors concurrent", concurrency([&bis[0], &bis[1], &bis[2]]));
    rep.record_c("inradius from semiperimeter", tanh_r(&cycles[0]), (n / s.sinh()).into());
    rep.record_c(
        "inradius from angles",
        tanh_r(&cycles[0]),
        (nn / (2.0 * (g[0] / 2.0).cos() * (g[1] / 2.0).cos() * (g[2] / 2.0).cos())).into(),
    );
    rep.record_c("inradius cotangent", coth_r(&cycles[0]), ((sd[0] + sd[1] + sd[2] + sd[3]) / (2.0 * nn)).into());
    for i in 0..3 {
        let v = NAMES[i];
        let e = &cycles[i + 1];
        rep.record_c(format!("exradius at {v} from semiperimeter"), tanh_r(e), (n / (s - x[i]).sinh()).into());
        let (_, j, k) = r.cyc(i);
        let num = -sd[i + 1] + sd[j + 1] + sd[k + 1] - sd[0];
        rep.record_c(format!("exradius cotangent at {v}"), coth_r(e), (num / (2.0 * nn)).into());
    }
    for (idx, c) in cycles.iter().enumerate() {
        rep.record_raw(format!("cycle {idx} touches the sides"), c.touch_residual);
    }

    // mixed relations among circumradii and inradii, without and with the
    // orientation sign of tanh R
    let cr = [coth_r(&cycles[0]), coth_r(&cycles[1]), coth_r(&cycles[2]), coth_r(&cycles[3])];
    for i in 0..3 {
        let (_, j, k) = r.cyc(i);
        let v = NAMES[i];
        rep.record_c(format!("mixed radii unsigned sum at {v}"), tanh_big[0] + tanh_big[i + 1], cr[j + 1] + cr[k + 1]);
        rep.record_c(
            format!("mixed radii signed difference at {v}"),
            tanh_big[i + 1] - tanh_big[0],
            cr[j + 1] + cr[k + 1],
        );
        rep.record_c(format!("mixed radii pair at {v}"), tanh_big[j + 1] + tanh_big[k + 1], cr[0] + cr[i + 1]);
    }
    let half_sum = (tanh_big[0] + tanh_big[1] + tanh_big[2] + tanh_big[3]) / 2.0;
    rep.record_c("mixed radii unsigned half sum", tanh_big[0] + cr[0], half_sum);
    rep.record_c("mixed radii signed half sum", cr[0], half_sum);

    let sinh_sides = [x[0].sinh(), x[1].sinh(), x[2].sinh()];
    rep.record_raw("incenter coordinates", triangular_coords(&cycles[0].center, t)?.deviation_from(sinh_sides));
    for i in 0..3 {
        let mut target = sinh_sides;
        target[i] = -target[i];
        let c = triangular_coords(&cycles[i + 1].center, t)?;
        rep.record_raw(format!("excenter coordinates at {}", NAMES[i]), c.deviation_from(target));
    }
    Ok(InCenters { cycles, report: rep })
}

/// Sign between the two terms of the closed formula for `cosh OI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OiSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OiReport {
    pub direct: ExtScalar,
    pub formula_plus: ExtScalar,
    pub formula_minus: ExtScalar,
    pub cosh_direct: f64,
    pub cosh_plus: f64,
    pub cosh_minus: f64,
    /// The sign whose formula is closer to the direct distance.
    pub sign_used: OiSign,
}

impl OiReport {
    pub fn residual(&self, sign: OiSign) -> f64 {
        let v = match sign {
            OiSign::Plus => self.cosh_plus,
            OiSign::Minus => self.cosh_minus,
        };
        (v - self.cosh_direct).abs() / self.cosh_direct
    }
}

/// Distance of the circumcenter and the incenter, measured and from
/// `2 cosh(a/2) cosh(b/2) cosh(c/2) cosh r cosh R ± cosh((a+b+c)/2) cosh(R−r)`.
pub fn oi_distance(t: &HypTriangle) -> Result<OiReport, CenterError> {
    let r = RealTriangle::of(t)?;
    let circ = circumcenters(t)?;
    let inc = incenter_excenters(t)?;
    let (o, i) = (circ.cycles[0], inc.cycles[0]);
    if !o.center.is_real() || !i.center.is_real() {
        return Err(CenterError::NonRealCenters);
    }
    let big_r = o.radius.to_complex_lossy().re;
    let small_r = i.radius.to_complex_lossy().re;
    let cosh_direct = -o.center.rep().q(i.center.rep());
    let first = 2.0 * r.side.iter().map(|x| (x / 2.0).cosh()).product::<f64>() * small_r.cosh() * big_r.cosh();
    let second = r.s.cosh() * (big_r - small_r).cosh();
    let (cosh_plus, cosh_minus) = (first + second, first - second);
    let to_len = |v: f64| ExtScalar::finite(crate::trig::ext_arccosh(v.into()));
    let sign_used =
        if (cosh_minus - cosh_direct).abs() <= (cosh_plus - cosh_direct).abs() { OiSign::Minus } else { OiSign::Plus };
    Ok(OiReport {
        direct: ExtScalar::real(cosh_direct.max(1.0).acosh()),
        formula_plus: to_len(cosh_plus),
        formula_minus: to_len(cosh_minus),
        cosh_direct,
        cosh_plus,
        cosh_minus,
        sign_used,
    })
}

/// Common point of the perpendicular bisectors for vertices of any
/// category except at infinity: the pole of the plane through the vertex
/// vectors scaled to `|Q| = 1`. It centers a circle when real, a
/// hypercycle when ideal and a paracycle when at infinity.
pub fn circumcenter_point(t: &HypTriangle) -> Result<(ProjPoint, CycleKind), CenterError> {
    let mut v = [MVec::new(0.0, 0.0, 0.0); 3];
    for (i, p) in t.vertices.iter().enumerate() {
        let r = p.rep();
        let q = r.q_self();
        if p.category() == Category::AtInfinity || q.abs() <= 1e-12 * r.euclid_norm().powi(2) {
            return Err(CenterError::NonRealTriangle);
        }
        v[i] = r * (1.0 / q.abs().sqrt());
    }
    let o = (v[0] - v[1]).cross(v[1] - v[2]);
    let o = classify_point(o, 1e-9)?;
    let kind = match o.category() {
        Category::Real => CycleKind::Circle,
        Category::AtInfinity => CycleKind::Paracycle,
        Category::Ideal => CycleKind::Hypercycle,
    };
    Ok((o, kind))
}

/// Every center and radius of a real triangle with the two Staudtians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterReport {
    pub centroid: ProjPoint,
    /// `O, O_A, O_B, O_C`.
    pub circumcenters: [ProjPoint; 4],
    /// `R, R_A, R_B, R_C`.
    pub circumradii: [ExtScalar; 4],
    /// `I, I_A, I_B, I_C`.
    pub incenters: [ProjPoint; 4],
    /// `r, r_A, r_B, r_C`.
    pub inradii: [ExtScalar; 4],
    pub n: ExtScalar,
    pub big_n: ExtScalar,
}

pub fn center_report(t: &HypTriangle) -> Result<CenterReport, CenterError> {
    let circ = circumcenters(t)?;
    let inc = incenter_excenters(t)?;
    Ok(CenterReport {
        centroid: centroid(t)?.0,
        circumcenters: circ.cycles.map(|c| c.center),
        circumradii: circ.cycles.map(|c| c.radius),
        incenters: inc.cycles.map(|c| c.center),
        inradii: inc.cycles.map(|c| c.radius),
        n: staudtian(t),
        big_n: angular_staudtian(t),
    })
}

/// Every identity on a real triangle: Staudtians, centroid (against the
/// given line and point), circumradii, inradii and coordinates.
pub fn full_identity_suite(t: &HypTriangle, line: &TestLine, y: &ProjPoint) -> Result<IdentityReport, CenterError> {
    let mut rep = staudtian_identity_suite(t)?;
    rep.merge(centroid_report(t, line, y)?.1);
    rep.merge(circumcenters(t)?.report);
    rep.merge(incenter_excenters(t)?.report);
    let (m, _) = centroid(t)?;
    let ratios = section_ratio_residuals(&m, t)?;
    let inc = incenter_excenters(t)?.cycles[0].center;
    let ratios_i = section_ratio_residuals(&inc, t)?;
    for i in 0..3 {
        rep.record_raw(format!("section ratio of centroid cevian at {}", NAMES[i]), ratios[i]);
        rep.record_raw(format!("section ratio of incenter cevian at {}", NAMES[i]), ratios_i[i]);
    }
    Ok(rep)
}

/// Deviations of one Euclidean relation across the scales and the
/// observed orders between consecutive scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub name: String,
    pub deviations: Vec<f64>,
    pub orders: Vec<f64>,
    /// Order `p` of the fit `ln D = C + p ln ε + k ε²` through the last
    /// three scales, free of the second-order term; `None` with fewer
    /// than three scales.
    pub extrapolated_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub scales: Vec<f64>,
    pub rows: Vec<LimitRow>,
}

impl LimitReport {
    pub fn min_order(&self) -> f64 {
        self.rows.iter().flat_map(|r| r.orders.iter().copied()).fold(f64::INFINITY, f64::min)
    }

    pub fn min_extrapolated_order(&self) -> Option<f64> {
        self.rows.iter().map(|r| r.extrapolated_order).try_fold(f64::INFINITY, |m, o| Some(m.min(o?)))
    }
}

/// Relative deviations of the Euclidean relations on copies of `t` scaled
/// by each factor: centroid as mean of signed distances (relative to the
/// longest side), the parallel axis
/// relation for squared distances, `OM² = R² − (a²+b²+c²)/9`,
/// `T = 2R² sin α sin β sin γ` and `OI² = R² − 2rR`.
pub fn euclidean_limit_suite(t: &HypTriangle, scales: &[f64]) -> Result<LimitReport, CenterError> {
    let names = [
        "centroid signed distances",
        "squared distances about the centroid",
        "circumcenter to centroid",
        "area from circumradius",
        "circumcenter to incenter",
    ];
    let mut devs: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for &eps in scales {
        let ts = t.scaled(eps)?;
        let r = RealTriangle::of(&ts)?;
        let (m, _) = centroid(&ts)?;
        let mv = m.rep();
        let line = TestLine::new(
            join(&ProjPoint::real_at(1.3 * eps, 0.4), &ProjPoint::real_at(0.9 * eps, 2.9))?,
            ProjPoint::real_at(0.0, 0.0),
        );
        let dm = line.sinh_signed_distance(mv).asinh();
        let avg = r.v.iter().map(|p| line.sinh_signed_distance(*p).asinh()).sum::<f64>() / 3.0;
        let longest = r.side.iter().copied().fold(0.0, f64::max);
        devs[0].push((dm - avg).abs() / longest);

        let y = MVec::real_point(0.8 * eps, 2.2);
        let lhs: f64 = r.v.iter().map(|p| dist(y, *p).powi(2)).sum();
        let rhs: f64 = r.v.iter().map(|p| dist(mv, *p).powi(2)).sum::<f64>() + 3.0 * dist(y, mv).powi(2);
        devs[1].push((lhs - rhs).abs() / lhs);

        let circ = circumcenters(&ts)?;
        let o = circ.cycles[0];
        let big_r = o.radius.to_complex_lossy().re;
        let om = dist(o.center.rep(), mv);
        let sq: f64 = r.side.iter().map(|x| x * x).sum();
        devs[2].push((om * om - (big_r * big_r - sq / 9.0)).abs() / (big_r * big_r));

        let area = defect_area(ts.data()).to_complex_lossy().re;
        let g = r.angle;
        devs[3].push((area - 2.0 * big_r * big_r * g[0].sin() * g[1].sin() * g[2].sin()).abs() / area);

        let inc = incenter_excenters(&ts)?.cycles[0];
        let small_r = inc.radius.to_complex_lossy().re;
        let oi = dist(o.center.rep(), inc.center.rep());
        devs[4].push((oi * oi - (big_r * big_r - 2.0 * small_r * big_r)).abs() / (big_r * big_r));
    }
    let rows = names
        .iter()
        .zip(devs)
        .map(|(name, deviations)| {
            let orders = deviations
                .windows(2)
                .zip(scales.windows(2))
                .map(|(d, s)| (d[0] / d[1]).ln() / (s[0] / s[1]).ln())
                .collect();
            let extrapolated_order = extrapolated_order(scales, &deviations);
            LimitRow { name: name.to_string(), deviations, orders, extrapolated_order }
        })
        .collect();
    Ok(LimitReport { scales: scales.to_vec(), rows })
}

/// Solves `ln D = C + p ln ε + k ε²` through the last three points.
fn extrapolated_order(scales: &[f64], devs: &[f64]) -> Option<f64> {
    let n = scales.len();
    if n < 3 {
        return None;
    }
    let rows: Vec<[f64; 3]> = (n - 3..n).map(|i| [scales[i].ln(), scales[i] * scales[i], devs[i].ln()]).collect();
    // eliminate C by differences, then k
    let d1 = [rows[0][0] - rows[1][0], rows[0][1] - rows[1][1], rows[0][2] - rows[1][2]];
    let d2 = [rows[1][0] - rows[2][0], rows[1][1] - rows[2][1], rows[1][2] - rows[2][2]];
    let det = d1[0] * d2[1] - d2[0] * d1[1];
    (det != 0.0).then(|| (d1[2] * d2[1] - d2[2] * d1[1]) / det)
}

/// The six sides of the right-angled hexagon cut out by the side lines of
/// a triangle with ideal vertices and the polars of those vertices:
/// `AB, polar B, BC, polar C, CA, polar A`.
pub fn right_hexagon(t: &HypTriangle) -> Result<[ProjLine; 6], CenterError> {
    let v = t.vertices;
    if !v.iter().all(|p| p.category() == Category::Ideal) {
        return Err(CenterError::DegenerateTriangle);
    }
    let ab = join(&v[0], &v[1])?;
    let bc = join(&v[1], &v[2])?;
    let ca = join(&v[2], &v[0])?;
    let sides = [ab, pole_line(&v[1])?, bc, pole_line(&v[2])?, ca, pole_line(&v[0])?];
    if sides.iter().any(|l| l.category() != Category::Real) {
        return Err(CenterError::DegenerateTriangle);
    }
    Ok(sides)
}

fn pole_line(p: &ProjPoint) -> Result<ProjLine, CenterError> {
    Ok(ProjLine::new(p.rep())?)
}

/// For each side of a right-angled hexagon the line through its middle
/// point perpendicular to the opposite side; returns the concurrency
/// residuals of the lines of the even sides and of the odd sides.
pub fn hexagon_concurrency(sides: &[ProjLine; 6]) -> Result<[f64; 2], CenterError> {
    let mut lines = Vec::with_capacity(6);
    for i in 0..6 {
        let p = meet(&sides[i], &sides[(i + 5) % 6])?;
        let q = meet(&sides[i], &sides[(i + 1) % 6])?;
        if !p.is_real() || !q.is_real() {
            return Err(CenterError::DegenerateTriangle);
        }
        let mid = point(p.rep() + q.rep())?;
        lines.push(join(&mid, &pole(&sides[(i + 3) % 6]))?);
    }
    Ok([concurrency([&lines[0], &lines[2], &lines[4]]), concurrency([&lines[1], &lines[3], &lines[5]])])
}
