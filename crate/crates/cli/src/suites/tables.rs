//! Segment and angle tables against measurements in the Poincaré disk.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hypgeo_core::extmeasure::{ExtReal, ExtScalar};
use hypgeo_core::projplane::{join, line_angle, meet, polar, pole, segment_lengths};
use hypgeo_core::{Category, MVec, ProjLine, ProjPoint, SegmentPair};

use super::{CheckConfig, SuiteResult, Tally};
use crate::error::CliError;
use crate::scene::SceneDocument;

const TOL: f64 = 1e-10;
const SUM_TOL: f64 = 1e-12;
const SAMPLES: usize = 256;

fn disk(p: MVec) -> Complex64 {
    let (u, v) = p.to_disk();
    Complex64::new(u, v)
}

/// Distance of two real points measured in the Poincaré disk.
pub fn disk_distance(a: &ProjPoint, b: &ProjPoint) -> f64 {
    let (w1, w2) = (disk(a.rep()), disk(b.rep()));
    2.0 * ((w1 - w2).norm() / (1.0 - w1.conj() * w2).norm()).atanh()
}

/// Image in the disk of a tangent vector at a real point.
fn disk_tangent(p: MVec, n: MVec) -> Complex64 {
    let s = 1.0 + p.z;
    Complex64::new(n.x * s - p.x * n.z, n.y * s - p.y * n.z) / (s * s)
}

/// Angle in `[0, π]` between tangent vectors `n`, `m` at the real point
/// `p`, read off the disk images, which keep angles.
pub fn tangent_angle(p: MVec, n: MVec, m: MVec) -> f64 {
    let (a, b) = (disk_tangent(p, n), disk_tangent(p, m));
    let z = a.conj() * b;
    z.im.abs().atan2(z.re)
}

fn unit(v: MVec) -> MVec {
    v * (1.0 / v.q_self().abs().sqrt())
}

/// Frame of a real line: a real point on it, the unit tangent there and
/// the unit normal.
struct Frame {
    foot: MVec,
    along: MVec,
}

impl Frame {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let d = rng.gen_range(0.0..1.5);
        let th = rng.gen_range(0.0..2.0 * PI);
        let foot = MVec::real_point(d, th);
        let normal = MVec::new(-th.sin(), th.cos(), 0.0);
        let psi = rng.gen_range(0.0..PI);
        let radial = MVec::new(d.cosh() * th.cos(), d.cosh() * th.sin(), d.sinh());
        let along = unit(radial * psi.cos() + normal * psi.sin());
        Frame { foot, along }
    }

    fn real(&self, t: f64) -> ProjPoint {
        ProjPoint::new(self.foot * t.cosh() + self.along * t.sinh()).expect("real point")
    }

    fn end(&self, sign: f64) -> ProjPoint {
        ProjPoint::new(self.foot + self.along * sign).expect("point at infinity")
    }

    fn ideal(&self, t: f64, sign: f64) -> ProjPoint {
        ProjPoint::new((self.foot * t.sinh() + self.along * t.cosh()) * sign).expect("ideal point")
    }

    /// Unit normal at the point with parameter `t`: the pole of the
    /// perpendicular there.
    fn perpendicular(&self, t: f64, sign: f64) -> ProjLine {
        ProjLine::new((self.foot * t.sinh() + self.along * t.cosh()) * sign).expect("real line")
    }

    /// Pole vector of a line through the real point with parameter `t`
    /// at angle `psi` to this one.
    fn through(&self, t: f64, psi: f64) -> ProjLine {
        let p = self.foot * t.cosh() + self.along * t.sinh();
        let tangent = self.foot * t.sinh() + self.along * t.cosh();
        let normal = unit(p.cross(tangent));
        ProjLine::new(normal * psi.cos() + tangent * psi.sin()).expect("real line")
    }
}

fn sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

fn boundary(phi: f64) -> MVec {
    MVec::new(phi.cos(), phi.sin(), 1.0)
}

fn boundary_tangent(phi: f64) -> MVec {
    MVec::new(-phi.sin(), phi.cos(), 0.0)
}

/// Points of the forward segment `t·a + (1−t)·b`, endpoints excluded.
fn forward_samples(a: &ProjPoint, b: &ProjPoint) -> impl Iterator<Item = MVec> {
    let (a, b) = (a.rep(), b.rep());
    (1..SAMPLES).map(move |k| {
        let t = k as f64 / SAMPLES as f64;
        a * t + b * (1.0 - t)
    })
}

fn has_real_points(a: &ProjPoint, b: &ProjPoint) -> bool {
    forward_samples(a, b).any(|x| x.q_self() < -1e-12 * x.euclid_norm().powi(2))
}

fn inf(pair: &SegmentPair, forward_plus: bool) -> bool {
    let (f, b) =
        if forward_plus { (ExtReal::PlusInf, ExtReal::MinusInf) } else { (ExtReal::MinusInf, ExtReal::PlusInf) };
    pair.forward.re() == f && pair.backward.re() == b && pair.forward.im() == 0.0 && pair.backward.im() == 0.0
}

fn parts(x: ExtScalar) -> Complex64 {
    x.to_complex().unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// Residual of a finite pair against its expected forward value and
/// the complementary sum.
fn finite_residuals(pair: &SegmentPair, want: Complex64, total: Complex64) -> (f64, f64) {
    let f = parts(pair.forward);
    let sum = parts(pair.total());
    ((f - want).norm(), (sum - total).norm())
}

struct Cells {
    tally: Tally,
    sums: f64,
}

impl Cells {
    fn finite(&mut self, cell: &str, pair: &SegmentPair, want: Complex64, total: Complex64) {
        let (r, s) = finite_residuals(pair, want, total);
        self.tally.case(r);
        self.sums = self.sums.max(if s.is_finite() { s } else { f64::MAX });
        let ok = s <= SUM_TOL;
        self.tally.require(ok, || format!("{cell}: segments sum off by {s:e}"));
    }

    fn template(&mut self, cell: &str, ok: bool) {
        self.tally.case(0.0);
        self.tally.require(ok, || format!("{cell}: template mismatch"));
    }

    fn error(&mut self, cell: &str, e: impl std::fmt::Display) {
        self.tally.case(0.0);
        self.tally.require(false, || format!("{cell}: {e}"));
    }

    fn finish(mut self, kind: &str) -> SuiteResult {
        let s = self.sums;
        self.tally.note(format!("largest deviation of complementary {kind} sums {s:e}"));
        self.tally.finish()
    }
}

/// Checks the length pair of `a`, `b`, expected on a line of `line_cat`.
fn check_points(cells: &mut Cells, line_cat: Category, a: &ProjPoint, b: &ProjPoint) {
    use Category::*;
    let cell = format!("{:?} line, {:?}-{:?}", line_cat, a.category(), b.category());
    let line = match join(a, b) {
        Ok(l) => l,
        Err(e) => return cells.error(&cell, e),
    };
    if line.category() != line_cat {
        return cells.error(&cell, "joining line has the wrong category");
    }
    let pair = match segment_lengths(a, b) {
        Ok(p) => p,
        Err(e) => return cells.error(&cell, e),
    };
    let pi_i = Complex64::new(0.0, PI);
    match (line_cat, a.category(), b.category()) {
        (Real, Real, Real) => cells.finite(&cell, &pair, disk_distance(a, b).into(), pi_i),
        (Real, Real, AtInfinity) => {
            // the forward segment is all real and its distances grow like ln(1/t)/2
            let at = |t: f64| ProjPoint::new(a.rep() * t + b.rep() * (1.0 - t)).map(|p| disk_distance(a, &p)).ok();
            let far = matches!((at(1e-3), at(1e-6)), (Some(x), Some(y)) if y - x > 3.0);
            cells.template(&cell, far && has_real_points(a, b) && inf(&pair, true));
        }
        (Real, AtInfinity, AtInfinity) => cells.template(&cell, inf(&pair, has_real_points(a, b))),
        (Real, Real, Ideal) => {
            let foot = match meet(&line, &polar(b)) {
                Ok(f) => f,
                Err(e) => return cells.error(&cell, e),
            };
            let d = disk_distance(a, &foot);
            // does the forward segment pass the polar of b
            let side = |x: MVec| x.q(b.rep()).signum();
            let start = side(b.rep());
            let crosses = forward_samples(a, b).chain([a.rep()]).any(|x| side(x) != start);
            let want = Complex64::new(if crosses { d } else { -d }, PI / 2.0);
            cells.finite(&cell, &pair, want, pi_i);
        }
        (Real, AtInfinity, Ideal) => cells.template(&cell, inf(&pair, has_real_points(a, b))),
        (Real, Ideal, Ideal) => {
            let (fa, fb) = match (meet(&line, &polar(a)), meet(&line, &polar(b))) {
                (Ok(x), Ok(y)) => (x, y),
                _ => return cells.error(&cell, "no feet"),
            };
            let d = disk_distance(&fa, &fb);
            let want = if has_real_points(a, b) { Complex64::new(d, PI) } else { Complex64::new(-d, 0.0) };
            cells.finite(&cell, &pair, want, pi_i);
        }
        (AtInfinity, AtInfinity, Ideal) => {
            let half = Complex64::new(0.0, PI / 2.0);
            let ok = (parts(pair.forward) - half).norm() <= SUM_TOL && (parts(pair.backward) - half).norm() <= SUM_TOL;
            cells.template(&cell, ok);
        }
        (AtInfinity, Ideal, Ideal) => {
            // forward contains the point of tangency when it is a positive
            // combination of the two representatives
            let t = pole(&line).rep();
            let (u, v) = (a.rep(), b.rep());
            let dot = |x: MVec, y: MVec| x.x * y.x + x.y * y.y + x.z * y.z;
            let (uu, uv, vv, tu, tv) = (dot(u, u), dot(u, v), dot(v, v), dot(t, u), dot(t, v));
            let det = uu * vv - uv * uv;
            let (lam, mu) = ((tu * vv - tv * uv) / det, (tv * uu - tu * uv) / det);
            let want = if lam * mu > 0.0 { pi_i } else { Complex64::new(0.0, 0.0) };
            cells.finite(&cell, &pair, want, pi_i);
        }
        (Ideal, Ideal, Ideal) => {
            let p = pole(&line).rep();
            let angle = tangent_angle(p, a.rep(), b.rep());
            cells.finite(&cell, &pair, Complex64::new(0.0, angle), pi_i);
        }
        _ => cells.error(&cell, "unexpected categories"),
    }
}

/// A real point on a real line: the foot of the perpendicular from the
/// origin.
fn real_point_on(l: &ProjLine) -> Option<ProjPoint> {
    let o = ProjPoint::real_at(0.0, 0.0);
    if l.contains(&o, 1e-12) {
        return Some(o);
    }
    let perp = join(&o, &pole(l)).ok()?;
    meet(l, &perp).ok().filter(|p| p.is_real())
}

/// `true` when the two real lines face the same way: each lies on the
/// negative side of the other in exactly one direction.
fn same_facing(a: &ProjLine, b: &ProjLine) -> Option<bool> {
    let (pa, pb) = (real_point_on(a)?, real_point_on(b)?);
    Some(a.incidence(&pb).signum() * b.incidence(&pa).signum() < 0.0)
}

fn check_lines(cells: &mut Cells, a: &ProjLine, b: &ProjLine, meet_cat: Category) {
    use Category::*;
    let cell = format!("{:?}-{:?} lines, {:?} meet", a.category(), b.category(), meet_cat);
    let m = match meet(a, b) {
        Ok(m) => m,
        Err(e) => return cells.error(&cell, e),
    };
    if m.category() != meet_cat {
        return cells.error(&cell, "meet has the wrong category");
    }
    let pair = match line_angle(a, b) {
        Ok(p) => p,
        Err(e) => return cells.error(&cell, e),
    };
    let pi = Complex64::new(PI, 0.0);
    match (a.category(), b.category(), meet_cat) {
        (Real, Real, Real) => {
            let angle = tangent_angle(m.rep(), a.rep(), b.rep());
            cells.finite(&cell, &pair, angle.into(), pi);
        }
        (Real, Real, AtInfinity) => match same_facing(a, b) {
            Some(same) => cells.finite(&cell, &pair, if same { 0.0 } else { PI }.into(), pi),
            None => cells.error(&cell, "no real points"),
        },
        (Real, Real, Ideal) => {
            let perp = polar(&m);
            let feet = (meet(a, &perp), meet(b, &perp));
            let (Ok(fa), Ok(fb)) = feet else { return cells.error(&cell, "no feet") };
            let d = disk_distance(&fa, &fb);
            let want = match same_facing(a, b) {
                Some(true) => Complex64::new(0.0, -d),
                Some(false) => Complex64::new(PI, d),
                None => return cells.error(&cell, "no real points"),
            };
            cells.finite(&cell, &pair, want, pi);
        }
        (AtInfinity, Real, AtInfinity) => {
            let half = Complex64::new(PI / 2.0, 0.0);
            let ok = (parts(pair.forward) - half).norm() <= SUM_TOL && (parts(pair.backward) - half).norm() <= SUM_TOL;
            cells.template(&cell, ok);
        }
        (AtInfinity, Real, Ideal) => {
            // which side of b holds the point of tangency of a
            let (u, v) = a.rep().to_disk();
            let near = ProjPoint::new(MVec::from_disk(u * (1.0 - 1e-6), v * (1.0 - 1e-6)));
            let ok = near.map(|p| inf(&pair, b.incidence(&p) < 0.0)).unwrap_or(false);
            cells.template(&cell, ok);
        }
        (Ideal, Real, Ideal) => {
            let p = pole(a);
            let perp = match join(&p, &pole(b)) {
                Ok(l) => l,
                Err(e) => return cells.error(&cell, e),
            };
            let Ok(foot) = meet(b, &perp) else { return cells.error(&cell, "no foot") };
            let d = disk_distance(&p, &foot) * b.incidence(&p).signum();
            cells.finite(&cell, &pair, Complex64::new(PI / 2.0, d), pi);
        }
        (AtInfinity, AtInfinity, Ideal) | (Ideal, AtInfinity, Ideal) => {
            let ok = inf(&pair, true) || inf(&pair, false);
            cells.template(&cell, ok);
        }
        (Ideal, Ideal, Ideal) => {
            let d = disk_distance(&pole(a), &pole(b));
            cells.finite(&cell, &pair, Complex64::new(0.0, -d), pi);
        }
        _ => cells.error(&cell, "unexpected categories"),
    }
}

fn param(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-2.0..2.0)
}

/// Every cell of the point tables, `n` random pairs each.
pub(crate) fn point_tables(n: usize, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> SuiteResult {
    use Category::*;
    let mut cells = Cells { tally: Tally::new("segment tables", TOL, cfg), sums: 0.0 };
    for _ in 0..n {
        let f = Frame::random(rng);
        let (t1, t2) = (param(rng), param(rng));
        let (s1, s2) = (sign(rng), sign(rng));
        if (t1 - t2).abs() > 1e-3 {
            check_points(&mut cells, Real, &f.real(t1), &f.real(t2));
            check_points(&mut cells, Real, &f.ideal(t1, s1), &f.ideal(t2, s2));
        }
        check_points(&mut cells, Real, &f.real(t1), &f.end(s1));
        check_points(&mut cells, Real, &f.real(t1), &f.ideal(t2, s2));
        check_points(&mut cells, Real, &f.end(1.0), &f.end(-1.0));
        check_points(&mut cells, Real, &f.end(s1), &f.ideal(t2, s2));

        let phi = rng.gen_range(0.0..2.0 * PI);
        let (tp, w) = (boundary(phi), boundary_tangent(phi));
        let (al, be) = (param(rng), param(rng));
        let at = ProjPoint::new(tp).expect("point at infinity");
        let id = |al: f64, s: f64| ProjPoint::new((tp * al + w) * s).expect("ideal point");
        check_points(&mut cells, AtInfinity, &at, &id(al, s1));
        if (al - be).abs() > 1e-3 {
            check_points(&mut cells, AtInfinity, &id(al, s1), &id(be, s2));
        }

        let (d, th): (f64, f64) = (rng.gen_range(0.0..1.5), rng.gen_range(0.0..2.0 * PI));
        let e1 = MVec::new(d.cosh() * th.cos(), d.cosh() * th.sin(), d.sinh());
        let e2 = MVec::new(-th.sin(), th.cos(), 0.0);
        let (p1, p2) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        if (p1 - p2).abs() > 1e-3 && (p1 - p2).abs() < 2.0 * PI - 1e-3 && ((p1 - p2).abs() - PI).abs() > 1e-3 {
            let q1 = ProjPoint::new(e1 * p1.cos() + e2 * p1.sin()).expect("ideal point");
            let q2 = ProjPoint::new(e1 * p2.cos() + e2 * p2.sin()).expect("ideal point");
            check_points(&mut cells, Ideal, &q1, &q2);
        }
    }
    cells.finish("segment")
}

/// Every cell of the angle tables, `n` random pairs each.
pub(crate) fn line_tables(n: usize, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> SuiteResult {
    use Category::*;
    let mut cells = Cells { tally: Tally::new("angle tables", TOL, cfg), sums: 0.0 };
    for _ in 0..n {
        let f = Frame::random(rng);
        let t = param(rng);
        let (psi1, psi2) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        if ((psi1 - psi2).rem_euclid(PI)).min(PI - (psi1 - psi2).rem_euclid(PI)) > 1e-3 {
            check_lines(&mut cells, &f.through(t, psi1), &f.through(t, psi2), Real);
        }
        let (t1, t2) = (param(rng), param(rng));
        let (s1, s2) = (sign(rng), sign(rng));
        if (t1 - t2).abs() > 1e-3 {
            check_lines(&mut cells, &f.perpendicular(t1, s1), &f.perpendicular(t2, s2), Ideal);
        }

        let phi = rng.gen_range(0.0..2.0 * PI);
        let (tp, w) = (boundary(phi), boundary_tangent(phi));
        let (al, be) = (param(rng), param(rng));
        let through_t = |al: f64, s: f64| ProjLine::new((tp * al + w) * s).expect("real line");
        if (al - be).abs() > 1e-3 {
            check_lines(&mut cells, &through_t(al, s1), &through_t(be, s2), AtInfinity);
        }
        let tangent = ProjLine::new(tp).expect("tangent line");
        check_lines(&mut cells, &tangent, &through_t(al, s1), AtInfinity);
        let real = f.through(t, psi1);
        if real.incidence(&ProjPoint::new(tp).expect("point at infinity")).abs() > 1e-6 {
            check_lines(&mut cells, &tangent, &real, Ideal);
        }
        let phi2 = phi + rng.gen_range(0.1..2.0 * PI - 0.1);
        let tangent2 = ProjLine::new(boundary(phi2)).expect("tangent line");
        check_lines(&mut cells, &tangent, &tangent2, Ideal);

        let (d, th): (f64, f64) = (rng.gen_range(0.0..1.5), rng.gen_range(0.0..2.0 * PI));
        let ideal_line = ProjLine::new(MVec::real_point(d, th)).expect("ideal line");
        check_lines(&mut cells, &ideal_line, &real, Ideal);
        check_lines(&mut cells, &ideal_line, &tangent, Ideal);
        let (d2, th2) = (rng.gen_range(0.0..1.5), rng.gen_range(0.0..2.0 * PI));
        let other = ProjLine::new(MVec::real_point(d2, th2)).expect("ideal line");
        if disk_distance(&pole(&ideal_line), &pole(&other)) > 1e-3 {
            check_lines(&mut cells, &ideal_line, &other, Ideal);
        }
    }
    cells.finish("angle")
}

/// Complementary sums for every pair of points in a scene.
pub(crate) fn scene_pairs(doc: &SceneDocument, cfg: &CheckConfig) -> Result<SuiteResult, CliError> {
    let mut t = Tally::new("scene segment pairs", SUM_TOL, cfg);
    let names: Vec<&String> = doc.points.iter().map(|(k, _)| k).collect();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let (p, q) = (doc.point(a)?, doc.point(b)?);
            let Ok(pair) = segment_lengths(&p, &q) else { continue };
            match (pair.forward.to_complex(), pair.backward.to_complex()) {
                (Some(f), Some(g)) => t.case((f + g - Complex64::new(0.0, PI)).norm()),
                _ => {
                    t.case(0.0);
                    let ok = pair.total() == ExtScalar::ZERO;
                    t.require(ok, || format!("{a}-{b}: infinite pair does not cancel"));
                }
            }
        }
    }
    Ok(t.finish())
}
