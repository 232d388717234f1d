use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{half_tanh_along, line_cycle_intersections, line_parameter, Cycle, CycleError, CycleKind};
use crate::projplane::{classify_point, join, meet, Category, MVec, ProjLine, ProjPoint};

/// Which kinds of cycle meet, circles first, then paracycles, then hypercycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimilitudeCase {
    CircleCircle,
    CircleParacycle,
    CircleHypercycle,
    ParacycleParacycle,
    ParacycleHypercycle,
    HypercycleHypercycle,
}

impl SimilitudeCase {
    fn of(a: CycleKind, b: CycleKind) -> Self {
        use CycleKind::*;
        let rank = |k| match k {
            Circle | PointCycle => 0,
            Paracycle => 1,
            Hypercycle => 2,
        };
        match (rank(a).min(rank(b)), rank(a).max(rank(b))) {
            (0, 0) => Self::CircleCircle,
            (0, 1) => Self::CircleParacycle,
            (0, 2) => Self::CircleHypercycle,
            (1, 1) => Self::ParacycleParacycle,
            (1, 2) => Self::ParacycleHypercycle,
            _ => Self::HypercycleHypercycle,
        }
    }

    pub fn roman(self) -> &'static str {
        match self {
            Self::CircleCircle => "i",
            Self::CircleParacycle => "ii",
            Self::CircleHypercycle => "iii",
            Self::ParacycleParacycle => "iv",
            Self::ParacycleHypercycle => "v",
            Self::HypercycleHypercycle => "vi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilitudePair {
    pub external: ProjPoint,
    pub internal: ProjPoint,
    pub case_tag: SimilitudeCase,
}

fn check_distinct(c1: &Cycle, c2: &Cycle) -> Result<(), CycleError> {
    let (a, b) = (c1.canonical().unit_vector(), c2.canonical().unit_vector());
    if (a - b).norm() <= 1e-12 * a.norm() {
        return Err(CycleError::IdenticalCycles);
    }
    Ok(())
}

fn to_point(v: MVec) -> Result<ProjPoint, CycleError> {
    Ok(classify_point(v, 1e-9)?)
}

/// Axis part of the canonical unit vector of a cycle.
fn weight(c: &Cycle) -> MVec {
    let v = c.canonical().unit_vector();
    MVec::new(v[0], v[1], v[2])
}

/// Centers of similitude of two cycles.
///
/// The centers divide the join of the centers in the ratio of the
/// hyperbolic sines of the radii. Two circles use the closed form in the
/// distance from the smaller center; other pairs use the axis parts
/// `u₁ ∓ u₂` of the canonical unit vectors, which carry that ratio for
/// every kind of cycle.
pub fn similitude_centers(c1: &Cycle, c2: &Cycle) -> Result<SimilitudePair, CycleError> {
    check_distinct(c1, c2)?;
    let case_tag = SimilitudeCase::of(c1.kind(), c2.kind());
    for (a, b) in [(c1, c2), (c2, c1)] {
        if a.kind() == CycleKind::PointCycle {
            let p = a.center();
            let _ = b;
            return Ok(SimilitudePair { external: p, internal: p, case_tag });
        }
    }
    if case_tag == SimilitudeCase::CircleCircle {
        let concentric = c1.center().same_as(&c2.center(), 1e-12);
        if !concentric {
            return closed_form_circle_centers(c1, c2);
        }
    }
    let (u1, u2) = (weight(c1), weight(c2));
    Ok(SimilitudePair { external: to_point(u1 - u2)?, internal: to_point(u1 + u2)?, case_tag })
}

/// Two circles: with `x` the distance of a center of similitude from the
/// center of the smaller circle, `e^{2x} = (ρ − e^{−d})/(ρ − e^{d})` for the
/// external and `(ρ + e^{d})/(ρ + e^{−d})` for the internal center, where
/// `ρ = sinh R / sinh r`. A negative value puts the external center at an
/// ideal point, an infinite one at a point at infinity.
pub fn closed_form_circle_centers(c1: &Cycle, c2: &Cycle) -> Result<SimilitudePair, CycleError> {
    if c1.kind() != CycleKind::Circle || c2.kind() != CycleKind::Circle {
        return Err(CycleError::DegenerateConfiguration("closed form needs two circles"));
    }
    check_distinct(c1, c2)?;
    let r_of = |c: &Cycle| c.radius().to_complex_lossy().re;
    let (small, large) = if r_of(c1) <= r_of(c2) { (c1, c2) } else { (c2, c1) };
    let (o, o2) = (small.center(), large.center());
    let d = o.distance(&o2);
    if d <= 1e-14 {
        return Err(CycleError::ConcentricCycles);
    }
    let rho = r_of(large).sinh() / r_of(small).sinh();
    let (ov, ov2) = (o.rep(), o2.rep());
    let t = (ov2 - ov * d.cosh()) * (1.0 / d.sinh());

    let ext_num = rho - (-d).exp();
    let ext_den = rho - d.exp();
    let external = if ext_den.abs() <= 1e-12 * rho.max(d.exp()) {
        ov - t
    } else {
        let ratio = ext_num / ext_den;
        if ratio > 0.0 {
            let w = ratio.sqrt();
            ov * (w + 1.0 / w) - t * (w - 1.0 / w)
        } else {
            let v = (-ratio).sqrt();
            ov * (v - 1.0 / v) - t * (v + 1.0 / v)
        }
    };
    let w = ((rho + d.exp()) / (rho + (-d).exp())).sqrt();
    let internal = ov * (w + 1.0 / w) + t * (w - 1.0 / w);
    Ok(SimilitudePair {
        external: to_point(external)?,
        internal: to_point(internal)?,
        case_tag: SimilitudeCase::CircleCircle,
    })
}

/// Meets of the common tangent lines: those keeping both insides on one
/// side give the external center, those separating them the internal one.
pub fn tangent_intersection_centers(c1: &Cycle, c2: &Cycle) -> Result<SimilitudePair, CycleError> {
    check_distinct(c1, c2)?;
    let case_tag = SimilitudeCase::of(c1.kind(), c2.kind());
    let (u1, u2) = (weight(c1), weight(c2));
    let k = u1.cross(u2);
    let kk = k.q_self();
    if k.is_zero() || kk <= 0.0 {
        return Err(CycleError::DegenerateConfiguration("centers do not span a real line"));
    }
    let (g11, g12, g22) = (u1.q_self(), u1.q(u2), u2.q_self());
    let det = g11 * g22 - g12 * g12;
    let center = |e2: f64| -> Result<ProjPoint, CycleError> {
        let a = (g22 - g12 * e2) / det;
        let b = (g11 * e2 - g12) / det;
        let l0 = u1 * a + u2 * b;
        let t2 = (1.0 - l0.q_self()) / kk;
        if t2 <= 0.0 {
            return Err(CycleError::NoIntersection);
        }
        let t = t2.sqrt();
        let l1 = ProjLine::new(l0 + k * t)?;
        let l2 = ProjLine::new(l0 - k * t)?;
        Ok(meet(&l1, &l2)?)
    };
    Ok(SimilitudePair { external: center(1.0)?, internal: center(-1.0)?, case_tag })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecantRatio {
    /// `tanh(SM/2) / tanh(SM′/2)` for the first pair of corresponding points.
    pub ratio: Complex64,
    pub deviation: f64,
}

/// Ratio `tanh(SM/2) : tanh(SM′/2)` on one secant through a center of
/// similitude. Points of the two cycles are paired in their order along
/// the secant, reversed when a real `S` separates the two cycles; the
/// deviation is the difference between the ratios of the two pairs.
pub fn secant_ratio_check(s: &ProjPoint, c1: &Cycle, c2: &Cycle, secant: &ProjLine) -> Result<SecantRatio, CycleError> {
    if !secant.contains(s, 1e-9) {
        return Err(CycleError::NotOnChord);
    }
    let values = |c: &Cycle| -> Result<(f64, Vec<Complex64>), CycleError> {
        let hits = line_cycle_intersections(secant, c)?;
        let mid = hits.iter().map(|h| h.0).sum::<f64>() / hits.len() as f64;
        let vals = hits
            .iter()
            .cycle()
            .take(2)
            .map(|(th, p)| half_tanh_along(s, p, *th, secant).map(|v| v.to_complex_lossy()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((mid, vals))
    };
    let ((m1, a), (m2, mut b)) = (values(c1)?, values(c2)?);
    if s.is_real() {
        let ts = line_parameter(secant, s)?;
        if (m1 - ts) * (m2 - ts) < 0.0 {
            b.reverse();
        }
    }
    let first = a[0] / b[0];
    let second = a[1] / b[1];
    Ok(SecantRatio { ratio: first, deviation: (first - second).norm() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilitudeAxes {
    /// Centers for the pairs (1,2), (2,3), (3,1).
    pub centers: [SimilitudePair; 3],
    /// Axes through E₁₂ E₂₃ E₃₁, E₁₂ I₂₃ I₃₁, I₁₂ E₂₃ I₃₁ and I₁₂ I₂₃ E₃₁.
    pub axes: [ProjLine; 4],
    /// Largest normalized incidence of a center with its axis.
    pub residual: f64,
}

fn incidence(l: &ProjLine, p: &ProjPoint) -> f64 {
    l.rep().q(p.rep()).abs() / (l.rep().euclid_norm() * p.rep().euclid_norm())
}

fn axis_through(pts: [ProjPoint; 3]) -> Result<ProjLine, CycleError> {
    let mut best: Option<ProjLine> = None;
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let (a, b) = (pts[i].rep(), pts[j].rep());
        let sep = (a * (1.0 / a.euclid_norm())).cross(b * (1.0 / b.euclid_norm())).euclid_norm();
        if sep > 1e-9 {
            let l = join(&pts[i], &pts[j])?;
            let worse = |l: &ProjLine| pts.iter().map(|p| incidence(l, p)).fold(0.0, f64::max);
            if best.as_ref().is_none_or(|b| worse(&l) < worse(b)) {
                best = Some(l);
            }
        }
    }
    best.ok_or(CycleError::DegenerateConfiguration("coincident centers of similitude"))
}

/// The six centers of similitude of three cycles and the four lines
/// carrying them three by three.
pub fn similitude_axes(c1: &Cycle, c2: &Cycle, c3: &Cycle) -> Result<SimilitudeAxes, CycleError> {
    let centers = [similitude_centers(c1, c2)?, similitude_centers(c2, c3)?, similitude_centers(c3, c1)?];
    let [p12, p23, p31] = centers;
    let triples = [
        [p12.external, p23.external, p31.external],
        [p12.external, p23.internal, p31.internal],
        [p12.internal, p23.external, p31.internal],
        [p12.internal, p23.internal, p31.external],
    ];
    let mut axes = Vec::with_capacity(4);
    let mut residual: f64 = 0.0;
    for t in triples {
        let l = axis_through(t)?;
        residual = t.iter().map(|p| incidence(&l, p)).fold(residual, f64::max);
        axes.push(l);
    }
    let axes: [ProjLine; 4] = axes.try_into().expect("four axes");
    Ok(SimilitudeAxes { centers, axes, residual })
}

/// Category of the external center of two circles predicted by comparing
/// `sinh R / sinh r` with `e^d`.
pub fn predicted_external_category(c1: &Cycle, c2: &Cycle, tol: f64) -> Category {
    let r1 = c1.radius().to_complex_lossy().re;
    let r2 = c2.radius().to_complex_lossy().re;
    let rho = r1.max(r2).sinh() / r1.min(r2).sinh();
    let ed = c1.center().distance(&c2.center()).exp();
    if (rho - ed).abs() <= tol * ed {
        Category::AtInfinity
    } else if rho < ed {
        Category::Ideal
    } else {
        Category::Real
    }
}
