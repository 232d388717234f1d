use serde::{Deserialize, Serialize};

use super::{bform, cycle_from_center_radius, point_vector, Cycle, CycleError, CycleKind, V4};
use crate::extmeasure::{ext_cosh, ExtScalar};
use crate::projplane::{classify_point, MVec, ProjPoint};
use crate::trig::ext_arccosh;

/// Inversion in a cycle: `N′` is the image of `M` when
/// `tanh(SM/2) · tanh(SN′/2)` equals the constant, `S` being the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    mirror: Cycle,
}

impl Inversion {
    /// Inversion fixing the points of `mirror`.
    pub fn from_mirror(mirror: Cycle) -> Result<Self, CycleError> {
        if mirror.kind() == CycleKind::PointCycle {
            return Err(CycleError::DegenerateConfiguration("point cycle as mirror"));
        }
        Ok(Inversion { mirror })
    }

    /// Inversion with the given center and constant; the mirror is the
    /// cycle of radius `ρ` with `tanh²(ρ/2) = power_k`.
    pub fn new(center: &ProjPoint, power_k: ExtScalar) -> Result<Self, CycleError> {
        let k = power_k.to_complex().ok_or(CycleError::ParacycleNeedsPoint)?;
        if k.norm() <= 1e-15 {
            return Err(CycleError::DegenerateConfiguration("zero inversion constant"));
        }
        if (k - 1.0).norm() <= 1e-15 {
            return Err(CycleError::ParacycleNeedsPoint);
        }
        let rho = ext_arccosh((1.0 + k) / (1.0 - k));
        let rho = if rho.re < 0.0 { -rho } else { rho };
        Inversion::from_mirror(cycle_from_center_radius(center, ExtScalar::finite(rho))?)
    }

    pub fn mirror(&self) -> Cycle {
        self.mirror
    }

    pub fn center(&self) -> ProjPoint {
        self.mirror.center()
    }

    pub fn power_k(&self) -> ExtScalar {
        match ext_cosh(self.mirror.radius()).to_complex() {
            Some(ch) => ExtScalar::finite((ch - 1.0) / (ch + 1.0)),
            None => ExtScalar::real(1.0),
        }
    }

    fn reflect(&self, v: &V4) -> V4 {
        let m = self.mirror.unit_vector();
        v - m * (2.0 * bform(v, &m))
    }
}

/// Image of a real point or a point at infinity: the reflection of its
/// null vector in the unit vector of the mirror. Images past the boundary
/// of the plane are reported as `BeyondBoundary`.
pub fn invert_point(inv: &Inversion, m: &ProjPoint) -> Result<ProjPoint, CycleError> {
    let center = inv.center();
    if m.same_as(&center, 1e-12) || m.same_as(&center.flipped(), 1e-12) {
        return Err(CycleError::CenterInput);
    }
    let v = point_vector(m).ok_or(CycleError::UnsupportedPoint)?;
    let w = inv.reflect(&v);
    let u = MVec::new(w[0], w[1], w[2]);
    let rep = if w[3].abs() <= 1e-12 * u.euclid_norm() { u } else { u * (-1.0 / w[3]) };
    if rep.z < 0.0 {
        return Err(CycleError::BeyondBoundary);
    }
    Ok(classify_point(rep, 1e-6)?)
}

/// Image of an oriented cycle. Points of `c` whose images fall beyond the
/// boundary are lost; `EmptyCycle` when none remain.
pub fn invert_cycle(inv: &Inversion, c: &Cycle) -> Result<Cycle, CycleError> {
    Cycle::from_vector(&inv.reflect(&c.vector()))
}

/// Inversion exchanging two cycles, centered at their external center of similitude.
pub fn inversion_swapping(c1: &Cycle, c2: &Cycle) -> Result<Inversion, CycleError> {
    let (x1, x2) = (c1.canonical().unit_vector(), c2.canonical().unit_vector());
    if c1.kind() == CycleKind::PointCycle || c2.kind() == CycleKind::PointCycle {
        return Err(CycleError::NoExternalCenter);
    }
    let i = bform(&x1, &x2);
    if i >= 1.0 - 1e-12 {
        return Err(if (x1 - x2).norm() <= 1e-12 { CycleError::IdenticalCycles } else { CycleError::NoExternalCenter });
    }
    let m = (x1 - x2) / (2.0 - 2.0 * i).sqrt();
    let mirror = Cycle::from_vector(&m).map_err(|_| CycleError::NoExternalCenter)?;
    Inversion::from_mirror(mirror)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{tangency, TangencyKind};
    use num_complex::Complex64;

    fn half_tanh(z: Complex64) -> Complex64 {
        (z / 2.0).tanh()
    }

    fn circle(d: f64, th: f64, r: f64) -> Cycle {
        cycle_from_center_radius(&ProjPoint::real_at(d, th), ExtScalar::real(r)).unwrap()
    }

    #[test]
    fn tanh_product_for_real_center() {
        let s = ProjPoint::real_at(0.5, 0.2);
        let inv = Inversion::new(&s, ExtScalar::real(0.3)).unwrap();
        assert!(inv.power_k().approx_eq(ExtScalar::real(0.3), 1e-12));
        let m = ProjPoint::real_at(0.9, 1.4);
        let n = invert_point(&inv, &m).unwrap();
        let prod = half_tanh(Complex64::from(s.distance(&m))) * half_tanh(Complex64::from(s.distance(&n)));
        assert!((prod.re - 0.3).abs() < 1e-12);
        let back = invert_point(&inv, &n).unwrap();
        assert!(back.same_as(&m, 1e-12));
        assert!(crate::projplane::join(&s, &m).unwrap().contains(&n, 1e-10));
    }

    #[test]
    fn mirror_points_fixed() {
        let inv = Inversion::from_mirror(circle(0.3, 0.0, 0.7)).unwrap();
        for p in inv.mirror().sample_points(8) {
            assert!(invert_point(&inv, &p).unwrap().same_as(&p, 1e-10));
        }
        assert_eq!(invert_point(&inv, &inv.center()), Err(CycleError::CenterInput));
    }

    #[test]
    fn swapping_inversion() {
        let a = circle(0.8, 0.3, 0.4);
        let b = circle(1.1, 2.5, 0.25);
        let inv = inversion_swapping(&a, &b).unwrap();
        let img = invert_cycle(&inv, &a).unwrap();
        assert!((img.unit_vector() - b.canonical().unit_vector()).norm() < 1e-10);
        for p in a.sample_points(10) {
            assert!(b.contains(&invert_point(&inv, &p).unwrap(), 1e-9));
        }
        let t1 = circle(0.0, 0.0, 0.5);
        let t2 = circle(0.8, 0.0, 0.3);
        assert_eq!(tangency(&t1, &t2).1, TangencyKind::External);
        let inv = inversion_swapping(&t1, &t2).unwrap();
        assert!(inv.mirror().contains(&ProjPoint::real_at(0.5, 0.0), 1e-10));
    }
}
