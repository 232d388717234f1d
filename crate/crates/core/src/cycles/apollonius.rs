use nalgebra::{Matrix3, Matrix4};
use serde::{Deserialize, Serialize};

use super::{bform, gmul, point_vector, vector_point, Cycle, CycleError, CycleKind, V4};

/// Side on which a solution touches a given cycle, relative to the
/// orientation the cycle was given with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Touch {
    /// Insides disjoint.
    External,
    /// One inside contains the other.
    Internal,
}

impl Touch {
    fn target(self) -> f64 {
        match self {
            Touch::External => -1.0,
            Touch::Internal => 1.0,
        }
    }
}

struct Constraint {
    row: V4,
    target: f64,
    point: bool,
}

fn constraint(c: &Cycle, t: Touch) -> Result<Constraint, CycleError> {
    if c.kind() == CycleKind::PointCycle {
        let row = point_vector(&c.center()).ok_or(CycleError::NoSolution)?;
        return Ok(Constraint { row, target: 0.0, point: true });
    }
    Ok(Constraint { row: c.unit_vector(), target: t.target(), point: false })
}

/// Null direction of three vectors under the form `B`.
fn null_direction(rows: &[V4; 3]) -> V4 {
    let g: Vec<V4> = rows.iter().map(gmul).collect();
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        Matrix3::from_fn(|r, c| g[r][cols[c]]).determinant()
    };
    V4::new(minor(0), -minor(1), minor(2), -minor(3))
}

fn polish(x: V4, cons: &[Constraint; 3]) -> V4 {
    let mut x = x;
    for _ in 0..12 {
        let f = V4::new(
            bform(&x, &cons[0].row) - cons[0].target,
            bform(&x, &cons[1].row) - cons[1].target,
            bform(&x, &cons[2].row) - cons[2].target,
            0.5 * (bform(&x, &x) - 1.0),
        );
        let gx = gmul(&x);
        let rows = [gmul(&cons[0].row), gmul(&cons[1].row), gmul(&cons[2].row), gx];
        let j = Matrix4::from_fn(|r, c| rows[r][c]);
        let Some(dx) = j.lu().solve(&(-f)) else { break };
        x += dx;
        if dx.norm() <= 1e-16 * x.norm() {
            break;
        }
    }
    x
}

/// Cycles touching three given cycles on the requested sides.
///
/// A point cycle asks for a solution through that point. The tangency
/// conditions are linear in the four coordinates of the solution, so the
/// candidates are the intersections of a line with the quadric `B(X, X) = 1`,
/// refined by Newton's method. Only cycles with real points and real
/// contacts are kept, ordered by the radius of their disk image.
pub fn tangent_cycles(c1: &Cycle, c2: &Cycle, c3: &Cycle, touch: [Touch; 3]) -> Result<Vec<Cycle>, CycleError> {
    let cons = [constraint(c1, touch[0])?, constraint(c2, touch[1])?, constraint(c3, touch[2])?];
    let rows = [cons[0].row, cons[1].row, cons[2].row];
    let k = null_direction(&rows);
    let scale = rows.iter().map(|r| r.norm()).product::<f64>();
    if k.norm() <= 1e-12 * scale {
        return Err(CycleError::NoSolution);
    }
    let k = k / k.norm();
    let a = Matrix4::from_fn(|r, c| if r < 3 { gmul(&rows[r])[c] } else { k[c] });
    let rhs = V4::new(cons[0].target, cons[1].target, cons[2].target, 0.0);
    let x0 = a.lu().solve(&rhs).ok_or(CycleError::NoSolution)?;

    let qa = bform(&k, &k);
    let qb = 2.0 * bform(&x0, &k);
    let qc = bform(&x0, &x0) - 1.0;
    let mut ts = Vec::new();
    if qa.abs() <= 1e-12 * (qb.abs() + qc.abs()) {
        if qb != 0.0 {
            ts.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < -1e-10 * (qb * qb + (4.0 * qa * qc).abs()) {
            return Err(CycleError::NoSolution);
        }
        let root = disc.max(0.0).sqrt();
        ts.push((-qb - root) / (2.0 * qa));
        ts.push((-qb + root) / (2.0 * qa));
    }

    let mut out: Vec<Cycle> = Vec::new();
    for t in ts {
        let x = polish(x0 + k * t, &cons);
        let Ok(c) = Cycle::from_vector(&x) else { continue };
        if c.kind() == CycleKind::PointCycle {
            continue;
        }
        let contacts_real = cons
            .iter()
            .filter(|cn| !cn.point)
            .all(|cn| vector_point(&(x - cn.row * cn.target)).is_some_and(|p| p.is_real()));
        if contacts_real {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(CycleError::NoSolution);
    }
    out.sort_by(|a, b| a.disk_radius().total_cmp(&b.disk_radius()));
    Ok(out)
}
