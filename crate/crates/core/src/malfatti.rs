//! Steiner's construction of three cycles touching each other and two of
//! three given cycles, and a direct Newton solver used to check it.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{
    bform, contact_point, cycle_from_center_radius, gmul, inversive_product, tangency, tangent_cycles, Cycle,
    CycleError, CycleKind, Inversion, TangencyKind, Touch, V4,
};
use crate::extmeasure::ExtScalar;
use crate::projplane::{join, ProjPoint};

/// Tangency residual accepted for constructed cycles.
pub const ACCEPT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MalfattiError {
    #[error("given cycles {0} and {1} overlap")]
    Overlapping(usize, usize),
    #[error("given cycles {0} and {1} touch from inside")]
    InternallyTangent(usize, usize),
    #[error("given cycles {0} and {1} have no external center of similitude")]
    NoExternalCenter(usize, usize),
    #[error("no cycle satisfies the conditions of step {0}")]
    NoSolution(u8),
    #[error("the fourth tangency of the last step fails (residual {0:e})")]
    FourthTangencyFailed(f64),
    #[error("Newton iteration did not converge (residual {0:e})")]
    NoConvergence(f64),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Three given cycles with pairwise disjoint insides. Two lines may cross,
/// which admits the sides of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MalfattiInstance {
    cycles: [Cycle; 3],
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];

/// Index of the pair `{i, j}` in [`PAIRS`].
fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&(a, b)| (a, b) == (i, j) || (b, a) == (i, j)).expect("distinct indices")
}

impl MalfattiInstance {
    pub fn new(c1: Cycle, c2: Cycle, c3: Cycle) -> Result<Self, MalfattiError> {
        let cycles = [c1, c2, c3];
        for (i, j) in PAIRS {
            let (a, b) = (&cycles[i], &cycles[j]);
            if a.kind() == CycleKind::PointCycle || b.kind() == CycleKind::PointCycle {
                return Err(CycleError::DegenerateConfiguration("point cycle given").into());
            }
            let (_, kind) = tangency(a, b);
            if kind == TangencyKind::Internal {
                return Err(MalfattiError::InternallyTangent(i, j));
            }
            if !(a.is_line() && b.is_line()) && inversive_product(a, b) > -1.0 + 1e-9 && kind != TangencyKind::External
            {
                return Err(MalfattiError::Overlapping(i, j));
            }
        }
        Ok(MalfattiInstance { cycles })
    }

    pub fn cycles(&self) -> [Cycle; 3] {
        self.cycles
    }
}

/// Center, direction and radius of a given circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub distance: f64,
    pub angle: f64,
    pub radius: f64,
}

impl CircleSpec {
    pub fn cycle(&self) -> Result<Cycle, CycleError> {
        cycle_from_center_radius(&ProjPoint::real_at(self.distance, self.angle), ExtScalar::real(self.radius))
    }

    fn lerp(&self, o: &CircleSpec, t: f64) -> CircleSpec {
        CircleSpec {
            distance: self.distance + t * (o.distance - self.distance),
            angle: self.angle + t * (o.angle - self.angle),
            radius: self.radius + t * (o.radius - self.radius),
        }
    }
}

pub fn circles_instance(specs: &[CircleSpec; 3]) -> Result<MalfattiInstance, MalfattiError> {
    MalfattiInstance::new(specs[0].cycle()?, specs[1].cycle()?, specs[2].cycle()?)
}

/// Three circles of radius `r` with centers at distance `d` from the
/// origin in the directions `0, 2π/3, 4π/3`.
pub fn symmetric_specs(d: f64, r: f64) -> [CircleSpec; 3] {
    [0, 1, 2].map(|k| CircleSpec { distance: d, angle: 2.0 * PI * k as f64 / 3.0, radius: r })
}

/// Gap `d − r₁ − r₂` between two circles.
pub fn separation(a: &CircleSpec, b: &CircleSpec) -> f64 {
    let d = ProjPoint::real_at(a.distance, a.angle).distance(&ProjPoint::real_at(b.distance, b.angle));
    d - a.radius - b.radius
}

/// Random instance near the symmetric one: directions perturbed by up to
/// 0.35, distances in `[0.8, 1.6]`, radii in `[0.15, 0.45]`, resampled
/// until every gap is at least 0.1. `uniform` yields numbers in `[0, 1)`.
pub fn random_specs(mut uniform: impl FnMut() -> f64) -> [CircleSpec; 3] {
    loop {
        let specs = [0, 1, 2].map(|k| CircleSpec {
            distance: 0.8 + 0.8 * uniform(),
            angle: 2.0 * PI * k as f64 / 3.0 + 0.7 * (uniform() - 0.5),
            radius: 0.15 + 0.3 * uniform(),
        });
        let ok = PAIRS.iter().all(|&(i, j)| {
            let (a, b) = (&specs[i], &specs[j]);
            separation(a, b) >= 0.1 && a.radius.max(b.radius) <= 3.0 * a.radius.min(b.radius)
        });
        if ok {
            return specs;
        }
    }
}

/// The side lines of a triangle oriented with the triangle outside their
/// insides; side `i` lies opposite vertex `i`.
pub fn triangle_instance(vertices: &[ProjPoint; 3]) -> Result<MalfattiInstance, MalfattiError> {
    let mut sides = Vec::with_capacity(3);
    for i in 0..3 {
        let line = join(&vertices[(i + 1) % 3], &vertices[(i + 2) % 3]).map_err(CycleError::from)?;
        let c = Cycle::line(&line)?;
        let c = if c.side(&vertices[i]) > 0.0 { c.reversed() } else { c };
        sides.push(c);
    }
    MalfattiInstance::new(sides[0], sides[1], sides[2])
}

/// Vertices of an equilateral triangle at distance `d` from the origin.
pub fn equilateral_vertices(d: f64) -> [ProjPoint; 3] {
    [0, 1, 2].map(|k| ProjPoint::real_at(d, PI / 2.0 + 2.0 * PI * k as f64 / 3.0))
}

/// Inversion cycles of the three pairs `(1,2), (2,3), (3,1)`, each centered
/// at the external center of similitude and exchanging the pair with
/// their orientations.
pub fn steiner_step1(inst: &MalfattiInstance) -> Result<[Inversion; 3], MalfattiError> {
    let c = &inst.cycles;
    let mut out = Vec::with_capacity(3);
    for (i, j) in PAIRS {
        let (x, y) = (c[i].unit_vector(), c[j].unit_vector());
        let b = bform(&x, &y);
        let mirror = Cycle::from_vector(&((x - y) / (2.0 - 2.0 * b).sqrt()))
            .map_err(|_| MalfattiError::NoExternalCenter(i, j))?;
        if !(c[i].is_line() && c[j].is_line()) && !separates(&mirror, &c[i], &c[j]) {
            return Err(MalfattiError::NoExternalCenter(i, j));
        }
        out.push(Inversion::from_mirror(mirror)?);
    }
    Ok(out.try_into().expect("three pairs"))
}

/// Side of `mirror` on which the points of `c` lie away from any contact.
fn side_of(mirror: &Cycle, c: &Cycle) -> f64 {
    side_of_points(mirror, &c.sample_points(24))
}

fn side_of_points(mirror: &Cycle, pts: &[ProjPoint]) -> f64 {
    let s = pts.iter().map(|p| mirror.side(p)).fold(0.0, |best: f64, v| if v.abs() > best.abs() { v } else { best });
    s.signum()
}

/// Whether the mirror has `a` and `b` strictly on opposite sides.
pub fn separates(mirror: &Cycle, a: &Cycle, b: &Cycle) -> bool {
    let one = |c: &Cycle| {
        let s: Vec<f64> = c.sample_points(24).iter().map(|p| mirror.side(p)).collect();
        if s.iter().all(|v| *v > 0.0) {
            1
        } else if s.iter().all(|v| *v < 0.0) {
            -1
        } else {
            0
        }
    };
    let (x, y) = (one(a), one(b));
    x != 0 && y != 0 && x != y
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepTwo {
    /// `k_j` touching the mirrors of the two pairs containing `j` and the given `c_j`.
    pub k: [Cycle; 3],
    /// Candidates dropped for lying on the wrong side of a mirror.
    pub rejected: usize,
}

/// Cycles `k_j` touching the two inversion cycles through `j` and the
/// given cycle `c_j` from outside, on the side of each mirror where the
/// part of `c_j` outside the other two given cycles lies.
pub fn steiner_step2(inst: &MalfattiInstance, mirrors: &[Inversion; 3]) -> Result<StepTwo, MalfattiError> {
    let c = &inst.cycles;
    let mut rejected = 0;
    let mut k = Vec::with_capacity(3);
    for j in 0..3 {
        let (i, l) = ((j + 2) % 3, (j + 1) % 3);
        let m1 = mirrors[pair_index(i, j)].mirror();
        let m2 = mirrors[pair_index(j, l)].mirror();
        let free: Vec<ProjPoint> =
            c[j].sample_points(400).into_iter().filter(|p| c[i].side(p) < 0.0 && c[l].side(p) < 0.0).collect();
        if free.is_empty() {
            return Err(MalfattiError::NoSolution(2));
        }
        let (s1, s2) = (side_of_points(&m1, &free), side_of_points(&m2, &free));
        let mut found: Vec<Cycle> = Vec::new();
        for f1 in [Touch::External, Touch::Internal] {
            for f2 in [Touch::External, Touch::Internal] {
                let Ok(sols) = tangent_cycles(&m1, &m2, &c[j], [f1, f2, Touch::External]) else { continue };
                for s in sols {
                    if side_of(&m1, &s) == s1 && side_of(&m2, &s) == s2 {
                        found.push(s);
                    } else {
                        rejected += 1;
                    }
                }
            }
        }
        found.sort_by(|a, b| a.disk_radius().total_cmp(&b.disk_radius()));
        k.push(*found.first().ok_or(MalfattiError::NoSolution(2))?);
    }
    Ok(StepTwo { k: k.try_into().expect("three cycles"), rejected })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepThree {
    /// `P_k`, the contact of `k_k` with `c_k`.
    pub points: [ProjPoint; 3],
    /// Candidates for `l_ij` of the pairs `(1,2), (2,3), (3,1)`: cycles
    /// through `P_k` touching `k_i` and `k_j` from opposite sides.
    pub l: [Vec<Cycle>; 3],
}

/// The cycles `l_ij`. When the mirror of the pair passes through `P_k` the
/// two common tangents through `P_k` coincide and the mirror is taken.
pub fn steiner_step3(
    inst: &MalfattiInstance,
    mirrors: &[Inversion; 3],
    k: &[Cycle; 3],
) -> Result<StepThree, MalfattiError> {
    let c = &inst.cycles;
    let mut points = Vec::with_capacity(3);
    for j in 0..3 {
        points.push(contact_point(&k[j], &c[j]).ok_or(MalfattiError::NoSolution(3))?);
    }
    let mut l: Vec<Vec<Cycle>> = Vec::with_capacity(3);
    for (i, j) in PAIRS {
        let p = points[3 - i - j];
        let pc = Cycle::point(&p)?;
        let mirror = mirrors[pair_index(i, j)].mirror();
        let mut sols =
            tangent_cycles(&k[i], &k[j], &pc, [Touch::External, Touch::Internal, Touch::External]).unwrap_or_default();
        if mirror.contains(&p, 1e-9) {
            sols.extend([mirror, mirror.reversed()]);
        }
        if sols.is_empty() {
            return Err(MalfattiError::NoSolution(3));
        }
        l.push(sols);
    }
    Ok(StepThree { points: points.try_into().expect("three points"), l: l.try_into().expect("three pairs") })
}

/// Candidates for `m_j` touching `c_i`, `c_k` from outside and `l_ij`,
/// kept when they also touch `l_jk`.
fn last_step_candidates(inst: &MalfattiInstance, j: usize, l_ij: &Cycle, l_jk: &Cycle) -> Vec<(Cycle, f64)> {
    let c = &inst.cycles;
    let (i, k) = ((j + 2) % 3, (j + 1) % 3);
    let mut out = Vec::new();
    for f in [Touch::External, Touch::Internal] {
        let Ok(sols) = tangent_cycles(&c[i], &c[k], l_ij, [Touch::External, Touch::External, f]) else { continue };
        for s in sols {
            let r = tangency(&s, l_jk).0;
            out.push((s, r));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFour {
    pub m: [Cycle; 3],
    /// The chosen `l_ij` for the pairs `(1,2), (2,3), (3,1)`.
    pub l: [Cycle; 3],
    /// Largest residual of the fourth tangency over the three cycles.
    pub fourth_residual: f64,
}

/// Cycles `m_j` touching `l_ij`, `l_jk`, `c_i` and `c_k`: solved from the
/// first three conditions and checked on the fourth. Among the candidates
/// for the `l` cycles the combination whose `m` cycles touch each other
/// from outside and stay off the inside of the remaining given cycle is taken.
pub fn steiner_step4(inst: &MalfattiInstance, step3: &StepThree) -> Result<StepFour, MalfattiError> {
    let mut best: Option<(f64, StepFour)> = None;
    let mut best_fourth = f64::INFINITY;
    let counts = step3.l.iter().map(Vec::len).collect::<Vec<_>>();
    for a in 0..counts[0] {
        for b in 0..counts[1] {
            for c in 0..counts[2] {
                let l = [step3.l[0][a], step3.l[1][b], step3.l[2][c]];
                let cands: Vec<Vec<(Cycle, f64)>> = (0..3)
                    .map(|j| {
                        let l_ij = l[pair_index((j + 2) % 3, j)];
                        let l_jk = l[pair_index(j, (j + 1) % 3)];
                        last_step_candidates(inst, j, &l_ij, &l_jk)
                    })
                    .collect();
                for m0 in &cands[0] {
                    for m1 in &cands[1] {
                        for m2 in &cands[2] {
                            let m = [m0.0, m1.0, m2.0];
                            let fourth = m0.1.max(m1.1).max(m2.1);
                            best_fourth = best_fourth.min(fourth);
                            if fourth > ACCEPT_TOL {
                                continue;
                            }
                            if (0..3).any(|j| inversive_product(&m[j], &inst.cycles[j]) > -1.0 + ACCEPT_TOL) {
                                continue;
                            }
                            let mutual = PAIRS
                                .iter()
                                .map(|&(x, y)| (inversive_product(&m[x], &m[y]) + 1.0).abs())
                                .fold(0.0, f64::max);
                            let score = mutual.max(fourth);
                            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                                best = Some((score, StepFour { m, l, fourth_residual: fourth }));
                            }
                        }
                    }
                }
            }
        }
    }
    match best {
        Some((score, sol)) if score <= ACCEPT_TOL => Ok(sol),
        Some((score, _)) => Err(MalfattiError::FourthTangencyFailed(score)),
        None => Err(MalfattiError::FourthTangencyFailed(best_fourth)),
    }
}

/// Output of the construction with its intermediate cycles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MalfattiSolution {
    pub m: [Cycle; 3],
    pub mirrors: [Cycle; 3],
    pub k: [Cycle; 3],
    pub points: [ProjPoint; 3],
    pub l: [Cycle; 3],
    pub rejected_step2: usize,
}

pub fn steiner_construction(inst: &MalfattiInstance) -> Result<MalfattiSolution, MalfattiError> {
    let mirrors = steiner_step1(inst)?;
    let two = steiner_step2(inst, &mirrors)?;
    let three = steiner_step3(inst, &mirrors, &two.k)?;
    let four = steiner_step4(inst, &three)?;
    Ok(MalfattiSolution {
        m: four.m,
        mirrors: mirrors.map(|m| m.mirror()),
        k: two.k,
        points: three.points,
        l: four.l,
        rejected_step2: two.rejected,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangencyCheck {
    pub label: String,
    pub residual: f64,
    pub kind: TangencyKind,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MalfattiReport {
    /// The nine required tangencies: three between the solution cycles and
    /// six with the given cycles.
    pub checks: Vec<TangencyCheck>,
    /// `B(m_j, c_j)`: at most `−1` when `m_j` keeps off the inside of the
    /// given cycle it does not touch.
    pub clearance: [f64; 3],
}

impl MalfattiReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.checks.len()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failing(&self) -> Vec<&TangencyCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks that `m_j` touches the other two and the given `c_i`, `c_k`
/// from outside.
pub fn verify_malfatti(m: &[Cycle; 3], inst: &MalfattiInstance, tol: f64) -> MalfattiReport {
    let c = &inst.cycles;
    let mut checks = Vec::with_capacity(9);
    let mut push = |label: String, a: &Cycle, b: &Cycle| {
        let residual = (inversive_product(a, b) + 1.0).abs();
        let (_, kind) = tangency(a, b);
        checks.push(TangencyCheck { label, residual, kind, passed: residual < tol && kind == TangencyKind::External });
    };
    for (i, j) in PAIRS {
        push(format!("m{} ~ m{}", i + 1, j + 1), &m[i], &m[j]);
    }
    for j in 0..3 {
        for g in [(j + 2) % 3, (j + 1) % 3] {
            push(format!("m{} ~ c{}", j + 1, g + 1), &m[j], &c[g]);
        }
    }
    let clearance = [0, 1, 2].map(|j| inversive_product(&m[j], &c[j]));
    MalfattiReport { checks, clearance }
}

fn residuals(x: &[V4; 3], given: &[V4; 3]) -> DVector<f64> {
    let mut f = DVector::zeros(12);
    let mut r = 0;
    for j in 0..3 {
        f[r] = bform(&x[j], &x[j]) - 1.0;
        r += 1;
        for g in [(j + 2) % 3, (j + 1) % 3] {
            f[r] = bform(&x[j], &given[g]) + 1.0;
            r += 1;
        }
    }
    for (i, j) in PAIRS {
        f[r] = bform(&x[i], &x[j]) + 1.0;
        r += 1;
    }
    f
}

fn jacobian(x: &[V4; 3], given: &[V4; 3]) -> DMatrix<f64> {
    let mut jm = DMatrix::zeros(12, 12);
    let mut set = |row: usize, var: usize, grad: V4| {
        for c in 0..4 {
            jm[(row, 4 * var + c)] += grad[c];
        }
    };
    let mut r = 0;
    for j in 0..3 {
        set(r, j, gmul(&x[j]) * 2.0);
        r += 1;
        for g in [(j + 2) % 3, (j + 1) % 3] {
            set(r, j, gmul(&given[g]));
            r += 1;
        }
    }
    for (i, j) in PAIRS {
        set(r, i, gmul(&x[j]));
        set(r, j, gmul(&x[i]));
        r += 1;
    }
    jm
}

/// Newton's method on the twelve equations `B(m_j, m_j) = 1`,
/// `B(m_j, c_g) = −1` for the two given cycles of `m_j`, and
/// `B(m_i, m_j) = −1`, started from `seed`.
pub fn newton_malfatti(inst: &MalfattiInstance, seed: &[Cycle; 3]) -> Result<[Cycle; 3], MalfattiError> {
    let given = inst.cycles.map(|c| c.unit_vector());
    let mut x = seed.map(|c| c.unit_vector());
    let mut norm = f64::INFINITY;
    for _ in 0..50 {
        let f = residuals(&x, &given);
        norm = f.amax();
        if norm <= 1e-13 {
            break;
        }
        let dx = jacobian(&x, &given).lu().solve(&(-f)).ok_or(MalfattiError::NoConvergence(norm))?;
        for j in 0..3 {
            for c in 0..4 {
                x[j][c] += dx[4 * j + c];
            }
        }
    }
    if norm > 1e-10 {
        return Err(MalfattiError::NoConvergence(norm));
    }
    let mut out = Vec::with_capacity(3);
    for v in x {
        out.push(Cycle::from_vector(&v)?);
    }
    Ok(out.try_into().expect("three cycles"))
}

/// Follows the solution of `newton_malfatti` along `path` from `t = 0`,
/// where `start` solves it, to `t = 1` in `steps` equal steps.
pub fn continue_solution(
    path: impl Fn(f64) -> Result<MalfattiInstance, MalfattiError>,
    start: &[Cycle; 3],
    steps: usize,
) -> Result<[Cycle; 3], MalfattiError> {
    let mut sol = *start;
    for s in 1..=steps {
        sol = newton_malfatti(&path(s as f64 / steps as f64)?, &sol)?;
    }
    Ok(sol)
}

/// Solution for a configuration with threefold symmetry about the origin:
/// `m_j` sits on the ray `direction(j)` at distance `ρ` with radius `s`,
/// and `(ρ, s)` solves the two tangency conditions to `c_i` and `m_k`.
fn symmetric_solution(
    inst: &MalfattiInstance,
    direction: impl Fn(usize) -> f64,
    guess: (f64, f64),
) -> Result<[Cycle; 3], MalfattiError> {
    let build = |rho: f64, s: f64| -> Result<[Cycle; 3], MalfattiError> {
        let mut out = Vec::with_capacity(3);
        for j in 0..3 {
            out.push(cycle_from_center_radius(&ProjPoint::real_at(rho, direction(j)), ExtScalar::real(s))?);
        }
        Ok(out.try_into().expect("three cycles"))
    };
    let c = &inst.cycles;
    let f = |rho: f64, s: f64| -> Result<[f64; 2], MalfattiError> {
        let m = build(rho, s)?;
        Ok([inversive_product(&m[0], &c[2]) + 1.0, inversive_product(&m[0], &m[1]) + 1.0])
    };
    let (mut rho, mut s) = guess;
    for _ in 0..60 {
        let v = f(rho, s)?;
        if v[0].abs().max(v[1].abs()) <= 1e-14 {
            break;
        }
        let h = 1e-7;
        let dr = f(rho + h, s)?;
        let ds = f(rho, s + h)?;
        let j = [[(dr[0] - v[0]) / h, (ds[0] - v[0]) / h], [(dr[1] - v[1]) / h, (ds[1] - v[1]) / h]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let step_r = (v[0] * j[1][1] - v[1] * j[0][1]) / det;
        let step_s = (j[0][0] * v[1] - j[1][0] * v[0]) / det;
        rho -= step_r;
        s -= step_s;
    }
    newton_malfatti(inst, &build(rho, s)?)
}

/// Direct solution for three equal circles in symmetric position.
pub fn symmetric_circles_solution(d: f64, r: f64) -> Result<[Cycle; 3], MalfattiError> {
    let inst = circles_instance(&symmetric_specs(d, r))?;
    // m_j lies opposite c_j, touching c_i and c_k
    symmetric_solution(&inst, |j| 2.0 * PI * j as f64 / 3.0 + PI, (0.3 * d, 0.3 * d))
}

/// Direct solution for the equilateral triangle of [`equilateral_vertices`].
pub fn equilateral_triangle_solution(d: f64) -> Result<[Cycle; 3], MalfattiError> {
    let inst = triangle_instance(&equilateral_vertices(d))?;
    // m_j sits in the corner at vertex j
    symmetric_solution(&inst, |j| PI / 2.0 + 2.0 * PI * j as f64 / 3.0, (0.5 * d, 0.2 * d))
}

/// Solves an instance of given circles by continuation from the symmetric
/// instance with distance `1.2` and radius `0.3`.
pub fn direct_circles_solution(target: &[CircleSpec; 3], steps: usize) -> Result<[Cycle; 3], MalfattiError> {
    let start_specs = symmetric_specs(1.2, 0.3);
    let start = symmetric_circles_solution(1.2, 0.3)?;
    continue_solution(
        |t| {
            let s = [0, 1, 2].map(|k| start_specs[k].lerp(&target[k], t));
            circles_instance(&s)
        },
        &start,
        steps,
    )
}

/// Solves a triangle instance by continuation from the equilateral
/// triangle with vertices at distance `1.5`, moving the vertices in polar
/// coordinates.
pub fn direct_triangle_solution(target: &[(f64, f64); 3], steps: usize) -> Result<[Cycle; 3], MalfattiError> {
    let d0 = 1.5;
    let start = equilateral_triangle_solution(d0)?;
    continue_solution(
        |t| {
            let v = [0, 1, 2].map(|k| {
                let th0 = PI / 2.0 + 2.0 * PI * k as f64 / 3.0;
                let (d, th) = target[k];
                ProjPoint::real_at(d0 + t * (d - d0), th0 + t * (th - th0))
            });
            triangle_instance(&v)
        },
        &start,
        steps,
    )
}

/// Largest distance between corresponding unit vectors of two triples,
/// the orientation of each cycle ignored.
pub fn solution_distance(a: &[Cycle; 3], b: &[Cycle; 3]) -> f64 {
    (0..3)
        .map(|j| {
            let (u, v) = (a[j].unit_vector(), b[j].unit_vector());
            (u - v).norm().min((u + v).norm())
        })
        .fold(0.0, f64::max)
}
