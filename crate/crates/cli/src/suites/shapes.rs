use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hypgeo_core::extmeasure::ExtScalar;
use hypgeo_core::projplane::{meet, polar, segment_lengths};
use hypgeo_core::trig::{extended_sine_check, pentagon_solve, Pentagon, SineCase};
use hypgeo_core::{MVec, ProjLine, ProjPoint};

use super::{CheckConfig, SuiteResult, Tally};

fn turn(v: MVec, phi: f64) -> MVec {
    MVec::new(v.x * phi.cos() - v.y * phi.sin(), v.x * phi.sin() + v.y * phi.cos(), v.z)
}

fn point(v: MVec, phi: f64) -> ProjPoint {
    ProjPoint::new(turn(v, phi)).expect("nonzero")
}

/// Pole of the perpendicular to the first axis at distance `s`.
fn ideal_on_x(s: f64) -> MVec {
    MVec::new(s.cosh(), 0.0, s.sinh())
}

fn ideal_on_y(t: f64) -> MVec {
    MVec::new(0.0, t.cosh(), t.sinh())
}

/// Right triangles at the origin in every vertex configuration, turned
/// by a random angle.
pub(crate) fn extended_sine(n: usize, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> SuiteResult {
    use SineCase::*;
    let mut t = Tally::new("extended sine", 1e-10, cfg);
    let origin = ProjPoint::real_at(0.0, 0.0);
    for _ in 0..n {
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut r = |lo: f64, hi: f64| rng.gen_range(lo..hi);
        let (x, y, s, u) = (r(0.2, 2.0), r(0.2, 2.0), r(0.3, 1.5), r(0.3, 1.5));
        let (ps, pt) = (r(1.0, 2.0), r(1.0, 2.0));
        let (hs, ht) = (r(0.2, 0.6), r(0.2, 0.6));
        let at_x = MVec::boundary_point(0.0);
        let cases = [
            (AllReal, MVec::real_point(x, 0.0), MVec::real_point(y, FRAC_PI_2)),
            (InfiniteVertex, at_x, MVec::real_point(y, FRAC_PI_2)),
            (InfiniteVertex, at_x, MVec::boundary_point(FRAC_PI_2)),
            (IdealVertex, ideal_on_x(s), MVec::real_point(y, FRAC_PI_2)),
            (IdealVertex, -ideal_on_x(s), MVec::real_point(y, FRAC_PI_2)),
            (IdealVertex, MVec::real_point(x, 0.0), ideal_on_y(u)),
            (InfiniteAndIdeal, at_x, ideal_on_y(u)),
            (Pentagon, ideal_on_x(ps), ideal_on_y(pt)),
            (IdealHypotenuse, ideal_on_x(hs), ideal_on_y(ht)),
            (HypotenuseAtInfinity, at_x, MVec::new(0.0, 1.0, 0.0)),
        ];
        for (case, a, b) in cases {
            match extended_sine_check(&point(a, phi), &point(b, phi), &origin) {
                Ok(rep) => {
                    t.case(match rep.outcome {
                        hypgeo_core::trig::SineOutcome::Residual(r) => r,
                        _ => 0.0,
                    });
                    t.require(rep.case == case, || format!("{case:?} classified as {:?}", rep.case));
                }
                Err(e) => {
                    t.case(0.0);
                    t.require(false, || format!("{case:?}: {e}"));
                }
            }
        }
    }
    t.finish()
}

fn length(p: &ProjPoint, q: &ProjPoint) -> Option<f64> {
    segment_lengths(p, q).ok()?.forward.re().finite()
}

/// Pentagon with right angles built from two perpendicular sides `a`,
/// `b` at the origin; the other sides are measured.
fn build_pentagon(a: f64, b: f64, phi: f64) -> Option<Pentagon> {
    let o = ProjPoint::real_at(0.0, 0.0);
    let pa = point(MVec::real_point(a, 0.0), phi);
    let pb = point(MVec::real_point(b, FRAC_PI_2), phi);
    let side_a = ProjLine::new(turn(ideal_on_x(a), phi)).ok()?;
    let side_b = ProjLine::new(turn(ideal_on_y(b), phi)).ok()?;
    let far = polar(&meet(&side_a, &side_b).ok()?);
    let va = meet(&side_a, &far).ok()?;
    let vb = meet(&side_b, &far).ok()?;
    Some(Pentagon {
        a: length(&o, &pa)?,
        b: length(&o, &pb)?,
        c: length(&vb, &pb)?,
        d: length(&va, &vb)?,
        e: length(&pa, &va)?,
    })
}

pub(crate) fn pentagons(n: usize, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> SuiteResult {
    let mut t = Tally::new("right-angled pentagons", 1e-12, cfg);
    let mut built = 0;
    while built < n {
        let (a, b): (f64, f64) = (rng.gen_range(0.9..2.5), rng.gen_range(0.9..2.5));
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        if a.sinh() * b.sinh() <= 1.05 {
            continue;
        }
        built += 1;
        let Some(p) = build_pentagon(a, b, phi) else {
            t.case(0.0);
            t.require(false, || format!("pentagon on sides {a}, {b} could not be built"));
            continue;
        };
        t.case(p.residuals().into_iter().fold(0.0, f64::max));
        match pentagon_solve(ExtScalar::real(a), ExtScalar::real(b)) {
            Ok(q) => {
                let dev = [(p.c, q.c), (p.d, q.d), (p.e, q.e)].iter().map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                t.residual(dev);
            }
            Err(e) => t.require(false, || format!("solver refused {a}, {b}: {e}")),
        }
    }
    t.finish()
}
