use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hypgeo_core::cycles::{
    closed_form_circle_centers, cycle_from_center_radius, inversive_product, line_cycle_intersections,
    power as power_along, predicted_external_category, secant_ratio_check, similitude_axes, similitude_centers,
    tangent_intersection_centers,
};
use hypgeo_core::extmeasure::ExtScalar;
use hypgeo_core::projplane::join;
use hypgeo_core::{Category, Cycle, MVec, ProjLine, ProjPoint};

use super::{CheckConfig, SuiteResult, Tally};

const CHORDS: usize = 50;
const SECANTS: usize = 8;
const MAX_TRIES: usize = 20_000;

fn circle(d: f64, th: f64, r: f64) -> Cycle {
    cycle_from_center_radius(&ProjPoint::real_at(d, th), ExtScalar::real(r)).expect("circle")
}

fn random_circle(rng: &mut ChaCha8Rng, max_d: f64, radii: (f64, f64)) -> Cycle {
    circle(rng.gen_range(0.0..max_d), rng.gen_range(0.0..TAU), rng.gen_range(radii.0..radii.1))
}

fn random_real(rng: &mut ChaCha8Rng, max: f64) -> ProjPoint {
    ProjPoint::real_at(rng.gen_range(0.0..max), rng.gen_range(0.0..TAU))
}

/// Real lines through `p` meeting every cycle of `cs` twice.
fn secants(p: &ProjPoint, cs: &[&Cycle], n: usize, rng: &mut ChaCha8Rng) -> Vec<ProjLine> {
    let mut out = Vec::new();
    for _ in 0..MAX_TRIES {
        if out.len() == n {
            break;
        }
        let Ok(l) = join(p, &random_real(rng, 2.5)) else { continue };
        if l.category() != Category::Real {
            continue;
        }
        if cs.iter().all(|c| line_cycle_intersections(&l, c).is_ok_and(|h| h.len() == 2)) {
            out.push(l);
        }
    }
    out
}

fn std_dev(vals: &[Complex64]) -> f64 {
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<Complex64>() / n;
    (vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / n).sqrt()
}

/// Power along many chords, for points of every category.
pub(crate) fn power(n: usize, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> SuiteResult {
    let mut t = Tally::new("power of a point", 1e-10, cfg);
    for _ in 0..n {
        let c = random_circle(rng, 0.8, (0.3, 0.9));
        let (d, th) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..TAU));
        let (d2, th2): (f64, f64) = (rng.gen_range(0.2..1.5), rng.gen_range(0.0..TAU));
        let ideal = MVec::new(d2.cosh() * th2.cos(), d2.cosh() * th2.sin(), d2.sinh());
        let points =
            [ProjPoint::real_at(d, th), ProjPoint::at_infinity(th), ProjPoint::new(ideal).expect("ideal point")];
        for p in points {
            let lines = secants(&p, &[&c], CHORDS, rng);
            if lines.len() < CHORDS {
                t.note(format!("{:?} point: only {} chords found", p.category(), lines.len()));
                continue;
            }
            let vals: Result<Vec<Complex64>, _> =
                lines.iter().map(|l| power_along(&p, &c, l).map(|v| v.to_complex_lossy())).collect();
            match vals {
                Ok(v) => t.case(std_dev(&v)),
                Err(e) => {
                    t.case(0.0);
                    t.require(false, || format!("{:?} point: {e}", p.category()));
                }
            }
        }
    }
    t.finish()
}

fn same_point(a: &ProjPoint, b: &ProjPoint) -> f64 {
    let u = a.rep() * (1.0 / a.rep().euclid_norm());
    let v = b.rep() * (1.0 / b.rep().euclid_norm());
    u.cross(v).euclid_norm()
}

/// Closed form against tangent meets, the category switch, constant
/// secant ratios and the four axes.
pub(crate) fn similitude(n: usize, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> [SuiteResult; 2] {
    let mut t = Tally::new("similitude", 1e-9, cfg);
    let mut sec = Tally::new("secant ratio", 1e-10, cfg);
    let mut done = 0;
    while done < n {
        let a = random_circle(rng, 1.0, (0.1, 1.2));
        let b = random_circle(rng, 1.0, (0.1, 1.2));
        if inversive_product(&a.canonical(), &b.canonical()) > -1.05 {
            continue;
        }
        done += 1;
        match (closed_form_circle_centers(&a, &b), tangent_intersection_centers(&a, &b)) {
            (Ok(cf), Ok(tr)) => {
                t.case(same_point(&cf.external, &tr.external).max(same_point(&cf.internal, &tr.internal)));
                let predicted = predicted_external_category(&a, &b, 1e-12);
                t.require(cf.external.category() == predicted, || {
                    format!("external center {:?}, threshold predicts {predicted:?}", cf.external.category())
                });
            }
            (Err(e), _) | (_, Err(e)) => {
                t.case(0.0);
                t.require(false, || format!("centers of separate circles: {e}"));
            }
        }

        // threshold sinh R / sinh r = e^d and its neighbours
        let (r, d): (f64, f64) = (rng.gen_range(0.1..0.5), rng.gen_range(0.5..1.5));
        let big = (r.sinh() * d.exp()).asinh();
        for (k, want) in [(1.0, Category::AtInfinity), (0.9, Category::Ideal), (1.1, Category::Real)] {
            let got = similitude_centers(&circle(0.0, 0.0, r), &circle(d, 0.0, big * k)).map(|s| s.external.category());
            t.require(got == Ok(want), || format!("radius ratio {k} of the threshold gives {got:?}"));
        }

        // secants through both centers
        let (c1, c2) = (random_circle(rng, 0.5, (0.2, 0.4)), random_circle(rng, 1.5, (0.3, 0.8)));
        if inversive_product(&c1.canonical(), &c2.canonical()) < -1.05 {
            if let Ok(s) = similitude_centers(&c1, &c2) {
                for centre in [s.external, s.internal] {
                    let lines = secants(&centre, &[&c1, &c2], SECANTS, rng);
                    let ratios: Vec<Complex64> = lines
                        .iter()
                        .filter_map(|l| {
                            let r = secant_ratio_check(&centre, &c1, &c2, l).ok()?;
                            sec.case(r.deviation);
                            Some(r.ratio)
                        })
                        .collect();
                    if ratios.len() >= 2 {
                        sec.residual(ratios.iter().map(|r| (r - ratios[0]).norm()).fold(0.0, f64::max));
                    }
                }
            }
        }

        // three circles: six centers on four axes
        let cs = [0, 1, 2].map(|_| random_circle(rng, 1.5, (0.1, 0.6)));
        if let Ok(ax) = similitude_axes(&cs[0], &cs[1], &cs[2]) {
            t.residual(ax.residual);
        }
    }
    [t.finish(), sec.finish()]
}
