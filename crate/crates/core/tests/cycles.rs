use hypgeo_core::cycles::*;
use hypgeo_core::extmeasure::ExtScalar;
use hypgeo_core::projplane::{join, polar, Category, MVec, ProjLine, ProjPoint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn circle(d: f64, th: f64, r: f64) -> Cycle {
    cycle_from_center_radius(&ProjPoint::real_at(d, th), ExtScalar::real(r)).unwrap()
}

fn hypercycle(pole: MVec, d: f64) -> Cycle {
    let c = ProjPoint::new(pole).unwrap();
    cycle_from_center_radius(&c, ExtScalar::from_parts(d, FRAC_PI_2)).unwrap()
}

fn random_real(rng: &mut ChaCha8Rng, max: f64) -> ProjPoint {
    ProjPoint::real_at(rng.gen_range(0.0..max), rng.gen_range(0.0..2.0 * PI))
}

/// Chords through `p` that meet `c` in two real points.
fn chords(p: &ProjPoint, c: &Cycle, n: usize, seed: u64) -> Vec<ProjLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let q = random_real(&mut rng, 2.5);
        let Ok(l) = join(p, &q) else { continue };
        if l.category() != Category::Real {
            continue;
        }
        if line_cycle_intersections(&l, c).is_ok_and(|h| h.len() == 2) {
            out.push(l);
        }
    }
    out
}

fn spread(vals: &[Complex64]) -> f64 {
    let mean = vals.iter().sum::<Complex64>() / vals.len() as f64;
    vals.iter().map(|v| (v - mean).norm()).fold(0.0, f64::max)
}

#[test]
fn power_is_chord_independent_for_every_point_category() {
    let c = circle(0.3, 0.5, 0.6);
    let points = [
        ProjPoint::real_at(0.4, 0.2),
        ProjPoint::real_at(1.4, 2.0),
        ProjPoint::new(MVec::new(1.3, 0.4, 0.2)).unwrap(),
        ProjPoint::at_infinity(1.0),
    ];
    for (k, p) in points.iter().enumerate() {
        let vals: Vec<Complex64> =
            chords(p, &c, 60, k as u64).iter().map(|l| power(p, &c, l).unwrap().to_complex_lossy()).collect();
        assert!(spread(&vals) < 1e-10, "{:?} spread {}", p.category(), spread(&vals));
        if p.is_real() {
            assert!((vals[0].re - power_of_real_point(p, &c).unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn power_signs() {
    let c = circle(0.0, 0.0, 0.6);
    let inside = ProjPoint::real_at(0.3, 1.0);
    let outside = ProjPoint::real_at(1.2, 1.0);
    let ideal = ProjPoint::new(MVec::new(1.5, 0.0, 0.5)).unwrap();
    let pw = |p: &ProjPoint| power(p, &c, &chords(p, &c, 1, 9)[0]).unwrap().to_complex_lossy();
    assert!(pw(&inside).re < 0.0);
    assert!(pw(&outside).re > 0.0);
    assert!(pw(&ideal).im.abs() > 1e-3);
    let on = c.sample_points(1)[0];
    assert!(pw(&on).norm() < 1e-12);
}

#[test]
fn power_axis_has_equal_powers() {
    let pairs = [
        (circle(0.5, 0.0, 0.3), circle(0.8, 2.0, 0.5)),
        (circle(0.0, 0.0, 0.5), circle(0.8, 0.0, 0.3)),
        (
            circle(0.2, 1.0, 0.4),
            paracycle_through(&ProjPoint::at_infinity(3.5), &ProjPoint::real_at(0.9, 3.5)).unwrap(),
        ),
        (circle(0.2, 1.0, 0.4), hypercycle(MVec::new(0.0, 1.0, 0.0), 0.4)),
    ];
    for (a, b) in pairs {
        let ax = power_axis(&a, &b).unwrap();
        assert_eq!(ax.category(), Category::Real);
        for p in Cycle::line(&ax).unwrap().sample_points(15) {
            let (pa, pb) = (power_of_real_point(&p, &a).unwrap(), power_of_real_point(&p, &b).unwrap());
            assert!((pa - pb).abs() < 1e-9 * (1.0 + pa.abs()), "{pa} {pb}");
        }
    }
    let (a, b) = (circle(0.0, 0.0, 0.5), circle(0.8, 0.0, 0.3));
    let ax = power_axis(&a, &b).unwrap();
    let touch = contact_point(&a, &b).unwrap();
    assert!(ax.contains(&touch, 1e-10));
    assert!(ax.contains(&ProjPoint::real_at(0.5, 0.0), 1e-10));
}

#[test]
fn closed_form_matches_tangent_meets() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut cats = [0usize; 3];
    let mut done = 0;
    while done < 200 {
        let a = circle(rng.gen_range(0.0..1.0), rng.gen_range(0.0..6.3), rng.gen_range(0.1..1.2));
        let b = circle(rng.gen_range(0.0..1.0), rng.gen_range(0.0..6.3), rng.gen_range(0.1..1.2));
        if inversive_product(&a.canonical(), &b.canonical()) > -1.05 {
            continue;
        }
        let cf = closed_form_circle_centers(&a, &b).unwrap();
        let tr = tangent_intersection_centers(&a, &b).unwrap();
        let gen = similitude_centers(&a, &b).unwrap();
        assert!(cf.external.same_as(&tr.external, 1e-9) || cf.external.same_as(&tr.external.flipped(), 1e-9));
        assert!(cf.internal.same_as(&tr.internal, 1e-9));
        assert!(gen.internal.same_as(&cf.internal, 1e-12));
        assert_eq!(cf.external.category(), predicted_external_category(&a, &b, 1e-12));
        cats[cf.external.category() as usize] += 1;
        done += 1;
    }
    assert!(cats.iter().filter(|&&n| n > 0).count() >= 2, "{cats:?}");
}

#[test]
fn external_center_at_infinity_on_threshold() {
    let (r, d) = (0.3f64, 1.0f64);
    let big = (r.sinh() * d.exp()).asinh();
    let a = circle(0.0, 0.0, r);
    let b = circle(d, 0.0, big);
    let s = similitude_centers(&a, &b).unwrap();
    assert_eq!(s.external.category(), Category::AtInfinity);
    assert_eq!(s.internal.category(), Category::Real);
    let s2 = similitude_centers(&circle(0.0, 0.0, r), &circle(d, 0.0, big * 0.9)).unwrap();
    assert_eq!(s2.external.category(), Category::Ideal);
    let s3 = similitude_centers(&circle(0.0, 0.0, r), &circle(d, 0.0, big * 1.1)).unwrap();
    assert_eq!(s3.external.category(), Category::Real);
}

#[test]
fn equal_circles_and_symmetry() {
    let a = circle(0.7, 0.0, 0.3);
    let b = circle(0.7, PI, 0.3);
    let s = similitude_centers(&a, &b).unwrap();
    assert_eq!(s.external.category(), Category::Ideal);
    assert!(polar(&s.external).contains(&ProjPoint::real_at(0.0, 0.0), 1e-12));
    assert!(s.internal.same_as(&ProjPoint::real_at(0.0, 0.0), 1e-12));
    let c = circle(0.9, 2.0, 0.5);
    for (x, y) in [(a, c), (c, b)] {
        let p = similitude_centers(&x, &y).unwrap();
        let q = similitude_centers(&y, &x).unwrap();
        assert!(p.external.same_as(&q.external, 1e-10) || p.external.same_as(&q.external.flipped(), 1e-10));
        assert!(p.internal.same_as(&q.internal, 1e-10));
    }
    assert_eq!(similitude_centers(&a, &a.reversed()), Err(CycleError::IdenticalCycles));
}

#[test]
fn centers_divide_in_sinh_ratio() {
    let cases = [(circle(0.2, 0.0, 0.3), circle(1.1, 1.0, 0.6)), (circle(0.2, 0.0, 0.3), circle(0.6, 1.0, 0.6))];
    for (a, b) in cases {
        let s = similitude_centers(&a, &b).unwrap();
        let (o1, o2) = (a.center(), b.center());
        let ratio = |p: &ProjPoint| p.distance(&o1).sinh() / p.distance(&o2).sinh();
        let want = 0.3f64.sinh() / 0.6f64.sinh();
        assert!((ratio(&s.internal) - want).abs() < 1e-10);
        if s.external.is_real() {
            assert!((ratio(&s.external) - want).abs() < 1e-10);
        }
    }
}

#[test]
fn case_tags_and_internal_center_real() {
    let c = circle(0.2, 1.0, 0.3);
    let p = paracycle_through(&ProjPoint::at_infinity(4.0), &ProjPoint::real_at(0.6, 4.0)).unwrap();
    let p2 = paracycle_through(&ProjPoint::at_infinity(2.0), &ProjPoint::real_at(0.7, 2.0)).unwrap();
    let h = hypercycle(MVec::new(0.0, 1.0, 0.6), 0.2);
    let h2 = hypercycle(MVec::new(1.0, 0.2, 0.5), 0.2);
    let cases = [
        (c, p, SimilitudeCase::CircleParacycle),
        (c, h, SimilitudeCase::CircleHypercycle),
        (p, p2, SimilitudeCase::ParacycleParacycle),
        (p, h, SimilitudeCase::ParacycleHypercycle),
        (h, h2, SimilitudeCase::HypercycleHypercycle),
    ];
    for (a, b, tag) in cases {
        let s = similitude_centers(&a, &b).unwrap();
        assert_eq!(s.case_tag, tag);
        if tag != SimilitudeCase::HypercycleHypercycle {
            assert!(inversive_product(&a.canonical(), &b.canonical()) < -1.0, "{tag:?} overlaps");
            assert_eq!(s.internal.category(), Category::Real, "{tag:?}");
        }
        if tag == SimilitudeCase::ParacycleParacycle {
            assert_eq!(s.external.category(), Category::Ideal);
        }
        if let Ok(t) = tangent_intersection_centers(&a, &b) {
            assert!(
                t.internal.same_as(&s.internal, 1e-9) || t.internal.same_as(&s.internal.flipped(), 1e-9),
                "{tag:?}"
            );
            assert!(
                t.external.same_as(&s.external, 1e-9) || t.external.same_as(&s.external.flipped(), 1e-9),
                "{tag:?}"
            );
        }
    }
}

fn secants_through(s: &ProjPoint, a: &Cycle, b: &Cycle, n: usize) -> Vec<ProjLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < n && tries < 200_000 {
        tries += 1;
        let Ok(l) = join(s, &random_real(&mut rng, 2.5)) else { continue };
        if l.category() != Category::Real {
            continue;
        }
        let two = |c: &Cycle| line_cycle_intersections(&l, c).is_ok_and(|h| h.len() == 2);
        if two(a) && two(b) {
            out.push(l);
        }
    }
    out
}

#[test]
fn secant_ratio_is_constant() {
    let configs = [(circle(0.0, 0.0, 0.3), circle(1.5, 0.3, 0.8)), (circle(0.0, 0.0, 0.3), circle(1.2, 0.3, 0.35))];
    for (a, b) in configs {
        let s = similitude_centers(&a, &b).unwrap();
        for centre in [s.external, s.internal] {
            let lines = secants_through(&centre, &a, &b, 50);
            assert_eq!(lines.len(), 50);
            let mut ratios = Vec::new();
            for l in &lines {
                let r = secant_ratio_check(&centre, &a, &b, l).unwrap();
                assert!(r.deviation < 1e-10, "{:?} {}", centre.category(), r.deviation);
                ratios.push(r.ratio);
            }
            assert!(spread(&ratios) < 1e-10, "{:?} {}", centre.category(), spread(&ratios));
        }
    }
    let (a, b) = (circle(0.7, 0.0, 0.3), circle(0.7, PI, 0.3));
    let s = similitude_centers(&a, &b).unwrap();
    for l in secants_through(&s.internal, &a, &b, 10) {
        let r = secant_ratio_check(&s.internal, &a, &b, &l).unwrap();
        assert!((r.ratio + 1.0).norm() < 1e-10);
    }
}

#[test]
fn axes_of_similitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut n = 0;
    while n < 30 {
        let cs: Vec<Cycle> =
            (0..3).map(|_| circle(rng.gen_range(0.0..1.5), rng.gen_range(0.0..6.3), rng.gen_range(0.1..0.6))).collect();
        let Ok(ax) = similitude_axes(&cs[0], &cs[1], &cs[2]) else { continue };
        assert!(ax.residual < 1e-9, "{}", ax.residual);
        let pts: Vec<ProjPoint> = ax.centers.iter().flat_map(|p| [p.external, p.internal]).collect();
        let mut collinear = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let det = MVec::det(pts[i].rep(), pts[j].rep(), pts[k].rep())
                        / (pts[i].rep().euclid_norm() * pts[j].rep().euclid_norm() * pts[k].rep().euclid_norm());
                    if det.abs() < 1e-9 {
                        collinear += 1;
                    }
                }
            }
        }
        assert!(collinear >= 4);
        n += 1;
    }
    let rho = 0.9;
    let cs: Vec<Cycle> = (0..3).map(|k| circle(rho, 2.0 * PI * k as f64 / 3.0, 0.3)).collect();
    let ax = similitude_axes(&cs[0], &cs[1], &cs[2]).unwrap();
    assert_eq!(ax.axes[0].category(), Category::Ideal);
    // the other three carry two midpoints each and cross a symmetry line at right angles
    for (k, l) in ax.axes[1..].iter().enumerate() {
        let mirror = join(&ProjPoint::real_at(0.0, 0.0), &cs[(k + 2) % 3].center()).unwrap();
        assert!(l.rep().q(mirror.rep()).abs() < 1e-10);
        let mids = ax.centers.iter().filter(|p| l.contains(&p.internal, 1e-10)).count();
        assert_eq!(mids, 2);
    }
}

#[test]
fn inversion_with_ideal_center() {
    let pole = ProjPoint::new(MVec::new(1.0, 0.3, 0.4)).unwrap();
    let mirror = cycle_from_center_radius(&pole, ExtScalar::from_parts(0.5, FRAC_PI_2)).unwrap();
    let inv = Inversion::from_mirror(mirror).unwrap();
    let k = inv.power_k().to_complex_lossy();
    assert!((k.norm() - 1.0).abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut inverted = 0;
    while inverted < 20 {
        let m = random_real(&mut rng, 1.5);
        let Ok(n) = invert_point(&inv, &m) else { continue };
        inverted += 1;
        assert!(join(&inv.center(), &m).unwrap().contains(&n, 1e-9));
        assert!(invert_point(&inv, &n).unwrap().same_as(&m, 1e-10));
    }
    for p in mirror.sample_points(6) {
        assert!(invert_point(&inv, &p).unwrap().same_as(&p, 1e-10));
    }
}

#[test]
fn inversion_maps_cycles_to_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let invs = [
        Inversion::new(&ProjPoint::real_at(0.3, 1.0), ExtScalar::real(0.2)).unwrap(),
        Inversion::from_mirror(hypercycle(MVec::new(0.2, 1.0, 0.1), 0.3)).unwrap(),
    ];
    for inv in invs {
        let mut mapped = 0;
        while mapped < 10 {
            let c = circle(rng.gen_range(0.5..1.5), rng.gen_range(0.0..6.3), rng.gen_range(0.1..0.4));
            let images: Vec<ProjPoint> =
                c.sample_points(20).iter().filter_map(|p| invert_point(&inv, p).ok()).collect();
            let Ok(img) = invert_cycle(&inv, &c) else {
                assert!(images.is_empty());
                continue;
            };
            mapped += 1;
            for q in images {
                assert!(img.contains(&q, 1e-9));
            }
            let back = invert_cycle(&inv, &img).unwrap();
            assert!((back.unit_vector() - c.unit_vector()).norm() < 1e-10);
        }
    }
    let inv = Inversion::new(&ProjPoint::real_at(0.0, 0.0), ExtScalar::real(0.2)).unwrap();
    let conc = circle(0.0, 0.0, 1.2);
    assert!(invert_cycle(&inv, &conc).unwrap().center().same_as(&ProjPoint::real_at(0.0, 0.0), 1e-12));
    let ortho = Cycle::line(&join(&ProjPoint::real_at(0.0, 0.0), &ProjPoint::real_at(1.0, 0.4)).unwrap()).unwrap();
    let img = invert_cycle(&inv, &ortho).unwrap();
    assert!((img.unit_vector() - ortho.unit_vector()).norm() < 1e-12);
}

#[test]
fn swapping_equal_circles_uses_bisector() {
    let a = circle(0.7, 0.5, 0.3);
    let b = circle(0.7, 0.5 + PI, 0.3);
    let inv = inversion_swapping(&a, &b).unwrap();
    assert!(inv.mirror().is_line());
    assert_eq!(inv.center().category(), Category::Ideal);
    let img = invert_cycle(&inv, &a).unwrap();
    assert!((img.unit_vector() - b.canonical().unit_vector()).norm() < 1e-12);
    let nested = circle(0.1, 0.5, 0.1);
    assert_eq!(inversion_swapping(&circle(0.0, 0.0, 0.8), &nested), Err(CycleError::NoExternalCenter));
}

#[test]
fn apollonius_solutions_pass_tangency() {
    let cs = [circle(0.8, 0.0, 0.3), circle(0.9, 2.1, 0.25), circle(1.0, 4.0, 0.4)];
    let mut total = 0;
    for mask in 0..8u8 {
        let touch: [Touch; 3] =
            std::array::from_fn(|i| if mask >> i & 1 == 1 { Touch::Internal } else { Touch::External });
        let Ok(sols) = tangent_cycles(&cs[0], &cs[1], &cs[2], touch) else { continue };
        for s in &sols {
            for (c, t) in cs.iter().zip(touch) {
                let (res, kind) = tangency(s, c);
                let want = if t == Touch::External { TangencyKind::External } else { TangencyKind::Internal };
                assert!(res < 1e-9 && kind == want);
            }
        }
        total += sols.len();
    }
    assert!((2..=16).contains(&total));
}
