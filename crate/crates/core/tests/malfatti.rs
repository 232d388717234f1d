use hypgeo_core::cycles::*;
use hypgeo_core::malfatti::*;
use hypgeo_core::projplane::{MVec, ProjPoint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn symmetric() -> MalfattiInstance {
    circles_instance(&symmetric_specs(1.2, 0.3)).unwrap()
}

fn random_instances(seed: u64, n: usize) -> Vec<[CircleSpec; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_specs(|| rng.gen::<f64>())).collect()
}

fn rotate(v: MVec, phi: f64) -> MVec {
    MVec::new(v.x * phi.cos() - v.y * phi.sin(), v.x * phi.sin() + v.y * phi.cos(), v.z)
}

fn motion(v: MVec, boost: f64, phi: f64) -> MVec {
    let b = MVec::new(v.x * boost.cosh() + v.z * boost.sinh(), v.y, v.x * boost.sinh() + v.z * boost.cosh());
    rotate(b, phi)
}

fn moved(c: &Cycle, boost: f64, phi: f64) -> Cycle {
    Cycle::new(motion(c.axis(), boost, phi), c.level()).unwrap()
}

fn max_swap_residual(inst: &MalfattiInstance, mirrors: &[Inversion; 3]) -> f64 {
    let c = inst.cycles();
    let mut worst: f64 = 0.0;
    for (k, (i, j)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
        let img = invert_cycle(&mirrors[k], &c[i]).unwrap();
        let (u, v) = (img.unit_vector(), c[j].unit_vector());
        worst = worst.max((u - v).norm().min((u + v).norm()));
    }
    worst
}

#[test]
fn symmetric_instance_steps() {
    let inst = symmetric();
    let mirrors = steiner_step1(&inst).unwrap();
    assert!(max_swap_residual(&inst, &mirrors) < 1e-9);
    let origin = ProjPoint::real_at(0.0, 0.0);
    for m in &mirrors {
        assert!(m.mirror().is_line());
        assert!(m.mirror().contains(&origin, 1e-12));
    }

    let two = steiner_step2(&inst, &mirrors).unwrap();
    let c = inst.cycles();
    let rot = |x: &Cycle| Cycle::new(rotate(x.axis(), 2.0 * PI / 3.0), x.level()).unwrap();
    for j in 0..3 {
        assert!(tangency(&two.k[j], &c[j]).0 < 1e-9);
        assert_eq!(tangency(&two.k[j], &c[j]).1, TangencyKind::External);
        let next = rot(&two.k[j]);
        assert!((next.unit_vector() - two.k[(j + 1) % 3].unit_vector()).norm() < 1e-9);
    }

    let three = steiner_step3(&inst, &mirrors, &two.k).unwrap();
    for k in 0..3 {
        assert!(two.k[k].contains(&three.points[k], 1e-10));
        assert!(c[k].contains(&three.points[k], 1e-10));
    }

    let four = steiner_step4(&inst, &three).unwrap();
    let pairs = [(0, 1), (1, 2), (2, 0)];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        assert!(tangency(&four.l[p], &two.k[i]).0 < 1e-9);
        assert!(tangency(&four.l[p], &two.k[j]).0 < 1e-9);
        assert!(four.l[p].contains(&three.points[3 - i - j], 1e-10));
    }
    let l_radius = four.l.map(|l| l.radius().re().to_f64());
    assert!((l_radius[0] - l_radius[1]).abs() < 1e-9 && (l_radius[1] - l_radius[2]).abs() < 1e-9);
    assert!(four.fourth_residual < 1e-8);

    let r = four.m.map(|m| m.radius().re().to_f64());
    assert!((r[0] - r[1]).abs() < 1e-9 && (r[1] - r[2]).abs() < 1e-9);
    let report = verify_malfatti(&four.m, &inst, ACCEPT_TOL);
    assert_eq!(report.passed(), 9);
    assert!(report.clearance.iter().all(|b| *b < -1.0));

    let direct = symmetric_circles_solution(1.2, 0.3).unwrap();
    assert!(solution_distance(&four.m, &direct) < 1e-7);
}

#[test]
fn generic_steps() {
    let specs = random_instances(11, 1)[0];
    let inst = circles_instance(&specs).unwrap();
    let mirrors = steiner_step1(&inst).unwrap();
    assert!(max_swap_residual(&inst, &mirrors) < 1e-9);
    for (k, (i, j)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
        assert!(separates(&mirrors[k].mirror(), &inst.cycles()[i], &inst.cycles()[j]));
    }
    let two = steiner_step2(&inst, &mirrors).unwrap();
    for j in 0..3 {
        assert!(tangency(&two.k[j], &mirrors[(j + 2) % 3].mirror()).0 < 1e-9);
        assert!(tangency(&two.k[j], &mirrors[j].mirror()).0 < 1e-9);
    }
    let three = steiner_step3(&inst, &mirrors, &two.k).unwrap();
    let four = steiner_step4(&inst, &three).unwrap();
    assert!(four.fourth_residual < 1e-8);
}

/// Radius `s` solving `cosh 2s = cosh²ρ + ½ sinh²ρ` and
/// `cosh(0.3 + s) = cosh ρ cosh 1.2 − ½ sinh ρ sinh 1.2`, to 30 digits.
const SYMMETRIC_M_RADIUS: f64 = 1.130_863_630_635_656_8;

#[test]
fn symmetric_solution_radius() {
    let direct = symmetric_circles_solution(1.2, 0.3).unwrap();
    for m in direct {
        assert!((m.radius().re().to_f64() - SYMMETRIC_M_RADIUS).abs() < 1e-12);
    }
}

#[test]
fn random_instances_against_direct_solve() {
    let mut solved = 0;
    for specs in random_instances(7, 25) {
        let inst = circles_instance(&specs).unwrap();
        match steiner_construction(&inst) {
            Ok(sol) => {
                solved += 1;
                let report = verify_malfatti(&sol.m, &inst, ACCEPT_TOL);
                assert!(report.all_passed(), "{:?}", report.failing());
                let direct = direct_circles_solution(&specs, 20).unwrap();
                assert!(solution_distance(&sol.m, &direct) < 1e-7);
            }
            Err(e) => {
                // the construction breaks down when two inversion cycles do not meet
                assert_eq!(e, MalfattiError::NoSolution(2));
                let mirrors = steiner_step1(&inst).unwrap();
                let apart =
                    (0..3).any(|a| inversive_product(&mirrors[a].mirror(), &mirrors[(a + 1) % 3].mirror()).abs() > 1.0);
                assert!(apart);
                let direct = direct_circles_solution(&specs, 20).unwrap();
                assert!(verify_malfatti(&direct, &inst, ACCEPT_TOL).all_passed());
            }
        }
    }
    assert_eq!(solved, 24);
}

#[test]
fn triangle_sides() {
    let inst = triangle_instance(&equilateral_vertices(1.5)).unwrap();
    assert!(inst.cycles().iter().all(Cycle::is_line));
    let sol = steiner_construction(&inst).unwrap();
    assert!(verify_malfatti(&sol.m, &inst, ACCEPT_TOL).all_passed());
    assert!(solution_distance(&sol.m, &equilateral_triangle_solution(1.5).unwrap()) < 1e-7);

    let target = [(1.2, 1.7), (1.9, 3.5), (1.4, 5.9)];
    let inst = triangle_instance(&target.map(|(d, t)| ProjPoint::real_at(d, t))).unwrap();
    let sol = steiner_construction(&inst).unwrap();
    let report = verify_malfatti(&sol.m, &inst, ACCEPT_TOL);
    assert!(report.all_passed());
    assert!(report.clearance.iter().all(|b| *b < -1.0));
    assert!(solution_distance(&sol.m, &direct_triangle_solution(&target, 20).unwrap()) < 1e-7);
}

#[test]
fn perturbed_solution_fails_locally() {
    let inst = symmetric();
    let sol = steiner_construction(&inst).unwrap();
    let mut m = sol.m;
    let r = m[0].radius().re().to_f64();
    m[0] = cycle_from_center_radius(&m[0].center(), hypgeo_core::extmeasure::ExtScalar::real(r + 1e-3)).unwrap();
    let report = verify_malfatti(&m, &inst, ACCEPT_TOL);
    assert!(!report.all_passed());
    for c in report.failing() {
        assert!(c.label.contains("m1"), "{}", c.label);
    }
    assert_eq!(report.passed(), 5);
}

#[test]
fn rejected_instances() {
    let a = symmetric_specs(1.2, 0.3);
    let mut overlap = a;
    overlap[1].radius = 2.0;
    assert!(matches!(circles_instance(&overlap), Err(MalfattiError::Overlapping(..))));
    let big =
        cycle_from_center_radius(&ProjPoint::real_at(0.0, 0.0), hypgeo_core::extmeasure::ExtScalar::real(2.0)).unwrap();
    let small =
        cycle_from_center_radius(&ProjPoint::real_at(0.5, 0.0), hypgeo_core::extmeasure::ExtScalar::real(0.3)).unwrap();
    let other = a[2].cycle().unwrap();
    assert!(MalfattiInstance::new(big, small, other).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn construction_commutes_with_motions(seed in 0u64..10_000, boost in -0.5f64..0.5, phi in 0.0f64..std::f64::consts::TAU) {
        let specs = random_instances(seed, 1)[0];
        let inst = circles_instance(&specs).unwrap();
        let Ok(sol) = steiner_construction(&inst) else { return Ok(()) };
        let c = inst.cycles().map(|c| moved(&c, boost, phi));
        let image = MalfattiInstance::new(c[0], c[1], c[2]).unwrap();
        let moved_sol = steiner_construction(&image).unwrap();
        let expected = sol.m.map(|m| moved(&m, boost, phi));
        prop_assert!(solution_distance(&moved_sol.m, &expected) < 1e-9);
    }
}
