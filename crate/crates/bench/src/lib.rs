//! Fixed inputs for the kernel benchmarks.

use hypgeo_core::malfatti::{circles_instance, equilateral_vertices, symmetric_specs, triangle_instance};
use hypgeo_core::projplane::join;
use hypgeo_core::triangle_centers::TestLine;
use hypgeo_core::{Cycle, HypTriangle, MVec, MalfattiInstance, ProjPoint};

/// Three disjoint circles around the origin.
pub fn symmetric_instance() -> MalfattiInstance {
    circles_instance(&symmetric_specs(1.2, 0.3)).expect("admissible instance")
}

/// Side lines of an equilateral triangle.
pub fn triangle_sides_instance() -> MalfattiInstance {
    triangle_instance(&equilateral_vertices(1.5)).expect("admissible instance")
}

pub fn given_cycles() -> [Cycle; 3] {
    symmetric_instance().cycles()
}

pub fn scalene_triangle() -> HypTriangle {
    HypTriangle::from_sides(0.9, 1.3, 1.6).expect("real triangle")
}

pub fn test_line() -> TestLine {
    let line = join(&ProjPoint::real_at(0.5, 0.3), &ProjPoint::real_at(0.9, 2.0)).expect("distinct points");
    TestLine::new(line, ProjPoint::real_at(0.0, 0.0))
}

/// Point pairs covering every category combination on real lines.
pub fn point_pairs() -> Vec<(ProjPoint, ProjPoint)> {
    let ideal =
        |th: f64, d: f64| ProjPoint::new(MVec::new(th.cos() * d.cosh(), th.sin() * d.cosh(), d.sinh())).expect("ideal");
    vec![
        (ProjPoint::real_at(0.4, 0.2), ProjPoint::real_at(1.1, 2.0)),
        (ProjPoint::real_at(0.4, 0.2), ProjPoint::at_infinity(2.5)),
        (ProjPoint::real_at(0.4, 0.2), ideal(1.0, 0.6)),
        (ProjPoint::at_infinity(0.3), ideal(2.0, 0.5)),
        (ideal(0.0, 0.8), ideal(2.2, 1.0)),
    ]
}
