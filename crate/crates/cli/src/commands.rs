//! Drivers behind the subcommands. Each returns a JSON value, a pass flag
//! and a short text summary.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use hypgeo_core::cycles::{invert_cycle, invert_point, similitude_axes, similitude_centers};
use hypgeo_core::malfatti::{steiner_construction, verify_malfatti, ACCEPT_TOL};
use hypgeo_core::triangle_centers::{
    center_report, centroid, circumcenter_point, full_identity_suite, oi_distance, OiSign,
};
use hypgeo_core::{CenterError, Cycle, ExtScalar, Inversion, MalfattiInstance, ProjPoint};

use crate::error::CliError;
use crate::render::{render_malfatti, render_svg, RenderSpec};
use crate::scene::SceneDocument;
use crate::suites::triangles::{test_line, UNSIGNED};
use crate::suites::{run_checks, CheckConfig};

/// Result of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub passed: bool,
    pub summary: String,
}

const IDENTITY_TOL: f64 = 1e-10;
const INVERSION_TOL: f64 = 1e-9;
const AXES_TOL: f64 = 1e-9;

pub fn point_json(p: &ProjPoint) -> Value {
    json!(p.rep().to_array())
}

pub fn cycle_json(c: &Cycle) -> Value {
    json!({ "axis": c.axis().to_array(), "level": c.level() })
}

fn scalar_json(s: &ExtScalar) -> Value {
    serde_json::to_value(s).expect("scalar serializes")
}

fn debug_name<T: std::fmt::Debug>(v: &T) -> Value {
    Value::String(format!("{v:?}"))
}

/// Tolerance from the flag, else from the scene metadata, else the default.
pub fn resolve_tol(doc: Option<&SceneDocument>, flag: Option<f64>, default: f64) -> Result<f64, CliError> {
    let t = flag.or_else(|| doc.and_then(|d| d.metadata.tolerance)).unwrap_or(default);
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CliError::Input(format!("tolerance must be a positive number, got {t}")))
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_scene(path: &Path) -> Result<SceneDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    SceneDocument::parse(&text)
}

/// Centers, radii, Staudtians and identity residuals of a named triangle.
/// Triangles with vertices off the plane get the centroid and the
/// circumcenter with the kind of its cycle.
pub fn cmd_triangle(doc: &SceneDocument, name: &str, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tri = doc.triangle(name)?;
    let tol = resolve_tol(Some(doc), tol, IDENTITY_TOL)?;
    let (m, _) = centroid(&tri)?;
    let circum = circumcenter_point(&tri).ok();
    let mut out = Map::new();
    out.insert("triangle".into(), json!(name));
    out.insert("real".into(), json!(tri.is_real()));
    out.insert("centroid".into(), point_json(&m));
    out.insert(
        "circumcenter".into(),
        match &circum {
            Some((o, kind)) => {
                json!({ "point": point_json(o), "category": debug_name(&o.category()), "kind": debug_name(kind) })
            }
            None => Value::Null,
        },
    );
    let mut summary = format!("triangle {name}\n");
    let _ = writeln!(summary, "  centroid {:?}", m.rep().to_array());
    if let Some((o, kind)) = &circum {
        let _ = writeln!(summary, "  circumcenter {:?} ({kind:?})", o.rep().to_array());
    }
    let mut passed = true;
    if tri.is_real() {
        let rep = center_report(&tri)?;
        let data = tri.data();
        out.insert("sides".into(), json!([data.a, data.b, data.c].iter().map(scalar_json).collect::<Vec<_>>()));
        out.insert(
            "angles".into(),
            json!([data.alpha, data.beta, data.gamma].iter().map(scalar_json).collect::<Vec<_>>()),
        );
        out.insert("circumcenters".into(), json!(rep.circumcenters.iter().map(point_json).collect::<Vec<_>>()));
        out.insert("circumradii".into(), json!(rep.circumradii.iter().map(scalar_json).collect::<Vec<_>>()));
        out.insert("incenters".into(), json!(rep.incenters.iter().map(point_json).collect::<Vec<_>>()));
        out.insert("inradii".into(), json!(rep.inradii.iter().map(scalar_json).collect::<Vec<_>>()));
        out.insert("staudtian".into(), scalar_json(&rep.n));
        out.insert("angular_staudtian".into(), scalar_json(&rep.big_n));

        let ids = full_identity_suite(&tri, &test_line(), &ProjPoint::real_at(0.4, 1.0))?;
        let (unsigned, checked): (Vec<_>, Vec<_>) = ids.checks.iter().partition(|c| c.name.contains(UNSIGNED));
        let worst = checked.iter().map(|c| c.residual).fold(0.0, f64::max);
        passed = worst <= tol;
        out.insert(
            "identities".into(),
            json!({
                "tol": tol,
                "max_residual": worst,
                "checks": checked.iter().map(|c| json!({ "name": c.name, "residual": c.residual })).collect::<Vec<_>>(),
                "unsigned": unsigned.iter().map(|c| json!({ "name": c.name, "residual": c.residual })).collect::<Vec<_>>(),
            }),
        );
        out.insert(
            "oi".into(),
            match oi_distance(&tri) {
                Ok(r) => json!({
                    "direct": scalar_json(&r.direct),
                    "formula_minus": scalar_json(&r.formula_minus),
                    "formula_plus": scalar_json(&r.formula_plus),
                    "residual_minus": r.residual(OiSign::Minus),
                    "residual_plus": r.residual(OiSign::Plus),
                    "sign_used": debug_name(&r.sign_used),
                }),
                Err(CenterError::NonRealCenters) => Value::Null,
                Err(e) => return Err(e.into()),
            },
        );
        let _ = writeln!(summary, "  r = {}  R = {}", rep.inradii[0], rep.circumradii[0]);
        let _ = writeln!(summary, "  n = {}  N = {}", rep.n, rep.big_n);
        let _ = writeln!(summary, "  {} identities, max residual {worst:e} (tol {tol:e})", checked.len());
    }
    out.insert("passed".into(), json!(passed));
    Ok(Outcome { value: Value::Object(out), passed, summary })
}

/// Steiner's construction on three named cycles with the tangency report
/// and, when a path is given, an SVG drawing.
pub fn cmd_malfatti(
    doc: &SceneDocument,
    names: &[String; 3],
    svg: Option<&Path>,
    spec: &RenderSpec,
    tol: Option<f64>,
) -> Result<Outcome, CliError> {
    let given = [doc.cycle(&names[0])?, doc.cycle(&names[1])?, doc.cycle(&names[2])?];
    let tol = resolve_tol(Some(doc), tol, ACCEPT_TOL)?;
    let inst = MalfattiInstance::new(given[0], given[1], given[2])?;
    let sol = steiner_construction(&inst)?;
    let rep = verify_malfatti(&sol.m, &inst, tol);
    if let Some(path) = svg {
        write_file(path, &render_malfatti(&given, &sol, spec)?)?;
    }
    let cycles = |cs: &[Cycle; 3]| cs.iter().map(cycle_json).collect::<Vec<_>>();
    let passed = rep.all_passed();
    let value = json!({
        "given": names,
        "solution": cycles(&sol.m),
        "intermediates": {
            "mirrors": cycles(&sol.mirrors),
            "k": cycles(&sol.k),
            "points": sol.points.iter().map(point_json).collect::<Vec<_>>(),
            "l": cycles(&sol.l),
        },
        "report": {
            "tol": tol,
            "max_residual": rep.max_residual(),
            "checks": rep.checks.iter().map(|c| json!({
                "label": c.label,
                "residual": c.residual,
                "kind": debug_name(&c.kind),
                "passed": c.passed,
            })).collect::<Vec<_>>(),
            "clearance": rep.clearance,
        },
        "passed": passed,
    });
    let mut summary = format!("malfatti cycles of {}, {}, {}\n", names[0], names[1], names[2]);
    for (k, m) in sol.m.iter().enumerate() {
        let _ = writeln!(summary, "  m{} axis {:?} level {}", k + 1, m.axis().to_array(), m.level());
    }
    let _ = writeln!(summary, "  {}/{} tangencies within {tol:e}", rep.passed(), rep.checks.len());
    Ok(Outcome { value, passed, summary })
}

/// Images of named points and cycles in the inversion at a named cycle.
/// Each image is inverted back and compared with the original.
pub fn cmd_invert(
    doc: &SceneDocument,
    mirror: &str,
    targets: &[String],
    tol: Option<f64>,
) -> Result<Outcome, CliError> {
    let inv = Inversion::from_mirror(doc.cycle(mirror)?)?;
    let tol = resolve_tol(Some(doc), tol, INVERSION_TOL)?;
    let mut points = Map::new();
    let mut cycles = Map::new();
    let mut worst: f64 = 0.0;
    let mut summary = format!("inversion in {mirror}\n");
    for name in targets {
        if doc.points.get(name).is_some() {
            let p = doc.point(name)?;
            let img = invert_point(&inv, &p)?;
            let back = invert_point(&inv, &img)?;
            worst = worst.max(direction_gap(p.rep().to_array(), back.rep().to_array()));
            let _ = writeln!(summary, "  {name} -> {:?}", img.rep().to_array());
            points.insert(name.clone(), point_json(&img));
        } else if doc.cycles.get(name).is_some() {
            let c = doc.cycle(name)?;
            let img = invert_cycle(&inv, &c)?;
            let back = invert_cycle(&inv, &img)?;
            worst = worst.max(direction_gap(c.unit_vector_array(), back.unit_vector_array()));
            let _ = writeln!(summary, "  {name} -> axis {:?} level {}", img.axis().to_array(), img.level());
            cycles.insert(name.clone(), cycle_json(&img));
        } else {
            return Err(CliError::UnknownName(format!("{name} (points and cycles can be inverted)")));
        }
    }
    let passed = worst <= tol;
    let _ = writeln!(summary, "  involution residual {worst:e} (tol {tol:e})");
    let value = json!({
        "mirror": mirror,
        "points": points,
        "cycles": cycles,
        "involution_residual": worst,
        "tol": tol,
        "passed": passed,
    });
    Ok(Outcome { value, passed, summary })
}

/// Distance between two vectors up to a nonzero factor.
fn direction_gap<const N: usize>(a: [f64; N], b: [f64; N]) -> f64 {
    let norm = |v: &[f64; N]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (na, nb) = (norm(&a), norm(&b));
    let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let s = if dot < 0.0 { -1.0 } else { 1.0 };
    a.iter().zip(&b).map(|(x, y)| (x / na - s * y / nb).powi(2)).sum::<f64>().sqrt()
}

trait UnitArray {
    fn unit_vector_array(&self) -> [f64; 4];
}

impl UnitArray for Cycle {
    fn unit_vector_array(&self) -> [f64; 4] {
        let v = self.unit_vector();
        [v[0], v[1], v[2], v[3]]
    }
}

/// Centers of similitude of two named cycles, or the six centers and four
/// axes of three.
pub fn cmd_similitude(doc: &SceneDocument, names: &[String], tol: Option<f64>) -> Result<Outcome, CliError> {
    let cs = names.iter().map(|n| doc.cycle(n)).collect::<Result<Vec<_>, _>>()?;
    let pair = |p: &hypgeo_core::cycles::SimilitudePair| {
        json!({
            "external": point_json(&p.external),
            "external_category": debug_name(&p.external.category()),
            "internal": point_json(&p.internal),
            "internal_category": debug_name(&p.internal.category()),
            "case": debug_name(&p.case_tag),
        })
    };
    match cs.as_slice() {
        [a, b] => {
            let p = similitude_centers(a, b)?;
            let summary = format!(
                "similitude of {} and {}\n  external {:?} ({:?})\n  internal {:?} ({:?})\n",
                names[0],
                names[1],
                p.external.rep().to_array(),
                p.external.category(),
                p.internal.rep().to_array(),
                p.internal.category()
            );
            Ok(Outcome {
                value: json!({ "cycles": names, "centers": pair(&p), "passed": true }),
                passed: true,
                summary,
            })
        }
        [a, b, c] => {
            let tol = resolve_tol(Some(doc), tol, AXES_TOL)?;
            let ax = similitude_axes(a, b, c)?;
            let passed = ax.residual <= tol;
            let value = json!({
                "cycles": names,
                "centers": ax.centers.iter().map(pair).collect::<Vec<_>>(),
                "axes": ax.axes.iter().map(|l| json!(l.rep().to_array())).collect::<Vec<_>>(),
                "residual": ax.residual,
                "tol": tol,
                "passed": passed,
            });
            let summary = format!(
                "similitude axes of {}, {}, {}\n  incidence residual {:e} (tol {tol:e})\n",
                names[0], names[1], names[2], ax.residual
            );
            Ok(Outcome { value, passed, summary })
        }
        _ => Err(CliError::Input(format!("similitude takes two or three cycles, got {}", names.len()))),
    }
}

/// Invariant suites on random configurations and on the scene.
pub fn cmd_check(doc: Option<&SceneDocument>, cfg: &CheckConfig) -> Result<Outcome, CliError> {
    let rep = run_checks(doc, cfg)?;
    let mut summary = String::new();
    for s in &rep.suites {
        let _ = writeln!(
            summary,
            "{} {:<32} {:>6} cases  max {:e}  tol {:e}",
            if s.passed { "PASS" } else { "FAIL" },
            s.name,
            s.cases,
            s.max_residual,
            s.tol
        );
        for n in &s.notes {
            let _ = writeln!(summary, "       {n}");
        }
    }
    let _ = writeln!(summary, "{}", if rep.passed { "all suites pass" } else { "some suites fail" });
    let value = serde_json::to_value(&rep).expect("report serializes");
    Ok(Outcome { value, passed: rep.passed, summary })
}

/// SVG drawing of a whole scene.
pub fn cmd_render(doc: &SceneDocument, svg: &Path, spec: &RenderSpec) -> Result<Outcome, CliError> {
    let text = render_svg(doc, spec)?;
    write_file(svg, &text)?;
    let value = json!({ "svg": svg.display().to_string(), "bytes": text.len(), "passed": true });
    Ok(Outcome { value, passed: true, summary: format!("wrote {}\n", svg.display()) })
}
