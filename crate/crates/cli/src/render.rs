//! SVG drawings in the Poincaré disk.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use hypgeo_core::projplane::polar;
use hypgeo_core::{Category, Cycle, MalfattiSolution, ProjLine, ProjPoint};

use crate::error::CliError;
use crate::scene::SceneDocument;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stroke {
    pub color: String,
    pub width: f64,
    #[serde(default)]
    pub dash: Option<String>,
}

impl Stroke {
    fn new(color: &str, width: f64, dash: Option<&str>) -> Self {
        Stroke { color: color.into(), width, dash: dash.map(Into::into) }
    }

    fn attrs(&self) -> String {
        let mut s = format!(r#"fill="none" stroke="{}" stroke-width="{}""#, self.color, self.width);
        if let Some(d) = &self.dash {
            let _ = write!(s, r#" stroke-dasharray="{d}""#);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Styles {
    pub boundary: Stroke,
    pub point: Stroke,
    pub line: Stroke,
    pub cycle: Stroke,
    /// Polars standing in for ideal points.
    pub polar: Stroke,
    pub given: Stroke,
    pub intermediate: Stroke,
    pub solution: Stroke,
}

impl Default for Styles {
    fn default() -> Self {
        Styles {
            boundary: Stroke::new("#000000", 1.5, None),
            point: Stroke::new("#1f4e9c", 1.0, None),
            line: Stroke::new("#1f4e9c", 1.2, None),
            cycle: Stroke::new("#b03a2e", 1.2, None),
            polar: Stroke::new("#7d3c98", 1.0, Some("2 3")),
            given: Stroke::new("#000000", 1.5, None),
            intermediate: Stroke::new("#7f8c8d", 0.8, Some("5 4")),
            solution: Stroke::new("#c0392b", 3.0, None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    /// Width and height of the canvas in pixels.
    pub size: u32,
    /// Part of the half-size left empty around the disk.
    pub margin: f64,
    pub styles: Styles,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { size: 600, margin: 0.05, styles: Styles::default() }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.size == 0 || !(0.0..0.5).contains(&self.margin) {
            return Err(CliError::Input("canvas size must be positive and margin in [0, 0.5)".into()));
        }
        Ok(())
    }
}

/// Canvas with the disk mapped to pixels; elements are appended in order.
struct Canvas {
    half: f64,
    radius: f64,
    body: String,
}

fn num(v: f64) -> String {
    let r = (v * 1e4).round() / 1e4;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

impl Canvas {
    fn new(spec: &RenderSpec) -> Self {
        let half = spec.size as f64 / 2.0;
        Canvas { half, radius: half * (1.0 - 2.0 * spec.margin), body: String::new() }
    }

    fn px(&self, u: f64, v: f64) -> (f64, f64) {
        (self.half + self.radius * u, self.half - self.radius * v)
    }

    fn dot(&mut self, p: &ProjPoint, style: &Stroke, label: Option<&str>) {
        let (u, v) = p.rep().to_disk();
        let (x, y) = self.px(u, v);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="3" fill="{}" stroke="none"/>"#,
            num(x),
            num(y),
            style.color
        );
        if let Some(l) = label {
            let _ = writeln!(
                self.body,
                r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
                num(x + 5.0),
                num(y - 5.0),
                escape(l)
            );
        }
    }

    /// Disk image of `{Q(x, axis) = level}`: a circle, or a chord when the
    /// image is straight.
    fn cycle(&mut self, c: &Cycle, style: &Stroke) {
        match c.disk_circle() {
            Some(((cx, cy), r)) => {
                let (x, y) = self.px(cx, cy);
                let _ = writeln!(
                    self.body,
                    r#"<circle cx="{}" cy="{}" r="{}" {} clip-path="url(#disk)"/>"#,
                    num(x),
                    num(y),
                    num(r * self.radius),
                    style.attrs()
                );
            }
            None => {
                let a = c.axis();
                let (nx, ny) = (a.x, a.y);
                let n = nx.hypot(ny);
                if n == 0.0 {
                    return;
                }
                // the image is the chord 2 (n · w) = axis.z + level
                let d = (a.z + c.level()) / (2.0 * n);
                if d.abs() >= 1.0 {
                    return;
                }
                let (ux, uy) = (nx / n, ny / n);
                let h = (1.0 - d * d).sqrt();
                let (x1, y1) = self.px(d * ux - h * uy, d * uy + h * ux);
                let (x2, y2) = self.px(d * ux + h * uy, d * uy - h * ux);
                let _ = writeln!(
                    self.body,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {}/>"#,
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2),
                    style.attrs()
                );
            }
        }
    }

    fn line(&mut self, l: &ProjLine, style: &Stroke) {
        if let Ok(c) = Cycle::line(l) {
            self.cycle(&c, style);
        }
    }

    /// Real and boundary points as dots; ideal points by their polars.
    fn point(&mut self, p: &ProjPoint, spec: &RenderSpec, label: Option<&str>) {
        match p.category() {
            Category::Ideal => self.line(&polar(p), &spec.styles.polar),
            _ => self.dot(p, &spec.styles.point, label),
        }
    }

    fn finish(self, spec: &RenderSpec) -> String {
        let size = spec.size;
        let (c, r) = (num(self.half), num(self.radius));
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(out, r#"<defs><clipPath id="disk"><circle cx="{c}" cy="{c}" r="{r}"/></clipPath></defs>"#);
        let _ = writeln!(out, r##"<rect width="{size}" height="{size}" fill="#ffffff"/>"##);
        let _ = writeln!(out, r#"<circle cx="{c}" cy="{c}" r="{r}" {}/>"#, spec.styles.boundary.attrs());
        let _ = writeln!(out, r#"<g clip-path="url(#disk)">"#);
        out.push_str(&self.body);
        out.push_str("</g>\n</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Every element of a scene: points, lines, cycles and triangle sides.
pub fn render_svg(scene: &SceneDocument, spec: &RenderSpec) -> Result<String, CliError> {
    spec.validate()?;
    let mut cv = Canvas::new(spec);
    for (name, _) in scene.lines.iter() {
        cv.line(&scene.line(name)?, &spec.styles.line);
    }
    for (name, _) in scene.cycles.iter() {
        cv.cycle(&scene.cycle(name)?, &spec.styles.cycle);
    }
    for (name, vs) in scene.triangles.iter() {
        let p = [scene.point(&vs[0])?, scene.point(&vs[1])?, scene.point(&vs[2])?];
        for i in 0..3 {
            let side = hypgeo_core::projplane::join(&p[i], &p[(i + 1) % 3])?;
            cv.line(&side, &spec.styles.line);
        }
        let _ = name;
    }
    for (name, _) in scene.points.iter() {
        cv.point(&scene.point(name)?, spec, Some(name));
    }
    Ok(cv.finish(spec))
}

/// Given cycles, the intermediate cycles of the construction dashed and
/// the solution in bold.
pub fn render_malfatti(given: &[Cycle; 3], sol: &MalfattiSolution, spec: &RenderSpec) -> Result<String, CliError> {
    spec.validate()?;
    let mut cv = Canvas::new(spec);
    for c in sol.mirrors.iter().chain(sol.k.iter()).chain(sol.l.iter()) {
        cv.cycle(c, &spec.styles.intermediate);
    }
    for p in &sol.points {
        cv.dot(p, &spec.styles.intermediate, None);
    }
    for c in given {
        cv.cycle(c, &spec.styles.given);
    }
    for c in &sol.m {
        cv.cycle(c, &spec.styles.solution);
    }
    Ok(cv.finish(spec))
}
