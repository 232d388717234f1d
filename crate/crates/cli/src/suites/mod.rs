//! Invariant suites run by `check`.
//!
//! Every random suite draws from its own ChaCha8 stream, selected by the
//! suite index, so a seed fixes each report bit for bit.

mod arithmetic;
mod measures;
mod shapes;
mod tables;
pub(crate) mod triangles;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::scene::SceneDocument;

pub use tables::{disk_distance, tangent_angle};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    /// Largest residual over the cases; `f64::MAX` stands for a
    /// non-finite residual.
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub seed: u64,
    pub random: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    /// Random cases per suite; table cells get twice as many.
    pub random: usize,
    pub seed: u64,
    /// Replaces every default tolerance.
    pub tol: Option<f64>,
}

const MAX_NOTES: usize = 8;

/// Running maximum of residuals with template failures and notes.
pub(crate) struct Tally {
    name: &'static str,
    tol: f64,
    cases: usize,
    max: f64,
    broken: bool,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn new(name: &'static str, default_tol: f64, cfg: &CheckConfig) -> Self {
        Tally { name, tol: cfg.tol.unwrap_or(default_tol), cases: 0, max: 0.0, broken: false, notes: Vec::new() }
    }

    pub(crate) fn tol(&self) -> f64 {
        self.tol
    }

    /// Counts one case with its residual.
    pub(crate) fn case(&mut self, residual: f64) {
        self.cases += 1;
        self.residual(residual);
    }

    /// Adds a residual to the current case.
    pub(crate) fn residual(&mut self, r: f64) {
        if r.is_finite() {
            self.max = self.max.max(r.abs());
        } else {
            self.max = f64::MAX;
        }
    }

    /// Records a structural check that has no residual.
    pub(crate) fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.broken = true;
            self.note(what());
        }
    }

    pub(crate) fn note(&mut self, s: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(s);
        }
    }

    pub(crate) fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            cases: self.cases,
            max_residual: self.max,
            tol: self.tol,
            passed: !self.broken && self.max <= self.tol,
            notes: self.notes,
        }
    }
}

pub(crate) fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn check_tol(t: f64) -> Result<(), CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(CliError::Input(format!("tolerance must be a positive number, got {t}")))
    }
}

/// Runs the random suites and, when a scene is given, the scene suites.
pub fn run_checks(scene: Option<&SceneDocument>, cfg: &CheckConfig) -> Result<CheckReport, CliError> {
    if let Some(t) = cfg.tol {
        check_tol(t)?;
    }
    let mut suites = Vec::new();
    if cfg.random > 0 {
        let n = cfg.random;
        let s = cfg.seed;
        suites.push(arithmetic::extended_arithmetic(n, cfg));
        suites.push(tables::point_tables(n * 2, &mut rng_for(s, 1), cfg));
        suites.push(tables::line_tables(n * 2, &mut rng_for(s, 2), cfg));
        suites.push(shapes::extended_sine(n, &mut rng_for(s, 3), cfg));
        suites.push(shapes::pentagons(n, &mut rng_for(s, 4), cfg));
        suites.push(measures::power(n, &mut rng_for(s, 5), cfg));
        suites.extend(measures::similitude(n, &mut rng_for(s, 6), cfg));
        suites.push(triangles::identities(n, &mut rng_for(s, 7), cfg));
        suites.push(triangles::oi_distance(n, &mut rng_for(s, 8), cfg));
        suites.push(triangles::limits(n, &mut rng_for(s, 9), cfg));
        suites.push(triangles::malfatti(n, &mut rng_for(s, 10), cfg));
    }
    if let Some(doc) = scene {
        let mut local = *cfg;
        if local.tol.is_none() {
            if let Some(t) = doc.metadata.tolerance {
                check_tol(t)?;
                local.tol = Some(t);
            }
        }
        suites.push(tables::scene_pairs(doc, &local)?);
        suites.push(triangles::scene_triangles(doc, &local)?);
    }
    let passed = suites.iter().all(|s| s.passed);
    Ok(CheckReport { seed: cfg.seed, random: cfg.random, passed, suites })
}
