//! Scene documents, computation drivers, invariant suites and SVG output
//! for the `hypgeo` command.

pub mod commands;
pub mod error;
pub mod render;
pub mod scene;
pub mod suites;

pub use commands::Outcome;
pub use error::{CliError, EXIT_FAILURE, EXIT_INPUT, EXIT_PASS};
pub use render::{render_malfatti, render_svg, RenderSpec};
pub use scene::SceneDocument;
pub use suites::{run_checks, CheckConfig, CheckReport, SuiteResult};
