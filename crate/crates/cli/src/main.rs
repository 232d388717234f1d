use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hypgeo_cli::commands::{cmd_check, cmd_invert, cmd_malfatti, cmd_render, cmd_similitude, cmd_triangle, read_scene};
use hypgeo_cli::{CheckConfig, CliError, Outcome, RenderSpec, SceneDocument, EXIT_FAILURE, EXIT_PASS};

/// Hyperbolic plane geometry on scene documents.
#[derive(Debug, Parser)]
#[command(name = "hypgeo", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Replaces the default tolerances.
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Centers, radii and identity residuals of a triangle.
    Triangle {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Triangle name in the scene.
        name: String,
    },
    /// Malfatti cycles of three given cycles by Steiner's construction.
    Malfatti {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Names of the three given cycles.
        #[arg(num_args = 3, required = true)]
        cycles: Vec<String>,
        /// Also draw the construction into this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Image width and height in pixels.
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
    /// Images of points and cycles in the inversion at a cycle.
    Invert {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Cycle to invert in.
        mirror: String,
        /// Points and cycles to map.
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Centers of similitude of two cycles, or the axes of three.
    Similitude {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Two or three cycle names.
        #[arg(num_args = 2..=3, required = true)]
        cycles: Vec<String>,
    },
    /// Runs the invariant suites.
    Check {
        /// Also check the pairs and triangles of this scene.
        #[arg(long)]
        scene: Option<PathBuf>,
        /// Random cases per suite.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Seed of the random suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draws a scene in the Poincaré disk.
    Render {
        /// Scene document (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Output SVG file.
        #[arg(long)]
        svg: PathBuf,
        /// Image width and height in pixels.
        #[arg(long, default_value_t = 600)]
        size: u32,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let spec = |size| RenderSpec { size, ..RenderSpec::default() };
    match &cli.command {
        Command::Triangle { scene, name } => cmd_triangle(&read_scene(scene)?, name, cli.tol),
        Command::Malfatti { scene, cycles, svg, size } => {
            let names = [cycles[0].clone(), cycles[1].clone(), cycles[2].clone()];
            cmd_malfatti(&read_scene(scene)?, &names, svg.as_deref(), &spec(*size), cli.tol)
        }
        Command::Invert { scene, mirror, targets } => cmd_invert(&read_scene(scene)?, mirror, targets, cli.tol),
        Command::Similitude { scene, cycles } => cmd_similitude(&read_scene(scene)?, cycles, cli.tol),
        Command::Check { scene, random, seed } => {
            let doc: Option<SceneDocument> = scene.as_deref().map(read_scene).transpose()?;
            cmd_check(doc.as_ref(), &CheckConfig { random: *random, seed: *seed, tol: cli.tol })
        }
        Command::Render { scene, svg, size } => cmd_render(&read_scene(scene)?, svg, &spec(*size)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("value serializes"));
            } else {
                print!("{}", out.summary);
            }
            ExitCode::from(if out.passed { EXIT_PASS } else { EXIT_FAILURE } as u8)
        }
        Err(e) => {
            eprintln!("hypgeo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
