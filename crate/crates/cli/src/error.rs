use thiserror::Error;

use hypgeo_core::{CenterError, CycleError, MalfattiError, ProjError, TrigError};

/// Exit status for a passing run.
pub const EXIT_PASS: i32 = 0;
/// Exit status when an invariant or a construction fails.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read or write {0}")]
    Io(String),
    #[error("invalid scene document: {0}")]
    Parse(String),
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("step {step}: {source}")]
    Malfatti {
        step: u8,
        #[source]
        source: MalfattiError,
    },
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Trig(#[from] TrigError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malfatti { step, .. } if *step > 0 => EXIT_FAILURE,
            _ => EXIT_INPUT,
        }
    }
}

/// Step of Steiner's construction at which an error arises; 0 for the
/// validation of the given cycles.
pub fn malfatti_step(e: &MalfattiError) -> u8 {
    match e {
        MalfattiError::Overlapping(..) | MalfattiError::InternallyTangent(..) | MalfattiError::Cycle(_) => 0,
        MalfattiError::NoExternalCenter(..) => 1,
        MalfattiError::NoSolution(s) => *s,
        MalfattiError::FourthTangencyFailed(_) => 4,
        MalfattiError::NoConvergence(_) => 0,
    }
}

impl From<MalfattiError> for CliError {
    fn from(source: MalfattiError) -> Self {
        CliError::Malfatti { step: malfatti_step(&source), source }
    }
}
