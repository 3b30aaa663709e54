//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A state left the physical region (non-positive density or pressure).
    #[error("non-physical state{}: rho = {rho}, p = {p}", cell_label(*.cell))]
    NonPhysicalState {
        rho: f64,
        p: f64,
        /// Interior cell index, when the failure happened inside a grid sweep.
        cell: Option<usize>,
    },

    /// The data states would open a vacuum region; no solution with
    /// positive pressure exists.
    #[error("initial states generate vacuum (pressure positivity condition fails)")]
    VacuumGenerated,

    /// The star-pressure iteration hit its cap. Must not occur on valid
    /// input; indicates a solver bug.
    #[error("star-pressure iteration failed to converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// The linearised solver produced a non-physical star state; the data
    /// are too far from the linearisation regime.
    #[error("linearised star state non-physical: p* = {p_star}, rho*L = {rho_left}, rho*R = {rho_right}")]
    NonPhysicalStar {
        p_star: f64,
        rho_left: f64,
        rho_right: f64,
    },

    /// HLL wave-speed estimates do not satisfy S_L < S_R.
    #[error("degenerate wave speeds: S_L = {s_left} >= S_R = {s_right}")]
    DegenerateSpeeds { s_left: f64, s_right: f64 },

    /// Two fields that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// No reference solution rule applies to this case/grid combination.
    #[error("reference unavailable: {0}")]
    ReferenceUnavailable(String),

    /// Invalid run or case configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A time step failed; carries the step index and time of failure.
    #[error("step {step} at t = {time:.6e} failed: {source}")]
    StepFailed {
        step: u64,
        time: f64,
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed case file: {0}")]
    CaseFile(#[from] serde_json::Error),
}

fn cell_label(cell: Option<usize>) -> String {
    match cell {
        Some(i) => format!(" in cell {i}"),
        None => String::new(),
    }
}

impl Error {
    /// True for failures of the numerics (CLI exit code 1), false for
    /// usage/configuration problems (exit code 2).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonPhysicalState { .. }
            | Error::VacuumGenerated
            | Error::NoConvergence { .. }
            | Error::NonPhysicalStar { .. }
            | Error::DegenerateSpeeds { .. }
            | Error::Io(_) => true,
            Error::StepFailed { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
