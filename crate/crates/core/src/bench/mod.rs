//! Benchmark harness: canonical shock-tube suite, reference solutions,
//! error norms, convergence studies, and run artefacts.

pub mod cases;
pub mod convergence;
pub mod norms;
pub mod output;
pub mod reference;

pub use cases::{builtin_suite, find_case, load_case_file, InitialData, TestCase};
pub use convergence::{convergence_study, ConvergenceTable};
pub use norms::{error_norms, ErrorNorms, NormTriple};
pub use output::{emit_outputs, field_checksum, solution_csv, solution_svg, RunReport, CSV_HEADER};
pub use reference::{classify_reference, exact_reference, Reference, ReferenceKind};

use crate::engine::{run, RunConfig, Scheme, SolutionField};
use crate::error::{Error, Result};

/// A completed benchmark run bundled with its report and reference.
#[derive(Debug)]
pub struct CaseRun {
    pub report: RunReport,
    pub field: SolutionField,
    pub reference: Option<Reference>,
}

/// Run a case with the given scheme and grid, computing the reference and
/// error norms when a reference rule applies.
pub fn run_case(
    case: &TestCase,
    scheme: Scheme,
    n_cells: usize,
    cfl: f64,
    t_end_override: Option<f64>,
) -> Result<CaseRun> {
    let mut case = case.clone();
    if let Some(t_end) = t_end_override {
        case.t_end = t_end;
    }
    case.validate()?;
    let g = case.gas()?;

    let initial = case.initial_field(n_cells, scheme.required_ghost())?;
    let grid = initial.grid;
    let config = RunConfig {
        scheme,
        cfl,
        t_end: case.t_end,
        left_bc: case.left_bc,
        right_bc: case.right_bc,
    };
    let (field, stats) = run(initial, &config, g)?;

    let reference = match exact_reference(&case, &grid) {
        Ok(r) => Some(r),
        Err(Error::ReferenceUnavailable(_)) => None,
        Err(e) => return Err(e),
    };
    let norms = match &reference {
        Some(r) => Some(error_norms(&field, &r.field, g)?),
        None => None,
    };

    let report = RunReport {
        case: case.name.clone(),
        scheme: scheme.name().into(),
        n_cells,
        cfl,
        t_end: case.t_end,
        gamma: case.gamma,
        steps: stats.steps,
        wall_seconds: stats.wall_seconds,
        dt_min: stats.dt_min,
        dt_max: stats.dt_max,
        conservation_drift: stats.conservation_drift,
        norms,
        reference: reference.as_ref().map(|r| r.kind.label()),
    };
    Ok(CaseRun { report, field, reference })
}
