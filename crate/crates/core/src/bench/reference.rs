//! Reference solutions for error measurement.
//!
//! Single-discontinuity cases have a closed-form self-similar solution as
//! long as the fan has not reached the domain boundary; the density wave is
//! advected exactly; the reflective blast case has no closed form and falls
//! back to a fine-grid run, labelled as such. References are evaluated at
//! cell centres (midpoint sampling is second-order accurate, sufficient for
//! measuring schemes of order <= 2).

use serde::Serialize;

use crate::bench::cases::{InitialData, TestCase};
use crate::engine::{BoundaryKind, Grid1D, RunConfig, Scheme, SolutionField};
use crate::error::{Error, Result};
use crate::euler::ConservedState;
use crate::riemann::solve_star_exact;
use crate::schemes::FluxMethod;

/// Fine-grid resolution used when no closed form exists.
pub const FINE_GRID_CELLS: usize = 20_000;

/// How a reference field was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// Sampled exact Riemann fan.
    ExactFan,
    /// Exactly advected initial profile.
    AdvectedProfile,
    /// Cell-averaged restriction of a fine-grid run.
    FineGrid,
}

impl ReferenceKind {
    pub fn label(&self) -> String {
        match self {
            ReferenceKind::ExactFan => "exact-fan".into(),
            ReferenceKind::AdvectedProfile => "advected-profile".into(),
            ReferenceKind::FineGrid => format!("fine-grid-godunov-exact-n{FINE_GRID_CELLS}"),
        }
    }

    /// Only closed-form references qualify for convergence studies.
    pub fn is_exact(&self) -> bool {
        !matches!(self, ReferenceKind::FineGrid)
    }
}

/// A reference field together with its provenance label.
#[derive(Debug, Clone)]
pub struct Reference {
    pub field: SolutionField,
    pub kind: ReferenceKind,
}

/// Which reference rule applies to a case. Does not compute anything.
pub fn classify_reference(case: &TestCase) -> Result<ReferenceKind> {
    match &case.initial {
        InitialData::DensityWave { .. } => Ok(ReferenceKind::AdvectedProfile),
        InitialData::Diaphragm { .. } => {
            if case.left_bc == BoundaryKind::Reflective || case.right_bc == BoundaryKind::Reflective
            {
                Ok(ReferenceKind::FineGrid)
            } else {
                Ok(ReferenceKind::ExactFan)
            }
        }
    }
}

/// Reference solution of `case` at `case.t_end`, evaluated on `grid`.
pub fn exact_reference(case: &TestCase, grid: &Grid1D) -> Result<Reference> {
    case.validate()?;
    if grid.x_left != case.x_left || grid.x_right != case.x_right {
        return Err(Error::GridMismatch(
            "reference grid does not span the case domain".into(),
        ));
    }
    let kind = classify_reference(case)?;
    if case.t_end == 0.0 {
        return Ok(Reference { field: case.initial_field(grid.n_cells, grid.n_ghost)?, kind });
    }
    match kind {
        ReferenceKind::AdvectedProfile => advected_reference(case, grid),
        ReferenceKind::ExactFan => fan_reference(case, grid),
        ReferenceKind::FineGrid => fine_grid_reference(case, grid),
    }
}

fn advected_reference(case: &TestCase, grid: &Grid1D) -> Result<Reference> {
    let g = case.gas()?;
    let (velocity, span) = match &case.initial {
        InitialData::DensityWave { velocity, .. } => (*velocity, case.x_right - case.x_left),
        _ => unreachable!(),
    };
    // Reduce the translation first so a whole number of periods is an
    // exact no-op.
    let shift = (velocity * case.t_end).rem_euclid(span);
    let field = SolutionField::from_profile(*grid, g, |x| {
        let mut xr = x - shift;
        if xr < case.x_left {
            xr += span;
        }
        case.profile(xr)
    });
    Ok(Reference { field: with_time(field, case.t_end), kind: ReferenceKind::AdvectedProfile })
}

fn fan_reference(case: &TestCase, grid: &Grid1D) -> Result<Reference> {
    let g = case.gas()?;
    let (left, right, x0) = match &case.initial {
        InitialData::Diaphragm { left, right, x0 } => (*left, *right, *x0),
        _ => unreachable!(),
    };
    let fan = solve_star_exact(&left, &right, g)?;
    // The closed form only holds while the solution at the domain edges is
    // still the unperturbed data.
    let xi_left = (case.x_left - x0) / case.t_end;
    let xi_right = (case.x_right - x0) / case.t_end;
    if fan.sample(xi_left) != left || fan.sample(xi_right) != right {
        return Err(Error::ReferenceUnavailable(format!(
            "case {}: the fan reaches the domain boundary before t = {}",
            case.name, case.t_end
        )));
    }
    let field = SolutionField::from_profile(*grid, g, |x| fan.sample((x - x0) / case.t_end));
    Ok(Reference { field: with_time(field, case.t_end), kind: ReferenceKind::ExactFan })
}

fn fine_grid_reference(case: &TestCase, grid: &Grid1D) -> Result<Reference> {
    let g = case.gas()?;
    if !FINE_GRID_CELLS.is_multiple_of(grid.n_cells) {
        return Err(Error::ReferenceUnavailable(format!(
            "case {}: fine-grid restriction needs a cell count dividing {FINE_GRID_CELLS}, got {}",
            case.name, grid.n_cells
        )));
    }
    let fine_initial = case.initial_field(FINE_GRID_CELLS, 1)?;
    let config = RunConfig {
        scheme: Scheme::Flux(FluxMethod::GodunovExact),
        cfl: 0.9,
        t_end: case.t_end,
        left_bc: case.left_bc,
        right_bc: case.right_bc,
    };
    let (fine, _) = crate::engine::run(fine_initial, &config, g)?;

    // Conservative restriction: block averages of the fine cell averages.
    let block = FINE_GRID_CELLS / grid.n_cells;
    let fine_interior = fine.interior();
    let mut coarse = case.initial_field(grid.n_cells, grid.n_ghost)?;
    for (i, q) in coarse.interior_mut().iter_mut().enumerate() {
        let mut acc = [0.0; 3];
        for k in 0..block {
            let fq = fine_interior[i * block + k].to_array();
            for c in 0..3 {
                acc[c] += fq[c];
            }
        }
        *q = ConservedState::from_array([
            acc[0] / block as f64,
            acc[1] / block as f64,
            acc[2] / block as f64,
        ]);
    }
    Ok(Reference { field: with_time(coarse, case.t_end), kind: ReferenceKind::FineGrid })
}

fn with_time(mut field: SolutionField, t: f64) -> SolutionField {
    field.time = t;
    field
}
