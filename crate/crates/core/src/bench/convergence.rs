//! Grid-refinement studies: observed convergence orders from L1 density
//! errors on a doubling grid sequence.

use serde::Serialize;

use crate::bench::cases::TestCase;
use crate::bench::norms::error_norms;
use crate::bench::reference::{classify_reference, exact_reference};
use crate::engine::{run, RunConfig, Scheme};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub case: String,
    pub scheme: String,
    pub cells: Vec<usize>,
    pub l1_density: Vec<f64>,
    /// Pairwise observed order p_k = log2(E_k / E_{k+1}).
    pub observed_orders: Vec<f64>,
}

/// Run `case` with `scheme` on a strictly doubling grid sequence starting
/// at `base_cells` and report L1 density errors and observed orders.
///
/// The random choice method is excluded (pointwise sampling has no
/// classical order on smooth data), and only cases with a closed-form
/// reference qualify.
pub fn convergence_study(
    case: &TestCase,
    scheme: Scheme,
    base_cells: usize,
    levels: usize,
    cfl: f64,
) -> Result<ConvergenceTable> {
    case.validate()?;
    if scheme == Scheme::RandomChoice {
        return Err(Error::Config(
            "the random choice method is excluded from convergence studies".into(),
        ));
    }
    if levels < 2 {
        return Err(Error::Config("a convergence study needs at least 2 levels".into()));
    }
    if !classify_reference(case)?.is_exact() {
        return Err(Error::Config(format!(
            "case {} has no closed-form reference and is excluded from convergence studies",
            case.name
        )));
    }

    let g = case.gas()?;
    let config = RunConfig {
        scheme,
        cfl,
        t_end: case.t_end,
        left_bc: case.left_bc,
        right_bc: case.right_bc,
    };

    let mut cells = Vec::with_capacity(levels);
    let mut l1_density = Vec::with_capacity(levels);
    let mut n = base_cells;
    for _ in 0..levels {
        let initial = case.initial_field(n, scheme.required_ghost())?;
        let grid = initial.grid;
        let (field, _) = run(initial, &config, g)?;
        let reference = exact_reference(case, &grid)?;
        let norms = error_norms(&field, &reference.field, g)?;
        cells.push(n);
        l1_density.push(norms.rho.l1);
        n *= 2;
    }

    let observed_orders = l1_density
        .windows(2)
        .map(|e| (e[0] / e[1]).log2())
        .collect();

    Ok(ConvergenceTable {
        case: case.name.clone(),
        scheme: scheme.name().into(),
        cells,
        l1_density,
        observed_orders,
    })
}
