//! Python bindings for the 1D Euler solver laboratory.
//!
//! Exposes the exact Riemann solver with fan sampling, the benchmark
//! runner, and convergence studies. Build as a cdylib and import the
//! resulting shared object as `eulerlab_py` (see python/smoke_test.py).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use eulerlab::bench;
use eulerlab::engine::Scheme;
use eulerlab::euler::{GasModel, PrimitiveState};
use eulerlab::riemann::{solve_star_exact, RiemannFan, WaveKind};
use eulerlab::Error;

fn to_py_err(e: Error) -> PyErr {
    if e.is_numerical() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_scheme(name: &str) -> PyResult<Scheme> {
    Scheme::from_name(name).ok_or_else(|| {
        let names: Vec<_> = Scheme::ALL.iter().map(|s| s.name()).collect();
        PyValueError::new_err(format!(
            "unknown scheme {name:?}; available: {}",
            names.join(", ")
        ))
    })
}

/// Complete solution of a Riemann problem: star-region values, wave kinds,
/// and pointwise sampling of the self-similar fan.
#[pyclass]
struct RiemannSolution {
    fan: RiemannFan,
}

#[pymethods]
impl RiemannSolution {
    #[getter]
    fn p_star(&self) -> f64 {
        self.fan.p_star
    }

    #[getter]
    fn u_star(&self) -> f64 {
        self.fan.u_star
    }

    #[getter]
    fn rho_star_left(&self) -> f64 {
        self.fan.rho_star_left
    }

    #[getter]
    fn rho_star_right(&self) -> f64 {
        self.fan.rho_star_right
    }

    #[getter]
    fn left_wave(&self) -> &'static str {
        wave_name(self.fan.left_wave.kind())
    }

    #[getter]
    fn right_wave(&self) -> &'static str {
        wave_name(self.fan.right_wave.kind())
    }

    /// State (rho, u, p) at similarity coordinate xi = x/t.
    fn sample(&self, xi: f64) -> (f64, f64, f64) {
        let w = self.fan.sample(xi);
        (w.rho, w.u, w.p)
    }

    fn __repr__(&self) -> String {
        format!(
            "RiemannSolution(p_star={:.6e}, u_star={:.6e}, waves=({}, {}))",
            self.fan.p_star,
            self.fan.u_star,
            wave_name(self.fan.left_wave.kind()),
            wave_name(self.fan.right_wave.kind())
        )
    }
}

fn wave_name(kind: WaveKind) -> &'static str {
    match kind {
        WaveKind::Shock => "shock",
        WaveKind::Rarefaction => "rarefaction",
    }
}

/// Result of one benchmark run: cell-centre profiles and the run record.
#[pyclass]
struct RunResult {
    #[pyo3(get)]
    x: Vec<f64>,
    #[pyo3(get)]
    density: Vec<f64>,
    #[pyo3(get)]
    velocity: Vec<f64>,
    #[pyo3(get)]
    pressure: Vec<f64>,
    #[pyo3(get)]
    steps: u64,
    #[pyo3(get)]
    conservation_drift: (f64, f64, f64),
    #[pyo3(get)]
    l1_density_error: Option<f64>,
    #[pyo3(get)]
    reference: Option<String>,
}

#[pymethods]
impl RunResult {
    fn __repr__(&self) -> String {
        format!(
            "RunResult(cells={}, steps={}, l1_density_error={:?})",
            self.x.len(),
            self.steps,
            self.l1_density_error
        )
    }
}

/// Observed convergence orders from a grid-doubling study.
#[pyclass]
struct ConvergenceResult {
    #[pyo3(get)]
    cells: Vec<usize>,
    #[pyo3(get)]
    l1_density: Vec<f64>,
    #[pyo3(get)]
    observed_orders: Vec<f64>,
}

/// Solve the Riemann problem for two (rho, u, p) states exactly.
#[pyfunction]
#[pyo3(signature = (rho_l, u_l, p_l, rho_r, u_r, p_r, gamma = 1.4))]
#[allow(clippy::too_many_arguments)]
fn solve_riemann(
    rho_l: f64,
    u_l: f64,
    p_l: f64,
    rho_r: f64,
    u_r: f64,
    p_r: f64,
    gamma: f64,
) -> PyResult<RiemannSolution> {
    let g = GasModel::new(gamma).map_err(to_py_err)?;
    let wl = PrimitiveState::new(rho_l, u_l, p_l);
    let wr = PrimitiveState::new(rho_r, u_r, p_r);
    if !wl.is_physical() || !wr.is_physical() {
        return Err(PyValueError::new_err("data states must have positive density and pressure"));
    }
    let fan = solve_star_exact(&wl, &wr, g).map_err(to_py_err)?;
    Ok(RiemannSolution { fan })
}

/// Run a built-in benchmark case and return the final profiles.
#[pyfunction]
#[pyo3(signature = (case, scheme, cells, cfl, t_end = None))]
fn run_case(
    case: &str,
    scheme: &str,
    cells: usize,
    cfl: f64,
    t_end: Option<f64>,
) -> PyResult<RunResult> {
    let case = bench::find_case(case)
        .ok_or_else(|| PyValueError::new_err(format!("unknown case {case:?}")))?;
    let scheme = parse_scheme(scheme)?;
    let g = case.gas().map_err(to_py_err)?;
    let run = bench::run_case(&case, scheme, cells, cfl, t_end).map_err(to_py_err)?;

    let n = run.field.grid.n_cells;
    let mut x = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    let mut velocity = Vec::with_capacity(n);
    let mut pressure = Vec::with_capacity(n);
    for (i, q) in run.field.interior().iter().enumerate() {
        let w = q.to_primitive(g).map_err(to_py_err)?;
        x.push(run.field.grid.cell_center(i));
        density.push(w.rho);
        velocity.push(w.u);
        pressure.push(w.p);
    }
    let drift = run.report.conservation_drift;
    Ok(RunResult {
        x,
        density,
        velocity,
        pressure,
        steps: run.report.steps,
        conservation_drift: (drift[0], drift[1], drift[2]),
        l1_density_error: run.report.norms.map(|n| n.rho.l1),
        reference: run.report.reference,
    })
}

/// Grid-refinement study on a built-in case.
#[pyfunction]
fn convergence(
    case: &str,
    scheme: &str,
    base_cells: usize,
    levels: usize,
    cfl: f64,
) -> PyResult<ConvergenceResult> {
    let case = bench::find_case(case)
        .ok_or_else(|| PyValueError::new_err(format!("unknown case {case:?}")))?;
    let scheme = parse_scheme(scheme)?;
    let table = bench::convergence_study(&case, scheme, base_cells, levels, cfl)
        .map_err(to_py_err)?;
    Ok(ConvergenceResult {
        cells: table.cells,
        l1_density: table.l1_density,
        observed_orders: table.observed_orders,
    })
}

#[pyfunction]
fn list_cases() -> Vec<String> {
    bench::builtin_suite().into_iter().map(|c| c.name).collect()
}

#[pyfunction]
fn list_schemes() -> Vec<&'static str> {
    Scheme::ALL.iter().map(|s| s.name()).collect()
}

#[pymodule]
fn eulerlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RiemannSolution>()?;
    m.add_class::<RunResult>()?;
    m.add_class::<ConvergenceResult>()?;
    m.add_function(wrap_pyfunction!(solve_riemann, m)?)?;
    m.add_function(wrap_pyfunction!(run_case, m)?)?;
    m.add_function(wrap_pyfunction!(convergence, m)?)?;
    m.add_function(wrap_pyfunction!(list_cases, m)?)?;
    m.add_function(wrap_pyfunction!(list_schemes, m)?)?;
    Ok(())
}
