//! Finite-volume driver: 1D grid with ghost cells, boundary conditions,
//! CFL time-step control, the conservative one-step update, and Glimm's
//! random choice method as a non-conservative alternative update.
//!
//! All sweeps are sequential with fixed evaluation order, so repeated runs
//! with identical configuration are bitwise identical.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{ConservedState, FluxVector, GasModel, PrimitiveState};
use crate::riemann::solve_star_exact;
use crate::schemes::{
    ader2_flux, davis_wave_speeds, godunov_flux, hll_flux, lax_friedrichs_flux,
    lax_wendroff_flux, muscl_reconstruct, FluxMethod, MeshRatio, StarSolver,
};

/// Uniform 1D grid with a ghost layer on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub n_ghost: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize, n_ghost: usize) -> Result<Self> {
        let ordered = x_left.is_finite() && x_right.is_finite() && x_left < x_right;
        if !ordered {
            return Err(Error::Config(format!(
                "domain bounds must satisfy x_left < x_right, got [{x_left}, {x_right}]"
            )));
        }
        if n_cells < 4 {
            return Err(Error::Config(format!("need at least 4 cells, got {n_cells}")));
        }
        if n_ghost < 1 {
            return Err(Error::Config("need at least one ghost cell per side".into()));
        }
        let dx = (x_right - x_left) / n_cells as f64;
        Ok(Grid1D { x_left, x_right, n_cells, n_ghost, dx })
    }

    /// Centre of interior cell `i` (0-based, ghosts excluded).
    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx
    }

    fn total_cells(&self) -> usize {
        self.n_cells + 2 * self.n_ghost
    }
}

/// Cell-averaged conserved states on a grid, ghosts included, plus the
/// current time and step counter.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub grid: Grid1D,
    cells: Vec<ConservedState>,
    pub time: f64,
    pub step: u64,
}

impl SolutionField {
    /// Build a field by evaluating a primitive-state profile at cell
    /// centres. Ghost cells start as copies of the nearest interior cell.
    pub fn from_profile<F>(grid: Grid1D, g: GasModel, profile: F) -> Self
    where
        F: Fn(f64) -> PrimitiveState,
    {
        let ng = grid.n_ghost;
        let mut cells = Vec::with_capacity(grid.total_cells());
        for i in 0..grid.total_cells() {
            let interior = i.saturating_sub(ng).min(grid.n_cells - 1);
            cells.push(profile(grid.cell_center(interior)).to_conserved(g));
        }
        SolutionField { grid, cells, time: 0.0, step: 0 }
    }

    pub fn interior(&self) -> &[ConservedState] {
        let ng = self.grid.n_ghost;
        &self.cells[ng..ng + self.grid.n_cells]
    }

    pub fn interior_mut(&mut self) -> &mut [ConservedState] {
        let ng = self.grid.n_ghost;
        let n = self.grid.n_cells;
        &mut self.cells[ng..ng + n]
    }

    /// All cells including ghosts.
    pub fn cells(&self) -> &[ConservedState] {
        &self.cells
    }

    /// Componentwise totals over the interior, fixed-order summation.
    pub fn totals(&self) -> [f64; 3] {
        let mut t = [0.0; 3];
        for q in self.interior() {
            t[0] += q.rho;
            t[1] += q.mom;
            t[2] += q.energy;
        }
        t
    }

    fn validate_interior(&self, g: GasModel) -> Result<()> {
        for (i, q) in self.interior().iter().enumerate() {
            if let Err(Error::NonPhysicalState { rho, p, .. }) = q.to_primitive(g) {
                return Err(Error::NonPhysicalState { rho, p, cell: Some(i) });
            }
        }
        Ok(())
    }
}

/// Ghost-cell prescription per domain side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Transmissive,
    Reflective,
    Periodic,
}

/// Fill the ghost layers. Transmissive mirrors the interior states,
/// reflective mirrors them with negated momentum, periodic wraps. Periodic
/// must be set on both sides.
pub fn apply_boundary(field: &mut SolutionField, left: BoundaryKind, right: BoundaryKind) -> Result<()> {
    if (left == BoundaryKind::Periodic) != (right == BoundaryKind::Periodic) {
        return Err(Error::Config("periodic boundaries must be set on both sides".into()));
    }
    let ng = field.grid.n_ghost;
    let n = field.grid.n_cells;
    for k in 0..ng {
        // Ghost at distance k+1 from the boundary pairs with the interior
        // cell at distance k+1.
        let left_ghost = ng - 1 - k;
        let left_src = ng + k;
        field.cells[left_ghost] = match left {
            BoundaryKind::Transmissive => field.cells[left_src],
            BoundaryKind::Reflective => {
                let q = field.cells[left_src];
                ConservedState::new(q.rho, -q.mom, q.energy)
            }
            BoundaryKind::Periodic => field.cells[ng + n - 1 - k],
        };
        let right_ghost = ng + n + k;
        let right_src = ng + n - 1 - k;
        field.cells[right_ghost] = match right {
            BoundaryKind::Transmissive => field.cells[right_src],
            BoundaryKind::Reflective => {
                let q = field.cells[right_src];
                ConservedState::new(q.rho, -q.mom, q.energy)
            }
            BoundaryKind::Periodic => field.cells[ng + k],
        };
    }
    Ok(())
}

/// CFL time step: dt = cfl dx / max(|u| + a) over the interior, clamped so
/// the run lands exactly on `t_end`.
pub fn compute_dt(field: &SolutionField, g: GasModel, cfl: f64, t_end: f64) -> Result<f64> {
    let mut max_speed = 0.0f64;
    for q in field.interior() {
        let w = q.to_primitive(g)?;
        max_speed = max_speed.max(w.u.abs() + w.sound_speed(g));
    }
    let mut dt = cfl * field.grid.dx / max_speed;
    if field.time + dt > t_end {
        dt = t_end - field.time;
    }
    Ok(dt)
}

/// Base-2 radical inverse: the van der Corput draw for index n >= 1.
pub fn van_der_corput(n: u64) -> f64 {
    let mut q = 0.0;
    let mut f = 0.5;
    let mut i = n;
    while i > 0 {
        if i & 1 == 1 {
            q += f;
        }
        f *= 0.5;
        i >>= 1;
    }
    q
}

/// Quasi-random draw state of the random choice method: one draw per time
/// level, shared by all cells, deterministic given the index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RcmState {
    pub index: u64,
    pub theta: f64,
}

impl RcmState {
    pub fn new() -> Self {
        RcmState { index: 0, theta: 0.0 }
    }

    /// Advance the sequence and return the fresh draw in (0, 1).
    pub fn advance(&mut self) -> f64 {
        self.index += 1;
        self.theta = van_der_corput(self.index);
        self.theta
    }
}

impl Default for RcmState {
    fn default() -> Self {
        Self::new()
    }
}

/// One conservative finite-volume step with the selected interface flux:
/// Q_i <- Q_i - dt/dx (F_{i+1/2} - F_{i-1/2}). Boundaries must already be
/// applied; interior positivity is re-validated afterwards.
pub fn conservative_step(
    field: &mut SolutionField,
    method: FluxMethod,
    dt: f64,
    g: GasModel,
) -> Result<()> {
    let ng = field.grid.n_ghost;
    let n = field.grid.n_cells;
    let r = MeshRatio { dx: field.grid.dx, dt };

    if matches!(method, FluxMethod::Ader2 { .. }) && ng < 2 {
        return Err(Error::Config("ader2 needs two ghost cells per side".into()));
    }

    // Interface k sits between storage cells ng-1+k and ng+k, k = 0..=n.
    let mut fluxes: Vec<FluxVector> = Vec::with_capacity(n + 1);
    match method {
        FluxMethod::Ader2 { limiter } => {
            let slopes = muscl_reconstruct(&field.cells, limiter);
            for k in 0..=n {
                let li = ng - 1 + k;
                let ri = ng + k;
                let sl = slopes.get(li);
                let sr = slopes.get(ri);
                let ql = field.cells[li].to_array();
                let qr = field.cells[ri].to_array();
                let ql_face = ConservedState::from_array([
                    ql[0] + 0.5 * sl[0],
                    ql[1] + 0.5 * sl[1],
                    ql[2] + 0.5 * sl[2],
                ]);
                let qr_face = ConservedState::from_array([
                    qr[0] - 0.5 * sr[0],
                    qr[1] - 0.5 * sr[1],
                    qr[2] - 0.5 * sr[2],
                ]);
                fluxes.push(ader2_flux(&ql_face, &qr_face, sl, sr, r, g)?);
            }
        }
        _ => {
            for k in 0..=n {
                let ql = &field.cells[ng - 1 + k];
                let qr = &field.cells[ng + k];
                let f = match method {
                    FluxMethod::GodunovExact => godunov_flux(StarSolver::Exact, ql, qr, g)?,
                    FluxMethod::GodunovLinearised => {
                        godunov_flux(StarSolver::Linearised, ql, qr, g)?
                    }
                    FluxMethod::Hll => {
                        let wl = ql.to_primitive(g)?;
                        let wr = qr.to_primitive(g)?;
                        let (s_left, s_right) = davis_wave_speeds(&wl, &wr, g);
                        hll_flux(ql, qr, s_left, s_right, g)?
                    }
                    FluxMethod::LaxFriedrichs => lax_friedrichs_flux(ql, qr, r, g)?,
                    FluxMethod::LaxWendroff => lax_wendroff_flux(ql, qr, r, g)?,
                    FluxMethod::Ader2 { .. } => unreachable!(),
                };
                fluxes.push(f);
            }
        }
    }

    let lambda = dt / field.grid.dx;
    for i in 0..n {
        let fl = fluxes[i].to_array();
        let fr = fluxes[i + 1].to_array();
        let q = field.cells[ng + i].to_array();
        field.cells[ng + i] = ConservedState::from_array([
            q[0] - lambda * (fr[0] - fl[0]),
            q[1] - lambda * (fr[1] - fl[1]),
            q[2] - lambda * (fr[2] - fl[2]),
        ]);
    }
    field.validate_interior(g)?;
    field.time += dt;
    field.step += 1;
    Ok(())
}

/// One random-choice step (unsplit, single grid).
///
/// One draw theta per time level is shared by all cells. For theta <= 1/2
/// cell i takes a pointwise sample of the left-interface fan at
/// xi = theta dx/dt (the left half of the cell); otherwise it samples the
/// right-interface fan at xi = (theta - 1) dx/dt. Requires cfl <= 1/2 so
/// neighbouring fans never interact within a step.
///
/// The new value is a sample, not an average: when a sample reproduces one
/// of the interface data states bitwise, the corresponding cell value is
/// reused directly so no conversion round-trip can perturb it.
pub fn rcm_step(
    field: &mut SolutionField,
    rcm: &mut RcmState,
    dt: f64,
    g: GasModel,
) -> Result<()> {
    let ng = field.grid.n_ghost;
    let n = field.grid.n_cells;
    let grid_speed = field.grid.dx / dt;
    let theta = rcm.advance();

    let old = field.cells.clone();
    let primitive = |i: usize| old[i].to_primitive(g);

    for i in 0..n {
        let cell = ng + i;
        let (left_idx, right_idx, xi) = if theta <= 0.5 {
            (cell - 1, cell, theta * grid_speed)
        } else {
            (cell, cell + 1, (theta - 1.0) * grid_speed)
        };
        let wl = primitive(left_idx)?;
        let wr = primitive(right_idx)?;
        let fan = solve_star_exact(&wl, &wr, g)?;
        let w = fan.sample(xi);
        field.cells[cell] = if w == wl {
            old[left_idx]
        } else if w == wr {
            old[right_idx]
        } else {
            w.to_conserved(g)
        };
    }
    field.validate_interior(g)?;
    field.time += dt;
    field.step += 1;
    Ok(())
}

/// Update rule for a run: a conservative interface flux or the random
/// choice method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Scheme {
    Flux(FluxMethod),
    RandomChoice,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::Flux(FluxMethod::GodunovExact),
        Scheme::Flux(FluxMethod::GodunovLinearised),
        Scheme::Flux(FluxMethod::Hll),
        Scheme::Flux(FluxMethod::LaxFriedrichs),
        Scheme::Flux(FluxMethod::LaxWendroff),
        Scheme::Flux(FluxMethod::Ader2 { limiter: crate::schemes::Limiter::Minmod }),
        Scheme::RandomChoice,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Flux(m) => m.name(),
            Scheme::RandomChoice => "rcm",
        }
    }

    pub fn from_name(name: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Ghost layer width the scheme needs; ADER2 reaches one cell further
    /// through its slopes.
    pub fn required_ghost(&self) -> usize {
        match self {
            Scheme::Flux(FluxMethod::Ader2 { .. }) => 2,
            _ => 1,
        }
    }

    pub fn is_conservative(&self) -> bool {
        matches!(self, Scheme::Flux(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub cfl: f64,
    pub t_end: f64,
    pub left_bc: BoundaryKind,
    pub right_bc: BoundaryKind,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let cfl_ok = self.cfl > 0.0 && self.cfl <= 1.0;
        if !cfl_ok {
            return Err(Error::Config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if self.scheme == Scheme::RandomChoice && self.cfl > 0.5 {
            return Err(Error::Config(format!(
                "the random choice method requires cfl <= 0.5, got {}",
                self.cfl
            )));
        }
        let t_ok = self.t_end >= 0.0;
        if !t_ok {
            return Err(Error::Config(format!("t_end must be >= 0, got {}", self.t_end)));
        }
        if (self.left_bc == BoundaryKind::Periodic) != (self.right_bc == BoundaryKind::Periodic) {
            return Err(Error::Config("periodic boundaries must be set on both sides".into()));
        }
        Ok(())
    }
}

/// Summary of a completed run.
#[derive(Debug, Clone, Serialize)]
pub struct RunStats {
    pub steps: u64,
    pub wall_seconds: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Componentwise |total(end) - total(start)| / max(|total(start)|, 1).
    pub conservation_drift: [f64; 3],
}

/// Drive a field to `config.t_end`: apply boundaries, pick a CFL step,
/// advance; repeat. Errors carry the failing step index and time.
pub fn run(mut field: SolutionField, config: &RunConfig, g: GasModel) -> Result<(SolutionField, RunStats)> {
    config.validate()?;
    if field.grid.n_ghost < config.scheme.required_ghost() {
        return Err(Error::Config(format!(
            "{} needs {} ghost cells per side, grid has {}",
            config.scheme.name(),
            config.scheme.required_ghost(),
            field.grid.n_ghost
        )));
    }

    let start = Instant::now();
    let totals_initial = field.totals();
    let mut rcm = RcmState::new();
    let mut dt_min = f64::INFINITY;
    let mut dt_max = 0.0f64;
    let mut steps = 0u64;

    while field.time < config.t_end {
        apply_boundary(&mut field, config.left_bc, config.right_bc)?;
        let dt = compute_dt(&field, g, config.cfl, config.t_end)
            .map_err(|e| at_step(e, steps, field.time))?;
        let advancing = dt > 0.0 && field.time + dt > field.time;
        if !advancing {
            // Remaining interval below floating-point resolution.
            field.time = config.t_end;
            break;
        }
        let final_step = field.time + dt >= config.t_end;
        let result = match config.scheme {
            Scheme::Flux(method) => conservative_step(&mut field, method, dt, g),
            Scheme::RandomChoice => rcm_step(&mut field, &mut rcm, dt, g),
        };
        result.map_err(|e| at_step(e, steps, field.time))?;
        if final_step {
            field.time = config.t_end;
        }
        dt_min = dt_min.min(dt);
        dt_max = dt_max.max(dt);
        steps += 1;
    }

    let totals_final = field.totals();
    let mut drift = [0.0; 3];
    for c in 0..3 {
        drift[c] = (totals_final[c] - totals_initial[c]).abs() / totals_initial[c].abs().max(1.0);
    }
    let stats = RunStats {
        steps,
        wall_seconds: start.elapsed().as_secs_f64(),
        dt_min: if steps == 0 { 0.0 } else { dt_min },
        dt_max,
        conservation_drift: drift,
    };
    Ok((field, stats))
}

fn at_step(e: Error, step: u64, time: f64) -> Error {
    Error::StepFailed { step, time, source: Box::new(e) }
}
