//! Ideal-gas Euler equation algebra: state representations, conversions,
//! physical flux, and characteristic speeds.
//!
//! All quantities are 64-bit floats and the conserved layout is fixed as
//! (mass, momentum, energy) everywhere, including file output. The ratio of
//! specific heats is carried explicitly through every call so that cases may
//! override it per run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ideal-gas parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    pub gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 1.0 {
            return Err(Error::Config(format!(
                "ratio of specific heats must be finite and > 1, got {gamma}"
            )));
        }
        Ok(GasModel { gamma })
    }

    pub fn gamma_minus_one(&self) -> f64 {
        self.gamma - 1.0
    }
}

impl Default for GasModel {
    /// Diatomic gas, the benchmark-suite default.
    fn default() -> Self {
        GasModel { gamma: 1.4 }
    }
}

/// Gas state in primitive variables (density, velocity, pressure).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

/// Gas state in conserved variables (density, momentum density, total
/// energy density).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservedState {
    pub rho: f64,
    pub mom: f64,
    pub energy: f64,
}

/// Physical flux of the conserved quantities, same component layout as
/// [`ConservedState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxVector {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
}

impl PrimitiveState {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        PrimitiveState { rho, u, p }
    }

    pub fn is_physical(&self) -> bool {
        self.rho > 0.0 && self.p > 0.0 && self.rho.is_finite() && self.u.is_finite() && self.p.is_finite()
    }

    /// a = sqrt(gamma p / rho)
    pub fn sound_speed(&self, g: GasModel) -> f64 {
        (g.gamma * self.p / self.rho).sqrt()
    }

    /// Characteristic speeds (u - a, u, u + a), strictly increasing for any
    /// physical state.
    pub fn eigenvalues(&self, g: GasModel) -> (f64, f64, f64) {
        let a = self.sound_speed(g);
        (self.u - a, self.u, self.u + a)
    }

    pub fn to_conserved(&self, g: GasModel) -> ConservedState {
        let mom = self.rho * self.u;
        ConservedState {
            rho: self.rho,
            mom,
            energy: self.p / g.gamma_minus_one() + 0.5 * mom * self.u,
        }
    }

    /// F = (rho u, rho u^2 + p, u (E + p))
    pub fn physical_flux(&self, g: GasModel) -> FluxVector {
        let mom = self.rho * self.u;
        let energy = self.p / g.gamma_minus_one() + 0.5 * mom * self.u;
        FluxVector {
            mass: mom,
            momentum: mom * self.u + self.p,
            energy: self.u * (energy + self.p),
        }
    }

    /// Mirror image under x -> -x.
    pub fn mirrored(&self) -> Self {
        PrimitiveState { rho: self.rho, u: -self.u, p: self.p }
    }
}

impl ConservedState {
    pub fn new(rho: f64, mom: f64, energy: f64) -> Self {
        ConservedState { rho, mom, energy }
    }

    /// Exact algebraic inverse of [`PrimitiveState::to_conserved`].
    /// Fails with [`Error::NonPhysicalState`] when the recovered density or
    /// pressure is non-positive, which signals positivity loss in a scheme.
    pub fn to_primitive(&self, g: GasModel) -> Result<PrimitiveState> {
        let rho = self.rho;
        let u = self.mom / rho;
        let p = g.gamma_minus_one() * (self.energy - 0.5 * self.mom * u);
        let physical = rho > 0.0 && p > 0.0 && p.is_finite() && u.is_finite();
        if !physical {
            return Err(Error::NonPhysicalState { rho, p, cell: None });
        }
        Ok(PrimitiveState { rho, u, p })
    }

    /// Physical flux evaluated directly from a conserved state.
    pub fn physical_flux(&self, g: GasModel) -> Result<FluxVector> {
        Ok(self.to_primitive(g)?.physical_flux(g))
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.rho, self.mom, self.energy]
    }

    pub fn from_array(q: [f64; 3]) -> Self {
        ConservedState { rho: q[0], mom: q[1], energy: q[2] }
    }
}

impl FluxVector {
    pub fn to_array(&self) -> [f64; 3] {
        [self.mass, self.momentum, self.energy]
    }

    pub fn from_array(f: [f64; 3]) -> Self {
        FluxVector { mass: f[0], momentum: f[1], energy: f[2] }
    }
}

/// Flux Jacobian dF/dQ in conserved variables, evaluated analytically.
pub fn flux_jacobian(q: &ConservedState, g: GasModel) -> [[f64; 3]; 3] {
    let u = q.mom / q.rho;
    let e_over_rho = q.energy / q.rho;
    let gm1 = g.gamma_minus_one();
    [
        [0.0, 1.0, 0.0],
        [0.5 * (g.gamma - 3.0) * u * u, (3.0 - g.gamma) * u, gm1],
        [
            gm1 * u * u * u - g.gamma * u * e_over_rho,
            g.gamma * e_over_rho - 1.5 * gm1 * u * u,
            g.gamma * u,
        ],
    ]
}

/// Matrix-vector product A(Q) v.
pub fn jacobian_apply(a: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (row, o) in a.iter().zip(out.iter_mut()) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}
