//! Benchmark problem definitions and the built-in shock-tube suite.

use serde::{Deserialize, Serialize};

use crate::engine::{BoundaryKind, Grid1D, SolutionField};
use crate::error::{Error, Result};
use crate::euler::{GasModel, PrimitiveState};
use crate::riemann::vacuum_check;

/// Initial condition of a benchmark case.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialData {
    /// Two constant states separated by a diaphragm at `x0`.
    Diaphragm {
        left: PrimitiveState,
        right: PrimitiveState,
        x0: f64,
    },
    /// Smooth density wave rho(x) = mean + amplitude sin(2 pi x / span)
    /// riding on uniform velocity and pressure.
    DensityWave {
        rho_mean: f64,
        rho_amplitude: f64,
        velocity: f64,
        pressure: f64,
    },
}

/// A benchmark problem: initial data, domain, final time, gas, and default
/// boundary conditions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestCase {
    pub name: String,
    pub initial: InitialData,
    pub x_left: f64,
    pub x_right: f64,
    pub t_end: f64,
    pub gamma: f64,
    #[serde(rename = "bc_left")]
    pub left_bc: BoundaryKind,
    #[serde(rename = "bc_right")]
    pub right_bc: BoundaryKind,
}

impl TestCase {
    pub fn gas(&self) -> Result<GasModel> {
        GasModel::new(self.gamma)
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.gas()?;
        let domain_ok = self.x_left < self.x_right;
        if !domain_ok {
            return Err(Error::Config(format!(
                "case {}: domain bounds out of order",
                self.name
            )));
        }
        let t_ok = self.t_end >= 0.0;
        if !t_ok {
            return Err(Error::Config(format!("case {}: negative t_end", self.name)));
        }
        match &self.initial {
            InitialData::Diaphragm { left, right, x0 } => {
                let inside = self.x_left < *x0 && *x0 < self.x_right;
                if !inside {
                    return Err(Error::Config(format!(
                        "case {}: diaphragm at {x0} outside the domain",
                        self.name
                    )));
                }
                if !left.is_physical() || !right.is_physical() {
                    return Err(Error::Config(format!(
                        "case {}: non-physical data state",
                        self.name
                    )));
                }
                if !vacuum_check(left, right, g) {
                    return Err(Error::VacuumGenerated);
                }
            }
            InitialData::DensityWave { rho_mean, rho_amplitude, pressure, .. } => {
                let physical = rho_mean - rho_amplitude.abs() > 0.0 && *pressure > 0.0;
                if !physical {
                    return Err(Error::Config(format!(
                        "case {}: wave profile dips out of the physical region",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Initial primitive profile evaluated pointwise.
    pub fn profile(&self, x: f64) -> PrimitiveState {
        match &self.initial {
            InitialData::Diaphragm { left, right, x0 } => {
                if x < *x0 {
                    *left
                } else {
                    *right
                }
            }
            InitialData::DensityWave { rho_mean, rho_amplitude, velocity, pressure } => {
                let span = self.x_right - self.x_left;
                let phase = 2.0 * std::f64::consts::PI * (x - self.x_left) / span;
                PrimitiveState::new(rho_mean + rho_amplitude * phase.sin(), *velocity, *pressure)
            }
        }
    }

    /// Cell-centre initialisation on a grid with the requested ghost width.
    pub fn initial_field(&self, n_cells: usize, n_ghost: usize) -> Result<SolutionField> {
        let g = self.gas()?;
        let grid = Grid1D::new(self.x_left, self.x_right, n_cells, n_ghost)?;
        Ok(SolutionField::from_profile(grid, g, |x| self.profile(x)))
    }
}

/// The canonical shock-tube suite.
pub fn builtin_suite() -> Vec<TestCase> {
    vec![
        TestCase {
            name: "sod".into(),
            initial: InitialData::Diaphragm {
                left: PrimitiveState::new(1.0, 0.0, 1.0),
                right: PrimitiveState::new(0.125, 0.0, 0.1),
                x0: 0.5,
            },
            x_left: 0.0,
            x_right: 1.0,
            t_end: 0.25,
            gamma: 1.4,
            left_bc: BoundaryKind::Transmissive,
            right_bc: BoundaryKind::Transmissive,
        },
        TestCase {
            name: "rar123".into(),
            initial: InitialData::Diaphragm {
                left: PrimitiveState::new(1.0, -2.0, 0.4),
                right: PrimitiveState::new(1.0, 2.0, 0.4),
                x0: 0.5,
            },
            x_left: 0.0,
            x_right: 1.0,
            t_end: 0.15,
            gamma: 1.4,
            left_bc: BoundaryKind::Transmissive,
            right_bc: BoundaryKind::Transmissive,
        },
        TestCase {
            name: "blast_left".into(),
            initial: InitialData::Diaphragm {
                left: PrimitiveState::new(1.0, 0.0, 1000.0),
                right: PrimitiveState::new(1.0, 0.0, 0.01),
                x0: 0.5,
            },
            x_left: 0.0,
            x_right: 1.0,
            t_end: 0.012,
            gamma: 1.4,
            left_bc: BoundaryKind::Reflective,
            right_bc: BoundaryKind::Reflective,
        },
        TestCase {
            name: "contact".into(),
            initial: InitialData::Diaphragm {
                left: PrimitiveState::new(1.4, 0.1, 1.0),
                right: PrimitiveState::new(1.0, 0.1, 1.0),
                x0: 0.5,
            },
            x_left: 0.0,
            x_right: 1.0,
            t_end: 2.0,
            gamma: 1.4,
            left_bc: BoundaryKind::Transmissive,
            right_bc: BoundaryKind::Transmissive,
        },
        TestCase {
            name: "smooth_advect".into(),
            initial: InitialData::DensityWave {
                rho_mean: 1.0,
                rho_amplitude: 0.2,
                velocity: 1.0,
                pressure: 1.0,
            },
            x_left: 0.0,
            x_right: 1.0,
            t_end: 1.0,
            gamma: 1.4,
            left_bc: BoundaryKind::Periodic,
            right_bc: BoundaryKind::Periodic,
        },
    ]
}

/// Look up a built-in case by name.
pub fn find_case(name: &str) -> Option<TestCase> {
    builtin_suite().into_iter().find(|c| c.name == name)
}

/// Load a case from a structured-text (JSON) file.
pub fn load_case_file(path: &std::path::Path) -> Result<TestCase> {
    let text = std::fs::read_to_string(path)?;
    let case: TestCase = serde_json::from_str(&text)?;
    case.validate()?;
    Ok(case)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_has_five_valid_cases() {
        let suite = builtin_suite();
        assert!(suite.len() >= 5);
        for case in &suite {
            case.validate().unwrap();
        }
    }

    #[test]
    fn rar123_is_mirror_symmetric() {
        let case = find_case("rar123").unwrap();
        match case.initial {
            InitialData::Diaphragm { left, right, x0 } => {
                assert_eq!(left, right.mirrored());
                assert_eq!(x0, 0.5 * (case.x_left + case.x_right));
            }
            _ => panic!("expected diaphragm data"),
        }
    }

    #[test]
    fn smooth_advect_has_uniform_velocity_and_pressure() {
        let case = find_case("smooth_advect").unwrap();
        let w_a = case.profile(0.1);
        let w_b = case.profile(0.7);
        assert_eq!(w_a.u, w_b.u);
        assert_eq!(w_a.p, w_b.p);
        assert_ne!(w_a.rho, w_b.rho);
    }

    #[test]
    fn case_file_round_trip() {
        let case = find_case("sod").unwrap();
        let text = serde_json::to_string_pretty(&case).unwrap();
        let dir = std::env::temp_dir().join("eulerlab-case-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sod.json");
        std::fs::write(&path, &text).unwrap();
        let loaded = load_case_file(&path).unwrap();
        assert_eq!(loaded.name, "sod");
        assert_eq!(loaded.t_end, 0.25);
    }

    #[test]
    fn vacuum_case_is_rejected() {
        let mut case = find_case("sod").unwrap();
        case.initial = InitialData::Diaphragm {
            left: PrimitiveState::new(1.0, -100.0, 0.4),
            right: PrimitiveState::new(1.0, 100.0, 0.4),
            x0: 0.5,
        };
        assert!(matches!(case.validate(), Err(Error::VacuumGenerated)));
    }
}
