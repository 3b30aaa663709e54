//! Error norms between a numerical field and a reference on the same grid,
//! computed on the primitive variables.

use serde::Serialize;

use crate::engine::SolutionField;
use crate::error::{Error, Result};
use crate::euler::GasModel;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormTriple {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

/// L1/L2/Linf per primitive variable.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ErrorNorms {
    pub rho: NormTriple,
    pub velocity: NormTriple,
    pub pressure: NormTriple,
}

pub fn error_norms(
    numerical: &SolutionField,
    reference: &SolutionField,
    g: GasModel,
) -> Result<ErrorNorms> {
    let ga = numerical.grid;
    let gb = reference.grid;
    if ga.n_cells != gb.n_cells || ga.x_left != gb.x_left || ga.x_right != gb.x_right {
        return Err(Error::GridMismatch(format!(
            "{} cells on [{}, {}] vs {} cells on [{}, {}]",
            ga.n_cells, ga.x_left, ga.x_right, gb.n_cells, gb.x_left, gb.x_right
        )));
    }
    let dx = ga.dx;
    let mut acc = [[0.0f64; 3]; 3]; // [variable][l1, l2sq, linf]
    for (q, r) in numerical.interior().iter().zip(reference.interior()) {
        let wq = q.to_primitive(g)?;
        let wr = r.to_primitive(g)?;
        let diffs = [wq.rho - wr.rho, wq.u - wr.u, wq.p - wr.p];
        for (v, d) in diffs.iter().enumerate() {
            let ad = d.abs();
            acc[v][0] += ad * dx;
            acc[v][1] += d * d * dx;
            acc[v][2] = acc[v][2].max(ad);
        }
    }
    let triple = |a: [f64; 3]| NormTriple { l1: a[0], l2: a[1].sqrt(), linf: a[2] };
    Ok(ErrorNorms {
        rho: triple(acc[0]),
        velocity: triple(acc[1]),
        pressure: triple(acc[2]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Grid1D;
    use crate::euler::PrimitiveState;
    use approx::assert_relative_eq;

    const G14: GasModel = GasModel { gamma: 1.4 };

    fn uniform(n: usize) -> SolutionField {
        let grid = Grid1D::new(0.0, 1.0, n, 1).unwrap();
        SolutionField::from_profile(grid, G14, |_| PrimitiveState::new(1.0, 0.5, 2.0))
    }

    #[test]
    fn identical_fields_have_zero_norms() {
        let a = uniform(20);
        let n = error_norms(&a, &a.clone(), G14).unwrap();
        assert_eq!(n.rho.l1, 0.0);
        assert_eq!(n.velocity.l2, 0.0);
        assert_eq!(n.pressure.linf, 0.0);
    }

    #[test]
    fn single_cell_discrepancy_scales_as_expected() {
        let a = uniform(20);
        let mut b = uniform(20);
        let g = G14;
        let delta = 0.25;
        let w = PrimitiveState::new(1.0 + delta, 0.5, 2.0);
        b.interior_mut()[7] = w.to_conserved(g);
        let n = error_norms(&b, &a, g).unwrap();
        let dx = 1.0 / 20.0;
        assert_relative_eq!(n.rho.l1, delta * dx, max_relative = 1e-12);
        assert_relative_eq!(n.rho.linf, delta, max_relative = 1e-12);
        assert_relative_eq!(n.rho.l2, delta * dx.sqrt(), max_relative = 1e-12);
        assert_eq!(n.pressure.l1, 0.0);
    }

    #[test]
    fn norms_are_invariant_under_consistent_reordering() {
        let grid = Grid1D::new(0.0, 1.0, 16, 1).unwrap();
        let make = |seedless: bool| {
            SolutionField::from_profile(grid, G14, |x| {
                let bump = if seedless { 0.0 } else { 0.1 * (7.0 * x).sin() };
                PrimitiveState::new(1.0 + 0.3 * (3.0 * x).cos() + bump, 0.2, 1.5)
            })
        };
        let a = make(false);
        let b = make(true);
        let n = error_norms(&a, &b, G14).unwrap();

        // Reverse both fields with the same permutation.
        let mut ar = a.clone();
        let mut br = b.clone();
        ar.interior_mut().reverse();
        br.interior_mut().reverse();
        let nr = error_norms(&ar, &br, G14).unwrap();
        assert_relative_eq!(n.rho.l1, nr.rho.l1, max_relative = 1e-13);
        assert_relative_eq!(n.rho.l2, nr.rho.l2, max_relative = 1e-13);
        assert_eq!(n.rho.linf, nr.rho.linf);
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let a = uniform(20);
        let b = uniform(40);
        assert!(matches!(error_norms(&a, &b, G14), Err(Error::GridMismatch(_))));
    }
}
