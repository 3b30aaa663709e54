//! Run artefacts: CSV profile, structured-text report, and SVG plot.
//!
//! The CSV is the reproducibility contract: fixed header, one row per cell
//! at 17 significant digits, so identical runs produce byte-identical
//! files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bench::norms::ErrorNorms;
use crate::bench::reference::Reference;
use crate::engine::SolutionField;
use crate::error::Result;
use crate::euler::GasModel;

pub const CSV_HEADER: &str = "x,rho,u,p,rho_exact,u_exact,p_exact";

/// Record of one benchmark run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub case: String,
    pub scheme: String,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub gamma: f64,
    pub steps: u64,
    pub wall_seconds: f64,
    pub dt_min: f64,
    pub dt_max: f64,
    /// Componentwise relative drift of the conserved totals (mass,
    /// momentum, energy), floored at 1 for near-zero totals.
    pub conservation_drift: [f64; 3],
    /// Errors against the reference, when one is available.
    pub norms: Option<ErrorNorms>,
    /// Provenance of the reference solution.
    pub reference: Option<String>,
}

fn fmt17(value: f64) -> String {
    format!("{value:.16e}")
}

/// FNV-1a hash over the interior conserved states, byte order fixed. Used
/// to freeze whole fields as regression values.
pub fn field_checksum(field: &SolutionField) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |v: f64| {
        for b in v.to_le_bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for q in field.interior() {
        eat(q.rho);
        eat(q.mom);
        eat(q.energy);
    }
    hash
}

/// Render the solution profile as CSV text.
pub fn solution_csv(field: &SolutionField, reference: Option<&Reference>, g: GasModel) -> Result<String> {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let ref_interior = reference.map(|r| r.field.interior());
    for (i, q) in field.interior().iter().enumerate() {
        let w = q.to_primitive(g)?;
        let (re, ue, pe) = match ref_interior {
            Some(cells) => {
                let wr = cells[i].to_primitive(g)?;
                (wr.rho, wr.u, wr.p)
            }
            None => (f64::NAN, f64::NAN, f64::NAN),
        };
        let x = field.grid.cell_center(i);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt17(x),
            fmt17(w.rho),
            fmt17(w.u),
            fmt17(w.p),
            fmt17(re),
            fmt17(ue),
            fmt17(pe)
        );
    }
    Ok(out)
}

/// Render the density/velocity/pressure profiles as a standalone SVG:
/// numerical solution as points, reference as a line.
pub fn solution_svg(field: &SolutionField, reference: Option<&Reference>, g: GasModel) -> Result<String> {
    const WIDTH: f64 = 880.0;
    const PANEL_H: f64 = 240.0;
    const MARGIN_L: f64 = 70.0;
    const MARGIN_R: f64 = 20.0;
    const MARGIN_V: f64 = 36.0;

    let n = field.grid.n_cells;
    let mut series: [Vec<(f64, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, q) in field.interior().iter().enumerate() {
        let w = q.to_primitive(g)?;
        let x = field.grid.cell_center(i);
        series[0].push((x, w.rho));
        series[1].push((x, w.u));
        series[2].push((x, w.p));
    }
    let mut ref_series: Option<[Vec<(f64, f64)>; 3]> = None;
    if let Some(r) = reference {
        let mut rs: [Vec<(f64, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (i, q) in r.field.interior().iter().enumerate() {
            let w = q.to_primitive(g)?;
            let x = r.field.grid.cell_center(i);
            rs[0].push((x, w.rho));
            rs[1].push((x, w.u));
            rs[2].push((x, w.p));
        }
        ref_series = Some(rs);
    }

    let total_h = 3.0 * (PANEL_H + MARGIN_V) + MARGIN_V;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{total_h}\" viewBox=\"0 0 {WIDTH} {total_h}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{total_h}\" fill=\"white\"/>");

    let labels = ["density", "velocity", "pressure"];
    for (panel, label) in labels.iter().enumerate() {
        let top = MARGIN_V + panel as f64 * (PANEL_H + MARGIN_V);
        let bottom = top + PANEL_H;
        let plot_w = WIDTH - MARGIN_L - MARGIN_R;

        let num = &series[panel];
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        for (_, y) in num {
            y_min = y_min.min(*y);
            y_max = y_max.max(*y);
        }
        if let Some(rs) = &ref_series {
            for (_, y) in &rs[panel] {
                y_min = y_min.min(*y);
                y_max = y_max.max(*y);
            }
        }
        if y_max - y_min < 1e-12 {
            y_min -= 0.5;
            y_max += 0.5;
        }
        let pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;

        let x_min = field.grid.x_left;
        let x_max = field.grid.x_right;
        let sx = |x: f64| MARGIN_L + (x - x_min) / (x_max - x_min) * plot_w;
        let sy = |y: f64| bottom - (y - y_min) / (y_max - y_min) * PANEL_H;

        let _ = writeln!(
            svg,
            "<rect x=\"{MARGIN_L}\" y=\"{top}\" width=\"{plot_w}\" height=\"{PANEL_H}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{MARGIN_L}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\">{label}</text>",
            top - 8.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>",
            MARGIN_L - 6.0,
            top + 11.0,
            y_max
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>",
            MARGIN_L - 6.0,
            bottom,
            y_min
        );

        if let Some(rs) = &ref_series {
            let mut points = String::new();
            for (x, y) in &rs[panel] {
                let _ = write!(points, "{:.2},{:.2} ", sx(*x), sy(*y));
            }
            let _ = writeln!(
                svg,
                "<polyline class=\"reference\" points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>",
                points.trim_end()
            );
        }

        // Thin the markers on very fine grids.
        let stride = (n / 400).max(1);
        for (k, (x, y)) in num.iter().enumerate() {
            if k % stride == 0 {
                let _ = writeln!(
                    svg,
                    "<circle class=\"numerical\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"#2c3e50\"/>",
                    sx(*x),
                    sy(*y)
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Write solution.csv, report.json, and plot.svg into `out_dir`; returns
/// the paths written.
pub fn emit_outputs(
    report: &RunReport,
    field: &SolutionField,
    reference: Option<&Reference>,
    g: GasModel,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join("solution.csv");
    fs::write(&csv_path, solution_csv(field, reference, g)?)?;

    let json_path = out_dir.join("report.json");
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    fs::write(&json_path, json)?;

    let svg_path = out_dir.join("plot.svg");
    fs::write(&svg_path, solution_svg(field, reference, g)?)?;

    Ok(vec![csv_path, json_path, svg_path])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::cases::find_case;
    use crate::bench::reference::exact_reference;
    use crate::engine::Grid1D;

    const G14: GasModel = GasModel { gamma: 1.4 };

    fn sod_field_and_reference(n: usize) -> (SolutionField, Reference) {
        let mut case = find_case("sod").unwrap();
        case.t_end = 0.1;
        let grid = Grid1D::new(0.0, 1.0, n, 1).unwrap();
        let reference = exact_reference(&case, &grid).unwrap();
        (case.initial_field(n, 1).unwrap(), reference)
    }

    #[test]
    fn csv_has_header_plus_one_row_per_cell() {
        let (field, reference) = sod_field_and_reference(100);
        let csv = solution_csv(&field, Some(&reference), G14).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 101);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1].split(',').count(), 7);
    }

    #[test]
    fn csv_is_deterministic() {
        let (field, reference) = sod_field_and_reference(50);
        let a = solution_csv(&field, Some(&reference), G14).unwrap();
        let b = solution_csv(&field, Some(&reference), G14).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn svg_contains_both_series() {
        let (field, reference) = sod_field_and_reference(50);
        let svg = solution_svg(&field, Some(&reference), G14).unwrap();
        assert_eq!(svg.matches("<polyline class=\"reference\"").count(), 3);
        assert!(svg.matches("<circle class=\"numerical\"").count() >= 3 * 50);
    }

    #[test]
    fn checksum_distinguishes_fields() {
        let (field, _) = sod_field_and_reference(50);
        let mut other = field.clone();
        let h1 = field_checksum(&field);
        assert_eq!(h1, field_checksum(&other));
        let q = other.interior()[10];
        other.interior_mut()[10] =
            crate::euler::ConservedState::new(q.rho * (1.0 + 1e-15), q.mom, q.energy);
        assert_ne!(h1, field_checksum(&other));
    }
}
