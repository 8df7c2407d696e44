//! λ₂ across the levels of a graph family, next to an unwarped control.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classical::{schreier_mcirc, torus_index};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::surface::Surface;
use crate::warpgraph::{build_control, build_level};

use super::{lambda2, SpectralReport};

pub const SCAN_HEADER: &str = "level,vertices,maxdeg,lambda2,lower,upper,control_lambda2";

#[derive(Clone, Debug)]
pub enum ScanFamily {
    /// Warped-cone levels over an origami; control is the metric grid.
    Origami { surface: Surface, k: u64 },
    /// `M°_n`; control is the `ℤ_n²` grid generated by the two translations.
    Schreier,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub level: u64,
    pub vertices: usize,
    pub report: SpectralReport,
    pub control_lambda2: f64,
}

fn translation_grid(n: u64) -> Graph {
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let v = torus_index(x, y, n);
            edges.push((v, torus_index((x + 1) % n, y, n)));
            edges.push((v, torus_index(x, (y + 1) % n, n)));
        }
    }
    Graph::simple((n * n) as usize, edges)
}

fn family_graphs(family: &ScanFamily, level: u64) -> Result<(Graph, Graph)> {
    match family {
        ScanFamily::Origami { surface, k } => {
            let g = build_level(surface, *k, level)?;
            let c = build_control(surface, level);
            Ok((g.graph().clone(), c.graph().clone()))
        }
        ScanFamily::Schreier => Ok((schreier_mcirc(level), translation_grid(level))),
    }
}

pub fn expansion_scan(family: &ScanFamily, levels: &[u64], tol: f64) -> Result<Vec<ScanRow>> {
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("levels must be strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(levels.len());
    for &level in levels {
        let (g, control) = family_graphs(family, level)?;
        let report = lambda2(&g, tol)?;
        let control_lambda2 = lambda2(&control, tol)?.lambda2;
        rows.push(ScanRow { level, vertices: g.num_vertices(), report, control_lambda2 });
    }
    Ok(rows)
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.12e},{:.12e},{:.12e},{:.12e}",
            r.level,
            r.vertices,
            r.report.degree_bound,
            r.report.lambda2,
            r.report.cheeger_lower,
            r.report.cheeger_upper,
            r.control_lambda2
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{staircase, Surface};

    #[test]
    fn torus_control_decays() {
        let fam = ScanFamily::Origami { surface: Surface::torus(), k: 1 };
        let rows = expansion_scan(&fam, &[4, 8], 1e-9).unwrap();
        assert!(rows[1].control_lambda2 < rows[0].control_lambda2);
        let want = 0.5 * (1.0 - (2.0 * std::f64::consts::PI / 8.0).cos());
        assert!((rows[1].control_lambda2 - want).abs() < 1e-8);
    }

    #[test]
    fn csv_shape() {
        let fam = ScanFamily::Origami { surface: Surface::new(staircase(2).unwrap()).unwrap(), k: 2 };
        let rows = expansion_scan(&fam, &[4], 1e-9).unwrap();
        let csv = scan_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SCAN_HEADER);
        assert!(lines[1].starts_with("4,46,"));
        assert!(rows[0].report.lambda2 > 0.0);
    }

    #[test]
    fn schreier_rows() {
        let rows = expansion_scan(&ScanFamily::Schreier, &[2, 3, 5], 1e-9).unwrap();
        assert!(rows.iter().all(|r| r.report.lambda2 > 0.0));
        assert_eq!(rows[2].vertices, 25);
    }

    #[test]
    fn unsorted_levels_rejected() {
        assert!(expansion_scan(&ScanFamily::Schreier, &[4, 2], 1e-9).is_err());
    }
}
