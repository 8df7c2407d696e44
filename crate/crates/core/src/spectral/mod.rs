//! Expansion certificates: λ₂ of graph Laplacians, exact Cheeger constants,
//! Rayleigh quotients and the ℤ² shear expansion check.

mod cheeger;
mod lanczos;
mod scan;
mod z2;

pub use cheeger::{cheeger_exact, CheegerResult, MAX_CHEEGER_VERTICES};
pub use lanczos::{second_eigenpair, tridiagonal_eigen, EigenOptions, Eigenpair, Laplacian};
pub use scan::{expansion_scan, scan_csv, ScanFamily, ScanRow, SCAN_HEADER};
pub use z2::{random_z2_set, z2_expansion_check, Z2Check};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Slack allowed on eigenvalue-dependent sides of the Cheeger bounds.
pub const SANDWICH_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub lambda2: f64,
    pub residual: f64,
    pub iterations: usize,
    pub degree_bound: usize,
    pub cheeger_upper: f64,
    pub cheeger_lower: f64,
}

/// λ₂ of the normalized Laplacian. The upper Cheeger bound reported is
/// `D·√(2λ₂)`, which holds for the normalized operator; see
/// [`cheeger_sandwich`] for the max-degree form stated with `D − A`.
pub fn lambda2(graph: &Graph, tol: f64) -> Result<SpectralReport> {
    let opts = EigenOptions { tol, ..EigenOptions::default() };
    lambda2_with(graph, &opts)
}

pub fn lambda2_with(graph: &Graph, opts: &EigenOptions) -> Result<SpectralReport> {
    let pair = second_eigenpair(graph, Laplacian::Normalized, opts)?;
    let d = graph.max_degree();
    let l2 = pair.value.max(0.0);
    Ok(SpectralReport {
        lambda2: pair.value,
        residual: pair.residual,
        iterations: pair.iterations,
        degree_bound: d,
        cheeger_upper: d as f64 * (2.0 * l2).sqrt(),
        cheeger_lower: pair.value / 2.0,
    })
}

/// Second-smallest eigenvalue of `D − A`.
pub fn combinatorial_lambda2(graph: &Graph, tol: f64) -> Result<f64> {
    let opts = EigenOptions { tol, ..EigenOptions::default() };
    Ok(second_eigenpair(graph, Laplacian::Combinatorial, &opts)?.value)
}

/// `Σ_{edges} (f(u) − f(v))² / Σ_v f(v)²`, edges counted with multiplicity.
pub fn rayleigh(graph: &Graph, f: &[f64]) -> Result<f64> {
    assert_eq!(f.len(), graph.num_vertices(), "one value per vertex");
    let den: f64 = f.iter().map(|x| x * x).sum();
    if den == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let num: f64 = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let d = f[u as usize] - f[v as usize];
            d * d
        })
        .sum();
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub cheeger: CheegerResult,
    pub h: f64,
    pub degree_bound: usize,
    /// Normalized Laplacian λ₂.
    pub lambda2: f64,
    /// `D − A` second eigenvalue.
    pub mu2: f64,
    pub normalized_lower: f64,
    pub normalized_upper: f64,
    pub combinatorial_lower: f64,
    pub combinatorial_upper: f64,
    pub holds: bool,
}

/// Exact `h` against both spectral sandwiches:
/// `λ₂/2 ≤ h ≤ D·√(2λ₂)` for the normalized Laplacian and
/// `μ₂/2 ≤ h ≤ √(2Dμ₂)` for `D − A`.
pub fn cheeger_sandwich(graph: &Graph) -> Result<SandwichReport> {
    let cheeger = cheeger_exact(graph)?;
    let opts = EigenOptions { tol: 1e-10, ..EigenOptions::default() };
    let norm = lambda2_with(graph, &opts)?;
    let mu2 = second_eigenpair(graph, Laplacian::Combinatorial, &opts)?.value;
    let d = graph.max_degree() as f64;
    let h = cheeger.h_f64();
    let normalized_lower = norm.lambda2 / 2.0;
    let normalized_upper = norm.cheeger_upper;
    let combinatorial_lower = mu2 / 2.0;
    let combinatorial_upper = (2.0 * d * mu2.max(0.0)).sqrt();
    let holds = normalized_lower <= h + SANDWICH_TOL
        && h <= normalized_upper + SANDWICH_TOL
        && combinatorial_lower <= h + SANDWICH_TOL
        && h <= combinatorial_upper + SANDWICH_TOL;
    Ok(SandwichReport {
        cheeger,
        h,
        degree_bound: graph.max_degree(),
        lambda2: norm.lambda2,
        mu2,
        normalized_lower,
        normalized_upper,
        combinatorial_lower,
        combinatorial_upper,
        holds,
    })
}
