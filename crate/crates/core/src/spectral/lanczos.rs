//! Restarted Lanczos with full reorthogonalization for the second-smallest
//! eigenvalue of a graph Laplacian.
//!
//! The known null vector is projected out at every step. The solver runs on
//! `shift·I − L`, whose largest eigenvalue on the complement of the null
//! vector is `shift − λ₂`. The start vector is fixed (a hash of the vertex
//! index), and all reductions go through `exec`, so results do not depend
//! on the thread count.

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::Graph;
use crate::rng::splitmix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Laplacian {
    /// `I − D^{-1/2} A D^{-1/2}`, spectrum in `[0, 2]`.
    Normalized,
    /// `D − A`.
    Combinatorial,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub krylov_dim: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions { tol: 1e-9, max_iter: 100_000, krylov_dim: 240 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

pub(crate) struct Operator<'a> {
    graph: &'a Graph,
    kind: Laplacian,
    inv_sqrt_deg: Vec<f64>,
    deg: Vec<f64>,
    null: Vec<f64>,
    shift: f64,
}

impl<'a> Operator<'a> {
    pub(crate) fn new(graph: &'a Graph, kind: Laplacian) -> Self {
        let n = graph.num_vertices();
        let deg: Vec<f64> = (0..n).map(|v| graph.degree(v) as f64).collect();
        let inv_sqrt_deg = deg.iter().map(|&d| if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 }).collect();
        let mut null: Vec<f64> = match kind {
            Laplacian::Normalized => deg.iter().map(|d| d.sqrt()).collect(),
            Laplacian::Combinatorial => vec![1.0; n],
        };
        let nn = exec::norm(&null);
        exec::scale(&mut null, 1.0 / nn);
        let shift = match kind {
            Laplacian::Normalized => 2.0,
            Laplacian::Combinatorial => 2.0 * graph.max_degree() as f64,
        };
        Operator { graph, kind, inv_sqrt_deg, deg, null, shift }
    }

    /// `y = L x`.
    pub(crate) fn apply(&self, x: &[f64], y: &mut [f64]) {
        let g = self.graph;
        match self.kind {
            Laplacian::Normalized => exec::fill(y, |v| {
                let mut s = 0.0;
                for &w in g.neighbors(v) {
                    s += x[w as usize] * self.inv_sqrt_deg[w as usize];
                }
                x[v] - s * self.inv_sqrt_deg[v]
            }),
            Laplacian::Combinatorial => exec::fill(y, |v| {
                let mut s = 0.0;
                for &w in g.neighbors(v) {
                    s += x[w as usize];
                }
                self.deg[v] * x[v] - s
            }),
        }
    }

    fn project_null(&self, w: &mut [f64]) {
        let c = exec::dot(&self.null, w);
        exec::axpy_neg(w, c, &self.null);
    }

    pub(crate) fn residual(&self, value: f64, x: &[f64]) -> f64 {
        let mut y = vec![0.0; x.len()];
        self.apply(x, &mut y);
        exec::sum_range(x.len(), |i| {
            let r = y[i] - value * x[i];
            r * r
        })
        .sqrt()
    }
}

fn start_vector(n: usize) -> Vec<f64> {
    exec::map_range(n, |i| (splitmix64(i as u64) >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
}

/// Second-smallest eigenpair of the chosen Laplacian of a connected graph.
pub fn second_eigenpair(graph: &Graph, kind: Laplacian, opts: &EigenOptions) -> Result<Eigenpair> {
    let n = graph.num_vertices();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let op = Operator::new(graph, kind);
    let dim_limit = (n - 1).min(opts.krylov_dim.max(2));

    let mut start = start_vector(n);
    let mut iterations = 0usize;
    let mut best: Option<Eigenpair> = None;
    loop {
        let (value, vector) = lanczos_cycle(&op, &mut start, dim_limit, &mut iterations)?;
        let residual = op.residual(value, &vector);
        let improved = best.as_ref().is_none_or(|b| residual < b.residual);
        if improved {
            best = Some(Eigenpair { value, vector: vector.clone(), residual, iterations });
        }
        if residual <= opts.tol {
            let mut b = best.expect("just set");
            b.iterations = iterations;
            return Ok(b);
        }
        if iterations >= opts.max_iter {
            return Err(Error::NoConvergence(iterations));
        }
        start = vector;
    }
}

/// One Lanczos cycle of at most `dim` steps from `start`; returns the Ritz
/// pair approximating `λ₂`.
fn lanczos_cycle(op: &Operator, start: &mut [f64], dim: usize, iterations: &mut usize) -> Result<(f64, Vec<f64>)> {
    let n = start.len();
    op.project_null(start);
    let nrm = exec::norm(start);
    if nrm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    exec::scale(start, 1.0 / nrm);

    let mut basis: Vec<Vec<f64>> = vec![start.to_vec()];
    let mut alpha: Vec<f64> = Vec::with_capacity(dim);
    let mut beta: Vec<f64> = Vec::with_capacity(dim);
    let mut w = vec![0.0; n];
    let mut lx = vec![0.0; n];
    for j in 0..dim {
        let q = &basis[j];
        op.apply(q, &mut lx);
        exec::fill(&mut w, |i| op.shift * q[i] - lx[i]);
        op.project_null(&mut w);
        let a = exec::dot(q, &w);
        alpha.push(a);
        // Two passes of classical Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            let coeffs = exec::map_slice(&basis, |b| exec::dot(b, &w));
            let snapshot = w.clone();
            exec::fill(&mut w, |i| {
                let mut s = snapshot[i];
                for (c, b) in coeffs.iter().zip(&basis) {
                    s -= c * b[i];
                }
                s
            });
            op.project_null(&mut w);
        }
        *iterations += 1;
        let b = exec::norm(&w);
        if j + 1 == dim || b <= 1e-13 * op.shift.max(1.0) {
            break;
        }
        beta.push(b);
        let mut next = w.clone();
        exec::scale(&mut next, 1.0 / b);
        basis.push(next);
    }

    let (vals, vecs) = tridiagonal_eigen(&alpha, &beta)?;
    let top = (0..vals.len()).max_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(b.cmp(&a))).expect("non-empty");
    let coeff: Vec<f64> = (0..alpha.len()).map(|r| vecs[r][top]).collect();
    let mut ritz = exec::map_range(n, |i| {
        let mut s = 0.0;
        for (c, b) in coeff.iter().zip(&basis) {
            s += c * b[i];
        }
        s
    });
    op.project_null(&mut ritz);
    let nr = exec::norm(&ritz);
    exec::scale(&mut ritz, 1.0 / nr);
    let mut lr = vec![0.0; n];
    op.apply(&ritz, &mut lr);
    let value = exec::dot(&ritz, &lr);
    Ok((value, ritz))
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (implicit QL with Wilkinson shifts).
/// Returns eigenvalues and the eigenvector matrix, column `j` belonging to
/// eigenvalue `j`.
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..off.len().min(n.saturating_sub(1))].copy_from_slice(&off[..off.len().min(n.saturating_sub(1))]);
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 200 {
                return Err(Error::NoConvergence(iter));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}
