//! First integral homology of a scale complex.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::complex::ScaleComplex;
use super::snf::{invariant_factors, Column};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Summary {
    pub betti1: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl H1Summary {
    pub fn is_trivial(&self) -> bool {
        self.betti1 == 0 && self.torsion.is_empty()
    }

    /// `betti1` free summands followed by the torsion factors,
    /// e.g. `Z^2 + Z/2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.betti1 > 0 {
            parts.push(if self.betti1 == 1 { "Z".to_string() } else { format!("Z^{}", self.betti1) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Free rank and torsion of a cokernel: a free module of rank `rows`
/// modulo the given columns.
pub fn cokernel(rows: usize, columns: Vec<Column>) -> Result<H1Summary> {
    let factors = invariant_factors(rows, columns)?;
    let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(H1Summary { betti1: rows - factors.len(), torsion })
}

pub fn h1(complex: &ScaleComplex) -> Result<H1Summary> {
    let lookup = complex.edge_lookup();
    let columns: Vec<Column> = complex.cells().map(|c| complex.cell_boundary(c, &lookup)).collect();
    let e = complex.edges().len();
    let components = components(complex);
    // ker ∂₁ has rank E − V + c; its quotient by im ∂₂ is free of that rank
    // minus rank ∂₂, and carries all the torsion of coker ∂₂.
    let cycles = e + components - complex.num_vertices();
    let factors = invariant_factors(e, columns)?;
    let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(H1Summary { betti1: cycles - factors.len(), torsion })
}

fn components(complex: &ScaleComplex) -> usize {
    let n = complex.num_vertices();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &complex.adjacency()[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
    }
    count
}
