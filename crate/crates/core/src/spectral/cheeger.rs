//! Exact edge-boundary Cheeger constant by subset enumeration.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::Graph;

pub const MAX_CHEEGER_VERTICES: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheegerResult {
    pub boundary: u64,
    pub size: u64,
    pub witness: Vec<usize>,
}

impl CheegerResult {
    pub fn h(&self) -> Ratio<u64> {
        Ratio::new(self.boundary, self.size)
    }

    pub fn h_f64(&self) -> f64 {
        self.boundary as f64 / self.size as f64
    }
}

#[derive(Clone, Copy, Debug)]
struct Best {
    boundary: u64,
    size: u64,
    mask: u64,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        let lhs = self.boundary as u128 * other.size as u128;
        let rhs = other.boundary as u128 * self.size as u128;
        match lhs.cmp(&rhs) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.mask < other.mask,
        }
    }
}

/// Weighted adjacency without loops: `adj[v]` holds `(w, multiplicity)`.
fn weighted_adjacency(graph: &Graph) -> Vec<Vec<(usize, u64)>> {
    let n = graph.num_vertices();
    let mut maps: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n];
    for &(u, v) in graph.edges() {
        if u != v {
            *maps[u as usize].entry(v as usize).or_default() += 1;
            *maps[v as usize].entry(u as usize).or_default() += 1;
        }
    }
    maps.into_iter().map(|m| m.into_iter().collect()).collect()
}

/// Minimum of `|∂A| / |A|` over `1 ≤ |A| ≤ |V|/2`, boundary edges counted
/// with multiplicity. Ties are broken towards the numerically smallest
/// vertex bitmask, so the witness is deterministic.
pub fn cheeger_exact(graph: &Graph) -> Result<CheegerResult> {
    let n = graph.num_vertices();
    if n > MAX_CHEEGER_VERTICES {
        return Err(Error::TooLarge(n, MAX_CHEEGER_VERTICES));
    }
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let adj = weighted_adjacency(graph);
    let half = (n / 2) as u32;

    // Vertices n-p..n are fixed per block; the low bits run a Gray code.
    let prefix_bits = n.min(6);
    let low = n - prefix_bits;
    let bests = exec::map_range(1usize << prefix_bits, |block| {
        let high = (block as u64) << low;
        let mut mask = high;
        let mut boundary = boundary_of(&adj, mask);
        let mut size = mask.count_ones();
        let mut best: Option<Best> = None;
        let consider = |mask: u64, boundary: u64, size: u32, best: &mut Option<Best>| {
            if size >= 1 && size <= half {
                let cand = Best { boundary, size: size as u64, mask };
                if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                    *best = Some(cand);
                }
            }
        };
        consider(mask, boundary, size, &mut best);
        for step in 1u64..(1u64 << low) {
            let bit = step.trailing_zeros() as usize;
            let entering = mask & (1 << bit) == 0;
            for &(w, c) in &adj[bit] {
                let inside = mask & (1 << w) != 0;
                if entering == inside {
                    boundary -= c;
                } else {
                    boundary += c;
                }
            }
            mask ^= 1 << bit;
            if entering {
                size += 1;
            } else {
                size -= 1;
            }
            consider(mask, boundary, size, &mut best);
        }
        best
    });
    let best = bests
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.better_than(&a) { b } else { a })
        .expect("n >= 2 admits a singleton");
    let witness = (0..n).filter(|&v| best.mask & (1 << v) != 0).collect();
    Ok(CheegerResult { boundary: best.boundary, size: best.size, witness })
}

fn boundary_of(adj: &[Vec<(usize, u64)>], mask: u64) -> u64 {
    let mut b = 0;
    for (v, nbrs) in adj.iter().enumerate() {
        if mask & (1 << v) != 0 {
            for &(w, c) in nbrs {
                if mask & (1 << w) == 0 {
                    b += c;
                }
            }
        }
    }
    b
}
