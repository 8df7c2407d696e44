//! The scale-`r` complex of a graph metric: vertices, pairs at distance at
//! most `r`, and all 3- and induced 4-cycles of that threshold graph as
//! 2-cells. A 4-cycle with a chord is the sum of two triangles, so only
//! induced ones are added.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exec;
use crate::graph::Graph;
use crate::warpgraph::LevelGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleComplex {
    n: usize,
    r: u32,
    base: u32,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
    triangles: Vec<[u32; 3]>,
    squares: Vec<[u32; 4]>,
}

pub fn build_scale_complex(graph: &Graph, r: u32, base: u32) -> ScaleComplex {
    let n = graph.num_vertices();
    let adjacency: Vec<Vec<u32>> = exec::map_range(n, |v| {
        let dist = graph.bfs_truncated(v, r);
        (0..n as u32).filter(|&w| w as usize != v && dist[w as usize] <= r).collect()
    });
    let edges: Vec<(u32, u32)> = adjacency
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&w| w as usize > u).map(move |&w| (u as u32, w)))
        .collect();

    let adjacent = |a: u32, b: u32| adjacency[a as usize].binary_search(&b).is_ok();

    let triangles: Vec<[u32; 3]> = exec::map_range(n, |u| {
        let u = u as u32;
        let mut out = Vec::new();
        let nu = &adjacency[u as usize];
        for &v in nu.iter().filter(|&&v| v > u) {
            for w in sorted_intersection(nu, &adjacency[v as usize]) {
                if w > v {
                    out.push([u, v, w]);
                }
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();

    // Induced 4-cycles u-a-w-b with u the minimum vertex and a < b.
    let squares: Vec<[u32; 4]> = exec::map_range(n, |u| {
        let u = u as u32;
        let mut out = Vec::new();
        let nu: Vec<u32> = adjacency[u as usize].iter().copied().filter(|&x| x > u).collect();
        for (i, &a) in nu.iter().enumerate() {
            for &b in &nu[i + 1..] {
                if adjacent(a, b) {
                    continue;
                }
                for w in sorted_intersection(&adjacency[a as usize], &adjacency[b as usize]) {
                    if w > u && !adjacent(u, w) {
                        out.push([u, a, w, b]);
                    }
                }
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();

    ScaleComplex { n, r, base, edges, adjacency, triangles, squares }
}

/// Scale complex of a level graph based at its corner vertex.
pub fn build_level_complex(level: &LevelGraph, r: u32) -> ScaleComplex {
    build_scale_complex(level.graph(), r, level.base())
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl ScaleComplex {
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> u32 {
        self.r
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn squares(&self) -> &[[u32; 4]] {
        &self.squares
    }

    pub fn num_cells(&self) -> usize {
        self.triangles.len() + self.squares.len()
    }

    /// Every 2-cell as a cyclic vertex sequence: triangles first, then squares.
    pub fn cells(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.triangles.iter().map(|t| &t[..]).chain(self.squares.iter().map(|s| &s[..]))
    }

    pub fn edge_lookup(&self) -> HashMap<(u32, u32), u32> {
        self.edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect()
    }

    /// The threshold graph as a simple graph.
    pub fn skeleton(&self) -> Graph {
        Graph::new(self.n, self.edges.clone())
    }

    pub fn is_connected(&self) -> bool {
        self.skeleton().is_connected()
    }

    /// Oriented boundary of a cyclic cell as `(edge index, ±1)`.
    pub fn cell_boundary(&self, cell: &[u32], lookup: &HashMap<(u32, u32), u32>) -> Vec<(u32, i64)> {
        let k = cell.len();
        let mut out: Vec<(u32, i64)> = (0..k)
            .map(|i| {
                let (p, q) = (cell[i], cell[(i + 1) % k]);
                let key = if p < q { (p, q) } else { (q, p) };
                let e = *lookup.get(&key).expect("cell edges lie in the complex");
                (e, if p < q { 1 } else { -1 })
            })
            .collect();
        out.sort_unstable();
        out
    }
}
