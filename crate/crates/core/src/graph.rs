//! Undirected multigraphs with loops, stored as an edge list plus a CSR
//! adjacency. A non-loop edge `{u,v}` appears once in the adjacency of each
//! endpoint; a loop at `v` appears twice in the adjacency of `v`, so that
//! `degree(v)` counts half-edges.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exec;

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Build from an edge list; repeated pairs are kept as parallel edges.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in &edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { n, edges, offsets, targets }
    }

    /// Build with parallel edges and loops removed.
    pub fn simple(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut e: Vec<(u32, u32)> =
            edges.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e.dedup();
        Graph::new(n, e)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Neighbours with multiplicity (a loop contributes `v` twice).
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// The same graph with loops dropped and parallel edges merged.
    pub fn simplified(&self) -> Graph {
        Graph::simple(self.n, self.edges.iter().copied())
    }

    /// Multiplicity-scaled copy: every edge repeated `c` times.
    pub fn scaled(&self, c: usize) -> Graph {
        let mut e = Vec::with_capacity(self.edges.len() * c);
        for _ in 0..c {
            e.extend_from_slice(&self.edges);
        }
        Graph::new(self.n, e)
    }

    pub fn bfs(&self, src: usize) -> Vec<u32> {
        self.bfs_truncated(src, u32::MAX)
    }

    /// BFS distances from `src`, exploring no further than `limit`.
    pub fn bfs_truncated(&self, src: usize, limit: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du >= limit {
                continue;
            }
            for &w in self.neighbors(u as usize) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<u32> {
        if u >= self.n {
            return Err(Error::VertexNotFound(u.to_string()));
        }
        if v >= self.n {
            return Err(Error::VertexNotFound(v.to_string()));
        }
        Ok(self.bfs(u)[v])
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// All-pairs distances, rows computed in parallel.
    pub fn all_pairs(&self) -> Vec<Vec<u32>> {
        exec::map_range(self.n, |u| self.bfs(u))
    }

    /// Largest finite distance (0 for the empty graph).
    pub fn diameter(&self) -> u32 {
        self.all_pairs()
            .iter()
            .flat_map(|row| row.iter().copied().filter(|&d| d != UNREACHABLE))
            .max()
            .unwrap_or(0)
    }

    /// Number of edges leaving the vertex set `inside`, with multiplicity.
    pub fn edge_boundary(&self, inside: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| inside[u as usize] != inside[v as usize]).count()
    }
}

impl Graph {
    /// The cycle `C_n`.
    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect())
    }

    /// The path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| ((i - 1) as u32, i as u32)).collect())
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i as u32, j as u32));
            }
        }
        Graph::new(n, e)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::cycle(n)
    }

    pub fn path(n: usize) -> Graph {
        Graph::path(n)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::complete(n)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn loops_count_twice() {
        let g = Graph::new(2, vec![(0, 0), (0, 1), (0, 1)]);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.simplified().num_edges(), 1);
    }

    #[test]
    fn distances() {
        let c = cycle(6);
        assert_eq!(c.distance(0, 3).unwrap(), 3);
        assert_eq!(c.diameter(), 3);
        assert!(c.distance(0, 9).is_err());
        assert!(!Graph::new(3, vec![(0, 1)]).is_connected());
        assert_eq!(path(4).bfs_truncated(0, 2), vec![0, 1, 2, UNREACHABLE]);
    }

    #[test]
    fn boundary_counts_multiplicity() {
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2)]);
        assert_eq!(g.edge_boundary(&[true, false, false]), 2);
        assert_eq!(g.edge_boundary(&[false, false, true]), 1);
        assert_eq!(complete(4).edge_boundary(&[true, true, false, false]), 4);
    }
}
