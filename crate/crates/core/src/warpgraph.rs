//! Finite levels of the warped cone over an origami surface.
//!
//! Level `t` lives on the grid of denominator `t`, so a grid step has length
//! exactly one and the graph is unweighted. Vertices are joined by
//! `Metric` edges (grid neighbours) and by `Warp` edges `{p, g·p}` for each
//! generator `g` moving `p`. Loops and parallel edges are collapsed.

use std::collections::HashMap;

use crate::dynamics::{apply_unchecked, apply_word, check_k, GroupWord, Letter};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, UNREACHABLE};
use crate::surface::{Surface, SurfacePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Metric,
    Warp(Letter),
}

impl EdgeKind {
    pub fn label(&self) -> String {
        match self {
            EdgeKind::Metric => "metric".to_string(),
            EdgeKind::Warp(l) => format!("warp:{}", l.as_char()),
        }
    }

    pub fn parse(s: &str) -> Result<EdgeKind> {
        match s {
            "metric" => Ok(EdgeKind::Metric),
            _ => match s.strip_prefix("warp:") {
                Some(c) if c.chars().count() == 1 => Ok(EdgeKind::Warp(Letter::from_char(c.chars().next().unwrap())?)),
                _ => Err(Error::Parse(format!("edge kind `{s}`"))),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct LevelGraph {
    surface: Surface,
    k: u64,
    t: u64,
    vertices: Vec<SurfacePoint>,
    lookup: Vec<u32>,
    graph: Graph,
    kinds: Vec<EdgeKind>,
}

/// Build level `t` of the warped cone for shear parameter `k`.
pub fn build_level(surface: &Surface, k: u64, t: u64) -> Result<LevelGraph> {
    check_k(surface, k)?;
    LevelGraph::build(surface, k, t, true)
}

/// The unwarped control: the same grid with metric edges only.
pub fn build_control(surface: &Surface, t: u64) -> LevelGraph {
    LevelGraph::build(surface, surface.shear_modulus(), t, false).expect("metric grid always builds")
}

impl LevelGraph {
    fn empty(surface: &Surface, k: u64, t: u64) -> Result<LevelGraph> {
        assert!(t >= 1, "level must be positive");
        let vertices = surface.grid_points(t);
        let tt = t as usize;
        let mut lookup = vec![u32::MAX; surface.m() * tt * tt];
        for (id, p) in vertices.iter().enumerate() {
            let (sq, x, y) = surface.grid_coords(p, t)?;
            lookup[(sq * tt + x as usize) * tt + y as usize] = id as u32;
        }
        for sq in 0..surface.m() {
            let rep = surface.corner_rep(sq);
            lookup[sq * tt * tt] = lookup[rep * tt * tt];
        }
        Ok(LevelGraph { surface: surface.clone(), k, t, vertices, lookup, graph: Graph::new(0, Vec::new()), kinds: Vec::new() })
    }

    /// Reassemble a level from a stored edge list (vertex ids in grid-point
    /// order, as produced by [`build_level`]).
    pub fn from_edges(surface: &Surface, k: u64, t: u64, edges: Vec<(u32, u32, EdgeKind)>) -> Result<LevelGraph> {
        let mut lg = LevelGraph::empty(surface, k, t)?;
        let n = lg.vertices.len();
        if let Some(e) = edges.iter().find(|e| e.0 as usize >= n || e.1 as usize >= n) {
            return Err(Error::VertexNotFound(format!("{}", e.0.max(e.1))));
        }
        let mut cand: Vec<(u32, u32, EdgeKind)> = edges.into_iter().map(|(u, v, kd)| (u.min(v), u.max(v), kd)).collect();
        cand.sort_unstable();
        cand.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        lg.kinds = cand.iter().map(|c| c.2).collect();
        lg.graph = Graph::new(n, cand.iter().map(|c| (c.0, c.1)).collect());
        Ok(lg)
    }

    fn build(surface: &Surface, k: u64, t: u64, warped: bool) -> Result<LevelGraph> {
        let mut lg = LevelGraph::empty(surface, k, t)?;

        let per_vertex: Vec<Vec<(u32, u32, EdgeKind)>> = exec::map_range(lg.vertices.len(), |u| {
            let p = &lg.vertices[u];
            let mut out = Vec::with_capacity(8);
            for q in surface.metric_neighbors(t, p) {
                let v = lg.id_unchecked(&q);
                out.push((u as u32, v, EdgeKind::Metric));
            }
            if warped {
                for l in Letter::ALL {
                    let q = apply_unchecked(surface, l, k, p);
                    let v = lg.id_unchecked(&q);
                    if v as usize != u {
                        out.push((u as u32, v, EdgeKind::Warp(l)));
                    }
                }
            }
            out
        });
        let mut cand: Vec<(u32, u32, EdgeKind)> =
            per_vertex.into_iter().flatten().map(|(u, v, kd)| (u.min(v), u.max(v), kd)).collect();
        cand.sort_unstable();
        cand.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        lg.kinds = cand.iter().map(|c| c.2).collect();
        lg.graph = Graph::new(lg.vertices.len(), cand.iter().map(|c| (c.0, c.1)).collect());
        Ok(lg)
    }

    fn id_unchecked(&self, p: &SurfacePoint) -> u32 {
        self.id(p).expect("generator images stay on the grid")
    }

    /// Vertex id of a grid point.
    pub fn id(&self, p: &SurfacePoint) -> Result<u32> {
        let (sq, x, y) = self.surface.grid_coords(p, self.t).map_err(|_| Error::VertexNotFound(p.to_string()))?;
        if x >= self.t || y >= self.t {
            return Err(Error::VertexNotFound(p.to_string()));
        }
        let tt = self.t as usize;
        Ok(self.lookup[(sq * tt + x as usize) * tt + y as usize])
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn level(&self) -> u64 {
        self.t
    }

    pub fn vertices(&self) -> &[SurfacePoint] {
        &self.vertices
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Edge kinds aligned with `graph().edges()`.
    pub fn kinds(&self) -> &[EdgeKind] {
        &self.kinds
    }

    /// Base point: the canonical corner.
    pub fn base(&self) -> u32 {
        self.lookup[0]
    }

    /// Metric edges only.
    pub fn metric_graph(&self) -> Graph {
        let e = self
            .graph
            .edges()
            .iter()
            .zip(&self.kinds)
            .filter(|(_, kd)| **kd == EdgeKind::Metric)
            .map(|(e, _)| *e)
            .collect();
        Graph::new(self.vertices.len(), e)
    }

    /// Vertex ids of the orbit-tree images `g·u` for every reduced word of
    /// length `≤ radius`, together with the word.
    fn ball_images(&self, u: &SurfacePoint, radius: usize) -> Vec<(GroupWord, SurfacePoint)> {
        let mut out = vec![(GroupWord::identity(self.k), u.clone())];
        let mut frontier = out.clone();
        for _ in 0..radius {
            let mut next = Vec::with_capacity(frontier.len() * 3);
            for (w, img) in &frontier {
                for l in Letter::ALL {
                    if w.letters().first() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut letters = vec![l];
                    letters.extend_from_slice(w.letters());
                    next.push((GroupWord::new(letters, self.k), apply_unchecked(&self.surface, l, self.k, img)));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// `min over |g| ≤ radius of |g| + t·d_Σ(g·u, v)` where `t·d_Σ` is the
    /// flat grid path distance at this level.
    pub fn dg_wordball(&self, u: &SurfacePoint, v: &SurfacePoint, radius: usize) -> Result<DgValue> {
        self.id(u)?;
        let vid = self.id(v)? as usize;
        let flat = self.metric_graph().bfs(vid);
        let mut best: Option<DgValue> = None;
        for (w, img) in self.ball_images(u, radius) {
            let d = flat[self.id_unchecked(&img) as usize];
            if d == UNREACHABLE {
                continue;
            }
            let value = w.len() as u64 + d as u64;
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(DgValue { value, word: w, flat_distance: d as u64 });
            }
        }
        best.ok_or_else(|| Error::VertexNotFound(v.to_string()))
    }
}

/// Value of the word-ball distance with a minimizing word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgValue {
    pub value: u64,
    pub word: GroupWord,
    pub flat_distance: u64,
}

/// Shortest-path distance in the level graph, every edge counting one.
pub fn warped_distance(level: &LevelGraph, u: &SurfacePoint, v: &SurfacePoint) -> Result<u32> {
    let a = level.id(u)? as usize;
    let b = level.id(v)? as usize;
    Ok(level.graph.bfs(a)[b])
}

/// Word-ball formula evaluated from scratch at level `t`.
pub fn dg_wordball(surface: &Surface, k: u64, t: u64, u: &SurfacePoint, v: &SurfacePoint, radius: usize) -> Result<DgValue> {
    build_level(surface, k, t)?.dg_wordball(u, v, radius)
}

/// Quotient of a graph by a matching, with the vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    pub map: Vec<u32>,
}

/// Identify the endpoints of each matched edge. Every edge survives; matched
/// edges become loops. Quotient vertices are numbered by their smallest
/// preimage.
pub fn matching_quotient(graph: &Graph, matching: &[(u32, u32)]) -> Result<Quotient> {
    let n = graph.num_vertices();
    let mut partner: Vec<Option<u32>> = vec![None; n];
    for &(a, b) in matching {
        if a == b || a as usize >= n || b as usize >= n {
            return Err(Error::NotAMatching(format!("({a},{b}) is not an edge")));
        }
        if !graph.neighbors(a as usize).contains(&b) {
            return Err(Error::NotAMatching(format!("({a},{b}) is not an edge")));
        }
        if partner[a as usize].is_some() || partner[b as usize].is_some() {
            return Err(Error::NotAMatching(format!("({a},{b}) shares an endpoint")));
        }
        partner[a as usize] = Some(b);
        partner[b as usize] = Some(a);
    }
    let mut map = vec![u32::MAX; n];
    let mut next = 0u32;
    for v in 0..n {
        if map[v] != u32::MAX {
            continue;
        }
        map[v] = next;
        if let Some(p) = partner[v] {
            map[p as usize] = next;
        }
        next += 1;
    }
    let edges = graph.edges().iter().map(|&(u, v)| (map[u as usize], map[v as usize])).collect();
    Ok(Quotient { graph: Graph::new(next as usize, edges), map })
}

/// A finite coarse disjoint union: components placed at prescribed mutual
/// distances. Component indices are 1-based in the gap rule.
#[derive(Clone, Debug)]
pub struct CoarseUnion {
    components: Vec<Graph>,
    gaps: Vec<Vec<u64>>,
}

/// `gap(n, m) = n + m`.
pub fn index_sum_gap(i: usize, j: usize) -> u64 {
    (i + j) as u64
}

/// `gap(n, m) = (n + m)(D + 1)` with `D` the largest component diameter:
/// every gap exceeds `diam X_n + diam X_m` and the rule grows with `n + m`.
pub fn diam_sum_gap(graphs: &[Graph]) -> impl Fn(usize, usize) -> u64 {
    let d = graphs.iter().map(|g| g.diameter() as u64).max().unwrap_or(0);
    move |i, j| (i + j) as u64 * (d + 1)
}

pub fn coarse_union(graphs: Vec<Graph>, gap_rule: impl Fn(usize, usize) -> u64) -> Result<CoarseUnion> {
    let n = graphs.len();
    let mut by_sum: std::collections::BTreeMap<usize, (u64, u64)> = Default::default();
    let mut gaps = vec![vec![0u64; n]; n];
    for i in 1..=n {
        for j in i + 1..=n {
            let g = gap_rule(i, j);
            if g == 0 {
                return Err(Error::GapNotDiverging(format!("gap({i},{j}) = 0")));
            }
            gaps[i - 1][j - 1] = g;
            gaps[j - 1][i - 1] = g;
            let e = by_sum.entry(i + j).or_insert((g, g));
            e.0 = e.0.min(g);
            e.1 = e.1.max(g);
        }
    }
    let mut running_max: Option<(usize, u64)> = None;
    for (&s, &(lo, hi)) in &by_sum {
        if let Some((ps, pm)) = running_max {
            if lo <= pm {
                return Err(Error::GapNotDiverging(format!("index sum {s} has gap {lo} <= {pm} at index sum {ps}")));
            }
        }
        if running_max.is_none_or(|(_, pm)| hi > pm) {
            running_max = Some((s, hi));
        }
    }
    // Close under the triangle inequality so the glued distance is a metric.
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i != j && i != m && j != m {
                    let via = gaps[i][m] + gaps[m][j];
                    if via < gaps[i][j] {
                        gaps[i][j] = via;
                    }
                }
            }
        }
    }
    Ok(CoarseUnion { components: graphs, gaps })
}

impl CoarseUnion {
    pub fn components(&self) -> &[Graph] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Distance between the components with 1-based indices `i != j`.
    pub fn component_distance(&self, i: usize, j: usize) -> u64 {
        self.gaps[i - 1][j - 1]
    }

    /// Distance between vertex `x` of component `i` and `y` of component
    /// `j` (1-based). Components are joined through their vertex 0.
    pub fn distance(&self, i: usize, x: usize, j: usize, y: usize) -> Result<u64> {
        let gi = self.components.get(i - 1).ok_or_else(|| Error::VertexNotFound(format!("component {i}")))?;
        let gj = self.components.get(j - 1).ok_or_else(|| Error::VertexNotFound(format!("component {j}")))?;
        if i == j {
            return Ok(gi.distance(x, y)? as u64);
        }
        Ok(gi.distance(x, 0)? as u64 + self.gaps[i - 1][j - 1] + gj.distance(0, y)? as u64)
    }
}

/// Pairwise warped distances between points sharing one covering-map image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTable {
    pub levels: Vec<u64>,
    /// `(level, i, j, distance)` rows.
    pub rows: Vec<(u64, usize, usize, u32)>,
}

impl FiberTable {
    /// Distances of pair `(i, j)` in level order.
    pub fn series(&self, i: usize, j: usize) -> Vec<u32> {
        self.rows.iter().filter(|r| r.1 == i && r.2 == j).map(|r| r.3).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<(usize, usize)> = self.rows.iter().map(|r| (r.1, r.2)).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.pairs().iter().all(|&(i, j)| self.series(i, j).windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.pairs().iter().all(|&(i, j)| self.series(i, j).windows(2).all(|w| w[0] < w[1]))
    }
}

pub fn fiber_divergence(surface: &Surface, k: u64, points: &[SurfacePoint], levels: &[u64]) -> Result<FiberTable> {
    check_k(surface, k)?;
    if let Some(first) = points.first() {
        let image = surface.covering_map(first);
        for p in points {
            if surface.covering_map(p) != image {
                return Err(Error::FibreMismatch(format!("{p} and {first}")));
            }
        }
    }
    let mut rows = Vec::new();
    for &t in levels {
        let level = build_level(surface, k, t)?;
        let ids = points.iter().map(|p| level.id(p)).collect::<Result<Vec<_>>>()?;
        let dists = exec::map_slice(&ids, |&a| level.graph.bfs(a as usize));
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                rows.push((t, i, j, dists[i][ids[j] as usize]));
            }
        }
    }
    Ok(FiberTable { levels: levels.to_vec(), rows })
}

/// Witness bound for points in one orbit: `d(p, w·p) <= |w|`.
pub fn orbit_witness_distance(level: &LevelGraph, p: &SurfacePoint, word: &GroupWord) -> Result<(u32, usize)> {
    let q = apply_word(&level.surface, word, p)?;
    Ok((warped_distance(level, p, &q)?, word.len()))
}

/// Edge table keyed by unordered vertex pairs, for lookups in tests and I/O.
pub fn edge_kind_map(level: &LevelGraph) -> HashMap<(u32, u32), EdgeKind> {
    level.graph.edges().iter().copied().zip(level.kinds.iter().copied()).collect()
}
