//! Classical expander families on `Z_n × Z_n` and congruence quotients of
//! `SL_2(Z)`: Margulis graphs `M_n`, `M̄_n`, Gabber–Galil `L_n`, the
//! Schreier graphs `M°_n` and Cayley graphs generated by `a_k, b_k`.
//!
//! Unlike the warped levels, these keep loops and parallel edges: degrees
//! are counted with multiplicity.

use std::collections::{HashMap, VecDeque};

use crate::dynamics::{AffineGen, Letter};
use crate::graph::Graph;

/// Vertex index of `(x, y)` in `Z_n × Z_n`.
#[inline]
pub fn torus_index(x: u64, y: u64, n: u64) -> u32 {
    (x * n + y) as u32
}

#[inline]
pub fn torus_coords(i: u32, n: u64) -> (u64, u64) {
    (i as u64 / n, i as u64 % n)
}

/// Bipartite multigraph on two copies of `Z_n × Z_n`: left vertex `v` is
/// joined to right vertex `T v` for every transformation `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    pub n: u64,
    pub transforms: Vec<(String, AffineGen)>,
    /// `(left, right, transform index)`, one entry per edge.
    pub edges: Vec<(u32, u32, usize)>,
}

impl BipartiteMultigraph {
    fn from_transforms(n: u64, transforms: Vec<(String, AffineGen)>) -> Self {
        let mut edges = Vec::with_capacity((n * n) as usize * transforms.len());
        for x in 0..n {
            for y in 0..n {
                for (ti, (_, t)) in transforms.iter().enumerate() {
                    let (a, b) = t.apply_mod((x, y), n);
                    edges.push((torus_index(x, y, n), torus_index(a, b, n), ti));
                }
            }
        }
        BipartiteMultigraph { n, transforms, edges }
    }

    pub fn side_size(&self) -> usize {
        (self.n * self.n) as usize
    }

    /// Right neighbours of a left vertex, with multiplicity.
    pub fn right_neighbors(&self, x: u64, y: u64) -> Vec<(u64, u64)> {
        let v = torus_index(x, y, self.n);
        self.edges.iter().filter(|e| e.0 == v).map(|e| torus_coords(e.1, self.n)).collect()
    }

    /// Left degrees counted with multiplicity.
    pub fn left_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.side_size()];
        for e in &self.edges {
            d[e.0 as usize] += 1;
        }
        d
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.side_size()];
        for e in &self.edges {
            d[e.1 as usize] += 1;
        }
        d
    }

    /// As a plain multigraph: left `v` is vertex `v`, right `v` is `n² + v`.
    pub fn to_graph(&self) -> Graph {
        let off = self.side_size() as u32;
        Graph::new(2 * self.side_size(), self.edges.iter().map(|e| (e.0, off + e.1)).collect())
    }

    /// The identity matching: one edge `v -- v'` per vertex, taken from the
    /// identity transformation. Requires `1_G` among the transforms.
    pub fn identity_matching(&self) -> Option<Vec<(u32, u32)>> {
        self.transforms.iter().position(|(_, t)| *t == AffineGen::IDENTITY)?;
        let off = self.side_size() as u32;
        Some((0..off).map(|v| (v, off + v)).collect())
    }
}

fn named(list: &[(&str, AffineGen)]) -> Vec<(String, AffineGen)> {
    list.iter().map(|(s, t)| (s.to_string(), *t)).collect()
}

/// `T̄_3 = T_4 T_3^{-1} T_4^{-1}`, computed by composition.
pub fn t3_bar() -> AffineGen {
    AffineGen::T4.compose(&AffineGen::T3.inverse()).compose(&AffineGen::T4.inverse())
}

/// Original Margulis graph: transformations `1, T1, T2, T3, T4`.
pub fn margulis_m(n: u64) -> BipartiteMultigraph {
    use AffineGen as G;
    BipartiteMultigraph::from_transforms(
        n,
        named(&[("id", G::IDENTITY), ("T1", G::T1), ("T2", G::T2), ("T3", G::T3), ("T4", G::T4)]),
    )
}

/// `M̄_n`: transformations `1, T1, T2, T̄3, T4`.
pub fn margulis_mbar(n: u64) -> BipartiteMultigraph {
    use AffineGen as G;
    BipartiteMultigraph::from_transforms(
        n,
        named(&[("id", G::IDENTITY), ("T1", G::T1), ("T2", G::T2), ("T3bar", t3_bar()), ("T4", G::T4)]),
    )
}

/// Gabber–Galil `L_n`: transformations `1, T3, T̄3, T1T3, T2T3`.
pub fn gabber_galil_l(n: u64) -> BipartiteMultigraph {
    use AffineGen as G;
    BipartiteMultigraph::from_transforms(
        n,
        named(&[
            ("id", G::IDENTITY),
            ("T3", G::T3),
            ("T3bar", t3_bar()),
            ("T1T3", G::T1.compose(&G::T3)),
            ("T2T3", G::T2.compose(&G::T3)),
        ]),
    )
}

/// Schreier graph `M°_n` of `SL_2(Z) ⋉ Z^2` on `Z_n × Z_n`: an edge
/// `{v, s·v}` for each `s ∈ {1, T1, T2, T3, T4}`, so each vertex meets
/// `T_i` and `T_i^{-1}` edges plus an identity loop; 10-regular counting
/// half-edges.
pub fn schreier_mcirc(n: u64) -> Graph {
    let m = margulis_m(n);
    Graph::new(m.side_size(), m.edges.iter().map(|e| (e.0, e.1)).collect())
}

/// 2×2 matrix modulo `n`, row-major.
pub type Mat2 = [u64; 4];

fn mat_mul_mod(a: &Mat2, b: &Mat2, n: u64) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % n,
        (a[0] * b[1] + a[1] * b[3]) % n,
        (a[2] * b[0] + a[3] * b[2]) % n,
        (a[2] * b[1] + a[3] * b[3]) % n,
    ]
}

fn shear_mod(letter: Letter, k: u64, n: u64) -> Mat2 {
    let m = letter.matrix(k as i64);
    let r = |v: i64| v.rem_euclid(n as i64) as u64;
    [r(m[0][0]), r(m[0][1]), r(m[1][0]), r(m[1][1])]
}

/// Cayley graph of the subgroup of `SL_2(Z_n)` generated by `a_k, b_k`,
/// with edges `{g, g·s}` for `s ∈ {a_k, b_k}` (right multiplication), so
/// every vertex has degree 4 with multiplicity.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub n: u64,
    pub k: u64,
    pub elements: Vec<Mat2>,
    pub index: HashMap<Mat2, u32>,
    pub graph: Graph,
}

pub fn selberg_cayley(n: u64, k: u64) -> CayleyGraph {
    assert!(n >= 2, "modulus must be at least 2");
    let gens = [shear_mod(Letter::A, k, n), shear_mod(Letter::B, k, n)];
    let all = [
        gens[0],
        shear_mod(Letter::AInv, k, n),
        gens[1],
        shear_mod(Letter::BInv, k, n),
    ];
    let id: Mat2 = [1, 0, 0, 1];
    let mut elements = vec![id];
    let mut index = HashMap::from([(id, 0u32)]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &all {
            let h = mat_mul_mod(&g, s, n);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(h) {
                e.insert(elements.len() as u32);
                elements.push(h);
                queue.push_back(h);
            }
        }
    }
    let mut edges = Vec::with_capacity(2 * elements.len());
    for (i, g) in elements.iter().enumerate() {
        for s in &gens {
            edges.push((i as u32, index[&mat_mul_mod(g, s, n)]));
        }
    }
    let graph = Graph::new(elements.len(), edges);
    CayleyGraph { n, k, elements, index, graph }
}

impl CayleyGraph {
    pub fn multiply(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        mat_mul_mod(a, b, self.n)
    }
}
