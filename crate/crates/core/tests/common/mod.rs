#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use nalgebra::{DMatrix, SymmetricEigen};
use origami_lab::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Colour refinement to a stable partition. Colours are ranks of sorted
/// signatures, so the result does not depend on vertex names.
fn refine(adj: &[Vec<usize>], mut colour: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = adj[v].iter().map(|&w| colour[w]).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> = distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let before = colour.iter().collect::<HashSet<_>>().len();
        let after = distinct.len();
        colour = next;
        if after == before {
            return colour;
        }
    }
}

fn relabel(edges: &[(u32, u32)], label: &[usize]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (label[u as usize] as u32, label[v as usize] as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

fn search(adj: &[Vec<usize>], edges: &[(u32, u32)], colour: Vec<usize>, best: &mut Option<Vec<(u32, u32)>>) {
    let colour = refine(adj, colour);
    let n = adj.len();
    let mut counts = vec![0usize; n];
    for &c in &colour {
        counts[c] += 1;
    }
    let target = (0..n).filter(|&c| counts[c] > 1).min_by_key(|&c| (counts[c], c));
    match target {
        None => {
            let form = relabel(edges, &colour);
            if best.as_ref().is_none_or(|b| form < *b) {
                *best = Some(form);
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| colour[v] == c) {
                let ind: Vec<usize> = (0..n)
                    .map(|w| if w == v { 2 * colour[w] } else { 2 * colour[w] + 1 })
                    .collect();
                search(adj, edges, ind, best);
            }
        }
    }
}

/// Canonical sorted edge multiset (loops and multi-edges allowed).
pub fn canonical_form(n: usize, edges: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    let mut best = None;
    search(&adj, edges, vec![0; n], &mut best);
    best.unwrap_or_default()
}

/// All simple graphs on `n` vertices up to isomorphism, as canonical edge
/// lists, grown one vertex at a time.
pub fn all_graphs(n: usize) -> Vec<Vec<(u32, u32)>> {
    let mut level: Vec<Vec<(u32, u32)>> = vec![vec![]];
    for m in 1..n {
        let mut seen: HashSet<Vec<(u32, u32)>> = HashSet::new();
        for g in &level {
            for mask in 0u32..(1 << m) {
                let mut e = g.clone();
                e.extend((0..m as u32).filter(|&i| mask & (1 << i) != 0).map(|i| (i, m as u32)));
                seen.insert(canonical_form(m + 1, &e));
            }
        }
        let mut next: Vec<_> = seen.into_iter().collect();
        next.sort();
        level = next;
    }
    if n == 0 {
        return vec![];
    }
    level
}

pub fn random_connected(r: &mut ChaCha8Rng, n: usize, extra_per_vertex: f64) -> Graph {
    let mut edges: HashSet<(u32, u32)> = HashSet::new();
    for v in 1..n {
        let u = r.gen_range(0..v);
        edges.insert((u as u32, v as u32));
    }
    let extra = (extra_per_vertex * n as f64) as usize;
    for _ in 0..extra {
        let a = r.gen_range(0..n) as u32;
        let b = r.gen_range(0..n) as u32;
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let mut e: Vec<_> = edges.into_iter().collect();
    e.sort_unstable();
    Graph::new(n, e)
}

pub fn random_dense_connected(r: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges: HashSet<(u32, u32)> = HashSet::new();
    for v in 1..n {
        edges.insert((r.gen_range(0..v) as u32, v as u32));
    }
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if r.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    let mut e: Vec<_> = edges.into_iter().collect();
    e.sort_unstable();
    Graph::new(n, e)
}

/// Full spectrum of the normalized Laplacian, ascending.
pub fn dense_normalized_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.num_vertices();
    let deg: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let mut m = DMatrix::<f64>::identity(n, n);
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        let w = 1.0 / (deg[u] * deg[v]).sqrt();
        if u == v {
            m[(u, u)] -= 2.0 * w;
        } else {
            m[(u, v)] -= w;
            m[(v, u)] -= w;
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `min |∂A|/|A|` by checking every subset directly.
pub fn naive_cheeger(g: &Graph) -> (u64, u64) {
    let n = g.num_vertices();
    let mut best = (u64::MAX, 1u64);
    for mask in 1u64..(1 << n) {
        let size = mask.count_ones() as u64;
        if size > (n / 2) as u64 {
            continue;
        }
        let b = g
            .edges()
            .iter()
            .filter(|&&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .count() as u64;
        if (b as u128) * (best.1 as u128) < (best.0 as u128) * (size as u128) {
            best = (b, size);
        }
    }
    best
}

/// Randomized-restart hill climbing over subsets; returns the best ratio
/// found, an upper bound for the Cheeger constant.
pub fn local_search_cheeger(g: &Graph, r: &mut ChaCha8Rng, restarts: usize) -> f64 {
    let n = g.num_vertices();
    let ratio = |inside: &[bool]| {
        let size = inside.iter().filter(|&&b| b).count();
        if size == 0 || size > n / 2 {
            f64::INFINITY
        } else {
            g.edge_boundary(inside) as f64 / size as f64
        }
    };
    let mut best = f64::INFINITY;
    for _ in 0..restarts {
        let mut inside: Vec<bool> = (0..n).map(|_| r.gen_bool(0.3)).collect();
        if ratio(&inside).is_infinite() {
            inside = vec![false; n];
            inside[r.gen_range(0..n)] = true;
        }
        let mut cur = ratio(&inside);
        loop {
            let mut improved = false;
            for v in 0..n {
                inside[v] = !inside[v];
                let c = ratio(&inside);
                if c < cur {
                    cur = c;
                    improved = true;
                } else {
                    inside[v] = !inside[v];
                }
            }
            if !improved {
                break;
            }
        }
        best = best.min(cur);
    }
    best
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect())
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n as u32).map(|i| (i - 1, i)).collect())
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect())
}

/// Every matching of a simple graph, including the empty one.
pub fn all_matchings(edges: &[(u32, u32)]) -> Vec<Vec<(u32, u32)>> {
    fn go(edges: &[(u32, u32)], used: u64, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        match edges.split_first() {
            None => out.push(cur.clone()),
            Some((&(a, b), rest)) => {
                go(rest, used, cur, out);
                if used & (1 << a) == 0 && used & (1 << b) == 0 {
                    cur.push((a, b));
                    go(rest, used | (1 << a) | (1 << b), cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(edges, 0, &mut Vec::new(), &mut out);
    out
}
