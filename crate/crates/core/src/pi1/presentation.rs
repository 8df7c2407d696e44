//! Spanning-tree presentation of the fundamental group of a scale complex.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::complex::ScaleComplex;
use super::homology::{cokernel, H1Summary};
use super::words::{cyclic_reduce, generator_of, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    /// Threshold-graph edge `(u, v)`, `u < v`, behind each generator,
    /// oriented from `u` to `v`.
    pub generator_edges: Vec<(u32, u32)>,
    /// One cyclically reduced relator per 2-cell, in cell order.
    pub relators: Vec<Word>,
}

impl Presentation {
    /// An abstract presentation; generator `i` is given the placeholder
    /// edge `(i, i)`.
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Self {
        Presentation { generator_edges: (0..num_generators as u32).map(|i| (i, i)).collect(), relators }
    }

    pub fn num_generators(&self) -> usize {
        self.generator_edges.len()
    }

    /// Abelianization via exponent sums.
    pub fn abelianization(&self) -> Result<H1Summary> {
        let columns = self
            .relators
            .iter()
            .map(|r| {
                let mut sums: BTreeMap<u32, i64> = BTreeMap::new();
                for &l in r {
                    *sums.entry(generator_of(l) as u32).or_default() += l.signum() as i64;
                }
                sums.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        cokernel(self.num_generators(), columns)
    }
}

pub fn pi1_presentation(complex: &ScaleComplex) -> Result<Presentation> {
    let n = complex.num_vertices();
    let adj = complex.adjacency();
    let mut parent = vec![u32::MAX; n];
    let base = complex.base();
    if base as usize >= n {
        return Err(Error::VertexNotFound(base.to_string()));
    }
    parent[base as usize] = base;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if parent[w as usize] == u32::MAX {
                parent[w as usize] = v;
                queue.push_back(w);
            }
        }
    }
    if parent.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    let is_tree = |(u, v): (u32, u32)| parent[v as usize] == u || parent[u as usize] == v;
    let mut generator_of_edge: Vec<Option<usize>> = vec![None; complex.edges().len()];
    let mut generator_edges = Vec::new();
    for (i, &e) in complex.edges().iter().enumerate() {
        if !is_tree(e) {
            generator_of_edge[i] = Some(generator_edges.len());
            generator_edges.push(e);
        }
    }
    let lookup = complex.edge_lookup();
    let relators = complex
        .cells()
        .map(|cell| {
            let k = cell.len();
            let word: Word = (0..k)
                .filter_map(|i| {
                    let (p, q) = (cell[i], cell[(i + 1) % k]);
                    let key = if p < q { (p, q) } else { (q, p) };
                    let g = generator_of_edge[lookup[&key] as usize]?;
                    let l = g as i32 + 1;
                    Some(if p < q { l } else { -l })
                })
                .collect();
            cyclic_reduce(&word)
        })
        .collect();
    Ok(Presentation { generator_edges, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, path};
    use crate::pi1::build_scale_complex;

    #[test]
    fn small_presentations() {
        let tree = pi1_presentation(&build_scale_complex(&path(5), 1, 0)).unwrap();
        assert_eq!((tree.num_generators(), tree.relators.len()), (0, 0));
        let c5 = pi1_presentation(&build_scale_complex(&cycle(5), 1, 0)).unwrap();
        assert_eq!((c5.num_generators(), c5.relators.len()), (1, 0));
        let c4 = pi1_presentation(&build_scale_complex(&cycle(4), 1, 0)).unwrap();
        assert_eq!(c4.num_generators(), 1);
        assert_eq!(c4.relators.len(), 1);
        assert_eq!(c4.relators[0].len(), 1);
    }

    #[test]
    fn abelianization_of_circle() {
        let c5 = pi1_presentation(&build_scale_complex(&cycle(5), 1, 2)).unwrap();
        assert_eq!(c5.abelianization().unwrap().betti1, 1);
    }
}
