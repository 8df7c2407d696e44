//! Search for an explicit `r`-homotopy from a loop to the constant loop.
//!
//! Moves are: one interior point moving by at most `r`, two adjacent
//! interior points moving together by at most `r` each, and deleting a
//! point that repeats its predecessor. After every move the sequence must
//! still be an `r`-loop. The search is best-first on the total distance of
//! the loop's points from the base, expanding successors in a fixed order.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::Graph;

/// Successors kept per expanded loop.
pub const BRANCHING: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopMove {
    /// Position in the loop where `old` is replaced by `new`.
    pub index: usize,
    pub old: Vec<u32>,
    pub new: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyTrace {
    pub base: u32,
    pub r: u32,
    pub moves: Vec<LoopMove>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Contraction {
    Contracted(HomotopyTrace),
    Unknown { expanded: usize },
}

struct Balls {
    /// Sorted vertices within distance `r`, including the centre.
    within: Vec<Vec<u32>>,
    to_base: Vec<u32>,
}

impl Balls {
    fn close(&self, a: u32, b: u32) -> bool {
        self.within[a as usize].binary_search(&b).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Step {
    One { i: u32, y: u32 },
    Two { i: u32, y: u32, z: u32 },
}

fn score(balls: &Balls, l: &[u32]) -> u64 {
    l.iter().map(|&v| balls.to_base[v as usize] as u64).sum()
}

/// Drop repeated consecutive points, recording each deletion.
fn dedup(l: &mut Vec<u32>, moves: &mut Vec<LoopMove>) {
    let mut i = 1;
    while i < l.len() {
        if l[i] == l[i - 1] {
            moves.push(LoopMove { index: i, old: vec![l[i]], new: vec![] });
            l.remove(i);
        } else {
            i += 1;
        }
    }
}

fn apply(l: &[u32], step: Step) -> (Vec<u32>, LoopMove) {
    let mut out = l.to_vec();
    let mv = match step {
        Step::One { i, y } => {
            let i = i as usize;
            out[i] = y;
            LoopMove { index: i, old: vec![l[i]], new: vec![y] }
        }
        Step::Two { i, y, z } => {
            let i = i as usize;
            out[i] = y;
            out[i + 1] = z;
            LoopMove { index: i, old: vec![l[i], l[i + 1]], new: vec![y, z] }
        }
    };
    (out, mv)
}

fn successors(balls: &Balls, l: &[u32]) -> Vec<(u64, Step)> {
    let n = l.len();
    if n < 3 {
        return Vec::new();
    }
    let d = |v: u32| balls.to_base[v as usize] as i64;
    let per_position = exec::map_range(n - 2, |k| {
        let i = k + 1;
        let (prev, cur, next) = (l[i - 1], l[i], l[i + 1]);
        let mut out = Vec::new();
        for &y in &balls.within[cur as usize] {
            if y != cur && balls.close(prev, y) && balls.close(y, next) {
                out.push((d(y) - d(cur), Step::One { i: i as u32, y }));
            }
        }
        if i + 2 < n {
            let after = l[i + 2];
            for &y in &balls.within[cur as usize] {
                if y == cur || d(y) > d(cur) || !balls.close(prev, y) {
                    continue;
                }
                for &z in &balls.within[next as usize] {
                    if z == next || d(z) > d(next) || !balls.close(y, z) || !balls.close(z, after) {
                        continue;
                    }
                    out.push((d(y) - d(cur) + d(z) - d(next), Step::Two { i: i as u32, y, z }));
                }
            }
        }
        out
    });
    let base_score = score(balls, l) as i64;
    let mut all: Vec<(u64, Step)> =
        per_position.into_iter().flatten().map(|(delta, s)| ((base_score + delta) as u64, s)).collect();
    all.sort_unstable();
    all.truncate(BRANCHING);
    all
}

/// Validate that `l` is an `r`-loop at `base` in `graph`.
pub fn check_r_loop(graph: &Graph, base: u32, r: u32, l: &[u32]) -> Result<()> {
    if l.first() != Some(&base) || l.last() != Some(&base) {
        return Err(Error::NotAnRLoop("endpoints differ from the base point".into()));
    }
    for w in l.windows(2) {
        if w.iter().any(|&v| v as usize >= graph.num_vertices()) {
            return Err(Error::VertexNotFound(format!("{}", w[0].max(w[1]))));
        }
        let d = graph.bfs_truncated(w[0] as usize, r)[w[1] as usize];
        if d > r {
            return Err(Error::NotAnRLoop(format!("step {} -> {} exceeds {r}", w[0], w[1])));
        }
    }
    Ok(())
}

/// `budget` caps the number of loops expanded.
pub fn contract_loop(graph: &Graph, base: u32, r: u32, l: &[u32], budget: usize) -> Result<Contraction> {
    check_r_loop(graph, base, r, l)?;
    let n = graph.num_vertices();
    let within = exec::map_range(n, |v| {
        let d = graph.bfs_truncated(v, r);
        (0..n as u32).filter(|&w| d[w as usize] <= r).collect::<Vec<u32>>()
    });
    let balls = Balls { within, to_base: graph.bfs(base as usize) };

    // Each node: loop, parent, moves from the parent.
    let mut nodes: Vec<(Vec<u32>, usize, Vec<LoopMove>)> = Vec::new();
    let mut start_moves = Vec::new();
    let mut start = l.to_vec();
    dedup(&mut start, &mut start_moves);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(start.clone());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((score(&balls, &start), start.len(), 0usize)));
    nodes.push((start, usize::MAX, start_moves));

    let mut expanded = 0;
    while let Some(Reverse((_, _, id))) = heap.pop() {
        if nodes[id].0.len() == 1 {
            let mut chain = Vec::new();
            let mut cur = id;
            while cur != usize::MAX {
                chain.push(cur);
                cur = nodes[cur].1;
            }
            let moves = chain.into_iter().rev().flat_map(|c| nodes[c].2.clone()).collect();
            return Ok(Contraction::Contracted(HomotopyTrace { base, r, moves }));
        }
        if expanded >= budget {
            break;
        }
        expanded += 1;
        let current = nodes[id].0.clone();
        for (_, step) in successors(&balls, &current) {
            let (mut next, mv) = apply(&current, step);
            let mut moves = vec![mv];
            dedup(&mut next, &mut moves);
            if seen.insert(next.clone()) {
                let key = (score(&balls, &next), next.len(), nodes.len());
                nodes.push((next, id, moves));
                heap.push(Reverse(key));
            }
        }
    }
    Ok(Contraction::Unknown { expanded })
}
