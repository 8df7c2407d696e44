//! Stand-alone verification of triviality certificates and homotopy
//! traces. Nothing here reuses the search code: words are handled with
//! plain vectors and distances come from fresh breadth-first searches.

use std::collections::HashMap;

use crate::graph::Graph;

use super::contract::{HomotopyTrace, LoopMove};
use super::presentation::Presentation;
use super::trivialize::TrivialityCertificate;

fn gen(l: i32) -> usize {
    l.unsigned_abs() as usize - 1
}

fn reduce(w: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in w {
        match out.last() {
            Some(&p) if p == -l => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.remove(0);
        out.pop();
    }
    out
}

fn replace(w: &[i32], g: usize, by: &[i32]) -> Vec<i32> {
    let mut out = Vec::new();
    for &l in w {
        if gen(l) != g {
            out.push(l);
        } else if l > 0 {
            out.extend(by.iter().copied());
        } else {
            out.extend(by.iter().rev().map(|x| -x));
        }
    }
    out
}

/// Replays the eliminations in order. Each step must take its relator
/// (rewritten by all earlier steps), find the generator there exactly once,
/// and offer an expression in surviving generators that turns the relator
/// into the empty word. When every generator has been eliminated the group
/// is trivial.
pub fn check_certificate(p: &Presentation, cert: &TrivialityCertificate) -> Result<(), String> {
    let n = p.num_generators();
    if cert.generators != n {
        return Err(format!("certificate has {} generators, presentation {}", cert.generators, n));
    }
    let mut gone = vec![false; n];
    let mut used = vec![false; p.relators.len()];
    for (i, step) in cert.steps.iter().enumerate() {
        let x = step.generator;
        if x >= n || gone[x] {
            return Err(format!("step {i}: generator {x} unavailable"));
        }
        if step.relator >= p.relators.len() || used[step.relator] {
            return Err(format!("step {i}: relator {} unavailable", step.relator));
        }
        if step.expression.iter().any(|&l| l == 0 || gen(l) >= n || gen(l) == x || gone[gen(l)]) {
            return Err(format!("step {i}: expression uses an unavailable generator"));
        }
        let mut r = reduce(p.relators[step.relator].clone());
        for earlier in &cert.steps[..i] {
            r = reduce(replace(&r, earlier.generator, &earlier.expression));
        }
        if r.iter().any(|&l| gone[gen(l)]) {
            return Err(format!("step {i}: rewritten relator still mentions eliminated generators"));
        }
        if r.iter().filter(|&&l| gen(l) == x).count() != 1 {
            return Err(format!("step {i}: generator {x} does not occur exactly once"));
        }
        if !reduce(replace(&r, x, &step.expression)).is_empty() {
            return Err(format!("step {i}: expression does not solve the relator"));
        }
        gone[x] = true;
        used[step.relator] = true;
    }
    match gone.iter().position(|g| !g) {
        Some(g) => Err(format!("generator {g} never eliminated")),
        None => Ok(()),
    }
}

fn distance(graph: &Graph, from: u32, to: u32, memo: &mut HashMap<u32, Vec<u32>>) -> u32 {
    let d = memo.entry(from).or_insert_with(|| {
        let n = graph.num_vertices();
        let mut dist = vec![u32::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[from as usize] = 0;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            for &w in graph.neighbors(v as usize) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    });
    d[to as usize]
}

fn check_loop(graph: &Graph, base: u32, r: u32, l: &[u32], memo: &mut HashMap<u32, Vec<u32>>) -> Result<(), String> {
    if l.first() != Some(&base) || l.last() != Some(&base) {
        return Err("loop does not start and end at the base point".into());
    }
    for w in l.windows(2) {
        if distance(graph, w[0], w[1], memo) > r {
            return Err(format!("points {} and {} are more than {r} apart", w[0], w[1]));
        }
    }
    Ok(())
}

/// Replays a homotopy trace. Same-length moves must keep every point within
/// `r` of where it was; length-changing moves may only insert or delete a
/// point equal to a neighbour. Every intermediate sequence must be an
/// `r`-loop, and the last one must be the constant loop.
pub fn replay_trace(graph: &Graph, start: &[u32], trace: &HomotopyTrace) -> Result<(), String> {
    let (base, r) = (trace.base, trace.r);
    let mut memo = HashMap::new();
    let mut cur = start.to_vec();
    check_loop(graph, base, r, &cur, &mut memo)?;
    for (i, LoopMove { index, old, new }) in trace.moves.iter().enumerate() {
        let idx = *index;
        if idx + old.len() > cur.len() || cur[idx..idx + old.len()] != old[..] {
            return Err(format!("move {i}: old points do not match the loop"));
        }
        if old.len() == new.len() {
            if old.iter().zip(new).any(|(&a, &b)| distance(graph, a, b, &mut memo) > r) {
                return Err(format!("move {i}: a point moves more than {r}"));
            }
            if idx == 0 || idx + old.len() >= cur.len() {
                return Err(format!("move {i}: endpoints are fixed"));
            }
        } else {
            let (len_ok, p) = match (old.len(), new.len()) {
                (1, 0) => (true, old[0]),
                (0, 1) => (true, new[0]),
                _ => (false, 0),
            };
            if !len_ok {
                return Err(format!("move {i}: only single insertions or deletions change length"));
            }
            let prev = if idx > 0 { cur.get(idx - 1).copied() } else { None };
            let next = if old.is_empty() { cur.get(idx).copied() } else { cur.get(idx + 1).copied() };
            let repeated = prev == Some(p) || next == Some(p) || (p == base && (idx == 0 || idx >= cur.len() - old.len()));
            if !repeated {
                return Err(format!("move {i}: inserted or deleted point is not a repeat"));
            }
        }
        cur.splice(idx..idx + old.len(), new.iter().copied());
        if cur.is_empty() {
            return Err(format!("move {i}: loop became empty"));
        }
        check_loop(graph, base, r, &cur, &mut memo).map_err(|e| format!("move {i}: {e}"))?;
    }
    if cur.iter().all(|&v| v == base) {
        Ok(())
    } else {
        Err("final loop is not constant".into())
    }
}
