//! Greedy Tietze elimination.
//!
//! Repeatedly picks the shortest relator in which some generator occurs
//! exactly once, solves for that generator and substitutes the solution
//! everywhere else. If every generator disappears the group is trivial and
//! the list of eliminations is a certificate; otherwise the answer is
//! `Unknown`, never "non-trivial".

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::words::{cyclic_reduce, generator_of, solve_for, substitute, Word};

/// Words longer than this abort the search.
pub const MAX_WORD_LEN: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    /// Index into the presentation's relators.
    pub relator: usize,
    pub generator: usize,
    /// The word in still-present generators that `generator` equals.
    pub expression: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityCertificate {
    pub generators: usize,
    pub steps: Vec<Elimination>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trivialization {
    Trivial(TrivialityCertificate),
    Unknown { remaining_generators: usize, steps: usize },
}

impl Trivialization {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Trivialization::Trivial(_))
    }
}

struct State {
    relators: Vec<Word>,
    /// Relators containing each generator.
    occurs: Vec<BTreeSet<usize>>,
    queue: BTreeSet<(usize, usize)>,
}

impl State {
    fn set(&mut self, id: usize, word: Word) {
        let old = std::mem::take(&mut self.relators[id]);
        self.queue.remove(&(old.len(), id));
        for &l in &old {
            self.occurs[generator_of(l)].remove(&id);
        }
        for &l in &word {
            self.occurs[generator_of(l)].insert(id);
        }
        if !word.is_empty() {
            self.queue.insert((word.len(), id));
        }
        self.relators[id] = word;
    }
}

/// `budget` caps the number of eliminations.
pub fn try_trivialize(presentation: &Presentation, budget: usize) -> Trivialization {
    let g = presentation.num_generators();
    let mut st = State {
        relators: vec![Vec::new(); presentation.relators.len()],
        occurs: vec![BTreeSet::new(); g],
        queue: BTreeSet::new(),
    };
    for (i, r) in presentation.relators.iter().enumerate() {
        st.set(i, cyclic_reduce(r));
    }
    let mut alive = g;
    let mut steps = Vec::new();
    while alive > 0 && steps.len() < budget {
        let Some(&(len, id)) = st.queue.first() else { break };
        let word = &st.relators[id];
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in word {
            *counts.entry(generator_of(l)).or_default() += 1;
        }
        let choice =
            counts.iter().filter(|e| *e.1 == 1).map(|e| *e.0).min_by_key(|&x| (st.occurs[x].len(), x));
        let Some(x) = choice else {
            // Parked until a substitution changes it.
            st.queue.remove(&(len, id));
            continue;
        };
        let expression = solve_for(word, x);
        debug_assert_eq!(expression.len() + 1, len);
        st.set(id, Vec::new());
        let targets: Vec<usize> = st.occurs[x].iter().copied().collect();
        for t in targets {
            let w = cyclic_reduce(&substitute(&st.relators[t], x, &expression));
            if w.len() > MAX_WORD_LEN {
                return Trivialization::Unknown { remaining_generators: alive, steps: steps.len() };
            }
            st.set(t, w);
        }
        alive -= 1;
        steps.push(Elimination { relator: id, generator: x, expression });
    }
    if alive == 0 {
        Trivialization::Trivial(TrivialityCertificate { generators: g, steps })
    } else {
        Trivialization::Unknown { remaining_generators: alive, steps: steps.len() }
    }
}
