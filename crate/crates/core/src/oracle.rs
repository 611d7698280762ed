//! Brute-force maximum matching by branch and bound.
//!
//! Deliberately exponential; meant for desk-scale ground truth. Every search
//! carries a node budget and reports exhaustion instead of guessing.
//!
//! The only symmetry used is between twins: vertices of one side with
//! identical links. Swapping two free twins maps the remaining subproblem onto
//! itself, so among candidate edges through the branching vertex only one per
//! pattern of twin classes is explored. This is exact.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Matching};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub max_matching_size: usize,
    pub witness: Matching,
    pub perfect_exists: bool,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Free,
    Used,
    /// Decided to stay unmatched in this branch.
    Skipped,
}

enum Goal {
    Maximum,
    AtLeast(usize),
}

struct Search<'a> {
    h: &'a Hypergraph,
    slots: Vec<Vec<Slot>>,
    /// Edge ids through each vertex, in lexicographic edge order.
    incident: Vec<Vec<Vec<usize>>>,
    /// Twin class of every vertex, per side.
    class: Vec<Vec<usize>>,
    current: Vec<usize>,
    best: Vec<usize>,
    goal: Goal,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, goal: Goal, budget: u64) -> Self {
        let mut incident = vec![vec![Vec::new(); h.n()]; h.r()];
        for (id, e) in h.edges().iter().enumerate() {
            for (side, &v) in e.as_slice().iter().enumerate() {
                incident[side][v].push(id);
            }
        }
        let class = (0..h.r())
            .map(|side| {
                let mut ids: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
                (0..h.n())
                    .map(|v| {
                        let link: Vec<Vec<usize>> = incident[side][v]
                            .iter()
                            .map(|&id| h.edges()[id].project_without(side))
                            .collect();
                        let next = ids.len();
                        *ids.entry(link).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        Search {
            h,
            slots: vec![vec![Slot::Free; h.n()]; h.r()],
            incident,
            class,
            current: Vec::new(),
            best: Vec::new(),
            goal,
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn is_available(&self, id: usize) -> bool {
        self.h.edges()[id]
            .as_slice()
            .iter()
            .enumerate()
            .all(|(s, &v)| self.slots[s][v] == Slot::Free)
    }

    fn set_edge(&mut self, id: usize, slot: Slot) {
        let h = self.h;
        for (s, &v) in h.edges()[id].as_slice().iter().enumerate() {
            self.slots[s][v] = slot;
        }
    }

    fn target_reached(&self) -> bool {
        match self.goal {
            Goal::Maximum => self.best.len() >= self.h.n(),
            Goal::AtLeast(k) => self.best.len() >= k,
        }
    }

    /// Returns `true` to stop the whole search.
    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return true;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.target_reached() {
            return true;
        }

        let (r, n) = (self.h.r(), self.h.n());
        let mut counts = vec![vec![0usize; n]; r];
        let mut available = 0usize;
        for id in 0..self.h.edge_count() {
            if self.is_available(id) {
                available += 1;
                for (s, &v) in self.h.edges()[id].as_slice().iter().enumerate() {
                    counts[s][v] += 1;
                }
            }
        }
        if available == 0 {
            return false;
        }
        let ub = counts
            .iter()
            .map(|side| side.iter().filter(|&&c| c > 0).count())
            .min()
            .unwrap_or(0)
            .min(available);
        let threshold = match self.goal {
            Goal::Maximum => self.best.len(),
            Goal::AtLeast(k) => k - 1,
        };
        if self.current.len() + ub <= threshold {
            return false;
        }

        // Fail-first: the free vertex with the fewest available edges.
        let (side, v) = (0..r)
            .flat_map(|s| (0..n).map(move |v| (s, v)))
            .filter(|&(s, v)| counts[s][v] > 0)
            .min_by_key(|&(s, v)| (counts[s][v], s, v))
            .expect("some edge is available");

        let mut patterns = HashSet::new();
        let candidates: Vec<usize> = self.incident[side][v]
            .iter()
            .copied()
            .filter(|&id| self.is_available(id))
            .filter(|&id| {
                let e = &self.h.edges()[id];
                patterns.insert((0..r).map(|s| self.class[s][e[s]]).collect::<Vec<_>>())
            })
            .collect();
        for id in candidates {
            self.set_edge(id, Slot::Used);
            self.current.push(id);
            let stop = self.dfs();
            self.current.pop();
            self.set_edge(id, Slot::Free);
            if stop {
                return true;
            }
        }
        self.slots[side][v] = Slot::Skipped;
        let stop = self.dfs();
        self.slots[side][v] = Slot::Free;
        stop
    }

    fn matching(&self, ids: &[usize]) -> Matching {
        Matching::new(ids.iter().map(|&id| self.h.edges()[id].clone()).collect())
    }
}

/// Exact maximum matching with a witness.
pub fn max_matching(h: &Hypergraph, budget: u64) -> Result<OracleResult> {
    let mut s = Search::new(h, Goal::Maximum, budget);
    s.dfs();
    let witness = s.matching(&s.best);
    if s.exhausted {
        return Err(Error::BudgetExhausted {
            budget,
            best: witness,
        });
    }
    Ok(OracleResult {
        max_matching_size: witness.len(),
        perfect_exists: witness.len() == h.n(),
        witness,
        nodes_explored: s.nodes,
    })
}

/// Some matching with exactly `size` edges, if one exists.
pub fn find_matching_of_size(h: &Hypergraph, size: usize, budget: u64) -> Result<Option<Matching>> {
    if size == 0 {
        return Ok(Some(Matching::empty()));
    }
    let mut s = Search::new(h, Goal::AtLeast(size), budget);
    s.dfs();
    if s.best.len() >= size {
        return Ok(Some(s.matching(&s.best[..size])));
    }
    if s.exhausted {
        return Err(Error::BudgetExhausted {
            budget,
            best: s.matching(&s.best),
        });
    }
    Ok(None)
}

/// Early-exit perfect matching test. `Err(BudgetExhausted)` means unknown.
pub fn has_perfect_matching(h: &Hypergraph, budget: u64) -> Result<bool> {
    find_matching_of_size(h, h.n(), budget).map(|m| m.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{Edge, Odometer};

    fn complete(r: usize, n: usize) -> Hypergraph {
        Hypergraph::new(r, n, Odometer::new(n, r).map(Edge::from)).unwrap()
    }

    fn parity32() -> Hypergraph {
        Hypergraph::new(
            3,
            2,
            [[1, 1, 1], [0, 0, 1], [0, 1, 0], [1, 0, 0]].map(Edge::from),
        )
        .unwrap()
    }

    #[test]
    fn max_matching_examples() {
        let res = max_matching(&complete(3, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(res.max_matching_size, 3);
        assert!(res.perfect_exists);
        assert!(complete(3, 3).validate_matching(&res.witness).perfect);

        let res = max_matching(&parity32(), DEFAULT_BUDGET).unwrap();
        assert_eq!(res.max_matching_size, 1);
        assert!(!res.perfect_exists);

        let latin2 = Hypergraph::new(
            3,
            2,
            [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]].map(Edge::from),
        )
        .unwrap();
        assert_eq!(max_matching(&latin2, DEFAULT_BUDGET).unwrap().max_matching_size, 1);
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(has_perfect_matching(&complete(4, 3), DEFAULT_BUDGET).unwrap());
        // Edges meeting {0} on each side, n = 4: 3 marked vertices cannot serve 4 edges.
        let union = Hypergraph::new(
            3,
            4,
            Odometer::new(4, 3).filter(|t| t.contains(&0)).map(Edge::from),
        )
        .unwrap();
        assert!(!has_perfect_matching(&union, DEFAULT_BUDGET).unwrap());
        assert!(!has_perfect_matching(&Hypergraph::empty(3, 2).unwrap(), DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let h = complete(3, 5);
        match max_matching(&h, 2) {
            Err(Error::BudgetExhausted { budget: 2, best }) => {
                assert!(h.validate_matching(&best).valid)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fixed_size_search() {
        let h = parity32();
        assert_eq!(find_matching_of_size(&h, 1, 100).unwrap().unwrap().len(), 1);
        assert!(find_matching_of_size(&h, 2, 100).unwrap().is_none());
        assert!(find_matching_of_size(&h, 0, 100).unwrap().unwrap().is_empty());
    }
}
