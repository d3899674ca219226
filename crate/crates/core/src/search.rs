//! Bounded breadth-first search over move-equivalent diagrams.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::json;

use crate::gauss::{CanonicalKey, GaussDiagram};
use crate::rmoves::{apply_move, enumerate_moves, MoveBounds, MoveError, MoveInstance, MoveSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_chords: usize,
    pub max_depth: usize,
    pub max_states: usize,
}

impl SearchBudget {
    /// Two spare chords, depth 8, a million states.
    pub fn default_for(d: &GaussDiagram) -> Self {
        SearchBudget { max_chords: d.n() + 2, max_depth: 8, max_states: 1_000_000 }
    }
}

/// When the search may stop early.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Stop once a diagram without chords is reached.
    Trivial,
    /// Stop once a diagram with at most this many bridges is reached.
    MinBridges(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub min_bridge_found: usize,
    pub trivialized: bool,
    /// Moves from the start to a diagram with `min_bridge_found` bridges
    /// (to a chordless one when `trivialized`).
    pub witness: Vec<MoveInstance>,
    /// The state space within the chord cap was enumerated completely.
    pub exhausted: bool,
    pub states_visited: usize,
    pub depth_reached: usize,
}

impl SearchResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "min_bridge_found": self.min_bridge_found,
            "trivialized": self.trivialized,
            "exhausted": self.exhausted,
            "states_visited": self.states_visited,
            "depth_reached": self.depth_reached,
            "witness": self.witness.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Applies `moves` in order.
pub fn replay(d: &GaussDiagram, moves: &[MoveInstance]) -> Result<GaussDiagram, MoveError> {
    moves.iter().try_fold(d.clone(), |cur, m| apply_move(&cur, m))
}

struct Node {
    diagram: GaussDiagram,
    parent: Option<(usize, MoveInstance)>,
}

fn witness_to(nodes: &[Node], mut i: usize) -> Vec<MoveInstance> {
    let mut moves = Vec::new();
    while let Some((p, m)) = &nodes[i].parent {
        moves.push(m.clone());
        i = *p;
    }
    moves.reverse();
    moves
}

/// Full search, stopping early only on reaching the unknot diagram.
pub fn explore(d: &GaussDiagram, move_set: MoveSet, budget: SearchBudget) -> SearchResult {
    explore_towards(d, move_set, budget, SearchTarget::Trivial)
}

/// Level-synchronous BFS. Successors of a level are generated in parallel
/// and merged in a fixed order, so results do not depend on scheduling.
pub fn explore_towards(d: &GaussDiagram, move_set: MoveSet, budget: SearchBudget, target: SearchTarget) -> SearchResult {
    let bounds = MoveBounds { max_chords: budget.max_chords.max(d.n()) };
    let mut nodes = vec![Node { diagram: d.clone(), parent: None }];
    let mut seen: HashMap<CanonicalKey, usize> = HashMap::from([(d.canonical_key(), 0)]);
    let mut best = (d.bridge_count(), 0usize);
    let mut trivial = d.is_empty().then_some(0usize);
    let reached = |best: (usize, usize), trivial: Option<usize>| match target {
        SearchTarget::Trivial => trivial.is_some(),
        SearchTarget::MinBridges(floor) => best.0 <= floor || trivial.is_some(),
    };

    let mut frontier = vec![0usize];
    let mut depth = 0;
    let mut truncated = false;
    while !frontier.is_empty() && !reached(best, trivial) {
        if depth >= budget.max_depth || nodes.len() >= budget.max_states {
            truncated = true;
            break;
        }
        let expansions: Vec<Vec<(MoveInstance, GaussDiagram, CanonicalKey)>> = frontier
            .par_iter()
            .map(|&i| {
                let cur = &nodes[i].diagram;
                enumerate_moves(cur, move_set, bounds)
                    .into_iter()
                    .map(|m| {
                        let next = apply_move(cur, &m).expect("enumerated moves apply");
                        let key = next.canonical_key();
                        (m, next, key)
                    })
                    .collect()
            })
            .collect();
        depth += 1;
        let mut next_frontier = Vec::new();
        'merge: for (&parent, succ) in frontier.iter().zip(expansions) {
            for (m, diagram, key) in succ {
                if seen.contains_key(&key) {
                    continue;
                }
                if nodes.len() >= budget.max_states {
                    truncated = true;
                    break 'merge;
                }
                let idx = nodes.len();
                seen.insert(key, idx);
                if diagram.bridge_count() < best.0 {
                    best = (diagram.bridge_count(), idx);
                }
                if diagram.is_empty() && trivial.is_none() {
                    trivial = Some(idx);
                }
                nodes.push(Node { diagram, parent: Some((parent, m)) });
                next_frontier.push(idx);
            }
        }
        frontier = next_frontier;
    }
    let stopped_early = reached(best, trivial) && !frontier.is_empty();
    let exhausted = !truncated && !stopped_early && frontier.is_empty();
    let target_node = trivial.unwrap_or(best.1);
    SearchResult {
        min_bridge_found: if trivial.is_some() { 1 } else { best.0 },
        trivialized: trivial.is_some(),
        witness: witness_to(&nodes, target_node),
        exhausted,
        states_visited: nodes.len(),
        depth_reached: depth,
    }
}
