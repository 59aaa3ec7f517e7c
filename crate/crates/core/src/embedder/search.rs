use std::collections::BTreeSet;

use crate::geometry::{on_segment, segments_conflict, Point};
use crate::graphs::PlanarGraph;

use super::StraightLineEmbedding;

/// Node-expansion budget used when the caller does not pick one.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(StraightLineEmbedding),
    /// The search space was exhausted.
    NoEmbedding,
    /// The budget ran out first; nothing is known.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Candidate (vertex, point) pairs tried.
    pub nodes_expanded: u64,
}

/// Decide embeddability, collapsing "unknown" into an error.
pub fn embeddable(
    g: &PlanarGraph,
    points: &[Point],
    budget: u64,
) -> Result<Option<StraightLineEmbedding>, crate::Error> {
    match search_embedding(g, points, budget).outcome {
        SearchOutcome::Found(e) => Ok(Some(e)),
        SearchOutcome::NoEmbedding => Ok(None),
        SearchOutcome::BudgetExceeded => Err(crate::Error::SearchBudgetExceeded(budget)),
    }
}

/// Exhaustive backtracking over injective vertex-to-point assignments.
///
/// Vertices are chosen most-constrained first (most placed neighbors, then
/// highest degree, then lowest id). Every candidate is checked incrementally
/// against the partial drawing, so a branch is cut as soon as it contains a
/// conflict. Duplicate points are collapsed before the search.
pub fn search_embedding(g: &PlanarGraph, points: &[Point], budget: u64) -> SearchResult {
    let candidates: Vec<Point> = points
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if candidates.len() < g.n() {
        return SearchResult {
            outcome: SearchOutcome::NoEmbedding,
            nodes_expanded: 0,
        };
    }
    let mut s = Search {
        g,
        candidates: &candidates,
        budget,
        nodes: 0,
        assigned: vec![None; g.n()],
        used: vec![false; candidates.len()],
        placed: Vec::with_capacity(g.n()),
        placed_edges: Vec::with_capacity(g.edge_count()),
    };
    let outcome = match s.run() {
        Err(Exhausted) => SearchOutcome::BudgetExceeded,
        Ok(false) => SearchOutcome::NoEmbedding,
        Ok(true) => {
            let placement = s
                .assigned
                .iter()
                .map(|p| p.expect("complete assignment"))
                .collect();
            SearchOutcome::Found(StraightLineEmbedding::new(g.clone(), placement))
        }
    };
    SearchResult {
        outcome,
        nodes_expanded: s.nodes,
    }
}

struct Exhausted;

struct Search<'a> {
    g: &'a PlanarGraph,
    candidates: &'a [Point],
    budget: u64,
    nodes: u64,
    assigned: Vec<Option<Point>>,
    used: Vec<bool>,
    placed: Vec<usize>,
    placed_edges: Vec<(Point, Point)>,
}

impl Search<'_> {
    fn run(&mut self) -> Result<bool, Exhausted> {
        let Some(v) = self.next_vertex() else {
            return Ok(true);
        };
        for c in 0..self.candidates.len() {
            if self.used[c] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Exhausted);
            }
            let p = self.candidates[c];
            let Some(new_edges) = self.admissible(v, p) else {
                continue;
            };

            let edge_mark = self.placed_edges.len();
            self.placed_edges.extend(new_edges);
            self.assigned[v] = Some(p);
            self.used[c] = true;
            self.placed.push(v);
            if self.run()? {
                return Ok(true);
            }
            self.placed.pop();
            self.used[c] = false;
            self.assigned[v] = None;
            self.placed_edges.truncate(edge_mark);
        }
        Ok(false)
    }

    fn next_vertex(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.assigned[v].is_none())
            .max_by_key(|&v| {
                let placed = self
                    .g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| self.assigned[w].is_some())
                    .count();
                (placed, self.g.degree(v), std::cmp::Reverse(v))
            })
    }

    /// Segments added by putting `v` on `p`, or `None` if that creates a conflict.
    fn admissible(&self, v: usize, p: Point) -> Option<Vec<(Point, Point)>> {
        if self.placed_edges.iter().any(|&(a, b)| on_segment(p, a, b)) {
            return None;
        }
        let mut fresh: Vec<(Point, Point)> = Vec::new();
        for &u in self.g.neighbors(v) {
            let Some(q) = self.assigned[u] else { continue };
            let seg = (p, q);
            let through_vertex = self
                .placed
                .iter()
                .any(|&w| w != u && on_segment(self.assigned[w].unwrap(), p, q));
            if through_vertex
                || self.placed_edges.iter().any(|&e| segments_conflict(seg, e))
                || fresh.iter().any(|&e| segments_conflict(seg, e))
            {
                return None;
            }
            fresh.push(seg);
        }
        Some(fresh)
    }
}
