//! Straight-line embeddings: verification, exhaustive search onto a point
//! set, and shift-method grid drawings of maximal planar graphs.

mod grid;
mod search;

use std::collections::HashSet;

use crate::geometry::{on_segment, segments_conflict, Point};
use crate::graphs::PlanarGraph;

pub use grid::{grid_embed, grid_embed_with_outer_face, CanonicalOrder};
pub use search::{embeddable, search_embedding, SearchOutcome, SearchResult, DEFAULT_BUDGET};

/// A placement of every vertex of `graph` on a lattice point.
///
/// Construction does not check planarity; use [`verify_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightLineEmbedding {
    graph: PlanarGraph,
    placement: Vec<Point>,
}

impl StraightLineEmbedding {
    /// Panics if `placement` does not have one point per vertex.
    pub fn new(graph: PlanarGraph, placement: Vec<Point>) -> Self {
        assert_eq!(graph.n(), placement.len(), "placement must cover every vertex");
        StraightLineEmbedding { graph, placement }
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn placement(&self) -> &[Point] {
        &self.placement
    }

    pub fn point(&self, v: usize) -> Point {
        self.placement[v]
    }

    fn segment(&self, (u, v): (usize, usize)) -> (Point, Point) {
        (self.placement[u], self.placement[v])
    }
}

/// True iff the placement is injective, no vertex lies on a non-incident
/// edge, and no two edges conflict.
pub fn verify_embedding(e: &StraightLineEmbedding) -> bool {
    let mut seen = HashSet::with_capacity(e.placement.len());
    if !e.placement.iter().all(|p| seen.insert(*p)) {
        return false;
    }
    let edges = e.graph.edges();
    for &(a, b) in edges {
        let (pa, pb) = e.segment((a, b));
        let blocked = e
            .placement
            .iter()
            .enumerate()
            .any(|(w, &pw)| w != a && w != b && on_segment(pw, pa, pb));
        if blocked {
            return false;
        }
    }
    for (i, &e1) in edges.iter().enumerate() {
        let s1 = e.segment(e1);
        for &e2 in &edges[i + 1..] {
            if segments_conflict(s1, e.segment(e2)) {
                return false;
            }
        }
    }
    true
}
