//! Simple undirected graphs, the nested-triangle gadget and a random
//! maximal planar generator.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Self-loops and parallel edges are rejected at construction. The planar edge
/// bound `m <= 3n - 6` is deliberately not enforced here so that non-planar
/// inputs can still be represented and reported on by
/// [`validate_maximal_planar`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl PlanarGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("parallel edge ({u},{v})")));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(PlanarGraph {
            n,
            edges: set.into_iter().collect(),
            adjacency,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        PlanarGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Whether the vertices not in `removed` induce a connected graph.
    pub(crate) fn connected_without(&self, removed: &[usize]) -> bool {
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        let Some(start) = (0..self.n).find(|&v| !seen[v]) else {
            return true;
        };
        let mut remaining = self.n - removed.iter().collect::<BTreeSet<_>>().len();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        remaining -= 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    remaining -= 1;
                    queue.push_back(w);
                }
            }
        }
        remaining == 0
    }
}

/// The stack of `2k` triangles `C_1..C_2k`, consecutive triangles joined by an
/// antiprism band of six edges.
///
/// Vertex `(i, j)` (cycle `i` in `1..=2k`, position `j` in `0..3`) has id
/// `3(i-1) + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    graph: PlanarGraph,
    k: usize,
}

impl GadgetGraph {
    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cycle_count(&self) -> usize {
        2 * self.k
    }

    pub fn vertex_id(cycle: usize, position: usize) -> usize {
        3 * (cycle - 1) + position
    }

    /// `(cycle, position)` of a vertex id.
    pub fn label(v: usize) -> (usize, usize) {
        (v / 3 + 1, v % 3)
    }

    /// Vertex ids of cycle `i`, `1 <= i <= 2k`.
    pub fn cycle(&self, i: usize) -> [usize; 3] {
        assert!((1..=self.cycle_count()).contains(&i));
        [0, 1, 2].map(|j| Self::vertex_id(i, j))
    }

    /// Reinterpret `graph` as the gadget with parameter `k`, checking that the
    /// edge sets agree exactly.
    pub fn from_graph(graph: PlanarGraph, k: usize) -> Result<Self> {
        let expected = build_gadget(6 * k).map_err(|_| Error::NotAGadget(k))?;
        if graph != expected.graph {
            return Err(Error::NotAGadget(k));
        }
        Ok(expected)
    }
}

/// Build the gadget for `n` vertices (`n >= 12`, `n` divisible by 12).
pub fn build_gadget(n: usize) -> Result<GadgetGraph> {
    if n < 12 || !n.is_multiple_of(12) {
        return Err(Error::InvalidN(n));
    }
    let k = n / 6;
    let id = GadgetGraph::vertex_id;
    let mut edges = Vec::with_capacity(3 * n - 6);
    for i in 1..=2 * k {
        for j in 0..3 {
            edges.push((id(i, j), id(i, (j + 1) % 3)));
            if i < 2 * k {
                edges.push((id(i, j), id(i + 1, j)));
                edges.push((id(i, j), id(i + 1, (j + 1) % 3)));
            }
        }
    }
    let graph = PlanarGraph::new(n, edges)?;
    debug_assert_eq!(graph.edge_count(), 3 * n - 6);
    Ok(GadgetGraph { graph, k })
}

/// No vertex cut of size at most two. Exhaustive over all vertex pairs,
/// `O(n^2 (n + m))`.
pub fn is_three_connected(g: &PlanarGraph) -> bool {
    let n = g.n();
    if n < 4 {
        return false;
    }
    if !g.connected_without(&[]) {
        return false;
    }
    for u in 0..n {
        if !g.connected_without(&[u]) {
            return false;
        }
        for v in u + 1..n {
            if !g.connected_without(&[u, v]) {
                return false;
            }
        }
    }
    true
}

/// Maximal planar graph grown by repeatedly stellating a uniformly chosen face.
pub fn random_maximal_planar(n: usize, seed: u64) -> Result<PlanarGraph> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "random_maximal_planar needs n >= 3, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        edges.extend([(a, v), (b, v), (c, v)]);
    }
    PlanarGraph::new(n, edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub edges: usize,
    pub expected_edges: usize,
    pub edge_count_ok: bool,
    /// `None` when the edge count check already failed and no drawing was attempted.
    pub embedding_ok: Option<bool>,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Certify maximal planarity: `3n - 6` edges plus a verified crossing-free
/// grid drawing.
pub fn validate_maximal_planar(g: &PlanarGraph) -> ValidationReport {
    let n = g.n();
    let expected_edges = (3 * n).saturating_sub(6);
    let edge_count_ok = n >= 3 && g.edge_count() == expected_edges;
    let mut failures = Vec::new();
    let mut embedding_ok = None;
    if n < 4 {
        failures.push(format!("n={n} is below 4"));
    }
    if !edge_count_ok {
        failures.push(format!(
            "edge count {} != 3n-6 = {expected_edges}",
            g.edge_count()
        ));
    } else {
        let drawn = crate::embedder::grid_embed(g);
        let ok = match &drawn {
            Ok(e) => crate::embedder::verify_embedding(e),
            Err(_) => false,
        };
        if let Err(e) = drawn {
            failures.push(format!("grid drawing failed: {e}"));
        } else if !ok {
            failures.push("grid drawing is not crossing-free".to_string());
        }
        embedding_ok = Some(ok);
    }
    ValidationReport {
        n,
        edges: g.edge_count(),
        expected_edges,
        edge_count_ok,
        embedding_ok,
        failures,
    }
}
