//! Monotone witnesses extracted from drawings of the gadget graph, and the
//! contrapositive non-universality certificate.
//!
//! Any straight-line drawing of the gadget puts at least half of its cycle
//! triangles into a nested chain. Every triangle shares a corner with its
//! bounding box; bottom-left/top-right shared corners of nested boxes form an
//! increasing chain and top-left/bottom-right ones a decreasing chain, so the
//! larger of the two is a monotone subset of size at least `n/12`.

use serde::Serialize;

use crate::embedder::{verify_embedding, StraightLineEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{bounding_box, triangle_strictly_inside, Corner, Point, Triangle};
use crate::graphs::GadgetGraph;
use crate::permutations::{lds, lis, perm_of};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Triangle of gadget cycle `cycle` (1-based) in a drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleTriangle {
    pub cycle: usize,
    pub vertices: [usize; 3],
    pub triangle: Triangle,
}

/// Where a witness point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub cycle: usize,
    pub vertex: usize,
    pub corner: Corner,
}

/// A shared box/triangle corner tagged with its origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaggedCorner {
    pub point: Point,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneWitness {
    pub direction: Direction,
    /// Sorted by strictly increasing x.
    pub points: Vec<Point>,
    pub provenance: Vec<Provenance>,
}

impl MonotoneWitness {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Triangles of the longest run of consecutively nested gadget cycles,
/// outermost first.
pub fn extract_nested_triangles(
    gadget: &GadgetGraph,
    e: &StraightLineEmbedding,
) -> Result<Vec<CycleTriangle>> {
    if e.graph() != gadget.graph() {
        return Err(Error::NotAGadget(gadget.k()));
    }
    if !verify_embedding(e) {
        return Err(Error::NotAnEmbedding);
    }
    let triangles = (1..=gadget.cycle_count())
        .map(|i| {
            let vertices = gadget.cycle(i);
            let [a, b, c] = vertices.map(|v| e.point(v));
            Ok(CycleTriangle {
                cycle: i,
                vertices,
                triangle: Triangle::new(a, b, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    // Maximal runs where cycle i+1 sits inside cycle i (inward) or the reverse.
    let (mut best_start, mut best_len, mut best_inward) = (0, 1, true);
    for inward in [true, false] {
        let mut start = 0;
        for i in 0..triangles.len() {
            let continues = i + 1 < triangles.len() && {
                let (a, b) = (&triangles[i].triangle, &triangles[i + 1].triangle);
                if inward {
                    triangle_strictly_inside(b, a)
                } else {
                    triangle_strictly_inside(a, b)
                }
            };
            if !continues {
                let len = i + 1 - start;
                if len > best_len {
                    (best_start, best_len, best_inward) = (start, len, inward);
                }
                start = i + 1;
            }
        }
    }
    if best_len < gadget.k() {
        return Err(Error::NestingNotFound {
            needed: gadget.k(),
            found: best_len,
        });
    }
    let mut run = triangles[best_start..best_start + best_len].to_vec();
    if !best_inward {
        run.reverse();
    }
    Ok(run)
}

/// A corner of the bounding box that is also a corner of the triangle.
/// Ties follow the role order BL, TR, TL, BR.
pub fn shared_corner(t: &Triangle) -> (Point, Corner) {
    let bb = bounding_box(t).expect("non-degenerate triangle has a proper bounding box");
    let corners = t.corners();
    Corner::ALL
        .into_iter()
        .map(|role| (bb.corner(role), role))
        .find(|(p, _)| corners.contains(p))
        .expect("some box corner touches two box sides, hence is a triangle corner")
}

/// Split corners of nested boxes into the BL/TR class (increasing) and the
/// TL/BR class (decreasing), each sorted by x and checked strictly monotone.
pub fn classify_corners(corners: &[TaggedCorner]) -> Result<(Vec<TaggedCorner>, Vec<TaggedCorner>)> {
    let (mut s1, mut s2): (Vec<TaggedCorner>, Vec<TaggedCorner>) = corners
        .iter()
        .partition(|c| matches!(c.provenance.corner, Corner::BottomLeft | Corner::TopRight));
    s1.sort_by_key(|c| c.point.x);
    s2.sort_by_key(|c| c.point.x);
    check_monotone(&s1, Direction::Increasing)?;
    check_monotone(&s2, Direction::Decreasing)?;
    Ok((s1, s2))
}

fn check_monotone(chain: &[TaggedCorner], direction: Direction) -> Result<()> {
    for w in chain.windows(2) {
        let (a, b) = (w[0].point, w[1].point);
        let ok = a.x < b.x
            && match direction {
                Direction::Increasing => a.y < b.y,
                Direction::Decreasing => a.y > b.y,
            };
        if !ok {
            return Err(Error::MonotoneViolation(format!(
                "{a:?} then {b:?} in a {direction:?} chain"
            )));
        }
    }
    Ok(())
}

/// Monotone subset of the drawing's points of size at least `n/12`.
pub fn monotone_witness(gadget: &GadgetGraph, e: &StraightLineEmbedding) -> Result<MonotoneWitness> {
    let nested = extract_nested_triangles(gadget, e)?;
    let corners: Vec<TaggedCorner> = nested
        .iter()
        .map(|ct| {
            let (point, corner) = shared_corner(&ct.triangle);
            let vertex = *ct
                .vertices
                .iter()
                .find(|&&v| e.point(v) == point)
                .expect("shared corner is a triangle corner");
            TaggedCorner {
                point,
                provenance: Provenance {
                    cycle: ct.cycle,
                    vertex,
                    corner,
                },
            }
        })
        .collect();
    let (s1, s2) = classify_corners(&corners)?;
    let (chosen, direction) = if s1.len() >= s2.len() {
        (s1, Direction::Increasing)
    } else {
        (s2, Direction::Decreasing)
    };
    let needed = gadget.graph().n() / 12;
    if chosen.len() < needed {
        return Err(Error::MonotoneViolation(format!(
            "witness has {} points, expected at least {needed}",
            chosen.len()
        )));
    }
    Ok(MonotoneWitness {
        direction,
        points: chosen.iter().map(|c| c.point).collect(),
        provenance: chosen.iter().map(|c| c.provenance).collect(),
    })
}

/// Proof that a point set is not n-universal: its longest monotone
/// subsequence is shorter than `ell = floor(n/12)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonUniversalityCertificate {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub lis: usize,
    pub lds: usize,
}

/// Longest increasing and decreasing subsequence lengths of `perm(U)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonotoneProfile {
    pub lis: usize,
    pub lds: usize,
}

pub fn monotone_profile(points: &[Point]) -> Result<MonotoneProfile> {
    let p = perm_of(points)?;
    Ok(MonotoneProfile {
        lis: lis(&p),
        lds: lds(&p),
    })
}

/// `Some` certificate when `max(lis, lds) < floor(n/12)`; `None` is
/// inconclusive and never a claim of universality.
pub fn certify_nonuniversal(points: &[Point], n: usize) -> Result<Option<NonUniversalityCertificate>> {
    if n < 12 {
        return Err(Error::Precondition(format!(
            "certification needs n >= 12, got {n}"
        )));
    }
    let ell = n / 12;
    let MonotoneProfile { lis, lds } = monotone_profile(points)?;
    Ok((lis.max(lds) < ell).then_some(NonUniversalityCertificate {
        n,
        m: points.len(),
        ell,
        lis,
        lds,
    }))
}
