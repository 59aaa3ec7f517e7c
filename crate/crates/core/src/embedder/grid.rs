//! Shift-method drawing of maximal planar graphs on the `(2n-4) x (n-2)` grid.
//!
//! The combinatorial embedding is recovered from the graph alone: in a
//! triangulation with `n >= 4` the faces are exactly the triangles whose
//! removal leaves the rest connected. From the faces we build a rotation
//! system, peel a canonical ordering off the outer face, and then insert
//! vertices left to right, shifting the contour to make room.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graphs::PlanarGraph;

use super::StraightLineEmbedding;

/// Canonical ordering `v1, v2, ..., vn` of a triangulation with outer face
/// `(v1, v2, vn)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalOrder {
    pub order: Vec<usize>,
    /// For `order[k]` with `k >= 3`: its neighbors on the contour of the
    /// graph induced by `order[..k]`, left to right.
    pub attachments: Vec<Vec<usize>>,
}

/// Draw a maximal planar graph with the lexicographically smallest face as
/// the outer face.
pub fn grid_embed(g: &PlanarGraph) -> Result<StraightLineEmbedding> {
    grid_embed_with_outer_face(g, None)
}

/// Draw a maximal planar graph; `outer` picks the outer face (must be a face).
pub fn grid_embed_with_outer_face(
    g: &PlanarGraph,
    outer: Option<[usize; 3]>,
) -> Result<StraightLineEmbedding> {
    let n = g.n();
    if n < 3 || g.edge_count() != 3 * n - 6 {
        return Err(Error::NotMaximalPlanar(format!(
            "n={n} with {} edges (need n >= 3 and 3n-6 edges)",
            g.edge_count()
        )));
    }
    if n == 3 {
        let placement = vec![Point::new(0, 0), Point::new(2, 0), Point::new(1, 1)];
        return Ok(StraightLineEmbedding::new(g.clone(), placement));
    }
    let faces = facial_triangles(g)?;
    let rotation = rotation_system(g, &faces)?;
    let outer = match outer {
        Some(mut f) => {
            f.sort_unstable();
            if faces.binary_search(&f).is_err() {
                return Err(Error::Precondition(format!("{f:?} is not a face")));
            }
            f
        }
        None => faces[0],
    };
    let canonical = canonical_order(g, &rotation, outer)?;
    let placement = shift(n, &canonical)?;
    Ok(StraightLineEmbedding::new(g.clone(), placement))
}

/// Sorted vertex triples of the facial triangles.
fn facial_triangles(g: &PlanarGraph) -> Result<Vec<[usize; 3]>> {
    let n = g.n();
    let mut faces = Vec::with_capacity(2 * n - 4);
    for &(u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) && g.connected_without(&[u, v, w]) {
                faces.push([u, v, w]);
            }
        }
    }
    if faces.len() != 2 * n - 4 {
        return Err(Error::NotMaximalPlanar(format!(
            "found {} facial triangles, expected {}",
            faces.len(),
            2 * n - 4
        )));
    }
    Ok(faces)
}

/// Cyclic neighbor order around each vertex, derived from the faces.
fn rotation_system(g: &PlanarGraph, faces: &[[usize; 3]]) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    // link[v] pairs the two other corners of each face at v.
    let mut link: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &[a, b, c] in faces {
        link[a].push((b, c));
        link[b].push((a, c));
        link[c].push((a, b));
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, around) in link.iter().enumerate() {
        let deg = g.degree(v);
        let bad = || Error::NotMaximalPlanar(format!("faces around vertex {v} do not form a disk"));
        if around.len() != deg {
            return Err(bad());
        }
        let partners = |x: usize| -> Vec<usize> {
            around
                .iter()
                .filter_map(|&(a, b)| {
                    if a == x {
                        Some(b)
                    } else if b == x {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let start = g.neighbors(v)[0];
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = match partners(start).as_slice() {
            [p, _] => *p,
            _ => return Err(bad()),
        };
        while cur != start {
            if cycle.len() > deg {
                return Err(bad());
            }
            cycle.push(cur);
            let next = match partners(cur).as_slice() {
                [a, b] if *a == prev => *b,
                [a, b] if *b == prev => *a,
                _ => return Err(bad()),
            };
            prev = cur;
            cur = next;
        }
        if cycle.len() != deg {
            return Err(bad());
        }
        rotation.push(cycle);
    }
    Ok(rotation)
}

fn canonical_order(g: &PlanarGraph, rotation: &[Vec<usize>], outer: [usize; 3]) -> Result<CanonicalOrder> {
    let n = g.n();
    let [v1, v2, vn] = outer;
    let mut removed = vec![false; n];
    let mut on_contour = vec![false; n];
    for v in outer {
        on_contour[v] = true;
    }
    // Contour of the current graph, from v1 to v2 (the edge v1-v2 closes it).
    let mut contour = vec![v1, vn, v2];
    let mut peeled = Vec::with_capacity(n);
    let mut attachments_rev = Vec::with_capacity(n);

    let mut remaining = n;
    while remaining > 3 {
        let mut index = vec![usize::MAX; n];
        for (i, &c) in contour.iter().enumerate() {
            index[c] = i;
        }
        let last = contour.len() - 1;
        let chord_free = |i: usize| {
            let v = contour[i];
            g.neighbors(v).iter().all(|&w| {
                removed[w] || !on_contour[w] || {
                    let j = index[w];
                    j + 1 == i || i + 1 == j || (j == 0 && i == last) || (i == 0 && j == last)
                }
            })
        };
        let Some(i) = (1..last).find(|&i| chord_free(i)) else {
            return Err(Error::NotMaximalPlanar("no chord-free contour vertex".into()));
        };
        let v = contour[i];
        let (left, right) = (contour[i - 1], contour[i + 1]);

        let live: Vec<usize> = rotation[v].iter().copied().filter(|&w| !removed[w]).collect();
        let len = live.len();
        let pos = live
            .iter()
            .position(|&w| w == left)
            .ok_or_else(|| Error::NotMaximalPlanar(format!("contour neighbor {left} missing around {v}")))?;
        let step = if len == 2 || live[(pos + len - 1) % len] == right {
            1
        } else if live[(pos + 1) % len] == right {
            len - 1
        } else {
            return Err(Error::NotMaximalPlanar(format!(
                "outer angle at {v} is not contiguous"
            )));
        };
        let mut attach = vec![left];
        let mut j = (pos + step) % len;
        while live[j] != right {
            let w = live[j];
            if on_contour[w] {
                return Err(Error::NotMaximalPlanar(format!("chord at {w}")));
            }
            attach.push(w);
            j = (j + step) % len;
        }
        attach.push(right);

        for &w in &attach[1..attach.len() - 1] {
            on_contour[w] = true;
        }
        contour.splice(i..=i, attach[1..attach.len() - 1].iter().copied());
        removed[v] = true;
        on_contour[v] = false;
        remaining -= 1;
        peeled.push(v);
        attachments_rev.push(attach);
    }
    if contour.len() != 3 || contour[0] != v1 || contour[2] != v2 {
        return Err(Error::NotMaximalPlanar(
            "peeling did not end at a triangle".into(),
        ));
    }
    let v3 = contour[1];
    let mut order = vec![v1, v2, v3];
    let mut attachments = vec![Vec::new(), Vec::new(), Vec::new()];
    order.extend(peeled.iter().rev());
    attachments.extend(attachments_rev.into_iter().rev());
    Ok(CanonicalOrder { order, attachments })
}

fn shift(n: usize, canonical: &CanonicalOrder) -> Result<Vec<Point>> {
    let order = &canonical.order;
    let mut x = vec![0i64; n];
    let mut y = vec![0i64; n];
    let (v1, v2, v3) = (order[0], order[1], order[2]);
    x[v2] = 2;
    x[v3] = 1;
    y[v3] = 1;
    // Vertices that move with each contour vertex.
    let mut under: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut contour = vec![v1, v3, v2];

    for (k, &v) in order.iter().enumerate().skip(3) {
        let attach = &canonical.attachments[k];
        let (wp, wq) = (attach[0], attach[attach.len() - 1]);
        let p = contour.iter().position(|&c| c == wp);
        let q = contour.iter().position(|&c| c == wq);
        let (p, q) = match (p, q) {
            (Some(p), Some(q)) if q > p && contour[p..=q] == attach[..] => (p, q),
            _ => {
                return Err(Error::NotMaximalPlanar(format!(
                    "attachment of {v} is not a contour interval"
                )))
            }
        };
        for &c in &contour[p + 1..q] {
            for &u in &under[c] {
                x[u] += 1;
            }
        }
        for &c in &contour[q..] {
            for &u in &under[c] {
                x[u] += 2;
            }
        }
        let (dx, dy) = (x[wq] - x[wp], y[wq] - y[wp]);
        debug_assert_eq!((dx + dy) % 2, 0);
        x[v] = (x[wp] + x[wq] + dy) / 2;
        y[v] = (y[wp] + y[wq] + dx) / 2;

        let mut moved = vec![v];
        for &c in &contour[p + 1..q] {
            moved.append(&mut under[c]);
        }
        under[v] = moved;
        contour.splice(p + 1..q, [v]);
    }
    Ok((0..n).map(|v| Point::new(x[v], y[v])).collect())
}
