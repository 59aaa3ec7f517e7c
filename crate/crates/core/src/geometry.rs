//! Exact planar predicates over integer lattice coordinates.
//!
//! Points carry `i64` coordinates interpreted as numerators over a fixed
//! power-of-two denominator (2^40 for sampled point sets). The denominator is
//! never consulted by a predicate: every test here is a sign computation on
//! 128-bit integers and is therefore exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of fractional bits used for points in the unit square.
pub const LATTICE_BITS: u32 = 40;

/// Largest admissible coordinate magnitude. Keeps every cross product below 2^127.
pub const MAX_COORD: i64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[inline]
fn check_range(p: Point) {
    assert!(
        p.x.unsigned_abs() < MAX_COORD as u64 && p.y.unsigned_abs() < MAX_COORD as u64,
        "coordinate out of exact range: {p:?}"
    );
}

/// Exact cross product `(q - p) x (r - p)`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    check_range(p);
    check_range(q);
    check_range(r);
    let (ax, ay) = (q.x as i128 - p.x as i128, q.y as i128 - p.y as i128);
    let (bx, by) = (r.x as i128 - p.x as i128, r.y as i128 - p.y as i128);
    ax * by - ay * bx
}

pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// True iff `p` lies on the closed segment `a`-`b`.
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == Orientation::Collinear
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

/// True iff the closed segments share any point other than a common endpoint.
///
/// Two segments that meet only at a shared endpoint do not conflict; collinear
/// overlap and an endpoint touching the other segment's interior do.
pub fn segments_conflict(s1: (Point, Point), s2: (Point, Point)) -> bool {
    let (a, b) = s1;
    let (c, d) = s2;
    debug_assert!(a != b && c != d, "segment endpoints must be distinct");

    let shared = if a == c || a == d {
        Some((a, b, if a == c { d } else { c }))
    } else if b == c || b == d {
        Some((b, a, if b == c { d } else { c }))
    } else {
        None
    };
    if let Some((pivot, u, v)) = shared {
        // Identical segments, or both leaving the pivot in the same direction.
        if u == v {
            return true;
        }
        if orient(pivot, u, v) != Orientation::Collinear {
            return false;
        }
        let dot = (u.x as i128 - pivot.x as i128) * (v.x as i128 - pivot.x as i128)
            + (u.y as i128 - pivot.y as i128) * (v.y as i128 - pivot.y as i128);
        return dot > 0;
    }

    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    use Orientation::Collinear;
    if o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear {
        return o1 != o2 && o3 != o4;
    }
    (o1 == Collinear && on_segment(c, a, b))
        || (o2 == Collinear && on_segment(d, a, b))
        || (o3 == Collinear && on_segment(a, c, d))
        || (o4 == Collinear && on_segment(b, c, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangle {
    a: Point,
    b: Point,
    c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if orient(a, b, c) == Orientation::Collinear {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle { a, b, c })
    }

    pub fn corners(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    /// Twice the unsigned area.
    pub fn doubled_area(&self) -> u128 {
        cross(self.a, self.b, self.c).unsigned_abs()
    }
}

pub fn point_in_triangle(p: Point, t: &Triangle) -> Location {
    let [a, b, c] = t.corners();
    let want = orient(a, b, c);
    let sides = [orient(a, b, p), orient(b, c, p), orient(c, a, p)];
    if sides.iter().any(|&s| s == want.reversed()) {
        Location::Outside
    } else if sides.contains(&Orientation::Collinear) {
        Location::Boundary
    } else {
        Location::Inside
    }
}

/// Axis-parallel box with positive extent along both axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundingBox {
    pub xmin: i64,
    pub xmax: i64,
    pub ymin: i64,
    pub ymax: i64,
}

/// Corner of an axis-parallel box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corner {
    BottomLeft,
    TopRight,
    TopLeft,
    BottomRight,
}

impl Corner {
    /// Role order used for deterministic tie-breaking.
    pub const ALL: [Corner; 4] = [
        Corner::BottomLeft,
        Corner::TopRight,
        Corner::TopLeft,
        Corner::BottomRight,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Corner::BottomLeft => "BL",
            Corner::TopRight => "TR",
            Corner::TopLeft => "TL",
            Corner::BottomRight => "BR",
        }
    }
}

impl BoundingBox {
    pub fn new(xmin: i64, xmax: i64, ymin: i64, ymax: i64) -> Result<Self> {
        if xmin >= xmax || ymin >= ymax {
            return Err(Error::DegenerateBox);
        }
        Ok(BoundingBox {
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    pub fn corner(&self, role: Corner) -> Point {
        match role {
            Corner::BottomLeft => Point::new(self.xmin, self.ymin),
            Corner::TopRight => Point::new(self.xmax, self.ymax),
            Corner::TopLeft => Point::new(self.xmin, self.ymax),
            Corner::BottomRight => Point::new(self.xmax, self.ymin),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.xmin <= p.x && p.x <= self.xmax && self.ymin <= p.y && p.y <= self.ymax
    }
}

pub fn bounding_box(t: &Triangle) -> Result<BoundingBox> {
    let c = t.corners();
    let xmin = c.iter().map(|p| p.x).min().unwrap();
    let xmax = c.iter().map(|p| p.x).max().unwrap();
    let ymin = c.iter().map(|p| p.y).min().unwrap();
    let ymax = c.iter().map(|p| p.y).max().unwrap();
    BoundingBox::new(xmin, xmax, ymin, ymax)
}

/// True iff every corner of `inner` lies strictly inside `outer`.
pub fn triangle_strictly_inside(inner: &Triangle, outer: &Triangle) -> bool {
    inner
        .corners()
        .iter()
        .all(|&p| point_in_triangle(p, outer) == Location::Inside)
}

/// Non-strict componentwise containment.
pub fn box_nested(inner: &BoundingBox, outer: &BoundingBox) -> bool {
    outer.xmin <= inner.xmin
        && inner.xmax <= outer.xmax
        && outer.ymin <= inner.ymin
        && inner.ymax <= outer.ymax
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Triangle {
        Triangle::new(a.into(), b.into(), c.into()).unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orient(p(0, 0), p(1, 0), p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orient(p(0, 0), p(1, 1), p(2, 2)), Orientation::Collinear);
        assert_eq!(orient(p(0, 0), p(0, 1), p(1, 0)), Orientation::Clockwise);
    }

    #[test]
    fn orientation_at_range_limit() {
        let big = MAX_COORD - 1;
        assert_eq!(
            orient(p(-big, -big), p(big, -big), p(-big, big)),
            Orientation::CounterClockwise
        );
        assert_eq!(
            orient(p(-big, -big), p(0, 0), p(big, big)),
            Orientation::Collinear
        );
    }

    #[test]
    #[should_panic(expected = "out of exact range")]
    fn orientation_rejects_out_of_range() {
        orient(p(0, 0), p(MAX_COORD, 0), p(0, 1));
    }

    #[test]
    fn segment_conflict_examples() {
        assert!(segments_conflict((p(0, 0), p(2, 2)), (p(0, 2), p(2, 0))));
        assert!(!segments_conflict((p(0, 0), p(1, 0)), (p(1, 0), p(2, 1))));
        assert!(segments_conflict((p(0, 0), p(2, 0)), (p(1, 0), p(3, 0))));
    }

    #[test]
    fn segment_conflict_edge_cases() {
        // T-junction: endpoint in the other's interior.
        assert!(segments_conflict((p(0, 0), p(4, 0)), (p(2, 0), p(2, 3))));
        // Shared endpoint, collinear, opposite directions.
        assert!(!segments_conflict((p(0, 0), p(2, 0)), (p(2, 0), p(5, 0))));
        // Shared endpoint, collinear, same direction (one contains the other).
        assert!(segments_conflict((p(0, 0), p(4, 0)), (p(0, 0), p(2, 0))));
        // Identical segments, either orientation.
        assert!(segments_conflict((p(0, 0), p(4, 1)), (p(4, 1), p(0, 0))));
        // Collinear but disjoint.
        assert!(!segments_conflict((p(0, 0), p(1, 1)), (p(2, 2), p(3, 3))));
        // Parallel, disjoint.
        assert!(!segments_conflict((p(0, 0), p(4, 0)), (p(0, 1), p(4, 1))));
        // Lines cross outside the segments.
        assert!(!segments_conflict((p(0, 0), p(1, 1)), (p(3, 0), p(2, 1))));
    }

    #[test]
    fn point_in_triangle_examples() {
        let t = tri((0, 0), (4, 0), (0, 4));
        assert_eq!(point_in_triangle(p(1, 1), &t), Location::Inside);
        assert_eq!(point_in_triangle(p(2, 0), &t), Location::Boundary);
        assert_eq!(point_in_triangle(p(5, 5), &t), Location::Outside);
        // Corners count as boundary; clockwise triangles behave the same.
        assert_eq!(point_in_triangle(p(4, 0), &t), Location::Boundary);
        let cw = tri((0, 0), (0, 4), (4, 0));
        assert_eq!(point_in_triangle(p(1, 1), &cw), Location::Inside);
        assert_eq!(point_in_triangle(p(-1, 1), &cw), Location::Outside);
    }

    #[test]
    fn degenerate_triangle_rejected() {
        assert_eq!(
            Triangle::new(p(0, 0), p(1, 1), p(2, 2)),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn bounding_box_examples() {
        let b = |a, b, c| bounding_box(&tri(a, b, c)).unwrap();
        assert_eq!(b((0, 0), (4, 1), (2, 5)), BoundingBox::new(0, 4, 0, 5).unwrap());
        assert_eq!(b((1, 1), (3, 2), (2, 4)), BoundingBox::new(1, 3, 1, 4).unwrap());
        assert_eq!(b((0, 0), (1, 0), (0, 1)), BoundingBox::new(0, 1, 0, 1).unwrap());
        assert_eq!(BoundingBox::new(1, 1, 0, 3), Err(Error::DegenerateBox));
    }

    #[test]
    fn containment_examples() {
        let big = tri((0, 0), (8, 0), (0, 8));
        let small = tri((1, 1), (2, 1), (1, 2));
        assert!(triangle_strictly_inside(&small, &big));
        assert!(!triangle_strictly_inside(&big, &big));
        let far = tri((20, 20), (21, 20), (20, 21));
        assert!(!triangle_strictly_inside(&far, &big));

        let bx = |a, b, c, d| BoundingBox::new(a, b, c, d).unwrap();
        assert!(box_nested(&bx(1, 3, 1, 3), &bx(0, 4, 0, 4)));
        assert!(box_nested(&bx(0, 4, 0, 4), &bx(0, 4, 0, 4)));
        assert!(!box_nested(&bx(0, 5, 1, 3), &bx(0, 4, 0, 4)));
    }

    fn coord() -> impl Strategy<Value = i64> {
        prop_oneof![-20i64..20, -(1i64 << 61)..(1i64 << 61)]
    }

    fn point() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20_000))]

        #[test]
        fn orient_antisymmetric(a in point(), b in point(), c in point()) {
            let o = orient(a, b, c);
            prop_assert_eq!(orient(b, a, c), o.reversed());
            prop_assert_eq!(orient(a, c, b), o.reversed());
            prop_assert_eq!(orient(c, b, a), o.reversed());
            prop_assert_eq!(orient(b, c, a), o);
        }

        #[test]
        fn segments_conflict_symmetric(a in point(), b in point(), c in point(), d in point()) {
            prop_assume!(a != b && c != d);
            let s = segments_conflict((a, b), (c, d));
            prop_assert_eq!(s, segments_conflict((c, d), (a, b)));
            prop_assert_eq!(s, segments_conflict((b, a), (d, c)));
        }

        #[test]
        fn bounding_box_is_minimal(a in point(), b in point(), c in point()) {
            let Ok(t) = Triangle::new(a, b, c) else { return Ok(()) };
            let bb = bounding_box(&t).unwrap();
            for q in t.corners() {
                prop_assert!(bb.contains(q));
            }
            let shrunk = [
                BoundingBox { xmin: bb.xmin + 1, ..bb },
                BoundingBox { xmax: bb.xmax - 1, ..bb },
                BoundingBox { ymin: bb.ymin + 1, ..bb },
                BoundingBox { ymax: bb.ymax - 1, ..bb },
            ];
            for s in shrunk {
                prop_assert!(t.corners().iter().any(|&q| !s.contains(q)));
            }
        }
    }

    #[test]
    fn orient_antisymmetry_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100_000 {
            let mut q = || Point::new(rng.gen_range(-8..8), rng.gen_range(-8..8));
            let (a, b, c) = (q(), q(), q());
            assert_eq!(orient(b, a, c), orient(a, b, c).reversed());
        }
    }

    #[test]
    fn nested_triangles_have_smaller_area_and_nested_boxes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 10_000 {
            let mut q = |r: i64| Point::new(rng.gen_range(0..r), rng.gen_range(0..r));
            let Ok(outer) = Triangle::new(q(1 << 20), q(1 << 20), q(1 << 20)) else {
                continue;
            };
            let ob = bounding_box(&outer).unwrap();
            let mut inside = Vec::new();
            while inside.len() < 3 {
                let c = Point::new(rng.gen_range(ob.xmin..=ob.xmax), rng.gen_range(ob.ymin..=ob.ymax));
                if point_in_triangle(c, &outer) == Location::Inside {
                    inside.push(c);
                }
            }
            let Ok(inner) = Triangle::new(inside[0], inside[1], inside[2]) else {
                continue;
            };
            assert!(triangle_strictly_inside(&inner, &outer));
            assert!(inner.doubled_area() < outer.doubled_area());
            let ib = bounding_box(&inner).unwrap();
            assert!(box_nested(&ib, &ob));
            assert!(ob.xmin < ib.xmin && ib.xmax < ob.xmax);
            assert!(ob.ymin < ib.ymin && ib.ymax < ob.ymax);
            checked += 1;
        }
    }
}
