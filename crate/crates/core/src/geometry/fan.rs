//! Normal fans on the character circle.

use std::fmt;

use super::{Direction, MarkedPolytope};

/// An open arc of the circle, running counterclockwise from `from` to `to`,
/// of angular span at most pi. Span exactly pi means `to == -from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    from: Direction,
    to: Direction,
}

impl Arc {
    /// `None` when the counterclockwise span from `from` to `to` is zero or
    /// exceeds pi.
    pub fn new(from: Direction, to: Direction) -> Option<Self> {
        let c = from.cross(to);
        (c > 0 || (c == 0 && to == -from)).then_some(Arc { from, to })
    }

    pub fn from(&self) -> Direction {
        self.from
    }

    pub fn to(&self) -> Direction {
        self.to
    }

    pub fn contains(&self, d: Direction) -> bool {
        if self.from.cross(self.to) > 0 {
            self.from.cross(d) > 0 && d.cross(self.to) > 0
        } else {
            self.from.cross(d) > 0
        }
    }

    /// The antipodal arc `-A`.
    pub fn negate(&self) -> Arc {
        Arc { from: -self.from, to: -self.to }
    }

    /// Intersection of two open arcs; it is again a single arc or empty
    /// because both arcs are convex cones.
    pub fn intersect(&self, other: &Arc) -> Option<Arc> {
        let start = if other.from == self.from || self.contains(other.from) {
            other.from
        } else if other.contains(self.from) {
            self.from
        } else {
            return None;
        };
        let end = if other.to == self.to || self.contains(other.to) {
            other.to
        } else if other.contains(self.to) {
            self.to
        } else {
            return None;
        };
        let arc = Arc::new(start, end)?;
        let witness = arc.simplest_interior();
        (self.contains(witness) && other.contains(witness)).then_some(arc)
    }

    /// A primitive direction strictly inside the arc with the smallest
    /// coordinates: an axis if one is inside, otherwise the Stern–Brocot
    /// search within the quadrant holding the arc.
    pub fn simplest_interior(&self) -> Direction {
        let mut axis = Direction::E1;
        for _ in 0..4 {
            if self.contains(axis) {
                return axis;
            }
            axis = axis.rotate_ccw();
        }
        // No axis inside, so the arc lies in a closed quadrant. Rotate that
        // quadrant onto the first one, search, and rotate back.
        let mut turns = 0;
        let mut arc = *self;
        while !(arc.from.a() >= 0 && arc.from.b() >= 0 && arc.to.a() >= 0 && arc.to.b() >= 0) {
            arc = Arc { from: arc.from.rotate_ccw(), to: arc.to.rotate_ccw() };
            turns += 1;
            debug_assert!(turns < 4);
        }
        let (mut left, mut right) = ((1i64, 0i64), (0i64, 1i64));
        let found = loop {
            let (a, b) = (left.0 + right.0, left.1 + right.1);
            let m = Direction::new(a, b).expect("Stern–Brocot mediants are primitive");
            if arc.from.cross(m) <= 0 {
                left = (a, b);
            } else if m.cross(arc.to) <= 0 {
                right = (a, b);
            } else {
                break m;
            }
        };
        (0..(4 - turns) % 4).fold(found, |d, _| d.rotate_ccw())
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})->({})", self.from, self.to)
    }
}

/// The open normal cone of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cone {
    /// The polytope is a single point.
    Full,
    Arc(Arc),
}

impl Cone {
    pub fn contains(&self, d: Direction) -> bool {
        match self {
            Cone::Full => true,
            Cone::Arc(a) => a.contains(d),
        }
    }
}

/// A finite union of open arcs, or the whole circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcSet {
    FullCircle,
    Arcs(Vec<Arc>),
}

impl ArcSet {
    pub fn contains(&self, d: Direction) -> bool {
        match self {
            ArcSet::FullCircle => true,
            ArcSet::Arcs(arcs) => arcs.iter().any(|a| a.contains(d)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ArcSet::Arcs(a) if a.is_empty())
    }

    pub fn arcs(&self) -> &[Arc] {
        match self {
            ArcSet::FullCircle => &[],
            ArcSet::Arcs(a) => a,
        }
    }
}

impl MarkedPolytope {
    /// Open normal cone of each vertex: the characters attaining their strict
    /// maximum there. Aligned with [`MarkedPolytope::vertices`].
    pub fn vertex_cones(&self) -> Vec<Cone> {
        let n = self.len();
        if n == 1 {
            return vec![Cone::Full];
        }
        let normals = self.edge_normals();
        (0..n)
            .map(|i| {
                let arc = Arc::new(normals[(i + n - 1) % n], normals[i])
                    .expect("consecutive outward normals of a convex polygon");
                Cone::Arc(arc)
            })
            .collect()
    }

    /// The union of the normal cones of the marked vertices, sorted by the
    /// angle of their starting normal.
    pub fn marked_normal_arcs(&self) -> ArcSet {
        let cones = self.vertex_cones();
        let mut arcs = Vec::new();
        for (v, cone) in self.vertices().iter().zip(cones) {
            match (v.marked, cone) {
                (true, Cone::Full) => return ArcSet::FullCircle,
                (true, Cone::Arc(a)) => arcs.push(a),
                (false, _) => {}
            }
        }
        arcs.sort_by(|a, b| a.from.angle_cmp(b.from));
        ArcSet::Arcs(arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polytope::tests::brown_triangle;
    use crate::geometry::Point;

    fn d(a: i64, b: i64) -> Direction {
        Direction::new(a, b).unwrap()
    }

    fn all_directions(radius: i64) -> Vec<Direction> {
        let mut out = Vec::new();
        for a in -radius..=radius {
            for b in -radius..=radius {
                if let Ok(dir) = Direction::new(a, b) {
                    out.push(dir);
                }
            }
        }
        out
    }

    #[test]
    fn arc_containment() {
        let q1 = Arc::new(d(1, 0), d(0, 1)).unwrap();
        assert!(q1.contains(d(1, 1)));
        assert!(!q1.contains(d(1, 0)));
        assert!(!q1.contains(d(-1, -1)));
        let half = Arc::new(d(1, 0), d(-1, 0)).unwrap();
        assert!(half.contains(d(0, 1)));
        assert!(half.contains(d(-5, 1)));
        assert!(!half.contains(d(0, -1)));
        assert!(Arc::new(d(0, 1), d(1, 0)).is_none());
        assert!(Arc::new(d(1, 0), d(1, 0)).is_none());
    }

    #[test]
    fn simplest_interior_points() {
        assert_eq!(Arc::new(d(1, 0), d(0, 1)).unwrap().simplest_interior(), d(1, 1));
        assert_eq!(Arc::new(d(1, 0), d(-1, 0)).unwrap().simplest_interior(), d(0, 1));
        assert_eq!(Arc::new(d(2, 1), d(1, 1)).unwrap().simplest_interior(), d(3, 2));
        assert_eq!(Arc::new(d(-1, -2), d(-1, -3)).unwrap().simplest_interior(), d(-2, -5));
        assert_eq!(Arc::new(d(-1, 1), d(-1, -1)).unwrap().simplest_interior(), d(-1, 0));
    }

    #[test]
    fn intersections() {
        let a = Arc::new(d(1, 0), d(0, 1)).unwrap();
        let b = Arc::new(d(1, 1), d(-1, 1)).unwrap();
        assert_eq!(a.intersect(&b), Arc::new(d(1, 1), d(0, 1)));
        let c = Arc::new(d(0, 1), d(-1, 0)).unwrap();
        assert_eq!(a.intersect(&c), None);
        assert_eq!(a.intersect(&a), Some(a));
        let h1 = Arc::new(d(1, 0), d(-1, 0)).unwrap();
        assert_eq!(h1.intersect(&h1.negate()), None);
    }

    #[test]
    fn triangle_cones() {
        let t = brown_triangle();
        let cones = t.vertex_cones();
        assert_eq!(cones.len(), 3);
        for dir in all_directions(6) {
            let owners: Vec<usize> = (0..3).filter(|&i| cones[i].contains(dir)).collect();
            match t.pairs_maximally(dir) {
                Some(i) => assert_eq!(owners, vec![i], "direction {dir}"),
                None => assert!(owners.is_empty(), "direction {dir}"),
            }
        }
    }

    #[test]
    fn segment_and_point_cones() {
        let s = MarkedPolytope::unit_x();
        let cones = s.vertex_cones();
        assert!(cones[0].contains(d(-1, 0)) && !cones[0].contains(d(0, 1)));
        assert!(cones[1].contains(d(1, 5)));
        let p = MarkedPolytope::point(Point::new(0, 0), true);
        assert_eq!(p.marked_normal_arcs(), ArcSet::FullCircle);
        assert!(p.unmarked().marked_normal_arcs().is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn polytope() -> impl Strategy<Value = MarkedPolytope> {
            prop::collection::vec(((-4i64..=4, -4i64..=4), any::<bool>()), 1..8).prop_map(|pts| {
                MarkedPolytope::from_marked_points(pts.into_iter().map(|((x, y), m)| (Point::new(x, y), m))).unwrap()
            })
        }

        fn arc() -> impl Strategy<Value = Arc> {
            ((-5i64..=5, -5i64..=5), (-5i64..=5, -5i64..=5)).prop_filter_map("arc", |((a, b), (c, e))| {
                Arc::new(Direction::primitive(a, b)?, Direction::primitive(c, e)?)
            })
        }

        proptest! {
            #[test]
            fn marked_arcs_agree_with_pairing(p in polytope()) {
                let arcs = p.marked_normal_arcs();
                for dir in all_directions(5) {
                    prop_assert_eq!(arcs.contains(dir), p.pairs_with_marked(dir), "direction {}", dir);
                }
            }

            #[test]
            fn simplest_interior_is_inside(a in arc()) {
                prop_assert!(a.contains(a.simplest_interior()));
            }

            #[test]
            fn intersection_is_pointwise(a in arc(), b in arc()) {
                let i = a.intersect(&b);
                for dir in all_directions(7) {
                    let both = a.contains(dir) && b.contains(dir);
                    prop_assert_eq!(i.is_some_and(|i| i.contains(dir)), both, "direction {}", dir);
                }
            }
        }
    }
}
