use std::collections::BTreeMap;
use std::fmt;

use super::{Direction, GeometryError, Point};
use crate::groupring::LatticeMultiset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub point: Point,
    pub marked: bool,
}

/// A convex lattice polygon with a set of marked vertices.
///
/// Vertices are stored counterclockwise, in strictly convex position, starting
/// from the lexicographically least one. A segment has two vertices and a
/// point one. With this normal form, `==` is equality of marked polytopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPolytope {
    vertices: Vec<Vertex>,
}

/// Andrew's monotone chain over distinct points; drops collinear points.
/// Returns the hull counterclockwise from the lexicographic minimum.
fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && Point::orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && Point::orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl MarkedPolytope {
    pub fn point(p: Point, marked: bool) -> Self {
        MarkedPolytope { vertices: vec![Vertex { point: p, marked }] }
    }

    /// `X = [0,1] x {0}` with both vertices marked.
    pub fn unit_x() -> Self {
        Self::from_marked_points([(Point::new(0, 0), true), (Point::new(1, 0), true)]).expect("nonempty")
    }

    /// `Y = {0} x [0,1]` with both vertices marked.
    pub fn unit_y() -> Self {
        Self::from_marked_points([(Point::new(0, 0), true), (Point::new(0, 1), true)]).expect("nonempty")
    }

    /// `X + Y`, the unit square with every vertex marked.
    pub fn unit_square() -> Self {
        super::minkowski_sum(&Self::unit_x(), &Self::unit_y())
    }

    /// Hull of the given points; a hull vertex is marked when every copy of
    /// it in the input is marked. Points that are not vertices are ignored.
    pub fn from_marked_points(points: impl IntoIterator<Item = (Point, bool)>) -> Result<Self, GeometryError> {
        let mut marks: BTreeMap<Point, bool> = BTreeMap::new();
        for (p, m) in points {
            marks.entry(p).and_modify(|e| *e &= m).or_insert(m);
        }
        if marks.is_empty() {
            return Err(GeometryError::EmptyInput);
        }
        let hull = convex_hull(marks.keys().copied().collect());
        Ok(MarkedPolytope { vertices: hull.into_iter().map(|p| Vertex { point: p, marked: marks[&p] }).collect() })
    }

    /// Convex hull of the support of a multiset; a vertex is marked iff its
    /// multiplicity is exactly one.
    pub fn hull_of_multiset(m: &LatticeMultiset) -> Result<Self, GeometryError> {
        Self::from_marked_points(m.counts().iter().map(|(&v, &c)| (Point::from(v), c == 1)))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.vertices.iter().map(|v| v.point)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn marked_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.marked).count()
    }

    pub fn all_marked(&self) -> bool {
        self.vertices.iter().all(|v| v.marked)
    }

    pub fn vertex_at(&self, p: Point) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.point == p)
    }

    pub fn translate(&self, by: Point) -> Self {
        MarkedPolytope { vertices: self.vertices.iter().map(|v| Vertex { point: v.point + by, ..*v }).collect() }
    }

    /// Componentwise minimum over the vertices.
    pub fn min_corner(&self) -> Point {
        let x = self.points().map(|p| p.x).min().unwrap_or(0);
        let y = self.points().map(|p| p.y).min().unwrap_or(0);
        Point::new(x, y)
    }

    /// Translates so that the componentwise minimum of the vertices is the origin.
    pub fn normalize_translation(&self) -> Self {
        self.translate(-self.min_corner())
    }

    pub fn equal_up_to_translation(&self, other: &MarkedPolytope) -> bool {
        self.normalize_translation() == other.normalize_translation()
    }

    /// Same as [`Self::equal_up_to_translation`] with markings ignored.
    pub fn same_shape(&self, other: &MarkedPolytope) -> bool {
        self.unmarked().equal_up_to_translation(&other.unmarked())
    }

    pub fn unmarked(&self) -> Self {
        MarkedPolytope { vertices: self.vertices.iter().map(|v| Vertex { marked: false, ..*v }).collect() }
    }

    pub fn negate(&self) -> Self {
        Self::from_marked_points(self.vertices.iter().map(|v| (-v.point, v.marked))).expect("nonempty")
    }

    /// Image under the linear map sending `(1,0)` to `e0` and `(0,1)` to `e1`.
    /// Markings are carried along; the map must be invertible.
    pub fn linear_image(&self, e0: Point, e1: Point) -> Self {
        debug_assert_ne!(e0.cross(e1), 0);
        Self::from_marked_points(self.vertices.iter().map(|v| {
            let p = v.point;
            (Point::new(p.x * e0.x + p.y * e1.x, p.x * e0.y + p.y * e1.y), v.marked)
        }))
        .expect("nonempty")
    }

    /// `max phi(p) - min phi(q)` over the polytope, for any integer covector.
    pub fn width(&self, a: i64, b: i64) -> i64 {
        let values = self.points().map(|p| a * p.x + b * p.y);
        let (lo, hi) = values.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    }

    /// Thickness `th(P, phi)`.
    pub fn thickness(&self, phi: Direction) -> i64 {
        self.width(phi.a(), phi.b())
    }

    /// Index of the vertex at which `phi` attains a strict maximum, if any. For
    /// a single point the condition is vacuous and the point is returned.
    pub fn pairs_maximally(&self, phi: Direction) -> Option<usize> {
        let values: Vec<i64> = self.points().map(|p| phi.eval(p)).collect();
        let max = *values.iter().max()?;
        let mut hits = values.iter().enumerate().filter(|(_, &v)| v == max);
        let (i, _) = hits.next()?;
        hits.next().is_none().then_some(i)
    }

    /// Whether `phi` pairs maximally with a marked vertex.
    pub fn pairs_with_marked(&self, phi: Direction) -> bool {
        self.pairs_maximally(phi).is_some_and(|i| self.vertices[i].marked)
    }

    /// Closed containment of a lattice point.
    pub fn contains(&self, p: Point) -> bool {
        match self.vertices.as_slice() {
            [] => false,
            [v] => v.point == p,
            [a, b] => {
                let (a, b) = (a.point, b.point);
                Point::orient(a, b, p) == 0 && (p - a).dot(b - a) >= 0 && (p - b).dot(a - b) >= 0
            }
            vs => (0..vs.len()).all(|i| Point::orient(vs[i].point, vs[(i + 1) % vs.len()].point, p) >= 0),
        }
    }

    /// Edge vectors, counterclockwise, starting at the first vertex. A segment
    /// has two opposite edges and a point none.
    pub fn edge_vectors(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n).map(|i| self.vertices[(i + 1) % n].point - self.vertices[i].point).collect()
    }

    /// Outward primitive normals of the edges, aligned with [`Self::edge_vectors`].
    pub fn edge_normals(&self) -> Vec<Direction> {
        self.edge_vectors().into_iter().map(|e| Direction::primitive(e.y, -e.x).expect("edges are nonzero")).collect()
    }

    /// `P^sym = { (p - q)/2 }`, markings dropped.
    pub fn symmetrize(&self) -> SymmetrizedPolytope {
        let pts: Vec<Point> = self.points().collect();
        let doubled = Self::from_marked_points(pts.iter().flat_map(|&p| pts.iter().map(move |&q| (p - q, false))))
            .expect("nonempty");
        SymmetrizedPolytope { doubled }
    }
}

impl fmt::Display for MarkedPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", v.point, if v.marked { "*" } else { "" })?;
        }
        f.write_str("]")
    }
}

/// A centrally symmetric polytope with possibly half-integral vertices, stored
/// as its double.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedPolytope {
    doubled: MarkedPolytope,
}

impl SymmetrizedPolytope {
    /// The polytope scaled by two; its vertices are lattice points.
    pub fn doubled(&self) -> &MarkedPolytope {
        &self.doubled
    }

    /// Vertices as `(numerator_x, numerator_y)` over a common denominator 2.
    pub fn half_vertices(&self) -> Vec<Point> {
        self.doubled.points().collect()
    }

    pub fn thickness(&self, phi: Direction) -> i64 {
        let w = self.doubled.thickness(phi);
        debug_assert_eq!(w % 2, 0);
        w / 2
    }
}
