//! Exact planar lattice geometry for marked polytopes.
//!
//! Polytopes here are convex lattice polygons, possibly degenerate (a segment
//! or a single point). Everything is integer arithmetic; the only non-lattice
//! object, the symmetrization, is carried with doubled coordinates.

mod fan;
mod minkowski;
mod polytope;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::words::AbelianImage;

pub use fan::{Arc, ArcSet, Cone};
pub use minkowski::{minkowski_diff, minkowski_sum, subtraction_hypotheses, Axis, SliceReport, SubtractionReport};
pub use polytope::{MarkedPolytope, SymmetrizedPolytope, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("cannot take the hull of an empty multiset")]
    EmptyInput,
    #[error("no polytope M satisfies M + Q = N")]
    DifferenceDoesNotExist,
    #[error("marking of the difference is inconsistent at vertex {0}")]
    MarkingInconsistent(Point),
    #[error("subtrahend must have every vertex marked")]
    SubtrahendNotMarked,
    #[error("({0}, {1}) is not a primitive integer direction")]
    NotPrimitive(i64, i64),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn cross(self, other: Point) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Point) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Orientation of `(a, b, c)`: positive for a left turn.
    pub fn orient(a: Point, b: Point, c: Point) -> i64 {
        (b - a).cross(c - a)
    }
}

impl From<AbelianImage> for Point {
    fn from(v: AbelianImage) -> Self {
        Point::new(v.a, v.b)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A primitive integer covector `(a, b)`, i.e. a rational point of the
/// character circle. It evaluates on lattice points as `a*x + b*y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    a: i64,
    b: i64,
}

impl Direction {
    pub const E1: Direction = Direction { a: 1, b: 0 };
    pub const E2: Direction = Direction { a: 0, b: 1 };

    /// Accepts only primitive vectors.
    pub fn new(a: i64, b: i64) -> Result<Self, GeometryError> {
        if gcd(a, b) != 1 {
            return Err(GeometryError::NotPrimitive(a, b));
        }
        Ok(Direction { a, b })
    }

    /// The primitive vector on the ray through `(a, b)`.
    pub fn primitive(a: i64, b: i64) -> Option<Self> {
        let g = gcd(a, b);
        (g != 0).then(|| Direction { a: a / g, b: b / g })
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn eval(self, p: Point) -> i64 {
        self.a * p.x + self.b * p.y
    }

    pub fn as_point(self) -> Point {
        Point::new(self.a, self.b)
    }

    pub fn rotate_ccw(self) -> Direction {
        Direction { a: -self.b, b: self.a }
    }

    pub fn cross(self, other: Direction) -> i64 {
        self.a * other.b - self.b * other.a
    }

    fn half(self) -> u8 {
        if self.b > 0 || (self.b == 0 && self.a > 0) {
            0
        } else {
            1
        }
    }

    /// Counterclockwise angle order starting at `(1, 0)`.
    pub fn angle_cmp(self, other: Direction) -> std::cmp::Ordering {
        self.half().cmp(&other.half()).then_with(|| 0.cmp(&self.cross(other)))
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_primitivity() {
        assert!(Direction::new(2, 1).is_ok());
        assert_eq!(Direction::new(2, 4), Err(GeometryError::NotPrimitive(2, 4)));
        assert_eq!(Direction::new(0, 0), Err(GeometryError::NotPrimitive(0, 0)));
        assert_eq!(Direction::primitive(-4, 6), Some(Direction::new(-2, 3).unwrap()));
        assert_eq!(Direction::primitive(0, 0), None);
    }

    #[test]
    fn angle_order() {
        let ds = [(1, 0), (2, 1), (0, 1), (-1, 1), (-1, 0), (-1, -3), (0, -1), (1, -1)];
        let dirs: Vec<Direction> = ds.iter().map(|&(a, b)| Direction::new(a, b).unwrap()).collect();
        let mut shuffled = dirs.clone();
        shuffled.reverse();
        shuffled.sort_by(|a, b| a.angle_cmp(*b));
        assert_eq!(shuffled, dirs);
    }
}
