//! Minkowski sums and differences of marked polytopes.

use std::cmp::Ordering;

use super::{GeometryError, MarkedPolytope, Point, Vertex};

// Edge directions of a CCW polygon read from its lexicographically least
// vertex have angles increasing through (-pi/2, 3pi/2].
fn edge_half(e: Point) -> u8 {
    if e.x > 0 || (e.x == 0 && e.y > 0) {
        0
    } else {
        1
    }
}

fn edge_cmp(a: Point, b: Point) -> Ordering {
    edge_half(a).cmp(&edge_half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Marked Minkowski sum by merging the two edge sequences.
///
/// Every vertex `u` of the sum decomposes uniquely as `v + w` with `v`, `w`
/// vertices of the summands; `u` is marked iff both `v` and `w` are.
pub fn minkowski_sum(p: &MarkedPolytope, q: &MarkedPolytope) -> MarkedPolytope {
    let (pv, qv) = (p.vertices(), q.vertices());
    let (ep, eq) = (p.edge_vectors(), q.edge_vectors());
    let (mut i, mut j) = (0, 0);
    let mut cur = pv[0].point + qv[0].point;
    let mut out = vec![Vertex { point: cur, marked: pv[0].marked && qv[0].marked }];
    while i < ep.len() || j < eq.len() {
        let order = match (ep.get(i), eq.get(j)) {
            (Some(&a), Some(&b)) => edge_cmp(a, b),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                cur = cur + ep[i];
                i += 1;
            }
            Ordering::Greater => {
                cur = cur + eq[j];
                j += 1;
            }
            Ordering::Equal => {
                cur = cur + ep[i] + eq[j];
                i += 1;
                j += 1;
            }
        }
        if i < ep.len() || j < eq.len() {
            let (a, b) = (&pv[i % pv.len()], &qv[j % qv.len()]);
            out.push(Vertex { point: cur, marked: a.marked && b.marked });
        }
    }
    debug_assert_eq!(cur, pv[0].point + qv[0].point);
    MarkedPolytope::from_marked_points(out.into_iter().map(|v| (v.point, v.marked))).expect("nonempty")
}

/// The unique marked `M` with `M + q = n`, for a fully marked `q`.
///
/// The shape is `{p : p + q in n}`, found among the candidates `u - w` (`u` a
/// vertex of `n`, `w` a vertex of `q`) and confirmed by re-summation. A vertex
/// `v` of `M` is marked iff the vertex `v + w` of `n` is marked; when different
/// choices of `w` disagree no marking works and `MarkingInconsistent` is
/// returned.
pub fn minkowski_diff(n: &MarkedPolytope, q: &MarkedPolytope) -> Result<MarkedPolytope, GeometryError> {
    if !q.all_marked() {
        return Err(GeometryError::SubtrahendNotMarked);
    }
    let qpts: Vec<Point> = q.points().collect();
    let mut valid: Vec<Point> = n
        .points()
        .flat_map(|u| qpts.iter().map(move |&w| u - w))
        .filter(|&c| qpts.iter().all(|&w| n.contains(c + w)))
        .collect();
    valid.sort();
    valid.dedup();
    if valid.is_empty() {
        return Err(GeometryError::DifferenceDoesNotExist);
    }
    let shape = MarkedPolytope::from_marked_points(valid.into_iter().map(|c| (c, false)))?;
    if minkowski_sum(&shape, &q.unmarked()) != n.unmarked() {
        return Err(GeometryError::DifferenceDoesNotExist);
    }
    let mut marked = Vec::with_capacity(shape.len());
    for v in shape.points() {
        let mut marks = qpts.iter().filter_map(|&w| n.vertex_at(v + w).map(|u| u.marked));
        let first = marks.next().expect("every vertex of M lifts to a vertex of M + Q");
        if marks.any(|m| m != first) {
            return Err(GeometryError::MarkingInconsistent(v));
        }
        marked.push((v, first));
    }
    let m = MarkedPolytope::from_marked_points(marked)?;
    debug_assert_eq!(&minkowski_sum(&m, q), n);
    Ok(m)
}

/// Unit segment being subtracted: `Axis::Y` for `Y = {0} x [0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// One extreme slice of `N` transverse to the subtracted segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceReport {
    pub low: Vertex,
    pub high: Vertex,
}

impl SliceReport {
    pub fn length(&self) -> i64 {
        (self.high.point.x - self.low.point.x) + (self.high.point.y - self.low.point.y)
    }

    /// Length at least one, and equal markings at the ends when it is exactly one.
    pub fn holds(&self) -> bool {
        let len = self.length();
        len >= 1 && (len != 1 || self.low.marked == self.high.marked)
    }
}

/// The two conditions under which a unit segment can be subtracted from `N`,
/// evaluated on both extreme slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubtractionReport {
    pub axis: Axis,
    pub slices: [SliceReport; 2],
}

impl SubtractionReport {
    pub fn holds(&self) -> bool {
        self.slices.iter().all(SliceReport::holds)
    }
}

/// For `Axis::Y`, inspects the vertical slices of `n` at minimal and maximal
/// `x` (corner points `x_i^0`, `x_i^1`); for `Axis::X` the horizontal slices
/// at minimal and maximal `y`.
pub fn subtraction_hypotheses(n: &MarkedPolytope, axis: Axis) -> SubtractionReport {
    let across = |p: Point| match axis {
        Axis::Y => p.x,
        Axis::X => p.y,
    };
    let along = |p: Point| match axis {
        Axis::Y => p.y,
        Axis::X => p.x,
    };
    let slice = |target: i64| {
        let mut vs: Vec<Vertex> = n.vertices().iter().copied().filter(|v| across(v.point) == target).collect();
        vs.sort_by_key(|v| along(v.point));
        SliceReport { low: vs[0], high: *vs.last().expect("nonempty slice") }
    };
    let lo = n.points().map(across).min().expect("nonempty");
    let hi = n.points().map(across).max().expect("nonempty");
    SubtractionReport { axis, slices: [slice(lo), slice(hi)] }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn poly(vs: &[((i64, i64), bool)]) -> MarkedPolytope {
        MarkedPolytope::from_marked_points(vs.iter().map(|&((x, y), m)| (p(x, y), m))).unwrap()
    }

    // All pairwise vertex sums; a hull vertex is the sum of exactly one pair.
    pub(crate) fn brute_force_sum(a: &MarkedPolytope, b: &MarkedPolytope) -> MarkedPolytope {
        let sums: Vec<(Point, bool)> = a
            .vertices()
            .iter()
            .flat_map(|v| b.vertices().iter().map(move |w| (v.point + w.point, v.marked && w.marked)))
            .collect();
        let hull = MarkedPolytope::from_marked_points(sums.iter().map(|&(q, _)| (q, false))).unwrap();
        MarkedPolytope::from_marked_points(hull.points().map(|u| {
            let pairs: Vec<bool> = sums.iter().filter(|(q, _)| *q == u).map(|&(_, m)| m).collect();
            assert_eq!(pairs.len(), 1, "vertex {u} decomposes uniquely");
            (u, pairs[0])
        }))
        .unwrap()
    }

    // Subtracting Y by hand: every column of N = M + Y has height at least
    // one, so each vertex of N is the bottom or the top of its column. M keeps
    // the bottoms and the tops shifted down by one.
    fn subtract_y_by_chains(n: &MarkedPolytope) -> MarkedPolytope {
        let up = p(0, 1);
        let pts = n.vertices().iter().map(|v| {
            if n.contains(v.point - up) {
                (v.point - up, v.marked)
            } else {
                (v.point, v.marked)
            }
        });
        MarkedPolytope::from_marked_points(pts).unwrap()
    }

    #[test]
    fn sum_examples() {
        let pt = MarkedPolytope::point(p(0, 0), true);
        assert_eq!(minkowski_sum(&pt, &MarkedPolytope::unit_x()), MarkedPolytope::unit_x());
        let t = poly(&[((0, -1), true), ((-1, -1), true), ((-1, 0), false)]);
        let s = minkowski_sum(&t, &MarkedPolytope::unit_y());
        assert_eq!(s, poly(&[((0, -1), true), ((0, 0), true), ((-1, 1), false), ((-1, -1), true)]));
        assert_eq!(s, brute_force_sum(&t, &MarkedPolytope::unit_y()));
        let sq = MarkedPolytope::unit_square();
        assert_eq!(sq.len(), 4);
        assert!(sq.all_marked());
    }

    #[test]
    fn sum_of_small_fixtures() {
        // a triangle with one marked vertex plus a segment with one marked end
        let a = poly(&[((0, 0), true), ((2, 0), false), ((0, 1), false)]);
        let b = poly(&[((0, 0), false), ((1, 1), true)]);
        let s = minkowski_sum(&a, &b);
        assert_eq!(s, brute_force_sum(&a, &b));
        assert_eq!(s.len(), 5);
        assert_eq!(s.marked_count(), 0);
        let c = poly(&[((0, 0), true), ((1, 0), true), ((0, 1), true)]);
        let s = minkowski_sum(&a, &c);
        assert_eq!(s, brute_force_sum(&a, &c));
        assert_eq!(s.marked_count(), 1);
        // parallel segments merge
        let s = minkowski_sum(&MarkedPolytope::unit_x(), &MarkedPolytope::unit_x());
        assert_eq!(s, poly(&[((0, 0), true), ((2, 0), true)]));
    }

    #[test]
    fn diff_examples() {
        let brown_rx = poly(&[((0, 0), true), ((-1, -1), true), ((0, -1), true), ((-1, 1), false)]);
        let m = minkowski_diff(&brown_rx, &MarkedPolytope::unit_y()).unwrap();
        assert_eq!(m, poly(&[((0, -1), true), ((-1, -1), true), ((-1, 0), false)]));
        assert_eq!(minkowski_sum(&m, &MarkedPolytope::unit_y()), brown_rx);
        assert_eq!(m, subtract_y_by_chains(&brown_rx));

        let seg = poly(&[((0, 0), true), ((0, 1), true)]);
        assert_eq!(minkowski_diff(&seg, &MarkedPolytope::unit_x()), Err(GeometryError::DifferenceDoesNotExist));
        assert_eq!(minkowski_diff(&seg, &MarkedPolytope::unit_y()).unwrap(), MarkedPolytope::point(p(0, 0), true));
    }

    #[test]
    fn diff_rejects_inconsistent_marking() {
        // unit square with (0,0) unmarked: the bottom-left and top-left corners
        // of the left slice disagree, so no marked M has M + X + Y = N.
        let n = poly(&[((0, 0), false), ((1, 0), true), ((1, 1), true), ((0, 1), true)]);
        assert_eq!(
            minkowski_diff(&n, &MarkedPolytope::unit_square()),
            Err(GeometryError::MarkingInconsistent(p(0, 0)))
        );
        assert!(!subtraction_hypotheses(&n, Axis::Y).holds());
        let all_unmarked = n.unmarked();
        assert_eq!(
            minkowski_diff(&all_unmarked, &MarkedPolytope::unit_square()).unwrap(),
            MarkedPolytope::point(p(0, 0), false)
        );
    }

    #[test]
    fn diff_requires_marked_subtrahend() {
        let n = MarkedPolytope::unit_square();
        assert_eq!(minkowski_diff(&n, &MarkedPolytope::unit_x().unmarked()), Err(GeometryError::SubtrahendNotMarked));
    }

    #[test]
    fn hypotheses_report() {
        let brown_rx = poly(&[((0, 0), true), ((-1, -1), true), ((0, -1), true), ((-1, 1), false)]);
        let r = subtraction_hypotheses(&brown_rx, Axis::Y);
        assert_eq!(r.slices[0].length(), 2);
        assert_eq!(r.slices[1].length(), 1);
        assert!(r.holds());
        let r = subtraction_hypotheses(&brown_rx, Axis::X);
        assert_eq!(r.slices[0].length(), 1);
        assert_eq!(r.slices[1].length(), 0);
        assert!(!r.holds());
        assert!(minkowski_diff(&brown_rx, &MarkedPolytope::unit_x()).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub(crate) fn polytope() -> impl Strategy<Value = MarkedPolytope> {
            prop::collection::vec(((-4i64..=4, -4i64..=4), any::<bool>()), 1..8).prop_map(|pts| {
                MarkedPolytope::from_marked_points(pts.into_iter().map(|((x, y), m)| (Point::new(x, y), m))).unwrap()
            })
        }

        fn unit() -> impl Strategy<Value = MarkedPolytope> {
            prop_oneof![
                Just(MarkedPolytope::unit_x()),
                Just(MarkedPolytope::unit_y()),
                Just(MarkedPolytope::unit_square())
            ]
        }

        proptest! {
            #[test]
            fn edge_merge_matches_brute_force(a in polytope(), b in polytope()) {
                prop_assert_eq!(minkowski_sum(&a, &b), brute_force_sum(&a, &b));
            }

            #[test]
            fn sum_commutes(a in polytope(), b in polytope()) {
                prop_assert_eq!(minkowski_sum(&a, &b), minkowski_sum(&b, &a));
            }

            #[test]
            fn difference_inverts_sum(m in polytope(), q in unit()) {
                let n = minkowski_sum(&m, &q);
                prop_assert_eq!(minkowski_diff(&n, &q).unwrap(), m);
            }

            #[test]
            fn subtracting_y_matches_chain_construction(m in polytope()) {
                let n = minkowski_sum(&m, &MarkedPolytope::unit_y());
                prop_assert!(subtraction_hypotheses(&n, Axis::Y).holds());
                prop_assert_eq!(subtract_y_by_chains(&n), m);
            }
        }
    }
}
