use std::collections::BTreeSet;

use relpoly_core::check::corpus;
use relpoly_core::{compute, Ambient, Generator, Presentation, Word};

type P = (i64, i64);

fn walk(word: &Word) -> Vec<P> {
    let mut pos = (0, 0);
    let mut out = vec![pos];
    for l in word.letters() {
        let s = if l.inverse { -1 } else { 1 };
        match l.generator {
            Generator::X => pos.0 += s,
            Generator::Y => pos.1 += s,
        }
        out.push(pos);
    }
    out
}

fn orient(a: P, b: P, c: P) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: P, b: P, p: P) -> bool {
    orient(a, b, p) == 0 && (a.0.min(b.0)..=a.0.max(b.0)).contains(&p.0) && (a.1.min(b.1)..=a.1.max(b.1)).contains(&p.1)
}

fn in_triangle(a: P, b: P, c: P, p: P) -> bool {
    if orient(a, b, c) == 0 {
        return false;
    }
    let (d1, d2, d3) = (orient(a, b, p), orient(b, c, p), orient(c, a, p));
    let neg = d1 < 0 || d2 < 0 || d3 < 0;
    let pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(neg && pos)
}

/// Carathéodory: `p` lies in the hull of `s` iff it lies in a triangle (or
/// segment) spanned by points of `s`.
fn in_hull(s: &[P], p: P) -> bool {
    s.iter().enumerate().any(|(i, &a)| {
        a == p
            || s[i + 1..]
                .iter()
                .enumerate()
                .any(|(j, &b)| on_segment(a, b, p) || s[i + 1 + j + 1..].iter().any(|&c| in_triangle(a, b, c, p)))
    })
}

/// Extreme points of a finite set.
fn extreme(s: &BTreeSet<P>) -> BTreeSet<P> {
    s.iter()
        .copied()
        .filter(|&p| {
            let rest: Vec<P> = s.iter().copied().filter(|&q| q != p).collect();
            !in_hull(&rest, p)
        })
        .collect()
}

/// `M` is the set of `p` with the unit square at `p` inside the walk hull `N`.
fn oracle_vertices(word: &Word) -> BTreeSet<P> {
    let pts: Vec<P> = walk(word).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let (x0, x1) = (pts.iter().map(|p| p.0).min().unwrap(), pts.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.1).min().unwrap(), pts.iter().map(|p| p.1).max().unwrap());
    let mut m = BTreeSet::new();
    for x in x0..x1 {
        for y in y0..y1 {
            if [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)].iter().all(|&q| in_hull(&pts, q)) {
                m.insert((x, y));
            }
        }
    }
    let v = extreme(&m);
    let (mx, my) = (v.iter().map(|p| p.0).min().unwrap(), v.iter().map(|p| p.1).min().unwrap());
    v.into_iter().map(|(x, y)| (x - mx, y - my)).collect()
}

#[test]
fn polytope_shape_matches_lattice_point_oracle() {
    let mut checked = 0;
    for word in corpus(11, 150, 18) {
        let pi = Presentation::from_word(word.clone()).unwrap();
        let Ok(result) = compute(&pi) else { continue };
        assert_eq!(result.ambient, Ambient::Plane);
        let got: BTreeSet<P> = result.polytope.points().map(|p| (p.x, p.y)).collect();
        assert_eq!(got, oracle_vertices(pi.relator()), "{word}");
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} presentations were nice");
}

#[test]
fn brown_oracle_is_the_unit_triangle() {
    let w = Word::parse("XYxy^2XYx^2YXyXyxY", &Default::default()).unwrap();
    assert_eq!(oracle_vertices(&w), BTreeSet::from([(0, 0), (1, 0), (0, 1)]));
}
