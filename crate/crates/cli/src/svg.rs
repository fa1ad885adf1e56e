//! Static SVG 1.1 rendering of the lattice walk, its hull `N` and `M_pi`.
//!
//! The picture uses the half-unit convention: `M_pi` is drawn shifted by
//! `(1/2, 1/2)` so that it sits inside `N = M_pi + X + Y`. The JSON report
//! keeps integral coordinates with the minimum corner at the origin.

use std::fmt::Write;

use relpoly_core::pipeline::{Ambient, PolytopeResult};
use relpoly_core::{MarkedPolytope, Presentation};

const UNIT: f64 = 40.0;
const MARGIN: f64 = 40.0;
const FOOTER: f64 = 60.0;

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * UNIT, MARGIN + (self.max_y - y) * UNIT)
    }
}

pub fn render(pi: &Presentation, hull: &MarkedPolytope, result: &PolytopeResult) -> String {
    let walk: Vec<(f64, f64)> = pi.relator().prefix_walk().iter().map(|p| (p.a as f64, p.b as f64)).collect();
    let xs = walk.iter().map(|p| p.0).chain(hull.points().map(|p| p.x as f64));
    let ys = walk.iter().map(|p| p.1).chain(hull.points().map(|p| p.y as f64));
    let (min_x, max_x) = bounds(xs);
    let (min_y, max_y) = bounds(ys);
    let frame = Frame { min_x, max_y };
    let width = 2.0 * MARGIN + (max_x - min_x) * UNIT;
    let height = 2.0 * MARGIN + (max_y - min_y) * UNIT + FOOTER;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<title>Marked polytope of {}</title>"#, escape(&pi.relator().format(pi.names())));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(s, r##"<g stroke="#e0e0e0" stroke-width="1">"##);
    for i in min_x as i64..=max_x as i64 {
        let (x0, y0) = frame.map(i as f64, min_y);
        let (x1, y1) = frame.map(i as f64, max_y);
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>"#);
    }
    for j in min_y as i64..=max_y as i64 {
        let (x0, y0) = frame.map(min_x, j as f64);
        let (x1, y1) = frame.map(max_x, j as f64);
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>"#);
    }
    let _ = writeln!(s, "</g>");

    let hull_pts: Vec<(f64, f64)> = hull.points().map(|p| (p.x as f64, p.y as f64)).collect();
    let _ = writeln!(
        s,
        r##"<polygon id="hull" points="{}" fill="#f2f6ff" stroke="#4060c0" stroke-width="2"/>"##,
        path(&frame, &hull_pts)
    );

    let mut closed = walk.clone();
    if let Some(&first) = walk.first() {
        closed.push(first);
    }
    let _ = writeln!(
        s,
        r##"<polyline id="walk" points="{}" fill="none" stroke="#808080" stroke-width="1.5"/>"##,
        path(&frame, &closed)
    );

    match result.ambient {
        Ambient::Plane => {
            let corner = hull.min_corner();
            let shift = (corner.x as f64 + 0.5, corner.y as f64 + 0.5);
            let pts: Vec<(f64, f64, bool)> = result
                .polytope
                .vertices()
                .iter()
                .map(|v| (v.point.x as f64 + shift.0, v.point.y as f64 + shift.1, v.marked))
                .collect();
            let xy: Vec<(f64, f64)> = pts.iter().map(|p| (p.0, p.1)).collect();
            let _ = writeln!(
                s,
                r##"<polygon id="marked-polytope" points="{}" fill="none" stroke="#c03030" stroke-width="2"/>"##,
                path(&frame, &xy)
            );
            for (x, y, marked) in pts {
                let (cx, cy) = frame.map(x, y);
                vertex(&mut s, cx, cy, marked);
            }
        }
        Ambient::Line { character } => {
            let vs = result.polytope.vertices();
            let base = height - FOOTER / 2.0;
            if let (Some(first), Some(last)) = (vs.first(), vs.last()) {
                let x0 = MARGIN + first.point.x as f64 * UNIT;
                let x1 = MARGIN + last.point.x as f64 * UNIT;
                let _ = writeln!(
                    s,
                    r##"<line id="marked-polytope" x1="{x0}" y1="{base}" x2="{x1}" y2="{base}" stroke="#c03030" stroke-width="2"/>"##
                );
            }
            for v in vs {
                vertex(&mut s, MARGIN + v.point.x as f64 * UNIT, base, v.marked);
            }
            let _ = writeln!(
                s,
                r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="12">M on the line of character {character}</text>"#,
                base - 12.0
            );
        }
    }

    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="12">grey: walk; blue: hull N; red: M shifted by (1/2, 1/2); filled: marked</text>"#,
        height - 8.0
    );
    s.push_str("</svg>\n");
    s
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn path(frame: &Frame, pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|&(x, y)| {
            let (u, v) = frame.map(x, y);
            format!("{u},{v}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn vertex(s: &mut String, cx: f64, cy: f64, marked: bool) {
    let fill = if marked { "#c03030" } else { "white" };
    let _ = writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="5" fill="{fill}" stroke="#c03030" stroke-width="2"/>"##);
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
