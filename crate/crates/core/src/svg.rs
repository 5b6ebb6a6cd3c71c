//! SVG 1.1 rendering of drawings.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::{triangle_area, QPoint};
use crate::model::ConstrainedTriangulation;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// The two extreme points of a collinear vertex set.
fn segment(points: &[QPoint], vs: &[usize]) -> (usize, usize) {
    let key = |v: usize| (points[v].0.clone(), points[v].1.clone());
    let lo = *vs.iter().min_by_key(|&&v| key(v)).expect("constraint has vertices");
    let hi = *vs.iter().max_by_key(|&&v| key(v)).expect("constraint has vertices");
    (lo, hi)
}

/// One polygon per living triangle, shaded when negatively oriented, and
/// one degenerate polygon per constraint segment, then vertex labels.
pub fn render_svg(ct: &ConstrainedTriangulation, points: &[QPoint]) -> String {
    let xs: Vec<f64> = points.iter().map(|p| f(&p.0)).collect();
    let ys: Vec<f64> = points.iter().map(|p| f(&p.1)).collect();
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, y0) = (min(&xs), min(&ys));
    let span = (max(&xs) - x0).max(max(&ys) - y0).max(f64::EPSILON);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let px = |v: usize| MARGIN + (xs[v] - x0) * scale;
    let py = |v: usize| SIZE - MARGIN - (ys[v] - y0) * scale;
    let coords = |vs: &[usize]| {
        vs.iter()
            .map(|&v| format!("{:.3},{:.3}", px(v), py(v)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    for &t in &ct.living() {
        let tri = &ct.triangles()[t];
        let [a, b, c] = tri.verts.map(|v| &points[v]);
        let negative = triangle_area(a, b, c).is_negative();
        let fill = if negative { "#e8a0a0" } else { "#ffffff" };
        let _ = writeln!(
            out,
            r#"  <polygon class="{}" id="{}" points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            if negative { "triangle negative" } else { "triangle" },
            tri.id,
            coords(&tri.verts)
        );
    }
    for (i, c) in ct.constraints().iter().enumerate() {
        let (a, b) = segment(points, &c.vertices);
        let _ = writeln!(
            out,
            r#"  <polygon class="constraint" id="constraint{i}" points="{}" fill="none" stroke="blue" stroke-width="2"/>"#,
            coords(&[a, b])
        );
    }
    for (v, name) in ct.vertex_names().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"  <circle cx="{:.3}" cy="{:.3}" r="3" fill="black"/><text x="{:.3}" y="{:.3}" font-size="12">{name}</text>"#,
            px(v),
            py(v),
            px(v) + 4.0,
            py(v) - 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}
