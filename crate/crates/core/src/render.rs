//! Static SVG drawing of an embedding.
//!
//! Vertices sit on a circle. Each vertex is drawn as a disc cut into one
//! sector per corner of its rotation, taken clockwise; a sector between an
//! outgoing and the following incoming half-arc is a proface corner, the
//! reverse an antiface corner, and it is filled with that face's colour.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::digraph::HalfArc;
use crate::embedding::Embedding;

const SIZE: f64 = 600.0;
const LAYOUT_RADIUS: f64 = 230.0;
const DISC_RADIUS: f64 = 22.0;

fn proface_color(i: usize) -> String {
    format!("hsl({},70%,{}%)", 180 + (i * 47) % 120, 45 + (i / 120) % 4 * 10)
}

fn antiface_color(i: usize) -> String {
    format!("hsl({},80%,{}%)", (i * 47) % 120, 50 + (i / 120) % 4 * 10)
}

fn position(v: usize, n: usize) -> (f64, f64) {
    let t = 2.0 * PI * v as f64 / n as f64 - PI / 2.0;
    (SIZE / 2.0 + LAYOUT_RADIUS * t.cos(), SIZE / 2.0 + LAYOUT_RADIUS * t.sin())
}

pub fn render_svg(e: &Embedding) -> String {
    let d = e.digraph();
    let n = d.vertex_count();
    let faces = e.faces();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    out.push_str(
        "<defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );

    // Parallel arcs between the same pair bend by increasing amounts.
    let mut seen = std::collections::BTreeMap::new();
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        let k = seen.entry((t.min(h), t.max(h))).or_insert(0usize);
        *k += 1;
        let (x1, y1) = position(t, n);
        let (x2, y2) = position(h, n);
        let path = if t == h {
            let (cx, cy) = (SIZE / 2.0, SIZE / 2.0);
            let (ux, uy) = ((x1 - cx) / LAYOUT_RADIUS, (y1 - cy) / LAYOUT_RADIUS);
            let reach = DISC_RADIUS + 18.0 * *k as f64;
            let (px, py) = (-uy, ux);
            format!(
                "M{x1:.2},{y1:.2} C{:.2},{:.2} {:.2},{:.2} {x1:.2},{y1:.2}",
                x1 + ux * reach + px * reach * 0.6,
                y1 + uy * reach + py * reach * 0.6,
                x1 + ux * reach - px * reach * 0.6,
                y1 + uy * reach - py * reach * 0.6
            )
        } else {
            let bend = 14.0 * *k as f64 * if t < h { 1.0 } else { -1.0 };
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1.0);
            let (nx, ny) = (-(y2 - y1) / len, (x2 - x1) / len);
            format!("M{x1:.2},{y1:.2} Q{:.2},{:.2} {x2:.2},{y2:.2}", mx + nx * bend, my + ny * bend)
        };
        let _ = writeln!(
            out,
            "<path class=\"arc\" data-arc=\"{a}\" d=\"{path}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\" marker-end=\"url(#head)\"/>"
        );
    }

    for v in 0..n {
        let (x, y) = position(v, n);
        let rot: &[HalfArc] = e.rotation_system().rotation(v);
        let _ = writeln!(out, "<g class=\"vertex\" data-vertex=\"{v}\">");
        let _ =
            writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{DISC_RADIUS}\" fill=\"#fff\" stroke=\"#000\"/>");
        let corners = rot.len();
        for i in 0..corners {
            let (g, h) = (rot[i], rot[(i + 1) % corners]);
            let (class, color) = if g.is_outgoing() {
                ("proface", proface_color(faces.proface_of_arc(h.arc())))
            } else {
                ("antiface", antiface_color(faces.antiface_of_arc(g.arc())))
            };
            let t0 = 2.0 * PI * i as f64 / corners as f64 - PI / 2.0;
            let t1 = 2.0 * PI * (i + 1) as f64 / corners as f64 - PI / 2.0;
            let large = u8::from(corners == 1);
            let (ax, ay) = (x + DISC_RADIUS * t0.cos(), y + DISC_RADIUS * t0.sin());
            let (bx, by) = (x + DISC_RADIUS * t1.cos(), y + DISC_RADIUS * t1.sin());
            let _ = writeln!(
                out,
                "<path class=\"corner {class}\" d=\"M{x:.2},{y:.2} L{ax:.2},{ay:.2} A{DISC_RADIUS},{DISC_RADIUS} 0 {large} 1 {bx:.2},{by:.2} Z\" fill=\"{color}\"/>"
            );
        }
        let _ =
            writeln!(out, "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{v}</text>", y + 4.0);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{CircuitDecomposition, Digraph};
    use crate::embedding::embed_from_decomposition;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn fills<'a>(svg: &'a str, class: &str) -> BTreeSet<&'a str> {
        let tag = format!("class=\"corner{class}");
        svg.lines().filter(|l| l.contains(&tag)).filter_map(|l| l.split("fill=\"").nth(1)?.split('"').next()).collect()
    }

    #[test]
    fn digon_has_two_nodes_two_curves_two_colors() {
        let d = Arc::new(Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap());
        let c = CircuitDecomposition::new(&d, vec![vec![0, 1]]).unwrap();
        let e = embed_from_decomposition(d, &c).unwrap();
        let svg = render_svg(&e);
        assert_eq!(svg.matches("class=\"vertex\"").count(), 2);
        assert_eq!(svg.matches("class=\"arc\"").count(), 2);
        assert_eq!(fills(&svg, "").len(), 2);
        assert_eq!(svg, render_svg(&e));
    }

    #[test]
    fn k12_minus_matching_has_two_colors_per_class() {
        use crate::generators::{gen_kn_minus_pm, split_euler_circuit};
        use crate::reducer::{reduce_to_upper_embedding, ReduceOptions};
        let d = gen_kn_minus_pm(12).unwrap();
        let c = split_euler_circuit(&d).unwrap();
        let e = reduce_to_upper_embedding(Arc::new(d), &c, ReduceOptions::default()).unwrap().embedding;
        let svg = render_svg(&e);
        assert_eq!(svg.matches("class=\"vertex\"").count(), 12);
        assert_eq!(svg.matches("class=\"arc\"").count(), 60);
        assert_eq!(fills(&svg, " proface").len(), 2);
        assert_eq!(fills(&svg, " antiface").len(), 2);
    }

    #[test]
    fn loops_render() {
        let d = Arc::new(Digraph::new(1, vec![(0, 0); 3]).unwrap());
        let c = CircuitDecomposition::new(&d, vec![vec![0], vec![1], vec![2]]).unwrap();
        let e = embed_from_decomposition(d, &c).unwrap();
        let svg = render_svg(&e);
        assert_eq!(svg.matches("class=\"corner").count(), 6);
    }
}
