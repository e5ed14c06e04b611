//! Straight-line drawings of plane embeddings as SVG. Best effort: the
//! barycentric layout is only guaranteed crossing-free for 3-connected
//! graphs, which is close enough for subdivisions of them.

use std::fmt::Write as _;

use crate::embedding::Embedding;
use crate::graph::Vertex;

/// Tutte layout in the unit square: the `outer` face is pinned to a regular
/// polygon and every other vertex sits at the average of its neighbours.
pub fn tutte_layout(e: &Embedding, outer: usize) -> Vec<(f64, f64)> {
    let g = e.graph();
    let n = g.vertex_count();
    let walks = e.trace_faces();
    let mut boundary: Vec<Vertex> = walks.get(outer).map(|w| w.vertex_sequence(g)).unwrap_or_default();
    let mut seen = vec![false; n];
    boundary.retain(|&v| !std::mem::replace(&mut seen[v], true));
    let mut pos = vec![(0.5, 0.5); n];
    let k = boundary.len().max(1) as f64;
    for (i, &v) in boundary.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / k;
        pos[v] = (0.5 + 0.45 * a.cos(), 0.5 + 0.45 * a.sin());
    }
    let fixed = seen;
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for v in 0..n {
            if fixed[v] || g.degree(v) == 0 {
                continue;
            }
            let (mut sx, mut sy) = (0.0, 0.0);
            for w in g.neighbors(v) {
                sx += pos[w].0;
                sy += pos[w].1;
            }
            let d = g.degree(v) as f64;
            let p = (sx / d, sy / d);
            moved = moved.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

/// What to emphasise in a drawing.
#[derive(Clone, Debug, Default)]
pub struct Highlight {
    /// Drawn thick, one colour each.
    pub cycles: Vec<Vec<Vertex>>,
    /// Drawn as larger labelled dots.
    pub terminals: Vec<Vertex>,
}

const PALETTE: [&str; 6] = ["#d1495b", "#edae49", "#00798c", "#30638e", "#66a182", "#8d6a9f"];

/// SVG of `e` drawn with [`tutte_layout`], vertex labels 1-based.
pub fn svg(e: &Embedding, outer: usize, highlight: &Highlight, size: u32) -> String {
    let g = e.graph();
    let pos = tutte_layout(e, outer);
    let s = size as f64;
    let at = |v: Vertex| (pos[v].0 * s, pos[v].1 * s);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">"#);
    for &(u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (at(u), at(v));
        let _ = writeln!(out, r##"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="#999" stroke-width="1.5"/>"##);
    }
    for (i, c) in highlight.cycles.iter().enumerate() {
        let points: Vec<String> = c.iter().map(|&v| at(v)).map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="{colour}" stroke-width="4" stroke-opacity="0.8"/>"#, points.join(" "));
    }
    for v in 0..g.vertex_count() {
        let (x, y) = at(v);
        if highlight.terminals.contains(&v) {
            let _ = writeln!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="9" fill="#222"/><text x="{x:.1}" y="{:.1}" font-size="10" text-anchor="middle" fill="#fff">{}</text>"##, y + 3.5, v + 1);
        } else {
            let _ = writeln!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="3.5" fill="#444"/>"##);
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn hex_cylinder_drawing() {
        let inst = families::hex_cylinder(3).unwrap();
        let e = &inst.reference_planar;
        let faces = e.faces();
        let outer = faces.face_of(e.graph().darts_at(inst.y)[0], crate::embedding::Side::Plus);
        let pos = tutte_layout(e, outer);
        assert!(pos.iter().all(|&(x, y)| (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)));
        let h = Highlight { cycles: inst.reference_rings.cycles.clone(), terminals: vec![inst.x, inst.y] };
        let svg = svg(e, outer, &h, 400);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert_eq!(svg.matches("<line").count(), e.graph().edge_count());
    }
}
