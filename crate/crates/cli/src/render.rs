//! SVG pictures of instances and embeddings: filled squares for terminals,
//! hollow circles for Steiner points, one rectilinear polyline per tree
//! edge, all over a dotted unit grid. Output is deterministic text.

use steiner_embed::model::{Embedding, HalfPoint, Instance};

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Render to SVG. Coordinates are half-units with the y axis flipped so
/// larger y is up; without an embedding only the terminals are drawn.
pub fn render_svg(inst: &Instance, emb: Option<&Embedding>) -> String {
    // Flipped draw position of a vertex, when it has one.
    let draw = |p: HalfPoint| (p.x2, -p.y2);
    let mut points: Vec<(i64, i64)> = Vec::new();
    match emb {
        Some(e) => points.extend((0..inst.len()).map(|v| draw(e.position(v)))),
        None => points.extend(
            inst.terminal_indices().iter().map(|&v| draw(inst.terminal(v).unwrap().position)),
        ),
    }
    let min_x = points.iter().map(|p| p.0).min().unwrap() - 4;
    let max_x = points.iter().map(|p| p.0).max().unwrap() + 4;
    let min_y = points.iter().map(|p| p.1).min().unwrap() - 4;
    let max_y = points.iter().map(|p| p.1).max().unwrap() + 4;
    let (w, h) = (max_x - min_x, max_y - min_y);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{min_x} {min_y} {w} {h}\" width=\"{}\">\n",
        (w * 16).clamp(320, 1280)
    ));
    svg.push_str("  <style>\n");
    svg.push_str("    .grid { stroke: #b8b8b8; stroke-width: 0.12; stroke-dasharray: 0.4 0.8; }\n");
    svg.push_str("    .edge { fill: none; stroke: #333333; stroke-width: 0.5; stroke-linejoin: round; }\n");
    svg.push_str("    .terminal { fill: #111111; }\n");
    svg.push_str("    .steiner { fill: none; stroke: #111111; stroke-width: 0.4; }\n");
    svg.push_str("  </style>\n");

    // Dotted grid on whole units, which are the even half-unit lines.
    let start = |v: i64| if v % 2 == 0 { v } else { v + 1 };
    let mut gx = start(min_x);
    while gx <= max_x {
        svg.push_str(&format!(
            "  <line class=\"grid\" x1=\"{gx}\" y1=\"{min_y}\" x2=\"{gx}\" y2=\"{max_y}\"/>\n"
        ));
        gx += 2;
    }
    let mut gy = start(min_y);
    while gy <= max_y {
        svg.push_str(&format!(
            "  <line class=\"grid\" x1=\"{min_x}\" y1=\"{gy}\" x2=\"{max_x}\" y2=\"{gy}\"/>\n"
        ));
        gy += 2;
    }

    if let Some(e) = emb {
        // One rectilinear elbow per tree edge, cornering at (bx, ay).
        for &(a, b) in inst.edges() {
            let (ax, ay) = draw(e.position(a));
            let (bx, by) = draw(e.position(b));
            svg.push_str(&format!(
                "  <polyline class=\"edge\" points=\"{ax},{ay} {bx},{ay} {bx},{by}\"/>\n"
            ));
        }
        for v in 0..inst.len() {
            if inst.is_terminal(v) {
                continue;
            }
            let (x, y) = draw(e.position(v));
            svg.push_str(&format!(
                "  <circle class=\"steiner\" cx=\"{x}\" cy=\"{y}\" r=\"1\"><title>{}</title></circle>\n",
                esc(inst.id(v))
            ));
        }
    }
    for &v in inst.terminal_indices() {
        let p = emb.map_or(inst.terminal(v).unwrap().position, |e| e.position(v));
        let (x, y) = draw(p);
        svg.push_str(&format!(
            "  <rect class=\"terminal\" x=\"{}\" y=\"{}\" width=\"2\" height=\"2\"><title>{}</title></rect>\n",
            x - 1,
            y - 1,
            esc(inst.id(v))
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
