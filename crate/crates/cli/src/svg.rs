//! SVG 1.1 rendering of a single polygon realization.

use std::fmt::Write;

use conepoly::PolygonRealization;

/// Closed polyline through the vertices, `y` flipped so counter-clockwise in the
/// plane reads counter-clockwise on screen. Even vertices (`z₂, z₄, …`, the cone
/// points) are filled circles; odd vertices are open circles.
pub fn render(realization: &PolygonRealization) -> String {
    let pts: Vec<(f64, f64)> = realization
        .vertices
        .iter()
        .map(|p| (p.x + 0.0, -p.y + 0.0))
        .collect();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let mut width = max_x - min_x;
    let mut height = max_y - min_y;
    let extent = width.max(height);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    // Degenerate directions still get a visible box.
    if width <= 0.0 {
        width = extent;
        min_x -= extent / 2.0;
    }
    if height <= 0.0 {
        height = extent;
        min_y -= extent / 2.0;
    }
    let mx = 0.05 * width;
    let my = 0.05 * height;
    let stroke = extent / 200.0;
    let radius = extent / 80.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        min_x - mx,
        min_y - my,
        width + 2.0 * mx,
        height + 2.0 * my
    );
    let mut points: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
    if let Some(first) = points.first().cloned() {
        points.push(first);
    }
    let _ = writeln!(
        s,
        r#"  <polyline points="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#,
        points.join(" ")
    );
    for (k, (x, y)) in pts.iter().enumerate() {
        // k is zero-based, so odd k is an even vertex z_{k+1}.
        let fill = if k % 2 == 1 { "black" } else { "white" };
        let _ = writeln!(
            s,
            r#"  <circle cx="{x}" cy="{y}" r="{radius}" fill="{fill}" stroke="black" stroke-width="{stroke}"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}
