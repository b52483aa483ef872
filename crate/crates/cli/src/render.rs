//! ASCII and SVG drawings of finite grids.
//!
//! Squares of the tiling are drawn as diamonds centred on the square
//! lattice; clock position 0 points up, 1 right, 2 down, 3 left.

use std::fmt::Write;

use truncdom::{BroadcastSet, FiniteGraph, VertexCoord};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const PX: f64 = 40.0;

fn offset(a: u8) -> (i64, i64) {
    match a {
        0 => (0, 1),
        1 => (1, 0),
        2 => (0, -1),
        _ => (-1, 0),
    }
}

fn extent(g: &FiniteGraph) -> (i64, i64, i64, i64) {
    let xs = g.coords().iter().map(|v| v.x);
    let ys = g.coords().iter().map(|v| v.y);
    (
        xs.clone().min().unwrap_or(0),
        xs.max().unwrap_or(0),
        ys.clone().min().unwrap_or(0),
        ys.max().unwrap_or(0),
    )
}

fn is_cross(u: VertexCoord, v: VertexCoord) -> bool {
    (u.a as i64 - v.a as i64).abs() == 2
}

/// One `o` per vertex (`@` for broadcasters), `-` and `|` for the edges
/// joining neighbouring squares.
pub fn ascii(g: &FiniteGraph, highlight: Option<&BroadcastSet>) -> String {
    let (x0, x1, y0, y1) = extent(g);
    let w = (4 * (x1 - x0) + 3) as usize;
    let h = (4 * (y1 - y0) + 3) as usize;
    let mut cells = vec![vec![' '; w]; h];
    let pos = |v: VertexCoord| {
        let (dx, dy) = offset(v.a);
        let col = 4 * (v.x - x0) + 1 + dx;
        let row = 4 * (y1 - v.y) + 1 - dy;
        (col as usize, row as usize)
    };
    for (i, j) in g.edges() {
        let (u, v) = (g.coord(i), g.coord(j));
        if !is_cross(u, v) {
            continue;
        }
        let ((c1, r1), (c2, r2)) = (pos(u), pos(v));
        if c1.abs_diff(c2) + r1.abs_diff(r2) != 2 {
            continue;
        }
        let (c, r) = ((c1 + c2) / 2, (r1 + r2) / 2);
        cells[r][c] = if r1 == r2 { '-' } else { '|' };
    }
    for (i, &v) in g.coords().iter().enumerate() {
        let (c, r) = pos(v);
        cells[r][c] = if highlight.is_some_and(|s| s.contains(i)) {
            '@'
        } else {
            'o'
        };
    }
    let mut out = String::new();
    for row in cells {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn point(v: VertexCoord) -> (f64, f64) {
    let s = 1.0 + SQRT2;
    let (dx, dy) = offset(v.a);
    let h = SQRT2 / 2.0;
    (
        s * v.x as f64 + h * dx as f64,
        -(s * v.y as f64 + h * dy as f64),
    )
}

/// Unit edges throughout. Broadcasters are circled and every vertex within
/// distance `t-1` of one is shaded.
pub fn svg(g: &FiniteGraph, highlight: Option<&BroadcastSet>) -> String {
    let pts: Vec<(f64, f64)> = g.coords().iter().map(|&v| point(v)).collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - 1.0;
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + 1.0;
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - 1.0;
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + 1.0;
    let tx = |x: f64| (x - min_x) * PX;
    let ty = |y: f64| (y - min_y) * PX;

    let mut shaded = vec![false; g.vertex_count()];
    if let Some(set) = highlight {
        for &b in set.vertices() {
            let dist = g
                .bfs_distances(b, Some(set.t() - 1))
                .expect("index checked");
            for (u, d) in dist.into_iter().enumerate() {
                shaded[u] |= d.is_some();
            }
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
        (max_x - min_x) * PX,
        (max_y - min_y) * PX,
        (max_x - min_x) * PX,
        (max_y - min_y) * PX
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="2">"#);
    for (i, j) in g.edges() {
        let (a, b) = (pts[i], pts[j]);
        if ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() > 1.0 + 1e-9 {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            tx(a.0),
            ty(a.1),
            tx(b.0),
            ty(b.1)
        );
    }
    let _ = writeln!(out, "</g>");
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (cx, cy) = (tx(x), ty(y));
        if shaded[i] {
            let _ = writeln!(
                out,
                r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.1}" fill="#f4b183" fill-opacity="0.6"/>"##,
                PX * 0.3
            );
        }
        if highlight.is_some_and(|s| s.contains(i)) {
            let _ = writeln!(
                out,
                r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.1}" fill="none" stroke="#c00000" stroke-width="3"/>"##,
                PX * 0.25
            );
        }
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.1}" fill="black"/>"#,
            PX * 0.1
        );
    }
    out.push_str("</svg>\n");
    out
}
