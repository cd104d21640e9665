//! Deterministic SVG export of regions, envelopes, developments and vertex
//! value overlays. Elements are emitted in triangle-index order and numbers
//! with fixed precision, so equal inputs give equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::complex::{Region, TriId, TriangulatedComplex, VertexId};
use crate::covering::Development;
use crate::envelope::EnvelopeResult;
use crate::geometry::Point;

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
    "#86bcb6", "#d37295",
];
const MARGIN: f64 = 8.0;

struct Canvas {
    scale: f64,
    polys: Vec<(Vec<Point>, String)>,
    styles: BTreeMap<String, String>,
    grid: bool,
}

impl Canvas {
    fn new(scale: f64) -> Self {
        Canvas { scale, polys: Vec::new(), styles: BTreeMap::new(), grid: false }
    }

    fn style(&mut self, class: &str, css: &str) {
        self.styles.entry(class.to_string()).or_insert_with(|| css.to_string());
    }

    fn finish(self) -> String {
        let pts = self.polys.iter().flat_map(|(p, _)| p.iter());
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let mut out = String::new();
        if self.polys.is_empty() {
            out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"></svg>\n");
            return out;
        }
        let s = self.scale;
        let w = (x1 - x0) * s + 2.0 * MARGIN;
        let h = (y1 - y0) * s + 2.0 * MARGIN;
        let map = |p: Point| (MARGIN + (p.x - x0) * s, MARGIN + (y1 - p.y) * s);
        writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">").unwrap();
        out.push_str("<style>\n");
        for (class, css) in &self.styles {
            writeln!(out, ".{class} {{ {css} }}").unwrap();
        }
        if self.grid {
            out.push_str(".lattice { stroke: #888; stroke-width: 0.5; stroke-dasharray: 2 2; fill: none; }\n");
        }
        out.push_str("</style>\n");
        for (poly, class) in &self.polys {
            out.push_str("<polygon class=\"");
            out.push_str(class);
            out.push_str("\" points=\"");
            for (k, p) in poly.iter().enumerate() {
                let (x, y) = map(*p);
                if k > 0 {
                    out.push(' ');
                }
                write!(out, "{x:.3},{y:.3}").unwrap();
            }
            out.push_str("\"/>\n");
        }
        if self.grid {
            for i in x0.ceil() as i64..=x1.floor() as i64 {
                let (a, b) = (map(Point::new(i as f64, y0)), map(Point::new(i as f64, y1)));
                writeln!(out, "<line class=\"lattice\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>", a.0, a.1, b.0, b.1).unwrap();
            }
            for j in y0.ceil() as i64..=y1.floor() as i64 {
                let (a, b) = (map(Point::new(x0, j as f64)), map(Point::new(x1, j as f64)));
                writeln!(out, "<line class=\"lattice\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>", a.0, a.1, b.0, b.1).unwrap();
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn fill(color: &str) -> String {
    format!("fill: {color}; stroke: #222; stroke-width: 0.4;")
}

/// Triangles of `region` (all of `c` when `None`), coloured by `classes`
/// when given.
pub fn region_svg(
    c: &TriangulatedComplex,
    region: Option<&Region>,
    classes: Option<&BTreeMap<TriId, u32>>,
    scale: f64,
) -> String {
    let mut cv = Canvas::new(scale);
    for t in 0..c.num_triangles() as u32 {
        let id = c.tri_id(t);
        if region.is_some_and(|r| !r.contains(id)) {
            continue;
        }
        let class = match classes.and_then(|m| m.get(&id)) {
            Some(&k) => {
                let name = format!("c{}", k as usize % PALETTE.len());
                cv.style(&name, &fill(PALETTE[k as usize % PALETTE.len()]));
                name
            }
            None => {
                cv.style("tri", &fill("#dde5ee"));
                "tri".to_string()
            }
        };
        cv.polys.push((c.tri_points(t).to_vec(), class));
    }
    cv.finish()
}

/// Input region, filled holes and the frontier-connected complement, each
/// in its own style.
pub fn envelope_svg(c: &TriangulatedComplex, omega: &Region, env: &EnvelopeResult, scale: f64) -> String {
    let mut cv = Canvas::new(scale);
    for t in 0..c.num_triangles() as u32 {
        let id = c.tri_id(t);
        let class = if omega.contains(id) {
            cv.style("omega", &fill("#4e79a7"));
            "omega"
        } else if env.filled.contains(id) {
            cv.style("filled", &fill("#f28e2b"));
            "filled"
        } else if env.unbounded.contains(id) {
            cv.style("unbounded", &fill("#eeeeee"));
            "unbounded"
        } else {
            continue;
        };
        cv.polys.push((c.tri_points(t).to_vec(), class.to_string()));
    }
    cv.finish()
}

/// Developed image of the domain of `d` over the unit lattice.
pub fn development_svg(c: &TriangulatedComplex, d: &Development, scale: f64) -> String {
    let mut cv = Canvas::new(scale);
    cv.grid = true;
    cv.style("dev", "fill: #a0cbe8; fill-opacity: 0.6; stroke: #1f3b57; stroke-width: 0.3;");
    for t in 0..c.num_triangles() as u32 {
        let tri = c.tri_id(t);
        if !d.domain.contains(tri) {
            continue;
        }
        let vs = c.triangle(tri).unwrap();
        let pts: Option<Vec<Point>> = vs.iter().map(|v| d.coords.get(v).copied()).collect();
        if let Some(pts) = pts {
            cv.polys.push((pts, "dev".to_string()));
        }
    }
    cv.finish()
}

/// Triangles shaded by the mean absolute vertex value, on a ten-step ramp
/// scaled to the largest value.
pub fn heat_svg(c: &TriangulatedComplex, values: &BTreeMap<VertexId, f64>, scale: f64) -> String {
    let mut cv = Canvas::new(scale);
    let top = values.values().fold(0.0f64, |m, v| m.max(v.abs()));
    for t in 0..c.num_triangles() as u32 {
        let vs = c.triangle(c.tri_id(t)).unwrap();
        let mean = vs.iter().map(|v| values.get(v).map_or(0.0, |x| x.abs())).sum::<f64>() / 3.0;
        let step = if top > 0.0 { ((mean / top) * 9.0).round() as u32 } else { 0 };
        let name = format!("h{step}");
        let shade = 255 - (step * 22) as u8;
        cv.style(&name, &format!("fill: rgb(255,{shade},{shade}); stroke: #999; stroke-width: 0.2;"));
        cv.polys.push((c.tri_points(t).to_vec(), name));
    }
    cv.finish()
}
