//! Triangulations of a flat rectangular window from a cover by round
//! disks: centres of overlapping disks are joined by segments, and every
//! cell of the resulting arrangement is coned from its centroid.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{ComplexError, TriId, Triangle, TriangulatedComplex, Vertex, VertexId};
use crate::geometry::{line_intersection, orient, point_segment_distance, polygon_area, polygon_centroid, Point};

const MERGE_TOL: f64 = 1e-9;

/// Axis-parallel window `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 - MERGE_TOL && p.x <= self.x1 + MERGE_TOL && p.y >= self.y0 - MERGE_TOL && p.y <= self.y1 + MERGE_TOL
    }

    fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x0, self.y0),
            Point::new(self.x1, self.y0),
            Point::new(self.x1, self.y1),
            Point::new(self.x0, self.y1),
        ]
    }

    fn snap(&self, p: Point) -> Point {
        let s = |v: f64, lo: f64, hi: f64| {
            if (v - lo).abs() < MERGE_TOL {
                lo
            } else if (v - hi).abs() < MERGE_TOL {
                hi
            } else {
                v
            }
        };
        Point::new(s(p.x, self.x0, self.x1), s(p.y, self.y0, self.y1))
    }

    fn on_boundary(&self, p: Point) -> bool {
        (p.x - self.x0).abs() < MERGE_TOL
            || (p.x - self.x1).abs() < MERGE_TOL
            || (p.y - self.y0).abs() < MERGE_TOL
            || (p.y - self.y1).abs() < MERGE_TOL
    }
}

fn circle_circle(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<Point> {
    let d = c1.dist(c2);
    if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let u = c2.sub(c1).scale(1.0 / d);
    let m = c1.add(u.scale(a));
    let n = Point::new(-u.y, u.x);
    vec![m.add(n.scale(h)), m.sub(n.scale(h))]
}

fn circle_segment(c: Point, r: f64, a: Point, b: Point) -> Vec<Point> {
    let d = b.sub(a);
    let f = a.sub(c);
    let (qa, qb, qc) = (d.dot(d), 2.0 * f.dot(d), f.dot(f) - r * r);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 || qa == 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    [(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)]
        .into_iter()
        .filter(|t| (0.0..=1.0).contains(t))
        .map(|t| a.add(d.scale(t)))
        .collect()
}

/// A point of the window not covered by the open disks, if any. Any
/// uncovered region has a corner at a window corner, a circle-circle
/// intersection or a circle-edge intersection, so those are the only
/// candidates.
pub fn cover_gap(centers: &[Point], radii: &[f64], window: Rect) -> Option<Point> {
    let corners = window.corners();
    let mut candidates: Vec<(Point, Vec<usize>)> = corners.iter().map(|&p| (p, Vec::new())).collect();
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            for p in circle_circle(centers[i], radii[i], centers[j], radii[j]) {
                candidates.push((p, vec![i, j]));
            }
        }
        for k in 0..4 {
            for p in circle_segment(centers[i], radii[i], corners[k], corners[(k + 1) % 4]) {
                candidates.push((p, vec![i]));
            }
        }
    }
    candidates.into_iter().find_map(|(p, own)| {
        let covered = (0..centers.len()).any(|i| !own.contains(&i) && centers[i].dist(p) < radii[i] - MERGE_TOL);
        (window.contains(p) && !covered).then_some(p)
    })
}

/// Clips segment `[a, b]` to the window.
fn clip(a: Point, b: Point, w: Rect) -> Option<(Point, Point)> {
    let d = b.sub(a);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [(-d.x, a.x - w.x0), (d.x, w.x1 - a.x), (-d.y, a.y - w.y0), (d.y, w.y1 - a.y)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    (t0 + MERGE_TOL < t1).then(|| (w.snap(a.add(d.scale(t0))), w.snap(a.add(d.scale(t1)))))
}

fn closest_on_segment(p: Point, a: Point, b: Point) -> Point {
    let d = b.sub(a);
    a.add(d.scale((p.sub(a).dot(d) / d.dot(d)).clamp(0.0, 1.0)))
}

fn meets((a, b): (Point, Point), (c, d): (Point, Point)) -> bool {
    let near = |p: Point, (x, y): (Point, Point)| point_segment_distance(p, x, y) < MERGE_TOL;
    near(a, (c, d))
        || near(b, (c, d))
        || near(c, (a, b))
        || near(d, (a, b))
        || line_intersection(a, b, c, d).is_some_and(|p| near(p, (a, b)) && near(p, (c, d)))
}

/// Points strictly left of every directed edge of a counter-clockwise
/// polygon: the bounding box clipped by each edge's half-plane. Returns the
/// centroid of that kernel when it has positive area.
fn kernel_point(poly: &[Point]) -> Option<Point> {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in poly {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let mut k = vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)];
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let side = |p: Point| b.sub(a).cross(p.sub(a));
        let mut next = Vec::with_capacity(k.len() + 1);
        for j in 0..k.len() {
            let (p, q) = (k[j], k[(j + 1) % k.len()]);
            let (sp, sq) = (side(p), side(q));
            if sp >= 0.0 {
                next.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                next.push(p.add(q.sub(p).scale(sp / (sp - sq))));
            }
        }
        k = next;
        if k.len() < 3 {
            return None;
        }
    }
    (polygon_area(&k) > MERGE_TOL).then(|| polygon_centroid(&k))
}

/// Triangulates the window from a disk cover. Each cell is coned from its
/// centroid, or from the centroid of its kernel when the cell is not
/// star-shaped about its centroid.
pub fn triangulate_from_cover(centers: &[Point], radii: &[f64], window: Rect) -> Result<TriangulatedComplex, ComplexError> {
    if centers.len() != radii.len() || radii.iter().any(|&r| !(r > 0.0)) {
        return Err(ComplexError::DegenerateCell("radii must be positive, one per centre".into()));
    }
    if !(window.x0 < window.x1 && window.y0 < window.y1) {
        return Err(ComplexError::DegenerateCell("empty window".into()));
    }
    if let Some(p) = cover_gap(centers, radii, window) {
        return Err(ComplexError::CoverGap { x: p.x, y: p.y });
    }
    let corners = window.corners();
    let sides: Vec<(Point, Point)> = (0..4).map(|k| (corners[k], corners[(k + 1) % 4])).collect();
    let mut segments = sides.clone();
    let mut ends: Vec<Option<(usize, usize)>> = vec![None; 4];
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            if centers[i].dist(centers[j]) < radii[i] + radii[j] {
                if let Some(s) = clip(centers[i], centers[j], window) {
                    segments.push(s);
                    ends.push(Some((i, j)));
                }
            }
        }
    }
    // Clusters of segments away from the window boundary are tied to it
    // from each of their centres, across every side the disk meets.
    let mut parent: Vec<usize> = (0..segments.len()).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if meets(segments[i], segments[j]) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut tied: BTreeSet<usize> = BTreeSet::new();
    for k in 4..segments.len() {
        if root(&mut parent, k) != root(&mut parent, 0) {
            let (i, j) = ends[k].unwrap();
            tied.extend([i, j]);
        }
    }
    for i in tied {
        for &(a, b) in &sides {
            let foot = closest_on_segment(centers[i], a, b);
            if foot.dist(centers[i]) < radii[i] {
                if let Some(s) = clip(centers[i], foot, window) {
                    segments.push(s);
                }
            }
        }
    }

    // Arrangement vertices: segment endpoints and crossings.
    let mut points: Vec<Point> = Vec::new();
    let intern = |p: Point, points: &mut Vec<Point>| -> usize {
        match points.iter().position(|q| q.dist(p) < MERGE_TOL) {
            Some(i) => i,
            None => {
                points.push(p);
                points.len() - 1
            }
        }
    };
    for &(a, b) in &segments {
        intern(a, &mut points);
        intern(b, &mut points);
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (a, b) = segments[i];
            let (c, d) = segments[j];
            if let Some(p) = line_intersection(a, b, c, d) {
                if point_segment_distance(p, a, b) < MERGE_TOL && point_segment_distance(p, c, d) < MERGE_TOL {
                    intern(p, &mut points);
                }
            }
        }
    }
    // Deterministic vertex order.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| (points[i].x, points[i].y).partial_cmp(&(points[j].x, points[j].y)).unwrap());
    let points: Vec<Point> = order.iter().map(|&i| points[i]).collect();

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b) in &segments {
        let d = b.sub(a);
        let len2 = d.dot(d);
        let mut on: Vec<(f64, usize)> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| point_segment_distance(**p, a, b) < MERGE_TOL)
            .map(|(i, p)| (p.sub(a).dot(d) / len2, i))
            .collect();
        on.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for w in on.windows(2) {
            let (u, v) = (w[0].1, w[1].1);
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }

    // Half-edge faces: at each vertex sort neighbours by angle; the face
    // to the left of u -> v continues with v -> (neighbour of v just before
    // u in counter-clockwise order).
    let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in &edges {
        nbrs.entry(u).or_default().push(v);
        nbrs.entry(v).or_default().push(u);
    }
    for (&u, list) in nbrs.iter_mut() {
        let pu = points[u];
        list.sort_by(|&a, &b| {
            let (da, db) = (points[a].sub(pu), points[b].sub(pu));
            da.y.atan2(da.x).partial_cmp(&db.y.atan2(db.x)).unwrap()
        });
    }
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for &(a, b) in &edges {
        for (u0, v0) in [(a, b), (b, a)] {
            if used.contains(&(u0, v0)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                used.insert((u, v));
                face.push(u);
                let list = &nbrs[&v];
                let k = list.iter().position(|&x| x == u).unwrap();
                let w = list[(k + list.len() - 1) % list.len()];
                u = v;
                v = w;
                if (u, v) == (u0, v0) {
                    break;
                }
            }
            faces.push(face);
        }
    }

    let mut vertices: Vec<Vertex> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| Vertex { id: VertexId(i as u32), pos: p, on_frontier: window.on_boundary(p) })
        .collect();
    let mut triangles = Vec::new();
    for face in faces {
        let poly: Vec<Point> = face.iter().map(|&i| points[i]).collect();
        if polygon_area(&poly) <= 0.0 {
            continue;
        }
        let distinct: BTreeSet<usize> = face.iter().copied().collect();
        if distinct.len() != face.len() {
            return Err(ComplexError::DegenerateCell(format!("cell through {:?} is not simple", poly[0])));
        }
        let sees_all = |g: Point| (0..face.len()).all(|k| orient(poly[k], poly[(k + 1) % poly.len()], g) > 0);
        let g = Some(polygon_centroid(&poly))
            .filter(|&g| sees_all(g))
            .or_else(|| kernel_point(&poly).filter(|&g| sees_all(g)))
            .ok_or_else(|| ComplexError::DegenerateCell(format!("cell through {:?} is not star-shaped", poly[0])))?;
        let gid = VertexId(vertices.len() as u32);
        vertices.push(Vertex { id: gid, pos: g, on_frontier: false });
        for k in 0..face.len() {
            let (a, b) = (face[k], face[(k + 1) % face.len()]);
            triangles.push(Triangle {
                id: TriId(triangles.len() as u32),
                vertices: [VertexId(a as u32), VertexId(b as u32), gid],
            });
        }
    }
    TriangulatedComplex::new(vertices, triangles, None)
}
