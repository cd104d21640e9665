//! Finite triangulated 2-complexes embedded in the plane (or in a flat
//! torus), regions of them, boundary cycles and Euler characteristics.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{orient, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TriId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for TriId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// Marker for a missing triangle slot in an [`Edge`].
pub const NO_TRIANGLE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub pos: Point,
    /// Lies on the truncation boundary of the window.
    pub on_frontier: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub id: TriId,
    pub vertices: [VertexId; 3],
}

/// Unordered edge, stored by vertex index, with up to two incident
/// triangles (by triangle index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub v: [u32; 2],
    pub tris: [u32; 2],
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        self.tris[1] == NO_TRIANGLE
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate triangle id {0}")]
    DuplicateTriangle(TriId),
    #[error("triangle {triangle} references unknown vertex {vertex}")]
    UnknownVertex { triangle: TriId, vertex: VertexId },
    #[error("unknown triangle {0}")]
    UnknownTriangle(TriId),
    #[error("triangle {0} repeats a vertex")]
    RepeatedVertex(TriId),
    #[error("triangles {0} and {1} have the same vertex set")]
    DuplicateVertexSet(TriId, TriId),
    #[error("triangle {0} is degenerate (zero area)")]
    Degenerate(TriId),
    #[error("triangle {0} is negatively oriented")]
    NegativeOrientation(TriId),
    #[error("edge {a}-{b} has {count} incident triangles")]
    NonManifoldEdge { a: VertexId, b: VertexId, count: usize },
    #[error("boundary is not a disjoint union of cycles at vertex {0}")]
    NonManifoldBoundary(VertexId),
    #[error("complex has {0} connected components, expected one")]
    Disconnected(usize),
    #[error("empty region")]
    EmptyRegion,
    #[error("degenerate cell in cover triangulation: {0}")]
    DegenerateCell(String),
    #[error("the disks leave part of the window uncovered near ({x}, {y})")]
    CoverGap { x: f64, y: f64 },
}

pub type Result<T, E = ComplexError> = std::result::Result<T, E>;

/// A finite triangulated 2-complex with planar vertex coordinates.
///
/// When `period` is set the coordinates live in the flat torus
/// `R^2 / (px Z x py Z)` and every triangle is read through its minimal
/// unwrapping, which lets closed tori be represented.
#[derive(Clone, Debug)]
pub struct TriangulatedComplex {
    vertices: Vec<Vertex>,
    triangles: Vec<[u32; 3]>,
    triangle_ids: Vec<TriId>,
    vertex_index: HashMap<VertexId, u32>,
    triangle_index: HashMap<TriId, u32>,
    edges: Vec<Edge>,
    edge_index: HashMap<u64, u32>,
    tri_edges: Vec<[u32; 3]>,
    vertex_tris: Vec<Vec<u32>>,
    period: Option<[f64; 2]>,
}

fn edge_key(a: u32, b: u32) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    ((lo as u64) << 32) | hi as u64
}

/// Validates the input and derives the edge table and adjacency.
pub fn build_complex(vertices: Vec<Vertex>, triangles: Vec<Triangle>) -> Result<TriangulatedComplex> {
    TriangulatedComplex::new(vertices, triangles, None)
}

impl TriangulatedComplex {
    pub fn new(
        vertices: Vec<Vertex>,
        triangles: Vec<Triangle>,
        period: Option<[f64; 2]>,
    ) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id, i as u32).is_some() {
                return Err(ComplexError::DuplicateVertex(v.id));
            }
        }
        let mut triangle_index = HashMap::with_capacity(triangles.len());
        let mut tris = Vec::with_capacity(triangles.len());
        let mut triangle_ids = Vec::with_capacity(triangles.len());
        let mut vertex_sets: HashMap<[u32; 3], TriId> = HashMap::with_capacity(triangles.len());
        for (i, t) in triangles.iter().enumerate() {
            if triangle_index.insert(t.id, i as u32).is_some() {
                return Err(ComplexError::DuplicateTriangle(t.id));
            }
            let mut idx = [0u32; 3];
            for k in 0..3 {
                idx[k] = *vertex_index.get(&t.vertices[k]).ok_or(ComplexError::UnknownVertex {
                    triangle: t.id,
                    vertex: t.vertices[k],
                })?;
            }
            if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                return Err(ComplexError::RepeatedVertex(t.id));
            }
            let mut sorted = idx;
            sorted.sort_unstable();
            if let Some(other) = vertex_sets.insert(sorted, t.id) {
                return Err(ComplexError::DuplicateVertexSet(other, t.id));
            }
            tris.push(idx);
            triangle_ids.push(t.id);
        }
        Self::from_indexed(vertices, tris, triangle_ids, vertex_index, triangle_index, period)
    }

    /// Construction from already-indexed data; skips the id checks that
    /// subdivision guarantees by construction.
    pub(crate) fn from_indexed(
        vertices: Vec<Vertex>,
        triangles: Vec<[u32; 3]>,
        triangle_ids: Vec<TriId>,
        vertex_index: HashMap<VertexId, u32>,
        triangle_index: HashMap<TriId, u32>,
        period: Option<[f64; 2]>,
    ) -> Result<Self> {
        let mut c = TriangulatedComplex {
            vertices,
            triangles,
            triangle_ids,
            vertex_index,
            triangle_index,
            edges: Vec::new(),
            edge_index: HashMap::new(),
            tri_edges: Vec::new(),
            vertex_tris: Vec::new(),
            period,
        };
        for t in 0..c.triangles.len() {
            match orient_sign(&c, t as u32) {
                1 => {}
                0 => return Err(ComplexError::Degenerate(c.triangle_ids[t])),
                _ => return Err(ComplexError::NegativeOrientation(c.triangle_ids[t])),
            }
        }
        c.derive_adjacency()?;
        Ok(c)
    }

    fn derive_adjacency(&mut self) -> Result<()> {
        let nt = self.triangles.len();
        let mut edges: Vec<Edge> = Vec::with_capacity(nt * 3 / 2 + 4);
        let mut edge_index: HashMap<u64, u32> = HashMap::with_capacity(nt * 3 / 2 + 4);
        let mut tri_edges = vec![[0u32; 3]; nt];
        let mut vertex_tris = vec![Vec::new(); self.vertices.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let a = tri[k];
                let b = tri[(k + 1) % 3];
                vertex_tris[a as usize].push(t as u32);
                let key = edge_key(a, b);
                let e = match edge_index.get(&key) {
                    Some(&e) => {
                        let edge = &mut edges[e as usize];
                        if edge.tris[1] != NO_TRIANGLE {
                            let count = 3;
                            return Err(ComplexError::NonManifoldEdge {
                                a: self.vertices[a as usize].id,
                                b: self.vertices[b as usize].id,
                                count,
                            });
                        }
                        edge.tris[1] = t as u32;
                        e
                    }
                    None => {
                        let e = edges.len() as u32;
                        let v = if a < b { [a, b] } else { [b, a] };
                        edges.push(Edge { v, tris: [t as u32, NO_TRIANGLE] });
                        edge_index.insert(key, e);
                        e
                    }
                };
                tri_edges[t][k] = e;
            }
        }
        self.edges = edges;
        self.edge_index = edge_index;
        self.tri_edges = tri_edges;
        self.vertex_tris = vertex_tris;
        Ok(())
    }

    pub fn period(&self) -> Option<[f64; 2]> {
        self.period
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, idx: u32) -> &Vertex {
        &self.vertices[idx as usize]
    }

    pub fn tri_vertices(&self, t: u32) -> [u32; 3] {
        self.triangles[t as usize]
    }

    pub fn tri_id(&self, t: u32) -> TriId {
        self.triangle_ids[t as usize]
    }

    /// Edge indices of triangle `t`, edge `k` joining corners `k` and `k+1`.
    pub fn tri_edges(&self, t: u32) -> [u32; 3] {
        self.tri_edges[t as usize]
    }

    pub fn vertex_triangles(&self, v: u32) -> &[u32] {
        &self.vertex_tris[v as usize]
    }

    pub fn vertex_idx(&self, id: VertexId) -> Option<u32> {
        self.vertex_index.get(&id).copied()
    }

    pub fn tri_idx(&self, id: TriId) -> Option<u32> {
        self.triangle_index.get(&id).copied()
    }

    pub fn edge_idx(&self, a: u32, b: u32) -> Option<u32> {
        self.edge_index.get(&edge_key(a, b)).copied()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn triangle_ids(&self) -> impl Iterator<Item = TriId> + '_ {
        self.triangle_ids.iter().copied()
    }

    pub fn triangles(&self) -> impl Iterator<Item = Triangle> + '_ {
        self.triangles.iter().zip(&self.triangle_ids).map(|(t, &id)| Triangle {
            id,
            vertices: t.map(|v| self.vertices[v as usize].id),
        })
    }

    pub fn triangle(&self, id: TriId) -> Option<[VertexId; 3]> {
        let t = self.tri_idx(id)?;
        Some(self.triangles[t as usize].map(|v| self.vertices[v as usize].id))
    }

    pub fn position(&self, id: VertexId) -> Option<Point> {
        self.vertex_idx(id).map(|i| self.vertices[i as usize].pos)
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().map(|v| v.id).max()
    }

    /// Neighbouring triangle across edge `k` of triangle `t`.
    pub fn neighbor(&self, t: u32, k: usize) -> Option<u32> {
        let e = &self.edges[self.tri_edges[t as usize][k] as usize];
        let other = if e.tris[0] == t { e.tris[1] } else { e.tris[0] };
        (other != NO_TRIANGLE).then_some(other)
    }

    /// Displacement from `a` to `b`, reduced to the minimal image on tori.
    pub fn displacement(&self, a: Point, b: Point) -> Point {
        let mut d = b.sub(a);
        if let Some([px, py]) = self.period {
            d.x -= px * (d.x / px).round();
            d.y -= py * (d.y / py).round();
        }
        d
    }

    /// Corner positions of triangle `t`, unwrapped around its first corner.
    pub fn tri_points(&self, t: u32) -> [Point; 3] {
        let [a, b, c] = self.triangles[t as usize];
        let pa = self.vertices[a as usize].pos;
        let pb = self.vertices[b as usize].pos;
        let pc = self.vertices[c as usize].pos;
        if self.period.is_none() {
            return [pa, pb, pc];
        }
        [pa, pa.add(self.displacement(pa, pb)), pa.add(self.displacement(pa, pc))]
    }

    pub fn tri_area(&self, t: u32) -> f64 {
        let [a, b, c] = self.tri_points(t);
        crate::geometry::signed_area(a, b, c)
    }

    /// Longest edge length over all triangles.
    pub fn max_triangle_diameter(&self) -> f64 {
        (0..self.triangles.len() as u32)
            .map(|t| {
                let [a, b, c] = self.tri_points(t);
                a.dist(b).max(b.dist(c)).max(c.dist(a))
            })
            .fold(0.0, f64::max)
    }

    /// Boundary edge with both endpoints flagged as window frontier.
    pub fn is_frontier_edge(&self, e: u32) -> bool {
        let edge = &self.edges[e as usize];
        edge.is_boundary()
            && self.vertices[edge.v[0] as usize].on_frontier
            && self.vertices[edge.v[1] as usize].on_frontier
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn all_triangles(&self) -> Region {
        Region::from_ids(self.triangle_ids.iter().copied())
    }

    /// Triangle-index mask of a region; ids not in the complex are ignored.
    pub fn mask(&self, region: &Region) -> Vec<bool> {
        let mut m = vec![false; self.triangles.len()];
        for id in &region.triangles {
            if let Some(t) = self.tri_idx(*id) {
                m[t as usize] = true;
            }
        }
        m
    }

    pub fn region_from_mask(&self, mask: &[bool]) -> Region {
        Region::from_ids(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(t, _)| self.triangle_ids[t]),
        )
    }

    /// The subcomplex spanned by the triangles of `region`, keeping ids,
    /// coordinates and frontier flags.
    pub fn subcomplex(&self, region: &Region) -> Result<TriangulatedComplex> {
        let mask = self.mask(region);
        let mut used = vec![false; self.vertices.len()];
        let mut tris = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            if mask[t] {
                for &v in tri {
                    used[v as usize] = true;
                }
                tris.push(Triangle {
                    id: self.triangle_ids[t],
                    vertices: tri.map(|v| self.vertices[v as usize].id),
                });
            }
        }
        let verts = self
            .vertices
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| *v)
            .collect();
        TriangulatedComplex::new(verts, tris, self.period)
    }

    /// Edge-connected components of the whole complex.
    pub fn is_connected(&self) -> bool {
        components(self, &self.all_triangles()).len() <= 1
    }
}

fn orient_sign(c: &TriangulatedComplex, t: u32) -> i8 {
    let [a, b, p] = c.tri_points(t);
    orient(a, b, p)
}

/// A set of triangles of a host complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub triangles: BTreeSet<TriId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_index: Option<u32>,
}

impl Region {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ids(ids: impl IntoIterator<Item = TriId>) -> Self {
        Region { triangles: ids.into_iter().collect(), leaf_index: None }
    }

    pub fn with_leaf(mut self, leaf: u32) -> Self {
        self.leaf_index = Some(leaf);
        self
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn contains(&self, t: TriId) -> bool {
        self.triangles.contains(&t)
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.triangles.is_subset(&other.triangles)
    }

    pub fn union(&self, other: &Region) -> Region {
        Region {
            triangles: self.triangles.union(&other.triangles).copied().collect(),
            leaf_index: self.leaf_index.or(other.leaf_index),
        }
    }

    pub fn difference(&self, other: &Region) -> Region {
        Region {
            triangles: self.triangles.difference(&other.triangles).copied().collect(),
            leaf_index: self.leaf_index,
        }
    }

    pub fn intersection(&self, other: &Region) -> Region {
        Region {
            triangles: self.triangles.intersection(&other.triangles).copied().collect(),
            leaf_index: self.leaf_index,
        }
    }

    pub fn min_id(&self) -> Option<TriId> {
        self.triangles.iter().next().copied()
    }
}

/// Edge-connected components of `region`, ordered by minimum triangle id.
pub fn components(host: &TriangulatedComplex, region: &Region) -> Vec<Region> {
    let mask = host.mask(region);
    let mut out: Vec<Region> = component_masks(host, &mask)
        .into_iter()
        .map(|tris| Region {
            triangles: tris.into_iter().map(|t| host.tri_id(t)).collect(),
            leaf_index: region.leaf_index,
        })
        .collect();
    out.sort_by_key(|r| r.min_id());
    out
}

/// Components of a triangle mask, as lists of triangle indices.
pub(crate) fn component_masks(host: &TriangulatedComplex, mask: &[bool]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; mask.len()];
    let mut out = Vec::new();
    for start in 0..mask.len() {
        if !mask[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start as u32];
        let mut stack = vec![start as u32];
        while let Some(t) = stack.pop() {
            for k in 0..3 {
                if let Some(n) = host.neighbor(t, k) {
                    if mask[n as usize] && !seen[n as usize] {
                        seen[n as usize] = true;
                        comp.push(n);
                        stack.push(n);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// An oriented closed boundary walk, as consecutive directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub edges: Vec<(VertexId, VertexId)>,
}

impl BoundaryCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.edges.iter().map(|e| e.0)
    }
}

/// Directed boundary edges of a triangle mask (vertex indices), oriented so
/// that the region lies to the left.
pub(crate) fn boundary_half_edges(host: &TriangulatedComplex, mask: &[bool]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for t in 0..mask.len() {
        if !mask[t] {
            continue;
        }
        let tri = host.tri_vertices(t as u32);
        for k in 0..3 {
            let inside = host.neighbor(t as u32, k).is_some_and(|n| mask[n as usize]);
            if !inside {
                out.push((tri[k], tri[(k + 1) % 3]));
            }
        }
    }
    out
}

/// Oriented cycles of the edges incident to exactly one triangle of `region`.
pub fn boundary(host: &TriangulatedComplex, region: &Region) -> Result<Vec<BoundaryCycle>> {
    if region.is_empty() {
        return Err(ComplexError::EmptyRegion);
    }
    boundary_of_mask(host, &host.mask(region))
}

pub(crate) fn boundary_of_mask(host: &TriangulatedComplex, mask: &[bool]) -> Result<Vec<BoundaryCycle>> {
    let half = boundary_half_edges(host, mask);
    let mut next: BTreeMap<u32, u32> = BTreeMap::new();
    for &(a, b) in &half {
        if next.insert(a, b).is_some() {
            return Err(ComplexError::NonManifoldBoundary(host.vertex(a).id));
        }
    }
    // Start each cycle at its smallest vertex id.
    let mut order: Vec<u32> = next.keys().copied().collect();
    order.sort_by_key(|&v| host.vertex(v).id);
    let mut used: BTreeSet<u32> = BTreeSet::new();
    let mut cycles = Vec::new();
    for start in order {
        if used.contains(&start) {
            continue;
        }
        let mut edges = Vec::new();
        let mut cur = start;
        loop {
            used.insert(cur);
            let nxt = *next
                .get(&cur)
                .ok_or(ComplexError::NonManifoldBoundary(host.vertex(cur).id))?;
            edges.push((host.vertex(cur).id, host.vertex(nxt).id));
            cur = nxt;
            if cur == start {
                break;
            }
            if used.contains(&cur) {
                return Err(ComplexError::NonManifoldBoundary(host.vertex(cur).id));
            }
        }
        cycles.push(BoundaryCycle { edges });
    }
    Ok(cycles)
}

/// `V - E + F` of the subcomplex spanned by a region.
pub fn euler_characteristic(host: &TriangulatedComplex, region: &Region) -> i64 {
    euler_of_mask(host, &host.mask(region))
}

pub(crate) fn euler_of_mask(host: &TriangulatedComplex, mask: &[bool]) -> i64 {
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut faces = 0i64;
    for t in 0..mask.len() {
        if mask[t] {
            faces += 1;
            for v in host.tri_vertices(t as u32) {
                verts.insert(v);
            }
            for e in host.tri_edges(t as u32) {
                edges.insert(e);
            }
        }
    }
    verts.len() as i64 - edges.len() as i64 + faces
}

/// Disk certificate: connected, `chi = 1` and a single boundary cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskCertificate {
    pub components: usize,
    pub euler: i64,
    pub boundary_cycles: Option<usize>,
}

impl DiskCertificate {
    pub fn is_disk(&self) -> bool {
        self.components == 1 && self.euler == 1 && self.boundary_cycles == Some(1)
    }
}

pub fn disk_certificate(host: &TriangulatedComplex, region: &Region) -> DiskCertificate {
    let mask = host.mask(region);
    disk_certificate_of_mask(host, &mask)
}

pub(crate) fn disk_certificate_of_mask(host: &TriangulatedComplex, mask: &[bool]) -> DiskCertificate {
    DiskCertificate {
        components: component_masks(host, mask).len(),
        euler: euler_of_mask(host, mask),
        boundary_cycles: boundary_of_mask(host, mask).ok().map(|c| c.len()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Disk,
    Annulus,
    Torus,
    Other,
}

/// Classifies a connected complex by Euler characteristic and the number
/// of boundary cycles. `closed` asserts the complex has no boundary; a
/// bounded complex claimed closed classifies as `Other`.
pub fn classify_leaf(c: &TriangulatedComplex, closed: bool) -> Result<LeafKind> {
    let comps = components(c, &c.all_triangles()).len();
    if comps != 1 {
        return Err(ComplexError::Disconnected(comps));
    }
    let chi = c.euler_characteristic();
    let cycles = boundary_of_mask(c, &vec![true; c.num_triangles()])?.len();
    if closed && cycles > 0 {
        return Ok(LeafKind::Other);
    }
    Ok(match (chi, cycles) {
        (1, 1) => LeafKind::Disk,
        (0, 2) => LeafKind::Annulus,
        (0, 0) => LeafKind::Torus,
        _ => LeafKind::Other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid_disk, grid_torus, single_triangle};

    fn v(id: u32, x: f64, y: f64) -> Vertex {
        Vertex { id: VertexId(id), pos: Point::new(x, y), on_frontier: false }
    }

    fn t(id: u32, a: u32, b: u32, c: u32) -> Triangle {
        Triangle { id: TriId(id), vertices: [VertexId(a), VertexId(b), VertexId(c)] }
    }

    #[test]
    fn grid_g1_counts() {
        let g = grid_disk(1);
        assert_eq!(g.num_triangles(), 8);
        assert_eq!(g.num_edges(), 16);
        assert_eq!(g.num_vertices(), 9);
    }

    #[test]
    fn single_triangle_counts() {
        let c = single_triangle();
        assert_eq!(c.num_triangles(), 1);
        assert_eq!(c.num_edges(), 3);
    }

    #[test]
    fn clockwise_triangle_is_rejected() {
        let err = build_complex(
            vec![v(0, 0.0, 0.0), v(1, 1.0, 0.0), v(2, 0.0, 1.0)],
            vec![t(0, 0, 2, 1)],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NegativeOrientation(TriId(0)));
    }

    #[test]
    fn construction_errors() {
        let verts = vec![v(0, 0.0, 0.0), v(1, 1.0, 0.0), v(2, 0.0, 1.0), v(3, 2.0, 0.0)];
        assert_eq!(
            build_complex(vec![v(0, 0.0, 0.0), v(0, 1.0, 0.0)], vec![]).unwrap_err(),
            ComplexError::DuplicateVertex(VertexId(0))
        );
        assert_eq!(
            build_complex(verts.clone(), vec![t(0, 0, 1, 3)]).unwrap_err(),
            ComplexError::Degenerate(TriId(0))
        );
        assert_eq!(
            build_complex(verts.clone(), vec![t(0, 0, 1, 2), t(0, 1, 3, 2)]).unwrap_err(),
            ComplexError::DuplicateTriangle(TriId(0))
        );
        assert_eq!(
            build_complex(verts.clone(), vec![t(0, 0, 1, 2), t(1, 1, 2, 0)]).unwrap_err(),
            ComplexError::DuplicateVertexSet(TriId(0), TriId(1))
        );
        assert!(matches!(
            build_complex(verts, vec![t(0, 0, 1, 9)]).unwrap_err(),
            ComplexError::UnknownVertex { .. }
        ));
    }

    #[test]
    fn edge_with_three_triangles_is_rejected() {
        // Three fans glued along the edge 0-1 (overlapping, but oriented).
        let verts = vec![
            v(0, 0.0, 0.0),
            v(1, 1.0, 0.0),
            v(2, 0.5, 1.0),
            v(3, 0.5, 2.0),
            v(4, 0.5, -1.0),
        ];
        let err = build_complex(verts, vec![t(0, 0, 1, 2), t(1, 0, 1, 3), t(2, 1, 0, 4)]).unwrap_err();
        assert!(matches!(err, ComplexError::NonManifoldEdge { .. }));
    }

    #[test]
    fn boundary_cycles() {
        let g1 = grid_disk(1);
        let cycles = boundary(&g1, &g1.all_triangles()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 8);

        let g2 = grid_disk(2);
        let inner = crate::generators::grid_block(&g2, 1);
        let annulus = g2.all_triangles().difference(&inner);
        let mut lens: Vec<_> = boundary(&g2, &annulus).unwrap().iter().map(|c| c.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![8, 16]);

        let s = single_triangle();
        assert_eq!(boundary(&s, &s.all_triangles()).unwrap()[0].len(), 3);
        assert_eq!(boundary(&s, &Region::new()).unwrap_err(), ComplexError::EmptyRegion);
    }

    #[test]
    fn pinched_region_boundary_is_non_manifold() {
        // Two triangles of G_1 sharing only the centre vertex.
        let g1 = grid_disk(1);
        let c = g1.vertex_idx(crate::generators::grid_vertex_id(1, 0, 0)).unwrap();
        let fan = g1.vertex_triangles(c);
        let mut pick = None;
        'outer: for &a in fan {
            for &b in fan {
                let shared = g1
                    .tri_vertices(a)
                    .iter()
                    .filter(|x| g1.tri_vertices(b).contains(x))
                    .count();
                if shared == 1 {
                    pick = Some((a, b));
                    break 'outer;
                }
            }
        }
        let (a, b) = pick.unwrap();
        let r = Region::from_ids([g1.tri_id(a), g1.tri_id(b)]);
        assert!(matches!(boundary(&g1, &r), Err(ComplexError::NonManifoldBoundary(_))));
        assert!(!disk_certificate(&g1, &r).is_disk());
    }

    #[test]
    fn leaf_classification() {
        let g2 = grid_disk(2);
        assert_eq!(classify_leaf(&g2, false).unwrap(), LeafKind::Disk);
        let annulus = g2.all_triangles().difference(&crate::generators::grid_block(&g2, 1));
        let ann = g2.subcomplex(&annulus).unwrap();
        assert_eq!(classify_leaf(&ann, false).unwrap(), LeafKind::Annulus);
        let torus = grid_torus(3);
        assert_eq!(torus.num_triangles(), 18);
        assert_eq!(classify_leaf(&torus, true).unwrap(), LeafKind::Torus);
        assert_eq!(classify_leaf(&g2, true).unwrap(), LeafKind::Other);
    }

    #[test]
    fn disconnected_leaf_is_an_error() {
        let g2 = grid_disk(2);
        let corners: Vec<TriId> = [0u32, g2.num_triangles() as u32 - 1]
            .iter()
            .map(|&t| g2.tri_id(t))
            .collect();
        let sub = g2.subcomplex(&Region::from_ids(corners)).unwrap();
        assert_eq!(classify_leaf(&sub, false).unwrap_err(), ComplexError::Disconnected(2));
    }

    #[test]
    fn components_are_sorted_by_min_id() {
        let g2 = grid_disk(2);
        let comps = components(&g2, &g2.all_triangles());
        assert_eq!(comps.len(), 1);
        assert_eq!(disk_certificate(&g2, &comps[0]), DiskCertificate {
            components: 1,
            euler: 1,
            boundary_cycles: Some(1)
        });
    }
}
