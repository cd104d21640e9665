//! Iterated barycentric subdivision with carrier bookkeeping, stars of
//! point/vertex/edge sets, and `n`-retractions of regions.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::complex::{Region, TriId, TriangulatedComplex, Vertex, VertexId, NO_TRIANGLE};
use crate::geometry::{in_closed_triangle, Point};

/// The smallest simplex of the base complex containing a subdivision
/// vertex, as a sorted set of one to three base vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Carrier {
    verts: [u32; 3],
    len: u8,
}

impl Carrier {
    pub fn vertex(v: u32) -> Self {
        Carrier { verts: [v, u32::MAX, u32::MAX], len: 1 }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn union(&self, other: &Carrier) -> Carrier {
        let mut out = [u32::MAX; 3];
        let mut n = 0;
        let (a, b) = (self.vertices(), other.vertices());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            assert!(n < 3, "carrier of a subdivision vertex spans more than a triangle");
            out[n] = next;
            n += 1;
        }
        Carrier { verts: out, len: n as u8 }
    }

    pub fn is_subset_of(&self, other: &[u32]) -> bool {
        self.vertices().iter().all(|v| other.contains(v))
    }
}

/// `sd_n` of a base complex, remembering for every vertex its carrier in
/// the base and for every triangle the base triangle containing it.
///
/// Vertices of coarser levels keep their ids and indices; new vertices are
/// appended, edge midpoints first (in edge order) then barycenters. The
/// six children of triangle `t` get ids `6 t + j`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: TriangulatedComplex,
    pub depth: u32,
    carriers: Vec<Carrier>,
    base_tri: Vec<TriId>,
    /// For vertices created by the last refinement: the vertices of the
    /// previous level they average, padded with `NO_TRIANGLE`.
    local_parents: Vec<[u32; 3]>,
    previous_vertices: usize,
}

impl Subdivision {
    pub fn identity(base: &TriangulatedComplex) -> Self {
        Subdivision {
            complex: base.clone(),
            depth: 0,
            carriers: (0..base.num_vertices() as u32).map(Carrier::vertex).collect(),
            base_tri: base.triangle_ids().collect(),
            local_parents: Vec::new(),
            previous_vertices: base.num_vertices(),
        }
    }

    pub fn new(base: &TriangulatedComplex, n: u32) -> Self {
        let mut s = Self::identity(base);
        for _ in 0..n {
            s = s.refine();
        }
        s
    }

    /// One further barycentric subdivision.
    pub fn refine(&self) -> Self {
        let (complex, parents) = refine_once(&self.complex);
        let mut carriers = self.carriers.clone();
        carriers.reserve(parents.len());
        for p in &parents {
            let mut c = carriers[p[0] as usize];
            for &q in &p[1..] {
                if q != NO_TRIANGLE {
                    c = c.union(&carriers[q as usize]);
                }
            }
            carriers.push(c);
        }
        let mut base_tri = Vec::with_capacity(self.base_tri.len() * 6);
        for &b in &self.base_tri {
            for _ in 0..6 {
                base_tri.push(b);
            }
        }
        Subdivision {
            complex,
            depth: self.depth + 1,
            carriers,
            base_tri,
            local_parents: parents,
            previous_vertices: self.complex.num_vertices(),
        }
    }

    pub fn carrier(&self, v: u32) -> Carrier {
        self.carriers[v as usize]
    }

    /// Base triangle containing subdivision triangle `t` (by index).
    pub fn base_triangle(&self, t: u32) -> TriId {
        self.base_tri[t as usize]
    }

    /// Vertex count of the level before the last refinement.
    pub fn previous_vertices(&self) -> usize {
        self.previous_vertices
    }

    /// Previous-level vertices averaged by vertex `v`, if `v` was created by
    /// the last refinement.
    pub fn local_parents(&self, v: u32) -> Option<&[u32]> {
        let i = (v as usize).checked_sub(self.previous_vertices)?;
        let p = &self.local_parents[i];
        let n = p.iter().take_while(|&&x| x != NO_TRIANGLE).count();
        Some(&p[..n])
    }
}

/// Ids of the six children of a triangle id under one subdivision.
pub fn child_ids(t: TriId) -> [TriId; 6] {
    let b = t.0.checked_mul(6).expect("triangle id overflow under subdivision");
    [0, 1, 2, 3, 4, 5].map(|j| TriId(b + j))
}

/// Ids of all descendants of a triangle id after `n` subdivisions.
pub fn descendant_ids(t: TriId, n: u32) -> impl Iterator<Item = TriId> {
    let k = 6u32.pow(n);
    let b = t.0.checked_mul(k).expect("triangle id overflow under subdivision");
    (b..b + k).map(TriId)
}

/// Regions of `sd_n` made of the descendants of a base region.
pub fn lift_region(region: &Region, n: u32) -> Region {
    Region {
        triangles: region.triangles.iter().flat_map(|&t| descendant_ids(t, n)).collect(),
        leaf_index: region.leaf_index,
    }
}

fn refine_once(c: &TriangulatedComplex) -> (TriangulatedComplex, Vec<[u32; 3]>) {
    let nv = c.num_vertices() as u32;
    let ne = c.num_edges() as u32;
    let nt = c.num_triangles() as u32;
    let next_id = c.max_vertex_id().map_or(0, |v| v.0 + 1);
    let mut vertices: Vec<Vertex> = c.vertices().to_vec();
    vertices.reserve((ne + nt) as usize);
    let mut parents = Vec::with_capacity((ne + nt) as usize);
    for (e, edge) in c.edges().iter().enumerate() {
        let pa = c.vertex(edge.v[0]).pos;
        let pb = c.vertex(edge.v[1]).pos;
        vertices.push(Vertex {
            id: VertexId(next_id + e as u32),
            pos: pa.add(c.displacement(pa, pb).scale(0.5)),
            on_frontier: c.is_frontier_edge(e as u32),
        });
        parents.push([edge.v[0], edge.v[1], NO_TRIANGLE]);
    }
    for t in 0..nt {
        let [a, b, p] = c.tri_points(t);
        vertices.push(Vertex {
            id: VertexId(next_id + ne + t),
            pos: Point::centroid3(a, b, p),
            on_frontier: false,
        });
        parents.push(c.tri_vertices(t));
    }
    let mut tris = Vec::with_capacity(6 * nt as usize);
    let mut ids = Vec::with_capacity(6 * nt as usize);
    for t in 0..nt {
        let [a, b, p] = c.tri_vertices(t);
        let [e0, e1, e2] = c.tri_edges(t);
        let (m0, m1, m2) = (nv + e0, nv + e1, nv + e2);
        let g = nv + ne + t;
        let children = [[a, m0, g], [m0, b, g], [b, m1, g], [m1, p, g], [p, m2, g], [m2, a, g]];
        for (j, ch) in children.into_iter().enumerate() {
            tris.push(ch);
            ids.push(child_ids(c.tri_id(t))[j]);
        }
    }
    let vertex_index: HashMap<VertexId, u32> =
        vertices.iter().enumerate().map(|(i, v)| (v.id, i as u32)).collect();
    let triangle_index: HashMap<TriId, u32> = ids.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect();
    let out = TriangulatedComplex::from_indexed(vertices, tris, ids, vertex_index, triangle_index, c.period())
        .expect("barycentric subdivision of a valid complex is valid");
    (out, parents)
}

/// `sd_n(C)`.
pub fn subdivide(c: &TriangulatedComplex, n: u32) -> TriangulatedComplex {
    Subdivision::new(c, n).complex
}

/// A point of the base support, given as a base vertex, a base edge, or
/// plane coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Site {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
    Point(Point),
}

/// Triangles of the subdivision whose closure meets one of the sites.
pub fn star_in(sub: &Subdivision, sites: &[Site], base: &TriangulatedComplex) -> Region {
    let c = &sub.complex;
    let mut vert_sites: HashSet<u32> = HashSet::new();
    let mut edge_sites: HashSet<(u32, u32)> = HashSet::new();
    let mut points = Vec::new();
    for s in sites {
        match *s {
            Site::Vertex(v) => {
                if let Some(i) = base.vertex_idx(v) {
                    vert_sites.insert(i);
                }
            }
            Site::Edge(a, b) => {
                if let (Some(i), Some(j)) = (base.vertex_idx(a), base.vertex_idx(b)) {
                    edge_sites.insert((i.min(j), i.max(j)));
                }
            }
            Site::Point(p) => points.push(p),
        }
    }
    let vertex_hits = |v: u32| {
        let car = sub.carrier(v);
        match car.vertices() {
            [a] => vert_sites.contains(a) || edge_sites.iter().any(|&(x, y)| x == *a || y == *a),
            [a, b] => edge_sites.contains(&(*a, *b)),
            _ => false,
        }
    };
    let hit: Vec<bool> = (0..c.num_vertices() as u32).map(vertex_hits).collect();
    Region::from_ids((0..c.num_triangles() as u32).filter_map(|t| {
        let by_vertex = c.tri_vertices(t).iter().any(|&v| hit[v as usize]);
        let by_point = !by_vertex && {
            let [a, b, p] = c.tri_points(t);
            points.iter().any(|&q| in_closed_triangle(q, a, b, p))
        };
        (by_vertex || by_point).then(|| c.tri_id(t))
    }))
}

/// `star_n(A)`: triangles of `sd_n(C)` whose closure meets `A`.
pub fn star(c: &TriangulatedComplex, sites: &[Site], n: u32) -> Region {
    star_in(&Subdivision::new(c, n), sites, c)
}

/// Base edges (vertex-index pairs) incident to exactly one triangle of
/// the region. Window-frontier edges of the region are included since
/// they have no second triangle at all.
pub fn region_boundary_edges(host: &TriangulatedComplex, region: &Region) -> BTreeSet<(u32, u32)> {
    let mask = host.mask(region);
    let mut out = BTreeSet::new();
    for edge in host.edges() {
        let inside = edge.tris.iter().filter(|&&t| t != NO_TRIANGLE && mask[t as usize]).count();
        if inside == 1 {
            out.insert((edge.v[0], edge.v[1]));
        }
    }
    out
}

/// `ret_n(Omega)` computed in a prebuilt subdivision of the host.
pub fn retract_in(sub: &Subdivision, host: &TriangulatedComplex, omega: &Region) -> Region {
    let c = &sub.complex;
    let bd = region_boundary_edges(host, omega);
    let mut bd_verts = HashSet::new();
    for &(a, b) in &bd {
        bd_verts.insert(a);
        bd_verts.insert(b);
    }
    let on_boundary: Vec<bool> = (0..c.num_vertices() as u32)
        .map(|v| match sub.carrier(v).vertices() {
            [a] => bd_verts.contains(a),
            [a, b] => bd.contains(&(*a, *b)),
            _ => false,
        })
        .collect();
    Region {
        triangles: (0..c.num_triangles() as u32)
            .filter(|&t| {
                omega.contains(sub.base_triangle(t))
                    && !c.tri_vertices(t).iter().any(|&v| on_boundary[v as usize])
            })
            .map(|t| c.tri_id(t))
            .collect(),
        leaf_index: omega.leaf_index,
    }
}

/// `ret_n(Omega) = Omega - star_n(dOmega)`, as a region of `sd_n(host)`.
pub fn retract(host: &TriangulatedComplex, omega: &Region, n: u32) -> Region {
    if omega.is_empty() {
        return Region { triangles: BTreeSet::new(), leaf_index: omega.leaf_index };
    }
    retract_in(&Subdivision::new(host, n), host, omega)
}

/// Vertices of `sub` (by index) lying in the topological interior of the
/// support of `region`: every incident triangle belongs to the region and
/// the vertex is not on the complex boundary.
pub fn interior_vertices(c: &TriangulatedComplex, region: &Region) -> Vec<bool> {
    let mask = c.mask(region);
    let mut on_bd = vec![false; c.num_vertices()];
    for e in c.edges() {
        if e.is_boundary() {
            on_bd[e.v[0] as usize] = true;
            on_bd[e.v[1] as usize] = true;
        }
    }
    (0..c.num_vertices() as u32)
        .map(|v| {
            let tris = c.vertex_triangles(v);
            !on_bd[v as usize] && !tris.is_empty() && tris.iter().all(|&t| mask[t as usize])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid_block, grid_disk, grid_vertex_id, single_triangle};

    #[test]
    fn subdivision_counts() {
        let s = single_triangle();
        assert_eq!(subdivide(&s, 0).num_triangles(), 1);
        let s1 = subdivide(&s, 1);
        assert_eq!((s1.num_triangles(), s1.num_vertices()), (6, 7));
        assert_eq!(subdivide(&grid_disk(1), 2).num_triangles(), 288);
    }

    #[test]
    fn carriers_compose() {
        let s = single_triangle();
        let sub = Subdivision::new(&s, 2);
        let dims: Vec<usize> = (0..sub.complex.num_vertices() as u32).map(|v| sub.carrier(v).dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 3);
        // Depth 2: each base edge carries 3 interior points.
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 9);
        assert_eq!(sub.local_parents(0), None);
        let last = sub.complex.num_vertices() as u32 - 1;
        assert_eq!(sub.local_parents(last).unwrap().len(), 3);
    }

    #[test]
    fn frontier_propagates_to_edge_midpoints() {
        let g = grid_disk(1);
        let sd = subdivide(&g, 1);
        let frontier = sd.vertices().iter().filter(|v| v.on_frontier).count();
        assert_eq!(frontier, 16);
    }

    #[test]
    fn star_examples() {
        let g2 = grid_disk(2);
        assert!(star(&g2, &[], 0).is_empty());
        let v = Site::Vertex(grid_vertex_id(2, 0, 0));
        assert_eq!(star(&g2, &[v], 0).len(), 6);
        let all: Vec<Site> = g2.vertex_ids().map(Site::Vertex).collect();
        assert_eq!(star(&g2, &all, 0).len(), 32);
        let p = Site::Point(Point::new(0.0, 0.0));
        assert_eq!(star(&g2, &[p], 1), star(&g2, &[v], 1));
    }

    #[test]
    fn retraction_examples() {
        let g1 = grid_disk(1);
        assert!(retract(&g1, &g1.all_triangles(), 0).is_empty());
        let g2 = grid_disk(2);
        assert_eq!(retract(&g2, &g2.all_triangles(), 0), grid_block(&g2, 1));
        assert!(retract(&g2, &Region::new(), 3).is_empty());
        assert!(!retract(&g1, &g1.all_triangles(), 1).is_empty());
    }
}
