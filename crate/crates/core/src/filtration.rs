//! Skeleta of finite relations on window triangles, interior triangles,
//! associated regions and the hypercompact filtration of a relation
//! filtration.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{component_masks, Region, TriId, TriangulatedComplex, VertexId, NO_TRIANGLE};
use crate::relations::{Filtration, FinitePartition};

/// `sq1` edges (as sorted vertex-id pairs) and `sq0` vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Skeleton {
    pub edges1: BTreeSet<(VertexId, VertexId)>,
    pub vertices0: BTreeSet<VertexId>,
}

/// Class index per triangle index; triangles outside the universe get a
/// fresh class of their own.
fn class_per_triangle(r: &FinitePartition, window: &TriangulatedComplex) -> Vec<u32> {
    let mut fresh = r.num_classes() as u32;
    (0..window.num_triangles() as u32)
        .map(|t| {
            r.class_index(window.tri_id(t)).unwrap_or_else(|| {
                fresh += 1;
                fresh
            })
        })
        .collect()
}

/// Edge mask of `sq1` and vertex mask of `sq0`, by index.
pub(crate) fn skeleton_masks(r: &FinitePartition, window: &TriangulatedComplex) -> (Vec<bool>, Vec<bool>) {
    let class = class_per_triangle(r, window);
    let mut e1 = vec![false; window.num_edges()];
    let mut v0 = vec![false; window.num_vertices()];
    for (e, edge) in window.edges().iter().enumerate() {
        let [a, b] = edge.tris;
        if b == NO_TRIANGLE || class[a as usize] != class[b as usize] {
            e1[e] = true;
            v0[edge.v[0] as usize] = true;
            v0[edge.v[1] as usize] = true;
        }
    }
    (e1, v0)
}

pub fn skeleton(r: &FinitePartition, window: &TriangulatedComplex) -> Skeleton {
    let (e1, v0) = skeleton_masks(r, window);
    let mut sk = Skeleton::default();
    for (e, edge) in window.edges().iter().enumerate() {
        if e1[e] {
            let a = window.vertex(edge.v[0]).id;
            let b = window.vertex(edge.v[1]).id;
            sk.edges1.insert((a.min(b), a.max(b)));
        }
    }
    for (v, &on) in v0.iter().enumerate() {
        if on {
            sk.vertices0.insert(window.vertex(v as u32).id);
        }
    }
    sk
}

pub(crate) fn interior_mask(r: &FinitePartition, window: &TriangulatedComplex) -> Vec<bool> {
    let (_, v0) = skeleton_masks(r, window);
    (0..window.num_triangles() as u32)
        .map(|t| window.tri_vertices(t).iter().all(|&v| !v0[v as usize]))
        .collect()
}

/// `int(R)`: triangles with no vertex in `sq0(R)`.
pub fn interior_triangles(r: &FinitePartition, window: &TriangulatedComplex) -> Region {
    window.region_from_mask(&interior_mask(r, window))
}

/// `B(R)`, the region spanned by `int(R)`.
pub fn associated_region(r: &FinitePartition, window: &TriangulatedComplex) -> Region {
    interior_triangles(r, window)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercompactReport {
    pub steps: usize,
    /// Index `k` of the first step whose partition does not refine step `k + 1`.
    pub relation_violation: Option<usize>,
    /// Index `k` with `B_k` not contained in `B_{k+1}`.
    pub region_violation: Option<usize>,
    /// Triangles lying in the topological interior of their class support
    /// at some step.
    pub exhaustible: usize,
    /// Exhaustible triangles that no `B_n` contains.
    pub missed: Vec<TriId>,
    pub volumes: Vec<usize>,
}

impl HypercompactReport {
    pub fn monotone(&self) -> bool {
        self.relation_violation.is_none() && self.region_violation.is_none()
    }

    pub fn exhaustive(&self) -> bool {
        self.missed.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.monotone() && self.exhaustive()
    }
}

/// Triangles whose closure lies in the interior of the support of their
/// own class: every vertex has all its incident triangles in that class
/// and is not on the window boundary.
fn vertex_star_interior(r: &FinitePartition, window: &TriangulatedComplex) -> Vec<bool> {
    let class = class_per_triangle(r, window);
    let mut on_bd = vec![false; window.num_vertices()];
    for e in window.edges() {
        if e.is_boundary() {
            on_bd[e.v[0] as usize] = true;
            on_bd[e.v[1] as usize] = true;
        }
    }
    (0..window.num_triangles() as u32)
        .map(|t| {
            let k = class[t as usize];
            window.tri_vertices(t).iter().all(|&v| {
                !on_bd[v as usize] && window.vertex_triangles(v).iter().all(|&s| class[s as usize] == k)
            })
        })
        .collect()
}

/// `B_n = B(R_n)` for every step, with monotonicity and window-relative
/// exhaustion checks.
pub fn hypercompact_filtration(f: &Filtration, window: &TriangulatedComplex) -> (Vec<Region>, HypercompactReport) {
    let masks: Vec<Vec<bool>> = f.steps().iter().map(|r| interior_mask(r, window)).collect();
    let region_violation = masks
        .windows(2)
        .position(|w| w[0].iter().zip(&w[1]).any(|(&a, &b)| a && !b));
    let nt = window.num_triangles();
    let mut exhaustible = vec![false; nt];
    for r in f.steps() {
        for (t, on) in vertex_star_interior(r, window).into_iter().enumerate() {
            exhaustible[t] |= on;
        }
    }
    let missed = (0..nt)
        .filter(|&t| exhaustible[t] && !masks.iter().any(|m| m[t]))
        .map(|t| window.tri_id(t as u32))
        .collect();
    let report = HypercompactReport {
        steps: f.len(),
        relation_violation: f.first_non_monotone(),
        region_violation,
        exhaustible: exhaustible.iter().filter(|&&x| x).count(),
        missed,
        volumes: masks.iter().map(|m| m.iter().filter(|&&x| x).count()).collect(),
    };
    (masks.iter().map(|m| window.region_from_mask(m)).collect(), report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentVolume {
    pub volume: usize,
    /// The component reaches the window frontier, so its true volume in the
    /// leaf may be larger.
    pub touches_frontier: bool,
}

/// Triangle count of every connected component, keyed by minimum id.
pub fn finite_volume_check(window: &TriangulatedComplex, b: &Region) -> BTreeMap<TriId, ComponentVolume> {
    let mask = window.mask(b);
    component_masks(window, &mask)
        .into_iter()
        .map(|comp| {
            let touches_frontier = comp
                .iter()
                .any(|&t| window.tri_vertices(t).iter().any(|&v| window.vertex(v).on_frontier));
            let key = comp.iter().map(|&t| window.tri_id(t)).min().unwrap();
            (key, ComponentVolume { volume: comp.len(), touches_frontier })
        })
        .collect()
}
