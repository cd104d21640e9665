//! Developments of leaf windows into the plane, local-homeomorphism
//! certificates, the retracted disk filtration and the staged covering of
//! the flat torus built from it. Also suspensions of commuting
//! permutation pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    boundary_of_mask, component_masks, disk_certificate_of_mask, ComplexError, Region, TriId, TriangulatedComplex,
    VertexId,
};
use crate::envelope::{strong_filtration, StrongFiltrationReport};
use crate::filtration::{hypercompact_filtration, HypercompactReport};
use crate::generators::{grid_disk, grid_square_ids, rng};
use crate::geometry::{
    corner_angle, orient, polygon_centroid, polygon_distance, polygon_is_simple, segments_intersect, winding_number,
    Point,
};
use crate::linalg::{conjugate_gradient, Csr};
use crate::pile::{Family, LabeledComplex};
use crate::relations::Filtration;
use crate::subdivide::{lift_region, retract_in, Subdivision};

pub const ANGLE_TOL: f64 = 1e-9;
/// Radius of a disk containing a unit square, so that an image containing
/// such a disk maps onto the torus.
pub const SURJECTIVITY_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;
const SOLVE_TOL: f64 = 1e-13;
/// Refinement retries stop once the finest level would exceed this size.
const MAX_TRIANGLES: usize = 3_000_000;
const RADIUS_MARGIN: f64 = 1.02;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoveringError {
    #[error("stage {stage}: retracted component at {component} is not a disk")]
    NotDisk { stage: usize, component: TriId },
    #[error("stage {stage} does not contain stage {}", stage - 1)]
    NotIncreasing { stage: usize },
    #[error("stage {stage} is not contained in the interior of stage {}", stage + 1)]
    NotNested { stage: usize },
    #[error("stage {stage}: harmonic placement did not converge (residual {residual:e})")]
    Solver { stage: usize, residual: f64 },
    #[error("stage {stage}: certificate failed after {attempts} attempts: {reason}")]
    Certificate { stage: usize, attempts: u32, reason: String },
    #[error("no coordinate for vertex {0}")]
    MissingCoordinate(VertexId),
    #[error("images of the sub-disks overlap")]
    Overlap,
    #[error("sub-disks do not lie in the interior of the extension domain")]
    NotInterior,
    #[error("extension domain is not a disk")]
    DomainNotDisk,
    #[error("{0} is not a permutation of 0..{1}")]
    NotPermutation(&'static str, usize),
    #[error("generators do not commute at {0}")]
    NonCommuting(u32),
    #[error("empty fiber")]
    EmptyFiber,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Plane coordinates for the vertices of a region.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Development {
    pub domain: Region,
    pub coords: BTreeMap<VertexId, Point>,
}

impl Development {
    pub fn new(domain: Region, coords: BTreeMap<VertexId, Point>) -> Self {
        Development { domain, coords }
    }

    /// The vertex positions of `c` itself.
    pub fn identity(c: &TriangulatedComplex, domain: &Region) -> Self {
        let mut coords = BTreeMap::new();
        for t in &domain.triangles {
            if let Some(vs) = c.triangle(*t) {
                for v in vs {
                    coords.insert(v, c.position(v).unwrap());
                }
            }
        }
        Development { domain: domain.clone(), coords }
    }

    /// Image of `v` on the unit torus.
    pub fn torus_point(&self, v: VertexId) -> Option<Point> {
        self.coords.get(&v).map(|p| Point::new(p.x.rem_euclid(1.0), p.y.rem_euclid(1.0)))
    }

    fn indexed(&self, c: &TriangulatedComplex) -> Vec<Option<Point>> {
        let mut out = vec![None; c.num_vertices()];
        for (v, p) in &self.coords {
            if let Some(i) = c.vertex_idx(*v) {
                out[i as usize] = Some(*p);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LocalHomeoReport {
    pub triangles: usize,
    pub unknown_triangles: Vec<TriId>,
    pub missing: Vec<VertexId>,
    /// Triangles whose image is not positively oriented.
    pub negative: Vec<TriId>,
    pub interior_vertices: usize,
    /// Interior vertices whose corner angles do not sum to `2 pi`.
    pub bad_links: Vec<(VertexId, f64)>,
    /// Boundary vertices whose corner angles exceed `2 pi`.
    pub folded_boundary: Vec<(VertexId, f64)>,
}

impl LocalHomeoReport {
    pub fn passed(&self) -> bool {
        self.unknown_triangles.is_empty()
            && self.missing.is_empty()
            && self.negative.is_empty()
            && self.bad_links.is_empty()
            && self.folded_boundary.is_empty()
    }

    fn summary(&self) -> String {
        format!(
            "{} missing, {} negative, {} bad links, {} folded boundary vertices",
            self.missing.len(),
            self.negative.len(),
            self.bad_links.len(),
            self.folded_boundary.len()
        )
    }
}

fn complex_boundary_vertices(c: &TriangulatedComplex) -> Vec<bool> {
    let mut on = vec![false; c.num_vertices()];
    for e in c.edges() {
        if e.is_boundary() {
            on[e.v[0] as usize] = true;
            on[e.v[1] as usize] = true;
        }
    }
    on
}

fn validate_mask(c: &TriangulatedComplex, mask: &[bool], coords: &[Option<Point>]) -> LocalHomeoReport {
    let mut rep = LocalHomeoReport::default();
    let mut angle = vec![0.0f64; c.num_vertices()];
    let mut touched = vec![false; c.num_vertices()];
    let mut missing = BTreeSet::new();
    for t in 0..c.num_triangles() as u32 {
        if !mask[t as usize] {
            continue;
        }
        rep.triangles += 1;
        let vs = c.tri_vertices(t);
        let mut ps = [Point::default(); 3];
        let mut ok = true;
        for k in 0..3 {
            touched[vs[k] as usize] = true;
            match coords[vs[k] as usize] {
                Some(p) => ps[k] = p,
                None => {
                    missing.insert(c.vertex(vs[k]).id);
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        if orient(ps[0], ps[1], ps[2]) <= 0 {
            rep.negative.push(c.tri_id(t));
        }
        for k in 0..3 {
            angle[vs[k] as usize] += corner_angle(ps[(k + 2) % 3], ps[k], ps[(k + 1) % 3]);
        }
    }
    let on_bd = complex_boundary_vertices(c);
    for v in 0..c.num_vertices() {
        if !touched[v] || missing.contains(&c.vertex(v as u32).id) {
            continue;
        }
        let interior = !on_bd[v] && c.vertex_triangles(v as u32).iter().all(|&t| mask[t as usize]);
        let id = c.vertex(v as u32).id;
        if interior {
            rep.interior_vertices += 1;
            if (angle[v] - 2.0 * PI).abs() > ANGLE_TOL {
                rep.bad_links.push((id, angle[v]));
            }
        } else if angle[v] > 2.0 * PI + ANGLE_TOL {
            rep.folded_boundary.push((id, angle[v]));
        }
    }
    rep.missing = missing.into_iter().collect();
    rep
}

/// Checks that a development is an orientation-preserving local
/// homeomorphism: every image triangle is positively oriented (exact
/// predicate) and the corners around every interior vertex wind once.
pub fn validate_local_homeo(c: &TriangulatedComplex, d: &Development) -> LocalHomeoReport {
    let mut mask = vec![false; c.num_triangles()];
    let mut unknown = Vec::new();
    for t in &d.domain.triangles {
        match c.tri_idx(*t) {
            Some(i) => mask[i as usize] = true,
            None => unknown.push(*t),
        }
    }
    let mut rep = validate_mask(c, &mask, &d.indexed(c));
    rep.unknown_triangles = unknown;
    rep
}

/// Uniform-weight harmonic placement over the triangles `tris`: vertices
/// with `fixed` positions stay, the others average their neighbours.
fn harmonic_place(
    c: &TriangulatedComplex,
    tris: &[u32],
    fixed: &dyn Fn(u32) -> Option<Point>,
) -> Result<HashMap<u32, Point>, f64> {
    let mut edges: Vec<u32> = tris.iter().flat_map(|&t| c.tri_edges(t)).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut verts: Vec<u32> = tris.iter().flat_map(|&t| c.tri_vertices(t)).collect();
    verts.sort_unstable();
    verts.dedup();
    let mut out = HashMap::with_capacity(verts.len());
    let mut free_index = HashMap::new();
    let mut free = Vec::new();
    for &v in &verts {
        match fixed(v) {
            Some(p) => {
                out.insert(v, p);
            }
            None => {
                free_index.insert(v, free.len());
                free.push(v);
            }
        }
    }
    if free.is_empty() {
        return Ok(out);
    }
    if out.is_empty() {
        return Err(f64::INFINITY);
    }
    let mut trip = Vec::with_capacity(free.len() * 8);
    let mut rhs_x = vec![0.0; free.len()];
    let mut rhs_y = vec![0.0; free.len()];
    for &e in &edges {
        let [a, b] = c.edges()[e as usize].v;
        for (p, q) in [(a, b), (b, a)] {
            let Some(&i) = free_index.get(&p) else { continue };
            trip.push((i, i, 1.0));
            match free_index.get(&q) {
                Some(&j) => trip.push((i, j, -1.0)),
                None => {
                    let z = out[&q];
                    rhs_x[i] += z.x;
                    rhs_y[i] += z.y;
                }
            }
        }
    }
    let a = Csr::from_triplets(free.len(), trip);
    let n = out.len() as f64;
    let mean = out.values().fold(Point::default(), |s, p| s.add(*p)).scale(1.0 / n);
    let max_iter = 20 * free.len() + 1000;
    let mut x = vec![mean.x; free.len()];
    let sx = conjugate_gradient(&a, &rhs_x, &mut x, SOLVE_TOL, max_iter);
    let mut y = vec![mean.y; free.len()];
    let sy = conjugate_gradient(&a, &rhs_y, &mut y, SOLVE_TOL, max_iter);
    if !sx.converged || !sy.converged {
        return Err(sx.residual.max(sy.residual));
    }
    for (i, &v) in free.iter().enumerate() {
        out.insert(v, Point::new(x[i], y[i]));
    }
    Ok(out)
}

fn mask_of(n: usize, tris: &[u32]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &t in tris {
        m[t as usize] = true;
    }
    m
}

fn children_of(tris: &[u32]) -> Vec<u32> {
    tris.iter().flat_map(|&t| (0..6).map(move |j| 6 * t + j)).collect()
}

/// Outer boundary cycle (vertex indices, region on the left) of a disk
/// given by a triangle mask.
fn disk_boundary(c: &TriangulatedComplex, mask: &[bool]) -> Option<Vec<u32>> {
    if !disk_certificate_of_mask(c, mask).is_disk() {
        return None;
    }
    let cycles = boundary_of_mask(c, mask).ok()?;
    Some(cycles[0].vertices().map(|v| c.vertex_idx(v).unwrap()).collect())
}

/// Boundary arc-length parameter in the complex's own coordinates, scaled
/// to `[0, 2 pi)`.
fn arc_angles(c: &TriangulatedComplex, cycle: &[u32]) -> Vec<f64> {
    let n = cycle.len();
    let mut s = vec![0.0; n];
    let mut total = 0.0;
    for i in 0..n {
        s[i] = total;
        let a = c.vertex(cycle[i]).pos;
        let b = c.vertex(cycle[(i + 1) % n]).pos;
        total += c.displacement(a, b).norm();
    }
    s.iter().map(|x| 2.0 * PI * x / total).collect()
}

fn on_circle(center: Point, radius: f64, phi: f64) -> Point {
    Point::new(center.x + radius * phi.cos(), center.y + radius * phi.sin())
}

/// Vertices (by index) of the lower level whose triangles, once lifted,
/// lie in the interior of the upper region.
fn lifted_in_interior(upper: &TriangulatedComplex, lower_tris: &[u32], upper_mask: &[bool]) -> bool {
    let on_bd = complex_boundary_vertices(upper);
    children_of(lower_tris).iter().all(|&t| {
        upper_mask[t as usize]
            && upper.tri_vertices(t).iter().all(|&v| {
                !on_bd[v as usize] && upper.vertex_triangles(v).iter().all(|&s| upper_mask[s as usize])
            })
    })
}

/// `B^_n = ret_n(B_n)` in `sd_n` of the host, for `n = 1, 2, ...`.
#[derive(Clone, Debug)]
pub struct RetractedFiltration {
    /// `levels[n]` is `sd_n` of the host.
    pub levels: Vec<Subdivision>,
    /// `regions[n - 1]` is `B^_n`.
    pub regions: Vec<Region>,
    /// `nested[n - 1]`: `B^_n` lies in the interior of `B^_{n+1}`.
    pub nested: Vec<bool>,
}

pub fn retract_filtration(host: &TriangulatedComplex, bs: &[Region]) -> RetractedFiltration {
    let mut levels = vec![Subdivision::identity(host)];
    for _ in 0..bs.len() {
        let next = levels.last().unwrap().refine();
        levels.push(next);
    }
    let regions: Vec<Region> = bs.iter().enumerate().map(|(k, b)| retract_in(&levels[k + 1], host, b)).collect();
    let nested = (0..bs.len().saturating_sub(1))
        .map(|k| {
            let lower = &levels[k + 1].complex;
            let upper = &levels[k + 2].complex;
            let lower_tris: Vec<u32> = regions[k].triangles.iter().map(|t| lower.tri_idx(*t).unwrap()).collect();
            lifted_in_interior(upper, &lower_tris, &upper.mask(&regions[k + 1]))
        })
        .collect();
    RetractedFiltration { levels, regions, nested }
}

/// A development extended across a larger disk, possibly after further
/// subdivision.
#[derive(Clone, Debug)]
pub struct Extension {
    pub complex: TriangulatedComplex,
    /// Extra subdivisions applied to the input complex.
    pub refinements: u32,
    pub development: Development,
    pub center: Point,
    pub radius: f64,
}

/// Extends a development of the disks `b` to the disk `bhat`, whose
/// boundary is sent to a round circle of radius at least `n`. The annulus
/// is placed harmonically; on a failed certificate the whole domain is
/// subdivided again, up to `retries` times.
pub fn extend_development(
    c: &TriangulatedComplex,
    b: &Region,
    d: &Development,
    bhat: &Region,
    n: u32,
    retries: u32,
) -> Result<Extension, CoveringError> {
    let bhat_mask = c.mask(bhat);
    let outer = disk_boundary(c, &bhat_mask).ok_or(CoveringError::DomainNotDisk)?;
    let b_tris: Vec<u32> = b.triangles.iter().filter_map(|t| c.tri_idx(*t)).collect();
    if b_tris.len() != b.len() || !b.is_subset(bhat) {
        return Err(CoveringError::NotInterior);
    }
    let on_bd = complex_boundary_vertices(c);
    for &t in &b_tris {
        for v in c.tri_vertices(t) {
            if on_bd[v as usize] || c.vertex_triangles(v).iter().any(|&s| !bhat_mask[s as usize]) {
                return Err(CoveringError::NotInterior);
            }
            if !d.coords.contains_key(&c.vertex(v).id) {
                return Err(CoveringError::MissingCoordinate(c.vertex(v).id));
            }
        }
    }
    let coords = d.indexed(c);
    let b_mask = mask_of(c.num_triangles(), &b_tris);
    let mut polys = Vec::new();
    for comp in component_masks(c, &b_mask) {
        let m = mask_of(c.num_triangles(), &comp);
        let cyc = disk_boundary(c, &m).ok_or(CoveringError::NotDisk { stage: 0, component: c.tri_id(comp[0]) })?;
        polys.push(cyc.iter().map(|&v| coords[v as usize].unwrap()).collect::<Vec<_>>());
    }
    if polys.iter().any(|p| !polygon_is_simple(p)) || polygons_overlap(&polys) {
        return Err(CoveringError::Overlap);
    }
    let center = if polys.is_empty() {
        Point::default()
    } else {
        polys.iter().map(|p| polygon_centroid(p)).fold(Point::default(), |s, p| s.add(p)).scale(1.0 / polys.len() as f64)
    };
    let diam_sum: f64 = polys.iter().map(|p| diameter(p)).sum();
    let reach = polys.iter().flatten().map(|p| p.dist(center)).fold(0.0, f64::max);
    let radius = (n as f64).max(2.0 * diam_sum + 1.0).max(reach + 1.0);

    // Align the outer parametrisation with the rotation the sub-disks
    // already carry, so the annulus is not twisted.
    let hole_verts: BTreeSet<u32> = b_tris.iter().flat_map(|&t| c.tri_vertices(t)).collect();
    let rotation = procrustes_angle(hole_verts.iter().map(|&v| (c.vertex(v).pos, coords[v as usize].unwrap())));
    let unwrapped = unwrap_cycle(c, &outer);
    let mid = unwrapped.iter().fold(Point::default(), |s, p| s.add(*p)).scale(1.0 / unwrapped.len() as f64);
    let q0 = unwrapped[0].sub(mid);
    let theta0 = q0.y.atan2(q0.x) + rotation;

    let mut sub = Subdivision::identity(c);
    let mut b_cur = b.clone();
    let mut bhat_cur = bhat.clone();
    let mut fixed = coords;
    let mut outer = outer;
    let mut last = None;
    for attempt in 0..=retries {
        let cc = &sub.complex;
        let angles = arc_angles(cc, &outer);
        let mut pin: Vec<Option<Point>> = fixed.clone();
        for (i, &v) in outer.iter().enumerate() {
            pin[v as usize] = Some(on_circle(center, radius, theta0 + angles[i]));
        }
        let tris: Vec<u32> = bhat_cur.triangles.iter().map(|t| cc.tri_idx(*t).unwrap()).collect();
        let placed = harmonic_place(cc, &tris, &|v| pin[v as usize])
            .map_err(|residual| CoveringError::Solver { stage: 0, residual })?;
        let mut all = vec![None; cc.num_vertices()];
        for (&v, &p) in &placed {
            all[v as usize] = Some(p);
        }
        let rep = validate_mask(cc, &cc.mask(&bhat_cur), &all);
        if rep.passed() {
            let coords = placed.iter().map(|(&v, &p)| (cc.vertex(v).id, p)).collect();
            return Ok(Extension {
                complex: cc.clone(),
                refinements: attempt,
                development: Development::new(bhat_cur, coords),
                center,
                radius,
            });
        }
        last = Some(rep.summary());
        if attempt == retries {
            break;
        }
        // Refine: old vertices keep their images, new ones in the sub-disks
        // average their parents.
        let next = sub.refine();
        let nc = &next.complex;
        let lower: Vec<u32> = b_cur.triangles.iter().map(|t| cc.tri_idx(*t).unwrap()).collect();
        let mut lifted = vec![None; nc.num_vertices()];
        for t in children_of(&lower) {
            for v in nc.tri_vertices(t) {
                lifted[v as usize] = match next.local_parents(v) {
                    None => fixed[v as usize],
                    Some(ps) => {
                        let s = ps.iter().fold(Point::default(), |s, &q| s.add(fixed[q as usize].unwrap()));
                        Some(s.scale(1.0 / ps.len() as f64))
                    }
                };
            }
        }
        b_cur = lift_region(&b_cur, 1);
        bhat_cur = lift_region(&bhat_cur, 1);
        outer = disk_boundary(nc, &nc.mask(&bhat_cur)).ok_or(CoveringError::DomainNotDisk)?;
        fixed = lifted;
        sub = next;
    }
    Err(CoveringError::Certificate { stage: 0, attempts: retries + 1, reason: last.unwrap_or_default() })
}

/// Positions along a boundary cycle, unwrapped across the period.
fn unwrap_cycle(c: &TriangulatedComplex, cycle: &[u32]) -> Vec<Point> {
    let mut out = Vec::with_capacity(cycle.len());
    let mut cur = c.vertex(cycle[0]).pos;
    out.push(cur);
    for w in cycle.windows(2) {
        cur = cur.add(c.displacement(c.vertex(w[0]).pos, c.vertex(w[1]).pos));
        out.push(cur);
    }
    out
}

/// Rotation angle best carrying the first points onto the second, after
/// centring both.
fn procrustes_angle(pairs: impl Iterator<Item = (Point, Point)>) -> f64 {
    let pairs: Vec<(Point, Point)> = pairs.collect();
    if pairs.is_empty() {
        return 0.0;
    }
    let n = pairs.len() as f64;
    let ca = pairs.iter().fold(Point::default(), |s, p| s.add(p.0)).scale(1.0 / n);
    let cb = pairs.iter().fold(Point::default(), |s, p| s.add(p.1)).scale(1.0 / n);
    let (mut sin, mut cos) = (0.0, 0.0);
    for (a, b) in &pairs {
        let (u, w) = (a.sub(ca), b.sub(cb));
        sin += u.cross(w);
        cos += u.dot(w);
    }
    if sin == 0.0 && cos == 0.0 {
        0.0
    } else {
        sin.atan2(cos)
    }
}

fn diameter(poly: &[Point]) -> f64 {
    let mut d = 0.0f64;
    for (i, p) in poly.iter().enumerate() {
        for q in &poly[i + 1..] {
            d = d.max(p.dist(*q));
        }
    }
    d
}

fn polygons_overlap(polys: &[Vec<Point>]) -> bool {
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let (p, q) = (&polys[i], &polys[j]);
            if winding_number(p, q[0]) != 0 || winding_number(q, p[0]) != 0 {
                return true;
            }
            for a in 0..p.len() {
                for b in 0..q.len() {
                    if segments_intersect(p[a], p[(a + 1) % p.len()], q[b], q[(b + 1) % q.len()]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// A component of a retracted stage.
#[derive(Clone, Debug)]
struct Piece {
    tris: Vec<u32>,
    boundary: Vec<u32>,
    parent: Option<usize>,
    children: Vec<usize>,
}

/// Planned images of the outer boundary vertices of a piece.
#[derive(Clone, Debug)]
struct Placement {
    boundary: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageCertificate {
    pub stage: usize,
    pub depth: u32,
    pub components: usize,
    pub local_homeo: LocalHomeoReport,
    /// Coordinates of the previous stage's vertices are bit-identical.
    pub extends_previous: bool,
    pub required_radius: f64,
    /// Distance from the anchor to the boundary of the image of its
    /// component, when that boundary is a simple curve around the anchor.
    pub certified_radius: f64,
}

impl StageCertificate {
    pub fn passed(&self) -> bool {
        self.local_homeo.passed() && self.extends_previous && self.certified_radius >= self.required_radius
    }
}

#[derive(Clone, Debug)]
pub struct CoveringStage {
    pub development: Development,
    pub certificate: StageCertificate,
}

/// Developments `rho_1, rho_2, ...` of the retracted stages, each extending
/// the previous one.
#[derive(Clone, Debug)]
pub struct Covering {
    pub stages: Vec<CoveringStage>,
    /// The subdivision each stage's development lives on.
    pub complexes: Vec<TriangulatedComplex>,
    pub anchor: Option<Point>,
    /// Extra subdivisions beyond `sd_k` used for stage `k`.
    pub refinements: u32,
    pub attempts: u32,
}

impl Covering {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.certificate.passed())
    }

    /// The last image contains a disk large enough to cover a fundamental
    /// domain of the torus.
    pub fn torus_surjective(&self) -> bool {
        self.stages.is_empty()
            || self.stages.iter().all(|s| s.development.domain.is_empty())
            || self.stages.last().unwrap().certificate.certified_radius >= SURJECTIVITY_RADIUS
    }

    pub fn is_vacuous(&self) -> bool {
        self.stages.iter().all(|s| s.development.domain.is_empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoveringConfig {
    /// Largest envelope volume admitted in the strong filtration; `None`
    /// means the window size.
    pub q_max: Option<usize>,
    /// At most this many stages are kept, cofinally.
    pub max_stages: usize,
    pub retries: u32,
}

impl Default for CoveringConfig {
    fn default() -> Self {
        CoveringConfig { q_max: None, max_stages: 3, retries: 4 }
    }
}

struct Levels {
    /// Subdivisions of the base from depth 0 on; stage `k` lives at depth
    /// `k + offset`.
    subs: Vec<Subdivision>,
    offset: usize,
    pieces: Vec<Vec<Piece>>,
    masks: Vec<Vec<bool>>,
}

impl Levels {
    fn sub(&self, k: usize) -> &Subdivision {
        &self.subs[k + self.offset]
    }
}

fn prepare(host: &TriangulatedComplex, stages: &[Region], offset: usize) -> Result<Levels, CoveringError> {
    let m = stages.len();
    for k in 1..m {
        if !stages[k - 1].is_subset(&stages[k]) {
            return Err(CoveringError::NotIncreasing { stage: k + 1 });
        }
    }
    let base = host.subcomplex(&stages[m - 1])?;
    let mut subs = vec![Subdivision::identity(&base)];
    for _ in 0..m + offset {
        let next = subs.last().unwrap().refine();
        subs.push(next);
    }
    let mut pieces: Vec<Vec<Piece>> = vec![Vec::new()];
    let mut masks = vec![Vec::new()];
    for k in 1..=m {
        let c = &subs[k + offset].complex;
        let region = retract_in(&subs[k + offset], &base, &stages[k - 1]);
        let mask = c.mask(&region);
        let mut ps = Vec::new();
        for comp in component_masks(c, &mask) {
            let cm = mask_of(c.num_triangles(), &comp);
            let boundary = disk_boundary(c, &cm).ok_or(CoveringError::NotDisk { stage: k, component: c.tri_id(comp[0]) })?;
            ps.push(Piece { tris: comp, boundary, parent: None, children: Vec::new() });
        }
        pieces.push(ps);
        masks.push(mask);
    }
    for k in 1..m {
        let upper = &subs[k + 1 + offset].complex;
        let mut owner = vec![usize::MAX; upper.num_triangles()];
        for (j, p) in pieces[k + 1].iter().enumerate() {
            for &t in &p.tris {
                owner[t as usize] = j;
            }
        }
        for j in 0..pieces[k].len() {
            if !lifted_in_interior(upper, &pieces[k][j].tris, &masks[k + 1]) {
                return Err(CoveringError::NotNested { stage: k });
            }
            let parent = owner[6 * pieces[k][j].tris[0] as usize];
            pieces[k][j].parent = Some(parent);
            pieces[k + 1][parent].children.push(j);
        }
    }
    Ok(Levels { subs, offset, pieces, masks })
}

/// Tutte map of a piece with its boundary at the planned positions.
fn free_map(c: &TriangulatedComplex, piece: &Piece, pl: &Placement, stage: usize) -> Result<HashMap<u32, Point>, CoveringError> {
    let pin: HashMap<u32, Point> = piece.boundary.iter().copied().zip(pl.boundary.iter().copied()).collect();
    harmonic_place(c, &piece.tris, &|v| pin.get(&v).copied()).map_err(|residual| CoveringError::Solver { stage, residual })
}

/// Plans the boundary images of every piece, top-down: top-stage pieces go
/// to unit circles, and each child takes the image of its boundary under
/// the Tutte map of its parent. Returns the placements and the anchor
/// vertex with its planned image.
#[allow(clippy::type_complexity)]
fn plan(lv: &Levels) -> Result<(Vec<Vec<Placement>>, Option<(usize, u32, Point)>), CoveringError> {
    let m = lv.pieces.len() - 1;
    let mut placement: Vec<Vec<Option<Placement>>> = lv.pieces.iter().map(|p| vec![None; p.len()]).collect();
    for (i, p) in lv.pieces[m].iter().enumerate() {
        let n = p.boundary.len();
        let center = Point::new(3.0 * i as f64, 0.0);
        placement[m][i] = Some(Placement {
            boundary: (0..n).map(|j| on_circle(center, 1.0, 2.0 * PI * j as f64 / n as f64)).collect(),
        });
    }
    let first = (1..=m).find(|&k| !lv.pieces[k].is_empty());
    let mut anchor = None;
    for k in (1..=m).rev() {
        let c = &lv.sub(k).complex;
        for (i, piece) in lv.pieces[k].iter().enumerate() {
            let is_anchor = Some(k) == first && i == 0;
            if piece.children.is_empty() && !is_anchor {
                continue;
            }
            let pl = placement[k][i].clone().unwrap();
            let f = free_map(c, piece, &pl, k)?;
            if is_anchor {
                // The vertex deepest inside the planned image.
                let poly = &pl.boundary;
                let (&v, &p) = f
                    .iter()
                    .map(|(v, p)| (v, p, polygon_distance(poly, *p)))
                    .max_by(|a, b| a.2.total_cmp(&b.2).then(b.0.cmp(a.0)))
                    .map(|(v, p, _)| (v, p))
                    .unwrap();
                anchor = Some((k, v, p));
            }
            for &j in &piece.children {
                let child = &lv.pieces[k - 1][j];
                placement[k - 1][j] = Some(Placement { boundary: child.boundary.iter().map(|v| f[v]).collect() });
            }
        }
    }
    let placement = placement.into_iter().map(|v| v.into_iter().map(Option::unwrap).collect()).collect();
    Ok((placement, anchor))
}

fn ancestor(lv: &Levels, k0: usize, i0: usize, k: usize) -> usize {
    let mut i = i0;
    for l in k0..k {
        i = lv.pieces[l][i].parent.unwrap();
    }
    i
}

fn vacuous(stages: &[Region]) -> Covering {
    Covering {
            stages: stages
                .iter()
                .enumerate()
                .map(|(k, s)| CoveringStage {
                    development: Development { domain: Region { triangles: BTreeSet::new(), leaf_index: s.leaf_index }, coords: BTreeMap::new() },
                    certificate: StageCertificate {
                        stage: k + 1,
                        depth: k as u32 + 1,
                        components: 0,
                        local_homeo: LocalHomeoReport::default(),
                        extends_previous: true,
                        required_radius: 0.0,
                        certified_radius: 0.0,
                    },
                })
                .collect(),
            complexes: Vec::new(),
            anchor: None,
            refinements: 0,
            attempts: 0,
        }
}

/// Builds the developments of `ret_k(S_k)` in `sd_k` for an increasing
/// sequence of disk regions `S_1 <= S_2 <= ...` of `host`. Boundary images
/// for all stages are planned first; the stages are then placed
/// inductively, each one a harmonic extension of the previous across the
/// new annuli, and certified. A failed certificate restarts with every
/// stage one subdivision deeper.
pub fn build_covering(host: &TriangulatedComplex, stages: &[Region], retries: u32) -> Result<Covering, CoveringError> {
    if stages.is_empty() || stages.iter().all(|s| s.is_empty()) {
        return Ok(vacuous(stages));
    }
    let mut lv = Some(prepare(host, stages, 0)?);
    if lv.as_ref().unwrap().pieces.iter().all(|p| p.is_empty()) {
        return Ok(vacuous(stages));
    }
    let m = stages.len();
    let base_size = stages[m - 1].len();
    let mut last = (0, String::new());
    let mut made = 0;
    for offset in 0..=retries as usize {
        if offset > 0 && base_size.saturating_mul(6usize.pow((m + offset) as u32)) > MAX_TRIANGLES {
            break;
        }
        let lv = if offset == 0 { lv.take().unwrap() } else { prepare(host, stages, offset)? };
        made += 1;
        match attempt(&lv)? {
            Ok((stages, anchor)) => {
                return Ok(Covering {
                    stages,
                    complexes: (1..=m).map(|k| lv.sub(k).complex.clone()).collect(),
                    anchor,
                    refinements: offset as u32,
                    attempts: made,
                });
            }
            Err(fail) => last = fail,
        }
    }
    Err(CoveringError::Certificate { stage: last.0, attempts: made, reason: last.1 })
}

#[allow(clippy::type_complexity)]
fn attempt(
    lv: &Levels,
) -> Result<Result<(Vec<CoveringStage>, Option<Point>), (usize, String)>, CoveringError> {
    let m = lv.pieces.len() - 1;
    let (mut placement, anchor) = plan(lv)?;
    let (k0, av, ap) = anchor.unwrap();
    // Scale so that stage k contains the radius-k disk about the anchor.
    let mut lambda = 0.0f64;
    for k in k0..=m {
        let pl = &placement[k][ancestor(lv, k0, 0, k)];
        let poly = &pl.boundary;
        let d = if winding_number(poly, ap) == 1 { polygon_distance(poly, ap) } else { 0.0 };
        if d <= 0.0 {
            return Ok(Err((k, "anchor outside its planned component".into())));
        }
        lambda = lambda.max(RADIUS_MARGIN * k as f64 / d);
    }
    for level in placement.iter_mut() {
        for pl in level.iter_mut() {
            for p in pl.boundary.iter_mut() {
                *p = p.scale(lambda);
            }
        }
    }

    let mut out = Vec::new();
    let mut prev: Vec<Option<Point>> = Vec::new();
    let mut anchor_point = None;
    for k in 1..=m {
        let sub = lv.sub(k);
        let c = &sub.complex;
        let mut coords: Vec<Option<Point>> = vec![None; c.num_vertices()];
        if k > 1 {
            for p in &lv.pieces[k - 1] {
                for t in children_of(&p.tris) {
                    for v in c.tri_vertices(t) {
                        coords[v as usize] = match sub.local_parents(v) {
                            None => prev[v as usize],
                            Some(ps) => {
                                let s = ps.iter().fold(Point::default(), |s, &q| s.add(prev[q as usize].unwrap()));
                                Some(s.scale(1.0 / ps.len() as f64))
                            }
                        };
                    }
                }
            }
        }
        for (i, piece) in lv.pieces[k].iter().enumerate() {
            let pl = &placement[k][i];
            let pin: HashMap<u32, Point> =
                piece.boundary.iter().copied().zip(pl.boundary.iter().copied()).collect();
            let placed = harmonic_place(c, &piece.tris, &|v| pin.get(&v).copied().or(coords[v as usize]))
                .map_err(|residual| CoveringError::Solver { stage: k, residual })?;
            for (v, p) in placed {
                coords[v as usize] = Some(p);
            }
        }
        if k == k0 {
            anchor_point = coords[av as usize];
        }
        let local_homeo = validate_mask(c, &lv.masks[k], &coords);
        let extends_previous = k == 1
            || lv.pieces[k - 1].iter().all(|p| {
                let pc = &lv.sub(k - 1).complex;
                p.tris.iter().flat_map(|&t| pc.tri_vertices(t)).all(|v| {
                    coords[v as usize].map(|q| (q.x.to_bits(), q.y.to_bits()))
                        == prev[v as usize].map(|q| (q.x.to_bits(), q.y.to_bits()))
                })
            });
        let (required_radius, certified_radius) = match anchor_point {
            Some(a) if k >= k0 => {
                let piece = &lv.pieces[k][ancestor(lv, k0, 0, k)];
                let poly: Vec<Point> = piece.boundary.iter().map(|&v| coords[v as usize].unwrap()).collect();
                let r = if polygon_is_simple(&poly) && winding_number(&poly, a) == 1 {
                    polygon_distance(&poly, a)
                } else {
                    0.0
                };
                (k as f64, r)
            }
            _ => (0.0, 0.0),
        };
        let cert = StageCertificate {
            stage: k,
            depth: (k + lv.offset) as u32,
            components: lv.pieces[k].len(),
            local_homeo,
            extends_previous,
            required_radius,
            certified_radius,
        };
        if !cert.passed() {
            let reason = format!(
                "{}; extends previous: {}; radius {:.6} of {}",
                cert.local_homeo.summary(),
                cert.extends_previous,
                cert.certified_radius,
                cert.required_radius
            );
            return Ok(Err((k, reason)));
        }
        let domain = c.region_from_mask(&lv.masks[k]);
        let dev_coords = coords
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (c.vertex(v as u32).id, p)))
            .collect();
        out.push(CoveringStage { development: Development::new(domain, dev_coords), certificate: cert });
        prev = coords;
    }
    Ok(Ok((out, anchor_point)))
}

/// Outcome of the whole pipeline on one window.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub hypercompact: HypercompactReport,
    pub strong: StrongFiltrationReport,
    /// Envelope volumes of the strong-filtration levels used as stages.
    pub stage_volumes: Vec<usize>,
    pub covering: Covering,
}

impl PipelineReport {
    pub fn vacuous(&self) -> bool {
        self.covering.is_vacuous()
    }

    pub fn passed(&self) -> bool {
        self.hypercompact.monotone()
            && self.strong.passed()
            && self.covering.passed()
            && self.covering.torus_surjective()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("stage {stage} ({name}): {message}")]
pub struct PipelineError {
    pub stage: u32,
    pub name: &'static str,
    pub message: String,
}

/// Evenly spread indices into `0..len`, at most `k` of them, always
/// ending at `len - 1`.
fn cofinal(len: usize, k: usize) -> Vec<usize> {
    if len <= k {
        return (0..len).collect();
    }
    (0..k).map(|j| (j + 1) * len / k - 1).collect()
}

/// Relation filtration to hypercompact regions, strong filtration by
/// envelopes, retraction and staged development.
pub fn covering_from_hyperfinite(
    f: &Filtration,
    window: &TriangulatedComplex,
    cfg: &CoveringConfig,
) -> Result<PipelineReport, PipelineError> {
    let (bs, hypercompact) = hypercompact_filtration(f, window);
    if let Some(k) = hypercompact.relation_violation {
        return Err(PipelineError {
            stage: 1,
            name: "hypercompact filtration",
            message: format!("step {k} does not refine step {}", k + 1),
        });
    }
    if let Some(k) = hypercompact.region_violation {
        return Err(PipelineError {
            stage: 1,
            name: "hypercompact filtration",
            message: format!("B_{k} is not contained in B_{}", k + 1),
        });
    }
    let q_max = cfg.q_max.unwrap_or(window.num_triangles());
    let (sf, strong) = strong_filtration(window, &bs, q_max);
    if !strong.passed() {
        return Err(PipelineError {
            stage: 2,
            name: "strong filtration",
            message: format!(
                "{} bad components, {} missed triangles, monotone {}",
                strong.bad_components.len(),
                strong.missed.len(),
                strong.monotone
            ),
        });
    }
    let nonempty: Vec<&(usize, Region)> = sf.levels.iter().filter(|(_, r)| !r.is_empty()).collect();
    let picked = cofinal(nonempty.len(), cfg.max_stages.max(1));
    let stages: Vec<Region> = picked.iter().map(|&i| nonempty[i].1.clone()).collect();
    let stage_volumes = picked.iter().map(|&i| nonempty[i].0).collect();
    let covering = build_covering(window, &stages, cfg.retries).map_err(|e| PipelineError {
        stage: 3,
        name: "covering",
        message: e.to_string(),
    })?;
    Ok(PipelineReport { hypercompact, strong, stage_volumes, covering })
}

/// A pair of commuting permutations `a, b` of `T = {0, .., n-1}`; the
/// suspension of the induced `Z^2`-action is a lamination by planes of the
/// mapping torus over `T^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspensionInstance {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub radius: u32,
}

fn check_perm(p: &[u32], name: &'static str) -> Result<(), CoveringError> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x as usize >= p.len() || seen[x as usize] {
            return Err(CoveringError::NotPermutation(name, p.len()));
        }
        seen[x as usize] = true;
    }
    Ok(())
}

fn inverse(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

impl SuspensionInstance {
    pub fn new(a: Vec<u32>, b: Vec<u32>, radius: u32) -> Result<Self, CoveringError> {
        if a.is_empty() {
            return Err(CoveringError::EmptyFiber);
        }
        check_perm(&a, "a")?;
        check_perm(&b, "b")?;
        if a.len() != b.len() {
            return Err(CoveringError::NotPermutation("b", a.len()));
        }
        for t in 0..a.len() {
            if a[b[t] as usize] != b[a[t] as usize] {
                return Err(CoveringError::NonCommuting(t as u32));
            }
        }
        Ok(SuspensionInstance { a, b, radius })
    }

    /// Random commuting pair on at most `max_size` points: a disjoint union
    /// of translation actions on `Z/m x Z/k`, relabelled at random.
    pub fn random(max_size: usize, radius: u32, seed: u64) -> Self {
        let mut r = rng(seed);
        let size = r.gen_range(1..=max_size.max(1));
        let mut a = Vec::with_capacity(size);
        let mut b = Vec::with_capacity(size);
        let mut used = 0;
        while used < size {
            let left = size - used;
            let m = r.gen_range(1..=left.min(8));
            let k = r.gen_range(1..=(left / m).max(1));
            let shift = r.gen_range(0..m);
            let idx = |x: usize, y: usize| (used + y * m + x) as u32;
            for y in 0..k {
                for x in 0..m {
                    a.push(idx((x + 1) % m, y));
                    b.push(idx((x + shift) % m, (y + 1) % k));
                }
            }
            used += m * k;
        }
        let mut sigma: Vec<u32> = (0..size as u32).collect();
        sigma.shuffle(&mut r);
        let inv = inverse(&sigma);
        let conj = |p: &[u32]| -> Vec<u32> { (0..size).map(|t| sigma[p[inv[t] as usize] as usize]).collect() };
        SuspensionInstance { a: conj(&a), b: conj(&b), radius }
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// `a^i b^j t`.
    pub fn act(&self, i: i64, j: i64, t: u32) -> u32 {
        let (ai, bi) = (inverse(&self.a), inverse(&self.b));
        let mut x = t;
        for _ in 0..j.unsigned_abs() {
            x = if j > 0 { self.b[x as usize] } else { bi[x as usize] };
        }
        for _ in 0..i.unsigned_abs() {
            x = if i > 0 { self.a[x as usize] } else { ai[x as usize] };
        }
        x
    }

    /// Orbits of the action, computed by search over the generators.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let n = self.size();
        let (ai, bi) = (inverse(&self.a), inverse(&self.b));
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s as u32];
            seen[s] = true;
            let mut i = 0;
            while i < orbit.len() {
                let t = orbit[i] as usize;
                for u in [self.a[t], self.b[t], ai[t], bi[t]] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        orbit.push(u);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// A plaque window of the suspension through the fiber point `point`.
#[derive(Clone, Debug)]
pub struct SuspensionWindow {
    pub point: u32,
    pub leaf: u32,
    pub window: LabeledComplex,
    pub development: Development,
}

#[derive(Clone, Debug)]
pub struct Suspension {
    pub windows: Vec<SuspensionWindow>,
    /// Classes of fiber points joined through leaf windows.
    pub fiber_relation: Vec<Vec<u32>>,
}

impl Suspension {
    pub fn family(&self) -> Family {
        Family::new(self.windows.iter().map(|w| (w.point, w.window.clone())).collect())
    }
}

fn find(p: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while p[r as usize] != r {
        r = p[r as usize];
    }
    let mut y = x;
    while p[y as usize] != r {
        let n = p[y as usize];
        p[y as usize] = r;
        y = n;
    }
    r
}

/// Windows of radius `r` through every fiber point: square `(i, j)` of the
/// window through `t` is labelled with the fiber point `a^i b^j t`, and the
/// development is the identity chart of the window.
pub fn suspend(s: &SuspensionInstance) -> Suspension {
    let n = s.size();
    let r = s.radius.max(1);
    let orbits = s.orbits();
    let mut leaf_of = vec![0u32; n];
    for (k, o) in orbits.iter().enumerate() {
        for &t in o {
            leaf_of[t as usize] = k as u32;
        }
    }
    let g = grid_disk(r);
    let dev = Development::identity(&g, &g.all_triangles());
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut windows = Vec::with_capacity(n);
    for t in 0..n as u32 {
        let mut labels = BTreeMap::new();
        let ri = r as i32;
        for y in -ri..ri {
            // a^i b^j t, walking i along the row.
            let mut x_t = s.act(-(ri as i64), y as i64, t);
            for x in -ri..ri {
                for id in grid_square_ids(r, x, y) {
                    labels.insert(id, x_t);
                }
                let (a, b) = (find(&mut parent, t), find(&mut parent, x_t));
                parent[a as usize] = b;
                x_t = s.a[x_t as usize];
            }
        }
        let leaf = leaf_of[t as usize];
        let mut dev = dev.clone();
        dev.domain.leaf_index = Some(leaf);
        windows.push(SuspensionWindow {
            point: t,
            leaf,
            window: LabeledComplex::with_labels(g.clone(), labels),
            development: dev,
        });
    }
    let mut classes: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for t in 0..n as u32 {
        let root = find(&mut parent, t);
        classes.entry(root).or_default().push(t);
    }
    let mut fiber_relation: Vec<Vec<u32>> = classes.into_values().collect();
    fiber_relation.sort();
    Suspension { windows, fiber_relation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{block_filtration, grid_block, single_triangle};
    use crate::relations::FinitePartition;

    #[test]
    fn identity_development_is_local_homeo() {
        let g = grid_disk(2);
        let d = Development::identity(&g, &g.all_triangles());
        let rep = validate_local_homeo(&g, &d);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.interior_vertices, 9);
    }

    #[test]
    fn flipped_triangle_is_reported() {
        let g = grid_disk(1);
        let mut d = Development::identity(&g, &g.all_triangles());
        let centre = crate::generators::grid_vertex_id(1, 0, 0);
        d.coords.insert(centre, Point::new(2.0, 0.3));
        let rep = validate_local_homeo(&g, &d);
        assert!(!rep.negative.is_empty());
        assert!(!rep.passed());
    }

    #[test]
    fn retracted_filtration_nests() {
        let g4 = grid_disk(4);
        let rf = retract_filtration(&g4, &[grid_block(&g4, 2), grid_block(&g4, 4)]);
        assert_eq!(rf.nested, vec![true]);
        assert!(!rf.regions[0].is_empty());
    }

    #[test]
    fn extension_of_central_disk() {
        let g4 = grid_disk(4);
        let b = grid_block(&g4, 1);
        let d = Development::identity(&g4, &b);
        let ext = extend_development(&g4, &b, &d, &g4.all_triangles(), 1, 4).unwrap();
        assert!(ext.radius >= 1.0);
        for (v, p) in &d.coords {
            assert_eq!(ext.development.coords[v], *p);
        }
        assert!(validate_local_homeo(&ext.complex, &ext.development).passed());
    }

    #[test]
    fn extension_from_nothing() {
        let g2 = grid_disk(2);
        let ext = extend_development(&g2, &Region::new(), &Development::default(), &g2.all_triangles(), 3, 0).unwrap();
        assert!(ext.radius >= 3.0);
        assert!(validate_local_homeo(&ext.complex, &ext.development).passed());
    }

    #[test]
    fn overlapping_images_are_rejected() {
        let g8 = grid_disk(8);
        let a = crate::generators::box_region(&g8, -5.0, -1.0, -3.0, 1.0);
        let b = crate::generators::box_region(&g8, 3.0, -1.0, 5.0, 1.0);
        let mut d = Development::identity(&g8, &a.union(&b));
        // Push the right block onto the left one.
        for t in &b.triangles {
            for v in g8.triangle(*t).unwrap() {
                let p = g8.position(v).unwrap();
                d.coords.insert(v, Point::new(p.x - 8.0, p.y));
            }
        }
        let r = extend_development(&g8, &a.union(&b), &d, &g8.all_triangles(), 1, 0);
        assert_eq!(r.unwrap_err(), CoveringError::Overlap);
    }

    #[test]
    fn three_stage_covering() {
        let g8 = grid_disk(8);
        let stages = [grid_block(&g8, 1), grid_block(&g8, 3), grid_block(&g8, 6)];
        let cov = build_covering(&g8, &stages, 4).unwrap();
        assert_eq!(cov.stages.len(), 3);
        for (k, s) in cov.stages.iter().enumerate() {
            assert!(s.certificate.passed(), "{:?}", s.certificate);
            assert!(s.certificate.certified_radius >= (k + 1) as f64);
        }
        assert!(cov.torus_surjective());
    }

    #[test]
    fn single_triangle_is_vacuous() {
        let c = single_triangle();
        let cov = build_covering(&c, &[c.all_triangles()], 4).unwrap();
        assert!(cov.passed() && cov.is_vacuous());
    }

    #[test]
    fn pipeline_cases() {
        let g1 = grid_disk(1);
        let f = Filtration::new(vec![FinitePartition::identity(g1.triangle_ids())]).unwrap();
        let rep = covering_from_hyperfinite(&f, &g1, &CoveringConfig::default()).unwrap();
        assert!(rep.vacuous() && rep.passed());

        let g8 = grid_disk(8);
        let f = block_filtration(&g8, &[1, 2, 3, 4], 5);
        let rep = covering_from_hyperfinite(&f, &g8, &CoveringConfig::default()).unwrap();
        assert!(rep.passed());

        let coarse = FinitePartition::single_class(g8.triangle_ids());
        let fine = FinitePartition::identity(g8.triangle_ids());
        let f = Filtration::new(vec![coarse, fine]).unwrap();
        let err = covering_from_hyperfinite(&f, &g8, &CoveringConfig::default()).unwrap_err();
        assert_eq!(err.stage, 1);
    }

    #[test]
    fn suspension_examples() {
        let s = SuspensionInstance::new(vec![0], vec![0], 2).unwrap();
        let sus = suspend(&s);
        assert_eq!(sus.windows.len(), 1);
        assert_eq!(sus.fiber_relation, vec![vec![0]]);

        let s = SuspensionInstance::new(vec![1, 2, 3, 4, 0], vec![2, 3, 4, 0, 1], 2).unwrap();
        assert_eq!(suspend(&s).fiber_relation, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(s.orbits().len(), 1);

        let err = SuspensionInstance::new(vec![1, 0, 2], vec![0, 2, 1], 1).unwrap_err();
        assert!(matches!(err, CoveringError::NonCommuting(_)));
    }

    #[test]
    fn random_pairs_commute() {
        for seed in 0..20 {
            let s = SuspensionInstance::random(32, 3, seed);
            assert!(SuspensionInstance::new(s.a.clone(), s.b.clone(), 3).is_ok());
            assert_eq!(suspend(&s).fiber_relation, s.orbits());
        }
    }

    #[test]
    fn cofinal_indices() {
        assert_eq!(cofinal(2, 3), vec![0, 1]);
        assert_eq!(cofinal(10, 3), vec![2, 5, 9]);
    }
}

