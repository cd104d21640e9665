//! Discrete harmonic Dirichlet problems on planar windows, the punctured
//! exhaustion scheme and Cauchy-Riemann residuals.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Region, TriId, TriangulatedComplex, VertexId};
use crate::geometry::Point;
use crate::linalg::{conjugate_gradient, Csr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UniformizeError {
    #[error("boundary vertex {0} has no value")]
    MissingBoundaryValue(VertexId),
    #[error("vertex {0} has no value")]
    MissingValue(VertexId),
    #[error("the window has no boundary vertex")]
    NoBoundary,
    #[error("the window is not connected")]
    Disconnected,
    #[error("non-positive edge weight {0}")]
    NonPositiveWeight(f64),
    #[error("linear solver did not converge (residual {0:e})")]
    NotConverged(f64),
    #[error("puncture {0} is not an interior vertex of every window")]
    PunctureOnBoundary(VertexId),
    #[error("degenerate triangle {0}")]
    DegenerateTriangle(TriId),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    #[default]
    Cotangent,
    Uniform,
}

impl std::str::FromStr for WeightScheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cotangent" => Ok(WeightScheme::Cotangent),
            "uniform" => Ok(WeightScheme::Uniform),
            other => Err(format!("unknown weight scheme `{other}`")),
        }
    }
}

/// Lower clamp for cotangent weights.
pub const MIN_COT_WEIGHT: f64 = 1e-8;

/// Per-edge weights. Cotangent weights are `(cot a + cot b) / 2` over the
/// angles opposite the edge, clamped below at [`MIN_COT_WEIGHT`].
pub fn edge_weights(c: &TriangulatedComplex, scheme: WeightScheme) -> Vec<f64> {
    match scheme {
        WeightScheme::Uniform => vec![1.0; c.num_edges()],
        WeightScheme::Cotangent => {
            let mut w = vec![0.0; c.num_edges()];
            for t in 0..c.num_triangles() as u32 {
                let p = c.tri_points(t);
                let edges = c.tri_edges(t);
                for k in 0..3 {
                    // Edge k joins corners k and k+1; the opposite corner is k+2.
                    let o = p[(k + 2) % 3];
                    let u = p[k].sub(o);
                    let v = p[(k + 1) % 3].sub(o);
                    w[edges[k] as usize] += 0.5 * u.dot(v) / u.cross(v);
                }
            }
            w.iter().map(|&x| x.max(MIN_COT_WEIGHT)).collect()
        }
    }
}

/// A Dirichlet problem: the values of `fixed` are imposed (they must cover
/// the boundary of `window`), every other vertex is harmonic.
#[derive(Clone, Debug)]
pub struct DirichletProblem<'a> {
    pub window: &'a TriangulatedComplex,
    pub boundary_values: BTreeMap<VertexId, f64>,
    pub weights: Vec<f64>,
}

impl<'a> DirichletProblem<'a> {
    pub fn new(window: &'a TriangulatedComplex, boundary_values: BTreeMap<VertexId, f64>, scheme: WeightScheme) -> Self {
        DirichletProblem { window, boundary_values, weights: edge_weights(window, scheme) }
    }
}

pub(crate) fn boundary_vertex_mask(c: &TriangulatedComplex) -> Vec<bool> {
    let mut on = vec![false; c.num_vertices()];
    for e in c.edges() {
        if e.is_boundary() {
            on[e.v[0] as usize] = true;
            on[e.v[1] as usize] = true;
        }
    }
    on
}

/// Harmonic extension by vertex index: `fixed[v]` is `Some(value)` for
/// imposed vertices.
pub(crate) fn harmonic_extension(
    c: &TriangulatedComplex,
    weights: &[f64],
    fixed: &[Option<f64>],
    tol: f64,
) -> Result<Vec<f64>, UniformizeError> {
    let nv = c.num_vertices();
    let mut free_index = vec![usize::MAX; nv];
    let mut free = Vec::new();
    for v in 0..nv {
        if fixed[v].is_none() {
            free_index[v] = free.len();
            free.push(v);
        }
    }
    let mut x: Vec<f64> = fixed.iter().map(|f| f.unwrap_or(0.0)).collect();
    if free.is_empty() {
        return Ok(x);
    }
    let mut trip = Vec::with_capacity(free.len() * 7);
    let mut rhs = vec![0.0; free.len()];
    for (e, edge) in c.edges().iter().enumerate() {
        let w = weights[e];
        let (a, b) = (edge.v[0] as usize, edge.v[1] as usize);
        for (p, q) in [(a, b), (b, a)] {
            let i = free_index[p];
            if i == usize::MAX {
                continue;
            }
            trip.push((i, i, w));
            match fixed[q] {
                Some(val) => rhs[i] += w * val,
                None => trip.push((i, free_index[q], -w)),
            }
        }
    }
    let a = Csr::from_triplets(free.len(), trip);
    // Warm start from the mean of the imposed values.
    let (sum, cnt) = fixed.iter().flatten().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    let mean = if cnt > 0 { sum / cnt as f64 } else { 0.0 };
    let mut y = vec![mean; free.len()];
    let st = conjugate_gradient(&a, &rhs, &mut y, tol, 20 * free.len() + 1000);
    if !st.converged {
        return Err(UniformizeError::NotConverged(st.residual));
    }
    for (i, &v) in free.iter().enumerate() {
        x[v] = y[i];
    }
    Ok(x)
}

/// Solution of the discrete Dirichlet problem at every vertex.
pub fn dirichlet_solve(p: &DirichletProblem) -> Result<BTreeMap<VertexId, f64>, UniformizeError> {
    let c = p.window;
    if let Some(&w) = p.weights.iter().find(|&&w| !(w > 0.0)) {
        return Err(UniformizeError::NonPositiveWeight(w));
    }
    if !c.is_connected() {
        return Err(UniformizeError::Disconnected);
    }
    let on_bd = boundary_vertex_mask(c);
    if !on_bd.iter().any(|&b| b) {
        return Err(UniformizeError::NoBoundary);
    }
    let mut fixed = vec![None; c.num_vertices()];
    for (v, &b) in on_bd.iter().enumerate() {
        let id = c.vertex(v as u32).id;
        match p.boundary_values.get(&id) {
            Some(&val) => fixed[v] = Some(val),
            None if b => return Err(UniformizeError::MissingBoundaryValue(id)),
            None => {}
        }
    }
    let x = harmonic_extension(c, &p.weights, &fixed, 1e-14)?;
    Ok((0..c.num_vertices()).map(|v| (c.vertex(v as u32).id, x[v])).collect())
}

/// Outer boundary data of the exhaustion scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OuterData {
    Constant(f64),
    /// Same function as on the inner circle.
    Inner,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub hole_radius: f64,
    pub domain: Region,
    pub u: BTreeMap<VertexId, f64>,
    pub v: BTreeMap<VertexId, f64>,
}

#[derive(Clone, Debug)]
pub struct UniformizingSequence {
    pub stages: Vec<Stage>,
    /// `sup |u_{n+1} - u_n|` over common vertices, per consecutive pair.
    pub sup_diff_u: Vec<f64>,
    pub sup_diff_v: Vec<f64>,
}

/// Triangles of `region` meeting the open disk `B(z0, r)` or incident to
/// the puncture vertex.
fn hole(host: &TriangulatedComplex, region: &Region, z0: u32, r: f64) -> Region {
    let c = host.vertex(z0).pos;
    let mask = host.mask(region);
    Region::from_ids((0..host.num_triangles() as u32).filter_map(|t| {
        if !mask[t as usize] {
            return None;
        }
        let incident = host.tri_vertices(t).contains(&z0);
        let [a, b, p] = host.tri_points(t);
        let inside = crate::geometry::in_closed_triangle(c, a, b, p);
        let d = crate::geometry::point_segment_distance(c, a, b)
            .min(crate::geometry::point_segment_distance(c, b, p))
            .min(crate::geometry::point_segment_distance(c, p, a));
        (incident || inside || d < r).then(|| host.tri_id(t))
    }))
}

/// Stage `n` solves on `Omega_n - B(z0, 1/n)` with `Re(1/z)` (for `u`) and
/// `Im(1/z)` (for `v`) on the inner boundary, `z` the flat coordinate
/// centred at the puncture, and `outer` on the outer boundary.
pub fn uniformizing_sequence(
    host: &TriangulatedComplex,
    windows: &[Region],
    z0: VertexId,
    outer: OuterData,
    scheme: WeightScheme,
) -> Result<UniformizingSequence, UniformizeError> {
    let zi = host.vertex_idx(z0).ok_or(UniformizeError::PunctureOnBoundary(z0))?;
    let centre = host.vertex(zi).pos;
    let mut stages: Vec<Stage> = Vec::new();
    for (k, w) in windows.iter().enumerate() {
        let sub = host.subcomplex(w)?;
        let interior = sub
            .vertex_idx(z0)
            .is_some_and(|i| !boundary_vertex_mask(&sub)[i as usize]);
        if !interior {
            return Err(UniformizeError::PunctureOnBoundary(z0));
        }
        let r = 1.0 / (k + 1) as f64;
        let h = hole(host, w, zi, r);
        let domain = w.difference(&h);
        let dc = host.subcomplex(&domain)?;
        let hole_verts: BTreeSet<VertexId> =
            h.triangles.iter().flat_map(|&t| host.triangle(t).unwrap()).collect();
        let on_bd = boundary_vertex_mask(&dc);
        let mut fu = vec![None; dc.num_vertices()];
        let mut fv = vec![None; dc.num_vertices()];
        for v in 0..dc.num_vertices() {
            if !on_bd[v] {
                continue;
            }
            let vert = dc.vertex(v as u32);
            let z = dc.displacement(centre, vert.pos);
            let r2 = z.dot(z);
            let (iu, iv) = (z.x / r2, -z.y / r2);
            let (ou, ov) = match outer {
                OuterData::Constant(c) => (c, c),
                OuterData::Inner => (iu, iv),
            };
            if hole_verts.contains(&vert.id) {
                fu[v] = Some(iu);
                fv[v] = Some(iv);
            } else {
                fu[v] = Some(ou);
                fv[v] = Some(ov);
            }
        }
        let weights = edge_weights(&dc, scheme);
        let u = harmonic_extension(&dc, &weights, &fu, 1e-13)?;
        let v = harmonic_extension(&dc, &weights, &fv, 1e-13)?;
        let ids = |x: Vec<f64>| -> BTreeMap<VertexId, f64> {
            x.into_iter().enumerate().map(|(i, val)| (dc.vertex(i as u32).id, val)).collect()
        };
        stages.push(Stage { hole_radius: r, domain, u: ids(u), v: ids(v) });
    }
    let sup = |a: &BTreeMap<VertexId, f64>, b: &BTreeMap<VertexId, f64>| {
        a.iter()
            .filter_map(|(k, x)| b.get(k).map(|y| (x - y).abs()))
            .fold(0.0, f64::max)
    };
    let sup_diff_u = stages.windows(2).map(|w| sup(&w[0].u, &w[1].u)).collect();
    let sup_diff_v = stages.windows(2).map(|w| sup(&w[0].v, &w[1].v)).collect();
    Ok(UniformizingSequence { stages, sup_diff_u, sup_diff_v })
}

/// Gradient of the affine interpolant of vertex values on one triangle.
fn gradient(p: [Point; 3], f: [f64; 3]) -> Option<Point> {
    let e1 = p[1].sub(p[0]);
    let e2 = p[2].sub(p[0]);
    let det = e1.cross(e2);
    if det == 0.0 {
        return None;
    }
    let d1 = f[1] - f[0];
    let d2 = f[2] - f[0];
    Some(Point::new((d1 * e2.y - d2 * e1.y) / det, (d2 * e1.x - d1 * e2.x) / det))
}

/// Per triangle, `|grad u - (v_y, -v_x)|` of the affine interpolants.
pub fn conformal_residual(
    c: &TriangulatedComplex,
    u: &BTreeMap<VertexId, f64>,
    v: &BTreeMap<VertexId, f64>,
) -> Result<BTreeMap<TriId, f64>, UniformizeError> {
    let mut out = BTreeMap::new();
    for t in 0..c.num_triangles() as u32 {
        let ids = c.tri_vertices(t).map(|i| c.vertex(i).id);
        let get = |m: &BTreeMap<VertexId, f64>, k: usize| m.get(&ids[k]).copied().ok_or(UniformizeError::MissingValue(ids[k]));
        let fu = [get(u, 0)?, get(u, 1)?, get(u, 2)?];
        let fv = [get(v, 0)?, get(v, 1)?, get(v, 2)?];
        let p = c.tri_points(t);
        let gu = gradient(p, fu).ok_or(UniformizeError::DegenerateTriangle(c.tri_id(t)))?;
        let gv = gradient(p, fv).ok_or(UniformizeError::DegenerateTriangle(c.tri_id(t)))?;
        out.insert(c.tri_id(t), gu.sub(Point::new(gv.y, -gv.x)).norm());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid_block, grid_disk, grid_vertex_id};

    fn boundary_from(c: &TriangulatedComplex, f: impl Fn(Point) -> f64) -> BTreeMap<VertexId, f64> {
        let on = boundary_vertex_mask(c);
        (0..c.num_vertices())
            .filter(|&v| on[v])
            .map(|v| (c.vertex(v as u32).id, f(c.vertex(v as u32).pos)))
            .collect()
    }

    #[test]
    fn constant_and_linear_data() {
        let g = grid_disk(3);
        let p = DirichletProblem::new(&g, boundary_from(&g, |_| 2.5), WeightScheme::Cotangent);
        assert!(dirichlet_solve(&p).unwrap().values().all(|&x| (x - 2.5).abs() < 1e-12));
        let p = DirichletProblem::new(&g, boundary_from(&g, |q| q.x), WeightScheme::Cotangent);
        let sol = dirichlet_solve(&p).unwrap();
        for v in g.vertices() {
            assert!((sol[&v.id] - v.pos.x).abs() < 1e-12);
        }
    }

    #[test]
    fn missing_boundary_value() {
        let g = grid_disk(1);
        let p = DirichletProblem::new(&g, BTreeMap::new(), WeightScheme::Uniform);
        assert!(matches!(dirichlet_solve(&p), Err(UniformizeError::MissingBoundaryValue(_))));
    }

    #[test]
    fn residual_signs() {
        let g = grid_disk(2);
        let x: BTreeMap<_, _> = g.vertices().iter().map(|v| (v.id, v.pos.x)).collect();
        let y: BTreeMap<_, _> = g.vertices().iter().map(|v| (v.id, v.pos.y)).collect();
        let ny: BTreeMap<_, _> = g.vertices().iter().map(|v| (v.id, -v.pos.y)).collect();
        assert!(conformal_residual(&g, &x, &y).unwrap().values().all(|&r| r == 0.0));
        assert!(conformal_residual(&g, &x, &ny).unwrap().values().all(|&r| (r - 2.0).abs() < 1e-15));
    }

    #[test]
    fn exhaustion_stages() {
        let g = grid_disk(6);
        let z0 = grid_vertex_id(6, 0, 0);
        let ws = vec![grid_block(&g, 3), grid_block(&g, 5)];
        let seq = uniformizing_sequence(&g, &ws, z0, OuterData::Constant(0.0), WeightScheme::Cotangent).unwrap();
        assert_eq!(seq.stages.len(), 2);
        assert_eq!(seq.sup_diff_u.len(), 1);
        let edge = grid_vertex_id(6, 3, 0);
        let err = uniformizing_sequence(&g, &[grid_block(&g, 3)], edge, OuterData::Inner, WeightScheme::Uniform);
        assert!(matches!(err, Err(UniformizeError::PunctureOnBoundary(_))));
    }
}
