//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. They only use public accessors for raw vertices and triangles,
//! never the library's own adjacency tables.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use hyperlam::generators::{grid_disk, random_region, rng};
use hyperlam::pile::{Family, LabeledComplex};
use hyperlam::{components, FinitePartition, Point, TriId, Triangle, TriangulatedComplex, Vertex, VertexId};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn tri_list(c: &TriangulatedComplex) -> Vec<Triangle> {
    c.triangles().collect()
}

fn positions(c: &TriangulatedComplex) -> HashMap<VertexId, Point> {
    c.vertices().iter().map(|v| (v.id, v.pos)).collect()
}

/// Triangles containing both endpoints, for every edge, by scanning the
/// triangles through each vertex.
pub fn edge_owners(c: &TriangulatedComplex) -> BTreeMap<(VertexId, VertexId), Vec<TriId>> {
    let tris = tri_list(c);
    let mut through: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for v in t.vertices {
            through.entry(v).or_default().push(i);
        }
    }
    let mut out = BTreeMap::new();
    for t in &tris {
        for k in 0..3 {
            let (a, b) = (t.vertices[k], t.vertices[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if out.contains_key(&key) {
                continue;
            }
            let owners: Vec<TriId> =
                through[&a].iter().filter(|&&s| tris[s].vertices.contains(&b)).map(|&s| tris[s].id).collect();
            out.insert(key, owners);
        }
    }
    out
}

/// `(sq1, sq0, int)` of a partition, straight from the definitions.
pub fn skeleton_brute(
    p: &FinitePartition,
    c: &TriangulatedComplex,
) -> (BTreeSet<(VertexId, VertexId)>, BTreeSet<VertexId>, BTreeSet<TriId>) {
    let class = |t: TriId| p.class_index(t).map_or(u64::MAX - t.0 as u64, |k| k as u64);
    let mut e1 = BTreeSet::new();
    let mut v0 = BTreeSet::new();
    for (key, owners) in edge_owners(c) {
        if owners.len() == 1 || class(owners[0]) != class(owners[1]) {
            e1.insert(key);
            v0.insert(key.0);
            v0.insert(key.1);
        }
    }
    let int = tri_list(c).iter().filter(|t| t.vertices.iter().all(|v| !v0.contains(v))).map(|t| t.id).collect();
    (e1, v0, int)
}

fn quant(p: Point) -> (i64, i64) {
    ((p.x * 1048576.0).round() as i64, (p.y * 1048576.0).round() as i64)
}

/// Envelope of `omega` in the square window `[-n, n]^2`: flood fill of the
/// complement across shared geometric edges, seeded at triangles with an
/// edge on the square's boundary. Returns `(filled, unbounded)`.
pub fn envelope_flood(c: &TriangulatedComplex, n: f64, omega: &BTreeSet<TriId>) -> (BTreeSet<TriId>, BTreeSet<TriId>) {
    let pos = positions(c);
    let tris = tri_list(c);
    let mut by_edge: HashMap<((i64, i64), (i64, i64)), Vec<usize>> = HashMap::new();
    let mut seeds = Vec::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (pos[&t.vertices[k]], pos[&t.vertices[(k + 1) % 3]]);
            let (qa, qb) = (quant(a), quant(b));
            by_edge.entry((qa.min(qb), qa.max(qb))).or_default().push(i);
            let side = |p: Point| [p.x == -n, p.x == n, p.y == -n, p.y == n];
            if (0..4).any(|s| side(a)[s] && side(b)[s]) && !omega.contains(&t.id) {
                seeds.push(i);
            }
        }
    }
    let mut seen = vec![false; tris.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(i) = queue.pop_front() {
        let t = &tris[i];
        for k in 0..3 {
            let (qa, qb) = (quant(pos[&t.vertices[k]]), quant(pos[&t.vertices[(k + 1) % 3]]));
            for &j in &by_edge[&(qa.min(qb), qa.max(qb))] {
                if !seen[j] && !omega.contains(&tris[j].id) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let mut filled = BTreeSet::new();
    let mut unbounded = BTreeSet::new();
    for (i, t) in tris.iter().enumerate() {
        if omega.contains(&t.id) {
            continue;
        }
        if seen[i] {
            unbounded.insert(t.id);
        } else {
            filled.insert(t.id);
        }
    }
    (filled, unbounded)
}

/// Vertices on an edge with a single owner.
pub fn boundary_vertices(c: &TriangulatedComplex) -> BTreeSet<VertexId> {
    edge_owners(c).into_iter().filter(|(_, o)| o.len() == 1).flat_map(|((a, b), _)| [a, b]).collect()
}

/// Cotangent weights `(cot a + cot b) / 2` from the corner angles,
/// clamped below at `floor`.
pub fn cotangent_weights(c: &TriangulatedComplex, floor: f64) -> BTreeMap<(VertexId, VertexId), f64> {
    let pos = positions(c);
    let mut w: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
    for t in tri_list(c) {
        for k in 0..3 {
            let (a, b, o) = (t.vertices[k], t.vertices[(k + 1) % 3], t.vertices[(k + 2) % 3]);
            let (u, v) = (pos[&a].sub(pos[&o]), pos[&b].sub(pos[&o]));
            *w.entry((a.min(b), a.max(b))).or_insert(0.0) += 0.5 * u.dot(v) / u.cross(v).abs();
        }
    }
    for x in w.values_mut() {
        *x = x.max(floor);
    }
    w
}

/// Dense LU solve of the weighted Dirichlet problem.
pub fn dirichlet_dense(
    c: &TriangulatedComplex,
    weights: &BTreeMap<(VertexId, VertexId), f64>,
    boundary: &BTreeMap<VertexId, f64>,
) -> BTreeMap<VertexId, f64> {
    let free: Vec<VertexId> = c.vertices().iter().map(|v| v.id).filter(|v| !boundary.contains_key(v)).collect();
    let idx: HashMap<VertexId, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = free.len();
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    for (&(p, q), &w) in weights {
        for (x, y) in [(p, q), (q, p)] {
            if let Some(&i) = idx.get(&x) {
                a[(i, i)] += w;
                match idx.get(&y) {
                    Some(&j) => a[(i, j)] -= w,
                    None => rhs[i] += w * boundary[&y],
                }
            }
        }
    }
    let sol = a.lu().solve(&rhs).expect("Dirichlet matrix is nonsingular");
    let mut out = boundary.clone();
    for (i, v) in free.into_iter().enumerate() {
        out.insert(v, sol[i]);
    }
    out
}

/// Copy of `c` with no frontier vertices, vertex ids shifted by `dv`,
/// triangle ids by `dt` and positions translated by `shift`.
pub fn relabel(c: &TriangulatedComplex, dv: u32, dt: u32, shift: Point) -> TriangulatedComplex {
    let verts = c
        .vertices()
        .iter()
        .map(|v| Vertex { id: VertexId(v.id.0 + dv), pos: v.pos.add(shift), on_frontier: false })
        .collect();
    let tris = c
        .triangles()
        .map(|t| Triangle { id: TriId(t.id.0 + dt), vertices: t.vertices.map(|v| VertexId(v.0 + dv)) })
        .collect();
    TriangulatedComplex::new(verts, tris, None).unwrap()
}

/// All orientation- and label-preserving isomorphisms between connected
/// labelled complexes, found by trying every image of one seed triangle
/// and propagating across edges.
pub fn isomorphisms(a: &LabeledComplex, b: &LabeledComplex) -> Vec<BTreeMap<VertexId, VertexId>> {
    let ta = tri_list(&a.complex);
    let tb = tri_list(&b.complex);
    if ta.len() != tb.len() || a.complex.num_vertices() != b.complex.num_vertices() || ta.is_empty() {
        return Vec::new();
    }
    let label = |lc: &LabeledComplex, t: TriId| lc.labels.get(&t).copied().unwrap_or(0);
    let owners_a = edge_owners(&a.complex);
    let owners_b = edge_owners(&b.complex);
    let by_id_a: HashMap<TriId, Triangle> = ta.iter().map(|t| (t.id, *t)).collect();
    let by_id_b: HashMap<TriId, Triangle> = tb.iter().map(|t| (t.id, *t)).collect();
    let across = |owners: &BTreeMap<(VertexId, VertexId), Vec<TriId>>, t: TriId, x: VertexId, y: VertexId| {
        owners[&(x.min(y), x.max(y))].iter().copied().find(|&s| s != t)
    };
    let mut out = Vec::new();
    for s in &tb {
        for r in 0..3 {
            let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
            let mut tmap: HashMap<TriId, TriId> = HashMap::new();
            let mut queue = VecDeque::from([(ta[0].id, s.id, r)]);
            let mut ok = true;
            while let Some((x, y, rot)) = queue.pop_front() {
                if let Some(&prev) = tmap.get(&x) {
                    ok &= prev == y;
                    continue;
                }
                if tmap.values().any(|&v| v == y) || label(a, x) != label(b, y) {
                    ok = false;
                    break;
                }
                tmap.insert(x, y);
                let (vx, vy) = (by_id_a[&x].vertices, by_id_b[&y].vertices);
                for k in 0..3 {
                    let img = vy[(k + rot) % 3];
                    match vmap.get(&vx[k]) {
                        Some(&w) if w != img => ok = false,
                        _ => {
                            vmap.insert(vx[k], img);
                        }
                    }
                }
                if !ok {
                    break;
                }
                for k in 0..3 {
                    let (p, q) = (vx[k], vx[(k + 1) % 3]);
                    let (ip, iq) = (vmap[&p], vmap[&q]);
                    let na = across(&owners_a, x, p, q);
                    let nb = across(&owners_b, y, ip, iq);
                    match (na, nb) {
                        (None, None) => {}
                        (Some(na), Some(nb)) => {
                            // Rotation taking the neighbour's listing onto its image.
                            let la = by_id_a[&na].vertices;
                            let lb = by_id_b[&nb].vertices;
                            let pa = la.iter().position(|&v| v == p).unwrap();
                            let pb = lb.iter().position(|&v| v == ip).unwrap();
                            queue.push_back((na, nb, (pb + 3 - pa) % 3));
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    break;
                }
            }
            let injective = vmap.values().collect::<BTreeSet<_>>().len() == vmap.len();
            if ok && tmap.len() == ta.len() && injective && vmap.len() == a.complex.num_vertices() && !out.contains(&vmap) {
                out.push(vmap);
            }
        }
    }
    out
}

/// Groups the keys of `items` by a symmetric relation, assuming it is an
/// equivalence. Classes come out sorted.
pub fn group_by<T>(items: &BTreeMap<u32, T>, related: impl Fn(&T, &T) -> bool) -> BTreeSet<BTreeSet<u32>> {
    let mut classes: Vec<(u32, BTreeSet<u32>)> = Vec::new();
    for (&k, x) in items {
        match classes.iter_mut().find(|(r, _)| related(&items[r], x)) {
            Some((_, c)) => {
                c.insert(k);
            }
            None => classes.push((k, [k].into_iter().collect())),
        }
    }
    classes.into_iter().map(|(_, c)| c).collect()
}

/// Orbits of the group generated by the permutations `a` and `b`, by
/// repeated min-label propagation.
pub fn orbits_brute(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut label: Vec<u32> = (0..n as u32).collect();
    loop {
        let mut changed = false;
        for t in 0..n {
            for u in [a[t] as usize, b[t] as usize] {
                let m = label[t].min(label[u]);
                if label[t] != m || label[u] != m {
                    label[t] = m;
                    label[u] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for t in 0..n {
        classes.entry(label[t]).or_default().push(t as u32);
    }
    let mut out: Vec<Vec<u32>> = classes.into_values().collect();
    out.sort();
    out
}

/// Connected labelled shapes cut from a grid window, each placed several
/// times at shifted positions and ids.
pub fn shape_family(seed: u64, count: usize, radius: u32) -> Family {
    let mut r = rng(seed);
    let g = grid_disk(radius);
    let shapes: Vec<LabeledComplex> = (0..4)
        .map(|k| {
            let region = random_region(&g, seed * 31 + k);
            let comp = components(&g, &region).into_iter().max_by_key(|c| c.len()).unwrap();
            let c = relabel(&g.subcomplex(&comp).unwrap(), 0, 0, Point::new(0.0, 0.0));
            let labels = c.triangle_ids().map(|t| (t, (t.0 % 2) * (k as u32 % 2))).collect();
            LabeledComplex::with_labels(c, labels)
        })
        .collect();
    let mut fibers = BTreeMap::new();
    for t in 0..count as u32 {
        let k = r.gen_range(0..shapes.len());
        let s = &shapes[k];
        let shift = Point::new(r.gen_range(-4..5) as f64, r.gen_range(-4..5) as f64);
        let c = relabel(&s.complex, 1000 * t, 1000 * t, shift);
        let labels = s.labels.iter().map(|(id, &l)| (TriId(id.0 + 1000 * t), l)).collect();
        fibers.insert(t, LabeledComplex::with_labels(c, labels));
    }
    Family::new(fibers)
}
