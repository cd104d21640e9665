//! Seeded instance generators: grid windows, grid tori, block filtrations,
//! random partitions and regions, linear-foliation windows.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Region, TriId, Triangle, TriangulatedComplex, Vertex, VertexId};
use crate::geometry::Point;
use crate::relations::{Filtration, FinitePartition};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Axis-aligned grid window on the integer points of `[x0, x1] x [y0, y1]`.
///
/// Unit square `(i, j)` (offsets from the lower-left corner) is split along
/// its rising diagonal into triangles `2 (j w + i)` (lower) and
/// `2 (j w + i) + 1` (upper), `w = x1 - x0`. Perimeter vertices are frontier.
pub fn grid_rect(x0: i32, y0: i32, x1: i32, y1: i32) -> TriangulatedComplex {
    assert!(x1 > x0 && y1 > y0, "empty grid");
    let w = (x1 - x0) as u32;
    let h = (y1 - y0) as u32;
    let vid = |i: u32, j: u32| VertexId(j * (w + 1) + i);
    let mut vertices = Vec::with_capacity(((w + 1) * (h + 1)) as usize);
    for j in 0..=h {
        for i in 0..=w {
            vertices.push(Vertex {
                id: vid(i, j),
                pos: Point::new((x0 + i as i32) as f64, (y0 + j as i32) as f64),
                on_frontier: i == 0 || j == 0 || i == w || j == h,
            });
        }
    }
    let mut triangles = Vec::with_capacity((2 * w * h) as usize);
    for j in 0..h {
        for i in 0..w {
            let s = 2 * (j * w + i);
            triangles.push(Triangle { id: TriId(s), vertices: [vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)] });
            triangles.push(Triangle {
                id: TriId(s + 1),
                vertices: [vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)],
            });
        }
    }
    TriangulatedComplex::new(vertices, triangles, None).expect("grid is valid")
}

/// The grid disk `G_n` on `[-n, n]^2`, with `8 n^2` triangles.
pub fn grid_disk(n: u32) -> TriangulatedComplex {
    let n = n as i32;
    grid_rect(-n, -n, n, n)
}

/// Vertex id of the lattice point `(x, y)` in [`grid_disk`]`(n)`.
pub fn grid_vertex_id(n: u32, x: i32, y: i32) -> VertexId {
    let n = n as i32;
    VertexId(((y + n) * (2 * n + 1) + (x + n)) as u32)
}

/// Triangle ids of unit square `(x, y)` (lower-left corner) of `grid_disk(n)`.
pub fn grid_square_ids(n: u32, x: i32, y: i32) -> [TriId; 2] {
    let n = n as i32;
    let w = 2 * n;
    let s = (2 * ((y + n) * w + (x + n))) as u32;
    [TriId(s), TriId(s + 1)]
}

/// Triangles of `host` whose vertices all satisfy `|x|, |y| <= k`.
pub fn grid_block(host: &TriangulatedComplex, k: u32) -> Region {
    let k = k as f64;
    Region::from_ids((0..host.num_triangles() as u32).filter_map(|t| {
        let inside = host
            .tri_points(t)
            .iter()
            .all(|p| p.x.abs() <= k && p.y.abs() <= k);
        inside.then(|| host.tri_id(t))
    }))
}

/// Triangles of `host` inside the axis box `[x0, x1] x [y0, y1]`.
pub fn box_region(host: &TriangulatedComplex, x0: f64, y0: f64, x1: f64, y1: f64) -> Region {
    Region::from_ids((0..host.num_triangles() as u32).filter_map(|t| {
        let inside = host
            .tri_points(t)
            .iter()
            .all(|p| p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1);
        inside.then(|| host.tri_id(t))
    }))
}

/// Closed `m x m` periodic grid torus with period `[m, m]`.
pub fn grid_torus(m: u32) -> TriangulatedComplex {
    assert!(m >= 3, "torus grid needs m >= 3");
    let vid = |i: u32, j: u32| VertexId((j % m) * m + (i % m));
    let mut vertices = Vec::new();
    for j in 0..m {
        for i in 0..m {
            vertices.push(Vertex { id: vid(i, j), pos: Point::new(i as f64, j as f64), on_frontier: false });
        }
    }
    let mut triangles = Vec::new();
    for j in 0..m {
        for i in 0..m {
            let s = 2 * (j * m + i);
            triangles.push(Triangle { id: TriId(s), vertices: [vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)] });
            triangles.push(Triangle {
                id: TriId(s + 1),
                vertices: [vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)],
            });
        }
    }
    TriangulatedComplex::new(vertices, triangles, Some([m as f64, m as f64])).expect("torus grid is valid")
}

pub fn single_triangle() -> TriangulatedComplex {
    let v = |id, x, y| Vertex { id: VertexId(id), pos: Point::new(x, y), on_frontier: false };
    TriangulatedComplex::new(
        vec![v(0, 0.0, 0.0), v(1, 1.0, 0.0), v(2, 0.0, 1.0)],
        vec![Triangle { id: TriId(0), vertices: [VertexId(0), VertexId(1), VertexId(2)] }],
        None,
    )
    .expect("valid triangle")
}

/// Partition of a grid window into axis-aligned `b x b` blocks of unit
/// squares, the block lattice shifted by `offset`. Blocks are keyed by
/// their lattice index.
pub fn block_partition(host: &TriangulatedComplex, b: u32, offset: (i32, i32)) -> FinitePartition {
    let b = b as f64;
    let mut classes: BTreeMap<(i64, i64), Vec<TriId>> = BTreeMap::new();
    for t in 0..host.num_triangles() as u32 {
        let [p, q, r] = host.tri_points(t);
        let c = Point::centroid3(p, q, r);
        let key = (
            ((c.x - offset.0 as f64) / b).floor() as i64,
            ((c.y - offset.1 as f64) / b).floor() as i64,
        );
        classes.entry(key).or_default().push(host.tri_id(t));
    }
    FinitePartition::from_classes(classes.into_values()).expect("blocks partition the window")
}

/// Block filtration on a grid window: steps use blocks of side `2^k` for
/// each `k` in `exps`, all sharing one lattice offset drawn from `seed`
/// (so each step coarsens the previous), followed by the one-class partition.
pub fn block_filtration(host: &TriangulatedComplex, exps: &[u32], seed: u64) -> Filtration {
    let mut r = rng(seed);
    let top = 1i32 << exps.iter().copied().max().unwrap_or(0);
    let offset = (r.gen_range(0..top), r.gen_range(0..top));
    let mut steps: Vec<FinitePartition> = exps
        .iter()
        .map(|&k| block_partition(host, 1 << k, offset))
        .collect();
    steps.push(FinitePartition::single_class(host.triangle_ids()));
    Filtration::new(steps).expect("block steps share a universe")
}

/// Random partition of the triangles of `host`: a random number of seed
/// triangles grown into classes by randomized edge-adjacent flooding,
/// so classes are connected in the dual graph.
pub fn random_partition(host: &TriangulatedComplex, seed: u64) -> FinitePartition {
    let mut r = rng(seed);
    let n = host.num_triangles();
    let k = r.gen_range(1..=n.clamp(1, 40));
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut r);
    let mut class = vec![u32::MAX; n];
    let mut frontier: Vec<u32> = Vec::new();
    for (c, &t) in order.iter().take(k).enumerate() {
        class[t as usize] = c as u32;
        frontier.push(t);
    }
    while !frontier.is_empty() {
        let i = r.gen_range(0..frontier.len());
        let t = frontier.swap_remove(i);
        for e in 0..3 {
            if let Some(nb) = host.neighbor(t, e) {
                if class[nb as usize] == u32::MAX {
                    class[nb as usize] = class[t as usize];
                    frontier.push(nb);
                }
            }
        }
    }
    // Disconnected hosts: leftovers become singletons.
    let mut next = k as u32;
    for c in class.iter_mut() {
        if *c == u32::MAX {
            *c = next;
            next += 1;
        }
    }
    let mut classes: BTreeMap<u32, Vec<TriId>> = BTreeMap::new();
    for (t, &c) in class.iter().enumerate() {
        classes.entry(c).or_default().push(host.tri_id(t as u32));
    }
    FinitePartition::from_classes(classes.into_values()).expect("valid partition")
}

/// Random region: a union of a few random edge-connected blobs and random
/// annuli, plus isolated random triangles.
pub fn random_region(host: &TriangulatedComplex, seed: u64) -> Region {
    let mut r = rng(seed);
    let n = host.num_triangles() as u32;
    let mut mask = vec![false; n as usize];
    let blobs = r.gen_range(1..=4);
    for _ in 0..blobs {
        let start = r.gen_range(0..n);
        let size = r.gen_range(1..=(n / 6).max(1));
        let mut grown = vec![start];
        mask[start as usize] = true;
        let mut tries = 0;
        while (grown.len() as u32) < size && tries < 20 * size {
            tries += 1;
            let t = grown[r.gen_range(0..grown.len())];
            if let Some(nb) = host.neighbor(t, r.gen_range(0..3)) {
                if !mask[nb as usize] {
                    mask[nb as usize] = true;
                    grown.push(nb);
                }
            }
        }
    }
    // Square annuli create bounded holes.
    let rings = r.gen_range(0..=2);
    for _ in 0..rings {
        let cx = r.gen_range(-5..=5) as f64;
        let cy = r.gen_range(-5..=5) as f64;
        let inner = r.gen_range(1..=3) as f64;
        let outer = inner + r.gen_range(1..=2) as f64;
        for t in 0..n {
            let [a, b, c] = host.tri_points(t);
            let g = Point::centroid3(a, b, c);
            let d = (g.x - cx).abs().max((g.y - cy).abs());
            if d > inner && d < outer {
                mask[t as usize] = true;
            }
        }
    }
    if r.gen_bool(0.5) {
        // Punch a random hole pattern into the mask.
        for t in 0..n {
            if mask[t as usize] && r.gen_bool(0.05) {
                mask[t as usize] = false;
            }
        }
    }
    host.region_from_mask(&mask)
}

/// Triangles of a grid window at lattice distance `>= d` from the frontier:
/// every vertex lies at Chebyshev distance `>= d` from the window boundary.
pub fn away_from_frontier(host: &TriangulatedComplex, d: f64) -> Region {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for v in host.vertices() {
        x0 = x0.min(v.pos.x);
        y0 = y0.min(v.pos.y);
        x1 = x1.max(v.pos.x);
        y1 = y1.max(v.pos.y);
    }
    box_region(host, x0 + d, y0 + d, x1 - d, y1 - d)
}

/// Leaf window of the linear foliation of `T^3` with rational slope
/// `(alpha, beta)`, `alpha = p1/q`, `beta = p2/q`, together with the
/// orbit relation on the fiber `Z/q`.
///
/// The leaf through fiber point `s` is the plane `z = s/q + alpha x +
/// beta y (mod 1)`; unit square `(i, j)` of the window meets the fiber over
/// its lower-left corner at `z = s + p1 i + p2 j (mod q)`. Squares are
/// labelled by that fiber point.
#[derive(Clone, Debug)]
pub struct LinearFoliationWindow {
    pub window: TriangulatedComplex,
    pub alpha: (i64, i64),
    pub beta: (i64, i64),
    pub fiber_labels: BTreeMap<TriId, u32>,
    pub orbit_partition: BTreeMap<u32, BTreeSet<u32>>,
}

pub fn linear_foliation_window(radius: u32, p1: i64, p2: i64, q: i64) -> LinearFoliationWindow {
    assert!(q > 0, "approximant denominator must be positive");
    let window = grid_disk(radius);
    let n = radius as i32;
    let mut fiber_labels = BTreeMap::new();
    for y in -n..n {
        for x in -n..n {
            let z = (p1 * x as i64 + p2 * y as i64).rem_euclid(q) as u32;
            for id in grid_square_ids(radius, x, y) {
                fiber_labels.insert(id, z);
            }
        }
    }
    // Orbits of the Z^2 action z -> z + p1, z -> z + p2 on Z/q.
    let mut parent: Vec<usize> = (0..q as usize).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    for z in 0..q {
        for step in [p1, p2] {
            let a = find(&mut parent, z as usize);
            let b = find(&mut parent, (z + step).rem_euclid(q) as usize);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbit_partition: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for z in 0..q as usize {
        let root = find(&mut parent, z);
        orbit_partition.entry(root as u32).or_default().insert(z as u32);
    }
    LinearFoliationWindow { window, alpha: (p1, q), beta: (p2, q), fiber_labels, orbit_partition }
}

/// Map from lattice square to the triangle ids of `host` it contains,
/// keyed by lower-left corner.
pub fn squares(host: &TriangulatedComplex) -> HashMap<(i64, i64), Vec<TriId>> {
    let mut out: HashMap<(i64, i64), Vec<TriId>> = HashMap::new();
    for t in 0..host.num_triangles() as u32 {
        let [a, b, c] = host.tri_points(t);
        let g = Point::centroid3(a, b, c);
        out.entry((g.x.floor() as i64, g.y.floor() as i64)).or_default().push(host.tri_id(t));
    }
    out
}
