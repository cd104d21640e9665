mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use hyperlam::envelope::envelope;
use hyperlam::filtration::{interior_triangles, skeleton};
use hyperlam::generators::{grid_disk, random_partition, random_region, rng};
use hyperlam::pile::{is_full_subpile, pile_decompose, relative_decompose, semi_simple_decompose, LabeledComplex};
use hyperlam::uniformize::{conformal_residual, dirichlet_solve, DirichletProblem, WeightScheme, MIN_COT_WEIGHT};
use hyperlam::{components, disk_certificate, Point, Region, TriId, VertexId};
use rand::Rng;

#[test]
fn skeleton_matches_brute_force() {
    for seed in 0..40u64 {
        let g = grid_disk(2 + (seed % 9) as u32);
        let p = random_partition(&g, seed);
        let (e1, v0, int) = skeleton_brute(&p, &g);
        let sk = skeleton(&p, &g);
        assert_eq!(sk.edges1, e1, "seed {seed}");
        assert_eq!(sk.vertices0, v0, "seed {seed}");
        assert_eq!(interior_triangles(&p, &g).triangles, int, "seed {seed}");
    }
}

#[test]
fn envelope_matches_flood_fill() {
    let g = grid_disk(8);
    for seed in 0..60u64 {
        let omega = random_region(&g, seed);
        let env = envelope(&g, &omega);
        let (filled, unbounded) = envelope_flood(&g, 8.0, &omega.triangles);
        assert_eq!(env.filled.triangles, filled, "seed {seed}");
        assert_eq!(env.unbounded.triangles, unbounded, "seed {seed}");
        for comp in components(&g, &env.region) {
            let touches = comp
                .triangles
                .iter()
                .any(|&t| g.triangle(t).unwrap().iter().any(|&v| g.vertex(g.vertex_idx(v).unwrap()).on_frontier));
            if !touches {
                assert!(disk_certificate(&g, &comp).is_disk(), "seed {seed}");
            }
        }
    }
}

#[test]
fn dirichlet_matches_dense_solve() {
    let mut r = rng(11);
    for radius in [2u32, 3, 5] {
        let g = grid_disk(radius);
        // Shear the grid so cotangent weights are not all equal.
        let verts: Vec<_> = g
            .vertices()
            .iter()
            .map(|v| hyperlam::Vertex { pos: Point::new(v.pos.x + 0.3 * v.pos.y, v.pos.y), ..*v })
            .collect();
        let g = hyperlam::TriangulatedComplex::new(verts, g.triangles().collect(), None).unwrap();
        let bd: BTreeMap<VertexId, f64> =
            boundary_vertices(&g).into_iter().map(|v| (v, r.gen_range(-1.0..1.0))).collect();
        let ours = dirichlet_solve(&DirichletProblem::new(&g, bd.clone(), WeightScheme::Cotangent)).unwrap();
        let dense = dirichlet_dense(&g, &cotangent_weights(&g, MIN_COT_WEIGHT), &bd);
        for (v, x) in &dense {
            assert!((ours[v] - x).abs() < 1e-9, "radius {radius} vertex {v}");
        }
    }
}

#[test]
fn coordinate_functions_are_conformal() {
    let g = grid_disk(3);
    let u: BTreeMap<VertexId, f64> = g.vertices().iter().map(|v| (v.id, v.pos.x)).collect();
    let v: BTreeMap<VertexId, f64> = g.vertices().iter().map(|v| (v.id, v.pos.y)).collect();
    assert!(conformal_residual(&g, &u, &v).unwrap().values().all(|&r| r == 0.0));
}

fn verticals(piles: impl Iterator<Item = BTreeSet<u32>>) -> BTreeSet<BTreeSet<u32>> {
    piles.collect()
}

#[test]
fn piles_match_isomorphism_classes() {
    for seed in 0..6u64 {
        let fam = shape_family(seed, 24, 3);
        let (piles, excluded) = pile_decompose(&fam);
        assert!(excluded.is_empty());
        let oracle = group_by(&fam.fibers, |a, b| !isomorphisms(a, b).is_empty());
        assert!(oracle.len() > 1 && oracle.len() < fam.fibers.len(), "seed {seed}: degenerate family");
        assert_eq!(verticals(piles.iter().map(|p| p.vertical())), oracle, "seed {seed}");
        for p in &piles {
            for (t, iso) in &p.iso {
                assert!(isomorphisms(&p.base, &fam.fibers[t]).contains(iso));
            }
        }
    }
}

#[test]
fn semi_simple_matches_vertex_map_grouping() {
    let k = hyperlam::generators::single_triangle();
    let kv: Vec<VertexId> = k.vertex_ids().collect();
    for seed in 0..4u64 {
        let fam = shape_family(seed + 100, 20, 3);
        let maps: BTreeMap<u32, BTreeMap<VertexId, VertexId>> = fam
            .fibers
            .iter()
            .map(|(&t, lc)| {
                let m = lc
                    .complex
                    .vertices()
                    .iter()
                    .map(|v| (v.id, kv[(v.pos.x + 2.0 * v.pos.y).rem_euclid(3.0) as usize]))
                    .collect();
                (t, m)
            })
            .collect();
        let (parts, _) = semi_simple_decompose(&fam, &maps, &k).unwrap();
        let items: BTreeMap<u32, (LabeledComplex, BTreeMap<VertexId, VertexId>)> =
            fam.fibers.iter().map(|(&t, lc)| (t, (lc.clone(), maps[&t].clone()))).collect();
        let oracle = group_by(&items, |(a, fa), (b, fb)| {
            isomorphisms(a, b).iter().any(|phi| phi.iter().all(|(v, w)| fa[v] == fb[w]))
        });
        assert!(oracle.len() > 1 && oracle.len() < fam.fibers.len(), "seed {seed}: degenerate family");
        assert_eq!(verticals(parts.iter().map(|(p, _)| p.vertical())), oracle, "seed {seed}");
    }
}

#[test]
fn relative_parts_are_full_subpiles() {
    for seed in 0..4u64 {
        let fam = shape_family(seed + 200, 16, 3);
        let mut r = rng(seed);
        let b: BTreeMap<u32, Region> = fam
            .fibers
            .iter()
            .map(|(&t, lc)| {
                let ids: Vec<TriId> = lc.complex.triangle_ids().collect();
                let pick = ids[r.gen_range(0..ids.len())];
                (t, Region::from_ids([pick]))
            })
            .collect();
        let (parts, _) = relative_decompose(&b, &fam).unwrap();
        assert!(!parts.is_empty());
        for part in &parts {
            for sub in &part.subpiles {
                assert!(is_full_subpile(sub, &part.pile).0, "seed {seed}");
            }
        }
    }
}
