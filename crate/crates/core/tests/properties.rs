mod common;

use hyperlam::cover::{triangulate_from_cover, Rect};
use hyperlam::generators::{grid_disk, random_region, rng};
use hyperlam::geometry::{orient, point_segment_distance};
use hyperlam::subdivide::{interior_vertices, lift_region, retract, star, subdivide, Site, Subdivision};
use hyperlam::{components, ComplexError, Point, Region, TriangulatedComplex};
use proptest::prelude::*;
use rand::Rng;

fn piece(seed: u64) -> TriangulatedComplex {
    let g = grid_disk(3);
    let r = random_region(&g, seed);
    let comp = components(&g, &r).into_iter().max_by_key(|c| c.len()).unwrap();
    g.subcomplex(&comp).unwrap()
}

fn area(c: &TriangulatedComplex) -> f64 {
    (0..c.num_triangles() as u32).map(|t| c.tri_area(t)).sum()
}

fn all_positive(c: &TriangulatedComplex) -> bool {
    (0..c.num_triangles() as u32).all(|t| {
        let [a, b, p] = c.tri_points(t);
        orient(a, b, p) > 0
    })
}

/// Every triangle of the finer region sits inside a triangle of the
/// coarser one, one subdivision up.
fn support_within(finer: &Region, coarser: &Region) -> bool {
    finer.triangles.iter().all(|t| coarser.triangles.contains(&hyperlam::TriId(t.0 / 6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_preserves_support(seed in 0u64..10_000, n in 0u32..=2) {
        let c = piece(seed);
        let sd = subdivide(&c, n);
        for v in c.vertices() {
            prop_assert_eq!(sd.position(v.id), Some(v.pos));
        }
        prop_assert!((area(&sd) - area(&c)).abs() < 1e-9);
        prop_assert!(all_positive(&sd));
    }

    #[test]
    fn stars_shrink_with_depth(seed in 0u64..10_000, n in 0u32..=2, pick in 0usize..1000) {
        let c = piece(seed);
        let v = c.vertices()[pick % c.num_vertices()].id;
        let t = c.triangles().nth(pick % c.num_triangles()).unwrap();
        let sites = [Site::Vertex(v), Site::Edge(t.vertices[0], t.vertices[1])];
        let coarse = star(&c, &sites, n);
        let fine = star(&c, &sites, n + 1);
        prop_assert!(!fine.is_empty());
        prop_assert!(support_within(&fine, &coarse));
    }

    #[test]
    fn retraction_tower(seed in 0u64..10_000) {
        let g = grid_disk(3);
        let omega = random_region(&g, seed);
        let rets: Vec<Region> = (0..=3).map(|n| retract(&g, &omega, n)).collect();
        for n in 0..3u32 {
            let sub = Subdivision::new(&g, n + 1);
            let lifted = lift_region(&rets[n as usize], 1);
            prop_assert!(lifted.is_subset(&rets[n as usize + 1]));
            let inner = interior_vertices(&sub.complex, &rets[n as usize + 1]);
            for t in &lifted.triangles {
                for v in sub.complex.triangle(*t).unwrap() {
                    prop_assert!(inner[sub.complex.vertex_idx(v).unwrap() as usize]);
                }
            }
        }
        // Exhaustion: triangles of sd_3(omega) farther than delta(3) from
        // the boundary of omega are in ret_3.
        let sd3 = Subdivision::new(&g, 3);
        let delta = sd3.complex.max_triangle_diameter();
        let owners = common::edge_owners(&g);
        let bd: Vec<(Point, Point)> = owners
            .iter()
            .filter(|(_, o)| o.iter().filter(|t| omega.contains(**t)).count() == 1)
            .map(|((a, b), _)| (g.position(*a).unwrap(), g.position(*b).unwrap()))
            .collect();
        for t in &lift_region(&omega, 3).triangles {
            let i = sd3.complex.tri_idx(*t).unwrap();
            let [a, b, c] = sd3.complex.tri_points(i);
            let far = [a, b, c].iter().all(|p| bd.iter().all(|(x, y)| point_segment_distance(*p, *x, *y) > delta));
            if far {
                prop_assert!(rets[3].contains(*t));
            }
        }
    }

    #[test]
    fn cover_triangulations_are_positive(k in 1usize..=4, jitter in prop::collection::vec(-0.2f64..0.2, 50)) {
        let mut centers = Vec::new();
        for i in 0..=k {
            for j in 0..=k {
                let m = (i * (k + 1) + j) % 25;
                centers.push(Point::new(i as f64 + jitter[2 * m], j as f64 + jitter[2 * m + 1]));
            }
        }
        let radii = vec![1.0; centers.len()];
        let w = Rect::new(0.0, 0.0, k as f64, k as f64);
        match triangulate_from_cover(&centers, &radii, w) {
            Ok(c) => {
                prop_assert!(all_positive(&c));
                prop_assert!((area(&c) - (k * k) as f64).abs() < 1e-9);
            }
            Err(ComplexError::DegenerateCell(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn jittered_covers_mostly_triangulate() {
    let mut ok = 0;
    for s in 0..40u64 {
        let mut r = rng(s);
        let centers: Vec<Point> = (0..16)
            .map(|i| Point::new((i % 4) as f64 + r.gen_range(-0.2..0.2), (i / 4) as f64 + r.gen_range(-0.2..0.2)))
            .collect();
        if triangulate_from_cover(&centers, &[1.0; 16], Rect::new(0.0, 0.0, 3.0, 3.0)).is_ok() {
            ok += 1;
        }
    }
    assert!(ok >= 30, "{ok} of 40 cover triangulations succeeded");
}
