mod common;

use geodome::constructions::InstanceRecipe;
use geodome::tri::{
    cdt, delaunay_violations, diametral_pslg, domain_from_triangulation, graph_distortion, triangulation_from_domain,
};
use geodome::{random_family, ConvexPolygon, Family, Point, PolygonalDomain, Pslg, Triangulation};
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zigzag(n: usize) -> Triangulation {
    let v = (0..n).map(|i| Point::new(i as f64, (i % 2) as f64)).collect();
    let f = (0..n - 2).map(|i| [i, i + 1, i + 2]).collect();
    Triangulation::new(v, f).unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    (0..n).map(|_| Point::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0))).collect()
}

/// Every interior edge of `t` not in `fixed` is locally Delaunay.
fn audit(t: &Triangulation, fixed: &[(usize, usize)]) {
    let p = t.vertices();
    let faces = t.faces();
    for (i, f) in faces.iter().enumerate() {
        for g in &faces[i + 1..] {
            let shared: Vec<usize> = f.iter().copied().filter(|v| g.contains(v)).collect();
            if shared.len() != 2 {
                continue;
            }
            let (a, b) = (shared[0], shared[1]);
            if fixed.iter().any(|&(u, v)| (u, v) == (a, b) || (v, u) == (a, b)) {
                continue;
            }
            let opp = *g.iter().find(|v| !f.contains(v)).unwrap();
            let ic = common::in_circle(p[f[0]], p[f[1]], p[f[2]], p[opp]);
            assert!(ic <= 1e-12, "edge ({a},{b}) fails the in-circle test: {ic}");
        }
    }
}

#[test]
fn zigzag_strip_distortion() {
    let t = zigzag(20);
    let rho = graph_distortion(&t).unwrap();
    assert!((rho - common::brute_rho(&t)).abs() < 1e-12);
    // bottom chain 0,2,..,18 then one diagonal to 19
    assert!((rho - (18.0 + 2f64.sqrt()) / 362f64.sqrt()).abs() < 1e-12, "{rho}");
}

#[test]
fn single_triangle_and_fan() {
    let t = Triangulation::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)], vec![[0, 1, 2]])
        .unwrap();
    assert_eq!(graph_distortion(&t).unwrap(), 1.0);

    let mut v = vec![Point::new(0.0, 0.0)];
    v.extend((0..9).map(|i| Point::from_angle(i as f64 * 0.3)));
    let f = (1..9).map(|i| [0, i, i + 1]).collect();
    let fan = Triangulation::new(v, f).unwrap();
    let rho = graph_distortion(&fan).unwrap();
    assert!(rho >= 1.0 && (rho - common::brute_rho(&fan)).abs() < 1e-12);
}

#[test]
fn four_points_take_the_delaunay_diagonal() {
    let p = vec![Point::new(0.0, 0.0), Point::new(2.0, 0.1), Point::new(2.2, 1.0), Point::new(0.1, 1.3)];
    let t = cdt(&Pslg::new(p.clone(), vec![])).unwrap();
    assert_eq!(t.face_count(), 2);
    // pick the diagonal whose opposite vertex lies outside the circumcircle
    let d02_ok = common::in_circle(p[0], p[1], p[2], p[3]) < 0.0;
    let d13_ok = common::in_circle(p[1], p[2], p[3], p[0]) < 0.0;
    assert!(d02_ok != d13_ok);
    assert_eq!(t.has_edge(0, 2), d02_ok);
    assert_eq!(t.has_edge(1, 3), d13_ok);
}

#[test]
fn forced_diagonal_is_kept() {
    let p = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
    for c in [(0, 2), (1, 3)] {
        let t = cdt(&Pslg::new(p.clone(), vec![c])).unwrap();
        assert!(t.has_edge(c.0, c.1));
    }
}

#[test]
fn random_point_sets_are_delaunay() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..10 {
        let p = random_points(&mut rng, 50);
        let t = cdt(&Pslg::new(p, vec![])).unwrap();
        t.validate().unwrap();
        audit(&t, &[]);
        assert!(delaunay_violations(&t, &[]).is_empty());
    }
}

#[test]
fn domain_pslg_shape() {
    let one = PolygonalDomain::new(
        ConvexPolygon::rectangle(0.0, 0.0, 4.0, 4.0).unwrap(),
        vec![ConvexPolygon::rectangle(1.0, 1.0, 2.0, 3.0).unwrap()],
    )
    .unwrap();
    let g = diametral_pslg(&one);
    assert_eq!(g.vertices.len(), 6);
    let t = triangulation_from_domain(&one).unwrap();
    assert!(g.constraints.iter().all(|&(a, b)| t.has_edge(a, b)));

    for h in [5, 17, 40] {
        let d = random_family(&InstanceRecipe::new(Family::RandomFat).with_h(h).with_seed(h as u64)).unwrap();
        let g = diametral_pslg(&d);
        assert_eq!(g.vertices.len(), 2 * h + 4);
        let t = cdt(&g).unwrap();
        assert!(g.constraints.iter().all(|&(a, b)| t.has_edge(a, b)));
        audit(&t, &g.constraints);
    }
}

#[test]
fn faces_become_holes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [3, 8, 20, 45] {
        let t = cdt(&Pslg::new(random_points(&mut rng, n), vec![])).unwrap();
        let d = domain_from_triangulation(&t, None).unwrap();
        assert_eq!(d.hole_count(), t.face_count());
        assert!(t.face_count() <= 2 * n - 5 || n == 3);
        assert!(d.validate().is_valid());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constraints_survive(seed in 0u64..10_000, n in 6usize..40, m in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_points(&mut rng, n);
        // greedily keep random non-crossing chords
        let mut cons: Vec<(usize, usize)> = Vec::new();
        for _ in 0..m * 4 {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if a == b || cons.len() == m {
                continue;
            }
            let ok = cons.iter().all(|&(c, d)| {
                ![c, d].contains(&a) && ![c, d].contains(&b) && !common::crosses(p[a], p[b], p[c], p[d])
            });
            if ok {
                cons.push((a, b));
            }
        }
        let g = Pslg::new(p, cons.clone());
        prop_assume!(g.validate().is_ok());
        let t = cdt(&g).unwrap();
        t.validate().unwrap();
        for &(a, b) in &cons {
            prop_assert!(t.has_edge(a, b));
        }
        audit(&t, &cons);
    }
}
