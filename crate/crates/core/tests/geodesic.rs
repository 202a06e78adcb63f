mod common;

use geodome::constructions::InstanceRecipe;
use geodome::{geod, grid_oracle_geod, random_family, ConvexPolygon, Family, GeodesicEngine, Point, PolygonalDomain};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn square_hole() -> PolygonalDomain {
    PolygonalDomain::new(
        ConvexPolygon::rectangle(-5.0, -5.0, 5.0, 5.0).unwrap(),
        vec![ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap()],
    )
    .unwrap()
}

#[test]
fn around_a_square_hole() {
    let d = square_hole();
    let r = geod(&d, Point::new(-2.0, 0.0), Point::new(2.0, 0.0)).unwrap();
    assert!((r.length - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
    let p = &r.path.points;
    assert_eq!(p.len(), 4);
    assert!(p[1].x == -1.0 && p[2].x == 1.0 && p[1].y == p[2].y && p[1].y.abs() == 1.0);
    assert!((common::length(p) - r.length).abs() < 1e-12);
}

#[test]
fn free_segment_is_straight() {
    let outer = ConvexPolygon::rectangle(-1.0, -1.0, 5.0, 5.0).unwrap();
    let d = PolygonalDomain::new(outer, vec![]).unwrap();
    let r = geod(&d, Point::new(0.0, 0.0), Point::new(3.0, 4.0)).unwrap();
    assert_eq!(r.length, 5.0);
    assert_eq!(r.path.points.len(), 2);
}

#[test]
fn grid_oracle_brackets_the_square_hole() {
    let d = square_hole();
    let exact = 2.0 + 2.0 * 2f64.sqrt();
    let g = grid_oracle_geod(&d, Point::new(-2.0, 0.0), Point::new(2.0, 0.0), 256).unwrap();
    assert!(g >= exact - 1e-9 && g <= 1.08 * exact, "{g}");
}

#[test]
fn matches_brute_force_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (i, family) in
        [Family::RandomFat, Family::RandomSegments, Family::RandomAxisRects].iter().cycle().take(24).enumerate()
    {
        let recipe = InstanceRecipe::new(*family).with_h(4 + i % 9).with_seed(i as u64);
        let d = random_family(&recipe).unwrap();
        let engine = GeodesicEngine::new(&d).unwrap();
        for _ in 0..6 {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let p = Point::new(rng.random_range(0.01..0.99), rng.random_range(0.01..0.99));
                if d.hole_containing(p).is_none() {
                    return p;
                }
            };
            let (s, t) = (pick(&mut rng), pick(&mut rng));
            let got = engine.geod(s, t).unwrap();
            let want = common::brute_geod(&d, s, t);
            assert!((got.length - want).abs() <= 1e-9 * (1.0 + want), "{family} {i}: {} vs {want}", got.length);
            assert!(got.path.segments().all(|(a, b)| common::visible(&d, a, b)));
        }
    }
}

#[test]
fn symmetric_and_triangle_inequality() {
    let d = random_family(&InstanceRecipe::new(Family::RandomFat).with_h(12).with_seed(5)).unwrap();
    let e = GeodesicEngine::new(&d).unwrap();
    let pts: Vec<Point> =
        (0..6).map(|i| d.free_point_near(Point::new(0.1 + 0.15 * i as f64, 0.9 - 0.13 * i as f64)).unwrap()).collect();
    for &a in &pts {
        for &b in &pts {
            let ab = e.geod(a, b).unwrap().length;
            assert!((ab - e.geod(b, a).unwrap().length).abs() < 1e-12);
            assert!(ab >= a.dist(b) - 1e-12);
            for &c in &pts {
                assert!(ab <= e.geod(a, c).unwrap().length + e.geod(c, b).unwrap().length + 1e-12);
            }
        }
    }
}
