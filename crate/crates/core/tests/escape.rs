mod common;

use geodome::constructions::InstanceRecipe;
use geodome::escape::{
    applicable_methods, auto_escape, diameter_upper_bound, ends_on_outer, escape, staircase_escape,
    straight_detour_path, surrogate_escape, Method, ARC_CHORD_CONSTANT,
};
use geodome::{
    distortion, nested_kgon, random_family, ConvexPolygon, Epsilon, Family, Point, PolygonalDomain, SamplerConfig,
};
use proptest::prelude::*;

fn free_start(d: &PolygonalDomain) -> Point {
    d.free_point_near(Point::new(0.5, 0.5)).unwrap()
}

#[test]
fn sandwich_without_holes() {
    let d = PolygonalDomain::new(ConvexPolygon::regular(7, Point::new(0.0, 0.0), 1.0, 0.3).unwrap(), vec![]).unwrap();
    let cfg = SamplerConfig::default();
    let up = diameter_upper_bound(&d, &cfg).unwrap();
    let lo = distortion(&d, &cfg).unwrap().geodesic_diameter_lb;
    let diam = d.euclidean_diameter();
    assert!(lo <= up + 1e-12 && up <= (2.0 + std::f64::consts::PI) * diam);
}

#[test]
fn sandwich_nested_k4() {
    let n = nested_kgon(4, Epsilon::Auto).unwrap();
    let cfg = SamplerConfig { extra_points: vec![n.center], ..SamplerConfig::default() };
    let up = diameter_upper_bound(&n.domain, &cfg).unwrap();
    let lo = distortion(&n.domain, &cfg).unwrap().geodesic_diameter_lb;
    assert!(lo <= up + 1e-9, "{lo} > {up}");
}

#[test]
fn sandwich_random_50() {
    for family in [Family::RandomFat, Family::RandomSegments, Family::RandomAxisRects] {
        let d = random_family(&InstanceRecipe::new(family).with_h(50).with_seed(2)).unwrap();
        let cfg = SamplerConfig::default();
        let up = diameter_upper_bound(&d, &cfg).unwrap();
        let lo = distortion(&d, &cfg).unwrap().geodesic_diameter_lb;
        assert!(lo <= up + 1e-9, "{family}: {lo} > {up}");
    }
}

#[test]
fn straight_detour_to_boundary_with_small_holes() {
    for seed in 0..20 {
        let d = random_family(&InstanceRecipe::new(Family::RandomFat).with_h(16).with_delta(0.015).with_seed(seed))
            .unwrap();
        let diam = d.euclidean_diameter();
        let total: f64 = d.holes().iter().map(|h| h.diameter().length).sum();
        assert!(total <= diam / std::f64::consts::PI);
        let s = free_start(&d);
        for t in [Point::new(1.0, 0.37), Point::new(0.0, 0.81), Point::new(0.42, 1.0)] {
            let r = straight_detour_path(&d, s, t).unwrap();
            assert!(r.length <= 2.0 * diam + 1e-9);
            assert!(r.path.segments().all(|(a, b)| common::visible(&d, a, b)));
        }
    }
}

#[test]
fn surrogate_detours_stay_within_arc_chord_factor() {
    for seed in 0..25 {
        let d = random_family(&InstanceRecipe::new(Family::RandomFat).with_h(30).with_seed(seed)).unwrap();
        let r = surrogate_escape(&d, free_start(&d)).unwrap();
        let pre = r.pre_detour.as_ref().expect("surrogate keeps its pre-detour path");
        assert!(r.length <= ARC_CHORD_CONSTANT * pre.length() + 1e-9);
        assert!(r.path.segments().all(|(a, b)| common::visible(&d, a, b)));
    }
}

#[test]
fn staircase_below_diameter() {
    for seed in 0..30 {
        let d = random_family(&InstanceRecipe::new(Family::RandomAxisRects).with_h(25).with_seed(seed)).unwrap();
        let r = staircase_escape(&d, free_start(&d)).unwrap();
        assert!(r.length <= d.euclidean_diameter() + 1e-9);
        assert!(ends_on_outer(&d, r.path.last().unwrap()));
        assert!(r.path.segments().all(|(a, b)| common::visible(&d, a, b)));
    }
}

#[test]
fn auto_picks_smallest_certificate() {
    let d = random_family(&InstanceRecipe::new(Family::RandomSegments).with_h(40).with_seed(9)).unwrap();
    let s = free_start(&d);
    let best = auto_escape(&d, s).unwrap();
    for m in applicable_methods(&d) {
        if let Ok(r) = escape(&d, s, m, None) {
            assert!(best.bound_certificate <= r.bound_certificate + 1e-12, "{m} beats {}", best.method);
        }
    }
    assert!(applicable_methods(&d).contains(&Method::MonotoneSegment));
}

#[test]
fn start_inside_a_hole_is_rejected() {
    let d = random_family(&InstanceRecipe::new(Family::RandomFat).with_h(5).with_seed(1)).unwrap();
    let c = d.holes()[0].centroid();
    assert!(auto_escape(&d, c).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn every_method_escapes(seed in 0u64..1000, h in 1usize..30, fam in 0usize..4, x in 0.05f64..0.95, y in 0.05f64..0.95) {
        let family = [Family::RandomFat, Family::RandomSegments, Family::RandomAxisRects, Family::RandomBoundedDelta][fam];
        let d = random_family(&InstanceRecipe::new(family).with_h(h).with_seed(seed)).unwrap();
        let s = d.free_point_near(Point::new(x, y)).unwrap();
        for m in applicable_methods(&d) {
            let r = escape(&d, s, m, None).unwrap();
            prop_assert_eq!(r.path.first(), Some(s));
            prop_assert!(ends_on_outer(&d, r.path.last().unwrap()), "{} did not reach the boundary", m);
            prop_assert!(r.path.segments().all(|(a, b)| common::visible(&d, a, b)), "{} crosses a hole", m);
            prop_assert!((r.length - common::length(&r.path.points)).abs() < 1e-9);
            prop_assert!(r.length <= r.bound_certificate + 1e-9, "{}: {} > {}", m, r.length, r.bound_certificate);
        }
    }
}
