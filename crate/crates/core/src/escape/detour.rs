//! Straight segments with boundary detours around crossed holes, and the
//! arc/chord and dilation measurements behind their bounds.

use std::f64::consts::PI;

use super::{detour_along_segment, nearest_outer_point, EscapeResult, Method};
use crate::domain::PolygonalDomain;
use crate::geom::{ConvexPolygon, Direction, Point};
use crate::{Error, Result};

/// `4 pi sqrt(3) / 9`, the arc/chord ratio bound for arcs avoiding a
/// diametral pair.
pub const ARC_CHORD_CONSTANT: f64 = 4.0 * PI * 1.732_050_807_568_877_2 / 9.0;

/// Segment `st` with each crossed hole bypassed along its shorter arc.
/// Certificate `(1 + h * Delta * pi) * diam_2`.
pub fn straight_detour_path(domain: &PolygonalDomain, s: Point, t: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    domain.check_point(t)?;
    let (path, _) = detour_along_segment(domain, s, t);
    let cert = (1.0 + domain.hole_count() as f64 * domain.max_hole_diameter_ratio() * PI) * domain.euclidean_diameter();
    Ok(EscapeResult::new(path, Method::StraightDetour, cert))
}

/// Straight detour path to the nearest point of the outer boundary.
pub fn straight_detour_escape(domain: &PolygonalDomain, s: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    straight_detour_path(domain, s, nearest_outer_point(domain.outer(), s))
}

/// Dilation bound `min(pi / lambda, 2 (1 / lambda + 1))` for a
/// `lambda`-fat convex body.
pub fn dilation_bound(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return f64::INFINITY;
    }
    (PI / lambda).min(2.0 * (1.0 / lambda + 1.0))
}

/// Segment `st` with shorter-arc detours; certificate
/// `|st| * (1 + max over crossed holes of dilation_bound(lambda_i))`.
pub fn fat_detour_path(domain: &PolygonalDomain, s: Point, t: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    domain.check_point(t)?;
    let (path, info) = detour_along_segment(domain, s, t);
    let worst = info.iter().map(|&(i, _, _)| dilation_bound(domain.holes()[i].fatness().lambda)).fold(0.0, f64::max);
    let cert = s.dist(t) * (1.0 + worst);
    Ok(EscapeResult::new(path, Method::FatDetour, cert))
}

/// `|arc(p, q)| / |pq|` for the counterclockwise boundary arc from `p` to
/// `q`.
pub fn arc_chord_ratio(poly: &ConvexPolygon, p: Point, q: Point) -> Result<f64> {
    let pp = poly.boundary_position(p)?;
    let pq = poly.boundary_position(q)?;
    let chord = p.dist(q);
    if chord == 0.0 {
        return Err(Error::Degenerate("arc endpoints coincide".into()));
    }
    Ok(poly.arc_length(pp, pq, Direction::Ccw) / chord)
}

/// Largest shorter-arc/chord ratio over all pairs of vertices and edge
/// midpoints.
pub fn boundary_dilation(poly: &ConvexPolygon) -> f64 {
    let n = poly.len();
    let per = poly.perimeter();
    let mut pts: Vec<(Point, f64)> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = poly.edge(i);
        let p0 = poly.vertex_position(i);
        pts.push((a, p0));
        pts.push((a.midpoint(b), 0.5 * (p0 + poly.vertex_position(i + 1))));
    }
    let mut best: f64 = 1.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let chord = pts[i].0.dist(pts[j].0);
            if chord == 0.0 {
                continue;
            }
            let d = (pts[i].1 - pts[j].1).abs();
            best = best.max(d.min(per - d) / chord);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn sq(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexPolygon {
        ConvexPolygon::rectangle(x0, y0, x1, y1).unwrap()
    }

    #[test]
    fn straight_without_crossing() {
        let d = PolygonalDomain::new(sq(0., 0., 4., 4.), vec![sq(1., 3., 2., 3.5)]).unwrap();
        let r = straight_detour_path(&d, p(0.5, 1.), p(3.5, 1.)).unwrap();
        assert_eq!(r.path.points, vec![p(0.5, 1.), p(3.5, 1.)]);
        assert_eq!(r.length, 3.0);
    }

    #[test]
    fn straight_through_unit_square() {
        let d = PolygonalDomain::new(sq(-5., -5., 5., 5.), vec![sq(-0.5, -0.5, 0.5, 0.5)]).unwrap();
        let (s, t) = (p(-3., 0.), p(3., 0.));
        let r = straight_detour_path(&d, s, t).unwrap();
        // chord of length 1 replaced by half edge + edge + half edge
        assert!((r.length - (6.0 - 1.0 + 2.0)).abs() < 1e-12);
        assert_eq!(r.path.points, vec![s, p(-0.5, 0.), p(-0.5, -0.5), p(0.5, -0.5), p(0.5, 0.), t]);
        assert!(r.length <= r.bound_certificate);
    }

    #[test]
    fn dilation_bound_values() {
        assert!((dilation_bound(1.0) - PI).abs() < 1e-15);
        assert_eq!(dilation_bound(0.5), 6.0);
    }

    #[test]
    fn square_chord_ratio() {
        let d = PolygonalDomain::new(sq(-5., -5., 5., 5.), vec![sq(-0.5, -0.5, 0.5, 0.5)]).unwrap();
        let r = fat_detour_path(&d, p(-3., 0.), p(3., 0.)).unwrap();
        let ratio = 2.0 / 1.0;
        let lambda = d.holes()[0].fatness().lambda;
        assert!((lambda - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(ratio <= (PI * 2f64.sqrt()).min(2.0 * (2f64.sqrt() + 1.0)));
        assert!(r.length <= r.bound_certificate);
    }

    #[test]
    fn arc_chord_examples() {
        let sqr = sq(0., 0., 1., 1.);
        assert_eq!(arc_chord_ratio(&sqr, p(0., 0.), p(1., 0.)).unwrap(), 1.0);
        assert!(arc_chord_ratio(&sqr, p(0., 0.), p(0., 0.)).is_err());
        // semicircular cap: half of a regular 2m-gon plus its diameter
        let m = 512;
        let mut pts: Vec<Point> = (0..=m).map(|j| Point::from_angle(PI * j as f64 / m as f64)).collect();
        pts.dedup();
        let cap = ConvexPolygon::new(pts).unwrap();
        let r = arc_chord_ratio(&cap, p(1., 0.), p(-1., 0.)).unwrap();
        assert!(r <= PI / 2.0 + 1e-3 && r > 1.5, "{r}");
    }
}
