//! Monotone escape among segment holes, and its extension to convex holes
//! through diametral segments.

use std::f64::consts::PI;

use super::{edge_position, far_point, first_hit, outer_exit, EscapeResult, Method};
use crate::domain::PolygonalDomain;
use crate::geom::{ConvexPolygon, Direction, Point, Polyline};
use crate::{Error, Result};

/// Detour factor applied to the segment path by [`surrogate_escape`].
pub const SURROGATE_FACTOR: f64 = 2.42;

/// `max(1, ceil(sqrt(h * delta)))`.
pub fn wedge_count(h: usize, delta: f64) -> usize {
    ((h as f64 * delta).sqrt() - 1e-9).ceil().max(1.0) as usize
}

/// Wedge of the right half-plane holding the direction of `a -> b`
/// (`x(a) <= x(b)`); vertical segments count as pointing up.
fn wedge_of(a: Point, b: Point, ell: usize) -> usize {
    let d = b - a;
    let theta = if d.x == 0.0 { PI / 2.0 } else { d.y.atan2(d.x) };
    let j = ((theta + PI / 2.0) / (PI / ell as f64)).floor() as usize;
    j.min(ell - 1)
}

/// Escape along `v` from `s`, sliding along every segment hit to its
/// endpoint further along `v`. Returns the path and the sweep direction.
fn sweep(domain: &PolygonalDomain, s: Point, v: Point) -> Result<Polyline> {
    let holes = domain.holes();
    let outer = domain.outer();
    let mut path = Polyline::single(s);
    let mut p = s;
    let mut standing: Option<usize> = None;
    for _ in 0..2 * holes.len() + 2 {
        let exit = outer_exit(outer, p, v);
        let far = far_point(outer, p, v);
        let hit = first_hit(holes, p, far, standing).filter(|(_, c)| p.lerp(far, c.lo).dist(p) < exit.dist(p));
        let Some((i, c)) = hit else {
            path.push(exit);
            return Ok(path);
        };
        let q = p.lerp(far, c.lo);
        let (a, b) = (holes[i].vertex(0), holes[i].vertex(1));
        let e = if v.dot(b - a) >= 0.0 { b } else { a };
        path.push(q);
        path.push(e);
        p = e;
        standing = Some(i);
    }
    Err(Error::Stalled(format!("monotone sweep from {s} did not reach the outer boundary")))
}

/// Monotone escape for domains whose holes are all segments.
///
/// Segment directions are binned into `l = wedge_count(h, Delta)` wedges
/// of the right half-plane; the path sweeps perpendicular to the axis of
/// the emptiest wedge. Certificate `|H_j| * max_len + diam_2 / sin(pi/2l)`.
pub fn monotone_segment_escape(domain: &PolygonalDomain, s: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    if let Some(i) = domain.holes().iter().position(|h| !h.is_segment()) {
        return Err(Error::UnsupportedHoles(format!("hole {i} is not a segment")));
    }
    let diam = domain.euclidean_diameter();
    let h = domain.hole_count();
    let max_len = domain.holes().iter().map(|g| g.perimeter() / 2.0).fold(0.0, f64::max);
    let ell = wedge_count(h, max_len / diam);
    let mut counts = vec![0usize; ell];
    for g in domain.holes() {
        counts[wedge_of(g.vertex(0), g.vertex(1), ell)] += 1;
    }
    let j = (0..ell).min_by_key(|&j| (counts[j], j)).expect("ell >= 1");
    let w = Point::from_angle(-PI / 2.0 + (j as f64 + 0.5) * PI / ell as f64);
    let v = w.perp();
    let path = sweep(domain, s, v)?;
    let cert = counts[j] as f64 * max_len + diam / (PI / (2.0 * ell as f64)).sin();
    let mut r = EscapeResult::new(path, Method::MonotoneSegment, cert);
    r.direction = Some(v);
    Ok(r)
}

/// One stretch of a path inside a hole: from `(edge, t)` to `(edge, t)`.
#[derive(Debug, Clone, Copy)]
struct Run {
    hole: usize,
    start: (usize, f64),
    end: (usize, f64),
    p: Point,
    pp: f64,
    q: Point,
    pq: f64,
}

fn runs_through(h: &ConvexPolygon, hole: usize, pts: &[Point]) -> Vec<Run> {
    let m = pts.len() - 1;
    let mut out = Vec::new();
    let mut k = 0;
    while k < m {
        let Some(c) = h.interior_crossing(pts[k], pts[k + 1]) else {
            k += 1;
            continue;
        };
        let p = pts[k].lerp(pts[k + 1], c.lo);
        let pp = edge_position(h, c.enter, p);
        let start = (k, c.lo);
        let mut end = (k, c.hi, c.exit);
        while k + 1 < m && h.strictly_contains(pts[k + 1]) {
            k += 1;
            match h.interior_crossing(pts[k], pts[k + 1]) {
                Some(c2) => end = (k, c2.hi, c2.exit),
                None => break,
            }
        }
        let q = pts[end.0].lerp(pts[end.0 + 1], end.1);
        let pq = edge_position(h, end.2, q);
        out.push(Run { hole, start, end: (end.0, end.1), p, pp, q, pq });
        k += 1;
    }
    out
}

/// Escape around convex holes: run the monotone escape on the diametral
/// segments, then replace each stretch inside a hole by the boundary arc
/// that avoids the hole's diametral pair. Certificate `2.42 * |gamma|`.
pub fn surrogate_escape(domain: &PolygonalDomain, s: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    let holes = domain.holes();
    let diametral: Vec<(Point, Point)> = holes
        .iter()
        .map(|h| {
            let d = h.diameter();
            (d.a, d.b)
        })
        .collect();
    let segments = diametral.iter().map(|&(a, b)| ConvexPolygon::segment(a, b)).collect::<Result<Vec<_>>>()?;
    let surrogate = PolygonalDomain::new_unchecked(domain.outer().clone(), segments);
    let gamma = monotone_segment_escape(&surrogate, s)?;
    let pts = &gamma.path.points;
    let mut runs = Vec::new();
    for (i, h) in holes.iter().enumerate() {
        if !h.is_segment() {
            runs.extend(runs_through(h, i, pts));
        }
    }
    runs.sort_by(|a, b| a.start.0.cmp(&b.start.0).then(a.start.1.total_cmp(&b.start.1)));
    let mut path = Polyline::single(s);
    let mut cursor = 0usize;
    let mut fallbacks = 0;
    for r in &runs {
        for &v in &pts[cursor + 1..=r.start.0] {
            path.push(v);
        }
        let h = &holes[r.hole];
        let (a, b) = diametral[r.hole];
        let pa = h.boundary_position(a)?;
        let pb = h.boundary_position(b)?;
        let inside = |x: f64, dir: Direction| {
            let total = h.arc_length(r.pp, r.pq, dir);
            let off = h.arc_length(r.pp, x, dir);
            off > 0.0 && off < total
        };
        let dir = if !inside(pa, Direction::Ccw) && !inside(pb, Direction::Ccw) {
            Direction::Ccw
        } else if !inside(pa, Direction::Cw) && !inside(pb, Direction::Cw) {
            Direction::Cw
        } else {
            fallbacks += 1;
            if h.arc_length(r.pp, r.pq, Direction::Cw) < h.arc_length(r.pp, r.pq, Direction::Ccw) {
                Direction::Cw
            } else {
                Direction::Ccw
            }
        };
        path.extend(h.arc_points(r.p, r.pp, r.q, r.pq, dir));
        cursor = r.end.0;
    }
    for &v in &pts[cursor + 1..] {
        path.push(v);
    }
    let cert = SURROGATE_FACTOR * gamma.length;
    let mut out = EscapeResult::new(path, Method::Surrogate, cert);
    out.pre_detour = Some(gamma.path);
    out.direction = gamma.direction;
    out.fallbacks = fallbacks;
    Ok(out)
}
