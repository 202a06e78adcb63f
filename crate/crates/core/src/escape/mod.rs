//! Constructive escape paths from a point to the outer boundary, each with
//! an evaluated upper-bound certificate.
//!
//! Certificates replace the asymptotic constants of the underlying bounds
//! with explicit ones:
//!
//! | method | certificate |
//! |---|---|
//! | greedy | `(2 + sqrt(6h)) * diam_2` |
//! | straight detour | `(1 + h * Delta * pi) * diam_2` |
//! | fat detour (s to t) | `|st| * (1 + max_i min(pi/lambda_i, 2/lambda_i + 2))` |
//! | grid lines | `(2 + sqrt(6h)) * diam(B) + diam_2 + (pi/2) * Delta' * crossings(L)` |
//! | monotone segments | `|H_j| * max_len + diam_2 / sin(pi / 2l)` |
//! | surrogate | `2.42 * |gamma|` |
//! | staircase | `(a + b) / 2` for the `a x b` bounding box |

mod detour;
mod greedy;
mod grid;
mod monotone;
mod staircase;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{PolygonalDomain, SamplerConfig};
use crate::geom::{orient2d, ConvexPolygon, Crossing, Point, PointLocation, Polyline};
use crate::{Error, Result};

pub use detour::{
    arc_chord_ratio, boundary_dilation, dilation_bound, fat_detour_path, straight_detour_escape, straight_detour_path,
    ARC_CHORD_CONSTANT,
};
pub use greedy::{greedy_certificate, greedy_escape, GreedyTrace, Piece};
pub use grid::{grid_escape, grid_line_count, GridChoice};
pub use monotone::{monotone_segment_escape, surrogate_escape, wedge_count, SURROGATE_FACTOR};
pub use staircase::staircase_escape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    Greedy,
    StraightDetour,
    FatDetour,
    Grid,
    MonotoneSegment,
    Surrogate,
    Staircase,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::StraightDetour => "straight",
            Method::FatDetour => "fat",
            Method::Grid => "grid",
            Method::MonotoneSegment => "segment",
            Method::Surrogate => "surrogate",
            Method::Staircase => "staircase",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "greedy" => Method::Greedy,
            "straight" => Method::StraightDetour,
            "fat" => Method::FatDetour,
            "grid" => Method::Grid,
            "segment" => Method::MonotoneSegment,
            "surrogate" => Method::Surrogate,
            "staircase" => Method::Staircase,
            other => return Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        })
    }
}

/// A path with the bound it is proven to respect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapeResult {
    pub path: Polyline,
    pub length: f64,
    pub method: Method,
    pub bound_certificate: f64,
    /// Path before hole detours were applied (surrogate method only).
    pub pre_detour: Option<Polyline>,
    /// Sweep direction of monotone paths.
    pub direction: Option<Point>,
    /// Detours that fell back to the shorter arc because neither arc
    /// avoided the diametral pair.
    pub fallbacks: usize,
}

impl EscapeResult {
    pub(crate) fn new(path: Polyline, method: Method, bound_certificate: f64) -> Self {
        EscapeResult {
            length: path.length(),
            path,
            method,
            bound_certificate,
            pre_detour: None,
            direction: None,
            fallbacks: 0,
        }
    }
}

/// Point where the ray from `p` (inside the outer polygon) in direction
/// `d` leaves the outer polygon.
pub(crate) fn outer_exit(outer: &ConvexPolygon, p: Point, d: Point) -> Point {
    let far = far_point(outer, p, d);
    let mut tmin: f64 = 1.0;
    for (a, b) in outer.edges() {
        let sb = orient2d(a, b, far);
        if sb < 0.0 {
            let sa = orient2d(a, b, p);
            let t = if sa <= 0.0 { 0.0 } else { sa / (sa - sb) };
            tmin = tmin.min(t);
        }
    }
    p.lerp(far, tmin)
}

/// A point along the ray from `p` in direction `d` well outside the outer
/// polygon.
pub(crate) fn far_point(outer: &ConvexPolygon, p: Point, d: Point) -> Point {
    let bb = outer.bbox();
    let reach = 2.0 * bb.diagonal() + p.dist(bb.min) + p.dist(bb.max);
    p + d * (reach / d.norm())
}

/// Nearest hole whose open interior the segment `ab` enters, with the
/// crossing. Ties go to the smaller hole index.
pub(crate) fn first_hit(
    holes: &[ConvexPolygon],
    a: Point,
    b: Point,
    exclude: Option<usize>,
) -> Option<(usize, Crossing)> {
    let sb = crate::geom::BBox::of_points(&[a, b]);
    let mut best: Option<(usize, Crossing)> = None;
    for (i, h) in holes.iter().enumerate() {
        if Some(i) == exclude || !h.bbox().overlaps(&sb) {
            continue;
        }
        if let Some(c) = h.interior_crossing(a, b) {
            if best.is_none_or(|(_, bc)| c.lo < bc.lo) {
                best = Some((i, c));
            }
        }
    }
    best
}

/// `s -> t` with every hole crossing replaced by the shorter boundary arc
/// (counterclockwise on ties). Returns the path and, per crossed hole,
/// `(hole, chord length, arc length)`.
pub(crate) fn detour_along_segment(domain: &PolygonalDomain, s: Point, t: Point) -> (Polyline, Vec<(usize, f64, f64)>) {
    let mut crossings: Vec<(usize, Crossing)> =
        domain.holes().iter().enumerate().filter_map(|(i, h)| h.interior_crossing(s, t).map(|c| (i, c))).collect();
    crossings.sort_by(|a, b| a.1.lo.total_cmp(&b.1.lo).then(a.0.cmp(&b.0)));
    let mut path = Polyline::single(s);
    let mut info = Vec::new();
    for (i, c) in crossings {
        let h = &domain.holes()[i];
        let p = s.lerp(t, c.lo);
        let q = s.lerp(t, c.hi);
        let pp = edge_position(h, c.enter, p);
        let pq = edge_position(h, c.exit, q);
        let ccw = h.arc_length(pp, pq, crate::geom::Direction::Ccw);
        let cw = h.arc_length(pp, pq, crate::geom::Direction::Cw);
        let dir = if cw < ccw { crate::geom::Direction::Cw } else { crate::geom::Direction::Ccw };
        path.extend(h.arc_points(p, pp, q, pq, dir));
        info.push((i, p.dist(q), ccw.min(cw)));
    }
    path.push(t);
    (path, info)
}

/// Boundary position of `p` on edge `e`, or of its projection when the
/// crossing had no such edge (endpoint inside the hole by rounding).
pub(crate) fn edge_position(h: &ConvexPolygon, e: usize, p: Point) -> f64 {
    if e == usize::MAX {
        h.project_to_boundary(p).2
    } else {
        h.position_on_edge(e, p)
    }
}

/// True iff every edge of `path` misses the open interior of every hole.
pub fn path_is_free(domain: &PolygonalDomain, path: &Polyline) -> bool {
    path.segments().all(|(a, b)| a == b || domain.segment_is_free(a, b))
}

/// True iff `p` lies on the outer boundary within tolerance.
pub fn ends_on_outer(domain: &PolygonalDomain, p: Point) -> bool {
    domain.outer().locate(p, domain.tolerance()) == PointLocation::Boundary
}

/// Escape methods whose hypotheses the domain satisfies.
pub fn applicable_methods(domain: &PolygonalDomain) -> Vec<Method> {
    let holes = domain.holes();
    let all_segments = !holes.is_empty() && holes.iter().all(ConvexPolygon::is_segment);
    let any_segment = holes.iter().any(ConvexPolygon::is_segment);
    let mut out = vec![Method::Greedy, Method::StraightDetour, Method::Grid];
    if all_segments {
        out.push(Method::MonotoneSegment);
    } else if !holes.is_empty() && !any_segment {
        out.push(Method::Surrogate);
    }
    if holes.iter().all(ConvexPolygon::is_axis_aligned_rectangle) {
        out.push(Method::Staircase);
    }
    out
}

/// Runs one escape method. Greedy uses direction `u` (default `(1, 0)`).
pub fn escape(domain: &PolygonalDomain, s: Point, method: Method, u: Option<Point>) -> Result<EscapeResult> {
    match method {
        Method::Greedy => {
            let u = u.unwrap_or(Point::new(1.0, 0.0));
            let tr = greedy_escape(domain, s, u)?;
            let mut r = EscapeResult::new(tr.path, Method::Greedy, greedy_certificate(domain));
            r.direction = Some(u);
            Ok(r)
        }
        Method::StraightDetour => straight_detour_escape(domain, s),
        Method::FatDetour => {
            let t = nearest_outer_point(domain.outer(), s);
            fat_detour_path(domain, s, t)
        }
        Method::Grid => grid_escape(domain, s),
        Method::MonotoneSegment => monotone_segment_escape(domain, s),
        Method::Surrogate => surrogate_escape(domain, s),
        Method::Staircase => staircase_escape(domain, s),
    }
}

/// Runs every applicable method and keeps the smallest certificate (ties
/// by method order). Methods that fail are skipped; if all fail the first
/// error is returned.
pub fn auto_escape(domain: &PolygonalDomain, s: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    let mut best: Option<EscapeResult> = None;
    let mut first_err = None;
    for m in applicable_methods(domain) {
        match escape(domain, s, m, None) {
            Ok(r) => {
                if best.as_ref().is_none_or(|b| r.bound_certificate < b.bound_certificate) {
                    best = Some(r);
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.unwrap_or_else(|| Error::Degenerate("no applicable escape method".into())))
}

/// Closest point of the outer boundary to `p`.
pub(crate) fn nearest_outer_point(outer: &ConvexPolygon, p: Point) -> Point {
    let (_, _, pos) = outer.project_to_boundary(p);
    outer.point_at(pos)
}

/// Eight evenly spaced greedy directions.
fn compass() -> [Point; 8] {
    std::array::from_fn(|k| Point::from_angle(std::f64::consts::FRAC_PI_4 * k as f64))
}

/// Constructive upper bound on the geodesic diameter over the candidate
/// set of `cfg`: for the worst candidate pair, the shortest of eight greedy
/// escapes from each end joined by the shorter outer-boundary walk.
pub fn diameter_upper_bound(domain: &PolygonalDomain, cfg: &SamplerConfig) -> Result<f64> {
    let cands = domain.candidate_points(cfg);
    let outer = domain.outer();
    let legs: Vec<(f64, f64)> = cands
        .par_iter()
        .map(|&c| {
            let mut best: Option<(f64, f64)> = None;
            for u in compass() {
                let tr = greedy_escape(domain, c, u)?;
                let end = tr.path.last().expect("non-empty trace");
                let (_, _, pos) = outer.project_to_boundary(end);
                if best.is_none_or(|b| tr.total_length < b.0) {
                    best = Some((tr.total_length, pos));
                }
            }
            Ok(best.expect("eight directions"))
        })
        .collect::<Result<Vec<_>>>()?;
    let per = outer.perimeter();
    let mut ub: f64 = 0.0;
    for i in 0..legs.len() {
        for j in i + 1..legs.len() {
            let d = (legs[i].1 - legs[j].1).abs();
            let walk = d.min(per - d);
            ub = ub.max(legs[i].0 + walk + legs[j].0);
        }
    }
    Ok(ub)
}
