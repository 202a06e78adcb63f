//! Grid-line escape for holes of bounded diameter: greedy inside a box cut
//! out by four sparsely crossed axis-parallel lines, then along one line.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{detour_along_segment, greedy_certificate, greedy_escape, outer_exit, EscapeResult, Method};
use crate::domain::PolygonalDomain;
use crate::geom::{BBox, ConvexPolygon, Point, Polyline};
use crate::Result;

/// Smallest `l >= 1` with `l^4 >= h`.
pub fn grid_line_count(h: usize) -> usize {
    let mut l = 1usize;
    while l.pow(4) < h {
        l += 1;
    }
    l
}

/// Lines chosen around `s`: offsets (in units of the spacing) and the
/// number of hole interiors each line meets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridChoice {
    pub ell: usize,
    pub spacing: f64,
    /// `(offset, crossings)` for the lines above, below, right and left of `s`.
    pub top: (usize, usize),
    pub bottom: (usize, usize),
    pub right: (usize, usize),
    pub left: (usize, usize),
}

impl GridChoice {
    pub fn new(domain: &PolygonalDomain, s: Point) -> Self {
        let holes = domain.holes();
        let spacing = holes.iter().map(|h| h.diameter().length).fold(0.0, f64::max);
        let ell = grid_line_count(holes.len());
        let pick = |coord: &dyn Fn(usize) -> f64, horizontal: bool| {
            (1..=ell)
                .map(|i| (i, line_crossings(holes, coord(i), horizontal)))
                .min_by_key(|&(i, c)| (c, i))
                .expect("ell >= 1")
        };
        GridChoice {
            ell,
            spacing,
            top: pick(&|i| s.y + i as f64 * spacing, true),
            bottom: pick(&|i| s.y - i as f64 * spacing, true),
            right: pick(&|i| s.x + i as f64 * spacing, false),
            left: pick(&|i| s.x - i as f64 * spacing, false),
        }
    }

    pub fn bbox(&self, s: Point) -> BBox {
        let d = self.spacing;
        BBox {
            min: Point::new(s.x - self.left.0 as f64 * d, s.y - self.bottom.0 as f64 * d),
            max: Point::new(s.x + self.right.0 as f64 * d, s.y + self.top.0 as f64 * d),
        }
    }

    /// Largest crossing count among the four lines.
    pub fn max_crossings(&self) -> usize {
        self.top.1.max(self.bottom.1).max(self.right.1).max(self.left.1)
    }
}

/// Holes whose open interior meets the line `y = c` (horizontal) or
/// `x = c`.
fn line_crossings(holes: &[ConvexPolygon], c: f64, horizontal: bool) -> usize {
    holes
        .iter()
        .filter(|h| {
            let coord = |p: &Point| if horizontal { p.y } else { p.x };
            let lo = h.vertices().iter().map(coord).fold(f64::INFINITY, f64::min);
            let hi = h.vertices().iter().map(coord).fold(f64::NEG_INFINITY, f64::max);
            lo < c && c < hi
        })
        .count()
}

/// Side of the box that the segment `ab` leaves through, with the exit
/// point. `a` must lie in the box.
fn leave_box(bb: &BBox, a: Point, b: Point) -> Option<(Point, bool, f64)> {
    if bb.contains(b) {
        return None;
    }
    let d = b - a;
    // (t, horizontal line?, coordinate)
    let mut best: Option<(f64, bool, f64)> = None;
    let mut consider = |t: f64, horizontal: bool, c: f64| {
        if (0.0..=1.0).contains(&t) && best.is_none_or(|b| t < b.0) {
            best = Some((t, horizontal, c));
        }
    };
    if b.x > bb.max.x {
        consider((bb.max.x - a.x) / d.x, false, bb.max.x);
    }
    if b.x < bb.min.x {
        consider((bb.min.x - a.x) / d.x, false, bb.min.x);
    }
    if b.y > bb.max.y {
        consider((bb.max.y - a.y) / d.y, true, bb.max.y);
    }
    if b.y < bb.min.y {
        consider((bb.min.y - a.y) / d.y, true, bb.min.y);
    }
    best.map(|(t, horizontal, c)| (a.lerp(b, t), horizontal, c))
}

/// Greedy escape inside the box of [`GridChoice`], then along the box
/// side where greedy left it.
pub fn grid_escape(domain: &PolygonalDomain, s: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    let diam = domain.euclidean_diameter();
    let u = Point::new(1.0, 0.0);
    let trace = greedy_escape(domain, s, u)?;
    if domain.hole_count() == 0 {
        return Ok(EscapeResult::new(trace.path, Method::Grid, diam));
    }
    let choice = GridChoice::new(domain, s);
    let bb = choice.bbox(s);
    let box_diam = bb.diagonal();
    let base = greedy_certificate(domain) / diam * box_diam + diam;
    let pts = &trace.path.points;
    for k in 0..pts.len() - 1 {
        let Some((p, horizontal, c)) = leave_box(&bb, pts[k], pts[k + 1]) else {
            continue;
        };
        let crossings = line_crossings(domain.holes(), c, horizontal);
        let dir = if horizontal { Point::new(1.0, 0.0) } else { Point::new(0.0, 1.0) };
        let outer = domain.outer();
        let (fwd, _) = detour_along_segment(domain, p, outer_exit(outer, p, dir));
        let (bwd, _) = detour_along_segment(domain, p, outer_exit(outer, p, -dir));
        let tail = if bwd.length() < fwd.length() { bwd } else { fwd };
        let mut path = Polyline::new(pts[..=k].to_vec());
        path.extend(tail.points);
        let cert = base + 0.5 * PI * choice.spacing * crossings as f64;
        return Ok(EscapeResult::new(path, Method::Grid, cert));
    }
    // greedy reached the outer boundary inside the box
    Ok(EscapeResult::new(trace.path, Method::Grid, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counts() {
        assert_eq!(grid_line_count(0), 1);
        assert_eq!(grid_line_count(1), 1);
        assert_eq!(grid_line_count(16), 2);
        assert_eq!(grid_line_count(17), 3);
        assert_eq!(grid_line_count(81), 3);
        assert_eq!(grid_line_count(256), 4);
    }

    #[test]
    fn no_holes_is_radial() {
        let d = PolygonalDomain::new(ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), vec![]).unwrap();
        let r = grid_escape(&d, Point::new(0.5, 0.5)).unwrap();
        assert!((r.length - 0.5).abs() < 1e-15);
        assert!(r.length <= d.euclidean_diameter());
    }

    #[test]
    fn leaves_box_along_line() {
        let mut holes = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (0.1 + 0.2 * i as f64, 0.1 + 0.2 * j as f64);
                holes.push(ConvexPolygon::rectangle(x, y, x + 0.05, y + 0.05).unwrap());
            }
        }
        let d = PolygonalDomain::new(ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), holes).unwrap();
        let s = Point::new(0.52, 0.5);
        let r = grid_escape(&d, s).unwrap();
        assert!(super::super::path_is_free(&d, &r.path));
        assert!(super::super::ends_on_outer(&d, r.path.last().unwrap()));
        assert!(r.length <= r.bound_certificate);
        let c = GridChoice::new(&d, s);
        assert_eq!(c.ell, 2);
        assert!(c.max_crossings() <= 16usize.div_ceil(2));
    }
}
