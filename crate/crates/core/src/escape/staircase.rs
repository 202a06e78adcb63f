//! Staircase escape among axis-aligned rectangles.

use super::{outer_exit, EscapeResult, Method};
use crate::domain::PolygonalDomain;
use crate::geom::{BBox, Point, Polyline};
use crate::{Error, Result};

/// Exact symmetry of the plane: optional axis swap followed by optional
/// sign flips.
#[derive(Debug, Clone, Copy)]
struct Frame {
    swap: bool,
    flip_x: bool,
    flip_y: bool,
}

impl Frame {
    fn apply(self, p: Point) -> Point {
        let p = if self.swap { Point::new(p.y, p.x) } else { p };
        Point::new(if self.flip_x { -p.x } else { p.x }, if self.flip_y { -p.y } else { p.y })
    }

    fn invert(self, p: Point) -> Point {
        let p = Point::new(if self.flip_x { -p.x } else { p.x }, if self.flip_y { -p.y } else { p.y });
        if self.swap {
            Point::new(p.y, p.x)
        } else {
            p
        }
    }
}

/// Alternates `(1, 0)` and `(0, 1)` moves after normalizing so that `s`
/// lies in the upper-right quarter of the bounding box and the box is at
/// least as wide as tall. Certificate `(a + b) / 2`.
pub fn staircase_escape(domain: &PolygonalDomain, s: Point) -> Result<EscapeResult> {
    domain.check_point(s)?;
    if let Some(i) = domain.holes().iter().position(|h| !h.is_axis_aligned_rectangle()) {
        return Err(Error::UnsupportedHoles(format!("hole {i} is not an axis-aligned rectangle")));
    }
    let bb = domain.bbox();
    let swap = bb.height() > bb.width();
    let pre = Frame { swap, flip_x: false, flip_y: false };
    let sb = BBox::of_points(&bb.corners().map(|c| pre.apply(c)));
    let s1 = pre.apply(s);
    let c = sb.min.midpoint(sb.max);
    let frame = Frame { swap, flip_x: s1.x < c.x, flip_y: s1.y < c.y };
    let outer = domain.outer().map(|p| frame.apply(p))?;
    let rects: Vec<BBox> = domain
        .holes()
        .iter()
        .map(|h| BBox::of_points(&h.vertices().iter().map(|&p| frame.apply(p)).collect::<Vec<_>>()))
        .collect();
    let mut p = frame.apply(s);
    let mut pts = vec![p];
    let mut horizontal = true;
    for _ in 0..2 * rects.len() + 2 {
        // nearest rectangle whose interior the axis ray enters
        let hit = rects
            .iter()
            .filter_map(|r| {
                if horizontal {
                    (r.min.y < p.y && p.y < r.max.y && r.min.x >= p.x && r.max.x > p.x).then_some(r.min.x)
                } else {
                    (r.min.x < p.x && p.x < r.max.x && r.min.y >= p.y && r.max.y > p.y).then_some(r.min.y)
                }
            })
            .min_by(f64::total_cmp);
        let dir = if horizontal { Point::new(1.0, 0.0) } else { Point::new(0.0, 1.0) };
        let exit = outer_exit(&outer, p, dir);
        let reach = if horizontal { exit.x } else { exit.y };
        match hit {
            Some(c) if c < reach => {
                p = if horizontal { Point::new(c, p.y) } else { Point::new(p.x, c) };
                pts.push(p);
                horizontal = !horizontal;
            }
            _ => {
                pts.push(exit);
                let mut path = Polyline::default();
                path.extend(pts.into_iter().map(|q| frame.invert(q)));
                let cert = 0.5 * (bb.width() + bb.height());
                return Ok(EscapeResult::new(path, Method::Staircase, cert));
            }
        }
    }
    Err(Error::Stalled(format!("staircase from {s} did not reach the outer boundary")))
}
