//! Greedy escape: follow the ray from `s`; on hitting a hole walk its
//! boundary to a tangent point as seen from `s`, then continue along the
//! tangent ray. The distance from `s` never decreases.

use serde::{Deserialize, Serialize};

use super::{far_point, first_hit, outer_exit};
use crate::domain::PolygonalDomain;
use crate::geom::{ConvexPolygon, Direction, Point, PointLocation, Polyline};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Piece {
    Radial {
        from: Point,
        to: Point,
    },
    /// Walk along hole `hole`; `delta` is the gain in distance from `s`.
    Arc {
        hole: usize,
        from: Point,
        to: Point,
        direction: Direction,
        length: f64,
        delta: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub start: Point,
    pub direction: Point,
    pub path: Polyline,
    pub pieces: Vec<Piece>,
    pub total_length: f64,
    pub radial_length: f64,
    pub arc_length: f64,
    /// Holes walked along, in order of first contact.
    pub contact_holes: Vec<usize>,
}

impl GreedyTrace {
    pub fn arc_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, Piece::Arc { .. })).count()
    }

    pub fn delta_sum(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| match p {
                Piece::Arc { delta, .. } => *delta,
                Piece::Radial { .. } => 0.0,
            })
            .sum()
    }
}

/// Explicit greedy bound `(2 + sqrt(6h)) * diam_2`: radial segments and the
/// distance gains each sum to at most `diam_2`, every arc is at most
/// `sqrt(3 * diam_2 * delta) + delta`, and there are at most `2h` arcs.
pub fn greedy_certificate(domain: &PolygonalDomain) -> f64 {
    (2.0 + (6.0 * domain.hole_count() as f64).sqrt()) * domain.euclidean_diameter()
}

/// Tangent vertex indices `(ell, r)` of hole `h` seen from `s`, including
/// the case where `s` sits on the hole boundary.
fn tangents(h: &ConvexPolygon, s: Point, tol: f64) -> (usize, usize) {
    if h.locate(s, tol) != PointLocation::Outside {
        let (e, _, _) = h.project_to_boundary(s);
        let n = h.len();
        if let Some(k) = h.vertices().iter().position(|&v| v == s) {
            return ((k + 1) % n, (k + n - 1) % n);
        }
        return ((e + 1) % n, e);
    }
    h.tangent_indices(s).expect("exterior point has tangents")
}

/// Greedy escape from `s` starting in direction `u`.
pub fn greedy_escape(domain: &PolygonalDomain, s: Point, u: Point) -> Result<GreedyTrace> {
    domain.check_point(s)?;
    let u = u.normalized().ok_or_else(|| Error::InvalidParameter("greedy direction must be non-zero".into()))?;
    let holes = domain.holes();
    let outer = domain.outer();
    let tol = domain.tolerance();
    let dist_tol = 1e-12 * domain.euclidean_diameter();
    let mut pieces = Vec::new();
    let mut path = Polyline::single(s);
    let mut contact = Vec::new();
    let (mut radial, mut arcs) = (0.0, 0.0);
    let mut p = s;
    let mut dir = u;
    let mut standing_on: Option<usize> = None;
    let cap = 4 * holes.len() + 4;
    let mut arc_steps = 0;
    loop {
        let exit = outer_exit(outer, p, dir);
        let far = far_point(outer, p, dir);
        let hit = first_hit(holes, p, far, standing_on).filter(|(_, c)| {
            // only hits before the outer exit
            p.lerp(far, c.lo).dist(p) < exit.dist(p)
        });
        let Some((i, c)) = hit else {
            if exit != p {
                pieces.push(Piece::Radial { from: p, to: exit });
                radial += p.dist(exit);
                path.push(exit);
            }
            break;
        };
        let h = &holes[i];
        let q = if c.lo <= 0.0 { p } else { p.lerp(far, c.lo) };
        if q != p {
            pieces.push(Piece::Radial { from: p, to: q });
            radial += p.dist(q);
            path.push(q);
        }
        arc_steps += 1;
        if arc_steps > cap {
            return Err(Error::Stalled(format!("more than {cap} boundary arcs from {s}")));
        }
        let (l, r) = tangents(h, s, tol);
        let pq = super::edge_position(h, c.enter, q);
        let options = [(Direction::Ccw, l), (Direction::Cw, r)];
        let mut best: Option<(Direction, usize, Vec<Point>, f64, bool)> = None;
        for (d, k) in options {
            let target = h.vertex(k);
            let pts = h.arc_points(q, pq, target, h.vertex_position(k), d);
            let len = Polyline::new(pts.clone()).length();
            let monotone = pts.windows(2).all(|w| s.dist(w[1]) >= s.dist(w[0]) - dist_tol);
            let better = match &best {
                None => true,
                Some((_, _, _, blen, bmono)) => (monotone && !bmono) || (monotone == *bmono && len < *blen),
            };
            if better {
                best = Some((d, k, pts, len, monotone));
            }
        }
        let (d, k, pts, len, _) = best.expect("two options");
        let to = h.vertex(k);
        pieces.push(Piece::Arc { hole: i, from: q, to, direction: d, length: len, delta: s.dist(to) - s.dist(q) });
        arcs += len;
        path.extend(pts);
        if !contact.contains(&i) {
            contact.push(i);
        }
        if to == s {
            return Err(Error::Stalled(format!("greedy walk returned to the start {s}")));
        }
        p = to;
        dir = (to - s).normalized().expect("distinct points");
        standing_on = Some(i);
    }
    Ok(GreedyTrace {
        start: s,
        direction: u,
        total_length: radial + arcs,
        path,
        pieces,
        radial_length: radial,
        arc_length: arcs,
        contact_holes: contact,
    })
}
