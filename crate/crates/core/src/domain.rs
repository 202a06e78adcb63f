//! Polygonal domains: a convex outer polygon minus pairwise disjoint convex
//! holes in its interior.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geodesic::{self, VisibilityGraph};
use crate::geom::{BBox, ConvexPolygon, Point, PointLocation, BOUNDARY_TOL};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalDomain {
    outer: ConvexPolygon,
    holes: Vec<ConvexPolygon>,
}

/// One broken invariant of a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    HoleNotInside { hole: usize },
    HolesIntersect { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HoleNotInside { hole } => write!(f, "hole {hole} not inside outer"),
            Violation::HolesIntersect { a, b } => write!(f, "holes {a} and {b} intersect"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DomainFile {
    outer: Vec<Point>,
    #[serde(default)]
    holes: Vec<Vec<Point>>,
}

impl PolygonalDomain {
    /// Builds and validates a domain.
    pub fn new(outer: ConvexPolygon, holes: Vec<ConvexPolygon>) -> Result<Self> {
        let d = Self::new_unchecked(outer, holes);
        let report = d.validate();
        if report.is_valid() {
            Ok(d)
        } else {
            Err(Error::InvalidDomain(report))
        }
    }

    /// Builds a domain without checking containment or disjointness; use
    /// [`PolygonalDomain::validate`] to inspect it.
    pub fn new_unchecked(outer: ConvexPolygon, holes: Vec<ConvexPolygon>) -> Self {
        PolygonalDomain { outer, holes }
    }

    pub fn outer(&self) -> &ConvexPolygon {
        &self.outer
    }

    pub fn holes(&self) -> &[ConvexPolygon] {
        &self.holes
    }

    pub fn hole_count(&self) -> usize {
        self.holes.len()
    }

    pub fn bbox(&self) -> BBox {
        self.outer.bbox()
    }

    /// Absolute tolerance used for boundary decisions in this domain.
    pub fn tolerance(&self) -> f64 {
        BOUNDARY_TOL * self.outer.bbox().diagonal()
    }

    /// Same outer polygon, different holes (validated).
    pub fn with_holes(&self, holes: Vec<ConvexPolygon>) -> Result<Self> {
        Self::new(self.outer.clone(), holes)
    }

    pub fn validate(&self) -> ValidationReport {
        let tol = self.tolerance();
        let mut violations = Vec::new();
        for (i, h) in self.holes.iter().enumerate() {
            let inside = h.vertices().iter().all(|&v| self.outer.locate(v, tol) == PointLocation::Inside);
            if !inside {
                violations.push(Violation::HoleNotInside { hole: i });
            }
        }
        let boxes: Vec<BBox> = self.holes.iter().map(|h| h.bbox().expanded(tol)).collect();
        // sweep over x to keep the pair test near-linear on spread-out holes
        let mut order: Vec<usize> = (0..self.holes.len()).collect();
        order.sort_by(|&a, &b| boxes[a].min.x.total_cmp(&boxes[b].min.x).then(a.cmp(&b)));
        let mut pairs = Vec::new();
        for (oi, &i) in order.iter().enumerate() {
            for &j in &order[oi + 1..] {
                if boxes[j].min.x > boxes[i].max.x {
                    break;
                }
                if boxes[i].overlaps(&boxes[j]) && !separated(&self.holes[i], &self.holes[j], tol) {
                    pairs.push((i.min(j), i.max(j)));
                }
            }
        }
        pairs.sort_unstable();
        violations.extend(pairs.into_iter().map(|(a, b)| Violation::HolesIntersect { a, b }));
        ValidationReport { violations }
    }

    /// diam_2 of the domain, which for a convex outer polygon is the
    /// diameter of the outer polygon.
    pub fn euclidean_diameter(&self) -> f64 {
        self.outer.diameter().length
    }

    /// Largest hole diameter divided by the domain diameter (0 without
    /// holes).
    pub fn max_hole_diameter_ratio(&self) -> f64 {
        let d = self.euclidean_diameter();
        self.holes.iter().map(|h| h.diameter().length).fold(0.0, f64::max) / d
    }

    /// Ok iff `p` is in the closed domain: inside or on the outer polygon
    /// and not in the open interior of any hole.
    pub fn check_point(&self, p: Point) -> Result<()> {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        let tol = self.tolerance();
        if self.outer.locate(p, tol) == PointLocation::Outside {
            return Err(Error::PointNotInDomain { x: p.x, y: p.y, reason: "outside outer".into() });
        }
        if let Some(i) = self.hole_containing(p) {
            return Err(Error::PointNotInDomain { x: p.x, y: p.y, reason: format!("inside hole {i}") });
        }
        Ok(())
    }

    pub fn contains(&self, p: Point) -> bool {
        self.check_point(p).is_ok()
    }

    /// Index of a hole whose interior contains `p` beyond tolerance.
    pub fn hole_containing(&self, p: Point) -> Option<usize> {
        let tol = self.tolerance();
        self.holes.iter().position(|h| h.bbox().contains(p) && h.locate(p, tol) == PointLocation::Inside)
    }

    /// A point strictly inside the domain (off every boundary) near `p`:
    /// `p` itself when possible, else the closest node of a 65 x 65 grid
    /// over the bounding box.
    pub fn free_point_near(&self, p: Point) -> Option<Point> {
        let tol = self.tolerance();
        let free = |q: Point| {
            self.outer.locate(q, tol) == PointLocation::Inside
                && self.holes.iter().all(|h| h.locate(q, tol) == PointLocation::Outside)
        };
        if free(p) {
            return Some(p);
        }
        let bb = self.bbox();
        let m = 64;
        let mut grid: Vec<Point> = (0..=m)
            .flat_map(|j| {
                (0..=m).map(move |i| {
                    Point::new(
                        bb.min.x + bb.width() * i as f64 / m as f64,
                        bb.min.y + bb.height() * j as f64 / m as f64,
                    )
                })
            })
            .collect();
        grid.sort_by(|a, b| a.dist(p).total_cmp(&b.dist(p)).then(a.lex_cmp(b)));
        grid.into_iter().find(|&q| free(q))
    }

    /// True iff the closed segment `ab` stays in the domain (grazing hole
    /// boundaries allowed).
    pub fn segment_is_free(&self, a: Point, b: Point) -> bool {
        self.holes.iter().all(|h| h.interior_crossing(a, b).is_none())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DomainFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let outer = ConvexPolygon::new(file.outer)?;
        let holes = file
            .holes
            .into_iter()
            .map(|h| if h.len() == 2 { ConvexPolygon::segment(h[0], h[1]) } else { ConvexPolygon::new(h) })
            .collect::<Result<Vec<_>>>()?;
        Self::new(outer, holes)
    }

    pub fn to_json(&self) -> String {
        let file = DomainFile {
            outer: self.outer.vertices().to_vec(),
            holes: self.holes.iter().map(|h| h.vertices().to_vec()).collect(),
        };
        serde_json::to_string(&file).expect("domain serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// Candidate points used by [`distortion`], sorted and deduplicated.
    pub fn candidate_points(&self, cfg: &SamplerConfig) -> Vec<Point> {
        let mut pts: Vec<Point> = self.outer.vertices().to_vec();
        for h in &self.holes {
            pts.extend_from_slice(h.vertices());
            if cfg.hole_edge_midpoints && !h.is_segment() {
                pts.extend(h.edges().map(|(a, b)| a.midpoint(b)));
            }
        }
        if cfg.boundary_spacing > 0.0 {
            let step = cfg.boundary_spacing * self.euclidean_diameter();
            for (a, b) in self.outer.edges() {
                let m = (a.dist(b) / step).ceil() as usize;
                pts.extend((1..m).map(|j| a.lerp(b, j as f64 / m as f64)));
            }
        }
        pts.extend(cfg.extra_points.iter().copied().filter(|&p| self.contains(p)));
        pts.sort_by(|a, b| a.lex_cmp(b));
        pts.dedup();
        pts
    }
}

/// True iff some edge normal (or segment direction) of either polygon
/// separates the two closed polygons by more than `tol`.
pub(crate) fn separated(p: &ConvexPolygon, q: &ConvexPolygon, tol: f64) -> bool {
    let axes = |poly: &ConvexPolygon| -> Vec<Point> {
        let mut v: Vec<Point> = poly.edges().filter_map(|(a, b)| (b - a).perp().normalized()).collect();
        if poly.is_segment() {
            v.extend((poly.vertex(1) - poly.vertex(0)).normalized());
        }
        v
    };
    axes(p).into_iter().chain(axes(q)).any(|n| {
        let proj = |poly: &ConvexPolygon| {
            poly.vertices()
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v.dot(n)), hi.max(v.dot(n))))
        };
        let (a0, a1) = proj(p);
        let (b0, b1) = proj(q);
        b0 - a1 > tol || a0 - b1 > tol
    })
}

/// Which points enter the candidate set of [`distortion`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Outer-boundary sample spacing as a fraction of diam_2 (0 disables).
    pub boundary_spacing: f64,
    pub hole_edge_midpoints: bool,
    /// Additional points; those outside the domain are ignored.
    pub extra_points: Vec<Point>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { boundary_spacing: 1.0 / 64.0, hole_edge_midpoints: true, extra_points: Vec::new() }
    }
}

impl SamplerConfig {
    /// Only outer and hole vertices plus the given points.
    pub fn vertices_only(extra_points: Vec<Point>) -> Self {
        SamplerConfig { boundary_spacing: 0.0, hole_edge_midpoints: false, extra_points }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub euclidean_diameter: f64,
    /// Largest geodesic distance over the candidate set; a lower bound on
    /// the geodesic diameter.
    pub geodesic_diameter_lb: f64,
    pub rho_lb: f64,
    pub witness_pair: (Point, Point),
    pub max_hole_diameter_ratio: f64,
    pub candidate_count: usize,
}

/// Largest geodesic distance over the candidate pairs of `cfg`.
///
/// One visibility graph over hole vertices and candidates, then a Dijkstra
/// run per candidate. Ties in the maximum go to the lexicographically
/// smallest witness pair, so the result does not depend on scheduling.
pub fn distortion(domain: &PolygonalDomain, cfg: &SamplerConfig) -> Result<DistortionReport> {
    let cands = domain.candidate_points(cfg);
    let diam = domain.euclidean_diameter();
    let graph = VisibilityGraph::build(domain, &cands)?;
    let cand_nodes: Vec<usize> = cands.iter().map(|p| graph.node_of(*p).expect("candidate registered")).collect();
    let best = cand_nodes
        .par_iter()
        .enumerate()
        .map(|(ci, &src)| {
            let dist = geodesic::dijkstra_all(&graph, src);
            let mut best: Option<(f64, Point, Point)> = None;
            for (cj, &dst) in cand_nodes.iter().enumerate() {
                if cj <= ci {
                    continue;
                }
                let d = dist[dst];
                if !d.is_finite() {
                    return Err(Error::Unreachable {
                        sx: cands[ci].x,
                        sy: cands[ci].y,
                        tx: cands[cj].x,
                        ty: cands[cj].y,
                    });
                }
                let cand = (d, cands[ci], cands[cj]);
                best = Some(match best {
                    None => cand,
                    Some(b) => pick(b, cand),
                });
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .reduce(pick);
    let (len, a, b) = best.unwrap_or((0.0, cands[0], cands[0]));
    // straight segments are always paths, so clamp the last rounding bit
    let lb = len.max(a.dist(b));
    let rho = if domain.hole_count() == 0 { 1.0 } else { (lb / diam).max(1.0) };
    let lb = if domain.hole_count() == 0 { diam } else { lb.max(diam) };
    Ok(DistortionReport {
        euclidean_diameter: diam,
        geodesic_diameter_lb: lb,
        rho_lb: rho,
        witness_pair: (a, b),
        max_hole_diameter_ratio: domain.max_hole_diameter_ratio(),
        candidate_count: cands.len(),
    })
}

fn pick(x: (f64, Point, Point), y: (f64, Point, Point)) -> (f64, Point, Point) {
    let ord = x.0.total_cmp(&y.0).then_with(|| {
        // smaller witness wins a tie
        y.1.lex_cmp(&x.1).then(y.2.lex_cmp(&x.2))
    });
    if ord == Ordering::Less {
        y
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexPolygon {
        ConvexPolygon::rectangle(x0, y0, x1, y1).unwrap()
    }

    #[test]
    fn validation_examples() {
        let d = PolygonalDomain::new_unchecked(square(0., 0., 1., 1.), vec![]);
        assert!(d.validate().is_valid());

        let d = PolygonalDomain::new_unchecked(square(0., 0., 1., 1.), vec![square(0.5, 0.5, 1.5, 0.7)]);
        let r = d.validate();
        assert_eq!(r.violations, vec![Violation::HoleNotInside { hole: 0 }]);
        assert_eq!(r.to_string(), "hole 0 not inside outer");

        let d = PolygonalDomain::new_unchecked(
            square(0., 0., 1., 1.),
            vec![square(0.1, 0.1, 0.5, 0.5), square(0.4, 0.4, 0.8, 0.8), square(0.85, 0.1, 0.9, 0.2)],
        );
        assert_eq!(d.validate().violations, vec![Violation::HolesIntersect { a: 0, b: 1 }]);

        // touching holes count as intersecting
        let d = PolygonalDomain::new_unchecked(
            square(0., 0., 1., 1.),
            vec![square(0.1, 0.1, 0.5, 0.5), square(0.5, 0.1, 0.8, 0.5)],
        );
        assert!(!d.validate().is_valid());
        // hole touching the outer boundary
        let d = PolygonalDomain::new_unchecked(square(0., 0., 1., 1.), vec![square(0.0, 0.1, 0.5, 0.5)]);
        assert!(!d.validate().is_valid());
    }

    #[test]
    fn separated_diagonal_triangles() {
        // bounding boxes overlap but the triangles do not
        let a = ConvexPolygon::new(vec![p(0.1, 0.1), p(0.6, 0.1), p(0.1, 0.6)]).unwrap();
        let b = ConvexPolygon::new(vec![p(0.7, 0.2), p(0.7, 0.7), p(0.2, 0.7)]).unwrap();
        assert!(PolygonalDomain::new(square(0., 0., 1., 1.), vec![a, b]).is_ok());
    }

    #[test]
    fn diameter_examples() {
        let d = PolygonalDomain::new(square(0., 0., 1., 1.), vec![square(0.4, 0.4, 0.6, 0.6)]).unwrap();
        assert!((d.euclidean_diameter() - 2f64.sqrt()).abs() < 1e-15);
        let hex = ConvexPolygon::regular(6, p(0., 0.), 0.5, 0.3).unwrap();
        let d = PolygonalDomain::new(hex, vec![]).unwrap();
        assert!((d.euclidean_diameter() - 1.0).abs() < 1e-12);
        let tri = ConvexPolygon::new(vec![p(0., 0.), p(3., 0.), p(0., 4.)]).unwrap();
        assert_eq!(PolygonalDomain::new(tri, vec![]).unwrap().euclidean_diameter(), 5.0);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"outer": [[0,0],[0,1],[1,1],[1,0]], "holes": [[[0.2,0.2],[0.4,0.2],[0.3,0.4]], [[0.6,0.5],[0.8,0.7]]]}"#;
        let d = PolygonalDomain::from_json(text).unwrap();
        assert_eq!(d.outer().vertices()[0], p(0., 0.));
        assert_eq!(d.outer().vertices()[1], p(1., 0.));
        assert!(d.holes()[1].is_segment());
        let back = PolygonalDomain::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);

        let bad = "{\"outer\": [[0,0],[1,0]\n,[1,1],}";
        match PolygonalDomain::from_json(bad) {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn distortion_without_holes_is_one() {
        let d = PolygonalDomain::new(square(0., 0., 1., 1.), vec![]).unwrap();
        let r = distortion(&d, &SamplerConfig::default()).unwrap();
        assert_eq!(r.rho_lb, 1.0);
        assert_eq!(r.geodesic_diameter_lb, r.euclidean_diameter);
    }

    #[test]
    fn thin_wall_raises_distortion() {
        // wall across the middle, gaps at both ends
        let d = PolygonalDomain::new(square(0., 0., 1., 1.), vec![square(0.05, 0.49, 0.95, 0.51)]).unwrap();
        let r = distortion(&d, &SamplerConfig::default()).unwrap();
        assert!(r.rho_lb > 1.0);
        assert!(r.geodesic_diameter_lb >= r.euclidean_diameter);
    }

    #[test]
    fn candidate_subset_monotone() {
        let d = PolygonalDomain::new(square(0., 0., 1., 1.), vec![square(0.3, 0.3, 0.7, 0.7)]).unwrap();
        let small = distortion(&d, &SamplerConfig::vertices_only(vec![])).unwrap();
        let big = distortion(&d, &SamplerConfig::default()).unwrap();
        assert!(small.rho_lb <= big.rho_lb);
    }
}
