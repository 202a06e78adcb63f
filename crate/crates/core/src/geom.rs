//! Planar kernel: points, exact orientation, convex polygons and the
//! rotating-calipers family of measurements.
//!
//! Orientation and in-circle decisions are exact (adaptive Shewchuk
//! predicates). Lengths and positions are plain `f64` and carry a relative
//! error around `1e-12`; on-boundary tests use an absolute tolerance of
//! `1e-9` times the bounding-box diagonal of the polygon involved.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative on-boundary tolerance (scaled by a bounding-box diagonal).
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Minimum parameter length for a segment/interior overlap to count.
pub(crate) const INTERIOR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(c: [f64; 2]) -> Self {
        Point::new(c[0], c[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at angle `theta` (radians, counterclockwise from +x).
    pub fn from_angle(theta: f64) -> Self {
        Point::new(theta.cos(), theta.sin())
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-d cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Rotation by `theta` about `center`.
    pub fn rotate_about(self, center: Point, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        let d = self - center;
        center + Point::new(c * d.x - s * d.y, s * d.x + c * d.y)
    }

    /// Lexicographic order on `(x, y)` using IEEE total order.
    pub fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }

    fn coord(self) -> robust::Coord<f64> {
        robust::Coord { x: self.x, y: self.y }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Walking direction along a polygon boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Ccw,
    Cw,
}

/// Signed doubled area of `(p, q, r)`; the sign is exact.
pub fn orient2d(p: Point, q: Point, r: Point) -> f64 {
    robust::orient2d(p.coord(), q.coord(), r.coord())
}

pub(crate) fn orient(p: Point, q: Point, r: Point) -> Orientation {
    let d = orient2d(p, q, r);
    if d > 0.0 {
        Orientation::Ccw
    } else if d < 0.0 {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

/// Exact orientation of the triple `(p, q, r)`.
pub fn orientation(p: Point, q: Point, r: Point) -> Result<Orientation> {
    if !(p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(orient(p, q, r))
}

/// Positive when `d` lies inside the circle through the counterclockwise
/// triple `(a, b, c)`; the sign is exact.
pub fn incircle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    robust::incircle(a.coord(), b.coord(), c.coord(), d.coord())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn at(&self, t: f64) -> Point {
        self.a.lerp(self.b, t)
    }
}

/// True iff the open segments `ab` and `cd` cross at a single point interior
/// to both.
pub fn segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o1 != o2
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o3 != o4
}

/// True iff the closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (o1 == Orientation::Collinear && on(a, b, c))
        || (o2 == Orientation::Collinear && on(a, b, d))
        || (o3 == Orientation::Collinear && on(c, d, a))
        || (o4 == Orientation::Collinear && on(c, d, b))
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// An ordered point sequence.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<Point>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Self {
        Polyline { points }
    }

    pub fn single(p: Point) -> Self {
        Polyline { points: vec![p] }
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn first(&self) -> Option<Point> {
        self.points.first().copied()
    }

    pub fn last(&self) -> Option<Point> {
        self.points.last().copied()
    }

    /// Appends `p` unless it repeats the current last point exactly.
    pub fn push(&mut self, p: Point) {
        if self.points.last() != Some(&p) {
            self.points.push(p);
        }
    }

    pub fn extend<I: IntoIterator<Item = Point>>(&mut self, pts: I) {
        for p in pts {
            self.push(p);
        }
    }

    pub fn reversed(&self) -> Polyline {
        let mut pts = self.points.clone();
        pts.reverse();
        Polyline { points: pts }
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of_points<'a, I: IntoIterator<Item = &'a Point>>(pts: I) -> BBox {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        BBox { min, max }
    }

    pub fn diagonal(&self) -> f64 {
        self.min.dist(self.max)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn expanded(&self, m: f64) -> BBox {
        BBox { min: Point::new(self.min.x - m, self.min.y - m), max: Point::new(self.max.x + m, self.max.y + m) }
    }

    pub fn overlaps(&self, o: &BBox) -> bool {
        self.min.x <= o.max.x && o.min.x <= self.max.x && self.min.y <= o.max.y && o.min.y <= self.max.y
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn corners(&self) -> [Point; 4] {
        [self.min, Point::new(self.max.x, self.min.y), self.max, Point::new(self.min.x, self.max.y)]
    }
}

/// Where a point sits relative to a closed polygon, up to tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Boundary,
    Outside,
}

/// Part of a segment `a + t (b - a)` lying in the open interior of a
/// polygon: `lo < t < hi`, entered through edge `enter` and left through
/// edge `exit` (edge `i` joins vertex `i` to vertex `i + 1`). For a
/// degenerate segment hole `lo == hi` is the proper crossing parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Crossing {
    pub lo: f64,
    pub hi: f64,
    pub enter: usize,
    pub exit: usize,
}

/// Convex polygon with counterclockwise vertices.
///
/// Regular polygons have at least three vertices with every consecutive
/// triple strictly counterclockwise. The crate also admits two-vertex
/// "segment" polygons for segment holes; those are only built through
/// [`ConvexPolygon::segment`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    bbox: BBox,
    cum: Vec<f64>,
}

impl ConvexPolygon {
    /// Canonicalizes `points` into counterclockwise order starting at the
    /// lexicographically smallest vertex. Non-convex, collinear or
    /// duplicate-vertex input is rejected.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::TooFewVertices { min: 3, got: points.len() });
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut sorted = points.clone();
        sorted.sort_by(|a, b| a.lex_cmp(b));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { x: w[0].x, y: w[0].y });
        }
        let n = points.len() as f64;
        let c = Point::new(points.iter().map(|p| p.x).sum::<f64>() / n, points.iter().map(|p| p.y).sum::<f64>() / n);
        let mut pts = points;
        pts.sort_by(|a, b| {
            let ta = (a.y - c.y).atan2(a.x - c.x);
            let tb = (b.y - c.y).atan2(b.x - c.x);
            ta.total_cmp(&tb)
        });
        let start = (0..pts.len()).min_by(|&i, &j| pts[i].lex_cmp(&pts[j])).unwrap_or(0);
        pts.rotate_left(start);
        let m = pts.len();
        for i in 0..m {
            if orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m]) != Orientation::Ccw {
                return Err(Error::NotConvex);
            }
        }
        Ok(Self::from_vertices(pts))
    }

    /// Degenerate two-vertex polygon standing for a segment hole. Endpoints
    /// are stored with `x(a) <= x(b)` (ties broken by `y`).
    pub fn segment(a: Point, b: Point) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a == b {
            return Err(Error::DuplicateVertex { x: a.x, y: a.y });
        }
        let (a, b) = if a.lex_cmp(&b) == Ordering::Greater { (b, a) } else { (a, b) };
        Ok(Self::from_vertices(vec![a, b]))
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::new(vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)])
    }

    /// Regular `n`-gon with the given circumradius and first vertex at angle
    /// `phase`.
    pub fn regular(n: usize, center: Point, circumradius: f64, phase: f64) -> Result<Self> {
        let pts =
            (0..n).map(|j| center + Point::from_angle(phase + 2.0 * PI * j as f64 / n as f64) * circumradius).collect();
        Self::new(pts)
    }

    fn from_vertices(vertices: Vec<Point>) -> Self {
        let bbox = BBox::of_points(&vertices);
        let n = vertices.len();
        let mut cum = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for i in 0..n {
            acc += vertices[i].dist(vertices[(i + 1) % n]);
            cum.push(acc);
        }
        ConvexPolygon { vertices, bbox, cum }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` as `(v_i, v_{i+1})`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    /// Absolute on-boundary tolerance for this polygon.
    pub fn tolerance(&self) -> f64 {
        BOUNDARY_TOL * self.bbox.diagonal()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold(Point::default(), |acc, &p| acc + p);
        s * (1.0 / n)
    }

    pub fn is_axis_aligned_rectangle(&self) -> bool {
        self.len() == 4 && self.edges().all(|(a, b)| (a.x == b.x) != (a.y == b.y))
    }

    /// Applies `f` to every vertex and re-canonicalizes.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        let pts: Vec<Point> = self.vertices.iter().map(|&p| f(p)).collect();
        if self.is_segment() {
            Self::segment(pts[0], pts[1])
        } else {
            Self::new(pts)
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.cum[self.vertices.len()]
    }

    /// Cumulative boundary position of vertex `i` (`0 <= i <= n`).
    pub(crate) fn vertex_position(&self, i: usize) -> f64 {
        self.cum[i]
    }

    /// Diametral pair via rotating calipers.
    pub fn diameter(&self) -> DiametralPair {
        let v = &self.vertices;
        let mut best: Option<DiametralPair> = None;
        for (i, j) in self.antipodal_candidates() {
            let cand = DiametralPair::new(v[i], v[j]);
            best = Some(match best {
                None => cand,
                Some(b) => b.better(cand),
            });
        }
        best.expect("polygon has vertices")
    }

    /// Minimum width of an enclosing slab via rotating calipers.
    pub fn width(&self) -> f64 {
        let n = self.len();
        if n < 3 {
            return 0.0;
        }
        let v = &self.vertices;
        let mut j = 1;
        let mut best = f64::INFINITY;
        for i in 0..n {
            let (a, b) = self.edge(i);
            let h = |k: usize| orient2d(a, b, v[k % n]);
            let mut guard = 0;
            while h(j + 1) >= h(j) && guard < n {
                j = (j + 1) % n;
                guard += 1;
            }
            let far = h(j + n - 1).max(h(j)).max(h(j + 1));
            best = best.min(far / a.dist(b));
        }
        best
    }

    pub fn fatness(&self) -> FatnessReport {
        let d = self.diameter();
        let w = self.width();
        FatnessReport {
            diameter: d.length,
            width: w,
            lambda: if d.length > 0.0 { (w / d.length).min(1.0) } else { 0.0 },
            diametral_pair: (d.a, d.b),
        }
    }

    /// Candidate antipodal vertex pairs (a superset of the true antipodal
    /// pairs, padded by one step either way against rounding).
    fn antipodal_candidates(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        if n == 2 {
            return vec![(0, 1)];
        }
        let v = &self.vertices;
        let mut out = Vec::with_capacity(6 * n);
        let mut j = 1;
        for i in 0..n {
            let (a, b) = self.edge(i);
            let h = |k: usize| orient2d(a, b, v[k % n]);
            let mut guard = 0;
            while h(j + 1) > h(j) && guard < n {
                j = (j + 1) % n;
                guard += 1;
            }
            for dj in [n - 1, 0, 1] {
                let jj = (j + dj) % n;
                out.push((i, jj));
                out.push(((i + 1) % n, jj));
            }
        }
        out
    }

    /// Classifies `p` against the closed polygon with tolerance `tol`.
    pub fn locate(&self, p: Point, tol: f64) -> PointLocation {
        if self.is_segment() {
            let d = point_segment_distance(p, self.vertices[0], self.vertices[1]);
            return if d <= tol { PointLocation::Boundary } else { PointLocation::Outside };
        }
        if !self.bbox.expanded(tol).contains(p) {
            return PointLocation::Outside;
        }
        let mut min = f64::INFINITY;
        for (a, b) in self.edges() {
            let d = orient2d(a, b, p) / a.dist(b);
            min = min.min(d);
        }
        if min > tol {
            PointLocation::Inside
        } else if min >= -tol {
            // near an edge line; make sure it is near the edge itself
            let near = self.edges().any(|(a, b)| point_segment_distance(p, a, b) <= tol);
            if near {
                PointLocation::Boundary
            } else {
                PointLocation::Outside
            }
        } else {
            PointLocation::Outside
        }
    }

    /// True iff `p` lies in the open interior (exact).
    pub fn strictly_contains(&self, p: Point) -> bool {
        !self.is_segment() && self.edges().all(|(a, b)| orient(a, b, p) == Orientation::Ccw)
    }

    /// Nearest edge to `p` and the boundary position of the projection.
    pub(crate) fn project_to_boundary(&self, p: Point) -> (usize, f64, f64) {
        let mut best = (0, f64::INFINITY, 0.0);
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            let ab = b - a;
            let len = ab.norm();
            let t = ((p - a).dot(ab) / (len * len)).clamp(0.0, 1.0);
            let d = p.dist(a + ab * t);
            if d < best.1 {
                best = (i, d, self.cum[i] + t * len);
            }
        }
        best
    }

    /// Boundary position of `p`, or an error when `p` is farther than the
    /// tolerance from the boundary.
    pub fn boundary_position(&self, p: Point) -> Result<f64> {
        let (_, d, pos) = self.project_to_boundary(p);
        if d > self.tolerance() {
            return Err(Error::PointNotOnBoundary { x: p.x, y: p.y });
        }
        Ok(pos)
    }

    /// Position of a point known to lie on edge `e`.
    pub(crate) fn position_on_edge(&self, e: usize, p: Point) -> f64 {
        let e = e % self.len();
        let (a, b) = self.edge(e);
        let len = self.cum[e + 1] - self.cum[e];
        let t = if len > 0.0 { ((p - a).dot(b - a) / (len * len)).clamp(0.0, 1.0) } else { 0.0 };
        self.cum[e] + t * len
    }

    /// Counterclockwise boundary distance from position `from` to `to`.
    pub(crate) fn ccw_offset(&self, from: f64, to: f64) -> f64 {
        let per = self.perimeter();
        let tol = 1e-12 * per;
        let d = (to - from).rem_euclid(per);
        if d < tol || d > per - tol {
            0.0
        } else {
            d
        }
    }

    /// Boundary point at position `pos`.
    pub(crate) fn point_at(&self, pos: f64) -> Point {
        let per = self.perimeter();
        let pos = pos.rem_euclid(per);
        let n = self.len();
        let e = match self.cum[..n].binary_search_by(|c| c.total_cmp(&pos)) {
            Ok(i) => return self.vertices[i],
            Err(i) => i - 1,
        };
        let (a, b) = self.edge(e);
        let len = self.cum[e + 1] - self.cum[e];
        a.lerp(b, (pos - self.cum[e]) / len)
    }

    /// Points of the counterclockwise arc from `p` (position `pp`) to `q`
    /// (position `pq`), both endpoints included.
    pub(crate) fn ccw_arc_points(&self, p: Point, pp: f64, q: Point, pq: f64) -> Vec<Point> {
        let n = self.len();
        let total = self.ccw_offset(pp, pq);
        let mut out = vec![p];
        if total > 0.0 {
            let tol = 1e-12 * self.perimeter();
            // first vertex strictly after pp
            let mut i = match self.cum[..n].binary_search_by(|c| c.total_cmp(&pp.rem_euclid(self.perimeter()))) {
                Ok(i) => i + 1,
                Err(i) => i,
            };
            let mut prev = -1.0;
            for _ in 0..=n {
                let off = self.ccw_offset(pp, self.cum[i % n]);
                if off < tol {
                    i += 1;
                    continue;
                }
                if off >= total - tol || off <= prev {
                    break;
                }
                prev = off;
                out.push(self.vertices[i % n]);
                i += 1;
            }
        }
        if out.last() != Some(&q) {
            out.push(q);
        }
        out
    }

    /// Arc points from `p` to `q` in the given direction.
    pub(crate) fn arc_points(&self, p: Point, pp: f64, q: Point, pq: f64, dir: Direction) -> Vec<Point> {
        match dir {
            Direction::Ccw => self.ccw_arc_points(p, pp, q, pq),
            Direction::Cw => {
                let mut pts = self.ccw_arc_points(q, pq, p, pp);
                pts.reverse();
                pts
            }
        }
    }

    /// Arc length from position `pp` to `pq` in the given direction.
    pub(crate) fn arc_length(&self, pp: f64, pq: f64, dir: Direction) -> f64 {
        match dir {
            Direction::Ccw => self.ccw_offset(pp, pq),
            Direction::Cw => self.ccw_offset(pq, pp),
        }
    }

    /// Open-interior part of the segment `ab` (see [`Crossing`]).
    pub(crate) fn interior_crossing(&self, a: Point, b: Point) -> Option<Crossing> {
        if self.is_segment() {
            let (c, d) = (self.vertices[0], self.vertices[1]);
            if !segments_cross_properly(a, b, c, d) {
                return None;
            }
            let r = b - a;
            let sgm = d - c;
            let t = (c - a).cross(sgm) / r.cross(sgm);
            // entering through the side facing `a`
            let (enter, exit) = if orient(c, d, a) == Orientation::Cw { (0, 1) } else { (1, 0) };
            return Some(Crossing { lo: t, hi: t, enter, exit });
        }
        let n = self.len();
        let tol = self.tolerance();
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let (mut enter, mut exit) = (usize::MAX, usize::MAX);
        for i in 0..n {
            let (p, q) = self.edge(i);
            let sa = orient2d(p, q, a);
            let sb = orient2d(p, q, b);
            // running along the edge line (up to rounding) only grazes
            let slack = tol * p.dist(q);
            if sa <= slack && sb <= slack {
                return None;
            }
            if sa > 0.0 && sb > 0.0 {
                continue;
            }
            let t = sa / (sa - sb);
            if sa <= 0.0 {
                if t >= lo {
                    lo = t;
                    enter = i;
                }
            } else if t <= hi {
                hi = t;
                exit = i;
            }
        }
        (hi - lo > INTERIOR_EPS).then_some(Crossing { lo, hi, enter, exit })
    }

    /// Support vertices seen from an exterior point `s`: `(ell, r)` with the
    /// polygon on the left of ray `s -> ell` and on the right of ray
    /// `s -> r`. When a ray contains an edge the vertex nearer to `s` wins.
    pub(crate) fn tangent_indices(&self, s: Point) -> Option<(usize, usize)> {
        let n = self.len();
        if self.is_segment() {
            let (a, b) = (self.vertices[0], self.vertices[1]);
            return match orient(a, b, s) {
                Orientation::Cw => Some((1, 0)),
                Orientation::Ccw => Some((0, 1)),
                Orientation::Collinear => {
                    if point_segment_distance(s, a, b) == 0.0 {
                        None
                    } else {
                        let near = if s.dist(a) <= s.dist(b) { 0 } else { 1 };
                        Some((near, near))
                    }
                }
            };
        }
        let visible: Vec<bool> = (0..n)
            .map(|i| {
                let (p, q) = self.edge(i);
                orient(p, q, s) == Orientation::Cw
            })
            .collect();
        let mut ell = None;
        let mut r = None;
        for i in 0..n {
            if visible[i] && !visible[(i + n - 1) % n] {
                r = Some(i);
            }
            if visible[i] && !visible[(i + 1) % n] {
                ell = Some((i + 1) % n);
            }
        }
        Some((ell?, r?))
    }
}

/// Two points realizing a diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiametralPair {
    pub a: Point,
    pub b: Point,
    pub length: f64,
}

impl DiametralPair {
    /// Stores the pair with `a` lexicographically before `b`.
    pub fn new(p: Point, q: Point) -> Self {
        let (a, b) = if p.lex_cmp(&q) == Ordering::Greater { (q, p) } else { (p, q) };
        DiametralPair { a, b, length: a.dist(b) }
    }

    /// Longer pair, ties broken by the lexicographically smaller pair.
    fn better(self, o: DiametralPair) -> DiametralPair {
        match self.length.total_cmp(&o.length) {
            Ordering::Greater => self,
            Ordering::Less => o,
            Ordering::Equal => {
                let c = self.a.lex_cmp(&o.a).then(self.b.lex_cmp(&o.b));
                if c == Ordering::Greater {
                    o
                } else {
                    self
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FatnessReport {
    pub diameter: f64,
    pub width: f64,
    pub lambda: f64,
    pub diametral_pair: (Point, Point),
}

/// Tangent points from an exterior point: `(ell, r)` with the polygon on
/// the left of ray `s -> ell` and on the right of ray `s -> r`.
pub fn tangents_from_point(s: Point, poly: &ConvexPolygon) -> Result<(Point, Point)> {
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    if poly.locate(s, poly.tolerance()) != PointLocation::Outside {
        return Err(Error::PointNotOutside { x: s.x, y: s.y });
    }
    let (l, r) = poly.tangent_indices(s).ok_or(Error::PointNotOutside { x: s.x, y: s.y })?;
    Ok((poly.vertex(l), poly.vertex(r)))
}

/// Boundary walk from `p` to `q` in the given direction, intermediate
/// vertices included.
pub fn boundary_arc(poly: &ConvexPolygon, p: Point, q: Point, dir: Direction) -> Result<Polyline> {
    let pp = poly.boundary_position(p)?;
    let pq = poly.boundary_position(q)?;
    if p == q {
        return Ok(Polyline::single(p));
    }
    Ok(Polyline::new(poly.arc_points(p, pp, q, pq, dir)))
}

/// True iff the open segment meets the open interior of `poly`. For a
/// segment polygon this means crossing it properly.
pub fn segment_intersects_interior(seg: &Segment, poly: &ConvexPolygon) -> bool {
    poly.interior_crossing(seg.a, seg.b).is_some()
}

/// Closed intersection of `seg` with `poly`; `None` when empty. Touching a
/// single point yields a degenerate segment.
pub fn clip(seg: &Segment, poly: &ConvexPolygon) -> Option<Segment> {
    let (a, b) = (seg.a, seg.b);
    if poly.is_segment() {
        let (c, d) = (poly.vertex(0), poly.vertex(1));
        if !segments_intersect(a, b, c, d) {
            return None;
        }
        if orient(a, b, c) == Orientation::Collinear && orient(a, b, d) == Orientation::Collinear {
            let dir = b - a;
            let len2 = dir.norm2().max(f64::MIN_POSITIVE);
            let param = |p: Point| (p - a).dot(dir) / len2;
            let (mut lo, mut hi) = (param(c), param(d));
            if lo > hi {
                std::mem::swap(&mut lo, &mut hi);
            }
            let (lo, hi) = (lo.max(0.0), hi.min(1.0));
            return Some(Segment::new(seg.at(lo), seg.at(hi)));
        }
        let r = b - a;
        let s = d - c;
        let t = ((c - a).cross(s) / r.cross(s)).clamp(0.0, 1.0);
        let p = seg.at(t);
        return Some(Segment::new(p, p));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for (p, q) in poly.edges() {
        let sa = orient2d(p, q, a);
        let sb = orient2d(p, q, b);
        if sa < 0.0 && sb < 0.0 {
            return None;
        }
        if sa >= 0.0 && sb >= 0.0 {
            continue;
        }
        let t = sa / (sa - sb);
        if sa < 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
    }
    (lo <= hi).then(|| Segment::new(seg.at(lo), seg.at(hi)))
}

/// Strict convex hull (collinear points dropped), counterclockwise from the
/// lexicographically smallest point.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) != Orientation::Ccw {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) != Orientation::Ccw {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Width of a point set in direction `theta` (extent of the projection on
/// the unit normal).
pub fn directional_width(points: &[Point], theta: f64) -> f64 {
    let n = Point::from_angle(theta);
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let d = p.dot(n);
        (lo.min(d), hi.max(d))
    });
    hi - lo
}
