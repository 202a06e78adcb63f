//! Instance generators: nested regular k-gons, the greedy-hard variant and
//! seeded random corpora.
//!
//! Every generator is a pure function of its inputs; random families draw
//! from a `ChaCha8Rng` seeded by the recipe, so equal recipes give
//! bit-identical domains.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{separated, PolygonalDomain};
use crate::escape::greedy_escape;
use crate::geom::{convex_hull, BBox, ConvexPolygon, Point, PointLocation};
use crate::{Error, Result};

/// Slit thickness parameter of the nested construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum Epsilon {
    /// One hundredth of the shortest ring edge.
    #[default]
    Auto,
    Value(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NestedConstruction {
    pub domain: PolygonalDomain,
    pub k: usize,
    pub epsilon: f64,
    /// Distance from each hole end to the nearest ring vertex.
    pub gap: f64,
    pub center: Point,
    /// `Q_0, ..., Q_{k^2}`; `Q_0` is the outer polygon.
    pub rings: Vec<ConvexPolygon>,
    /// A vertex of the outer polygon.
    pub target: Point,
}

impl NestedConstruction {
    /// Edge length of ring `i`.
    pub fn edge_length(&self, i: usize) -> f64 {
        ring_edge(self.k, i)
    }

    /// Lower bound on `geod(center, target)`: every path gains at least
    /// `|e_i| / 2 - 2 * gap` between consecutive ring crossings.
    pub fn ring_bound(&self) -> f64 {
        (0..self.k * self.k).map(|i| self.edge_length(i) / 2.0 - 2.0 * self.gap).sum()
    }
}

fn ring_radius(k: usize, i: usize) -> f64 {
    let kf = k as f64;
    let r0 = 1.0 / (2.0 * ((k / 2) as f64 * PI / kf).sin());
    r0 * (PI / kf).cos().powi(i as i32)
}

fn ring_edge(k: usize, i: usize) -> f64 {
    2.0 * ring_radius(k, i) * (PI / k as f64).sin()
}

fn ring_vertices(k: usize, i: usize) -> Vec<Point> {
    let r = ring_radius(k, i);
    let phase = PI / 2.0 + i as f64 * PI / k as f64;
    (0..k).map(|j| Point::from_angle(phase + 2.0 * PI * j as f64 / k as f64) * r).collect()
}

/// Rectangle of thickness `thickness` around the segment `ab`, shortened by
/// `gap` at both ends.
fn slit(a: Point, b: Point, gap: f64, thickness: f64) -> Result<ConvexPolygon> {
    let d = (b - a).normalized().ok_or_else(|| Error::Degenerate("zero-length edge".into()))?;
    let n = d.perp() * (thickness / 2.0);
    let (p, q) = (a + d * gap, b - d * gap);
    ConvexPolygon::new(vec![p - n, q - n, q + n, p + n])
}

/// Nested regular k-gons `Q_0 ⊃ Q_1 ⊃ ... ⊃ Q_{k^2}` (vertices of `Q_{i+1}`
/// at edge midpoints of `Q_i`) with one thin rectangular hole along every
/// edge of `Q_1, ..., Q_{k^2}`; `k^3` holes in a domain of unit diameter.
///
/// Holes are `epsilon / 2` thick and stop `gap` short of the ring vertices.
/// `gap = epsilon` keeps neighbouring rings apart only while
/// `tan(pi / 2k) > 1/4`, i.e. `k <= 6`; beyond that the gap grows to
/// `1.2 * epsilon / (4 tan(pi / 2k))`.
pub fn nested_kgon(k: usize, epsilon: Epsilon) -> Result<NestedConstruction> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("nested construction needs k >= 3, got {k}")));
    }
    let rings_n = k * k;
    let min_edge = ring_edge(k, rings_n);
    let eps = match epsilon {
        Epsilon::Auto => min_edge / 100.0,
        Epsilon::Value(e) => e,
    };
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    if eps >= min_edge / 8.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon {eps} too large: holes would intersect (shortest edge {min_edge})"
        )));
    }
    let t = (PI / (2.0 * k as f64)).tan();
    let gap = if 4.0 * t > 1.0 { eps } else { 1.2 * eps / (4.0 * t) };
    let rings = (0..=rings_n).map(|i| ConvexPolygon::new(ring_vertices(k, i))).collect::<Result<Vec<_>>>()?;
    let mut holes = Vec::with_capacity(k * rings_n);
    for i in 1..=rings_n {
        let v = ring_vertices(k, i);
        for j in 0..k {
            holes.push(slit(v[j], v[(j + 1) % k], gap, eps / 2.0)?);
        }
    }
    let domain = PolygonalDomain::new(rings[0].clone(), holes)?;
    Ok(NestedConstruction {
        domain,
        k,
        epsilon: eps,
        gap,
        center: Point::new(0.0, 0.0),
        target: ring_vertices(k, 0)[0],
        rings,
    })
}

/// Number of greedy directions used to prune and audit the greedy-hard
/// instance.
pub const GREEDY_DIRECTIONS: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyHardInstance {
    pub domain: PolygonalDomain,
    pub s: Point,
    pub k: usize,
    /// Counterclockwise rotation applied to every hole about its centroid.
    pub rotation: f64,
    /// Corners of the small triangle around `s`.
    pub triangle: [Point; 3],
    /// Directions (radians) whose greedy path leaves the triangle away
    /// from every corner.
    pub corner_violations: Vec<f64>,
}

/// The unit vector of the `j`-th of `GREEDY_DIRECTIONS` directions.
pub fn greedy_direction(j: usize) -> Point {
    Point::from_angle(2.0 * PI * j as f64 / GREEDY_DIRECTIONS as f64)
}

/// Nested construction plus three slits around a small equilateral
/// triangle at the center, every hole turned slightly counterclockwise,
/// and only the holes touched by some greedy path from the center kept.
pub fn greedy_hard_instance(k: usize) -> Result<GreedyHardInstance> {
    let nested = nested_kgon(k, Epsilon::Auto)?;
    let s = nested.center;
    let inner = &nested.rings[k * k];
    let apothem = ring_radius(k, k * k) * (PI / k as f64).cos();
    let tr = 0.5 * apothem;
    let side = 3f64.sqrt() * tr;
    let eps_t = nested.epsilon.min(side / 10.0);
    // One corner points just clockwise of an edge midpoint of the innermost
    // ring. Rays leaving through that corner gap fan out by about
    // 2 * eps_t along the edge; aimed at the midpoint itself they would land
    // on both sides of the point nearest to s on the tilted slit and split
    // into two chains, since the admissible tilt is far smaller than the fan.
    let (a, b) = inner.edge(0);
    let phase = a.midpoint(b).angle() - (4.0 * eps_t / apothem).atan();
    let triangle = [0, 1, 2].map(|j| s + Point::from_angle(phase + 2.0 * PI * j as f64 / 3.0) * tr);
    let mut base = nested.domain.holes().to_vec();
    for j in 0..3 {
        base.push(slit(triangle[j], triangle[(j + 1) % 3], eps_t, eps_t / 2.0)?);
    }
    let outer = nested.domain.outer().clone();
    let mut rotation = PI / (20.0 * (k * k) as f64);
    let rotated = loop {
        let holes = base
            .iter()
            .map(|h| {
                let c = h.centroid();
                h.map(|p| p.rotate_about(c, rotation))
            })
            .collect::<Result<Vec<_>>>()?;
        match PolygonalDomain::new(outer.clone(), holes) {
            Ok(d) => break d,
            Err(_) if rotation > 1e-12 => rotation /= 2.0,
            Err(e) => return Err(e),
        }
    };
    let mut touched = vec![false; rotated.hole_count()];
    for j in 0..GREEDY_DIRECTIONS {
        let trace = greedy_escape(&rotated, s, greedy_direction(j))?;
        for &i in &trace.contact_holes {
            touched[i] = true;
        }
    }
    let kept: Vec<ConvexPolygon> =
        rotated.holes().iter().zip(&touched).filter(|(_, &t)| t).map(|(h, _)| h.clone()).collect();
    let domain = PolygonalDomain::new(outer, kept)?;
    let tri = ConvexPolygon::new(triangle.to_vec())?;
    let near_corner = 3.0 * eps_t;
    let mut corner_violations = Vec::new();
    for j in 0..GREEDY_DIRECTIONS {
        let trace = greedy_escape(&domain, s, greedy_direction(j))?;
        let pts = &trace.path.points;
        let leave = pts.windows(2).find_map(|w| {
            let outside = tri.locate(w[1], 0.0) == PointLocation::Outside;
            outside.then(|| exit_point(&tri, w[0], w[1]))
        });
        let ok = leave.is_some_and(|p| triangle.iter().any(|c| c.dist(p) <= near_corner));
        if !ok {
            corner_violations.push(2.0 * PI * j as f64 / GREEDY_DIRECTIONS as f64);
        }
    }
    Ok(GreedyHardInstance { domain, s, k, rotation, triangle, corner_violations })
}

/// Point where the segment `ab` (with `a` inside or on `poly`) leaves it.
fn exit_point(poly: &ConvexPolygon, a: Point, b: Point) -> Point {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if poly.locate(a.lerp(b, mid), 0.0) == PointLocation::Outside {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    a.lerp(b, lo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Nested,
    GreedyHard,
    #[serde(rename = "fat")]
    RandomFat,
    #[serde(rename = "segments")]
    RandomSegments,
    #[serde(rename = "axis-rects")]
    RandomAxisRects,
    #[serde(rename = "bounded-delta")]
    RandomBoundedDelta,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Nested => "nested",
            Family::GreedyHard => "greedy-hard",
            Family::RandomFat => "fat",
            Family::RandomSegments => "segments",
            Family::RandomAxisRects => "axis-rects",
            Family::RandomBoundedDelta => "bounded-delta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::Nested,
            Family::GreedyHard,
            Family::RandomFat,
            Family::RandomSegments,
            Family::RandomAxisRects,
            Family::RandomBoundedDelta,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{s}'")))
    }
}

/// Everything needed to regenerate an instance.
///
/// `k` is used by the nested families, `h`, `lambda`, `delta` by the
/// random ones. `delta` bounds hole diameters relative to `diam_2`; when
/// absent a value that leaves room for `h` holes is used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecipe {
    pub family: Family,
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub h: usize,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl InstanceRecipe {
    pub fn new(family: Family) -> Self {
        InstanceRecipe { family, k: 3, h: 10, lambda: 0.5, delta: None, seed: 0 }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_h(mut self, h: usize) -> Self {
        self.h = h;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Hole diameter bound relative to `diam_2` actually used.
    pub fn effective_delta(&self) -> f64 {
        self.delta.unwrap_or_else(|| (0.35 / (self.h.max(1) as f64).sqrt()).min(0.25))
    }
}

/// Builds the instance described by `recipe`.
pub fn random_family(recipe: &InstanceRecipe) -> Result<PolygonalDomain> {
    match recipe.family {
        Family::Nested => Ok(nested_kgon(recipe.k, Epsilon::Auto)?.domain),
        Family::GreedyHard => Ok(greedy_hard_instance(recipe.k)?.domain),
        _ => random_holes(recipe),
    }
}

fn random_holes(recipe: &InstanceRecipe) -> Result<PolygonalDomain> {
    let delta = recipe.effective_delta();
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!("delta must be in (0, 1], got {delta}")));
    }
    if recipe.family == Family::RandomFat && !(recipe.lambda > 0.0 && recipe.lambda <= 1.0) {
        return Err(Error::InvalidParameter(format!("lambda must be in (0, 1], got {}", recipe.lambda)));
    }
    let outer = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0)?;
    let dmax = delta * std::f64::consts::SQRT_2;
    let gap = 0.1 * dmax;
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    let budget = 1000 * recipe.h.max(1);
    let mut holes: Vec<ConvexPolygon> = Vec::with_capacity(recipe.h);
    let mut boxes: Vec<BBox> = Vec::with_capacity(recipe.h);
    let mut attempts = 0;
    while holes.len() < recipe.h {
        attempts += 1;
        if attempts > budget {
            return Err(Error::GenerationFailed { attempts: budget });
        }
        let Some(shape) = random_hole(&mut rng, recipe, dmax)? else {
            continue;
        };
        let bb = shape.bbox();
        // keep clear of the outer boundary
        let (w, h) = (bb.width(), bb.height());
        if w + 2.0 * gap >= 1.0 || h + 2.0 * gap >= 1.0 {
            continue;
        }
        let x = rng.random_range(gap..1.0 - gap - w);
        let y = rng.random_range(gap..1.0 - gap - h);
        let off = Point::new(x, y) - bb.min;
        let hole = shape.map(|p| p + off)?;
        let hb = hole.bbox().expanded(gap);
        let clash = holes.iter().zip(&boxes).any(|(other, ob)| ob.overlaps(&hb) && !separated(other, &hole, gap));
        if !clash {
            boxes.push(hole.bbox());
            holes.push(hole);
        }
    }
    PolygonalDomain::new(outer, holes)
}

/// One hole shape with its lexicographic minimum anywhere; `None` when the
/// draw is rejected.
fn random_hole(rng: &mut ChaCha8Rng, recipe: &InstanceRecipe, dmax: f64) -> Result<Option<ConvexPolygon>> {
    let diam = rng.random_range(0.5 * dmax..=dmax);
    let theta = rng.random_range(0.0..PI);
    Ok(match recipe.family {
        Family::RandomSegments => {
            let d = Point::from_angle(theta) * (diam / 2.0);
            Some(ConvexPolygon::segment(-d, d)?)
        }
        Family::RandomAxisRects => {
            let a = rng.random_range(0.1..=1.0f64);
            let (w, h) = if rng.random_bool(0.5) { (1.0, a) } else { (a, 1.0) };
            let scale = diam / w.hypot(h);
            Some(ConvexPolygon::rectangle(0.0, 0.0, w * scale, h * scale)?)
        }
        Family::RandomFat => {
            let aspect = rng.random_range(recipe.lambda.max(0.05)..=1.0);
            let n = rng.random_range(3..=9usize);
            let p = random_convex_polygon(rng, n, aspect, diam)?;
            (p.fatness().lambda >= recipe.lambda).then_some(p)
        }
        Family::RandomBoundedDelta => {
            let aspect = rng.random_range(0.05..=1.0);
            let n = rng.random_range(3..=9usize);
            Some(random_convex_polygon(rng, n, aspect, diam)?)
        }
        Family::Nested | Family::GreedyHard => unreachable!("handled by random_family"),
    })
}

/// Convex polygon with up to `n` vertices on a randomly rotated ellipse of
/// axis ratio `aspect`, centered at the origin and scaled to diameter
/// `diam`.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng, n: usize, aspect: f64, diam: f64) -> Result<ConvexPolygon> {
    let rot = rng.random_range(0.0..2.0 * PI);
    loop {
        let pts: Vec<Point> = (0..n.max(3))
            .map(|_| {
                let t = rng.random_range(0.0..2.0 * PI);
                Point::new(t.cos(), aspect * t.sin()).rotate_about(Point::new(0.0, 0.0), rot)
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            continue;
        }
        let Ok(p) = ConvexPolygon::new(hull) else {
            continue;
        };
        let scale = diam / p.diameter().length;
        return p.map(|q| q * scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::geod;

    #[test]
    fn hexagon_sizes() {
        let c = nested_kgon(6, Epsilon::Auto).unwrap();
        assert_eq!(c.domain.hole_count(), 216);
        assert!((c.edge_length(0) - 0.5).abs() < 1e-15);
        assert!((c.edge_length(1) - 0.5 * (PI / 6.0).cos()).abs() < 1e-15);
        assert!((c.domain.euclidean_diameter() - 1.0).abs() < 1e-12);
        assert_eq!(c.rings.len(), 37);
        assert!(c.domain.outer().vertices().contains(&c.target));
    }

    #[test]
    fn ring_vertices_are_midpoints() {
        for k in 3..=8 {
            let a = ring_vertices(k, 2);
            let b = ring_vertices(k, 3);
            for (j, v) in b.iter().enumerate() {
                let m = a[j].midpoint(a[(j + 1) % k]);
                assert!(v.dist(m) < 1e-12, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn odd_k_unit_diameter() {
        for k in [3, 5, 7] {
            let c = nested_kgon(k, Epsilon::Auto).unwrap();
            assert!((c.domain.euclidean_diameter() - 1.0).abs() < 1e-12, "k={k}");
            assert_eq!(c.domain.hole_count(), k * k * k);
        }
    }

    #[test]
    fn epsilon_too_large() {
        assert!(matches!(nested_kgon(3, Epsilon::Value(0.1)), Err(Error::InvalidParameter(_))));
        assert!(matches!(nested_kgon(2, Epsilon::Auto), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn geodesic_beats_ring_bound_k3() {
        let c = nested_kgon(3, Epsilon::Auto).unwrap();
        let g = geod(&c.domain, c.center, c.target).unwrap();
        assert!(g.length >= c.ring_bound() - 1e-6, "{} < {}", g.length, c.ring_bound());
    }

    #[test]
    fn recipes_are_deterministic() {
        let r = InstanceRecipe::new(Family::RandomBoundedDelta).with_h(15).with_seed(42);
        let a = random_family(&r).unwrap();
        let b = random_family(&r).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = random_family(&r.with_seed(43)).unwrap();
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            Family::Nested,
            Family::GreedyHard,
            Family::RandomFat,
            Family::RandomSegments,
            Family::RandomAxisRects,
            Family::RandomBoundedDelta,
        ] {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
        assert!("blob".parse::<Family>().is_err());
    }

    #[test]
    fn overcrowded_fails() {
        let r = InstanceRecipe::new(Family::RandomAxisRects).with_h(200).with_delta(0.5);
        assert!(matches!(random_family(&r), Err(Error::GenerationFailed { .. })));
    }
}
