//! Shortest paths inside a polygonal domain.
//!
//! Shortest paths among convex polygonal obstacles bend only at obstacle
//! vertices, so `geod` runs Dijkstra over a visibility graph whose nodes are
//! the hole vertices plus the query points. A segment is visible when it
//! misses the open interior of every hole; grazing a boundary is allowed.
//!
//! Building the graph costs `O(V^2)` segment queries. Each query walks a
//! uniform grid of hole bounding boxes from one endpoint to the other and
//! stops at the first blocking hole, which keeps desk-scale instances
//! (a few thousand vertices) in the seconds range.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::PolygonalDomain;
use crate::geom::{orient2d, BBox, ConvexPolygon, Point, PointLocation, Polyline};
use crate::{Error, Result};

/// Uniform grid over the outer bounding box; each cell lists the holes
/// whose (slightly enlarged) bounding box meets it.
#[derive(Debug, Clone)]
pub(crate) struct HoleIndex {
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
}

impl HoleIndex {
    pub(crate) fn new(domain: &PolygonalDomain) -> Self {
        let holes = domain.holes();
        let bb = domain.bbox();
        let side = ((holes.len() as f64).sqrt() * 2.0).ceil().clamp(1.0, 256.0);
        let cell = (bb.width().max(bb.height()) / side).max(f64::MIN_POSITIVE);
        Self::with_cell(holes, bb, cell)
    }

    pub(crate) fn with_cell(holes: &[ConvexPolygon], bb: BBox, cell: f64) -> Self {
        let nx = ((bb.width() / cell).ceil() as usize).max(1);
        let ny = ((bb.height() / cell).ceil() as usize).max(1);
        let mut cells = vec![Vec::new(); nx * ny];
        let margin = 1e-9 * bb.diagonal() + 1e-6 * cell;
        let idx = HoleIndex { origin: bb.min, cell, nx, ny, cells: Vec::new() };
        for (k, h) in holes.iter().enumerate() {
            let hb = h.bbox().expanded(margin);
            let (x0, y0) = idx.cell_of(hb.min);
            let (x1, y1) = idx.cell_of(hb.max);
            for j in y0..=y1 {
                for i in x0..=x1 {
                    cells[j * nx + i].push(k as u32);
                }
            }
        }
        HoleIndex { cells, ..idx }
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        let fx = ((p.x - self.origin.x) / self.cell).floor();
        let fy = ((p.y - self.origin.y) / self.cell).floor();
        ((fx.max(0.0) as usize).min(self.nx - 1), (fy.max(0.0) as usize).min(self.ny - 1))
    }

    pub(crate) fn holes_in_cell(&self, i: usize, j: usize) -> &[u32] {
        &self.cells[j * self.nx + i]
    }

    /// Calls `f` on the hole lists of the cells met by segment `ab`, in order
    /// from `a`; stops early when `f` returns true. Returns whether it did.
    fn walk(&self, a: Point, b: Point, mut f: impl FnMut(&[u32]) -> bool) -> bool {
        let (mut ix, mut iy) = self.cell_of(a);
        let (ex, ey) = self.cell_of(b);
        let d = b - a;
        let step_x: isize = if d.x > 0.0 { 1 } else { -1 };
        let step_y: isize = if d.y > 0.0 { 1 } else { -1 };
        let next_x = |ix: usize| {
            if d.x > 0.0 {
                (self.origin.x + (ix + 1) as f64 * self.cell - a.x) / d.x
            } else if d.x < 0.0 {
                (self.origin.x + ix as f64 * self.cell - a.x) / d.x
            } else {
                f64::INFINITY
            }
        };
        let next_y = |iy: usize| {
            if d.y > 0.0 {
                (self.origin.y + (iy + 1) as f64 * self.cell - a.y) / d.y
            } else if d.y < 0.0 {
                (self.origin.y + iy as f64 * self.cell - a.y) / d.y
            } else {
                f64::INFINITY
            }
        };
        let (mut tx, mut ty) = (next_x(ix), next_y(iy));
        let dtx = if d.x != 0.0 { self.cell / d.x.abs() } else { f64::INFINITY };
        let dty = if d.y != 0.0 { self.cell / d.y.abs() } else { f64::INFINITY };
        for _ in 0..(self.nx + self.ny + 2) {
            if f(self.holes_in_cell(ix, iy)) {
                return true;
            }
            if (ix, iy) == (ex, ey) {
                return false;
            }
            if tx < ty {
                let nix = ix as isize + step_x;
                if nix < 0 || nix >= self.nx as isize {
                    break;
                }
                ix = nix as usize;
                tx += dtx;
            } else {
                let niy = iy as isize + step_y;
                if niy < 0 || niy >= self.ny as isize {
                    break;
                }
                iy = niy as usize;
                ty += dty;
            }
        }
        f(self.holes_in_cell(ex, ey))
    }

    /// First hole (in walk order) whose open interior the segment `ab`
    /// meets, if any.
    pub(crate) fn blocked(&self, holes: &[ConvexPolygon], a: Point, b: Point) -> bool {
        let mut last = u32::MAX;
        self.walk(a, b, |list| {
            list.iter().any(|&k| {
                if k == last {
                    return false;
                }
                last = k;
                holes[k as usize].interior_crossing(a, b).is_some()
            })
        })
    }
}

/// Visibility graph over hole vertices and registered extra points.
#[derive(Debug, Clone)]
pub struct VisibilityGraph {
    nodes: Vec<Point>,
    adj: Vec<Vec<(u32, f64)>>,
    /// `(hole, vertex)` for nodes that are hole vertices.
    origin: Vec<Option<(usize, usize)>>,
    lookup: HashMap<(u64, u64), usize>,
}

fn key(p: Point) -> (u64, u64) {
    // +0.0 and -0.0 are the same point
    ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits())
}

impl VisibilityGraph {
    /// Nodes are all hole vertices followed by the extra points (exact
    /// repeats merged). Every extra point must lie in the domain.
    pub fn build(domain: &PolygonalDomain, extra: &[Point]) -> Result<Self> {
        for &p in extra {
            domain.check_point(p)?;
        }
        let mut nodes = Vec::new();
        let mut origin = Vec::new();
        let mut lookup = HashMap::new();
        for (hi, h) in domain.holes().iter().enumerate() {
            for (vi, &v) in h.vertices().iter().enumerate() {
                lookup.entry(key(v)).or_insert(nodes.len());
                nodes.push(v);
                origin.push(Some((hi, vi)));
            }
        }
        for &p in extra {
            if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(key(p)) {
                e.insert(nodes.len());
                nodes.push(p);
                origin.push(None);
            }
        }
        let index = HoleIndex::new(domain);
        let n = nodes.len();
        let rows: Vec<Vec<(u32, f64)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = Vec::new();
                for j in i + 1..n {
                    if visible(domain, &index, &origin, &nodes, i, j) {
                        row.push((j as u32, nodes[i].dist(nodes[j])));
                    }
                }
                row
            })
            .collect();
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, w) in row {
                adj[i].push((j, w));
                adj[j as usize].push((i as u32, w));
            }
        }
        for a in &mut adj {
            a.sort_by_key(|e| e.0);
        }
        Ok(VisibilityGraph { nodes, adj, origin, lookup })
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Index of the node at exactly `p`.
    pub fn node_of(&self, p: Point) -> Option<usize> {
        self.lookup.get(&key(p)).copied()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adj[i].iter().map(|&(j, w)| (j as usize, w))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search_by_key(&(j as u32), |e| e.0).is_ok()
    }

    /// Undirected edges `(i, j, weight)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (i, row) in self.adj.iter().enumerate() {
            for &(j, w) in row {
                if i < j as usize {
                    out.push((i, j as usize, w));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Hole that node `i` is a vertex of.
    pub fn hole_of(&self, i: usize) -> Option<usize> {
        self.origin.get(i).copied().flatten().map(|(h, _)| h)
    }
}

/// Cheap rejection: a segment leaving vertex `k` of a hole strictly into
/// the cone spanned by its two edges enters the hole.
fn enters_own_hole(h: &ConvexPolygon, k: usize, q: Point) -> bool {
    if h.is_segment() {
        return false;
    }
    let n = h.len();
    let v = h.vertex(k);
    let next = h.vertex(k + 1);
    let prev = h.vertex(k + n - 1);
    // same edge-line slack as `interior_crossing`, so points on an edge
    // up to rounding are not rejected
    let tol = h.tolerance();
    orient2d(v, next, q) > tol * v.dist(next) && orient2d(prev, v, q) > tol * prev.dist(v)
}

fn visible(
    domain: &PolygonalDomain,
    index: &HoleIndex,
    origin: &[Option<(usize, usize)>],
    nodes: &[Point],
    i: usize,
    j: usize,
) -> bool {
    let (a, b) = (nodes[i], nodes[j]);
    if let Some((h, k)) = origin[i] {
        if enters_own_hole(&domain.holes()[h], k, b) {
            return false;
        }
    }
    if let Some((h, k)) = origin[j] {
        if enters_own_hole(&domain.holes()[h], k, a) {
            return false;
        }
    }
    a == b || !index.blocked(domain.holes(), a, b)
}

/// Shortest-path result between two points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicResult {
    pub length: f64,
    pub path: Polyline,
    /// Holes whose vertices the path bends at, in path order.
    pub touched_holes: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Single-source distances over a visibility graph.
pub(crate) fn dijkstra_all(g: &VisibilityGraph, src: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((Key(0.0), src)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in &g.adj[u] {
            let v = v as usize;
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    dist
}

fn chain(pred: &[usize], mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while pred[v] != usize::MAX {
        v = pred[v];
        out.push(v);
    }
    out.reverse();
    out
}

/// Dijkstra from `src` to `dst` over `n` nodes with neighbors from `nb`.
/// Among equal-length paths the lexicographically smallest node sequence
/// wins.
fn shortest_path<F>(n: usize, src: usize, dst: usize, nb: F) -> Option<(f64, Vec<usize>)>
where
    F: Fn(usize, &mut dyn FnMut(usize, f64)),
{
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((Key(0.0), src)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == dst {
            break;
        }
        let mut relax = |v: usize, w: f64| {
            if done[v] {
                return;
            }
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = u;
                heap.push(Reverse((Key(nd), v)));
            } else if nd == dist[v] && pred[v] != u && chain(&pred, u) < chain(&pred, pred[v]) {
                pred[v] = u;
            }
        };
        nb(u, &mut relax);
    }
    dist[dst].is_finite().then(|| (dist[dst], chain(&pred, dst)))
}

/// Visibility graph of the hole vertices, reusable across queries.
#[derive(Debug, Clone)]
pub struct GeodesicEngine<'a> {
    domain: &'a PolygonalDomain,
    base: VisibilityGraph,
    index: HoleIndex,
}

impl<'a> GeodesicEngine<'a> {
    pub fn new(domain: &'a PolygonalDomain) -> Result<Self> {
        let base = VisibilityGraph::build(domain, &[])?;
        Ok(GeodesicEngine { domain, base, index: HoleIndex::new(domain) })
    }

    pub fn domain(&self) -> &PolygonalDomain {
        self.domain
    }

    pub fn graph(&self) -> &VisibilityGraph {
        &self.base
    }

    /// True iff the segment `ab` misses every hole interior.
    pub fn visible(&self, a: Point, b: Point) -> bool {
        a == b || !self.index.blocked(self.domain.holes(), a, b)
    }

    fn links(&self, p: Point) -> Vec<f64> {
        let nodes = self.base.nodes();
        (0..nodes.len())
            .into_par_iter()
            .map(|i| {
                let blocked = match self.base.origin[i] {
                    Some((h, k)) => enters_own_hole(&self.domain.holes()[h], k, p),
                    None => false,
                };
                if !blocked && self.visible(p, nodes[i]) {
                    p.dist(nodes[i])
                } else {
                    f64::INFINITY
                }
            })
            .collect()
    }

    /// Exact geodesic distance and a shortest path from `s` to `t`.
    pub fn geod(&self, s: Point, t: Point) -> Result<GeodesicResult> {
        self.domain.check_point(s)?;
        self.domain.check_point(t)?;
        if s == t {
            return Ok(GeodesicResult { length: 0.0, path: Polyline::single(s), touched_holes: vec![] });
        }
        if self.visible(s, t) {
            return Ok(GeodesicResult { length: s.dist(t), path: Polyline::new(vec![s, t]), touched_holes: vec![] });
        }
        let n = self.base.node_count();
        let ws = self.links(s);
        let wt = self.links(t);
        let (si, ti) = (n, n + 1);
        let base = &self.base;
        let nb = |u: usize, f: &mut dyn FnMut(usize, f64)| {
            if u == si || u == ti {
                let w = if u == si { &ws } else { &wt };
                for (v, &d) in w.iter().enumerate() {
                    if d.is_finite() {
                        f(v, d);
                    }
                }
            } else {
                for &(v, d) in &base.adj[u] {
                    f(v as usize, d);
                }
                if ws[u].is_finite() {
                    f(si, ws[u]);
                }
                if wt[u].is_finite() {
                    f(ti, wt[u]);
                }
            }
        };
        let (length, seq) =
            shortest_path(n + 2, si, ti, nb).ok_or(Error::Unreachable { sx: s.x, sy: s.y, tx: t.x, ty: t.y })?;
        let point = |i: usize| {
            if i == si {
                s
            } else if i == ti {
                t
            } else {
                base.nodes[i]
            }
        };
        let path = Polyline::new(seq.iter().map(|&i| point(i)).collect());
        let mut touched = Vec::new();
        for &i in &seq {
            if let Some(h) = base.hole_of(i) {
                if touched.last() != Some(&h) && !touched.contains(&h) {
                    touched.push(h);
                }
            }
        }
        Ok(GeodesicResult { length, path, touched_holes: touched })
    }

    /// Geodesic distances from `s` to every point of `targets`.
    pub fn distances_from(&self, s: Point, targets: &[Point]) -> Result<Vec<f64>> {
        self.domain.check_point(s)?;
        let mut extra = vec![s];
        extra.extend_from_slice(targets);
        let g = VisibilityGraph::build(self.domain, &extra)?;
        let d = dijkstra_all(&g, g.node_of(s).expect("registered"));
        Ok(targets.iter().map(|&p| d[g.node_of(p).expect("registered")]).collect())
    }
}

/// Geodesic distance between two points of a domain.
pub fn geod(domain: &PolygonalDomain, s: Point, t: Point) -> Result<GeodesicResult> {
    GeodesicEngine::new(domain)?.geod(s, t)
}

/// Visibility graph on hole vertices plus `extra_points`.
pub fn build_visibility_graph(domain: &PolygonalDomain, extra_points: &[Point]) -> Result<VisibilityGraph> {
    VisibilityGraph::build(domain, extra_points)
}

/// Shortest path length in an 8-connected grid graph over the cell centers
/// lying in the domain; `s` and `t` attach to visible centers within two
/// cells. Meant as an independent check on [`geod`].
pub fn grid_oracle_geod(domain: &PolygonalDomain, s: Point, t: Point, resolution: usize) -> Result<f64> {
    if resolution < 16 {
        return Err(Error::InvalidParameter(format!("grid resolution {resolution} below 16")));
    }
    domain.check_point(s)?;
    domain.check_point(t)?;
    if s == t {
        return Ok(0.0);
    }
    let bb = domain.bbox();
    let cell = bb.width().max(bb.height()) / resolution as f64;
    let index = HoleIndex::with_cell(domain.holes(), bb, cell);
    let (nx, ny) = (index.nx, index.ny);
    let holes = domain.holes();
    let tol = domain.tolerance();
    let center =
        |i: usize, j: usize| Point::new(bb.min.x + (i as f64 + 0.5) * cell, bb.min.y + (j as f64 + 0.5) * cell);
    let valid: Vec<bool> = (0..nx * ny)
        .into_par_iter()
        .map(|id| {
            let (i, j) = (id % nx, id / nx);
            let c = center(i, j);
            domain.outer().locate(c, tol) != PointLocation::Outside
                && index.holes_in_cell(i, j).iter().all(|&k| !holes[k as usize].strictly_contains(c))
        })
        .collect();
    let free_near = |a: Point, b: Point, cells: &[(usize, usize)]| {
        cells.iter().all(|&(i, j)| {
            index.holes_in_cell(i, j).iter().all(|&k| holes[k as usize].interior_crossing(a, b).is_none())
        })
    };
    // neighbor offsets with weights; (1,0),(0,1),(1,1),(-1,1) and mirrors
    const OFFS: [(isize, isize); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)];
    let n_cells = nx * ny;
    let (si, ti) = (n_cells, n_cells + 1);
    let attach = |p: Point| -> Vec<(usize, f64)> {
        let (ci, cj) = index.cell_of(p);
        let mut out = Vec::new();
        for j in cj.saturating_sub(2)..=(cj + 2).min(ny - 1) {
            for i in ci.saturating_sub(2)..=(ci + 2).min(nx - 1) {
                let id = j * nx + i;
                if valid[id] && domain.segment_is_free(p, center(i, j)) {
                    out.push((id, p.dist(center(i, j))));
                }
            }
        }
        out
    };
    let sa = attach(s);
    let ta = attach(t);
    if sa.is_empty() || ta.is_empty() {
        return Err(Error::Disconnected);
    }
    let direct = {
        let (a, b) = (index.cell_of(s), index.cell_of(t));
        a.0.abs_diff(b.0) <= 2 && a.1.abs_diff(b.1) <= 2 && domain.segment_is_free(s, t)
    };
    let t_link: HashMap<usize, f64> = ta.iter().copied().collect();
    let nb = |u: usize, f: &mut dyn FnMut(usize, f64)| {
        if u == si {
            for &(v, w) in &sa {
                f(v, w);
            }
            if direct {
                f(ti, s.dist(t));
            }
            return;
        }
        if u == ti {
            return;
        }
        let (i, j) = (u % nx, u / nx);
        let c = center(i, j);
        for (di, dj) in OFFS {
            let (ni, nj) = (i as isize + di, j as isize + dj);
            if ni < 0 || nj < 0 || ni >= nx as isize || nj >= ny as isize {
                continue;
            }
            let (ni, nj) = (ni as usize, nj as usize);
            let v = nj * nx + ni;
            if !valid[v] {
                continue;
            }
            let d = center(ni, nj);
            let ok = if di != 0 && dj != 0 {
                free_near(c, d, &[(i, j), (ni, nj), (ni, j), (i, nj)])
            } else {
                free_near(c, d, &[(i, j), (ni, nj)])
            };
            if ok {
                f(v, c.dist(d));
            }
        }
        if let Some(&w) = t_link.get(&u) {
            f(ti, w);
        }
    };
    let (len, _) = shortest_path_fast(n_cells + 2, si, ti, nb).ok_or(Error::Disconnected)?;
    Ok(len)
}

/// Plain Dijkstra without path tie-breaking.
fn shortest_path_fast<F>(n: usize, src: usize, dst: usize, nb: F) -> Option<(f64, ())>
where
    F: Fn(usize, &mut dyn FnMut(usize, f64)),
{
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((Key(0.0), src)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == dst {
            return Some((d, ()));
        }
        let mut relax = |v: usize, w: f64| {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Key(nd), v)));
            }
        };
        nb(u, &mut relax);
    }
    None
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

    fn square_hole_domain() -> PolygonalDomain {
        PolygonalDomain::new(sq(-5., -5., 5., 5.), vec![sq(-1., -1., 1., 1.)]).unwrap()
    }

    /// Plain Dijkstra over `pts` with visibility from `segment_is_free`.
    fn brute_force_geod(d: &PolygonalDomain, pts: &[Point], s: usize, t: usize) -> f64 {
        let n = pts.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        dist[s] = 0.0;
        while let Some(u) =
            (0..n).filter(|&i| !done[i] && dist[i].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
        {
            done[u] = true;
            for v in 0..n {
                if !done[v] && d.segment_is_free(pts[u], pts[v]) {
                    dist[v] = dist[v].min(dist[u] + pts[u].dist(pts[v]));
                }
            }
        }
        dist[t]
    }

    #[test]
    fn rounded_edge_midpoints_leave_through_their_vertices() {
        // computed midpoints of rotated edges sit a rounding error off the
        // edge line; paths from them around the hole must not be cut off
        for j in 0..40 {
            let theta = 0.1 + j as f64 * 0.037;
            let c = p(0.5, 0.5);
            let h = sq(0.3, 0.45, 0.7, 0.55).map(|q| q.rotate_about(c, theta)).unwrap();
            let d = PolygonalDomain::new(sq(0., 0., 1., 1.), vec![h.clone()]).unwrap();
            let e = GeodesicEngine::new(&d).unwrap();
            for (a, b) in h.edges() {
                let m = a.midpoint(b);
                let t = c + (c - m) * 2.0;
                let mut pts = vec![m, t];
                pts.extend_from_slice(h.vertices());
                let want = brute_force_geod(&d, &pts, 0, 1);
                let got = e.geod(m, t).unwrap().length;
                assert!((got - want).abs() < 1e-12, "theta={theta}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn graph_without_holes() {
        let d = PolygonalDomain::new(sq(-5., -5., 5., 5.), vec![]).unwrap();
        let g = build_visibility_graph(&d, &[p(0., 0.), p(3., 4.)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1, 5.0)]);
    }

    #[test]
    fn graph_with_blocking_square() {
        let d = square_hole_domain();
        let (s, t) = (p(-2., 0.), p(2., 0.));
        let g = build_visibility_graph(&d, &[s, t]).unwrap();
        let si = g.node_of(s).unwrap();
        let ti = g.node_of(t).unwrap();
        assert!(!g.has_edge(si, ti));
        assert!(g.has_edge(si, g.node_of(p(-1., -1.)).unwrap()));
        assert!(g.has_edge(si, g.node_of(p(-1., 1.)).unwrap()));
        assert!(!g.has_edge(si, g.node_of(p(1., 1.)).unwrap()));
        // hole edges are visible, diagonals are not
        assert!(g.has_edge(g.node_of(p(-1., -1.)).unwrap(), g.node_of(p(1., -1.)).unwrap()));
        assert!(!g.has_edge(g.node_of(p(-1., -1.)).unwrap(), g.node_of(p(1., 1.)).unwrap()));
        assert!(matches!(build_visibility_graph(&d, &[p(0., 0.)]), Err(Error::PointNotInDomain { .. })));
    }

    #[test]
    fn geod_examples() {
        let d = PolygonalDomain::new(sq(-5., -5., 5., 5.), vec![]).unwrap();
        let r = geod(&d, p(0., 0.), p(3., 4.)).unwrap();
        assert_eq!(r.length, 5.0);
        assert_eq!(r.path.points, vec![p(0., 0.), p(3., 4.)]);

        let d = square_hole_domain();
        let r = geod(&d, p(-2., 0.), p(2., 0.)).unwrap();
        // oracle: best of the two symmetric corner routes
        let route = |y: f64| p(-2., 0.).dist(p(-1., y)) + 2.0 + p(1., y).dist(p(2., 0.));
        let expected = route(1.0).min(route(-1.0));
        assert!((r.length - expected).abs() < 1e-12);
        assert!((r.length - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(r.path.points.len(), 4);
        assert_eq!(r.touched_holes, vec![0]);
        assert!((r.path.length() - r.length).abs() < 1e-12 * r.length);

        let z = geod(&d, p(2., 2.), p(2., 2.)).unwrap();
        assert_eq!(z.length, 0.0);
    }

    #[test]
    fn geod_is_deterministic_on_ties() {
        let d = square_hole_domain();
        let a = geod(&d, p(-2., 0.), p(2., 0.)).unwrap();
        let b = geod(&d, p(-2., 0.), p(2., 0.)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn grid_oracle_examples() {
        let d = PolygonalDomain::new(sq(0., 0., 1., 1.), vec![]).unwrap();
        let g = grid_oracle_geod(&d, p(0.25, 0.5), p(0.75, 0.5), 64).unwrap();
        assert!((0.5 - 1e-12..=0.5 * 1.03).contains(&g), "{g}");
        let d = PolygonalDomain::new(sq(-2., -2., 2., 2.), vec![]).unwrap();
        let g = grid_oracle_geod(&d, p(-0.5, 0.0), p(0.5, 0.0), 64).unwrap();
        assert!((1.0..=1.03).contains(&g), "{g}");

        let d = square_hole_domain();
        let exact = 2.0 + 2.0 * 2f64.sqrt();
        let g = grid_oracle_geod(&d, p(-2., 0.), p(2., 0.), 256).unwrap();
        assert!(g >= exact - 1e-9 && g <= exact * 1.08, "{g}");
        assert_eq!(grid_oracle_geod(&d, p(2., 2.), p(2., 2.), 32).unwrap(), 0.0);
        assert!(matches!(grid_oracle_geod(&d, p(2., 2.), p(3., 3.), 8), Err(Error::InvalidParameter(_))));
    }
}
