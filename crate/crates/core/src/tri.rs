//! Geometric triangulations: graph distortion, a constrained Delaunay
//! triangulator, and the two constructions relating triangulations to
//! polygonal domains.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::PolygonalDomain;
use crate::geom::{
    convex_hull, incircle, orient, orient2d, segments_cross_properly, segments_intersect, ConvexPolygon, Orientation,
    Point,
};
use crate::{Error, Result};

/// Triangulation of a point set with Euclidean edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    vertices: Vec<Point>,
    /// Sorted `(i, j)` with `i < j`.
    edges: Vec<(usize, usize)>,
    /// Counterclockwise, smallest index first, sorted.
    faces: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationFile {
    vertices: Vec<Point>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    faces: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Builds a triangulation from its faces; edges are derived. Faces may
    /// be given in either orientation.
    pub fn new(vertices: Vec<Point>, faces: Vec<[usize; 3]>) -> Result<Self> {
        let n = vertices.len();
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut out = Vec::with_capacity(faces.len());
        let mut edges = HashSet::new();
        for f in faces {
            if f.iter().any(|&i| i >= n) {
                return Err(Error::InvalidParameter(format!("face {f:?} refers to a missing vertex")));
            }
            let [a, b, c] = f;
            let f = match orient(vertices[a], vertices[b], vertices[c]) {
                Orientation::Ccw => [a, b, c],
                Orientation::Cw => [a, c, b],
                Orientation::Collinear => return Err(Error::Degenerate(format!("face {f:?} is flat"))),
            };
            for k in 0..3 {
                let (u, v) = (f[k], f[(k + 1) % 3]);
                edges.insert((u.min(v), u.max(v)));
            }
            out.push(canonical_face(f));
        }
        out.sort_unstable();
        out.dedup();
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        Ok(Triangulation { vertices, edges, faces: out })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn edge_length(&self, a: usize, b: usize) -> f64 {
        self.vertices[a].dist(self.vertices[b])
    }

    /// First pair of edges meeting anywhere but at a shared endpoint.
    pub fn crossing_edges(&self) -> Option<((usize, usize), (usize, usize))> {
        let p = &self.vertices;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for &(c, d) in &self.edges[i + 1..] {
                let shared = [c, d].iter().filter(|&&x| x == a || x == b).count();
                let bad = match shared {
                    0 => segments_intersect(p[a], p[b], p[c], p[d]),
                    // sharing one endpoint: only collinear overlap is a problem
                    1 => {
                        let (s, u, v) = if a == c || a == d {
                            (a, b, if a == c { d } else { c })
                        } else {
                            (b, a, if b == c { d } else { c })
                        };
                        orient(p[s], p[u], p[v]) == Orientation::Collinear && (p[u] - p[s]).dot(p[v] - p[s]) > 0.0
                    }
                    _ => false,
                };
                if bad {
                    return Some(((a, b), (c, d)));
                }
            }
        }
        None
    }

    /// Checks planarity, that the faces tile the convex hull, and the face
    /// count bound `2n - 5`.
    pub fn validate(&self) -> Result<()> {
        if let Some((e, f)) = self.crossing_edges() {
            return Err(Error::Degenerate(format!("edges {e:?} and {f:?} cross")));
        }
        let hull = convex_hull(&self.vertices);
        let hull_area = polygon_area(&hull);
        let face_area: f64 = self
            .faces
            .iter()
            .map(|f| 0.5 * orient2d(self.vertices[f[0]], self.vertices[f[1]], self.vertices[f[2]]))
            .sum();
        if (hull_area - face_area).abs() > 1e-9 * hull_area.max(f64::MIN_POSITIVE) {
            return Err(Error::Degenerate(format!("faces cover area {face_area}, hull has {hull_area}")));
        }
        let n = self.vertices.len();
        if n >= 3 && self.faces.len() > 2 * n - 5 {
            return Err(Error::Degenerate(format!("{} faces on {n} vertices", self.faces.len())));
        }
        Ok(())
    }

    /// Shortest-path distances from `src` along edges.
    pub fn distances_from(&self, src: usize) -> Vec<f64> {
        let adj = self.adjacency();
        dijkstra(&adj, src)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            let w = self.edge_length(a, b);
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        adj
    }

    /// Largest shortest-path distance over vertex pairs.
    pub fn graph_diameter(&self) -> Result<f64> {
        let adj = self.adjacency();
        let n = self.vertices.len();
        let per: Vec<f64> = (0..n).into_par_iter().map(|s| dijkstra(&adj, s).into_iter().fold(0.0, f64::max)).collect();
        let d = per.into_iter().fold(0.0, f64::max);
        if d.is_infinite() {
            return Err(Error::Disconnected);
        }
        Ok(d)
    }

    /// Largest Euclidean distance over vertex pairs.
    pub fn euclidean_diameter(&self) -> f64 {
        let hull = convex_hull(&self.vertices);
        let mut best = 0.0f64;
        for (i, a) in hull.iter().enumerate() {
            for b in &hull[i + 1..] {
                best = best.max(a.dist(*b));
            }
        }
        best
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TriangulationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let t = Triangulation::new(file.vertices, file.faces)?;
        if !file.edges.is_empty() {
            let mut given: Vec<(usize, usize)> = file.edges.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
            given.sort_unstable();
            given.dedup();
            if given != t.edges {
                return Err(Error::Parse("edge list does not match the faces".into()));
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let file = TriangulationFile {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            faces: self.faces.clone(),
        };
        serde_json::to_string(&file).expect("triangulation serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

fn canonical_face(f: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| f[k]).expect("three entries");
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

fn polygon_area(pts: &[Point]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let o = pts[0];
    pts.windows(2).skip(1).map(|w| 0.5 * orient2d(o, w[0], w[1])).sum()
}

fn dijkstra(adj: &[Vec<(usize, f64)>], src: usize) -> Vec<f64> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    #[derive(PartialEq)]
    struct Key(f64);
    impl Eq for Key {}
    impl PartialOrd for Key {
        fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(o))
        }
    }
    impl Ord for Key {
        fn cmp(&self, o: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&o.0)
        }
    }

    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((Key(0.0), src)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            if d + w < dist[v] {
                dist[v] = d + w;
                heap.push(Reverse((Key(d + w), v)));
            }
        }
    }
    dist
}

/// `max_{u,v} dist_T(u, v) / max_{u,v} |uv|` over vertex pairs.
pub fn graph_distortion(t: &Triangulation) -> Result<f64> {
    let e = t.euclidean_diameter();
    if e == 0.0 {
        return Err(Error::Degenerate("triangulation has no extent".into()));
    }
    Ok(t.graph_diameter()? / e)
}

/// Planar straight-line graph: points plus non-crossing constraint edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pslg {
    pub vertices: Vec<Point>,
    pub constraints: Vec<(usize, usize)>,
}

impl Pslg {
    pub fn new(vertices: Vec<Point>, constraints: Vec<(usize, usize)>) -> Self {
        Pslg { vertices, constraints }
    }

    /// Rejects repeated or non-finite points, bad indices, constraints
    /// through other vertices and crossing constraints.
    pub fn validate(&self) -> Result<()> {
        let p = &self.vertices;
        if p.iter().any(|q| !q.is_finite()) {
            return Err(Error::NonFinite);
        }
        if p.len() < 3 {
            return Err(Error::TooFewVertices { min: 3, got: p.len() });
        }
        let mut sorted: Vec<Point> = p.clone();
        sorted.sort_by(|a, b| a.lex_cmp(b));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { x: w[0].x, y: w[0].y });
        }
        for &(a, b) in &self.constraints {
            if a >= p.len() || b >= p.len() || a == b {
                return Err(Error::InvalidParameter(format!("bad constraint ({a}, {b})")));
            }
            for (v, &q) in p.iter().enumerate() {
                if v != a && v != b && on_open_segment(p[a], p[b], q) {
                    return Err(Error::VertexOnConstraint { vertex: v, a, b });
                }
            }
        }
        for (i, &(a, b)) in self.constraints.iter().enumerate() {
            for &(c, d) in &self.constraints[i + 1..] {
                let shares = a == c || a == d || b == c || b == d;
                if !shares && segments_intersect(p[a], p[b], p[c], p[d]) {
                    return Err(Error::CrossingConstraints(a, b, c, d));
                }
            }
        }
        Ok(())
    }
}

fn on_open_segment(a: Point, b: Point, q: Point) -> bool {
    orient(a, b, q) == Orientation::Collinear && (q - a).dot(b - a) > 0.0 && (q - b).dot(a - b) > 0.0
}

/// Working triangle mesh: counterclockwise triangles and a map from each
/// directed edge to the triangle on its left.
struct Mesh<'a> {
    pts: &'a [Point],
    tris: Vec<[usize; 3]>,
    alive: Vec<bool>,
    left: HashMap<(usize, usize), usize>,
    fixed: HashSet<(usize, usize)>,
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [Point]) -> Self {
        Mesh { pts, tris: Vec::new(), alive: Vec::new(), left: HashMap::new(), fixed: HashSet::new() }
    }

    fn add(&mut self, t: [usize; 3]) {
        debug_assert_eq!(orient(self.pts[t[0]], self.pts[t[1]], self.pts[t[2]]), Orientation::Ccw);
        let id = self.tris.len();
        for k in 0..3 {
            self.left.insert((t[k], t[(k + 1) % 3]), id);
        }
        self.tris.push(t);
        self.alive.push(true);
    }

    fn remove(&mut self, id: usize) {
        let t = self.tris[id];
        for k in 0..3 {
            self.left.remove(&(t[k], t[(k + 1) % 3]));
        }
        self.alive[id] = false;
    }

    /// Vertex opposite the directed edge `uv` in the triangle on its left.
    fn apex(&self, u: usize, v: usize) -> Option<usize> {
        let t = self.tris[*self.left.get(&(u, v))?];
        t.into_iter().find(|&w| w != u && w != v)
    }

    fn is_fixed(&self, u: usize, v: usize) -> bool {
        self.fixed.contains(&(u.min(v), u.max(v)))
    }

    /// Replaces diagonal `uv` of the quad `u, d, v, c` by `cd`.
    fn flip(&mut self, u: usize, v: usize) -> (usize, usize) {
        let c = self.apex(u, v).expect("left triangle");
        let d = self.apex(v, u).expect("right triangle");
        let t1 = self.left[&(u, v)];
        let t2 = self.left[&(v, u)];
        self.remove(t1);
        self.remove(t2);
        self.add([u, d, c]);
        self.add([d, v, c]);
        (c, d)
    }

    /// Both triangles exist and the quad around `uv` is strictly convex.
    fn flippable(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let c = self.apex(u, v)?;
        let d = self.apex(v, u)?;
        let p = self.pts;
        segments_cross_properly(p[u], p[v], p[c], p[d]).then_some((c, d))
    }

    /// `uv` should be replaced by `cd` to be locally Delaunay. Cocircular
    /// quads keep the diagonal through their smallest vertex index, which
    /// is the outcome of lifting lower-index points slightly lower.
    fn wants_flip(&self, u: usize, v: usize) -> bool {
        if self.is_fixed(u, v) {
            return false;
        }
        let Some((c, d)) = self.flippable(u, v) else {
            return false;
        };
        let p = self.pts;
        let s = incircle(p[u], p[v], p[c], p[d]);
        if s != 0.0 {
            return s > 0.0;
        }
        c.min(d) < u.min(v)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.left.keys().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn lawson(&mut self, seed: Vec<(usize, usize)>) {
        let mut stack = seed;
        while let Some((u, v)) = stack.pop() {
            if !self.left.contains_key(&(u, v)) || !self.wants_flip(u, v) {
                continue;
            }
            let (c, d) = self.flip(u, v);
            stack.extend([(u, d), (d, v), (v, c), (c, u)]);
        }
    }

    /// Forces `ab` into the mesh by flipping the edges it crosses.
    fn insert_constraint(&mut self, a: usize, b: usize) -> Result<()> {
        let p = self.pts;
        if !self.left.contains_key(&(a, b)) && !self.left.contains_key(&(b, a)) {
            let mut queue: std::collections::VecDeque<(usize, usize)> =
                self.edges().into_iter().filter(|&(u, v)| segments_cross_properly(p[a], p[b], p[u], p[v])).collect();
            let cap = 64 * (queue.len() + 1) * (queue.len() + 1);
            let mut steps = 0;
            while let Some((u, v)) = queue.pop_front() {
                steps += 1;
                if steps > cap {
                    return Err(Error::Degenerate(format!("could not recover constraint ({a}, {b})")));
                }
                if self.flippable(u, v).is_none() {
                    queue.push_back((u, v));
                    continue;
                }
                let (c, d) = self.flip(u, v);
                if segments_cross_properly(p[a], p[b], p[c], p[d]) {
                    queue.push_back((c, d));
                }
            }
        }
        self.fixed.insert((a.min(b), a.max(b)));
        Ok(())
    }
}

/// Sweep triangulation of the points in lexicographic order: every new
/// point is joined to the hull edges it sees.
fn sweep(mesh: &mut Mesh<'_>) -> Result<()> {
    let p = mesh.pts;
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p[a].lex_cmp(&p[b]));
    let j = (2..order.len())
        .find(|&j| orient(p[order[0]], p[order[1]], p[order[j]]) != Orientation::Collinear)
        .ok_or_else(|| Error::Degenerate("all points are collinear".into()))?;
    let q = order[j];
    for w in order[..j].windows(2) {
        let (a, b) = (w[0], w[1]);
        if orient(p[a], p[b], p[q]) == Orientation::Ccw {
            mesh.add([a, b, q]);
        } else {
            mesh.add([b, a, q]);
        }
    }
    let mut hull: Vec<usize> = order[..j].to_vec();
    if orient(p[order[0]], p[order[j - 1]], p[q]) == Orientation::Cw {
        hull.reverse();
    }
    hull.push(q);
    for &x in &order[j + 1..] {
        let m = hull.len();
        let vis: Vec<bool> =
            (0..m).map(|i| orient(p[hull[i]], p[hull[(i + 1) % m]], p[x]) == Orientation::Cw).collect();
        let s = (0..m).find(|&i| vis[i] && !vis[(i + m - 1) % m]).expect("a new extreme point sees the hull");
        hull.rotate_left(s);
        let cnt = (0..m).take_while(|&i| vis[(i + s) % m]).count();
        for i in 0..cnt {
            mesh.add([hull[i + 1], hull[i], x]);
        }
        let mut next = vec![hull[0], x];
        next.extend_from_slice(&hull[cnt..]);
        hull = next;
    }
    Ok(())
}

/// Constrained Delaunay triangulation of `g`.
///
/// Sweep triangulation, then constraint recovery by flipping, then Lawson
/// flips on unconstrained edges with the exact in-circle test.
pub fn cdt(g: &Pslg) -> Result<Triangulation> {
    g.validate()?;
    let mut mesh = Mesh::new(&g.vertices);
    sweep(&mut mesh)?;
    for &(a, b) in &g.constraints {
        mesh.insert_constraint(a, b)?;
    }
    let all = mesh.edges();
    mesh.lawson(all);
    let faces: Vec<[usize; 3]> = mesh.tris.iter().zip(&mesh.alive).filter(|(_, &a)| a).map(|(&t, _)| t).collect();
    Triangulation::new(g.vertices.clone(), faces)
}

/// Unconstrained edges of `t` that fail the in-circle test against the
/// opposite vertex of their neighbouring triangle.
pub fn delaunay_violations(t: &Triangulation, constraints: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let fixed: HashSet<(usize, usize)> = constraints.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut apex: HashMap<(usize, usize), usize> = HashMap::new();
    for f in t.faces() {
        for k in 0..3 {
            apex.insert((f[k], f[(k + 1) % 3]), f[(k + 2) % 3]);
        }
    }
    let p = t.vertices();
    t.edges()
        .iter()
        .copied()
        .filter(|e| !fixed.contains(e))
        .filter(|&(u, v)| match (apex.get(&(u, v)), apex.get(&(v, u))) {
            (Some(&c), Some(&d)) => incircle(p[u], p[v], p[c], p[d]) > 0.0,
            _ => false,
        })
        .collect()
}

/// Domain whose holes are the faces of `t` shrunk inward by `epsilon`
/// (a homothety about each incenter), inside the convex hull of the
/// vertices. Default `epsilon` is a tenth of the smallest inradius.
pub fn domain_from_triangulation(t: &Triangulation, epsilon: Option<f64>) -> Result<PolygonalDomain> {
    let p = t.vertices();
    let incircles: Vec<(Point, f64)> = t
        .faces()
        .iter()
        .map(|f| {
            let (a, b, c) = (p[f[0]], p[f[1]], p[f[2]]);
            let (la, lb, lc) = (b.dist(c), c.dist(a), a.dist(b));
            let per = la + lb + lc;
            let center = (a * la + b * lb + c * lc) * (1.0 / per);
            let r = orient2d(a, b, c) / per;
            (center, r)
        })
        .collect();
    let r_min = incircles.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let eps = epsilon.unwrap_or(r_min / 10.0);
    if !(eps > 0.0 && eps < r_min / 4.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon {eps} must lie in (0, {}) (a quarter of the smallest inradius)",
            r_min / 4.0
        )));
    }
    let outer = ConvexPolygon::new(convex_hull(p))?;
    let holes = t
        .faces()
        .iter()
        .zip(&incircles)
        .map(|(f, &(c, r))| {
            let s = (r - eps) / r;
            ConvexPolygon::new(f.iter().map(|&i| c + (p[i] - c) * s).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PolygonalDomain::new(outer, holes)
}

/// Planar straight-line graph of the hole diametral segments plus the
/// corners of the domain's bounding box; vertices `2i, 2i + 1` are the
/// diametral pair of hole `i`.
pub fn diametral_pslg(domain: &PolygonalDomain) -> Pslg {
    let mut vertices = Vec::with_capacity(2 * domain.hole_count() + 4);
    let mut constraints = Vec::with_capacity(domain.hole_count());
    for h in domain.holes() {
        let d = h.diameter();
        constraints.push((vertices.len(), vertices.len() + 1));
        vertices.push(d.a);
        vertices.push(d.b);
    }
    vertices.extend(domain.bbox().corners());
    Pslg { vertices, constraints }
}

/// Constrained Delaunay triangulation of [`diametral_pslg`].
pub fn triangulation_from_domain(domain: &PolygonalDomain) -> Result<Triangulation> {
    cdt(&diametral_pslg(domain))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn single_triangle() {
        let t = Triangulation::new(vec![p(0., 0.), p(0., 1.), p(1., 0.)], vec![[0, 1, 2]]).unwrap();
        assert_eq!(t.faces(), &[[0, 2, 1]]);
        assert_eq!(graph_distortion(&t).unwrap(), 1.0);
        t.validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let t =
            Triangulation::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)], vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        let back = Triangulation::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);
        let bad = r#"{"vertices": [[0,0],[1,0],[0,1]], "edges": [[0,1]], "faces": [[0,1,2]]}"#;
        assert!(matches!(Triangulation::from_json(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn sweep_handles_collinear_prefix() {
        let pts = vec![p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.), p(1.5, 1.), p(1.5, -1.)];
        let t = cdt(&Pslg::new(pts, vec![])).unwrap();
        t.validate().unwrap();
        assert_eq!(t.face_count(), 6);
    }

    #[test]
    fn cocircular_square_is_deterministic() {
        // all four points on one circle: the diagonal through vertex 0 wins
        let pts = vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        let t = cdt(&Pslg::new(pts.clone(), vec![])).unwrap();
        assert!(t.has_edge(0, 2));
        let rot = vec![pts[1], pts[2], pts[3], pts[0]];
        let t = cdt(&Pslg::new(rot, vec![])).unwrap();
        assert!(t.has_edge(0, 2));
    }

    #[test]
    fn constraint_forced() {
        // the Delaunay diagonal of this kite is 1-3; constraining 0-2 keeps it
        let pts = vec![p(0., 0.), p(1., -0.2), p(2., 0.), p(1., 0.2)];
        let free = cdt(&Pslg::new(pts.clone(), vec![])).unwrap();
        assert!(free.has_edge(1, 3));
        let t = cdt(&Pslg::new(pts, vec![(0, 2)])).unwrap();
        assert!(t.has_edge(0, 2));
        assert!(delaunay_violations(&t, &[(0, 2)]).is_empty());
        assert_eq!(delaunay_violations(&t, &[]), vec![(0, 2)]);
    }

    #[test]
    fn pslg_errors() {
        let pts = vec![p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.), p(1., 1.)];
        assert_eq!(
            Pslg::new(pts.clone(), vec![(0, 1)]).validate(),
            Err(Error::VertexOnConstraint { vertex: 4, a: 0, b: 1 })
        );
        let pts4 = pts[..4].to_vec();
        assert_eq!(Pslg::new(pts4, vec![(0, 1), (2, 3)]).validate(), Err(Error::CrossingConstraints(0, 1, 2, 3)));
        let dup = vec![p(0., 0.), p(1., 0.), p(0., 0.)];
        assert!(matches!(Pslg::new(dup, vec![]).validate(), Err(Error::DuplicateVertex { .. })));
    }

    #[test]
    fn shrunk_faces() {
        let t =
            Triangulation::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)], vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        let d = domain_from_triangulation(&t, None).unwrap();
        assert_eq!(d.hole_count(), 2);
        assert!(domain_from_triangulation(&t, Some(1.0)).is_err());
    }

    #[test]
    fn diametral_pslg_shape() {
        let d = PolygonalDomain::new(
            ConvexPolygon::rectangle(0., 0., 4., 4.).unwrap(),
            vec![ConvexPolygon::rectangle(1., 1., 2., 2.).unwrap()],
        )
        .unwrap();
        let g = diametral_pslg(&d);
        assert_eq!(g.vertices.len(), 6);
        let t = triangulation_from_domain(&d).unwrap();
        assert!(t.has_edge(0, 1));
        t.validate().unwrap();
    }
}
