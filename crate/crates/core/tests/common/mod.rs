//! Brute-force oracles shared by the integration tests. They avoid the
//! library's spatial index, predicates and graph code on purpose.
#![allow(dead_code)]

use geodome::{Point, PolygonalDomain, Triangulation};

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Does segment `ab` pass through the open interior of the convex CCW
/// polygon `poly`? Cyrus-Beck clipping followed by a depth test at the
/// middle of the clipped piece.
pub fn blocks(poly: &[Point], a: Point, b: Point) -> bool {
    if poly.len() == 2 {
        return crosses(poly[0], poly[1], a, b);
    }
    let scale = poly.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs())).max(1.0);
    let tol = 1e-9 * scale;
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let n = poly.len();
    for i in 0..n {
        let (v, w) = (poly[i], poly[(i + 1) % n]);
        let len = v.dist(w);
        // signed distance to the edge line, positive inside
        let f = |p: Point| cross(v, w, p) / len;
        let (fa, fb) = (f(a), f(b));
        if fa <= tol && fb <= tol {
            return false;
        }
        if (fa - fb).abs() > 0.0 {
            let t = fa / (fa - fb);
            if fa < fb {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    if t1 - t0 <= 1e-12 {
        return false;
    }
    let m = a.lerp(b, 0.5 * (t0 + t1));
    (0..n).all(|i| {
        let (v, w) = (poly[i], poly[(i + 1) % n]);
        cross(v, w, m) / v.dist(w) > tol
    })
}

/// Proper crossing of two segments: strict sign changes on both sides.
pub fn crosses(p: Point, q: Point, a: Point, b: Point) -> bool {
    let tol = 1e-12 * (p.dist(q) * a.dist(b)).max(1e-300);
    let (d1, d2) = (cross(p, q, a), cross(p, q, b));
    let (d3, d4) = (cross(a, b, p), cross(a, b, q));
    ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
}

pub fn visible(d: &PolygonalDomain, a: Point, b: Point) -> bool {
    d.holes().iter().all(|h| !blocks(h.vertices(), a, b))
}

/// Shortest path over all hole vertices plus `s` and `t` with an
/// all-pairs visibility test and O(n^2) Dijkstra.
pub fn brute_geod(d: &PolygonalDomain, s: Point, t: Point) -> f64 {
    let mut nodes = vec![s, t];
    for h in d.holes() {
        nodes.extend_from_slice(h.vertices());
    }
    let n = nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[0] = 0.0;
    for _ in 0..n {
        let Some(u) = (0..n).filter(|&i| !done[i] && dist[i].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
        else {
            break;
        };
        done[u] = true;
        if u == 1 {
            break;
        }
        for v in 0..n {
            if !done[v] && visible(d, nodes[u], nodes[v]) {
                dist[v] = dist[v].min(dist[u] + nodes[u].dist(nodes[v]));
            }
        }
    }
    dist[1]
}

/// Floyd-Warshall over the triangulation's edges.
pub fn all_pairs(t: &Triangulation) -> Vec<Vec<f64>> {
    let n = t.vertex_count();
    let p = t.vertices();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for f in t.faces() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            d[a][b] = p[a].dist(p[b]);
            d[b][a] = d[a][b];
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Graph diameter over Euclidean diameter by brute force.
pub fn brute_rho(t: &Triangulation) -> f64 {
    let d = all_pairs(t);
    let p = t.vertices();
    let mut g = 0.0f64;
    let mut e = 0.0f64;
    for i in 0..p.len() {
        for j in 0..p.len() {
            g = g.max(d[i][j]);
            e = e.max(p[i].dist(p[j]));
        }
    }
    g / e
}

/// Circumcircle test in plain floating point, sign-normalised for a CCW
/// triangle `abc`: positive when `d` is strictly inside.
pub fn in_circle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let (ax, ay) = (a.x - d.x, a.y - d.y);
    let (bx, by) = (b.x - d.x, b.y - d.y);
    let (cx, cy) = (c.x - d.x, c.y - d.y);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    if cross(a, b, c) > 0.0 {
        det
    } else {
        -det
    }
}

/// Polyline length from raw points.
pub fn length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}
