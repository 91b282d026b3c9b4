//! Seeded random instances for tests, benchmarks, and demos.

use rand::Rng;

use crate::geom::{ConvexSet, Interval, Point, Polygon, Rect, Segment};
use crate::halfplane::HalfPlaneMap;
use crate::metric::PseudoMetric;
use crate::one_dim::IntervalMap;
use crate::refine::{Kind, SetMap};

/// Random pseudometric on `n` points: a symmetric matrix with entries in
/// `(0, scale]` closed under shortest paths. Roughly one space in five gets
/// a glued pair (two distinct points at distance zero).
pub fn pseudometric<R: Rng>(rng: &mut R, n: usize, scale: f64) -> PseudoMetric {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(0.01..=1.0) * scale;
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    if n >= 2 && rng.gen_bool(0.2) {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        d[i][j] = 0.0;
        d[j][i] = 0.0;
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
    let ids = (0..n).map(|i| format!("p{i}")).collect();
    PseudoMetric::new(ids, d).expect("shortest-path closure satisfies the axioms")
}

/// Random pseudometric with all pairwise distances strictly positive.
pub fn positive_metric<R: Rng>(rng: &mut R, n: usize, scale: f64) -> PseudoMetric {
    loop {
        let m = pseudometric(rng, n, scale);
        let ok = (0..n).all(|i| (0..n).all(|j| i == j || m.dist(i, j) > 1e-6));
        if ok {
            return m;
        }
    }
}

/// Random function with Lipschitz seminorm at most one over `m`: the lower
/// envelope of noisy values lifted by the distance.
pub fn lipschitz_one<R: Rng>(rng: &mut R, m: &PseudoMetric, scale: f64) -> Vec<f64> {
    let n = m.len();
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-scale..scale)).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| raw[j] + m.dist(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Random bounded intervals over a metric with positive distances, so the
/// optimal seminorm is always finite.
pub fn interval_map<R: Rng>(rng: &mut R, n: usize, scale: f64) -> IntervalMap {
    let m = positive_metric(rng, n, scale);
    let values = (0..n)
        .map(|_| {
            let a = rng.gen_range(-scale..scale);
            Interval::new(a, a + rng.gen_range(0.0..scale))
        })
        .collect();
    IntervalMap::new(m, values).expect("one interval per point")
}

/// Interval map whose values all contain one common 1-Lipschitz function,
/// so every pair admits a short two-point selection even across glued
/// points.
pub fn interval_map_anchored<R: Rng>(rng: &mut R, n: usize, scale: f64) -> IntervalMap {
    let m = pseudometric(rng, n, scale);
    let anchor = lipschitz_one(rng, &m, scale);
    let values = anchor
        .iter()
        .map(|&v| Interval::new(v - rng.gen_range(0.0..scale), v + rng.gen_range(0.0..scale)))
        .collect();
    IntervalMap::new(m, values).expect("one interval per point")
}

/// Plane-valued function with max-norm seminorm at most one.
pub fn lipschitz_pair<R: Rng>(rng: &mut R, m: &PseudoMetric, scale: f64) -> Vec<Point> {
    let a = lipschitz_one(rng, m, scale);
    let b = lipschitz_one(rng, m, scale);
    a.into_iter().zip(b).map(|(x, y)| Point::new(x, y)).collect()
}

fn polygon_at<R: Rng>(rng: &mut R, center: Point, verts: usize, scale: f64) -> Polygon {
    let pts: Vec<Point> = (0..verts.max(1))
        .map(|_| {
            Point::new(
                center.x + rng.gen_range(-scale..scale),
                center.y + rng.gen_range(-scale..scale),
            )
        })
        .collect();
    Polygon::hull(&pts).expect("at least one vertex")
}

fn vertex_mean(p: &Polygon) -> Point {
    let n = p.len() as f64;
    let (sx, sy) = p
        .vertices()
        .iter()
        .fold((0.0, 0.0), |(sx, sy), v| (sx + v.x, sy + v.y));
    Point::new(sx / n, sy / n)
}

/// Random polygons of at most `max_verts` corners over a positive metric,
/// so a finite-seminorm selection always exists.
pub fn polygon_map<R: Rng>(rng: &mut R, n: usize, max_verts: usize, scale: f64) -> SetMap {
    let m = positive_metric(rng, n, scale);
    let values = (0..n)
        .map(|_| {
            let c = Point::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
            let k = rng.gen_range(1..=max_verts);
            ConvexSet::Polygon(polygon_at(rng, c, k, scale))
        })
        .collect();
    SetMap::new(m, values, Kind::Polygon).expect("one value per point")
}

/// Random axis-parallel boxes over a positive metric.
pub fn box_map<R: Rng>(rng: &mut R, n: usize, scale: f64) -> SetMap {
    let m = positive_metric(rng, n, scale);
    let values = (0..n)
        .map(|_| {
            let x = rng.gen_range(-scale..scale);
            let y = rng.gen_range(-scale..scale);
            ConvexSet::Rect(Rect::new(
                Interval::new(x, x + rng.gen_range(0.0..scale)),
                Interval::new(y, y + rng.gen_range(0.0..scale)),
            ))
        })
        .collect();
    SetMap::new(m, values, Kind::Box).expect("one value per point")
}

/// Random segments over a positive metric; roughly one in ten degenerates
/// to a point.
pub fn segment_map<R: Rng>(rng: &mut R, n: usize, scale: f64) -> SetMap {
    let m = positive_metric(rng, n, scale);
    let values = (0..n)
        .map(|_| {
            let a = Point::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
            let b = if rng.gen_bool(0.1) {
                a
            } else {
                Point::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
            };
            ConvexSet::Segment(Segment::new(a, b))
        })
        .collect();
    SetMap::new(m, values, Kind::Segment).expect("one value per point")
}

/// Polygon map whose values all contain a common selection of seminorm at
/// most one, built by translating random polygons onto an anchor function.
pub fn anchored_polygon_map<R: Rng>(rng: &mut R, n: usize, scale: f64) -> SetMap {
    let m = pseudometric(rng, n, scale);
    let anchor = lipschitz_pair(rng, &m, scale);
    let values = anchor
        .iter()
        .map(|&g| {
            let k = rng.gen_range(1..=6);
            let p = polygon_at(rng, Point::new(0.0, 0.0), k, scale);
            let c = vertex_mean(&p);
            let moved: Vec<Point> = p
                .vertices()
                .iter()
                .map(|v| Point::new(v.x - c.x + g.x, v.y - c.y + g.y))
                .collect();
            ConvexSet::Polygon(Polygon::hull(&moved).expect("translated hull"))
        })
        .collect();
    SetMap::new(m, values, Kind::Polygon).expect("one value per point")
}

/// Segment map with a common seminorm-one selection through the segment
/// interiors.
pub fn anchored_segment_map<R: Rng>(rng: &mut R, n: usize, scale: f64) -> SetMap {
    let m = pseudometric(rng, n, scale);
    let anchor = lipschitz_pair(rng, &m, scale);
    let values = anchor
        .iter()
        .map(|&g| {
            let ang = rng.gen_range(0.0..std::f64::consts::TAU);
            let u = Point::new(ang.cos(), ang.sin());
            let back = rng.gen_range(0.0..scale);
            let fwd = rng.gen_range(0.0..scale);
            ConvexSet::Segment(Segment::new(
                Point::new(g.x - back * u.x, g.y - back * u.y),
                Point::new(g.x + fwd * u.x, g.y + fwd * u.y),
            ))
        })
        .collect();
    SetMap::new(m, values, Kind::Segment).expect("one value per point")
}

/// Random half-plane map over a positive metric. A Lipschitz anchor lies
/// inside every value, so the optimal seminorm is finite, and the first
/// three normals are spread a third of a turn apart (with small jitter),
/// so their hull strictly surrounds the origin.
pub fn halfplane_map<R: Rng>(rng: &mut R, n: usize, scale: f64) -> HalfPlaneMap {
    assert!(n >= 3, "need three normals to surround the origin");
    let m = positive_metric(rng, n, scale);
    let anchor = lipschitz_pair(rng, &m, scale);
    let base = rng.gen_range(0.0..std::f64::consts::TAU);
    let third = std::f64::consts::TAU / 3.0;
    let normals: Vec<Point> = (0..n)
        .map(|i| {
            let theta = if i < 3 {
                base + i as f64 * third + rng.gen_range(-0.3..0.3)
            } else {
                rng.gen_range(0.0..std::f64::consts::TAU)
            };
            Point::new(theta.cos(), theta.sin())
        })
        .collect();
    let alphas = normals
        .iter()
        .zip(&anchor)
        .map(|(nrm, g)| -nrm.dot(*g) - rng.gen_range(0.0..scale))
        .collect();
    HalfPlaneMap::new(m, normals, alphas).expect("unit normals by construction")
}
