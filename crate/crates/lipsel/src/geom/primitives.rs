//! Points, intervals, rectangles, half-planes, segments, and convex
//! polygons, with the hull and clipping routines the set operations build
//! on. Polygons are convex, counterclockwise, and deduplicated; intervals
//! and rectangles may have infinite ends.

use serde::{Deserialize, Serialize};

/// Vertices closer than this in the max norm collapse to one.
pub const DEDUP_TOL: f64 = 1e-9;

/// Unit normals must satisfy `| |n|_2 - 1 | <=` this.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn linf_dist(self, other: Point) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(self, f: f64) -> Point {
        Point::new(f * self.x, f * self.y)
    }
}

/// Closed interval `[lo, hi]`, `lo <= hi`; ends may be infinite. Emptiness
/// is not representable here; operations that can empty out return None.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval needs lo <= hi, got [{lo}, {hi}]");
        assert!(!lo.is_nan() && !hi.is_nan());
        Interval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Interval::new(v, v)
    }

    pub fn whole() -> Self {
        Interval::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn center(&self) -> f64 {
        debug_assert!(self.is_bounded());
        0.5 * (self.lo + self.hi)
    }

    pub fn expand(&self, r: f64) -> Interval {
        Interval::new(self.lo - r, self.hi + r)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    pub fn contains(&self, t: f64, tol: f64) -> bool {
        t >= self.lo - tol && t <= self.hi + tol
    }

    pub fn clamp(&self, t: f64) -> f64 {
        t.max(self.lo).min(self.hi)
    }

    /// Distance between intervals: the gap, zero when they meet.
    pub fn dist(&self, other: &Interval) -> f64 {
        (self.lo - other.hi).max(other.lo - self.hi).max(0.0)
    }

    /// Hausdorff distance `max(|lo - lo'|, |hi - hi'|)`; matching infinite
    /// ends contribute nothing.
    pub fn hausdorff(&self, other: &Interval) -> f64 {
        let end = |a: f64, b: f64| {
            if a == b {
                0.0
            } else {
                (a - b).abs()
            }
        };
        end(self.lo, other.lo).max(end(self.hi, other.hi))
    }
}

/// Product of coordinate intervals; sides may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x: Interval,
    pub y: Interval,
}

impl Rect {
    pub fn new(x: Interval, y: Interval) -> Self {
        Rect { x, y }
    }

    pub fn is_bounded(&self) -> bool {
        self.x.is_bounded() && self.y.is_bounded()
    }

    pub fn center(&self) -> Point {
        Point::new(self.x.center(), self.y.center())
    }

    pub fn expand(&self, r: f64) -> Rect {
        Rect::new(self.x.expand(r), self.y.expand(r))
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        Some(Rect::new(
            self.x.intersect(&other.x)?,
            self.y.intersect(&other.y)?,
        ))
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.x.contains(p.x, tol) && self.y.contains(p.y, tol)
    }

    /// Corners in counterclockwise order; bounded rectangles only.
    pub fn corners(&self) -> Vec<Point> {
        debug_assert!(self.is_bounded());
        vec![
            Point::new(self.x.lo, self.y.lo),
            Point::new(self.x.hi, self.y.lo),
            Point::new(self.x.hi, self.y.hi),
            Point::new(self.x.lo, self.y.hi),
        ]
    }

    /// Distance in the max norm: the larger of the coordinate gaps.
    pub fn dist(&self, other: &Rect) -> f64 {
        self.x.dist(&other.x).max(self.y.dist(&other.y))
    }

    pub fn hausdorff(&self, other: &Rect) -> f64 {
        self.x.hausdorff(&other.x).max(self.y.hausdorff(&other.y))
    }

    pub fn half_planes(&self) -> Vec<HalfPlane> {
        let mut out = Vec::new();
        if self.x.hi.is_finite() {
            out.push(HalfPlane::from_unit(1.0, 0.0, -self.x.hi));
        }
        if self.x.lo.is_finite() {
            out.push(HalfPlane::from_unit(-1.0, 0.0, self.x.lo));
        }
        if self.y.hi.is_finite() {
            out.push(HalfPlane::from_unit(0.0, 1.0, -self.y.hi));
        }
        if self.y.lo.is_finite() {
            out.push(HalfPlane::from_unit(0.0, -1.0, self.y.lo));
        }
        out
    }
}

/// Closed half-plane `{ p : <p, n> + alpha <= 0 }` with unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub n: Point,
    pub alpha: f64,
}

impl HalfPlane {
    /// Normalizes the normal; fails on the zero vector.
    pub fn new(nx: f64, ny: f64, alpha: f64) -> Result<Self, String> {
        let len = nx.hypot(ny);
        if !len.is_finite() || len < 1e-300 {
            return Err(format!("degenerate half-plane normal ({nx}, {ny})"));
        }
        Ok(HalfPlane {
            n: Point::new(nx / len, ny / len),
            alpha: alpha / len,
        })
    }

    /// Wraps an already unit normal.
    pub fn from_unit(nx: f64, ny: f64, alpha: f64) -> Self {
        debug_assert!((nx.hypot(ny) - 1.0).abs() <= UNIT_TOL);
        HalfPlane {
            n: Point::new(nx, ny),
            alpha,
        }
    }

    /// Signed violation: nonpositive inside, positive outside.
    pub fn eval(&self, p: Point) -> f64 {
        self.n.dot(p) + self.alpha
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.eval(p) <= tol
    }

    /// Sum with `r` times the unit square: the bound relaxes by the l1 norm
    /// of the normal.
    pub fn fatten_square(&self, r: f64) -> HalfPlane {
        HalfPlane {
            n: self.n,
            alpha: self.alpha - r * (self.n.x.abs() + self.n.y.abs()),
        }
    }

    /// Sum with the Euclidean disk of radius `delta`.
    pub fn fatten_disk(&self, delta: f64) -> HalfPlane {
        HalfPlane {
            n: self.n,
            alpha: self.alpha - delta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn midpoint(&self) -> Point {
        Point::new(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))
    }

    pub fn at(&self, t: f64) -> Point {
        self.a.add(self.b.sub(self.a).scale(t))
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.linf_dist(self.b) <= DEDUP_TOL
    }

    /// Slab along the segment plus end caps; a degenerate segment pins its
    /// point with axis planes.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        let d = self.b.sub(self.a);
        let len = d.x.hypot(d.y);
        if len <= DEDUP_TOL {
            return point_half_planes(self.a);
        }
        let dir = d.scale(1.0 / len);
        let m = Point::new(-dir.y, dir.x);
        vec![
            HalfPlane::from_unit(m.x, m.y, -m.dot(self.a)),
            HalfPlane::from_unit(-m.x, -m.y, m.dot(self.a)),
            HalfPlane::from_unit(dir.x, dir.y, -dir.dot(self.b)),
            HalfPlane::from_unit(-dir.x, -dir.y, dir.dot(self.a)),
        ]
    }

    /// Parameter range of `self` inside every half-plane, as a subinterval
    /// of `[0, 1]`; None when the constraints cut the whole segment away.
    pub fn param_clip(&self, planes: &[HalfPlane]) -> Option<Interval> {
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for hp in planes {
            let sa = hp.eval(self.a);
            let sb = hp.eval(self.b);
            let coef = sb - sa;
            if coef.abs() <= 1e-15 {
                if sa > DEDUP_TOL {
                    return None;
                }
                continue;
            }
            let bound = -sa / coef;
            if coef > 0.0 {
                hi = hi.min(bound);
            } else {
                lo = lo.max(bound);
            }
            if lo > hi {
                return None;
            }
        }
        Some(Interval::new(lo, hi))
    }
}

pub fn point_half_planes(p: Point) -> Vec<HalfPlane> {
    vec![
        HalfPlane::from_unit(1.0, 0.0, -p.x),
        HalfPlane::from_unit(-1.0, 0.0, p.x),
        HalfPlane::from_unit(0.0, 1.0, -p.y),
        HalfPlane::from_unit(0.0, -1.0, p.y),
    ]
}

/// Convex polygon: at least one vertex, counterclockwise, consecutive
/// vertices separated by more than `DEDUP_TOL`. One vertex is a point, two
/// are a segment shape.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    verts: Vec<Point>,
}

impl Polygon {
    /// Convex hull of arbitrary points; None when the input is empty.
    pub fn hull(points: &[Point]) -> Option<Polygon> {
        let mut pts: Vec<Point> = Vec::new();
        for &p in points {
            if !pts.iter().any(|q| q.linf_dist(p) <= DEDUP_TOL) {
                pts.push(p);
            }
        }
        if pts.is_empty() {
            return None;
        }
        if pts.len() <= 2 {
            return Some(Polygon { verts: pts });
        }
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 {
                let q = lower[lower.len() - 1].sub(lower[lower.len() - 2]);
                let r = p.sub(lower[lower.len() - 1]);
                if q.cross(r) <= 0.0 {
                    lower.pop();
                } else {
                    break;
                }
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 {
                let q = upper[upper.len() - 1].sub(upper[upper.len() - 2]);
                let r = p.sub(upper[upper.len() - 1]);
                if q.cross(r) <= 0.0 {
                    upper.pop();
                } else {
                    break;
                }
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            // all points collinear: keep the two extremes
            let a = *pts.first().unwrap();
            let b = *pts.last().unwrap();
            return Some(Polygon {
                verts: if a.linf_dist(b) <= DEDUP_TOL {
                    vec![a]
                } else {
                    vec![a, b]
                },
            });
        }
        Some(Polygon { verts: lower })
    }

    /// Wraps vertices that are already convex, counterclockwise, deduped.
    pub fn from_ccw_unchecked(verts: Vec<Point>) -> Polygon {
        debug_assert!(!verts.is_empty());
        Polygon { verts }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_point(&self) -> Option<Point> {
        (self.verts.len() == 1).then(|| self.verts[0])
    }

    pub fn as_segment(&self) -> Option<Segment> {
        (self.verts.len() == 2).then(|| Segment::new(self.verts[0], self.verts[1]))
    }

    pub fn half_planes(&self) -> Vec<HalfPlane> {
        match self.verts.len() {
            1 => point_half_planes(self.verts[0]),
            2 => Segment::new(self.verts[0], self.verts[1]).half_planes(),
            n => (0..n)
                .map(|i| {
                    let a = self.verts[i];
                    let b = self.verts[(i + 1) % n];
                    let e = b.sub(a);
                    let len = e.x.hypot(e.y);
                    let n_out = Point::new(e.y / len, -e.x / len);
                    HalfPlane::from_unit(n_out.x, n_out.y, -n_out.dot(a))
                })
                .collect(),
        }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.half_planes().iter().all(|hp| hp.contains(p, tol))
    }

    /// Clips by one half-plane; the result may be empty or degenerate and
    /// is returned as raw counterclockwise vertices.
    pub fn clip(verts: &[Point], hp: &HalfPlane) -> Vec<Point> {
        if verts.len() == 1 {
            return if hp.contains(verts[0], DEDUP_TOL) {
                verts.to_vec()
            } else {
                Vec::new()
            };
        }
        let n = verts.len();
        let mut out = Vec::with_capacity(n + 2);
        for i in 0..n {
            let cur = verts[i];
            let nxt = verts[(i + 1) % n];
            let sc = hp.eval(cur);
            let sn = hp.eval(nxt);
            if sc <= 0.0 {
                out.push(cur);
            }
            if (sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0) {
                let t = sc / (sc - sn);
                out.push(cur.add(nxt.sub(cur).scale(t)));
            }
        }
        dedup_ring(out)
    }

    pub fn bounding(&self) -> Rect {
        let xs = self.verts.iter().map(|p| p.x);
        let ys = self.verts.iter().map(|p| p.y);
        Rect::new(
            Interval::new(
                xs.clone().fold(f64::INFINITY, f64::min),
                xs.fold(f64::NEG_INFINITY, f64::max),
            ),
            Interval::new(
                ys.clone().fold(f64::INFINITY, f64::min),
                ys.fold(f64::NEG_INFINITY, f64::max),
            ),
        )
    }
}

/// Removes near-duplicate vertices from a ring, keeping first occurrences;
/// on convex counterclockwise input the order survives.
pub fn dedup_ring(verts: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(verts.len());
    for p in verts {
        if out.iter().all(|q| q.linf_dist(p) > DEDUP_TOL) {
            out.push(p);
        }
    }
    out
}
