//! Convex subsets of the plane and the operations the selection machinery
//! is built from: Minkowski sums with the max-norm ball, exact
//! intersections, axis projections and rectangular hulls, max-norm and
//! Hausdorff distances, the diagonal metric projection, Steiner points,
//! and a Helly consistency check.

mod primitives;

pub use primitives::{
    dedup_ring, point_half_planes, HalfPlane, Interval, Point, Polygon, Rect, Segment, DEDUP_TOL,
    UNIT_TOL,
};

use thiserror::Error;

use crate::lp::{Outcome, Program};

/// Intersections that miss being nonempty by at most this (as LP
/// infeasibility) collapse to the single nearest point instead of Empty.
pub const EMPTY_SLACK: f64 = 1e-8;

/// Membership assertions allow this much constraint violation.
pub const MEMBERSHIP_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("{op}: set is empty")]
    EmptySet { op: &'static str },
    #[error("{op}: set is unbounded")]
    Unbounded { op: &'static str },
    #[error("no diagonal through ({x}, {y}) meets the set; the point is outside its rectangular hull")]
    NoDiagonalHit { x: f64, y: f64 },
}

/// A convex subset of the plane; `Interval` values live on the real line
/// instead (one-dimensional instances) and never mix with plane variants.
/// `HalfPlanes` holds unbounded intersections of half-planes; bounded
/// intersections materialize as polygons.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexSet {
    Empty,
    Polygon(Polygon),
    Segment(Segment),
    Rect(Rect),
    HalfPlane(HalfPlane),
    HalfPlanes(Vec<HalfPlane>),
    Interval(Interval),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl ConvexSet {
    pub fn point(p: Point) -> ConvexSet {
        ConvexSet::Polygon(Polygon::from_ccw_unchecked(vec![p]))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConvexSet::Empty)
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ConvexSet::Empty | ConvexSet::Polygon(_) | ConvexSet::Segment(_) => true,
            ConvexSet::Rect(r) => r.is_bounded(),
            ConvexSet::HalfPlane(_) | ConvexSet::HalfPlanes(_) => false,
            ConvexSet::Interval(i) => i.is_bounded(),
        }
    }

    /// Canonical half-plane description. Intervals embed on the x-axis.
    /// Panics on Empty.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        match self {
            ConvexSet::Empty => panic!("no half-plane description of the empty set"),
            ConvexSet::Polygon(p) => p.half_planes(),
            ConvexSet::Segment(s) => s.half_planes(),
            ConvexSet::Rect(r) => r.half_planes(),
            ConvexSet::HalfPlane(h) => vec![*h],
            ConvexSet::HalfPlanes(v) => v.clone(),
            ConvexSet::Interval(i) => {
                ConvexSet::Rect(Rect::new(*i, Interval::point(0.0))).half_planes()
            }
        }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match self {
            ConvexSet::Empty => false,
            _ => self.half_planes().iter().all(|hp| hp.contains(p, tol)),
        }
    }

    /// Vertices of bounded, vertex-representable sets.
    pub fn vertices(&self) -> Option<Vec<Point>> {
        match self {
            ConvexSet::Polygon(p) => Some(p.vertices().to_vec()),
            ConvexSet::Segment(s) => Some(vec![s.a, s.b]),
            ConvexSet::Rect(r) if r.is_bounded() => Some(dedup_ring(r.corners())),
            ConvexSet::Interval(i) if i.is_bounded() => Some(dedup_ring(vec![
                Point::new(i.lo, 0.0),
                Point::new(i.hi, 0.0),
            ])),
            _ => None,
        }
    }

    /// Sum with `r` times the unit square (the max-norm ball); intervals
    /// get the one-dimensional ball `[-r, r]`.
    pub fn minkowski_square(&self, r: f64) -> ConvexSet {
        assert!(r >= 0.0 && r.is_finite(), "radius must be finite and >= 0");
        if r == 0.0 {
            return self.clone();
        }
        let square = [
            Point::new(r, r),
            Point::new(-r, r),
            Point::new(-r, -r),
            Point::new(r, -r),
        ];
        let sum_hull = |verts: &[Point]| {
            let pts: Vec<Point> = verts
                .iter()
                .flat_map(|v| square.iter().map(move |q| v.add(*q)))
                .collect();
            ConvexSet::Polygon(Polygon::hull(&pts).expect("nonempty vertex sum"))
        };
        match self {
            ConvexSet::Empty => ConvexSet::Empty,
            ConvexSet::Polygon(p) => sum_hull(p.vertices()),
            ConvexSet::Segment(s) => sum_hull(&[s.a, s.b]),
            ConvexSet::Rect(rect) => ConvexSet::Rect(rect.expand(r)),
            ConvexSet::HalfPlane(h) => ConvexSet::HalfPlane(h.fatten_square(r)),
            ConvexSet::HalfPlanes(v) => {
                // Facets of the sum carry either a shifted original normal
                // or an axis normal supporting the expanded bounding box,
                // so these planes describe the sum exactly.
                let mut planes: Vec<HalfPlane> = v.iter().map(|h| h.fatten_square(r)).collect();
                let hull = Rect::new(
                    planes_project(v, Axis::X),
                    planes_project(v, Axis::Y),
                );
                planes.extend(hull.expand(r).half_planes());
                ConvexSet::HalfPlanes(planes)
            }
            ConvexSet::Interval(i) => ConvexSet::Interval(i.expand(r)),
        }
    }

    /// Projection onto a coordinate axis; None only for Empty.
    pub fn project(&self, axis: Axis) -> Option<Interval> {
        let coord = |p: &Point| match axis {
            Axis::X => p.x,
            Axis::Y => p.y,
        };
        match self {
            ConvexSet::Empty => None,
            ConvexSet::Polygon(p) => Some(coords_interval(p.vertices().iter().map(coord))),
            ConvexSet::Segment(s) => Some(coords_interval([coord(&s.a), coord(&s.b)].into_iter())),
            ConvexSet::Rect(r) => Some(match axis {
                Axis::X => r.x,
                Axis::Y => r.y,
            }),
            ConvexSet::HalfPlane(h) => {
                let (own, other) = match axis {
                    Axis::X => (h.n.x, h.n.y),
                    Axis::Y => (h.n.y, h.n.x),
                };
                Some(if other.abs() > UNIT_TOL {
                    Interval::whole()
                } else if own > 0.0 {
                    Interval::new(f64::NEG_INFINITY, -h.alpha / own)
                } else {
                    Interval::new(-h.alpha / own, f64::INFINITY)
                })
            }
            ConvexSet::HalfPlanes(v) => Some(planes_project(v, axis)),
            ConvexSet::Interval(i) => Some(match axis {
                Axis::X => *i,
                Axis::Y => Interval::point(0.0),
            }),
        }
    }

    /// Smallest rectangle containing the set; None only for Empty.
    pub fn rect_hull(&self) -> Option<Rect> {
        Some(Rect::new(self.project(Axis::X)?, self.project(Axis::Y)?))
    }
}

fn coords_interval(vals: impl Iterator<Item = f64> + Clone) -> Interval {
    Interval::new(
        vals.clone().fold(f64::INFINITY, f64::min),
        vals.fold(f64::NEG_INFINITY, f64::max),
    )
}

/// Support-based projection of a half-plane intersection (assumed
/// nonempty) onto an axis, by two small linear programs.
fn planes_project(planes: &[HalfPlane], axis: Axis) -> Interval {
    let dir = match axis {
        Axis::X => Point::new(1.0, 0.0),
        Axis::Y => Point::new(0.0, 1.0),
    };
    let hi = planes_support(planes, dir);
    let lo = -planes_support(planes, dir.scale(-1.0));
    Interval::new(lo, hi)
}

/// `sup <p, dir>` over the intersection; infinite when unbounded that way.
fn planes_support(planes: &[HalfPlane], dir: Point) -> f64 {
    let mut p = Program::minimize(vec![-dir.x, -dir.y]);
    for hp in planes {
        p.add_le(vec![hp.n.x, hp.n.y], -hp.alpha);
    }
    match p.solve() {
        Outcome::Optimal { value, .. } => -value,
        Outcome::Unbounded => f64::INFINITY,
        Outcome::Infeasible => panic!("support of an empty intersection"),
    }
}

/// Nearest-to-feasible point of a half-plane system: minimizes the largest
/// violation; accepts it when within `EMPTY_SLACK`.
fn nearest_feasible(planes: &[HalfPlane]) -> Option<Point> {
    let mut p = Program::minimize(vec![0.0, 0.0, 1.0]);
    for hp in planes {
        p.add_le(vec![hp.n.x, hp.n.y, -1.0], -hp.alpha);
    }
    match p.solve() {
        Outcome::Optimal { x, value } if value <= EMPTY_SLACK => Some(Point::new(x[0], x[1])),
        Outcome::Optimal { .. } => None,
        Outcome::Unbounded => {
            let mut f = Program::feasibility(2);
            for hp in planes {
                f.add_le(vec![hp.n.x, hp.n.y], -hp.alpha);
            }
            f.feasible_point().map(|x| Point::new(x[0], x[1]))
        }
        Outcome::Infeasible => None,
    }
}

enum Seed {
    Pt(Point),
    Seg(Segment),
    Poly(Vec<Point>),
}

fn bounded_seed(set: &ConvexSet) -> Option<Seed> {
    match set {
        ConvexSet::Segment(s) => Some(Seed::Seg(*s)),
        ConvexSet::Polygon(p) => Some(match p.len() {
            1 => Seed::Pt(p.vertices()[0]),
            2 => Seed::Seg(p.as_segment().unwrap()),
            _ => Seed::Poly(p.vertices().to_vec()),
        }),
        ConvexSet::Rect(r) if r.is_bounded() => {
            let pts = dedup_ring(r.corners());
            Some(match pts.len() {
                1 => Seed::Pt(pts[0]),
                2 => Seed::Seg(Segment::new(pts[0], pts[1])),
                _ => Seed::Poly(pts),
            })
        }
        _ => None,
    }
}

/// Exact intersection of finitely many convex sets. Segment inputs clip
/// parametrically and stay segments; all-rectangle input stays a
/// rectangle; otherwise a bounded input acts as a clipping seed and the
/// result is a polygon. With only unbounded inputs the result is the
/// half-plane system, materialized to a polygon when it turns out bounded.
/// Intersections missing nonemptiness within `EMPTY_SLACK` become the
/// single nearest point.
pub fn intersect(sets: &[ConvexSet]) -> ConvexSet {
    assert!(!sets.is_empty(), "intersection of an empty family");
    if sets.iter().any(|s| s.is_empty()) {
        return ConvexSet::Empty;
    }
    if sets.iter().all(|s| matches!(s, ConvexSet::Interval(_))) {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for s in sets {
            if let ConvexSet::Interval(i) = s {
                lo = lo.max(i.lo);
                hi = hi.min(i.hi);
            }
        }
        return if lo <= hi {
            ConvexSet::Interval(Interval::new(lo, hi))
        } else if lo - hi <= EMPTY_SLACK {
            ConvexSet::Interval(Interval::point(0.5 * (lo + hi)))
        } else {
            ConvexSet::Empty
        };
    }
    assert!(
        !sets.iter().any(|s| matches!(s, ConvexSet::Interval(_))),
        "one-dimensional intervals cannot mix with plane sets"
    );
    if sets.iter().all(|s| matches!(s, ConvexSet::Rect(_))) {
        let mut x = Interval::whole();
        let mut y = Interval::whole();
        for s in sets {
            if let ConvexSet::Rect(r) = s {
                match (slack_intersect(x, r.x), slack_intersect(y, r.y)) {
                    (Some(nx), Some(ny)) => {
                        x = nx;
                        y = ny;
                    }
                    _ => return ConvexSet::Empty,
                }
            }
        }
        return ConvexSet::Rect(Rect::new(x, y));
    }

    let seed_idx = sets.iter().position(|s| {
        matches!(bounded_seed(s), Some(Seed::Seg(_)) | Some(Seed::Pt(_)))
    });
    let seed_idx = seed_idx.or_else(|| sets.iter().position(|s| bounded_seed(s).is_some()));

    let mut planes: Vec<HalfPlane> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if Some(i) != seed_idx {
            planes.extend(s.half_planes());
        }
    }

    let Some(idx) = seed_idx else {
        // only unbounded inputs
        let Some(witness) = nearest_feasible(&planes) else {
            return ConvexSet::Empty;
        };
        let x = planes_project(&planes, Axis::X);
        let y = planes_project(&planes, Axis::Y);
        if x.is_bounded() && y.is_bounded() {
            let mut verts = Rect::new(x, y).corners();
            for hp in &planes {
                verts = Polygon::clip(&verts, hp);
                if verts.is_empty() {
                    return ConvexSet::point(witness);
                }
            }
            return ConvexSet::Polygon(Polygon::hull(&verts).expect("nonempty clip"));
        }
        if planes.len() == 1 {
            return ConvexSet::HalfPlane(planes[0]);
        }
        return ConvexSet::HalfPlanes(planes);
    };

    match bounded_seed(&sets[idx]).expect("seed is bounded") {
        Seed::Pt(p) => {
            if planes.iter().all(|hp| hp.contains(p, EMPTY_SLACK)) {
                ConvexSet::point(p)
            } else {
                ConvexSet::Empty
            }
        }
        Seed::Seg(s) => match s.param_clip(&planes) {
            Some(t) => ConvexSet::Segment(Segment::new(s.at(t.lo), s.at(t.hi))),
            None => {
                let mut all = planes;
                all.extend(s.half_planes());
                match nearest_feasible(&all) {
                    Some(p) => ConvexSet::Segment(Segment::new(p, p)),
                    None => ConvexSet::Empty,
                }
            }
        },
        Seed::Poly(mut verts) => {
            for hp in &planes {
                verts = Polygon::clip(&verts, hp);
                if verts.is_empty() {
                    break;
                }
            }
            if verts.is_empty() {
                let mut all = planes;
                all.extend(sets[idx].half_planes());
                return match nearest_feasible(&all) {
                    Some(p) => ConvexSet::point(p),
                    None => ConvexSet::Empty,
                };
            }
            ConvexSet::Polygon(Polygon::hull(&verts).expect("nonempty clip"))
        }
    }
}

/// Interval intersection treating a gap of at most `EMPTY_SLACK` as a
/// touch at the gap midpoint.
fn slack_intersect(a: Interval, b: Interval) -> Option<Interval> {
    let lo = a.lo.max(b.lo);
    let hi = a.hi.min(b.hi);
    if lo <= hi {
        Some(Interval::new(lo, hi))
    } else if lo - hi <= EMPTY_SLACK {
        Some(Interval::point(0.5 * (lo + hi)))
    } else {
        None
    }
}

/// Max-norm distance between sets; zero when either is empty.
pub fn dist_linf(a: &ConvexSet, b: &ConvexSet) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    match (a, b) {
        (ConvexSet::Interval(i), ConvexSet::Interval(j)) => i.dist(j),
        (ConvexSet::Rect(r), ConvexSet::Rect(s)) => r.dist(s),
        _ => {
            let mut p = Program::minimize(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
            for hp in a.half_planes() {
                p.add_le(vec![hp.n.x, hp.n.y, 0.0, 0.0, 0.0], -hp.alpha);
            }
            for hp in b.half_planes() {
                p.add_le(vec![0.0, 0.0, hp.n.x, hp.n.y, 0.0], -hp.alpha);
            }
            for (i, j) in [(0usize, 2usize), (1, 3)] {
                let mut row = vec![0.0; 5];
                row[i] = 1.0;
                row[j] = -1.0;
                row[4] = -1.0;
                p.add_le(row.clone(), 0.0);
                let mut row = vec![0.0; 5];
                row[i] = -1.0;
                row[j] = 1.0;
                row[4] = -1.0;
                p.add_le(row, 0.0);
            }
            match p.solve() {
                Outcome::Optimal { value, .. } => value.max(0.0),
                other => panic!("distance program must have an optimum, got {other:?}"),
            }
        }
    }
}

/// Max-norm distance from a point to a nonempty set.
pub fn dist_point(p: Point, set: &ConvexSet) -> f64 {
    match set {
        ConvexSet::Empty => 0.0,
        ConvexSet::Rect(r) => {
            let dx = (r.x.lo - p.x).max(p.x - r.x.hi).max(0.0);
            let dy = (r.y.lo - p.y).max(p.y - r.y.hi).max(0.0);
            dx.max(dy)
        }
        ConvexSet::Interval(i) => {
            let dx = (i.lo - p.x).max(p.x - i.hi).max(0.0);
            dx.max(p.y.abs())
        }
        ConvexSet::HalfPlane(h) => {
            h.eval(p).max(0.0) / (h.n.x.abs() + h.n.y.abs())
        }
        _ => {
            let mut prog = Program::minimize(vec![0.0, 0.0, 1.0]);
            for hp in set.half_planes() {
                prog.add_le(vec![hp.n.x, hp.n.y, 0.0], -hp.alpha);
            }
            prog.add_le(vec![1.0, 0.0, -1.0], p.x);
            prog.add_le(vec![-1.0, 0.0, -1.0], -p.x);
            prog.add_le(vec![0.0, 1.0, -1.0], p.y);
            prog.add_le(vec![0.0, -1.0, -1.0], -p.y);
            match prog.solve() {
                Outcome::Optimal { value, .. } => value.max(0.0),
                other => panic!("point distance program must have an optimum, got {other:?}"),
            }
        }
    }
}

/// Hausdorff distance in the max norm between nonempty bounded sets. Both
/// set-to-set suprema are attained at vertices because point-to-convex-set
/// distance is convex.
pub fn hausdorff_linf(a: &ConvexSet, b: &ConvexSet) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet { op: "hausdorff" });
    }
    if !a.is_bounded() || !b.is_bounded() {
        return Err(GeomError::Unbounded { op: "hausdorff" });
    }
    match (a, b) {
        (ConvexSet::Interval(i), ConvexSet::Interval(j)) => Ok(i.hausdorff(j)),
        (ConvexSet::Rect(r), ConvexSet::Rect(s)) => Ok(r.hausdorff(s)),
        _ => {
            let va = a.vertices().expect("bounded sets have vertices");
            let vb = b.vertices().expect("bounded sets have vertices");
            let one = va
                .iter()
                .map(|&v| dist_point(v, b))
                .fold(0.0f64, f64::max);
            let two = vb
                .iter()
                .map(|&v| dist_point(v, a))
                .fold(0.0f64, f64::max);
            Ok(one.max(two))
        }
    }
}

/// Nearest point of `s` to `p` in the max norm, by the diagonal rule: both
/// diagonal directions through `p` are intersected with `s` and the hit
/// with the smallest parameter magnitude wins (ties prefer the `(1, 1)`
/// diagonal). For `p` in the rectangular hull of `s` this is the unique
/// metric projection, attained on a corner of the distance square; outside
/// the hull the rule still applies whenever a diagonal meets `s`, and
/// otherwise the construction fails.
pub fn metric_projection_linf(p: Point, s: &ConvexSet) -> Result<Point, GeomError> {
    if s.is_empty() {
        return Err(GeomError::EmptySet {
            op: "metric_projection",
        });
    }
    let planes = s.half_planes();
    if planes.iter().all(|hp| hp.contains(p, 1e-12)) {
        return Ok(p);
    }
    let best_t = |dir: Point| -> Option<f64> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for hp in &planes {
            let coef = hp.n.dot(dir);
            let rhs = -hp.alpha - hp.n.dot(p);
            if coef.abs() <= 1e-15 {
                if rhs < -DEDUP_TOL {
                    return None;
                }
                continue;
            }
            if coef > 0.0 {
                hi = hi.min(rhs / coef);
            } else {
                lo = lo.max(rhs / coef);
            }
            if lo > hi {
                return None;
            }
        }
        Some(if lo > 0.0 {
            lo
        } else if hi < 0.0 {
            hi
        } else {
            0.0
        })
    };
    let d1 = Point::new(1.0, 1.0);
    let d2 = Point::new(1.0, -1.0);
    let c1 = best_t(d1);
    let c2 = best_t(d2);
    // |t| is the max-norm distance along a diagonal, so the smaller
    // magnitude wins; an exact tie keeps the (1, 1) diagonal. Within one
    // diagonal the nearest parameter is unique.
    match (c1, c2) {
        (Some(t1), Some(t2)) => {
            if t1.abs() <= t2.abs() {
                Ok(p.add(d1.scale(t1)))
            } else {
                Ok(p.add(d2.scale(t2)))
            }
        }
        (Some(t1), None) => Ok(p.add(d1.scale(t1))),
        (None, Some(t2)) => Ok(p.add(d2.scale(t2))),
        (None, None) => Err(GeomError::NoDiagonalHit { x: p.x, y: p.y }),
    }
}

/// Steiner point of a nonempty bounded set: vertices weighted by exterior
/// angles over the full turn. Points map to themselves, segments to their
/// midpoints, rectangles to their centers.
pub fn steiner_point(s: &ConvexSet) -> Result<Point, GeomError> {
    match s {
        ConvexSet::Empty => Err(GeomError::EmptySet { op: "steiner" }),
        ConvexSet::Segment(seg) => Ok(seg.midpoint()),
        ConvexSet::Rect(r) if r.is_bounded() => Ok(r.center()),
        ConvexSet::Interval(i) if i.is_bounded() => Ok(Point::new(i.center(), 0.0)),
        ConvexSet::Polygon(p) => {
            let v = p.vertices();
            match v.len() {
                1 => Ok(v[0]),
                2 => Ok(Segment::new(v[0], v[1]).midpoint()),
                n => {
                    let mut acc = Point::new(0.0, 0.0);
                    for i in 0..n {
                        let prev = v[(i + n - 1) % n];
                        let next = v[(i + 1) % n];
                        let u = v[i].sub(prev);
                        let w = next.sub(v[i]);
                        let ext = u.cross(w).atan2(u.dot(w));
                        acc = acc.add(v[i].scale(ext));
                    }
                    Ok(acc.scale(1.0 / std::f64::consts::TAU))
                }
            }
        }
        _ => Err(GeomError::Unbounded { op: "steiner" }),
    }
}

/// Returns whether the whole family intersects, with a witness point, and
/// asserts agreement with triple-wise intersection (the planar Helly
/// property).
pub fn helly_check(sets: &[ConvexSet]) -> (bool, Option<Point>) {
    assert!(!sets.is_empty());
    let global = intersect(sets);
    let global_ok = !global.is_empty();
    if sets.len() >= 3 {
        let n = sets.len();
        let mut triples_ok = true;
        'outer: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t = intersect(&[sets[i].clone(), sets[j].clone(), sets[k].clone()]);
                    if t.is_empty() {
                        triples_ok = false;
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(
            triples_ok, global_ok,
            "triple-wise and global intersection verdicts must agree"
        );
    }
    let witness = if global_ok {
        representative(&global)
    } else {
        None
    };
    (global_ok, witness)
}

/// Some point of a nonempty set.
pub fn representative(s: &ConvexSet) -> Option<Point> {
    match s {
        ConvexSet::Empty => None,
        ConvexSet::Polygon(p) => Some(p.vertices()[0]),
        ConvexSet::Segment(seg) => Some(seg.midpoint()),
        ConvexSet::Rect(r) => Some(Point::new(r.x.clamp(0.0), r.y.clamp(0.0))),
        ConvexSet::HalfPlane(h) => Some(h.n.scale(-h.alpha)),
        ConvexSet::HalfPlanes(v) => nearest_feasible(v),
        ConvexSet::Interval(i) => Some(Point::new(i.clamp(0.0), 0.0)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    General,
    Euclidean,
}

/// Expansion factor for intersecting a neighborhood with an enlarged ball:
/// `(3L + 1) / (L - 1)` in general normed planes, `1 + 2L / sqrt(L^2 - 1)`
/// in the Euclidean one. Requires `L > 1`; decreasing in `L` with limit 3.
pub fn theta(l: f64, kind: NormKind) -> f64 {
    assert!(l > 1.0, "theta needs L > 1");
    match kind {
        NormKind::General => (3.0 * l + 1.0) / (l - 1.0),
        NormKind::Euclidean => 1.0 + 2.0 * l / (l * l - 1.0).sqrt(),
    }
}

/// Bounds `((1 + beta) / (1 - beta), 1 / sqrt(1 - beta^2))` used when a
/// direction deviates from an axis by slope `beta`; requires `0 <= beta < 1`.
pub fn xi_bounds(beta: f64) -> (f64, f64) {
    assert!((0.0..1.0).contains(&beta), "xi needs 0 <= beta < 1");
    ((1.0 + beta) / (1.0 - beta), 1.0 / (1.0 - beta * beta).sqrt())
}
