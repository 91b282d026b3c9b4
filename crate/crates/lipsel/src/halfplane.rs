//! Criteria for half-plane-valued maps: antipodal pair distances, gated
//! corner-shift inequalities over quadruples, a coordinate-free test on
//! distances of pairwise intersections, and its extension to polygon maps
//! through edge half-planes.

use crate::geom::{dist_linf, intersect, ConvexSet, HalfPlane, Point, UNIT_TOL};
use crate::lambda_slack;
use crate::metric::PseudoMetric;
use crate::refine::{Kind, SetMap};
use crate::select::{Verdict, Witness};

/// Two unit normals count as antipodal or parallel within this tolerance.
pub const DIRECTION_TOL: f64 = 1e-9;

/// Half-plane per point, stored as an outward unit normal and an offset:
/// the value at `x` is `{a : <a, n(x)> + alpha(x) <= 0}`.
#[derive(Debug, Clone)]
pub struct HalfPlaneMap {
    metric: PseudoMetric,
    normals: Vec<Point>,
    alphas: Vec<f64>,
}

/// Hypothesis side of the sufficiency statements: the point set is finite,
/// or the normals surround the origin. At least one must hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageStatus {
    pub finite: bool,
    pub hull_contains_origin: bool,
}

impl CoverageStatus {
    pub fn satisfied(&self) -> bool {
        self.finite || self.hull_contains_origin
    }
}

/// Closed-form infimum of the accepted bounds, with the coverage facts the
/// sufficiency direction depends on.
#[derive(Debug, Clone, Copy)]
pub struct CriterionBound {
    pub lambda: f64,
    pub coverage: CoverageStatus,
}

impl HalfPlaneMap {
    pub fn new(
        metric: PseudoMetric,
        normals: Vec<Point>,
        alphas: Vec<f64>,
    ) -> Result<Self, String> {
        if normals.len() != metric.len() || alphas.len() != metric.len() {
            return Err(format!(
                "{} normals and {} offsets for {} points",
                normals.len(),
                alphas.len(),
                metric.len()
            ));
        }
        for (i, n) in normals.iter().enumerate() {
            if (n.x.hypot(n.y) - 1.0).abs() > UNIT_TOL {
                return Err(format!(
                    "normal at point {} (id {}) is not unit: ({}, {})",
                    i,
                    metric.id(i),
                    n.x,
                    n.y
                ));
            }
        }
        Ok(HalfPlaneMap {
            metric,
            normals,
            alphas,
        })
    }

    pub fn metric(&self) -> &PseudoMetric {
        &self.metric
    }

    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.metric.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn half_plane(&self, i: usize) -> HalfPlane {
        HalfPlane::from_unit(self.normals[i].x, self.normals[i].y, self.alphas[i])
    }

    /// The same map as generic half-plane values.
    pub fn to_set_map(&self) -> SetMap {
        let values = (0..self.len())
            .map(|i| ConvexSet::HalfPlane(self.half_plane(i)))
            .collect();
        SetMap::new(self.metric.clone(), values, Kind::HalfPlane)
            .expect("half-plane values match the kind")
    }

    /// Determinant of the two normals; its absolute value is the sine of
    /// the angle between the boundary lines.
    pub fn normal_determinant(&self, x: usize, y: usize) -> f64 {
        let (a, b) = (self.normals[x], self.normals[y]);
        a.x * b.y - a.y * b.x
    }

    /// The corner where the two boundary lines cross.
    pub fn intersection_point(&self, x: usize, y: usize) -> Result<Point, String> {
        let det = self.normal_determinant(x, y);
        if det.abs() <= 1e-12 {
            return Err(format!(
                "boundaries at points {x} and {y} are parallel (determinant {det:e})"
            ));
        }
        let (nx, ny) = (self.normals[x], self.normals[y]);
        let (ax, ay) = (self.alphas[x], self.alphas[y]);
        Ok(Point::new(
            -(ax * ny.y - nx.y * ay) / det,
            -(nx.x * ay - ax * ny.x) / det,
        ))
    }

    fn antipodal(&self, x: usize, y: usize) -> bool {
        let s = self.normals[x].add(self.normals[y]);
        s.x.hypot(s.y) <= DIRECTION_TOL
    }

    fn parallel(&self, x: usize, y: usize) -> bool {
        self.normal_determinant(x, y).abs() <= DIRECTION_TOL
    }

    /// Antipodal-pair condition: opposite-facing values may not drift apart
    /// faster than the bound (their gap is the sum of the two offsets).
    pub fn check_antipodal(&self, lambda: f64) -> Verdict {
        let slack = lambda_slack(lambda);
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if !self.antipodal(x, y) {
                    continue;
                }
                let gap = self.alphas[x] + self.alphas[y];
                let allowed = lambda * self.metric.dist(x, y) + slack;
                if gap > allowed {
                    return Verdict {
                        accepted: false,
                        witness: Some(Witness::PairDistance {
                            x,
                            y,
                            dist: gap.max(0.0),
                            allowed,
                        }),
                    };
                }
            }
        }
        Verdict {
            accepted: true,
            witness: None,
        }
    }

    /// Sign gates under which a corner-shift inequality is required: the
    /// pair's projection onto the compared coordinate must be a ray, and
    /// the two rays of the quadruple must open towards each other. The
    /// lead side (`flip = false`) opens upward in the coordinate; the
    /// trailing side opens downward.
    fn gate(&self, coord: usize, lead: usize, other: usize, flip: bool) -> bool {
        let det = self.normal_determinant(lead, other);
        let (a, b) = if coord == 0 {
            (self.normals[lead].y, self.normals[other].y)
        } else {
            (self.normals[lead].x, self.normals[other].x)
        };
        let sign = if (coord == 0) == flip { -1.0 } else { 1.0 };
        sign * a * det >= 0.0 && sign * b * det <= 0.0
    }

    /// The bound multiplier of one corner-shift constraint. Each pair term
    /// carries the coordinate sensitivity of its lead element: fattening
    /// the trailing set shifts the corner along the lead boundary.
    fn corner_brace(&self, coord: usize, x: usize, xp: usize, y: usize, yp: usize) -> f64 {
        let weight = |lead: usize, other: usize| {
            let n = self.normals[lead];
            let m = if coord == 0 { n.y.abs() } else { n.x.abs() };
            m * self.metric.dist(lead, other) / self.normal_determinant(lead, other).abs()
        };
        weight(x, xp) + weight(y, yp) + self.metric.dist(x, y)
    }

    /// Corner-shift condition over all gated quadruples with transversal
    /// pairs: corners may separate along each axis no faster than the
    /// braced combination of distances.
    pub fn check_corner_shift(&self, lambda: f64) -> Verdict {
        let n = self.len();
        let slack = lambda_slack(lambda);
        let mut corners = vec![vec![None; n]; n];
        for x in 0..n {
            for xp in 0..n {
                if !self.parallel(x, xp) {
                    corners[x][xp] = Some(
                        self.intersection_point(x, xp)
                            .expect("transversal boundaries cross"),
                    );
                }
            }
        }
        for x in 0..n {
            for xp in 0..n {
                let Some(wx) = corners[x][xp] else { continue };
                for y in 0..n {
                    for yp in 0..n {
                        let Some(wy) = corners[y][yp] else { continue };
                        for coord in 0..2 {
                            if !(self.gate(coord, x, xp, false) && self.gate(coord, y, yp, true)) {
                                continue;
                            }
                            let lhs = if coord == 0 { wx.x - wy.x } else { wx.y - wy.y };
                            let brace = self.corner_brace(coord, x, xp, y, yp);
                            if lhs > lambda * brace + slack {
                                return Verdict {
                                    accepted: false,
                                    witness: Some(Witness::CoordinateGap {
                                        x,
                                        xp,
                                        y,
                                        yp,
                                        coord,
                                        excess: lhs - lambda * brace,
                                    }),
                                };
                            }
                        }
                    }
                }
            }
        }
        Verdict {
            accepted: true,
            witness: None,
        }
    }

    /// Conjunction of the antipodal and corner-shift conditions. Accepting
    /// `lambda` certifies a selection with seminorm at most `8 * lambda`;
    /// any selection forces acceptance of `sqrt(2)` times its seminorm.
    pub fn check_criterion(&self, lambda: f64) -> Verdict {
        let first = self.check_antipodal(lambda);
        if !first.accepted {
            return first;
        }
        self.check_corner_shift(lambda)
    }

    /// Exact infimum of the accepted bounds: every constraint is linear in
    /// the bound, so the infimum is the largest constraint ratio.
    pub fn criterion_infimum(&self) -> CriterionBound {
        let n = self.len();
        let mut inf = 0.0f64;
        let mut push = |lhs: f64, brace: f64| {
            if lhs <= 0.0 {
                return;
            }
            inf = inf.max(if brace > 0.0 { lhs / brace } else { f64::INFINITY });
        };
        for x in 0..n {
            for y in x + 1..n {
                if self.antipodal(x, y) {
                    push(self.alphas[x] + self.alphas[y], self.metric.dist(x, y));
                }
            }
        }
        let mut corners = vec![vec![None; n]; n];
        for x in 0..n {
            for xp in 0..n {
                if !self.parallel(x, xp) {
                    corners[x][xp] = Some(self.intersection_point(x, xp).unwrap());
                }
            }
        }
        for x in 0..n {
            for xp in 0..n {
                let Some(wx) = corners[x][xp] else { continue };
                for y in 0..n {
                    for yp in 0..n {
                        let Some(wy) = corners[y][yp] else { continue };
                        for coord in 0..2 {
                            if self.gate(coord, x, xp, false) && self.gate(coord, y, yp, true) {
                                let lhs = if coord == 0 { wx.x - wy.x } else { wx.y - wy.y };
                                push(lhs, self.corner_brace(coord, x, xp, y, yp));
                            }
                        }
                    }
                }
            }
        }
        CriterionBound {
            lambda: inf,
            coverage: self.coverage_status(),
        }
    }

    /// One term of the coordinate-free brace: distance over the crossing
    /// angle, with `0/0 = 0` and positive over zero infinite.
    fn angle_term(&self, x: usize, xp: usize) -> f64 {
        let rho = self.metric.dist(x, xp);
        if rho == 0.0 {
            return 0.0;
        }
        rho / self.normal_determinant(x, xp).abs()
    }

    fn diam4(&self, q: [usize; 4]) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            for j in i + 1..4 {
                d = d.max(self.metric.dist(q[i], q[j]));
            }
        }
        d
    }

    /// Coordinate-free condition: the distance between the intersections
    /// of two pairs of values is bounded by the pair crossing terms plus
    /// the diameter of the four points. Empty intersections count as
    /// distance zero; a parallel pair makes its constraint vacuous.
    pub fn check_coordinate_free(&self, lambda: f64) -> Verdict {
        let n = self.len();
        let slack = lambda_slack(lambda);
        let pairs: Vec<Vec<ConvexSet>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|xp| {
                        intersect(&[
                            ConvexSet::HalfPlane(self.half_plane(x)),
                            ConvexSet::HalfPlane(self.half_plane(xp)),
                        ])
                    })
                    .collect()
            })
            .collect();
        for x in 0..n {
            for xp in 0..n {
                for y in 0..n {
                    for yp in 0..n {
                        let brace = self.angle_term(x, xp)
                            + self.angle_term(y, yp)
                            + self.diam4([x, xp, y, yp]);
                        if brace.is_infinite() {
                            continue;
                        }
                        let d = dist_linf(&pairs[x][xp], &pairs[y][yp]);
                        if d > lambda * brace + slack {
                            return Verdict {
                                accepted: false,
                                witness: Some(Witness::CoordinateGap {
                                    x,
                                    xp,
                                    y,
                                    yp,
                                    coord: 0,
                                    excess: d - lambda * brace,
                                }),
                            };
                        }
                    }
                }
            }
        }
        Verdict {
            accepted: true,
            witness: None,
        }
    }

    /// Largest ratio of intersection distance to brace; the infimum of the
    /// bounds accepted by the coordinate-free condition.
    pub fn coordinate_free_infimum(&self) -> f64 {
        let n = self.len();
        let pairs: Vec<Vec<ConvexSet>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|xp| {
                        intersect(&[
                            ConvexSet::HalfPlane(self.half_plane(x)),
                            ConvexSet::HalfPlane(self.half_plane(xp)),
                        ])
                    })
                    .collect()
            })
            .collect();
        let mut inf = 0.0f64;
        for x in 0..n {
            for xp in 0..n {
                for y in 0..n {
                    for yp in 0..n {
                        let brace = self.angle_term(x, xp)
                            + self.angle_term(y, yp)
                            + self.diam4([x, xp, y, yp]);
                        if brace.is_infinite() {
                            continue;
                        }
                        let d = dist_linf(&pairs[x][xp], &pairs[y][yp]);
                        if d <= 0.0 {
                            continue;
                        }
                        inf = inf.max(if brace > 0.0 { d / brace } else { f64::INFINITY });
                    }
                }
            }
        }
        inf
    }

    /// Coverage facts for the sufficiency direction: the origin lies
    /// strictly inside the hull of the normals exactly when no half-circle
    /// contains them all, which needs at least three distinct directions.
    pub fn coverage_status(&self) -> CoverageStatus {
        let mut angles: Vec<f64> = self.normals.iter().map(|n| n.y.atan2(n.x)).collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() <= DIRECTION_TOL);
        if angles.len() >= 2
            && (angles[angles.len() - 1] - angles[0] - std::f64::consts::TAU).abs()
                <= DIRECTION_TOL
        {
            angles.pop();
        }
        let covered = angles.len() >= 3 && {
            let mut max_gap = 0.0f64;
            for i in 0..angles.len() {
                let next = if i + 1 == angles.len() {
                    angles[0] + std::f64::consts::TAU
                } else {
                    angles[i + 1]
                };
                max_gap = max_gap.max(next - angles[i]);
            }
            max_gap < std::f64::consts::PI
        };
        CoverageStatus {
            finite: true,
            hull_contains_origin: covered,
        }
    }
}

/// The coordinate-free condition lifted to bounded polygon maps: it must
/// hold for every choice of one supporting edge half-plane per slot in the
/// quadruple. Singleton vertices contribute their four axis supports.
pub fn polygon_edge_criterion(map: &SetMap, lambda: f64) -> Result<Verdict, String> {
    if map.kind() != Kind::Polygon {
        return Err("the edge criterion needs a polygon-valued map".into());
    }
    let n = map.len();
    let slack = lambda_slack(lambda);
    let edges: Vec<Vec<HalfPlane>> = map.values().iter().map(|s| s.half_planes()).collect();
    // pairwise wedge intersections per choice of one edge at each point
    let mut wedges: Vec<Vec<Vec<Vec<ConvexSet>>>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut per_xp = Vec::with_capacity(n);
        for xp in 0..n {
            let mut per_e = Vec::with_capacity(edges[x].len());
            for ex in &edges[x] {
                let mut per_ep = Vec::with_capacity(edges[xp].len());
                for exp in &edges[xp] {
                    per_ep.push(intersect(&[
                        ConvexSet::HalfPlane(ex.clone()),
                        ConvexSet::HalfPlane(exp.clone()),
                    ]));
                }
                per_e.push(per_ep);
            }
            per_xp.push(per_e);
        }
        wedges.push(per_xp);
    }
    let det = |a: &HalfPlane, b: &HalfPlane| a.n.x * b.n.y - a.n.y * b.n.x;
    let term = |rho: f64, a: &HalfPlane, b: &HalfPlane| {
        if rho == 0.0 {
            0.0
        } else {
            rho / det(a, b).abs()
        }
    };
    for x in 0..n {
        for xp in 0..n {
            let rx = map.metric().dist(x, xp);
            for y in 0..n {
                for yp in 0..n {
                    let ry = map.metric().dist(y, yp);
                    let diam = {
                        let q = [x, xp, y, yp];
                        let mut d = 0.0f64;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                d = d.max(map.metric().dist(q[i], q[j]));
                            }
                        }
                        d
                    };
                    for (ie, ex) in edges[x].iter().enumerate() {
                        for (iep, exp) in edges[xp].iter().enumerate() {
                            let tx = term(rx, ex, exp);
                            if tx.is_infinite() {
                                continue;
                            }
                            for (ig, ey) in edges[y].iter().enumerate() {
                                for (igp, eyp) in edges[yp].iter().enumerate() {
                                    let ty = term(ry, ey, eyp);
                                    if ty.is_infinite() {
                                        continue;
                                    }
                                    let brace = tx + ty + diam;
                                    let d = dist_linf(
                                        &wedges[x][xp][ie][iep],
                                        &wedges[y][yp][ig][igp],
                                    );
                                    if d > lambda * brace + slack {
                                        return Ok(Verdict {
                                            accepted: false,
                                            witness: Some(Witness::CoordinateGap {
                                                x,
                                                xp,
                                                y,
                                                yp,
                                                coord: 0,
                                                excess: d - lambda * brace,
                                            }),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict {
        accepted: true,
        witness: None,
    })
}
