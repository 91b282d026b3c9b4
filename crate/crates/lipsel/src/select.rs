//! Constructive selection algorithms: a pairwise/quadruple decision
//! procedure, an envelope-and-projection construction, refinement-based
//! selections, pointwise nonemptiness criteria, and a near-optimal search.

use crate::geom::{
    dist_linf, intersect, metric_projection_linf, steiner_point, ConvexSet, Point, Rect,
    EMPTY_SLACK, MEMBERSHIP_TOL,
};
use crate::lambda_slack;
use crate::metric::PseudoMetric;
use crate::refine::{iterate_refine, refine_values, SetMap};

/// One plane point per metric point, with its measured seminorm.
#[derive(Debug, Clone)]
pub struct Selection {
    pub points: Vec<Point>,
    pub seminorm: f64,
}

impl Selection {
    pub fn measured(metric: &PseudoMetric, points: Vec<Point>) -> Self {
        let seminorm = seminorm_2d(metric, &points);
        Self { points, seminorm }
    }
}

/// Measured max-norm seminorm of plane values over the metric. Pairs at
/// distance zero tolerate an absolute gap of `MEMBERSHIP_TOL` (counted as
/// zero); anything larger makes the seminorm infinite.
pub fn seminorm_2d(metric: &PseudoMetric, f: &[Point]) -> f64 {
    assert_eq!(metric.len(), f.len());
    let mut sup = 0.0f64;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let diff = f[i].linf_dist(f[j]);
            let rho = metric.dist(i, j);
            if rho == 0.0 {
                if diff > MEMBERSHIP_TOL {
                    return f64::INFINITY;
                }
            } else {
                sup = sup.max(diff / rho);
            }
        }
    }
    sup
}

/// Why a requested seminorm bound was rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// The values at `x` and `y` sit farther apart than the bound allows.
    PairDistance { x: usize, y: usize, dist: f64, allowed: f64 },
    /// Coordinate `coord` of the pair rectangle at `(x, xp)` starts
    /// `excess` above the reach of the one at `(y, yp)`.
    CoordinateGap {
        x: usize,
        xp: usize,
        y: usize,
        yp: usize,
        coord: usize,
        excess: f64,
    },
}

/// Outcome of the decision procedure; a rejection carries its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub accepted: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn accept() -> Self {
        Verdict {
            accepted: true,
            witness: None,
        }
    }

    fn reject(witness: Witness) -> Self {
        Verdict {
            accepted: false,
            witness: Some(witness),
        }
    }
}

fn require_bounded_kind(map: &SetMap, what: &str) -> Result<(), String> {
    if map.kind().is_bounded() {
        Ok(())
    } else {
        Err(format!(
            "{what} needs bounded values; use the half-plane criteria for half-plane maps"
        ))
    }
}

/// Bounding boxes of all ordered pair intersections
/// `F(x) ∩ (F(xp) + (lambda * rho(x, xp) + extra) * square)`;
/// `None` where the intersection is empty.
fn pair_hulls(map: &SetMap, lambda: f64, extra: f64) -> Vec<Vec<Option<Rect>>> {
    let n = map.len();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|xp| {
                    let r = lambda * map.metric().dist(x, xp) + extra;
                    let a = intersect(&[
                        map.values()[x].clone(),
                        map.values()[xp].minkowski_square(r),
                    ]);
                    a.rect_hull()
                })
                .collect()
        })
        .collect()
}

/// Decide whether a selection with seminorm at most `8 * lambda` exists,
/// and certify that none with seminorm below `lambda` does on rejection.
/// Checks every pair of values for distance and every ordered quadruple
/// for the rectangle inequalities.
pub fn decide(map: &SetMap, lambda: f64) -> Result<Verdict, String> {
    require_bounded_kind(map, "the decision procedure")?;
    assert!(lambda >= 0.0 && lambda.is_finite());
    let n = map.len();
    let slack = lambda_slack(lambda);
    for x in 0..n {
        for y in x + 1..n {
            let d = dist_linf(&map.values()[x], &map.values()[y]);
            let allowed = lambda * map.metric().dist(x, y) + slack;
            if d > allowed {
                return Ok(Verdict::reject(Witness::PairDistance { x, y, dist: d, allowed }));
            }
        }
    }
    // the extra fattening keeps each pair set nonempty at the slack
    // boundary the distance check just admitted
    let hulls = pair_hulls(map, lambda, slack);
    for (x, row) in hulls.iter().enumerate() {
        for (y, h) in row.iter().enumerate() {
            if h.is_none() {
                return Ok(Verdict::reject(Witness::PairDistance {
                    x,
                    y,
                    dist: dist_linf(&map.values()[x], &map.values()[y]),
                    allowed: lambda * map.metric().dist(x, y) + slack,
                }));
            }
        }
    }
    for x in 0..n {
        for xp in 0..n {
            let rx = hulls[x][xp].as_ref().unwrap();
            for y in 0..n {
                let allowed = lambda * map.metric().dist(x, y) + slack;
                for yp in 0..n {
                    let ry = hulls[y][yp].as_ref().unwrap();
                    for (coord, (a, b)) in
                        [(rx.x.lo, ry.x.hi), (rx.y.lo, ry.y.hi)].into_iter().enumerate()
                    {
                        if a - b > allowed {
                            return Ok(Verdict::reject(Witness::CoordinateGap {
                                x,
                                xp,
                                y,
                                yp,
                                coord,
                                excess: a - b - lambda * map.metric().dist(x, y),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::accept())
}

/// Which extreme envelope drives the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Envelope {
    Upper,
    Lower,
}

/// Construct a selection with seminorm at most `8 * lambda`, given that
/// `decide` accepts `lambda`. The refinement at `3 * lambda` is guaranteed
/// nonempty; a Lipschitz choice inside its bounding boxes comes from a
/// one-dimensional envelope per coordinate, and the final point is the
/// diagonal metric projection of that choice onto the refined set.
pub fn construct(map: &SetMap, lambda: f64) -> Result<Selection, String> {
    construct_with(map, lambda, Envelope::Upper)
}

pub fn construct_with(map: &SetMap, lambda: f64, envelope: Envelope) -> Result<Selection, String> {
    let verdict = decide(map, lambda)?;
    if !verdict.accepted {
        return Err(format!(
            "no selection with seminorm below {lambda}: {:?}",
            verdict.witness.unwrap()
        ));
    }
    let n = map.len();
    let stage = refine_values(map.metric(), map.values(), 3.0 * lambda);
    let mut hulls = Vec::with_capacity(n);
    for (i, s) in stage.iter().enumerate() {
        hulls.push(
            s.rect_hull()
                .ok_or_else(|| format!("refined value at point {i} is empty"))?,
        );
    }
    let coord = |r: &Rect, j: usize| if j == 0 { r.x } else { r.y };
    let g: Vec<Point> = (0..n)
        .map(|x| {
            let pick = |j: usize| {
                let v = match envelope {
                    Envelope::Upper => (0..n)
                        .map(|y| coord(&hulls[y], j).hi + lambda * map.metric().dist(x, y))
                        .fold(f64::INFINITY, f64::min),
                    Envelope::Lower => (0..n)
                        .map(|y| coord(&hulls[y], j).lo - lambda * map.metric().dist(x, y))
                        .fold(f64::NEG_INFINITY, f64::max),
                };
                v.clamp(coord(&hulls[x], j).lo, coord(&hulls[x], j).hi)
            };
            Point::new(pick(0), pick(1))
        })
        .collect();
    let mut points = Vec::with_capacity(n);
    for (gx, s) in g.iter().zip(&stage) {
        points.push(metric_projection_linf(*gx, s).map_err(|e| e.to_string())?);
    }
    Ok(Selection::measured(map.metric(), points))
}

fn stage_two(map: &SetMap, lambda: f64) -> Result<Vec<ConvexSet>, String> {
    let trace = iterate_refine(map, &[lambda, 3.0 * lambda]);
    if let Some(&i) = trace.empty_points.last().unwrap().first() {
        return Err(format!(
            "twice-refined value at point {i} (id {}) is empty",
            map.metric().id(i)
        ));
    }
    Ok(trace.stages.into_iter().next_back().unwrap())
}

/// Selection through the centers of the bounding boxes of the second
/// refinement stage (parameters `lambda`, then `3 * lambda`). When every
/// four-point restriction admits a selection with seminorm `lambda`, the
/// result is a selection with seminorm at most `15 * lambda`.
pub fn select_hull_center(map: &SetMap, lambda: f64) -> Result<Selection, String> {
    require_bounded_kind(map, "the hull-center selection")?;
    let stage = stage_two(map, lambda)?;
    let points = stage
        .iter()
        .map(|s| s.rect_hull().expect("nonempty stage").center())
        .collect();
    Ok(Selection::measured(map.metric(), points))
}

/// Midpoints of the twice-refined segments; same bound as the hull-center
/// selection on segment-valued maps.
pub fn select_segment_midpoint(map: &SetMap, lambda: f64) -> Result<Selection, String> {
    if map.kind() != crate::refine::Kind::Segment {
        return Err("the midpoint selection needs a segment-valued map".into());
    }
    let stage = stage_two(map, lambda)?;
    let mut points = Vec::with_capacity(stage.len());
    for (i, s) in stage.iter().enumerate() {
        // a refined segment may collapse to a point, which the
        // intersection kernel returns as a one-vertex polygon
        let p = match s {
            ConvexSet::Segment(seg) => seg.midpoint(),
            other => match other.vertices().as_deref() {
                Some([p]) => *p,
                Some([a, b]) => Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y)),
                _ => {
                    return Err(format!(
                        "twice-refined value at point {i} is not a segment: {other:?}"
                    ))
                }
            },
        };
        points.push(p);
    }
    Ok(Selection::measured(map.metric(), points))
}

/// Steiner points of the twice-refined values. Membership is guaranteed;
/// the seminorm is reported as measured, with no sharper advance bound.
pub fn select_steiner(map: &SetMap, lambda: f64) -> Result<Selection, String> {
    require_bounded_kind(map, "the Steiner selection")?;
    let stage = stage_two(map, lambda)?;
    let mut points = Vec::with_capacity(stage.len());
    for s in &stage {
        points.push(steiner_point(s).map_err(|e| e.to_string())?);
    }
    Ok(Selection::measured(map.metric(), points))
}

/// The two pointwise nonemptiness tests: box chains intersect the pair
/// rectangles fattened back to the probe point; set chains do the same
/// with the exact pair intersections instead of their bounding boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseFamily {
    BoxChains,
    SetChains,
}

/// Per-point nonemptiness of the chain intersection at `lambda`. A point
/// that fails cannot carry any selection with seminorm below `lambda`;
/// all points passing certifies a selection with a constant-factor larger
/// seminorm.
pub fn pointwise_criterion(
    map: &SetMap,
    lambda: f64,
    family: PointwiseFamily,
) -> Result<Vec<bool>, String> {
    require_bounded_kind(map, "the pointwise criteria")?;
    assert!(lambda >= 0.0 && lambda.is_finite());
    let n = map.len();
    match family {
        PointwiseFamily::BoxChains => {
            let hulls = pair_hulls(map, lambda, 0.0);
            Ok((0..n)
                .map(|x| {
                    let mut lo = [f64::NEG_INFINITY; 2];
                    let mut hi = [f64::INFINITY; 2];
                    for y in 0..n {
                        let r = lambda * map.metric().dist(x, y);
                        for yp in 0..n {
                            let Some(rect) = &hulls[y][yp] else {
                                return false;
                            };
                            for (j, iv) in [rect.x, rect.y].into_iter().enumerate() {
                                lo[j] = lo[j].max(iv.lo - r);
                                hi[j] = hi[j].min(iv.hi + r);
                            }
                        }
                    }
                    (0..2).all(|j| lo[j] <= hi[j] + EMPTY_SLACK)
                })
                .collect())
        }
        PointwiseFamily::SetChains => {
            let pairs: Vec<Vec<ConvexSet>> = (0..n)
                .map(|y| {
                    (0..n)
                        .map(|yp| {
                            let r = lambda * map.metric().dist(yp, y);
                            intersect(&[
                                map.values()[y].clone(),
                                map.values()[yp].minkowski_square(r),
                            ])
                        })
                        .collect()
                })
                .collect();
            Ok((0..n)
                .map(|x| {
                    let mut family = Vec::with_capacity(n * n);
                    for (y, row) in pairs.iter().enumerate() {
                        let r = lambda * map.metric().dist(x, y);
                        for s in row {
                            if s.is_empty() {
                                return false;
                            }
                            family.push(s.minkowski_square(r));
                        }
                    }
                    !intersect(&family).is_empty()
                })
                .collect())
        }
    }
}

/// The largest optimal seminorm over all restrictions to at most four
/// points. The global optimum never exceeds four times this bound.
pub fn four_point_bound(map: &SetMap) -> f64 {
    let n = map.len();
    let mut best = 0.0f64;
    let mut run = |sub: &[usize]| {
        best = best.max(crate::oracle::optimal_on_subset(map, sub).lambda_star);
    };
    for i in 0..n {
        for j in i + 1..n {
            run(&[i, j]);
            for k in j + 1..n {
                run(&[i, j, k]);
                for l in k + 1..n {
                    run(&[i, j, k, l]);
                }
            }
        }
    }
    best
}

/// Result of the near-optimal search. `monotone` is false when acceptance
/// failed to be monotone on the validation probes and the search fell
/// back to a dense grid scan.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub lambda_hat: f64,
    pub selection: Selection,
    pub monotone: bool,
}

/// Find the smallest accepted bound by bisection to relative `tol`, then
/// return the constructed selection at that bound. The true optimum lies
/// within a factor of eight of the result in both directions.
pub fn near_optimal(map: &SetMap, tol: f64) -> Result<SearchReport, String> {
    require_bounded_kind(map, "the near-optimal search")?;
    assert!(tol > 0.0 && tol.is_finite());
    let n = map.len();
    let mut dmax = 0.0f64;
    let mut rho_min = f64::INFINITY;
    for x in 0..n {
        for y in x + 1..n {
            dmax = dmax.max(dist_linf(&map.values()[x], &map.values()[y]));
            let rho = map.metric().dist(x, y);
            if rho > 0.0 {
                rho_min = rho_min.min(rho);
            }
        }
    }
    let mut hi = if rho_min.is_finite() {
        dmax / rho_min + 1.0
    } else {
        1.0
    };
    let accept = |l: f64| decide(map, l).map(|v| v.accepted);
    let mut guard = 0;
    while !accept(hi)? {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err("no accepted bound found below astronomical scale".into());
        }
    }
    let mut lo = 0.0;
    if accept(0.0)? {
        hi = 0.0;
    }
    guard = 0;
    while hi - lo > tol * (1.0 + hi) {
        let mid = 0.5 * (lo + hi);
        if accept(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        guard += 1;
        if guard > 200 {
            break;
        }
    }
    let mut lambda_hat = hi;
    let mut monotone = true;
    for k in 1..=4 {
        let probe = lambda_hat + (k as f64 / 4.0) * (lambda_hat.max(1.0));
        if !accept(probe)? {
            monotone = false;
        }
    }
    if lo > 0.0 {
        for k in 1..=3 {
            let probe = lo * (k as f64 / 4.0);
            if accept(probe)? {
                monotone = false;
            }
        }
    }
    if !monotone {
        // conservative fallback: the smallest grid value from which
        // acceptance never flips back off
        let steps = 128;
        let top = lambda_hat + lambda_hat.max(1.0);
        let flags: Vec<bool> = (0..=steps)
            .map(|k| accept(top * k as f64 / steps as f64))
            .collect::<Result<_, _>>()?;
        let mut cut = steps;
        while cut > 0 && flags[cut - 1] {
            cut -= 1;
        }
        lambda_hat = top * cut as f64 / steps as f64;
    }
    let selection = construct(map, lambda_hat)?;
    Ok(SearchReport {
        lambda_hat,
        selection,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{optimal_selection, Status};
    use crate::refine::Kind;
    use crate::sample;
    use crate::geom::{HalfPlane, Polygon, Segment};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_point(rho: f64, a: ConvexSet, b: ConvexSet, kind: Kind) -> SetMap {
        let m = PseudoMetric::new(
            vec!["x".into(), "y".into()],
            vec![vec![0.0, rho], vec![rho, 0.0]],
        )
        .unwrap();
        SetMap::new(m, vec![a, b], kind).unwrap()
    }

    fn singletons() -> SetMap {
        two_point(
            1.0,
            ConvexSet::point(Point::new(0.0, 0.0)),
            ConvexSet::point(Point::new(2.0, 0.0)),
            Kind::Polygon,
        )
    }

    #[test]
    fn decision_on_two_singletons() {
        let map = singletons();
        assert!(decide(&map, 2.0).unwrap().accepted);
        let verdict = decide(&map, 1.9).unwrap();
        assert!(!verdict.accepted);
        match verdict.witness.unwrap() {
            Witness::PairDistance { x, y, dist, .. } => {
                assert_eq!((x, y), (0, 1));
                assert!((dist - 2.0).abs() < 1e-12);
            }
            w => panic!("expected a pair witness, got {w:?}"),
        }
    }

    #[test]
    fn constant_maps_accept_everything() {
        let m = sample::positive_metric(&mut ChaCha8Rng::seed_from_u64(51), 4, 1.0);
        let v = ConvexSet::Polygon(
            Polygon::hull(&[
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.5, 1.0),
            ])
            .unwrap(),
        );
        let map = SetMap::new(m, vec![v; 4], Kind::Polygon).unwrap();
        assert!(decide(&map, 0.0).unwrap().accepted);
        let sel = construct(&map, 0.0).unwrap();
        assert!(sel.seminorm <= 1e-9);
    }

    #[test]
    fn half_plane_maps_are_refused() {
        let map = two_point(
            1.0,
            ConvexSet::HalfPlane(HalfPlane::new(1.0, 0.0, 0.0).unwrap()),
            ConvexSet::HalfPlane(HalfPlane::new(-1.0, 0.0, 1.0).unwrap()),
            Kind::HalfPlane,
        );
        assert!(decide(&map, 1.0).is_err());
        assert!(construct(&map, 1.0).is_err());
        assert!(near_optimal(&map, 1e-3).is_err());
    }

    #[test]
    fn construction_recovers_forced_selections() {
        let map = singletons();
        let sel = construct(&map, 2.0).unwrap();
        assert!(sel.points[0].linf_dist(Point::new(0.0, 0.0)) < 1e-9);
        assert!(sel.points[1].linf_dist(Point::new(2.0, 0.0)) < 1e-9);
        assert!((sel.seminorm - 2.0).abs() < 1e-9);
        assert!(construct(&map, 1.9).is_err());
    }

    #[test]
    fn decision_matches_the_oracle_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for case in 0..120 {
            let n = rng.gen_range(2..6);
            let map = match case % 3 {
                0 => sample::polygon_map(&mut rng, n, 6, 2.0),
                1 => sample::box_map(&mut rng, n, 2.0),
                _ => sample::segment_map(&mut rng, n, 2.0),
            };
            let opt = optimal_selection(&map);
            assert_eq!(opt.status, Status::Optimal);
            let star = opt.lambda_star;
            assert!(
                decide(&map, star * (1.0 + 1e-6)).unwrap().accepted,
                "must accept the optimum"
            );
            assert!(
                decide(&map, star * (1.0 + 1e-3)).unwrap().accepted,
                "must accept above the optimum"
            );
            let low = star / 8.0 - 1e-6;
            if low > 0.0 {
                assert!(
                    !decide(&map, low * (1.0 - 1e-6)).unwrap().accepted,
                    "below an eighth of the optimum no certificate can exist"
                );
            }
            // soundness at a few accepted levels
            for factor in [1.0 + 1e-6, 1.5, 4.0] {
                let l = star * factor + 1e-12;
                if decide(&map, l).unwrap().accepted {
                    let sel = construct(&map, l).unwrap();
                    assert!(sel.seminorm <= 8.0 * l + 1e-6);
                    for (p, set) in sel.points.iter().zip(map.values()) {
                        assert!(set.contains(*p, MEMBERSHIP_TOL));
                    }
                }
            }
            // rejections never contradict the oracle
            for _ in 0..4 {
                let l = rng.gen_range(0.0..star.max(1e-6) * 2.0);
                if !decide(&map, l).unwrap().accepted {
                    assert!(l <= star + lambda_slack(star));
                }
            }
        }
    }

    #[test]
    fn lower_envelope_also_works() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..40 {
            let n = rng.gen_range(2..5);
            let map = sample::polygon_map(&mut rng, n, 5, 2.0);
            let star = optimal_selection(&map).lambda_star;
            let l = star * 1.5 + 1e-9;
            let sel = construct_with(&map, l, Envelope::Lower).unwrap();
            assert!(sel.seminorm <= 8.0 * l + 1e-6);
            for (p, set) in sel.points.iter().zip(map.values()) {
                assert!(set.contains(*p, MEMBERSHIP_TOL));
            }
        }
    }

    #[test]
    fn hull_center_of_a_single_triangle() {
        let m = PseudoMetric::new(vec!["x".into()], vec![vec![0.0]]).unwrap();
        let v = ConvexSet::Polygon(
            Polygon::hull(&[
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(0.0, 2.0),
            ])
            .unwrap(),
        );
        let map = SetMap::new(m, vec![v], Kind::Polygon).unwrap();
        let sel = select_hull_center(&map, 1.0).unwrap();
        assert!(sel.points[0].linf_dist(Point::new(1.0, 1.0)) < 1e-12);
        assert_eq!(sel.seminorm, 0.0);
    }

    #[test]
    fn hull_center_matches_the_stage_boxes_and_stays_short() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for _ in 0..60 {
            let n = rng.gen_range(2..6);
            let map = sample::anchored_polygon_map(&mut rng, n, 1.5);
            let sel = select_hull_center(&map, 1.0).unwrap();
            for (p, set) in sel.points.iter().zip(map.values()) {
                assert!(set.contains(*p, MEMBERSHIP_TOL));
            }
            assert!(sel.seminorm <= 15.0 + 1e-6);
            let trace = iterate_refine(&map, &[1.0, 3.0]);
            for (p, s) in sel.points.iter().zip(trace.last_stage()) {
                let c = s.rect_hull().unwrap().center();
                assert!(p.linf_dist(c) < 1e-12, "selection is the stage box center");
            }
        }
    }

    #[test]
    fn hull_center_names_the_empty_point() {
        let map = two_point(
            1.0,
            ConvexSet::point(Point::new(0.0, 0.0)),
            ConvexSet::point(Point::new(9.0, 0.0)),
            Kind::Polygon,
        );
        let err = select_hull_center(&map, 1.0).unwrap_err();
        assert!(err.contains("empty"), "{err}");
    }

    #[test]
    fn segment_midpoints_select_within_the_segments() {
        let seg = Segment::new(Point::new(0.0, 0.0), Point::new(2.0, 2.0));
        let m = sample::positive_metric(&mut ChaCha8Rng::seed_from_u64(55), 3, 1.0);
        let map = SetMap::new(m, vec![ConvexSet::Segment(seg); 3], Kind::Segment).unwrap();
        let sel = select_segment_midpoint(&map, 1.0).unwrap();
        for p in &sel.points {
            assert!(p.linf_dist(Point::new(1.0, 1.0)) < 1e-12);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(56);
        for _ in 0..60 {
            let n = rng.gen_range(2..6);
            let map = sample::anchored_segment_map(&mut rng, n, 1.5);
            let sel = select_segment_midpoint(&map, 1.0).unwrap();
            for (p, set) in sel.points.iter().zip(map.values()) {
                assert!(set.contains(*p, MEMBERSHIP_TOL));
            }
            assert!(sel.seminorm <= 15.0 + 1e-6);
        }
    }

    #[test]
    fn steiner_selection_is_a_membership_selection() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        for _ in 0..60 {
            let n = rng.gen_range(2..6);
            let map = sample::anchored_polygon_map(&mut rng, n, 1.5);
            let sel = select_steiner(&map, 1.0).unwrap();
            for (p, set) in sel.points.iter().zip(map.values()) {
                assert!(set.contains(*p, MEMBERSHIP_TOL));
            }
            assert!(sel.seminorm.is_finite());
        }
    }

    #[test]
    fn pointwise_criteria_bracket_the_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(58);
        for case in 0..50 {
            let n = rng.gen_range(2..5);
            let map = if case % 2 == 0 {
                sample::polygon_map(&mut rng, n, 5, 2.0)
            } else {
                sample::box_map(&mut rng, n, 2.0)
            };
            let star = optimal_selection(&map).lambda_star;
            for family in [PointwiseFamily::BoxChains, PointwiseFamily::SetChains] {
                let at_star = pointwise_criterion(&map, star * (1.0 + 1e-6), family).unwrap();
                assert!(at_star.iter().all(|&b| b), "all points pass at the optimum");
                let low = star / 8.0 * (1.0 - 1e-3);
                if low > 1e-9 {
                    let at_low = pointwise_criterion(&map, low, family).unwrap();
                    assert!(
                        at_low.iter().any(|&b| !b),
                        "an eighth of the optimum must fail somewhere"
                    );
                }
            }
        }
        let single = SetMap::new(
            PseudoMetric::new(vec!["x".into()], vec![vec![0.0]]).unwrap(),
            vec![ConvexSet::point(Point::new(1.0, 1.0))],
            Kind::Polygon,
        )
        .unwrap();
        for family in [PointwiseFamily::BoxChains, PointwiseFamily::SetChains] {
            assert_eq!(pointwise_criterion(&single, 0.0, family).unwrap(), vec![true]);
        }
    }

    #[test]
    fn quadruple_condition_transfers_to_triple_hulls() {
        // accepted quadruple inequalities force the triple-indexed hulls
        // at three times the bound to move slowly: sampled sextuples
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..25 {
            let n = rng.gen_range(2..5);
            let map = sample::polygon_map(&mut rng, n, 5, 2.0);
            let star = optimal_selection(&map).lambda_star;
            let l = star * (1.0 + 1e-6) + 1e-12;
            assert!(decide(&map, l).unwrap().accepted);
            let w = |x: usize, xp: usize, xpp: usize| -> Rect {
                let a = intersect(&[
                    map.values()[xp].minkowski_square(3.0 * l * map.metric().dist(xp, x)),
                    map.values()[xpp].minkowski_square(3.0 * l * map.metric().dist(xpp, x)),
                ]);
                a.rect_hull().expect("triple set contains the refinement")
            };
            for _ in 0..150 {
                let pick = |rng: &mut ChaCha8Rng| {
                    (
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                    )
                };
                let (x, xp, xpp) = pick(&mut rng);
                let (y, yp, ypp) = pick(&mut rng);
                let dist = w(x, xp, xpp).dist(&w(y, yp, ypp));
                assert!(
                    dist <= l * map.metric().dist(x, y) + 1e-7 * (1.0 + l),
                    "triple hulls move within the bound"
                );
            }
        }
    }

    #[test]
    fn four_point_bound_brackets_the_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for _ in 0..25 {
            let map = sample::polygon_map(&mut rng, 6, 5, 2.0);
            let bound = four_point_bound(&map);
            let star = optimal_selection(&map).lambda_star;
            assert!(bound <= star + 1e-7 * (1.0 + star), "restrictions are easier");
            assert!(star <= 4.0 * bound + 1e-6, "four points see the worst quarter");
        }
        for n in 2..=4 {
            let map = sample::polygon_map(&mut rng, n, 5, 2.0);
            let bound = four_point_bound(&map);
            let star = optimal_selection(&map).lambda_star;
            assert!(
                (bound - star).abs() <= 1e-7 * (1.0 + star),
                "at four points or fewer the bound is the optimum"
            );
        }
        let m = sample::positive_metric(&mut rng, 3, 1.0);
        let v = ConvexSet::point(Point::new(0.5, -0.5));
        let constant = SetMap::new(m, vec![v; 3], Kind::Polygon).unwrap();
        assert!(four_point_bound(&constant) <= 1e-9);
    }

    #[test]
    fn near_optimal_search_lands_on_the_certificate_edge() {
        let map = singletons();
        let report = near_optimal(&map, 1e-6).unwrap();
        assert!((report.lambda_hat - 2.0).abs() <= 1e-4);
        assert!(report.monotone);
        assert!(report.selection.seminorm <= 8.0 * report.lambda_hat + 1e-6);

        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..30 {
            let n = rng.gen_range(2..5);
            let map = sample::box_map(&mut rng, n, 2.0);
            let star = optimal_selection(&map).lambda_star;
            let report = near_optimal(&map, 1e-6).unwrap();
            assert!(
                report.lambda_hat <= star + 1e-4 * (1.0 + star),
                "the certificate edge sits at or below the optimum"
            );
            assert!(report.selection.seminorm <= 8.0 * report.lambda_hat + 1e-6);
            for (p, set) in report.selection.points.iter().zip(map.values()) {
                assert!(set.contains(*p, MEMBERSHIP_TOL));
            }
        }

        let m = sample::positive_metric(&mut rng, 3, 1.0);
        let v = ConvexSet::point(Point::new(1.0, 2.0));
        let constant = SetMap::new(m, vec![v; 3], Kind::Polygon).unwrap();
        let report = near_optimal(&constant, 1e-6).unwrap();
        assert_eq!(report.lambda_hat, 0.0);
    }
}
