//! Balanced refinement of set-valued maps: each value is cut down to the
//! part reachable from every other value, the operation behind both the
//! selection algorithms and the core construction.

use serde::{Deserialize, Serialize};

use crate::geom::{hausdorff_linf, intersect, ConvexSet, GeomError};
use crate::lambda_slack;
use crate::metric::PseudoMetric;

/// Declared shape of a map's values. Refinement stages may materialize
/// differently (a box cut by a polygon is a polygon); the tag records what
/// the source map was, which decides algorithm dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Polygon,
    Segment,
    Box,
    HalfPlane,
    Interval,
}

impl Kind {
    pub fn matches(self, set: &ConvexSet) -> bool {
        matches!(
            (self, set),
            (Kind::Polygon, ConvexSet::Polygon(_))
                | (Kind::Segment, ConvexSet::Segment(_))
                | (Kind::Box, ConvexSet::Rect(_))
                | (Kind::HalfPlane, ConvexSet::HalfPlane(_))
                | (Kind::Interval, ConvexSet::Interval(_))
        )
    }

    /// Kinds whose values are bounded sets, the ones the decision and
    /// construction algorithms accept.
    pub fn is_bounded(self) -> bool {
        !matches!(self, Kind::HalfPlane)
    }
}

/// A convex value for every point of the metric, all of one kind.
#[derive(Debug, Clone)]
pub struct SetMap {
    metric: PseudoMetric,
    values: Vec<ConvexSet>,
    kind: Kind,
}

impl SetMap {
    pub fn new(metric: PseudoMetric, values: Vec<ConvexSet>, kind: Kind) -> Result<Self, String> {
        if metric.len() != values.len() {
            return Err(format!(
                "metric has {} points but {} values were given",
                metric.len(),
                values.len()
            ));
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_empty() {
                return Err(format!("value at point {i} is empty"));
            }
            if !kind.matches(v) {
                return Err(format!("value at point {i} does not match kind {kind:?}"));
            }
        }
        Ok(Self { metric, values, kind })
    }

    pub fn metric(&self) -> &PseudoMetric {
        &self.metric
    }

    pub fn values(&self) -> &[ConvexSet] {
        &self.values
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The map induced on a subset of the points (indices into the metric).
    pub fn restrict(&self, subset: &[usize]) -> SetMap {
        let values = subset.iter().map(|&i| self.values[i].clone()).collect();
        SetMap {
            metric: self.metric.restrict(subset),
            values,
            kind: self.kind,
        }
    }
}

/// One refinement step over raw values. A point whose value already
/// emptied out stays empty; everyone else intersects the fattened values
/// of the points that survive.
pub fn refine_values(metric: &PseudoMetric, values: &[ConvexSet], lambda: f64) -> Vec<ConvexSet> {
    assert!(lambda >= 0.0 && lambda.is_finite());
    (0..values.len())
        .map(|i| {
            if values[i].is_empty() {
                return ConvexSet::Empty;
            }
            let family: Vec<ConvexSet> = (0..values.len())
                .filter(|&j| !values[j].is_empty())
                .map(|j| values[j].minkowski_square(lambda * metric.dist(i, j)))
                .collect();
            intersect(&family)
        })
        .collect()
}

/// The balanced refinement of a map: entries may be `Empty`.
pub fn balanced_refine(map: &SetMap, lambda: f64) -> Vec<ConvexSet> {
    refine_values(&map.metric, &map.values, lambda)
}

/// The stages of repeated refinement; `stages[k]` is the source map
/// refined `k + 1` times, using `lambdas[k]` at the last step.
#[derive(Debug, Clone)]
pub struct RefinementTrace {
    pub lambdas: Vec<f64>,
    pub stages: Vec<Vec<ConvexSet>>,
    pub empty_points: Vec<Vec<usize>>,
}

impl RefinementTrace {
    pub fn last_stage(&self) -> &[ConvexSet] {
        self.stages.last().expect("at least one lambda")
    }

    pub fn all_nonempty(&self) -> bool {
        self.empty_points.iter().all(Vec::is_empty)
    }
}

fn empty_indices(values: &[ConvexSet]) -> Vec<usize> {
    values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.is_empty().then_some(i))
        .collect()
}

/// Refine once per entry of `lambdas`, recording every stage.
pub fn iterate_refine(map: &SetMap, lambdas: &[f64]) -> RefinementTrace {
    assert!(!lambdas.is_empty(), "at least one refinement parameter");
    let mut stages: Vec<Vec<ConvexSet>> = Vec::with_capacity(lambdas.len());
    let mut current = map.values.clone();
    for &l in lambdas {
        current = refine_values(&map.metric, &current, l);
        stages.push(current.clone());
    }
    let empty_points = stages.iter().map(|s| empty_indices(s)).collect();
    RefinementTrace {
        lambdas: lambdas.to_vec(),
        stages,
        empty_points,
    }
}

/// How far a stage map is from being a `gamma`-core: the worst Hausdorff
/// movement per unit distance, and whether every point survived.
#[derive(Debug, Clone)]
pub struct CoreReport {
    pub gamma: f64,
    pub nonempty_ok: bool,
    pub worst_ratio: f64,
    pub worst_pair: Option<(usize, usize)>,
}

impl CoreReport {
    /// The map moves no faster than `gamma` times the metric and has no
    /// empty entries.
    pub fn is_core(&self) -> bool {
        self.nonempty_ok && self.worst_ratio <= self.gamma + lambda_slack(self.gamma)
    }
}

/// Measure the Hausdorff movement of a (possibly partly empty) stage map.
/// Pairs at distance zero must agree within `1e-8`; otherwise the ratio is
/// infinite. Unbounded values are an error.
pub fn core_check(
    metric: &PseudoMetric,
    values: &[ConvexSet],
    gamma: f64,
) -> Result<CoreReport, GeomError> {
    let n = values.len();
    let mut worst_ratio = 0.0f64;
    let mut worst_pair = None;
    for i in 0..n {
        for j in i + 1..n {
            if values[i].is_empty() || values[j].is_empty() {
                continue;
            }
            let dh = hausdorff_linf(&values[i], &values[j])?;
            let rho = metric.dist(i, j);
            let ratio = if rho == 0.0 {
                if dh <= 1e-8 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                dh / rho
            };
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst_pair = Some((i, j));
            }
        }
    }
    Ok(CoreReport {
        gamma,
        nonempty_ok: empty_indices(values).is_empty(),
        worst_ratio,
        worst_pair,
    })
}

/// True when the last stage of `lambdas` is nonempty everywhere and one
/// more refinement with `gamma` moves no set by Hausdorff more than 1e-7.
/// Unbounded or emptied stage sets fail the check.
pub fn stabilization_check(map: &SetMap, lambdas: &[f64], gamma: f64) -> bool {
    let trace = iterate_refine(map, lambdas);
    let last = trace.last_stage();
    if !empty_indices(last).is_empty() {
        return false;
    }
    let next = refine_values(&map.metric, last, gamma);
    last.iter().zip(&next).all(|(a, b)| {
        if b.is_empty() {
            return false;
        }
        match hausdorff_linf(a, b) {
            Ok(d) => d <= 1e-7,
            Err(_) => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Interval, Point, Polygon, Rect, MEMBERSHIP_TOL};
    use crate::sample;
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

    fn boxy(x0: f64, x1: f64, y0: f64, y1: f64) -> ConvexSet {
        ConvexSet::Rect(Rect::new(Interval::new(x0, x1), Interval::new(y0, y1)))
    }

    #[test]
    fn compatible_singletons_stay_put() {
        let map = two_point(
            1.0,
            ConvexSet::point(Point::new(0.0, 0.0)),
            ConvexSet::point(Point::new(2.0, 0.0)),
            Kind::Polygon,
        );
        let got = balanced_refine(&map, 2.0);
        assert_eq!(got, map.values().to_vec());
    }

    #[test]
    fn separated_boxes_empty_out_below_their_gap() {
        let map = two_point(
            1.0,
            boxy(0.0, 1.0, 0.0, 1.0),
            boxy(3.0, 4.0, 3.0, 4.0),
            Kind::Box,
        );
        let got = balanced_refine(&map, 1.0);
        assert!(got[0].is_empty() && got[1].is_empty());
        let got = balanced_refine(&map, 2.0);
        assert_eq!(got[0], boxy(1.0, 1.0, 1.0, 1.0));
        assert_eq!(got[1], boxy(3.0, 3.0, 3.0, 3.0));
    }

    #[test]
    fn refining_at_zero_takes_the_global_intersection() {
        let m = PseudoMetric::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let map = SetMap::new(
            m,
            vec![
                boxy(0.0, 2.0, 0.0, 2.0),
                boxy(1.0, 3.0, 0.0, 2.0),
                boxy(-9.0, 9.0, -9.0, 9.0),
            ],
            Kind::Box,
        )
        .unwrap();
        // fattening by 0 * rho leaves every value as-is, so each point
        // receives the intersection of the whole family
        for got in balanced_refine(&map, 0.0) {
            assert_eq!(got, boxy(1.0, 2.0, 0.0, 2.0));
        }
    }

    #[test]
    fn single_point_space_never_changes() {
        let m = PseudoMetric::new(vec!["x".into()], vec![vec![0.0]]).unwrap();
        let v = ConvexSet::Polygon(
            Polygon::hull(&[
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(0.0, 2.0),
            ])
            .unwrap(),
        );
        let map = SetMap::new(m, vec![v.clone()], Kind::Polygon).unwrap();
        let trace = iterate_refine(&map, &[1.0, 3.0, 15.0]);
        for stage in &trace.stages {
            assert_eq!(stage[0], v);
        }
        assert!(trace.all_nonempty());
    }

    #[test]
    fn empty_points_propagate_without_poisoning_the_rest() {
        let map = two_point(
            1.0,
            boxy(0.0, 1.0, 0.0, 1.0),
            boxy(3.0, 4.0, 3.0, 4.0),
            Kind::Box,
        );
        // 0.5 empties both; a later pass at a generous parameter must keep
        // them empty rather than resurrect them
        let stage = refine_values(map.metric(), &balanced_refine(&map, 0.5), 10.0);
        assert!(stage.iter().all(ConvexSet::is_empty));
        // one emptied point leaves the others refining among themselves
        let mixed = vec![ConvexSet::Empty, boxy(0.0, 1.0, 0.0, 1.0)];
        let next = refine_values(map.metric(), &mixed, 1.0);
        assert!(next[0].is_empty());
        assert_eq!(next[1], boxy(0.0, 1.0, 0.0, 1.0));
    }

    #[test]
    fn stages_are_nested() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let n = rng.gen_range(2..6);
            let map = sample::polygon_map(&mut rng, n, 6, 2.0);
            let trace = iterate_refine(&map, &[1.0, 3.0]);
            let mut prev: Vec<ConvexSet> = map.values().to_vec();
            for stage in &trace.stages {
                for (a, b) in stage.iter().zip(&prev) {
                    if a.is_empty() {
                        continue;
                    }
                    let verts = a.vertices().expect("bounded refined stage");
                    for v in verts {
                        assert!(
                            b.contains(v, MEMBERSHIP_TOL),
                            "stages shrink pointwise"
                        );
                    }
                }
                prev = stage.clone();
            }
        }
    }

    #[test]
    fn anchored_maps_survive_and_form_a_core() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..150 {
            let n = rng.gen_range(2..6);
            let map = sample::anchored_polygon_map(&mut rng, n, 1.5);
            let trace = iterate_refine(&map, &[1.0, 3.0]);
            assert!(trace.all_nonempty(), "anchored maps admit a 1-selection");
            let report = core_check(map.metric(), trace.last_stage(), 15.0).unwrap();
            assert!(report.nonempty_ok);
            assert!(
                report.worst_ratio <= 15.0 + 1e-6,
                "stage two is a 15-core, got ratio {}",
                report.worst_ratio
            );
            assert!(report.is_core());
            assert!(stabilization_check(&map, &[1.0, 3.0], 15.0));
        }
    }

    #[test]
    fn core_report_flags_fast_movement_and_glued_disagreement() {
        let map = two_point(
            1.0,
            boxy(0.0, 1.0, 0.0, 1.0),
            boxy(2.0, 3.0, 2.0, 3.0),
            Kind::Box,
        );
        let report = core_check(map.metric(), map.values(), 15.0).unwrap();
        assert_eq!(report.worst_ratio, 2.0);
        assert_eq!(report.worst_pair, Some((0, 1)));
        assert!(report.is_core());
        let tight = core_check(map.metric(), map.values(), 1.5).unwrap();
        assert!(!tight.is_core());

        let glued = two_point(
            0.0,
            boxy(0.0, 1.0, 0.0, 1.0),
            boxy(0.5, 1.0, 0.0, 1.0),
            Kind::Box,
        );
        let report = core_check(glued.metric(), glued.values(), 15.0).unwrap();
        assert_eq!(report.worst_ratio, f64::INFINITY);
    }

    #[test]
    fn constant_maps_have_ratio_zero_and_stabilize() {
        let m = sample::positive_metric(&mut ChaCha8Rng::seed_from_u64(33), 4, 1.0);
        let v = boxy(0.0, 1.0, -1.0, 1.0);
        let map = SetMap::new(m, vec![v; 4], Kind::Box).unwrap();
        let report = core_check(map.metric(), map.values(), 1.0).unwrap();
        assert_eq!(report.worst_ratio, 0.0);
        assert!(stabilization_check(&map, &[1.0, 3.0], 15.0));
    }

    #[test]
    fn tiny_parameters_fail_stabilization_on_spread_instances() {
        let map = two_point(
            1.0,
            ConvexSet::point(Point::new(0.0, 0.0)),
            ConvexSet::point(Point::new(2.0, 0.0)),
            Kind::Polygon,
        );
        assert!(!stabilization_check(&map, &[0.01, 0.03], 0.15));
        assert!(stabilization_check(&map, &[2.0, 6.0], 30.0));
    }

    #[test]
    fn segment_values_stay_segments_through_refinement() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..100 {
            let n = rng.gen_range(2..5);
            let map = sample::segment_map(&mut rng, n, 2.0);
            let hi = 4.0 * (1.0 + map.metric().diam(&(0..n).collect::<Vec<_>>()));
            for s in balanced_refine(&map, hi) {
                assert!(
                    matches!(s, ConvexSet::Segment(_)) || s.is_empty(),
                    "refined segment values keep their shape: {s:?}"
                );
            }
        }
    }

    #[test]
    fn restriction_keeps_values_aligned() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let map = sample::polygon_map(&mut rng, 5, 6, 2.0);
        let sub = map.restrict(&[0, 2, 4]);
        assert_eq!(sub.len(), 3);
        assert_eq!(sub.values()[1], map.values()[2]);
        assert_eq!(sub.metric().dist(0, 2), map.metric().dist(0, 4));
    }
}
