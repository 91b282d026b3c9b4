//! Interval-valued maps on a pseudometric space: optimal seminorm, the
//! extreme and middle selections, and the one-dimensional balanced
//! refinement with its exactness criterion.

use std::fmt;

use crate::geom::{Interval, MEMBERSHIP_TOL};
use crate::lambda_slack;
use crate::metric::PseudoMetric;

/// Rounding allowance when an intersection of intervals closes to a gap.
const TOUCH_TOL: f64 = 1e-12;

/// One interval per point of the metric, indexed like the metric's ids.
/// Ends may be infinite; the selection operations require bounded values,
/// the refinement operations do not.
#[derive(Debug, Clone)]
pub struct IntervalMap {
    metric: PseudoMetric,
    values: Vec<Interval>,
}

impl IntervalMap {
    pub fn new(metric: PseudoMetric, values: Vec<Interval>) -> Result<Self, String> {
        if metric.len() != values.len() {
            return Err(format!(
                "metric has {} points but {} intervals were given",
                metric.len(),
                values.len()
            ));
        }
        Ok(Self { metric, values })
    }

    pub fn metric(&self) -> &PseudoMetric {
        &self.metric
    }

    pub fn values(&self) -> &[Interval] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.values.iter().all(Interval::is_bounded)
    }
}

/// Smallest seminorm any selection can achieve: the largest gap between
/// the bottom of one value and the top of another, per unit of distance.
/// Infinite exactly when two values at pseudo-distance zero are disjoint.
pub fn lambda_f(map: &IntervalMap) -> f64 {
    assert!(map.is_bounded(), "the optimal seminorm needs bounded intervals");
    let n = map.len();
    let mut sup = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gap = map.values[i].lo - map.values[j].hi;
            if gap <= 0.0 {
                continue;
            }
            let rho = map.metric.dist(i, j);
            if rho == 0.0 {
                return f64::INFINITY;
            }
            sup = sup.max(gap / rho);
        }
    }
    sup
}

/// Certificate that no selection with the requested seminorm exists: the
/// bottom of the value at `x` sits `excess` above everything reachable
/// from the value at `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolatingPair {
    pub x: usize,
    pub y: usize,
    pub excess: f64,
}

impl fmt::Display for ViolatingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value at point {} lies {:.3e} beyond the reach of the value at point {}",
            self.x, self.excess, self.y
        )
    }
}

fn worst_pair(map: &IntervalMap, lambda: f64) -> Option<ViolatingPair> {
    let slack = lambda_slack(lambda);
    let n = map.len();
    let mut worst: Option<ViolatingPair> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let excess = map.values[i].lo - map.values[j].hi - lambda * map.metric.dist(i, j);
            if excess > slack && worst.map_or(true, |w| excess > w.excess) {
                worst = Some(ViolatingPair { x: i, y: j, excess });
            }
        }
    }
    worst
}

/// Pointwise-largest selection with seminorm at most `lambda`.
pub fn select_plus(map: &IntervalMap, lambda: f64) -> Result<Vec<f64>, ViolatingPair> {
    assert!(map.is_bounded(), "selections need bounded intervals");
    assert!(lambda >= 0.0 && lambda.is_finite());
    if let Some(w) = worst_pair(map, lambda) {
        return Err(w);
    }
    let n = map.len();
    Ok((0..n)
        .map(|i| {
            let v = (0..n)
                .map(|j| map.values[j].hi + lambda * map.metric.dist(i, j))
                .fold(f64::INFINITY, f64::min);
            v.clamp(map.values[i].lo, map.values[i].hi)
        })
        .collect())
}

/// Pointwise-smallest selection with seminorm at most `lambda`.
pub fn select_minus(map: &IntervalMap, lambda: f64) -> Result<Vec<f64>, ViolatingPair> {
    assert!(map.is_bounded(), "selections need bounded intervals");
    assert!(lambda >= 0.0 && lambda.is_finite());
    if let Some(w) = worst_pair(map, lambda) {
        return Err(w);
    }
    let n = map.len();
    Ok((0..n)
        .map(|i| {
            let v = (0..n)
                .map(|j| map.values[j].lo - lambda * map.metric.dist(i, j))
                .fold(f64::NEG_INFINITY, f64::max)
                .clamp(map.values[i].lo, map.values[i].hi);
            v
        })
        .collect())
}

/// Midpoint of the two extreme selections.
pub fn select_mid(map: &IntervalMap, lambda: f64) -> Result<Vec<f64>, ViolatingPair> {
    let plus = select_plus(map, lambda)?;
    let minus = select_minus(map, lambda)?;
    Ok(plus
        .iter()
        .zip(&minus)
        .map(|(p, m)| 0.5 * (p + m))
        .collect())
}

/// One balanced-refinement step: each value is cut down to the part
/// reachable from every other value within `lambda` times the distance.
/// `None` marks points whose intersection came out empty; a gap within
/// rounding noise counts as a touch.
pub fn refine_1d(map: &IntervalMap, lambda: f64) -> Vec<Option<Interval>> {
    assert!(lambda >= 0.0 && lambda.is_finite());
    let n = map.len();
    (0..n)
        .map(|i| {
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            for j in 0..n {
                let r = lambda * map.metric.dist(i, j);
                lo = lo.max(map.values[j].lo - r);
                hi = hi.min(map.values[j].hi + r);
            }
            if lo <= hi {
                Some(Interval::new(lo, hi))
            } else if lo - hi <= TOUCH_TOL * (1.0 + lo.abs() + hi.abs()) {
                Some(Interval::point(0.5 * (lo + hi)))
            } else {
                None
            }
        })
        .collect()
}

/// True exactly when every point survives one refinement step. The
/// infimum over `lambda` of acceptance is the optimal seminorm.
pub fn criterion_1d(map: &IntervalMap, lambda: f64) -> bool {
    refine_1d(map, lambda).iter().all(Option::is_some)
}

/// Measured seminorm of real values over the metric. Pairs at distance
/// zero tolerate an absolute gap of `MEMBERSHIP_TOL` (counted as zero);
/// anything larger makes the seminorm infinite.
pub fn seminorm_1d(metric: &PseudoMetric, f: &[f64]) -> f64 {
    assert_eq!(metric.len(), f.len());
    let mut sup = 0.0f64;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let diff = (f[i] - f[j]).abs();
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
