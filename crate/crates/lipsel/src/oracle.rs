//! Ground truth: the exact optimal seminorm and an optimal selection,
//! computed by one linear program over all selection coordinates.

use crate::geom::{Point, MEMBERSHIP_TOL};
use crate::lp::{Outcome, Program};
use crate::refine::SetMap;
use crate::select::Selection;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub status: Status,
    /// The optimal seminorm; meaningful only when `status` is `Optimal`.
    pub lambda_star: f64,
    pub selection: Option<Selection>,
}

/// Minimize the seminorm over all selections: variables are the 2n
/// selection coordinates plus the seminorm bound itself. Values enter as
/// their half-plane descriptions; pairs at distance zero become equality
/// constraints on the selection. Infeasible only when such a pair has
/// disjoint values.
pub fn optimal_selection(map: &SetMap) -> OracleResult {
    let n = map.len();
    if n == 0 {
        return OracleResult {
            status: Status::Optimal,
            lambda_star: 0.0,
            selection: Some(Selection {
                points: Vec::new(),
                seminorm: 0.0,
            }),
        };
    }
    let vars = 2 * n + 1;
    let lam = 2 * n;
    let mut prog = Program::minimize({
        let mut c = vec![0.0; vars];
        c[lam] = 1.0;
        c
    });

    let mut row = |idx: &[(usize, f64)], rhs: f64, eq: bool| {
        let mut a = vec![0.0; vars];
        for &(i, v) in idx {
            a[i] = v;
        }
        if eq {
            prog.add_eq(a, rhs);
        } else {
            prog.add_le(a, rhs);
        }
    };

    row(&[(lam, -1.0)], 0.0, false);
    for (i, set) in map.values().iter().enumerate() {
        for hp in set.half_planes() {
            row(&[(2 * i, hp.n.x), (2 * i + 1, hp.n.y)], -hp.alpha, false);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let rho = map.metric().dist(i, j);
            if rho == 0.0 {
                row(&[(2 * i, 1.0), (2 * j, -1.0)], 0.0, true);
                row(&[(2 * i + 1, 1.0), (2 * j + 1, -1.0)], 0.0, true);
            } else {
                for k in 0..2 {
                    row(&[(2 * i + k, 1.0), (2 * j + k, -1.0), (lam, -rho)], 0.0, false);
                    row(&[(2 * i + k, -1.0), (2 * j + k, 1.0), (lam, -rho)], 0.0, false);
                }
            }
        }
    }

    match prog.solve() {
        Outcome::Optimal { x, value } => {
            let points: Vec<Point> = (0..n).map(|i| Point::new(x[2 * i], x[2 * i + 1])).collect();
            let selection = Selection::measured(map.metric(), points);
            OracleResult {
                status: Status::Optimal,
                lambda_star: value.max(0.0),
                selection: Some(selection),
            }
        }
        Outcome::Infeasible => OracleResult {
            status: Status::Infeasible,
            lambda_star: f64::INFINITY,
            selection: None,
        },
        Outcome::Unbounded => unreachable!("the seminorm bound is constrained below by zero"),
    }
}

/// The oracle on the restriction of the map to `subset` (indices).
pub fn optimal_on_subset(map: &SetMap, subset: &[usize]) -> OracleResult {
    optimal_selection(&map.restrict(subset))
}

/// Independent brute-force confirmation: enumerate selections on a grid
/// of `resolution + 1` nodes per axis of each value's bounding box (plus
/// the vertices) and verify none beats `lambda_star` by more than twice
/// the grid step. Errors below two nodes per axis.
pub fn grid_check(map: &SetMap, result: &OracleResult, resolution: usize) -> Result<bool, String> {
    if resolution < 2 {
        return Err("grid resolution below two nodes per axis is too coarse".into());
    }
    if result.status == Status::Infeasible {
        return Ok(true);
    }
    let n = map.len();
    let mut step = 0.0f64;
    let mut candidates: Vec<Vec<Point>> = Vec::with_capacity(n);
    for set in map.values() {
        let hull = set
            .rect_hull()
            .ok_or("grid check needs bounded values")?;
        if !hull.is_bounded() {
            return Err("grid check needs bounded values".into());
        }
        let dx = (hull.x.hi - hull.x.lo) / resolution as f64;
        let dy = (hull.y.hi - hull.y.lo) / resolution as f64;
        step = step.max(dx.max(dy));
        let mut pts: Vec<Point> = set.vertices().unwrap_or_default();
        for i in 0..=resolution {
            for j in 0..=resolution {
                let p = Point::new(hull.x.lo + dx * i as f64, hull.y.lo + dy * j as f64);
                if set.contains(p, MEMBERSHIP_TOL) {
                    pts.push(p);
                }
            }
        }
        candidates.push(pts);
    }

    // depth-first over the product with branch-and-bound on the target
    let target = result.lambda_star - 2.0 * step - 1e-9;
    fn beats(
        map: &SetMap,
        candidates: &[Vec<Point>],
        chosen: &mut Vec<Point>,
        target: f64,
    ) -> bool {
        let i = chosen.len();
        if i == candidates.len() {
            return true;
        }
        'next: for &p in &candidates[i] {
            for (j, &q) in chosen.iter().enumerate() {
                let rho = map.metric().dist(i, j);
                let diff = p.linf_dist(q);
                let ok = if rho == 0.0 {
                    diff <= MEMBERSHIP_TOL
                } else {
                    diff < target * rho
                };
                if !ok {
                    continue 'next;
                }
            }
            chosen.push(p);
            if beats(map, candidates, chosen, target) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    if target <= 0.0 {
        return Ok(true);
    }
    let found_better = beats(map, &candidates, &mut Vec::new(), target);
    Ok(!found_better)
}
