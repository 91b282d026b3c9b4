//! JSON instance format: parsing, field-precise validation, and conversion
//! into the library's map types. Numbers round-trip bit-for-bit; `null`
//! bounds in boxes and intervals encode the corresponding infinity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::{ConvexSet, HalfPlane, Interval, Point, Polygon, Rect, Segment};
use crate::halfplane::HalfPlaneMap;
use crate::metric::{PlaneNorm, PseudoMetric};
use crate::one_dim::IntervalMap;
use crate::refine::{Kind, SetMap};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub norm: String,
    pub points: Vec<String>,
    pub metric: MetricSpec,
    pub sets: BTreeMap<String, SetSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MetricSpec {
    Matrix { d: Vec<Vec<f64>> },
    Coords { coords: Vec<[f64; 2]>, induced: InducedNorm },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InducedNorm {
    #[serde(rename = "linf")]
    Linf,
    #[serde(rename = "l2")]
    L2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SetSpec {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    HalfPlane {
        n: [f64; 2],
        alpha: f64,
    },
    Segment {
        a: [f64; 2],
        b: [f64; 2],
    },
    Box {
        x: [Option<f64>; 2],
        y: [Option<f64>; 2],
    },
    Interval {
        lo: Option<f64>,
        hi: Option<f64>,
    },
}

impl SetSpec {
    fn kind(&self) -> Kind {
        match self {
            SetSpec::Polygon { .. } => Kind::Polygon,
            SetSpec::HalfPlane { .. } => Kind::HalfPlane,
            SetSpec::Segment { .. } => Kind::Segment,
            SetSpec::Box { .. } => Kind::Box,
            SetSpec::Interval { .. } => Kind::Interval,
        }
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Polygon => "polygon",
        Kind::Segment => "segment",
        Kind::Box => "box",
        Kind::HalfPlane => "halfplane",
        Kind::Interval => "interval",
    }
}

/// A validated instance: the generic map plus the specialized views that
/// exist for its kind (half-plane criteria, one-dimensional selections).
#[derive(Debug, Clone)]
pub struct Validated {
    pub map: SetMap,
    pub half_planes: Option<HalfPlaneMap>,
    pub intervals: Option<IntervalMap>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances always serialize");
        s.push('\n');
        s
    }

    /// Checks every field and builds the library types, or reports the
    /// first offending field by name.
    pub fn validate(&self) -> Result<Validated, String> {
        if self.norm != "linf" {
            return Err(format!("norm: only \"linf\" is supported, got \"{}\"", self.norm));
        }
        if self.points.is_empty() {
            return Err("points: need at least one point".into());
        }
        for (i, id) in self.points.iter().enumerate() {
            if self.points[..i].contains(id) {
                return Err(format!("points: duplicate id \"{id}\""));
            }
        }
        let metric = self.build_metric()?;
        for id in self.sets.keys() {
            if !self.points.contains(id) {
                return Err(format!("sets: \"{id}\" is not a declared point"));
            }
        }
        let mut kind = None;
        let mut values = Vec::with_capacity(self.points.len());
        for id in &self.points {
            let spec = self
                .sets
                .get(id)
                .ok_or_else(|| format!("sets: missing value for point \"{id}\""))?;
            match kind {
                None => kind = Some(spec.kind()),
                Some(k) if k != spec.kind() => {
                    return Err(format!(
                        "sets.{id}: kind \"{}\" differs from \"{}\"",
                        kind_name(spec.kind()),
                        kind_name(k)
                    ))
                }
                Some(_) => {}
            }
            values.push(build_set(id, spec)?);
        }
        let kind = kind.expect("at least one point");
        let map = SetMap::new(metric.clone(), values, kind).map_err(|e| format!("sets: {e}"))?;
        let half_planes = if kind == Kind::HalfPlane {
            let (normals, alphas) = map
                .values()
                .iter()
                .map(|s| match s {
                    ConvexSet::HalfPlane(h) => (h.n, h.alpha),
                    _ => unreachable!("kind was checked"),
                })
                .unzip();
            Some(
                HalfPlaneMap::new(metric.clone(), normals, alphas)
                    .expect("normals are unit after construction"),
            )
        } else {
            None
        };
        let intervals = if kind == Kind::Interval {
            let ivs = map
                .values()
                .iter()
                .map(|s| match s {
                    ConvexSet::Interval(iv) => *iv,
                    _ => unreachable!("kind was checked"),
                })
                .collect();
            Some(IntervalMap::new(metric, ivs).map_err(|e| format!("sets: {e}"))?)
        } else {
            None
        };
        Ok(Validated {
            map,
            half_planes,
            intervals,
        })
    }

    fn build_metric(&self) -> Result<PseudoMetric, String> {
        let n = self.points.len();
        match &self.metric {
            MetricSpec::Matrix { d } => PseudoMetric::new(self.points.clone(), d.clone())
                .map_err(|violations| {
                    let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                    format!("metric.d: {}", msgs.join("; "))
                }),
            MetricSpec::Coords { coords, induced } => {
                if coords.len() != n {
                    return Err(format!(
                        "metric.coords: {} coordinate pairs for {} points",
                        coords.len(),
                        n
                    ));
                }
                for (i, c) in coords.iter().enumerate() {
                    if !c[0].is_finite() || !c[1].is_finite() {
                        return Err(format!("metric.coords[{i}]: not finite"));
                    }
                }
                let pts: Vec<(f64, f64)> = coords.iter().map(|c| (c[0], c[1])).collect();
                let norm = match induced {
                    InducedNorm::Linf => PlaneNorm::Linf,
                    InducedNorm::L2 => PlaneNorm::L2,
                };
                Ok(PseudoMetric::from_coords(self.points.clone(), &pts, norm))
            }
        }
    }
}

fn finite(id: &str, field: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("sets.{id}.{field}: not finite"))
    }
}

/// A `null` bound means the interval extends to the signed infinity.
fn bound(id: &str, field: &str, v: Option<f64>, sign: f64) -> Result<f64, String> {
    match v {
        None => Ok(sign * f64::INFINITY),
        Some(v) => finite(id, field, v),
    }
}

fn checked_interval(id: &str, field: &str, lo: f64, hi: f64) -> Result<Interval, String> {
    if lo > hi {
        return Err(format!("sets.{id}.{field}: lo {lo} exceeds hi {hi}"));
    }
    Ok(Interval::new(lo, hi))
}

fn build_set(id: &str, spec: &SetSpec) -> Result<ConvexSet, String> {
    match spec {
        SetSpec::Polygon { vertices } => {
            if vertices.is_empty() {
                return Err(format!("sets.{id}.vertices: empty"));
            }
            let mut pts = Vec::with_capacity(vertices.len());
            for (i, v) in vertices.iter().enumerate() {
                let x = finite(id, &format!("vertices[{i}][0]"), v[0])?;
                let y = finite(id, &format!("vertices[{i}][1]"), v[1])?;
                pts.push(Point::new(x, y));
            }
            Ok(ConvexSet::Polygon(
                Polygon::hull(&pts).expect("at least one vertex"),
            ))
        }
        SetSpec::HalfPlane { n, alpha } => {
            let nx = finite(id, "n[0]", n[0])?;
            let ny = finite(id, "n[1]", n[1])?;
            let a = finite(id, "alpha", *alpha)?;
            HalfPlane::new(nx, ny, a)
                .map(ConvexSet::HalfPlane)
                .map_err(|e| format!("sets.{id}: {e}"))
        }
        SetSpec::Segment { a, b } => {
            let ax = finite(id, "a[0]", a[0])?;
            let ay = finite(id, "a[1]", a[1])?;
            let bx = finite(id, "b[0]", b[0])?;
            let by = finite(id, "b[1]", b[1])?;
            Ok(ConvexSet::Segment(Segment::new(
                Point::new(ax, ay),
                Point::new(bx, by),
            )))
        }
        SetSpec::Box { x, y } => {
            let xlo = bound(id, "x[0]", x[0], -1.0)?;
            let xhi = bound(id, "x[1]", x[1], 1.0)?;
            let ylo = bound(id, "y[0]", y[0], -1.0)?;
            let yhi = bound(id, "y[1]", y[1], 1.0)?;
            Ok(ConvexSet::Rect(Rect::new(
                checked_interval(id, "x", xlo, xhi)?,
                checked_interval(id, "y", ylo, yhi)?,
            )))
        }
        SetSpec::Interval { lo, hi } => {
            let lo = bound(id, "lo", *lo, -1.0)?;
            let hi = bound(id, "hi", *hi, 1.0)?;
            Ok(ConvexSet::Interval(checked_interval(id, "", lo, hi)?))
        }
    }
}

/// The reverse direction, for writing instances out of library types.
pub fn describe(map: &SetMap) -> Instance {
    let metric = map.metric();
    let sets = metric
        .ids()
        .iter()
        .cloned()
        .zip(map.values().iter().map(describe_set))
        .collect();
    Instance {
        norm: "linf".into(),
        points: metric.ids().to_vec(),
        metric: MetricSpec::Matrix {
            d: metric.matrix().to_vec(),
        },
        sets,
    }
}

fn opt_bound(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn describe_set(set: &ConvexSet) -> SetSpec {
    match set {
        ConvexSet::Polygon(p) => SetSpec::Polygon {
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
        },
        ConvexSet::Segment(s) => SetSpec::Segment {
            a: [s.a.x, s.a.y],
            b: [s.b.x, s.b.y],
        },
        ConvexSet::Rect(r) => SetSpec::Box {
            x: [opt_bound(r.x.lo), opt_bound(r.x.hi)],
            y: [opt_bound(r.y.lo), opt_bound(r.y.hi)],
        },
        ConvexSet::HalfPlane(h) => SetSpec::HalfPlane {
            n: [h.n.x, h.n.y],
            alpha: h.alpha,
        },
        ConvexSet::Interval(iv) => SetSpec::Interval {
            lo: opt_bound(iv.lo),
            hi: opt_bound(iv.hi),
        },
        ConvexSet::Empty | ConvexSet::HalfPlanes(_) => {
            panic!("only source map kinds serialize, not refinement stages")
        }
    }
}
