//! Command-line front end: loads JSON instances, dispatches library
//! computations, prints deterministic JSON reports, and renders SVG
//! figures. Exit codes: 0 success/accept, 1 reject/infeasible, 2 input
//! error.

mod svg;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lipsel::instance::{Instance, Validated};
use lipsel::metric::PseudoMetric;
use lipsel::oracle::{optimal_selection, Status};
use lipsel::refine::{iterate_refine, Kind};
use lipsel::select::{
    construct, decide, four_point_bound, near_optimal, select_hull_center,
    select_segment_midpoint, select_steiner, Selection, Witness,
};

#[derive(Parser)]
#[command(name = "lipsel", version, about = "Lipschitz selections of planar set-valued maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Compute the optimal seminorm and an optimal selection by LP.
    Oracle { file: PathBuf },
    /// Decide whether a selection with the given bound can exist.
    Check {
        #[arg(long)]
        lambda: f64,
        file: PathBuf,
    },
    /// Construct a selection.
    Select {
        #[arg(long, value_enum)]
        method: Method,
        /// Seminorm bound; defaults to a near-optimal search for `algob`
        /// and to the four-point bound for the other methods.
        #[arg(long)]
        lambda: Option<f64>,
        file: PathBuf,
    },
    /// Run two or three refinement stages and report the surviving sets.
    Refine {
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<f64>,
        file: PathBuf,
    },
    /// Half-plane and polygon criteria: verdict at a bound, or the
    /// criterion's infimum when no bound is given.
    Criteria {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        lambda: Option<f64>,
        file: PathBuf,
    },
    /// Render the instance and an optimal selection as SVG.
    Plot {
        #[arg(long)]
        out: PathBuf,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Envelope-and-projection construction with a decided bound.
    Algob,
    /// Centers of the rectangular hulls of the second refinement stage.
    Hullcenter,
    /// Midpoints of second-stage segments (segment-valued maps only).
    Segmid,
    /// Steiner points of the second refinement stage.
    Steiner,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Antipodal and corner-shift conditions for half-plane maps.
    Star,
    /// Coordinate-free intersection-distance condition.
    Cf,
    /// Coordinate-free condition over polygon edge half-planes.
    #[value(name = "polygon-cf")]
    PolygonCf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, report) = run(cli.cmd);
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    ExitCode::from(code)
}

fn fail(msg: impl Into<String>) -> (u8, Value) {
    (2, json!({ "error": msg.into() }))
}

fn load(path: &PathBuf) -> Result<Validated, (u8, Value)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("{}: {e}", path.display())))?;
    let inst = Instance::from_json(&text).map_err(fail)?;
    inst.validate().map_err(fail)
}

fn run(cmd: Cmd) -> (u8, Value) {
    match cmd {
        Cmd::Validate { file } => match load(&file) {
            Err(e) => e,
            Ok(v) => (
                0,
                json!({
                    "valid": true,
                    "points": v.map.len(),
                    "kind": v.map.kind(),
                }),
            ),
        },
        Cmd::Oracle { file } => match load(&file) {
            Err(e) => e,
            Ok(v) => oracle_report(&v),
        },
        Cmd::Check { lambda, file } => {
            if !lambda.is_finite() || lambda < 0.0 {
                return fail(format!("--lambda must be nonnegative and finite, got {lambda}"));
            }
            match load(&file) {
                Err(e) => e,
                Ok(v) => match decide(&v.map, lambda) {
                    Err(e) => fail(e),
                    Ok(verdict) => {
                        let mut rep = BTreeMap::from([
                            ("lambda".to_string(), json!(lambda)),
                            ("accepted".to_string(), json!(verdict.accepted)),
                        ]);
                        if let Some(w) = &verdict.witness {
                            rep.insert("witness".into(), witness_json(v.map.metric(), w));
                        }
                        (u8::from(!verdict.accepted), json!(rep))
                    }
                },
            }
        }
        Cmd::Select { method, lambda, file } => match load(&file) {
            Err(e) => e,
            Ok(v) => select_report(&v, method, lambda),
        },
        Cmd::Refine { lambdas, file } => {
            if lambdas.len() < 2 || lambdas.len() > 3 {
                return fail("--lambdas takes two or three comma-separated values");
            }
            if let Some(l) = lambdas.iter().find(|l| !l.is_finite() || **l < 0.0) {
                return fail(format!("--lambdas must be nonnegative and finite, got {l}"));
            }
            match load(&file) {
                Err(e) => e,
                Ok(v) => refine_report(&v, &lambdas),
            }
        }
        Cmd::Criteria { family, lambda, file } => match load(&file) {
            Err(e) => e,
            Ok(v) => criteria_report(&v, family, lambda),
        },
        Cmd::Plot { out, file } => match load(&file) {
            Err(e) => e,
            Ok(v) => {
                let res = optimal_selection(&v.map);
                let selection = res.selection.as_ref().map(|s| s.points.as_slice());
                let drawing = svg::render(&v.map, selection);
                if let Err(e) = std::fs::write(&out, drawing) {
                    return fail(format!("{}: {e}", out.display()));
                }
                match res.status {
                    Status::Optimal => (
                        0,
                        json!({ "out": out.display().to_string(), "sets": v.map.len(),
                                "selection": true }),
                    ),
                    Status::Infeasible => (
                        1,
                        json!({ "out": out.display().to_string(), "sets": v.map.len(),
                                "selection": false }),
                    ),
                }
            }
        },
    }
}

fn selection_json(metric: &PseudoMetric, s: &Selection) -> Value {
    let m: BTreeMap<String, Value> = metric
        .ids()
        .iter()
        .zip(&s.points)
        .map(|(id, p)| (id.clone(), json!([p.x, p.y])))
        .collect();
    json!(m)
}

fn witness_json(metric: &PseudoMetric, w: &Witness) -> Value {
    match w {
        Witness::PairDistance { x, y, dist, allowed } => json!({
            "type": "pair-distance",
            "x": metric.id(*x),
            "y": metric.id(*y),
            "dist": dist,
            "allowed": allowed,
        }),
        Witness::CoordinateGap { x, xp, y, yp, coord, excess } => json!({
            "type": "coordinate-gap",
            "x": metric.id(*x),
            "xp": metric.id(*xp),
            "y": metric.id(*y),
            "yp": metric.id(*yp),
            "coord": coord,
            "excess": excess,
        }),
    }
}

fn oracle_report(v: &Validated) -> (u8, Value) {
    let res = optimal_selection(&v.map);
    match res.status {
        Status::Infeasible => (1, json!({ "status": "infeasible" })),
        Status::Optimal => {
            let s = res.selection.expect("optimal results carry a selection");
            (
                0,
                json!({
                    "status": "optimal",
                    "lambda_star": res.lambda_star,
                    "seminorm": s.seminorm,
                    "selection": selection_json(v.map.metric(), &s),
                }),
            )
        }
    }
}

fn select_report(v: &Validated, method: Method, lambda: Option<f64>) -> (u8, Value) {
    let map = &v.map;
    let name = match method {
        Method::Algob => "algob",
        Method::Hullcenter => "hullcenter",
        Method::Segmid => "segmid",
        Method::Steiner => "steiner",
    };
    if !map.kind().is_bounded() {
        return fail(format!("select --method {name} needs bounded values"));
    }
    if matches!(method, Method::Segmid) && map.kind() != Kind::Segment {
        return fail("select --method segmid needs a segment-valued map");
    }
    let lambda = match lambda {
        Some(l) if l.is_finite() && l >= 0.0 => l,
        Some(l) => return fail(format!("--lambda must be nonnegative and finite, got {l}")),
        None => match method {
            Method::Algob => match near_optimal(map, 1e-6) {
                Ok(report) => report.lambda_hat,
                Err(e) => return fail(e),
            },
            _ => four_point_bound(map),
        },
    };
    if let Method::Algob = method {
        match decide(map, lambda) {
            Err(e) => return fail(e),
            Ok(verdict) if !verdict.accepted => {
                let w = verdict.witness.expect("rejections carry a witness");
                return (
                    1,
                    json!({
                        "method": name,
                        "lambda": lambda,
                        "accepted": false,
                        "witness": witness_json(map.metric(), &w),
                    }),
                );
            }
            Ok(_) => {}
        }
    }
    let built = match method {
        Method::Algob => construct(map, lambda),
        Method::Hullcenter => select_hull_center(map, lambda),
        Method::Segmid => select_segment_midpoint(map, lambda),
        Method::Steiner => select_steiner(map, lambda),
    };
    match built {
        // after the kind checks above, failures mean the bound was too
        // small for the refinement stages to survive
        Err(e) => (1, json!({ "method": name, "lambda": lambda, "rejected": e })),
        Ok(s) => (
            0,
            json!({
                "method": name,
                "lambda": lambda,
                "seminorm": s.seminorm,
                "selection": selection_json(map.metric(), &s),
            }),
        ),
    }
}

fn interval_json(lo: f64, hi: f64) -> Value {
    let b = |v: f64| if v.is_finite() { json!(v) } else { Value::Null };
    json!([b(lo), b(hi)])
}

fn refine_report(v: &Validated, lambdas: &[f64]) -> (u8, Value) {
    let trace = iterate_refine(&v.map, lambdas);
    let ids = v.map.metric().ids();
    let stages: Vec<Value> = trace
        .stages
        .iter()
        .zip(&trace.empty_points)
        .map(|(stage, empties)| {
            let hulls: BTreeMap<String, Value> = ids
                .iter()
                .zip(stage)
                .map(|(id, set)| {
                    let hull = set
                        .rect_hull()
                        .map(|r| {
                            json!({ "x": interval_json(r.x.lo, r.x.hi),
                                    "y": interval_json(r.y.lo, r.y.hi) })
                        })
                        .unwrap_or(Value::Null);
                    (id.clone(), hull)
                })
                .collect();
            let empty: Vec<&str> = empties.iter().map(|&i| v.map.metric().id(i)).collect();
            json!({ "empty": empty, "hulls": hulls })
        })
        .collect();
    let ok = trace.all_nonempty();
    (
        u8::from(!ok),
        json!({ "lambdas": lambdas, "all_nonempty": ok, "stages": stages }),
    )
}

fn criteria_report(v: &Validated, family: Family, lambda: Option<f64>) -> (u8, Value) {
    if let Some(l) = lambda {
        if !l.is_finite() || l < 0.0 {
            return fail(format!("--lambda must be nonnegative and finite, got {l}"));
        }
    }
    match family {
        Family::Star | Family::Cf => {
            let Some(hp) = &v.half_planes else {
                return fail("criteria --family star/cf need a halfplane-valued map");
            };
            let name = if matches!(family, Family::Star) { "star" } else { "cf" };
            match lambda {
                Some(l) => {
                    let verdict = match family {
                        Family::Star => hp.check_criterion(l),
                        _ => hp.check_coordinate_free(l),
                    };
                    let mut rep = BTreeMap::from([
                        ("family".to_string(), json!(name)),
                        ("lambda".to_string(), json!(l)),
                        ("accepted".to_string(), json!(verdict.accepted)),
                    ]);
                    if let Some(w) = &verdict.witness {
                        rep.insert("witness".into(), witness_json(v.map.metric(), w));
                    }
                    (u8::from(!verdict.accepted), json!(rep))
                }
                None => match family {
                    Family::Star => {
                        let bound = hp.criterion_infimum();
                        (
                            0,
                            json!({
                                "family": "star",
                                "infimum": bound.lambda,
                                "coverage": {
                                    "finite": bound.coverage.finite,
                                    "hull_contains_origin": bound.coverage.hull_contains_origin,
                                },
                            }),
                        )
                    }
                    _ => (0, json!({ "family": "cf", "infimum": hp.coordinate_free_infimum() })),
                },
            }
        }
        Family::PolygonCf => {
            let Some(l) = lambda else {
                return fail("criteria --family polygon-cf needs --lambda");
            };
            match lipsel::halfplane::polygon_edge_criterion(&v.map, l) {
                Err(e) => fail(e),
                Ok(verdict) => {
                    let mut rep = BTreeMap::from([
                        ("family".to_string(), json!("polygon-cf")),
                        ("lambda".to_string(), json!(l)),
                        ("accepted".to_string(), json!(verdict.accepted)),
                    ]);
                    if let Some(w) = &verdict.witness {
                        rep.insert("witness".into(), witness_json(v.map.metric(), w));
                    }
                    (u8::from(!verdict.accepted), json!(rep))
                }
            }
        }
    }
}
