//! End-to-end tests of the command-line interface: exit codes, report
//! shapes, and figure output.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TWO_SINGLETONS: &str = r#"{
    "norm": "linf",
    "points": ["p", "q"],
    "metric": {"type": "matrix", "d": [[0.0, 1.0], [1.0, 0.0]]},
    "sets": {
        "p": {"kind": "polygon", "vertices": [[0.0, 0.0]]},
        "q": {"kind": "polygon", "vertices": [[2.0, 0.0]]}
    }
}"#;

const TRIANGLE_BOXES: &str = r#"{
    "norm": "linf",
    "points": ["a", "b", "c"],
    "metric": {"type": "coords", "coords": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
               "induced": "linf"},
    "sets": {
        "a": {"kind": "box", "x": [0.0, 1.0], "y": [0.0, 1.0]},
        "b": {"kind": "box", "x": [0.5, 2.0], "y": [-1.0, 0.5]},
        "c": {"kind": "box", "x": [-1.0, 0.5], "y": [0.5, 2.0]}
    }
}"#;

const OPPOSITE_HALF_PLANES: &str = r#"{
    "norm": "linf",
    "points": ["x", "y"],
    "metric": {"type": "matrix", "d": [[0.0, 1.0], [1.0, 0.0]]},
    "sets": {
        "x": {"kind": "halfplane", "n": [1.0, 0.0], "alpha": 0.0},
        "y": {"kind": "halfplane", "n": [-1.0, 0.0], "alpha": 1.0}
    }
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn lipsel(args: &[&str]) -> (Option<i32>, Value, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_lipsel"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code(), report, out)
}

#[test]
fn check_uses_exit_codes_for_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "two.json", TWO_SINGLETONS);

    let (code, rep, _) = lipsel(&["check", "--lambda", "2", &file]);
    assert_eq!(code, Some(0));
    assert_eq!(rep["accepted"], Value::Bool(true));

    let (code, rep, _) = lipsel(&["check", "--lambda", "1.9", &file]);
    assert_eq!(code, Some(1));
    assert_eq!(rep["accepted"], Value::Bool(false));
    assert_eq!(rep["witness"]["type"], "pair-distance");
    assert_eq!(rep["witness"]["x"], "p");
    assert_eq!(rep["witness"]["y"], "q");
    assert!((rep["witness"]["dist"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn select_algob_matches_the_oracle_on_a_forced_instance() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "two.json", TWO_SINGLETONS);

    let (code, rep, _) = lipsel(&["select", "--method", "algob", "--lambda", "2", &file]);
    assert_eq!(code, Some(0));
    assert!((rep["seminorm"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(rep["selection"]["p"][0].as_f64().unwrap(), 0.0);
    assert_eq!(rep["selection"]["q"][0].as_f64().unwrap(), 2.0);

    let (code, rep, _) = lipsel(&["oracle", &file]);
    assert_eq!(code, Some(0));
    assert!((rep["lambda_star"].as_f64().unwrap() - 2.0).abs() < 1e-9);

    // the default bound comes from the near-optimal search
    let (code, rep, _) = lipsel(&["select", "--method", "algob", &file]);
    assert_eq!(code, Some(0));
    let lam = rep["lambda"].as_f64().unwrap();
    assert!(lam >= 2.0 - 1e-6 && lam < 2.2, "near-optimal default, got {lam}");
}

#[test]
fn selection_variants_run_on_bounded_instances() {
    let dir = tempfile::tempdir().unwrap();
    let boxes = write(dir.path(), "boxes.json", TRIANGLE_BOXES);
    for method in ["hullcenter", "steiner"] {
        let (code, rep, _) = lipsel(&["select", "--method", method, &boxes]);
        assert_eq!(code, Some(0), "{method} on boxes");
        assert!(rep["seminorm"].as_f64().unwrap().is_finite());
    }
    let (code, rep, _) = lipsel(&["select", "--method", "segmid", &boxes]);
    assert_eq!(code, Some(2), "segmid needs segments: {rep}");

    // a bound far below the optimum empties the refinement stages
    let two = write(dir.path(), "two.json", TWO_SINGLETONS);
    let (code, rep, _) = lipsel(&["select", "--method", "hullcenter", "--lambda", "0.01", &two]);
    assert_eq!(code, Some(1), "{rep}");
}

#[test]
fn validate_reports_input_errors_precisely() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", TRIANGLE_BOXES);
    let (code, rep, _) = lipsel(&["validate", &good]);
    assert_eq!(code, Some(0));
    assert_eq!(rep["valid"], Value::Bool(true));
    assert_eq!(rep["points"], 3);
    assert_eq!(rep["kind"], "box");

    let broken = TWO_SINGLETONS.replace(
        r#""d": [[0.0, 1.0], [1.0, 0.0]]"#,
        r#""d": [[0.0, 9.0], [9.0, 0.0]]"#,
    );
    let triangle = TRIANGLE_BOXES.replace(
        r#""metric": {"type": "coords", "coords": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
               "induced": "linf"}"#,
        r#""metric": {"type": "matrix",
               "d": [[0.0, 5.0, 1.0], [5.0, 0.0, 1.0], [1.0, 1.0, 0.0]]}"#,
    );
    assert_ne!(triangle, TRIANGLE_BOXES, "replacement must hit");
    let bad = write(dir.path(), "bad.json", &triangle);
    let (code, rep, _) = lipsel(&["validate", &bad]);
    assert_eq!(code, Some(2));
    assert!(rep["error"].as_str().unwrap().contains("d[0][1]"), "{rep}");
    drop(broken);

    let unknown = write(
        dir.path(),
        "unk.json",
        &TWO_SINGLETONS.replace("polygon", "blob"),
    );
    let (code, rep, _) = lipsel(&["validate", &unknown]);
    assert_eq!(code, Some(2));
    assert!(rep["error"].as_str().unwrap().contains("blob"), "{rep}");

    let (code, rep, _) = lipsel(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code, Some(2));
    assert!(rep["error"].as_str().is_some());
}

#[test]
fn refine_reports_stages_and_survival() {
    let dir = tempfile::tempdir().unwrap();
    let boxes = write(dir.path(), "boxes.json", TRIANGLE_BOXES);

    let (code, rep, _) = lipsel(&["refine", "--lambdas", "1,3", &boxes]);
    assert_eq!(code, Some(0), "{rep}");
    assert_eq!(rep["all_nonempty"], Value::Bool(true));
    assert_eq!(rep["stages"].as_array().unwrap().len(), 2);
    assert!(rep["stages"][1]["hulls"]["a"]["x"][0].is_number());

    let (code, _, _) = lipsel(&["refine", "--lambdas", "1,3,15", &boxes]);
    assert_eq!(code, Some(0));

    let (code, rep, _) = lipsel(&["refine", "--lambdas", "1", &boxes]);
    assert_eq!(code, Some(2), "{rep}");

    let two = write(dir.path(), "two.json", TWO_SINGLETONS);
    let (code, rep, _) = lipsel(&["refine", "--lambdas", "0.1,0.3", &two]);
    assert_eq!(code, Some(1), "{rep}");
    assert_eq!(rep["all_nonempty"], Value::Bool(false));
    let empty = rep["stages"][0]["empty"].as_array().unwrap();
    assert!(!empty.is_empty());
}

#[test]
fn criteria_families_report_infima_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let hp = write(dir.path(), "hp.json", OPPOSITE_HALF_PLANES);

    let (code, rep, _) = lipsel(&["criteria", "--family", "star", &hp]);
    assert_eq!(code, Some(0));
    assert!((rep["infimum"].as_f64().unwrap() - 1.0).abs() < 1e-9, "{rep}");
    assert_eq!(rep["coverage"]["finite"], Value::Bool(true));
    assert_eq!(rep["coverage"]["hull_contains_origin"], Value::Bool(false));

    let (code, rep, _) = lipsel(&["criteria", "--family", "star", "--lambda", "1.0", &hp]);
    assert_eq!(code, Some(0), "{rep}");
    let (code, rep, _) = lipsel(&["criteria", "--family", "star", "--lambda", "0.5", &hp]);
    assert_eq!(code, Some(1));
    assert_eq!(rep["witness"]["type"], "pair-distance");

    let (code, rep, _) = lipsel(&["criteria", "--family", "cf", &hp]);
    assert_eq!(code, Some(0));
    assert!(rep["infimum"].as_f64().unwrap() > 0.0);

    let boxes = write(dir.path(), "boxes.json", TRIANGLE_BOXES);
    let (code, rep, _) = lipsel(&["criteria", "--family", "star", &boxes]);
    assert_eq!(code, Some(2), "{rep}");

    let polys = TRIANGLE_BOXES
        .replace(
            r#"{"kind": "box", "x": [0.0, 1.0], "y": [0.0, 1.0]}"#,
            r#"{"kind": "polygon", "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}"#,
        )
        .replace(
            r#"{"kind": "box", "x": [0.5, 2.0], "y": [-1.0, 0.5]}"#,
            r#"{"kind": "polygon", "vertices": [[0.5, -1.0], [2.0, 0.5], [1.0, 0.0]]}"#,
        )
        .replace(
            r#"{"kind": "box", "x": [-1.0, 0.5], "y": [0.5, 2.0]}"#,
            r#"{"kind": "polygon", "vertices": [[-1.0, 0.5], [0.5, 2.0], [0.0, 1.0]]}"#,
        );
    let pfile = write(dir.path(), "polys.json", &polys);
    let (code, rep, _) = lipsel(&["criteria", "--family", "polygon-cf", &pfile]);
    assert_eq!(code, Some(2), "needs --lambda: {rep}");
    let (code, rep, _) = lipsel(&["criteria", "--family", "polygon-cf", "--lambda", "50", &pfile]);
    assert_eq!(code, Some(0), "{rep}");
}

#[test]
fn plot_writes_stable_svg() {
    let dir = tempfile::tempdir().unwrap();
    let boxes = write(dir.path(), "boxes.json", TRIANGLE_BOXES);
    let out1 = dir.path().join("fig1.svg");
    let out2 = dir.path().join("fig2.svg");

    let (code, rep, _) = lipsel(&["plot", "--out", out1.to_str().unwrap(), &boxes]);
    assert_eq!(code, Some(0), "{rep}");
    let svg = std::fs::read_to_string(&out1).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("version=\"1.1\""));
    assert_eq!(svg.matches("<path ").count(), 3, "one path per set");
    assert_eq!(svg.matches("<polyline ").count(), 1, "one selection polyline");

    let (code, _, _) = lipsel(&["plot", "--out", out2.to_str().unwrap(), &boxes]);
    assert_eq!(code, Some(0));
    assert_eq!(
        std::fs::read(&out1).unwrap(),
        std::fs::read(&out2).unwrap(),
        "figures are deterministic"
    );

    // half-plane instances render too: clipped boundary regions
    let hp = write(dir.path(), "hp.json", OPPOSITE_HALF_PLANES);
    let hout = dir.path().join("hp.svg");
    let (code, _, _) = lipsel(&["plot", "--out", hout.to_str().unwrap(), &hp]);
    assert_eq!(code, Some(0));
    let svg = std::fs::read_to_string(&hout).unwrap();
    assert_eq!(svg.matches("<path ").count(), 2);
}

#[test]
fn oracle_flags_infeasible_instances() {
    let dir = tempfile::tempdir().unwrap();
    // distance zero between the points, but disjoint singleton values
    let glued = TWO_SINGLETONS.replace(
        r#""d": [[0.0, 1.0], [1.0, 0.0]]"#,
        r#""d": [[0.0, 0.0], [0.0, 0.0]]"#,
    );
    let file = write(dir.path(), "glued.json", &glued);
    let (code, rep, _) = lipsel(&["oracle", &file]);
    assert_eq!(code, Some(1));
    assert_eq!(rep["status"], "infeasible");
}
