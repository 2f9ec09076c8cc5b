//! Runs the `xrank` binary and checks outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use xrank_core::arith::rational::format_rational;
use xrank_core::forms::BinaryForm;
use xrank_core::projection::ProjectionCenter;

fn xrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xrank"))
        .args(args)
        .env_remove("XRANK_SEED")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("xrank-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn list(v: &[num_rational::BigRational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

#[test]
fn rank_form_examples() {
    let o = xrank(&["rank-form", "--coeffs", "1,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["certificate"]["rank"], 2);

    // x y^3
    let o = xrank(&["rank-form", "--coeffs", "0,0,0,1,0"]);
    assert_eq!(json(&o)["certificate"]["rank"], 4);

    let o = xrank(&["rank-form", "--random", "7", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let c = &json(&o)["certificate"];
    let (r, br) = (c["rank"].as_u64().unwrap(), c["border_rank"].as_u64().unwrap());
    assert_eq!(r, 4);
    assert!(r == br || r == 7 + 2 - br);

    let f = temp_file("form.json", r#"{"degree": 3, "coeffs": [1, 0, "-3/2", 0]}"#);
    let o = xrank(&["rank-form", "--form", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["decomposition"].is_object());
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(xrank(&["rank-form", "--coeffs", "1,x,2"]).status.code(), Some(2));
    assert_eq!(xrank(&["rank-form", "--coeffs", "0,0,0"]).status.code(), Some(2));
    assert_eq!(xrank(&["rank-form"]).status.code(), Some(2));
    assert_eq!(xrank(&["no-such-command"]).status.code(), Some(2));
    let bad = temp_file("bad.json", r#"{"degree": 3, "coeffs": [1, 2]}"#);
    assert_eq!(xrank(&["classify", "--center", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = "/nonexistent/center.json";
    assert_eq!(xrank(&["classify", "--center", missing]).status.code(), Some(2));
    assert_eq!(xrank(&["secant-profile", "--variety", "torus:3", "--smax", "2"]).status.code(), Some(2));
    assert_eq!(xrank(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn projected_rank_exit_codes() {
    // Cusp quartic x y^3; the image of x^2 y^2 lies in the second osculating stratum.
    let cusp = temp_file("cusp.json", r#"{"degree": 4, "coeffs": [0, 0, 0, 1, 0]}"#);
    let c = ProjectionCenter::new(BinaryForm::monomial(1, 3).unwrap()).unwrap();
    let p = c.project(&BinaryForm::monomial(2, 2).unwrap()).unwrap();
    let o = xrank(&["projected-rank", "--center", cusp.to_str().unwrap(), "--point", &list(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["certified"], true);

    // Nodal center: the center has rank 2, so nothing above rank 1 is certified.
    let node = temp_file("node.json", r#"{"degree": 4, "coeffs": [1, 0, 0, 0, 1]}"#);
    let o = xrank(&["projected-rank", "--center", node.to_str().unwrap(), "--point", "1,2,-1,3"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["certified"], false);

    let smooth = temp_file("smooth.json", r#"{"degree": 7, "coeffs": [1, -2, 0, 3, 1, -1, 2, 1]}"#);
    let o = xrank(&["projected-rank", "--center", smooth.to_str().unwrap(), "--point", "3,-1,4,1,-5,9,2"]);
    assert!(matches!(o.status.code(), Some(0 | 3)));
    assert!(json(&o)["rank"].as_u64().unwrap() <= 4);

    // Wrong number of coordinates.
    let o = xrank(&["projected-rank", "--center", node.to_str().unwrap(), "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_and_line_rank() {
    let node = temp_file("node4.json", r#"{"degree": 4, "coeffs": [1, 0, 0, 0, 1]}"#);
    let o = xrank(&["classify", "--center", node.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["class"]["kind"], "nodal");

    let c = ProjectionCenter::new(BinaryForm::from_i64(&[1, 2, 0, -1, 3, 1]).unwrap()).unwrap();
    let a = c.project_point(&xrank_core::forms::CurvePoint::affine(xrank_core::arith::rational::rat(2)));
    let b = c.project_point(&xrank_core::forms::CurvePoint::affine(xrank_core::arith::rational::rat(-1)));
    let center = temp_file("quintic.json", r#"{"degree": 5, "coeffs": [1, 2, 0, -1, 3, 1]}"#);
    let quote = |v: &[num_rational::BigRational]| {
        v.iter().map(|x| format!("\"{}\"", format_rational(x))).collect::<Vec<_>>().join(",")
    };
    let line = temp_file("line.json", &format!("[[{}],[{}]]", quote(&a), quote(&b)));
    let o = xrank(&["line-rank", "--center", center.to_str().unwrap(), "--line", line.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["degree_identity"], true);
    assert_eq!(v["analysis"]["conclusion"]["statement"]["rank"], 2);
}

#[test]
fn secant_profile_formats() {
    let o = xrank(&["secant-profile", "--variety", "rnc:7", "--smax", "4", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let dims: Vec<u64> = json(&o)["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 3, 5, 7]);

    let o = xrank(&["secant-profile", "--variety", "veronese:2,2", "--smax", "3", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("s,dim,method"));
    assert_eq!(text.lines().nth(2), Some("2,4,probe"));
}

#[test]
fn verify_reports_and_exit_status() {
    let a = xrank(&["verify", "--suite", "terracini", "--seed", "7", "--compare"]);
    assert_eq!(a.status.code(), Some(0));
    let b = Command::new(env!("CARGO_BIN_EXE_xrank"))
        .args(["verify", "--suite", "terracini", "--compare"])
        .env("XRANK_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let body = json(&a);
    assert_eq!(body["config"]["seed"], 7);
    assert!(body.get("header").is_none());

    let full = json(&xrank(&["verify", "--suite", "terracini", "--seed", "7", "--parallel", "2"]));
    assert_eq!(full["header"]["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(full["body"], body);

    // A sample far too small for the oracle makes every case fail.
    let o = xrank(&["verify", "--suite", "cusp-strata", "--trials", "1", "--sample-size", "1", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(1));

    let out = temp_file("report.csv", "");
    let o = xrank(&["verify", "--suite", "terracini", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out).unwrap();
    assert!(csv.starts_with("id,passed,bounds,failures\n"));
    assert_eq!(csv.lines().count(), 153);
}
