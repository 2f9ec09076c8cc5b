//! Library side of the `xrank` subcommands: each returns the JSON (or CSV)
//! text to print.

use serde_json::json;
use xrank_core::arith::Rational;
use xrank_core::forms::{decompose, sylvester_rank, BinaryForm};
use xrank_core::projection::{classify_projection, pencil_analysis, ProjectionCenter};
use xrank_core::secant::{secant_profile, VarietySpec};
use xrank_core::subspace::{line_curve_analysis, LinearSubspace};

use crate::suites::rats;

pub type CmdResult<T> = Result<T, xrank_core::Error>;

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn rank_form(f: &BinaryForm) -> CmdResult<String> {
    let cert = sylvester_rank(f)?;
    let dec = if f.is_rational() { Some(decompose(f)?) } else { None };
    Ok(pretty(&json!({ "form": f, "certificate": cert, "decomposition": dec })))
}

/// The JSON text and whether the value is certified exact.
pub fn projected_rank(center: &ProjectionCenter, point: &[Rational]) -> CmdResult<(String, bool)> {
    let analysis = pencil_analysis(center, point)?;
    let cert = analysis.certificate();
    let certified = cert.certified;
    let text = pretty(&json!({
        "center": center.form(),
        "point": rats(point),
        "rank": cert.rank,
        "certified": certified,
        "center_rank": analysis.center_rank,
        "certificate": cert,
        "pencil": analysis,
    }));
    Ok((text, certified))
}

pub fn classify(center: &ProjectionCenter) -> CmdResult<String> {
    let class = classify_projection(center)?;
    Ok(pretty(&json!({ "center": center.form(), "class": class })))
}

pub fn line_rank(center: &ProjectionCenter, a: &[Rational], b: &[Rational]) -> CmdResult<String> {
    let line = LinearSubspace::line(a, b)?;
    let analysis = line_curve_analysis(center, &line)?;
    Ok(pretty(&json!({
        "center": center.form(),
        "line": [rats(a), rats(b)],
        "degree_identity": analysis.degree_identity_holds(),
        "analysis": analysis,
    })))
}

pub fn secant_profile_text(y: &VarietySpec, smax: usize, seed: u64, probe: bool, csv: bool) -> CmdResult<String> {
    let profile = secant_profile(y, smax, seed, probe)?;
    if csv {
        let mut out = String::from("s,dim,method\n");
        for r in &profile.rows {
            let method = serde_json::to_value(r.method).expect("method serializes");
            out.push_str(&format!("{},{},{}\n", r.s, r.dim, method.as_str().unwrap_or("")));
        }
        return Ok(out);
    }
    Ok(pretty(&serde_json::to_value(&profile).expect("profile serializes")))
}
