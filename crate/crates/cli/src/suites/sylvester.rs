use rand::Rng;
use xrank_core::forms::{decompose, sylvester_rank, BinaryForm};
use xrank_core::projection::{classify_projection, CurveClass, ProjectionCenter};

use super::{err, Case, CaseResult};
use crate::config::ExperimentConfig;
use crate::generate::{low_rank_form, nodal_center, random_form, tangential_form};
use crate::report::{BoundRow, CaseRecord, Relation};

/// Rank, border rank, dichotomy and an exactly re-evaluated decomposition.
fn rank_record(f: &BinaryForm) -> CaseResult {
    let d = f.degree();
    let cert = sylvester_rank(f).map_err(err)?;
    let dec = decompose(f).map_err(err)?;
    let mut rec = CaseRecord::new("");
    rec.input("form", f)
        .output("rank", cert.rank)
        .output("border_rank", cert.border_rank)
        .output("witness", &cert.witness)
        .output("decomposition", &dec)
        .claim("rank", cert.rank, "apolar")
        .check("decomposition re-evaluates to the form", dec.reproduces(f))
        .check("decomposition size equals rank", dec.size() == cert.rank)
        .check(
            "rank in {br, d - br + 2}",
            cert.rank == cert.border_rank || cert.rank == d + 2 - cert.border_rank,
        );
    Ok(rec)
}

pub fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let max_d = cfg.max_degree_or(8).max(2);
    let mut out = Vec::new();
    for a in 1..=max_d {
        for b in a..=max_d - a {
            out.push(Case::new(format!("monomial/a{a}-b{b}"), move |_| {
                let f = BinaryForm::monomial(a, b).map_err(err)?;
                let mut rec = rank_record(&f)?;
                let rank = rec.outputs["rank"].as_i64().unwrap_or(-1);
                rec.input("a", a).input("b", b).check("rank equals b + 1", rank == b as i64 + 1);
                Ok(rec)
            }));
        }
    }
    for i in 0..cfg.trials_or(500) {
        out.push(Case::new(format!("random/{i:03}"), move |rng| {
            let d = rng.gen_range(2..=max_d);
            // Generic forms, short sums of powers, and tangential forms
            // (which land on the d - br + 2 side of the dichotomy).
            let f = match i % 3 {
                0 => random_form(rng, d, 5),
                1 => {
                    let k = rng.gen_range(1..=d / 2 + 1);
                    low_rank_form(rng, d, k)?
                }
                _ => {
                    let extra = rng.gen_range(0..=(d / 2).saturating_sub(2));
                    tangential_form(rng, d, extra)?
                }
            };
            rank_record(&f)
        }));
    }
    for d in 3..=max_d {
        out.push(Case::new(format!("node/d{d}"), move |rng| {
            let c = nodal_center(rng, d)?;
            let class = classify_projection(&c).map_err(err)?;
            let mut rec = rank_record(c.form())?;
            rec.output("class", &class)
                .check("curve is nodal", matches!(class, CurveClass::Nodal { .. }))
                .bound(BoundRow::new("node", "rank of center", c.center_rank() as i64, Relation::Equal, 2));
            Ok(rec)
        }));
    }
    for n in 2..max_d {
        out.push(Case::new(format!("cusp/n{n}"), move |_| {
            let f = BinaryForm::monomial(1, n).map_err(err)?;
            let mut rec = rank_record(&f)?;
            let rank = rec.outputs["rank"].as_i64().unwrap_or(-1);
            rec.bound(BoundRow::new("cusp", "rank of x y^n", rank, Relation::Equal, n as i64 + 1));
            let c = ProjectionCenter::new(f).map_err(err)?;
            let class = classify_projection(&c).map_err(err)?;
            rec.output("class", &class)
                .check("curve is cuspidal", matches!(class, CurveClass::Cuspidal { .. }));
            Ok(rec)
        }));
    }
    out
}
