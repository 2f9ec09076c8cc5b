use rand::Rng;
use xrank_core::forms::decompose;
use xrank_core::projection::pencil_analysis;
use xrank_core::subspace::{brute_force_point_rank, CurveSample, OracleOutcome, MAX_CAP};

use super::{err, rats, Case};
use crate::config::ExperimentConfig;
use crate::generate::{distinct_points, nonzero_int, smooth_center, sum_of_powers};
use crate::report::{BoundRow, CaseRecord, Relation};

pub fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let sample_size = cfg.sample_or(200);
    let max_n = cfg.max_degree_or(7).saturating_sub(1).clamp(3, 6);
    (0..cfg.trials_or(50))
        .map(|i| {
            Case::new(format!("pair/{i:02}"), move |rng| {
                let n = rng.gen_range(3..=max_n);
                let d = n + 1;
                let center = smooth_center(rng, d)?;
                // P is the image of a sum of at most alpha_X rational powers.
                // Past the generic rank of X the minimizing witnesses are
                // typically irrational and no rational sample can hold them.
                let alpha_x = (n + 2) / 2;
                let (p, pts) = loop {
                    let k = rng.gen_range(1..=alpha_x.min(3));
                    let pts = distinct_points(rng, k, 4, &[])?;
                    let cs: Vec<i64> = (0..k).map(|_| nonzero_int(rng, 3)).collect();
                    let Ok(a) = sum_of_powers(&pts, &cs, d) else { continue };
                    if let Ok(p) = center.project(&a) {
                        break (p, pts);
                    }
                };
                let analysis = pencil_analysis(&center, &p).map_err(err)?;
                let mu = analysis.rank();
                let certified = analysis.certified();
                let mut forced = pts.clone();
                let member = &analysis.best().member;
                if member.is_rational() {
                    let dec = decompose(member).map_err(err)?;
                    forced.extend(dec.rational.iter().map(|t| t.point.clone()));
                }
                let sample = CurveSample::new(&center, rng.gen(), sample_size, &forced).map_err(err)?;
                let cap = mu.clamp(1, MAX_CAP);
                let oracle = brute_force_point_rank(&sample, &p, cap).map_err(err)?;
                let found = match &oracle {
                    OracleOutcome::Found { size, .. } => *size as i64,
                    OracleOutcome::ExceedsCap { cap } => *cap as i64 + 1,
                };
                let mut rec = CaseRecord::new("");
                rec.input("center", center.form())
                    .input("point", rats(&p))
                    .input("n", n)
                    .output("center_rank", analysis.center_rank)
                    .output("pencil", &analysis)
                    .output("oracle", &oracle)
                    .claim("rank", mu, if certified { "pencil" } else { "pencil-upper-bound" })
                    .claim("sample rank", found, "oracle")
                    .bound(BoundRow::new("e0a", "pencil rank", mu as i64, Relation::AtMost, (n as i64 + 4) / 2));
                if certified {
                    rec.bound(BoundRow::new("l1", "oracle rank", found, Relation::Equal, mu as i64));
                } else {
                    rec.bound(BoundRow::new("l1", "oracle rank", found, Relation::AtLeast, mu as i64));
                }
                Ok(rec)
            })
        })
        .collect()
}
