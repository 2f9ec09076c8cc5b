use rand::Rng;
use xrank_core::projection::{cusp_stratum, pencil_rank, OsculatingFlag};
use xrank_core::subspace::{brute_force_point_rank, CurveSample, OracleOutcome};

use super::{err, rats, Case};
use crate::config::ExperimentConfig;
use crate::generate::{cuspidal_center, stratum_point};
use crate::report::{BoundRow, CaseRecord, Relation};

const POINTS_PER_STRATUM: usize = 5;

pub fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let sample_size = cfg.sample_or(200);
    let per = cfg.trials_or(POINTS_PER_STRATUM);
    let max_n = cfg.max_degree_or(6).saturating_sub(1);
    let mut out = Vec::new();
    for n in 3..=max_n.min(5) {
        for t in 2..=n {
            for i in 0..per {
                out.push(Case::new(format!("n{n}/t{t}/{i}"), move |rng| {
                    let center = cuspidal_center(rng, n + 1)?;
                    let flag = OsculatingFlag::new(&center).map_err(err)?;
                    let (p, witness) = stratum_point(rng, &center, &flag, t)?;
                    let expected = (n + 2 - t) as i64;
                    let cert = pencil_rank(&center, &p).map_err(err)?;
                    let stratum = cusp_stratum(&flag, &p).map_err(err)?;
                    let sample = CurveSample::new(&center, rng.gen(), sample_size, &witness).map_err(err)?;
                    let oracle = brute_force_point_rank(&sample, &p, n + 1).map_err(err)?;
                    let found = match &oracle {
                        OracleOutcome::Found { size, .. } => *size as i64,
                        OracleOutcome::ExceedsCap { cap } => *cap as i64 + 1,
                    };
                    let mut rec = CaseRecord::new("");
                    rec.input("center", center.form())
                        .input("point", rats(&p))
                        .input("t", t)
                        .output("cusp", &flag.cusp)
                        .output("stratum", &stratum)
                        .output("certificate", &cert)
                        .output("oracle", &oracle)
                        .output("sample_size", sample.len())
                        .claim("rank", cert.rank, if cert.certified { "pencil" } else { "pencil-upper-bound" })
                        .claim("sample rank", found, "oracle")
                        .check("pencil value certified", cert.certified)
                        .check("point lies in the requested stratum", stratum.t == t)
                        .bound(BoundRow::new("cusp", "pencil rank", cert.rank as i64, Relation::Equal, expected))
                        .bound(BoundRow::new("cusp", "stratum rank", stratum.rank as i64, Relation::Equal, expected))
                        .bound(BoundRow::new("cusp", "oracle rank", found, Relation::Equal, expected));
                    Ok(rec)
                }));
            }
        }
    }
    out
}
