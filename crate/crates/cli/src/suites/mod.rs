//! Experiment suites. Each suite is a list of named cases; a case draws all
//! its randomness from a generator seeded by `(run seed, case id)`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use xrank_core::arith::rational::format_rational;
use xrank_core::arith::Rational;

use crate::config::{case_seed, ExperimentConfig};
use crate::report::{CaseRecord, Report};

mod cusp_strata;
mod lemma_l1;
mod subspace;
mod sylvester;
mod terracini;
mod theorem_e0;

pub const SUITES: [&str; 6] = ["sylvester", "cusp-strata", "lemma-l1", "theorem-e0", "terracini", "subspace"];

pub type CaseResult = Result<CaseRecord, String>;
type CaseFn = Box<dyn Fn(&mut ChaCha8Rng) -> CaseResult + Send + Sync>;

pub struct Case {
    pub id: String,
    run: CaseFn,
}

impl Case {
    pub fn new(id: impl Into<String>, run: impl Fn(&mut ChaCha8Rng) -> CaseResult + Send + Sync + 'static) -> Self {
        Self { id: id.into(), run: Box::new(run) }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected one of {list}", list = SUITES.join(", "))]
    Unknown(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

pub fn cases(cfg: &ExperimentConfig) -> Result<Vec<Case>, SuiteError> {
    Ok(match cfg.suite.as_str() {
        "sylvester" => sylvester::cases(cfg),
        "cusp-strata" => cusp_strata::cases(cfg),
        "lemma-l1" => lemma_l1::cases(cfg),
        "theorem-e0" => theorem_e0::cases(cfg),
        "terracini" => terracini::cases(cfg),
        "subspace" => subspace::cases(cfg),
        other => return Err(SuiteError::Unknown(other.into())),
    })
}

fn run_case(seed: u64, case: &Case) -> CaseRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(seed, &case.id));
    match catch_unwind(AssertUnwindSafe(|| (case.run)(&mut rng))) {
        Ok(Ok(mut rec)) => {
            rec.id = case.id.clone();
            rec
        }
        Ok(Err(e)) => CaseRecord::failed(case.id.clone(), e),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            CaseRecord::failed(case.id.clone(), format!("panicked: {msg}"))
        }
    }
}

/// Runs every case of the configured suite, on `cfg.parallel` workers.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<Report, SuiteError> {
    let cases = cases(cfg)?;
    let records: Vec<CaseRecord> = if cfg.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel)
            .build()
            .map_err(|e| SuiteError::Pool(e.to_string()))?;
        pool.install(|| cases.par_iter().map(|c| run_case(cfg.seed, c)).collect())
    } else {
        cases.iter().map(|c| run_case(cfg.seed, c)).collect()
    };
    Ok(Report::new(cfg.clone(), records))
}

pub(crate) fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub(crate) fn ceil_half(k: usize) -> usize {
    k.div_ceil(2)
}

pub(crate) fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}
