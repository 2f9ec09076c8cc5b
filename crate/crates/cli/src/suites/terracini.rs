use rand::Rng;
use xrank_core::secant::{secant_dim_curve, terracini_dim, terracini_dim_modp, VarietySpec};

use super::{err, Case};
use crate::config::ExperimentConfig;
use crate::report::CaseRecord;

const SEEDS: usize = 3;

/// Probe `dim sigma_s(y)` over the rationals and, with an unrelated seed,
/// modulo a prime; both must equal `expected`.
fn probe_case(id: String, y: VarietySpec, s: usize, expected: usize) -> Case {
    Case::new(id, move |rng| {
        let seed: u64 = rng.gen();
        let check_seed: u64 = rng.gen();
        let dim = terracini_dim(&y, s, seed).map_err(err)?;
        let dim_p = terracini_dim_modp(&y, s, check_seed).map_err(err)?;
        let mut rec = CaseRecord::new("");
        rec.input("variety", y.to_string())
            .input("s", s)
            .input("seed", seed)
            .input("check_seed", check_seed)
            .output("dim", dim)
            .output("dim_modp", dim_p)
            .output("expected", expected)
            .claim("dim sigma_s", dim, "probe")
            .check("probe matches expected dimension", dim == expected)
            .check("modular probe agrees", dim_p == dim);
        Ok(rec)
    })
}

pub fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let seeds = cfg.trials_or(SEEDS);
    let mut out = Vec::new();
    for r in 1..=10 {
        for s in 1..=5 {
            for k in 0..seeds {
                out.push(probe_case(format!("rnc{r:02}/s{s}/seed{k}"), VarietySpec::Rnc(r), s, secant_dim_curve(r, s)));
            }
        }
    }
    // Defective Veronese embeddings: the expected count would fill the space.
    out.push(probe_case("veronese2-4/s5".into(), VarietySpec::Veronese(2, 4), 5, 13));
    out.push(probe_case("veronese2-2/s2".into(), VarietySpec::Veronese(2, 2), 2, 4));
    out
}
