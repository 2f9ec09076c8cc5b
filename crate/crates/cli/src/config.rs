use std::path::PathBuf;

use serde::Serialize;

/// Settings of one suite run. Only the serialized fields affect results;
/// worker count, output path and verbosity never change the report body.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub suite: String,
    pub seed: u64,
    /// Largest form degree used by random generators.
    pub max_degree: Option<usize>,
    /// Number of curve points in oracle samples.
    pub sample_size: Option<usize>,
    /// Number of random cases per group.
    pub trials: Option<usize>,
    #[serde(skip)]
    pub parallel: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub verbose: u8,
}

impl ExperimentConfig {
    pub fn new(suite: &str, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            seed,
            max_degree: None,
            sample_size: None,
            trials: None,
            parallel: 1,
            out: None,
            verbose: 0,
        }
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    pub fn sample_or(&self, default: usize) -> usize {
        self.sample_size.unwrap_or(default)
    }

    pub fn max_degree_or(&self, default: usize) -> usize {
        self.max_degree.unwrap_or(default)
    }
}

/// 64-bit seed of a single case, a function of the run seed and the case id
/// only (so execution order and worker count do not matter).
pub fn case_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a over the id, then a splitmix64 finalizer.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = seed ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_depend_on_both_inputs() {
        assert_eq!(case_seed(7, "a/1"), case_seed(7, "a/1"));
        assert_ne!(case_seed(7, "a/1"), case_seed(8, "a/1"));
        assert_ne!(case_seed(7, "a/1"), case_seed(7, "a/2"));
    }
}
