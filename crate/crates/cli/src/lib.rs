//! Front end and experiment harness for `xrank-core`.

pub mod commands;
pub mod config;
pub mod generate;
pub mod input;
pub mod report;
pub mod suites;

/// Process exit codes of the `xrank` binary.
pub mod exit {
    pub const OK: i32 = 0;
    /// Computation error, or a `verify` run with failing cases.
    pub const FAILURE: i32 = 1;
    /// Malformed input or unknown suite.
    pub const USAGE: i32 = 2;
    /// `projected-rank` could only certify an upper bound.
    pub const UPPER_BOUND_ONLY: i32 = 3;
}
