//! Ranks of points and linear subspaces with respect to a projected
//! rational normal curve: closed bounds, the line-versus-curve analysis,
//! and a brute-force search over sampled curve points.

mod line;
mod oracle;
mod sample;

use serde::Serialize;

use crate::arith::rational::Rational;
use crate::arith::vectors_rank;
use crate::error::{Error, Result};
use crate::projection::to_scalars;

pub use line::{line_curve_analysis, IntersectionParam, LineAnalysis, LineConclusion, SinglePoint};
pub use oracle::{brute_force_point_rank, brute_force_subspace_rank, OracleOutcome, MAX_CAP};
pub use sample::CurveSample;

/// A projective subspace of `P^n` given by a basis of coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSubspace {
    #[serde(serialize_with = "ser_basis")]
    basis: Vec<Vec<Rational>>,
}

fn ser_basis<S: serde::Serializer>(b: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use crate::arith::rational::format_rational;
    s.collect_seq(b.iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()))
}

impl LinearSubspace {
    pub fn new(basis: Vec<Vec<Rational>>) -> Result<Self> {
        let len = basis.first().map(Vec::len).unwrap_or(0);
        if basis.is_empty() || len < 2 || basis.iter().any(|v| v.len() != len) {
            return Err(Error::InvalidArgument("subspace needs vectors of one length".into()));
        }
        let rows: Vec<_> = basis.iter().map(|v| to_scalars(v)).collect();
        if vectors_rank(&rows)? != basis.len() {
            return Err(Error::InvalidArgument("basis vectors are linearly dependent".into()));
        }
        Ok(Self { basis })
    }

    pub fn point(p: &[Rational]) -> Result<Self> {
        Self::new(vec![p.to_vec()])
    }

    pub fn line(a: &[Rational], b: &[Rational]) -> Result<Self> {
        Self::new(vec![a.to_vec(), b.to_vec()])
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// Dimension `n` of the ambient `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len() - 1
    }
}

/// Rank bound `n + 1 - m` for an `m`-dimensional subspace missing the curve.
pub fn subspace_rank_upper(n: usize, m: usize) -> Result<usize> {
    if m < 1 || m + 1 > n {
        return Err(Error::InvalidArgument(format!("need 1 <= m <= n - 1, got m = {m}, n = {n}")));
    }
    Ok(n + 1 - m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CappedBound {
    pub bound: usize,
    /// The formula exceeded the trivial bound `n + 1` and was clamped.
    pub capped: bool,
}

/// Rank bound `n + 2 - m + e` for an `m`-dimensional subspace whose reduced
/// intersection with the curve spans a space of dimension `e` (`-1` if empty),
/// clamped to `n + 1`.
pub fn subspace_rank_bound_i3(n: usize, m: usize, e: i64) -> Result<CappedBound> {
    if e < -1 {
        return Err(Error::InvalidArgument("span dimension must be at least -1".into()));
    }
    let raw = n as i64 + 2 - m as i64 + e;
    let cap = n as i64 + 1;
    if raw < 1 {
        return Err(Error::InvalidArgument("subspace dimension exceeds the ambient space".into()));
    }
    Ok(CappedBound { bound: raw.min(cap) as usize, capped: raw > cap })
}
