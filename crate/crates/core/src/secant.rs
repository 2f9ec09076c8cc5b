//! Dimensions of secant varieties of monomially parameterized varieties:
//! closed formulas for rational normal curves and a Terracini probe that
//! stacks affine-cone tangent spaces at random rational points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::matrix::bareiss_rank;
use crate::arith::modp::{PrimeField, MERSENNE_61};
use crate::arith::rational::{binomial, ceil_div, clear_denominators, Rational};
use crate::error::{Error, Result};

/// Independent seeds tried by the probe; the maximum is reported.
pub const PROBE_SEEDS: u64 = 3;
/// Degenerate tangent spaces tolerated before giving up.
pub const MAX_DEGENERATE: usize = 10;

/// A projective variety given by monomials in affine parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum VarietySpec {
    /// Rational normal curve in `P^r`.
    Rnc(usize),
    /// `d`-th Veronese embedding of `P^m`: `(m, d)`.
    Veronese(usize, usize),
    /// Explicit exponent vectors, all of the same length `m`.
    Monomial(Vec<Vec<usize>>),
}

impl VarietySpec {
    /// Exponent vectors of the parameterization, one per ambient coordinate.
    pub fn monomials(&self) -> Vec<Vec<usize>> {
        match self {
            VarietySpec::Rnc(r) => (0..=*r).map(|i| vec![i]).collect(),
            VarietySpec::Veronese(m, d) => bounded_exponents(*m, *d),
            VarietySpec::Monomial(e) => e.clone(),
        }
    }

    /// Intrinsic dimension `m`.
    pub fn dim(&self) -> usize {
        match self {
            VarietySpec::Rnc(_) => 1,
            VarietySpec::Veronese(m, _) => *m,
            VarietySpec::Monomial(e) => e.first().map_or(0, Vec::len),
        }
    }

    /// Dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        match self {
            VarietySpec::Rnc(r) => *r,
            VarietySpec::Veronese(m, d) => {
                let c: BigInt = binomial(m + d, *m);
                usize::try_from(c).expect("ambient dimension fits") - 1
            }
            VarietySpec::Monomial(e) => e.len().saturating_sub(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        match self {
            VarietySpec::Rnc(r) if *r == 0 => bad("curve degree must be positive"),
            VarietySpec::Veronese(m, d) if *m == 0 || *d == 0 => bad("veronese needs m, d >= 1"),
            VarietySpec::Monomial(e) => {
                let m = self.dim();
                if e.len() < 2 || m == 0 || e.iter().any(|v| v.len() != m) {
                    return bad("monomial map needs at least two exponent vectors of one length");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn point_and_partials(&self, u: &[Rational]) -> Vec<Vec<Rational>> {
        let mons = self.monomials();
        let m = self.dim();
        let value = |e: &[usize]| -> Rational {
            e.iter()
                .zip(u)
                .fold(Rational::one(), |acc, (&k, x)| acc * crate::arith::rational::pow(x, k))
        };
        let mut rows = vec![mons.iter().map(|e| value(e)).collect::<Vec<_>>()];
        for i in 0..m {
            rows.push(
                mons.iter()
                    .map(|e| {
                        if e[i] == 0 {
                            return Rational::zero();
                        }
                        let mut f = e.clone();
                        f[i] -= 1;
                        value(&f) * Rational::from_integer(e[i].into())
                    })
                    .collect(),
            );
        }
        rows
    }
}

fn bounded_exponents(m: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(m, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, d, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Rnc(r) => write!(f, "rnc:{r}"),
            VarietySpec::Veronese(m, d) => write!(f, "veronese:{m},{d}"),
            VarietySpec::Monomial(e) => {
                let rows: Vec<String> = e
                    .iter()
                    .map(|v| v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "monomial:{}", rows.join(";"))
            }
        }
    }
}

/// Parses `rnc:R`, `veronese:M,D` or `monomial:e1,..,em;e1,..,em;...`.
impl FromStr for VarietySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognized variety `{s}`"));
        let (kind, params) = s.split_once(':').ok_or_else(bad)?;
        let nums = |p: &str| -> Result<Vec<usize>> {
            p.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
        };
        let spec = match kind.trim() {
            "rnc" => match nums(params)?.as_slice() {
                [r] => VarietySpec::Rnc(*r),
                _ => return Err(bad()),
            },
            "veronese" => match nums(params)?.as_slice() {
                [m, d] => VarietySpec::Veronese(*m, *d),
                _ => return Err(bad()),
            },
            "monomial" => VarietySpec::Monomial(params.split(';').map(nums).collect::<Result<_>>()?),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `dim sigma_s` of the rational normal curve in `P^r`.
pub fn secant_dim_curve(r: usize, s: usize) -> usize {
    r.min(2 * s - 1)
}

/// Generic rank of the rational normal curve in `P^r`.
pub fn generic_rank_curve(r: usize) -> usize {
    (r + 2) / 2
}

/// Expected generic rank of the Veronese variety, `ceil(C(m+d, m) / (m+1))`.
pub fn veronese_expected_rank(m: usize, d: usize) -> BigInt {
    let n: BigInt = binomial(m + d, m);
    let k = BigInt::from(m + 1);
    (n + &k - 1) / k
}

fn random_parameter<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-100..=100);
    let den: i64 = rng.gen_range(1..=10);
    Rational::new(num.into(), den.into())
}

fn probe_once(y: &VarietySpec, s: usize, rng: &mut ChaCha8Rng) -> Result<usize> {
    let m = y.dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut failures = 0;
    let mut accepted = 0;
    while accepted < s {
        let u: Vec<Rational> = (0..m).map(|_| random_parameter(rng)).collect();
        let tangent: Vec<Vec<BigInt>> =
            y.point_and_partials(&u).iter().map(|r| clear_denominators(r)).collect();
        if bareiss_rank(tangent.clone()) < m + 1 {
            failures += 1;
            if failures >= MAX_DEGENERATE {
                return Err(Error::DegenerateSample(failures));
            }
            continue;
        }
        rows.extend(tangent);
        accepted += 1;
    }
    Ok(bareiss_rank(rows) - 1)
}

/// Terracini probe: projective dimension of the span of the cone tangent
/// spaces at `s` random points. A lower bound for `dim sigma_s`, equal to it
/// for generic choices; the maximum over several seeded draws is returned.
pub fn terracini_dim(y: &VarietySpec, s: usize, seed: u64) -> Result<usize> {
    y.validate()?;
    if s == 0 {
        return Err(Error::InvalidArgument("secant order must be positive".into()));
    }
    let mut best = 0;
    for stream in 0..PROBE_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        best = best.max(probe_once(y, s, &mut rng)?);
    }
    Ok(best)
}

/// The same probe carried out modulo a large prime with parameters drawn
/// directly as residues. Used as an independent check of [`terracini_dim`].
pub fn terracini_dim_modp(y: &VarietySpec, s: usize, seed: u64) -> Result<usize> {
    y.validate()?;
    let field = PrimeField::new(MERSENNE_61);
    let mons = y.monomials();
    let m = y.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for _ in 0..s {
        let u: Vec<u64> = (0..m).map(|_| rng.gen_range(1..MERSENNE_61)).collect();
        let value = |e: &[usize]| {
            e.iter()
                .zip(&u)
                .fold(1u64, |acc, (&k, &x)| field.mul(acc, field.pow(x, k as u64)))
        };
        rows.push(mons.iter().map(|e| value(e)).collect::<Vec<u64>>());
        for i in 0..m {
            rows.push(
                mons.iter()
                    .map(|e| {
                        if e[i] == 0 {
                            return 0;
                        }
                        let mut f = e.clone();
                        f[i] -= 1;
                        field.mul(value(&f), e[i] as u64)
                    })
                    .collect(),
            );
        }
    }
    Ok(field.rank(rows) - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimMethod {
    Formula,
    Probe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub s: usize,
    pub dim: usize,
    pub method: DimMethod,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantProfile {
    pub variety: VarietySpec,
    pub rows: Vec<ProfileRow>,
    /// Least `s` filling the ambient space, if reached within the profile.
    pub generic_rank: Option<usize>,
}

impl SecantProfile {
    pub fn dim(&self, s: usize) -> Option<usize> {
        self.rows.get(s.checked_sub(1)?).map(|r| r.dim)
    }

    /// Differences `dim sigma_s - dim sigma_(s-1)` for `s >= 2`.
    pub fn increments(&self) -> Vec<usize> {
        self.rows.windows(2).map(|w| w[1].dim - w[0].dim).collect()
    }
}

fn dim_of(y: &VarietySpec, s: usize, seed: u64, force_probe: bool) -> Result<(usize, DimMethod)> {
    match y {
        VarietySpec::Rnc(r) if !force_probe => Ok((secant_dim_curve(*r, s), DimMethod::Formula)),
        _ => Ok((terracini_dim(y, s, seed)?, DimMethod::Probe)),
    }
}

/// `dim sigma_s` for `s = 1..=smax`, stopping once the ambient space is filled.
pub fn secant_profile(y: &VarietySpec, smax: usize, seed: u64, force_probe: bool) -> Result<SecantProfile> {
    y.validate()?;
    let top = y.ambient_dim();
    let mut rows = Vec::new();
    let mut generic_rank = None;
    for s in 1..=smax {
        let (dim, method) = dim_of(y, s, seed, force_probe)?;
        rows.push(ProfileRow { s, dim, method, seed });
        if dim == top {
            generic_rank = Some(s);
            break;
        }
    }
    Ok(SecantProfile { variety: y.clone(), rows, generic_rank })
}

/// Generic rank `alpha_Y`: the least `s` with `sigma_s` filling the ambient space.
pub fn generic_rank(y: &VarietySpec, seed: u64) -> Result<usize> {
    if let VarietySpec::Rnc(r) = y {
        return Ok(generic_rank_curve(*r));
    }
    let top = y.ambient_dim();
    secant_profile(y, top + 1, seed, false)?
        .generic_rank
        .ok_or_else(|| Error::Internal(format!("{y} never fills P^{top}")))
}

/// `b(Y, v)`: least `s` with `dim sigma_s >= n + 1`, for `Y` in `P^(n+v)`, `v >= 1`.
pub fn b_of_y_v(y: &VarietySpec, n: usize, seed: u64) -> Result<usize> {
    y.validate()?;
    if y.ambient_dim() <= n {
        return Err(Error::InvalidArgument("ambient dimension must exceed n".into()));
    }
    if let VarietySpec::Rnc(_) = y {
        return Ok((n + 3) / 2);
    }
    for s in 1..=y.ambient_dim() + 1 {
        if dim_of(y, s, seed, false)?.0 >= n + 1 {
            return Ok(s);
        }
    }
    Err(Error::Internal("secant dimensions never reach n + 1".into()))
}

/// Bounds attached to a projection `X` of `Y` (dimension `m`, in `P^(n+v)`)
/// from a general `(v-1)`-plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionBounds {
    /// Lower end of the range for `b(Y, v)`.
    pub lower: i64,
    /// Upper end of the range for `b(Y, v)`.
    pub upper: i64,
    /// Rank bound `alpha_Y` valid at every point of `X`.
    pub generic_rank_bound: i64,
    /// Rank bound `n + 1 - m` for any nondegenerate `m`-dimensional variety in `P^n`.
    pub baseline: i64,
}

pub fn theorem_e0_bounds(m: usize, n: usize, v: usize, alpha_y: usize) -> Result<ProjectionBounds> {
    if m == 0 || n == 0 || v == 0 || alpha_y == 0 {
        return Err(Error::InvalidArgument("all inputs must be positive".into()));
    }
    let (m, n, v, alpha) = (m as i64, n as i64, v as i64, alpha_y as i64);
    Ok(ProjectionBounds {
        lower: ceil_div(n + 1, m + 1),
        upper: alpha - ceil_div(v - m - 1, m + 1),
        generic_rank_bound: alpha,
        baseline: n + 1 - m,
    })
}

/// Sharper upper bounds for `b(Y, v)` read off a secant profile, with
/// `a = dim sigma_b`: `alpha - ceil((n+v-a)/(m+1))` always, and
/// `alpha - ceil((n+v-a)/m)` when some increment up to `b` is at most `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedBounds {
    pub a: usize,
    pub upper: i64,
    pub small_increment_upper: Option<i64>,
}

pub fn refined_bounds(
    profile: &SecantProfile,
    n: usize,
    v: usize,
    b: usize,
    alpha_y: usize,
) -> Option<RefinedBounds> {
    let m = profile.variety.dim() as i64;
    let a = profile.dim(b)?;
    let gap = (n + v) as i64 - a as i64;
    let alpha = alpha_y as i64;
    let small = profile
        .increments()
        .iter()
        .take(b.saturating_sub(1))
        .any(|&inc| (inc as i64) <= m);
    Some(RefinedBounds {
        a,
        upper: alpha - ceil_div(gap, m + 1),
        small_increment_upper: small.then(|| alpha - ceil_div(gap, m)),
    })
}

/// Whether `m > (2(n+v) + sing_dim)/3 - 1`, the range in which the generic
/// rank is 2. `sing_dim` is the dimension of the singular locus (-1 if smooth).
pub fn zak_range(m: usize, ambient: usize, sing_dim: i64) -> bool {
    3 * (m as i64 + 1) > 2 * ambient as i64 + sing_dim
}
