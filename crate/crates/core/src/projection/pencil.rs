//! Rank of a projected point as the minimum rank along its pencil of lifts.
//!
//! The lifts of `P` are `p + lambda O`. Their border rank is constant away
//! from the roots of the gcd of the maximal nonvanishing minors of the middle
//! catalecticant, so the minimum is found among a few generic samples and
//! those special values (rational ones exactly, irrational ones by dynamic
//! evaluation over `Q[lambda]/(h)`).

use serde::Serialize;

use super::ProjectionCenter;
use crate::arith::qpoly::QPoly;
use crate::arith::rational::{rat, Rational};
use crate::arith::{
    evaluate_branches, matrix::qpoly_det, matrix::qpoly_rank, rational_roots,
    squarefree_factor_moduli, Modulus, Scalar,
};
use crate::error::{Error, Result};
use crate::forms::{sylvester_rank, BinaryForm, RankCertificate};

/// Number of generic pencil parameters sampled.
const GENERIC_SAMPLES: usize = 5;

/// A projected point together with one lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilLift {
    #[serde(with = "crate::arith::rational::serde_rationals")]
    pub point: Vec<Rational>,
    pub lift: BinaryForm,
}

impl PencilLift {
    /// The lift with zero pivot coefficient.
    pub fn new(center: &ProjectionCenter, point: &[Rational]) -> Result<Self> {
        let lift = center.lift(point)?;
        Ok(Self { point: point.to_vec(), lift })
    }

    /// Uses `lift` as the base of the pencil; it must project onto `point`.
    pub fn with_lift(center: &ProjectionCenter, point: &[Rational], lift: BinaryForm) -> Result<Self> {
        let image = center.project(&lift)?;
        if image != point {
            return Err(Error::InvalidArgument("lift does not project onto the point".into()));
        }
        Ok(Self { point: point.to_vec(), lift })
    }

    /// The pencil member `p + lambda O`.
    pub fn member(&self, center: &ProjectionCenter, lambda: &Scalar) -> Result<BinaryForm> {
        self.lift.add_scaled(lambda, center.form())
    }
}

/// Which member of the pencil a candidate refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaChoice {
    Generic {
        #[serde(with = "crate::arith::rational::serde_rational")]
        lambda: Rational,
    },
    Special {
        #[serde(with = "crate::arith::rational::serde_rational")]
        lambda: Rational,
    },
    /// Any root of `modulus`; the rank is the same at all of them.
    Algebraic { modulus: QPoly },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilCandidate {
    pub choice: LambdaChoice,
    pub rank: usize,
    pub border_rank: usize,
    #[serde(skip)]
    pub member: BinaryForm,
    #[serde(skip)]
    pub certificate: RankCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilAnalysis {
    pub lift: PencilLift,
    pub center_rank: usize,
    pub generic_border_rank: usize,
    /// Gcd of the minors whose roots are the special parameters.
    pub special_polynomial: QPoly,
    pub candidates: Vec<PencilCandidate>,
    /// Index of the first candidate of minimal rank.
    pub best: usize,
}

impl PencilAnalysis {
    pub fn best(&self) -> &PencilCandidate {
        &self.candidates[self.best]
    }

    pub fn rank(&self) -> usize {
        self.best().rank
    }

    /// The pencil minimum equals the rank on the projected curve whenever
    /// it is below the rank of the center.
    pub fn certified(&self) -> bool {
        self.rank() < self.center_rank
    }

    pub fn certificate(&self) -> RankCertificate {
        let best = self.best();
        RankCertificate { certified: self.certified(), ..best.certificate.clone() }
    }
}

fn catalecticant_over_pencil(lift: &BinaryForm, o: &BinaryForm, s: usize) -> Vec<Vec<QPoly>> {
    let d = lift.degree();
    let c = lift.divided_coeffs();
    let e = o.divided_coeffs();
    (0..=d - s)
        .map(|j| {
            (0..=s)
                .map(|k| {
                    QPoly::new(vec![
                        c[j + k].to_rational().unwrap(),
                        e[j + k].to_rational().unwrap(),
                    ])
                })
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Monic gcd of all `k x k` minors, stopping early once it is constant.
fn minors_gcd(m: &[Vec<QPoly>], k: usize) -> QPoly {
    let rows = m.len();
    let cols = m[0].len();
    let mut g = QPoly::zero();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Vec<Vec<QPoly>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&qpoly_det(sub));
            if !g.is_zero() && g.is_constant() {
                return QPoly::one();
            }
        }
    }
    g.monic()
}

fn candidate(choice: LambdaChoice, member: BinaryForm) -> Result<PencilCandidate> {
    let certificate = sylvester_rank(&member)?;
    Ok(PencilCandidate {
        choice,
        rank: certificate.rank,
        border_rank: certificate.border_rank,
        member,
        certificate,
    })
}

/// Ranks along the whole pencil of lifts of `point`.
pub fn pencil_analysis(center: &ProjectionCenter, point: &[Rational]) -> Result<PencilAnalysis> {
    let lift = PencilLift::new(center, point)?;
    analyze_lift(center, lift)
}

/// As [`pencil_analysis`] with a caller-chosen lift.
pub fn analyze_lift(center: &ProjectionCenter, lift: PencilLift) -> Result<PencilAnalysis> {
    let o = center.form();
    let d = center.degree();
    let cat = catalecticant_over_pencil(&lift.lift, o, d / 2);
    let generic_border_rank = qpoly_rank(cat.clone()).max(1);
    let special_polynomial = minors_gcd(&cat, generic_border_rank);
    let (special_roots, moduli) = if special_polynomial.degree() >= 1 {
        (
            rational_roots(&special_polynomial)?,
            squarefree_factor_moduli(&special_polynomial.squarefree_part())?,
        )
    } else {
        (Vec::new(), Vec::new())
    };

    let mut candidates = Vec::new();
    let generic = (1..)
        .flat_map(|k: i64| [rat(k), rat(-k)])
        .filter(|l| !special_roots.contains(l))
        .take(GENERIC_SAMPLES);
    for lambda in generic {
        let member = lift.member(center, &Scalar::Rat(lambda.clone()))?;
        candidates.push(candidate(LambdaChoice::Generic { lambda }, member)?);
    }
    for lambda in &special_roots {
        let member = lift.member(center, &Scalar::Rat(lambda.clone()))?;
        candidates.push(candidate(LambdaChoice::Special { lambda: lambda.clone() }, member)?);
    }
    for h in moduli {
        let branches = evaluate_branches(Modulus::new(h)?, |m| {
            let member = lift.member(center, &m.generator())?;
            let cert = sylvester_rank(&member)?;
            Ok::<_, Error>((member, cert))
        })?;
        for b in branches {
            let (member, certificate) = b.value;
            candidates.push(PencilCandidate {
                choice: LambdaChoice::Algebraic { modulus: b.modulus.poly().clone() },
                rank: certificate.rank,
                border_rank: certificate.border_rank,
                member,
                certificate,
            });
        }
    }
    let min = candidates.iter().map(|c| c.rank).min().expect("generic samples exist");
    let best = candidates.iter().position(|c| c.rank == min).unwrap();
    Ok(PencilAnalysis {
        lift,
        center_rank: center.center_rank(),
        generic_border_rank,
        special_polynomial,
        candidates,
        best,
    })
}

/// Minimal rank along the pencil, certified as the exact rank on the
/// projected curve when it is below the rank of the center.
pub fn pencil_rank(center: &ProjectionCenter, point: &[Rational]) -> Result<RankCertificate> {
    Ok(pencil_analysis(center, point)?.certificate())
}

/// Minimal length of an apolar scheme over the pencil, and whether a
/// reduced scheme (a genuine point set) attains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeLength {
    pub length: usize,
    pub reduced: bool,
    /// Schemes through the singular point are not excluded.
    pub singular_point_checked: bool,
}

pub fn min_scheme_length(center: &ProjectionCenter, point: &[Rational]) -> Result<SchemeLength> {
    let analysis = pencil_analysis(center, point)?;
    let length = analysis.candidates.iter().map(|c| c.border_rank).min().unwrap();
    let reduced = analysis
        .candidates
        .iter()
        .any(|c| c.border_rank == length && c.rank == length);
    Ok(SchemeLength { length, reduced, singular_point_checked: false })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankStatement {
    Exact { rank: usize },
    UpperBound { bound: usize },
    /// Known to lie in `[lower, upper]`.
    Range { lower: usize, upper: usize },
}

/// Rank consequence of a minimal apolar scheme of length `z` in `P^n`:
/// exact when reduced, otherwise at most `n + 3 - z`.
pub fn scheme_length_bound(z: usize, reduced: bool, n: usize) -> Result<RankStatement> {
    if z == 0 || z > n + 2 {
        return Err(Error::InvalidArgument(format!("scheme length {z} impossible in P^{n}")));
    }
    Ok(if reduced {
        RankStatement::Exact { rank: z }
    } else {
        RankStatement::UpperBound { bound: n + 3 - z }
    })
}
