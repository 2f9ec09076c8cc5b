//! Explicit Waring decompositions from apolar witnesses.
//!
//! A linear factor `beta x - alpha y` of the witness corresponds to the
//! power `(alpha x + beta y)^d`. Roots that are not rational are kept
//! together per squarefree factor `h` of the witness: the group contributes
//! `sum over roots t of h of c(t) (t x + y)^d` with `c` a residue mod `h`,
//! which is a rational form and is evaluated through power sums of roots.

use num_traits::Zero;
use serde::Serialize;

use super::sylvester::{combine, is_squarefree_form, sylvester_rank, CoefficientTuples};
use super::{catalecticant, linear_factor_points, BinaryForm, CurvePoint};
use crate::arith::rational::{binomial, Rational};
use crate::arith::{kernel_basis, rational_roots, ExactMatrix, QPoly, Scalar};
use crate::error::{Error, Result};

/// Combinations tried while looking for a witness with only rational roots.
const SPLIT_TRIALS: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalTerm {
    pub point: CurvePoint,
    #[serde(with = "crate::arith::rational::serde_rational")]
    pub coeff: Rational,
}

/// Conjugate group over the roots of `modulus`, with coefficient residue `coeff`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateTerm {
    pub modulus: QPoly,
    pub coeff: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub degree: usize,
    pub rational: Vec<RationalTerm>,
    pub conjugate: Vec<ConjugateTerm>,
}

impl Decomposition {
    /// Number of distinct curve points used.
    pub fn size(&self) -> usize {
        self.rational.len()
            + self
                .conjugate
                .iter()
                .map(|c| c.modulus.degree() as usize)
                .sum::<usize>()
    }

    pub fn is_rational(&self) -> bool {
        self.conjugate.is_empty()
    }

    /// Plain coefficients of the represented form.
    pub fn evaluate(&self) -> Vec<Rational> {
        let d = self.degree;
        let mut out = vec![Rational::zero(); d + 1];
        for term in &self.rational {
            let p = BinaryForm::power(&term.point, d);
            for (o, c) in out.iter_mut().zip(p.coeffs()) {
                *o += c.as_rational().unwrap() * &term.coeff;
            }
        }
        for group in &self.conjugate {
            let cols = conjugate_columns(&group.modulus, d);
            for (k, col) in cols.iter().enumerate() {
                let ck = group.coeff.coeff(k);
                if ck.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(col) {
                    *o += c * &ck;
                }
            }
        }
        out
    }

    pub fn reproduces(&self, f: &BinaryForm) -> bool {
        f.to_rationals().is_some_and(|c| c == self.evaluate())
    }
}

/// Power sums `p_0..=p_max` of the roots of monic `h` (Newton's identities).
fn power_sums(h: &QPoly, max: usize) -> Vec<Rational> {
    let e = h.degree() as usize;
    let a = |j: usize| h.coeff(j);
    let mut p = vec![Rational::from_integer(e.into())];
    for k in 1..=max {
        let mut v = Rational::zero();
        for i in 1..=e.min(k - 1) {
            v -= a(e - i) * &p[k - i];
        }
        if k <= e {
            v -= a(e - k) * Rational::from_integer(k.into());
        }
        p.push(v);
    }
    p
}

/// Column `k` is the form `sum over roots t of t^k (t x + y)^d`.
fn conjugate_columns(h: &QPoly, d: usize) -> Vec<Vec<Rational>> {
    let e = h.degree() as usize;
    let p = power_sums(h, d + e);
    (0..e)
        .map(|k| {
            (0..=d)
                .map(|i| Rational::from_integer(binomial(d, i)) * &p[d - i + k])
                .collect()
        })
        .collect()
}

/// Explicit decomposition of a rational form with exactly `rank` points,
/// preferring a witness whose roots are all rational.
pub fn decompose(f: &BinaryForm) -> Result<Decomposition> {
    if !f.is_rational() {
        return Err(Error::NotRational);
    }
    let cert = sylvester_rank(f)?;
    let r = cert.rank;
    let d = f.degree();
    let kernel = kernel_basis(&catalecticant(f, r)?)?;
    let forms: Vec<BinaryForm> = kernel
        .iter()
        .map(|v| BinaryForm::new(v.clone()))
        .collect::<Result<_>>()?;
    let mut witness = cert
        .apolar_form()
        .cloned()
        .ok_or_else(|| Error::Internal("certificate without apolar form".into()))?;
    if count_rational_roots(&witness)? != r && forms.len() > 1 {
        for tuple in CoefficientTuples::new(forms.len()).take(SPLIT_TRIALS) {
            let Some(g) = combine(&forms, &tuple)? else { continue };
            if is_squarefree_form(&g)? && count_rational_roots(&g)? == r {
                witness = g;
                break;
            }
        }
    }
    let dec = from_witness(f, &witness, d)?;
    if dec.size() != r || !dec.reproduces(f) {
        return Err(Error::Internal("decomposition does not reproduce the form".into()));
    }
    Ok(dec)
}

fn count_rational_roots(g: &BinaryForm) -> Result<usize> {
    let (affine, mult) = g.dehomogenize()?;
    let q = affine.to_qpoly().ok_or(Error::NotRational)?;
    Ok(mult + if q.degree() >= 1 { rational_roots(&q)?.len() } else { 0 })
}

fn from_witness(f: &BinaryForm, g: &BinaryForm, d: usize) -> Result<Decomposition> {
    let (points, moduli) = linear_factor_points(g)?;
    let mut columns: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| BinaryForm::power(p, d).to_rationals().unwrap())
        .collect();
    for h in &moduli {
        columns.extend(conjugate_columns(h, d));
    }
    let rows: Vec<Vec<Scalar>> = (0..=d)
        .map(|i| columns.iter().map(|c| Scalar::Rat(c[i].clone())).collect())
        .collect();
    let a = ExactMatrix::from_rows(&rows)?;
    let solution = crate::arith::matrix::solve(&a, f.coeffs())?
        .ok_or_else(|| Error::Internal("witness points do not span the form".into()))?;
    let mut values = solution.into_iter().map(|s| s.to_rational().unwrap());
    let rational = points
        .into_iter()
        .map(|point| RationalTerm { point, coeff: values.next().unwrap() })
        .collect();
    let conjugate = moduli
        .into_iter()
        .map(|modulus| {
            let e = modulus.degree() as usize;
            let coeff = QPoly::new(values.by_ref().take(e).collect());
            ConjugateTerm { modulus, coeff }
        })
        .collect();
    Ok(Decomposition { degree: d, rational, conjugate })
}
