//! Binary forms as points of `P^d`, the rational normal curve inside it, and
//! the rank theory of that curve.
//!
//! A form `f = sum a_i x^(d-i) y^i` is stored by its plain coefficients
//! `(a_0, ..., a_d)`. The curve point with parameter `[alpha:beta]` is the
//! power `(alpha x + beta y)^d`.

mod decompose;
mod sylvester;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{binomial, format_rational, parse_rational, pow, Rational};
use crate::arith::{
    matrix_rank, rational_roots, squarefree_factor_moduli, ExactMatrix, QPoly, Scalar, UniPoly,
};
use crate::error::{Error, Result};

pub use decompose::{decompose, ConjugateTerm, Decomposition, RationalTerm};
pub use sylvester::{
    binary_gcd, find_squarefree_member, is_squarefree_form, sylvester_rank, RankCertificate,
    Witness,
};

/// A point of the projective line, normalized so the first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvePoint {
    alpha: Rational,
    beta: Rational,
}

impl CurvePoint {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::InvalidArgument("[0:0] is not a point".into()));
        }
        if alpha.is_zero() {
            return Ok(Self::infinity());
        }
        let beta = beta / &alpha;
        Ok(Self { alpha: Rational::one(), beta })
    }

    /// The affine point `[1:u]`, i.e. the power `(x + u y)^d`.
    pub fn affine(u: Rational) -> Self {
        Self { alpha: Rational::one(), beta: u }
    }

    /// The point `[0:1]`, i.e. the power `y^d`.
    pub fn infinity() -> Self {
        Self { alpha: Rational::zero(), beta: Rational::one() }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// The linear form `beta x - alpha y`, which annihilates this point's powers.
    pub fn annihilator(&self) -> BinaryForm {
        BinaryForm::from_rationals(vec![self.beta.clone(), -self.alpha.clone()])
            .expect("nonzero linear form")
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", format_rational(&self.alpha), format_rational(&self.beta))
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.alpha), format_rational(&self.beta)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurvePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b]: [String; 2] = Deserialize::deserialize(d)?;
        let a = parse_rational(&a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&b).map_err(serde::de::Error::custom)?;
        CurvePoint::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// Homogeneous binary form of degree `d >= 1`, not identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("binary forms need degree >= 1".into()));
        }
        if coeffs.iter().all(Scalar::is_trivially_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(Self { coeffs })
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Result<Self> {
        Self::new(coeffs.into_iter().map(Scalar::Rat).collect())
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Scalar::from_i64(c)).collect())
    }

    /// The monomial `x^a y^b`.
    pub fn monomial(a: usize, b: usize) -> Result<Self> {
        let mut c = vec![Scalar::zero(); a + b + 1];
        c[b] = Scalar::one();
        Self::new(c)
    }

    /// The curve point `(alpha x + beta y)^d`.
    pub fn power(point: &CurvePoint, d: usize) -> Self {
        let coeffs = (0..=d)
            .map(|i| {
                let c = Rational::from_integer(binomial(d, i))
                    * pow(&point.alpha, d - i)
                    * pow(&point.beta, i);
                Scalar::Rat(c)
            })
            .collect();
        Self::new(coeffs).expect("powers of nonzero linear forms are nonzero")
    }

    /// `(alpha x + beta y)^d` for arbitrary scalars (possibly residues).
    pub fn power_of_linear(alpha: &Scalar, beta: &Scalar, d: usize) -> Vec<Scalar> {
        (0..=d)
            .map(|i| {
                let b = Rational::from_integer(binomial(d, i));
                (&alpha.pow(d - i) * &beta.pow(i)).scale_rational(&b)
            })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }

    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Divided coefficients `a_i / C(d, i)`.
    pub fn divided_coeffs(&self) -> Vec<Scalar> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.scale_rational(&Rational::new(One::one(), binomial(d, i))))
            .collect()
    }

    /// Coefficientwise `self + lambda * other` (same degree). Errors if zero.
    pub fn add_scaled(&self, lambda: &Scalar, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::InvalidArgument("degree mismatch".into()));
        }
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + &(lambda * b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product of two forms.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = vec![Scalar::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self { coeffs: vec![Scalar::one()] };
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Linear change of variables `x -> a x + b y`, `y -> c x + d y`.
    pub fn substitute(&self, m: [&Rational; 4]) -> Result<Self> {
        let [a, b, c, d] = m;
        let lx = Self::from_rationals(vec![a.clone(), b.clone()])?;
        let ly = Self::from_rationals(vec![c.clone(), d.clone()])?;
        let deg = self.degree();
        let mut out = vec![Scalar::zero(); deg + 1];
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_trivially_zero() {
                continue;
            }
            let term = power_product(&lx, deg - i, &ly, i)?;
            for (k, t) in term.iter().enumerate() {
                out[k] = &out[k] + &(coeff * t);
            }
        }
        Self::new(out)
    }

    /// Dehomogenization at `y = 1`, low-to-high in `x`, plus the multiplicity
    /// of the factor `y` (the number of vanishing leading coefficients).
    pub fn dehomogenize(&self) -> Result<(UniPoly, usize)> {
        let d = self.degree();
        let affine = UniPoly::new(self.coeffs.iter().rev().cloned().collect())?;
        let mult = d - affine.degree().max(0) as usize;
        Ok((affine, mult))
    }

    /// Copy scaled so the first nonzero coefficient is 1 (rational forms only).
    pub fn normalized(&self) -> Result<Self> {
        let first = self
            .coeffs
            .iter()
            .find(|c| !c.is_trivially_zero())
            .ok_or(Error::ZeroForm)?;
        let inv = first.inv()?;
        self.scale(&inv)
    }
}

fn power_product(lx: &BinaryForm, i: usize, ly: &BinaryForm, j: usize) -> Result<Vec<Scalar>> {
    let one = BinaryForm { coeffs: vec![Scalar::one()] };
    let mut acc = one;
    for _ in 0..i {
        acc = BinaryForm { coeffs: raw_mul(&acc.coeffs, &lx.coeffs) };
    }
    for _ in 0..j {
        acc = BinaryForm { coeffs: raw_mul(&acc.coeffs, &ly.coeffs) };
    }
    Ok(acc.coeffs)
}

fn raw_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_trivially_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match d - i {
                0 => {}
                1 => write!(f, "*x")?,
                e => write!(f, "*x^{e}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "*y")?,
                e => write!(f, "*y^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl Serialize for BinaryForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr { degree: self.degree(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.degree + 1 {
            return Err(serde::de::Error::custom(format!(
                "degree {} needs {} coefficients, got {}",
                repr.degree,
                repr.degree + 1,
                repr.coeffs.len()
            )));
        }
        BinaryForm::new(repr.coeffs).map_err(serde::de::Error::custom)
    }
}

/// Points whose powers are annihilated by the linear factors of a rational
/// form `g`: a factor `beta x - alpha y` gives `[alpha:beta]`. Returns the
/// distinct rational points, then the squarefree moduli (in the affine
/// parameter `u` of `[u:1]`) carrying the remaining irrational roots.
pub fn linear_factor_points(g: &BinaryForm) -> Result<(Vec<CurvePoint>, Vec<QPoly>)> {
    let (affine, mult) = g.dehomogenize()?;
    let q = affine.to_qpoly().ok_or(Error::NotRational)?;
    let mut points = Vec::new();
    if mult > 0 {
        points.push(CurvePoint::new(Rational::one(), Rational::zero())?);
    }
    let mut moduli = Vec::new();
    if q.degree() >= 1 {
        let q = q.squarefree_part();
        for root in rational_roots(&q)? {
            points.push(CurvePoint::new(root, Rational::one())?);
        }
        moduli = squarefree_factor_moduli(&q)?;
    }
    Ok((points, moduli))
}

/// Hankel matrix of divided coefficients: `d-s+1` rows, `s+1` columns,
/// entry `(j, k) = c_(j+k)`. Its right kernel is the degree-`s` part of the
/// apolar ideal of `f`.
pub fn catalecticant(f: &BinaryForm, s: usize) -> Result<ExactMatrix> {
    let d = f.degree();
    if s < 1 || s > d {
        return Err(Error::InvalidArgument(format!(
            "catalecticant size {s} outside 1..={d}"
        )));
    }
    let c = f.divided_coeffs();
    let rows = d - s + 1;
    let cols = s + 1;
    let entries = (0..rows)
        .flat_map(|j| (0..cols).map(move |k| (j, k)))
        .map(|(j, k)| c[j + k].clone())
        .collect();
    Ok(ExactMatrix::new(rows, cols, entries)?)
}

/// Rank of the most-square catalecticant, at least 1.
pub fn border_rank(f: &BinaryForm) -> Result<usize> {
    let d = f.degree();
    if d == 1 {
        return Ok(1);
    }
    let r = matrix_rank(&catalecticant(f, d / 2)?)?;
    Ok(r.max(1))
}

/// Basis `l^d, l^(d-1) m, ..., l^(d-t) m^t` of the osculating space of order
/// `t` at `q`, where `m = y` unless `l` is proportional to `y`, then `m = x`.
pub fn osculating_basis(d: usize, q: &CurvePoint, t: usize) -> Result<Vec<BinaryForm>> {
    if t > d {
        return Err(Error::InvalidArgument(format!("order {t} exceeds degree {d}")));
    }
    let l = BinaryForm::from_rationals(vec![q.alpha.clone(), q.beta.clone()])?;
    let m = if q.alpha.is_zero() {
        BinaryForm::from_i64(&[1, 0])?
    } else {
        BinaryForm::from_i64(&[0, 1])?
    };
    (0..=t)
        .map(|i| {
            let coeffs = power_product(&l, d - i, &m, i)?;
            BinaryForm::new(coeffs)
        })
        .collect()
}
