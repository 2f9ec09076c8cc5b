//! Univariate polynomials over [`Scalar`], with dynamic-evaluation aware
//! normalization: deciding the degree may itself raise a split.

use super::qpoly::QPoly;
use super::rational::Rational;
use super::scalar::Scalar;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    /// Trims leading zeros; may split when a leading coefficient is a zero divisor.
    pub fn new(mut coeffs: Vec<Scalar>) -> Result<Self, ArithError> {
        while let Some(last) = coeffs.last() {
            if last.is_zero()? {
                coeffs.pop();
            } else {
                break;
            }
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Rational view when every coefficient is rational.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        self.coeffs
            .iter()
            .map(Scalar::to_rational)
            .collect::<Option<Vec<Rational>>>()
            .map(QPoly::new)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self, ArithError> {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Result<Self, ArithError> {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_rational(&Rational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn monic(&self) -> Result<Self, ArithError> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => {
                let inv = l.inv()?;
                self.scale(&inv)
            }
        }
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), ArithError> {
        let lead_inv = divisor
            .leading()
            .ok_or(ArithError::DivisionByZero)?
            .inv()?;
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] * &lead_inv;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd - 1);
        Ok((Self::new(quot)?, Self::new(rem)?))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(p, p')` is constant. Errors on the zero polynomial.
    pub fn is_squarefree(&self) -> Result<bool, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()?)?.degree() == 0)
    }

    /// `p / gcd(p, p')`, made monic. Errors on the zero polynomial.
    pub fn squarefree_part(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative()?)?;
        let (q, r) = self.divrem(&g)?;
        debug_assert!(r.is_zero());
        q.monic()
    }
}

impl From<QPoly> for UniPoly {
    fn from(p: QPoly) -> Self {
        Self {
            coeffs: p.into_coeffs().into_iter().map(Scalar::Rat).collect(),
        }
    }
}

impl From<&QPoly> for UniPoly {
    fn from(p: &QPoly) -> Self {
        Self::from(p.clone())
    }
}

/// Rational coefficient vector helper for tests and callers.
pub fn uni_from_i64(coeffs: &[i64]) -> UniPoly {
    UniPoly::from(QPoly::from_i64(coeffs))
}

impl UniPoly {
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }
}
