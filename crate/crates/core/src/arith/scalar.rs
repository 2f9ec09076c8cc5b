//! Field elements: rationals, or residues modulo a squarefree monic
//! polynomial (dynamic evaluation).
//!
//! Arithmetic in `Q[t]/(m)` is only a field when `m` is irreducible. We never
//! factor `m`; instead every zero test and every inversion computes
//! `gcd(residue, m)` and, if that gcd is a proper factor, reports a [`Split`]
//! so the caller can rerun the computation on each factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::qpoly::QPoly;
use super::rational::{format_rational, parse_rational, Rational};
use super::ArithError;

/// A monic squarefree modulus of positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus(Arc<QPoly>);

impl Modulus {
    /// Builds a modulus, rejecting constant or non-squarefree input.
    pub fn new(poly: QPoly) -> Result<Self, ArithError> {
        if poly.degree() < 1 {
            return Err(ArithError::InvalidModulus("constant modulus".into()));
        }
        if !poly.is_squarefree() {
            return Err(ArithError::InvalidModulus(format!("{poly} is not squarefree")));
        }
        Ok(Self(Arc::new(poly.monic())))
    }

    pub fn poly(&self) -> &QPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree() as usize
    }

    /// The class of the variable `t` in `Q[t]/(m)`.
    pub fn generator(&self) -> Scalar {
        Scalar::Alg(AlgNum::reduce(self.clone(), QPoly::x()))
    }

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// A zero divisor was met modulo `modulus`; `factors` multiply to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub modulus: Modulus,
    pub factors: [Modulus; 2],
}

impl Split {
    fn from_gcd(modulus: &Modulus, g: QPoly) -> Self {
        let other = modulus.poly().exact_div(&g);
        // Factors of a squarefree polynomial are squarefree.
        let mk = |p: QPoly| Modulus(Arc::new(p.monic()));
        Split {
            modulus: modulus.clone(),
            factors: [mk(g), mk(other)],
        }
    }
}

/// Residue class of degree below `deg(modulus)`.
#[derive(Clone, Debug)]
pub struct AlgNum {
    modulus: Modulus,
    residue: QPoly,
}

impl AlgNum {
    pub fn reduce(modulus: Modulus, p: QPoly) -> Self {
        let residue = if p.degree() >= modulus.0.degree() {
            p.rem(modulus.poly())
        } else {
            p
        };
        Self { modulus, residue }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn residue(&self) -> &QPoly {
        &self.residue
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Rational),
    Alg(AlgNum),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(super::rational::rat(n))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Alg(_) => None,
        }
    }

    /// Rational value if this is a rational or a constant residue.
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Alg(a) if a.residue.is_constant() => Some(a.residue.coeff(0)),
            Scalar::Alg(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn modulus(&self) -> Option<&Modulus> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(a) => Some(&a.modulus),
        }
    }

    /// Zero test. Rationals never fail; a residue sharing a proper factor
    /// with its modulus raises a split.
    pub fn is_zero(&self) -> Result<bool, ArithError> {
        match self {
            Scalar::Rat(r) => Ok(r.is_zero()),
            Scalar::Alg(a) => {
                if a.residue.is_zero() {
                    return Ok(true);
                }
                let g = a.residue.gcd(a.modulus.poly());
                if g.degree() == 0 {
                    Ok(false)
                } else {
                    Err(ArithError::Split(Split::from_gcd(&a.modulus, g)))
                }
            }
        }
    }

    /// Syntactic zero check that never splits (true only for an exact zero).
    pub fn is_trivially_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Alg(a) => a.residue.is_zero(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(ArithError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Alg(a) => {
                if a.residue.is_zero() {
                    return Err(ArithError::DivisionByZero);
                }
                let (g, s, _) = a.residue.extended_gcd(a.modulus.poly());
                if g.degree() > 0 {
                    return Err(ArithError::Split(Split::from_gcd(&a.modulus, g)));
                }
                Ok(Scalar::Alg(AlgNum::reduce(a.modulus.clone(), s)))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: usize) -> Scalar {
        (0..e).fold(Scalar::one(), |acc, _| &acc * self)
    }

    pub fn scale_rational(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r * c),
            Scalar::Alg(a) => Scalar::Alg(AlgNum {
                modulus: a.modulus.clone(),
                residue: a.residue.scale(c),
            }),
        }
    }

    /// Coerce onto `modulus` (rationals become constant residues).
    pub fn lift_to(&self, modulus: &Modulus) -> Result<Scalar, ArithError> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Alg(AlgNum {
                modulus: modulus.clone(),
                residue: QPoly::constant(r.clone()),
            })),
            Scalar::Alg(a) if a.modulus.same(modulus) => Ok(self.clone()),
            Scalar::Alg(_) => Err(ArithError::ModulusMismatch),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        poly: impl Fn(&QPoly, &QPoly) -> QPoly,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rat(a, b)),
            (Scalar::Alg(a), Scalar::Rat(b)) => Scalar::Alg(AlgNum::reduce(
                a.modulus.clone(),
                poly(&a.residue, &QPoly::constant(b.clone())),
            )),
            (Scalar::Rat(a), Scalar::Alg(b)) => Scalar::Alg(AlgNum::reduce(
                b.modulus.clone(),
                poly(&QPoly::constant(a.clone()), &b.residue),
            )),
            (Scalar::Alg(a), Scalar::Alg(b)) => {
                assert!(
                    a.modulus.same(&b.modulus),
                    "arithmetic between residues of different moduli"
                );
                Scalar::Alg(AlgNum::reduce(a.modulus.clone(), poly(&a.residue, &b.residue)))
            }
        }
    }
}

impl PartialEq for Scalar {
    /// Structural equality of canonical residues (no zero-divisor test).
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(a), Scalar::Alg(b)) => a.modulus.same(&b.modulus) && a.residue == b.residue,
            (Scalar::Rat(r), Scalar::Alg(a)) | (Scalar::Alg(a), Scalar::Rat(r)) => {
                a.residue.is_constant() && &a.residue.coeff(0) == r
            }
        }
    }
}

impl Eq for Scalar {}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, QPoly::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, QPoly::sub)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, QPoly::mul)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Alg(a) => Scalar::Alg(AlgNum {
                modulus: a.modulus.clone(),
                residue: a.residue.neg(),
            }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", format_rational(r)),
            Scalar::Alg(a) => write!(f, "[{}] mod ({})", a.residue, a.modulus.poly()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rat(String),
    Alg { modulus: QPoly, residue: QPoly },
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rat(r) => ScalarRepr::Rat(format_rational(r)).serialize(s),
            Scalar::Alg(a) => ScalarRepr::Alg {
                modulus: a.modulus.poly().clone(),
                residue: a.residue.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Rat(s) => parse_rational(&s)
                .map(Scalar::Rat)
                .map_err(serde::de::Error::custom),
            ScalarRepr::Alg { modulus, residue } => {
                let m = Modulus::new(modulus).map_err(serde::de::Error::custom)?;
                Ok(Scalar::Alg(AlgNum::reduce(m, residue)))
            }
        }
    }
}
