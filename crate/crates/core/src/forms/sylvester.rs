//! Waring rank of binary forms with apolar certificates.

use serde::Serialize;

use super::{border_rank, catalecticant, BinaryForm, Decomposition};
use crate::arith::{kernel_basis, Scalar, UniPoly};
use crate::error::{Error, Result};

/// Tuples tried before falling back to the gcd test.
const QUICK_TRIALS: usize = 50;
/// Hard stop for the exhaustive enumeration; never reached in practice.
const MAX_TRIALS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Squarefree form of degree `rank` annihilating the input.
    Apolar { form: BinaryForm },
    /// Explicit decomposition into powers of linear forms.
    PointSet { decomposition: Decomposition },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub border_rank: usize,
    pub witness: Witness,
    /// Exact value (true) or only an upper bound (false).
    pub certified: bool,
}

/// Rank of `f` by Sylvester's algorithm: the least `s` whose apolar kernel
/// holds a squarefree form. Checks the dichotomy `rank in {br, d - br + 2}`.
pub fn sylvester_rank(f: &BinaryForm) -> Result<RankCertificate> {
    let d = f.degree();
    let br = border_rank(f)?;
    for s in 1..=d {
        let kernel = kernel_basis(&catalecticant(f, s)?)?;
        if kernel.is_empty() {
            continue;
        }
        if let Some(g) = find_squarefree_member(&kernel)? {
            if s != br && s != d + 2 - br {
                return Err(Error::Internal(format!(
                    "rank {s} violates the dichotomy for border rank {br}, degree {d}"
                )));
            }
            return Ok(RankCertificate {
                rank: s,
                border_rank: br,
                witness: Witness::Apolar { form: g },
                certified: true,
            });
        }
    }
    Err(Error::Internal("no squarefree apolar form up to the degree".into()))
}

/// A squarefree binary form in the span of `basis` (coefficient vectors of
/// equal length), or `None` if none exists.
pub fn find_squarefree_member(basis: &[Vec<Scalar>]) -> Result<Option<BinaryForm>> {
    if basis.is_empty() {
        return Ok(None);
    }
    let forms: Vec<BinaryForm> = basis
        .iter()
        .map(|v| BinaryForm::new(v.clone()))
        .collect::<Result<_>>()?;
    if forms[0].degree() == 0 {
        return Ok(None);
    }
    if forms.len() == 1 {
        let g = &forms[0];
        return Ok(is_squarefree_form(g)?.then(|| g.clone()));
    }
    let mut tried = 0;
    let mut gcd_checked = false;
    for tuple in CoefficientTuples::new(forms.len()) {
        if tried == QUICK_TRIALS && !gcd_checked {
            gcd_checked = true;
            let (g, mult) = binary_gcd(&forms)?;
            if mult >= 2 || (g.degree() >= 1 && !g.is_squarefree()?) {
                return Ok(None);
            }
        }
        if tried >= MAX_TRIALS {
            return Err(Error::Internal("squarefree search did not terminate".into()));
        }
        tried += 1;
        let Some(candidate) = combine(&forms, &tuple)? else {
            continue;
        };
        if is_squarefree_form(&candidate)? {
            return Ok(Some(candidate));
        }
    }
    unreachable!("coefficient tuples are infinite")
}

pub(crate) fn combine(forms: &[BinaryForm], tuple: &[i64]) -> Result<Option<BinaryForm>> {
    let n = forms[0].coeffs().len();
    let mut acc = vec![Scalar::zero(); n];
    for (f, &c) in forms.iter().zip(tuple) {
        if c == 0 {
            continue;
        }
        let c = Scalar::from_i64(c);
        for (a, b) in acc.iter_mut().zip(f.coeffs()) {
            *a = &*a + &(&c * b);
        }
    }
    if acc.iter().all(Scalar::is_trivially_zero) {
        return Ok(None);
    }
    Ok(Some(BinaryForm::new(acc)?))
}

/// A binary form is squarefree iff `y` divides it at most once and its
/// dehomogenization is squarefree.
pub fn is_squarefree_form(g: &BinaryForm) -> Result<bool> {
    let (affine, mult) = g.dehomogenize()?;
    if mult >= 2 {
        return Ok(false);
    }
    if affine.degree() <= 0 {
        return Ok(true);
    }
    Ok(affine.is_squarefree()?)
}

/// Gcd of binary forms: the monic gcd of the dehomogenizations together
/// with the least multiplicity of the factor `y`.
pub fn binary_gcd(forms: &[BinaryForm]) -> Result<(UniPoly, usize)> {
    let mut g = UniPoly::zero();
    let mut mult = usize::MAX;
    for f in forms {
        let (affine, m) = f.dehomogenize()?;
        g = g.gcd(&affine)?;
        mult = mult.min(m);
    }
    Ok((g, mult))
}

/// Deterministic enumeration of nonzero integer tuples ordered by max-norm,
/// then lexicographically within each norm shell.
pub(crate) struct CoefficientTuples {
    norm: i64,
    current: Vec<i64>,
}

impl CoefficientTuples {
    pub(crate) fn new(len: usize) -> Self {
        Self { norm: 1, current: vec![-1; len] }
    }

    /// Odometer step over `[-norm, norm]^len`; moves to the next shell on overflow.
    fn advance(&mut self) {
        for c in self.current.iter_mut().rev() {
            if *c < self.norm {
                *c += 1;
                return;
            }
            *c = -self.norm;
        }
        self.norm += 1;
        self.current.iter_mut().for_each(|c| *c = -self.norm);
    }
}

impl Iterator for CoefficientTuples {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.current.is_empty() {
            return None;
        }
        loop {
            let shell = self.norm;
            let t = self.current.clone();
            self.advance();
            if t.iter().map(|c| c.abs()).max() == Some(shell) {
                return Some(t);
            }
        }
    }
}

impl RankCertificate {
    pub fn apolar_form(&self) -> Option<&BinaryForm> {
        match &self.witness {
            Witness::Apolar { form } => Some(form),
            Witness::PointSet { .. } => None,
        }
    }
}
