//! Linear projections of the rational normal curve and the rank machinery
//! for the projected curve.

mod classify;
mod cusp;
mod pencil;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::matrix::rref;
use crate::arith::{ExactMatrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::forms::{border_rank, sylvester_rank, BinaryForm, CurvePoint};

pub use classify::{classify_projection, CurveClass};
pub use cusp::{cusp_stratum, CuspStratum, OsculatingFlag};
pub use pencil::{
    analyze_lift, min_scheme_length, pencil_analysis, pencil_rank, scheme_length_bound, LambdaChoice,
    PencilAnalysis, PencilCandidate, PencilLift, RankStatement, SchemeLength,
};

/// Projection from the span of a set of vectors, realized as deletion of
/// the pivot coordinates after reduction against the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProjection {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    frame: Vec<usize>,
}

impl LinearProjection {
    pub fn new(vectors: &[Vec<Rational>]) -> Result<Self> {
        let ambient = vectors.first().map(Vec::len).unwrap_or(0);
        if vectors.is_empty() || vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::InvalidArgument("projection needs vectors of equal length".into()));
        }
        let m = ExactMatrix::from_rational_rows(vectors)?;
        let (red, pivots) = rref(&m)?;
        if pivots.len() != vectors.len() {
            return Err(Error::InvalidArgument("center vectors are linearly dependent".into()));
        }
        if pivots.len() == ambient {
            return Err(Error::InvalidArgument("center fills the ambient space".into()));
        }
        let rows = red
            .into_iter()
            .map(|r| r.into_iter().map(|s| s.to_rational().unwrap()).collect())
            .collect();
        let frame = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        Ok(Self { ambient, rows, pivots, frame })
    }

    /// Number of coordinates before projection.
    pub fn ambient_len(&self) -> usize {
        self.ambient
    }

    /// Number of coordinates after projection.
    pub fn target_len(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[usize] {
        &self.frame
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Image of `v`, or `AtCenter` when `v` lies in the center.
    pub fn project(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.ambient,
                v.len()
            )));
        }
        let out = self.apply(v);
        if out.iter().all(Zero::is_zero) {
            return Err(Error::AtCenter);
        }
        Ok(out)
    }

    /// The underlying linear map on coordinate vectors (zero on the center).
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &c * y;
            }
        }
        self.frame.iter().map(|&i| r[i].clone()).collect()
    }

    /// A preimage of `p`: its entries on the frame, zero on the pivots.
    pub fn lift(&self, p: &[Rational]) -> Result<Vec<Rational>> {
        if p.len() != self.frame.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.frame.len(),
                p.len()
            )));
        }
        let mut v = vec![Rational::zero(); self.ambient];
        for (&i, x) in self.frame.iter().zip(p) {
            v[i] = x.clone();
        }
        Ok(v)
    }
}

/// A point `O` off the rational normal curve of degree `d`, normalized so
/// its first nonzero coefficient is 1. Projection maps `P^d` minus `O` to
/// `P^(d-1)` by deleting that coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCenter {
    form: BinaryForm,
    projection: LinearProjection,
    rank: usize,
}

impl ProjectionCenter {
    pub fn new(o: BinaryForm) -> Result<Self> {
        let coeffs = o.to_rationals().ok_or(Error::NotRational)?;
        if o.degree() < 2 {
            return Err(Error::InvalidArgument("center needs degree at least 2".into()));
        }
        let pivot = coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroForm)?;
        if border_rank(&o)? == 1 {
            return Err(Error::InvalidArgument("center lies on the curve".into()));
        }
        let inv = coeffs[pivot].recip();
        let normalized: Vec<Rational> = coeffs.iter().map(|c| c * &inv).collect();
        let projection = LinearProjection::new(std::slice::from_ref(&normalized))?;
        let form = BinaryForm::from_rationals(normalized)?;
        let rank = sylvester_rank(&form)?.rank;
        Ok(Self { form, projection, rank })
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// Waring rank of the center with respect to the curve.
    pub fn center_rank(&self) -> usize {
        self.rank
    }

    /// Degree `d = n + 1` of the curve being projected.
    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    /// Dimension `n` of the target projective space.
    pub fn n(&self) -> usize {
        self.degree() - 1
    }

    pub fn pivot(&self) -> usize {
        self.projection.pivots()[0]
    }

    pub fn projection(&self) -> &LinearProjection {
        &self.projection
    }

    /// Image of a rational form.
    pub fn project(&self, a: &BinaryForm) -> Result<Vec<Rational>> {
        if a.degree() != self.degree() {
            return Err(Error::InvalidArgument("form degree differs from the center".into()));
        }
        let v = a.to_rationals().ok_or(Error::NotRational)?;
        self.projection.project(&v)
    }

    pub fn project_point(&self, q: &CurvePoint) -> Vec<Rational> {
        self.project(&BinaryForm::power(q, self.degree()))
            .expect("curve points differ from the center")
    }

    /// The lift with zero pivot coefficient.
    pub fn lift(&self, p: &[Rational]) -> Result<BinaryForm> {
        if p.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero vector is not a point".into()));
        }
        BinaryForm::from_rationals(self.projection.lift(p)?)
    }
}

impl Serialize for ProjectionCenter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.form.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectionCenter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = BinaryForm::deserialize(d)?;
        ProjectionCenter::new(f).map_err(serde::de::Error::custom)
    }
}

/// Whether two nonzero vectors represent the same projective point.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let r = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &r) == y)
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_point(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) => {
            let inv = Rational::one() / first;
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

pub fn to_scalars(v: &[Rational]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::Rat).collect()
}

/// Images of a finite point set, with projective duplicates merged.
/// Fails if a point lies in the center.
pub fn project_decomposition(
    projection: &LinearProjection,
    points: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>> {
    let mut images: Vec<Vec<Rational>> = Vec::new();
    for p in points {
        let q = normalize_point(&projection.project(p)?);
        if !images.contains(&q) {
            images.push(q);
        }
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn center_normalizes_pivot() {
        let c = ProjectionCenter::new(BinaryForm::from_i64(&[0, 2, 0, 0, 4]).unwrap()).unwrap();
        assert_eq!(c.pivot(), 1);
        assert_eq!(c.form().to_rationals().unwrap(), v(&[0, 1, 0, 0, 2]));
        let a = BinaryForm::from_i64(&[1, 3, 1, 1, 1]).unwrap();
        assert_eq!(c.project(&a).unwrap(), v(&[1, 1, 1, -5]));
        let lifted = c.lift(&v(&[1, 1, 1, -5])).unwrap();
        assert_eq!(c.project(&lifted).unwrap(), v(&[1, 1, 1, -5]));
    }

    #[test]
    fn center_off_curve_required() {
        assert!(ProjectionCenter::new(BinaryForm::from_i64(&[1, 2, 1]).unwrap()).is_err());
    }

    #[test]
    fn projection_of_center_is_undefined() {
        let o = BinaryForm::from_i64(&[1, 0, 0, 0, 1]).unwrap();
        let c = ProjectionCenter::new(o.clone()).unwrap();
        assert_eq!(c.project(&o.scale(&Scalar::from_i64(3)).unwrap()), Err(Error::AtCenter));
    }

    #[test]
    fn subspace_projection() {
        let p = LinearProjection::new(&[v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])]).unwrap();
        assert_eq!(p.target_len(), 2);
        assert_eq!(p.project(&v(&[1, 0, 0, 0])).unwrap(), v(&[-1, 0]));
        assert_eq!(p.project(&v(&[2, 2, 3, 3])), Err(Error::AtCenter));
        assert!(LinearProjection::new(&[v(&[1, 2]), v(&[2, 4])]).is_err());
    }

    #[test]
    fn merged_images() {
        let p = LinearProjection::new(&[v(&[1, 1, 0])]).unwrap();
        let imgs = project_decomposition(&p, &[v(&[1, 0, 0]), v(&[0, -1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(imgs.len(), 2);
    }
}
