use serde::Serialize;

use super::{classify_projection, normalize_point, to_scalars, CurveClass, ProjectionCenter};
use crate::arith::matrix::rref;
use crate::arith::rational::Rational;
use crate::arith::{span_contains, ExactMatrix};
use crate::error::{Error, Result};
use crate::forms::{osculating_basis, CurvePoint};

/// Images of the osculating spaces of the curve at the cusp preimage.
/// `strata[t - 1]` spans `E(t)`, of vector dimension `t`, for `t = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsculatingFlag {
    pub cusp: CurvePoint,
    #[serde(with = "crate::arith::rational::serde_rationals")]
    pub cusp_image: Vec<Rational>,
    #[serde(skip)]
    pub strata: Vec<Vec<Vec<Rational>>>,
}

impl OsculatingFlag {
    pub fn new(center: &ProjectionCenter) -> Result<Self> {
        let CurveClass::Cuspidal { cusp } = classify_projection(center)? else {
            return Err(Error::InvalidArgument("center does not give a cuspidal curve".into()));
        };
        let d = center.degree();
        let n = center.n();
        let mut strata: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(n);
        for t in 1..=n {
            let images: Vec<Vec<Rational>> = osculating_basis(d, &cusp, t)?
                .iter()
                .filter_map(|f| center.project(f).ok())
                .collect();
            let rows: Vec<_> = images.iter().map(|v| to_scalars(v)).collect();
            let (red, _) = rref(&ExactMatrix::from_rows(&rows)?)?;
            if red.len() != t {
                return Err(Error::Internal(format!("stratum {t} has dimension {}", red.len())));
            }
            strata.push(
                red.into_iter()
                    .map(|r| r.into_iter().map(|s| s.to_rational().unwrap()).collect())
                    .collect(),
            );
        }
        let cusp_image = normalize_point(&strata[0][0]);
        Ok(Self { cusp, cusp_image, strata })
    }

    pub fn n(&self) -> usize {
        self.strata.len()
    }

    /// Basis of `E(t)`.
    pub fn stratum(&self, t: usize) -> &[Vec<Rational>] {
        &self.strata[t - 1]
    }

    /// Least `t` with `point` in `E(t)`.
    pub fn depth(&self, point: &[Rational]) -> Result<usize> {
        let v = to_scalars(point);
        for (i, basis) in self.strata.iter().enumerate() {
            let b: Vec<_> = basis.iter().map(|r| to_scalars(r)).collect();
            if span_contains(&b, &v)? {
                return Ok(i + 1);
            }
        }
        Err(Error::NotInFlag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspStratum {
    pub t: usize,
    pub rank: usize,
}

/// Position of `point` in the osculating flag at the cusp and the rank it
/// forces: `n + 2 - t` for `t >= 2`; the cusp itself lies on the curve.
pub fn cusp_stratum(flag: &OsculatingFlag, point: &[Rational]) -> Result<CuspStratum> {
    let t = flag.depth(point)?;
    let rank = if t == 1 { 1 } else { flag.n() + 2 - t };
    Ok(CuspStratum { t, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::forms::BinaryForm;

    #[test]
    fn quartic_flag() {
        let c = ProjectionCenter::new(BinaryForm::monomial(1, 3).unwrap()).unwrap();
        let flag = OsculatingFlag::new(&c).unwrap();
        assert_eq!(flag.cusp, CurvePoint::infinity());
        assert_eq!(flag.n(), 3);
        let q = c.project_point(&CurvePoint::infinity());
        assert_eq!(cusp_stratum(&flag, &q).unwrap(), CuspStratum { t: 1, rank: 1 });
        let p = c.project(&BinaryForm::monomial(2, 2).unwrap()).unwrap();
        assert_eq!(cusp_stratum(&flag, &p).unwrap(), CuspStratum { t: 2, rank: 3 });
        let p = c.project(&BinaryForm::monomial(3, 1).unwrap().add_scaled(
            &crate::arith::Scalar::one(),
            &BinaryForm::monomial(2, 2).unwrap(),
        ).unwrap()).unwrap();
        assert_eq!(cusp_stratum(&flag, &p).unwrap(), CuspStratum { t: 3, rank: 2 });
        let outside = vec![rat(1), rat(0), rat(0), rat(0)];
        assert_eq!(flag.depth(&outside), Err(Error::NotInFlag));
    }

    #[test]
    fn smooth_center_has_no_flag() {
        let c = ProjectionCenter::new(BinaryForm::from_i64(&[1, 0, 1, 0, 1]).unwrap()).unwrap();
        assert!(OsculatingFlag::new(&c).is_err());
    }
}
