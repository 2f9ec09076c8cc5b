use serde::Serialize;

use super::ProjectionCenter;
use crate::arith::kernel_basis;
use crate::error::{Error, Result};
use crate::forms::{
    border_rank, catalecticant, is_squarefree_form, linear_factor_points, BinaryForm, CurvePoint,
};

/// Singularity type of the projected curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveClass {
    Smooth,
    /// `apolar` is the squarefree quadratic vanishing on the two preimages of
    /// the node; the preimages are listed when they are rational.
    Nodal { apolar: BinaryForm, preimages: Option<[CurvePoint; 2]> },
    Cuspidal { cusp: CurvePoint },
}

/// The projection is singular exactly when the center has border rank 2;
/// the apolar quadratic then tells node from cusp.
pub fn classify_projection(center: &ProjectionCenter) -> Result<CurveClass> {
    let o = center.form();
    if o.degree() < 3 {
        return Err(Error::InvalidArgument("classification needs degree at least 3".into()));
    }
    if border_rank(o)? >= 3 {
        return Ok(CurveClass::Smooth);
    }
    let kernel = kernel_basis(&catalecticant(o, 2)?)?;
    let [g] = kernel.as_slice() else {
        return Err(Error::Internal("border rank 2 without a unique apolar quadratic".into()));
    };
    let g = BinaryForm::new(g.clone())?;
    let (points, _) = linear_factor_points(&g)?;
    if is_squarefree_form(&g)? {
        let preimages = match points.as_slice() {
            [a, b] => Some([a.clone(), b.clone()]),
            _ => None,
        };
        Ok(CurveClass::Nodal { apolar: g, preimages })
    } else {
        let [cusp] = points.as_slice() else {
            return Err(Error::Internal("square quadratic without a double root".into()));
        };
        Ok(CurveClass::Cuspidal { cusp: cusp.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::forms::sylvester_rank;

    fn center(c: &[i64]) -> ProjectionCenter {
        ProjectionCenter::new(BinaryForm::from_i64(c).unwrap()).unwrap()
    }

    #[test]
    fn quartic_node() {
        let c = center(&[1, 0, 0, 0, 1]);
        let class = classify_projection(&c).unwrap();
        let CurveClass::Nodal { preimages: Some(pts), .. } = class else { panic!("{class:?}") };
        let mut pts = pts.to_vec();
        pts.sort();
        assert_eq!(pts, vec![CurvePoint::infinity(), CurvePoint::affine(rat(0))]);
        assert_eq!(sylvester_rank(c.form()).unwrap().rank, 2);
    }

    #[test]
    fn quartic_cusp() {
        let c = center(&[0, 0, 0, 1, 0]);
        assert_eq!(
            classify_projection(&c).unwrap(),
            CurveClass::Cuspidal { cusp: CurvePoint::infinity() }
        );
        assert_eq!(sylvester_rank(c.form()).unwrap().rank, 4);
    }

    #[test]
    fn irrational_node() {
        // (x + sqrt2 y)^4 + (x - sqrt2 y)^4 = 2x^4 + 24x^2y^2 + 8y^4.
        let c = center(&[2, 0, 24, 0, 8]);
        let class = classify_projection(&c).unwrap();
        assert!(matches!(class, CurveClass::Nodal { preimages: None, .. }));
    }

    #[test]
    fn smooth_quartic() {
        // x^4 + x^2 y^2 + y^4: middle catalecticant [[1,0,1/6],[0,1/6,0],[1/6,0,1]] has rank 3.
        assert_eq!(classify_projection(&center(&[1, 0, 1, 0, 1])).unwrap(), CurveClass::Smooth);
    }
}
