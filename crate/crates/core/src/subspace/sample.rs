use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::modp::PrimeField;
use crate::arith::rational::{ratio, Rational};
use crate::error::{Error, Result};
use crate::forms::CurvePoint;
use crate::projection::{normalize_point, ProjectionCenter};

/// A finite, reproducible set of points of the projected curve.
///
/// Parameters are enumerated by height shells `max(|p|, q) = h` (shell 0 is
/// `{infinity, 0}`), each shell shuffled by the seed, after any forced
/// parameters. A larger sample with the same seed and forced list therefore
/// extends a smaller one. Parameters whose image repeats an earlier one are
/// skipped, so images are pairwise distinct.
#[derive(Clone, Debug, Serialize)]
pub struct CurveSample {
    center: ProjectionCenter,
    seed: u64,
    params: Vec<CurvePoint>,
    #[serde(skip)]
    points: Vec<Vec<Rational>>,
    #[serde(skip)]
    residues: Vec<Vec<u64>>,
    #[serde(skip)]
    field: PrimeField,
}

fn shell(h: i64) -> Vec<CurvePoint> {
    if h == 0 {
        return vec![CurvePoint::infinity(), CurvePoint::affine(Rational::from_integer(0.into()))];
    }
    let mut out = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p == 0 || (p.abs() != h && q != h) || p.gcd(&q) != 1 {
                continue;
            }
            out.push(CurvePoint::affine(ratio(p, q)));
        }
    }
    out
}

impl CurveSample {
    pub fn new(center: &ProjectionCenter, seed: u64, size: usize, forced: &[CurvePoint]) -> Result<Self> {
        let field = PrimeField::new(crate::arith::modp::MERSENNE_61);
        let mut sample = Self {
            center: center.clone(),
            seed,
            params: Vec::new(),
            points: Vec::new(),
            residues: Vec::new(),
            field,
        };
        for q in forced {
            if sample.len() < size {
                sample.push(q.clone())?;
            }
        }
        let mut h = 0;
        while sample.len() < size {
            let mut params = shell(h);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(h as u64);
            params.shuffle(&mut rng);
            for q in params {
                if sample.len() == size {
                    break;
                }
                sample.push(q)?;
            }
            h += 1;
        }
        Ok(sample)
    }

    fn push(&mut self, q: CurvePoint) -> Result<()> {
        let image = normalize_point(&self.center.project_point(&q));
        if self.points.contains(&image) {
            return Ok(());
        }
        let residue = image
            .iter()
            .map(|x| self.field.from_rational(x))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("sample point not reducible modulo the prime".into()))?;
        self.params.push(q);
        self.points.push(image);
        self.residues.push(residue);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn center(&self) -> &ProjectionCenter {
        &self.center
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn params(&self) -> &[CurvePoint] {
        &self.params
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub(crate) fn residues(&self) -> &[Vec<u64>] {
        &self.residues
    }

    pub(crate) fn field(&self) -> &PrimeField {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::forms::BinaryForm;

    fn center() -> ProjectionCenter {
        ProjectionCenter::new(BinaryForm::from_i64(&[1, 0, 0, 0, 1]).unwrap()).unwrap()
    }

    #[test]
    fn shells_partition_by_height() {
        assert_eq!(shell(1).len(), 2);
        // h = 2: 2/1, -2/1, 1/2, -1/2.
        assert_eq!(shell(2).len(), 4);
    }

    #[test]
    fn prefix_property_and_distinct_images() {
        let c = center();
        let small = CurveSample::new(&c, 5, 30, &[CurvePoint::affine(rat(7))]).unwrap();
        let large = CurveSample::new(&c, 5, 80, &[CurvePoint::affine(rat(7))]).unwrap();
        assert_eq!(small.len(), 30);
        assert_eq!(&large.params()[..30], small.params());
        assert_eq!(large.params()[0], CurvePoint::affine(rat(7)));
        // Node preimages 0 and infinity share an image, so only one survives.
        let has_inf = large.params().contains(&CurvePoint::infinity());
        let has_zero = large.params().contains(&CurvePoint::affine(rat(0)));
        assert!(has_inf ^ has_zero);
    }
}
