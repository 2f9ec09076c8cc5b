//! Dynamic evaluation driver: run a computation over `Q[t]/(m)` and rerun it
//! on both factors whenever it reports a split.

use super::scalar::{Modulus, Split};
use super::ArithError;

/// Errors that may carry a modulus split.
pub trait SplitSignal {
    fn as_split(&self) -> Option<&Split>;
}

impl SplitSignal for ArithError {
    fn as_split(&self) -> Option<&Split> {
        match self {
            ArithError::Split(s) => Some(s),
            _ => None,
        }
    }
}

/// One branch of a dynamic evaluation: the answer holds at every root of `modulus`.
#[derive(Clone, Debug)]
pub struct Branch<T> {
    pub modulus: Modulus,
    pub value: T,
}

/// Evaluates `f` over every branch of `modulus`. Branches are returned in
/// discovery order: a split replaces its modulus by the two factors,
/// lower-degree factor first. Non-split errors abort the whole run.
pub fn evaluate_branches<T, E, F>(modulus: Modulus, mut f: F) -> Result<Vec<Branch<T>>, E>
where
    E: SplitSignal,
    F: FnMut(&Modulus) -> Result<T, E>,
{
    let mut pending = vec![modulus];
    let mut done = Vec::new();
    while let Some(m) = pending.pop() {
        match f(&m) {
            Ok(value) => done.push(Branch { modulus: m, value }),
            Err(e) => match e.as_split() {
                Some(split) if split.modulus == m => {
                    let [a, b] = split.factors.clone();
                    let (lo, hi) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
                    pending.push(hi);
                    pending.push(lo);
                }
                _ => return Err(e),
            },
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qpoly::QPoly;
    use crate::arith::scalar::Scalar;

    #[test]
    fn splits_on_zero_divisor() {
        // t^3 - t = t (t - 1)(t + 1); ask "is t zero?"
        let m = Modulus::new(QPoly::from_i64(&[0, -1, 0, 1])).unwrap();
        let branches = evaluate_branches(m, |m| m.generator().is_zero()).unwrap();
        let total: usize = branches.iter().map(|b| b.modulus.degree()).sum();
        assert_eq!(total, 3);
        for b in &branches {
            let expect = b.modulus.poly() == &QPoly::x();
            assert_eq!(b.value, expect);
        }
    }

    #[test]
    fn refines_consistently() {
        // (t^2 - 2)(t - 3): rank of [[t - 3]] is 0 on one branch and 1 on the other.
        let m = Modulus::new(QPoly::from_i64(&[-2, 0, 1]).mul(&QPoly::from_i64(&[-3, 1]))).unwrap();
        let branches = evaluate_branches(m, |m| {
            let v = &m.generator() - &Scalar::from_i64(3);
            Ok::<_, ArithError>(usize::from(!v.is_zero()?))
        })
        .unwrap();
        let mut seen: Vec<(isize, usize)> =
            branches.iter().map(|b| (b.modulus.poly().degree(), b.value)).collect();
        seen.sort();
        assert_eq!(seen, vec![(1, 0), (2, 1)]);
    }
}
