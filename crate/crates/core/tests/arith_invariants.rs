use num_traits::Zero;
use proptest::prelude::*;
use xrank_core::arith::rational::{rat, Rational};
use xrank_core::arith::{
    evaluate_branches, kernel_basis, matrix_rank, span_contains, ExactMatrix, Modulus, QPoly, Scalar,
};

fn matrix(rows: &[Vec<i64>]) -> ExactMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ExactMatrix::from_i64_rows(&refs).unwrap()
}

fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(x)).collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

/// Rank by a plain fraction-field elimination, independent of the library.
fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let f = &m[i][c] / &m[r][c];
            for k in 0..cols {
                let t = &m[r][k] * &f;
                m[i][k] -= t;
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_width(rows in small_matrix()) {
        let m = matrix(&rows);
        let rank = matrix_rank(&m).unwrap();
        prop_assert_eq!(rank, naive_rank(&rows));
        let kernel = kernel_basis(&m).unwrap();
        prop_assert_eq!(rank + kernel.len(), rows[0].len());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero().unwrap()));
        }
    }

    #[test]
    fn span_membership_ignores_scaling(rows in small_matrix(), w in prop::collection::vec(-3i64..=3, 5), c in 1i64..6) {
        let width = rows[0].len();
        let basis: Vec<Vec<Scalar>> = rows.iter().map(|r| scalars(r)).collect();
        let v = scalars(&w[..width]);
        let cv: Vec<Scalar> = w[..width].iter().map(|&x| Scalar::from_i64(-c * x)).collect();
        prop_assert_eq!(span_contains(&basis, &v).unwrap(), span_contains(&basis, &cv).unwrap());
        for b in &basis {
            prop_assert!(span_contains(&basis, b).unwrap());
        }
        // Membership agrees with the rank test.
        let mut ext = rows.clone();
        ext.push(w[..width].to_vec());
        let inside = naive_rank(&ext) == naive_rank(&rows);
        prop_assert_eq!(span_contains(&basis, &v).unwrap(), inside);
    }

    #[test]
    fn squarefree_part_divides_and_is_squarefree(
        roots in prop::collection::vec(-4i64..=4, 1..5),
        mults in prop::collection::vec(1usize..4, 4),
    ) {
        let mut p = QPoly::one();
        let mut distinct: Vec<i64> = Vec::new();
        for (r, m) in roots.iter().zip(&mults) {
            p = p.mul(&QPoly::linear_root(&rat(*r)).pow(*m));
            if !distinct.contains(r) {
                distinct.push(*r);
            }
        }
        let s = p.squarefree_part();
        prop_assert!(s.is_squarefree());
        prop_assert!(p.rem(&s).is_zero());
        prop_assert_eq!(s.degree() as usize, distinct.len());
        for r in distinct {
            prop_assert!(s.eval(&rat(r)).is_zero());
        }
    }

    #[test]
    fn dynamic_evaluation_splits_consistently(a in -5i64..=5, b in prop::sample::select(vec![2i64, 3, 5, 6, 7])) {
        // m = (t - a)(t^2 - b): asking whether t - a vanishes must split m.
        let m = QPoly::linear_root(&rat(a)).mul(&QPoly::from_i64(&[-b, 0, 1]));
        let modulus = Modulus::new(m).unwrap();
        let branches = evaluate_branches(modulus, |md| {
            let g = md.generator();
            (&g - &Scalar::from_i64(a)).is_zero()
        })
        .unwrap();
        prop_assert_eq!(branches.len(), 2);
        let total: usize = branches.iter().map(|br| br.modulus.degree()).sum();
        prop_assert_eq!(total, 3);
        for br in &branches {
            prop_assert_eq!(br.value, br.modulus.degree() == 1);
            // Each branch answer holds at a root: the value is the same as
            // testing the polynomial t - a modulo the branch modulus.
            let r = QPoly::linear_root(&rat(a)).rem(br.modulus.poly());
            prop_assert_eq!(br.value, r.is_zero());
        }
    }
}
