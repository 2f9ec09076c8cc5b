use num_traits::Zero;
use proptest::prelude::*;
use xrank_core::arith::rational::{rat, Rational};
use xrank_core::arith::Scalar;
use xrank_core::forms::{border_rank, decompose, sylvester_rank, BinaryForm, CurvePoint, Witness};
use xrank_core::projection::{analyze_lift, pencil_rank, PencilLift, ProjectionCenter};
use xrank_core::secant::{secant_dim_curve, terracini_dim, terracini_dim_modp, VarietySpec};
use xrank_core::subspace::{brute_force_point_rank, line_curve_analysis, CurveSample, LinearSubspace};

fn form() -> impl Strategy<Value = BinaryForm> {
    (2usize..=6)
        .prop_flat_map(|d| prop::collection::vec(-4i64..=4, d + 1))
        .prop_filter_map("zero form", |c| BinaryForm::from_i64(&c).ok())
}

fn falling(n: usize, k: usize) -> Rational {
    (0..k).fold(rat(1), |acc, i| acc * rat((n - i) as i64))
}

/// `g(d/dx, d/dy) f` from plain coefficients, without divided powers.
fn apply_apolar(g: &[Rational], f: &[Rational]) -> Vec<Rational> {
    let (s, d) = (g.len() - 1, f.len() - 1);
    let mut out = vec![rat(0); d - s + 1];
    for (j, gj) in g.iter().enumerate() {
        for (i, ai) in f.iter().enumerate() {
            // d_x^(s-j) d_y^j of x^(d-i) y^i
            if i < j || d - i < s - j || gj.is_zero() || ai.is_zero() {
                continue;
            }
            let c = falling(d - i, s - j) * falling(i, j);
            out[i - j] += gj * ai * c;
        }
    }
    out
}

fn sum_of_powers(us: &[i64], cs: &[i64], d: usize) -> Option<BinaryForm> {
    let mut acc = vec![rat(0); d + 1];
    for (&u, &c) in us.iter().zip(cs) {
        let p = BinaryForm::power(&CurvePoint::affine(rat(u)), d).to_rationals().unwrap();
        for (a, b) in acc.iter_mut().zip(p) {
            *a += b * rat(c);
        }
    }
    BinaryForm::from_rationals(acc).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sylvester_certificate_is_apolar_and_consistent(f in form()) {
        let cert = sylvester_rank(&f).unwrap();
        let d = f.degree();
        prop_assert!(cert.rank == cert.border_rank || cert.rank == d + 2 - cert.border_rank);
        prop_assert!(cert.border_rank <= cert.rank);
        let Witness::Apolar { form: g } = &cert.witness else { panic!("expected an apolar witness") };
        prop_assert_eq!(g.degree(), cert.rank);
        let out = apply_apolar(&g.to_rationals().unwrap(), &f.to_rationals().unwrap());
        prop_assert!(out.iter().all(Zero::is_zero));
        let dec = decompose(&f).unwrap();
        prop_assert!(dec.reproduces(&f));
        prop_assert_eq!(dec.size(), cert.rank);
    }

    #[test]
    fn rank_is_invariant_under_change_of_coordinates(
        f in form(),
        m in prop::collection::vec(-2i64..=2, 4).prop_filter("singular", |m| m[0] * m[3] != m[1] * m[2]),
    ) {
        let ms: Vec<Rational> = m.iter().map(|&x| rat(x)).collect();
        let g = f.substitute([&ms[0], &ms[1], &ms[2], &ms[3]]).unwrap();
        prop_assert_eq!(sylvester_rank(&f).unwrap().rank, sylvester_rank(&g).unwrap().rank);
        prop_assert_eq!(border_rank(&f).unwrap(), border_rank(&g).unwrap());
    }

    #[test]
    fn short_sums_of_powers_have_small_rank(
        us in prop::collection::btree_set(-6i64..=6, 1..=3),
        cs in prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 3),
        extra in 0usize..3,
    ) {
        let us: Vec<i64> = us.into_iter().collect();
        let d = 2 * us.len() + extra;
        if let Some(f) = sum_of_powers(&us, &cs, d) {
            let cert = sylvester_rank(&f).unwrap();
            prop_assert!(cert.rank <= us.len());
        }
    }

    #[test]
    fn pencil_rank_depends_only_on_the_projective_point(
        c in prop::collection::vec(-3i64..=3, 6),
        p in prop::collection::vec(-4i64..=4, 5),
        scale in prop::sample::select(vec![-3i64, -1, 2, 5]),
        shift in -3i64..=3,
    ) {
        let Ok(o) = BinaryForm::from_i64(&c) else { return Ok(()) };
        let Ok(center) = ProjectionCenter::new(o) else { return Ok(()) };
        let p: Vec<Rational> = p.iter().map(|&x| rat(x)).collect();
        let Ok(base) = PencilLift::new(&center, &p) else { return Ok(()) };
        let r = pencil_rank(&center, &p).unwrap();
        let scaled: Vec<Rational> = p.iter().map(|x| x * rat(scale)).collect();
        prop_assert_eq!(pencil_rank(&center, &scaled).unwrap().rank, r.rank);
        // Any other lift of the same point spans the same pencil.
        let other = base.lift.add_scaled(&Scalar::from_i64(shift), center.form()).unwrap();
        let lift = PencilLift::with_lift(&center, &p, other).unwrap();
        prop_assert_eq!(analyze_lift(&center, lift).unwrap().rank(), r.rank);
    }

    #[test]
    fn terracini_probe_matches_curve_formula(r in 1usize..=9, s in 1usize..=5, seed in any::<u64>()) {
        let y = VarietySpec::Rnc(r);
        let expected = secant_dim_curve(r, s);
        prop_assert_eq!(expected, r.min(2 * s - 1));
        prop_assert_eq!(terracini_dim(&y, s, seed).unwrap(), expected);
        prop_assert_eq!(terracini_dim_modp(&y, s, seed ^ 0x5555).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn larger_samples_never_raise_the_oracle_rank(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let center = ProjectionCenter::new(BinaryForm::from_i64(&[1, 2, -1, 0, 3, 1]).unwrap()).unwrap();
        let p: Vec<Rational> = [1, a, b, a - b, 2].iter().map(|&x| rat(x)).collect();
        let small = CurveSample::new(&center, seed, 15, &[]).unwrap();
        let big = CurveSample::new(&center, seed, 30, &[]).unwrap();
        prop_assert_eq!(&big.params()[..15], small.params());
        let over = |o: xrank_core::subspace::OracleOutcome| o.size().unwrap_or(5);
        let rs = over(brute_force_point_rank(&small, &p, 4).unwrap());
        let rb = over(brute_force_point_rank(&big, &p, 4).unwrap());
        prop_assert!(rb <= rs);
    }

    #[test]
    fn secant_lines_satisfy_the_degree_identity(u in -4i64..=4, v in -4i64..=4) {
        prop_assume!(u != v);
        let center = ProjectionCenter::new(BinaryForm::from_i64(&[2, -1, 0, 1, 3, 1]).unwrap()).unwrap();
        let a = center.project_point(&CurvePoint::affine(rat(u)));
        let b = center.project_point(&CurvePoint::affine(rat(v)));
        let an = line_curve_analysis(&center, &LinearSubspace::line(&a, &b).unwrap()).unwrap();
        prop_assert!(an.degree_identity_holds());
        prop_assert_eq!(an.reduced_points, 2);
    }
}
