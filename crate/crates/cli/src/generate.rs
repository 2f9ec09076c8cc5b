//! Seeded random instances: forms, centers, and points with known rank.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use xrank_core::arith::rational::ratio;
use xrank_core::arith::{kernel_basis, ExactMatrix, Rational, Scalar};
use xrank_core::forms::{osculating_basis, BinaryForm, CurvePoint};
use xrank_core::projection::{classify_projection, CurveClass, OsculatingFlag, ProjectionCenter};

const ATTEMPTS: usize = 200;

pub type GenResult<T> = Result<T, String>;

fn exhausted(what: &str) -> String {
    format!("could not generate {what} in {ATTEMPTS} attempts")
}

pub fn random_rational(rng: &mut ChaCha8Rng, h: i64) -> Rational {
    ratio(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn nonzero_int(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    loop {
        let c = rng.gen_range(-h..=h);
        if c != 0 {
            return c;
        }
    }
}

/// `k` distinct affine curve points of height at most `h`, avoiding `avoid`.
pub fn distinct_points(
    rng: &mut ChaCha8Rng,
    k: usize,
    h: i64,
    avoid: &[CurvePoint],
) -> GenResult<Vec<CurvePoint>> {
    let mut out: Vec<CurvePoint> = Vec::with_capacity(k);
    let mut tries = 0;
    while out.len() < k {
        tries += 1;
        if tries > ATTEMPTS * k.max(1) {
            return Err(exhausted("distinct curve points"));
        }
        let q = CurvePoint::affine(random_rational(rng, h));
        if !out.contains(&q) && !avoid.contains(&q) {
            out.push(q);
        }
    }
    Ok(out)
}

/// A form with integer coefficients in `[-h, h]`.
pub fn random_form(rng: &mut ChaCha8Rng, d: usize, h: i64) -> BinaryForm {
    loop {
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-h..=h)).collect();
        if let Ok(f) = BinaryForm::from_i64(&c) {
            return f;
        }
    }
}

/// `sum c_i l_i^d` over the given points with the given coefficients.
pub fn sum_of_powers(points: &[CurvePoint], coeffs: &[i64], d: usize) -> GenResult<BinaryForm> {
    let mut acc = vec![Rational::zero(); d + 1];
    for (q, &c) in points.iter().zip(coeffs) {
        let p = BinaryForm::power(q, d).to_rationals().expect("rational point");
        for (a, b) in acc.iter_mut().zip(p) {
            *a += b * Rational::from_integer(c.into());
        }
    }
    BinaryForm::from_rationals(acc).map_err(|e| e.to_string())
}

/// A sum of `k` powers of random rational linear forms.
pub fn low_rank_form(rng: &mut ChaCha8Rng, d: usize, k: usize) -> GenResult<BinaryForm> {
    for _ in 0..ATTEMPTS {
        let pts = distinct_points(rng, k, 4, &[])?;
        let cs: Vec<i64> = (0..k).map(|_| nonzero_int(rng, 3)).collect();
        if let Ok(f) = sum_of_powers(&pts, &cs, d) {
            return Ok(f);
        }
    }
    Err(exhausted("a low-rank form"))
}

/// `l^(d-1) m` plus a sum of `extra` powers, all from random rational linear forms.
pub fn tangential_form(rng: &mut ChaCha8Rng, d: usize, extra: usize) -> GenResult<BinaryForm> {
    for _ in 0..ATTEMPTS {
        let pts = distinct_points(rng, extra + 2, 4, &[])?;
        let lin = |q: &CurvePoint| BinaryForm::from_rationals(vec![q.alpha().clone(), q.beta().clone()]);
        let t = lin(&pts[0])
            .and_then(|l| l.pow(d - 1))
            .and_then(|p| lin(&pts[1]).and_then(|m| p.mul(&m)))
            .map_err(|e| e.to_string())?;
        let mut acc = t.to_rationals().expect("rational form");
        if extra > 0 {
            let cs: Vec<i64> = (0..extra).map(|_| nonzero_int(rng, 3)).collect();
            let s = sum_of_powers(&pts[2..], &cs, d)?;
            for (a, b) in acc.iter_mut().zip(s.to_rationals().unwrap()) {
                *a += b;
            }
        }
        if let Ok(f) = BinaryForm::from_rationals(acc) {
            return Ok(f);
        }
    }
    Err(exhausted("a tangential form"))
}

/// A center of degree `d` whose projected curve is smooth.
pub fn smooth_center(rng: &mut ChaCha8Rng, d: usize) -> GenResult<ProjectionCenter> {
    for _ in 0..ATTEMPTS {
        let Ok(c) = ProjectionCenter::new(random_form(rng, d, 3)) else { continue };
        if matches!(classify_projection(&c), Ok(CurveClass::Smooth)) {
            return Ok(c);
        }
    }
    Err(exhausted("a smooth center"))
}

/// `O = l^(d-1) m` with `l` a random rational linear form and `m` independent of it.
pub fn cuspidal_center(rng: &mut ChaCha8Rng, d: usize) -> GenResult<ProjectionCenter> {
    for _ in 0..ATTEMPTS {
        let l = distinct_points(rng, 1, 3, &[])?.remove(0);
        let base = BinaryForm::from_rationals(vec![l.alpha().clone(), l.beta().clone()])
            .map_err(|e| e.to_string())?;
        let m = BinaryForm::from_rationals(vec![random_rational(rng, 3), random_rational(rng, 3)]);
        let Ok(m) = m else { continue };
        let (a, b) = (m.to_rationals().unwrap(), base.to_rationals().unwrap());
        if a[0].clone() * &b[1] == a[1].clone() * &b[0] {
            continue;
        }
        let o = base.pow(d - 1).and_then(|p| p.mul(&m)).map_err(|e| e.to_string())?;
        let Ok(c) = ProjectionCenter::new(o) else { continue };
        if matches!(classify_projection(&c), Ok(CurveClass::Cuspidal { .. })) {
            return Ok(c);
        }
    }
    Err(exhausted("a cuspidal center"))
}

/// `O = l1^d + c l2^d`, giving a nodal curve.
pub fn nodal_center(rng: &mut ChaCha8Rng, d: usize) -> GenResult<ProjectionCenter> {
    for _ in 0..ATTEMPTS {
        let pts = distinct_points(rng, 2, 4, &[])?;
        let f = sum_of_powers(&pts, &[1, nonzero_int(rng, 3)], d)?;
        if let Ok(c) = ProjectionCenter::new(f) {
            return Ok(c);
        }
    }
    Err(exhausted("a nodal center"))
}

/// A point of `E(t) \ E(t-1)` in the osculating flag at the cusp, built as
/// the image of `sum c_i l_i^d` over `n + 2 - t` random curve points with
/// all `c_i` nonzero. Returns the point and the `l_i`.
pub fn stratum_point(
    rng: &mut ChaCha8Rng,
    center: &ProjectionCenter,
    flag: &OsculatingFlag,
    t: usize,
) -> GenResult<(Vec<Rational>, Vec<CurvePoint>)> {
    let d = center.degree();
    let k = d + 1 - t;
    let osc = osculating_basis(d, &flag.cusp, t).map_err(|e| e.to_string())?;
    for _ in 0..ATTEMPTS {
        let pts = distinct_points(rng, k, 5, &[flag.cusp.clone()])?;
        let mut cols: Vec<Vec<Scalar>> = pts.iter().map(|q| BinaryForm::power(q, d).coeffs().to_vec()).collect();
        cols.extend(osc.iter().map(|f| f.coeffs().to_vec()));
        let rows: Vec<Vec<Scalar>> = (0..=d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let m = ExactMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
        let kernel = kernel_basis(&m).map_err(|e| e.to_string())?;
        if kernel.is_empty() {
            continue;
        }
        // Random integer combination of the kernel vectors.
        let mut v = vec![Rational::zero(); cols.len()];
        for kv in &kernel {
            let w = Rational::from_integer(nonzero_int(rng, 3).into());
            for (a, b) in v.iter_mut().zip(kv) {
                *a += b.to_rational().expect("rational kernel") * &w;
            }
        }
        if v[..k].iter().any(Zero::is_zero) {
            continue;
        }
        let mut acc = vec![Rational::zero(); d + 1];
        for (q, c) in pts.iter().zip(&v[..k]) {
            for (a, p) in acc.iter_mut().zip(BinaryForm::power(q, d).to_rationals().unwrap()) {
                *a += p * c;
            }
        }
        let Ok(a) = BinaryForm::from_rationals(acc) else { continue };
        let Ok(p) = center.project(&a) else { continue };
        if flag.depth(&p) == Ok(t) {
            return Ok((p, pts));
        }
    }
    Err(exhausted(&format!("a point of stratum {t}")))
}
