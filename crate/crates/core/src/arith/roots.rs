//! Rational roots and dynamic-evaluation moduli of rational polynomials.
//!
//! Rational roots are found p-adically: pick a small prime for which the
//! squarefree part stays squarefree, find its roots mod p by evaluation,
//! Hensel-lift past the reconstruction bound, rebuild a/b by the half-gcd
//! style rational reconstruction and confirm each candidate exactly. This
//! avoids factoring the (often large) leading and trailing coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{next_prime, PrimeField};
use super::qpoly::QPoly;
use super::rational::Rational;
use super::ArithError;

/// All distinct rational roots, in increasing order.
pub fn rational_roots(p: &QPoly) -> Result<Vec<Rational>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if p.degree() < 1 {
        return Ok(Vec::new());
    }
    let mut f = p.squarefree_part();
    let mut roots = Vec::new();
    if f.coeff(0).is_zero() {
        roots.push(Rational::zero());
        f = f.exact_div(&QPoly::x());
    }
    if f.degree() >= 1 {
        let ints = f.primitive_integer();
        roots.extend(nonzero_rational_roots(&ints));
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn nonzero_rational_roots(f: &[BigInt]) -> Vec<Rational> {
    let lead = f.last().unwrap().abs();
    let trail = f[0].abs();
    if f.len() == 2 {
        return vec![Rational::new(-f[0].clone(), f[1].clone())];
    }
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut candidate = 1000u64;
    let field = loop {
        let p = next_prime(candidate);
        candidate = p + 1;
        let fp = PrimeField::new(p);
        if super::modp::is_zero_residue(&lead, p) || super::modp::is_zero_residue(&trail, p) {
            continue;
        }
        let red: Vec<u64> = f.iter().map(|c| fp.from_bigint(c)).collect();
        let dred: Vec<u64> = df.iter().map(|c| fp.from_bigint(c)).collect();
        if fp.gcd_degree(&red, &dred) == 0 {
            break fp;
        }
    };
    let p = field.modulus();
    let red: Vec<u64> = f.iter().map(|c| field.from_bigint(c)).collect();
    let bound = BigInt::from(2) * &lead * &trail;
    let big_p = BigInt::from(p);
    let mut out = Vec::new();
    for r in (0..p).filter(|&r| field.eval_poly(&red, r) == 0) {
        let (lifted, modulus) = hensel_lift(f, &df, BigInt::from(r), &big_p, &bound);
        if let Some(q) = reconstruct(&lifted, &modulus, &trail, &lead) {
            if eval_int_poly(f, &q).is_zero() {
                out.push(q);
            }
        }
    }
    out
}

fn eval_int_poly(f: &[BigInt], x: &Rational) -> Rational {
    f.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Newton lifting of a simple root modulo `p` until the modulus exceeds `bound`.
fn hensel_lift(f: &[BigInt], df: &[BigInt], mut r: BigInt, p: &BigInt, bound: &BigInt) -> (BigInt, BigInt) {
    let mut m = p.clone();
    while &m <= bound {
        m = &m * &m;
        let fr = eval_mod(f, &r, &m);
        let dfr = eval_mod(df, &r, &m);
        r = (r - fr * inverse_mod(&dfr, &m)).mod_floor(&m);
    }
    (r, m)
}

/// Finds `a/b` with `a = b r (mod m)`, `|a| <= num_bound`, `0 < b <= den_bound`.
fn reconstruct(r: &BigInt, m: &BigInt, num_bound: &BigInt, den_bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1.abs() > num_bound {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || &t1.abs() > den_bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Squarefree, pairwise coprime, monic factors carrying the irrational roots
/// of `p`: Yun's decomposition with every rational linear factor removed.
pub fn squarefree_factor_moduli(p: &QPoly) -> Result<Vec<QPoly>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (_, factor) in p.squarefree_decomposition() {
        let mut rest = factor;
        for r in rational_roots(&rest)? {
            rest = rest.exact_div(&QPoly::linear_root(&r));
        }
        if rest.degree() >= 1 {
            out.push(rest.monic());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, ratio};

    #[test]
    fn documented_examples() {
        assert_eq!(rational_roots(&QPoly::from_i64(&[-2, 0, 2])).unwrap(), vec![rat(-1), rat(1)]);
        let q = QPoly::from_i64(&[1, 0, 1]);
        assert!(rational_roots(&q).unwrap().is_empty());
        assert_eq!(squarefree_factor_moduli(&q).unwrap(), vec![q]);
        assert_eq!(
            rational_roots(&QPoly::from_i64(&[0, 0, -1, 1])).unwrap(),
            vec![rat(0), rat(1)]
        );
        assert!(rational_roots(&QPoly::zero()).is_err());
    }

    #[test]
    fn large_coefficient_roots() {
        // (91x - 1234567)(1000003 x + 17)(x^2 + 3)
        let p = QPoly::new(vec![rat(-1234567), rat(91)])
            .mul(&QPoly::new(vec![rat(17), rat(1000003)]))
            .mul(&QPoly::from_i64(&[3, 0, 1]));
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![ratio(-17, 1000003), ratio(1234567, 91)]);
        assert_eq!(squarefree_factor_moduli(&p).unwrap(), vec![QPoly::from_i64(&[3, 0, 1])]);
    }

    #[test]
    fn repeated_and_rational_coefficient_input() {
        // (x - 2/3)^3 (x + 5)^2 (x^2 - 2)
        let p = QPoly::linear_root(&ratio(2, 3))
            .pow(3)
            .mul(&QPoly::from_i64(&[5, 1]).pow(2))
            .mul(&QPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(rational_roots(&p).unwrap(), vec![rat(-5), ratio(2, 3)]);
        assert_eq!(squarefree_factor_moduli(&p).unwrap(), vec![QPoly::from_i64(&[-2, 0, 1])]);
    }
}
