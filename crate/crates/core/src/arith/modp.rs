//! Arithmetic in prime fields `Z/p` with `p < 2^63`, used for fast
//! filtering in combinatorial searches and for root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rational::Rational;

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const fn new(p: u64) -> Self {
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue")
    }

    /// Image of a rational, or `None` when `p` divides the denominator.
    pub fn from_rational(&self, r: &Rational) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(r.numer()), self.inv(d)))
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        self.from_bigint(&BigInt::from(v))
    }

    /// Rank of a dense matrix by Gaussian elimination (rows are consumed).
    pub fn rank(&self, mut a: Vec<Vec<u64>>) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let inv = self.inv(a[r][col]);
            for j in col..cols {
                a[r][j] = self.mul(a[r][j], inv);
            }
            for i in r + 1..rows {
                let f = a[i][col];
                if f == 0 {
                    continue;
                }
                for j in col..cols {
                    a[i][j] = self.sub(a[i][j], self.mul(f, a[r][j]));
                }
            }
            r += 1;
        }
        r
    }

    /// Horner evaluation of a low-to-high coefficient vector.
    pub fn eval_poly(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Degree of `gcd(f, g)` over `Z/p`, for low-to-high coefficient vectors.
    pub fn gcd_degree(&self, f: &[u64], g: &[u64]) -> isize {
        let trim = |mut v: Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let mut a = trim(f.to_vec());
        let mut b = trim(g.to_vec());
        while !b.is_empty() {
            let inv = self.inv(*b.last().unwrap());
            while a.len() >= b.len() && !a.is_empty() {
                let c = self.mul(*a.last().unwrap(), inv);
                let shift = a.len() - b.len();
                for (j, &bj) in b.iter().enumerate() {
                    a[shift + j] = self.sub(a[shift + j], self.mul(c, bj));
                }
                a = trim(a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len() as isize - 1
    }
}

/// Deterministic primality test for `u64` (Miller-Rabin with fixed bases).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let f = PrimeField::new(n);
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

pub fn is_zero_residue(v: &BigInt, p: u64) -> bool {
    (v % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    #[test]
    fn field_ops() {
        let f = PrimeField::new(MERSENNE_61);
        let a = f.from_rational(&ratio(3, 7)).unwrap();
        assert_eq!(f.mul(a, 7), 3);
        assert_eq!(f.add(f.neg(5), 5), 0);
        assert!(is_prime(MERSENNE_61));
        assert_eq!(next_prime(1000), 1009);
        assert!(PrimeField::new(7).from_rational(&ratio(1, 14)).is_none());
    }

    #[test]
    fn modular_rank_and_gcd() {
        let f = PrimeField::new(101);
        assert_eq!(f.rank(vec![vec![1, 2], vec![2, 4]]), 1);
        // (x-1)^2 and its derivative share x-1.
        let p = [1, f.neg(2), 1];
        let dp = [f.neg(2), 2];
        assert_eq!(f.gcd_degree(&p, &dp), 1);
        assert_eq!(f.gcd_degree(&[f.neg(1), 0, 1], &[0, 2]), 0);
    }
}
