//! Exhaustive search for the smallest set of sampled curve points whose
//! span contains a given subspace.
//!
//! For a target `V` of vector dimension `v + 1` and a candidate size `k`,
//! a minimal spanning set `S` always contains a subset `T` of size
//! `k - v - 2` with `V + <T>` of dimension `k - 1`. Modulo that space the
//! remaining `v + 2` points of `S` are proportional, so the search runs over
//! `T` and groups the other points by their normalized residue. Residues are
//! computed modulo a 61-bit prime; every hit is confirmed exactly.

use std::collections::HashMap;

use serde::Serialize;

use super::{CurveSample, LinearSubspace};
use crate::arith::modp::PrimeField;
use crate::arith::rational::Rational;
use crate::arith::{span_contains, vectors_rank};
use crate::error::{Error, Result};
use crate::projection::to_scalars;

/// Largest subset size the search accepts.
pub const MAX_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleOutcome {
    /// Minimal size found, with sample indices of one spanning set.
    Found { size: usize, subset: Vec<usize> },
    /// No spanning set of size up to `cap` in the sample.
    ExceedsCap { cap: usize },
}

impl OracleOutcome {
    pub fn size(&self) -> Option<usize> {
        match self {
            OracleOutcome::Found { size, .. } => Some(*size),
            OracleOutcome::ExceedsCap { .. } => None,
        }
    }
}

/// Echelon basis modulo `p`, reduced so each pivot column is zero in the other rows.
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(field: &PrimeField, vectors: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut e = Echelon { rows: Vec::new(), pivots: Vec::new() };
        for v in vectors {
            e.insert(field, v);
        }
        e
    }

    fn reduce(&self, field: &PrimeField, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
    }

    fn insert(&mut self, field: &PrimeField, mut v: Vec<u64>) -> bool {
        self.reduce(field, &mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = field.inv(v[p]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn normalize(field: &PrimeField, v: &mut [u64]) -> bool {
    let Some(p) = v.iter().position(|&x| x != 0) else { return false };
    let inv = field.inv(v[p]);
    for x in v.iter_mut() {
        *x = field.mul(*x, inv);
    }
    true
}

fn exact_spans(sample: &CurveSample, subset: &[usize], target: &LinearSubspace) -> Result<bool> {
    let basis: Vec<_> = subset.iter().map(|&i| to_scalars(&sample.points()[i])).collect();
    for v in target.basis() {
        if !span_contains(&basis, &to_scalars(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn combinations_each(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(false);
    }
    loop {
        if f(&idx)? {
            return Ok(true);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return Ok(false);
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimal number of sampled points whose span contains `target`, searching
/// sizes `dim + 1..=cap`.
pub fn brute_force_subspace_rank(
    sample: &CurveSample,
    target: &LinearSubspace,
    cap: usize,
) -> Result<OracleOutcome> {
    let v = target.dim();
    if cap > MAX_CAP || cap < v + 1 {
        return Err(Error::InvalidArgument(format!(
            "cap must lie in {}..={MAX_CAP}, got {cap}",
            v + 1
        )));
    }
    if target.ambient_dim() + 1 != sample.points().first().map_or(0, Vec::len) {
        return Err(Error::InvalidArgument("subspace and sample live in different spaces".into()));
    }
    let field = *sample.field();
    let target_res: Vec<Vec<u64>> = target
        .basis()
        .iter()
        .map(|b| b.iter().map(|x| field.from_rational(x)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("target not reducible modulo the prime".into()))?;
    let n_pts = sample.len();
    let res = sample.residues();

    // Size v + 1: the span must be the target itself.
    {
        let inside: Vec<usize> = (0..n_pts)
            .filter(|&i| {
                let mut e = Echelon::new(&field, target_res.iter().cloned());
                !e.insert(&field, res[i].clone())
            })
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        for &i in &inside {
            let mut rows: Vec<Vec<Rational>> = chosen.iter().map(|&j| sample.points()[j].clone()).collect();
            rows.push(sample.points()[i].clone());
            let scal: Vec<_> = rows.iter().map(|r| to_scalars(r)).collect();
            if vectors_rank(&scal)? == chosen.len() + 1 {
                chosen.push(i);
            }
            if chosen.len() == v + 1 {
                break;
            }
        }
        if chosen.len() == v + 1 && exact_spans(sample, &chosen, target)? {
            return Ok(OracleOutcome::Found { size: v + 1, subset: chosen });
        }
    }

    for k in v + 2..=cap {
        let t = k - v - 2;
        let mut found: Option<Vec<usize>> = None;
        combinations_each(n_pts, t, |tset| {
            let base = Echelon::new(
                &field,
                target_res.iter().cloned().chain(tset.iter().map(|&i| res[i].clone())),
            );
            if base.rank() < v + 1 + t {
                let rows: Vec<_> = target
                    .basis()
                    .iter()
                    .chain(tset.iter().map(|&i| &sample.points()[i]))
                    .map(|r| to_scalars(r))
                    .collect();
                if vectors_rank(&rows)? == v + 1 + t {
                    return Err(Error::Internal("prime divides a minor; rerun with exact search".into()));
                }
                return Ok(false);
            }
            let mut zeros = Vec::new();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
            for j in (0..n_pts).filter(|j| !tset.contains(j)) {
                let mut r = res[j].clone();
                base.reduce(&field, &mut r);
                if !normalize(&field, &mut r) {
                    zeros.push(j);
                    continue;
                }
                match index.get(&r) {
                    Some(&g) => groups[g].push(j),
                    None => {
                        index.insert(r, groups.len());
                        groups.push(vec![j]);
                    }
                }
            }
            let mut pools: Vec<Vec<usize>> = groups
                .into_iter()
                .filter(|g| g.len() + zeros.len() >= v + 2)
                .map(|mut g| {
                    g.extend(&zeros);
                    g.sort_unstable();
                    g
                })
                .collect();
            if zeros.len() >= v + 2 {
                pools.push(zeros.clone());
            }
            for pool in pools {
                let hit = combinations_each(pool.len(), v + 2, |u| {
                    let mut subset: Vec<usize> = tset.to_vec();
                    subset.extend(u.iter().map(|&i| pool[i]));
                    subset.sort_unstable();
                    let mut all = Echelon::new(&field, subset.iter().map(|&i| res[i].clone()));
                    if target_res.iter().any(|b| all.insert(&field, b.clone())) {
                        return Ok(false);
                    }
                    if exact_spans(sample, &subset, target)? {
                        found = Some(subset);
                        return Ok(true);
                    }
                    Ok(false)
                })?;
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        })?;
        if let Some(subset) = found {
            return Ok(OracleOutcome::Found { size: k, subset });
        }
    }
    Ok(OracleOutcome::ExceedsCap { cap })
}

pub fn brute_force_point_rank(sample: &CurveSample, point: &[Rational], cap: usize) -> Result<OracleOutcome> {
    brute_force_subspace_rank(sample, &LinearSubspace::point(point)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::forms::{BinaryForm, CurvePoint};
    use crate::projection::ProjectionCenter;

    fn sample(size: usize) -> CurveSample {
        let c = ProjectionCenter::new(BinaryForm::from_i64(&[1, 0, 1, 0, 1]).unwrap()).unwrap();
        CurveSample::new(&c, 3, size, &[]).unwrap()
    }

    fn add(a: &[Rational], b: &[Rational], s: i64) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y * rat(s)).collect()
    }

    #[test]
    fn combinations_visit_all() {
        let mut seen = Vec::new();
        combinations_each(4, 2, |c| {
            seen.push(c.to_vec());
            Ok(false)
        })
        .unwrap();
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        combinations_each(3, 0, |_| {
            count += 1;
            Ok(false)
        })
        .unwrap();
        assert_eq!(count, 1);
    }

    #[test]
    fn point_ranks() {
        let s = sample(40);
        let pts = s.points();
        assert_eq!(brute_force_point_rank(&s, &pts[5], 3).unwrap().size(), Some(1));
        let sec = add(&pts[2], &pts[9], 3);
        let out = brute_force_point_rank(&s, &sec, 3).unwrap();
        assert_eq!(out, OracleOutcome::Found { size: 2, subset: vec![2, 9] });
        let three = add(&add(&pts[1], &pts[4], 2), &pts[7], -5);
        assert_eq!(brute_force_point_rank(&s, &three, 4).unwrap().size(), Some(3));
    }

    #[test]
    fn secant_line() {
        let s = sample(30);
        let pts = s.points();
        let l = LinearSubspace::line(&pts[3], &add(&pts[3], &pts[11], 2)).unwrap();
        assert_eq!(brute_force_subspace_rank(&s, &l, 3).unwrap().size(), Some(2));
        let l = LinearSubspace::line(&add(&pts[0], &pts[1], 1), &add(&pts[2], &pts[5], 1)).unwrap();
        assert_eq!(brute_force_subspace_rank(&s, &l, 4).unwrap().size(), Some(4));
    }

    #[test]
    fn cap_is_reported() {
        let s = sample(10);
        let p: Vec<Rational> = [1, 7, -3, 11].iter().map(|&x| rat(x)).collect();
        let out = brute_force_point_rank(&s, &p, 1).unwrap();
        assert_eq!(out, OracleOutcome::ExceedsCap { cap: 1 });
        assert!(brute_force_point_rank(&s, &p, 9).is_err());
        let _ = CurvePoint::infinity();
    }
}
