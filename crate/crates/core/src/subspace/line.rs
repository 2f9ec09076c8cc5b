//! Position of a line relative to the projected curve: the intersection
//! scheme, the projections from the line and from the intersection point,
//! and the rank statement they imply.
//!
//! The curve is parameterized in a chart `t -> ((1 + c t) x + t y)^d`,
//! with the shift `c` chosen so the one point left out of the chart avoids
//! the line and the singular point; all intersection and fiber data then
//! live at finite parameters.

use num_traits::{One, Zero};
use serde::Serialize;

use super::LinearSubspace;
use crate::arith::qpoly::QPoly;
use crate::arith::rational::{binomial, rat, ratio, Rational};
use crate::arith::{kernel_basis, rational_roots, span_contains, squarefree_factor_moduli, vectors_rank, ExactMatrix, Scalar};
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, CurvePoint};
use crate::projection::{
    classify_projection, normalize_point, proportional, to_scalars, CurveClass, LinearProjection,
    ProjectionCenter, RankStatement,
};

/// Parameters used to find the generic fiber of a map.
const FIBER_PROBES: [(i64, i64); 5] = [(2, 7), (-9, 5), (13, 4), (5, 11), (-17, 6)];
/// Number of nonzero probes whose maximum fiber is taken.
const FIBER_SAMPLES: usize = 3;

/// Polynomial vector `sum_k t^k coeffs[k]`.
#[derive(Clone, Debug)]
struct PolyCurve {
    coeffs: Vec<Vec<Rational>>,
}

impl PolyCurve {
    fn len(&self) -> usize {
        self.coeffs[0].len()
    }

    fn coords(&self) -> Vec<QPoly> {
        (0..self.len())
            .map(|j| QPoly::new(self.coeffs.iter().map(|c| c[j].clone()).collect()))
            .collect()
    }

    fn from_coords(coords: &[QPoly]) -> Self {
        let deg = coords.iter().map(|p| p.degree()).max().unwrap_or(-1).max(0) as usize;
        let coeffs = (0..=deg).map(|k| coords.iter().map(|p| p.coeff(k)).collect()).collect();
        PolyCurve { coeffs }
    }

    fn map(&self, proj: &LinearProjection) -> Self {
        PolyCurve { coeffs: self.coeffs.iter().map(|c| proj.apply(c)).collect() }
    }

    fn eval(&self, t: &Rational) -> Vec<Rational> {
        self.coords().iter().map(|p| p.eval(t)).collect()
    }

    fn derivative(&self) -> Self {
        Self::from_coords(&self.coords().iter().map(QPoly::derivative).collect::<Vec<_>>())
    }

    /// Monic gcd of the coordinates (zero if they all vanish).
    fn gcd(&self) -> QPoly {
        let g = self.coords().iter().fold(QPoly::zero(), |g, p| g.gcd(p));
        if g.is_zero() {
            g
        } else {
            g.monic()
        }
    }

    fn degree(&self) -> isize {
        self.coords().iter().map(QPoly::degree).max().unwrap_or(-1)
    }

    fn divide(&self, g: &QPoly) -> Self {
        Self::from_coords(&self.coords().iter().map(|p| p.exact_div(g)).collect::<Vec<_>>())
    }

    /// Rational components of the residue modulo `m`: `deg m` vectors.
    fn residue_components(&self, m: &QPoly) -> Vec<Vec<Rational>> {
        let rems: Vec<QPoly> = self.coords().iter().map(|p| p.rem(m)).collect();
        (0..m.degree() as usize)
            .map(|k| rems.iter().map(|r| r.coeff(k)).collect())
            .collect()
    }

    fn leading(&self) -> Vec<Rational> {
        let d = self.degree().max(0) as usize;
        self.coords().iter().map(|p| p.coeff(d)).collect()
    }
}

fn chart_point(c: i64, t: &Rational) -> Result<CurvePoint> {
    CurvePoint::new(Rational::one() + rat(c) * t, t.clone())
}

fn curve_in_chart(center: &ProjectionCenter, c: i64) -> Result<PolyCurve> {
    let d = center.degree();
    let a = BinaryForm::from_i64(&[1, 0])?;
    let b = BinaryForm::from_i64(&[c, 1])?;
    let coeffs = (0..=d)
        .map(|k| {
            let f = a.pow(d - k)?.mul(&b.pow(k)?)?;
            let scale = Rational::from_integer(binomial(d, k));
            let v: Vec<Rational> = f.to_rationals().unwrap().iter().map(|x| x * &scale).collect();
            Ok(center.projection().apply(&v))
        })
        .collect::<Result<_>>()?;
    Ok(PolyCurve { coeffs })
}

/// Image of the singular point of the projected curve, if any.
fn singular_image(center: &ProjectionCenter, class: &CurveClass) -> Result<Option<Vec<Rational>>> {
    match class {
        CurveClass::Smooth => Ok(None),
        CurveClass::Cuspidal { cusp } => Ok(Some(normalize_point(&center.project_point(cusp)))),
        CurveClass::Nodal { apolar, .. } => {
            // Forms killed by the apolar quadratic span the secant line
            // through the two preimages; it projects onto the node.
            let d = center.degree();
            let g = apolar.to_rationals().ok_or(Error::NotRational)?;
            let rows: Vec<Vec<Scalar>> = (0..=d - 2)
                .map(|j| {
                    (0..=d)
                        .map(|i| {
                            if i >= j && i - j <= 2 {
                                Scalar::Rat(g[i - j].clone() / Rational::from_integer(binomial(d, i)))
                            } else {
                                Scalar::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            for w in kernel_basis(&ExactMatrix::from_rows(&rows)?)? {
                let w: Vec<Rational> = w.iter().map(|s| s.to_rational().unwrap()).collect();
                if let Ok(p) = center.projection().project(&w) {
                    return Ok(Some(normalize_point(&p)));
                }
            }
            Err(Error::Internal("secant line of the node lies in the center".into()))
        }
    }
}

/// Number of preimages of a general point of the image of `f`.
fn fiber_degree(f: &PolyCurve) -> Result<usize> {
    let mut best = 0;
    let mut used = 0;
    for &(p, q) in &FIBER_PROBES {
        let y0 = f.eval(&ratio(p, q));
        if y0.iter().all(Zero::is_zero) {
            continue;
        }
        let proj = LinearProjection::new(std::slice::from_ref(&y0))?;
        let h = f.map(&proj).gcd();
        if h.is_zero() {
            return Err(Error::Internal("map is constant".into()));
        }
        let at_infinity = usize::from(proportional(&f.leading(), &y0));
        best = best.max(h.squarefree_part().degree() as usize + at_infinity);
        used += 1;
        if used == FIBER_SAMPLES {
            break;
        }
    }
    if best == 0 {
        return Err(Error::Internal("no usable fiber probe".into()));
    }
    Ok(best)
}

/// One factor of the intersection polynomial in the chart parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionParam {
    /// The curve point, when the parameter is rational.
    pub point: Option<CurvePoint>,
    pub modulus: QPoly,
    pub multiplicity: usize,
}

/// Data attached to the unique point of a line meeting the curve once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinglePoint {
    #[serde(with = "crate::arith::rational::serde_rationals")]
    pub point: Vec<Rational>,
    /// Multiplicity of the curve at the point.
    pub multiplicity: usize,
    pub b_q: usize,
    pub deg_c_q: usize,
    /// Whether the line lies in the Zariski tangent space at the point.
    pub line_in_tangent_space: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineConclusion {
    pub statement: RankStatement,
    /// Which part of the line theorem the statement comes from.
    pub source: String,
    /// A value the rank provably avoids inside the range.
    pub excludes: Option<usize>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineAnalysis {
    pub n: usize,
    pub chart_shift: i64,
    pub intersection: Vec<IntersectionParam>,
    /// Length of the intersection scheme, in curve parameters.
    pub length: usize,
    /// Number of distinct points of the projected curve on the line.
    pub reduced_points: usize,
    pub b_l: usize,
    pub deg_c_l: usize,
    pub c_l_rational_normal: bool,
    pub single: Option<SinglePoint>,
    pub conclusion: LineConclusion,
}

impl LineAnalysis {
    /// `length + b_L deg C_L = d`, and at a single point also `m + b_Q deg C_Q = d`.
    pub fn degree_identity_holds(&self) -> bool {
        let d = self.n + 1;
        let line = self.length + self.b_l * self.deg_c_l == d;
        let point = self.single.as_ref().map_or(true, |s| s.multiplicity + s.b_q * s.deg_c_q == d);
        line && point
    }
}

fn choose_chart(
    center: &ProjectionCenter,
    from_line: &LinearProjection,
    singular: Option<&Vec<Rational>>,
) -> Result<(i64, PolyCurve)> {
    for c in (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] }).take(64) {
        let curve = curve_in_chart(center, c)?;
        let missing = curve.leading();
        if from_line.apply(&missing).iter().all(Zero::is_zero) {
            continue;
        }
        if singular.is_some_and(|s| proportional(s, &missing)) {
            continue;
        }
        return Ok((c, curve));
    }
    Err(Error::Internal("no admissible chart".into()))
}

fn degree_over(e: usize, b: usize, what: &str) -> Result<usize> {
    if b == 0 || e % b != 0 {
        return Err(Error::Internal(format!("{what}: degree {e} not divisible by fiber size {b}")));
    }
    Ok(e / b)
}

pub fn line_curve_analysis(center: &ProjectionCenter, line: &LinearSubspace) -> Result<LineAnalysis> {
    let n = center.n();
    let d = center.degree();
    if line.dim() != 1 {
        return Err(Error::InvalidArgument("expected a line".into()));
    }
    if line.ambient_dim() != n {
        return Err(Error::InvalidArgument(format!("line must live in P^{n}")));
    }
    if n < 3 {
        return Err(Error::InvalidArgument("line analysis needs n >= 3".into()));
    }
    let class = classify_projection(center)?;
    let singular = singular_image(center, &class)?;
    let from_line = LinearProjection::new(line.basis())?;
    let (chart_shift, curve) = choose_chart(center, &from_line, singular.as_ref())?;

    let on_line = curve.map(&from_line);
    let g = on_line.gcd();
    let length = g.degree().max(0) as usize;
    let mut intersection = Vec::new();
    let mut params = 0;
    if length > 0 {
        for (mult, factor) in g.squarefree_decomposition() {
            for root in rational_roots(&factor)? {
                intersection.push(IntersectionParam {
                    point: Some(chart_point(chart_shift, &root)?),
                    modulus: QPoly::linear_root(&root),
                    multiplicity: mult,
                });
                params += 1;
            }
            for m in squarefree_factor_moduli(&factor)? {
                params += m.degree() as usize;
                intersection.push(IntersectionParam { point: None, modulus: m, multiplicity: mult });
            }
        }
    }
    let node_on_line = matches!(class, CurveClass::Nodal { .. })
        && singular.as_ref().is_some_and(|s| from_line.apply(s).iter().all(Zero::is_zero));
    let reduced_points = params - usize::from(node_on_line);

    let reduced_map = if length > 0 { on_line.divide(&g) } else { on_line };
    let b_l = fiber_degree(&reduced_map)?;
    let deg_c_l = degree_over(d - length, b_l, "C_L")?;
    let span_rank = vectors_rank(&reduced_map.coeffs.iter().map(|c| to_scalars(c)).collect::<Vec<_>>())?;
    let c_l_rational_normal = deg_c_l + 2 == n && span_rank == n - 1;

    let single = if reduced_points == 1 {
        let q = if node_on_line {
            singular.clone().unwrap()
        } else {
            let t0 = match intersection.as_slice() {
                [IntersectionParam { point: Some(_), modulus, .. }] => -modulus.coeff(0),
                _ => return Err(Error::Internal("single point with irrational parameter".into())),
            };
            normalize_point(&curve.eval(&t0))
        };
        Some(single_point(center, &curve, &class, singular.as_ref(), &q, line)?)
    } else {
        None
    };

    let conclusion = conclude(n, reduced_points, c_l_rational_normal, b_l, single.as_ref());
    Ok(LineAnalysis {
        n,
        chart_shift,
        intersection,
        length,
        reduced_points,
        b_l,
        deg_c_l,
        c_l_rational_normal,
        single,
        conclusion,
    })
}

fn single_point(
    center: &ProjectionCenter,
    curve: &PolyCurve,
    class: &CurveClass,
    singular: Option<&Vec<Rational>>,
    q: &[Rational],
    line: &LinearSubspace,
) -> Result<SinglePoint> {
    let d = center.degree();
    let from_q = LinearProjection::new(&[q.to_vec()])?;
    let through_q = curve.map(&from_q);
    let gq = through_q.gcd();
    let multiplicity = gq.degree().max(0) as usize;
    let b_q = fiber_degree(&through_q.divide(&gq))?;
    let deg_c_q = degree_over(d - multiplicity, b_q, "C_Q")?;

    let is_cusp = matches!(class, CurveClass::Cuspidal { .. }) && singular.is_some_and(|s| proportional(s, q));
    let tangent: Vec<Vec<Rational>> = if is_cusp {
        let t0 = -gq.squarefree_part().coeff(0);
        let d1 = curve.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        vec![curve.eval(&t0), d2.eval(&t0), d3.eval(&t0)]
    } else {
        let m = gq.squarefree_part();
        let mut v = curve.residue_components(&m);
        v.extend(curve.derivative().residue_components(&m));
        v
    };
    let basis: Vec<_> = tangent.iter().map(|r| to_scalars(r)).collect();
    let mut inside = true;
    for b in line.basis() {
        inside &= span_contains(&basis, &to_scalars(b))?;
    }
    Ok(SinglePoint {
        point: q.to_vec(),
        multiplicity,
        b_q,
        deg_c_q,
        line_in_tangent_space: inside,
    })
}

fn conclude(
    n: usize,
    reduced_points: usize,
    c_l_rational_normal: bool,
    b_l: usize,
    single: Option<&SinglePoint>,
) -> LineConclusion {
    let make = |statement, source: &str, excludes, note: Option<&str>| LineConclusion {
        statement,
        source: source.to_string(),
        excludes,
        note: note.map(str::to_string),
    };
    match reduced_points {
        0 => make(RankStatement::UpperBound { bound: n }, "i1.1", None, None),
        1 => {
            let range = RankStatement::Range { lower: 3, upper: n + 1 };
            if n >= 4 && c_l_rational_normal && b_l == 1 {
                make(RankStatement::Exact { rank: n + 1 }, "i1.b2", None, None)
            } else if c_l_rational_normal && b_l > 1 {
                make(range, "i1.2", None, Some("no exact value is known when b_L > 1"))
            } else {
                let b_q = single.map(|s| s.b_q);
                if n >= 4 && !(c_l_rational_normal && b_q == Some(b_l)) {
                    make(range, "i1.b1", Some(n), Some("C_L is not rational normal with b_Q = b_L, so the rank is not n"))
                } else {
                    make(range, "i1.b1", None, Some("a rank of n would force C_L rational normal and b_Q = b_L"))
                }
            }
        }
        _ => make(RankStatement::Exact { rank: 2 }, "i1.2", None, None),
    }
}
