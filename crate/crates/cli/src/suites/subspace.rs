use rand::Rng;
use rand_chacha::ChaCha8Rng;
use xrank_core::arith::Rational;
use xrank_core::forms::{osculating_basis, CurvePoint};
use xrank_core::projection::{OsculatingFlag, ProjectionCenter, RankStatement};
use xrank_core::subspace::{
    brute_force_subspace_rank, line_curve_analysis, subspace_rank_bound_i3, subspace_rank_upper, CurveSample,
    LineAnalysis, LinearSubspace, OracleOutcome, MAX_CAP,
};

use super::{err, rats, Case};
use crate::config::ExperimentConfig;
use crate::generate::{cuspidal_center, distinct_points, nonzero_int, smooth_center};
use crate::report::{BoundRow, CaseRecord, Relation};

struct LineRun {
    rec: CaseRecord,
    analysis: LineAnalysis,
    sample: CurveSample,
    line: LinearSubspace,
}

fn found_or_over(o: &OracleOutcome) -> i64 {
    match o {
        OracleOutcome::Found { size, .. } => *size as i64,
        OracleOutcome::ExceedsCap { cap } => *cap as i64 + 1,
    }
}

fn lower_bound(s: &RankStatement) -> usize {
    match s {
        RankStatement::Exact { rank } => *rank,
        RankStatement::Range { lower, .. } => *lower,
        RankStatement::UpperBound { .. } => 2,
    }
}

/// Analysis of the line through `a` and `b`, with the checks common to all
/// line cases: the secant biconditional and soundness of the lower bound
/// against the sample oracle.
fn run_line(
    rng: &mut ChaCha8Rng,
    center: &ProjectionCenter,
    a: &[Rational],
    b: &[Rational],
    forced: &[CurvePoint],
    sample_size: usize,
) -> Result<LineRun, String> {
    let line = LinearSubspace::line(a, b).map_err(err)?;
    let analysis = line_curve_analysis(center, &line).map_err(err)?;
    let sample = CurveSample::new(center, rng.gen(), sample_size, forced).map_err(err)?;
    let secant = brute_force_subspace_rank(&sample, &line, 2).map_err(err)?;
    let says_two = analysis.conclusion.statement == RankStatement::Exact { rank: 2 };
    let source = analysis.conclusion.source.clone();
    let mut rec = CaseRecord::new("");
    rec.input("center", center.form())
        .input("line", [rats(a), rats(b)])
        .output("analysis", &analysis)
        .output("secant_oracle", &secant)
        .claim("rank statement", &analysis.conclusion.statement, "line-analysis")
        .check("degree identity", analysis.degree_identity_holds())
        .check("rank 2 iff two sampled points span the line", says_two == (secant.size() == Some(2)));
    let lower = lower_bound(&analysis.conclusion.statement);
    if (3..=MAX_CAP + 1).contains(&lower) {
        let below = brute_force_subspace_rank(&sample, &line, lower - 1).map_err(err)?;
        rec.output("lower_bound_oracle", &below).bound(BoundRow::new(
            &source,
            "sample rank",
            found_or_over(&below),
            Relation::AtLeast,
            lower as i64,
        ));
    }
    Ok(LineRun { rec, analysis, sample, line })
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| Rational::from_integer(rng.gen_range(-5i64..=5).into())).collect()
}

fn combination(rng: &mut ChaCha8Rng, vs: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); vs[0].len()];
    for v in vs {
        let c = Rational::from_integer(nonzero_int(rng, 4).into());
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * &c;
        }
    }
    out
}

/// Line through a curve point and either a random point or the tangent direction.
fn single_line(
    rng: &mut ChaCha8Rng,
    center: &ProjectionCenter,
    tangent: bool,
) -> Result<(Vec<Rational>, Vec<Rational>, Vec<CurvePoint>), String> {
    let q = distinct_points(rng, 1, 4, &[])?.remove(0);
    let a = center.project_point(&q);
    let b = if tangent {
        let dir = osculating_basis(center.degree(), &q, 1).map_err(err)?.remove(1);
        center.project(&dir).map_err(err)?
    } else {
        random_vector(rng, center.n() + 1)
    };
    Ok((a, b, vec![q]))
}

fn secant_line(
    rng: &mut ChaCha8Rng,
    center: &ProjectionCenter,
) -> Result<(Vec<Rational>, Vec<Rational>, Vec<CurvePoint>), String> {
    let qs = distinct_points(rng, 2, 4, &[])?;
    Ok((center.project_point(&qs[0]), center.project_point(&qs[1]), qs))
}

/// Line inside the span of `n` random curve points.
fn spanned_line(
    rng: &mut ChaCha8Rng,
    center: &ProjectionCenter,
) -> Result<(Vec<Rational>, Vec<Rational>, Vec<CurvePoint>), String> {
    let qs = distinct_points(rng, center.n(), 4, &[])?;
    let imgs: Vec<_> = qs.iter().map(|q| center.project_point(q)).collect();
    Ok((combination(rng, &imgs), combination(rng, &imgs), qs))
}

pub fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let sample_size = cfg.sample_or(200);
    let per = cfg.trials_or(10);
    let mut out = Vec::new();
    for n in [4usize, 5] {
        for i in 0..per {
            out.push(Case::new(format!("single/n{n}/{i:02}"), move |rng| {
                let center = smooth_center(rng, n + 1)?;
                let (a, b, forced) = single_line(rng, &center, i % 2 == 1)?;
                let mut run = run_line(rng, &center, &a, &b, &forced, sample_size)?;
                let one = run.analysis.reduced_points == 1;
                run.rec.input("kind", if i % 2 == 1 { "tangent" } else { "through one point" });
                run.rec.check("line meets the curve in one point", one);
                Ok(run.rec)
            }));
        }
        for i in 0..per.div_ceil(3) {
            out.push(Case::new(format!("secant/n{n}/{i:02}"), move |rng| {
                let center = smooth_center(rng, n + 1)?;
                let (a, b, forced) = secant_line(rng, &center)?;
                let mut run = run_line(rng, &center, &a, &b, &forced, sample_size)?;
                let exact_two = run.analysis.conclusion.statement == RankStatement::Exact { rank: 2 };
                let oracle = brute_force_subspace_rank(&run.sample, &run.line, 2).map_err(err)?;
                run.rec
                    .check("analysis gives rank 2", exact_two)
                    .bound(BoundRow::new("i1.1", "sample rank", found_or_over(&oracle), Relation::Equal, 2));
                Ok(run.rec)
            }));
            out.push(Case::new(format!("disjoint/n{n}/{i:02}"), move |rng| {
                let center = smooth_center(rng, n + 1)?;
                let (a, b, forced) = spanned_line(rng, &center)?;
                let mut run = run_line(rng, &center, &a, &b, &forced, sample_size)?;
                let upper = subspace_rank_upper(n, 1).map_err(err)?;
                let oracle = brute_force_subspace_rank(&run.sample, &run.line, upper).map_err(err)?;
                let disjoint = run.analysis.reduced_points == 0;
                run.rec
                    .output("oracle", &oracle)
                    .check("line misses the curve", disjoint)
                    .bound(BoundRow::new("i0", "sample rank", found_or_over(&oracle), Relation::AtMost, upper as i64));
                Ok(run.rec)
            }));
        }
    }
    out.push(Case::new("b2/n4", move |rng| {
        let center = cuspidal_center(rng, 5)?;
        let flag = OsculatingFlag::new(&center).map_err(err)?;
        let e2 = flag.stratum(2);
        let mut run = run_line(rng, &center, &e2[0], &e2[1], &[], sample_size + 100)?;
        let an = &run.analysis;
        let exact_five = an.conclusion.statement == RankStatement::Exact { rank: 5 };
        let (b_l, rn, source) = (an.b_l, an.c_l_rational_normal, an.conclusion.source.clone());
        let oracle = brute_force_subspace_rank(&run.sample, &run.line, 5).map_err(err)?;
        run.rec
            .output("oracle", &oracle)
            .output("sample_size", run.sample.len())
            .check("b_L = 1", b_l == 1)
            .check("C_L is a rational normal curve", rn)
            .check("analysis applies the tangent-cone case", source == "i1.b2")
            .check("analysis gives rank n + 1", exact_five)
            .bound(BoundRow::new("i1.b2", "sample rank", found_or_over(&oracle), Relation::Equal, 5));
        Ok(run.rec)
    }));
    for i in 0..cfg.trials_or(30) {
        out.push(Case::new(format!("bound/{i:02}"), move |rng| {
            let n = 4 + i % 2;
            let center = smooth_center(rng, n + 1)?;
            let (a, b, forced) = match i % 3 {
                0 => spanned_line(rng, &center)?,
                1 => single_line(rng, &center, false)?,
                _ => secant_line(rng, &center)?,
            };
            let mut run = run_line(rng, &center, &a, &b, &forced, sample_size)?;
            let e = run.analysis.reduced_points.min(2) as i64 - 1;
            let bound = subspace_rank_bound_i3(n, 1, e).map_err(err)?;
            let oracle = brute_force_subspace_rank(&run.sample, &run.line, bound.bound.min(MAX_CAP)).map_err(err)?;
            run.rec
                .output("bound", &bound)
                .output("oracle", &oracle)
                .bound(BoundRow::new("i3", "sample rank", found_or_over(&oracle), Relation::AtMost, bound.bound as i64));
            Ok(run.rec)
        }));
    }
    out
}
