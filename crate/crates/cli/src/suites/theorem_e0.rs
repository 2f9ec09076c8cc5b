use rand::Rng;
use xrank_core::arith::Rational;
use xrank_core::projection::pencil_rank;
use xrank_core::secant::{b_of_y_v, refined_bounds, secant_profile, theorem_e0_bounds, VarietySpec};

use super::{ceil_half, err, rats, Case};
use crate::config::ExperimentConfig;
use crate::generate::smooth_center;
use crate::report::{BoundRow, CaseRecord, Relation};

/// `b(Y, v)` against the sandwich for every admissible `v`.
fn sandwich_case(y: VarietySpec) -> Case {
    Case::new(format!("sandwich/{}", y.to_string().replace(':', "-").replace(',', "-")), move |rng| {
        let seed: u64 = rng.gen();
        let m = y.dim();
        let ambient = y.ambient_dim();
        let profile = secant_profile(&y, ambient + 1, seed, false).map_err(err)?;
        let alpha = profile.generic_rank.ok_or_else(|| format!("{y} never fills its ambient space"))?;
        let mut rec = CaseRecord::new("");
        rec.input("variety", y.to_string())
            .input("seed", seed)
            .output("profile", &profile)
            .claim("generic rank", alpha, "probe");
        // Projections to P^n with n > m, so the image is a proper subvariety.
        for v in 1..ambient.saturating_sub(m) {
            let n = ambient - v;
            let b = b_of_y_v(&y, n, seed).map_err(err)?;
            let bounds = theorem_e0_bounds(m, n, v, alpha).map_err(err)?;
            let q = format!("b at v = {v}");
            let from_profile = profile.rows.iter().find(|r| r.dim > n).map(|r| r.s);
            rec.check(&format!("{q} agrees with the profile"), from_profile == Some(b));
            rec.bound(BoundRow::new("e0b", &q, b as i64, Relation::AtLeast, bounds.lower))
                .bound(BoundRow::new("e0b", &q, b as i64, Relation::AtMost, bounds.upper))
                .bound(BoundRow::new("e0a", &q, b as i64, Relation::AtMost, alpha as i64));
            if let Some(r) = refined_bounds(&profile, n, v, b, alpha) {
                rec.bound(BoundRow::new("e0b", &format!("{q}, refined"), b as i64, Relation::AtMost, r.upper));
                if let Some(s) = r.small_increment_upper {
                    rec.bound(BoundRow::new("e0b", &format!("{q}, small increment"), b as i64, Relation::AtMost, s));
                }
            }
        }
        Ok(rec)
    })
}

pub fn cases(cfg: &ExperimentConfig) -> Vec<Case> {
    let per = cfg.trials_or(20);
    let max_n = cfg.max_degree_or(9).saturating_sub(1);
    let mut out = Vec::new();
    for n in 3..=max_n {
        for i in 0..per {
            out.push(Case::new(format!("points/n{n}/{i:02}"), move |rng| {
                let center = smooth_center(rng, n + 1)?;
                let p: Vec<Rational> = loop {
                    let p: Vec<Rational> =
                        (0..=n).map(|_| Rational::from_integer(rng.gen_range(-5i64..=5).into())).collect();
                    if center.lift(&p).is_ok() && p.iter().any(|x| *x != Rational::from_integer(0.into())) {
                        break p;
                    }
                };
                let cert = pencil_rank(&center, &p).map_err(err)?;
                let mut rec = CaseRecord::new("");
                rec.input("center", center.form())
                    .input("point", rats(&p))
                    .output("certificate", &cert)
                    .claim("rank upper bound", cert.rank, if cert.certified { "pencil" } else { "pencil-upper-bound" })
                    .bound(BoundRow::new("e0b", "pencil rank", cert.rank as i64, Relation::AtMost, ceil_half(n + 2) as i64))
                    .bound(BoundRow::new("e0a", "pencil rank", cert.rank as i64, Relation::AtMost, ceil_half(n + 3) as i64));
                Ok(rec)
            }));
        }
        out.push(Case::new(format!("b/n{n}"), move |rng| {
            let y = VarietySpec::Rnc(n + 1);
            let seed: u64 = rng.gen();
            let b = b_of_y_v(&y, n, seed).map_err(err)?;
            // Independent value: least s whose probed secant dimension reaches n + 1.
            let probed = secant_profile(&y, n + 2, seed, true).map_err(err)?;
            let from_probe = probed.rows.iter().find(|r| r.dim > n).map(|r| r.s);
            let mut rec = CaseRecord::new("");
            rec.input("variety", y.to_string())
                .input("n", n)
                .output("probed_profile", &probed)
                .claim("b", b, "formula")
                .check("probe gives the same b", from_probe == Some(b))
                .bound(BoundRow::new("e0b", "b(Y, 1)", b as i64, Relation::Equal, ceil_half(n + 2) as i64));
            Ok(rec)
        }));
    }
    for r in 2..=10 {
        out.push(sandwich_case(VarietySpec::Rnc(r)));
    }
    for m in 2..=3 {
        for d in 2..=4 {
            out.push(sandwich_case(VarietySpec::Veronese(m, d)));
        }
    }
    out
}
