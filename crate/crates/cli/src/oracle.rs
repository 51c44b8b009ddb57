//! Cross-checks of the exact algorithms against bounded kernel enumeration.

use std::collections::BTreeSet;

use bouquet_core::bases::{check_stable_transport_with, LegStatus};
use bouquet_core::bouquets::check_unimodular_correspondence_with_cap;
use bouquet_core::exact::enumerate_bounded_kernel_with;
use bouquet_core::{compute_bouquets, Error, IntMatrix, SignedVector, Toric};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::{Context, Failure, Report};

enum Outcome {
    Ok(String),
    Failed(String),
    Skipped(String),
}

/// Conformally minimal vectors of a set closed under conformal reduction, in canonical sign.
fn conformal_minima(set: &[SignedVector]) -> BTreeSet<SignedVector> {
    set.iter()
        .filter(|u| {
            !set.iter()
                .any(|v| v != *u && (v.conformal_le(u) || (-v).conformal_le(u)))
        })
        .map(SignedVector::canonical)
        .collect()
}

fn support_minima(set: &BTreeSet<SignedVector>) -> BTreeSet<SignedVector> {
    let supports: Vec<BTreeSet<usize>> = set
        .iter()
        .map(|u| u.support().into_iter().collect())
        .collect();
    set.iter()
        .zip(&supports)
        .filter(|(_, s)| !supports.iter().any(|t| t != *s && t.is_subset(s)))
        .map(|(u, _)| u.clone())
        .collect()
}

fn compare(
    name: &str,
    computed: &BTreeSet<SignedVector>,
    oracle: &BTreeSet<SignedVector>,
) -> Outcome {
    if computed == oracle {
        Outcome::Ok(format!("{} elements", computed.len()))
    } else {
        Outcome::Failed(format!(
            "{name}: {} computed elements missing from the oracle, {} oracle elements not computed",
            computed.difference(oracle).count(),
            oracle.difference(computed).count()
        ))
    }
}

fn skipped_or(e: Error) -> Result<Outcome, Failure> {
    match e {
        Error::SearchSpaceTooLarge { .. }
        | Error::TooManyMinors { .. }
        | Error::GraverCapExceeded(_) => Ok(Outcome::Skipped(e.to_string())),
        e => Err(e.into()),
    }
}

fn graver_legs(ctx: &Context, a: &IntMatrix) -> Result<Vec<(&'static str, Outcome)>, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    let graver = match toric.graver() {
        Ok(g) => g,
        Err(e) => {
            return Ok(vec![
                ("graver", skipped_or(e)?),
                ("circuits", Outcome::Skipped("no Graver basis".into())),
            ])
        }
    };
    let bound = graver
        .iter()
        .map(|u| u.max_norm())
        .max()
        .and_then(|k| k.to_u64())
        .unwrap_or(0)
        + 1;
    let box_set = match enumerate_bounded_kernel_with(a, bound, &ctx.limits) {
        Ok(s) => s,
        Err(e) => {
            return Ok(vec![
                ("graver", skipped_or(e)?),
                ("circuits", Outcome::Skipped("no oracle set".into())),
            ])
        }
    };
    let oracle = conformal_minima(&box_set);
    let computed: BTreeSet<SignedVector> = graver.iter().map(SignedVector::canonical).collect();
    let circuits: BTreeSet<SignedVector> = toric
        .circuits()?
        .iter()
        .map(SignedVector::canonical)
        .collect();
    let mut graver_leg = compare("graver", &computed, &oracle);
    if let Outcome::Ok(msg) = &mut graver_leg {
        msg.push_str(&format!(", kernel box of radius {bound}"));
    }
    Ok(vec![
        ("graver", graver_leg),
        (
            "circuits",
            compare("circuits", &circuits, &support_minima(&oracle)),
        ),
    ])
}

fn bijection_leg(ctx: &Context, a: &IntMatrix, bound: u64) -> Result<Outcome, Failure> {
    let dec = compute_bouquets(a);
    let (ker_ab, ker_a) = match (
        enumerate_bounded_kernel_with(&dec.bouquet_matrix, bound, &ctx.limits),
        enumerate_bounded_kernel_with(a, bound, &ctx.limits),
    ) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return skipped_or(e),
    };
    for u in &ker_ab {
        let v = dec.lift(u)?;
        if !a.annihilates(v.coords()) || &dec.unlift(&v)? != u {
            return Ok(Outcome::Failed(format!(
                "lift of {u} is {v}, which does not return"
            )));
        }
    }
    for v in &ker_a {
        let u = dec.unlift(v)?;
        if !dec.bouquet_matrix.annihilates(u.coords()) || &dec.lift(&u)? != v {
            return Ok(Outcome::Failed(format!("{v} does not factor through A_B")));
        }
    }
    Ok(Outcome::Ok(format!(
        "{} vectors of A_B and {} of A within radius {bound}",
        ker_ab.len(),
        ker_a.len()
    )))
}

pub fn run(ctx: &Context, a: &IntMatrix, bound: u64) -> Result<Report, Failure> {
    let mut legs: Vec<(String, Outcome)> = graver_legs(ctx, a)?
        .into_iter()
        .map(|(n, o)| (n.to_string(), o))
        .collect();
    legs.push(("kernel bijection".into(), bijection_leg(ctx, a, bound)?));
    match check_stable_transport_with(&compute_bouquets(a), &ctx.limits) {
        Ok(t) => {
            for leg in t.legs {
                let outcome = match leg.status {
                    LegStatus::Verified => {
                        Outcome::Ok(format!("{} on A, {} on A_B", leg.size_a, leg.size_ab))
                    }
                    LegStatus::Failed(m) => Outcome::Failed(m),
                    LegStatus::Skipped(m) => Outcome::Skipped(m),
                };
                legs.push((format!("transport {}", leg.name), outcome));
            }
        }
        Err(e) => legs.push(("transport".into(), skipped_or(e)?)),
    }
    let unimodular = match check_unimodular_correspondence_with_cap(a, ctx.limits.minor_cap) {
        Ok(u) if u.equivalence_holds => Outcome::Ok(format!(
            "A {}, A_B {}, unit c_B {}",
            u.uni_a, u.uni_ab, u.all_c_unit
        )),
        Ok(u) => Outcome::Failed(format!(
            "A {} but A_B {} with unit c_B {}",
            u.uni_a, u.uni_ab, u.all_c_unit
        )),
        Err(e) => skipped_or(e)?,
    };
    legs.push(("unimodular".into(), unimodular));

    let mut text = String::new();
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (name, outcome) in &legs {
        let (status, detail) = match outcome {
            Outcome::Ok(d) => ("ok", d),
            Outcome::Failed(d) => {
                failures.push(name.clone());
                ("FAILED", d)
            }
            Outcome::Skipped(d) => ("skipped", d),
        };
        text.push_str(&format!("{name}: {status} ({detail})\n"));
        entries.push(json!({ "check": name, "status": status.to_lowercase(), "detail": detail }));
    }
    let mut report = Report::new(text, json!({ "checks": entries }));
    if !failures.is_empty() {
        report.failed = Some(format!("oracle mismatch in {}", failures.join(", ")));
    }
    Ok(report)
}
