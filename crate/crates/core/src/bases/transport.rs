//! Lifting Graver, circuit, indispensable, Markov and genericity data from `A_B` to `A`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::toric::{connects_fiber, Toric};
use crate::bouquets::{BouquetDecomposition, BouquetKind};
use crate::error::{Error, Result};
use crate::exact::SignedVector;
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum LegStatus {
    Verified,
    Failed(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leg {
    pub name: &'static str,
    /// Sizes (or truth values as 0/1) on the `A` side and the `A_B` side.
    pub size_a: usize,
    pub size_ab: usize,
    pub status: LegStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub stable: bool,
    pub legs: Vec<Leg>,
}

impl TransportReport {
    pub fn ok(&self) -> bool {
        self.legs
            .iter()
            .all(|l| !matches!(l.status, LegStatus::Failed(_)))
    }

    pub fn leg(&self, name: &str) -> Option<&Leg> {
        self.legs.iter().find(|l| l.name == name)
    }
}

pub fn check_stable_transport(dec: &BouquetDecomposition) -> Result<TransportReport> {
    check_stable_transport_with(dec, &Limits::default())
}

fn lifted_set(dec: &BouquetDecomposition, set: &[SignedVector]) -> Result<BTreeSet<SignedVector>> {
    set.iter()
        .map(|u| dec.lift(u).map(|v| v.canonical()))
        .collect()
}

fn compare(
    name: &'static str,
    a: &[SignedVector],
    lifted: BTreeSet<SignedVector>,
    ab_len: usize,
) -> Leg {
    let target: BTreeSet<SignedVector> = a.iter().cloned().collect();
    let status = if target == lifted {
        LegStatus::Verified
    } else {
        let missing = target.difference(&lifted).count();
        let extra = lifted.difference(&target).count();
        LegStatus::Failed(format!(
            "{missing} elements of A not reached, {extra} lifted elements outside"
        ))
    };
    Leg {
        name,
        size_a: a.len(),
        size_ab: ab_len,
        status,
    }
}

/// Checks that lifting maps each set computed for `A_B` onto the corresponding set of `A`.
///
/// Graver and circuit legs always run; the others need every part of `dec` to be non-mixed.
pub fn check_stable_transport_with(
    dec: &BouquetDecomposition,
    limits: &Limits,
) -> Result<TransportReport> {
    let full = Toric::with_limits(&dec.source, limits.clone());
    let ab = Toric::with_limits(&dec.bouquet_matrix, limits.clone());
    let mut legs = Vec::new();

    let gr_ab = ab.graver()?;
    legs.push(compare(
        "graver",
        full.graver()?,
        lifted_set(dec, gr_ab)?,
        gr_ab.len(),
    ));
    let c_ab = ab.circuits()?;
    legs.push(compare(
        "circuits",
        &full.circuits()?,
        lifted_set(dec, &c_ab)?,
        c_ab.len(),
    ));

    let stable = dec.bouquets.iter().all(|b| b.kind != BouquetKind::Mixed);
    let names = ["indispensable", "markov", "generic"];
    if !stable {
        let reason = Error::NotStable.to_string();
        legs.extend(names.map(|name| Leg {
            name,
            size_a: 0,
            size_ab: 0,
            status: LegStatus::Skipped(reason.clone()),
        }));
        return Ok(TransportReport { stable, legs });
    }

    let s_ab = ab.indispensables()?;
    legs.push(compare(
        "indispensable",
        full.indispensables()?,
        lifted_set(dec, s_ab)?,
        s_ab.len(),
    ));

    if !full.is_positively_graded() {
        let reason = Error::NotPositivelyGraded.to_string();
        legs.extend(names[1..].iter().map(|&name| Leg {
            name,
            size_a: 0,
            size_ab: 0,
            status: LegStatus::Skipped(reason.clone()),
        }));
        return Ok(TransportReport { stable, legs });
    }

    let m_a = full.minimal_markov_basis()?.elements;
    let m_ab = ab.minimal_markov_basis()?.elements;
    let lifted: Vec<SignedVector> = lifted_set(dec, &m_ab)?.into_iter().collect();
    let status = if m_a.len() != m_ab.len() {
        LegStatus::Failed(format!(
            "minimal Markov bases have {} and {} elements",
            m_a.len(),
            m_ab.len()
        ))
    } else if let Some(f) = full
        .markov_degrees()?
        .iter()
        .find(|f| !connects_fiber(&f.elements, &lifted))
    {
        LegStatus::Failed(format!(
            "lifted moves do not connect the fiber of degree {}",
            SignedVector::new(f.degree.clone())
        ))
    } else {
        LegStatus::Verified
    };
    legs.push(Leg {
        name: "markov",
        size_a: m_a.len(),
        size_ab: m_ab.len(),
        status,
    });

    let g_a = full.is_generic()?;
    let g_ab = ab.is_generic()?;
    let status = if g_a == g_ab {
        LegStatus::Verified
    } else {
        LegStatus::Failed(format!("A generic: {g_a}, A_B generic: {g_ab}"))
    };
    legs.push(Leg {
        name: "generic",
        size_a: usize::from(g_a),
        size_ab: usize::from(g_ab),
        status,
    });

    Ok(TransportReport { stable, legs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bouquets::{canonical_stable_decomposition, compute_bouquets};
    use crate::exact::IntMatrix;

    #[test]
    fn identity_is_vacuous() {
        let dec = compute_bouquets(&IntMatrix::identity(3).unwrap());
        let r = check_stable_transport(&dec).unwrap();
        assert!(r.ok());
        assert!(r.stable);
        assert_eq!(r.leg("graver").unwrap().size_a, 0);
    }

    #[test]
    fn mixed_bouquets_skip_the_stable_legs() {
        let a = IntMatrix::from_rows(&[vec![1i64, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = check_stable_transport(&compute_bouquets(&a)).unwrap();
        assert!(!r.stable && r.ok());
        assert!(matches!(
            r.leg("markov").unwrap().status,
            LegStatus::Skipped(_)
        ));
        let r = check_stable_transport(&canonical_stable_decomposition(&a)).unwrap();
        assert!(r.stable && r.ok());
    }
}
