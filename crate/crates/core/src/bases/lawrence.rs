//! Semiconformal decompositions, S-Lawrence ideals and the three-way Lawrence classification.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::toric::{Semiconformal, Toric};
use super::Verdict;
use crate::bouquets::{compute_bouquets, BouquetDecomposition};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, SignedVector};
use crate::limits::Limits;

/// A proper semiconformal decomposition `u = v +_sc w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: SignedVector,
    pub v: SignedVector,
    pub w: SignedVector,
}

/// `u = v +_sc w` with `v, w` nonzero, and `v_i, w_i` of equal sign for `i ∈ s`.
pub fn is_semiconformal_decomposition(
    u: &SignedVector,
    v: &SignedVector,
    w: &SignedVector,
    s: &[usize],
) -> bool {
    if v.is_zero() || w.is_zero() || v.len() != u.len() || w.len() != u.len() || &(v + w) != u {
        return false;
    }
    let semi = v.coords().iter().zip(w.coords()).all(|(vi, wi)| {
        (!vi.is_positive() || !wi.is_negative()) && (!wi.is_negative() || !vi.is_positive())
    });
    let conformal = s.iter().all(|&i| {
        let (vi, wi) = (&v.coords()[i], &w.coords()[i]);
        vi.is_zero() || wi.is_zero() || vi.signum() == wi.signum()
    });
    semi && conformal
}

/// A proper semiconformal decomposition of `u ∈ Ker_Z(A)` that is conformal on `s` (zero-based).
///
/// Returns `Err(Inconclusive)` when the residual fiber is infinite and the default caps found nothing.
pub fn find_semiconformal_decomposition(
    a: &IntMatrix,
    u: &SignedVector,
    s: &[usize],
) -> Result<Option<(SignedVector, SignedVector)>> {
    match Toric::new(a).semiconformal(u, s)? {
        Semiconformal::Found { v, w } => Ok(Some((v, w))),
        Semiconformal::NoneExists => Ok(None),
        Semiconformal::Inconclusive => Err(Error::Inconclusive(format!(
            "fiber of the positive part of {u} is infinite and the capped search found no decomposition"
        ))),
    }
}

/// Whether `I_A` is S-Lawrence for the zero-based index set `s`.
pub fn is_s_lawrence(a: &IntMatrix, s: &[usize]) -> Result<Verdict> {
    Toric::new(a).s_lawrence(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawrenceReport {
    /// No Graver element of `A_B` has a proper semiconformal decomposition conformal on `S`.
    pub cond_a: Verdict,
    /// `A` is positively graded and `Gr(A) = S(A)`.
    pub cond_b: Verdict,
    /// `A_B` is S-Lawrence.
    pub cond_c: Verdict,
    /// Zero-based positions of the mixed bouquets.
    pub s: Vec<usize>,
    pub conclusive: bool,
    pub consistent: bool,
    pub witnesses: Vec<Witness>,
    pub graver_ab_size: usize,
    pub graver_a_size: usize,
    pub indispensable_a_size: usize,
    pub positively_graded: bool,
    pub decomposition: BouquetDecomposition,
}

impl Serialize for LawrenceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LawrenceReport", 11)?;
        st.serialize_field("cond_a", &self.cond_a)?;
        st.serialize_field("cond_b", &self.cond_b)?;
        st.serialize_field("cond_c", &self.cond_c)?;
        st.serialize_field("S", &self.s.iter().map(|i| i + 1).collect::<Vec<_>>())?;
        st.serialize_field("conclusive", &self.conclusive)?;
        st.serialize_field("consistent", &self.consistent)?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("graver_ab_size", &self.graver_ab_size)?;
        st.serialize_field("graver_a_size", &self.graver_a_size)?;
        st.serialize_field("indispensable_a_size", &self.indispensable_a_size)?;
        st.serialize_field("positively_graded", &self.positively_graded)?;
        st.end()
    }
}

pub fn classify_lawrence(a: &IntMatrix) -> Result<LawrenceReport> {
    classify_lawrence_with(a, &Limits::default())
}

/// Evaluates the three equivalent Lawrence conditions independently and reports them side by side.
pub fn classify_lawrence_with(a: &IntMatrix, limits: &Limits) -> Result<LawrenceReport> {
    let dec = compute_bouquets(a);
    let s = dec.mixed_indices();
    let ab = Toric::with_limits(&dec.bouquet_matrix, limits.clone());
    let full = Toric::with_limits(a, limits.clone());

    let graver_ab = ab.graver()?;
    let searches: Vec<Semiconformal> = graver_ab
        .par_iter()
        .map(|u| ab.semiconformal(u, &s))
        .collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    let mut truncated = false;
    for (u, outcome) in graver_ab.iter().zip(searches) {
        match outcome {
            Semiconformal::Found { v, w } => {
                debug_assert!(
                    dec.bouquet_matrix.annihilates(v.coords())
                        && dec.bouquet_matrix.annihilates(w.coords())
                );
                if !is_semiconformal_decomposition(u, &v, &w, &s) {
                    return Err(Error::InvalidInput(format!(
                        "search produced an invalid decomposition of {u}"
                    )));
                }
                witnesses.push(Witness { u: u.clone(), v, w });
            }
            Semiconformal::Inconclusive => truncated = true,
            Semiconformal::NoneExists => {}
        }
    }
    let cond_a = if !witnesses.is_empty() {
        Verdict::False
    } else if truncated {
        Verdict::Inconclusive
    } else {
        Verdict::True
    };

    let positively_graded = full.is_positively_graded();
    let graver_a = full.graver()?;
    let indispensable = full.indispensables()?;
    let cond_b = Verdict::from_bool(positively_graded && graver_a == indispensable);

    let cond_c = ab.s_lawrence(&s)?;

    let conclusive = cond_a.is_conclusive() && cond_b.is_conclusive() && cond_c.is_conclusive();
    let consistent = !conclusive || (cond_a == cond_b && cond_b == cond_c);
    Ok(LawrenceReport {
        cond_a,
        cond_b,
        cond_c,
        s,
        conclusive,
        consistent,
        witnesses,
        graver_ab_size: graver_ab.len(),
        graver_a_size: graver_a.len(),
        indispensable_a_size: indispensable.len(),
        positively_graded,
        decomposition: dec,
    })
}
