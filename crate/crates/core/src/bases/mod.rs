//! Graver bases, circuits, fibers, indispensable binomials, Markov bases and the Lawrence-type
//! classifications built on them.

mod graver;
mod lawrence;
mod toric;
mod transport;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub use graver::{circuits, circuits_with, graver_basis, graver_basis_with};
pub use lawrence::{
    classify_lawrence, classify_lawrence_with, find_semiconformal_decomposition, is_s_lawrence,
    is_semiconformal_decomposition, LawrenceReport, Witness,
};
pub use toric::{connects_fiber, DegreeFiber, Semiconformal, Toric};
pub use transport::{
    check_stable_transport, check_stable_transport_with, Leg, LegStatus, TransportReport,
};

use crate::error::Result;
use crate::exact::{IntMatrix, SignedVector};

/// Nonnegative integer points of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub degree: SignedVector,
    pub elements: Vec<SignedVector>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkovBasis {
    pub elements: Vec<SignedVector>,
    pub minimal: bool,
}

/// A three-valued decision; serializes as a JSON boolean or `"inconclusive"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Inconclusive => None,
        }
    }

    pub fn is_conclusive(self) -> bool {
        self != Verdict::Inconclusive
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_bool() {
            Some(b) => serializer.serialize_bool(b),
            None => serializer.serialize_str("inconclusive"),
        }
    }
}

/// `Ker_Z(A) ∩ N^n = {0}`.
pub fn is_positively_graded(a: &IntMatrix) -> bool {
    Toric::new(a).is_positively_graded()
}

/// The fiber `{t ≥ 0 : A t = A x}`.
pub fn fiber_of(a: &IntMatrix, x: &[BigInt], caps: Option<&[BigInt]>) -> Result<Fiber> {
    Toric::new(a).fiber(x, caps)
}

/// `u ∈ Gr(A)` whose `u⁺`-fiber is exactly `{u⁺, u⁻}`; empty unless `A` is positively graded.
pub fn indispensable_binomials(a: &IntMatrix) -> Result<Vec<SignedVector>> {
    Ok(Toric::new(a).indispensables()?.to_vec())
}

pub fn minimal_markov_basis(a: &IntMatrix) -> Result<MarkovBasis> {
    Toric::new(a).minimal_markov_basis()
}

pub fn is_generic(a: &IntMatrix) -> Result<bool> {
    Toric::new(a).is_generic()
}
