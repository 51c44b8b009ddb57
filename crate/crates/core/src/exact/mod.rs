//! Exact integer linear algebra and brute-force enumeration oracles.

pub mod enumerate;
pub mod lattice;
pub(crate) mod lp;
pub mod matrix;
pub mod minors;
pub(crate) mod points;
pub mod vector;
pub mod vector_set;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};

pub use enumerate::{
    enumerate_bounded_kernel, enumerate_bounded_kernel_with, enumerate_nonnegative_solutions,
    enumerate_nonnegative_solutions_with, FiberEngine, SearchOutcome, SolutionSet,
};
pub use lattice::{kernel_lattice_basis, LatticeBasis};
pub use matrix::IntMatrix;
pub use minors::{determinant, is_unimodular, is_unimodular_with_cap};
pub use vector::SignedVector;
pub use vector_set::{parse_vectors, vectors_to_text};

/// Integers serialize as JSON numbers when they fit in `i64`, as decimal strings otherwise.
pub(crate) fn serialize_bigint_slice<S: Serializer>(
    xs: &[BigInt],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[cfg(test)]
pub(crate) fn to_bigints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}
