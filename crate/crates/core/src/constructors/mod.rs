//! Matrices and hypergraphs with prescribed bouquet structure.

mod encode01;
mod hypergraph;
mod lawrence;

pub use encode01::{encode01_stable, Encoding01Spec};
pub use hypergraph::{
    build_complete_uniform_witness, build_sunflower_family, hypergraph_encoding,
    hypergraph_from_matrix, HypergraphEncoding, Matching, UniformWitness,
};
pub use lawrence::{
    bezout_coefficients, generalized_lawrence, lawrence_decomposition, second_lawrence,
    LawrenceSpec,
};
