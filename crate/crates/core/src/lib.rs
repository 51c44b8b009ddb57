//! Bouquet decompositions of integer matrices and the toric-ideal data they transport.

pub mod bases;
pub mod bouquets;
pub mod constructors;
pub mod error;
pub mod exact;
pub mod hypergraphs;
pub mod limits;

pub use bases::{
    circuits, classify_lawrence, fiber_of, find_semiconformal_decomposition, graver_basis,
    indispensable_binomials, is_generic, is_positively_graded, is_s_lawrence, minimal_markov_basis,
    Fiber, MarkovBasis, Toric, Verdict,
};
pub use bouquets::{
    canonical_stable_decomposition, compute_bouquets, is_stable, subbouquet_decomposition, Bouquet,
    BouquetDecomposition, BouquetKind,
};
pub use constructors::{
    build_complete_uniform_witness, build_sunflower_family, encode01_stable, generalized_lawrence,
    hypergraph_from_matrix, second_lawrence, Encoding01Spec, LawrenceSpec, Matching,
};
pub use error::{Error, Result};
pub use exact::{parse_vectors, vectors_to_text, IntMatrix, LatticeBasis, SignedVector};
pub use hypergraphs::{
    check_bouquet_with_basis, imbalance_vector, incidence_matrix, walk_from_vector, BasisBouquet,
    Hypergraph, MonomialWalk,
};
pub use limits::{CancelToken, FiberCap, Limits};
