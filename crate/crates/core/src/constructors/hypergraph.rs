//! Hypergraphs built from sunflowers: the almost 3-uniform encoder of an integer matrix,
//! matched-petal sunflower families and the complete-uniform witness family `H_{d+1}`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bouquets::{subbouquet_decomposition, BouquetDecomposition, BouquetKind};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, SignedVector};
use crate::hypergraphs::{check_bouquet_with_basis, Hypergraph};

/// The hypergraph realizing `A` together with the edge blocks and bases of its bouquets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypergraphEncoding {
    pub hypergraph: Hypergraph,
    /// Zero-based edge indices of the bouquet with basis built for each column of `A`.
    pub parts: Vec<Vec<usize>>,
    /// Zero-based basis vertices `U_j` of each such bouquet.
    pub bases: Vec<Vec<usize>>,
}

impl HypergraphEncoding {
    /// Subbouquet decomposition along `parts`; free parts take the encoding vector of their basis,
    /// so every `a_B` is the matching column of `A` padded with zeros.
    pub fn decomposition(&self) -> Result<BouquetDecomposition> {
        let mut dec = subbouquet_decomposition(&self.hypergraph.incidence_matrix(), &self.parts)?;
        for (k, basis) in self.bases.iter().enumerate() {
            if dec.bouquets[k].kind != BouquetKind::Free {
                continue;
            }
            let b = check_bouquet_with_basis(&self.hypergraph, basis)
                .ok_or_else(|| Error::NotSubbouquet(format!("block {} has no basis", k + 1)))?;
            if b.edges != self.parts[k] {
                return Err(Error::NotSubbouquet(format!(
                    "basis of block {} meets other edges",
                    k + 1
                )));
            }
            dec.set_free_encoding(k, b.c.coords())?;
        }
        Ok(dec)
    }
}

/// Pairs `(L_2, L_3), (L_4, L_5), …, (L_N, L_1)` of a ring of even length.
fn cyclic_matching(ring: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1..ring.len())
        .step_by(2)
        .map(move |t| vec![ring[t], ring[(t + 1) % ring.len()]])
}

fn entry_size(a: &BigInt) -> Result<usize> {
    a.abs()
        .to_usize()
        .filter(|&k| k <= 1 << 20)
        .ok_or_else(|| Error::InvalidInput(format!("entry {a} is too large to encode")))
}

/// Sunflower encoding of `A`: base vertices `v_1..v_m`, then per column and per nonzero entry
/// the petal vertices (preceded by the core `u(ij)` for negative entries).
///
/// Edges per column: for each row, the petals then `{v_i, u(ij)}` when `a_ij < 0`; then the cyclic
/// perfect matching on the column's non-core vertices.
pub fn hypergraph_encoding(a: &IntMatrix) -> Result<HypergraphEncoding> {
    if let Some(i) = a.zero_rows().first() {
        return Err(Error::ZeroRowOrColumn(format!("row {} is zero", i + 1)));
    }
    if let Some(j) = a.zero_columns().first() {
        return Err(Error::ZeroRowOrColumn(format!("column {} is zero", j + 1)));
    }
    let mut next = a.rows();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut parts = Vec::with_capacity(a.cols());
    let mut bases = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let first_edge = edges.len();
        let mut basis = Vec::new();
        let mut ring = Vec::new();
        for i in 0..a.rows() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let k = entry_size(x)?;
            let core = if x.is_positive() {
                i
            } else {
                next += 1;
                basis.push(next - 1);
                next - 1
            };
            let petals = next;
            next += 2 * k;
            basis.extend(petals..next);
            ring.extend(petals..next);
            edges.extend((0..k).map(|s| vec![core, petals + 2 * s, petals + 2 * s + 1]));
            if x.is_negative() {
                edges.push(vec![i, core]);
            }
        }
        edges.extend(cyclic_matching(&ring));
        parts.push((first_edge..edges.len()).collect());
        bases.push(basis);
    }
    let hypergraph = Hypergraph::new(next, edges)?;
    Ok(HypergraphEncoding {
        hypergraph,
        parts,
        bases,
    })
}

/// The almost 3-uniform hypergraph whose bouquets with basis realize the columns of `A`.
pub fn hypergraph_from_matrix(a: &IntMatrix) -> Result<Hypergraph> {
    Ok(hypergraph_encoding(a)?.hypergraph)
}

/// How the non-core vertices of a sunflower family are matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matching {
    /// One cyclic matching per sunflower, closing its petals into a ring.
    CyclicPerSunflower,
    /// A single cyclic matching through the petals of all sunflowers in order.
    CyclicAcross,
    /// Each petal's two fresh vertices matched to each other.
    Pairs,
    /// Explicit zero-based vertex pairs over the non-core vertices.
    Explicit(Vec<(usize, usize)>),
}

/// A family of sunflowers whose cores are drawn from a shared pool, plus a perfect matching.
///
/// Core vertices are numbered `0..=max(cores)`; each petal adds two fresh vertices after them.
/// Petal edges come first, in sunflower order, then the matching edges.
pub fn build_sunflower_family(
    cores: &[Vec<usize>],
    petal_counts: &[usize],
    matching: &Matching,
) -> Result<Hypergraph> {
    if cores.len() != petal_counts.len() {
        return Err(Error::DimensionMismatch {
            expected: cores.len(),
            found: petal_counts.len(),
        });
    }
    if cores.is_empty() {
        return Err(Error::InvalidInput(
            "at least one sunflower is required".into(),
        ));
    }
    if let Some(k) = petal_counts.iter().position(|&p| p == 0) {
        return Err(Error::InvalidInput(format!(
            "sunflower {} has no petals",
            k + 1
        )));
    }
    let core_count = cores.iter().flatten().max().map_or(0, |&c| c + 1);
    let mut next = core_count;
    let mut edges = Vec::new();
    let mut rings: Vec<Vec<usize>> = Vec::new();
    for (core, &petals) in cores.iter().zip(petal_counts) {
        let mut core = core.clone();
        core.sort_unstable();
        core.dedup();
        let mut ring = Vec::with_capacity(2 * petals);
        for _ in 0..petals {
            let mut e = core.clone();
            e.extend([next, next + 1]);
            ring.extend([next, next + 1]);
            edges.push(e);
            next += 2;
        }
        rings.push(ring);
    }
    match matching {
        Matching::CyclicPerSunflower => {
            for ring in &rings {
                edges.extend(cyclic_matching(ring));
            }
        }
        Matching::CyclicAcross => {
            let ring: Vec<usize> = rings.concat();
            edges.extend(cyclic_matching(&ring));
        }
        Matching::Pairs => {
            edges.extend(
                rings
                    .iter()
                    .flat_map(|r| r.chunks(2).map(<[usize]>::to_vec)),
            );
        }
        Matching::Explicit(pairs) => {
            let mut covered = vec![0usize; next];
            for &(x, y) in pairs {
                if x == y || x < core_count || y < core_count || x >= next || y >= next {
                    return Err(Error::MatchingNotPerfect(format!(
                        "pair ({}, {}) is not two distinct non-core vertices",
                        x + 1,
                        y + 1
                    )));
                }
                covered[x] += 1;
                covered[y] += 1;
                edges.push(vec![x, y]);
            }
            if let Some(v) = (core_count..next).find(|&v| covered[v] != 1) {
                return Err(Error::MatchingNotPerfect(format!(
                    "vertex {} is covered {} times",
                    v + 1,
                    covered[v]
                )));
            }
        }
    }
    Hypergraph::new(next, edges)
}

/// `H_{d+1}` with its bouquet partition and the witness of the binomial
/// `∏_i ∏_{j≠1} E_ij − ∏_i E_i ∏_i E_i1^{d−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformWitness {
    pub hypergraph: Hypergraph,
    /// Canonical sign: `d − 1` on each `E_i1`, `−1` on each `E_ij` with `j ≠ 1`, `1` on each `E_i`.
    pub witness: SignedVector,
    /// Edge blocks `{E_i1, …, E_i,d+1}` for each `i`, then the singletons `{E_i}`.
    pub parts: Vec<Vec<usize>>,
}

/// The hypergraph on `v_ij` (index `(j−1)(d+1) + i`, one-based) with edges
/// `E_11, …, E_{d+1,d+1}` and then `E_1, …, E_{d+1}`.
pub fn build_complete_uniform_witness(d: usize) -> Result<UniformWitness> {
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "d must be at least 2, got {d}"
        )));
    }
    let n = d + 1;
    let vertex = |i: usize, j: usize| j * n + i;
    let mut edges = Vec::with_capacity(n * (n + 1));
    let mut witness = Vec::with_capacity(n * (n + 1));
    for i in 0..n {
        for j in 0..n {
            edges.push((0..n).filter(|&k| k != j).map(|k| vertex(i, k)).collect());
            witness.push(if j == 0 {
                BigInt::from(d - 1)
            } else {
                BigInt::from(-1)
            });
        }
    }
    for j in 0..n {
        edges.push((0..n).filter(|&k| k != j).map(|k| vertex(k, 0)).collect());
        witness.push(BigInt::from(1));
    }
    let mut parts: Vec<Vec<usize>> = (0..n).map(|i| (i * n..(i + 1) * n).collect()).collect();
    parts.extend((0..n).map(|j| vec![n * n + j]));
    Ok(UniformWitness {
        hypergraph: Hypergraph::new(n * n, edges)?,
        witness: SignedVector::new(witness),
        parts,
    })
}
