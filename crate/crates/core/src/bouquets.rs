//! Bouquet graph, encoding vectors `c_B`, `a_B`, the bouquet matrix and the lifting map.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::minors::{is_unimodular_with_cap, maximal_minor_values};
use crate::exact::{kernel_lattice_basis, IntMatrix, SignedVector};
use crate::limits::DEFAULT_MINOR_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BouquetKind {
    Free,
    Mixed,
    NonMixed,
}

/// One bouquet (or subbouquet): its columns, kind and encoding vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bouquet {
    /// Zero-based column indices, increasing.
    pub column_indices: Vec<usize>,
    pub kind: BouquetKind,
    /// `c_B ∈ Z^n`, supported exactly on `column_indices`.
    pub c: SignedVector,
    /// `a_B = A c_B`.
    pub a: Vec<BigInt>,
}

impl Serialize for Bouquet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Bouquet", 4)?;
        let one_based: Vec<usize> = self.column_indices.iter().map(|i| i + 1).collect();
        st.serialize_field("indices", &one_based)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("a", &SignedVector::new(self.a.clone()))?;
        st.end()
    }
}

/// A partition of the columns of `A` into (sub)bouquets together with the bouquet matrix `A_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouquetDecomposition {
    pub source: IntMatrix,
    pub bouquets: Vec<Bouquet>,
    pub bouquet_matrix: IntMatrix,
}

impl Serialize for BouquetDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BouquetDecomposition", 2)?;
        st.serialize_field("bouquets", &self.bouquets)?;
        st.serialize_field("A_B", &self.bouquet_matrix)?;
        st.end()
    }
}

impl BouquetDecomposition {
    pub fn len(&self) -> usize {
        self.bouquets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bouquets.is_empty()
    }

    /// Zero-based positions of the mixed bouquets (the set `S`).
    pub fn mixed_indices(&self) -> Vec<usize> {
        self.positions(BouquetKind::Mixed)
    }

    pub fn positions(&self, kind: BouquetKind) -> Vec<usize> {
        (0..self.bouquets.len())
            .filter(|&k| self.bouquets[k].kind == kind)
            .collect()
    }

    pub fn has_mixed(&self) -> bool {
        self.bouquets.iter().any(|b| b.kind == BouquetKind::Mixed)
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        self.bouquets
            .iter()
            .map(|b| b.column_indices.clone())
            .collect()
    }

    /// Replaces `c_B` of free bouquet `k` by `c`, given on its columns in increasing order.
    ///
    /// `c` must be primitive, of full support and with positive first coordinate.
    pub fn set_free_encoding(&mut self, k: usize, c: &[BigInt]) -> Result<()> {
        let b = self.bouquets.get_mut(k).ok_or(Error::DimensionMismatch {
            expected: k + 1,
            found: 0,
        })?;
        if b.kind != BouquetKind::Free {
            return Err(Error::InvalidInput(format!(
                "bouquet {} is not free",
                k + 1
            )));
        }
        if c.len() != b.column_indices.len() {
            return Err(Error::DimensionMismatch {
                expected: b.column_indices.len(),
                found: c.len(),
            });
        }
        let label = SignedVector::new(c.to_vec());
        if c.iter().any(Zero::is_zero) {
            return Err(Error::NotFullSupport(label.to_string()));
        }
        if !label.content().is_one() {
            return Err(Error::NotPrimitive(label.to_string()));
        }
        if !c[0].is_positive() {
            return Err(Error::LeadingNotPositive(label.to_string()));
        }
        let mut full = vec![BigInt::zero(); self.source.cols()];
        for (&i, x) in b.column_indices.iter().zip(c) {
            full[i] = x.clone();
        }
        b.a = self.source.mul_vec(&full);
        b.c = SignedVector::new(full);
        for (r, x) in b.a.iter().enumerate() {
            self.bouquet_matrix.set(r, k, x.clone());
        }
        Ok(())
    }

    /// `B(u) = Σ c_{B_k} u_k`.
    pub fn lift(&self, u: &SignedVector) -> Result<SignedVector> {
        if u.len() != self.bouquets.len() {
            return Err(Error::DimensionMismatch {
                expected: self.bouquets.len(),
                found: u.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.source.cols()];
        for (b, uk) in self.bouquets.iter().zip(u.coords()) {
            if uk.is_zero() {
                continue;
            }
            for &i in &b.column_indices {
                out[i] += &b.c.coords()[i] * uk;
            }
        }
        debug_assert!(
            !self.bouquet_matrix.annihilates(u.coords()) || self.source.annihilates(&out),
            "lift of a kernel vector left the kernel"
        );
        Ok(SignedVector::new(out))
    }

    /// The unique `u` with `B(u) = v`.
    pub fn unlift(&self, v: &SignedVector) -> Result<SignedVector> {
        let n = self.source.cols();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let mut u = Vec::with_capacity(self.bouquets.len());
        for b in &self.bouquets {
            let i0 = b.column_indices[0];
            let (q, r) = v.coords()[i0].div_rem(&b.c.coords()[i0]);
            if !r.is_zero() {
                return Err(Error::NotInImage(format!(
                    "coordinate {} is not a multiple of c at that position",
                    i0 + 1
                )));
            }
            u.push(q);
        }
        let u = SignedVector::new(u);
        if self.lift(&u)? != *v {
            return Err(Error::NotInImage(format!(
                "{v} is not constant-ratio on every bouquet"
            )));
        }
        Ok(u)
    }
}

/// Gale rows of `A` from a kernel basis: row `i` is `(g_1[i], …, g_d[i])`.
fn gale_rows(n: usize, basis: &[SignedVector]) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| basis.iter().map(|g| g.coords()[i].clone()).collect())
        .collect()
}

/// Nonzero rows `r`, `s` are proportional.
fn proportional(r: &[BigInt], s: &[BigInt]) -> bool {
    let Some(p) = r.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    !s[p].is_zero() && r.iter().zip(s).all(|(rk, sk)| &s[p] * rk == &r[p] * sk)
}

fn is_zero_row(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

/// Bouquets of `A`, from the deterministic kernel basis.
pub fn compute_bouquets(a: &IntMatrix) -> BouquetDecomposition {
    let basis = kernel_lattice_basis(a);
    compute_bouquets_with_basis(a, &basis.basis_vectors)
}

/// Bouquets of `A` computed from an arbitrary lattice basis of its kernel.
pub fn compute_bouquets_with_basis(a: &IntMatrix, basis: &[SignedVector]) -> BouquetDecomposition {
    let rows = gale_rows(a.cols(), basis);
    let mut free = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if is_zero_row(r) {
            free.push(i);
            continue;
        }
        match classes.iter_mut().find(|c| proportional(&rows[c[0]], r)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    if !free.is_empty() {
        classes.push(free);
    }
    classes.sort_by_key(|c| c[0]);
    assemble(a, &rows, classes)
}

/// Decomposition for a caller-chosen partition whose parts are cliques of proportional Gale rows.
pub fn subbouquet_decomposition(
    a: &IntMatrix,
    parts: &[Vec<usize>],
) -> Result<BouquetDecomposition> {
    let n = a.cols();
    let mut seen = vec![false; n];
    for part in parts {
        if part.is_empty() {
            return Err(Error::NotSubbouquet("empty part".into()));
        }
        for &i in part {
            if i >= n {
                return Err(Error::NotSubbouquet(format!(
                    "column {} out of range",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotSubbouquet(format!(
                    "column {} appears twice",
                    i + 1
                )));
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::NotSubbouquet(format!(
            "column {} is not covered",
            i + 1
        )));
    }
    let basis = kernel_lattice_basis(a);
    let rows = gale_rows(n, &basis.basis_vectors);
    let mut classes: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    for part in &classes {
        let first = &rows[part[0]];
        let ok = if is_zero_row(first) {
            part.iter().all(|&i| is_zero_row(&rows[i]))
        } else {
            part.iter().all(|&i| proportional(first, &rows[i]))
        };
        if !ok {
            let label: Vec<String> = part.iter().map(|i| (i + 1).to_string()).collect();
            return Err(Error::NotSubbouquet(format!(
                "columns {{{}}} do not have proportional Gale vectors",
                label.join(",")
            )));
        }
    }
    classes.sort_by_key(|c| c[0]);
    Ok(assemble(a, &rows, classes))
}

/// Splits every mixed bouquet into its positive and negative halves.
pub fn canonical_stable_decomposition(a: &IntMatrix) -> BouquetDecomposition {
    let dec = compute_bouquets(a);
    if !dec.has_mixed() {
        return dec;
    }
    let mut parts = Vec::new();
    for b in &dec.bouquets {
        if b.kind == BouquetKind::Mixed {
            let (pos, neg): (Vec<usize>, Vec<usize>) = b
                .column_indices
                .iter()
                .partition(|&&i| b.c.coords()[i].is_positive());
            parts.push(pos);
            parts.push(neg);
        } else {
            parts.push(b.column_indices.clone());
        }
    }
    subbouquet_decomposition(a, &parts).expect("halves of a bouquet are subbouquets")
}

fn assemble(a: &IntMatrix, rows: &[Vec<BigInt>], classes: Vec<Vec<usize>>) -> BouquetDecomposition {
    let n = a.cols();
    let bouquets: Vec<Bouquet> = classes
        .into_iter()
        .map(|idx| {
            let mut c = vec![BigInt::zero(); n];
            let first = &rows[idx[0]];
            let kind = match first.iter().position(|x| !x.is_zero()) {
                None => {
                    for &i in &idx {
                        c[i] = BigInt::one();
                    }
                    BouquetKind::Free
                }
                Some(j) => {
                    let g = idx.iter().fold(BigInt::zero(), |g, &i| g.gcd(&rows[i][j]));
                    let flip = first[j].is_negative();
                    for &i in &idx {
                        let v = &rows[i][j] / &g;
                        c[i] = if flip { -v } else { v };
                    }
                    if idx.iter().any(|&i| c[i].is_negative()) {
                        BouquetKind::Mixed
                    } else {
                        BouquetKind::NonMixed
                    }
                }
            };
            let a_b = a.mul_vec(&c);
            Bouquet {
                column_indices: idx,
                kind,
                c: SignedVector::new(c),
                a: a_b,
            }
        })
        .collect();
    let columns: Vec<Vec<BigInt>> = bouquets.iter().map(|b| b.a.clone()).collect();
    let bouquet_matrix = IntMatrix::from_columns(a.rows(), &columns).expect("at least one bouquet");
    BouquetDecomposition {
        source: a.clone(),
        bouquets,
        bouquet_matrix,
    }
}

pub fn lift_vector(dec: &BouquetDecomposition, u: &SignedVector) -> Result<SignedVector> {
    dec.lift(u)
}

pub fn unlift_vector(dec: &BouquetDecomposition, v: &SignedVector) -> Result<SignedVector> {
    dec.unlift(v)
}

/// No bouquet of `A` is mixed.
pub fn is_stable(a: &IntMatrix) -> bool {
    !compute_bouquets(a).has_mixed()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularReport {
    pub uni_a: bool,
    pub uni_ab: bool,
    pub all_c_unit: bool,
    pub equivalence_holds: bool,
}

/// `A` unimodular ⟺ `A_B` unimodular and every `c_B` has unit entries.
pub fn check_unimodular_correspondence(a: &IntMatrix) -> Result<UnimodularReport> {
    check_unimodular_correspondence_with_cap(a, DEFAULT_MINOR_CAP)
}

pub fn check_unimodular_correspondence_with_cap(
    a: &IntMatrix,
    cap: u128,
) -> Result<UnimodularReport> {
    let dec = compute_bouquets(a);
    let uni_a = is_unimodular_with_cap(a, cap)?;
    let uni_ab = is_unimodular_with_cap(&dec.bouquet_matrix, cap)?;
    let all_c_unit = dec
        .bouquets
        .iter()
        .all(|b| b.c.coords().iter().all(|x| x.is_zero() || x.abs().is_one()));
    Ok(UnimodularReport {
        uni_a,
        uni_ab,
        all_c_unit,
        equivalence_holds: uni_a == (uni_ab && all_c_unit),
    })
}

/// Distinct absolute values of the nonzero maximal minors of `A` and of `A_B`.
pub fn minor_spectra(a: &IntMatrix, cap: u128) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let dec = compute_bouquets(a);
    Ok((
        maximal_minor_values(a, cap)?.into_iter().collect(),
        maximal_minor_values(&dec.bouquet_matrix, cap)?
            .into_iter()
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn v(x: &[i64]) -> SignedVector {
        SignedVector::from_i64s(x)
    }

    #[test]
    fn identity_is_one_free_bouquet() {
        let dec = compute_bouquets(&IntMatrix::identity(2).unwrap());
        assert_eq!(dec.len(), 1);
        assert_eq!(dec.bouquets[0].kind, BouquetKind::Free);
        assert_eq!(dec.bouquets[0].c, v(&[1, 1]));
        assert!(is_stable(&IntMatrix::identity(2).unwrap()));
    }

    #[test]
    fn single_row_pair_is_mixed() {
        let dec = compute_bouquets(&m(&[vec![1, 1]]));
        assert_eq!(dec.len(), 1);
        assert_eq!(dec.bouquets[0].kind, BouquetKind::Mixed);
        assert_eq!(dec.bouquets[0].c, v(&[1, -1]));
        assert_eq!(dec.bouquets[0].a, vec![BigInt::zero()]);
        let split = canonical_stable_decomposition(&m(&[vec![1, 1]]));
        assert_eq!(split.parts(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn lift_and_unlift_round_trip() {
        let a = m(&[vec![1, 2]]);
        let dec = compute_bouquets(&a);
        assert_eq!(dec.bouquets[0].c, v(&[2, -1]));
        let lifted = dec.lift(&v(&[3])).unwrap();
        assert_eq!(lifted, v(&[6, -3]));
        assert_eq!(dec.unlift(&lifted).unwrap(), v(&[3]));
        assert!(matches!(dec.unlift(&v(&[1, 0])), Err(Error::NotInImage(_))));
        assert!(matches!(
            dec.lift(&v(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subbouquet_validation() {
        let a = m(&[vec![1, 1, 0], vec![0, 0, 1]]);
        assert!(subbouquet_decomposition(&a, &[vec![0, 1], vec![2]]).is_ok());
        assert!(matches!(
            subbouquet_decomposition(&a, &[vec![0, 2], vec![1]]),
            Err(Error::NotSubbouquet(_))
        ));
        assert!(matches!(
            subbouquet_decomposition(&a, &[vec![0, 1]]),
            Err(Error::NotSubbouquet(_))
        ));
        assert!(matches!(
            subbouquet_decomposition(&a, &[vec![0, 1], vec![1, 2]]),
            Err(Error::NotSubbouquet(_))
        ));
    }

    #[test]
    fn unimodular_correspondence_on_small_cases() {
        let r = check_unimodular_correspondence(&m(&[vec![1, 2]])).unwrap();
        assert!(!r.uni_a && !r.all_c_unit && r.equivalence_holds);
        let r = check_unimodular_correspondence(&IntMatrix::identity(3).unwrap()).unwrap();
        assert!(r.uni_a && r.uni_ab && r.all_c_unit && r.equivalence_holds);
    }
}
