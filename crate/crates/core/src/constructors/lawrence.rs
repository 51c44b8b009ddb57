//! Generalized Lawrence matrices and the second Lawrence lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bouquets::{subbouquet_decomposition, BouquetDecomposition, BouquetKind};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, SignedVector};

/// Prescribed subbouquet data `(a_i, c_i)` plus Bézout coefficients `λ_i` with `⟨λ_i, c_i⟩ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawrenceSpec {
    pub a_list: Vec<SignedVector>,
    pub c_list: Vec<SignedVector>,
    pub lambda_list: Vec<SignedVector>,
}

/// `(g, x, y)` with `g = gcd(a, b) ≥ 0` and `a x + b y = g`; `(|a|, sign a, 0)` when `a | b`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if !a.is_zero() && b.is_multiple_of(a) {
        return (a.abs(), a.signum(), BigInt::zero());
    }
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coefficients `λ` with `Σ λ_k c_k = gcd(c)`, folded left to right by the extended Euclidean
/// algorithm. `None` when `c` is zero.
pub fn bezout_coefficients(c: &[BigInt]) -> Option<Vec<BigInt>> {
    let (first, rest) = c.split_first()?;
    let mut g = first.abs();
    let mut lambda = vec![first.signum()];
    for ck in rest {
        let (g2, x, y) = ext_gcd(&g, ck);
        for l in &mut lambda {
            *l *= &x;
        }
        lambda.push(y);
        g = g2;
    }
    (!g.is_zero()).then_some(lambda)
}

fn check_c(k: usize, c: &SignedVector) -> Result<()> {
    let label = || format!("c_{} = {c}", k + 1);
    if c.is_empty() || c.coords().iter().any(Zero::is_zero) {
        return Err(Error::NotFullSupport(label()));
    }
    if !c.content().is_one() {
        return Err(Error::NotPrimitive(label()));
    }
    if !c.coords()[0].is_positive() {
        return Err(Error::LeadingNotPositive(label()));
    }
    Ok(())
}

impl LawrenceSpec {
    /// Validates `(a_i, c_i)` and fixes `λ_i` by [`bezout_coefficients`].
    pub fn new(a_list: Vec<SignedVector>, c_list: Vec<SignedVector>) -> Result<Self> {
        for (k, c) in c_list.iter().enumerate() {
            check_c(k, c)?;
        }
        let lambda_list = c_list
            .iter()
            .map(|c| SignedVector::new(bezout_coefficients(c.coords()).expect("c is nonzero")))
            .collect();
        Self::with_lambdas(a_list, c_list, lambda_list)
    }

    /// Validates a fully specified instance, including the Bézout identities.
    pub fn with_lambdas(
        a_list: Vec<SignedVector>,
        c_list: Vec<SignedVector>,
        lambda_list: Vec<SignedVector>,
    ) -> Result<Self> {
        if a_list.is_empty() {
            return Err(Error::InvalidDimensions(
                "at least one pair (a, c) is required".into(),
            ));
        }
        if c_list.len() != a_list.len() {
            return Err(Error::DimensionMismatch {
                expected: a_list.len(),
                found: c_list.len(),
            });
        }
        if lambda_list.len() != a_list.len() {
            return Err(Error::DimensionMismatch {
                expected: a_list.len(),
                found: lambda_list.len(),
            });
        }
        let m = a_list[0].len();
        if m == 0 {
            return Err(Error::InvalidDimensions(
                "vectors a_i must have at least one coordinate".into(),
            ));
        }
        if let Some(a) = a_list.iter().find(|a| a.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: a.len(),
            });
        }
        for (k, (c, l)) in c_list.iter().zip(&lambda_list).enumerate() {
            check_c(k, c)?;
            if l.len() != c.len() {
                return Err(Error::DimensionMismatch {
                    expected: c.len(),
                    found: l.len(),
                });
            }
            let dot: BigInt = c.coords().iter().zip(l.coords()).map(|(x, y)| x * y).sum();
            if !dot.is_one() {
                return Err(Error::InvalidInput(format!(
                    "λ_{} = {l} gives ⟨λ, c⟩ = {dot}, not 1",
                    k + 1
                )));
            }
        }
        Ok(LawrenceSpec {
            a_list,
            c_list,
            lambda_list,
        })
    }

    /// Read off a decomposition: `a_i = a_{B_i}` and `c_i` the restriction of `c_{B_i}` to its columns.
    ///
    /// The second component lists the source columns in block order, so that column `t` of the
    /// generalized Lawrence matrix corresponds to source column `order[t]`.
    pub fn from_decomposition(dec: &BouquetDecomposition) -> Result<(Self, Vec<usize>)> {
        let mut a_list = Vec::new();
        let mut c_list = Vec::new();
        let mut order = Vec::new();
        for b in &dec.bouquets {
            a_list.push(SignedVector::new(b.a.clone()));
            c_list.push(SignedVector::new(
                b.column_indices
                    .iter()
                    .map(|&i| b.c.coords()[i].clone())
                    .collect(),
            ));
            order.extend(&b.column_indices);
        }
        Ok((Self::new(a_list, c_list)?, order))
    }

    /// Number of rows `m` of the vectors `a_i`.
    pub fn ambient_rows(&self) -> usize {
        self.a_list[0].len()
    }

    /// Column blocks of the output, one per pair `(a_i, c_i)`.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut start = 0;
        self.c_list
            .iter()
            .map(|c| {
                let part = (start..start + c.len()).collect();
                start += c.len();
                part
            })
            .collect()
    }
}

/// The block matrix `[[A_1 … A_s], diag(C_1, …, C_s)]` realizing the pairs `(a_i, c_i)` as subbouquets.
pub fn generalized_lawrence(spec: &LawrenceSpec) -> Result<IntMatrix> {
    let m = spec.ambient_rows();
    let q: usize = spec.c_list.iter().map(SignedVector::len).sum();
    let p = m + spec.c_list.iter().map(|c| c.len() - 1).sum::<usize>();
    let mut out = IntMatrix::zeros(p, q)?;
    let (mut col, mut row) = (0, m);
    for ((a, c), l) in spec.a_list.iter().zip(&spec.c_list).zip(&spec.lambda_list) {
        for (k, lk) in l.coords().iter().enumerate() {
            for (r, ar) in a.coords().iter().enumerate() {
                out.set(r, col + k, lk * ar);
            }
        }
        let c = c.coords();
        for k in 1..c.len() {
            out.set(row, col, -&c[k]);
            out.set(row, col + k, c[0].clone());
            row += 1;
        }
        col += c.len();
    }
    Ok(out)
}

/// The subbouquet decomposition of `generalized_lawrence(spec)` along its column blocks.
///
/// Free blocks carry their `c_i` as encoding vector.
pub fn lawrence_decomposition(
    spec: &LawrenceSpec,
    matrix: &IntMatrix,
) -> Result<BouquetDecomposition> {
    let parts = spec.parts();
    let mut dec = subbouquet_decomposition(matrix, &parts)?;
    for k in 0..dec.bouquets.len() {
        if dec.bouquets[k].kind == BouquetKind::Free {
            let block = parts
                .iter()
                .position(|p| p[0] == dec.bouquets[k].column_indices[0])
                .expect("parts are the decomposition's blocks");
            dec.set_free_encoding(k, spec.c_list[block].coords())?;
        }
    }
    Ok(dec)
}

/// `Λ(D) = [[D, 0], [I, I]]`.
pub fn second_lawrence(d: &IntMatrix) -> IntMatrix {
    let n = d.cols();
    let zero = IntMatrix::zeros(d.rows(), n).expect("D is nonempty");
    let id = IntMatrix::identity(n).expect("D is nonempty");
    let top = d.hstack(&zero).expect("same row count");
    let bottom = id.hstack(&id).expect("same row count");
    top.vstack(&bottom).expect("same column count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bouquets::compute_bouquets;

    fn v(x: &[i64]) -> SignedVector {
        SignedVector::from_i64s(x)
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn bezout_folds_left_to_right() {
        let l = bezout_coefficients(&[1.into(), (-1).into()]).unwrap();
        assert_eq!(l, vec![BigInt::one(), BigInt::zero()]);
        let c: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let l = bezout_coefficients(&c).unwrap();
        let dot: BigInt = c.iter().zip(&l).map(|(x, y)| x * y).sum();
        assert!(dot.is_one());
        assert!(bezout_coefficients(&[BigInt::zero()]).is_none());
    }

    #[test]
    fn invalid_encodings_are_rejected() {
        let a = vec![v(&[1])];
        assert!(matches!(
            LawrenceSpec::new(a.clone(), vec![v(&[2, 4])]),
            Err(Error::NotPrimitive(_))
        ));
        assert!(matches!(
            LawrenceSpec::new(a.clone(), vec![v(&[1, 0])]),
            Err(Error::NotFullSupport(_))
        ));
        assert!(matches!(
            LawrenceSpec::new(a.clone(), vec![v(&[-1, 2])]),
            Err(Error::LeadingNotPositive(_))
        ));
        assert!(LawrenceSpec::with_lambdas(a, vec![v(&[2, 3])], vec![v(&[1, 1])]).is_err());
    }

    #[test]
    fn single_column() {
        let spec = LawrenceSpec::new(vec![v(&[1])], vec![v(&[1])]).unwrap();
        assert_eq!(generalized_lawrence(&spec).unwrap(), m(&[vec![1]]));
    }

    #[test]
    fn recovers_second_lawrence_up_to_permutation() {
        let d = m(&[vec![1, 2]]);
        assert_eq!(
            second_lawrence(&d),
            m(&[vec![1, 2, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 0, 1]])
        );
        let spec =
            LawrenceSpec::new(vec![v(&[1]), v(&[2])], vec![v(&[1, -1]), v(&[1, -1])]).unwrap();
        let g = generalized_lawrence(&spec).unwrap();
        assert_eq!(
            g,
            m(&[vec![1, 0, 2, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 1]])
        );
        let lam = second_lawrence(&d);
        let permuted = lam.select_columns(&[0, 2, 1, 3]).unwrap();
        assert_eq!(permuted.rank(), g.rank());
        for j in 0..4 {
            assert_eq!(permuted.column(j), g.column(j));
        }
    }

    #[test]
    fn decomposition_reproduces_the_spec() {
        let spec = LawrenceSpec::new(
            vec![v(&[2, -1]), v(&[1, 3]), v(&[0, 1])],
            vec![v(&[2, -3]), v(&[1]), v(&[1, 1, -2])],
        )
        .unwrap();
        let a = generalized_lawrence(&spec).unwrap();
        assert_eq!((a.rows(), a.cols()), (5, 6));
        let dec = lawrence_decomposition(&spec, &a).unwrap();
        for (b, (ai, part)) in dec
            .bouquets
            .iter()
            .zip(spec.a_list.iter().zip(spec.parts()))
        {
            assert_eq!(b.column_indices, part);
            assert_eq!(&b.a[..2], ai.coords());
            assert!(b.a[2..].iter().all(Zero::is_zero));
        }
        assert_eq!(dec.bouquets[0].c, v(&[2, -3, 0, 0, 0, 0]));
        assert_eq!(dec.bouquets[2].c, v(&[0, 0, 0, 1, 1, -2]));
    }

    #[test]
    fn round_trip_from_bouquets() {
        let a = m(&[vec![1, 2, 1, 1], vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
        let dec = compute_bouquets(&a);
        let (spec, order) = LawrenceSpec::from_decomposition(&dec).unwrap();
        let g = generalized_lawrence(&spec).unwrap();
        let permuted = a.select_columns(&order).unwrap();
        assert_eq!(
            crate::exact::enumerate_bounded_kernel(&permuted, 3).unwrap(),
            crate::exact::enumerate_bounded_kernel(&g, 3).unwrap()
        );
    }
}
