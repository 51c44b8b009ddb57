//! The 0/1 encoder turning a nonnegative matrix `D` into a stable hypergraph incidence matrix
//! whose subbouquet ideal is `I_D`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// Column maxima of `D` and the derived dimensions of its encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Encoding01Spec {
    pub d: IntMatrix,
    /// `δ_i`, the maximum of column `i`.
    pub delta_i: Vec<usize>,
    /// `j_i`, the first (zero-based) row attaining `δ_i`.
    pub j_i: Vec<usize>,
    /// `Σ (δ_i + 1)`, the number of columns of the encoding.
    pub delta: usize,
    /// Rows of `D` holding no column maximum.
    pub l: usize,
}

impl Encoding01Spec {
    pub fn new(d: &IntMatrix) -> Result<Self> {
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if d.get(i, j).is_negative() {
                    return Err(Error::NegativeEntry {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        let mut delta_i = Vec::with_capacity(d.cols());
        let mut j_i = Vec::with_capacity(d.cols());
        for col in 0..d.cols() {
            let column = d.column(col);
            let max = column.iter().max().expect("D has a row");
            if max.is_zero() {
                return Err(Error::ZeroColumn(col + 1));
            }
            let size = max.to_usize().filter(|&x| x <= 1 << 16).ok_or_else(|| {
                Error::InvalidInput(format!("entry {max} is too large to encode"))
            })?;
            delta_i.push(size);
            j_i.push(
                column
                    .iter()
                    .position(|x| x == max)
                    .expect("max is attained"),
            );
        }
        let delta = delta_i.iter().map(|x| x + 1).sum();
        let l = (0..d.rows()).filter(|k| !j_i.contains(k)).count();
        Ok(Encoding01Spec {
            d: d.clone(),
            delta_i,
            j_i,
            delta,
            l,
        })
    }

    /// Column blocks of the encoding, one of size `δ_i + 1` per column of `D`.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut start = 0;
        self.delta_i
            .iter()
            .map(|&w| {
                start += w + 1;
                (start - w - 1..start).collect()
            })
            .collect()
    }

    /// `ε_{d_kl, δ_l+1}` for every column `l`, concatenated.
    fn epsilon_row(&self, k: usize) -> Vec<BigInt> {
        let mut row = Vec::with_capacity(self.delta);
        for (l, &w) in self.delta_i.iter().enumerate() {
            let ones = self
                .d
                .get(k, l)
                .to_usize()
                .expect("entries are bounded by the column maximum");
            row.extend((0..=w).map(|t| {
                if t < ones {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
        }
        row
    }

    /// The `(δ + l) × δ` matrix: a `Σ_{δ_i+1}` block per column maximum, grouped by row of `D`,
    /// then one `ε` row per row of `D` without a column maximum.
    pub fn matrix(&self) -> IntMatrix {
        let parts = self.parts();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(self.delta + self.l);
        for k in 0..self.d.rows() {
            for i in (0..self.delta_i.len()).filter(|&i| self.j_i[i] == k) {
                let base = self.epsilon_row(k);
                for r in 0..=self.delta_i[i] {
                    let mut row = base.clone();
                    for (t, &col) in parts[i].iter().enumerate() {
                        row[col] = if t == r {
                            BigInt::zero()
                        } else {
                            BigInt::one()
                        };
                    }
                    rows.push(row);
                }
            }
        }
        for k in (0..self.d.rows()).filter(|k| !self.j_i.contains(k)) {
            rows.push(self.epsilon_row(k));
        }
        IntMatrix::from_rows(&rows).expect("rows have equal length")
    }
}

/// The stable 0/1 encoding of a nonnegative matrix without zero columns.
pub fn encode01_stable(d: &IntMatrix) -> Result<IntMatrix> {
    Ok(Encoding01Spec::new(d)?.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn single_entry_is_sigma() {
        assert_eq!(
            encode01_stable(&m(&[vec![1]])).unwrap(),
            m(&[vec![0, 1], vec![1, 0]])
        );
        let s3 = encode01_stable(&m(&[vec![2]])).unwrap();
        assert_eq!(s3, m(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]));
        assert_eq!(s3.rank(), 3);
    }

    #[test]
    fn column_maxima_and_dimensions() {
        let d = m(&[
            vec![1, 3, 2, 0, 1],
            vec![3, 2, 1, 3, 2],
            vec![3, 0, 2, 2, 1],
        ]);
        let s = Encoding01Spec::new(&d).unwrap();
        assert_eq!(s.delta_i, vec![3, 3, 2, 3, 2]);
        assert_eq!(s.j_i, vec![1, 0, 0, 1, 1]);
        assert_eq!((s.delta, s.l), (18, 1));
        let a = s.matrix();
        assert_eq!((a.rows(), a.cols()), (19, 18));
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            encode01_stable(&m(&[vec![1, 0]])),
            Err(Error::ZeroColumn(2))
        );
        assert_eq!(
            encode01_stable(&m(&[vec![1, -1]])),
            Err(Error::NegativeEntry { row: 1, col: 2 })
        );
    }
}
