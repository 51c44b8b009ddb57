use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::exact::serialize_bigint_slice;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions(format!(
                "matrix must have at least one row and one column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidDimensions(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a list of rows of anything convertible to `BigInt`.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDimensions(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix::new(m, n, entries)
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let n = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::InvalidDimensions(format!(
                "column of length {} in a matrix with {rows} rows",
                bad.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * n);
        for i in 0..rows {
            for col in columns {
                entries.push(col[i].clone());
            }
        }
        IntMatrix::new(rows, n, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = IntMatrix::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Matrix-vector product `A x`.
    ///
    /// # Panics
    /// Panics if `x.len() != self.cols()`.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, v)| !a.is_zero() && !v.is_zero())
                    .map(|(a, v)| a * v)
                    .sum()
            })
            .collect()
    }

    /// `true` when `A x = 0`.
    pub fn annihilates(&self, x: &[BigInt]) -> bool {
        x.len() == self.cols && self.mul_vec(x).iter().all(Zero::is_zero)
    }

    pub fn select_columns(&self, indices: &[usize]) -> Result<IntMatrix> {
        let cols: Vec<Vec<BigInt>> = indices.iter().map(|&j| self.column(j)).collect();
        IntMatrix::from_columns(self.rows, &cols)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Stacks `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        IntMatrix::from_columns(self.rows, &cols)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        IntMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    pub fn rank(&self) -> usize {
        crate::exact::lattice::ColumnEchelon::new(self).rank()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.row(i).iter().all(Zero::is_zero))
            .collect()
    }

    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| (0..self.rows).all(|i| self.get(i, j).is_zero()))
            .collect()
    }

    /// Parses the "m n" header plus m rows text format.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header \"m n\"".into(),
        })?;
        let dims = parse_tokens(header_line, header, "header")?;
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header: expected 2 entries \"m n\", found {}", dims.len()),
            });
        }
        let to_dim = |v: &BigInt| -> Result<usize> {
            usize::try_from(v)
                .ok()
                .filter(|&d| d > 0)
                .ok_or(Error::Parse {
                    line: header_line,
                    message: format!("header: dimension {v} must be a positive integer"),
                })
        };
        let (m, n) = (to_dim(&dims[0])?, to_dim(&dims[1])?);
        let mut entries = Vec::with_capacity(m * n);
        let mut row = 0;
        for (line, text) in lines {
            row += 1;
            if row > m {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {m} rows, found more"),
                });
            }
            let values = parse_tokens(line, text, &format!("row {row}"))?;
            if values.len() != n {
                return Err(Error::Parse {
                    line,
                    message: format!("row {row}: expected {n} entries, found {}", values.len()),
                });
            }
            entries.extend(values);
        }
        if row < m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {m} rows, found {row}"),
            });
        }
        IntMatrix::new(m, n, entries)
    }

    /// Writes the "m n" header plus rows text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn parse_tokens(line: usize, text: &str, what: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut col = 0;
    for token in text.split_whitespace() {
        let start = text[col..].find(token).map_or(col, |p| p + col);
        col = start + token.len();
        let value = BigInt::from_str(token).map_err(|_| Error::Parse {
            line,
            message: format!("{what}: invalid integer '{token}' at column {}", start + 1),
        })?;
        out.push(value);
    }
    Ok(out)
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntMatrix::parse(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [BigInt]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint_slice(self.0, s)
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&Row(self.row(i)))?;
        }
        seq.end()
    }
}
