use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::limits::DEFAULT_MINOR_CAP;

/// Determinant of a square matrix given as rows, by fraction-free Bareiss elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m = rows.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Indices of a maximal set of linearly independent rows, chosen greedily top to bottom.
pub(crate) fn independent_rows(a: &IntMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..a.rows() {
        let mut trial: Vec<Vec<BigInt>> = chosen.iter().map(|&k| a.row(k).to_vec()).collect();
        trial.push(a.row(i).to_vec());
        let sub = IntMatrix::from_rows(&trial).expect("nonempty rows");
        if sub.rank() == trial.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Whether all nonzero maximal minors of `A` share one absolute value.
pub fn is_unimodular(a: &IntMatrix) -> Result<bool> {
    is_unimodular_with_cap(a, DEFAULT_MINOR_CAP)
}

/// Absolute values of the nonzero maximal minors, taken over a fixed basis of the row space.
pub fn maximal_minor_values(a: &IntMatrix, cap: u128) -> Result<BTreeSet<BigInt>> {
    let rows = independent_rows(a);
    let r = rows.len();
    let n = a.cols();
    let count = binomial(n, r);
    if count > cap {
        return Err(Error::TooManyMinors { minors: count, cap });
    }
    let mut values = BTreeSet::new();
    if r == 0 {
        return Ok(values);
    }
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let square: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&i| subset.iter().map(|&j| a.get(i, j).clone()).collect())
            .collect();
        let d = determinant(&square);
        if !d.is_zero() {
            values.insert(d.abs());
        }
        if !next_subset(&mut subset, n) {
            break;
        }
    }
    Ok(values)
}

/// Unimodularity with an explicit cap on the number of minors; a rank-zero matrix is unimodular.
pub fn is_unimodular_with_cap(a: &IntMatrix, cap: u128) -> Result<bool> {
    Ok(maximal_minor_values(a, cap)?.len() <= 1)
}

/// Advances a sorted `k`-subset of `0..n` to its lexicographic successor.
pub(crate) fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
