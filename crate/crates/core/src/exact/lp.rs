//! Exact two-phase simplex over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(BigRational),
}

/// `max c·y` subject to `a_i·y ≤ b_i` with `y` free.
pub(crate) fn maximize(a_rows: &[Vec<BigInt>], b: &[BigInt], c: &[BigInt]) -> LpOutcome {
    let d = c.len();
    let k = a_rows.len();
    // Columns: y⁺ (d), y⁻ (d), slacks (k).
    let mut rows = Vec::with_capacity(k);
    let mut rhs = Vec::with_capacity(k);
    for (i, (row, bi)) in a_rows.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<BigInt> = Vec::with_capacity(2 * d + k);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x));
        r.extend((0..k).map(|j| BigInt::from(u8::from(i == j))));
        if flip {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
        rows.push(r);
        rhs.push(if flip { -bi } else { bi.clone() });
    }
    let mut obj: Vec<BigInt> = c.to_vec();
    obj.extend(c.iter().map(|x| -x));
    obj.extend(std::iter::repeat_n(BigInt::zero(), k));
    maximize_standard(&rows, &rhs, &obj)
}

/// `max c·x` subject to `A x = b`, `x ≥ 0`, with `b ≥ 0`.
fn maximize_standard(a: &[Vec<BigInt>], b: &[BigInt], c: &[BigInt]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    if m == 0 {
        return if c.iter().any(Signed::is_positive) {
            LpOutcome::Unbounded
        } else {
            LpOutcome::Optimal(BigRational::zero())
        };
    }
    let width = n + m + 1;
    let mut t = Tableau {
        cells: a
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (row, bi))| {
                let mut r: Vec<BigRational> = row
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                r.extend((0..m).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                r.push(BigRational::from_integer(bi.clone()));
                debug_assert_eq!(r.len(), width);
                r
            })
            .collect(),
        basis: (n..n + m).collect(),
    };

    let phase1: Vec<BigRational> = (0..n + m)
        .map(|j| {
            if j < n {
                BigRational::zero()
            } else {
                -BigRational::one()
            }
        })
        .collect();
    match t.run(&phase1, n + m) {
        Some(v) if v.is_zero() => {}
        _ => return LpOutcome::Infeasible,
    }
    // Drive remaining artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.cells[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }
    let phase2: Vec<BigRational> = c
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .chain(std::iter::repeat_n(BigRational::zero(), m))
        .collect();
    match t.run(&phase2, n) {
        Some(v) => LpOutcome::Optimal(v),
        None => LpOutcome::Unbounded,
    }
}

struct Tableau {
    cells: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &BigRational {
        self.cells[r]
            .last()
            .expect("tableau row has a right-hand side")
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.cells[r][col].clone();
        for x in self.cells[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.cells[r].clone();
        for (i, row) in self.cells.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Bland's rule simplex; only columns `< enter_limit` may enter. `None` means unbounded.
    fn run(&mut self, cost: &[BigRational], enter_limit: usize) -> Option<BigRational> {
        loop {
            let entering = (0..enter_limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (row, &bi) in self.cells.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bi].is_zero() {
                        reduced -= &cost[bi] * &row[j];
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return Some(
                    self.basis
                        .iter()
                        .enumerate()
                        .map(|(r, &bi)| &cost[bi] * self.rhs(r))
                        .sum(),
                );
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for r in 0..self.cells.len() {
                let a = &self.cells[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => {
                        ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let (r, _) = leave?;
            self.pivot(r, col);
        }
    }
}
