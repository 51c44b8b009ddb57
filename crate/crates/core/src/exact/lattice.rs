use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exact::{IntMatrix, SignedVector};

/// A lattice basis of `Ker_Z(A)` together with `rank(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    pub ambient_dim: usize,
    pub basis_vectors: Vec<SignedVector>,
    pub rank_of_a: usize,
}

impl LatticeBasis {
    pub fn dimension(&self) -> usize {
        self.basis_vectors.len()
    }

    /// Row `i` of the basis matrix, i.e. the Gale vector of column `i`.
    pub fn gale_row(&self, i: usize) -> Vec<BigInt> {
        self.basis_vectors
            .iter()
            .map(|g| g.coords()[i].clone())
            .collect()
    }

    /// Coefficients expressing `v` in this basis, or `None` if `v` is outside the lattice.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        // The basis is in row Hermite form, so pivots can be read off left to right.
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis_vectors.len());
        for g in &self.basis_vectors {
            let p = g.coords().iter().position(|x| !x.is_zero())?;
            let (q, r) = rest[p].div_rem(&g.coords()[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(g.coords()) {
                *x -= &q * y;
            }
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }
}

/// Deterministic basis of `Ker_Z(A)`: the row Hermite normal form of the kernel lattice,
/// obtained from a column-style echelon reduction of `A`.
pub fn kernel_lattice_basis(a: &IntMatrix) -> LatticeBasis {
    let echelon = ColumnEchelon::new(a);
    LatticeBasis {
        ambient_dim: a.cols(),
        basis_vectors: echelon
            .kernel_hnf()
            .into_iter()
            .map(SignedVector::new)
            .collect(),
        rank_of_a: echelon.rank(),
    }
}

/// `A U = H` with `U` unimodular and `H` in column echelon form.
#[derive(Clone, Debug)]
pub(crate) struct ColumnEchelon {
    /// Columns of `H`.
    h: Vec<Vec<BigInt>>,
    /// Columns of `U`.
    u: Vec<Vec<BigInt>>,
    /// Pivot row of each of the first `rank` columns of `H`.
    pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub(crate) fn new(a: &IntMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut h = a.columns();
        let mut u: Vec<Vec<BigInt>> = (0..n)
            .map(|j| (0..n).map(|i| BigInt::from(u8::from(i == j))).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut p = 0;
        for i in 0..m {
            if p == n {
                break;
            }
            loop {
                // Smallest nonzero magnitude first, ties to the lowest column.
                let best = (p..n)
                    .filter(|&k| !h[k][i].is_zero())
                    .min_by(|&x, &y| h[x][i].abs().cmp(&h[y][i].abs()).then(x.cmp(&y)));
                let Some(best) = best else { break };
                h.swap(p, best);
                u.swap(p, best);
                let mut done = true;
                for k in p + 1..n {
                    if h[k][i].is_zero() {
                        continue;
                    }
                    let q = h[k][i].div_floor(&h[p][i]);
                    axpy(&mut h, k, p, &q);
                    axpy(&mut u, k, p, &q);
                    if !h[k][i].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !h[p][i].is_zero() {
                if h[p][i].is_negative() {
                    negate(&mut h[p]);
                    negate(&mut u[p]);
                }
                pivots.push(i);
                p += 1;
            }
        }
        ColumnEchelon { h, u, pivots }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Raw kernel columns of `U`.
    pub(crate) fn kernel_columns(&self) -> &[Vec<BigInt>] {
        &self.u[self.rank()..]
    }

    /// Kernel lattice basis in row Hermite normal form.
    pub(crate) fn kernel_hnf(&self) -> Vec<Vec<BigInt>> {
        row_hermite_form(self.kernel_columns().to_vec())
    }

    /// Some integer solution of `A x = b`, or `None` if there is none.
    pub(crate) fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let r = self.rank();
        let n = self.u.len();
        let mut y: Vec<BigInt> = Vec::with_capacity(r);
        for k in 0..r {
            let row = self.pivots[k];
            let mut rhs = b[row].clone();
            for (l, yl) in y.iter().enumerate() {
                rhs -= &self.h[l][row] * yl;
            }
            let (q, rem) = rhs.div_rem(&self.h[k][row]);
            if !rem.is_zero() {
                return None;
            }
            y.push(q);
        }
        for (i, bi) in b.iter().enumerate() {
            let lhs: BigInt = (0..r).map(|k| &self.h[k][i] * &y[k]).sum();
            if &lhs != bi {
                return None;
            }
        }
        let mut x = vec![BigInt::zero(); n];
        for (k, yk) in y.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            for (xi, uik) in x.iter_mut().zip(&self.u[k]) {
                *xi += uik * yk;
            }
        }
        Some(x)
    }
}

/// `cols[target] -= q * cols[source]`.
fn axpy(cols: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = if source < target {
        let (lo, hi) = cols.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v {
        *x = -&*x;
    }
}

/// Row Hermite normal form of the lattice spanned by `rows` (assumed independent):
/// positive pivots, entries above a pivot reduced into `[0, pivot)`.
pub(crate) fn row_hermite_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return rows;
    };
    let d = rows.len();
    let mut p = 0;
    for c in 0..n {
        if p == d {
            break;
        }
        loop {
            let best = (p..d)
                .filter(|&k| !rows[k][c].is_zero())
                .min_by(|&x, &y| rows[x][c].abs().cmp(&rows[y][c].abs()).then(x.cmp(&y)));
            let Some(best) = best else { break };
            rows.swap(p, best);
            let mut done = true;
            for k in p + 1..d {
                if rows[k][c].is_zero() {
                    continue;
                }
                let q = rows[k][c].div_floor(&rows[p][c]);
                axpy(&mut rows, k, p, &q);
                if !rows[k][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[p][c].is_zero() {
            continue;
        }
        if rows[p][c].is_negative() {
            negate(&mut rows[p]);
        }
        for k in 0..p {
            let q = rows[k][c].div_floor(&rows[p][c]);
            axpy(&mut rows, k, p, &q);
        }
        p += 1;
    }
    rows.truncate(p);
    rows
}
