//! Integer points of a rational polyhedron `{λ : M λ ≤ h}`.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::exact::lp::{maximize, LpOutcome};
use crate::limits::CancelToken;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Region {
    Empty,
    Unbounded,
    /// Integer bounds `lo_j ≤ λ_j ≤ hi_j` implied by the rational relaxation.
    Bounded(Vec<(BigInt, BigInt)>),
}

pub(crate) struct Polyhedron {
    pub(crate) m: Vec<Vec<BigInt>>,
    pub(crate) h: Vec<BigInt>,
    pub(crate) dim: usize,
}

fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

impl Polyhedron {
    pub(crate) fn new(m: Vec<Vec<BigInt>>, h: Vec<BigInt>, dim: usize) -> Self {
        Polyhedron { m, h, dim }
    }

    pub(crate) fn push(&mut self, row: Vec<BigInt>, rhs: BigInt) {
        self.m.push(row);
        self.h.push(rhs);
    }

    /// Exact maximum of `c·λ` over the rational relaxation.
    pub(crate) fn maximize(&self, c: &[BigInt]) -> LpOutcome {
        if self.dim == 0 {
            return if self.h.iter().all(|x| !x.is_negative()) {
                LpOutcome::Optimal(BigRational::zero())
            } else {
                LpOutcome::Infeasible
            };
        }
        maximize(&self.m, &self.h, c)
    }

    pub(crate) fn region(&self) -> Region {
        let mut bounds = Vec::with_capacity(self.dim);
        if self.dim == 0 {
            return match self.maximize(&[]) {
                LpOutcome::Infeasible => Region::Empty,
                _ => Region::Bounded(bounds),
            };
        }
        let mut unbounded = false;
        for j in 0..self.dim {
            let mut e = vec![BigInt::zero(); self.dim];
            e[j] = BigInt::from(1);
            let hi = match self.maximize(&e) {
                LpOutcome::Infeasible => return Region::Empty,
                LpOutcome::Unbounded => {
                    unbounded = true;
                    continue;
                }
                LpOutcome::Optimal(v) => floor(&v),
            };
            e[j] = BigInt::from(-1);
            let lo = match self.maximize(&e) {
                LpOutcome::Infeasible => return Region::Empty,
                LpOutcome::Unbounded => {
                    unbounded = true;
                    continue;
                }
                LpOutcome::Optimal(v) => -floor(&v),
            };
            if lo > hi {
                return Region::Empty;
            }
            bounds.push((lo, hi));
        }
        if unbounded {
            Region::Unbounded
        } else {
            Region::Bounded(bounds)
        }
    }

    /// Visits every integer point inside `bounds` satisfying all constraints, in lexicographic order.
    pub(crate) fn for_each_point(
        &self,
        bounds: &[(BigInt, BigInt)],
        cancel: &CancelToken,
        visit: &mut dyn FnMut(&[BigInt]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let d = self.dim;
        let k = self.m.len();
        // suffix[i][j] = Σ_{l ≥ j} min over the box of M_il λ_l.
        let mut suffix = vec![vec![BigInt::zero(); d + 1]; k];
        for (row, sums) in self.m.iter().zip(suffix.iter_mut()) {
            for j in (0..d).rev() {
                let a = &row[j];
                let lo = a * &bounds[j].0;
                let hi = a * &bounds[j].1;
                sums[j] = &sums[j + 1] + lo.min(hi);
            }
        }
        let mut walker = Walker {
            poly: self,
            bounds,
            suffix,
            partial: vec![BigInt::zero(); k],
            point: Vec::with_capacity(d),
            cancel,
        };
        walker.descend(visit)
    }
}

struct Walker<'a> {
    poly: &'a Polyhedron,
    bounds: &'a [(BigInt, BigInt)],
    suffix: Vec<Vec<BigInt>>,
    partial: Vec<BigInt>,
    point: Vec<BigInt>,
    cancel: &'a CancelToken,
}

impl Walker<'_> {
    fn descend(
        &mut self,
        visit: &mut dyn FnMut(&[BigInt]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.cancel.check()?;
        let j = self.point.len();
        let poly = self.poly;
        if j == poly.dim {
            if self.partial.iter().zip(&poly.h).all(|(p, h)| p <= h) {
                return Ok(visit(&self.point));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let (mut lo, mut hi) = self.bounds[j].clone();
        for i in 0..poly.m.len() {
            let slack = &poly.h[i] - &self.partial[i] - &self.suffix[i][j + 1];
            let a = &poly.m[i][j];
            if a.is_zero() {
                if slack.is_negative() {
                    return Ok(ControlFlow::Continue(()));
                }
            } else if a.is_positive() {
                hi = hi.min(slack.div_floor(a));
            } else {
                lo = lo.max(-(slack.div_floor(&-a)));
            }
        }
        let mut v = lo;
        while v <= hi {
            for i in 0..poly.m.len() {
                if !poly.m[i][j].is_zero() {
                    self.partial[i] += &poly.m[i][j] * &v;
                }
            }
            self.point.push(v.clone());
            let flow = self.descend(visit)?;
            self.point.pop();
            for i in 0..poly.m.len() {
                if !poly.m[i][j].is_zero() {
                    self.partial[i] -= &poly.m[i][j] * &v;
                }
            }
            if flow.is_break() {
                return Ok(flow);
            }
            v += 1;
        }
        Ok(ControlFlow::Continue(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn collect(p: &Polyhedron) -> Vec<Vec<BigInt>> {
        let Region::Bounded(bounds) = p.region() else {
            return vec![];
        };
        let mut out = Vec::new();
        let _ = p
            .for_each_point(&bounds, &CancelToken::new(), &mut |x| {
                out.push(x.to_vec());
                ControlFlow::Continue(())
            })
            .unwrap();
        out
    }

    #[test]
    fn triangle_points() {
        // x, y ≥ 0, x + y ≤ 2 has six lattice points.
        let p = Polyhedron::new(vec![b(&[-1, 0]), b(&[0, -1]), b(&[1, 1])], b(&[0, 0, 2]), 2);
        let pts = collect(&p);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], b(&[0, 0]));
        assert_eq!(pts[5], b(&[2, 0]));
    }

    #[test]
    fn thin_region_without_lattice_points() {
        // 1 ≤ 3x ≤ 2 has rational but no integer solutions.
        let p = Polyhedron::new(vec![b(&[3]), b(&[-3])], b(&[2, -1]), 1);
        assert!(matches!(p.region(), Region::Empty));
    }

    #[test]
    fn unbounded_and_empty_regions() {
        let p = Polyhedron::new(vec![b(&[-1, 0])], b(&[0]), 2);
        assert_eq!(p.region(), Region::Unbounded);
        let p = Polyhedron::new(vec![b(&[1]), b(&[-1])], b(&[-1, -1]), 1);
        assert_eq!(p.region(), Region::Empty);
    }

    #[test]
    fn zero_dimensional() {
        let p = Polyhedron::new(vec![vec![]], b(&[0]), 0);
        assert_eq!(collect(&p), vec![Vec::<BigInt>::new()]);
        let p = Polyhedron::new(vec![vec![]], b(&[-1]), 0);
        assert!(collect(&p).is_empty());
    }
}
