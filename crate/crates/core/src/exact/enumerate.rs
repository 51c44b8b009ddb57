use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::lattice::ColumnEchelon;
use crate::exact::lp::LpOutcome;
use crate::exact::points::{Polyhedron, Region};
use crate::exact::{IntMatrix, SignedVector};
use crate::limits::{CancelToken, Limits};

/// Nonnegative solutions of `A x = b`, with a flag telling whether the list is the whole fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub elements: Vec<SignedVector>,
    pub complete: bool,
}

/// All nonzero kernel vectors with `|u_i| ≤ bound`, canonical sign, sorted.
pub fn enumerate_bounded_kernel(a: &IntMatrix, bound: u64) -> Result<Vec<SignedVector>> {
    enumerate_bounded_kernel_with(a, bound, &Limits::default())
}

pub fn enumerate_bounded_kernel_with(
    a: &IntMatrix,
    bound: u64,
    limits: &Limits,
) -> Result<Vec<SignedVector>> {
    let n = a.cols();
    let side = 2 * u128::from(bound) + 1;
    let size = u32::try_from(n)
        .ok()
        .and_then(|e| side.checked_pow(e))
        .unwrap_or(u128::MAX);
    if size > limits.search_cap {
        return Err(Error::SearchSpaceTooLarge {
            size,
            cap: limits.search_cap,
        });
    }
    let cols = a.columns();
    let m = a.rows();
    // reach[k][i] = bound · Σ_{j ≥ k} |a_ij|
    let b = BigInt::from(bound);
    let mut reach = vec![vec![BigInt::zero(); m]; n + 1];
    for k in (0..n).rev() {
        for i in 0..m {
            reach[k][i] = &reach[k + 1][i] + cols[k][i].abs() * &b;
        }
    }
    let mut out = Vec::new();
    let mut x = Vec::with_capacity(n);
    let mut sums = vec![BigInt::zero(); m];
    kernel_dfs(
        &cols,
        &reach,
        bound as i64,
        &mut x,
        &mut sums,
        true,
        &limits.cancel,
        &mut out,
    )?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn kernel_dfs(
    cols: &[Vec<BigInt>],
    reach: &[Vec<BigInt>],
    bound: i64,
    x: &mut Vec<i64>,
    sums: &mut [BigInt],
    zero_prefix: bool,
    cancel: &CancelToken,
    out: &mut Vec<SignedVector>,
) -> Result<()> {
    let k = x.len();
    if sums.iter().zip(&reach[k]).any(|(s, r)| s.abs() > *r) {
        return Ok(());
    }
    if k == cols.len() {
        if !zero_prefix && sums.iter().all(Zero::is_zero) {
            out.push(SignedVector::from_i64s(x));
        }
        return Ok(());
    }
    cancel.check()?;
    let start = if zero_prefix { 0 } else { -bound };
    for v in start..=bound {
        if v != 0 {
            for (s, c) in sums.iter_mut().zip(&cols[k]) {
                *s += c * v;
            }
        }
        x.push(v);
        let r = kernel_dfs(
            cols,
            reach,
            bound,
            x,
            sums,
            zero_prefix && v == 0,
            cancel,
            out,
        );
        x.pop();
        if v != 0 {
            for (s, c) in sums.iter_mut().zip(&cols[k]) {
                *s -= c * v;
            }
        }
        r?;
    }
    Ok(())
}

/// All `x ≥ 0` with `A x = b` and, when `cap` is given, `x_i ≤ cap_i`.
///
/// Without caps an infinite fiber is searched inside the box `10 · max(1, ‖b‖∞)` and flagged incomplete.
pub fn enumerate_nonnegative_solutions(
    a: &IntMatrix,
    b: &[BigInt],
    cap: Option<&[BigInt]>,
) -> Result<SolutionSet> {
    enumerate_nonnegative_solutions_with(a, b, cap, &Limits::default())
}

pub fn enumerate_nonnegative_solutions_with(
    a: &IntMatrix,
    b: &[BigInt],
    cap: Option<&[BigInt]>,
    limits: &Limits,
) -> Result<SolutionSet> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    if let Some(c) = cap {
        if c.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: c.len(),
            });
        }
    }
    let engine = FiberEngine::new(a);
    let Some(x0) = engine.solve(b) else {
        return Ok(SolutionSet {
            elements: Vec::new(),
            complete: true,
        });
    };
    let norm = b.iter().map(Signed::abs).max().unwrap_or_default();
    let default_cap = limits.fiber_cap.resolve(&norm);
    engine.fiber(&x0, cap, &default_cap, &limits.cancel)
}

/// Outcome of a fiber search for a point with some property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<BigInt>),
    /// The whole (finite) search region was scanned.
    Exhausted,
    /// Nothing found, but default caps cut an unbounded region.
    Truncated,
}

/// Fibers of a fixed matrix, parametrized as `x0 + Gλ ≥ 0` over a kernel lattice basis `G`.
#[derive(Clone, Debug)]
pub struct FiberEngine {
    a: IntMatrix,
    echelon: ColumnEchelon,
    /// Kernel basis vectors `g_1..g_d`, each of length `n`.
    kernel: Vec<Vec<BigInt>>,
}

impl FiberEngine {
    pub fn new(a: &IntMatrix) -> Self {
        let echelon = ColumnEchelon::new(a);
        let kernel = echelon.kernel_hnf();
        FiberEngine {
            a: a.clone(),
            echelon,
            kernel,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub(crate) fn kernel(&self) -> &[Vec<BigInt>] {
        &self.kernel
    }

    /// Some integer (not necessarily nonnegative) solution of `A x = b`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        self.echelon.solve(b)
    }

    fn point(&self, x0: &[BigInt], lambda: &[BigInt]) -> Vec<BigInt> {
        let mut x = x0.to_vec();
        for (g, l) in self.kernel.iter().zip(lambda) {
            if l.is_zero() {
                continue;
            }
            for (xi, gi) in x.iter_mut().zip(g) {
                if !gi.is_zero() {
                    *xi += gi * l;
                }
            }
        }
        x
    }

    /// Row `i` of the Gale matrix: `(g_1[i], …, g_d[i])`.
    fn gale_row(&self, i: usize) -> Vec<BigInt> {
        self.kernel.iter().map(|g| g[i].clone()).collect()
    }

    /// `x ≥ 0` plus the given upper bounds, as constraints on `λ`.
    fn polyhedron(&self, x0: &[BigInt], caps: &[Option<BigInt>]) -> Polyhedron {
        let n = x0.len();
        let d = self.kernel.len();
        let mut p = Polyhedron::new(Vec::with_capacity(2 * n), Vec::with_capacity(2 * n), d);
        for i in 0..n {
            let row = self.gale_row(i);
            p.push(row.iter().map(|x| -x).collect(), x0[i].clone());
            if let Some(c) = &caps[i] {
                p.push(row, c - &x0[i]);
            }
        }
        p
    }

    /// Walks the lattice points of `{x0 + Gλ ≥ 0, x_i ≤ caps_i}`.
    ///
    /// If the region is unbounded, uncapped coordinates get `default_cap` and the scan is marked truncated.
    /// Returns `(stopped_early, truncated)`.
    pub fn scan(
        &self,
        x0: &[BigInt],
        caps: &[Option<BigInt>],
        default_cap: &BigInt,
        cancel: &CancelToken,
        visit: &mut dyn FnMut(Vec<BigInt>) -> ControlFlow<()>,
    ) -> Result<(bool, bool)> {
        let mut poly = self.polyhedron(x0, caps);
        let mut truncated = false;
        let bounds = match poly.region() {
            Region::Empty => return Ok((false, false)),
            Region::Bounded(b) => b,
            Region::Unbounded => {
                truncated = true;
                let filled: Vec<Option<BigInt>> = caps
                    .iter()
                    .map(|c| Some(c.clone().unwrap_or_else(|| default_cap.clone())))
                    .collect();
                poly = self.polyhedron(x0, &filled);
                match poly.region() {
                    Region::Empty => return Ok((false, true)),
                    Region::Bounded(b) => b,
                    Region::Unbounded => unreachable!("capped fiber polytope is bounded"),
                }
            }
        };
        let flow =
            poly.for_each_point(&bounds, cancel, &mut |lambda| visit(self.point(x0, lambda)))?;
        Ok((flow.is_break(), truncated))
    }

    /// First fiber point (in scan order) satisfying `pred`.
    pub fn find(
        &self,
        x0: &[BigInt],
        caps: &[Option<BigInt>],
        default_cap: &BigInt,
        cancel: &CancelToken,
        pred: &mut dyn FnMut(&[BigInt]) -> bool,
    ) -> Result<SearchOutcome> {
        let mut found = None;
        let (_, truncated) = self.scan(x0, caps, default_cap, cancel, &mut |x| {
            if pred(&x) {
                found = Some(x);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(match found {
            Some(x) => SearchOutcome::Found(x),
            None if truncated => SearchOutcome::Truncated,
            None => SearchOutcome::Exhausted,
        })
    }

    /// The fiber through `x0`, sorted; capped by `cap` if given, by `default_cap` if it is infinite.
    pub fn fiber(
        &self,
        x0: &[BigInt],
        cap: Option<&[BigInt]>,
        default_cap: &BigInt,
        cancel: &CancelToken,
    ) -> Result<SolutionSet> {
        let n = x0.len();
        let caps: Vec<Option<BigInt>> = match cap {
            Some(c) => c.iter().cloned().map(Some).collect(),
            None => vec![None; n],
        };
        let mut elements = Vec::new();
        let (_, truncated) = self.scan(x0, &caps, default_cap, cancel, &mut |x| {
            elements.push(SignedVector::new(x));
            ControlFlow::Continue(())
        })?;
        let complete = if truncated {
            false
        } else if let Some(c) = cap {
            !self.escapes_caps(x0, c, cancel)?
        } else {
            true
        };
        elements.sort();
        Ok(SolutionSet { elements, complete })
    }

    /// Whether the fiber through `x0` is finite (its rational relaxation is bounded or empty).
    pub fn is_finite(&self, x0: &[BigInt]) -> bool {
        !matches!(
            self.polyhedron(x0, &vec![None; x0.len()]).region(),
            Region::Unbounded
        )
    }

    /// Whether some fiber point exceeds a cap (true for infinite fibers that are nonempty or undecided).
    fn escapes_caps(&self, x0: &[BigInt], cap: &[BigInt], cancel: &CancelToken) -> Result<bool> {
        let free = self.polyhedron(x0, &vec![None; x0.len()]);
        if matches!(free.region(), Region::Unbounded) {
            return Ok(true);
        }
        for (i, ci) in cap.iter().enumerate() {
            let row = self.gale_row(i);
            // max x_i = x0_i + max g(i)·λ
            let within = match free.maximize(&row) {
                LpOutcome::Optimal(v) => {
                    (v + BigRational::from_integer(x0[i].clone()))
                        .floor()
                        .to_integer()
                        <= *ci
                }
                _ => true,
            };
            if within {
                continue;
            }
            let mut probe = self.polyhedron(x0, &vec![None; x0.len()]);
            // x_i ≥ cap_i + 1  ⇔  −g(i)·λ ≤ x0_i − cap_i − 1
            probe.push(row.iter().map(|x| -x).collect(), &x0[i] - ci - 1);
            if let Region::Bounded(bounds) = probe.region() {
                let flow =
                    probe.for_each_point(&bounds, cancel, &mut |_| ControlFlow::Break(()))?;
                if flow.is_break() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}
