use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::graver::{circuits_from_graver, graver_basis_with};
use super::{Fiber, MarkovBasis, Verdict};
use crate::error::{Error, Result};
use crate::exact::lp::LpOutcome;
use crate::exact::points::Polyhedron;
use crate::exact::{FiberEngine, IntMatrix, SearchOutcome, SignedVector};
use crate::limits::Limits;

/// One Graver degree with its complete fiber split into classes of elements linked by shared support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeFiber {
    pub degree: Vec<BigInt>,
    pub elements: Vec<SignedVector>,
    /// Indices into `elements`, each class sorted, classes ordered by their first index.
    pub components: Vec<Vec<usize>>,
}

/// Result of a semiconformal search for one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semiconformal {
    Found { v: SignedVector, w: SignedVector },
    NoneExists,
    Inconclusive,
}

/// Cached toric data of one matrix: fiber engine, Graver basis and derived sets.
pub struct Toric {
    engine: FiberEngine,
    limits: Limits,
    positively_graded: OnceLock<bool>,
    graver: OnceLock<Vec<SignedVector>>,
    indispensable: OnceLock<Vec<SignedVector>>,
    markov: OnceLock<Vec<DegreeFiber>>,
}

impl Toric {
    pub fn new(a: &IntMatrix) -> Self {
        Self::with_limits(a, Limits::default())
    }

    pub fn with_limits(a: &IntMatrix, limits: Limits) -> Self {
        Toric {
            engine: FiberEngine::new(a),
            limits,
            positively_graded: OnceLock::new(),
            graver: OnceLock::new(),
            indispensable: OnceLock::new(),
            markov: OnceLock::new(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.engine.matrix()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn graver(&self) -> Result<&[SignedVector]> {
        if let Some(g) = self.graver.get() {
            return Ok(g);
        }
        let g = graver_basis_with(self.matrix(), &self.limits)?;
        Ok(self.graver.get_or_init(|| g))
    }

    pub fn circuits(&self) -> Result<Vec<SignedVector>> {
        Ok(circuits_from_graver(self.graver()?))
    }

    /// Decided by linear programming: is there a nonnegative rational kernel vector with coordinate sum 1?
    pub fn is_positively_graded(&self) -> bool {
        *self.positively_graded.get_or_init(|| {
            let kernel = self.engine.kernel();
            let d = kernel.len();
            if d == 0 {
                return true;
            }
            let n = self.matrix().cols();
            let mut p = Polyhedron::new(Vec::new(), Vec::new(), d);
            let mut total = vec![BigInt::zero(); d];
            for i in 0..n {
                let row: Vec<BigInt> = kernel.iter().map(|g| g[i].clone()).collect();
                for (t, x) in total.iter_mut().zip(&row) {
                    *t += x;
                }
                p.push(row.iter().map(|x| -x).collect(), BigInt::zero());
            }
            p.push(total.clone(), BigInt::from(1));
            p.push(total.iter().map(|x| -x).collect(), BigInt::from(-1));
            matches!(p.maximize(&vec![BigInt::zero(); d]), LpOutcome::Infeasible)
        })
    }

    fn default_cap(&self, v: &[BigInt]) -> BigInt {
        let norm = v.iter().map(Signed::abs).max().unwrap_or_default();
        self.limits.fiber_cap.resolve(&norm)
    }

    pub fn fiber(&self, x: &[BigInt], caps: Option<&[BigInt]>) -> Result<Fiber> {
        let n = self.matrix().cols();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        if x.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(
                "fiber base point must be nonnegative".into(),
            ));
        }
        if let Some(c) = caps {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
        }
        let set = self
            .engine
            .fiber(x, caps, &self.default_cap(x), &self.limits.cancel)?;
        Ok(Fiber {
            degree: SignedVector::new(self.matrix().mul_vec(x)),
            elements: set.elements,
            complete: set.complete,
        })
    }

    /// Whether the fiber of `u⁺` holds a point other than `u⁺`, `u⁻`.
    fn has_third_point(&self, u: &SignedVector) -> Result<SearchOutcome> {
        let plus = u.positive_part();
        let minus = u.negative_part();
        let caps = vec![None; plus.len()];
        self.engine.find(
            &plus,
            &caps,
            &self.default_cap(u.coords()),
            &self.limits.cancel,
            &mut |x| x != plus.as_slice() && x != minus.as_slice(),
        )
    }

    pub fn indispensables(&self) -> Result<&[SignedVector]> {
        if let Some(s) = self.indispensable.get() {
            return Ok(s);
        }
        let s = if self.is_positively_graded() {
            let graver = self.graver()?;
            let keep: Vec<bool> = graver
                .par_iter()
                .map(|u| {
                    self.has_third_point(u)
                        .map(|o| o == SearchOutcome::Exhausted)
                })
                .collect::<Result<_>>()?;
            graver
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(u, _)| u.clone())
                .collect()
        } else {
            Vec::new()
        };
        Ok(self.indispensable.get_or_init(|| s))
    }

    /// Complete fibers of every distinct Graver degree, sorted by degree.
    pub fn markov_degrees(&self) -> Result<&[DegreeFiber]> {
        if let Some(m) = self.markov.get() {
            return Ok(m);
        }
        if !self.is_positively_graded() {
            return Err(Error::NotPositivelyGraded);
        }
        let graver = self.graver()?;
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut bases: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
        for u in graver {
            let plus = u.positive_part();
            let degree = self.matrix().mul_vec(&plus);
            if seen.insert(degree.clone()) {
                bases.push((degree, plus));
            }
        }
        bases.sort();
        let fibers: Vec<DegreeFiber> = bases
            .par_iter()
            .map(|(degree, plus)| {
                let set =
                    self.engine
                        .fiber(plus, None, &self.default_cap(plus), &self.limits.cancel)?;
                debug_assert!(
                    set.complete,
                    "fibers of a positively graded matrix are finite"
                );
                let components = support_components(&set.elements);
                Ok(DegreeFiber {
                    degree: degree.clone(),
                    elements: set.elements,
                    components,
                })
            })
            .collect::<Result<_>>()?;
        Ok(self.markov.get_or_init(|| fibers))
    }

    /// One minimal Markov basis: per degree, moves from the first class's smallest element to every other class.
    pub fn minimal_markov_basis(&self) -> Result<MarkovBasis> {
        let mut elements = Vec::new();
        for f in self.markov_degrees()? {
            let root = &f.elements[f.components[0][0]];
            for c in &f.components[1..] {
                elements.push((root - &f.elements[c[0]]).canonical());
            }
        }
        elements.sort();
        Ok(MarkovBasis {
            elements,
            minimal: true,
        })
    }

    /// A minimal Markov basis of full-support moves exists.
    pub fn is_generic(&self) -> Result<bool> {
        let degrees = self.markov_degrees()?;
        let n = self.matrix().cols();
        let mut any = false;
        for f in degrees {
            let k = f.components.len();
            if k < 2 {
                continue;
            }
            any = true;
            let mut uf = UnionFind::new(k);
            for a in 0..k {
                for b in a + 1..k {
                    if uf.find(a) == uf.find(b) {
                        continue;
                    }
                    let linked = f.components[a].iter().any(|&x| {
                        f.components[b].iter().any(|&y| {
                            (0..n).all(|i| {
                                !f.elements[x].coords()[i].is_zero()
                                    || !f.elements[y].coords()[i].is_zero()
                            })
                        })
                    });
                    if linked {
                        uf.union(a, b);
                    }
                }
            }
            if (1..k).any(|c| uf.find(c) != uf.find(0)) {
                return Ok(false);
            }
        }
        Ok(any)
    }

    /// Searches `z ∈ F(u⁺) \ {u⁺, u⁻}` with `z_i ≤ |u_i|` on `s`, giving `u = (u⁺ − z) +_sc (z − u⁻)`.
    pub fn semiconformal(&self, u: &SignedVector, s: &[usize]) -> Result<Semiconformal> {
        let n = self.matrix().cols();
        if u.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.len(),
            });
        }
        if let Some(&bad) = s.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidInput(format!(
                "index {} outside 1..{n}",
                bad + 1
            )));
        }
        if !self.matrix().annihilates(u.coords()) {
            return Err(Error::InvalidInput(format!("{u} is not in the kernel")));
        }
        if u.is_zero() {
            return Ok(Semiconformal::NoneExists);
        }
        let plus = u.positive_part();
        let minus = u.negative_part();
        let mut caps: Vec<Option<BigInt>> = vec![None; n];
        for &i in s {
            caps[i] = Some(u.coords()[i].abs());
        }
        let found = self.engine.find(
            &plus,
            &caps,
            &self.default_cap(u.coords()),
            &self.limits.cancel,
            &mut |x| x != plus.as_slice() && x != minus.as_slice(),
        )?;
        Ok(match found {
            SearchOutcome::Found(z) => {
                let z = SignedVector::new(z);
                Semiconformal::Found {
                    v: &SignedVector::new(plus) - &z,
                    w: &z - &SignedVector::new(minus),
                }
            }
            SearchOutcome::Exhausted => Semiconformal::NoneExists,
            SearchOutcome::Truncated => Semiconformal::Inconclusive,
        })
    }

    /// No Graver element has a third `u⁺`-fiber point whose `s`-part fits in the box `Π [0, |u_i|]`.
    pub fn s_lawrence(&self, s: &[usize]) -> Result<Verdict> {
        let graver = self.graver()?;
        let outcomes: Vec<Semiconformal> = graver
            .par_iter()
            .map(|u| self.semiconformal(u, s))
            .collect::<Result<_>>()?;
        if outcomes
            .iter()
            .any(|o| matches!(o, Semiconformal::Found { .. }))
        {
            Ok(Verdict::False)
        } else if outcomes.contains(&Semiconformal::Inconclusive) {
            Ok(Verdict::Inconclusive)
        } else {
            Ok(Verdict::True)
        }
    }
}

/// Classes of the graph joining fiber elements with intersecting supports.
fn support_components(elements: &[SignedVector]) -> Vec<Vec<usize>> {
    let Some(n) = elements.first().map(SignedVector::len) else {
        return Vec::new();
    };
    let mut uf = UnionFind::new(elements.len());
    for i in 0..n {
        let mut first: Option<usize> = None;
        for (k, x) in elements.iter().enumerate() {
            if x.coords()[i].is_positive() {
                match first {
                    None => first = Some(k),
                    Some(f) => uf.union(f, k),
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; elements.len()];
    for k in 0..elements.len() {
        let r = uf.find(k);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(k);
    }
    classes
}

/// Whether `moves` connect all points of `fiber` (steps `x → x ± m` staying nonnegative).
pub fn connects_fiber(fiber: &[SignedVector], moves: &[SignedVector]) -> bool {
    if fiber.len() <= 1 {
        return true;
    }
    let members: HashSet<&SignedVector> = fiber.iter().collect();
    let mut seen: HashSet<SignedVector> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(fiber[0].clone());
    queue.push_back(fiber[0].clone());
    while let Some(x) = queue.pop_front() {
        for m in moves {
            for y in [&x + m, &x - m] {
                if y.coords().iter().all(|c| !c.is_negative())
                    && members.contains(&y)
                    && !seen.contains(&y)
                {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    seen.len() == members.len()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
