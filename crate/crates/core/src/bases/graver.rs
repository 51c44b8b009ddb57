//! Graver bases by a completion procedure over the kernel lattice.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{kernel_lattice_basis, IntMatrix, SignedVector};
use crate::limits::Limits;

/// Sign pattern of a vector as two bitsets.
#[derive(Clone, Debug)]
struct Pattern {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl Pattern {
    fn of(v: &[BigInt]) -> Self {
        let words = v.len().div_ceil(64).max(1);
        let mut p = Pattern {
            pos: vec![0; words],
            neg: vec![0; words],
        };
        for (i, x) in v.iter().enumerate() {
            if x.is_positive() {
                p.pos[i / 64] |= 1 << (i % 64);
            } else if x.is_negative() {
                p.neg[i / 64] |= 1 << (i % 64);
            }
        }
        p
    }

    fn subset(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    /// Sign pattern of `self` is compatible with `g ⊑ self` (`flip` tests `−g`).
    fn admits(&self, g: &Pattern, flip: bool) -> bool {
        if flip {
            Self::subset(&g.pos, &self.neg) && Self::subset(&g.neg, &self.pos)
        } else {
            Self::subset(&g.pos, &self.pos) && Self::subset(&g.neg, &self.neg)
        }
    }

    fn overlaps(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }
}

#[derive(Clone, Debug)]
struct Element {
    v: Vec<BigInt>,
    pattern: Pattern,
}

impl Element {
    fn new(v: Vec<BigInt>) -> Self {
        let pattern = Pattern::of(&v);
        Element { v, pattern }
    }
}

fn one_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).sum()
}

/// Largest `k ≥ 0` with `k·(±g) ⊑ s`, given that the sign patterns already admit it.
fn multiplicity(s: &[BigInt], g: &[BigInt]) -> BigInt {
    let mut k: Option<BigInt> = None;
    for (si, gi) in s.iter().zip(g) {
        if gi.is_zero() {
            continue;
        }
        let q = si.abs().div_floor(&gi.abs());
        if q.is_zero() {
            return q;
        }
        k = Some(match k {
            Some(k) if k <= q => k,
            _ => q,
        });
    }
    k.unwrap_or_default()
}

/// Reduces `s` by conformal subtraction of `±g` for `g` in `set` until no element fits.
fn normal_form(mut s: Vec<BigInt>, set: &[Element]) -> Vec<BigInt> {
    'outer: loop {
        if s.iter().all(Zero::is_zero) {
            return s;
        }
        let pat = Pattern::of(&s);
        for g in set {
            for flip in [false, true] {
                if !pat.admits(&g.pattern, flip) {
                    continue;
                }
                let k = multiplicity(&s, &g.v);
                if k.is_zero() {
                    continue;
                }
                let k = if flip { -k } else { k };
                for (si, gi) in s.iter_mut().zip(&g.v) {
                    if !gi.is_zero() {
                        *si -= &k * gi;
                    }
                }
                continue 'outer;
            }
        }
        return s;
    }
}

/// Pair `(i, j, sign)` stands for `e_i + sign·e_j`.
type Pair = (Reverse<(u128, usize)>, usize, usize, bool);

fn norm_key(v: &BigInt) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

/// Sum or difference of two stored elements is worth completing only if it cancels somewhere.
fn push_pairs(heap: &mut BinaryHeap<Pair>, set: &[Element], new: usize, seq: &mut usize) {
    let e = &set[new];
    for (j, f) in set.iter().enumerate().take(new) {
        // e + f cancels where signs are opposite, e − f where they agree.
        let plus = Pattern::overlaps(&e.pattern.pos, &f.pattern.neg)
            || Pattern::overlaps(&e.pattern.neg, &f.pattern.pos);
        let minus = Pattern::overlaps(&e.pattern.pos, &f.pattern.pos)
            || Pattern::overlaps(&e.pattern.neg, &f.pattern.neg);
        for (wanted, sign) in [(plus, true), (minus, false)] {
            if !wanted {
                continue;
            }
            let norm: BigInt =
                e.v.iter()
                    .zip(&f.v)
                    .map(|(a, b)| if sign { (a + b).abs() } else { (a - b).abs() })
                    .sum();
            *seq += 1;
            heap.push((Reverse((norm_key(&norm), *seq)), new, j, sign));
        }
    }
}

/// The Graver basis of `A` in canonical sign, sorted.
pub fn graver_basis(a: &IntMatrix) -> Result<Vec<SignedVector>> {
    graver_basis_with(a, &Limits::default())
}

pub fn graver_basis_with(a: &IntMatrix, limits: &Limits) -> Result<Vec<SignedVector>> {
    let basis = kernel_lattice_basis(a);
    graver_from_generators(
        basis
            .basis_vectors
            .iter()
            .map(|g| g.coords().to_vec())
            .collect(),
        limits,
    )
}

/// Completion of a lattice generating set to a set containing the Graver basis, then minimal filtering.
pub(crate) fn graver_from_generators(
    generators: Vec<Vec<BigInt>>,
    limits: &Limits,
) -> Result<Vec<SignedVector>> {
    let mut set: Vec<Element> = Vec::new();
    let mut heap: BinaryHeap<Pair> = BinaryHeap::new();
    let mut seq = 0usize;
    let mut generators = generators;
    generators.sort_by_key(|g| one_norm(g));

    let mut add =
        |v: Vec<BigInt>, set: &mut Vec<Element>, heap: &mut BinaryHeap<Pair>| -> Result<()> {
            let canonical = SignedVector::new(v).canonical().into_coords();
            set.push(Element::new(canonical));
            if set.len() > limits.graver_cap {
                return Err(Error::GraverCapExceeded(limits.graver_cap));
            }
            push_pairs(heap, set, set.len() - 1, &mut seq);
            Ok(())
        };

    for g in generators {
        let r = normal_form(g, &set);
        if r.iter().any(|x| !x.is_zero()) {
            add(r, &mut set, &mut heap)?;
        }
    }
    let mut steps = 0u64;
    while let Some((_, i, j, sign)) = heap.pop() {
        steps += 1;
        if steps.is_multiple_of(256) {
            limits.cancel.check()?;
        }
        let s: Vec<BigInt> = set[i]
            .v
            .iter()
            .zip(&set[j].v)
            .map(|(a, b)| if sign { a + b } else { a - b })
            .collect();
        let r = normal_form(s, &set);
        if r.iter().any(|x| !x.is_zero()) {
            add(r, &mut set, &mut heap)?;
        }
    }
    limits.cancel.check()?;

    let minimal: Vec<bool> = (0..set.len())
        .into_par_iter()
        .map(|i| {
            let e = &set[i];
            !set.iter().enumerate().any(|(j, g)| {
                j != i
                    && [false, true].iter().any(|&flip| {
                        e.pattern.admits(&g.pattern, flip) && !multiplicity(&e.v, &g.v).is_zero()
                    })
            })
        })
        .collect();
    let mut out: Vec<SignedVector> = set
        .into_iter()
        .zip(minimal)
        .filter_map(|(e, keep)| keep.then(|| SignedVector::new(e.v)))
        .collect();
    out.sort();
    Ok(out)
}

/// Kernel vectors of `A` with inclusion-minimal support, primitive, canonical sign, sorted.
pub fn circuits(a: &IntMatrix) -> Result<Vec<SignedVector>> {
    circuits_with(a, &Limits::default())
}

pub fn circuits_with(a: &IntMatrix, limits: &Limits) -> Result<Vec<SignedVector>> {
    Ok(circuits_from_graver(&graver_basis_with(a, limits)?))
}

pub(crate) fn circuits_from_graver(graver: &[SignedVector]) -> Vec<SignedVector> {
    let supports: Vec<Pattern> = graver
        .iter()
        .map(|g| {
            let p = Pattern::of(g.coords());
            let all: Vec<u64> = p.pos.iter().zip(&p.neg).map(|(a, b)| a | b).collect();
            Pattern {
                pos: all,
                neg: Vec::new(),
            }
        })
        .collect();
    let mut out: Vec<SignedVector> = graver
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !supports.iter().enumerate().any(|(j, s)| {
                j != i && Pattern::subset(&s.pos, &supports[i].pos) && s.pos != supports[i].pos
            })
        })
        .map(|(_, g)| g.primitive().canonical())
        .collect();
    out.sort();
    out.dedup();
    out
}
