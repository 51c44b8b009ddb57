use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::exact::serialize_bigint_slice;

/// Integer vector with derived positive and negative parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedVector(Vec<BigInt>);

impl SignedVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        SignedVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        SignedVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        SignedVector(vec![BigInt::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `u⁺`, the componentwise positive part.
    pub fn positive_part(&self) -> Vec<BigInt> {
        self.0
            .iter()
            .map(|x| {
                if x.is_positive() {
                    x.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    /// `u⁻`, so that `u = u⁺ − u⁻`.
    pub fn negative_part(&self) -> Vec<BigInt> {
        self.0
            .iter()
            .map(|x| if x.is_negative() { -x } else { BigInt::zero() })
            .collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| !self.0[i].is_zero())
            .collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.0.iter().all(|x| !x.is_zero())
    }

    /// Sign flipped so that the first nonzero coordinate is positive.
    pub fn canonical(&self) -> SignedVector {
        if self.is_canonical() {
            self.clone()
        } else {
            -self
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .is_none_or(Signed::is_positive)
    }

    /// `self ⊑ other`: same signs wherever `self` is nonzero and no larger in absolute value.
    pub fn conformal_le(&self, other: &SignedVector) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a.is_zero() || (a.signum() == b.signum() && a.abs() <= b.abs()))
    }

    pub fn one_norm(&self) -> BigInt {
        self.0.iter().map(Signed::abs).sum()
    }

    pub fn max_norm(&self) -> BigInt {
        self.0.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// Total degree of the binomial `x^{u⁺} − x^{u⁻}`.
    pub fn binomial_degree(&self) -> BigInt {
        let pos: BigInt = self.0.iter().filter(|x| x.is_positive()).sum();
        let neg: BigInt = self.0.iter().filter(|x| x.is_negative()).map(|x| -x).sum();
        pos.max(neg)
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn primitive(&self) -> SignedVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        SignedVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn scaled(&self, k: &BigInt) -> SignedVector {
        SignedVector(self.0.iter().map(|x| x * k).collect())
    }
}

impl From<Vec<BigInt>> for SignedVector {
    fn from(v: Vec<BigInt>) -> Self {
        SignedVector(v)
    }
}

impl Neg for &SignedVector {
    type Output = SignedVector;

    fn neg(self) -> SignedVector {
        SignedVector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for SignedVector {
    type Output = SignedVector;

    fn neg(self) -> SignedVector {
        -&self
    }
}

impl Add for &SignedVector {
    type Output = SignedVector;

    fn add(self, rhs: &SignedVector) -> SignedVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        SignedVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &SignedVector {
    type Output = SignedVector;

    fn sub(self, rhs: &SignedVector) -> SignedVector {
        assert_eq!(self.len(), rhs.len(), "vector lengths differ");
        SignedVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for SignedVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_bigint_slice(&self.0, serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> SignedVector {
        SignedVector::from_i64s(x)
    }

    #[test]
    fn parts_split_the_vector() {
        let u = v(&[3, -1, 0, -2]);
        let plus = SignedVector::new(u.positive_part());
        let minus = SignedVector::new(u.negative_part());
        assert_eq!(&plus - &minus, u);
        assert_eq!(plus, v(&[3, 0, 0, 0]));
        assert_eq!(minus, v(&[0, 1, 0, 2]));
        assert_eq!(u.support(), vec![0, 1, 3]);
        assert_eq!(u.binomial_degree(), BigInt::from(3));
    }

    #[test]
    fn canonical_sign() {
        assert_eq!(v(&[0, -2, 1]).canonical(), v(&[0, 2, -1]));
        assert!(v(&[0, 0]).is_canonical());
        assert!(!v(&[-1, 5]).is_canonical());
    }

    #[test]
    fn conformal_order() {
        assert!(v(&[1, -1, 0]).conformal_le(&v(&[2, -3, 1])));
        assert!(!v(&[1, 1, 0]).conformal_le(&v(&[2, -3, 1])));
        assert!(!v(&[3, 0, 0]).conformal_le(&v(&[2, -3, 1])));
        assert!(v(&[0, 0, 0]).conformal_le(&v(&[2, -3, 1])));
    }

    #[test]
    fn primitive_and_content() {
        assert_eq!(v(&[4, -6, 0]).primitive(), v(&[2, -3, 0]));
        assert_eq!(v(&[4, -6, 0]).content(), BigInt::from(2));
        assert_eq!(v(&[0, 0]).primitive(), v(&[0, 0]));
    }
}
