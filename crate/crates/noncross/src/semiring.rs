//! Weight types for the chart engine.
//!
//! The engine is generic over a commutative semiring: `plus` folds
//! alternative derivations of the same item, `times` combines the parts of
//! one derivation. Swapping the semiring turns the same chart pass into
//! exact counting ([`CountWeight`]), best-score search ([`MaxPlusWeight`],
//! [`LexMaxPlusWeight`]), or plain derivability ([`BoolWeight`]).

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub trait Semiring: Clone + PartialEq + std::fmt::Debug {
    /// True when `plus` picks one operand (max, or) rather than blending
    /// them. Only selective semirings support backpointer recording.
    const SELECTIVE: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// Exact nonnegative counts of arbitrary size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountWeight(pub BigUint);

impl CountWeight {
    pub fn from_u64(v: u64) -> Self {
        CountWeight(BigUint::from(v))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl Semiring for CountWeight {
    fn zero() -> Self {
        CountWeight(BigUint::zero())
    }

    fn one() -> Self {
        CountWeight(BigUint::one())
    }

    fn plus(&self, rhs: &Self) -> Self {
        CountWeight(&self.0 + &rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        CountWeight(&self.0 * &rhs.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Max-plus weights for Viterbi decoding.
///
/// The additive identity is a distinguished unreachable value, not a float
/// sentinel: it is strictly below every finite score and absorbs under
/// `times`, so unreachable cells never leak into totals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxPlusWeight(Option<f64>);

impl MaxPlusWeight {
    pub fn finite(score: f64) -> Self {
        debug_assert!(score.is_finite());
        MaxPlusWeight(Some(score))
    }

    /// `None` for the unreachable value.
    pub fn value(self) -> Option<f64> {
        self.0
    }
}

impl Semiring for MaxPlusWeight {
    const SELECTIVE: bool = true;

    fn zero() -> Self {
        MaxPlusWeight(None)
    }

    fn one() -> Self {
        MaxPlusWeight(Some(0.0))
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => MaxPlusWeight(Some(a.max(b))),
            (Some(a), None) => MaxPlusWeight(Some(a)),
            (None, b) => MaxPlusWeight(b),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => MaxPlusWeight(Some(a + b)),
            _ => MaxPlusWeight(None),
        }
    }
}

/// Max-plus on a primary score with a lexicographic secondary key.
///
/// `plus` compares scores first and keys second, so equal-score
/// alternatives still order deterministically. Decoding gives every arc a
/// key of -1, which steers ties toward the sparsest optimum: a zero-score
/// arc is never added just because it costs nothing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LexMaxPlusWeight(Option<(f64, i64)>);

impl LexMaxPlusWeight {
    pub fn finite(score: f64, key: i64) -> Self {
        debug_assert!(score.is_finite());
        LexMaxPlusWeight(Some((score, key)))
    }

    /// `None` for the unreachable value.
    pub fn value(self) -> Option<(f64, i64)> {
        self.0
    }

    pub fn score(self) -> Option<f64> {
        self.0.map(|(score, _)| score)
    }
}

impl Semiring for LexMaxPlusWeight {
    const SELECTIVE: bool = true;

    fn zero() -> Self {
        LexMaxPlusWeight(None)
    }

    fn one() -> Self {
        LexMaxPlusWeight(Some((0.0, 0)))
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => {
                let keep_left = match a.0.total_cmp(&b.0) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => a.1 >= b.1,
                };
                LexMaxPlusWeight(Some(if keep_left { a } else { b }))
            }
            (Some(a), None) => LexMaxPlusWeight(Some(a)),
            (None, b) => LexMaxPlusWeight(b),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => LexMaxPlusWeight(Some((a.0 + b.0, a.1 + b.1))),
            _ => LexMaxPlusWeight(None),
        }
    }
}

/// Derivability only: `plus` is or, `times` is and.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoolWeight(pub bool);

impl Semiring for BoolWeight {
    const SELECTIVE: bool = true;

    fn zero() -> Self {
        BoolWeight(false)
    }

    fn one() -> Self {
        BoolWeight(true)
    }

    fn plus(&self, rhs: &Self) -> Self {
        BoolWeight(self.0 || rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        BoolWeight(self.0 && rhs.0)
    }
}
