//! Elements of the free abelian group and of its rational span.
//!
//! A [`Word`] is an integer combination of non-basepoint points (the group
//! `A(X,*)`); a [`LinComb`] is the same with exact rational coefficients
//! (the vector span `L(X,*)`). Both are kept reduced: no zero coefficients,
//! never a basepoint key.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rat::Rat;
use crate::space::PointedSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    /// Coefficient attached to the basepoint (it is the zero element).
    BasepointCoefficient { index: usize },
    /// Point index not present in the space the word is used with.
    PointOutOfRange { index: usize, len: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::BasepointCoefficient { index } => {
                write!(f, "basepoint (index {index}) cannot carry a coefficient")
            }
            WordError::PointOutOfRange { index, len } => {
                write!(f, "point index {index} out of range for a {len}-point space")
            }
        }
    }
}

impl core::error::Error for WordError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// An element of the free abelian group on the non-basepoint points:
/// a reduced map `point index -> nonzero integer coefficient`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Word {
    coeffs: BTreeMap<usize, BigInt>,
}

impl Word {
    pub fn zero() -> Self {
        Word::default()
    }

    /// Builds a reduced word, dropping zero coefficients.
    pub fn new<I: IntoIterator<Item = (usize, BigInt)>>(coeffs: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            let entry = map.entry(i).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&i);
            }
        }
        Word { coeffs: map }
    }

    pub fn singleton(index: usize, coeff: i64) -> Self {
        Word::new([(index, BigInt::from(coeff))])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> BigInt {
        self.coeffs.get(&index).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    /// Total letter count `Σ |c_i|`, saturating at `u64::MAX`.
    pub fn letter_count(&self) -> u64 {
        let mut total: u64 = 0;
        for c in self.coeffs.values() {
            let m = c.abs();
            let step = u64::try_from(&m).unwrap_or(u64::MAX);
            total = total.saturating_add(step);
        }
        total
    }

    pub fn neg(&self) -> Word {
        Word {
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    /// Checks this word only uses non-basepoint points of `space`.
    pub fn check_over(&self, space: &PointedSpace) -> Result<(), WordError> {
        for &i in self.coeffs.keys() {
            if i >= space.len() {
                return Err(WordError::PointOutOfRange { index: i, len: space.len() });
            }
            if i == space.basepoint() {
                return Err(WordError::BasepointCoefficient { index: i });
            }
        }
        Ok(())
    }
}

/// `u + v` or `u - v`, reduced.
pub fn word_combine(
    space: &PointedSpace,
    u: &Word,
    v: &Word,
    sign: Sign,
) -> Result<Word, WordError> {
    u.check_over(space)?;
    v.check_over(space)?;
    let signed_v = v.coeffs.iter().map(|(i, c)| {
        let c = match sign {
            Sign::Plus => c.clone(),
            Sign::Minus => -c,
        };
        (*i, c)
    });
    Ok(Word::new(u.coeffs.iter().map(|(i, c)| (*i, c.clone())).chain(signed_v)))
}

/// A rational combination of non-basepoint points, reduced like [`Word`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    coeffs: BTreeMap<usize, Rat>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn new<I: IntoIterator<Item = (usize, Rat)>>(coeffs: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            let entry = map.entry(i).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&i);
            }
        }
        LinComb { coeffs: map }
    }

    pub fn singleton(index: usize, coeff: Rat) -> Self {
        LinComb::new([(index, coeff)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Rat {
        self.coeffs.get(&index).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        LinComb::new(
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(i, c)| (*i, c.clone())),
        )
    }

    pub fn scale(&self, factor: &Rat) -> LinComb {
        LinComb::new(self.coeffs.iter().map(|(i, c)| (*i, c * factor)))
    }

    pub fn neg(&self) -> LinComb {
        LinComb {
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn check_over(&self, space: &PointedSpace) -> Result<(), WordError> {
        for &i in self.coeffs.keys() {
            if i >= space.len() {
                return Err(WordError::PointOutOfRange { index: i, len: space.len() });
            }
            if i == space.basepoint() {
                return Err(WordError::BasepointCoefficient { index: i });
            }
        }
        Ok(())
    }
}

/// The canonical inclusion of the group into its rational span: the same
/// coefficients read as rationals.
pub fn word_to_lincomb(w: &Word) -> LinComb {
    LinComb {
        coeffs: w
            .coeffs
            .iter()
            .map(|(i, c)| (*i, Rat::from_integer(c.clone())))
            .collect(),
    }
}

/// Positive and negative letter occurrences of a word, each sorted by
/// point index: `(2a - b)` yields `([a, a], [b])`. Callers bound the
/// letter count first.
pub(crate) fn letter_occurrences(w: &Word) -> (Vec<usize>, Vec<usize>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, c) in w.iter() {
        let m = usize::try_from(&c.abs()).unwrap_or(usize::MAX);
        if c.is_positive() {
            pos.extend(core::iter::repeat_n(i, m));
        } else {
            neg.extend(core::iter::repeat_n(i, m));
        }
    }
    (pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn inverse_cancels_to_zero() {
        let s = PointedSpace::discrete(2);
        let a = Word::singleton(1, 1);
        let sum = word_combine(&s, &a, &a.neg(), Sign::Plus).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn cancellation_and_addition() {
        let s = PointedSpace::discrete(3);
        let u = Word::new([(1, BigInt::from(2)), (2, BigInt::from(-1))]); // 2a - b
        let b = Word::singleton(2, 1);
        let sum = word_combine(&s, &u, &b, Sign::Plus).unwrap();
        assert_eq!(sum, Word::singleton(1, 2));

        let a = Word::singleton(1, 1);
        let doubled = word_combine(&s, &a, &a, Sign::Plus).unwrap();
        assert_eq!(doubled, Word::singleton(1, 2));
    }

    #[test]
    fn reduction_drops_zeros_and_basepoint_is_rejected() {
        let w = Word::new([(1, BigInt::from(3)), (1, BigInt::from(-3))]);
        assert!(w.is_zero());

        let s = PointedSpace::discrete(2);
        let bad = Word::singleton(0, 1);
        assert!(matches!(
            bad.check_over(&s),
            Err(WordError::BasepointCoefficient { index: 0 })
        ));
        let oob = Word::singleton(9, 1);
        assert!(matches!(oob.check_over(&s), Err(WordError::PointOutOfRange { .. })));
    }

    #[test]
    fn lincomb_inclusion_matches_coefficients() {
        let w = Word::new([(1, BigInt::from(2)), (2, BigInt::from(-1))]);
        let v = word_to_lincomb(&w);
        assert_eq!(v.coeff(1), rat_int(2));
        assert_eq!(v.coeff(2), rat_int(-1));
        assert!(word_to_lincomb(&Word::zero()).is_zero());
    }

    #[test]
    fn occurrences_are_sorted_multisets() {
        let w = Word::new([(2, BigInt::from(-2)), (1, BigInt::from(2))]);
        let (pos, neg) = letter_occurrences(&w);
        assert_eq!(pos, alloc::vec![1, 1]);
        assert_eq!(neg, alloc::vec![2, 2]);
    }

    #[test]
    fn lincomb_scale_reduces() {
        let v = LinComb::new([(1, rat(1, 2)), (2, rat(-1, 3))]);
        let z = v.add(&v.neg());
        assert!(z.is_zero());
        assert_eq!(v.scale(&rat_int(6)).coeff(2), rat_int(-2));
    }
}
