//! The Graev norm on the free abelian group, computed exactly.
//!
//! For a word `w` with positive letter multiset `P` and negative letter
//! multiset `N`, pad `P` with `|N|` basepoint copies and `N` with `|P|`
//! basepoint copies, and minimize the total distance of a perfect matching
//! between the two sides. The minimum is the norm `ρ̄(w)`; the matching is
//! returned as a certificate. A permutation-enumeration oracle and the
//! Lipschitz homomorphic-extension check live here as well.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::assignment;
use crate::rat::Rat;
use crate::space::PointedSpace;
use crate::word::{letter_occurrences, word_combine, Sign, Word, WordError};

/// Hard cap on the padded matching size; beyond this the cubic solve is
/// no longer desk-scale.
pub const MATCHING_SIZE_CAP: u64 = 1024;

/// Default letter bound for [`brute_force_norm`].
pub const BRUTE_FORCE_DEFAULT_BOUND: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormError {
    Word(WordError),
    /// Brute-force oracle refused: the instance exceeds the letter bound.
    LettersExceedBound { letters: u64, bound: u64 },
    /// Matching instance beyond [`MATCHING_SIZE_CAP`].
    InstanceTooLarge { letters: u64, cap: u64 },
}

impl From<WordError> for NormError {
    fn from(e: WordError) -> Self {
        NormError::Word(e)
    }
}

impl fmt::Display for NormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormError::Word(e) => e.fmt(f),
            NormError::LettersExceedBound { letters, bound } => {
                write!(f, "brute-force oracle refused: {letters} letters exceed bound {bound}")
            }
            NormError::InstanceTooLarge { letters, cap } => {
                write!(f, "matching instance with {letters} letters exceeds cap {cap}")
            }
        }
    }
}

impl core::error::Error for NormError {}

/// An optimal padded matching realizing the Graev norm. Pairs are point
/// indices (the basepoint index stands for padding copies), listed with the
/// positive-side slots in order; among all optimal matchings the
/// lexicographically least pairing is chosen, so certificates are
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCertificate {
    pub pairs: Vec<(usize, usize)>,
    pub total_cost: Rat,
}

impl MatchingCertificate {
    /// Re-derives the cost from the pair list.
    pub fn recompute_cost(&self, space: &PointedSpace) -> Rat {
        self.pairs
            .iter()
            .map(|&(a, b)| space.dist(a, b).clone())
            .sum()
    }
}

fn padded_sides(space: &PointedSpace, w: &Word) -> (Vec<usize>, Vec<usize>) {
    let (mut left, mut right) = letter_occurrences(w);
    let star = space.basepoint();
    let (p, n) = (left.len(), right.len());
    left.extend(core::iter::repeat_n(star, n));
    right.extend(core::iter::repeat_n(star, p));
    (left, right)
}

/// The Graev norm `ρ̄(w)` together with an optimal matching certificate.
pub fn graev_norm(
    space: &PointedSpace,
    w: &Word,
) -> Result<(Rat, MatchingCertificate), NormError> {
    w.check_over(space)?;
    let letters = w.letter_count();
    if letters > MATCHING_SIZE_CAP {
        return Err(NormError::InstanceTooLarge { letters, cap: MATCHING_SIZE_CAP });
    }
    let (left, right) = padded_sides(space, w);
    if left.is_empty() {
        return Ok((
            Rat::zero(),
            MatchingCertificate { pairs: Vec::new(), total_cost: Rat::zero() },
        ));
    }
    let cost: Vec<Vec<Rat>> = left
        .iter()
        .map(|&a| right.iter().map(|&b| space.dist(a, b).clone()).collect())
        .collect();
    let solution = assignment::solve_lex_min(&cost);
    let pairs: Vec<(usize, usize)> = solution
        .col_for_row
        .iter()
        .enumerate()
        .map(|(i, &j)| (left[i], right[j]))
        .collect();
    let total = solution.total;
    Ok((total.clone(), MatchingCertificate { pairs, total_cost: total }))
}

/// Translation-invariant distance between two words: `ρ̄(u - v)`.
pub fn graev_distance(space: &PointedSpace, u: &Word, v: &Word) -> Result<Rat, NormError> {
    let diff = word_combine(space, u, v, Sign::Minus)?;
    Ok(graev_norm(space, &diff)?.0)
}

/// Independent oracle: enumerates every perfect matching of the padded
/// instance and returns the minimum cost. Refuses words with more than
/// `bound` letters rather than truncating.
pub fn brute_force_norm_bounded(
    space: &PointedSpace,
    w: &Word,
    bound: u64,
) -> Result<Rat, NormError> {
    w.check_over(space)?;
    let letters = w.letter_count();
    if letters > bound {
        return Err(NormError::LettersExceedBound { letters, bound });
    }
    let (left, right) = padded_sides(space, w);
    let n = left.len();
    if n == 0 {
        return Ok(Rat::zero());
    }
    let cost: Vec<Vec<Rat>> = left
        .iter()
        .map(|&a| right.iter().map(|&b| space.dist(a, b).clone()).collect())
        .collect();
    // Cost-based pruning is only sound for nonnegative entries; an invalid
    // space with negative distances still gets a full enumeration.
    let prune = cost.iter().all(|row| row.iter().all(|c| !c.is_negative()));
    let mut used = alloc::vec![false; n];
    let mut best: Option<Rat> = None;
    enumerate(&cost, 0, &Rat::zero(), &mut used, prune, &mut best);
    Ok(best.expect("at least one matching exists"))
}

/// [`brute_force_norm_bounded`] at the default bound.
pub fn brute_force_norm(space: &PointedSpace, w: &Word) -> Result<Rat, NormError> {
    brute_force_norm_bounded(space, w, BRUTE_FORCE_DEFAULT_BOUND)
}

fn enumerate(
    cost: &[Vec<Rat>],
    row: usize,
    partial: &Rat,
    used: &mut [bool],
    prune: bool,
    best: &mut Option<Rat>,
) {
    let n = cost.len();
    if row == n {
        if best.as_ref().is_none_or(|b| partial < b) {
            *best = Some(partial.clone());
        }
        return;
    }
    for j in 0..n {
        if used[j] {
            continue;
        }
        let next = partial + &cost[row][j];
        if prune {
            if let Some(b) = best.as_ref() {
                if &next >= b {
                    continue;
                }
            }
        }
        used[j] = true;
        enumerate(cost, row + 1, &next, used, prune, best);
        used[j] = false;
    }
}

/// Norm of the largest translation-invariant pseudometric dominated by all
/// anchor functions `x ↦ ρ(x, y) - ρ(*, y)`: the max over anchors `y` of
/// `|Σ c_i (ρ(x_i, y) - ρ(*, y))|`. Its restriction to point pairs is
/// exactly `ρ`, so it is a genuine competitor in the family the Graev norm
/// maximizes over and must stay `≤ ρ̄` on every word.
pub fn anchor_pseudometric_norm(space: &PointedSpace, w: &Word) -> Result<Rat, NormError> {
    w.check_over(space)?;
    let star = space.basepoint();
    let mut best = Rat::zero();
    for y in 0..space.len() {
        let mut sum = Rat::zero();
        for (i, c) in w.iter() {
            let f = space.dist(i, y) - space.dist(star, y);
            sum += Rat::from_integer(c.clone()) * f;
        }
        let value = sum.abs();
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    Word(WordError),
    Norm(NormError),
    /// `f` is not defined on every point, or rows have mixed dimensions.
    BadShape,
    /// `f(*)` must be the zero vector.
    BasepointNotZero,
    /// The map is not `C`-Lipschitz: `‖f(i) - f(j)‖∞ > C·ρ(i,j)`.
    NotLipschitz { i: usize, j: usize, gap: Box<Rat>, allowed: Box<Rat> },
}

impl From<WordError> for ExtensionError {
    fn from(e: WordError) -> Self {
        ExtensionError::Word(e)
    }
}

impl From<NormError> for ExtensionError {
    fn from(e: NormError) -> Self {
        ExtensionError::Norm(e)
    }
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::Word(e) => e.fmt(f),
            ExtensionError::Norm(e) => e.fmt(f),
            ExtensionError::BadShape => write!(f, "map rows missing or of mixed dimension"),
            ExtensionError::BasepointNotZero => write!(f, "map must send the basepoint to zero"),
            ExtensionError::NotLipschitz { i, j, gap, allowed } => write!(
                f,
                "map is not Lipschitz at ({i},{j}): gap {gap} exceeds allowed {allowed}"
            ),
        }
    }
}

impl core::error::Error for ExtensionError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionRow {
    pub word: Word,
    /// `‖ f̄(w) ‖∞` where `f̄(w) = Σ c_i f(x_i)`.
    pub value: Rat,
    /// `C · ρ̄(w)`.
    pub bound: Rat,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub rows: Vec<ExtensionRow>,
    pub all_ok: bool,
}

fn linf(v: &[Rat]) -> Rat {
    v.iter().map(Rat::abs).max().unwrap_or_else(Rat::zero)
}

/// Checks the homomorphic extension of a `C`-Lipschitz basepoint-preserving
/// map stays bounded by `C·ρ̄` on the sampled words. The Lipschitz
/// hypothesis (max-norm on vectors) is verified first and is a hard
/// precondition; bound violations on words are reported, since any such
/// violation falsifies the norm computation, not the hypothesis.
pub fn homomorphic_extension_check(
    space: &PointedSpace,
    f: &[Vec<Rat>],
    lipschitz_constant: &Rat,
    samples: &[Word],
) -> Result<ExtensionReport, ExtensionError> {
    let n = space.len();
    if f.len() != n {
        return Err(ExtensionError::BadShape);
    }
    let dim = f.first().map_or(0, Vec::len);
    if f.iter().any(|row| row.len() != dim) {
        return Err(ExtensionError::BadShape);
    }
    if !f[space.basepoint()].iter().all(Rat::is_zero) {
        return Err(ExtensionError::BasepointNotZero);
    }
    for i in 0..n {
        for j in i + 1..n {
            let diff: Vec<Rat> = (0..dim).map(|t| &f[i][t] - &f[j][t]).collect();
            let gap = linf(&diff);
            let allowed = lipschitz_constant * space.dist(i, j);
            if gap > allowed {
                return Err(ExtensionError::NotLipschitz {
                    i,
                    j,
                    gap: Box::new(gap),
                    allowed: Box::new(allowed),
                });
            }
        }
    }

    let mut rows = Vec::with_capacity(samples.len());
    let mut all_ok = true;
    for w in samples {
        w.check_over(space)?;
        let mut image = alloc::vec![Rat::zero(); dim];
        for (i, c) in w.iter() {
            let c = Rat::from_integer(c.clone());
            for t in 0..dim {
                image[t] += &c * &f[i][t];
            }
        }
        let value = linf(&image);
        let bound = lipschitz_constant * graev_norm(space, w)?.0;
        let ok = value <= bound;
        all_ok &= ok;
        rows.push(ExtensionRow { word: w.clone(), value, bound, ok });
    }
    Ok(ExtensionReport { rows, all_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use alloc::string::ToString;
    use alloc::vec;
    use num_bigint::BigInt;

    fn three_point_all_ones() -> PointedSpace {
        PointedSpace::discrete(3)
    }

    #[test]
    fn single_letter_matches_to_basepoint() {
        let s = three_point_all_ones();
        let (value, cert) = graev_norm(&s, &Word::singleton(1, 1)).unwrap();
        assert_eq!(value, rat_int(1));
        assert_eq!(cert.pairs, vec![(1, 0)]);
        assert_eq!(cert.recompute_cost(&s), value);
    }

    #[test]
    fn difference_of_points_gives_their_distance() {
        let s = PointedSpace::new(
            vec!["*".to_string(), "a".to_string(), "b".to_string()],
            0,
            vec![
                vec![rat_int(0), rat_int(2), rat_int(3)],
                vec![rat_int(2), rat_int(0), rat(5, 2)],
                vec![rat_int(3), rat(5, 2), rat_int(0)],
            ],
        )
        .unwrap();
        assert!(s.validate().is_ok());
        let w = Word::new([(1, BigInt::from(1)), (2, BigInt::from(-1))]);
        let (value, _) = graev_norm(&s, &w).unwrap();
        assert_eq!(value, rat(5, 2));
    }

    #[test]
    fn two_a_minus_b_on_discrete_space() {
        // Frozen from the enumeration oracle below.
        let s = three_point_all_ones();
        let w = Word::new([(1, BigInt::from(2)), (2, BigInt::from(-1))]);
        let oracle = brute_force_norm(&s, &w).unwrap();
        assert_eq!(oracle, rat_int(2));
        let (value, cert) = graev_norm(&s, &w).unwrap();
        assert_eq!(value, oracle);
        assert_eq!(cert.recompute_cost(&s), value);
    }

    #[test]
    fn zero_word_has_zero_norm_and_empty_certificate() {
        let s = three_point_all_ones();
        let (value, cert) = graev_norm(&s, &Word::zero()).unwrap();
        assert!(value.is_zero());
        assert!(cert.pairs.is_empty());
        assert_eq!(brute_force_norm(&s, &Word::zero()).unwrap(), rat_int(0));
    }

    #[test]
    fn distance_is_translation_invariant() {
        let s = three_point_all_ones();
        let a = Word::singleton(1, 1);
        let b = Word::singleton(2, 1);
        // d(u, u) = 0
        assert_eq!(graev_distance(&s, &a, &a).unwrap(), rat_int(0));
        // d(a, b) = rho(a, b)
        assert_eq!(graev_distance(&s, &a, &b).unwrap(), rat_int(1));
        // d(a + b, b) = rho(a, *)
        let ab = word_combine(&s, &a, &b, Sign::Plus).unwrap();
        assert_eq!(graev_distance(&s, &ab, &b).unwrap(), rat_int(1));
    }

    #[test]
    fn brute_force_refuses_oversized_words() {
        let s = three_point_all_ones();
        let w = Word::singleton(1, 11);
        assert!(matches!(
            brute_force_norm(&s, &w),
            Err(NormError::LettersExceedBound { letters: 11, bound: 10 })
        ));
    }

    #[test]
    fn anchor_norm_extends_rho_and_is_dominated() {
        let s = three_point_all_ones();
        for x in 1..3 {
            for y in 1..3 {
                if x == y {
                    continue;
                }
                let w = Word::new([(x, BigInt::from(1)), (y, BigInt::from(-1))]);
                assert_eq!(anchor_pseudometric_norm(&s, &w).unwrap(), *s.dist(x, y));
            }
        }
        let w = Word::new([(1, BigInt::from(2)), (2, BigInt::from(-1))]);
        let anchored = anchor_pseudometric_norm(&s, &w).unwrap();
        let (graev, _) = graev_norm(&s, &w).unwrap();
        assert!(anchored <= graev);
    }

    #[test]
    fn extension_check_zero_map_and_identity_map() {
        let s = three_point_all_ones();
        let zero_map = vec![vec![rat_int(0)]; 3];
        let words = vec![Word::singleton(1, 3), Word::zero()];
        let report =
            homomorphic_extension_check(&s, &zero_map, &rat_int(0), &words).unwrap();
        assert!(report.all_ok);

        // Two-point space, f(a) = rho(a, *): equality case.
        let s2 = PointedSpace::discrete(2);
        let f = vec![vec![rat_int(0)], vec![rat_int(1)]];
        let words = vec![Word::singleton(1, 4)];
        let report = homomorphic_extension_check(&s2, &f, &rat_int(1), &words).unwrap();
        assert!(report.all_ok);
        assert_eq!(report.rows[0].value, rat_int(4));
        assert_eq!(report.rows[0].bound, brute_force_norm(&s2, &words[0]).unwrap());
    }

    #[test]
    fn extension_check_rejects_non_lipschitz_maps() {
        let s = three_point_all_ones();
        let f = vec![vec![rat_int(0)], vec![rat_int(5)], vec![rat_int(0)]];
        let err = homomorphic_extension_check(&s, &f, &rat_int(1), &[]).unwrap_err();
        assert!(matches!(err, ExtensionError::NotLipschitz { i: 0, j: 1, .. }));

        let bad_base = vec![vec![rat_int(1)], vec![rat_int(0)], vec![rat_int(0)]];
        let err = homomorphic_extension_check(&s, &bad_base, &rat_int(1), &[]).unwrap_err();
        assert!(matches!(err, ExtensionError::BasepointNotZero));
    }
}
