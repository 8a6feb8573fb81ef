//! Property tests for the matching norm and the flow seminorm: the two
//! computations agree bit-exactly with each other and with the
//! permutation-enumeration oracle, and both satisfy their axioms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use graev_core::norm::{anchor_pseudometric_norm, brute_force_norm, graev_norm};
use graev_core::rat::Rat;
use graev_core::seminorm::{free_seminorm, seminorm_with_dual, tu_check};
use graev_core::word::{word_combine, word_to_lincomb, LinComb, Sign, Word};
use graev_core::PointedSpace;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a pseudometric space from raw off-diagonal twelfths via the
/// shortest-path closure, so the triangle inequality holds by construction.
fn build_space(n: usize, raw: &[i64]) -> PointedSpace {
    // Index of the unordered pair {i, j} (i < j) in row-major triangle order.
    let pair = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
    let mut dist: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Rat::zero(),
                    std::cmp::Ordering::Less => rat(raw[pair(i, j)], 12),
                    std::cmp::Ordering::Greater => rat(raw[pair(j, i)], 12),
                })
                .collect()
        })
        .collect();
    for via in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = &dist[i][via] + &dist[via][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    let names = (0..n)
        .map(|i| if i == 0 { "*".to_string() } else { format!("p{i}") })
        .collect();
    PointedSpace::new(names, 0, dist).expect("valid structure")
}

fn space_strategy(max_points: usize) -> impl Strategy<Value = PointedSpace> {
    (2..=max_points).prop_flat_map(|n| {
        prop::collection::vec(1i64..=24, n * (n - 1) / 2)
            .prop_map(move |raw| build_space(n, &raw))
    })
}

/// Clamps raw coefficients to at most `max_letters` total letters.
fn build_word(space: &PointedSpace, raw: &[i64], max_letters: u64) -> Word {
    let mut budget = max_letters as i64;
    let mut entries = Vec::new();
    for (offset, &c) in raw.iter().enumerate() {
        let point = 1 + offset;
        if point >= space.len() || budget == 0 {
            break;
        }
        let clamped = c.clamp(-budget, budget);
        budget -= clamped.abs();
        if clamped != 0 {
            entries.push((point, BigInt::from(clamped)));
        }
    }
    Word::new(entries)
}

fn space_and_words(
    max_points: usize,
    max_letters: u64,
) -> impl Strategy<Value = (PointedSpace, Word, Word)> {
    space_strategy(max_points).prop_flat_map(move |space| {
        let coeffs = prop::collection::vec(-3i64..=3, max_points - 1);
        (Just(space), coeffs.clone(), coeffs).prop_map(move |(space, raw_u, raw_v)| {
            let u = build_word(&space, &raw_u, max_letters);
            let v = build_word(&space, &raw_v, max_letters);
            (space, u, v)
        })
    })
}

proptest! {
    /// The headline equality: matching optimum = flow optimum = oracle,
    /// with an exact dual witness on the flow side.
    #[test]
    fn matching_equals_flow_equals_oracle((space, word, _) in space_and_words(5, 6)) {
        let report = tu_check(&space, &word).unwrap();
        prop_assert!(report.seminorm_le_graev);
        prop_assert!(report.equal, "matching {} vs flow {}",
            report.graev_value, report.seminorm_value);
        let oracle = brute_force_norm(&space, &word).unwrap();
        prop_assert_eq!(&oracle, &report.graev_value);

        let v = word_to_lincomb(&word);
        prop_assert!(report.flow.verify(&space, &v));
        prop_assert!(report.flow.is_integral());
        prop_assert!(report.dual.is_feasible(&space));
        prop_assert_eq!(report.dual.objective(&v), report.seminorm_value);
        prop_assert_eq!(report.matching.recompute_cost(&space), report.graev_value);
    }

    #[test]
    fn norm_axioms((space, u, v) in space_and_words(5, 4)) {
        let (nu, _) = graev_norm(&space, &u).unwrap();
        let (nv, _) = graev_norm(&space, &v).unwrap();
        prop_assert!(!nu.is_negative());
        let (nneg, _) = graev_norm(&space, &u.neg()).unwrap();
        prop_assert_eq!(&nneg, &nu);
        let sum = word_combine(&space, &u, &v, Sign::Plus).unwrap();
        let (nsum, _) = graev_norm(&space, &sum).unwrap();
        prop_assert!(nsum <= &nu + &nv);
    }

    /// Any translation-invariant pseudometric extending the ground metric
    /// stays below the Graev norm; the anchored construction is one.
    #[test]
    fn anchored_competitor_is_dominated((space, w, _) in space_and_words(5, 6)) {
        let anchored = anchor_pseudometric_norm(&space, &w).unwrap();
        let (graev, _) = graev_norm(&space, &w).unwrap();
        prop_assert!(anchored <= graev);
    }

    /// Group laws and the additive inclusion into the rational span.
    #[test]
    fn word_algebra((space, u, v) in space_and_words(5, 4)) {
        let uv = word_combine(&space, &u, &v, Sign::Plus).unwrap();
        let vu = word_combine(&space, &v, &u, Sign::Plus).unwrap();
        prop_assert_eq!(&uv, &vu);
        let cancel = word_combine(&space, &u, &u, Sign::Minus).unwrap();
        prop_assert!(cancel.is_zero());
        let rebuilt = Word::new(u.iter().map(|(i, c)| (i, c.clone())));
        prop_assert_eq!(&rebuilt, &u);
        let lhs = word_to_lincomb(&uv);
        let rhs = word_to_lincomb(&u).add(&word_to_lincomb(&v));
        prop_assert_eq!(lhs, rhs);
    }

    /// Word distance is the seminorm of the difference in the span
    /// (the isometric-embedding property).
    #[test]
    fn words_embed_isometrically((space, u, v) in space_and_words(4, 3)) {
        let diff = word_combine(&space, &u, &v, Sign::Minus).unwrap();
        let (graev, _) = graev_norm(&space, &diff).unwrap();
        let (semi, _) = free_seminorm(&space, &word_to_lincomb(&diff)).unwrap();
        prop_assert_eq!(graev, semi);
    }

    /// Seminorm axioms on rational combinations, including absolute
    /// homogeneity with a rational scalar.
    #[test]
    fn seminorm_axioms(
        (space, u, v) in space_and_words(5, 4),
        lambda_numer in -8i64..=8,
    ) {
        let vu = word_to_lincomb(&u);
        let vv = word_to_lincomb(&v).scale(&rat(1, 3));
        let lambda = rat(lambda_numer, 4);

        let (pu, _) = free_seminorm(&space, &vu).unwrap();
        let (pv, _) = free_seminorm(&space, &vv).unwrap();
        prop_assert!(!pu.is_negative());
        let (pscaled, _) = free_seminorm(&space, &vu.scale(&lambda)).unwrap();
        prop_assert_eq!(pscaled, lambda.abs() * &pu);
        let (psum, _) = free_seminorm(&space, &vu.add(&vv)).unwrap();
        prop_assert!(psum <= &pu + &pv);
    }

    /// The flow solver on rational inputs against a fully independent
    /// route: absolute homogeneity scales the combination to an integer
    /// word, whose norm the permutation-enumeration oracle computes.
    #[test]
    fn rational_seminorm_agrees_with_scaled_enumeration((space, u, _) in space_and_words(4, 6)) {
        let v = word_to_lincomb(&u).scale(&rat(1, 3));
        let (p, _) = free_seminorm(&space, &v).unwrap();
        let oracle = brute_force_norm(&space, &u).unwrap();
        prop_assert_eq!(p * rat(3, 1), oracle);
    }

    /// Weak duality holds for every feasible witness, not just the optimum:
    /// shifting the optimal witness keeps it feasible only if it stays
    /// within the Lipschitz bound, and clamping preserves weak duality.
    #[test]
    fn weak_duality((space, u, _) in space_and_words(5, 5)) {
        let v = word_to_lincomb(&u);
        let (value, _, dual) = seminorm_with_dual(&space, &v).unwrap();
        // The zero witness is always feasible.
        let zero = graev_core::seminorm::DualWitness {
            values: vec![Rat::zero(); space.len()],
        };
        prop_assert!(zero.is_feasible(&space));
        prop_assert!(zero.objective(&v) <= value);
        // Negating the optimal witness stays feasible and cannot beat it.
        let negated = graev_core::seminorm::DualWitness {
            values: dual.values.iter().map(|x| -x).collect(),
        };
        prop_assert!(negated.is_feasible(&space));
        prop_assert!(negated.objective(&v) <= value);
    }
}

#[test]
fn frozen_examples_from_the_enumeration_oracle() {
    // Oracle-computed values on the all-ones space, frozen.
    let space = PointedSpace::discrete(3);
    let cases: Vec<(Word, Rat)> = vec![
        (Word::singleton(1, 1), rat(1, 1)),
        (Word::new([(1, BigInt::one()), (2, -BigInt::one())]), rat(1, 1)),
        (Word::new([(1, BigInt::from(2)), (2, -BigInt::one())]), rat(2, 1)),
        (Word::new([(1, BigInt::from(3))]), rat(3, 1)),
        (Word::new([(1, BigInt::from(2)), (2, BigInt::from(2))]), rat(4, 1)),
    ];
    for (word, expected) in cases {
        let oracle = brute_force_norm(&space, &word).unwrap();
        assert_eq!(oracle, expected, "oracle disagrees on {word:?}");
        let (value, _) = graev_norm(&space, &word).unwrap();
        assert_eq!(value, expected);
        let (semi, _) = free_seminorm(&space, &word_to_lincomb(&word)).unwrap();
        assert_eq!(semi, expected);
    }
}

#[test]
fn rational_coefficients_route_through_the_flow() {
    // Half a letter: absolute homogeneity pins the value.
    let space = PointedSpace::discrete(2);
    let v = LinComb::singleton(1, rat(1, 2));
    let (value, cert) = free_seminorm(&space, &v).unwrap();
    assert_eq!(value, rat(1, 2));
    assert!(cert.verify(&space, &v));
}
