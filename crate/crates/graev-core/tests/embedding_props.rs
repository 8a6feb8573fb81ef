//! Property tests for the lattice-quotient embedding: separation from
//! arbitrary sample points, exactness of the quotient distance for close
//! pairs, and the circle structure of generator images.

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use graev_core::embedding::{
    circle_period_check, quotient_distance_bounds, separation_check, tilde_distance,
    AmbientModel, AmbientVector, EMetric, LatticeElement,
};
use graev_core::rat::Rat;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn model() -> AmbientModel {
    AmbientModel::new(
        2,
        vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 2), rat(1, 3)],
        ],
        3,
        EMetric::L1,
    )
    .unwrap()
}

fn lattice_strategy() -> impl Strategy<Value = LatticeElement> {
    prop::collection::vec(-3i64..=3, 9).prop_map(|ks| {
        let mut entries = Vec::new();
        let mut it = ks.into_iter();
        for m in 1..=3u32 {
            for n in 1..=3u32 {
                entries.push(((m, n), BigInt::from(it.next().unwrap())));
            }
        }
        LatticeElement::new(entries)
    })
}

fn e_vector_strategy() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-12i64..=12, 1i64..=12), 2)
        .prop_map(|cs| cs.into_iter().map(|(n, d)| rat(n, d)).collect())
}

/// Vectors with coordinates in [-1/4, 1/4], so random pairs usually sit
/// below the unit separation scale.
fn small_e_vector_strategy() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(-3i64..=3, 2)
        .prop_map(|cs| cs.into_iter().map(|n| rat(n, 12)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Every nonzero bounded lattice element stays at distance >= 1 from
    /// every point of E, via the exact integer lower bound.
    #[test]
    fn separation_from_arbitrary_points(k in lattice_strategy(), y in e_vector_strategy()) {
        prop_assume!(!k.is_zero());
        let model = model();
        let report = separation_check(&model, &k, &y).unwrap();
        prop_assert!(report.l2_norm_sq >= BigInt::one());
        prop_assert!(report.total_ge_one);
    }

    /// Quotient distance of two E-points below scale one equals their
    /// direct distance, certified.
    #[test]
    fn quotient_is_isometric_below_scale_one(
        y1 in small_e_vector_strategy(),
        y2 in small_e_vector_strategy(),
    ) {
        let model = model();
        let direct = model.e_metric.distance(&y1, &y2);
        prop_assume!(direct < Rat::one());
        let bound = quotient_distance_bounds(
            &model,
            &AmbientVector::from_e(y1),
            &AmbientVector::from_e(y2),
            2,
        )
        .unwrap();
        prop_assert!(bound.certified);
        prop_assert_eq!(bound.upper.exact_value(), Some(direct));
        prop_assert!(bound.minimizer.is_zero());
    }

    /// The tilde metric is symmetric and satisfies the triangle inequality
    /// on lattice vectors (exact, via the a+sqrt(s) order).
    #[test]
    fn tilde_metric_axioms(k1 in lattice_strategy(), k2 in lattice_strategy()) {
        let model = model();
        let v1 = k1.vector(&model).unwrap();
        let v2 = k2.vector(&model).unwrap();
        let zero = AmbientVector::zero(2);
        let d12 = tilde_distance(&model, &v1, &v2).unwrap();
        let d21 = tilde_distance(&model, &v2, &v1).unwrap();
        prop_assert_eq!(&d12.value, &d21.value);
        let d10 = tilde_distance(&model, &v1, &zero).unwrap();
        let d02 = tilde_distance(&model, &zero, &v2).unwrap();
        // d(v1,v2) <= d(v1,0) + d(0,v2): compare enclosures exactly via
        // the decomposition (e-parts add, l2 parts obey Minkowski).
        let lhs = d12.value.enclosure(Default::default());
        let rhs = d10.value.enclosure(Default::default()).add(&d02.value.enclosure(Default::default()));
        prop_assert!(lhs.lo() <= rhs.hi());
    }
}

#[test]
fn period_checks_pass_on_every_generator() {
    let model = model();
    for (m, n) in model.index_pairs() {
        let report = circle_period_check(&model, m, n, 3).unwrap();
        assert!(report.ok, "period check failed at ({m},{n})");
    }
}

#[test]
fn weighted_metric_variant_reruns_the_same_checks() {
    // A second translation-invariant metric on E: the checks hold
    // unchanged since every bound is driven by the l2 part.
    let model = AmbientModel::new(
        2,
        vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]],
        2,
        EMetric::WeightedL1(vec![rat(2, 1), rat(1, 2)]),
    )
    .unwrap();
    assert!(model.metric_axioms_hold());
    for (m, n) in model.index_pairs() {
        assert_eq!(
            graev_core::embedding::density_witness(&model, m, n).unwrap(),
            rat(1, n as i64)
        );
    }
    let k = LatticeElement::singleton(1, 2, -2);
    let report = separation_check(&model, &k, &[rat(1, 3), rat(-1, 2)]).unwrap();
    assert!(report.total_ge_one);
}
