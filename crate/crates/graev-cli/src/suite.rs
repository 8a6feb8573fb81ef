//! Seeded property sweeps over random instances, assembled into the
//! `suite` subcommand report. The acceptance tests drive the same sweep
//! functions at their own trial counts, so a green suite and a green
//! acceptance run exercise identical code paths.

use anyhow::Result;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use graev_core::embedding::{
    circle_period_check, density_witness, lattice_min_norm, quotient_distance_bounds,
    separation_check, separation_exhaustive, AmbientModel, AmbientVector, LatticeElement,
};
use graev_core::interval::Precision;
use graev_core::norm::{
    anchor_pseudometric_norm, brute_force_norm, graev_distance, graev_norm,
    homomorphic_extension_check,
};
use graev_core::rat::{format_rat, Rat};
use graev_core::rolewicz::{
    approximate_target, approximate_target_bounded, approximation_margin, construct_generator,
    truncation_floor, verify_certificate, ConstructParams, GeneratorCertificate, OmegaTorusModel,
};
use graev_core::seminorm::{free_seminorm, tu_check};
use graev_core::torus::{
    circle_distance, covering_radius_circle, independence_check, kronecker_search, net_check,
    Angle, AngleCtx, NetOutcome, TorusMetric, TorusPoint,
};
use graev_core::word::{word_combine, word_to_lincomb, Sign, Word};
use graev_core::PointedSpace;

use crate::fixtures;
use crate::json::digest;
use crate::report::{Check, InputDigest, RunReport};
use crate::sampling::Sampler;

/// Outcome of one sweep: how many instances ran and the first few failure
/// descriptions (empty means the property held throughout).
#[derive(Debug, Clone, Default)]
pub struct Sweep {
    pub instances: u64,
    pub failures: Vec<String>,
}

impl Sweep {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, failure: String) {
        if self.failures.len() < 8 {
            self.failures.push(failure);
        }
    }

    fn to_check(&self, name: &str, what: &str) -> Check {
        if self.ok() {
            Check::pass(name, format!("{what} held on {} instances", self.instances))
        } else {
            Check::fail(
                name,
                format!("{} failures out of {}: {}", self.failures.len(), self.instances, self.failures.join("; ")),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Graev norm / free seminorm sweeps

/// The headline sweep: on random spaces and words, the matching norm, the
/// flow seminorm, and the enumeration oracle agree exactly, and every flow
/// solve yields an exact 1-Lipschitz dual witness. One sweep backs several
/// acceptance criteria, so the dual checks are included here.
pub fn tu_sweep(
    sampler: &mut Sampler,
    trials: u64,
    max_points: usize,
    max_letters: u64,
) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(max_points, 12);
        let word = sampler.word(&space, max_letters, 3);
        sweep.instances += 1;

        let report = tu_check(&space, &word)?;
        if !report.seminorm_le_graev {
            sweep.record(format!(
                "seminorm {} exceeds graev {}",
                format_rat(&report.seminorm_value),
                format_rat(&report.graev_value)
            ));
            continue;
        }
        if !report.equal {
            sweep.record(format!(
                "graev {} != seminorm {}",
                format_rat(&report.graev_value),
                format_rat(&report.seminorm_value)
            ));
            continue;
        }
        let oracle = brute_force_norm(&space, &word)?;
        if oracle != report.graev_value {
            sweep.record(format!(
                "oracle {} != graev {}",
                format_rat(&oracle),
                format_rat(&report.graev_value)
            ));
            continue;
        }
        // Certificate self-consistency.
        if report.matching.recompute_cost(&space) != report.matching.total_cost
            || report.matching.total_cost != report.graev_value
        {
            sweep.record("matching certificate cost mismatch".to_string());
            continue;
        }
        let v = word_to_lincomb(&word);
        if !report.flow.verify(&space, &v) {
            sweep.record("flow certificate failed verification".to_string());
            continue;
        }
        if !report.flow.is_integral() {
            sweep.record("integer word produced a fractional optimal flow".to_string());
            continue;
        }
        // Exact strong duality and dual feasibility.
        if !report.dual.is_feasible(&space) {
            sweep.record("dual witness infeasible".to_string());
            continue;
        }
        if report.dual.objective(&v) != report.seminorm_value {
            sweep.record("dual objective != seminorm value".to_string());
        }
    }
    Ok(sweep)
}

/// Norm restriction to point differences: `ρ̄(x - y) = ρ(x, y)` and
/// `p(x - y) = ρ(x, y)` for every point pair of every fixture space.
pub fn extension_equality() -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for (name, space) in fixtures::spaces()? {
        let star = space.basepoint();
        for x in 0..space.len() {
            for y in 0..space.len() {
                if x == y || x == star || y == star {
                    continue;
                }
                sweep.instances += 1;
                let w = Word::new([(x, BigInt::one()), (y, -BigInt::one())]);
                let (graev, _) = graev_norm(&space, &w)?;
                let (semi, _) = free_seminorm(&space, &word_to_lincomb(&w))?;
                if &graev != space.dist(x, y) || &semi != space.dist(x, y) {
                    sweep.record(format!("{name}: pair ({x},{y})"));
                }
            }
            // Pairs through the basepoint are single-letter words.
            if x != star {
                sweep.instances += 1;
                let w = Word::new([(x, BigInt::one())]);
                let (graev, _) = graev_norm(&space, &w)?;
                let (semi, _) = free_seminorm(&space, &word_to_lincomb(&w))?;
                if &graev != space.dist(x, star) || &semi != space.dist(x, star) {
                    sweep.record(format!("{name}: pair ({x},*)"));
                }
            }
        }
    }
    Ok(sweep)
}

/// Norm axioms for the matching norm on random instances.
pub fn norm_axioms(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(5, 12);
        let u = sampler.word(&space, 4, 3);
        let v = sampler.word(&space, 4, 3);
        sweep.instances += 1;

        let (nu, _) = graev_norm(&space, &u)?;
        let (nv, _) = graev_norm(&space, &v)?;
        let (nneg, _) = graev_norm(&space, &u.neg())?;
        let sum = word_combine(&space, &u, &v, Sign::Plus)?;
        let (nsum, _) = graev_norm(&space, &sum)?;
        if nu.is_negative() {
            sweep.record("negative norm".into());
        }
        if nneg != nu {
            sweep.record("norm not symmetric under negation".into());
        }
        if nsum > &nu + &nv {
            sweep.record("subadditivity violated".into());
        }
        let (zero, _) = graev_norm(&space, &Word::zero())?;
        if !zero.is_zero() {
            sweep.record("norm of zero word nonzero".into());
        }
    }
    Ok(sweep)
}

/// Every translation-invariant pseudometric extending the ground metric is
/// dominated by the Graev norm; the anchored max-construction is such a
/// competitor.
pub fn maximality(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(5, 12);
        let w = sampler.word(&space, 6, 3);
        sweep.instances += 1;
        let anchored = anchor_pseudometric_norm(&space, &w)?;
        let (graev, _) = graev_norm(&space, &w)?;
        if anchored > graev {
            sweep.record(format!(
                "anchored {} exceeds graev {}",
                format_rat(&anchored),
                format_rat(&graev)
            ));
        }
    }
    Ok(sweep)
}

/// Homogeneity and subadditivity of the flow seminorm on random rational
/// combinations.
pub fn seminorm_axioms(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(5, 12);
        let v = sampler.lincomb(&space, 4, 6);
        let u = sampler.lincomb(&space, 4, 6);
        sweep.instances += 1;

        let (pv, _) = free_seminorm(&space, &v)?;
        let lambda = Rat::new(BigInt::from(sampler.range_i64(-8, 8)), BigInt::from(4));
        let (pscaled, _) = free_seminorm(&space, &v.scale(&lambda))?;
        if pscaled != lambda.abs() * &pv {
            sweep.record("homogeneity violated".into());
        }
        let (pu, _) = free_seminorm(&space, &u)?;
        let (psum, _) = free_seminorm(&space, &u.add(&v))?;
        if psum > &pu + &pv {
            sweep.record("seminorm subadditivity violated".into());
        }
    }
    Ok(sweep)
}

/// The group embeds isometrically: word distance equals the seminorm of
/// the difference in the rational span.
pub fn isometric_embedding(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(5, 12);
        let u = sampler.word(&space, 3, 3);
        let v = sampler.word(&space, 3, 3);
        sweep.instances += 1;
        let d = graev_distance(&space, &u, &v)?;
        let diff = word_combine(&space, &u, &v, Sign::Minus)?;
        let (p, _) = free_seminorm(&space, &word_to_lincomb(&diff))?;
        if d != p {
            sweep.record(format!("distance {} != seminorm {}", format_rat(&d), format_rat(&p)));
        }
    }
    Ok(sweep)
}

/// Random 1-Lipschitz basepoint-preserving maps never beat the norm bound
/// on sampled words.
pub fn lipschitz_extension(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(4, 12);
        let f = sampler.lipschitz_map(&space, 2);
        let words: Vec<Word> = (0..4).map(|_| sampler.word(&space, 6, 3)).collect();
        sweep.instances += 1;
        let report = homomorphic_extension_check(&space, &f, &Rat::one(), &words)?;
        if !report.all_ok {
            let bad = report.rows.iter().find(|r| !r.ok).expect("some row failed");
            sweep.record(format!(
                "extension bound violated: value {} > bound {}",
                format_rat(&bad.value),
                format_rat(&bad.bound)
            ));
        }
    }
    Ok(sweep)
}

/// Word algebra: commutativity, associativity, neutral element, reduction
/// idempotence, and the additive inclusion into the rational span.
pub fn word_algebra(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let space = sampler.space(5, 12);
        let u = sampler.word(&space, 4, 3);
        let v = sampler.word(&space, 4, 3);
        let w = sampler.word(&space, 4, 3);
        sweep.instances += 1;

        let uv = word_combine(&space, &u, &v, Sign::Plus)?;
        let vu = word_combine(&space, &v, &u, Sign::Plus)?;
        if uv != vu {
            sweep.record("commutativity violated".into());
        }
        let uv_w = word_combine(&space, &uv, &w, Sign::Plus)?;
        let vw = word_combine(&space, &v, &w, Sign::Plus)?;
        let u_vw = word_combine(&space, &u, &vw, Sign::Plus)?;
        if uv_w != u_vw {
            sweep.record("associativity violated".into());
        }
        if word_combine(&space, &u, &Word::zero(), Sign::Plus)? != u {
            sweep.record("zero word not neutral".into());
        }
        let rebuilt = Word::new(u.iter().map(|(i, c)| (i, c.clone())));
        if rebuilt != u {
            sweep.record("reduction not idempotent".into());
        }
        let lhs = word_to_lincomb(&uv);
        let rhs = word_to_lincomb(&u).add(&word_to_lincomb(&v));
        if lhs != rhs {
            sweep.record("span inclusion not additive".into());
        }
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Torus sweeps

/// Circle metric sanity on sampled triples, within certified enclosures.
pub fn circle_metric(precision: Precision, sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let ctx = AngleCtx::new(precision);
    let mut sweep = Sweep::default();
    let sqrt2 = Angle::scaled_symbol(1, &Rat::one());
    for _ in 0..trials {
        let a = sample_angle(sampler, &sqrt2);
        let b = sample_angle(sampler, &sqrt2);
        let c = sample_angle(sampler, &sqrt2);
        sweep.instances += 1;

        let dab = circle_distance(&ctx, &a, &b);
        let dba = circle_distance(&ctx, &b, &a);
        if dab != dba {
            sweep.record("asymmetric circle distance".into());
        }
        let dac = circle_distance(&ctx, &a, &c);
        let dcb = circle_distance(&ctx, &c, &b);
        // Sound triangle check on enclosures.
        if *dab.lo() > dac.hi() + dcb.hi() {
            sweep.record("triangle inequality violated".into());
        }
        if dab.lo().is_negative() || *dab.hi() > Rat::new(BigInt::one(), BigInt::from(2)) {
            sweep.record("distance out of range".into());
        }
        let daa = circle_distance(&ctx, &a, &a);
        if !daa.hi().is_zero() {
            sweep.record("self distance nonzero".into());
        }
    }
    Ok(sweep)
}

fn sample_angle(sampler: &mut Sampler, irrational: &Angle) -> Angle {
    let q = sampler.rational_in_unit(16);
    if sampler.range(0, 1) == 0 {
        Angle::from_rat(&q)
    } else {
        irrational.scale(&q).add(&Angle::from_rat(&sampler.rational_in_unit(16)))
    }
}

/// Independence decisions are stable under permutation and under shifting
/// an angle by a rational.
pub fn independence_consistency(sampler: &mut Sampler, trials: u64) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for _ in 0..trials {
        let a = Angle::scaled_symbol(1, &sampler.rational_in_unit(8));
        let b = Angle::scaled_symbol(2, &sampler.rational_in_unit(8));
        sweep.instances += 1;

        let fwd = independence_check(&[a.clone(), b.clone()]).is_independent();
        let rev = independence_check(&[b.clone(), a.clone()]).is_independent();
        if fwd != rev {
            sweep.record("independence not permutation invariant".into());
        }
        let shifted = a.add(&Angle::from_rat(&sampler.rational_in_unit(8)));
        let with_shift = independence_check(&[shifted, b.clone()]).is_independent();
        if fwd != with_shift {
            sweep.record("independence changed under rational shift".into());
        }
    }
    Ok(sweep)
}

/// Fixed desk cases for the power scan: exact rational hits and misses,
/// plus density of an irrational rotation at shrinking radii.
pub fn kronecker_cases(precision: Precision) -> Result<Sweep> {
    let ctx = AngleCtx::new(precision);
    let mut sweep = Sweep::default();

    let quarter = TorusPoint::from_rats(&[Rat::new(BigInt::one(), BigInt::from(4))]);
    let half = TorusPoint::from_rats(&[Rat::new(BigInt::one(), BigInt::from(2))]);
    let third = TorusPoint::from_rats(&[Rat::new(BigInt::one(), BigInt::from(3))]);
    let eps = Rat::new(BigInt::one(), BigInt::from(100));

    sweep.instances += 1;
    if kronecker_search(&ctx, &quarter, &half, &eps, 10)? != Some(2) {
        sweep.record("2*(1/4) should hit 1/2".into());
    }
    sweep.instances += 1;
    if kronecker_search(&ctx, &quarter, &third, &eps, 1000)?.is_some() {
        sweep.record("orbit of 1/4 cannot approach 1/3".into());
    }

    // Irrational rotation reaches zero at every radius, and in the
    // 2-torus jointly with a second independent angle.
    let sqrt2 = TorusPoint::new(vec![Angle::scaled_symbol(1, &Rat::one())]);
    let origin1 = TorusPoint::zero(1);
    for denom in [5i64, 10, 20] {
        sweep.instances += 1;
        let eps = Rat::new(BigInt::one(), BigInt::from(denom));
        if kronecker_search(&ctx, &sqrt2, &origin1, &eps, 5000)?.is_none() {
            sweep.record(format!("no power of sqrt2 within 1/{denom} of 0"));
        }
    }
    sweep.instances += 1;
    let pair = TorusPoint::new(vec![
        Angle::scaled_symbol(1, &Rat::one()),
        Angle::scaled_symbol(2, &Rat::one()),
    ]);
    let target = TorusPoint::from_rats(&[
        Rat::new(BigInt::one(), BigInt::from(3)),
        Rat::new(BigInt::from(2), BigInt::from(3)),
    ]);
    let eps = Rat::new(BigInt::one(), BigInt::from(8));
    if kronecker_search(&ctx, &pair, &target, &eps, 20_000)?.is_none() {
        sweep.record("joint rotation failed to reach a 2-torus target".into());
    }
    Ok(sweep)
}

/// Grid net certification agrees with the exact sort-and-max-gap covering
/// radius on random circle orbit prefixes: claims comfortably above the
/// radius certify, claims below it refute.
pub fn net_oracle_agreement(
    precision: Precision,
    sampler: &mut Sampler,
    trials: u64,
) -> Result<Sweep> {
    let ctx = AngleCtx::new(precision);
    let mut sweep = Sweep::default();
    let margin = Rat::new(BigInt::one(), BigInt::from(64));
    let grid_step = Rat::new(BigInt::one(), BigInt::from(2048));
    for _ in 0..trials {
        let base = if sampler.range(0, 3) == 0 {
            // Rational rotations give exactly periodic orbits.
            Angle::from_rat(&Rat::new(
                BigInt::from(sampler.range(1, 7)),
                BigInt::from(8),
            ))
        } else {
            Angle::scaled_symbol(
                1,
                &Rat::new(BigInt::from(sampler.range(1, 15)), BigInt::from(16)),
            )
        };
        let n = sampler.range(3, 24);
        let orbit: Vec<Angle> = (1..=n).map(|m| base.scale_int(m)).collect();
        let radius = covering_radius_circle(&ctx, &orbit)?;
        let points: Vec<TorusPoint> =
            orbit.iter().map(|a| TorusPoint::new(vec![a.clone()])).collect();
        sweep.instances += 1;

        let eps_above = radius.hi() + &margin;
        match net_check(&ctx, &points, 1, &eps_above, &grid_step, &TorusMetric::Max)? {
            NetOutcome::Certified => {}
            other => sweep.record(format!("eps above radius not certified: {other:?}")),
        }
        let eps_below = radius.lo() - &margin;
        if eps_below.is_positive() {
            match net_check(&ctx, &points, 1, &eps_below, &grid_step, &TorusMetric::Max)? {
                NetOutcome::Refuted { .. } => {}
                other => sweep.record(format!("eps below radius not refuted: {other:?}")),
            }
        }
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Rolewicz sweeps

pub struct RolewiczArtifacts {
    pub model: OmegaTorusModel,
    pub certificate: GeneratorCertificate,
}

/// Construct-and-verify roundtrip at the given depths; returns the last
/// depth's artifacts for further target tests.
pub fn rolewicz_roundtrip(
    precision: Precision,
    depths: &[usize],
    grid_resolution: u64,
) -> Result<(Sweep, Option<RolewiczArtifacts>)> {
    let mut sweep = Sweep::default();
    let mut last = None;
    for &depth in depths {
        sweep.instances += 1;
        let model = OmegaTorusModel::with_default_weights(depth).map_err(|e| anyhow::anyhow!("{e}"))?;
        let params = ConstructParams { grid_resolution, precision, ..Default::default() };
        let cert = match construct_generator(&model, &params) {
            Ok(c) => c,
            Err(e) => {
                sweep.record(format!("depth {depth}: construction failed: {e}"));
                continue;
            }
        };
        if !cert.reports.all_ok() {
            sweep.record(format!("depth {depth}: construction reports not all ok"));
            continue;
        }
        if cert.power_counts.windows(2).any(|w| w[0] > w[1]) {
            sweep.record(format!("depth {depth}: power counts not monotone"));
        }
        match verify_certificate(&model, &cert, precision) {
            Ok(report) if report.all_ok => {
                if !report.independence.is_independent() {
                    sweep.record(format!("depth {depth}: coordinates not independent"));
                }
            }
            Ok(_) => sweep.record(format!("depth {depth}: verification failed")),
            Err(e) => sweep.record(format!("depth {depth}: verification error: {e}")),
        }
        last = Some(RolewiczArtifacts { model, certificate: cert });
    }
    Ok((sweep, last))
}

/// Tampered certificates must be caught: a power count of one cannot form
/// a fine net, and a rational coordinate trips the independence flag.
pub fn rolewicz_tamper(precision: Precision, artifacts: &RolewiczArtifacts) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    let model = &artifacts.model;
    let cert = &artifacts.certificate;
    if model.depth() >= 2 {
        sweep.instances += 1;
        let mut tampered = cert.clone();
        let last = tampered.power_counts.len() - 1;
        tampered.power_counts[last] = 1;
        let report = verify_certificate(model, &tampered, precision)?;
        let refuted = matches!(
            report.conditions.condition2[last].outcome,
            NetOutcome::Refuted { .. }
        );
        if report.all_ok || !refuted {
            sweep.record("shrunk power count was not refuted with a witness".into());
        }

        sweep.instances += 1;
        let mut rationalized = cert.clone();
        rationalized.coordinates[last] =
            Angle::from_rat(&Rat::new(BigInt::one(), BigInt::from(3)));
        let report = verify_certificate(model, &rationalized, precision)?;
        if report.independence.is_independent() {
            sweep.record("rational coordinate not flagged as dependent".into());
        }
    }
    Ok(sweep)
}

/// Random grid targets of the full torus are approximated by a power
/// within the truncation-floor radius, and level targets within the level
/// radius plus the modeled tail, by a power within that level's count.
pub fn rolewicz_targets(
    precision: Precision,
    artifacts: &RolewiczArtifacts,
    sampler: &mut Sampler,
    trials: u64,
) -> Result<Sweep> {
    let model = &artifacts.model;
    let cert = &artifacts.certificate;
    let depth = model.depth();
    let mut sweep = Sweep::default();
    let eps_full = truncation_floor(model) + Rat::new(BigInt::one(), BigInt::from(256));

    for _ in 0..trials {
        sweep.instances += 1;
        let coords: Vec<Rat> = (0..depth)
            .map(|_| Rat::new(BigInt::from(sampler.range(0, 15)), BigInt::from(16)))
            .collect();
        let z = TorusPoint::from_rats(&coords);
        match approximate_target(model, cert, &z, &eps_full, precision) {
            Ok(hit) => {
                if hit.power > *cert.power_counts.last().expect("depth >= 1") {
                    sweep.record("approximating power beyond the certified count".into());
                }
            }
            Err(e) => sweep.record(format!("approximation failed: {e}")),
        }
    }

    // Level targets: zero beyond the level, tail bound Σ w_l/2 added.
    for level in 1..depth {
        sweep.instances += 1;
        let mut coords = vec![Rat::zero(); depth];
        for c in coords.iter_mut().take(level) {
            *c = Rat::new(BigInt::from(sampler.range(0, 7)), BigInt::from(8));
        }
        let z = TorusPoint::from_rats(&coords);
        let tail: Rat = model.weights()[level..]
            .iter()
            .map(|w| w / Rat::from_integer(BigInt::from(2)))
            .sum();
        let eps = &model.radii()[level - 1] + tail + approximation_margin();
        match approximate_target_bounded(
            model,
            cert,
            &z,
            &eps,
            precision,
            cert.power_counts[level - 1],
        )? {
            Some(_) => {}
            None => sweep.record(format!("level {level} target missed within its power count")),
        }
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Embedding sweeps

/// Random nonzero bounded lattice elements keep distance at least one from
/// sampled points of `E` (the full metric, not just the ℓ² bound).
pub fn separation_sweep(
    model: &AmbientModel,
    sampler: &mut Sampler,
    trials: u64,
    coeff_bound: i64,
) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    let pairs = model.index_pairs();
    for _ in 0..trials {
        let k = LatticeElement::new(pairs.iter().map(|&(m, n)| {
            ((m, n), BigInt::from(sampler.range_i64(-coeff_bound, coeff_bound)))
        }));
        if k.is_zero() {
            continue;
        }
        let y = sampler.e_vector(model.e_dim, 6, 2);
        sweep.instances += 1;
        let report = separation_check(model, &k, &y).map_err(|e| anyhow::anyhow!("{e}"))?;
        if !report.l2_bound_ok || !report.total_ge_one {
            sweep.record("separation bound violated".into());
        }
    }
    Ok(sweep)
}

/// Quotient distance equals the direct distance for close `E`-points.
pub fn quotient_isometry_sweep(
    model: &AmbientModel,
    sampler: &mut Sampler,
    trials: u64,
) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    let mut produced = 0;
    while produced < trials {
        let y1 = sampler.e_vector(model.e_dim, 12, 1);
        let y2 = sampler.e_vector(model.e_dim, 12, 1);
        let direct = model.e_metric.distance(&y1, &y2);
        if direct >= Rat::one() {
            continue;
        }
        produced += 1;
        sweep.instances += 1;
        let bound = quotient_distance_bounds(
            model,
            &AmbientVector::from_e(y1),
            &AmbientVector::from_e(y2),
            2,
        )
        .map_err(|e| anyhow::anyhow!("{e}"))?;
        if !bound.certified {
            sweep.record("quotient distance not certified".into());
            continue;
        }
        if bound.upper.exact_value() != Some(direct) {
            sweep.record("quotient distance differs from direct distance".into());
        }
    }
    Ok(sweep)
}

/// Metric axioms of the model's `E`-metric on the bundled sample.
pub fn metric_axioms_sweep(model: &AmbientModel) -> Sweep {
    let mut sweep = Sweep::default();
    sweep.instances += 1;
    if !model.metric_axioms_hold() {
        sweep.record("metric axioms failed on the sample".into());
    }
    sweep
}

/// Exhaustive separation: every nonzero bounded lattice element keeps
/// squared projection norm at least one.
pub fn separation_exhaustive_sweep(model: &AmbientModel, bound: u32) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    let ex = separation_exhaustive(model, bound).map_err(|e| anyhow::anyhow!("{e}"))?;
    sweep.instances = ex.elements_checked;
    if !ex.all_ge_one {
        sweep.record(format!("exhaustive separation found norm^2 {}", ex.min_l2_norm_sq));
    }
    Ok(sweep)
}

/// Discreteness: the shortest nonzero projection norm is exactly one.
pub fn min_norm_sweep(model: &AmbientModel, bound: u32) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    sweep.instances += 1;
    let min = lattice_min_norm(model, bound).map_err(|e| anyhow::anyhow!("{e}"))?;
    if min.min_norm_sq != BigInt::one() {
        sweep.record(format!("lattice min norm^2 is {}", min.min_norm_sq));
    }
    Ok(sweep)
}

/// Density witnesses: `d̃((1/n)·ξ_{m,n}, (x_m, 0)) = 1/n` for every index.
pub fn density_sweep(model: &AmbientModel) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for (m, n) in model.index_pairs() {
        sweep.instances += 1;
        let witness = density_witness(model, m, n).map_err(|e| anyhow::anyhow!("{e}"))?;
        if witness != Rat::new(BigInt::one(), BigInt::from(n)) {
            sweep.record(format!("density witness ({m},{n}) != 1/{n}"));
        }
    }
    Ok(sweep)
}

/// Circle structure of the quotient: period one and a nondegenerate
/// half-period point for every generator.
pub fn period_sweep(model: &AmbientModel, samples: u32) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for (m, n) in model.index_pairs() {
        sweep.instances += 1;
        let report =
            circle_period_check(model, m, n, samples).map_err(|e| anyhow::anyhow!("{e}"))?;
        if !report.ok {
            sweep.record(format!("period check failed at ({m},{n})"));
        }
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Assembly

pub struct SuiteOptions {
    pub seed: u64,
    pub trials: u64,
    pub grid_resolution: u64,
    pub rolewicz_depths: Vec<usize>,
    pub precision: Precision,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            trials: 100,
            grid_resolution: 512,
            rolewicz_depths: vec![1, 2],
            precision: Precision::default(),
        }
    }
}

/// Runs every property sweep on the bundled fixtures with one seeded
/// sampler. Reports are deterministic given (inputs, seed, trials).
pub fn run_suite(opts: &SuiteOptions) -> Result<RunReport> {
    let start = std::time::Instant::now();
    let mut report = RunReport::new(format!(
        "suite --seed {} --trials {}",
        opts.seed, opts.trials
    ));
    report.seed = Some(opts.seed);
    report.trials = Some(opts.trials);
    report.inputs = fixtures::all()
        .into_iter()
        .map(|(name, text)| InputDigest { name: name.to_string(), digest: digest(text.as_bytes()) })
        .collect();

    let mut sampler = Sampler::new(opts.seed);
    let trials = opts.trials;

    // Fixture validation first: axioms on every bundled space.
    {
        let mut ok = true;
        let mut detail = String::new();
        for (name, space) in fixtures::spaces()? {
            let v = space.validate();
            if !v.is_ok() {
                ok = false;
                detail = format!("{name}: {} violations", v.violations.len());
            }
        }
        report.checks.push(Check::from_bool(
            "core/fixture-spaces-valid",
            ok,
            if ok { "all fixture spaces satisfy the axioms".to_string() } else { detail },
        ));
    }

    report
        .checks
        .push(word_algebra(&mut sampler, trials)?.to_check("core/word-algebra", "group laws"));
    report.checks.push(
        extension_equality()?.to_check("graev/extension-equality", "norm restriction to pairs"),
    );
    report
        .checks
        .push(tu_sweep(&mut sampler, trials, 5, 6)?.to_check(
            "freelcs/tu-equality",
            "matching = flow = oracle with exact duals",
        ));
    report
        .checks
        .push(norm_axioms(&mut sampler, trials)?.to_check("graev/norm-axioms", "norm axioms"));
    report
        .checks
        .push(maximality(&mut sampler, trials)?.to_check("graev/maximality", "domination"));
    report.checks.push(
        seminorm_axioms(&mut sampler, trials)?.to_check("freelcs/seminorm-axioms", "seminorm axioms"),
    );
    report.checks.push(
        isometric_embedding(&mut sampler, trials)?
            .to_check("freelcs/isometric-embedding", "group-to-span isometry"),
    );
    report.checks.push(
        lipschitz_extension(&mut sampler, trials.min(100))?
            .to_check("graev/lipschitz-extension", "extension bound"),
    );

    report.checks.push(
        circle_metric(opts.precision, &mut sampler, trials)?
            .to_check("torus/circle-metric", "metric axioms"),
    );
    report.checks.push(
        independence_consistency(&mut sampler, trials)?
            .to_check("torus/independence", "decision invariance"),
    );
    report
        .checks
        .push(kronecker_cases(opts.precision)?.to_check("torus/kronecker", "power-scan desk cases"));
    report.checks.push(
        net_oracle_agreement(opts.precision, &mut sampler, trials.min(40))?
            .to_check("torus/net-oracle", "grid certificates vs covering radius"),
    );

    let (roundtrip, artifacts) =
        rolewicz_roundtrip(opts.precision, &opts.rolewicz_depths, opts.grid_resolution)?;
    report
        .checks
        .push(roundtrip.to_check("rolewicz/construct-verify", "roundtrip"));
    if let Some(artifacts) = artifacts {
        report.checks.push(
            rolewicz_tamper(opts.precision, &artifacts)?
                .to_check("rolewicz/tamper", "tamper detection"),
        );
        report.checks.push(
            rolewicz_targets(opts.precision, &artifacts, &mut sampler, trials.min(25))?
                .to_check("rolewicz/approximate", "target approximation"),
        );
    }

    let model = fixtures::embed_model()?;
    push_embed_checks(&mut report, &model, 2, &mut sampler, trials)?;

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn push_embed_checks(
    report: &mut RunReport,
    model: &AmbientModel,
    coeff_bound: u32,
    sampler: &mut Sampler,
    trials: u64,
) -> Result<()> {
    report
        .checks
        .push(metric_axioms_sweep(model).to_check("embed/metric-axioms", "axioms on the sample"));
    report.checks.push(
        separation_exhaustive_sweep(model, coeff_bound)?
            .to_check("embed/separation-exhaustive", "projection norm >= 1"),
    );
    report.checks.push(
        min_norm_sweep(model, coeff_bound)?
            .to_check("embed/discreteness", "shortest projection norm = 1"),
    );
    report
        .checks
        .push(density_sweep(model)?.to_check("embed/density-witnesses", "witness = 1/n"));
    report
        .checks
        .push(period_sweep(model, 4)?.to_check("embed/circle-periods", "period 1, nondegenerate"));
    report.checks.push(
        separation_sweep(model, sampler, trials, coeff_bound as i64)?
            .to_check("embed/separation-sweep", "random separation"),
    );
    report.checks.push(
        quotient_isometry_sweep(model, sampler, trials.min(100))?
            .to_check("embed/quotient-isometry", "isometry below scale one"),
    );
    Ok(())
}

/// Property suite scoped to one user-supplied space (`graev check`).
pub fn run_space_check(space: &PointedSpace, seed: u64, trials: u64) -> Result<RunReport> {
    let start = std::time::Instant::now();
    let mut report = RunReport::new(format!("check --seed {seed} --trials {trials}"));
    report.seed = Some(seed);
    report.trials = Some(trials);
    let mut sampler = Sampler::new(seed);

    let validation = space.validate();
    report.checks.push(Check::from_bool(
        "space/axioms",
        validation.is_ok(),
        if validation.is_ok() {
            "pseudometric axioms hold".to_string()
        } else {
            format!("{} violations", validation.violations.len())
        },
    ));
    if validation.is_ok() {
        let mut sweep = Sweep::default();
        for _ in 0..trials {
            let w = sampler.word(space, 6, 3);
            sweep.instances += 1;
            let r = tu_check(space, &w)?;
            if !r.equal {
                sweep.record("matching != flow".into());
                continue;
            }
            let oracle = brute_force_norm(space, &w)?;
            if oracle != r.graev_value {
                sweep.record("oracle mismatch".into());
            }
        }
        report
            .checks
            .push(sweep.to_check("space/tu-equality", "matching = flow = oracle"));

        let mut axioms = Sweep::default();
        for _ in 0..trials {
            let u = sampler.word(space, 4, 3);
            let v = sampler.word(space, 4, 3);
            axioms.instances += 1;
            let (nu, _) = graev_norm(space, &u)?;
            let (nv, _) = graev_norm(space, &v)?;
            let sum = word_combine(space, &u, &v, Sign::Plus)?;
            let (nsum, _) = graev_norm(space, &sum)?;
            if nsum > nu + nv {
                axioms.record("subadditivity violated".into());
            }
        }
        report.checks.push(axioms.to_check("space/norm-axioms", "norm axioms"));
    }

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Embedding suite for `graev embed check`.
pub fn run_embed_check(
    model: &AmbientModel,
    coeff_bound: u32,
    seed: u64,
    trials: u64,
) -> Result<RunReport> {
    let start = std::time::Instant::now();
    let mut report = RunReport::new(format!(
        "embed check --coeff-bound {coeff_bound} --seed {seed} --trials {trials}"
    ));
    report.seed = Some(seed);
    report.trials = Some(trials);
    let mut sampler = Sampler::new(seed);
    push_embed_checks(&mut report, model, coeff_bound, &mut sampler, trials)?;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
