//! Recursive construction of a topological generator for a truncated
//! product of circles.
//!
//! The model is a depth-`k` torus with the weighted-sum metric
//! `ρ(a, b) = Σ wᵢ·circle_distance(aᵢ, bᵢ)` (default weights `2⁻ⁱ`). The
//! construction picks, level by level, a fresh independent symbolic angle
//! `xᵢ = √pᵢ / Lᵢ` scaled small enough that its early powers stay inside
//! the level-`i` ball, then grows the power count `nᵢ` until the first
//! `nᵢ` powers of the prefix product certify as a `2⁻ⁱ`-net of the
//! level-`i` subtorus on the configured grid. Certificates carry every
//! verified condition and are re-checkable from scratch.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::interval::{sqrt_enclosure, Interval, Precision};
use crate::rat::{pow2_inv, Rat};
use crate::torus::{
    basis_prime, circle_distance, independence_check, Angle, AngleCtx, Independence, NetGrid,
    NetOutcome, TorusError, TorusMetric, TorusPoint,
};

/// Truncated model: positive factor weights and the per-level radii the
/// three conditions are checked against (defaults `wᵢ = rᵢ = 2⁻ⁱ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTorusModel {
    weights: Vec<Rat>,
    radii: Vec<Rat>,
}

impl OmegaTorusModel {
    pub fn new(weights: Vec<Rat>, radii: Vec<Rat>) -> Result<Self, RolewiczError> {
        if weights.is_empty() {
            return Err(RolewiczError::BadModel("depth must be at least 1"));
        }
        if radii.len() != weights.len() {
            return Err(RolewiczError::BadModel("one radius per level required"));
        }
        if weights.iter().chain(&radii).any(|x| !x.is_positive()) {
            return Err(RolewiczError::BadModel("weights and radii must be positive"));
        }
        Ok(OmegaTorusModel { weights, radii })
    }

    /// Depth-`k` model with the standard geometric schedule `2⁻ⁱ`.
    pub fn with_default_weights(depth: usize) -> Result<Self, RolewiczError> {
        if depth == 0 {
            return Err(RolewiczError::BadModel("depth must be at least 1"));
        }
        let schedule: Vec<Rat> = (1..=depth).map(|i| pow2_inv(i as u32)).collect();
        OmegaTorusModel::new(schedule.clone(), schedule)
    }

    pub fn depth(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn radii(&self) -> &[Rat] {
        &self.radii
    }

    /// The full weighted-sum metric.
    pub fn metric(&self) -> TorusMetric {
        TorusMetric::WeightedSum(self.weights.clone())
    }

    /// Metric of the level-`level` subtorus (first `level` factors).
    pub fn level_metric(&self, level: usize) -> TorusMetric {
        TorusMetric::WeightedSum(self.weights[..level].to_vec())
    }
}

/// Whether "the first n powers" start at exponent one or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerConvention {
    #[default]
    FromOne,
    FromZero,
}

impl PowerConvention {
    /// The exponent of the `idx`-th power under this convention.
    pub fn power_at(&self, idx: u64) -> u64 {
        match self {
            PowerConvention::FromOne => idx + 1,
            PowerConvention::FromZero => idx,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PowerConvention::FromOne => "powers-from-1",
            PowerConvention::FromZero => "powers-from-0",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "powers-from-1" => Some(PowerConvention::FromOne),
            "powers-from-0" => Some(PowerConvention::FromZero),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RolewiczError {
    Torus(TorusError),
    BadModel(&'static str),
    /// The grid cannot certify any net at this radius; retry with the
    /// suggested finer grid.
    GridTooCoarse { level: usize, suggested_grid: u64 },
    /// Power doubling hit the cap without certification.
    NetUncertifiable { level: usize, powers_tried: u64, suggested_grid: u64 },
    /// Depth beyond the configured desk bound.
    DepthBeyondDeskBound { depth: usize, bound: usize },
    /// A by-construction condition failed its certified re-check.
    ConstructionInvariant { level: usize, condition: u8 },
    /// Requested approximation below what the truncation can promise.
    BelowTruncationFloor { eps: Box<Rat>, floor: Box<Rat> },
    /// A certified net failed to yield an approximating power: this
    /// contradicts the certificate and indicates an implementation bug.
    NetContradiction { power_limit: u64 },
    CertificateShape(&'static str),
}

impl From<TorusError> for RolewiczError {
    fn from(e: TorusError) -> Self {
        RolewiczError::Torus(e)
    }
}

impl fmt::Display for RolewiczError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RolewiczError::Torus(e) => e.fmt(f),
            RolewiczError::BadModel(msg) => write!(f, "bad model: {msg}"),
            RolewiczError::GridTooCoarse { level, suggested_grid } => write!(
                f,
                "grid too coarse to certify the level-{level} net; try --grid 1/{suggested_grid}"
            ),
            RolewiczError::NetUncertifiable { level, powers_tried, suggested_grid } => write!(
                f,
                "no certified net at level {level} after {powers_tried} powers; try --grid 1/{suggested_grid}"
            ),
            RolewiczError::DepthBeyondDeskBound { depth, bound } => {
                write!(f, "depth {depth} exceeds the desk bound {bound}")
            }
            RolewiczError::ConstructionInvariant { level, condition } => write!(
                f,
                "construction invariant violated at level {level}, condition ({condition})"
            ),
            RolewiczError::BelowTruncationFloor { eps, floor } => write!(
                f,
                "eps {} is below the truncation floor {}",
                crate::rat::format_rat(eps),
                crate::rat::format_rat(floor)
            ),
            RolewiczError::NetContradiction { power_limit } => write!(
                f,
                "certified net produced no approximating power within {power_limit}: implementation bug"
            ),
            RolewiczError::CertificateShape(msg) => write!(f, "malformed certificate: {msg}"),
        }
    }
}

impl core::error::Error for RolewiczError {}

/// Condition (1): the level's generator sits inside the level ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition1Report {
    pub level: usize,
    pub bound: Rat,
    pub distance_hi: Rat,
    pub ok: bool,
}

/// Condition (2): the first `n` powers of the prefix product form a
/// certified net of the level subtorus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition2Report {
    pub level: usize,
    pub radius: Rat,
    pub power_count: u64,
    pub outcome: NetOutcome,
}

impl Condition2Report {
    pub fn ok(&self) -> bool {
        self.outcome.is_certified()
    }
}

/// Condition (3): early powers of a higher-level generator stay inside the
/// higher level's ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition3Report {
    pub lower_level: usize,
    pub upper_level: usize,
    pub bound: Rat,
    pub worst_hi: Rat,
    pub ok: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionReports {
    pub condition1: Vec<Condition1Report>,
    pub condition2: Vec<Condition2Report>,
    pub condition3: Vec<Condition3Report>,
}

impl ConditionReports {
    pub fn all_ok(&self) -> bool {
        self.condition1.iter().all(|r| r.ok)
            && self.condition2.iter().all(Condition2Report::ok)
            && self.condition3.iter().all(|r| r.ok)
    }
}

/// A machine-checkable generator certificate: the chosen angles, the power
/// counts, the grid and power convention they were certified under, and
/// the per-condition reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub coordinates: Vec<Angle>,
    pub power_counts: Vec<u64>,
    pub grid_resolution: u64,
    pub convention: PowerConvention,
    pub reports: ConditionReports,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructParams {
    /// Grid step is `1 / grid_resolution` per axis.
    pub grid_resolution: u64,
    pub convention: PowerConvention,
    /// Cap for the power-count doubling search.
    pub max_power: u64,
    /// Desk bound on the depth: net certification cost grows like
    /// grid_resolution^depth.
    pub max_depth: usize,
    pub precision: Precision,
}

impl Default for ConstructParams {
    fn default() -> Self {
        ConstructParams {
            grid_resolution: 512,
            convention: PowerConvention::default(),
            max_power: 1 << 20,
            max_depth: 4,
            precision: Precision::default(),
        }
    }
}

/// Scale `1/L` (a power of two) for the level's fresh symbol `√p`, chosen
/// so the value stays below `1/4` (no wraparound bookkeeping) and the
/// first `n_prev` powers stay inside the level ball:
/// `n_prev · w · √p / L < radius`.
fn choose_scale(beta_hi: &Rat, weight: &Rat, radius: &Rat, n_prev: u64) -> BigInt {
    let four_beta = beta_hi * Rat::from_integer(BigInt::from(4));
    let need = Rat::from_integer(BigInt::from(n_prev)) * weight * beta_hi;
    let mut scale = BigInt::one();
    loop {
        let scale_rat = Rat::from_integer(scale.clone());
        if four_beta <= scale_rat && need < radius * &scale_rat {
            return scale;
        }
        scale <<= 1;
    }
}

/// Runs the full recursive construction and returns a certificate whose
/// conditions have all been verified; a certificate is never emitted with
/// an unverified or refuted condition.
pub fn construct_generator(
    model: &OmegaTorusModel,
    params: &ConstructParams,
) -> Result<GeneratorCertificate, RolewiczError> {
    let depth = model.depth();
    if depth > params.max_depth {
        return Err(RolewiczError::DepthBeyondDeskBound { depth, bound: params.max_depth });
    }
    let ctx = AngleCtx::new(params.precision);
    let mut coordinates: Vec<Angle> = Vec::with_capacity(depth);
    let mut power_counts: Vec<u64> = Vec::with_capacity(depth);
    let mut reports = ConditionReports::default();
    let mut n_prev: u64 = 1;

    for level in 1..=depth {
        let weight = &model.weights()[level - 1];
        let radius = &model.radii()[level - 1];
        let beta = Rat::from_integer(BigInt::from(basis_prime(level)));
        let beta_hi = sqrt_enclosure(&beta, params.precision).hi().clone();
        let scale = choose_scale(&beta_hi, weight, radius, n_prev);
        let x = Angle::scaled_symbol(level, &Rat::new(BigInt::one(), scale));

        // Condition (1).
        let rho = circle_distance(&ctx, &x, &Angle::zero()).scale(weight);
        match rho.certified_lt(radius) {
            Some(true) => {}
            Some(false) => {
                return Err(RolewiczError::ConstructionInvariant { level, condition: 1 })
            }
            None => return Err(TorusError::Inconclusive { context: "condition (1)" }.into()),
        }
        reports.condition1.push(Condition1Report {
            level,
            bound: radius.clone(),
            distance_hi: rho.hi().clone(),
            ok: true,
        });
        coordinates.push(x);

        // Condition (2): grow the power count until the net certifies.
        let metric = model.level_metric(level);
        let mut grid = NetGrid::new(level, params.grid_resolution, radius, &metric)?;
        if grid.is_grid_too_coarse() {
            return Err(RolewiczError::GridTooCoarse {
                level,
                suggested_grid: params.grid_resolution.saturating_mul(4),
            });
        }
        let prefix = TorusPoint::new(coordinates.clone());
        let mut added: u64 = 0;
        let mut candidate = n_prev.max(1);
        let n_level = loop {
            let batch: Vec<TorusPoint> = (added..candidate)
                .map(|idx| prefix.scale_int(params.convention.power_at(idx)))
                .collect();
            grid.add_points(&ctx, &batch)?;
            added = candidate;
            if grid.fully_covered() {
                break added;
            }
            if candidate >= params.max_power {
                return Err(RolewiczError::NetUncertifiable {
                    level,
                    powers_tried: candidate,
                    suggested_grid: params.grid_resolution.saturating_mul(4),
                });
            }
            candidate = candidate.saturating_mul(2).min(params.max_power);
        };
        reports.condition2.push(Condition2Report {
            level,
            radius: radius.clone(),
            power_count: n_level,
            outcome: NetOutcome::Certified,
        });
        debug_assert!(n_level >= n_prev, "power counts are nondecreasing");
        power_counts.push(n_level);
        n_prev = n_level;
    }

    // Condition (3) across all level pairs.
    reports.condition3 =
        condition3_reports(&ctx, model, &coordinates, &power_counts, params.convention)?;
    if reports.condition3.iter().any(|r| !r.ok) {
        let bad = reports.condition3.iter().find(|r| !r.ok).expect("found above");
        return Err(RolewiczError::ConstructionInvariant { level: bad.upper_level, condition: 3 });
    }

    Ok(GeneratorCertificate {
        coordinates,
        power_counts,
        grid_resolution: params.grid_resolution,
        convention: params.convention,
        reports,
    })
}

fn condition3_reports(
    ctx: &AngleCtx,
    model: &OmegaTorusModel,
    coordinates: &[Angle],
    power_counts: &[u64],
    convention: PowerConvention,
) -> Result<Vec<Condition3Report>, RolewiczError> {
    let depth = model.depth();
    let mut out = Vec::new();
    for upper in 2..=depth {
        let x = &coordinates[upper - 1];
        let weight = &model.weights()[upper - 1];
        let bound = &model.radii()[upper - 1];
        let needed = (1..upper).map(|i| power_counts[i - 1]).max().unwrap_or(0);
        // Running maxima of w·dist(mᵗʰ power, 0), so each lower level reads
        // off its prefix worst case.
        let mut prefix_worst: Vec<Rat> = Vec::with_capacity(needed as usize);
        let mut running = Rat::zero();
        for idx in 0..needed {
            let m = convention.power_at(idx);
            let d = circle_distance(ctx, &x.scale_int(m), &Angle::zero());
            let hi = d.hi() * weight;
            if hi > running {
                running = hi;
            }
            prefix_worst.push(running.clone());
        }
        for lower in 1..upper {
            let n_lower = power_counts[lower - 1];
            let worst = if n_lower == 0 {
                Rat::zero()
            } else {
                prefix_worst[(n_lower - 1) as usize].clone()
            };
            let ok = worst < *bound;
            out.push(Condition3Report {
                lower_level: lower,
                upper_level: upper,
                bound: bound.clone(),
                worst_hi: worst,
                ok,
            });
        }
    }
    Ok(out)
}

/// Independent re-verification of a certificate: all three conditions are
/// re-checked from scratch at the certificate's grid and convention, and
/// rational independence of the coordinates is decided exactly (reported
/// as an advisory flag, since the metric conditions may hold regardless).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub conditions: ConditionReports,
    pub independence: Independence,
    pub all_ok: bool,
}

pub fn verify_certificate(
    model: &OmegaTorusModel,
    cert: &GeneratorCertificate,
    precision: Precision,
) -> Result<VerificationReport, RolewiczError> {
    let depth = model.depth();
    if cert.coordinates.len() != depth {
        return Err(RolewiczError::CertificateShape("coordinate count differs from depth"));
    }
    if cert.power_counts.len() != depth {
        return Err(RolewiczError::CertificateShape("power count list differs from depth"));
    }
    if cert.grid_resolution == 0 {
        return Err(RolewiczError::CertificateShape("grid resolution must be positive"));
    }
    let ctx = AngleCtx::new(precision);
    let mut reports = ConditionReports::default();

    for level in 1..=depth {
        let weight = &model.weights()[level - 1];
        let radius = &model.radii()[level - 1];
        let rho = circle_distance(&ctx, &cert.coordinates[level - 1], &Angle::zero()).scale(weight);
        // Conservative: an undecided enclosure fails verification.
        let ok = rho.certified_lt(radius) == Some(true);
        reports.condition1.push(Condition1Report {
            level,
            bound: radius.clone(),
            distance_hi: rho.hi().clone(),
            ok,
        });
    }

    for level in 1..=depth {
        let radius = &model.radii()[level - 1];
        let metric = model.level_metric(level);
        let mut grid = NetGrid::new(level, cert.grid_resolution, radius, &metric)?;
        let prefix = TorusPoint::new(cert.coordinates[..level].to_vec());
        let n = cert.power_counts[level - 1];
        let points: Vec<TorusPoint> = (0..n)
            .map(|idx| prefix.scale_int(cert.convention.power_at(idx)))
            .collect();
        grid.add_points(&ctx, &points)?;
        reports.condition2.push(Condition2Report {
            level,
            radius: radius.clone(),
            power_count: n,
            outcome: grid.classify(),
        });
    }

    reports.condition3 =
        condition3_reports(&ctx, model, &cert.coordinates, &cert.power_counts, cert.convention)?;

    let independence = independence_check(&cert.coordinates);
    let all_ok = reports.all_ok();
    Ok(VerificationReport { conditions: reports, independence, all_ok })
}

/// A power approximating a target within `eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub power: u64,
    pub distance: Interval,
}

/// Scans the first `power_limit` powers of the certified generator for one
/// within `eps` of `z`; `None` means the exhaustive scan found no
/// certified hit.
pub fn approximate_target_bounded(
    model: &OmegaTorusModel,
    cert: &GeneratorCertificate,
    z: &TorusPoint,
    eps: &Rat,
    precision: Precision,
    power_limit: u64,
) -> Result<Option<Approximation>, RolewiczError> {
    if !eps.is_positive() {
        return Err(TorusError::NonpositiveEps.into());
    }
    let ctx = AngleCtx::new(precision);
    let metric = model.metric();
    let full = TorusPoint::new(cert.coordinates.clone());
    for idx in 0..power_limit {
        let m = cert.convention.power_at(idx);
        let point = full.scale_int(m);
        let mut distance = metric.distance(&ctx, &point, z)?;
        let mut attempts = 0;
        loop {
            match distance.certified_lt(eps) {
                Some(true) => return Ok(Some(Approximation { power: m, distance })),
                Some(false) => break,
                None => {
                    attempts += 1;
                    if attempts > 3 {
                        // Cannot certify this power either way; skip it.
                        // Any guaranteed hit is strictly inside eps, so an
                        // undecidable boundary power is never the only one.
                        break;
                    }
                    let mut prec = precision;
                    for _ in 0..attempts {
                        prec = prec.doubled();
                    }
                    distance = metric.distance(&AngleCtx::new(prec), &point, z)?;
                }
            }
        }
    }
    Ok(None)
}

/// The finest approximation radius the truncated model promises for
/// arbitrary targets: twice the last level radius (net radius plus the
/// tail allowance of the untruncated construction).
pub fn truncation_floor(model: &OmegaTorusModel) -> Rat {
    let last = model.radii().last().expect("depth >= 1");
    last + last
}

/// Headroom callers add on top of the truncation floor when they want
/// every comparison strictly decidable.
pub fn approximation_margin() -> Rat {
    pow2_inv(16)
}

/// Finds a power of the certified generator within `eps` of `z`, scanning
/// up to the certificate's final power count. Refuses `eps` strictly below
/// the truncation floor (at the floor itself the certified net radius
/// leaves ample room); a scan failure at or above the floor contradicts
/// the certificate and is flagged as an implementation bug.
pub fn approximate_target(
    model: &OmegaTorusModel,
    cert: &GeneratorCertificate,
    z: &TorusPoint,
    eps: &Rat,
    precision: Precision,
) -> Result<Approximation, RolewiczError> {
    let floor = truncation_floor(model);
    if *eps < floor {
        return Err(RolewiczError::BelowTruncationFloor {
            eps: Box::new(eps.clone()),
            floor: Box::new(floor),
        });
    }
    let limit = *cert.power_counts.last().ok_or(RolewiczError::CertificateShape(
        "certificate has no power counts",
    ))?;
    match approximate_target_bounded(model, cert, z, eps, precision, limit)? {
        Some(hit) => Ok(hit),
        None => Err(RolewiczError::NetContradiction { power_limit: limit }),
    }
}
