//! Desk-scale model of a vector space embedded into a torus quotient.
//!
//! The ambient space is `E ⊕ ℓ²` with `E` a finite-dimensional rational
//! vector space under an ℓ¹-style metric and the ℓ² factor truncated to
//! the index rectangle `(m, n) ∈ [1, M] × [1, N]`. The lattice `D` is
//! generated by the vectors `ξ_{m,n} = (n·x_m, e_{m,n})`; every distance
//! is of the exact form `rational + √rational`, so all comparisons here
//! are decided without rounding.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::interval::SqrtSum;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    NoPoints,
    PointDimMismatch { point_index: usize, expected: usize, got: usize },
    WeightCount { expected: usize, got: usize },
    NonpositiveWeight,
    ZeroTorsionBound,
    IndexOutOfRange { m: u32, n: u32, m_max: u32, n_max: u32 },
    VectorDimMismatch { expected: usize, got: usize },
    /// The separation bound only concerns nonzero lattice elements.
    ZeroLatticeElement,
    ZeroCoefficientBound,
    TooFewSamples { samples: u32 },
}

impl fmt::Display for EmbeddingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingError::NoPoints => write!(f, "the dense sample must contain a point"),
            EmbeddingError::PointDimMismatch { point_index, expected, got } => write!(
                f,
                "sample point {point_index} has dimension {got}, expected {expected}"
            ),
            EmbeddingError::WeightCount { expected, got } => {
                write!(f, "metric weight count {got} does not match dimension {expected}")
            }
            EmbeddingError::NonpositiveWeight => write!(f, "metric weights must be positive"),
            EmbeddingError::ZeroTorsionBound => write!(f, "n_max must be at least 1"),
            EmbeddingError::IndexOutOfRange { m, n, m_max, n_max } => write!(
                f,
                "index ({m},{n}) outside the truncation rectangle [1,{m_max}]x[1,{n_max}]"
            ),
            EmbeddingError::VectorDimMismatch { expected, got } => {
                write!(f, "vector has dimension {got}, expected {expected}")
            }
            EmbeddingError::ZeroLatticeElement => {
                write!(f, "lattice element reduces to zero; the bound concerns nonzero elements")
            }
            EmbeddingError::ZeroCoefficientBound => write!(f, "coefficient bound must be >= 1"),
            EmbeddingError::TooFewSamples { samples } => {
                write!(f, "need at least 2 samples, got {samples}")
            }
        }
    }
}

impl core::error::Error for EmbeddingError {}

/// Translation-invariant metric on the `E` factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EMetric {
    L1,
    WeightedL1(Vec<Rat>),
}

impl EMetric {
    pub fn distance(&self, a: &[Rat], b: &[Rat]) -> Rat {
        match self {
            EMetric::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            EMetric::WeightedL1(w) => a
                .iter()
                .zip(b)
                .zip(w)
                .map(|((x, y), wt)| (x - y).abs() * wt)
                .sum(),
        }
    }

    fn check(&self, e_dim: usize) -> Result<(), EmbeddingError> {
        if let EMetric::WeightedL1(w) = self {
            if w.len() != e_dim {
                return Err(EmbeddingError::WeightCount { expected: e_dim, got: w.len() });
            }
            if w.iter().any(|x| !x.is_positive()) {
                return Err(EmbeddingError::NonpositiveWeight);
            }
        }
        Ok(())
    }
}

/// Truncated model of the ambient construction: the dense sample
/// `x_1, ..., x_M` in `E = Q^e_dim`, the torsion-direction cut `n <= N`,
/// and the metric on `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientModel {
    pub e_dim: usize,
    pub x_points: Vec<Vec<Rat>>,
    pub n_max: u32,
    pub e_metric: EMetric,
}

impl AmbientModel {
    pub fn new(
        e_dim: usize,
        x_points: Vec<Vec<Rat>>,
        n_max: u32,
        e_metric: EMetric,
    ) -> Result<Self, EmbeddingError> {
        if x_points.is_empty() {
            return Err(EmbeddingError::NoPoints);
        }
        if n_max == 0 {
            return Err(EmbeddingError::ZeroTorsionBound);
        }
        for (i, p) in x_points.iter().enumerate() {
            if p.len() != e_dim {
                return Err(EmbeddingError::PointDimMismatch {
                    point_index: i,
                    expected: e_dim,
                    got: p.len(),
                });
            }
        }
        e_metric.check(e_dim)?;
        Ok(AmbientModel { e_dim, x_points, n_max, e_metric })
    }

    pub fn m_max(&self) -> u32 {
        self.x_points.len() as u32
    }

    /// All truncation indices `(m, n)` in order.
    pub fn index_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for m in 1..=self.m_max() {
            for n in 1..=self.n_max {
                out.push((m, n));
            }
        }
        out
    }

    fn check_index(&self, m: u32, n: u32) -> Result<(), EmbeddingError> {
        if m == 0 || n == 0 || m > self.m_max() || n > self.n_max {
            return Err(EmbeddingError::IndexOutOfRange {
                m,
                n,
                m_max: self.m_max(),
                n_max: self.n_max,
            });
        }
        Ok(())
    }

    /// Metric axioms of `e_metric`, checked exhaustively on the sample
    /// points together with the origin.
    pub fn metric_axioms_hold(&self) -> bool {
        let mut sample: Vec<Vec<Rat>> = self.x_points.clone();
        sample.push(alloc::vec![Rat::zero(); self.e_dim]);
        let d = |a: &[Rat], b: &[Rat]| self.e_metric.distance(a, b);
        for a in &sample {
            if !d(a, a).is_zero() {
                return false;
            }
            for b in &sample {
                if d(a, b) != d(b, a) || d(a, b).is_negative() {
                    return false;
                }
                for c in &sample {
                    if d(a, c) > d(a, b) + d(b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The generator `ξ_{m,n} = (n·x_m, e_{m,n})`.
    pub fn xi(&self, m: u32, n: u32) -> Result<AmbientVector, EmbeddingError> {
        self.check_index(m, n)?;
        let n_rat = Rat::from_integer(BigInt::from(n));
        let e_part = self.x_points[(m - 1) as usize]
            .iter()
            .map(|c| c * &n_rat)
            .collect();
        let mut l2_part = BTreeMap::new();
        l2_part.insert((m, n), Rat::one());
        Ok(AmbientVector { e_part, l2_part })
    }
}

/// A point of the truncated ambient space `E ⊕ ℓ²`: a dense rational
/// `E`-coordinate vector and a sparse, reduced ℓ² part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientVector {
    pub e_part: Vec<Rat>,
    pub l2_part: BTreeMap<(u32, u32), Rat>,
}

impl AmbientVector {
    pub fn zero(e_dim: usize) -> Self {
        AmbientVector { e_part: alloc::vec![Rat::zero(); e_dim], l2_part: BTreeMap::new() }
    }

    pub fn from_e(e_part: Vec<Rat>) -> Self {
        AmbientVector { e_part, l2_part: BTreeMap::new() }
    }

    pub fn new(e_part: Vec<Rat>, l2_part: BTreeMap<(u32, u32), Rat>) -> Self {
        let mut v = AmbientVector { e_part, l2_part };
        v.reduce();
        v
    }

    fn reduce(&mut self) {
        self.l2_part.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &AmbientVector) -> AmbientVector {
        let e_part = self.e_part.iter().zip(&other.e_part).map(|(a, b)| a + b).collect();
        let mut l2_part = self.l2_part.clone();
        for (idx, c) in &other.l2_part {
            let entry = l2_part.entry(*idx).or_insert_with(Rat::zero);
            *entry += c;
        }
        let mut v = AmbientVector { e_part, l2_part };
        v.reduce();
        v
    }

    pub fn sub(&self, other: &AmbientVector) -> AmbientVector {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, factor: &Rat) -> AmbientVector {
        let e_part = self.e_part.iter().map(|c| c * factor).collect();
        let l2_part = self.l2_part.iter().map(|(idx, c)| (*idx, c * factor)).collect();
        let mut v = AmbientVector { e_part, l2_part };
        v.reduce();
        v
    }
}

/// An element of the lattice `D`: a reduced integer combination of the
/// generators `ξ_{m,n}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeElement {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl LatticeElement {
    pub fn new<I: IntoIterator<Item = ((u32, u32), BigInt)>>(coeffs: I) -> Self {
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            let entry = map.entry(idx).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&idx);
            }
        }
        LatticeElement { coeffs: map }
    }

    pub fn singleton(m: u32, n: u32, coeff: i64) -> Self {
        LatticeElement::new([((m, n), BigInt::from(coeff))])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(idx, c)| (*idx, c))
    }

    /// `Σ k²` over the coefficients: the squared ℓ² norm of the lattice
    /// element's second-coordinate projection, exactly.
    pub fn l2_norm_sq(&self) -> BigInt {
        self.coeffs.values().map(|c| c * c).sum()
    }

    /// The ambient vector `Σ k_{m,n} · ξ_{m,n}`.
    pub fn vector(&self, model: &AmbientModel) -> Result<AmbientVector, EmbeddingError> {
        let mut acc = AmbientVector::zero(model.e_dim);
        for ((m, n), c) in self.iter() {
            let xi = model.xi(m, n)?;
            acc = acc.add(&xi.scale(&Rat::from_integer(c.clone())));
        }
        Ok(acc)
    }
}

/// The metric `d̃((x₁,y₁),(x₂,y₂)) = d(x₁,x₂) + ‖y₁-y₂‖₂`, carried in the
/// exact form `rational + √rational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeDistance {
    pub e_dist: Rat,
    pub l2_sq: Rat,
    pub value: SqrtSum,
}

impl TildeDistance {
    pub fn exact(&self) -> Option<Rat> {
        self.value.exact_value()
    }
}

pub fn tilde_distance(
    model: &AmbientModel,
    h1: &AmbientVector,
    h2: &AmbientVector,
) -> Result<TildeDistance, EmbeddingError> {
    if h1.e_part.len() != model.e_dim || h2.e_part.len() != model.e_dim {
        return Err(EmbeddingError::VectorDimMismatch {
            expected: model.e_dim,
            got: if h1.e_part.len() != model.e_dim { h1.e_part.len() } else { h2.e_part.len() },
        });
    }
    let e_dist = model.e_metric.distance(&h1.e_part, &h2.e_part);
    let diff = h1.sub(h2);
    let l2_sq: Rat = diff.l2_part.values().map(|c| c * c).sum();
    let value = SqrtSum::new(e_dist.clone(), l2_sq.clone());
    Ok(TildeDistance { e_dist, l2_sq, value })
}

/// Verified lower bound for a nonzero lattice element against any point of
/// `E`: the ℓ² projection alone already gives `d̃ >= √(Σk²) >= 1`, and the
/// integer sum `Σk²` is computed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub l2_norm_sq: BigInt,
    pub e_dist: Rat,
    pub distance: SqrtSum,
    /// `Σk² >= 1` (exact integers).
    pub l2_bound_ok: bool,
    /// `d̃(vec(k), (y,0)) >= 1` (exact).
    pub total_ge_one: bool,
}

pub fn separation_check(
    model: &AmbientModel,
    k: &LatticeElement,
    y: &[Rat],
) -> Result<SeparationReport, EmbeddingError> {
    if k.is_zero() {
        return Err(EmbeddingError::ZeroLatticeElement);
    }
    if y.len() != model.e_dim {
        return Err(EmbeddingError::VectorDimMismatch { expected: model.e_dim, got: y.len() });
    }
    let x = k.vector(model)?;
    let target = AmbientVector::from_e(y.to_vec());
    let d = tilde_distance(model, &x, &target)?;
    let l2_norm_sq = k.l2_norm_sq();
    let l2_bound_ok = l2_norm_sq >= BigInt::one();
    let total_ge_one = d.value.cmp_rat(&Rat::one()) != core::cmp::Ordering::Less;
    Ok(SeparationReport {
        l2_norm_sq,
        e_dist: d.e_dist,
        distance: d.value,
        l2_bound_ok,
        total_ge_one,
    })
}

/// Result of the exhaustive shortest-vector scan over the ℓ² projection of
/// the truncated lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinNormReport {
    pub min_norm_sq: BigInt,
    /// Number of minimizers up to sign.
    pub attained_pairs: u64,
    pub coeff_bound: u32,
}

/// Minimum of `Σ k²` over nonzero coefficient maps with entries in
/// `[-B, B]`, by exhaustive search (sound pruning only on branches whose
/// partial sum already exceeds the best found).
pub fn lattice_min_norm(
    model: &AmbientModel,
    coeff_bound: u32,
) -> Result<MinNormReport, EmbeddingError> {
    if coeff_bound == 0 {
        return Err(EmbeddingError::ZeroCoefficientBound);
    }
    let dims = (model.m_max() * model.n_max) as usize;
    let b = coeff_bound as i64;
    // Candidate values by increasing magnitude so the first nonzero leaf is
    // a unit vector.
    let mut candidates: Vec<i64> = Vec::with_capacity(2 * coeff_bound as usize + 1);
    candidates.push(0);
    for v in 1..=b {
        candidates.push(v);
        candidates.push(-v);
    }
    let mut best: Option<i64> = None;
    let mut count: u64 = 0;
    fn dfs(
        level: usize,
        dims: usize,
        partial: i64,
        nonzero: bool,
        candidates: &[i64],
        best: &mut Option<i64>,
        count: &mut u64,
    ) {
        if let Some(b) = *best {
            if partial > b {
                return;
            }
        }
        if level == dims {
            if !nonzero {
                return;
            }
            match *best {
                Some(b) if partial == b => *count += 1,
                Some(b) if partial < b => {
                    *best = Some(partial);
                    *count = 1;
                }
                None => {
                    *best = Some(partial);
                    *count = 1;
                }
                _ => {}
            }
            return;
        }
        for &v in candidates {
            dfs(level + 1, dims, partial + v * v, nonzero || v != 0, candidates, best, count);
        }
    }
    dfs(0, dims, 0, false, &candidates, &mut best, &mut count);
    let min = best.expect("a unit coefficient vector always exists");
    Ok(MinNormReport {
        min_norm_sq: BigInt::from(min),
        attained_pairs: count / 2,
        coeff_bound,
    })
}

/// Exhaustive verification that every nonzero bounded lattice element keeps
/// squared ℓ² projection at least one (the separation bound, stripped of
/// the `E` part which only increases distances).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveSeparation {
    pub elements_checked: u64,
    pub min_l2_norm_sq: BigInt,
    pub all_ge_one: bool,
}

pub fn separation_exhaustive(
    model: &AmbientModel,
    coeff_bound: u32,
) -> Result<ExhaustiveSeparation, EmbeddingError> {
    if coeff_bound == 0 {
        return Err(EmbeddingError::ZeroCoefficientBound);
    }
    let dims = (model.m_max() * model.n_max) as usize;
    let b = coeff_bound as i64;
    let width = 2 * b + 1;
    let mut digits = alloc::vec![-b; dims];
    let mut sum: i64 = dims as i64 * b * b;
    let mut checked: u64 = 0;
    let mut min_seen: Option<i64> = None;
    loop {
        if sum != 0 {
            checked += 1;
            if min_seen.is_none_or(|m| sum < m) {
                min_seen = Some(sum);
            }
        }
        // Odometer increment with O(1) sum update per digit change.
        let mut pos = 0;
        loop {
            if pos == dims {
                let min = min_seen.expect("nonzero elements exist");
                return Ok(ExhaustiveSeparation {
                    elements_checked: checked,
                    min_l2_norm_sq: BigInt::from(min),
                    all_ge_one: min >= 1,
                });
            }
            let old = digits[pos];
            if old == b {
                digits[pos] = -b;
                sum += b * b - old * old;
                pos += 1;
            } else {
                digits[pos] = old + 1;
                sum += (old + 1) * (old + 1) - old * old;
                break;
            }
        }
        let _ = width;
    }
}

/// The density witness: `d̃((1/n)·ξ_{m,n}, (x_m, 0))`, which collapses to
/// exactly `1/n` (the `E` parts coincide and the ℓ² part is a single
/// coordinate of size `1/n`).
pub fn density_witness(model: &AmbientModel, m: u32, n: u32) -> Result<Rat, EmbeddingError> {
    model.check_index(m, n)?;
    let xi = model.xi(m, n)?;
    let n_inv = Rat::new(BigInt::one(), BigInt::from(n));
    let scaled = xi.scale(&n_inv);
    let target = AmbientVector::from_e(model.x_points[(m - 1) as usize].clone());
    let d = tilde_distance(model, &scaled, &target)?;
    let exact = d.exact().expect("distance is rational by construction");
    assert_eq!(exact, n_inv, "density witness must equal 1/n exactly");
    Ok(exact)
}

/// Upper bound (and, when certified, the exact value) of the quotient
/// distance between `h1 + D` and `h2 + D`, minimizing over lattice
/// translates with coefficients bounded by `coeff_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBound {
    pub upper: SqrtSum,
    pub minimizer: LatticeElement,
    /// True when every excluded lattice element provably exceeds the found
    /// upper bound, making `upper` the true quotient distance.
    pub certified: bool,
}

pub fn quotient_distance_bounds(
    model: &AmbientModel,
    h1: &AmbientVector,
    h2: &AmbientVector,
    coeff_bound: u32,
) -> Result<QuotientBound, EmbeddingError> {
    if coeff_bound == 0 {
        return Err(EmbeddingError::ZeroCoefficientBound);
    }
    if h1.e_part.len() != model.e_dim {
        return Err(EmbeddingError::VectorDimMismatch { expected: model.e_dim, got: h1.e_part.len() });
    }
    if h2.e_part.len() != model.e_dim {
        return Err(EmbeddingError::VectorDimMismatch { expected: model.e_dim, got: h2.e_part.len() });
    }
    let indices = model.index_pairs();
    let diff = h1.sub(h2); // minimize d̃(diff, vec(k)) over k
    // ℓ² coordinates of diff outside the truncation rectangle cannot be
    // matched by any lattice element and contribute a fixed base term.
    let index_set: alloc::collections::BTreeSet<(u32, u32)> = indices.iter().copied().collect();
    let base_l2_sq: Rat = diff
        .l2_part
        .iter()
        .filter(|(idx, _)| !index_set.contains(idx))
        .map(|(_, c)| c * c)
        .sum();

    let b = coeff_bound as i64;
    struct Search<'a> {
        model: &'a AmbientModel,
        indices: &'a [(u32, u32)],
        diff: &'a AmbientVector,
        b: i64,
        best: Option<(SqrtSum, Vec<i64>)>,
    }
    impl Search<'_> {
        fn run(&mut self, level: usize, l2_sq: Rat, e_acc: Vec<Rat>, ks: &mut Vec<i64>) {
            if let Some((best, _)) = &self.best {
                // Even with a zero E-part the subtree cannot beat the best.
                if SqrtSum::new(Rat::zero(), l2_sq.clone()) >= *best {
                    return;
                }
            }
            if level == self.indices.len() {
                let e_dist = self.model.e_metric.distance(&self.diff.e_part, &e_acc);
                let value = SqrtSum::new(e_dist, l2_sq);
                if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                    self.best = Some((value, ks.clone()));
                }
                return;
            }
            let (m, n) = self.indices[level];
            let target = self
                .diff
                .l2_part
                .get(&(m, n))
                .cloned()
                .unwrap_or_else(Rat::zero);
            // Try coefficients closest to the diff coordinate first.
            let mut candidates: Vec<i64> = (-self.b..=self.b).collect();
            candidates.sort_by_key(|&v| {
                let gap = (Rat::from_integer(BigInt::from(v)) - &target).abs();
                (gap.numer() * BigInt::from(2 * self.b + 2) / gap.denom(), v)
            });
            let x_m = &self.model.x_points[(m - 1) as usize];
            let n_rat = Rat::from_integer(BigInt::from(n));
            for v in candidates {
                let coord_gap = &target - Rat::from_integer(BigInt::from(v));
                let next_l2 = &l2_sq + &coord_gap * &coord_gap;
                let scale = Rat::from_integer(BigInt::from(v)) * &n_rat;
                let next_e: Vec<Rat> = e_acc
                    .iter()
                    .zip(x_m)
                    .map(|(acc, x)| acc + x * &scale)
                    .collect();
                ks.push(v);
                self.run(level + 1, next_l2, next_e, ks);
                ks.pop();
            }
        }
    }
    let mut search = Search { model, indices: &indices, diff: &diff, b, best: None };
    let mut ks = Vec::new();
    search.run(0, base_l2_sq, alloc::vec![Rat::zero(); model.e_dim], &mut ks);
    let (upper, k_values) = search.best.expect("k = 0 is always examined");

    let minimizer = LatticeElement::new(
        indices
            .iter()
            .zip(&k_values)
            .map(|(idx, &v)| (*idx, BigInt::from(v))),
    );

    // Any excluded element has some |k| >= B+1, so its ℓ² gap is at least
    // B+1 - c with c the largest in-rectangle coordinate of diff.
    let c = indices
        .iter()
        .map(|idx| diff.l2_part.get(idx).map_or_else(Rat::zero, Rat::abs))
        .fold(Rat::zero(), |acc, v| if v > acc { v } else { acc });
    let excluded_floor = Rat::from_integer(BigInt::from(b + 1)) - c;
    let certified = excluded_floor.is_positive()
        && upper.cmp_rat(&excluded_floor) == core::cmp::Ordering::Less;

    Ok(QuotientBound { upper, minimizer, certified })
}

/// Verifies the one-parameter subgroup through `ξ_{m,n}` descends to a
/// circle in the quotient: integer shifts of the parameter land in the
/// lattice (period 1), while the half-period point stays away from zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSample {
    pub t: Rat,
    pub distance_zero: bool,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub samples: Vec<PeriodSample>,
    pub half_point_distance: SqrtSum,
    pub half_point_positive: bool,
    pub half_point_certified: bool,
    pub ok: bool,
}

pub fn circle_period_check(
    model: &AmbientModel,
    m: u32,
    n: u32,
    samples: u32,
) -> Result<PeriodReport, EmbeddingError> {
    if samples < 2 {
        return Err(EmbeddingError::TooFewSamples { samples });
    }
    model.check_index(m, n)?;
    let xi = model.xi(m, n)?;
    let mut rows = Vec::with_capacity(samples as usize);
    let mut ok = true;
    for j in 0..samples {
        let t = Rat::new(BigInt::from(j), BigInt::from(samples));
        let at_t = xi.scale(&t);
        let at_t_plus_one = xi.scale(&(&t + Rat::one()));
        let bound = quotient_distance_bounds(model, &at_t_plus_one, &at_t, 2)?;
        let distance_zero = bound.upper.is_zero();
        ok &= distance_zero && bound.certified;
        rows.push(PeriodSample { t, distance_zero, certified: bound.certified });
    }
    let half = xi.scale(&Rat::new(BigInt::one(), BigInt::from(2)));
    let zero = AmbientVector::zero(model.e_dim);
    let half_bound = quotient_distance_bounds(model, &half, &zero, 2)?;
    let half_point_positive =
        half_bound.upper.cmp_rat(&Rat::zero()) == core::cmp::Ordering::Greater;
    ok &= half_point_positive && half_bound.certified;
    Ok(PeriodReport {
        samples: rows,
        half_point_distance: half_bound.upper,
        half_point_positive,
        half_point_certified: half_bound.certified,
        ok,
    })
}
