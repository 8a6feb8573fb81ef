//! Exact-symbolic circle and torus arithmetic.
//!
//! Angles are rational combinations over the basis `1, √2, √3, √5, ...`
//! (square roots of distinct primes), read modulo one. The basis is
//! linearly independent over the rationals together with `1`, so rational
//! independence of angles reduces to exact rational linear algebra, while
//! numeric questions (circle distances, net membership) go through
//! certified rational enclosures of the basis roots.
//!
//! The ε-net certifier discretizes the torus into a `1/g` grid and accounts
//! explicitly for two sources of slack: the covering radius of the grid
//! itself and the rounding of point coordinates to integer grid units.
//! A net is only reported `Certified` when every grid cell is within
//! `ε - slack` of a listed point, so certificates are sound; when the grid
//! is too coarse to decide, the outcome is `Inconclusive`, never a guess.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{dist_to_nearest_int, round_to_units, sqrt_enclosure, Interval, Precision};
use crate::rat::{dist_to_int, frac_part, primitive_integer_vector, Rat};

/// Largest permitted grid size (`g^dim` cells).
pub const NET_CELL_CAP: u64 = 1 << 24;

/// Subdivision bits per grid step for integer-unit rounding.
const SUBGRID_BITS: u32 = 24;

/// The `index`-th prime (`index >= 1`): 2, 3, 5, 7, ...
pub fn basis_prime(index: usize) -> u64 {
    assert!(index >= 1, "basis index 0 is the rational unit");
    let mut count = 0;
    let mut candidate = 1u64;
    while count < index {
        candidate += 1;
        if is_prime(candidate) {
            count += 1;
        }
    }
    candidate
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Symbol name for the `index`-th basis element: `"1"`, `"sqrt2"`, `"sqrt3"`, ...
pub fn symbol_name(index: usize) -> String {
    if index == 0 {
        String::from("1")
    } else {
        alloc::format!("sqrt{}", basis_prime(index))
    }
}

/// Parses `"1"` or `"sqrt<p>"` back to a basis index.
pub fn symbol_index(name: &str) -> Option<usize> {
    if name == "1" {
        return Some(0);
    }
    let p: u64 = name.strip_prefix("sqrt")?.parse().ok()?;
    if !is_prime(p) {
        return None;
    }
    let mut index = 0;
    let mut candidate = 1u64;
    loop {
        candidate += 1;
        if is_prime(candidate) {
            index += 1;
            if candidate == p {
                return Some(index);
            }
        }
    }
}

/// A point of the circle group: rational coordinates over the symbolic
/// basis, kept in canonical form (rational part reduced into `[0, 1)`,
/// trailing zero coordinates trimmed). Equality of canonical forms is
/// equality in the circle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Angle {
    coords: Vec<Rat>,
}

impl Angle {
    pub fn zero() -> Self {
        Angle { coords: Vec::new() }
    }

    pub fn from_rat(q: &Rat) -> Self {
        Angle::with_coords(alloc::vec![q.clone()])
    }

    /// `coeff · √(p_index)` as an angle (`index >= 1`).
    pub fn scaled_symbol(index: usize, coeff: &Rat) -> Self {
        let mut coords = alloc::vec![Rat::zero(); index + 1];
        coords[index] = coeff.clone();
        Angle::with_coords(coords)
    }

    pub fn with_coords(mut coords: Vec<Rat>) -> Self {
        if let Some(first) = coords.first_mut() {
            *first = frac_part(first);
        }
        while coords.last().is_some_and(Zero::is_zero) {
            coords.pop();
        }
        Angle { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> Rat {
        self.coords.get(index).cloned().unwrap_or_else(Rat::zero)
    }

    /// True when the angle has no irrational component.
    pub fn is_rational(&self) -> bool {
        self.coords.len() <= 1
    }

    pub fn add(&self, other: &Angle) -> Angle {
        let len = self.coords.len().max(other.coords.len());
        let coords = (0..len).map(|i| self.coord(i) + other.coord(i)).collect();
        Angle::with_coords(coords)
    }

    pub fn sub(&self, other: &Angle) -> Angle {
        let len = self.coords.len().max(other.coords.len());
        let coords = (0..len).map(|i| self.coord(i) - other.coord(i)).collect();
        Angle::with_coords(coords)
    }

    pub fn neg(&self) -> Angle {
        Angle::with_coords(self.coords.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, factor: &Rat) -> Angle {
        Angle::with_coords(self.coords.iter().map(|c| c * factor).collect())
    }

    pub fn scale_int(&self, factor: u64) -> Angle {
        self.scale(&Rat::from_integer(BigInt::from(factor)))
    }
}

/// Evaluation context: precision plus a cache of enclosures of the basis
/// square roots at that precision.
pub struct AngleCtx {
    prec: Precision,
    cache: RefCell<BTreeMap<usize, Interval>>,
}

impl AngleCtx {
    pub fn new(prec: Precision) -> Self {
        AngleCtx { prec, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    fn basis_enclosure(&self, index: usize) -> Interval {
        if index == 0 {
            return Interval::point(Rat::one());
        }
        if let Some(iv) = self.cache.borrow().get(&index) {
            return iv.clone();
        }
        let iv = sqrt_enclosure(&Rat::from_integer(BigInt::from(basis_prime(index))), self.prec);
        self.cache.borrow_mut().insert(index, iv.clone());
        iv
    }

    /// Certified enclosure of the angle's canonical representative.
    pub fn eval(&self, a: &Angle) -> Interval {
        let mut sum = Interval::point(a.coord(0));
        for (index, coeff) in a.coords.iter().enumerate().skip(1) {
            if coeff.is_zero() {
                continue;
            }
            sum = sum.add(&self.basis_enclosure(index).scale(coeff));
        }
        sum
    }
}

impl Default for AngleCtx {
    fn default() -> Self {
        AngleCtx::new(Precision::default())
    }
}

/// Distance in the circle group, as a certified enclosure in `[0, 1/2]`
/// (exact when both angles are rational).
pub fn circle_distance(ctx: &AngleCtx, a: &Angle, b: &Angle) -> Interval {
    let diff = a.sub(b);
    if diff.is_rational() {
        return Interval::point(dist_to_int(&diff.coord(0)));
    }
    dist_to_nearest_int(&ctx.eval(&diff))
}

/// A point of a finite product of circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    pub angles: Vec<Angle>,
}

impl TorusPoint {
    pub fn new(angles: Vec<Angle>) -> Self {
        TorusPoint { angles }
    }

    pub fn zero(dim: usize) -> Self {
        TorusPoint { angles: alloc::vec![Angle::zero(); dim] }
    }

    pub fn from_rats(coords: &[Rat]) -> Self {
        TorusPoint { angles: coords.iter().map(Angle::from_rat).collect() }
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn scale_int(&self, factor: u64) -> TorusPoint {
        TorusPoint { angles: self.angles.iter().map(|a| a.scale_int(factor)).collect() }
    }
}

/// Product metric on the torus: either the maximum of the factor distances
/// or a positively weighted sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusMetric {
    Max,
    WeightedSum(Vec<Rat>),
}

impl TorusMetric {
    fn weights(&self, dim: usize) -> Result<Vec<Rat>, TorusError> {
        match self {
            TorusMetric::Max => Ok(alloc::vec![Rat::one(); dim]),
            TorusMetric::WeightedSum(w) => {
                if w.len() != dim {
                    return Err(TorusError::WeightCount { expected: dim, got: w.len() });
                }
                if w.iter().any(|x| !x.is_positive()) {
                    return Err(TorusError::NonpositiveWeight);
                }
                Ok(w.clone())
            }
        }
    }

    pub fn is_sum(&self) -> bool {
        matches!(self, TorusMetric::WeightedSum(_))
    }

    /// Certified enclosure of the distance between two torus points.
    pub fn distance(
        &self,
        ctx: &AngleCtx,
        p: &TorusPoint,
        q: &TorusPoint,
    ) -> Result<Interval, TorusError> {
        if p.dim() != q.dim() {
            return Err(TorusError::DimensionMismatch { expected: p.dim(), got: q.dim() });
        }
        match self {
            TorusMetric::Max => {
                let mut best = Interval::zero();
                for (a, b) in p.angles.iter().zip(&q.angles) {
                    best = best.max(&circle_distance(ctx, a, b));
                }
                Ok(best)
            }
            TorusMetric::WeightedSum(w) => {
                if w.len() != p.dim() {
                    return Err(TorusError::WeightCount { expected: p.dim(), got: w.len() });
                }
                let mut sum = Interval::zero();
                for ((a, b), weight) in p.angles.iter().zip(&q.angles).zip(w) {
                    sum = sum.add(&circle_distance(ctx, a, b).scale(weight));
                }
                Ok(sum)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusError {
    DimensionMismatch { expected: usize, got: usize },
    WeightCount { expected: usize, got: usize },
    NonpositiveWeight,
    NonpositiveEps,
    /// Grid step must be a unit fraction `1/g`.
    GridStepNotUnitFraction,
    GridTooLarge { cells: u128, cap: u64 },
    /// Scaled integer quantities left the supported range.
    Overflow,
    /// An enclosure stayed too wide to decide a comparison at the
    /// precision cap; reported rather than guessed.
    Inconclusive { context: &'static str },
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::DimensionMismatch { expected, got } => {
                write!(f, "torus dimension mismatch: expected {expected}, got {got}")
            }
            TorusError::WeightCount { expected, got } => {
                write!(f, "metric weight count {got} does not match dimension {expected}")
            }
            TorusError::NonpositiveWeight => write!(f, "metric weights must be positive"),
            TorusError::NonpositiveEps => write!(f, "radius must be positive"),
            TorusError::GridStepNotUnitFraction => {
                write!(f, "grid step must be a unit fraction 1/g")
            }
            TorusError::GridTooLarge { cells, cap } => {
                write!(f, "grid has {cells} cells, beyond the cap {cap}")
            }
            TorusError::Overflow => write!(f, "scaled quantities exceed the integer range"),
            TorusError::Inconclusive { context } => {
                write!(f, "comparison inconclusive at the precision cap ({context})")
            }
        }
    }
}

impl core::error::Error for TorusError {}

/// Outcome of a rational-independence decision over `{1} ∪ angles`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent(DependenceRelation),
}

/// Integer relation `Σ angle_coeffs[j]·angle_j + unit_coeff·1 = 0`,
/// primitive and sign-normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceRelation {
    pub angle_coeffs: Vec<BigInt>,
    pub unit_coeff: BigInt,
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// Decides whether `{1} ∪ angles` is linearly independent over the
/// rationals, by exact rank computation on the irrational coordinates
/// (the basis roots are independent, so a vanishing combination must kill
/// every irrational coordinate; the `1`-coefficient then balances the
/// rational parts). On dependence an explicit integer relation is returned.
pub fn independence_check(angles: &[Angle]) -> Independence {
    let n = angles.len();
    if n == 0 {
        return Independence::Independent;
    }
    let cols = angles.iter().map(|a| a.coords().len()).max().unwrap_or(0);
    // rows: one per irrational basis index; variables: one per angle.
    let mut matrix: Vec<Vec<Rat>> = (1..cols)
        .map(|i| angles.iter().map(|a| a.coord(i)).collect())
        .collect();
    matrix.retain(|row| row.iter().any(|x| !x.is_zero()));

    match rational_kernel_vector(&matrix, n) {
        None => Independence::Independent,
        Some(lambda) => {
            let unit: Rat = -lambda
                .iter()
                .zip(angles)
                .map(|(l, a)| l * a.coord(0))
                .sum::<Rat>();
            let mut full = lambda;
            full.push(unit);
            let ints = primitive_integer_vector(&full)
                .expect("kernel vector is nonzero");
            let unit_coeff = ints[ints.len() - 1].clone();
            let angle_coeffs = ints[..ints.len() - 1].to_vec();
            Independence::Dependent(DependenceRelation { angle_coeffs, unit_coeff })
        }
    }
}

/// A nonzero rational solution of `matrix · λ = 0` (matrix given by rows),
/// or `None` when the kernel is trivial. Deterministic: the first free
/// column is set to one.
fn rational_kernel_vector(matrix: &[Vec<Rat>], vars: usize) -> Option<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = matrix.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..vars {
        let pivot_row = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        rows.swap(rank, pr);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[rank].clone();
                for (x, pivot) in rows[r].iter_mut().zip(&pivot_row) {
                    let delta = &factor * pivot;
                    *x -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rank == vars {
        return None;
    }
    let free = (0..vars).find(|c| !pivot_cols.contains(c)).expect("rank < vars");
    let mut lambda = alloc::vec![Rat::zero(); vars];
    lambda[free] = Rat::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        lambda[pc] = -rows[r][free].clone();
    }
    Some(lambda)
}

/// Smallest `m` in `1..=max_m` whose multiple of `x` comes within `eps` of
/// `target` in the max-factor metric; `None` means the exhaustive scan
/// proves there is no such power up to the bound. Comparisons that stay
/// undecided after precision escalation surface as an error instead of a
/// silent wrong answer.
pub fn kronecker_search(
    ctx: &AngleCtx,
    x: &TorusPoint,
    target: &TorusPoint,
    eps: &Rat,
    max_m: u64,
) -> Result<Option<u64>, TorusError> {
    if !eps.is_positive() {
        return Err(TorusError::NonpositiveEps);
    }
    let metric = TorusMetric::Max;
    for m in 1..=max_m {
        let point = x.scale_int(m);
        let mut distance = metric.distance(ctx, &point, target)?;
        let mut attempts = 0;
        loop {
            match distance.certified_lt(eps) {
                Some(true) => return Ok(Some(m)),
                Some(false) => break,
                None => {
                    attempts += 1;
                    if attempts > 4 {
                        return Err(TorusError::Inconclusive { context: "kronecker scan" });
                    }
                    let mut prec = ctx.precision();
                    for _ in 0..attempts {
                        prec = prec.doubled();
                    }
                    let finer = AngleCtx::new(prec);
                    distance = metric.distance(&finer, &point, target)?;
                }
            }
        }
    }
    Ok(None)
}

/// Outcome of a grid ε-net certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetOutcome {
    /// Every grid cell lies within `eps - slack` of a listed point, hence
    /// the whole torus lies within `eps`.
    Certified,
    /// The witness grid point is certifiably at distance `>= eps` from
    /// every listed point.
    Refuted { witness: Vec<Rat> },
    /// Neither certifiable nor refutable at this grid/precision.
    Inconclusive { grid_too_coarse: bool, worst_cell: Option<Vec<Rat>> },
}

impl NetOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, NetOutcome::Certified)
    }
}

/// Incremental grid certifier. Points are added in batches; only cells not
/// yet covered are re-examined, so growing an orbit prefix is cheap.
pub struct NetGrid {
    dim: usize,
    g: u64,
    unit_den: BigInt,
    weights_mu: Vec<i128>,
    sum_mode: bool,
    cover_radius_mu: i128,
    refute_threshold_mu: i128,
    grid_too_coarse: bool,
    uncovered: Vec<u32>,
    points_units: Vec<Vec<i128>>,
    strides: Vec<u64>,
    u_units: i128,
}

impl NetGrid {
    pub fn new(dim: usize, g: u64, eps: &Rat, metric: &TorusMetric) -> Result<Self, TorusError> {
        if dim == 0 || g == 0 {
            return Err(TorusError::GridStepNotUnitFraction);
        }
        if !eps.is_positive() {
            return Err(TorusError::NonpositiveEps);
        }
        let cells = (g as u128).checked_pow(dim as u32).ok_or(TorusError::Overflow)?;
        if cells > NET_CELL_CAP as u128 {
            return Err(TorusError::GridTooLarge { cells, cap: NET_CELL_CAP });
        }
        let weights = metric.weights(dim)?;
        let sum_mode = metric.is_sum();

        let mut q = BigInt::one();
        for w in &weights {
            q = q.lcm(w.denom());
        }
        let unit_den: BigInt = BigInt::from(g) << SUBGRID_BITS;
        let to_i128 = |x: &BigInt| x.to_i128().ok_or(TorusError::Overflow);

        let weights_mu: Vec<i128> = weights
            .iter()
            .map(|w| to_i128(&(w * Rat::from_integer(q.clone())).to_integer()))
            .collect::<Result<_, _>>()?;
        // eps may have an arbitrary denominator (e.g. an enclosure
        // endpoint); round it to the scaled grid conservatively in each
        // direction instead of scaling exactly.
        let eps_scaled = eps * Rat::from_integer(&q * &unit_den);
        let eps_mu_floor = to_i128(&eps_scaled.floor().to_integer())?;
        let eps_mu_ceil = to_i128(&eps_scaled.ceil().to_integer())?;
        let combine = |per: &dyn Fn(i128) -> i128| -> i128 {
            if sum_mode {
                weights_mu.iter().map(|&w| per(w)).sum()
            } else {
                weights_mu.iter().map(|&w| per(w)).max().unwrap_or(0)
            }
        };
        let slack_mu = combine(&|w| w << (SUBGRID_BITS - 1));
        let delta_mu = combine(&|w| w);
        let u_units = to_i128(&unit_den)?;
        // Worst representable cost must stay far from overflow.
        let worst = combine(&|w| w.saturating_mul(u_units / 2));
        if worst > i128::MAX / 4 {
            return Err(TorusError::Overflow);
        }

        let cover_radius_mu = eps_mu_floor - slack_mu - delta_mu;
        Ok(NetGrid {
            dim,
            g,
            unit_den,
            weights_mu,
            sum_mode,
            cover_radius_mu,
            refute_threshold_mu: eps_mu_ceil + delta_mu,
            grid_too_coarse: cover_radius_mu <= 0,
            uncovered: (0..cells as u32).collect(),
            points_units: Vec::new(),
            strides: {
                let mut s = alloc::vec![1u64; dim];
                for t in (0..dim.saturating_sub(1)).rev() {
                    s[t] = s[t + 1] * g;
                }
                s
            },
            u_units,
        })
    }

    pub fn is_grid_too_coarse(&self) -> bool {
        self.grid_too_coarse
    }

    fn cell_units(&self, cell: u32, out: &mut [i128]) {
        let mut rest = cell as u64;
        for (slot, stride) in out.iter_mut().zip(&self.strides) {
            let digit = rest / stride;
            rest %= stride;
            *slot = (digit as i128) << SUBGRID_BITS;
        }
    }

    fn point_to_units(&self, ctx: &AngleCtx, p: &TorusPoint) -> Result<Vec<i128>, TorusError> {
        if p.dim() != self.dim {
            return Err(TorusError::DimensionMismatch { expected: self.dim, got: p.dim() });
        }
        p.angles
            .iter()
            .map(|a| {
                let iv = ctx.eval(a);
                let units = round_to_units(&iv, &self.unit_den)
                    .ok_or(TorusError::Inconclusive { context: "coordinate rounding" })?;
                let reduced = units.mod_floor(&self.unit_den);
                reduced.to_i128().ok_or(TorusError::Overflow)
            })
            .collect()
    }

    /// Cost between a cell (by unit coords) and a point (by unit coords),
    /// in the scaled metric units of this grid.
    fn cost(&self, cell: &[i128], point: &[i128]) -> i128 {
        let mut acc: i128 = 0;
        for t in 0..self.dim {
            let raw = (cell[t] - point[t]).rem_euclid(self.u_units);
            let circ = raw.min(self.u_units - raw);
            let contrib = self.weights_mu[t] * circ;
            if self.sum_mode {
                acc += contrib;
            } else if contrib > acc {
                acc = contrib;
            }
        }
        acc
    }

    /// Adds points and re-tests only the still-uncovered cells.
    pub fn add_points(&mut self, ctx: &AngleCtx, points: &[TorusPoint]) -> Result<(), TorusError> {
        let new_units: Vec<Vec<i128>> = points
            .iter()
            .map(|p| self.point_to_units(ctx, p))
            .collect::<Result<_, _>>()?;
        if self.cover_radius_mu > 0 {
            let mut cell = alloc::vec![0i128; self.dim];
            let mut still = Vec::with_capacity(self.uncovered.len());
            'cells: for &idx in &self.uncovered {
                self.cell_units(idx, &mut cell);
                for p in &new_units {
                    if self.cost(&cell, p) <= self.cover_radius_mu {
                        continue 'cells;
                    }
                }
                still.push(idx);
            }
            self.uncovered = still;
        }
        self.points_units.extend(new_units);
        Ok(())
    }

    pub fn fully_covered(&self) -> bool {
        !self.grid_too_coarse && self.uncovered.is_empty()
    }

    fn cell_rats(&self, cell: u32) -> Vec<Rat> {
        let mut units = alloc::vec![0i128; self.dim];
        self.cell_units(cell, &mut units);
        units
            .iter()
            .map(|&u| Rat::new(BigInt::from(u >> SUBGRID_BITS), BigInt::from(self.g)))
            .collect()
    }

    /// Final classification of the uncovered cells.
    pub fn classify(&self) -> NetOutcome {
        if self.fully_covered() {
            return NetOutcome::Certified;
        }
        let mut cell = alloc::vec![0i128; self.dim];
        let mut worst: Option<(i128, u32)> = None;
        for &idx in &self.uncovered {
            self.cell_units(idx, &mut cell);
            let min_cost = self
                .points_units
                .iter()
                .map(|p| self.cost(&cell, p))
                .min();
            match min_cost {
                None => {
                    // No points at all: any cell refutes.
                    return NetOutcome::Refuted { witness: self.cell_rats(idx) };
                }
                Some(c) => {
                    if c >= self.refute_threshold_mu {
                        return NetOutcome::Refuted { witness: self.cell_rats(idx) };
                    }
                    if worst.is_none_or(|(w, _)| c > w) {
                        worst = Some((c, idx));
                    }
                }
            }
        }
        NetOutcome::Inconclusive {
            grid_too_coarse: self.grid_too_coarse,
            worst_cell: worst.map(|(_, idx)| self.cell_rats(idx)),
        }
    }
}

/// Extracts `g` from a unit-fraction grid step `1/g`.
pub fn unit_fraction_denominator(grid_step: &Rat) -> Result<u64, TorusError> {
    if !grid_step.is_positive() || !grid_step.numer().is_one() {
        return Err(TorusError::GridStepNotUnitFraction);
    }
    grid_step.denom().to_u64().ok_or(TorusError::GridStepNotUnitFraction)
}

/// One-shot ε-net certification of `points` in the `dim`-torus under
/// `metric`, on the grid of step `grid_step = 1/g`.
pub fn net_check(
    ctx: &AngleCtx,
    points: &[TorusPoint],
    dim: usize,
    eps: &Rat,
    grid_step: &Rat,
    metric: &TorusMetric,
) -> Result<NetOutcome, TorusError> {
    let g = unit_fraction_denominator(grid_step)?;
    let mut grid = NetGrid::new(dim, g, eps, metric)?;
    grid.add_points(ctx, points)?;
    Ok(grid.classify())
}

/// Exact 1-D oracle: the covering radius of a set of circle points is half
/// the largest circular gap between consecutive (sorted) points. Distinct
/// canonical angles are distinct reals, so sorting by certified enclosures
/// terminates; duplicates are removed symbolically first.
pub fn covering_radius_circle(ctx: &AngleCtx, points: &[Angle]) -> Result<Interval, TorusError> {
    let mut unique: Vec<Angle> = Vec::new();
    for p in points {
        if !unique.contains(p) {
            unique.push(p.clone());
        }
    }
    if unique.is_empty() {
        return Err(TorusError::Inconclusive { context: "covering radius of empty set" });
    }
    // Evaluate the canonical representative and reduce it into [0, 1).
    let mut values: Vec<(Interval, Angle)> = Vec::with_capacity(unique.len());
    for a in &unique {
        let mut prec = ctx.precision();
        let iv = loop {
            let local = AngleCtx::new(prec);
            let iv = local.eval(a);
            let lo_floor = iv.lo().floor();
            let hi_floor = iv.hi().floor();
            if lo_floor == hi_floor {
                let shift = Rat::from_integer(-lo_floor.to_integer());
                break iv.add_rat(&shift);
            }
            if a.is_rational() {
                // Exact rational: representative already in [0,1).
                break iv;
            }
            prec = prec.doubled();
            if prec.bits() > ctx.precision().bits().saturating_mul(16) {
                return Err(TorusError::Inconclusive { context: "floor of angle value" });
            }
        };
        values.push((iv, a.clone()));
    }
    values.sort_by(|(a, _), (b, _)| a.lo().cmp(b.lo()));
    // Certified separation of consecutive values (they are distinct reals).
    for w in values.windows(2) {
        if w[0].0.hi() >= w[1].0.lo() {
            return Err(TorusError::Inconclusive { context: "sorting circle points" });
        }
    }
    let mut max_gap = Interval::zero();
    for w in values.windows(2) {
        max_gap = max_gap.max(&w[1].0.sub(&w[0].0));
    }
    let wrap = Interval::point(Rat::one())
        .sub(&values[values.len() - 1].0.sub(&values[0].0));
    max_gap = max_gap.max(&wrap);
    Ok(max_gap.scale(&Rat::new(BigInt::one(), BigInt::from(2))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use alloc::vec;

    #[test]
    fn basis_symbols() {
        assert_eq!(basis_prime(1), 2);
        assert_eq!(basis_prime(2), 3);
        assert_eq!(basis_prime(3), 5);
        assert_eq!(basis_prime(5), 11);
        assert_eq!(symbol_name(0), "1");
        assert_eq!(symbol_name(2), "sqrt3");
        assert_eq!(symbol_index("sqrt5"), Some(3));
        assert_eq!(symbol_index("sqrt4"), None);
        assert_eq!(symbol_index("1"), Some(0));
    }

    #[test]
    fn circle_distances_on_rationals_are_exact() {
        let ctx = AngleCtx::default();
        let zero = Angle::zero();
        let half = Angle::from_rat(&rat(1, 2));
        let three_q = Angle::from_rat(&rat(3, 4));
        assert_eq!(circle_distance(&ctx, &zero, &zero), Interval::point(rat_int(0)));
        assert_eq!(circle_distance(&ctx, &zero, &half), Interval::point(rat(1, 2)));
        assert_eq!(circle_distance(&ctx, &zero, &three_q), Interval::point(rat(1, 4)));
    }

    #[test]
    fn circle_distance_encloses_sqrt2_fraction() {
        let ctx = AngleCtx::default();
        let a = Angle::scaled_symbol(1, &rat(1, 2)); // sqrt(2)/2 ≈ 0.7071
        let d = circle_distance(&ctx, &a, &Angle::zero());
        // Distance to nearest integer is 1 - 0.70710678... = 0.29289...
        assert_eq!(d.certified_lt(&rat(3, 10)), Some(true));
        assert_eq!(d.certified_gt(&rat(29, 100)), Some(true));
    }

    #[test]
    fn independence_of_sqrt2_and_rational_failures() {
        let sqrt2 = Angle::scaled_symbol(1, &Rat::one());
        assert!(independence_check(core::slice::from_ref(&sqrt2)).is_independent());

        let quarter = Angle::from_rat(&rat(1, 4));
        match independence_check(&[quarter]) {
            Independence::Dependent(rel) => {
                assert_eq!(rel.angle_coeffs, vec![BigInt::from(4)]);
                assert_eq!(rel.unit_coeff, BigInt::from(-1));
            }
            Independence::Independent => panic!("1/4 is rationally dependent"),
        }

        let shifted = sqrt2.add(&Angle::from_rat(&rat(1, 3)));
        match independence_check(&[sqrt2.clone(), shifted]) {
            Independence::Dependent(rel) => {
                // 3·x - 3·(x + 1/3) + 1 = 0.
                assert_eq!(rel.angle_coeffs, vec![BigInt::from(3), BigInt::from(-3)]);
                assert_eq!(rel.unit_coeff, BigInt::from(1));
            }
            Independence::Independent => panic!("difference is rational"),
        }

        // sqrt2 and sqrt3 are jointly independent with 1.
        let sqrt3 = Angle::scaled_symbol(2, &Rat::one());
        assert!(independence_check(&[sqrt2, sqrt3]).is_independent());
    }

    #[test]
    fn kronecker_scan_rational_cases() {
        let ctx = AngleCtx::default();
        let x = TorusPoint::from_rats(&[rat(1, 4)]);
        let target = TorusPoint::from_rats(&[rat(1, 2)]);
        assert_eq!(kronecker_search(&ctx, &x, &target, &rat(1, 100), 10).unwrap(), Some(2));

        let unreachable = TorusPoint::from_rats(&[rat(1, 3)]);
        assert_eq!(
            kronecker_search(&ctx, &x, &unreachable, &rat(1, 100), 1000).unwrap(),
            None
        );
    }

    #[test]
    fn kronecker_scan_finds_sqrt2_near_zero() {
        let ctx = AngleCtx::default();
        let x = TorusPoint::new(vec![Angle::scaled_symbol(1, &Rat::one())]);
        let target = TorusPoint::zero(1);
        let m = kronecker_search(&ctx, &x, &target, &rat(1, 20), 100).unwrap();
        assert!(m.is_some());
    }

    #[test]
    fn net_certification_of_quarter_orbit() {
        let ctx = AngleCtx::default();
        let points: Vec<TorusPoint> = [rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4)]
            .iter()
            .map(|q| TorusPoint::from_rats(core::slice::from_ref(q)))
            .collect();
        let eps = rat(1, 4) + rat(1, 100);
        let outcome = net_check(&ctx, &points, 1, &eps, &rat(1, 1000), &TorusMetric::Max).unwrap();
        assert_eq!(outcome, NetOutcome::Certified);
    }

    #[test]
    fn net_refutation_of_single_point() {
        let ctx = AngleCtx::default();
        let points = vec![TorusPoint::from_rats(&[rat_int(0)])];
        let outcome =
            net_check(&ctx, &points, 1, &rat(1, 4), &rat(1, 1000), &TorusMetric::Max).unwrap();
        match outcome {
            NetOutcome::Refuted { witness } => {
                // Witness sits near the antipode.
                let w = &witness[0];
                assert!(dist_to_int(w) >= rat(1, 4));
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn net_inconclusive_when_grid_too_coarse() {
        // The quarter orbit has covering radius exactly 1/8. On a 1/4 grid
        // the cells coincide with the points, so the 1/10 claim can be
        // neither certified (slack 1/8 > 1/10) nor refuted.
        let ctx = AngleCtx::default();
        let points: Vec<TorusPoint> = [rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4)]
            .iter()
            .map(|q| TorusPoint::from_rats(core::slice::from_ref(q)))
            .collect();
        let outcome =
            net_check(&ctx, &points, 1, &rat(1, 10), &rat(1, 4), &TorusMetric::Max).unwrap();
        assert!(matches!(
            outcome,
            NetOutcome::Inconclusive { grid_too_coarse: true, .. }
        ));

        // A single point at eps 1/1000 is honestly refutable even on the
        // coarse grid: the witness cell 1/4 is far from the point.
        let single = vec![TorusPoint::from_rats(&[rat_int(0)])];
        let outcome =
            net_check(&ctx, &single, 1, &rat(1, 1000), &rat(1, 4), &TorusMetric::Max).unwrap();
        assert!(matches!(outcome, NetOutcome::Refuted { .. }));
    }

    #[test]
    fn covering_radius_oracle_on_quarter_orbit() {
        let ctx = AngleCtx::default();
        let points: Vec<Angle> = [rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4)]
            .iter()
            .map(Angle::from_rat)
            .collect();
        let radius = covering_radius_circle(&ctx, &points).unwrap();
        assert_eq!(*radius.lo(), rat(1, 8));
        assert_eq!(*radius.hi(), rat(1, 8));
    }

    #[test]
    fn net_agrees_with_covering_radius_on_sqrt2_orbit() {
        let ctx = AngleCtx::default();
        let base = Angle::scaled_symbol(1, &Rat::one());
        let orbit: Vec<Angle> = (1..=20).map(|m| base.scale_int(m)).collect();
        let radius = covering_radius_circle(&ctx, &orbit).unwrap();
        let points: Vec<TorusPoint> =
            orbit.iter().map(|a| TorusPoint::new(vec![a.clone()])).collect();

        // Comfortably above the covering radius: must certify.
        let eps_hi = radius.hi() + rat(1, 50);
        let out = net_check(&ctx, &points, 1, &eps_hi, &rat(1, 2048), &TorusMetric::Max).unwrap();
        assert_eq!(out, NetOutcome::Certified);

        // Strictly below: must refute.
        let eps_lo = radius.lo() - rat(1, 50);
        assert!(eps_lo.is_positive());
        let out = net_check(&ctx, &points, 1, &eps_lo, &rat(1, 2048), &TorusMetric::Max).unwrap();
        assert!(matches!(out, NetOutcome::Refuted { .. }));
    }
}
