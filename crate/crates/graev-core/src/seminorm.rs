//! The maximal (Lipschitz-free) seminorm on rational combinations,
//! computed as a min-cost transshipment over the space's complete graph
//! with the basepoint as slack node, together with the optimal dual:
//! a 1-Lipschitz function vanishing at the basepoint whose pairing with
//! the input equals the flow value exactly. The equality of this seminorm
//! with the Graev norm on integer words is checked by [`tu_check`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::norm::{graev_norm, MatchingCertificate, NormError};
use crate::rat::Rat;
use crate::simplex::{self, SimplexError};
use crate::space::PointedSpace;
use crate::word::{word_to_lincomb, LinComb, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeminormError {
    Word(WordError),
    Norm(NormError),
    /// Negative distances make the flow program unbounded below; the
    /// space is not a pseudometric space.
    UnboundedBelow,
    PivotLimit,
}

impl From<WordError> for SeminormError {
    fn from(e: WordError) -> Self {
        SeminormError::Word(e)
    }
}

impl From<NormError> for SeminormError {
    fn from(e: NormError) -> Self {
        SeminormError::Norm(e)
    }
}

impl From<SimplexError> for SeminormError {
    fn from(e: SimplexError) -> Self {
        match e {
            SimplexError::Unbounded => SeminormError::UnboundedBelow,
            SimplexError::PivotLimit => SeminormError::PivotLimit,
        }
    }
}

impl fmt::Display for SeminormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeminormError::Word(e) => e.fmt(f),
            SeminormError::Norm(e) => e.fmt(f),
            SeminormError::UnboundedBelow => {
                write!(f, "flow program unbounded below (negative distances?)")
            }
            SeminormError::PivotLimit => write!(f, "network simplex pivot limit exceeded"),
        }
    }
}

impl core::error::Error for SeminormError {}

/// Primal certificate: strictly positive arc flows whose divergence matches
/// the input combination (the basepoint absorbs the residual) and whose
/// cost is the seminorm value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCertificate {
    pub flow: BTreeMap<(usize, usize), Rat>,
    pub value: Rat,
}

impl FlowCertificate {
    /// Conservation, nonnegativity, and cost, re-derived from scratch.
    pub fn verify(&self, space: &PointedSpace, v: &LinComb) -> bool {
        if self.flow.values().any(|f| f.is_negative()) {
            return false;
        }
        let n = space.len();
        if self.flow.keys().any(|&(i, j)| i >= n || j >= n || i == j) {
            return false;
        }
        let mut divergence = alloc::vec![Rat::zero(); n];
        let mut cost = Rat::zero();
        for (&(i, j), f) in &self.flow {
            divergence[i] += f;
            divergence[j] -= f;
            cost += f * space.dist(i, j);
        }
        if cost != self.value {
            return false;
        }
        (0..n).all(|i| {
            if i == space.basepoint() {
                // Balanced overall, so the basepoint residual is forced.
                true
            } else {
                divergence[i] == v.coeff(i)
            }
        })
    }

    /// True when every flow amount is an integer (guaranteed for integer
    /// inputs: spanning-tree bases preserve integrality).
    pub fn is_integral(&self) -> bool {
        self.flow.values().all(Rat::is_integer)
    }
}

/// Dual certificate: point values of a 1-Lipschitz function `f` with
/// `f(*) = 0` whose pairing `Σ v(x) f(x)` attains the seminorm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualWitness {
    pub values: Vec<Rat>,
}

impl DualWitness {
    pub fn objective(&self, v: &LinComb) -> Rat {
        v.iter().map(|(i, c)| c * &self.values[i]).sum()
    }

    /// `f(*) = 0` and `|f(x) - f(y)| <= d(x,y)` for every pair, exactly.
    pub fn is_feasible(&self, space: &PointedSpace) -> bool {
        if self.values.len() != space.len() {
            return false;
        }
        if !self.values[space.basepoint()].is_zero() {
            return false;
        }
        let n = space.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| (&self.values[i] - &self.values[j]).abs() <= *space.dist(i, j))
        })
    }
}

fn solve_flow(
    space: &PointedSpace,
    v: &LinComb,
) -> Result<(Rat, FlowCertificate, DualWitness), SeminormError> {
    v.check_over(space)?;
    let n = space.len();
    let star = space.basepoint();
    let mut supply = alloc::vec![Rat::zero(); n];
    let mut residual = Rat::zero();
    for (i, c) in v.iter() {
        supply[i] = c.clone();
        residual -= c;
    }
    supply[star] = residual;

    let cost: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| space.dist(i, j).clone()).collect())
        .collect();
    let solution = simplex::solve(&cost, &supply, star)?;

    let witness = DualWitness { values: solution.potentials };
    let certificate = FlowCertificate { flow: solution.flow, value: solution.value.clone() };

    // Strong duality is an unconditional invariant of the solver.
    let dual_value: Rat = supply.iter().zip(&witness.values).map(|(b, y)| b * y).sum();
    assert_eq!(dual_value, solution.value, "strong duality must hold exactly");

    Ok((solution.value, certificate, witness))
}

/// The free seminorm `p(v)` with its optimal flow certificate.
pub fn free_seminorm(
    space: &PointedSpace,
    v: &LinComb,
) -> Result<(Rat, FlowCertificate), SeminormError> {
    let (value, cert, _) = solve_flow(space, v)?;
    Ok((value, cert))
}

/// The optimal 1-Lipschitz dual witness for `p(v)`.
pub fn dual_witness(space: &PointedSpace, v: &LinComb) -> Result<DualWitness, SeminormError> {
    let (_, _, witness) = solve_flow(space, v)?;
    Ok(witness)
}

/// Value, flow certificate, and dual witness in one solve.
pub fn seminorm_with_dual(
    space: &PointedSpace,
    v: &LinComb,
) -> Result<(Rat, FlowCertificate, DualWitness), SeminormError> {
    solve_flow(space, v)
}

/// Outcome of the matching-vs-flow equality check on one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuReport {
    pub graev_value: Rat,
    pub seminorm_value: Rat,
    /// Sanity precheck: the seminorm never exceeds the Graev norm.
    pub seminorm_le_graev: bool,
    pub equal: bool,
    pub matching: MatchingCertificate,
    pub flow: FlowCertificate,
    pub dual: DualWitness,
}

/// Computes the Graev norm of `w` by matching and the free seminorm of its
/// rational image by flow, and reports whether the two coincide exactly.
pub fn tu_check(space: &PointedSpace, w: &Word) -> Result<TuReport, SeminormError> {
    let (graev_value, matching) = graev_norm(space, w)?;
    let v = word_to_lincomb(w);
    let (seminorm_value, flow, dual) = solve_flow(space, &v)?;
    let seminorm_le_graev = seminorm_value <= graev_value;
    let equal = seminorm_value == graev_value;
    Ok(TuReport { graev_value, seminorm_value, seminorm_le_graev, equal, matching, flow, dual })
}
