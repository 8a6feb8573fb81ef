//! Finite pointed sets carrying an exact rational pseudometric.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::rat::Rat;

/// A finite pointed pseudometric space: named points, a distinguished
/// basepoint, and a square matrix of exact nonnegative rational distances.
///
/// Construction checks structure only (square matrix, basepoint in range,
/// distinct names). The pseudometric axioms are checked by [`PointedSpace::validate`],
/// which is a separate step so a caller can report every violation at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSpace {
    names: Vec<String>,
    basepoint: usize,
    dist: Vec<Vec<Rat>>,
}

/// Structural defect: the input does not even describe a candidate space.
/// Distinct from axiom violations, which [`ValidationReport`] carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceStructureError {
    EmptyPointSet,
    BasepointOutOfRange { basepoint: usize, len: usize },
    MatrixNotSquare { rows: usize, row: usize, row_len: usize, expected: usize },
    DuplicateName(String),
}

impl fmt::Display for SpaceStructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceStructureError::EmptyPointSet => write!(f, "point set is empty"),
            SpaceStructureError::BasepointOutOfRange { basepoint, len } => {
                write!(f, "basepoint index {basepoint} out of range for {len} points")
            }
            SpaceStructureError::MatrixNotSquare { rows, row, row_len, expected } => write!(
                f,
                "distance matrix is not {expected}x{expected}: {rows} rows, row {row} has {row_len} entries"
            ),
            SpaceStructureError::DuplicateName(name) => write!(f, "duplicate point name `{name}`"),
        }
    }
}

impl core::error::Error for SpaceStructureError {}

/// One violated pseudometric axiom, with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    NonzeroDiagonal { i: usize },
    Negative { i: usize, j: usize },
    Asymmetric { i: usize, j: usize },
    /// `d(i,k) > d(i,j) + d(j,k)`.
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NonzeroDiagonal { i } => write!(f, "d({i},{i}) != 0"),
            AxiomViolation::Negative { i, j } => write!(f, "d({i},{j}) < 0"),
            AxiomViolation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            AxiomViolation::Triangle { i, j, k } => {
                write!(f, "d({i},{k}) > d({i},{j}) + d({j},{k})")
            }
        }
    }
}

/// Exhaustive list of axiom violations; empty means the space is a valid
/// pseudometric space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl PointedSpace {
    pub fn new(
        names: Vec<String>,
        basepoint: usize,
        dist: Vec<Vec<Rat>>,
    ) -> Result<Self, SpaceStructureError> {
        let n = names.len();
        if n == 0 {
            return Err(SpaceStructureError::EmptyPointSet);
        }
        if basepoint >= n {
            return Err(SpaceStructureError::BasepointOutOfRange { basepoint, len: n });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(SpaceStructureError::DuplicateName(a.clone()));
            }
        }
        if dist.len() != n {
            return Err(SpaceStructureError::MatrixNotSquare {
                rows: dist.len(),
                row: 0,
                row_len: dist.first().map_or(0, Vec::len),
                expected: n,
            });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(SpaceStructureError::MatrixNotSquare {
                    rows: n,
                    row,
                    row_len: r.len(),
                    expected: n,
                });
            }
        }
        Ok(PointedSpace { names, basepoint, dist })
    }

    /// `n` points named `*`, `p1`, `p2`, ... with every off-diagonal
    /// distance equal to one (the discrete metric).
    pub fn discrete(n: usize) -> Self {
        use crate::rat::rat_int;
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    String::from("*")
                } else {
                    alloc::format!("p{i}")
                }
            })
            .collect();
        let dist = (0..n)
            .map(|i| (0..n).map(|j| rat_int((i != j) as i64)).collect())
            .collect();
        PointedSpace { names, basepoint: 0, dist }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rat {
        &self.dist[i][j]
    }

    /// Lists every violated pseudometric axiom: nonzero diagonal, negative
    /// or asymmetric entries, and every broken triangle `(i, j, k)` with
    /// pairwise-distinct indices. Pseudometrics may give distinct points
    /// distance zero, so that is not flagged.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut violations = Vec::new();
        for i in 0..n {
            if !self.dist[i][i].is_zero() {
                violations.push(AxiomViolation::NonzeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.dist[i][j] < Rat::zero() {
                    violations.push(AxiomViolation::Negative { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.dist[i][j] != self.dist[j][i] {
                    violations.push(AxiomViolation::Asymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    if self.dist[i][k] > &self.dist[i][j] + &self.dist[j][k] {
                        violations.push(AxiomViolation::Triangle { i, j, k });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}
