//! Uncapacitated min-cost flow on a complete digraph, solved by primal
//! network simplex over exact rationals. Entering arcs are chosen by
//! Bland's rule (first violating arc in lexicographic order), leaving arcs
//! as the lexicographically least blocking arc, so runs are deterministic
//! and finite.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::rat::Rat;

const PIVOT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SimplexError {
    /// A negative-cost directed cycle exists; the program is unbounded
    /// below. Cannot happen for nonnegative (pseudometric) costs.
    Unbounded,
    PivotLimit,
}

impl fmt::Display for SimplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplexError::Unbounded => write!(f, "flow program unbounded below"),
            SimplexError::PivotLimit => write!(f, "pivot limit exceeded"),
        }
    }
}

pub(crate) struct FlowSolution {
    /// Strictly positive flows on ordered point pairs.
    pub flow: BTreeMap<(usize, usize), Rat>,
    /// Node potentials `y` with `y[root] = 0` and `y_i - y_j <= cost(i,j)`
    /// for every ordered pair at optimality.
    pub potentials: Vec<Rat>,
    pub value: Rat,
}

struct TreeArc {
    tail: usize,
    head: usize,
    flow: Rat,
}

/// Minimizes `Σ cost[i][j]·f(i,j)` over nonnegative flows with divergence
/// `supply` (which must sum to zero). The spanning-tree basis is rooted at
/// `root`.
pub(crate) fn solve(
    cost: &[Vec<Rat>],
    supply: &[Rat],
    root: usize,
) -> Result<FlowSolution, SimplexError> {
    let n = supply.len();
    debug_assert_eq!(cost.len(), n);
    debug_assert!(supply.iter().sum::<Rat>().is_zero(), "supplies must balance");
    if n <= 1 {
        return Ok(FlowSolution {
            flow: BTreeMap::new(),
            potentials: vec![Rat::zero(); n],
            value: Rat::zero(),
        });
    }

    // Feasible starting basis: a star at the root.
    let mut tree: Vec<TreeArc> = (0..n)
        .filter(|&i| i != root)
        .map(|i| {
            if supply[i] >= Rat::zero() {
                TreeArc { tail: i, head: root, flow: supply[i].clone() }
            } else {
                TreeArc { tail: root, head: i, flow: -&supply[i] }
            }
        })
        .collect();

    for _ in 0..PIVOT_LIMIT {
        let y = potentials(n, root, &tree, cost);

        let mut entering = None;
        'scan: for i in 0..n {
            for j in 0..n {
                if i != j && &y[i] - &y[j] > cost[i][j] {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            let mut flow = BTreeMap::new();
            let mut value = Rat::zero();
            for arc in &tree {
                if !arc.flow.is_zero() {
                    value += &arc.flow * &cost[arc.tail][arc.head];
                    flow.insert((arc.tail, arc.head), arc.flow.clone());
                }
            }
            return Ok(FlowSolution { flow, potentials: y, value });
        };

        // Pushing θ on (ei → ej) returns through the tree path ej → ei;
        // arcs traversed against their orientation lose θ and bound it.
        let path = tree_path(n, &tree, ej, ei);
        let mut theta: Option<(Rat, usize)> = None; // (flow bound, arc index)
        for &(arc_idx, forward) in &path {
            if !forward {
                let candidate = &tree[arc_idx].flow;
                let better = match &theta {
                    None => true,
                    Some((bound, best_idx)) => {
                        candidate < bound
                            || (candidate == bound
                                && arc_key(&tree[arc_idx]) < arc_key(&tree[*best_idx]))
                    }
                };
                if better {
                    theta = Some((candidate.clone(), arc_idx));
                }
            }
        }
        let Some((theta, leaving_idx)) = theta else {
            return Err(SimplexError::Unbounded);
        };

        for &(arc_idx, forward) in &path {
            if forward {
                tree[arc_idx].flow += &theta;
            } else {
                tree[arc_idx].flow -= &theta;
            }
        }
        tree[leaving_idx] = TreeArc { tail: ei, head: ej, flow: theta };
    }
    Err(SimplexError::PivotLimit)
}

fn arc_key(arc: &TreeArc) -> (usize, usize) {
    (arc.tail, arc.head)
}

fn adjacency(n: usize, tree: &[TreeArc]) -> Vec<Vec<(usize, usize)>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, arc) in tree.iter().enumerate() {
        adj[arc.tail].push((idx, arc.head));
        adj[arc.head].push((idx, arc.tail));
    }
    adj
}

fn potentials(n: usize, root: usize, tree: &[TreeArc], cost: &[Vec<Rat>]) -> Vec<Rat> {
    let adj = adjacency(n, tree);
    let mut y: Vec<Option<Rat>> = vec![None; n];
    y[root] = Some(Rat::zero());
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        let yu = y[u].clone().expect("visited node has a potential");
        for &(idx, other) in &adj[u] {
            if y[other].is_some() {
                continue;
            }
            let arc = &tree[idx];
            // Tree arc (t → h) is tight: y_t - y_h = cost[t][h].
            let potential = if arc.tail == other {
                &yu + &cost[arc.tail][arc.head]
            } else {
                &yu - &cost[arc.tail][arc.head]
            };
            y[other] = Some(potential);
            stack.push(other);
        }
    }
    y.into_iter()
        .map(|p| p.expect("spanning tree reaches every node"))
        .collect()
}

/// Path `from → … → to` through the tree as `(arc index, traversed forward)`.
fn tree_path(n: usize, tree: &[TreeArc], from: usize, to: usize) -> Vec<(usize, bool)> {
    let adj = adjacency(n, tree);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n]; // (arc, previous node)
    let mut visited = vec![false; n];
    visited[from] = true;
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(idx, other) in &adj[u] {
            if !visited[other] {
                visited[other] = true;
                parent[other] = Some((idx, u));
                queue.push_back(other);
            }
        }
    }
    let mut path = Vec::new();
    let mut node = to;
    while node != from {
        let (idx, prev) = parent[node].expect("tree is connected");
        // Step prev → node: forward iff the arc is oriented prev → node.
        path.push((idx, tree[idx].tail == prev));
        node = prev;
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn discrete_cost(n: usize) -> Vec<Vec<Rat>> {
        (0..n)
            .map(|i| (0..n).map(|j| rat_int((i != j) as i64)).collect())
            .collect()
    }

    #[test]
    fn simple_transport() {
        // Send 2 units from node 1 to the root, distance 1 each.
        let cost = discrete_cost(3);
        let supply = alloc::vec![rat_int(-2), rat_int(2), rat_int(0)];
        let sol = solve(&cost, &supply, 0).unwrap();
        assert_eq!(sol.value, rat_int(2));
        let dual: Rat = supply.iter().zip(&sol.potentials).map(|(b, y)| b * y).sum();
        assert_eq!(dual, sol.value);
    }

    #[test]
    fn routes_through_cheap_middle_node() {
        // d(1,2) direct = 10, but through 0 costs 2.
        let cost = alloc::vec![
            alloc::vec![rat_int(0), rat_int(1), rat_int(1)],
            alloc::vec![rat_int(1), rat_int(0), rat_int(10)],
            alloc::vec![rat_int(1), rat_int(10), rat_int(0)],
        ];
        let supply = alloc::vec![rat_int(0), rat(3, 2), rat(-3, 2)];
        let sol = solve(&cost, &supply, 0).unwrap();
        assert_eq!(sol.value, rat_int(3));
        // Dual feasibility on every arc.
        for (i, row) in cost.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i != j {
                    assert!(&sol.potentials[i] - &sol.potentials[j] <= *c);
                }
            }
        }
    }

    #[test]
    fn negative_cycle_is_reported_unbounded() {
        let cost = alloc::vec![
            alloc::vec![rat_int(0), rat_int(-1)],
            alloc::vec![rat_int(-1), rat_int(0)],
        ];
        let supply = alloc::vec![rat_int(-1), rat_int(1)];
        assert!(matches!(solve(&cost, &supply, 0), Err(SimplexError::Unbounded)));
    }
}
