//! Exact min-cost perfect matching on square rational cost matrices:
//! the O(n³) potential/shortest-augmenting-path method, plus a
//! lexicographic canonicalization pass for deterministic certificates.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rat::Rat;

/// Above this size the lexicographic refinement is skipped; the base
/// solver is still deterministic, just not guaranteed lex-minimal.
const LEX_LIMIT: usize = 16;

pub(crate) struct Assignment {
    /// `col_for_row[i]` = column matched to row `i`.
    pub col_for_row: Vec<usize>,
    pub total: Rat,
}

/// Solves the assignment problem exactly. Ties are resolved toward the
/// smallest column index, so the result is deterministic in the input order.
pub(crate) fn solve(cost: &[Vec<Rat>]) -> Assignment {
    let n = cost.len();
    for row in cost {
        assert_eq!(row.len(), n, "cost matrix must be square");
    }
    if n == 0 {
        return Assignment { col_for_row: vec![], total: Rat::zero() };
    }

    // Row/column potentials; p[j] = row matched to column j, with the extra
    // column n acting as the root of each augmenting search.
    let mut u = vec![Rat::zero(); n];
    let mut v = vec![Rat::zero(); n + 1];
    let mut p: Vec<Option<usize>> = vec![None; n + 1];
    let mut way = vec![0usize; n];

    for i in 0..n {
        p[n] = Some(i);
        let mut j0 = n;
        let mut minv: Vec<Option<Rat>> = vec![None; n]; // None = +infinity
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0].expect("scanned column is matched");
            let mut delta: Option<Rat> = None;
            let mut j1 = 0usize;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0][j] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("just set or already finite");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("complete instance always has an augmenting path");
            for j in 0..=n {
                if used[j] {
                    if let Some(pi) = p[j] {
                        u[pi] += &delta;
                    }
                    v[j] -= &delta;
                }
            }
            for j in 0..n {
                if !used[j] {
                    if let Some(m) = minv[j].as_mut() {
                        *m -= &delta;
                    }
                }
            }
            j0 = j1;
            if p[j0].is_none() {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut col_for_row = vec![usize::MAX; n];
    let mut total = Rat::zero();
    for (j, pj) in p.iter().enumerate().take(n) {
        let i = pj.expect("perfect matching");
        col_for_row[i] = j;
        total += &cost[i][j];
    }

    #[cfg(debug_assertions)]
    {
        // Dual feasibility certifies optimality.
        for (i, row) in cost.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                debug_assert!(&u[i] + &v[j] <= *c, "dual infeasible at ({i},{j})");
            }
        }
    }

    Assignment { col_for_row, total }
}

/// The optimal assignment whose `col_for_row` sequence is lexicographically
/// least among all optima (up to `LEX_LIMIT`; larger instances fall back to
/// the plain deterministic solve).
pub(crate) fn solve_lex_min(cost: &[Vec<Rat>]) -> Assignment {
    let n = cost.len();
    let base = solve(cost);
    if n == 0 || n > LEX_LIMIT {
        return base;
    }
    let optimum = base.total;

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut used_col = vec![false; n];
    let mut fixed_cost = Rat::zero();
    for r in 0..n {
        let mut placed = false;
        for c in 0..n {
            if used_col[c] {
                continue;
            }
            let sub: Vec<Vec<Rat>> = (r + 1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| !used_col[j] && j != c)
                        .map(|j| cost[i][j].clone())
                        .collect()
                })
                .collect();
            let candidate = &fixed_cost + &cost[r][c] + solve(&sub).total;
            if candidate == optimum {
                fixed_cost += &cost[r][c];
                used_col[c] = true;
                chosen.push(c);
                placed = true;
                break;
            }
        }
        debug_assert!(placed, "some column always completes an optimal matching");
    }
    Assignment { col_for_row: chosen, total: optimum }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn small_known_instance() {
        let cost = m(&[&[4, 1, 3], &[2, 0, 5], &[3, 2, 2]]);
        let a = solve(&cost);
        assert_eq!(a.total, rat_int(5)); // 1 + 2 + 2
    }

    #[test]
    fn lex_min_breaks_ties_toward_small_columns() {
        // All-zero costs: every matching is optimal; lex-min is the identity.
        let cost = m(&[&[0, 0], &[0, 0]]);
        let a = solve_lex_min(&cost);
        assert_eq!(a.col_for_row, alloc::vec![0, 1]);
        assert_eq!(a.total, rat_int(0));
    }

    #[test]
    fn lex_min_agrees_with_exhaustive_search() {
        // Among all optimal permutations, solve_lex_min must return the
        // lexicographically least col_for_row sequence.
        for salt in 0..12u64 {
            let n = 4;
            let cost: Vec<Vec<Rat>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| rat_int(((i as u64 * 5 + j as u64 * 3 + salt * 7) % 4) as i64))
                        .collect()
                })
                .collect();
            let got = solve_lex_min(&cost);

            let mut best_total: Option<Rat> = None;
            let mut perm: Vec<usize> = (0..n).collect();
            permute(&mut perm, 0, &cost, &mut best_total);
            let best_total = best_total.unwrap();

            let mut best_perm: Option<Vec<usize>> = None;
            exhaustive_lex(&mut (0..n).collect(), 0, &cost, &best_total, &mut best_perm);
            assert_eq!(got.col_for_row, best_perm.unwrap());
            assert_eq!(got.total, best_total);
        }
    }

    fn exhaustive_lex(
        perm: &mut Vec<usize>,
        k: usize,
        cost: &[Vec<Rat>],
        optimum: &Rat,
        best: &mut Option<Vec<usize>>,
    ) {
        if k == perm.len() {
            let total: Rat = perm.iter().enumerate().map(|(i, &j)| cost[i][j].clone()).sum();
            if &total == optimum && best.as_ref().is_none_or(|b| perm[..] < b[..]) {
                *best = Some(perm.clone());
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            exhaustive_lex(perm, k + 1, cost, optimum, best);
            perm.swap(k, i);
        }
    }

    #[test]
    fn matches_brute_force_on_random_like_matrices() {
        // Deterministic pseudo-random entries.
        let n = 5;
        let cost: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| rat_int(((i * 7 + j * 13) % 11) as i64)).collect())
            .collect();
        let a = solve(&cost);
        // Brute force over all permutations.
        let mut best: Option<Rat> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &cost, &mut best);
        assert_eq!(a.total, best.unwrap());
    }

    fn permute(perm: &mut Vec<usize>, k: usize, cost: &[Vec<Rat>], best: &mut Option<Rat>) {
        if k == perm.len() {
            let total: Rat = perm.iter().enumerate().map(|(i, &j)| cost[i][j].clone()).sum();
            if best.as_ref().is_none_or(|b| total < *b) {
                *best = Some(total);
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(perm, k + 1, cost, best);
            perm.swap(k, i);
        }
    }
}
