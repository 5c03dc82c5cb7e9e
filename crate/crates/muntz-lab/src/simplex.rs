//! Dense tableau simplex for the small LPs produced by row generation.
//!
//! Maximizes `c . x` subject to `A x <= b`, `x >= 0`, with `b >= 0` so the
//! slack basis is feasible from the start. Bland's rule on both the
//! entering and leaving choices makes the pivot sequence finite and
//! deterministic.

use crate::error::{Error, Result};

/// Entries this close to zero are treated as zero in pivoting decisions.
const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub objective: f64,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// Improving direction over the structural variables: `x + s*ray` stays
    /// feasible for all `s >= 0` while the objective grows.
    Unbounded { ray: Vec<f64> },
}

/// Solves `max c.x : A x <= b, x >= 0` for `b >= 0`.
pub fn maximize(
    c: &[f64],
    rows: &[Vec<f64>],
    b: &[f64],
    max_iters: usize,
) -> Result<LpOutcome> {
    let n = c.len();
    let m = rows.len();
    if rows.len() != b.len() || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition(
            "constraint matrix shape mismatch".into(),
        ));
    }
    if let Some(&bad) = b.iter().find(|&&bi| !(bi >= 0.0)) {
        return Err(Error::Precondition(format!(
            "rhs must be non-negative for the slack basis, got {bad}"
        )));
    }

    let width = n + m + 1;
    let mut tab: Vec<Vec<f64>> = rows
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, &bi))| {
            let mut t = vec![0.0; width];
            t[..n].copy_from_slice(row);
            t[n + i] = 1.0;
            t[width - 1] = bi;
            t
        })
        .collect();
    let mut cost = vec![0.0; width];
    cost[..n].copy_from_slice(c);
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..max_iters {
        // Bland: lowest-index column with positive reduced cost.
        let Some(enter) = (0..n + m).find(|&j| cost[j] > EPS) else {
            let mut x = vec![0.0; n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    x[bv] = tab[i][width - 1];
                }
            }
            return Ok(LpOutcome::Optimal(LpSolution {
                objective: -cost[width - 1],
                x,
            }));
        };

        // Min-ratio rows, ties broken by lowest basic variable index.
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter] > EPS {
                let ratio = row[width - 1] / row[enter];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - EPS
                            || (ratio < br + EPS && basis[i] < basis[bi])
                        {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
        }
        let Some((pivot_row, _)) = leave else {
            // No row blocks the entering variable; walk the basis to read
            // off the structural components of the improving ray.
            let mut ray = vec![0.0; n];
            if enter < n {
                ray[enter] = 1.0;
            }
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    ray[bv] = (-tab[i][enter]).max(0.0);
                }
            }
            return Ok(LpOutcome::Unbounded { ray });
        };

        let pivot = tab[pivot_row][enter];
        for x in tab[pivot_row].iter_mut() {
            *x /= pivot;
        }
        for i in 0..m {
            if i != pivot_row && tab[i][enter].abs() > 0.0 {
                let factor = tab[i][enter];
                for j in 0..width {
                    tab[i][j] -= factor * tab[pivot_row][j];
                }
                tab[i][enter] = 0.0;
            }
        }
        let factor = cost[enter];
        if factor.abs() > 0.0 {
            for j in 0..width {
                cost[j] -= factor * tab[pivot_row][j];
            }
            cost[enter] = 0.0;
        }
        basis[pivot_row] = enter;
    }
    Err(Error::LpIterationLimit(max_iters))
}
