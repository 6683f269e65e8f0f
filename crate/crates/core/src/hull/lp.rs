//! Convex-combination feasibility by phase-one simplex.
//!
//! Decides whether `target` is a convex combination of `points`: find `w ≥ 0`
//! with `Σ w_j p_j = target` and `Σ w_j = 1`. One artificial variable per row;
//! the problem is feasible iff the minimal sum of artificials is (numerically) zero.

/// Constraint tolerance: a phase-one optimum at or below this counts as feasible.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

const PIVOT_EPS: f64 = 1e-12;
/// Degenerate pivots tolerated under Dantzig's rule before switching to Bland's.
const DEGENERATE_BUDGET: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub feasible: bool,
    /// Phase-one optimum: sum of the artificial variables (an L1 residual).
    pub infeasibility: f64,
    /// Non-zero weights of the basic solution, `(point index, weight)`.
    pub weights: Vec<(usize, f64)>,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    /// Reduced costs of every column.
    cost: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= p;
        }
        self.rhs[row] /= p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row];
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col];
            if factor != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
                self.rhs[i] -= factor * pivot_rhs;
            }
        }
        let factor = self.cost[col];
        if factor != 0.0 {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
            }
        }
        self.basis[row] = col;
    }
}

/// `points` are rows of equal dimension `target.len()`.
pub fn convex_combination(points: &[Vec<f64>], target: &[f64]) -> LpOutcome {
    let n = points.len();
    let d = target.len();
    let m = d + 1;
    let width = n + m;

    let mut rows = vec![vec![0.0; width]; m];
    let mut rhs = vec![0.0; m];
    for i in 0..m {
        let b = if i < d { target[i] } else { 1.0 };
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        for (j, p) in points.iter().enumerate() {
            debug_assert_eq!(p.len(), d);
            rows[i][j] = sign * if i < d { p[i] } else { 1.0 };
        }
        rows[i][n + i] = 1.0;
        rhs[i] = sign * b;
    }
    let mut cost = vec![0.0; width];
    for j in 0..n {
        cost[j] = -rows.iter().map(|r| r[j]).sum::<f64>();
    }
    let mut t = Tableau {
        rows,
        rhs,
        cost,
        basis: (n..width).collect(),
    };

    let mut degenerate_steps = 0;
    // Bland's rule terminates; the cap only guards against numerical trouble.
    for _ in 0..100_000 {
        let bland = degenerate_steps > DEGENERATE_BUDGET;
        let entering = if bland {
            (0..width).find(|&j| t.cost[j] < -PIVOT_EPS)
        } else {
            (0..width)
                .filter(|&j| t.cost[j] < -PIVOT_EPS)
                .min_by(|&a, &b| t.cost[a].total_cmp(&t.cost[b]))
        };
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t.rows[i][col];
            if a > PIVOT_EPS {
                let ratio = t.rhs[i] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-15 || (ratio <= lr + 1e-15 && t.basis[i] < t.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        // Phase one is bounded below by zero, so a missing leaving row means the
        // column is numerically useless; drop it.
        let Some((row, ratio)) = leave else {
            t.cost[col] = 0.0;
            continue;
        };
        if ratio <= 1e-15 {
            degenerate_steps += 1;
        }
        t.pivot(row, col);
    }

    let infeasibility: f64 = (0..m)
        .filter(|&i| t.basis[i] >= n)
        .map(|i| t.rhs[i].max(0.0))
        .sum();
    let mut weights: Vec<(usize, f64)> = (0..m)
        .filter(|&i| t.basis[i] < n && t.rhs[i] > 0.0)
        .map(|i| (t.basis[i], t.rhs[i]))
        .collect();
    weights.sort_by_key(|w| w.0);
    LpOutcome {
        feasible: infeasibility <= FEASIBILITY_TOLERANCE,
        infeasibility,
        weights,
    }
}
