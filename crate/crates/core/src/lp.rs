//! Small dense linear-program solver.
//!
//! Two-phase primal simplex on a dense tableau, sized for the feasibility
//! and margin programs this crate builds (a few hundred rows). Dantzig
//! pricing with a permanent switch to Bland's rule after a stall, which
//! guarantees termination on degenerate tableaus.

const PIVOT_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
const STALL_LIMIT: usize = 60;

/// `maximize objective . x` subject to `rows[i] . x <= rhs[i]`, `x >= 0`.
#[derive(Debug, Clone)]
pub(crate) struct LinearProgram {
    n: usize,
    objective: Vec<f64>,
    rows: Vec<(Vec<(usize, f64)>, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(n: usize, objective: Vec<f64>) -> Self {
        assert_eq!(objective.len(), n);
        Self { n, objective, rows: Vec::new() }
    }

    /// Adds a sparse constraint `coeffs . x <= rhs`.
    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, rhs: f64) {
        debug_assert!(coeffs.iter().all(|&(j, _)| j < self.n));
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve()
    }
}

struct Tableau {
    n: usize,            // decision variables
    m: usize,            // constraint rows
    n_art: usize,        // artificial variables
    width: usize,        // total columns incl. rhs
    rows: Vec<Vec<f64>>, // m rows, each `width` wide; last entry is rhs
    obj: Vec<f64>,       // objective row: z_j - c_j, last entry is objective value
    basis: Vec<usize>,
    cost: Vec<f64>, // current phase costs per column
    objective: Vec<f64>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.n;
        let m = lp.rows.len();
        let n_art = lp.rows.iter().filter(|&&(_, rhs)| rhs < 0.0).count();
        let width = n + m + n_art + 1;
        let mut rows = vec![vec![0.0; width]; m];
        let mut basis = vec![0usize; m];
        let mut art = 0usize;
        for (i, (coeffs, rhs)) in lp.rows.iter().enumerate() {
            let flip = if *rhs < 0.0 { -1.0 } else { 1.0 };
            for &(j, v) in coeffs {
                rows[i][j] += flip * v;
            }
            rows[i][n + i] = flip; // slack
            rows[i][width - 1] = flip * rhs;
            if *rhs < 0.0 {
                let col = n + m + art;
                rows[i][col] = 1.0;
                basis[i] = col;
                art += 1;
            } else {
                basis[i] = n + i;
            }
        }
        Self {
            n,
            m,
            n_art,
            width,
            rows,
            obj: vec![0.0; width],
            basis,
            cost: Vec::new(),
            objective: lp.objective.clone(),
        }
    }

    /// Rebuilds the objective row `z_j - c_j` for the given phase costs.
    fn set_costs(&mut self, cost: Vec<f64>) {
        self.cost = cost;
        let mut obj = vec![0.0; self.width];
        for j in 0..self.width - 1 {
            obj[j] -= self.cost[j];
        }
        for i in 0..self.m {
            let cb = self.cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..self.width {
                    obj[j] += cb * self.rows[i][j];
                }
            }
        }
        // objective cell holds c_B' x_B
        self.obj = obj;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col];
        let inv = 1.0 / piv;
        for v in self.rows[row].iter_mut() {
            *v *= inv;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col];
            if factor != 0.0 {
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
                r[col] = 0.0;
            }
        }
        let factor = self.obj[col];
        if factor != 0.0 {
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations until optimal or unbounded.
    /// `allowed` limits entering columns (used to ban artificials in phase 2).
    fn iterate(&mut self, allowed: usize) -> bool {
        let mut stalled = 0usize;
        let mut last_value = self.obj[self.width - 1];
        loop {
            let bland = stalled >= STALL_LIMIT;
            let mut col = None;
            if bland {
                for j in 0..allowed {
                    if self.obj[j] > PIVOT_TOL {
                        col = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = PIVOT_TOL;
                for j in 0..allowed {
                    if self.obj[j] > best {
                        best = self.obj[j];
                        col = Some(j);
                    }
                }
            }
            let Some(col) = col else {
                return true; // optimal for current costs
            };
            // ratio test
            let mut row = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.m {
                let a = self.rows[i][col];
                if a > PIVOT_TOL {
                    let ratio = self.rows[i][self.width - 1] / a;
                    let better = ratio < best_ratio - 1e-12
                        || (ratio < best_ratio + 1e-12
                            && row.is_some_and(|r: usize| self.basis[i] < self.basis[r]));
                    if better {
                        best_ratio = ratio;
                        row = Some(i);
                    }
                }
            }
            let Some(row) = row else {
                return false; // unbounded direction
            };
            self.pivot(row, col);
            let value = self.obj[self.width - 1];
            if value < last_value - 1e-12 {
                stalled = 0;
                last_value = value;
            } else {
                stalled += 1;
            }
        }
    }

    fn solve(mut self) -> LpOutcome {
        let art_start = self.n + self.m;
        if self.n_art > 0 {
            // phase 1: minimize the sum of artificial variables
            let mut cost = vec![0.0; self.width - 1];
            for j in art_start..self.width - 1 {
                cost[j] = 1.0;
            }
            self.set_costs(cost);
            self.iterate(self.width - 1);
            if self.obj[self.width - 1] > FEAS_TOL {
                return LpOutcome::Infeasible;
            }
            // drive remaining artificials out of the basis; rows that cannot
            // be pivoted are redundant and get dropped
            let mut i = 0;
            while i < self.m {
                if self.basis[i] >= art_start {
                    if let Some(col) =
                        (0..art_start).find(|&j| self.rows[i][j].abs() > PIVOT_TOL)
                    {
                        self.pivot(i, col);
                    } else {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        self.m -= 1;
                        continue;
                    }
                }
                i += 1;
            }
        }
        // phase 2: maximize objective . x == minimize (-objective) . x
        let mut cost = vec![0.0; self.width - 1];
        for j in 0..self.n {
            cost[j] = -self.objective[j];
        }
        self.set_costs(cost);
        let optimal = self.iterate(art_start);
        if !optimal {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![0.0; self.n];
        for i in 0..self.m {
            if self.basis[i] < self.n {
                x[self.basis[i]] = self.rows[i][self.width - 1];
            }
        }
        let value = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_textbook_maximum() {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6
        let mut lp = LinearProgram::new(2, vec![3.0, 2.0]);
        lp.add_row(vec![(0, 1.0), (1, 1.0)], 4.0);
        lp.add_row(vec![(0, 1.0), (1, 3.0)], 6.0);
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 12.0).abs() < 1e-9);
                assert!((x[0] - 4.0).abs() < 1e-9);
                assert!(x[1].abs() < 1e-9);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_requires_phase_one() {
        // max -x s.t. -x <= -2  (i.e. x >= 2): optimum x = 2
        let mut lp = LinearProgram::new(1, vec![-1.0]);
        lp.add_row(vec![(0, -1.0)], -2.0);
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert!((x[0] - 2.0).abs() < 1e-9);
                assert!((value + 2.0).abs() < 1e-9);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x <= 1 and x >= 2
        let mut lp = LinearProgram::new(1, vec![0.0]);
        lp.add_row(vec![(0, 1.0)], 1.0);
        lp.add_row(vec![(0, -1.0)], -2.0);
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let lp = LinearProgram::new(1, vec![1.0]);
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_via_paired_rows() {
        // max x + y s.t. x + y = 1 (two rows), x <= 0.25
        let mut lp = LinearProgram::new(2, vec![1.0, 1.0]);
        lp.add_row(vec![(0, 1.0), (1, 1.0)], 1.0);
        lp.add_row(vec![(0, -1.0), (1, -1.0)], -1.0);
        lp.add_row(vec![(0, 1.0)], 0.25);
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert!((value - 1.0).abs() < 1e-9),
            other => panic!("unexpected outcome {other:?}"),
        }
    }
}
