//! Dense two-phase simplex with Bland's rule.

use crate::error::{Error, Result};

pub const LP_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<f64>,
    rel: Relation,
    rhs: f64,
}

/// `minimize c·x` subject to linear rows; variables are nonnegative unless
/// declared free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    n: usize,
    objective: Vec<f64>,
    maximizing: bool,
    free: Vec<bool>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(n: usize) -> Self {
        LinearProgram { n, objective: vec![0.0; n], maximizing: false, free: vec![false; n], rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn minimize(&mut self, c: &[f64]) -> &mut Self {
        assert_eq!(c.len(), self.n);
        self.objective = c.to_vec();
        self.maximizing = false;
        self
    }

    pub fn maximize(&mut self, c: &[f64]) -> &mut Self {
        let neg: Vec<f64> = c.iter().map(|v| -v).collect();
        self.minimize(&neg);
        self.maximizing = true;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn constrain(&mut self, coeffs: &[f64], rel: Relation, rhs: f64) -> &mut Self {
        assert_eq!(coeffs.len(), self.n);
        self.rows.push(Row { coeffs: coeffs.to_vec(), rel, rhs });
        self
    }

    /// Solves the program; the reported value is `c·x` of the original objective.
    pub fn solve(&self) -> Result<LpSolution> {
        // Split free variables into positive and negative parts.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n);
        let mut nv = 0;
        for j in 0..self.n {
            if self.free[j] {
                col_of.push((nv, Some(nv + 1)));
                nv += 2;
            } else {
                col_of.push((nv, None));
                nv += 1;
            }
        }
        let expand = |v: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; nv];
            for (j, &(p, m)) in col_of.iter().enumerate() {
                out[p] = v[j];
                if let Some(m) = m {
                    out[m] = -v[j];
                }
            }
            out
        };
        let m = self.rows.len();
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::with_capacity(m);
        for r in &self.rows {
            let mut a = expand(&r.coeffs);
            let mut rel = r.rel;
            let mut b = r.rhs;
            if b < 0.0 {
                a.iter_mut().for_each(|v| *v = -*v);
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push((a, rel, b));
        }
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let total = nv + n_slack + n_art;
        let width = total + 1;
        let mut t = vec![0.0; (m + 1) * width];
        let mut basis = vec![0usize; m];
        let mut s_idx = nv;
        let mut a_idx = nv + n_slack;
        for (i, (a, rel, b)) in rows.iter().enumerate() {
            let row = &mut t[i * width..(i + 1) * width];
            row[..nv].copy_from_slice(a);
            row[total] = *b;
            match rel {
                Relation::Le => {
                    row[s_idx] = 1.0;
                    basis[i] = s_idx;
                    s_idx += 1;
                }
                Relation::Ge => {
                    row[s_idx] = -1.0;
                    s_idx += 1;
                    row[a_idx] = 1.0;
                    basis[i] = a_idx;
                    a_idx += 1;
                }
                Relation::Eq => {
                    row[a_idx] = 1.0;
                    basis[i] = a_idx;
                    a_idx += 1;
                }
            }
        }
        let art_start = nv + n_slack;
        let mut tab = Tableau { t, m, width, total, basis, pivots: 0 };
        let scale = rows.iter().map(|r| r.2.abs()).fold(1.0, f64::max);

        if n_art > 0 {
            let mut cost = vec![0.0; total];
            for c in cost.iter_mut().skip(art_start) {
                *c = 1.0;
            }
            tab.set_objective(&cost);
            tab.run(total, true)?;
            if tab.objective_value() > LP_TOL * scale * (m as f64).max(1.0) {
                return Err(Error::Infeasible);
            }
            // Pivot remaining artificials out of the basis where possible.
            for i in 0..m {
                if tab.basis[i] >= art_start {
                    let col = (0..art_start).find(|&j| tab.at(i, j).abs() > LP_TOL);
                    if let Some(j) = col {
                        tab.pivot(i, j);
                    }
                }
            }
        }
        let mut cost = expand(&self.objective);
        cost.resize(total, 0.0);
        tab.set_objective(&cost);
        tab.run(art_start, false)?;
        let mut xs = vec![0.0; total];
        for i in 0..m {
            xs[tab.basis[i]] = tab.at(i, total);
        }
        let x: Vec<f64> = col_of.iter().map(|&(p, mm)| xs[p] - mm.map_or(0.0, |q| xs[q])).collect();
        let value: f64 = x.iter().zip(&self.objective).map(|(a, b)| a * b).sum();
        let value = if self.maximizing { -value } else { value };
        Ok(LpSolution { x, value, pivots: tab.pivots })
    }
}

struct Tableau {
    t: Vec<f64>,
    m: usize,
    width: usize,
    total: usize,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.width + c]
    }

    /// Writes reduced costs into the last row for the cost vector `c`.
    fn set_objective(&mut self, c: &[f64]) {
        let w = self.width;
        let obj = self.m * w;
        for j in 0..w {
            self.t[obj + j] = if j < self.total { c[j] } else { 0.0 };
        }
        for i in 0..self.m {
            let cb = c[self.basis[i]];
            if cb != 0.0 {
                for j in 0..w {
                    self.t[obj + j] -= cb * self.t[i * w + j];
                }
            }
        }
    }

    fn objective_value(&self) -> f64 {
        -self.t[self.m * self.width + self.total]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for chunk in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = chunk[c];
            if f != 0.0 {
                for j in 0..w {
                    chunk[j] -= f * prow[j];
                }
                chunk[c] = 0.0;
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Bland's rule for the entering column over `0..allowed`; ratio ties go
    /// to the largest pivot. With `bounded` set a column
    /// without a leaving row is read as round-off and ends the run.
    fn run(&mut self, allowed: usize, bounded: bool) -> Result<()> {
        let w = self.width;
        let obj = self.m * w;
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::NoConvergence("simplex pivot cap".into()));
            }
            let Some(enter) = (0..allowed).find(|&j| self.t[obj + j] < -LP_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.t[i * w + enter];
                if a > LP_TOL {
                    let ratio = self.t[i * w + self.total] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            let lp = self.t[li * w + enter];
                            if ratio < lr - 1e-12 || (ratio <= lr + 1e-12 && a > lp) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                if bounded {
                    return Ok(());
                }
                return Err(Error::Unbounded);
            };
            self.pivot(r, enter);
        }
    }
}

/// Value and optimal mixed strategies of the zero-sum game where the row
/// player minimizes `pᵀ C q`.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

pub fn solve_matrix_game(c: &[Vec<f64>]) -> Result<GameSolution> {
    let m = c.len();
    let n = c.first().map_or(0, |r| r.len());
    if m == 0 || n == 0 {
        return Err(Error::Invalid("empty payoff matrix".into()));
    }
    // Row player: min v s.t. Σ_i p_i c_ij <= v, Σ p = 1.
    let mut lp = LinearProgram::new(m + 1);
    let mut obj = vec![0.0; m + 1];
    obj[m] = 1.0;
    lp.minimize(&obj).set_free(m);
    for j in 0..n {
        let mut row: Vec<f64> = (0..m).map(|i| c[i][j]).collect();
        row.push(-1.0);
        lp.constrain(&row, Relation::Le, 0.0);
    }
    let mut sum = vec![1.0; m];
    sum.push(0.0);
    lp.constrain(&sum, Relation::Eq, 1.0);
    let row_sol = lp.solve()?;
    // Column player: max w s.t. Σ_j c_ij q_j >= w, Σ q = 1.
    let mut lp = LinearProgram::new(n + 1);
    let mut obj = vec![0.0; n + 1];
    obj[n] = 1.0;
    lp.maximize(&obj).set_free(n);
    for row_c in c {
        let mut row = row_c.clone();
        row.push(-1.0);
        lp.constrain(&row, Relation::Ge, 0.0);
    }
    let mut sum = vec![1.0; n];
    sum.push(0.0);
    lp.constrain(&sum, Relation::Eq, 1.0);
    let col_sol = lp.solve()?;
    Ok(GameSolution {
        value: row_sol.x[m],
        row_strategy: row_sol.x[..m].to_vec(),
        col_strategy: col_sol.x[..n].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let mut lp = LinearProgram::new(2);
        lp.maximize(&[3.0, 5.0])
            .constrain(&[1.0, 0.0], Relation::Le, 4.0)
            .constrain(&[0.0, 2.0], Relation::Le, 12.0)
            .constrain(&[3.0, 2.0], Relation::Le, 18.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 36.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-9 && (s.x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_free() {
        // min x - y, x + y = 1, x - y >= -3, x >= 0, y free -> -1 at (0, 1)
        let mut lp = LinearProgram::new(2);
        lp.minimize(&[1.0, -1.0]).set_free(1).constrain(&[1.0, 1.0], Relation::Eq, 1.0).constrain(
            &[1.0, -1.0],
            Relation::Ge,
            -3.0,
        );
        let s = lp.solve().unwrap();
        assert!((s.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.minimize(&[1.0]).constrain(&[1.0], Relation::Le, -1.0);
        assert!(matches!(lp.solve(), Err(Error::Infeasible)));
        let mut lp = LinearProgram::new(1);
        lp.minimize(&[-1.0]).constrain(&[1.0], Relation::Ge, 1.0);
        assert!(matches!(lp.solve(), Err(Error::Unbounded)));
    }

    #[test]
    fn degenerate_minimax_rows() {
        let t = 1.4142135597344325;
        let a = [
            [1.0, 1.0, 1.0],
            [2.0, 1.0, 0.0],
            [3.0, 2.0, 1.0],
            [1.0, 1.0, 1.0],
            [2.0, 2.0, 2.0],
            [3.0, 2.0, 1.0],
            [4.0, 3.0, 2.0],
        ];
        let b = [
            [1.0, 1.0, 0.0],
            [1.0, 1.0, 1.0],
            [2.0, 2.0, 1.0],
            [1.0, 0.0, 0.0],
            [2.0, 1.0, 0.0],
            [2.0, 1.0, 1.0],
            [3.0, 2.0, 1.0],
        ];
        let mut lp = LinearProgram::new(4);
        lp.minimize(&[0.0, 0.0, 0.0, 1.0]).set_free(3);
        for (ra, rb) in a.iter().zip(&b) {
            let mut row: Vec<f64> = ra.iter().zip(rb).map(|(x, y)| x - t * y).collect();
            row.push(-1.0);
            lp.constrain(&row, Relation::Le, 0.0);
        }
        lp.constrain(&[1.0, 1.0, 1.0, 0.0], Relation::Eq, 1.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 5.27732493815769e-09).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn matching_pennies() {
        let g = solve_matrix_game(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert!(g.value.abs() < 1e-9);
        assert!((g.row_strategy[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the largest-coefficient rule.
        let mut lp = LinearProgram::new(4);
        lp.minimize(&[-0.75, 150.0, -0.02, 6.0])
            .constrain(&[0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0)
            .constrain(&[0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0)
            .constrain(&[0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let s = lp.solve().unwrap();
        assert!((s.value + 0.05).abs() < 1e-9);
    }
}
