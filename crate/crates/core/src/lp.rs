//! Exact linear programming: two-phase primal simplex with Bland's rule.
//!
//! Problems are posed as `A x = b` with per-variable sign constraints and an
//! optional objective to minimise. Infeasibility is reported with Farkas
//! multipliers `y` satisfying `yᵀA ≥ 0` on nonnegative variables, `yᵀA = 0` on
//! free variables and `yᵀb < 0`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarSign {
    NonNegative,
    Free,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub a: Matrix,
    pub b: Vec<Rational>,
    pub signs: Vec<VarSign>,
    /// Minimised when present.
    pub objective: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// A feasible point; optimal when the problem has an objective.
    Feasible(Vec<Rational>),
    /// Farkas multipliers proving `A x = b` has no admissible solution.
    Infeasible(Vec<Rational>),
    /// Only with an objective: a feasible point and a ray along which the
    /// objective decreases without bound.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            _ => None,
        }
    }

    pub fn farkas(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Infeasible(y) => Some(y),
            _ => None,
        }
    }
}

impl LpProblem {
    pub fn feasibility(a: Matrix, b: Vec<Rational>, signs: Vec<VarSign>) -> Self {
        Self {
            a,
            b,
            signs,
            objective: None,
        }
    }

    pub fn with_objective(mut self, c: Vec<Rational>) -> Self {
        self.objective = Some(c);
        self
    }

    fn validate(&self) -> Result<()> {
        let (m, n) = (self.a.nrows(), self.a.ncols());
        if self.b.len() != m {
            return Err(Error::Dimension(format!(
                "b has {} entries for {m} constraints",
                self.b.len()
            )));
        }
        if self.signs.len() != n {
            return Err(Error::Dimension(format!(
                "{} sign constraints for {n} variables",
                self.signs.len()
            )));
        }
        if let Some(c) = &self.objective {
            if c.len() != n {
                return Err(Error::Dimension(format!(
                    "objective has {} entries for {n} variables",
                    c.len()
                )));
            }
        }
        Ok(())
    }

    /// Exact check that `x` satisfies every constraint.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.signs.len()
            && self
                .signs
                .iter()
                .zip(x)
                .all(|(s, v)| *s == VarSign::Free || !v.is_negative())
            && self.a.mul_vec(x).map(|ax| ax == self.b).unwrap_or(false)
    }

    /// Exact check of the Farkas conditions for `y`.
    pub fn is_farkas_certificate(&self, y: &[Rational]) -> bool {
        let Ok(ya) = self.a.left_mul_vec(y) else {
            return false;
        };
        let signs_ok = ya.iter().zip(&self.signs).all(|(v, s)| match s {
            VarSign::NonNegative => !v.is_negative(),
            VarSign::Free => v.is_zero(),
        });
        signs_ok && dot(y, &self.b).is_negative()
    }
}

pub fn lp_solve(problem: &LpProblem) -> Result<LpOutcome> {
    problem.validate()?;
    Ok(Tableau::new(problem).solve(problem))
}

/// Column `k` of the internal problem stands for `sign * x[orig]`.
#[derive(Clone, Copy)]
struct Column {
    orig: usize,
    negated: bool,
}

struct Tableau {
    /// rows × (cols + 1); the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row (length cols + 1, last entry is minus the objective).
    cost: Vec<Rational>,
    basis: Vec<usize>,
    structural: Vec<Column>,
    /// Number of structural columns; artificials follow them.
    n_struct: usize,
    /// `-1` where the constraint row was negated to make `b ≥ 0`.
    row_flip: Vec<bool>,
}

impl Tableau {
    fn new(p: &LpProblem) -> Self {
        let m = p.a.nrows();
        let mut structural = Vec::new();
        for (j, s) in p.signs.iter().enumerate() {
            structural.push(Column {
                orig: j,
                negated: false,
            });
            if *s == VarSign::Free {
                structural.push(Column {
                    orig: j,
                    negated: true,
                });
            }
        }
        let n_struct = structural.len();
        let width = n_struct + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut row_flip = Vec::with_capacity(m);
        for i in 0..m {
            let flip = p.b[i].is_negative();
            let mut row = vec![Rational::zero(); width];
            for (k, col) in structural.iter().enumerate() {
                let v = &p.a[(i, col.orig)];
                if v.is_zero() {
                    continue;
                }
                row[k] = if col.negated != flip { -v } else { v.clone() };
            }
            row[n_struct + i] = Rational::one();
            row[width - 1] = if flip { -&p.b[i] } else { p.b[i].clone() };
            rows.push(row);
            row_flip.push(flip);
        }
        // Phase-one costs: one per artificial, reduced against the
        // all-artificial starting basis.
        let mut cost = vec![Rational::zero(); width];
        for row in &rows {
            for (c, v) in cost.iter_mut().zip(row) {
                *c -= v;
            }
        }
        for i in 0..m {
            cost[n_struct + i] = Rational::zero();
        }
        Self {
            rows,
            cost,
            basis: (0..m).map(|i| n_struct + i).collect(),
            structural,
            n_struct,
            row_flip,
        }
    }

    fn width(&self) -> usize {
        self.cost.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let t = &pivot_row[j] * &f;
                row[j] -= t;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `< limit`. Returns the entering column
    /// of an unbounded direction, if any.
    fn optimise(&mut self, limit: usize) -> Option<usize> {
        loop {
            let enter = (0..limit).find(|&j| self.cost[j].is_negative())?;
            let rhs = self.width() - 1;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, enter),
                None => return Some(enter),
            }
        }
    }

    fn internal_point(&self) -> Vec<Rational> {
        let rhs = self.width() - 1;
        let mut v = vec![Rational::zero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                v[b] = self.rows[i][rhs].clone();
            }
        }
        v
    }

    fn to_original(&self, internal: &[Rational], n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (k, col) in self.structural.iter().enumerate() {
            if internal[k].is_zero() {
                continue;
            }
            if col.negated {
                x[col.orig] -= &internal[k];
            } else {
                x[col.orig] += &internal[k];
            }
        }
        x
    }

    fn solve(mut self, p: &LpProblem) -> LpOutcome {
        let m = self.rows.len();
        let n = p.signs.len();
        let total = self.n_struct + m;
        self.optimise(total);

        let rhs = self.width() - 1;
        if self.cost[rhs].is_negative() {
            // Phase-one optimum is positive: read the duals off the
            // artificial columns, y'_i = 1 - reduced cost.
            let y = (0..m)
                .map(|i| {
                    let yi = Rational::one() - &self.cost[self.n_struct + i];
                    if self.row_flip[i] {
                        yi
                    } else {
                        -yi
                    }
                })
                .collect();
            return LpOutcome::Infeasible(y);
        }

        // Drive zero-level artificials out of the basis; drop rows that are
        // redundant.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.n_struct {
                match (0..self.n_struct).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        let Some(c) = &p.objective else {
            return LpOutcome::Feasible(self.to_original(&self.internal_point(), n));
        };

        // Phase two over structural columns only.
        let width = self.width();
        let mut cost = vec![Rational::zero(); width];
        for (k, col) in self.structural.iter().enumerate() {
            cost[k] = if col.negated {
                -&c[col.orig]
            } else {
                c[col.orig].clone()
            };
        }
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (c, r) in cost.iter_mut().zip(&self.rows[i]).take(width) {
                *c -= r * &cb;
            }
        }
        self.cost = cost;
        match self.optimise(self.n_struct) {
            None => LpOutcome::Feasible(self.to_original(&self.internal_point(), n)),
            Some(enter) => {
                let point = self.to_original(&self.internal_point(), n);
                let mut dir = vec![Rational::zero(); self.n_struct];
                dir[enter] = Rational::one();
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < self.n_struct {
                        dir[b] = -&self.rows[i][enter];
                    }
                }
                LpOutcome::Unbounded {
                    point,
                    ray: self.to_original(&dir, n),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn matrix(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn single_variable_identity() {
        let p = LpProblem::feasibility(matrix(&[&[1]]), vec![int(1)], vec![VarSign::NonNegative]);
        assert_eq!(lp_solve(&p).unwrap(), LpOutcome::Feasible(vec![int(1)]));
    }

    #[test]
    fn negative_sum_of_nonnegatives_is_infeasible() {
        let p = LpProblem::feasibility(
            matrix(&[&[1, 1]]),
            vec![int(-1)],
            vec![VarSign::NonNegative; 2],
        );
        let out = lp_solve(&p).unwrap();
        let y = out.farkas().expect("infeasible");
        assert!(p.is_farkas_certificate(y));
        // positive multiple of (1): yᵀb = -y₀ < 0
        assert!(y[0].is_positive());
    }

    #[test]
    fn free_variables_and_objective() {
        // minimise x0 subject to x0 - x1 = 2, x1 free, x0 ≥ 0 → x0 = 0, x1 = -2
        let p = LpProblem::feasibility(
            matrix(&[&[1, -1]]),
            vec![int(2)],
            vec![VarSign::NonNegative, VarSign::Free],
        )
        .with_objective(vec![int(1), int(0)]);
        assert_eq!(
            lp_solve(&p).unwrap(),
            LpOutcome::Feasible(vec![int(0), int(-2)])
        );
    }

    #[test]
    fn unbounded_objective_reports_ray() {
        let p = LpProblem::feasibility(
            matrix(&[&[1, -1]]),
            vec![int(0)],
            vec![VarSign::NonNegative; 2],
        )
        .with_objective(vec![int(-1), int(0)]);
        match lp_solve(&p).unwrap() {
            LpOutcome::Unbounded { point, ray } => {
                assert!(p.is_feasible_point(&point));
                assert_eq!(p.a.mul_vec(&ray).unwrap(), vec![int(0)]);
                assert!(ray[0].is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = LpProblem::feasibility(
            matrix(&[&[1, 1], &[2, 2]]),
            vec![rat(1, 2), int(1)],
            vec![VarSign::NonNegative; 2],
        )
        .with_objective(vec![int(1), int(2)]);
        assert_eq!(
            lp_solve(&p).unwrap(),
            LpOutcome::Feasible(vec![rat(1, 2), int(0)])
        );
    }

    #[test]
    fn empty_constraint_set() {
        let p = LpProblem::feasibility(Matrix::zeros(0, 2), vec![], vec![VarSign::Free; 2]);
        assert_eq!(lp_solve(&p).unwrap(), LpOutcome::Feasible(vec![int(0); 2]));
    }

    #[test]
    fn mismatched_dimensions() {
        let p = LpProblem::feasibility(matrix(&[&[1, 1]]), vec![int(1)], vec![VarSign::Free]);
        assert!(matches!(lp_solve(&p), Err(Error::Dimension(_))));
    }
}
