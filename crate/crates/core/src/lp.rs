//! Dense two-phase simplex over `BigRational` with Bland's rule.
//!
//! Problems are small (a handful of variables, tens of constraints), so the
//! tableau is dense and every pivot is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// `minimize objective · x` subject to the constraints. Variables are free
/// unless marked nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    n_vars: usize,
    nonneg: Vec<bool>,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: BigRational,
    pub x: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            nonneg: vec![false; n_vars],
            objective: vec![BigRational::zero(); n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn set_nonneg(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn set_objective(&mut self, c: Vec<BigRational>) {
        assert_eq!(c.len(), self.n_vars);
        self.objective = c;
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        Tableau::build(self).run()
    }
}

struct Tableau {
    // rows of B^-1 [A | b]
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    n_cols: usize,
    artificial_from: usize,
    // (positive column, negative column) of each original variable
    var_cols: Vec<(usize, Option<usize>)>,
    cost: Vec<BigRational>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut var_cols = Vec::with_capacity(lp.n_vars);
        let mut next = 0;
        for v in 0..lp.n_vars {
            if lp.nonneg[v] {
                var_cols.push((next, None));
                next += 1;
            } else {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
        let structural = next;
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let artificial_from = structural + n_slack;
        let m = lp.constraints.len();
        let n_cols = artificial_from + m;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = structural;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![BigRational::zero(); n_cols + 1];
            let flip = c.rhs.is_negative();
            let sgn = |x: &BigRational| if flip { -x.clone() } else { x.clone() };
            for (v, a) in c.coeffs.iter().enumerate() {
                let (p, n) = var_cols[v];
                row[p] = sgn(a);
                if let Some(n) = n {
                    row[n] = -sgn(a);
                }
            }
            let rel = match (c.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match rel {
                Relation::Le => {
                    row[slack] = BigRational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -BigRational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            // every row starts with its own artificial in the basis; slack
            // rows simply never need it but keeping the layout uniform makes
            // phase one trivially feasible
            row[artificial_from + i] = BigRational::one();
            row[n_cols] = sgn(&c.rhs);
            rows.push(row);
            basis.push(artificial_from + i);
        }

        let mut cost = vec![BigRational::zero(); n_cols];
        for (v, c) in lp.objective.iter().enumerate() {
            let (p, n) = var_cols[v];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c.clone();
            }
        }
        Tableau {
            rows,
            basis,
            n_cols,
            artificial_from,
            var_cols,
            cost,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = BigRational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimize `cost` over columns `< allowed`; Bland's rule throughout.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &row[j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[self.n_cols] / &row[j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }

    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(BigRational::zero(), |acc, (row, &b)| acc + &cost[b] * &row[self.n_cols])
    }

    fn run(mut self) -> Result<LpOutcome> {
        let mut phase1 = vec![BigRational::zero(); self.n_cols];
        for c in phase1.iter_mut().skip(self.artificial_from) {
            *c = BigRational::one();
        }
        if !self.optimize(&phase1, self.n_cols) {
            return Err(Error::Internal("phase one of the simplex is unbounded".into()));
        }
        if self.objective_value(&phase1).is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive remaining artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_from {
                match (0..self.artificial_from).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        let cost = self.cost.clone();
        if !self.optimize(&cost, self.artificial_from) {
            return Ok(LpOutcome::Unbounded);
        }
        let value = self.objective_value(&cost);
        let mut col_val = vec![BigRational::zero(); self.n_cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            col_val[b] = row[self.n_cols].clone();
        }
        let x = self
            .var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_val[p] - &col_val[n],
                None => col_val[p].clone(),
            })
            .collect();
        Ok(LpOutcome::Optimal(LpSolution { value, x }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::big_from_int as b;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x, y >= 0  -> 12 at (4, 0)
        let mut lp = LinearProgram::new(2);
        lp.set_nonneg(0);
        lp.set_nonneg(1);
        lp.set_objective(vec![b(-3), b(-2)]);
        lp.add(vec![b(1), b(1)], Relation::Le, b(4));
        lp.add(vec![b(1), b(3)], Relation::Le, b(6));
        let LpOutcome::Optimal(s) = lp.solve().unwrap() else {
            panic!("expected optimum")
        };
        assert_eq!(s.value, b(-12));
        assert_eq!(s.x, vec![b(4), b(0)]);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min t, t >= x, t >= -x + 1, x free -> t = 1/2
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![b(0), b(1)]);
        lp.add(vec![b(-1), b(1)], Relation::Ge, b(0));
        lp.add(vec![b(1), b(1)], Relation::Ge, b(1));
        let LpOutcome::Optimal(s) = lp.solve().unwrap() else {
            panic!()
        };
        assert_eq!(s.value, r(1, 2));
        assert_eq!(s.x[0], r(1, 2));

        let mut eq = LinearProgram::new(2);
        eq.set_objective(vec![b(1), b(1)]);
        eq.add(vec![b(1), b(0)], Relation::Eq, b(-3));
        eq.add(vec![b(0), b(1)], Relation::Ge, b(2));
        let LpOutcome::Optimal(s) = eq.solve().unwrap() else {
            panic!()
        };
        assert_eq!(s.value, b(-1));
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![b(1)], Relation::Ge, b(2));
        lp.add(vec![b(1)], Relation::Le, b(1));
        assert_eq!(lp.solve().unwrap(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.set_objective(vec![b(-1)]);
        lp.add(vec![b(1)], Relation::Ge, b(0));
        assert_eq!(lp.solve().unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_redundant_rows() {
        // duplicated equality rows force an artificial to stay basic at zero
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![b(1), b(-1)]);
        lp.add(vec![b(1), b(1)], Relation::Eq, b(1));
        lp.add(vec![b(2), b(2)], Relation::Eq, b(2));
        lp.add(vec![b(1), b(0)], Relation::Ge, b(0));
        lp.add(vec![b(0), b(1)], Relation::Ge, b(0));
        let LpOutcome::Optimal(s) = lp.solve().unwrap() else {
            panic!()
        };
        assert_eq!(s.value, b(-1));
    }
}
