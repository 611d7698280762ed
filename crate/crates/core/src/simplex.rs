//! Dense two-phase simplex over exact rationals, Bland's rule throughout.
//!
//! Only as general as the matching and cover programs need: nonnegative
//! variables, `<=`/`>=`/`=` rows.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub maximize: bool,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j` of the current (maximized) objective.
    reduced: Vec<Rational>,
    value: Rational,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
    pivots: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.reduced.len()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width();
        let p = self.rows[row][col].clone();
        let nonzero: Vec<usize> = (0..=w).filter(|&j| !self.rows[row][j].is_zero()).collect();
        for &j in &nonzero {
            self.rows[row][j] = &self.rows[row][j] / &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for &j in &nonzero {
                r[j] -= &f * &pivot_row[j];
            }
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            for &j in &nonzero {
                if j < w {
                    self.reduced[j] -= &f * &pivot_row[j];
                }
            }
            self.value += &f * &pivot_row[w];
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Runs primal simplex to optimality. Returns `false` if unbounded.
    fn optimize(&mut self) -> bool {
        let w = self.width();
        loop {
            let Some(col) = (0..w).find(|&j| self.allowed[j] && self.reduced[j].is_positive())
            else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[col].is_positive() {
                    continue;
                }
                let ratio = &r[w] / &r[col];
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
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let w = self.width();
        let mut reduced = cost.to_vec();
        let mut value = Rational::zero();
        for (r, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, red) in reduced.iter_mut().enumerate() {
                if !r[j].is_zero() {
                    *red -= cb * &r[j];
                }
            }
            value += cb * &r[w];
        }
        self.reduced = reduced;
        self.value = value;
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let nv = self.num_vars;
        let m = self.constraints.len();

        // Normalize to nonnegative right-hand sides.
        let rows: Vec<(Vec<(usize, Rational)>, Relation, Rational)> = self
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    let coeffs = c.coeffs.iter().map(|(j, a)| (*j, -a)).collect();
                    (coeffs, rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let w = nv + n_slack + n_art;

        let mut tab = Tableau {
            rows: Vec::with_capacity(m),
            basis: Vec::with_capacity(m),
            reduced: vec![Rational::zero(); w],
            value: Rational::zero(),
            allowed: vec![true; w],
            pivots: 0,
        };
        let mut next_slack = nv;
        let mut next_art = nv + n_slack;
        for (coeffs, rel, rhs) in &rows {
            let mut row = vec![Rational::zero(); w + 1];
            for (j, a) in coeffs {
                row[*j] += a;
            }
            row[w] = rhs.clone();
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::from_integer(1.into());
                    tab.basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = Rational::from_integer((-1).into());
                    row[next_art] = Rational::from_integer(1.into());
                    tab.basis.push(next_art);
                    next_slack += 1;
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::from_integer(1.into());
                    tab.basis.push(next_art);
                    next_art += 1;
                }
            }
            tab.rows.push(row);
        }
        let is_art = |j: usize| j >= nv + n_slack;

        if n_art > 0 {
            let cost: Vec<Rational> = (0..w)
                .map(|j| {
                    if is_art(j) {
                        Rational::from_integer((-1).into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            tab.set_objective(&cost);
            tab.optimize();
            if tab.value.is_negative() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis; drop redundant rows.
            let mut i = 0;
            while i < tab.rows.len() {
                if is_art(tab.basis[i]) {
                    match (0..nv + n_slack).find(|&j| !tab.rows[i][j].is_zero()) {
                        Some(col) => tab.pivot(i, col),
                        None => {
                            tab.rows.remove(i);
                            tab.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
            for j in 0..w {
                tab.allowed[j] = !is_art(j);
            }
        }

        let sign = if self.maximize { 1 } else { -1 };
        let cost: Vec<Rational> = (0..w)
            .map(|j| {
                if j < nv {
                    &self.objective[j] * Rational::from_integer(sign.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        tab.set_objective(&cost);
        if !tab.optimize() {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); nv];
        for (r, &b) in tab.rows.iter().zip(&tab.basis) {
            if b < nv {
                x[b] = r[w].clone();
            }
        }
        let value = if self.maximize {
            tab.value.clone()
        } else {
            -tab.value.clone()
        };
        LpOutcome::Optimal { value, x }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn row(coeffs: &[(usize, i64)], relation: Relation, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&(j, a)| (j, ratio(a, 1))).collect(),
            relation,
            rhs: ratio(rhs, 1),
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 2x + 3y s.t. 2x + y <= 18, 6x + 5y <= 60, 2x + 5y <= 40 -> 28 at (5, 6)
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![int(2), int(3)],
            maximize: true,
            constraints: vec![
                row(&[(0, 2), (1, 1)], Relation::Le, 18),
                row(&[(0, 6), (1, 5)], Relation::Le, 60),
                row(&[(0, 2), (1, 5)], Relation::Le, 40),
            ],
        };
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                value: int(28),
                x: vec![int(5), int(6)]
            }
        );
    }

    #[test]
    fn minimum_with_ge_rows_and_fractional_optimum() {
        // min x + y + z s.t. x + y >= 1, y + z >= 1, x + z >= 1 -> 3/2
        let lp = LinearProgram {
            num_vars: 3,
            objective: vec![int(1), int(1), int(1)],
            maximize: false,
            constraints: vec![
                row(&[(0, 1), (1, 1)], Relation::Ge, 1),
                row(&[(1, 1), (2, 1)], Relation::Ge, 1),
                row(&[(0, 1), (2, 1)], Relation::Ge, 1),
            ],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, ratio(3, 2));
                assert!(x.iter().all(|v| *v == ratio(1, 2)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let infeasible = LinearProgram {
            num_vars: 1,
            objective: vec![int(1)],
            maximize: true,
            constraints: vec![
                row(&[(0, 1)], Relation::Le, 1),
                row(&[(0, 1)], Relation::Ge, 2),
            ],
        };
        assert_eq!(infeasible.solve(), LpOutcome::Infeasible);

        let unbounded = LinearProgram {
            num_vars: 2,
            objective: vec![int(1), int(0)],
            maximize: true,
            constraints: vec![row(&[(0, 1), (1, -1)], Relation::Le, 1)],
        };
        assert_eq!(unbounded.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_rows_and_redundancy() {
        // x + y = 2, 2x + 2y = 4 (redundant), max x -> 2
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![int(1), int(0)],
            maximize: true,
            constraints: vec![
                row(&[(0, 1), (1, 1)], Relation::Eq, 2),
                row(&[(0, 2), (1, 2)], Relation::Eq, 4),
                row(&[(0, -1)], Relation::Ge, -5),
            ],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, int(2));
                assert_eq!(x, vec![int(2), int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let q = |a: i64, b: i64| ratio(a, b);
        let lp = LinearProgram {
            num_vars: 4,
            objective: vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1)],
            maximize: true,
            constraints: vec![
                Constraint {
                    coeffs: vec![(0, q(1, 4)), (1, q(-60, 1)), (2, q(-1, 25)), (3, q(9, 1))],
                    relation: Relation::Le,
                    rhs: int(0),
                },
                Constraint {
                    coeffs: vec![(0, q(1, 2)), (1, q(-90, 1)), (2, q(-1, 50)), (3, q(3, 1))],
                    relation: Relation::Le,
                    rhs: int(0),
                },
                Constraint {
                    coeffs: vec![(2, q(1, 1))],
                    relation: Relation::Le,
                    rhs: int(1),
                },
            ],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
