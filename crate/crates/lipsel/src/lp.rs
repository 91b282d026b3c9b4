//! Linear programs over free variables.
//!
//! Programs are `minimize c . x` subject to `a . x <= b` rows, with every
//! variable unrestricted in sign. Solving is delegated to the `microlp`
//! simplex; this wrapper only fixes the row-oriented build interface the
//! rest of the crate uses.

use microlp::{ComparisonOp, Error, LinearExpr, OptimizationDirection, Problem, SolveOutcome};

#[derive(Clone, Debug)]
pub struct Program {
    n: usize,
    coeffs: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    objective: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

impl Program {
    /// Program over `n` free variables with objective `minimize c . x`.
    pub fn minimize(c: Vec<f64>) -> Self {
        Program {
            n: c.len(),
            coeffs: Vec::new(),
            rhs: Vec::new(),
            objective: c,
        }
    }

    /// Feasibility-only program (objective 0) over `n` free variables.
    pub fn feasibility(n: usize) -> Self {
        Self::minimize(vec![0.0; n])
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn n_rows(&self) -> usize {
        self.rhs.len()
    }

    /// Adds the row `a . x <= b`.
    pub fn add_le(&mut self, a: Vec<f64>, b: f64) {
        assert_eq!(a.len(), self.n, "row width must match variable count");
        self.coeffs.push(a);
        self.rhs.push(b);
    }

    /// Adds `a . x = b` as a pair of opposite inequalities.
    pub fn add_eq(&mut self, a: Vec<f64>, b: f64) {
        let neg: Vec<f64> = a.iter().map(|v| -v).collect();
        self.add_le(a, b);
        self.add_le(neg, -b);
    }

    pub fn solve(&self) -> Outcome {
        // Free variables go in split as x = u - v with u, v >= 0; the
        // solver mishandles doubly unbounded variables on degenerate rays
        // (a zero-cost translation ray gets reported as unbounded).
        let mut prob = Problem::new(OptimizationDirection::Minimize);
        let pos: Vec<_> = self
            .objective
            .iter()
            .map(|&c| prob.add_var(c, (0.0, f64::INFINITY)))
            .collect();
        let neg: Vec<_> = self
            .objective
            .iter()
            .map(|&c| prob.add_var(-c, (0.0, f64::INFINITY)))
            .collect();
        for (a, &b) in self.coeffs.iter().zip(&self.rhs) {
            let mut expr = LinearExpr::empty();
            let mut any = false;
            for (j, &v) in a.iter().enumerate() {
                if v != 0.0 {
                    expr.add(pos[j], v);
                    expr.add(neg[j], -v);
                    any = true;
                }
            }
            if !any {
                // a constant row constrains nothing or everything
                if b < 0.0 {
                    return Outcome::Infeasible;
                }
                continue;
            }
            prob.add_constraint(expr, ComparisonOp::Le, b);
        }
        match prob.solve() {
            Ok(SolveOutcome::Solution(sol)) => Outcome::Optimal {
                x: (0..self.n).map(|j| sol[pos[j]] - sol[neg[j]]).collect(),
                value: sol.objective(),
            },
            Ok(SolveOutcome::Interrupted(_)) => {
                unreachable!("no solver limits are configured")
            }
            Err(Error::Infeasible) => Outcome::Infeasible,
            Err(Error::Unbounded) => Outcome::Unbounded,
            Err(e) => panic!("LP solver failure: {e:?}"),
        }
    }

    /// A point satisfying every row, if one exists.
    pub fn feasible_point(&self) -> Option<Vec<f64>> {
        let mut p = self.clone();
        p.objective = vec![0.0; p.n];
        match p.solve() {
            Outcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}
