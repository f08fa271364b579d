//! Exact LP relaxation for symmetric costs:
//!
//! ```text
//! max  sum x_j
//! s.t. sum q_j x_j       <= n
//!      sum q_j c_j x_j   <= W
//!      0 <= x_j <= 1
//! ```
//!
//! solved by a dense simplex over big rationals with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::Cost;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution {
    pub x: Vec<BigRational>,
    pub objective: BigRational,
    /// Whether the robot-count row holds with equality.
    pub robots_tight: bool,
    /// Whether the budget row holds with equality.
    pub budget_tight: bool,
    /// Multipliers for the robot row, the budget row, then each `x_j <= 1`.
    pub duals: Vec<BigRational>,
}

fn rat(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl FractionalSolution {
    /// Number of coordinates strictly between 0 and 1.
    pub fn fractional_count(&self) -> usize {
        self.x.iter().filter(|v| !v.is_integer()).count()
    }

    /// Indices with `x_j = 1`.
    pub fn integral_tasks(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&j| self.x[j].is_one()).collect()
    }

    /// Checks primal feasibility, dual feasibility and equal objectives.
    pub fn certified(&self, q: &[usize], c: &[Cost], n: usize, w: Cost) -> bool {
        let m = self.x.len();
        if q.len() != m || c.len() != m || self.duals.len() != m + 2 {
            return false;
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        if self.x.iter().any(|v| *v < zero || *v > one) || self.duals.iter().any(|y| *y < zero) {
            return false;
        }
        let robots: BigRational = (0..m).map(|j| rat(q[j] as i128) * &self.x[j]).sum();
        let spend: BigRational = (0..m).map(|j| rat(q[j] as i128 * c[j] as i128) * &self.x[j]).sum();
        if robots > rat(n as i128) || spend > rat(w as i128) {
            return false;
        }
        let primal: BigRational = self.x.iter().sum();
        if primal != self.objective {
            return false;
        }
        let (yr, yw) = (&self.duals[0], &self.duals[1]);
        let dual_ok = (0..m).all(|j| {
            rat(q[j] as i128) * yr + rat(q[j] as i128 * c[j] as i128) * yw + &self.duals[2 + j] >= one
        });
        let dual: BigRational =
            rat(n as i128) * yr + rat(w as i128) * yw + self.duals[2..].iter().sum::<BigRational>();
        dual_ok && dual == self.objective
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    reduced: Vec<BigRational>,
    value: BigRational,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][col].is_zero() {
                continue;
            }
            let f = self.rows[k][col].clone();
            for (v, pv) in self.rows[k].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[k] -= &f * &prhs;
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = col;
    }

    fn solve(&mut self) {
        loop {
            let Some(col) = (0..self.reduced.len()).find(|&k| self.reduced[k].is_positive()) else { return };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if a.is_positive() {
                    let ratio = &self.rhs[r] / a;
                    let better = match &best {
                        None => true,
                        Some((b, _, bv)) => ratio < *b || (ratio == *b && self.basis[r] < *bv),
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            // bounded by x_j <= 1, so some row always limits the step
            let (_, r, _) = best.expect("bounded program");
            self.pivot(r, col);
        }
    }
}

/// Basic optimum of the relaxation, with a dual certificate.
pub fn lp_relax_2constraint(q: &[usize], c: &[Cost], n: usize, w: Cost) -> Result<FractionalSolution> {
    let m = q.len();
    if c.len() != m {
        return Err(Error::DimensionMismatch(format!("{m} requirements but {} costs", c.len())));
    }
    if w < 0 || c.iter().any(|&v| v < 0) {
        return Err(Error::InvalidInput("budget and costs must be nonnegative".into()));
    }
    let cols = 2 * m + 2;
    let mut rows = vec![vec![BigRational::zero(); cols]; m + 2];
    for j in 0..m {
        rows[0][j] = rat(q[j] as i128);
        rows[1][j] = rat(q[j] as i128 * c[j] as i128);
        rows[2 + j][j] = BigRational::one();
    }
    for (r, row) in rows.iter_mut().enumerate() {
        row[m + r] = BigRational::one();
    }
    let mut rhs = vec![rat(n as i128), rat(w as i128)];
    rhs.extend((0..m).map(|_| BigRational::one()));
    let mut reduced = vec![BigRational::zero(); cols];
    for v in reduced.iter_mut().take(m) {
        *v = BigRational::one();
    }
    let mut t = Tableau { rows, rhs, reduced, value: BigRational::zero(), basis: (m..cols).collect() };
    t.solve();

    let mut x = vec![BigRational::zero(); m];
    let mut slack = vec![BigRational::zero(); m + 2];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < m {
            x[b] = t.rhs[r].clone();
        } else {
            slack[b - m] = t.rhs[r].clone();
        }
    }
    let duals = (0..m + 2).map(|r| -t.reduced[m + r].clone()).collect();
    Ok(FractionalSolution {
        x,
        objective: t.value,
        robots_tight: slack[0].is_zero(),
        budget_tight: slack[1].is_zero(),
        duals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn slack_constraints() {
        let s = lp_relax_2constraint(&[1, 1], &[1, 1], 2, 2).unwrap();
        assert_eq!(s.x, vec![frac(1, 1), frac(1, 1)]);
        assert_eq!(s.objective, frac(2, 1));
        assert!(s.certified(&[1, 1], &[1, 1], 2, 2));
    }

    #[test]
    fn robot_row_binds() {
        let s = lp_relax_2constraint(&[2, 2], &[1, 1], 2, 4).unwrap();
        assert_eq!(s.objective, frac(1, 1));
        assert!(s.robots_tight);
        assert!(s.certified(&[2, 2], &[1, 1], 2, 4));
    }

    #[test]
    fn zero_budget() {
        let s = lp_relax_2constraint(&[1, 2], &[3, 4], 5, 0).unwrap();
        assert!(s.objective.is_zero());
        assert!(s.x.iter().all(Zero::is_zero));
        assert!(s.certified(&[1, 2], &[3, 4], 5, 0));
    }

    #[test]
    fn fractional_split() {
        // budget 5 buys task 0 (cost 2) and 3/4 of task 1 (cost 4)
        let s = lp_relax_2constraint(&[1, 1, 1], &[2, 4, 9], 10, 5).unwrap();
        assert_eq!(s.objective, frac(7, 4));
        assert_eq!(s.x, vec![frac(1, 1), frac(3, 4), frac(0, 1)]);
        assert!(s.fractional_count() <= 2);
        assert_eq!(s.integral_tasks(), vec![0]);
        assert!(s.certified(&[1, 1, 1], &[2, 4, 9], 10, 5));
    }

    #[test]
    fn certificate_rejects_tampering() {
        let mut s = lp_relax_2constraint(&[1, 1, 1], &[2, 4, 9], 10, 5).unwrap();
        s.objective = frac(2, 1);
        assert!(!s.certified(&[1, 1, 1], &[2, 4, 9], 10, 5));
    }

    #[test]
    fn empty() {
        let s = lp_relax_2constraint(&[], &[], 3, 3).unwrap();
        assert!(s.objective.is_zero());
        assert!(s.certified(&[], &[], 3, 3));
    }
}
