//! Exact phase-1 simplex for `Ax = b, x ≥ 0`.
//!
//! Dense revised method over rationals with Bland's rule, which cannot
//! cycle. Intended for the small systems of the edge oracle (a dozen rows,
//! a few hundred columns); not a general LP solver.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A nonnegative solution of `Ax = b`.
    Feasible(Vec<Rat>),
    /// `λ` with `λᵀA ≤ 0` and `λᵀb > 0`.
    Infeasible(Vec<Rat>),
}

/// Decides `Ax = b, x ≥ 0` for `A` given by its columns.
pub fn feasibility(columns: &[Vec<Rat>], b: &[Rat]) -> Result<Feasibility> {
    let m = b.len();
    let ncols = columns.len();
    if let Some(bad) = columns.iter().find(|c| c.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: bad.len() });
    }
    // Flip rows so that b ≥ 0; artificials then start feasible at x_B = b.
    let signs: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let col = |j: usize, r: usize| -> Rat {
        let v = &columns[j][r];
        if signs[r] {
            -v.clone()
        } else {
            v.clone()
        }
    };
    let mut x_b: Vec<Rat> = b.iter().map(|v| v.abs()).collect();
    // Basis entries >= ncols are artificials.
    let mut basis: Vec<usize> = (ncols..ncols + m).collect();
    let mut b_inv: Vec<Vec<Rat>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    let mut in_basis = vec![false; ncols];

    loop {
        // y = c_B B⁻¹ with cost 1 on artificials.
        let mut y = vec![Rat::zero(); m];
        for (i, &bi) in basis.iter().enumerate() {
            if bi >= ncols {
                for (yr, v) in y.iter_mut().zip(&b_inv[i]) {
                    *yr += v;
                }
            }
        }
        let entering = (0..ncols).find(|&j| {
            !in_basis[j] && {
                let d: Rat = (0..m).filter(|&r| !y[r].is_zero()).map(|r| &y[r] * col(j, r)).sum();
                d.is_positive()
            }
        });
        let Some(j) = entering else {
            let objective: Rat =
                basis.iter().zip(&x_b).filter(|(&bi, _)| bi >= ncols).map(|(_, v)| v.clone()).sum();
            if objective.is_positive() {
                let lambda = y.into_iter().zip(&signs).map(|(v, &s)| if s { -v } else { v }).collect();
                return Ok(Feasibility::Infeasible(lambda));
            }
            let mut x = vec![Rat::zero(); ncols];
            for (i, &bi) in basis.iter().enumerate() {
                if bi < ncols {
                    x[bi] = x_b[i].clone();
                }
            }
            return Ok(Feasibility::Feasible(x));
        };
        let a_j: Vec<Rat> = (0..m).map(|r| col(j, r)).collect();
        let u: Vec<Rat> = b_inv
            .iter()
            .map(|row| row.iter().zip(&a_j).filter(|(_, a)| !a.is_zero()).map(|(p, a)| p * a).sum())
            .collect();
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if u[i].is_positive() {
                let ratio = &x_b[i] / &u[i];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::Solver("phase-1 objective unbounded".into()));
        };
        let pivot = u[r].clone();
        for v in b_inv[r].iter_mut() {
            *v /= &pivot;
        }
        x_b[r] /= &pivot;
        let pivot_row = b_inv[r].clone();
        let pivot_x = x_b[r].clone();
        for i in 0..m {
            if i != r && !u[i].is_zero() {
                for (v, p) in b_inv[i].iter_mut().zip(&pivot_row) {
                    *v -= &u[i] * p;
                }
                x_b[i] -= &u[i] * &pivot_x;
            }
        }
        if basis[r] < ncols {
            in_basis[basis[r]] = false;
        }
        basis[r] = j;
        in_basis[j] = true;
    }
}
