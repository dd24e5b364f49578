//! Two-phase revised simplex with Bland's rule, recording every basis visited.
//!
//! The basis is refactorized by dense LU at each iteration; bases are small enough that
//! update schemes would only add risk.

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, SimplexError};
use crate::lp::StandardForm;

/// Largest row count handled by the dense basis routines.
pub const MAX_ROWS: usize = 512;

/// Reduced-cost, ratio-test and feasibility tolerance.
const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisSnapshot {
    /// Pivots performed before this basis, counted over both phases.
    pub iteration: usize,
    pub phase: u8,
    /// Columns of `[A | I_artificial]` in basis order.
    pub basis: Vec<usize>,
    pub matrix: DMatrix<f64>,
    /// Right-hand side of the forward system `B x_B = b`.
    pub rhs: DVector<f64>,
    /// `c_B` of the phase, the rhs of the transposed system `B^T y = c_B`.
    pub cost: DVector<f64>,
    /// Phase objective at this basis.
    pub objective: f64,
    /// `sigma_max / sigma_min` of `matrix`.
    pub kappa_b: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct SimplexRun {
    pub snapshots: Vec<BasisSnapshot>,
    pub status: Status,
    /// Original objective (offset included) at the last basis; meaningful when optimal.
    pub objective: f64,
    /// Standard-form values of the structural and slack columns.
    pub x: DVector<f64>,
    pub n_columns: usize,
}

impl SimplexRun {
    /// Turns unboundedness and the iteration limit into errors.
    pub fn ensure_optimal(&self, max_iter: usize) -> Result<()> {
        match self.status {
            Status::Optimal => Ok(()),
            Status::Unbounded => Err(SimplexError::Unbounded { iteration: self.snapshots.last().map_or(0, |s| s.iteration) }),
            Status::IterationLimit => Err(SimplexError::IterationLimit(max_iter)),
        }
    }
}

/// `sigma_max / sigma_min` by dense SVD; infinite for a singular matrix.
pub fn condition_number(b: &DMatrix<f64>) -> f64 {
    let sv = b.singular_values();
    let hi = sv.max();
    let lo = sv.min();
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

struct Work<'a> {
    a: &'a DMatrix<f64>,
    b: DVector<f64>,
    m: usize,
    n: usize,
}

impl Work<'_> {
    fn column(&self, k: usize) -> DVector<f64> {
        if k < self.n {
            self.a.column(k).into_owned()
        } else {
            let mut e = DVector::zeros(self.m);
            e[k - self.n] = 1.0;
            e
        }
    }

    fn basis_matrix(&self, basis: &[usize]) -> DMatrix<f64> {
        let mut bm = DMatrix::zeros(self.m, self.m);
        for (i, &k) in basis.iter().enumerate() {
            bm.set_column(i, &self.column(k));
        }
        bm
    }
}

pub fn run_simplex(sf: &StandardForm, max_iter: usize) -> Result<SimplexRun> {
    let (m, n) = (sf.rows(), sf.cols());
    if m > MAX_ROWS {
        return Err(SimplexError::TooLarge { rows: m, max: MAX_ROWS });
    }
    // rows with negative rhs are negated so that artificials start feasible
    let mut a = sf.a.clone();
    let mut b = sf.b.clone();
    for i in 0..m {
        if b[i] < 0.0 {
            b[i] = -b[i];
            a.row_mut(i).neg_mut();
        }
    }
    let w = Work { a: &a, b, m, n };

    // unit columns give a feasible start, slacks (the trailing columns) first; artificials
    // fill the remaining rows
    let mut basis = vec![usize::MAX; m];
    for k in (0..n).rev() {
        let col = a.column(k);
        let nz: Vec<usize> = (0..m).filter(|&i| col[i] != 0.0).collect();
        if nz.len() == 1 && col[nz[0]] == 1.0 && basis[nz[0]] == usize::MAX {
            basis[nz[0]] = k;
        }
    }
    let mut any_artificial = false;
    for (i, slot) in basis.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = n + i;
            any_artificial = true;
        }
    }

    let mut snapshots = Vec::new();
    let mut iteration = 0;
    let phase1_cost = DVector::from_fn(n + m, |k, _| if k >= n { 1.0 } else { 0.0 });
    let phase2_cost = DVector::from_fn(n + m, |k, _| if k < n { sf.c[k] } else { 0.0 });

    if any_artificial {
        let st = iterate(&w, &mut basis, &phase1_cost, 1, n, &mut iteration, max_iter, &mut snapshots)?;
        if st == Status::IterationLimit {
            return Ok(finish(&w, sf, basis, snapshots, st));
        }
        let xb = solve(&w.basis_matrix(&basis), &w.b)?;
        let infeas: f64 = basis.iter().zip(xb.iter()).filter(|(&k, _)| k >= n).map(|(_, &v)| v).sum();
        if infeas > TOL * (1.0 + w.b.amax()) {
            return Err(SimplexError::Infeasible(infeas));
        }
        drive_out_artificials(&w, &mut basis)?;
    }
    let st = iterate(&w, &mut basis, &phase2_cost, 2, n, &mut iteration, max_iter, &mut snapshots)?;
    Ok(finish(&w, sf, basis, snapshots, st))
}

fn finish(w: &Work, sf: &StandardForm, basis: Vec<usize>, snapshots: Vec<BasisSnapshot>, status: Status) -> SimplexRun {
    let mut x = DVector::zeros(w.n);
    if let Ok(xb) = solve(&w.basis_matrix(&basis), &w.b) {
        for (i, &k) in basis.iter().enumerate() {
            if k < w.n {
                x[k] = xb[i];
            }
        }
    }
    let objective = sf.c.dot(&x) + sf.offset;
    SimplexRun { snapshots, status, objective, x, n_columns: w.n }
}

fn solve(bm: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    bm.clone().lu().solve(rhs).ok_or(SimplexError::SingularBasis { pivot: 0.0 })
}

#[allow(clippy::too_many_arguments)]
fn iterate(
    w: &Work,
    basis: &mut [usize],
    cost: &DVector<f64>,
    phase: u8,
    n: usize,
    iteration: &mut usize,
    max_iter: usize,
    snapshots: &mut Vec<BasisSnapshot>,
) -> Result<Status> {
    // phase 2 never lets an artificial enter
    let eligible = if phase == 1 { n + w.m } else { n };
    loop {
        let bm = w.basis_matrix(basis);
        let lu = bm.clone().lu();
        let xb = lu.solve(&w.b).ok_or(SimplexError::SingularBasis { pivot: 0.0 })?;
        let cb = DVector::from_iterator(w.m, basis.iter().map(|&k| cost[k]));
        snapshots.push(BasisSnapshot {
            iteration: *iteration,
            phase,
            basis: basis.to_vec(),
            kappa_b: condition_number(&bm),
            matrix: bm.clone(),
            rhs: w.b.clone(),
            cost: cb.clone(),
            objective: cb.dot(&xb),
            accepted: false,
        });
        let y = bm.transpose().lu().solve(&cb).ok_or(SimplexError::SingularBasis { pivot: 0.0 })?;
        // Bland: lowest-index column with negative reduced cost
        let entering = (0..eligible).filter(|k| !basis.contains(k)).find(|&k| cost[k] - w.column(k).dot(&y) < -TOL);
        let Some(q) = entering else {
            return Ok(Status::Optimal);
        };
        if *iteration >= max_iter {
            return Ok(Status::IterationLimit);
        }
        let d = lu.solve(&w.column(q)).ok_or(SimplexError::SingularBasis { pivot: 0.0 })?;
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..w.m {
            if d[i] > TOL {
                let r = xb[i].max(0.0) / d[i];
                leave = match leave {
                    None => Some((i, r)),
                    Some((li, lr)) => {
                        // ties go to the lowest basic column index
                        if r < lr - TOL || (r <= lr + TOL && basis[i] < basis[li]) {
                            Some((i, r))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let Some((p, _)) = leave else {
            return Ok(Status::Unbounded);
        };
        basis[p] = q;
        *iteration += 1;
    }
}

/// Replaces zero-level artificials by structural columns where the row allows it; rows
/// where no structural column has a nonzero entry are redundant and keep their artificial.
fn drive_out_artificials(w: &Work, basis: &mut [usize]) -> Result<()> {
    for p in 0..w.m {
        if basis[p] < w.n {
            continue;
        }
        let bm = w.basis_matrix(basis);
        let bt = bm.transpose().lu();
        let mut e = DVector::zeros(w.m);
        e[p] = 1.0;
        let row = bt.solve(&e).ok_or(SimplexError::SingularBasis { pivot: 0.0 })?;
        if let Some(q) = (0..w.n).filter(|k| !basis.contains(k)).find(|&k| w.column(k).dot(&row).abs() > 1e-7) {
            basis[p] = q;
        }
    }
    Ok(())
}
