//! Small dense elimination routines.
//!
//! Exact mode uses fraction-free (Bareiss) row updates with first-nonzero
//! pivoting; float mode uses partial pivoting with a relative rank threshold.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};

/// Row-echelon form together with its pivot positions `(row, column)`.
struct Echelon<S> {
    rows: Vec<Vec<S>>,
    pivots: Vec<(usize, usize)>,
}

fn max_abs<S: Scalar>(rows: &[Vec<S>], cols: usize) -> f64 {
    rows.iter()
        .flat_map(|r| r[..cols].iter())
        .map(|v| v.magnitude())
        .fold(0.0, f64::max)
}

/// Eliminates over the first `pivot_cols` columns; trailing columns (e.g. a
/// right-hand side) are carried along.
fn echelon<S: Scalar>(mut rows: Vec<Vec<S>>, pivot_cols: usize, tol: Tol) -> Echelon<S> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let norm = max_abs(&rows, pivot_cols);
    let mut prev = S::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let pick = if S::EXACT {
            (r..nrows).find(|&i| !rows[i][c].is_zero())
        } else {
            (r..nrows)
                .max_by(|&a, &b| rows[a][c].magnitude().total_cmp(&rows[b][c].magnitude()))
                .filter(|&i| rows[i][c].magnitude() > tol.value() * norm.max(f64::MIN_POSITIVE))
        };
        let Some(pick) = pick else { continue };
        rows.swap(r, pick);
        let p = rows[r][c].clone();
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            if S::EXACT {
                for j in c + 1..ncols {
                    row[j] = (p.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone())
                        / prev.clone();
                }
            } else if !factor.is_zero() {
                let f = factor / p.clone();
                for j in c + 1..ncols {
                    row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
                }
            }
            row[c] = S::zero();
        }
        if S::EXACT {
            prev = p;
        }
        pivots.push((r, c));
        r += 1;
    }
    Echelon { rows, pivots }
}

/// Back substitution over the pivot rows, with `fixed` supplying the values
/// of the non-pivot unknowns and `rhs_col` an optional right-hand side column.
fn back_substitute<S: Scalar>(
    e: &Echelon<S>,
    ncols: usize,
    fixed: &[(usize, S)],
    rhs_col: Option<usize>,
) -> Vec<S> {
    let mut x = vec![S::zero(); ncols];
    for (c, v) in fixed {
        x[*c] = v.clone();
    }
    for &(r, c) in e.pivots.iter().rev() {
        let row = &e.rows[r];
        let mut acc = rhs_col.map_or_else(S::zero, |k| row[k].clone());
        for j in c + 1..ncols {
            acc = acc - row[j].clone() * x[j].clone();
        }
        x[c] = acc / row[c].clone();
    }
    x
}

/// One nonzero vector `v` with `matrix * v = 0`, scaled so that its first
/// nonzero entry is one. When the nullspace has dimension above one, the
/// vector attached to the first free column is returned.
pub fn nullspace_vector<S: Scalar>(matrix: &[Vec<S>], tol: Tol) -> Result<Vec<S>> {
    let ncols = matrix.first().map_or(0, Vec::len);
    if ncols == 0 {
        return Err(Error::FullRank);
    }
    let e = echelon(matrix.to_vec(), ncols, tol);
    let free = (0..ncols)
        .find(|c| !e.pivots.iter().any(|&(_, pc)| pc == *c))
        .ok_or(Error::FullRank)?;
    let fixed: Vec<(usize, S)> = (0..ncols)
        .filter(|c| !e.pivots.iter().any(|&(_, pc)| pc == *c))
        .map(|c| (c, if c == free { S::one() } else { S::zero() }))
        .collect();
    let v = back_substitute(&e, ncols, &fixed, None);
    let vmax = v.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
    let lead = v
        .iter()
        .find(|x| !tol.is_zero(*x, 0.0) && (S::EXACT || x.magnitude() > tol.value() * vmax))
        .cloned()
        .ok_or(Error::FullRank)?;
    let v: Vec<S> = v.into_iter().map(|x| x / lead.clone()).collect();
    if !S::EXACT {
        for row in matrix {
            let (dot, scale) = row_dot(row, &v);
            if dot.magnitude() > tol.value() * scale.max(f64::MIN_POSITIVE) * 10.0 {
                return Err(Error::FullRank);
            }
        }
    }
    Ok(v)
}

/// `row . v` together with `sum |row_j v_j|`.
pub(crate) fn row_dot<S: Scalar>(row: &[S], v: &[S]) -> (S, f64) {
    row.iter().zip(v).fold((S::zero(), 0.0), |(acc, scale), (a, b)| {
        let term = a.clone() * b.clone();
        let m = term.magnitude();
        (acc + term, scale + m)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveFailure {
    /// Some equation cannot be met; `residual` is the worst relative miss.
    Inconsistent { residual: f64 },
    /// The columns are dependent so the solution is not unique.
    Underdetermined,
}

/// Solves an overdetermined but consistent system `matrix * x = rhs` and
/// verifies every equation, exactly or to `tol`.
pub fn solve_consistent<S: Scalar>(
    matrix: &[Vec<S>],
    rhs: &[S],
    tol: Tol,
) -> std::result::Result<Vec<S>, SolveFailure> {
    let ncols = matrix.first().map_or(0, Vec::len);
    // column equilibration for float mode
    let col_scale: Vec<S> = (0..ncols)
        .map(|c| {
            if S::EXACT {
                return S::one();
            }
            let m = matrix.iter().map(|r| r[c].magnitude()).fold(0.0, f64::max);
            if m > 0.0 {
                S::from_ratio(1, 1) / scale_from_f64::<S>(m)
            } else {
                S::one()
            }
        })
        .collect();
    let augmented: Vec<Vec<S>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<S> = row
                .iter()
                .zip(&col_scale)
                .map(|(a, s)| a.clone() * s.clone())
                .collect();
            r.push(b.clone());
            r
        })
        .collect();
    let e = echelon(augmented, ncols, tol);
    if e.pivots.len() < ncols {
        return Err(SolveFailure::Underdetermined);
    }
    let y = back_substitute(&e, ncols, &[], Some(ncols));
    let x: Vec<S> = y
        .into_iter()
        .zip(&col_scale)
        .map(|(v, s)| v * s.clone())
        .collect();
    let mut worst = 0.0f64;
    for (row, b) in matrix.iter().zip(rhs) {
        let (dot, scale) = row_dot(row, &x);
        let miss = dot - b.clone();
        if S::EXACT {
            if !miss.is_zero() {
                worst = worst.max(miss.magnitude().max(f64::MIN_POSITIVE));
            }
        } else {
            let rel = miss.magnitude() / (scale + b.magnitude()).max(1.0);
            worst = worst.max(rel);
        }
    }
    let failed = if S::EXACT { worst > 0.0 } else { worst > tol.value() };
    if failed {
        Err(SolveFailure::Inconsistent { residual: worst })
    } else {
        Ok(x)
    }
}

/// Only used for float equilibration factors.
fn scale_from_f64<S: Scalar>(m: f64) -> S {
    // powers of two keep the scaling exact in binary floating point
    let e = m.log2().round() as i64;
    S::from_i64(2).powi(e)
}
