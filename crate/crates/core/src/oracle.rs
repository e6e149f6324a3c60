//! Ground truth that does not depend on any cyclotomic reasoning: exact rank
//! by fraction-free elimination, and a Jacobi eigensolver for spectra.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RealMatrix};

/// Sweep limit for [`symmetric_eigenvalues`].
pub const MAX_JACOBI_SWEEPS: usize = 50;
/// Default relative off-diagonal tolerance for [`symmetric_eigenvalues`].
pub const JACOBI_TOL: f64 = 1e-10;
/// Default threshold below which an eigenvalue counts as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    ExactRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub dimension: usize,
    pub rank: usize,
    pub nullity: usize,
    pub method: OracleMethod,
}

/// Exact rank and nullity of a square integer matrix.
pub fn exact_nullity(mat: &IntMatrix) -> Result<OracleReport> {
    if !mat.is_square() {
        return Err(Error::NotSquare {
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let rank = exact_rank(mat);
    Ok(OracleReport {
        dimension: mat.rows(),
        rank,
        nullity: mat.rows() - rank,
        method: OracleMethod::ExactRank,
    })
}

/// Rank by Bareiss elimination. Runs in `i128` and restarts with `BigInt`
/// if any intermediate overflows.
pub fn exact_rank(mat: &IntMatrix) -> usize {
    let rows: Vec<Vec<i128>> = (0..mat.rows())
        .map(|i| mat.row(i).iter().map(|&x| i128::from(x)).collect())
        .collect();
    bareiss_rank(rows).unwrap_or_else(|| exact_rank_bigint(mat))
}

/// Rank by Bareiss elimination over arbitrary-precision integers.
pub fn exact_rank_bigint(mat: &IntMatrix) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..mat.rows())
        .map(|i| mat.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(rows).expect("BigInt arithmetic cannot overflow")
}

/// The integer operations Bareiss elimination needs. `None` signals overflow.
trait BareissEntry: Clone {
    fn is_zero(&self) -> bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn magnitude_key(&self) -> u128;
    /// `(pivot * x - lead * y) / prev`, exact.
    fn bareiss_step(pivot: &Self, x: &Self, lead: &Self, y: &Self, prev: &Self) -> Option<Self>;
}

impl BareissEntry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn magnitude_key(&self) -> u128 {
        self.unsigned_abs()
    }

    fn bareiss_step(pivot: &Self, x: &Self, lead: &Self, y: &Self, prev: &Self) -> Option<Self> {
        let num = pivot.checked_mul(*x)?.checked_sub(lead.checked_mul(*y)?)?;
        debug_assert_eq!(num % prev, 0);
        Some(num / prev)
    }
}

impl BareissEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }

    fn one() -> Self {
        BigInt::from(1)
    }

    fn magnitude_key(&self) -> u128 {
        // Only orders pivots; bit length is a good enough proxy.
        u128::from(self.abs().bits())
    }

    fn bareiss_step(pivot: &Self, x: &Self, lead: &Self, y: &Self, prev: &Self) -> Option<Self> {
        let num = pivot * x - lead * y;
        debug_assert!(Zero::is_zero(&(&num % prev)));
        Some(num / prev)
    }
}

fn bareiss_rank<T: BareissEntry>(mut a: Vec<Vec<T>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero entry in the column keeps growth down
        let Some(p) = (rank..rows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].magnitude_key())
        else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                row[j] = T::bareiss_step(pivot, &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
/// Iterates until the off-diagonal Frobenius norm drops below
/// `tol · ‖mat‖_F`. Sweep order is fixed, so results are reproducible.
pub fn symmetric_eigenvalues(mat: &RealMatrix, tol: f64) -> Result<Vec<f64>> {
    if !mat.is_square() {
        return Err(Error::NotSquare {
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    let n = mat.rows();
    let norm = mat.frobenius_norm();
    let sym_tol = tol * norm.max(1.0);
    for i in 0..n {
        for j in 0..i {
            let diff = (mat[(i, j)] - mat[(j, i)]).abs();
            if diff > sym_tol {
                return Err(Error::Asymmetric {
                    row: i,
                    col: j,
                    diff,
                });
            }
        }
    }

    let mut a = mat.clone();
    let off_norm = |a: &RealMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..=MAX_JACOBI_SWEEPS {
        let off = off_norm(&a);
        if off == 0.0 || off < tol * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_JACOBI_SWEEPS));
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

pub fn count_zero_eigenvalues(eigs: &[f64], zero_tol: f64) -> usize {
    eigs.iter().filter(|x| x.abs() < zero_tol).count()
}
