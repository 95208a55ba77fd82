use super::RatFunc;
use crate::error::{Error, Result};

/// Dense row-major matrix over Q(U,V).
pub type Matrix = Vec<Vec<RatFunc>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.len(),
            a.first().map_or(0, Vec::len),
            b.len(),
            b.first().map_or(0, Vec::len)
        )));
    }
    let cols = b.first().map_or(0, Vec::len);
    Ok(a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).filter(|(x, r)| !x.is_zero() && !r[j].is_zero()).map(|(x, r)| x * &r[j]).sum()
                })
                .collect()
        })
        .collect())
}

/// Solves `m * x = b` for every right-hand side `b` in `rhs`.
///
/// Gauss-Jordan elimination; the pivot is the first nonzero entry in the
/// column. The solutions are checked by substitution before returning.
pub fn solve_linear(m: &Matrix, rhs: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("coefficient matrix is not square".into()));
    }
    if let Some(b) = rhs.iter().find(|b| b.len() != n) {
        return Err(Error::Dimension(format!("right-hand side has length {}, expected {n}", b.len())));
    }
    let k = rhs.len();
    // Augmented rows: [m | b_1 ... b_k].
    let mut a: Matrix = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();

    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inverse()?;
        let pivot_row: Vec<RatFunc> = a[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        a[rank] = pivot_row;
        rank += 1;
    }
    if rank < n {
        return Err(Error::Singular { rank, size: n });
    }

    let sols: Vec<Vec<RatFunc>> = (0..k).map(|j| (0..n).map(|i| a[i][n + j].clone()).collect()).collect();
    for (x, b) in sols.iter().zip(rhs) {
        for (row, bi) in m.iter().zip(b) {
            let lhs: RatFunc = row.iter().zip(x).map(|(c, xi)| c * xi).sum();
            assert_eq!(&lhs, bi, "back-substitution residual is nonzero");
        }
    }
    Ok(sols)
}

/// Inverse of a square matrix.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let cols = solve_linear(m, &identity(n))?;
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}
