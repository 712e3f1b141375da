//! Small dense helpers shared by the polyhedral and metric kernels.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};

/// Relative pivot threshold below which a square system is treated as singular.
pub const PIVOT_TOL: f64 = 1e-12;

/// Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot falls below `PIVOT_TOL` times the largest
/// absolute entry of the matrix. Intended for q ≤ 8.
pub fn solve_square(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    debug_assert_eq!(n, b.len());
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let mut m = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, m[(r, col)].abs()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pivot_abs <= PIVOT_TOL * scale {
            return None;
        }
        if pivot_row != col {
            m.swap_rows(pivot_row, col);
            rhs.swap_rows(pivot_row, col);
        }
        let p = m[(col, col)];
        for r in col + 1..n {
            let factor = m[(r, col)] / p;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                m[(r, c)] -= factor * m[(col, c)];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut x = DVector::zeros(n);
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for c in r + 1..n {
            acc -= m[(r, c)] * x[c];
        }
        x[r] = acc / m[(r, r)];
    }
    Some(x)
}

/// Numerical rank by Gaussian elimination with complete pivoting.
pub fn rank(a: &DMatrix<f64>, tol: f64) -> usize {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, val) = (r..rows)
            .map(|i| (i, m[(i, c)].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            continue;
        }
        m.swap_rows(best, r);
        for i in r + 1..rows {
            let f = m[(i, c)] / m[(r, c)];
            for j in c..cols {
                m[(i, j)] -= f * m[(r, j)];
            }
        }
        r += 1;
    }
    r
}

/// Lexicographic order on coordinates.
pub fn lex_cmp(a: &DVector<f64>, b: &DVector<f64>) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Max-norm distance between two points.
pub fn max_abs_diff(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Symmetrize in place: (A + Aᵀ)/2.
pub fn symmetrize(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}
