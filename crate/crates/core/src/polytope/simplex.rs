//! Dense tableau simplex with Bland's rule and lexicographic objectives.
//!
//! Solves `max c₀ᵀy, then max c₁ᵀy, …` over `{y : Ay ≤ b}` with `y` free.
//! Objectives are optimized in stages. After each stage, columns with a
//! negative reduced cost on the finished objective are frozen out, so the
//! final basis is optimal for `c₀` and, among those optima, for `c₁`, and
//! so on.

use nalgebra::{DMatrix, DVector};

use crate::error::PolytopeError;

const PIVOT_TOL: f64 = 1e-10;
const COST_TOL: f64 = 1e-10;
const MAX_PIVOTS: usize = 50_000;

struct Tableau {
    /// Constraint rows followed by objective rows; last column is the rhs.
    t: DMatrix<f64>,
    rows: usize,
    basis: Vec<usize>,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.t.ncols() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[(r, c)];
        let width = self.t.ncols();
        for j in 0..width {
            self.t[(r, j)] /= p;
        }
        for i in 0..self.t.nrows() {
            if i == r {
                continue;
            }
            let f = self.t[(i, c)];
            if f == 0.0 {
                continue;
            }
            for j in 0..width {
                let v = self.t[(r, j)];
                self.t[(i, j)] -= f * v;
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule on objective row `level` until no allowed column
    /// has reduced cost above `COST_TOL`. Objective rows hold reduced costs
    /// `cⱼ − c_Bᵀ B⁻¹Aⱼ` (to maximize).
    ///
    /// `Err(Unbounded)` if an improving column of the leading objective has
    /// no positive entry. At lower levels such a column is a tolerance
    /// artifact of the frozen leading costs and is excluded instead.
    fn optimize(&mut self, level: usize, allowed: &mut [bool]) -> Result<(), PolytopeError> {
        let row = self.rows + level;
        for _ in 0..MAX_PIVOTS {
            let Some(enter) = (0..self.cols()).find(|&c| allowed[c] && self.t[(row, c)] > COST_TOL)
            else {
                return Ok(());
            };
            let rhs = self.cols();
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.t[(r, enter)];
                if a > PIVOT_TOL {
                    let ratio = self.t[(r, rhs)] / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12
                                || (ratio <= lratio + 1e-12 && self.basis[r] < self.basis[lr])
                            {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                if level > 0 {
                    allowed[enter] = false;
                    continue;
                }
                return Err(PolytopeError::Unbounded);
            };
            self.pivot(r, enter);
        }
        Err(PolytopeError::Unbounded)
    }

    /// After objective `level` is optimal, only columns with zero reduced
    /// cost on it may enter at later levels.
    fn freeze(&self, level: usize, allowed: &mut [bool]) {
        let row = self.rows + level;
        for c in 0..self.cols() {
            if self.t[(row, c)] < -COST_TOL {
                allowed[c] = false;
            }
        }
    }
}

/// Lexicographic LP over `{y : a·y ≤ b}` with free `y`.
///
/// `rows` are `(a, b)` pairs. `objectives` are maximized in priority order.
pub fn lex_max(
    dim: usize,
    rows: &[(DVector<f64>, f64)],
    objectives: &[DVector<f64>],
) -> Result<DVector<f64>, PolytopeError> {
    let m = rows.len();
    let n_obj = objectives.len();
    // columns: y⁺ (dim), y⁻ (dim), slack (m), artificial (m)
    let n_struct = 2 * dim + m;
    let n_cols = n_struct + m;
    let mut t = DMatrix::zeros(m + n_obj, n_cols + 1);
    let mut basis = vec![0; m];
    let mut needs_artificial = vec![false; m];
    for (i, (a, b)) in rows.iter().enumerate() {
        let scale = a.norm().max(1e-300);
        let sign = if *b < 0.0 { -1.0 } else { 1.0 };
        for j in 0..dim {
            t[(i, j)] = sign * a[j] / scale;
            t[(i, dim + j)] = -sign * a[j] / scale;
        }
        t[(i, 2 * dim + i)] = sign;
        t[(i, n_cols)] = sign * b / scale;
        if sign < 0.0 {
            needs_artificial[i] = true;
            t[(i, n_struct + i)] = 1.0;
            basis[i] = n_struct + i;
        } else {
            basis[i] = 2 * dim + i;
        }
    }
    let mut tab = Tableau { t, rows: m, basis };

    // Phase I: maximize −Σ artificials.
    if needs_artificial.iter().any(|&x| x) {
        let obj_row = m;
        for i in 0..m {
            if needs_artificial[i] {
                for j in 0..=n_cols {
                    if j < n_struct || j == n_cols {
                        let v = tab.t[(i, j)];
                        tab.t[(obj_row, j)] += v;
                    }
                }
            }
        }
        let mut allowed: Vec<bool> = (0..n_cols).map(|c| c < n_struct).collect();
        tab.optimize(0, &mut allowed)
            .map_err(|_| PolytopeError::Infeasible)?;
        if tab.t[(obj_row, n_cols)] > 1e-9 {
            return Err(PolytopeError::Infeasible);
        }
        // Drive zero-level artificials out of the basis.
        for r in 0..m {
            if tab.basis[r] >= n_struct {
                if let Some(c) = (0..n_struct).find(|&c| tab.t[(r, c)].abs() > PIVOT_TOL) {
                    tab.pivot(r, c);
                }
            }
        }
        for j in 0..=n_cols {
            tab.t[(obj_row, j)] = 0.0;
        }
    }

    // Phase II objective rows in reduced-cost form.
    for (k, c) in objectives.iter().enumerate() {
        let row = m + k;
        for j in 0..=n_cols {
            tab.t[(row, j)] = 0.0;
        }
        for j in 0..dim {
            tab.t[(row, j)] = c[j];
            tab.t[(row, dim + j)] = -c[j];
        }
        for r in 0..m {
            let b = tab.basis[r];
            let cb = tab.t[(row, b)];
            if cb != 0.0 {
                for j in 0..=n_cols {
                    let v = tab.t[(r, j)];
                    tab.t[(row, j)] -= cb * v;
                }
            }
        }
    }
    let mut allowed: Vec<bool> = (0..n_cols).map(|c| c < n_struct).collect();
    for level in 0..n_obj {
        tab.optimize(level, &mut allowed)?;
        tab.freeze(level, &mut allowed);
    }

    let mut y = DVector::zeros(dim);
    for r in 0..m {
        let b = tab.basis[r];
        let v = tab.t[(r, n_cols)];
        if b < dim {
            y[b] += v;
        } else if b < 2 * dim {
            y[b - dim] -= v;
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[f64]) -> DVector<f64> {
        DVector::from_vec(v.to_vec())
    }

    fn unit_square() -> Vec<(DVector<f64>, f64)> {
        vec![
            (dv(&[-1.0, 0.0]), 0.0),
            (dv(&[0.0, -1.0]), 0.0),
            (dv(&[1.0, 0.0]), 1.0),
            (dv(&[0.0, 1.0]), 1.0),
        ]
    }

    #[test]
    fn maximizes_over_square() {
        let y = lex_max(2, &unit_square(), &[dv(&[1.0, 1.0])]).unwrap();
        assert!((y - dv(&[1.0, 1.0])).amax() < 1e-12);
    }

    #[test]
    fn lexicographic_tie_break() {
        let y = lex_max(
            2,
            &unit_square(),
            &[dv(&[1.0, 0.0]), dv(&[-1.0, 0.0]), dv(&[0.0, -1.0])],
        )
        .unwrap();
        assert!((y - dv(&[1.0, 0.0])).amax() < 1e-12);
    }

    #[test]
    fn needs_phase_one() {
        // 2 ≤ y₁ ≤ 3, 1 ≤ y₂ ≤ 5
        let rows = vec![
            (dv(&[-1.0, 0.0]), -2.0),
            (dv(&[1.0, 0.0]), 3.0),
            (dv(&[0.0, -1.0]), -1.0),
            (dv(&[0.0, 1.0]), 5.0),
        ];
        let y = lex_max(2, &rows, &[dv(&[-1.0, -1.0])]).unwrap();
        assert!((y - dv(&[2.0, 1.0])).amax() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = vec![(dv(&[1.0]), -1.0), (dv(&[-1.0]), -1.0)];
        assert_eq!(
            lex_max(1, &rows, &[dv(&[1.0])]),
            Err(PolytopeError::Infeasible)
        );
        let rows = vec![(dv(&[-1.0, 0.0]), 0.0), (dv(&[0.0, -1.0]), 0.0)];
        assert_eq!(
            lex_max(2, &rows, &[dv(&[1.0, 0.0])]),
            Err(PolytopeError::Unbounded)
        );
    }
}
