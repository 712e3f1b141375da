use super::RunTrace;
use crate::error::HarnessError;

/// Least-squares fit of `log E = intercept + slope·log k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(k_start, k_end)`, inclusive.
    pub window: (usize, usize),
    /// In `[0, 1]`; 0 when the errors are constant.
    pub r_squared: f64,
    /// The errors in the window are constant.
    pub flat: bool,
}

/// Second half of a run of `n` iterations: `k ∈ [⌈n/2⌉, n]`.
pub fn fit_window(n: usize) -> (usize, usize) {
    (n.div_ceil(2), n)
}

/// Fits the trace over the second half of the run, skipping rows with
/// `E_k ≤ 0` and `k = 0`.
pub fn fit_rate(trace: &RunTrace) -> Result<RateFit, HarnessError> {
    let positive = trace.rows.iter().filter(|r| r.hausdorff_err > 0.0).count();
    if positive < 4 {
        return Err(HarnessError::TooFewPoints(positive));
    }
    let points: Vec<(usize, f64)> = trace
        .rows
        .iter()
        .map(|r| (r.iter, r.hausdorff_err))
        .collect();
    fit_series(&points)
}

/// Same as [`fit_rate`] on raw `(k, E_k)` pairs; `N` is the largest `k`.
pub fn fit_series(points: &[(usize, f64)]) -> Result<RateFit, HarnessError> {
    let n = points.iter().map(|p| p.0).max().unwrap_or(0);
    let window = fit_window(n);
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(k, e)| k >= window.0 && k >= 1 && e > 0.0)
        .map(|&(k, e)| ((k as f64).ln(), e.ln()))
        .collect();
    if xy.len() < 2 {
        return Err(HarnessError::TooFewPoints(xy.len()));
    }
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    let flat = syy <= 1e-24 * (1.0 + my * my) * m;
    if flat {
        return Ok(RateFit {
            slope: 0.0,
            intercept: my,
            window,
            r_squared: 0.0,
            flat: true,
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0);
    Ok(RateFit {
        slope,
        intercept,
        window,
        r_squared,
        flat: false,
    })
}
