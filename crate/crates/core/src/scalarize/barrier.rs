//! Log-barrier path following for smooth convex programs.
//!
//! Minimizes `t·f(x) − Σ log(−fᵢ(x))` by damped Newton for an increasing
//! sequence `t ← μ·t`; the duality gap of a central point is `m/t`. When no
//! strictly feasible start is supplied, a phase-I program
//! `min s  s.t. fᵢ(x) − s ≤ 0` is solved first with the same machinery.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::program::{Affine, ConvexProgram, SharedFn, SmoothFn};
use crate::error::SolveError;

#[derive(Debug, Clone, Copy)]
pub struct BarrierSettings {
    pub mu: f64,
    pub t0: f64,
    /// Threshold on half the squared Newton decrement.
    pub newton_tol: f64,
    pub max_newton: usize,
    pub max_outer: usize,
}

impl Default for BarrierSettings {
    fn default() -> Self {
        Self {
            mu: 20.0,
            t0: 1.0,
            newton_tol: 1e-10,
            max_newton: 200,
            max_outer: 60,
        }
    }
}

/// How the outer loop turns `tol` into a gap target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapRule {
    /// Stop when `m/t ≤ tol`.
    Absolute,
    /// For objectives of the form `½·d²`: stop when `m/t ≤ tol·max(d, floor)`,
    /// which bounds the error in `d` by roughly `tol`.
    Distance { floor: f64 },
}

#[derive(Debug, Clone)]
pub struct BarrierSolution {
    pub x: DVector<f64>,
    pub objective: f64,
    /// Final gap estimate `m/t`.
    pub gap: f64,
    pub outer_iters: usize,
    pub newton_iters: usize,
}

/// Solve with default settings and an absolute gap target.
pub fn barrier_solve(prog: &ConvexProgram, tol: f64) -> Result<BarrierSolution, SolveError> {
    barrier_solve_with(prog, tol, GapRule::Absolute, &BarrierSettings::default())
}

pub fn barrier_solve_with(
    prog: &ConvexProgram,
    tol: f64,
    rule: GapRule,
    settings: &BarrierSettings,
) -> Result<BarrierSolution, SolveError> {
    let start = match &prog.start {
        Some(x) if x.len() != prog.n_vars => {
            return Err(SolveError::DimensionMismatch {
                expected: prog.n_vars,
                got: x.len(),
            })
        }
        Some(x) if prog.max_constraint(x) < 0.0 => x.clone(),
        other => phase_one(prog, other.clone(), settings)?,
    };
    path_follow(prog, start, tol, rule, settings, None)
}

fn path_follow(
    prog: &ConvexProgram,
    mut x: DVector<f64>,
    tol: f64,
    rule: GapRule,
    settings: &BarrierSettings,
    early_exit: Option<&dyn Fn(&DVector<f64>) -> bool>,
) -> Result<BarrierSolution, SolveError> {
    let m = prog.constraints.len() as f64;
    let mut t = settings.t0;
    let mut newton_iters = 0;
    for outer in 1..=settings.max_outer {
        newton_iters += center(prog, &mut x, t, settings, early_exit)?;
        let objective = prog.objective.value(&x);
        let gap = m / t;
        let done = early_exit.is_some_and(|f| f(&x))
            || match rule {
                GapRule::Absolute => gap <= tol,
                GapRule::Distance { floor } => {
                    gap <= tol * (2.0 * objective.max(0.0)).sqrt().max(floor)
                }
            };
        if done || m == 0.0 {
            return Ok(BarrierSolution {
                x,
                objective,
                gap,
                outer_iters: outer,
                newton_iters,
            });
        }
        t *= settings.mu;
    }
    Err(SolveError::MaxIter("barrier outer iterations"))
}

/// Damped Newton on the barrier function for fixed `t`. Returns the step count.
fn center(
    prog: &ConvexProgram,
    x: &mut DVector<f64>,
    t: f64,
    settings: &BarrierSettings,
    early_exit: Option<&dyn Fn(&DVector<f64>) -> bool>,
) -> Result<usize, SolveError> {
    const ALPHA: f64 = 0.01;
    const BETA: f64 = 0.5;
    /// Half squared decrement below which the unit step must be accepted.
    const PURE_NEWTON: f64 = 1e-3;
    let n = prog.n_vars;
    for iter in 0..settings.max_newton {
        let mut grad = prog.objective.gradient(x) * t;
        let mut hess = prog.objective.hessian(x) * t;
        for c in &prog.constraints {
            let fi = c.value(x);
            let gi = c.gradient(x);
            let inv = -1.0 / fi;
            grad.axpy(inv, &gi, 1.0);
            hess += &gi * gi.transpose() * (inv * inv) + c.hessian(x) * inv;
        }
        let Some(step) = newton_direction(&hess, &grad) else {
            return Ok(iter);
        };
        let slope = grad.dot(&step);
        if -slope / 2.0 <= settings.newton_tol {
            return Ok(iter);
        }
        let phi0 = barrier_value(prog, x, t).unwrap_or(f64::INFINITY);
        let mut s = 1.0;
        loop {
            if s < 1e-14 {
                // Roundoff floor: no representable decrease along the Newton direction.
                return Ok(iter);
            }
            let trial = &*x + &step * s;
            if let Some(phi) = barrier_value(prog, &trial, t) {
                if phi <= phi0 + ALPHA * s * slope {
                    // Below the resolution of φ or of x: the roundoff floor.
                    let moved = (&trial - &*x).amax();
                    if !(phi < phi0) || moved <= 1e-15 * (1.0 + x.amax()) {
                        *x = trial;
                        return Ok(iter + 1);
                    }
                    *x = trial;
                    break;
                }
            }
            if s == 1.0 && -slope / 2.0 <= PURE_NEWTON {
                // A self-concordant barrier accepts the unit step in this regime;
                // rejection is roundoff.
                return Ok(iter);
            }
            s *= BETA;
        }
        if early_exit.is_some_and(|f| f(x)) {
            return Ok(iter + 1);
        }
        debug_assert_eq!(x.len(), n);
    }
    Err(SolveError::MaxIter("Newton iterations"))
}

fn barrier_value(prog: &ConvexProgram, x: &DVector<f64>, t: f64) -> Option<f64> {
    let mut phi = t * prog.objective.value(x);
    for c in &prog.constraints {
        let fi = c.value(x);
        if !(fi < 0.0) {
            return None;
        }
        phi -= (-fi).ln();
    }
    phi.is_finite().then_some(phi)
}

fn newton_direction(hess: &DMatrix<f64>, grad: &DVector<f64>) -> Option<DVector<f64>> {
    let n = hess.nrows();
    let scale = hess.diagonal().amax().max(1e-300);
    let mut shift = 0.0;
    for _ in 0..12 {
        let mut h = hess.clone();
        for i in 0..n {
            h[(i, i)] += shift;
        }
        if let Some(chol) = h.cholesky() {
            let d = chol.solve(&(-grad));
            if d.iter().all(|v| v.is_finite()) {
                return Some(d);
            }
        }
        shift = if shift == 0.0 {
            1e-14 * scale
        } else {
            shift * 100.0
        };
    }
    None
}

struct Shifted {
    inner: SharedFn,
    n: usize,
}

impl SmoothFn for Shifted {
    fn value(&self, xs: &DVector<f64>) -> f64 {
        self.inner.value(&xs.rows(0, self.n).into_owned()) - xs[self.n]
    }
    fn gradient(&self, xs: &DVector<f64>) -> DVector<f64> {
        let mut g = DVector::zeros(self.n + 1);
        g.rows_mut(0, self.n)
            .copy_from(&self.inner.gradient(&xs.rows(0, self.n).into_owned()));
        g[self.n] = -1.0;
        g
    }
    fn hessian(&self, xs: &DVector<f64>) -> DMatrix<f64> {
        let mut h = DMatrix::zeros(self.n + 1, self.n + 1);
        h.view_mut((0, 0), (self.n, self.n))
            .copy_from(&self.inner.hessian(&xs.rows(0, self.n).into_owned()));
        h
    }
}

/// Find a strictly feasible point of `prog`.
pub fn phase_one(
    prog: &ConvexProgram,
    start: Option<DVector<f64>>,
    settings: &BarrierSettings,
) -> Result<DVector<f64>, SolveError> {
    let n = prog.n_vars;
    let x0 = start.unwrap_or_else(|| DVector::zeros(n));
    if prog.constraints.is_empty() {
        return Ok(x0);
    }
    let s0 = prog.max_constraint(&x0).max(0.0) + 1.0;
    let mut xs = DVector::zeros(n + 1);
    xs.rows_mut(0, n).copy_from(&x0);
    xs[n] = s0;
    let mut e = DVector::zeros(n + 1);
    e[n] = 1.0;
    let aux = ConvexProgram {
        n_vars: n + 1,
        objective: Arc::new(Affine::new(e, 0.0)),
        constraints: prog
            .constraints
            .iter()
            .map(|c| {
                Arc::new(Shifted {
                    inner: c.clone(),
                    n,
                }) as SharedFn
            })
            .collect(),
        start: None,
    };
    let feasible = |xs: &DVector<f64>| prog.max_constraint(&xs.rows(0, n).into_owned()) < 0.0;
    let sol = path_follow(
        &aux,
        xs,
        1e-10,
        GapRule::Absolute,
        settings,
        Some(&feasible),
    )?;
    let x = sol.x.rows(0, n).into_owned();
    if prog.max_constraint(&x) < 0.0 {
        Ok(x)
    } else {
        Err(SolveError::Infeasible(sol.x[n]))
    }
}
