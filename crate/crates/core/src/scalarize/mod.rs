//! Norm-minimizing and weighted-sum scalarizations, and cut extraction.
//!
//! `P_M(v)`: minimize `‖z‖_M` over `(x, z)` subject to `x ∈ X`,
//! `G(Γ(x) − z − v) ≤ 0` and `w̄ᵀ(v + z) ≤ γ`. The optimal value is
//! `d_M(v, A)`. The barrier solver works on the smooth objective `½zᵀMz`,
//! which has the same minimizer, and the cut normal is `g* = Mz*/‖z*‖_M`.

pub mod barrier;
pub mod program;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use self::barrier::{barrier_solve_with, BarrierSettings, GapRule};
use self::program::{Affine, ConvexProgram, Leading, Quadratic, SharedFn, SmoothFn};
use crate::error::SolveError;
use crate::metric::SpdMatrix;
use crate::polytope::Halfspace;
use crate::problems::{ProblemSpec, SharedMap};

/// Below this value `v` is treated as a point of `A` and yields no cut.
pub const SEPARATION_THRESHOLD: f64 = 1e-8;
/// Default accuracy of `P_M(v)` in distance units.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    MaxIter,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct ScalarizationResult {
    pub x_star: DVector<f64>,
    pub z_star: DVector<f64>,
    /// `‖z*‖_M`
    pub value: f64,
    /// `Mz*/‖z*‖_M`, present when `value > SEPARATION_THRESHOLD`.
    pub cut_normal: Option<DVector<f64>>,
    /// `v + z*`
    pub y_boundary: DVector<f64>,
    /// `Γ(x*)`
    pub y_image: DVector<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutPoint {
    #[default]
    Image,
    Boundary,
}

/// `row·(Γ(x) − z − v)` over the stacked variable `(x, z)`.
struct ConeRow {
    map: SharedMap,
    row: DVector<f64>,
    v: DVector<f64>,
    n: usize,
}

impl SmoothFn for ConeRow {
    fn value(&self, w: &DVector<f64>) -> f64 {
        let x = w.rows(0, self.n).into_owned();
        let z = w.rows(self.n, self.row.len());
        self.row.dot(&(self.map.eval(&x) - z - &self.v))
    }
    fn gradient(&self, w: &DVector<f64>) -> DVector<f64> {
        let q = self.row.len();
        let x = w.rows(0, self.n).into_owned();
        let mut g = DVector::zeros(self.n + q);
        g.rows_mut(0, self.n)
            .copy_from(&(self.map.jacobian(&x).transpose() * &self.row));
        g.rows_mut(self.n, q).copy_from(&(-&self.row));
        g
    }
    fn hessian(&self, w: &DVector<f64>) -> DMatrix<f64> {
        let q = self.row.len();
        let x = w.rows(0, self.n).into_owned();
        let mut h = DMatrix::zeros(self.n + q, self.n + q);
        h.view_mut((0, 0), (self.n, self.n))
            .copy_from(&self.map.weighted_hessian(&x, &self.row));
        h
    }
}

/// `ωᵀΓ(x)`
struct Weighted {
    map: SharedMap,
    omega: DVector<f64>,
}

impl SmoothFn for Weighted {
    fn value(&self, x: &DVector<f64>) -> f64 {
        self.omega.dot(&self.map.eval(x))
    }
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        self.map.jacobian(x).transpose() * &self.omega
    }
    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        self.map.weighted_hessian(x, &self.omega)
    }
}

/// The constraint set of `P_M(v)` over `(x, z)`, without objective.
fn norm_min_program(problem: &ProblemSpec, v: &DVector<f64>, objective: SharedFn) -> ConvexProgram {
    let (n, q) = (problem.n, problem.q);
    let total = n + q;
    let mut prog = ConvexProgram::new(total, objective);
    for f in &problem.feasible {
        prog = prog.constraint(Arc::new(Leading {
            inner: f.clone(),
            n,
            total,
        }));
    }
    for i in 0..q {
        prog = prog.constraint(Arc::new(ConeRow {
            map: problem.gamma.clone(),
            row: problem.cone_matrix.row(i).transpose(),
            v: v.clone(),
            n,
        }));
    }
    let mut cap = DVector::zeros(total);
    cap.rows_mut(n, q).copy_from(&problem.slice_direction);
    prog = prog.constraint(Arc::new(Affine::new(
        cap,
        problem.slice_direction.dot(v) - problem.slice_level,
    )));

    // z₀ = Γ(x₀) − v + δ·c_int with δ ≤ 1 shrunk to keep half the cap slack.
    let y0 = problem.image(&problem.x0);
    let c = &problem.interior_cone_dir;
    let room = problem.slice_level - problem.slice_direction.dot(&y0);
    let reach = problem.slice_direction.dot(c);
    let delta = if reach > 0.0 {
        (0.5 * room / reach).min(1.0)
    } else {
        1.0
    };
    let mut start = DVector::zeros(total);
    start.rows_mut(0, n).copy_from(&problem.x0);
    start.rows_mut(n, q).copy_from(&(y0 - v + c * delta));
    prog.with_start(start)
}

fn result_from(
    problem: &ProblemSpec,
    v: &DVector<f64>,
    metric: &SpdMatrix,
    w: &DVector<f64>,
) -> ScalarizationResult {
    let (n, q) = (problem.n, problem.q);
    let x_star = w.rows(0, n).into_owned();
    let z_star = w.rows(n, q).into_owned();
    let value = metric.norm(&z_star);
    let cut_normal = (value > SEPARATION_THRESHOLD).then(|| metric.apply(&z_star) / value);
    ScalarizationResult {
        y_boundary: v + &z_star,
        y_image: problem.image(&x_star),
        x_star,
        z_star,
        value,
        cut_normal,
        status: Status::Optimal,
    }
}

/// Solves `P_M(v)` to distance accuracy `tol`.
pub fn solve_norm_min(
    problem: &ProblemSpec,
    v: &DVector<f64>,
    metric: &SpdMatrix,
    tol: f64,
) -> Result<ScalarizationResult, SolveError> {
    let (n, q) = (problem.n, problem.q);
    if v.len() != q || metric.dim() != q {
        return Err(SolveError::DimensionMismatch {
            expected: q,
            got: if v.len() != q { v.len() } else { metric.dim() },
        });
    }
    let mut p = DMatrix::zeros(n + q, n + q);
    p.view_mut((n, n), (q, q)).copy_from(metric.matrix());
    let objective = Arc::new(Quadratic::new(p, DVector::zeros(n + q), 0.0));
    let prog = norm_min_program(problem, v, objective);
    let sol = barrier_solve_with(
        &prog,
        tol,
        GapRule::Distance {
            floor: SEPARATION_THRESHOLD,
        },
        &BarrierSettings::default(),
    )?;
    Ok(result_from(problem, v, metric, &sol.x))
}

/// Solves `P_M(v)` with the norm itself as objective, smoothed as
/// `√(zᵀMz + s²)`. Reference implementation for checking the surrogate;
/// `smoothing` bounds the value error.
pub fn solve_norm_min_direct(
    problem: &ProblemSpec,
    v: &DVector<f64>,
    metric: &SpdMatrix,
    smoothing: f64,
    tol: f64,
) -> Result<ScalarizationResult, SolveError> {
    let (n, q) = (problem.n, problem.q);
    let m = metric.matrix().clone();
    let s2 = smoothing * smoothing;
    let (m1, m2, m3) = (m.clone(), m.clone(), m);
    let objective = Arc::new(program::ClosureFn::new(
        move |w: &DVector<f64>| {
            let z = w.rows(n, q).into_owned();
            (z.dot(&(&m1 * &z)) + s2).sqrt()
        },
        move |w: &DVector<f64>| {
            let z = w.rows(n, q).into_owned();
            let mz = &m2 * &z;
            let r = (z.dot(&mz) + s2).sqrt();
            let mut g = DVector::zeros(n + q);
            g.rows_mut(n, q).copy_from(&(mz / r));
            g
        },
        move |w: &DVector<f64>| {
            let z = w.rows(n, q).into_owned();
            let mz = &m3 * &z;
            let r = (z.dot(&mz) + s2).sqrt();
            let mut h = DMatrix::zeros(n + q, n + q);
            h.view_mut((n, n), (q, q))
                .copy_from(&(&m3 / r - &mz * mz.transpose() / (r * r * r)));
            h
        },
    ));
    let prog = norm_min_program(problem, v, objective);
    let sol = barrier_solve_with(&prog, tol, GapRule::Absolute, &BarrierSettings::default())?;
    Ok(result_from(problem, v, metric, &sol.x))
}

/// `min_{x∈X} ωᵀΓ(x)` for `ω ∈ C⁺ \ {0}`. The returned support value is the
/// objective at the solution minus the certified gap, so `{y : ωᵀy ≥ h}`
/// contains `Γ(X) + C`.
pub fn weighted_sum(
    problem: &ProblemSpec,
    omega: &DVector<f64>,
) -> Result<(DVector<f64>, f64), SolveError> {
    if omega.len() != problem.q {
        return Err(SolveError::DimensionMismatch {
            expected: problem.q,
            got: omega.len(),
        });
    }
    let objective = Arc::new(Weighted {
        map: problem.gamma.clone(),
        omega: omega.clone(),
    });
    let mut prog = ConvexProgram::new(problem.n, objective).with_start(problem.x0.clone());
    for f in &problem.feasible {
        prog = prog.constraint(f.clone());
    }
    let sol = barrier_solve_with(&prog, 1e-12, GapRule::Absolute, &BarrierSettings::default())?;
    let support = omega.dot(&problem.image(&sol.x)) - sol.gap;
    Ok((sol.x, support))
}

/// Supporting halfspace `{y : g*·y ≥ offset}` from a nondegenerate result.
///
/// `Boundary` uses `offset = g*·(v + z*)`. `Image` uses `g*·Γ(x*)` but never
/// more than the boundary offset: when the cap is active the image point can
/// sit strictly above the supporting level of `A`.
pub fn extract_cut(result: &ScalarizationResult, mode: CutPoint) -> Result<Halfspace, SolveError> {
    let g = match &result.cut_normal {
        Some(g) if result.value > SEPARATION_THRESHOLD => g.clone(),
        _ => return Err(SolveError::DegenerateCut(result.value)),
    };
    let boundary = g.dot(&result.y_boundary);
    let offset = match mode {
        CutPoint::Boundary => boundary,
        CutPoint::Image => g.dot(&result.y_image).min(boundary),
    };
    Halfspace::new(g, offset).map_err(|_| SolveError::DegenerateCut(result.value))
}
