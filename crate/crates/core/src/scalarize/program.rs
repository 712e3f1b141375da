use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

/// A twice differentiable scalar function with gradient and Hessian oracles.
pub trait SmoothFn: Send + Sync {
    fn value(&self, x: &DVector<f64>) -> f64;
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64>;
    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64>;
}

pub type SharedFn = Arc<dyn SmoothFn>;

/// `a·x + b`
#[derive(Debug, Clone)]
pub struct Affine {
    pub a: DVector<f64>,
    pub b: f64,
}

impl Affine {
    pub fn new(a: DVector<f64>, b: f64) -> Self {
        Self { a, b }
    }
}

impl SmoothFn for Affine {
    fn value(&self, x: &DVector<f64>) -> f64 {
        self.a.dot(x) + self.b
    }
    fn gradient(&self, _x: &DVector<f64>) -> DVector<f64> {
        self.a.clone()
    }
    fn hessian(&self, _x: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::zeros(self.a.len(), self.a.len())
    }
}

/// `½ xᵀPx + cᵀx + r`
#[derive(Debug, Clone)]
pub struct Quadratic {
    pub p: DMatrix<f64>,
    pub c: DVector<f64>,
    pub r: f64,
}

impl Quadratic {
    pub fn new(p: DMatrix<f64>, c: DVector<f64>, r: f64) -> Self {
        Self { p, c, r }
    }

    /// `‖x − center‖² − radius²`
    pub fn ball(center: &DVector<f64>, radius: f64) -> Self {
        let n = center.len();
        Self {
            p: DMatrix::identity(n, n) * 2.0,
            c: center * -2.0,
            r: center.norm_squared() - radius * radius,
        }
    }
}

impl SmoothFn for Quadratic {
    fn value(&self, x: &DVector<f64>) -> f64 {
        0.5 * x.dot(&(&self.p * x)) + self.c.dot(x) + self.r
    }
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.p * x + &self.c
    }
    fn hessian(&self, _x: &DVector<f64>) -> DMatrix<f64> {
        self.p.clone()
    }
}

type ValueFn = dyn Fn(&DVector<f64>) -> f64 + Send + Sync;
type GradFn = dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync;
type HessFn = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;

/// Smooth function assembled from closures.
pub struct ClosureFn {
    value: Box<ValueFn>,
    gradient: Box<GradFn>,
    hessian: Box<HessFn>,
}

impl ClosureFn {
    pub fn new(
        value: impl Fn(&DVector<f64>) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&DVector<f64>) -> DVector<f64> + Send + Sync + 'static,
        hessian: impl Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Box::new(value),
            gradient: Box::new(gradient),
            hessian: Box::new(hessian),
        }
    }
}

impl SmoothFn for ClosureFn {
    fn value(&self, x: &DVector<f64>) -> f64 {
        (self.value)(x)
    }
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        (self.gradient)(x)
    }
    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        (self.hessian)(x)
    }
}

/// Function of the leading `n` coordinates of a longer variable vector.
pub struct Leading {
    pub inner: SharedFn,
    pub n: usize,
    pub total: usize,
}

impl SmoothFn for Leading {
    fn value(&self, x: &DVector<f64>) -> f64 {
        self.inner.value(&x.rows(0, self.n).into_owned())
    }
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut g = DVector::zeros(self.total);
        g.rows_mut(0, self.n)
            .copy_from(&self.inner.gradient(&x.rows(0, self.n).into_owned()));
        g
    }
    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut h = DMatrix::zeros(self.total, self.total);
        h.view_mut((0, 0), (self.n, self.n))
            .copy_from(&self.inner.hessian(&x.rows(0, self.n).into_owned()));
        h
    }
}

/// Generic smooth convex program: minimize `objective` subject to `constraint_i(x) ≤ 0`.
#[derive(Clone)]
pub struct ConvexProgram {
    pub n_vars: usize,
    pub objective: SharedFn,
    pub constraints: Vec<SharedFn>,
    pub start: Option<DVector<f64>>,
}

impl ConvexProgram {
    pub fn new(n_vars: usize, objective: SharedFn) -> Self {
        Self {
            n_vars,
            objective,
            constraints: Vec::new(),
            start: None,
        }
    }

    pub fn constraint(mut self, f: SharedFn) -> Self {
        self.constraints.push(f);
        self
    }

    pub fn with_start(mut self, x: DVector<f64>) -> Self {
        self.start = Some(x);
        self
    }

    pub fn max_constraint(&self, x: &DVector<f64>) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.value(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl fmt::Debug for ConvexProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexProgram")
            .field("n_vars", &self.n_vars)
            .field("constraints", &self.constraints.len())
            .field("start", &self.start)
            .finish()
    }
}
