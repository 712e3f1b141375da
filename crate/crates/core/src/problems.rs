//! Benchmark problems, the slice construction, the `T`-transformed problem
//! generator and a brute-force distance oracle used by the tests.

use std::fmt;
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{MetricError, ProblemError};
use crate::linalg::solve_square;
use crate::metric::SpdMatrix;
use crate::scalarize::program::{Affine, Quadratic, SharedFn};

/// A smooth vector-valued map `Γ : ℝⁿ → ℝ^q`.
pub trait VectorMap: Send + Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn eval(&self, x: &DVector<f64>) -> DVector<f64>;
    /// `q × n` Jacobian.
    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64>;
    /// `Σᵢ weights[i] ∇²Γᵢ(x)`.
    fn weighted_hessian(&self, x: &DVector<f64>, weights: &DVector<f64>) -> DMatrix<f64>;
}

pub type SharedMap = Arc<dyn VectorMap>;

/// `Γ(x) = x`.
#[derive(Debug, Clone)]
pub struct IdentityMap(pub usize);

impl VectorMap for IdentityMap {
    fn dim_in(&self) -> usize {
        self.0
    }
    fn dim_out(&self) -> usize {
        self.0
    }
    fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        x.clone()
    }
    fn jacobian(&self, _x: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::identity(self.0, self.0)
    }
    fn weighted_hessian(&self, _x: &DVector<f64>, _w: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::zeros(self.0, self.0)
    }
}

/// `Γᵢ(x) = ‖x − aᵢ‖²`.
#[derive(Debug, Clone)]
pub struct SquaredDistances {
    pub anchors: Vec<DVector<f64>>,
}

impl VectorMap for SquaredDistances {
    fn dim_in(&self) -> usize {
        self.anchors[0].len()
    }
    fn dim_out(&self) -> usize {
        self.anchors.len()
    }
    fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.anchors.len(),
            self.anchors.iter().map(|a| (x - a).norm_squared()),
        )
    }
    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = x.len();
        DMatrix::from_fn(self.anchors.len(), n, |i, j| {
            2.0 * (x[j] - self.anchors[i][j])
        })
    }
    fn weighted_hessian(&self, x: &DVector<f64>, w: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::identity(x.len(), x.len()) * (2.0 * w.sum())
    }
}

/// `Γ(x) = (−x₁, x₁ + x₂²)`.
#[derive(Debug, Clone)]
pub struct JahnMap;

impl VectorMap for JahnMap {
    fn dim_in(&self) -> usize {
        2
    }
    fn dim_out(&self) -> usize {
        2
    }
    fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_vec(vec![-x[0], x[0] + x[1] * x[1]])
    }
    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 1.0, 2.0 * x[1]])
    }
    fn weighted_hessian(&self, _x: &DVector<f64>, w: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 2.0 * w[1]])
    }
}

/// `x ↦ T·inner(x)`.
#[derive(Clone)]
pub struct LinearImage {
    pub t: DMatrix<f64>,
    pub inner: SharedMap,
}

impl VectorMap for LinearImage {
    fn dim_in(&self) -> usize {
        self.inner.dim_in()
    }
    fn dim_out(&self) -> usize {
        self.t.nrows()
    }
    fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.t * self.inner.eval(x)
    }
    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        &self.t * self.inner.jacobian(x)
    }
    fn weighted_hessian(&self, x: &DVector<f64>, w: &DVector<f64>) -> DMatrix<f64> {
        self.inner.weighted_hessian(x, &(self.t.transpose() * w))
    }
}

/// Which benchmark a problem descends from; drives the oracle's
/// parameterization of `X` and the sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Ball(usize),
    Example2,
    Jahn,
}

impl Family {
    /// Number of parameters of the oracle's search box `[0,1]^p`.
    fn params(self) -> usize {
        match self {
            Family::Ball(q) => q - 1,
            Family::Example2 | Family::Jahn => 2,
        }
    }

    /// Grid points per parameter axis for the oracle's coarse scan.
    fn grid(self) -> usize {
        match self {
            Family::Ball(2) => 4000,
            Family::Ball(3) => 160,
            Family::Ball(_) => 28,
            Family::Example2 | Family::Jahn => 200,
        }
    }

    /// Maps `s ∈ [0,1]^p` onto the part of `X` the oracle searches. For the
    /// ball this is the sphere, since `B + C = ∂B + C`.
    fn point(self, s: &[f64]) -> DVector<f64> {
        use std::f64::consts::PI;
        match self {
            Family::Ball(q) => {
                let mut u = DVector::zeros(q);
                let mut prod = 1.0;
                for i in 0..q - 1 {
                    let span = if i == q - 2 { 2.0 * PI } else { PI };
                    let phi = s[i] * span;
                    u[i] = prod * phi.cos();
                    prod *= phi.sin();
                }
                u[q - 1] = prod;
                u.add_scalar(1.0)
            }
            Family::Example2 => {
                let x2 = 4.0 * s[1];
                DVector::from_vec(vec![s[0] * (10.0 - 2.0 * x2), x2])
            }
            Family::Jahn => {
                let x1 = -1.5 + 2.5 * s[0];
                let lo = x1 * x1;
                let hi = (3.0 - x1) / 2.0;
                DVector::from_vec(vec![x1, lo + s[1] * (hi - lo)])
            }
        }
    }

    /// Bounding box of `X` for rejection sampling.
    fn bounds(self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Family::Ball(q) => (vec![0.0; q], vec![2.0; q]),
            Family::Example2 => (vec![0.0, 0.0], vec![10.0, 4.0]),
            Family::Jahn => (vec![-1.5, 0.0], vec![1.0, 2.25]),
        }
    }
}

/// A bounded convex vector optimization problem with its slice data.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub q: usize,
    pub n: usize,
    pub gamma: SharedMap,
    /// Constraints `fᵢ(x) ≤ 0` defining `X`.
    pub feasible: Vec<SharedFn>,
    /// Strictly interior point of `X`.
    pub x0: DVector<f64>,
    /// `C = {y : Gy ≥ 0}`.
    pub cone_matrix: DMatrix<f64>,
    pub slice_direction: DVector<f64>,
    pub slice_level: f64,
    /// `G·c_int > 0`.
    pub interior_cone_dir: DVector<f64>,
    pub family: Option<Family>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("q", &self.q)
            .field("n", &self.n)
            .field("x0", &self.x0)
            .field("cone_matrix", &self.cone_matrix)
            .field("slice_direction", &self.slice_direction)
            .field("slice_level", &self.slice_level)
            .field("interior_cone_dir", &self.interior_cone_dir)
            .finish()
    }
}

impl ProblemSpec {
    pub fn by_name(name: &str) -> Result<Self, ProblemError> {
        match name {
            "ball2" => make_ball(2),
            "ball3" => make_ball(3),
            "ball4" => make_ball(4),
            "example2" => Ok(make_example2()),
            "jahn" => Ok(make_jahn()),
            other => Err(ProblemError::Capability(format!(
                "unknown problem {other:?}; expected one of ball2, ball3, ball4, example2, jahn"
            ))),
        }
    }

    pub fn image(&self, x: &DVector<f64>) -> DVector<f64> {
        self.gamma.eval(x)
    }

    pub fn is_feasible(&self, x: &DVector<f64>) -> bool {
        self.feasible.iter().all(|f| f.value(x) <= 0.0)
    }

    /// `y ∈ C` up to `tol`.
    pub fn in_cone(&self, y: &DVector<f64>, tol: f64) -> bool {
        (&self.cone_matrix * y).iter().all(|&c| c >= -tol)
    }

    /// `(G⁻¹)ᵀw`, whose componentwise sign decides `w ∈ C⁺`.
    pub fn dual_coordinates(&self, w: &DVector<f64>) -> Option<DVector<f64>> {
        solve_square(&self.cone_matrix.transpose(), w)
    }

    /// Generators of `C⁺`: the rows of `G`.
    pub fn dual_generators(&self) -> Vec<DVector<f64>> {
        (0..self.q)
            .map(|i| self.cone_matrix.row(i).transpose().into_owned())
            .collect()
    }

    /// Draws `count` points of the slice `A` as `Γ(x) + c` with `x ∈ X` and
    /// `c ∈ C` scaled to stay under the cap. A quarter of the draws use `c = 0`.
    pub fn sample_slice<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<DVector<f64>> {
        let g_inv = self
            .cone_matrix
            .clone()
            .try_inverse()
            .expect("cone matrix is invertible");
        (0..count)
            .map(|_| {
                let x = self.sample_feasible(rng);
                let y = self.image(&x);
                if rng.random::<f64>() < 0.25 {
                    return y;
                }
                let lambda = DVector::from_fn(self.q, |_, _| rng.random::<f64>());
                let dir = &g_inv * lambda;
                let room = self.slice_level - self.slice_direction.dot(&y);
                let reach = self.slice_direction.dot(&dir);
                let s = if reach > 0.0 {
                    rng.random::<f64>() * room / reach
                } else {
                    0.0
                };
                y + dir * s
            })
            .collect()
    }

    /// Uniform point of `X` by rejection from its bounding box. Falls back to
    /// `x₀` for problems without a known family.
    pub fn sample_feasible<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let Some(family) = self.family else {
            return self.x0.clone();
        };
        let (lo, hi) = family.bounds();
        loop {
            let x = DVector::from_fn(self.n, |i, _| lo[i] + (hi[i] - lo[i]) * rng.random::<f64>());
            if self.is_feasible(&x) {
                return x;
            }
        }
    }
}

fn ones(q: usize) -> DVector<f64> {
    DVector::from_element(q, 1.0)
}

/// Unit ball around `e = (1,…,1)` with `Γ = id`, `C = ℝ^q₊`, `w̄ = e`.
pub fn make_ball(q: usize) -> Result<ProblemSpec, ProblemError> {
    if !(2..=4).contains(&q) {
        return Err(ProblemError::Capability(format!(
            "ball problem supports q ∈ {{2,3,4}}, got {q}"
        )));
    }
    let e = ones(q);
    let beta = q as f64 + (q as f64).sqrt();
    Ok(ProblemSpec {
        name: format!("ball{q}"),
        q,
        n: q,
        gamma: Arc::new(IdentityMap(q)),
        feasible: vec![Arc::new(Quadratic::ball(&e, 1.0))],
        x0: e.clone(),
        cone_matrix: DMatrix::identity(q, q),
        slice_direction: e.clone(),
        slice_level: beta + 1.0,
        interior_cone_dir: e,
        family: Some(Family::Ball(q)),
    })
}

/// Vertices of `{x₁ + 2x₂ ≤ 10, 0 ≤ x₁ ≤ 10, 0 ≤ x₂ ≤ 4}`.
pub const EXAMPLE2_VERTICES: [[f64; 2]; 4] = [[0.0, 0.0], [10.0, 0.0], [2.0, 4.0], [0.0, 4.0]];

/// Three squared-distance objectives over a polygon.
pub fn make_example2() -> ProblemSpec {
    let anchors = vec![
        DVector::from_vec(vec![1.0, 1.0]),
        DVector::from_vec(vec![2.0, 3.0]),
        DVector::from_vec(vec![4.0, 2.0]),
    ];
    let gamma = SquaredDistances { anchors };
    let w = ones(3);
    let beta = EXAMPLE2_VERTICES
        .iter()
        .map(|v| w.dot(&gamma.eval(&DVector::from_row_slice(v))))
        .fold(f64::NEG_INFINITY, f64::max);
    let affine =
        |a: [f64; 2], b: f64| -> SharedFn { Arc::new(Affine::new(DVector::from_row_slice(&a), b)) };
    ProblemSpec {
        name: "example2".into(),
        q: 3,
        n: 2,
        gamma: Arc::new(gamma),
        feasible: vec![
            affine([1.0, 2.0], -10.0),
            affine([-1.0, 0.0], 0.0),
            affine([1.0, 0.0], -10.0),
            affine([0.0, -1.0], 0.0),
            affine([0.0, 1.0], -4.0),
        ],
        x0: DVector::from_vec(vec![2.0, 2.0]),
        cone_matrix: DMatrix::identity(3, 3),
        slice_direction: w,
        slice_level: beta + 1.0,
        interior_cone_dir: ones(3),
        family: Some(Family::Example2),
    }
}

/// `max (1,1)ᵀΓ(x) = max x₂²` over Jahn's feasible set: grid at step 1e-3
/// followed by a compass polish on the parameterization.
fn jahn_beta() -> f64 {
    static BETA: OnceLock<f64> = OnceLock::new();
    *BETA.get_or_init(|| {
        let f = |_x1: f64, x2: f64| x2 * x2;
        let feasible = |x1: f64, x2: f64| x1 * x1 - x2 <= 0.0 && x1 + 2.0 * x2 - 3.0 <= 0.0;
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 0..=2500 {
            let x1 = -1.5 + i as f64 * 1e-3;
            for j in 0..=2250 {
                let x2 = j as f64 * 1e-3;
                if feasible(x1, x2) && f(x1, x2) > best.0 {
                    best = (f(x1, x2), x1, x2);
                }
            }
        }
        let to_params = |x1: f64, x2: f64| {
            let lo = x1 * x1;
            let hi = (3.0 - x1) / 2.0;
            [
                (x1 + 1.5) / 2.5,
                if hi > lo { (x2 - lo) / (hi - lo) } else { 0.0 },
            ]
        };
        let value = |s: &[f64]| {
            let x = Family::Jahn.point(s);
            f(x[0], x[1])
        };
        let s = to_params(best.1, best.2);
        let (_, v) = compass(&|s| -value(s), &s, 1e-3, 1e-12);
        best.0.max(-v)
    })
}

/// `Γ(x) = (−x₁, x₁ + x₂²)` over `{x₁² ≤ x₂, x₁ + 2x₂ ≤ 3}`.
pub fn make_jahn() -> ProblemSpec {
    let w = ones(2);
    ProblemSpec {
        name: "jahn".into(),
        q: 2,
        n: 2,
        gamma: Arc::new(JahnMap),
        feasible: vec![
            Arc::new(Quadratic::new(
                DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0]),
                DVector::from_vec(vec![0.0, -1.0]),
                0.0,
            )),
            Arc::new(Affine::new(DVector::from_vec(vec![1.0, 2.0]), -3.0)),
        ],
        x0: DVector::from_vec(vec![0.0, 0.5]),
        cone_matrix: DMatrix::identity(2, 2),
        slice_direction: w,
        slice_level: jahn_beta() + 1.0,
        interior_cone_dir: ones(2),
        family: Some(Family::Jahn),
    }
}

/// The problem in coordinates `ỹ = Ty`: `Γ̃ = TΓ`, `C̃ = TC`, `w̃ = T⁻¹w̄`,
/// same level. Euclidean distances in the new problem equal `M = T²`
/// distances in the old one.
pub fn transform_problem(
    problem: &ProblemSpec,
    t: &SpdMatrix,
) -> Result<ProblemSpec, ProblemError> {
    if t.dim() != problem.q {
        return Err(ProblemError::Metric(MetricError::NotSpd(format!(
            "transform has dimension {}, problem has q = {}",
            t.dim(),
            problem.q
        ))));
    }
    let tm = t.matrix().clone();
    let t_inv = t.inverse().matrix().clone();
    Ok(ProblemSpec {
        name: format!("{}~T", problem.name),
        q: problem.q,
        n: problem.n,
        gamma: Arc::new(LinearImage {
            t: tm.clone(),
            inner: problem.gamma.clone(),
        }),
        feasible: problem.feasible.clone(),
        x0: problem.x0.clone(),
        cone_matrix: &problem.cone_matrix * &t_inv,
        slice_direction: &t_inv * &problem.slice_direction,
        slice_level: problem.slice_level,
        interior_cone_dir: &tm * &problem.interior_cone_dir,
        family: problem.family,
    })
}

/// `min ‖c − p‖_M` over `{c : Gc ≥ 0, w̄·c ≤ r}` by enumerating active sets.
struct CapProjector {
    rows: Vec<DVector<f64>>,
    m: DMatrix<f64>,
    m_inv: DMatrix<f64>,
}

impl CapProjector {
    fn new(problem: &ProblemSpec, metric: &SpdMatrix) -> Self {
        let mut rows: Vec<DVector<f64>> = (0..problem.q)
            .map(|i| -problem.cone_matrix.row(i).transpose())
            .collect();
        rows.push(problem.slice_direction.clone());
        Self {
            rows,
            m: metric.matrix().clone(),
            m_inv: metric.inverse().matrix().clone(),
        }
    }

    /// Rows are `a·c ≤ b` with `b = 0` for cone rows and `b = r` for the cap.
    fn distance(&self, p: &DVector<f64>, r: f64) -> f64 {
        if r < 0.0 {
            return f64::INFINITY;
        }
        let k = self.rows.len();
        let q = p.len();
        let rhs = |i: usize| if i + 1 == k { r } else { 0.0 };
        let feasible = |c: &DVector<f64>| {
            self.rows
                .iter()
                .enumerate()
                .all(|(i, a)| a.dot(c) <= rhs(i) + 1e-10 * (1.0 + r.abs()))
        };
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << k) {
            let active: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            if active.len() > q {
                continue;
            }
            let c = if active.is_empty() {
                p.clone()
            } else {
                let s = active.len();
                let a = DMatrix::from_fn(s, q, |i, j| self.rows[active[i]][j]);
                let gram = &a * &self.m_inv * a.transpose();
                let resid =
                    DVector::from_fn(s, |i, _| self.rows[active[i]].dot(p) - rhs(active[i]));
                let Some(lambda) = solve_square(&gram, &resid) else {
                    continue;
                };
                p - &self.m_inv * a.transpose() * lambda
            };
            if feasible(&c) {
                let d = c - p;
                best = best.min(d.dot(&(&self.m * &d)).max(0.0).sqrt());
            }
        }
        best
    }
}

/// Derivative-free pattern search on `[0,1]^p`; returns the best point and value.
fn compass(f: &dyn Fn(&[f64]) -> f64, start: &[f64], step: f64, min_step: f64) -> (Vec<f64>, f64) {
    let mut s = start.to_vec();
    let mut fs = f(&s);
    let mut h = step;
    while h > min_step {
        let mut improved = false;
        for i in 0..s.len() {
            for sign in [1.0, -1.0] {
                let mut t = s.clone();
                t[i] = (t[i] + sign * h).clamp(0.0, 1.0);
                let ft = f(&t);
                if ft < fs {
                    s = t;
                    fs = ft;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (s, fs)
}

/// Brute-force `d_M(v, A)`: a coarse grid over a parameterization of `X`,
/// exact projection onto the capped cone for each sample, and pattern-search
/// refinement of the best grid cells. Intended accuracy 1e-3.
pub fn oracle_distance(
    problem: &ProblemSpec,
    v: &DVector<f64>,
    metric: &SpdMatrix,
) -> Result<f64, ProblemError> {
    let family = problem.family.ok_or_else(|| {
        ProblemError::Capability(format!("no oracle parameterization for {}", problem.name))
    })?;
    let proj = CapProjector::new(problem, metric);
    let objective = |s: &[f64]| {
        let y = problem.image(&family.point(s));
        let r = problem.slice_level - problem.slice_direction.dot(&y);
        proj.distance(&(v - &y), r)
    };
    let p = family.params();
    let g = family.grid();
    let total = g.pow(p as u32);
    let cell = |idx: usize| -> Vec<f64> {
        let mut rem = idx;
        (0..p)
            .map(|_| {
                let i = rem % g;
                rem /= g;
                (i as f64 + 0.5) / g as f64
            })
            .collect()
    };
    let mut scored: Vec<(f64, usize)> = (0..total)
        .into_par_iter()
        .map(|idx| (objective(&cell(idx)), idx))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let best = scored
        .iter()
        .take(6)
        .map(|&(_, idx)| compass(&objective, &cell(idx), 1.0 / g as f64, 1e-12).1)
        .fold(f64::INFINITY, f64::min);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[f64]) -> DVector<f64> {
        DVector::from_vec(v.to_vec())
    }

    #[test]
    fn ball_levels() {
        let b2 = make_ball(2).unwrap();
        assert!((b2.slice_level - 4.414214).abs() < 1e-6);
        assert!((make_ball(3).unwrap().slice_level - 5.732051).abs() < 1e-6);
        assert_eq!(b2.slice_direction.dot(&b2.image(&b2.x0)), 2.0);
        assert!(matches!(make_ball(5), Err(ProblemError::Capability(_))));
        assert!(matches!(
            ProblemSpec::by_name("ball9"),
            Err(ProblemError::Capability(_))
        ));
    }

    #[test]
    fn example2_images_and_level() {
        let p = make_example2();
        assert_eq!(p.image(&dv(&[1.0, 1.0])), dv(&[0.0, 5.0, 10.0]));
        assert_eq!(p.image(&dv(&[2.0, 3.0])), dv(&[5.0, 0.0, 5.0]));
        assert_eq!(p.slice_level, 196.0);
        assert!(p.is_feasible(&p.x0));
    }

    #[test]
    fn jahn_images_and_level() {
        let p = make_jahn();
        assert_eq!(p.image(&dv(&[1.0, 1.0])), dv(&[-1.0, 2.0]));
        assert!(p.is_feasible(&dv(&[1.0, 1.0])));
        assert!(p.is_feasible(&dv(&[0.0, 0.0])));
        let corner = dv(&[-1.5, 2.25]);
        assert!(p.feasible.iter().all(|f| f.value(&corner).abs() < 1e-12));
        assert!((p.slice_level - 6.0625).abs() < 1e-9, "{}", p.slice_level);
    }

    #[test]
    fn transform_ball_by_diagonal() {
        let p = make_ball(2).unwrap();
        let t = SpdMatrix::diagonal(&[2.0, 1.0]).unwrap();
        let pt = transform_problem(&p, &t).unwrap();
        assert_eq!(pt.image(&p.x0), dv(&[2.0, 1.0]));
        assert!((pt.cone_matrix.clone() - DMatrix::from_diagonal(&dv(&[0.5, 1.0]))).amax() < 1e-12);
        assert!((pt.slice_direction.clone() - dv(&[0.5, 1.0])).amax() < 1e-12);
        let same = transform_problem(&p, &SpdMatrix::identity(2)).unwrap();
        assert_eq!(same.cone_matrix, p.cone_matrix);
        assert_eq!(same.slice_direction, p.slice_direction);
        assert_eq!(same.interior_cone_dir, p.interior_cone_dir);
    }

    #[test]
    fn cap_projection_cases() {
        let p = make_ball(2).unwrap();
        let proj = CapProjector::new(&p, &SpdMatrix::identity(2));
        // point inside the orthant and under the cap
        assert_eq!(proj.distance(&dv(&[1.0, 1.0]), 5.0), 0.0);
        // projection onto the orthant
        assert!((proj.distance(&dv(&[-1.0, 2.0]), 5.0) - 1.0).abs() < 1e-12);
        // onto the cap
        assert!((proj.distance(&dv(&[3.0, 3.0]), 4.0) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn oracle_ball_closed_form() {
        let p = make_ball(2).unwrap();
        let i = SpdMatrix::identity(2);
        let d = oracle_distance(&p, &dv(&[0.0, 0.0]), &i).unwrap();
        assert!((d - (2f64.sqrt() - 1.0)).abs() < 1e-6, "{d}");
        let d = oracle_distance(&p, &dv(&[1.0, 1.0]), &i).unwrap();
        assert!(d < 1e-6, "{d}");
    }
}
