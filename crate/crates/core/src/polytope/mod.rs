//! Exact polyhedral kernel for dimensions 2 to 4: halfspace intersection,
//! vertex enumeration, LP maximization and nested Hausdorff distances.

mod simplex;

use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::error::PolytopeError;
pub use crate::error::MAX_DIM;
use crate::linalg::{lex_cmp, max_abs_diff, solve_square};
use crate::scalarize::barrier::{barrier_solve_with, BarrierSettings, GapRule};
use crate::scalarize::program::{Affine, ConvexProgram, Quadratic, SharedFn};

/// Feasibility tolerance on normalized slacks.
pub const FEAS_TOL: f64 = 1e-9;
/// Two vertices closer than this (max-norm) are the same vertex.
pub const DEDUP_TOL: f64 = 1e-8;
/// Containment tolerance used by [`hausdorff_nested`].
pub const NESTED_TOL: f64 = 1e-7;

/// `{y : normal·y ≥ offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    normal: DVector<f64>,
    offset: f64,
}

impl Halfspace {
    pub fn new(normal: DVector<f64>, offset: f64) -> Result<Self, PolytopeError> {
        if !(normal.norm() > 1e-12) || !offset.is_finite() {
            return Err(PolytopeError::ZeroNormal);
        }
        Ok(Self { normal, offset })
    }

    /// `{y : normal·y ≤ level}`, stored with flipped sign.
    pub fn upper(normal: DVector<f64>, level: f64) -> Result<Self, PolytopeError> {
        Self::new(-normal, -level)
    }

    pub fn normal(&self) -> &DVector<f64> {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed Euclidean distance to the boundary, positive on the feasible side.
    pub fn slack(&self, y: &DVector<f64>) -> f64 {
        (self.normal.dot(y) - self.offset) / self.normal.norm()
    }

    pub fn contains(&self, y: &DVector<f64>, tol: f64) -> bool {
        self.slack(y) >= -tol
    }
}

/// Intersection of finitely many halfspaces with a lazily computed,
/// lexicographically sorted vertex list.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    halfspaces: Arc<Vec<Halfspace>>,
    vertices: OnceLock<Vec<DVector<f64>>>,
}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, PolytopeError> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(PolytopeError::DimensionMismatch {
                expected: dim,
                got: h.dim(),
            });
        }
        Ok(Self {
            dim,
            halfspaces: Arc::new(halfspaces),
            vertices: OnceLock::new(),
        })
    }

    /// Axis-aligned box `lo ≤ y ≤ hi`.
    pub fn cube(lo: &[f64], hi: &[f64]) -> Result<Self, PolytopeError> {
        let dim = lo.len();
        let mut hs = Vec::with_capacity(2 * dim);
        for j in 0..dim {
            let e = DVector::from_fn(dim, |i, _| if i == j { 1.0 } else { 0.0 });
            hs.push(Halfspace::new(e.clone(), lo[j])?);
            hs.push(Halfspace::upper(e, hi[j])?);
        }
        Self::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn num_halfspaces(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn has_vertex_cache(&self) -> bool {
        self.vertices.get().is_some()
    }

    /// Largest violation (negative slack) over all halfspaces; ≤ 0 when feasible.
    pub fn max_violation(&self, y: &DVector<f64>) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| -h.slack(y))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, y: &DVector<f64>, tol: f64) -> bool {
        self.max_violation(y) <= tol
    }

    /// `self ∩ h`. When the vertex list is cached it is updated incrementally,
    /// otherwise the result carries no cache.
    pub fn intersect(&self, h: Halfspace) -> Polytope {
        let next = self.intersect_lazy(h);
        if let Some(old) = self.vertices.get() {
            if self.dim <= MAX_DIM {
                let verts = self.incremental_vertices(old, next.halfspaces.last().unwrap());
                let _ = next.vertices.set(verts);
            }
        }
        next
    }

    /// `self ∩ h` without touching vertices.
    pub fn intersect_lazy(&self, h: Halfspace) -> Polytope {
        assert_eq!(h.dim(), self.dim, "halfspace dimension mismatch");
        let mut hs = (*self.halfspaces).clone();
        hs.push(h);
        Polytope {
            dim: self.dim,
            halfspaces: Arc::new(hs),
            vertices: OnceLock::new(),
        }
    }

    /// Extreme points, sorted lexicographically. Uses the cache when present.
    pub fn enumerate_vertices(&self) -> Result<Vec<DVector<f64>>, PolytopeError> {
        if let Some(v) = self.vertices.get() {
            return Ok(v.clone());
        }
        let v = self.enumerate_exhaustive()?;
        let _ = self.vertices.set(v.clone());
        Ok(v)
    }

    /// Number of vertices, enumerating if needed.
    pub fn num_vertices(&self) -> Result<usize, PolytopeError> {
        if let Some(v) = self.vertices.get() {
            return Ok(v.len());
        }
        Ok(self.enumerate_vertices()?.len())
    }

    /// Re-enumerates from the H-representation, ignoring any cache: every
    /// `q`-subset of constraints is solved as a linear system and feasible,
    /// distinct solutions are kept.
    pub fn enumerate_exhaustive(&self) -> Result<Vec<DVector<f64>>, PolytopeError> {
        let q = self.dim;
        if q > MAX_DIM || q == 0 {
            return Err(PolytopeError::Capability(q));
        }
        let mut out: Vec<DVector<f64>> = Vec::new();
        for subset in (0..self.halfspaces.len()).combinations(q) {
            let hs: Vec<&Halfspace> = subset.iter().map(|&i| &self.halfspaces[i]).collect();
            if let Some(y) = self.solve_active(&hs) {
                push_unique(&mut out, y);
            }
        }
        out.sort_by(lex_cmp);
        Ok(out)
    }

    fn solve_active(&self, hs: &[&Halfspace]) -> Option<DVector<f64>> {
        let q = self.dim;
        let mut a = DMatrix::zeros(q, q);
        let mut b = DVector::zeros(q);
        for (r, h) in hs.iter().enumerate() {
            let n = h.normal.norm();
            for c in 0..q {
                a[(r, c)] = h.normal[c] / n;
            }
            b[r] = h.offset / n;
        }
        let y = solve_square(&a, &b)?;
        self.contains(&y, FEAS_TOL).then_some(y)
    }

    /// Vertices of `self ∩ h` from the vertices of `self`: surviving vertices
    /// are kept, and new ones arise where `h` crosses an edge whose cut-off
    /// endpoint carries the edge's `q−1` defining constraints.
    fn incremental_vertices(&self, old: &[DVector<f64>], h: &Halfspace) -> Vec<DVector<f64>> {
        let (kept, removed): (Vec<_>, Vec<_>) =
            old.iter().cloned().partition(|v| h.contains(v, FEAS_TOL));
        if removed.is_empty() {
            return kept;
        }
        let mut candidates: Vec<usize> = removed
            .iter()
            .flat_map(|v| {
                self.halfspaces
                    .iter()
                    .enumerate()
                    .filter(move |(_, g)| g.slack(v).abs() <= FEAS_TOL)
                    .map(|(i, _)| i)
            })
            .collect();
        candidates.sort_unstable();
        candidates.dedup();

        let mut out = kept;
        let next = self.intersect_lazy(h.clone());
        for subset in candidates.into_iter().combinations(self.dim - 1) {
            let mut hs: Vec<&Halfspace> = subset.iter().map(|&i| &self.halfspaces[i]).collect();
            hs.push(h);
            if let Some(y) = next.solve_active(&hs) {
                push_unique(&mut out, y);
            }
        }
        out.sort_by(lex_cmp);
        out
    }

    /// `max direction·y` over the polytope; ties between optimal vertices go
    /// to the lexicographically smallest one.
    pub fn lp_max(&self, direction: &DVector<f64>) -> Result<(DVector<f64>, f64), PolytopeError> {
        if direction.len() != self.dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.dim,
                got: direction.len(),
            });
        }
        let rows: Vec<(DVector<f64>, f64)> = self
            .halfspaces
            .iter()
            .map(|h| (-h.normal.clone(), -h.offset))
            .collect();
        let mut objectives = vec![direction.clone()];
        for j in 0..self.dim {
            objectives.push(DVector::from_fn(
                self.dim,
                |i, _| if i == j { -1.0 } else { 0.0 },
            ));
        }
        let y = simplex::lex_max(self.dim, &rows, &objectives)?;
        let value = direction.dot(&y);
        Ok((y, value))
    }

    /// Strictly interior point (vertex centroid), if the polytope is nonempty.
    pub fn centroid(&self) -> Result<Option<DVector<f64>>, PolytopeError> {
        let verts = self.enumerate_vertices()?;
        if verts.is_empty() {
            return Ok(None);
        }
        let sum = verts
            .iter()
            .fold(DVector::zeros(self.dim), |acc, v| acc + v);
        Ok(Some(sum / verts.len() as f64))
    }

    /// Euclidean distance from `v` to the polytope by a barrier QP.
    pub fn distance_to(&self, v: &DVector<f64>) -> Result<f64, PolytopeError> {
        if self.contains(v, FEAS_TOL) {
            return Ok(0.0);
        }
        let q = self.dim;
        let objective: SharedFn = Arc::new(Quadratic::new(
            DMatrix::identity(q, q),
            -v.clone(),
            0.5 * v.norm_squared(),
        ));
        let mut prog = ConvexProgram::new(q, objective);
        for h in self.halfspaces.iter() {
            let n = h.normal.norm();
            prog = prog.constraint(Arc::new(Affine::new(-&h.normal / n, h.offset / n)));
        }
        if let Some(c) = self.centroid()? {
            prog = prog.with_start(c);
        }
        let sol = barrier_solve_with(
            &prog,
            1e-10,
            GapRule::Distance { floor: 1e-9 },
            &BarrierSettings::default(),
        )
        .map_err(|e| PolytopeError::Projection(e.to_string()))?;
        Ok((sol.x - v).norm())
    }
}

fn push_unique(out: &mut Vec<DVector<f64>>, y: DVector<f64>) {
    if !out.iter().any(|w| max_abs_diff(w, &y) <= DEDUP_TOL) {
        out.push(y);
    }
}

/// Free-function form of [`Polytope::intersect`].
pub fn intersect(poly: &Polytope, h: Halfspace) -> Polytope {
    poly.intersect(h)
}

pub fn enumerate_vertices(poly: &Polytope) -> Result<Vec<DVector<f64>>, PolytopeError> {
    poly.enumerate_vertices()
}

pub fn lp_max(
    poly: &Polytope,
    direction: &DVector<f64>,
) -> Result<(DVector<f64>, f64), PolytopeError> {
    poly.lp_max(direction)
}

/// One-sided Hausdorff distance `max_{v ∈ ext(outer)} d₂(v, inner)` for
/// `inner ⊆ outer`, which equals the full Hausdorff distance in that case.
pub fn hausdorff_nested(outer: &Polytope, inner: &Polytope) -> Result<f64, PolytopeError> {
    let inner_vertices = inner.enumerate_vertices()?;
    let worst = inner_vertices
        .iter()
        .map(|v| outer.max_violation(v))
        .fold(f64::NEG_INFINITY, f64::max);
    if worst > NESTED_TOL {
        return Err(PolytopeError::NotNested(worst));
    }
    let mut best: f64 = 0.0;
    for v in outer.enumerate_vertices()? {
        best = best.max(inner.distance_to(&v)?);
    }
    Ok(best)
}
