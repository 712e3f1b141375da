//! The outer-approximation loop.
//!
//! Each iteration evaluates the Euclidean distance of every vertex of `A_k`
//! to `A` (the reference stopping test and the error `E_k`), selects the
//! candidate vertex farthest from `A` in the current metric, and cuts it off
//! with the supporting halfspace from `P_{M_k}(v)`.

mod cache;

use std::time::Instant;

use nalgebra::DVector;
use rayon::prelude::*;

use self::cache::DistanceCache;
use crate::error::EngineError;
use crate::linalg::{lex_cmp, max_abs_diff};
use crate::metric::{MetricState, SpdMatrix, DEFAULT_EPS0};
use crate::polytope::{hausdorff_nested, Halfspace, Polytope, DEDUP_TOL};
use crate::problems::ProblemSpec;
use crate::scalarize::{
    extract_cut, solve_norm_min, weighted_sum, CutPoint, ScalarizationResult, DEFAULT_TOL,
    SEPARATION_THRESHOLD,
};

/// Relative tolerance under which two selection values count as tied.
pub const TIE_TOL: f64 = 1e-9;
/// First iteration covered by the cutting-ratio diagnostic.
pub const DIAGNOSTIC_K0: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub enum NormMode {
    Euclidean,
    Fixed(SpdMatrix),
    Adaptive { eps0: f64 },
}

impl NormMode {
    pub fn label(&self) -> &'static str {
        match self {
            NormMode::Euclidean => "euclid",
            NormMode::Fixed(_) => "fixed",
            NormMode::Adaptive { .. } => "adaptive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Full,
    LpProbe,
    Hybrid { period: usize },
}

impl Strategy {
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::Full => "full",
            Strategy::LpProbe => "lp",
            Strategy::Hybrid { .. } => "hybrid",
        }
    }

    fn probes_at(&self, k: usize) -> bool {
        match *self {
            Strategy::Full => false,
            Strategy::LpProbe => true,
            Strategy::Hybrid { period } => k % period != 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: String,
    pub norm: NormMode,
    pub eps: f64,
    pub max_iter: usize,
    pub strategy: Strategy,
    pub cut_point: CutPoint,
    /// Distance accuracy of each scalarization solve.
    pub solver_tol: f64,
    /// Measure `δ_H(A_k, A_{k+1}) / E_k` after every cut.
    pub measure_cut_ratio: bool,
    /// Keep every `A_k` in the result.
    pub record_history: bool,
    /// Solve per-vertex scalarizations on the rayon pool. Results do not
    /// depend on this flag.
    pub parallel: bool,
}

impl RunConfig {
    pub fn new(problem: &str, norm: NormMode, eps: f64) -> Self {
        Self {
            problem: problem.to_string(),
            norm,
            eps,
            max_iter: 500,
            strategy: Strategy::Full,
            cut_point: CutPoint::Image,
            solver_tol: DEFAULT_TOL,
            measure_cut_ratio: false,
            record_history: false,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |msg: String| Err(EngineError::Config(msg));
        if !(self.eps > 0.0) {
            return bad(format!("eps must be positive, got {}", self.eps));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1".into());
        }
        if let Strategy::Hybrid { period: 0 } = self.strategy {
            return bad("hybrid period must be at least 1".into());
        }
        if let NormMode::Adaptive { eps0 } = self.norm {
            if !(eps0 > 0.0) {
                return bad(format!("eps0 must be positive, got {eps0}"));
            }
        }
        Ok(())
    }

    /// Regularization used for the metric diagnostics in every mode.
    pub fn eps0(&self) -> f64 {
        match self.norm {
            NormMode::Adaptive { eps0 } => eps0,
            _ => DEFAULT_EPS0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopTest {
    Continue,
    ConvergedSurrogate,
    ConvergedEuclidean,
}

/// `ConvergedSurrogate` when `max ‖z^v‖_{M_k} ≤ √ε₀·ε` (adaptive mode only),
/// else `ConvergedEuclidean` when `max d₂(v, A) ≤ ε`.
pub fn stopping_test(
    euclid_max: f64,
    surrogate_max: Option<f64>,
    eps: f64,
    eps0: Option<f64>,
) -> StopTest {
    if let (Some(s), Some(e0)) = (surrogate_max, eps0) {
        if s <= e0.sqrt() * eps {
            return StopTest::ConvergedSurrogate;
        }
    }
    if euclid_max <= eps {
        StopTest::ConvergedEuclidean
    } else {
        StopTest::Continue
    }
}

/// Initial outer approximation `∩ⱼ {ωⱼᵀy ≥ hⱼ} ∩ {w̄ᵀy ≤ γ}` with `ωⱼ` the
/// rows of `G`, and the initial probe set `{±eⱼ, ±w̄}`.
pub fn initialize(problem: &ProblemSpec) -> Result<(Polytope, Vec<DVector<f64>>), EngineError> {
    let q = problem.q;
    let mut halfspaces = Vec::with_capacity(q + 1);
    for omega in problem.dual_generators() {
        let (_, h) = weighted_sum(problem, &omega)?;
        halfspaces.push(Halfspace::new(omega, h)?);
    }
    halfspaces.push(Halfspace::upper(
        problem.slice_direction.clone(),
        problem.slice_level,
    )?);
    let poly = Polytope::new(q, halfspaces)?;

    let mut probes = Vec::with_capacity(2 * q + 2);
    for j in 0..q {
        let e = DVector::from_fn(q, |i, _| if i == j { 1.0 } else { 0.0 });
        probes.push(-&e);
        probes.push(e);
    }
    probes.push(problem.slice_direction.clone());
    probes.push(-&problem.slice_direction);

    for d in &probes {
        match poly.lp_max(d) {
            Ok(_) => {}
            Err(crate::error::PolytopeError::Unbounded) => return Err(EngineError::UnboundedInit),
            Err(e) => return Err(e.into()),
        }
    }
    if poly.num_vertices()? < q + 1 {
        return Err(EngineError::UnboundedInit);
    }
    Ok((poly, probes))
}

/// `{lp_max(A, w) : w ∈ W}`, deduplicated and sorted lexicographically.
pub fn probe_vertices(
    poly: &Polytope,
    probes: &[DVector<f64>],
) -> Result<Vec<DVector<f64>>, EngineError> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for w in probes {
        let (y, _) = poly.lp_max(w)?;
        if !out.iter().any(|u| max_abs_diff(u, &y) <= DEDUP_TOL) {
            out.push(y);
        }
    }
    out.sort_by(lex_cmp);
    Ok(out)
}

/// Index of the largest value; values within a relative `TIE_TOL` of the
/// maximum go to the earliest index. `None` if every value is ≤ `floor`.
pub fn argmax_first(values: &[f64], floor: f64) -> Option<usize> {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(best > floor) {
        return None;
    }
    values.iter().position(|&v| v >= best * (1.0 - TIE_TOL))
}

/// Solves `P_M(v)` for every candidate and returns the farthest one.
/// Candidates must be sorted lexicographically for the tie rule to hold.
pub fn select_vertex(
    problem: &ProblemSpec,
    candidates: &[DVector<f64>],
    metric: &SpdMatrix,
    tol: f64,
) -> Result<(DVector<f64>, ScalarizationResult, f64), EngineError> {
    if candidates.is_empty() {
        return Err(EngineError::NoVertices);
    }
    let results = candidates
        .iter()
        .map(|v| solve_norm_min(problem, v, metric, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let values: Vec<f64> = results.iter().map(|r| r.value).collect();
    let proxy = values.iter().copied().fold(0.0, f64::max);
    let i = argmax_first(&values, f64::NEG_INFINITY).ok_or(EngineError::NoVertices)?;
    Ok((candidates[i].clone(), results[i].clone(), proxy))
}

/// One row of the run trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub hausdorff_err: f64,
    pub surrogate_err: f64,
    /// Vertices evaluated: all of them, or the probe vertices in probe
    /// iterations.
    pub n_vertices: usize,
    pub n_halfspaces: usize,
    pub theta_k: f64,
    pub lambda_min_sigma: f64,
    pub lambda_max_sigma: f64,
    pub selected_vertex_dist: f64,
    pub cut_ratio: Option<f64>,
    pub wall_ms: f64,
}

/// Data of one cut, kept for post-hoc property checks.
#[derive(Debug, Clone)]
pub struct CutRecord {
    pub iter: usize,
    pub vertex: DVector<f64>,
    pub halfspace: Halfspace,
    /// `‖z*‖_{M_k}` at the selected vertex.
    pub value: f64,
    pub metric: SpdMatrix,
    /// `offset − g*·v`, the amount by which the vertex is cut off.
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Converged(StopTest),
    MaxIterReached,
}

impl RunStatus {
    pub fn converged(&self) -> bool {
        matches!(self, RunStatus::Converged(_))
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub status: RunStatus,
    /// Number of cuts performed.
    pub iterations: usize,
    pub rows: Vec<TraceRow>,
    pub cuts: Vec<CutRecord>,
    /// `A_0, …, A_N` when `record_history` is set.
    pub history: Vec<Polytope>,
    pub final_polytope: Polytope,
    pub metric: MetricState,
    /// Iterations at which the surrogate test passed, with the Euclidean
    /// maximum observed at that point.
    pub surrogate_hits: Vec<(usize, f64)>,
    /// `max d₂(v, A)` over every vertex of the final polytope.
    pub full_error: f64,
}

/// Single-owner mutable state of a run.
pub struct Engine {
    problem: ProblemSpec,
    config: RunConfig,
    k: usize,
    poly: Polytope,
    probes: Vec<DVector<f64>>,
    /// Cut-normal statistics, accumulated in every mode.
    normals: MetricState,
    cache: DistanceCache,
    rows: Vec<TraceRow>,
    cuts: Vec<CutRecord>,
    history: Vec<Polytope>,
    surrogate_hits: Vec<(usize, f64)>,
}

/// Outcome of evaluating one iteration.
pub enum Step {
    Cut,
    Stopped(RunStatus),
}

impl Engine {
    pub fn new(problem: ProblemSpec, config: RunConfig) -> Result<Self, EngineError> {
        config.validate()?;
        if let NormMode::Fixed(m) = &config.norm {
            if m.dim() != problem.q {
                return Err(EngineError::Config(format!(
                    "fixed metric has dimension {}, problem has q = {}",
                    m.dim(),
                    problem.q
                )));
            }
        }
        let (poly, probes) = initialize(&problem)?;
        let normals = MetricState::new(problem.q, config.eps0())?;
        Ok(Self {
            problem,
            config,
            k: 0,
            poly,
            probes,
            normals,
            cache: DistanceCache::default(),
            rows: Vec::new(),
            cuts: Vec::new(),
            history: Vec::new(),
            surrogate_hits: Vec::new(),
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.poly
    }

    pub fn iteration(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[TraceRow] {
        &self.rows
    }

    pub fn cuts(&self) -> &[CutRecord] {
        &self.cuts
    }

    pub fn probes(&self) -> &[DVector<f64>] {
        &self.probes
    }

    /// Metric used for selection at the current iteration, and a version tag
    /// that changes whenever the metric does.
    fn current_metric(&self) -> (SpdMatrix, usize) {
        match &self.config.norm {
            NormMode::Euclidean => (SpdMatrix::identity(self.problem.q), 0),
            NormMode::Fixed(m) => (m.clone(), 0),
            NormMode::Adaptive { .. } => (self.normals.materialize(), self.k),
        }
    }

    fn solve_all(
        &self,
        vertices: &[DVector<f64>],
        metric: &SpdMatrix,
    ) -> Result<Vec<ScalarizationResult>, EngineError> {
        let tol = self.config.solver_tol;
        let solve = |v: &DVector<f64>| solve_norm_min(&self.problem, v, metric, tol);
        let out: Result<Vec<_>, _> = if self.config.parallel && vertices.len() > 1 {
            vertices.par_iter().map(solve).collect()
        } else {
            vertices.iter().map(solve).collect()
        };
        Ok(out?)
    }

    /// Euclidean distances of `vertices`, reusing cached survivors. With
    /// `complete`, `vertices` is the full vertex list and stale entries are
    /// dropped.
    fn euclid_values(
        &mut self,
        vertices: &[DVector<f64>],
        complete: bool,
    ) -> Result<Vec<f64>, EngineError> {
        if complete {
            self.cache.retain(vertices);
        }
        let missing: Vec<DVector<f64>> = vertices
            .iter()
            .filter(|v| self.cache.get(v).is_none())
            .cloned()
            .collect();
        let identity = SpdMatrix::identity(self.problem.q);
        for (v, r) in missing.iter().zip(self.solve_all(&missing, &identity)?) {
            self.cache.insert(v.clone(), r);
        }
        Ok(vertices
            .iter()
            .map(|v| self.cache.get(v).unwrap().euclid.value)
            .collect())
    }

    /// Exact `‖z^v‖_{M}` for the candidates that can still be the argmax.
    /// Stale cached solutions give upper bounds; they are re-solved in
    /// decreasing order until the next bound falls below the best exact value.
    fn metric_values(
        &mut self,
        candidates: &[DVector<f64>],
        metric: &SpdMatrix,
        version: usize,
    ) -> Result<Vec<Option<f64>>, EngineError> {
        let identity = matches!(self.config.norm, NormMode::Euclidean);
        let mut exact: Vec<Option<f64>> = vec![None; candidates.len()];
        let mut bounds: Vec<(f64, usize)> = Vec::new();
        let mut fresh: Vec<usize> = Vec::new();
        for (i, v) in candidates.iter().enumerate() {
            let entry = self.cache.get(v).expect("euclidean pass fills the cache");
            if identity {
                exact[i] = Some(entry.euclid.value);
                continue;
            }
            match &entry.metric {
                Some((ver, r)) if *ver == version => exact[i] = Some(r.value),
                Some((_, r)) => bounds.push((metric.norm(&r.z_star), i)),
                None => fresh.push(i),
            }
        }
        if identity {
            return Ok(exact);
        }
        // Vertices never solved in any metric have no bound; solve them now.
        let verts: Vec<DVector<f64>> = fresh.iter().map(|&i| candidates[i].clone()).collect();
        for (&i, r) in fresh.iter().zip(self.solve_all(&verts, metric)?) {
            exact[i] = Some(r.value);
            self.cache.get_mut(&candidates[i]).unwrap().metric = Some((version, r));
        }
        bounds.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut best = exact.iter().flatten().copied().fold(0.0, f64::max);
        for (j, &(bound, i)) in bounds.iter().enumerate() {
            if j >= 3 && bound < best * (1.0 - TIE_TOL) {
                break;
            }
            let r = solve_norm_min(
                &self.problem,
                &candidates[i],
                metric,
                self.config.solver_tol,
            )?;
            best = best.max(r.value);
            exact[i] = Some(r.value);
            self.cache.get_mut(&candidates[i]).unwrap().metric = Some((version, r));
        }
        Ok(exact)
    }

    /// Evaluates iteration `k` and either stops or performs one cut.
    pub fn step(&mut self) -> Result<Step, EngineError> {
        let started = Instant::now();
        let k = self.k;
        if self.config.record_history {
            self.history.push(self.poly.clone());
        }
        let (metric, version) = self.current_metric();
        let adaptive_eps0 = match self.config.norm {
            NormMode::Adaptive { eps0 } => Some(eps0),
            _ => None,
        };

        // Probe iterations evaluate the probe vertices only; a probe-level
        // stop in Hybrid mode is confirmed by full enumeration.
        let mut probing = self.config.strategy.probes_at(k);
        let (vertices, euclid, values) = loop {
            let vertices = if probing {
                probe_vertices(&self.poly, &self.probes)?
            } else {
                self.poly.enumerate_vertices()?
            };
            if vertices.is_empty() {
                return Err(EngineError::NoVertices);
            }
            let euclid = self.euclid_values(&vertices, !probing)?;
            let values = self.metric_values(&vertices, &metric, version)?;
            let e_k = euclid.iter().copied().fold(0.0, f64::max);
            let surrogate = values.iter().flatten().copied().fold(0.0, f64::max);
            let test = stopping_test(e_k, Some(surrogate), self.config.eps, adaptive_eps0);
            if probing
                && test != StopTest::Continue
                && matches!(self.config.strategy, Strategy::Hybrid { .. })
            {
                probing = false;
                continue;
            }
            break (vertices, euclid, values);
        };
        let candidates = vertices.clone();
        let e_k = euclid.iter().copied().fold(0.0, f64::max);
        let scores: Vec<f64> = values
            .iter()
            .map(|v| v.unwrap_or(f64::NEG_INFINITY))
            .collect();
        let surrogate = scores.iter().copied().fold(0.0, f64::max);

        let spectrum = metric.spectral();
        let (lmin, lmax) = match self.normals.sigma_stats() {
            Ok(s) => s,
            Err(_) => {
                let p = 1.0 / self.problem.q as f64;
                (p, p)
            }
        };

        let test = stopping_test(e_k, Some(surrogate), self.config.eps, adaptive_eps0);
        if test == StopTest::ConvergedSurrogate {
            self.surrogate_hits.push((k, e_k));
        }
        let selected = argmax_first(&scores, SEPARATION_THRESHOLD);
        let mut row = TraceRow {
            iter: k,
            hausdorff_err: e_k,
            surrogate_err: surrogate,
            n_vertices: vertices.len(),
            n_halfspaces: self.poly.num_halfspaces(),
            theta_k: spectrum.theta,
            lambda_min_sigma: lmin,
            lambda_max_sigma: lmax,
            selected_vertex_dist: selected
                .map(|i| self.cache.get(&candidates[i]).unwrap().euclid.value)
                .unwrap_or(0.0),
            cut_ratio: None,
            wall_ms: 0.0,
        };

        let stop = if test != StopTest::Continue {
            Some(RunStatus::Converged(test))
        } else if k >= self.config.max_iter {
            Some(RunStatus::MaxIterReached)
        } else {
            None
        };
        if let Some(status) = stop {
            row.wall_ms = started.elapsed().as_secs_f64() * 1e3;
            self.rows.push(row);
            return Ok(Step::Stopped(status));
        }
        let Some(sel) = selected else {
            return Err(EngineError::NoVertices);
        };

        let vertex = candidates[sel].clone();
        let entry = self.cache.get(&vertex).unwrap();
        let result = match &self.config.norm {
            NormMode::Euclidean => entry.euclid.clone(),
            _ => entry.metric.as_ref().unwrap().1.clone(),
        };
        let halfspace = extract_cut(&result, self.config.cut_point)?;
        let g = halfspace.normal().clone();
        let margin = halfspace.offset() - g.dot(&vertex);
        // Vertex lists are carried forward only out of full iterations.
        let next = if probing {
            self.poly.intersect_lazy(halfspace.clone())
        } else {
            self.poly.intersect(halfspace.clone())
        };
        if self.config.measure_cut_ratio && e_k > 0.0 {
            next.enumerate_vertices()?;
            row.cut_ratio = Some(hausdorff_nested(&self.poly, &next)? / e_k);
        }
        self.normals = self.normals.push_normal(&g)?;
        if !matches!(self.config.strategy, Strategy::Full) {
            // Row of `By ≤ b` for the new cut: its maximizers lie on the cut facet.
            self.probes.push(-&g);
        }
        self.cuts.push(CutRecord {
            iter: k,
            vertex,
            halfspace,
            value: result.value,
            metric,
            margin,
        });
        self.poly = next;
        self.k += 1;
        row.wall_ms = started.elapsed().as_secs_f64() * 1e3;
        self.rows.push(row);
        Ok(Step::Cut)
    }

    pub fn run(mut self) -> Result<RunResult, EngineError> {
        let status = loop {
            if let Step::Stopped(status) = self.step()? {
                break status;
            }
        };
        let all = self.poly.enumerate_vertices()?;
        let full_error = self
            .euclid_values(&all, true)?
            .into_iter()
            .fold(0.0, f64::max);
        Ok(RunResult {
            full_error,
            status,
            iterations: self.k,
            rows: self.rows,
            cuts: self.cuts,
            history: self.history,
            final_polytope: self.poly,
            metric: self.normals,
            surrogate_hits: self.surrogate_hits,
        })
    }
}

/// Runs `config` on the named benchmark.
pub fn run(config: &RunConfig) -> Result<RunResult, EngineError> {
    let problem = ProblemSpec::by_name(&config.problem)?;
    run_problem(problem, config)
}

pub fn run_problem(problem: ProblemSpec, config: &RunConfig) -> Result<RunResult, EngineError> {
    Engine::new(problem, config.clone())?.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_ball;

    fn dv(v: &[f64]) -> DVector<f64> {
        DVector::from_vec(v.to_vec())
    }

    #[test]
    fn initial_simplex_ball2() {
        let (poly, probes) = initialize(&make_ball(2).unwrap()).unwrap();
        let g = 2.0 + 2f64.sqrt() + 1.0;
        let v = poly.enumerate_vertices().unwrap();
        assert_eq!(v.len(), 3);
        for (got, want) in v
            .iter()
            .zip([dv(&[0.0, 0.0]), dv(&[0.0, g]), dv(&[g, 0.0])])
        {
            assert!(max_abs_diff(got, &want) < 1e-8, "{got}");
        }
        assert_eq!(probes.len(), 6);
        assert_eq!(probe_vertices(&poly, &probes).unwrap().len(), 3);
        assert_eq!(probe_vertices(&poly, &[dv(&[1.0, 0.0])]).unwrap().len(), 1);
        let (poly3, _) = initialize(&make_ball(3).unwrap()).unwrap();
        assert_eq!(poly3.num_vertices().unwrap(), 4);
    }

    #[test]
    fn stop_rules() {
        assert_eq!(
            stopping_test(0.02, Some(0.003), 0.01, Some(0.1)),
            StopTest::ConvergedSurrogate
        );
        assert_eq!(
            stopping_test(0.02, Some(0.02), 0.01, None),
            StopTest::Continue
        );
        assert_eq!(
            stopping_test(0.005, None, 0.01, None),
            StopTest::ConvergedEuclidean
        );
    }

    #[test]
    fn tie_goes_to_first() {
        assert_eq!(argmax_first(&[1.0, 2.0, 2.0 * (1.0 - 1e-12)], 0.0), Some(1));
        assert_eq!(argmax_first(&[1.0, 2.0 * (1.0 - 1e-12), 2.0], 0.0), Some(1));
        assert_eq!(argmax_first(&[1e-9, 0.0], 1e-8), None);
    }

    #[test]
    fn select_on_initial_ball2() {
        let p = make_ball(2).unwrap();
        let (poly, _) = initialize(&p).unwrap();
        let verts = poly.enumerate_vertices().unwrap();
        let (v, r, proxy) =
            select_vertex(&p, &verts, &SpdMatrix::identity(2), DEFAULT_TOL).unwrap();
        // (0,γ) and (γ,0) lie in A since (0,1) + C reaches them under the cap.
        assert!(v.amax() < 1e-9, "{v}");
        assert!((r.value - proxy).abs() < 1e-15);
        assert!((proxy - (2f64.sqrt() - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn one_step_adds_a_vertex() {
        let p = make_ball(2).unwrap();
        let mut e = Engine::new(p, RunConfig::new("ball2", NormMode::Euclidean, 1e-5)).unwrap();
        assert!(matches!(e.step().unwrap(), Step::Cut));
        assert_eq!(e.polytope().num_vertices().unwrap(), 4);
    }

    #[test]
    fn huge_eps_stops_immediately() {
        let r = run(&RunConfig::new("ball2", NormMode::Euclidean, 1e3)).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.rows.len(), 1);
        assert!(r.status.converged());
    }
}
