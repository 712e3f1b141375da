use std::sync::Arc;

use adaptive_outer::metric::SpdMatrix;
use adaptive_outer::problems::{make_ball, ProblemSpec};
use adaptive_outer::scalarize::barrier::barrier_solve;
use adaptive_outer::scalarize::program::{Affine, ConvexProgram, Quadratic};
use adaptive_outer::scalarize::{
    extract_cut, solve_norm_min, solve_norm_min_direct, weighted_sum, CutPoint, DEFAULT_TOL,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dv(v: &[f64]) -> DVector<f64> {
    DVector::from_vec(v.to_vec())
}

fn random_spd(rng: &mut impl Rng, q: usize) -> SpdMatrix {
    let a = DMatrix::from_fn(q, q, |_, _| rng.random_range(-1.0..1.0));
    SpdMatrix::from_symmetrized(&a * a.transpose() + DMatrix::identity(q, q) * 0.2).unwrap()
}

/// Points below `A`: a feasible image shifted down along `−c_int`.
fn points_below(p: &ProblemSpec, rng: &mut impl Rng, count: usize) -> Vec<DVector<f64>> {
    (0..count)
        .map(|_| {
            let y = p.image(&p.sample_feasible(rng));
            let shift = DVector::from_fn(p.q, |_, _| rng.random_range(0.0..1.5));
            y - shift - &p.interior_cone_dir * 0.05
        })
        .collect()
}

#[test]
fn barrier_textbook_cases() {
    let obj = Arc::new(Quadratic::new(
        DMatrix::identity(3, 3) * 2.0,
        DVector::zeros(3),
        0.0,
    ));
    let prog =
        ConvexProgram::new(3, obj).constraint(Arc::new(Affine::new(dv(&[-1.0, 0.0, 0.0]), 1.0)));
    let sol = barrier_solve(&prog, 1e-10).unwrap();
    assert!((sol.x - dv(&[1.0, 0.0, 0.0])).amax() < 1e-6);
    assert!((sol.objective - 1.0).abs() < 1e-8);

    let obj = Arc::new(Affine::new(dv(&[1.0, 0.0]), 0.0));
    let prog =
        ConvexProgram::new(2, obj).constraint(Arc::new(Quadratic::ball(&dv(&[0.0, 0.0]), 1.0)));
    let sol = barrier_solve(&prog, 1e-10).unwrap();
    assert!((sol.objective + 1.0).abs() < 1e-8);
}

#[test]
fn barrier_matches_grid_projection() {
    // (2,3) onto {x ≥ 0, x₁ + 2x₂ ≤ 4}.
    let obj = Arc::new(Quadratic::new(
        DMatrix::identity(2, 2) * 2.0,
        dv(&[-4.0, -6.0]),
        13.0,
    ));
    let prog = ConvexProgram::new(2, obj)
        .constraint(Arc::new(Affine::new(dv(&[-1.0, 0.0]), 0.0)))
        .constraint(Arc::new(Affine::new(dv(&[0.0, -1.0]), 0.0)))
        .constraint(Arc::new(Affine::new(dv(&[1.0, 2.0]), -4.0)));
    let sol = barrier_solve(&prog, 1e-12).unwrap();
    let mut best = f64::INFINITY;
    let step = 1e-4;
    for i in 0..=(2.0 / step) as usize {
        let x2 = i as f64 * step;
        // Along each horizontal line the nearest feasible x₁ is a clamp.
        let x1 = 2.0f64.clamp(0.0, 4.0 - 2.0 * x2);
        best = best.min((x1 - 2.0).powi(2) + (x2 - 3.0).powi(2));
    }
    assert!(
        (sol.objective - best).abs() < 1e-6,
        "{} vs {best}",
        sol.objective
    );
}

#[test]
fn ball_closed_forms() {
    let p = make_ball(2).unwrap();
    let r = solve_norm_min(&p, &dv(&[0.0, 0.0]), &SpdMatrix::identity(2), DEFAULT_TOL).unwrap();
    let s = 1.0 - 0.5f64.sqrt();
    assert!((r.value - (2f64.sqrt() - 1.0)).abs() < 1e-8);
    assert!((&r.z_star - dv(&[s, s])).amax() < 1e-6);
    let g = r.cut_normal.clone().unwrap();
    assert!((g - dv(&[0.5f64.sqrt(), 0.5f64.sqrt()])).amax() < 1e-6);
    let h = extract_cut(&r, CutPoint::Boundary).unwrap();
    assert!((h.offset() - (2f64.sqrt() - 1.0)).abs() < 1e-6);
    let h = extract_cut(&r, CutPoint::Image).unwrap();
    assert!((h.offset() - (2f64.sqrt() - 1.0)).abs() < 1e-6);

    let p3 = make_ball(3).unwrap();
    let r = solve_norm_min(
        &p3,
        &DVector::zeros(3),
        &SpdMatrix::identity(3),
        DEFAULT_TOL,
    )
    .unwrap();
    assert!((r.value - (3f64.sqrt() - 1.0)).abs() < 1e-8);

    let r = solve_norm_min(&p, &dv(&[1.0, 1.0]), &SpdMatrix::identity(2), DEFAULT_TOL).unwrap();
    assert!(r.value < 1e-8 && r.cut_normal.is_none());
    assert!(extract_cut(&r, CutPoint::Image).is_err());
}

#[test]
fn distance_identity_on_ball() {
    let p = make_ball(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let phi = rng.random_range(0.02..std::f64::consts::FRAC_PI_2 - 0.02);
        let r = rng.random_range(1.05..3.0);
        let v = dv(&[1.0 - r * phi.cos(), 1.0 - r * phi.sin()]);
        let res = solve_norm_min(&p, &v, &SpdMatrix::identity(2), DEFAULT_TOL).unwrap();
        assert!((res.value - (r - 1.0)).abs() < 1e-6);
    }
}

#[test]
fn surrogate_matches_direct_norm() {
    let p = make_ball(2).unwrap();
    let m = SpdMatrix::diagonal(&[4.0, 1.0]).unwrap();
    for v in [dv(&[-0.5, 0.2]), dv(&[0.0, 0.0]), dv(&[0.3, -0.4])] {
        let a = solve_norm_min(&p, &v, &m, DEFAULT_TOL).unwrap();
        let b = solve_norm_min_direct(&p, &v, &m, 1e-9, 1e-12).unwrap();
        assert!((&a.z_star - &b.z_star).amax() < 1e-6);
        assert!((a.value - b.value).abs() < 1e-6);
    }
}

#[test]
fn weighted_sums() {
    let p = make_ball(2).unwrap();
    let (_, h) = weighted_sum(&p, &dv(&[1.0, 0.0])).unwrap();
    assert!(h.abs() < 1e-9);
    let (_, h) = weighted_sum(&p, &dv(&[1.0, 1.0])).unwrap();
    assert!((h - (2.0 - 2f64.sqrt())).abs() < 1e-9);

    // Jahn, ω = e₂: min x₁ + x₂² over X; for fixed x₁ the best x₂ is x₁².
    let j = ProblemSpec::by_name("jahn").unwrap();
    let (_, h) = weighted_sum(&j, &dv(&[0.0, 1.0])).unwrap();
    let step = 1e-4;
    let grid = (0..=(2.5 / step) as usize)
        .map(|i| -1.5 + i as f64 * step)
        .map(|x1| x1 + x1.powi(4))
        .fold(f64::INFINITY, f64::min);
    assert!((h - grid).abs() < 1e-6, "{h} vs {grid}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cut_invariants(seed in 0u64..100_000, idx in 0usize..5, boundary in any::<bool>()) {
        let name = ["ball2", "ball3", "ball4", "example2", "jahn"][idx];
        let p = ProblemSpec::by_name(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if rng.random_bool(0.5) { SpdMatrix::identity(p.q) } else { random_spd(&mut rng, p.q) };
        let v = points_below(&p, &mut rng, 1).pop().unwrap();
        let r = solve_norm_min(&p, &v, &m, DEFAULT_TOL).unwrap();
        prop_assert!((r.value - m.norm(&r.z_star)).abs() < 1e-9);
        let gap = &p.cone_matrix * (&r.y_image - &r.z_star - &v);
        prop_assert!(gap.iter().all(|&c| c <= 1e-7));
        prop_assert!(p.slice_direction.dot(&r.y_boundary) <= p.slice_level + 1e-7);
        prop_assume!(r.value > 1e-6);

        let g = r.cut_normal.clone().unwrap();
        prop_assert!((m.dual_norm(&g) - 1.0).abs() < 1e-6);
        let mode = if boundary { CutPoint::Boundary } else { CutPoint::Image };
        let h = extract_cut(&r, mode).unwrap();
        for y in p.sample_slice(&mut rng, 200) {
            prop_assert!(h.normal().dot(&y) >= h.offset() - 1e-6);
        }
        let margin = h.offset() - g.dot(&v);
        if boundary {
            prop_assert!((margin - r.value).abs() < 1e-6, "{} vs {}", margin, r.value);
        } else {
            prop_assert!(margin > 0.0);
        }
    }
}
