use adaptive_outer::metric::{MetricState, SpdMatrix};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use proptest::prelude::*;

fn normals(q: usize) -> impl Strategy<Value = Vec<DVector<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0..1.0f64, q), 1..40).prop_map(|ws| {
        ws.into_iter()
            .map(DVector::from_vec)
            .filter(|w| w.norm() > 1e-3)
            .collect()
    })
}

fn accumulate(q: usize, eps0: f64, ws: &[DVector<f64>]) -> MetricState {
    ws.iter().fold(MetricState::new(q, eps0).unwrap(), |s, w| {
        s.push_normal(w).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spectral_sandwich(q in 2usize..=4, eps0 in 0.01..1.0f64, seed in normals(4)) {
        let ws: Vec<_> = seed.iter().map(|w| w.rows(0, q).into_owned()).filter(|w| w.norm() > 1e-3).collect();
        let state = accumulate(q, eps0, &ws);
        let m = state.materialize();
        let oracle = SymmetricEigen::new(m.matrix().clone()).eigenvalues;
        let (lo, hi) = (oracle.min(), oracle.max());
        prop_assert!(lo >= eps0 - 1e-10 && hi <= eps0 + 1.0 + 1e-10);
        let s = m.spectral();
        prop_assert!((s.lambda_min - lo).abs() < 1e-10 && (s.lambda_max - hi).abs() < 1e-10);
    }

    #[test]
    fn trace_is_one(ws in normals(3)) {
        prop_assume!(!ws.is_empty());
        let state = accumulate(3, 0.1, &ws);
        prop_assert!((state.sigma().unwrap().trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn norm_equivalence_and_isometry(ws in normals(3), y in prop::collection::vec(-5.0..5.0f64, 3)) {
        let eps0 = 0.1;
        let m = accumulate(3, eps0, &ws).materialize();
        let y = DVector::from_vec(y);
        let n = m.norm(&y);
        prop_assert!(n >= eps0.sqrt() * y.norm() - 1e-12);
        prop_assert!(n <= (eps0 + 1.0).sqrt() * y.norm() + 1e-12);
        let t = m.sqrt_factor();
        prop_assert!((n - (t.matrix() * &y).norm()).abs() < 1e-10 * (1.0 + n));
        let inv = m.matrix().clone().try_inverse().unwrap();
        let dual = (y.dot(&(&inv * &y))).sqrt();
        prop_assert!((m.dual_norm(&y) - dual).abs() < 1e-9 * (1.0 + dual));
    }

    #[test]
    fn theta_bound_from_dispersion(ws in normals(3), eps0 in 0.01..1.0f64) {
        prop_assume!(!ws.is_empty());
        let state = accumulate(3, eps0, &ws);
        let (eta, _) = state.sigma_stats().unwrap();
        let theta = state.materialize().spectral().theta;
        prop_assert!(theta >= ((eps0 + eta) / (eps0 + 1.0)).sqrt() - 1e-10);
        prop_assert!(theta > 0.0 && theta <= 1.0);
    }

    #[test]
    fn jacobi_matches_reference(entries in prop::collection::vec(-2.0..2.0f64, 16)) {
        let a = DMatrix::from_vec(4, 4, entries);
        let spd = &a * a.transpose() + DMatrix::identity(4, 4) * 0.05;
        let m = SpdMatrix::from_symmetrized(spd.clone()).unwrap();
        let mut oracle: Vec<f64> = SymmetricEigen::new(spd).eigenvalues.iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        for (got, want) in m.eigenvalues().iter().zip(oracle) {
            prop_assert!((got - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
    }
}

#[test]
fn prior_is_isotropic() {
    let m = MetricState::new(4, 0.1).unwrap().materialize();
    let expect = DMatrix::identity(4, 4) * 0.35;
    assert!((m.matrix() - expect).amax() < 1e-15);
}

#[test]
fn rejects_indefinite_and_zero_normal() {
    assert!(SpdMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0])).is_err());
    assert!(SpdMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0])).is_err());
    let s = MetricState::new(2, 0.1).unwrap();
    assert!(s.push_normal(&DVector::zeros(2)).is_err());
}
