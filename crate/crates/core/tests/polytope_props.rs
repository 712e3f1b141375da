use adaptive_outer::linalg::lex_cmp;
use adaptive_outer::polytope::{hausdorff_nested, Halfspace, Polytope};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn dv(v: &[f64]) -> DVector<f64> {
    DVector::from_vec(v.to_vec())
}

fn unit(raw: &[f64]) -> Option<DVector<f64>> {
    let v = dv(raw);
    let n = v.norm();
    (n > 0.2).then(|| v / n)
}

/// `[-1,1]^q` cut by random halfspaces that keep the origin interior.
fn instance(q: usize) -> impl Strategy<Value = Vec<(DVector<f64>, f64)>> {
    prop::collection::vec(
        (prop::collection::vec(-1.0..1.0f64, q), -0.9..-0.05f64),
        1..7,
    )
    .prop_map(|cuts| {
        cuts.into_iter()
            .filter_map(|(n, b)| unit(&n).map(|n| (n, b)))
            .collect()
    })
}

fn build(q: usize, cuts: &[(DVector<f64>, f64)]) -> Polytope {
    let mut p = Polytope::cube(&vec![-1.0; q], &vec![1.0; q]).unwrap();
    p.enumerate_vertices().unwrap();
    for (n, b) in cuts {
        p = p.intersect(Halfspace::new(n.clone(), *b).unwrap());
    }
    p
}

/// Every `q`-subset of constraints solved by LU; feasible distinct points kept.
fn brute_force(q: usize, rows: &[(DVector<f64>, f64)]) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    let idx: Vec<usize> = (0..rows.len()).collect();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for &i in &idx {
        let mut more = Vec::new();
        for s in &subsets {
            if s.len() < q {
                let mut t = s.clone();
                t.push(i);
                more.push(t);
            }
        }
        subsets.extend(more);
    }
    for s in subsets.into_iter().filter(|s| s.len() == q) {
        let a = DMatrix::from_fn(q, q, |r, c| rows[s[r]].0[c]);
        let b = DVector::from_fn(q, |r, _| rows[s[r]].1);
        let lu = a.lu();
        if lu.determinant().abs() < 1e-9 {
            continue;
        }
        let Some(y) = lu.solve(&b) else { continue };
        if rows.iter().all(|(n, off)| n.dot(&y) >= off - 1e-9)
            && !out.iter().any(|u| (u - &y).amax() < 1e-7)
        {
            out.push(y);
        }
    }
    out.sort_by(lex_cmp);
    out
}

fn all_rows(q: usize, cuts: &[(DVector<f64>, f64)]) -> Vec<(DVector<f64>, f64)> {
    let mut rows = Vec::new();
    for j in 0..q {
        let e = DVector::from_fn(q, |i, _| if i == j { 1.0 } else { 0.0 });
        rows.push((e.clone(), -1.0));
        rows.push((-e, -1.0));
    }
    rows.extend(cuts.iter().cloned());
    rows
}

fn same_set(a: &[DVector<f64>], b: &[DVector<f64>], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|u| b.iter().any(|w| (u - w).amax() < tol))
}

/// Euclidean distance from a point to a convex polygon given by its vertices
/// in counterclockwise order.
fn polygon_distance(poly: &[DVector<f64>], p: &DVector<f64>) -> f64 {
    let n = poly.len();
    let inside = (0..n).all(|i| {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= -1e-12
    });
    if inside {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let (a, b) = (&poly[i], &poly[(i + 1) % n]);
            let d = b - a;
            let t = ((p - a).dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
            (p - (a + d * t)).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

fn ccw(mut v: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
    let c = v.iter().fold(DVector::zeros(2), |s, x| s + x) / v.len() as f64;
    v.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn incremental_matches_brute_force_2d(cuts in instance(2)) {
        let p = build(2, &cuts);
        let oracle = brute_force(2, &all_rows(2, &cuts));
        prop_assert!(same_set(&p.enumerate_vertices().unwrap(), &oracle, 1e-7));
    }

    #[test]
    fn incremental_matches_brute_force_3d(cuts in instance(3)) {
        let p = build(3, &cuts);
        let oracle = brute_force(3, &all_rows(3, &cuts));
        prop_assert!(same_set(&p.enumerate_vertices().unwrap(), &oracle, 1e-7));
        prop_assert!(same_set(&p.enumerate_exhaustive().unwrap(), &oracle, 1e-7));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lp_agrees_with_enumeration(
        cuts in instance(3),
        dirs in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 3), 50),
    ) {
        let p = build(3, &cuts);
        let verts = p.enumerate_vertices().unwrap();
        for d in dirs {
            let d = dv(&d);
            let (y, value) = p.lp_max(&d).unwrap();
            let best = verts.iter().map(|v| d.dot(v)).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!((value - best).abs() <= 1e-8 * (1.0 + best.abs()));
            prop_assert!(verts.iter().any(|v| (v - &y).amax() < 1e-7));
        }
    }

    #[test]
    fn intersection_is_nested(cuts in instance(3), n in prop::collection::vec(-1.0..1.0f64, 3), b in -0.9..-0.05f64) {
        let p = build(3, &cuts);
        let Some(n) = unit(&n) else { return Ok(()) };
        let next = p.intersect(Halfspace::new(n, b).unwrap());
        for v in next.enumerate_vertices().unwrap() {
            prop_assert!(p.contains(&v, 1e-9));
        }
        prop_assert!(hausdorff_nested(&p, &next).unwrap() >= 0.0);
    }

    #[test]
    fn redundant_cut_keeps_vertices(cuts in instance(3), n in prop::collection::vec(-1.0..1.0f64, 3)) {
        let p = build(3, &cuts);
        let Some(n) = unit(&n) else { return Ok(()) };
        let verts = p.enumerate_vertices().unwrap();
        let low = verts.iter().map(|v| n.dot(v)).fold(f64::INFINITY, f64::min);
        let next = p.intersect(Halfspace::new(n, low - 0.1).unwrap());
        prop_assert!(same_set(&next.enumerate_vertices().unwrap(), &verts, 1e-12));
    }

    #[test]
    fn hausdorff_matches_polygon_oracle(cuts in instance(2), extra in instance(2)) {
        let outer = build(2, &cuts);
        let mut inner = outer.clone();
        for (n, b) in &extra {
            inner = inner.intersect(Halfspace::new(n.clone(), *b).unwrap());
        }
        let poly = ccw(inner.enumerate_vertices().unwrap());
        let oracle = outer
            .enumerate_vertices()
            .unwrap()
            .iter()
            .map(|v| polygon_distance(&poly, v))
            .fold(0.0, f64::max);
        let got = hausdorff_nested(&outer, &inner).unwrap();
        prop_assert!((got - oracle).abs() < 1e-6, "{} vs {}", got, oracle);
    }
}

#[test]
fn nested_simplices() {
    let h = |n: &[f64], b: f64| Halfspace::new(dv(n), b).unwrap();
    let outer = Polytope::new(
        2,
        vec![
            h(&[1.0, 0.0], 0.0),
            h(&[0.0, 1.0], 0.0),
            h(&[-1.0, -1.0], -1.0),
        ],
    )
    .unwrap();
    let inner = outer.intersect(h(&[-1.0, -1.0], -0.5));
    assert!((hausdorff_nested(&outer, &inner).unwrap() - 0.5).abs() < 1e-8);
    assert!(hausdorff_nested(&inner, &outer).is_err());
}
