//! Randomized invariants of the basis and the analysis, over seeded random
//! node sets with a minimum spacing of 0.02.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use simplex_interp::{
    analyze, vandermonde_det, LagrangeBasis, NodeSet, Polynomial, Precision, Scalar,
};

pub const CASES: u32 = 1000;
pub const MIN_GAP: f64 = 0.02;

pub fn prec() -> Precision {
    Precision::default()
}

/// `k + 1` ascending nodes in `[-1, 1]`, consecutive ones at least
/// `MIN_GAP` apart; each end sits at `±1` with probability 1/2.
pub fn node_sets(k: usize) -> impl Strategy<Value = Vec<f64>> {
    let d = k + 1;
    (
        proptest::collection::vec(0.05f64..1.0, d + 1),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(move |(mut shares, pin_left, pin_right)| {
            if pin_left {
                shares[0] = 0.0;
            }
            if pin_right {
                shares[d] = 0.0;
            }
            let total: f64 = shares.iter().sum();
            let room = 2.0 - MIN_GAP * (d - 1) as f64;
            let mut points = Vec::with_capacity(d);
            let mut x = -1.0 + room * shares[0] / total;
            points.push(x);
            for s in &shares[1..d] {
                x += MIN_GAP + room * s / total;
                points.push(x.min(1.0));
            }
            if pin_right {
                points[d - 1] = 1.0;
            }
            points
        })
}

pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let mut seed_bytes = [0u8; 32];
    seed_bytes[0] = seed;
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(
        config,
        TestRng::from_seed(RngAlgorithm::ChaCha, &seed_bytes),
    )
}

/// `½(1 + 1/(d-1))(‖P‖ - 1) + 1` and `(d/2)(‖P‖ - 1) + 1`.
pub fn sandwich(norm: &Scalar, d: usize) -> (Scalar, Scalar) {
    let p = norm.precision();
    let excess = norm - &Scalar::one(p);
    let lower = Scalar::from_ratio(d as i64, 2 * (d as i64 - 1), p) * &excess + Scalar::one(p);
    let upper = Scalar::from_ratio(d as i64, 2, p) * &excess + Scalar::one(p);
    (lower, upper)
}

pub fn abs_le(x: &Scalar, tol: f64) -> bool {
    x.abs() <= Scalar::from_f64(tol, x.precision())
}

pub fn sum(xs: &[Scalar]) -> Scalar {
    xs.iter().fold(Scalar::zero(prec()), |acc, x| acc + x)
}

/// Everything the analysis promises for one node set.
pub fn check_analysis(points: &[f64], rng_values: &[f64]) -> Result<(), TestCaseError> {
    let p = prec();
    let nodes = NodeSet::from_f64s(points, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let basis = LagrangeBasis::build(&nodes).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let d = basis.len();
    let report = analyze(&basis);
    let norm = &report.norm.value;
    let xi = &report.xi.value;
    let slack = Scalar::from_f64(1e-12, p);

    let (lower, upper) = sandwich(norm, d);
    prop_assert!(
        &lower - &slack <= *xi && *xi <= &upper + &slack,
        "sandwich: {points:?}"
    );

    let one = Scalar::one(p);
    if *norm > Scalar::from_f64(1.0 + 1e-10, p) {
        let ratio = report
            .inequality
            .ratio
            .clone()
            .expect("ratio present when the norm exceeds 1");
        let oracle = (xi - &one) / (norm - &one);
        prop_assert!(abs_le(&(&ratio - &oracle), 1e-20));
        let low = Scalar::from_f64(0.5 * (1.0 + 1.0 / (d as f64 - 1.0)) - 1e-12, p);
        let high = Scalar::from_f64(d as f64 / 2.0 + 1e-12, p);
        prop_assert!(low <= ratio && ratio <= high, "ratio bounds: {points:?}");
    }

    if report.one_point.exists() {
        prop_assert!(
            abs_le(&(xi - &upper), 1e-10),
            "1-point without equality: {points:?}"
        );
        prop_assert!(report.inequality.right_equality);
    }

    // Direct evaluations can never beat the certified maxima.
    let d_scalar = Scalar::from_i64(d as i64, p);
    for &t in rng_values {
        let x = Scalar::from_f64(t, p);
        let coords = basis.barycentric_coords(&x);
        let l1 = coords.iter().fold(Scalar::zero(p), |acc, c| acc + c.abs());
        prop_assert!(l1 <= norm + &slack);
        let depth = coords.iter().fold(Scalar::zero(p), |acc, c| acc.max(-c));
        prop_assert!(&d_scalar * &depth + &one <= xi + &slack);
    }
    if report.xi.contained {
        prop_assert!(*xi == one);
    } else {
        prop_assert!(*xi > one);
    }
    Ok(())
}

/// Cardinality, partition of unity, determinant oracle and reproduction of
/// polynomials of degree at most `k`.
pub fn check_basis(points: &[f64], poly: &[f64], xs: &[f64]) -> Result<(), TestCaseError> {
    let p = prec();
    let nodes = NodeSet::from_f64s(points, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let basis = LagrangeBasis::build(&nodes).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let d = basis.len();

    for (m, node) in nodes.points().iter().enumerate() {
        for (j, c) in basis.barycentric_coords(node).iter().enumerate() {
            let delta = Scalar::from_i64(i64::from(j == m), p);
            prop_assert!(
                abs_le(&(c - &delta), 1e-20),
                "cardinality at node {m}, coordinate {j}"
            );
        }
    }

    let total = basis
        .lambdas()
        .iter()
        .fold(Polynomial::zero(p), |acc, l| &acc + l);
    let mut expected = vec![0.0; d];
    expected[0] = 1.0;
    for (i, e) in expected.iter().enumerate() {
        let c = total
            .coeffs()
            .get(i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(p));
        prop_assert!(
            abs_le(&(c - Scalar::from_f64(*e, p)), 1e-20),
            "partition of unity, x^{i}"
        );
    }

    let oracle = vandermonde_det(&nodes);
    let rel = (basis.det() - &oracle) / &oracle;
    prop_assert!(abs_le(&rel, 1e-20));

    let f = Polynomial::from_f64s(&poly[..d], p);
    let samples: Vec<Scalar> = nodes.points().iter().map(|x| f.eval(x)).collect();
    for &t in xs {
        let x = Scalar::from_f64(t, p);
        let coords = basis.barycentric_coords(&x);
        let terms: Vec<Scalar> = coords.iter().zip(&samples).map(|(c, s)| c * s).collect();
        prop_assert!(
            abs_le(&(sum(&terms) - f.eval(&x)), 1e-18),
            "interpolation exactness at {t}"
        );
    }
    Ok(())
}

/// Sandwich, ratio bounds, 1-point tightness and grid dominance.
pub fn analysis_suite(k: usize) -> Result<(), String> {
    let strategy = (node_sets(k), proptest::collection::vec(-1.0f64..=1.0, 8));
    runner(CASES, k as u8)
        .run(&strategy, |(points, xs)| check_analysis(&points, &xs))
        .map_err(|e| e.to_string())
}

pub fn basis_suite(k: usize) -> Result<(), String> {
    let strategy = (
        node_sets(k),
        proptest::collection::vec(-1.0f64..1.0, k + 1),
        proptest::collection::vec(-1.0f64..=1.0, 100),
    );
    runner(CASES, 100 + k as u8)
        .run(&strategy, |(points, poly, xs)| {
            check_basis(&points, &poly, &xs)
        })
        .map_err(|e| e.to_string())
}
