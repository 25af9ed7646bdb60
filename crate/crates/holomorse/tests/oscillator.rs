use holomorse::oscillator::*;
use holomorse::Execution;

fn close(a: f64, b: f64, rel: f64) -> bool {
    if b == 0.0 {
        a.abs() < rel
    } else {
        ((a - b) / b).abs() < rel
    }
}

#[test]
fn unit_oscillator_levels() {
    let r = spectrum(&ModelOperator::new(1.0, 12.0, 2000)).unwrap();
    assert_eq!(r.eigenvalues.len(), 10);
    for (n, l) in r.eigenvalues.iter().enumerate() {
        assert!(close(*l, 2.0 * n as f64, 1e-3), "level {n}: {l}");
    }
    assert_eq!(r.scaling_ratios.len(), 9);
}

#[test]
fn levels_scale_with_epsilon() {
    let r = spectrum(&ModelOperator::new(4.0, 12.0, 2000)).unwrap();
    for (n, l) in r.eigenvalues.iter().enumerate() {
        assert!(close(*l, 8.0 * n as f64, 1e-3), "level {n}: {l}");
    }
}

#[test]
fn zero_offset_ground_state() {
    let l = lowest_eigenvalues(&ModelOperator::new(1.0, 12.0, 2000).with_offset(0.0), 1, Solver::Sturm).unwrap();
    assert!(close(l[0], 1.0, 1e-4), "{}", l[0]);
}

#[test]
fn scaling_check_passes_on_a_fine_grid() {
    let r = scaling_check(&[1.0, 2.0, 4.0], 12.0, 2000, Execution::auto()).unwrap();
    assert!(r.passed, "deviation {}", r.max_deviation);
    assert!(r.max_deviation < SCALING_TOL);
    assert_eq!(r.spectra.len(), 3);
}

#[test]
fn coarse_grid_is_a_negative_control() {
    let r = scaling_check(&[1.0, 4.0], 12.0, 50, Execution::Sequential).unwrap();
    assert!(!r.passed);
    assert!(r.max_deviation > SCALING_TOL, "deviation {}", r.max_deviation);
}

#[test]
fn single_epsilon_is_rejected() {
    assert!(scaling_check(&[1.0], 12.0, 2000, Execution::Sequential).is_err());
}

#[test]
fn invalid_operator_is_rejected() {
    assert!(spectrum(&ModelOperator::new(0.0, 12.0, 200)).is_err());
    assert!(spectrum(&ModelOperator::new(1.0, 12.0, 1)).is_err());
}

#[test]
fn dense_and_sturm_agree() {
    for eps in [1.0, 2.5] {
        let op = ModelOperator::new(eps, 8.0, 200);
        let a = lowest_eigenvalues(&op, 10, Solver::Sturm).unwrap();
        let b = lowest_eigenvalues(&op, 10, Solver::Dense).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-8 * y.abs().max(1.0), "{x} vs {y}");
        }
    }
}

#[test]
fn second_order_convergence() {
    let err = |m: usize| {
        let l = lowest_eigenvalues(&ModelOperator::new(1.0, 12.0, m), 4, Solver::Sturm).unwrap();
        (l[3] - 6.0).abs()
    };
    let ratio = err(400) / err(801);
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn grid_is_reflection_symmetric() {
    let (diag, _) = ModelOperator::new(1.5, 10.0, 301).tridiagonal();
    let rev: Vec<f64> = diag.iter().rev().copied().collect();
    for (a, b) in diag.iter().zip(&rev) {
        assert!((a - b).abs() < 1e-9 * a.abs());
    }
}
