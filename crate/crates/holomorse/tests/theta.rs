mod common;

use common::*;
use holomorse::algebra::{rat, GradedLaurentPoly, Rat, Scalar};
use holomorse::charfrac::{frac_equals, CharFraction};
use holomorse::localization::{FixedPoint, FixedPointProblem};
use holomorse::theta::*;
use holomorse::{Error, Execution};
use num::{BigInt, BigRational, One, Zero};

fn w(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(*x)).collect()
}

fn smooth_pair() -> CharFraction {
    smooth_chi1(&[ei(&[1, 0]), ei(&[0, 1])]).unwrap()
}

fn bernoulli(n: usize) -> Vec<BigRational> {
    let binom = |n: usize, k: usize| -> BigInt {
        (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
    };
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        let s = (0..m).fold(BigRational::zero(), |acc, k| acc + BigRational::from_integer(binom(m + 1, k)) * &b[k]);
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

#[test]
fn constant_series() {
    let s = theta_expand(&CharFraction::one(1), &w(&[1]), 4).unwrap();
    assert_eq!(s.coeffs().collect::<Vec<_>>(), vec![(&0, &Scalar::one())]);
}

/// `i cot(t/2) = i Σ (-1)^n 2 B_{2n} t^{2n-1} / (2n)!`.
#[test]
fn cotangent_oracle() {
    let f = smooth_chi1(&[ei(&[1])]).unwrap();
    let s = theta_expand(&f, &w(&[1]), 9).unwrap();
    assert_eq!(s.coeff(-1), s_("2i"));
    assert_eq!(s.coeff(1), s_("-1/6i"));
    let b = bernoulli(10);
    let mut fact = BigRational::one();
    for n in 0..=5usize {
        if n > 0 {
            fact *= BigRational::from_integer(BigInt::from((2 * n - 1) * (2 * n)));
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(BigInt::from(2 * sign)) * &b[2 * n] / &fact;
        let want = Scalar::i() * Scalar::from_big(c);
        assert_eq!(s.coeff(2 * n as i64 - 1), want, "order {}", 2 * n - 1);
        assert!(s.coeff(2 * n as i64).is_zero());
    }
}

fn s_(v: &str) -> Scalar {
    s(v)
}

#[test]
fn smooth_nut_and_tau3_grid() {
    for p in 1..=5 {
        for q in 1..=5 {
            let (n, t3) = nut_and_tau3(&smooth_pair(), &w(&[2 * p, 2 * q])).unwrap();
            assert_eq!(n, Scalar::from_rat(-rat(1, p * q)));
            assert_eq!(t3, Scalar::from_rat(rat(1, 3) * (rat(p, q) + rat(q, p))));
        }
    }
    let (n, t3) = nut_and_tau3(&smooth_pair(), &w(&[2, 4])).unwrap();
    assert_eq!((n, t3), (s("-1/2"), s("5/6")));
}

#[test]
fn quadric_orbifold_character() {
    let f = corpus("quadric.json");
    let c = chi1_character(f.problem.point("singular").unwrap()).unwrap();
    for p in 1..=4 {
        for q in 1..=4 {
            let (n, t3) = nut_and_tau3(&c, &w(&[2 * p, 2 * q])).unwrap();
            assert_eq!(n, Scalar::from_rat(-rat(1, 2 * p * q)));
            assert_eq!(t3, Scalar::from_rat(rat(1, 6) * (rat(p, q) + rat(q, p))));
        }
    }
}

#[test]
fn cp2_global_checks() {
    let p = corpus("cp2_signature.json").problem;
    let r = global_theta_checks(&p, &w(&[2, 4]), Some(&Scalar::one()), Execution::Sequential).unwrap();
    let nuts: Vec<Scalar> = r.points.iter().map(|pt| pt.nut.clone()).collect();
    let taus: Vec<Scalar> = r.points.iter().map(|pt| pt.tau3.clone()).collect();
    assert_eq!(nuts, vec![s("-1/2"), s("1"), s("-1/2")]);
    assert_eq!(taus, vec![s("5/6"), s("-2/3"), s("5/6")]);
    assert!(r.passed());

    let raw = global_theta_checks(&p, &w(&[1, 2]), Some(&Scalar::one()), Execution::Parallel).unwrap();
    assert!(raw.sum_nut.is_zero());
    assert_eq!(raw.sum_tau3, Scalar::one());
}

#[test]
fn single_point_fails() {
    let p = FixedPointProblem::new(2, 2, chamber(&[2, 1]), vec![FixedPoint::smooth("o", vec![ei(&[1, 0]), ei(&[0, 1])])]);
    let r = global_theta_checks(&p, &w(&[2, 4]), None, Execution::Sequential).unwrap();
    assert_eq!(r.sum_nut, s("-1/2"));
    assert!(!r.passed());
}

#[test]
fn conifold_signature() {
    let p = corpus("conifold_chi.json").problem;
    let r = global_theta_checks(&p, &w(&[4, 2, 1]), Some(&Scalar::zero()), Execution::Sequential).unwrap();
    assert_eq!(r.points.len(), 5);
    assert!(r.sum_tau3.is_zero());
    assert!(r.passed());
}

#[test]
fn quadric_and_calabi_yau_global_checks() {
    for (name, weights) in [("quadric.json", [2, 4]), ("quadric.json", [6, 10]), ("calabi_yau.json", [1, 3])] {
        let p = corpus(name).problem;
        let r = global_theta_checks(&p, &w(&weights), Some(&Scalar::one()), Execution::Sequential).unwrap();
        assert!(r.passed(), "{name} {weights:?}");
    }
}

#[test]
fn non_generic_weights() {
    let err = theta_expand(&smooth_pair(), &w(&[0, 1]), 4).unwrap_err();
    assert!(matches!(err, Error::NonGenericWeights { .. }));
}

#[test]
fn graded_input_is_rejected() {
    let f = CharFraction::poly(GradedLaurentPoly::b(1));
    assert!(matches!(theta_expand(&f, &w(&[1]), 4), Err(Error::Precondition(_))));
}

#[test]
fn imaginary_nut_is_rejected() {
    let f = CharFraction::poly(GradedLaurentPoly::constant(1, Scalar::i()));
    assert!(matches!(nut_and_tau3(&f, &w(&[1])), Err(Error::NotReal { .. })));
}

#[test]
fn parity_of_self_dual_characters() {
    let chars = [
        smooth_pair(),
        smooth_chi1(&[ei(&[1, -1]), ei(&[2, 3])]).unwrap(),
        chi1_character(corpus("quadric.json").problem.point("singular").unwrap()).unwrap(),
    ];
    for c in &chars {
        let s = theta_expand(c, &w(&[3, 5]), 7).unwrap();
        for (m, _) in s.coeffs() {
            assert_eq!(m % 2, 0, "odd order {m} in {c}");
        }
    }
}

#[test]
fn linearity_and_consistency() {
    let f = smooth_pair();
    let g = smooth_chi1(&[ei(&[1, 1]), ei(&[0, -1])]).unwrap();
    let weights = w(&[2, 7]);
    let sum = theta_expand(&f.try_add(&g).unwrap(), &weights, 5).unwrap();
    let parts = theta_expand(&f, &weights, 5).unwrap().add(&theta_expand(&g, &weights, 5).unwrap());
    assert_eq!(sum.coeffs().collect::<Vec<_>>(), parts.coeffs().collect::<Vec<_>>());

    let one_minus = &GradedLaurentPoly::one(2) - &GradedLaurentPoly::monomial(ei(&[1, 2]), Scalar::one());
    let mut den = f.denominator().to_vec();
    den.push(ei(&[1, 2]));
    let padded = CharFraction::new(f.numerator() * &one_minus, den).unwrap();
    assert!(frac_equals(&f, &padded));
    let a = theta_expand(&f, &weights, 5).unwrap();
    let b = theta_expand(&padded, &weights, 5).unwrap();
    assert_eq!(a.coeffs().collect::<Vec<_>>(), b.coeffs().collect::<Vec<_>>());
}

/// `λ ↦ e^{icwt}` is `t ↦ ct`, so the `t^m` coefficient picks up `c^m`.
#[test]
fn scaling_of_weights() {
    let f = smooth_chi1(&[ei(&[1, -1]), ei(&[2, 3])]).unwrap();
    let base = theta_expand(&f, &w(&[1, 2]), 4).unwrap();
    for c in [rat(2, 1), rat(1, 3), rat(5, 2)] {
        let scaled: Vec<Rat> = w(&[1, 2]).into_iter().map(|x| x * c).collect();
        let s = theta_expand(&f, &scaled, 4).unwrap();
        for m in -2..=4i64 {
            let factor = Scalar::from_rat(c).pow(m.unsigned_abs() as u32);
            let want = if m < 0 { base.coeff(m) / factor } else { base.coeff(m) * factor };
            assert_eq!(s.coeff(m), want, "order {m}, c = {c}");
        }
    }
}
