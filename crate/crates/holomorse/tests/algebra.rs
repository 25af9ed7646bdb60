mod common;

use common::*;
use holomorse::algebra::{eval_grading, invert_variables, poly_add, poly_mul, GradedLaurentPoly, Scalar};
use holomorse::Error;
use proptest::prelude::*;

#[test]
fn addition_cancels_and_merges() {
    let a = poly(1, &[(0, 0, &[0], 1), (0, 0, &[1], 1)]);
    let b = poly(1, &[(0, 0, &[1], -1)]);
    assert_eq!(poly_add(&a, &b).unwrap(), GradedLaurentPoly::one(1));

    let h = GradedLaurentPoly::monomial(e(&["1/2"]), Scalar::one());
    let two_h = GradedLaurentPoly::monomial(e(&["1/2"]), Scalar::from_int(2));
    assert_eq!(&h + &h, two_h);

    let a = poly(2, &[(0, 0, &[0, 0], 1), (0, 0, &[1, 1], 1)]);
    let b = poly(2, &[(1, 0, &[0, 2], 1)]);
    let want = poly(2, &[(0, 0, &[0, 0], 1), (0, 0, &[1, 1], 1), (1, 0, &[0, 2], 1)]);
    assert_eq!(&a + &b, want);
}

#[test]
fn addition_rejects_rank_mismatch() {
    let err = poly_add(&GradedLaurentPoly::one(1), &GradedLaurentPoly::one(2)).unwrap_err();
    assert!(matches!(err, Error::RankMismatch { left: 1, right: 2 }));
}

#[test]
fn multiplication_examples() {
    let a = poly(1, &[(0, 0, &[0], 1), (0, 0, &[1], -1)]);
    let b = poly(1, &[(0, 0, &[0], 1), (0, 0, &[1], 1), (0, 0, &[2], 1)]);
    assert_eq!(poly_mul(&a, &b).unwrap(), poly(1, &[(0, 0, &[0], 1), (0, 0, &[3], -1)]));

    let h = GradedLaurentPoly::monomial(e(&["1/2"]), Scalar::one());
    assert_eq!(&h * &h, poly(1, &[(0, 0, &[1], 1)]));

    for k in -3..=3 {
        let mono = |x: &str, c: i64| GradedLaurentPoly::monomial(e(&[x]), Scalar::from_int(c));
        let lhs = &(&mono("3/2", 1) + &mono("1/2", k)) + &mono("-1/2", 1);
        let got = &lhs * &h;
        let want = poly(1, &[(0, 0, &[2], 1), (0, 0, &[1], k), (0, 0, &[0], 1)]);
        assert_eq!(got, want, "k = {k}");
    }
}

#[test]
fn inversion_examples() {
    assert_eq!(invert_variables(&poly(2, &[(0, 0, &[2, -1], 1)])), poly(2, &[(0, 0, &[-2, 1], 1)]));
    assert_eq!(invert_variables(&GradedLaurentPoly::one(2)), GradedLaurentPoly::one(2));
}

#[test]
fn grading_evaluation_examples() {
    let chi = poly(
        0,
        &[(0, 0, &[], 1), (1, 1, &[], 2), (2, 2, &[], 2), (3, 3, &[], 1)],
    );
    assert!(eval_grading(&chi, &s("-1"), &s("1")).is_zero());

    let p = poly(1, &[(0, 0, &[0], 1), (1, 0, &[1], 1)]);
    assert_eq!(p.eval_b(&s("-1")), poly(1, &[(0, 0, &[0], 1), (0, 0, &[1], -1)]));

    let cy = poly(2, &[(0, 0, &[0, 0], 1), (2, 0, &[5, -1], 1)]);
    assert_eq!(cy.eval_b(&s("-1")), poly(2, &[(0, 0, &[0, 0], 1), (0, 0, &[5, -1], 1)]));
}

#[test]
fn reflections_check_degree() {
    let p = poly(1, &[(0, 0, &[0], 1), (1, 0, &[1], 1)]);
    assert_eq!(p.reflect_b(1).unwrap(), poly(1, &[(1, 0, &[0], 1), (0, 0, &[1], 1)]));
    assert!(matches!(p.reflect_b(0), Err(Error::GradingOutOfRange { .. })));
}

#[test]
fn scalar_parse_and_display() {
    for text in ["0", "1", "-3/4", "i", "-i", "1/2+3/4i", "2-i", "-5/3i"] {
        let v = s(text);
        assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{text}");
    }
    assert_eq!(s("i") * s("i"), s("-1"));
    assert_eq!(s("1+i").inv().unwrap(), s("1/2-1/2i"));
    assert!(Scalar::zero().inv().is_none());
}

#[test]
fn polynomial_display() {
    let p = poly(2, &[(0, 0, &[0, 0], 1), (0, 0, &[5, -1], 1)]);
    assert_eq!(p.to_string(), "1 + λ^5 μ^{-1}");
    let p = poly(1, &[(1, 0, &[1], 1), (0, 0, &[0], 1)]);
    assert_eq!(p.to_string(), "1 + b λ");
    assert_eq!(GradedLaurentPoly::zero(1).to_string(), "0");
    let h = GradedLaurentPoly::monomial(e(&["-1/2"]), s("-2"));
    assert_eq!(h.to_string(), "-2 λ^{-1/2}");
}

fn arb_poly(rank: usize) -> impl Strategy<Value = GradedLaurentPoly> {
    let term = (0u32..3, 0u32..2, prop::collection::vec(-3i64..=3, rank), -4i64..=4, 1i64..=2);
    prop::collection::vec(term, 0..6).prop_map(move |ts| {
        GradedLaurentPoly::from_terms(
            rank,
            ts.into_iter().map(|(b, y, x, c, d)| {
                let x = x.into_iter().map(|v| holomorse::algebra::rat(v, d)).collect();
                (b, y, holomorse::Exponent::new(x), Scalar::from_int(c))
            }),
        )
    })
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| {
        Scalar::from_rat(holomorse::algebra::rat(a, d)) + Scalar::i() * Scalar::from_int(b)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &GradedLaurentPoly::one(2), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inversion_is_an_involutive_homomorphism(a in arb_poly(2), b in arb_poly(2)) {
        prop_assert_eq!(invert_variables(&invert_variables(&a)), a.clone());
        prop_assert_eq!(invert_variables(&(&a * &b)), &invert_variables(&a) * &invert_variables(&b));
    }

    #[test]
    fn grading_evaluation_is_a_homomorphism(a in arb_poly(2), b in arb_poly(2), x in arb_scalar(), y in arb_scalar()) {
        let ev = |p: &GradedLaurentPoly| eval_grading(p, &x, &y);
        prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
    }

    #[test]
    fn b_reflection_is_an_involution(a in arb_poly(1)) {
        let n = a.max_b();
        prop_assert_eq!(a.reflect_b(n).unwrap().reflect_b(n).unwrap(), a);
    }
}
