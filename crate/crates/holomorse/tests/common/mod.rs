#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use holomorse::algebra::{parse_rat, Exponent, GradedLaurentPoly, Rat, Scalar};
use holomorse::charfrac::{Chamber, CharFraction};
use holomorse::cli::{parse_problem, ProblemFile};

pub fn q(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

pub fn s(v: &str) -> Scalar {
    v.parse().unwrap()
}

pub fn e(v: &[&str]) -> Exponent {
    Exponent::new(v.iter().map(|c| q(c)).collect())
}

pub fn ei(v: &[i64]) -> Exponent {
    Exponent::from_ints(v)
}

/// Polynomial from `(b, y, exponent, coefficient)` with integer exponents.
pub fn poly(rank: usize, terms: &[(u32, u32, &[i64], i64)]) -> GradedLaurentPoly {
    GradedLaurentPoly::from_terms(
        rank,
        terms.iter().map(|(b, y, x, c)| (*b, *y, ei(x), Scalar::from_int(*c))),
    )
}

pub fn frac(num: GradedLaurentPoly, den: &[&[i64]]) -> CharFraction {
    CharFraction::new(num, den.iter().map(|u| ei(u)).collect()).unwrap()
}

pub fn chamber(xi: &[i64]) -> Chamber {
    Chamber::from_ints(xi)
}

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn corpus(name: &str) -> ProblemFile {
    parse_problem(&corpus_path(name)).unwrap()
}
