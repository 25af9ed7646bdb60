//! Independent brute-force expansion with integer exponents and coefficients.

use std::collections::HashMap;

use holomorse::algebra::{GradedLaurentPoly, Scalar};
use holomorse::charfrac::{Chamber, ChamberSeries, CharFraction};
use rand::Rng;

pub type Series = HashMap<(u32, Vec<i64>), i64>;

/// A fraction exactly as generated, before any canonicalization.
#[derive(Clone, Debug)]
pub struct RawFraction {
    pub rank: usize,
    pub num: Vec<(u32, Vec<i64>, i64)>,
    pub den: Vec<Vec<i64>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mul_truncated(a: &Series, b: &Series, xi: &[i64], cutoff: i64) -> Series {
    let mut out = Series::new();
    for ((ba, ea), ca) in a {
        for ((bb, eb), cb) in b {
            let e = add_vec(ea, eb);
            if dot(&e, xi) <= cutoff {
                *out.entry((ba + bb, e)).or_insert(0) += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Multiply explicit truncated geometric series into the numerator.
pub fn brute_expand(f: &RawFraction, xi: &[i64], cutoff: i64) -> Series {
    let mut acc = Series::new();
    for (b, e, c) in &f.num {
        if dot(e, xi) <= cutoff {
            *acc.entry((*b, e.clone())).or_insert(0) += c;
        }
    }
    acc.retain(|_, c| *c != 0);
    let low = acc.keys().map(|(_, e)| dot(e, xi)).min().unwrap_or(0);
    for u in &f.den {
        let d = dot(u, xi);
        assert_ne!(d, 0, "oracle needs a generic chamber");
        let kmax = (cutoff - low).max(0) / d.abs() + 1;
        let mut g = Series::new();
        if d > 0 {
            for k in 0..=kmax {
                g.insert((0, u.iter().map(|x| k * x).collect()), 1);
            }
        } else {
            for k in 1..=kmax {
                g.insert((0, u.iter().map(|x| -k * x).collect()), -1);
            }
        }
        acc = mul_truncated(&acc, &g, xi, cutoff);
    }
    acc
}

pub fn to_series(s: &GradedLaurentPoly) -> Series {
    s.flat_terms()
        .map(|(b, y, e, c)| {
            assert_eq!(y, 0);
            let e: Vec<i64> = e
                .coords()
                .iter()
                .map(|r| {
                    assert!(r.is_integer());
                    r.to_integer()
                })
                .collect();
            ((b, e), c.as_integer().expect("integer coefficient"))
        })
        .collect()
}

pub fn series_of(s: &ChamberSeries) -> Series {
    to_series(s.terms())
}

impl RawFraction {
    pub fn numerator(&self) -> GradedLaurentPoly {
        GradedLaurentPoly::from_terms(
            self.rank,
            self.num
                .iter()
                .map(|(b, e, c)| (*b, 0, holomorse::Exponent::from_ints(e), Scalar::from_int(*c))),
        )
    }

    pub fn build(&self) -> CharFraction {
        let den = self.den.iter().map(|u| holomorse::Exponent::from_ints(u)).collect();
        CharFraction::new(self.numerator(), den).unwrap()
    }
}

fn nonzero_vec<R: Rng>(rng: &mut R, rank: usize, range: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-range..=range)).collect();
        if v.iter().any(|x| *x != 0) {
            return v;
        }
    }
}

/// Up to 3 variables, up to 4 factors, exponents in [-3, 3].
pub fn random_fraction<R: Rng>(rng: &mut R) -> RawFraction {
    let rank = rng.gen_range(1..=3);
    let den = (0..rng.gen_range(1..=4)).map(|_| nonzero_vec(rng, rank, 3)).collect();
    let num = (0..rng.gen_range(1..=3))
        .map(|_| {
            let e = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
            let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            (rng.gen_range(0..=1), e, c)
        })
        .collect();
    RawFraction { rank, num, den }
}

/// A chamber pairing nonzero with every factor.
pub fn random_chamber<R: Rng>(rng: &mut R, f: &RawFraction) -> Vec<i64> {
    loop {
        let xi = nonzero_vec(rng, f.rank, 3);
        if f.den.iter().all(|u| dot(u, &xi) != 0) {
            return xi;
        }
    }
}

pub fn chamber_of(xi: &[i64]) -> Chamber {
    Chamber::from_ints(xi)
}
