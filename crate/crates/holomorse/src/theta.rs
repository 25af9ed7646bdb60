//! Laurent expansion in an angle `t` under `λ_j ↦ e^{i w_j t}`.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::algebra::{fmt_monomial, Exponent, GradedLaurentPoly, Rat, Scalar};
use crate::charfrac::CharFraction;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::localization::{FixedPoint, FixedPointProblem};

/// Default truncation order.
pub const DEFAULT_ORDER: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeries {
    pub min_order: i64,
    pub order: i64,
    coeffs: BTreeMap<i64, Scalar>,
}

impl ThetaSeries {
    pub fn coeff(&self, m: i64) -> Scalar {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in increasing order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &ThetaSeries) -> ThetaSeries {
        let order = self.order.min(other.order);
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &other.coeffs {
            *coeffs.entry(*m).or_default() += c;
        }
        coeffs.retain(|m, c| *m <= order && !c.is_zero());
        ThetaSeries { min_order: self.min_order.min(other.min_order), order, coeffs }
    }
}

fn scalar_of(r: Rat) -> Scalar {
    Scalar::from_rat(r)
}

fn factorial_inv(m: usize) -> Scalar {
    let mut f = BigRational::from_integer(1.into());
    for k in 1..=m {
        f *= BigRational::from_integer(k.into());
    }
    Scalar::from_big(f.recip())
}

/// Coefficients of `e^{i a t}` up to `t^{len-1}`.
fn exp_series(a: Rat, len: usize) -> Vec<Scalar> {
    let ia = Scalar::i() * scalar_of(a);
    (0..len).map(|m| ia.pow(m as u32) * factorial_inv(m)).collect()
}

fn mul_series(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn inv_series(a: &[Scalar], len: usize) -> Option<Vec<Scalar>> {
    let a0 = a.first()?.inv()?;
    let mut out = vec![Scalar::zero(); len];
    out[0] = a0.clone();
    for m in 1..len {
        let mut acc = Scalar::zero();
        for k in 1..=m.min(a.len() - 1) {
            acc += &(&a[k] * &out[m - k]);
        }
        out[m] = -(acc * &a0);
    }
    Some(out)
}

/// Expand `f` with `λ^v ↦ e^{i⟨w,v⟩t}` through order `t^order`.
///
/// Each factor `1 - e^{iat}` is `t·g(t)` with `g(0) = -ia`; the product of the
/// `g` is inverted as a power series and the result shifted by the number of
/// factors.
pub fn theta_expand(f: &CharFraction, w: &[Rat], order: i64) -> Result<ThetaSeries> {
    if w.len() != f.rank() {
        return Err(Error::RankMismatch { left: f.rank(), right: w.len() });
    }
    if f.numerator().flat_terms().any(|(b, y, _, _)| b != 0 || y != 0) {
        return Err(Error::Precondition("theta expansion needs trivial b,y grading".into()));
    }
    let d = f.denominator().len() as i64;
    let len = (order + d + 1).max(1) as usize;
    let mut num = vec![Scalar::zero(); len];
    for (_, _, e, c) in f.numerator().flat_terms() {
        for (k, s) in exp_series(e.dot(w), len).into_iter().enumerate() {
            num[k] += &(c * &s);
        }
    }
    let mut g = vec![Scalar::one()];
    for u in f.denominator() {
        let a = u.dot(w);
        if a.is_zero() {
            return Err(Error::NonGenericWeights { exponent: fmt_monomial(u) });
        }
        let factor: Vec<Scalar> = exp_series(a, len + 1).into_iter().skip(1).map(|s| -s).collect();
        g = mul_series(&g, &factor, len);
    }
    let ginv = inv_series(&g, len).expect("leading coefficient is a product of nonzero terms");
    let r = mul_series(&num, &ginv, len);
    let coeffs = r
        .into_iter()
        .enumerate()
        .map(|(k, c)| (k as i64 - d, c))
        .filter(|(m, c)| *m <= order && !c.is_zero())
        .collect();
    Ok(ThetaSeries { min_order: -d, order, coeffs })
}

fn require_real(c: Scalar, what: &str) -> Result<Scalar> {
    if c.is_real() {
        Ok(c)
    } else {
        Err(Error::NotReal { what: what.into(), value: c.to_string() })
    }
}

/// `(N, τ₃)`: the `t⁻²` and `t⁰` coefficients, both required real.
pub fn nut_and_tau3(f: &CharFraction, w: &[Rat]) -> Result<(Scalar, Scalar)> {
    let s = theta_expand(f, w, DEFAULT_ORDER)?;
    Ok((require_real(s.coeff(-2), "N")?, require_real(s.coeff(0), "tau3")?))
}

/// `∏ (1 + λ^γ)/(1 - λ^γ)`, the χ₁ character at a smooth point.
pub fn smooth_chi1(weights: &[Exponent]) -> Result<CharFraction> {
    let r = weights.first().map(Exponent::rank).unwrap_or(1);
    let num = weights.iter().fold(GradedLaurentPoly::one(r), |acc, g| {
        let f = &GradedLaurentPoly::one(r) + &GradedLaurentPoly::monomial(g.clone(), Scalar::one());
        &acc * &f
    });
    CharFraction::new(num, weights.to_vec())
}

/// The corpus χ₁ character, or the smooth formula when none is given.
pub fn chi1_character(fp: &FixedPoint) -> Result<CharFraction> {
    match (&fp.chi1, fp.is_smooth()) {
        (Some(c), _) => Ok(c.clone()),
        (None, true) => smooth_chi1(&fp.weights),
        (None, false) => Err(Error::SingularPoint(fp.name.clone())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointTheta {
    pub name: String,
    pub nut: Scalar,
    pub tau3: Scalar,
    pub series: ThetaSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaReport {
    pub points: Vec<PointTheta>,
    pub sum_nut: Scalar,
    pub sum_tau3: Scalar,
    /// Sum of the `t⁻¹` coefficients.
    pub sum_residue: Scalar,
    /// Every negative order of the global series cancels.
    pub singular_part_vanishes: bool,
    pub signature_matches: Option<bool>,
}

impl ThetaReport {
    pub fn nut_vanishes(&self) -> bool {
        self.sum_nut.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.nut_vanishes()
            && self.sum_residue.is_zero()
            && self.singular_part_vanishes
            && self.signature_matches.unwrap_or(true)
    }
}

pub fn global_theta_checks(
    p: &FixedPointProblem,
    w: &[Rat],
    signature: Option<&Scalar>,
    exec: Execution,
) -> Result<ThetaReport> {
    let points = exec::try_map(exec, &p.fixed_points, |fp| {
        let series = theta_expand(&chi1_character(fp)?, w, DEFAULT_ORDER)?;
        Ok::<_, Error>(PointTheta {
            name: fp.name.clone(),
            nut: require_real(series.coeff(-2), "N")?,
            tau3: require_real(series.coeff(0), "tau3")?,
            series,
        })
    })?;
    let zero = || ThetaSeries { min_order: 0, order: DEFAULT_ORDER, coeffs: BTreeMap::new() };
    let total = points.iter().fold(zero(), |acc, pt| acc.add(&pt.series));
    let sum = |f: fn(&PointTheta) -> &Scalar| points.iter().fold(Scalar::zero(), |acc, pt| acc + f(pt));
    let sum_nut = sum(|pt| &pt.nut);
    let sum_tau3 = sum(|pt| &pt.tau3);
    let singular_part_vanishes = total.coeffs().all(|(m, _)| *m >= 0);
    Ok(ThetaReport {
        sum_residue: total.coeff(-1),
        singular_part_vanishes,
        signature_matches: signature.map(|s| *s == sum_tau3),
        sum_nut,
        sum_tau3,
        points,
    })
}
