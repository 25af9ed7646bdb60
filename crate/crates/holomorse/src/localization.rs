//! Fixed-point data and the Morse-theoretic computations built on it.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::algebra::{fmt_monomial, Exponent, GradedLaurentPoly, Rat, Scalar};
use crate::charfrac::{chamber_expand, Chamber, ChamberSeries, CharFraction};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub name: String,
    pub weights: Vec<Exponent>,
    pub bundle: Option<GradedLaurentPoly>,
    /// Graded local Morse contribution overriding the smooth formula.
    pub contribution: Option<CharFraction>,
    pub dual_contribution: Option<CharFraction>,
    /// Trace of the action on the canonical bundle.
    pub canonical: Option<Exponent>,
    /// Local equivariant χ₁ character for the theta module.
    pub chi1: Option<CharFraction>,
}

impl FixedPoint {
    pub fn smooth(name: impl Into<String>, weights: Vec<Exponent>) -> Self {
        FixedPoint {
            name: name.into(),
            weights,
            bundle: None,
            contribution: None,
            dual_contribution: None,
            canonical: None,
            chi1: None,
        }
    }

    pub fn explicit(name: impl Into<String>, contribution: CharFraction) -> Self {
        FixedPoint { contribution: Some(contribution), ..Self::smooth(name, Vec::new()) }
    }

    pub fn with_bundle(mut self, e: GradedLaurentPoly) -> Self {
        self.bundle = Some(e);
        self
    }

    pub fn with_dual(mut self, d: CharFraction) -> Self {
        self.dual_contribution = Some(d);
        self
    }

    pub fn with_canonical(mut self, k: Exponent) -> Self {
        self.canonical = Some(k);
        self
    }

    pub fn with_chi1(mut self, c: CharFraction) -> Self {
        self.chi1 = Some(c);
        self
    }

    pub fn is_smooth(&self) -> bool {
        self.contribution.is_none() && !self.weights.is_empty()
    }

    /// Number of weights pairing negatively with the chamber.
    pub fn morse_index(&self, c: &Chamber) -> u32 {
        self.weights.iter().filter(|g| c.pairing(g).is_negative()).count() as u32
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointProblem {
    pub rank: usize,
    pub dim: u32,
    pub root_order: i64,
    pub chamber: Chamber,
    pub fixed_points: Vec<FixedPoint>,
    pub poincare: Option<GradedLaurentPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Morse,
    Dual,
}

impl FixedPointProblem {
    pub fn new(rank: usize, dim: u32, chamber: Chamber, fixed_points: Vec<FixedPoint>) -> Self {
        let mut p = FixedPointProblem { rank, dim, root_order: 1, chamber, fixed_points, poincare: None };
        p.root_order = p.required_root_order();
        p
    }

    fn exponents(&self) -> Vec<&Exponent> {
        let mut v: Vec<&Exponent> = Vec::new();
        for fp in &self.fixed_points {
            v.extend(fp.weights.iter());
            v.extend(fp.canonical.iter());
            for f in [&fp.contribution, &fp.dual_contribution, &fp.chi1].into_iter().flatten() {
                v.extend(f.denominator());
                v.extend(f.numerator().exponents());
            }
            if let Some(b) = &fp.bundle {
                v.extend(b.exponents());
            }
        }
        if let Some(p) = &self.poincare {
            v.extend(p.exponents());
        }
        v
    }

    /// Least root order making every exponent in the problem admissible.
    pub fn required_root_order(&self) -> i64 {
        use num::Integer;
        self.exponents().iter().fold(1, |acc, e| acc.lcm(&e.root_order()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 || self.dim == 0 {
            return Err(Error::Precondition("rank and dimension must be at least 1".into()));
        }
        if self.chamber.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: self.chamber.rank() });
        }
        for e in self.exponents() {
            if e.rank() != self.rank {
                return Err(Error::RankMismatch { left: self.rank, right: e.rank() });
            }
            if self.root_order % e.root_order() != 0 {
                return Err(Error::Precondition(format!(
                    "exponent {} needs root order {}, problem declares {}",
                    fmt_monomial(e),
                    e.root_order(),
                    self.root_order
                )));
            }
        }
        for fp in &self.fixed_points {
            if fp.weights.is_empty() && fp.contribution.is_none() {
                return Err(Error::MissingWeights(fp.name.clone()));
            }
            self.chamber.check_generic(&fp.weights)?;
            for f in [&fp.contribution, &fp.dual_contribution].into_iter().flatten() {
                self.chamber.check_generic(f.denominator())?;
            }
        }
        Ok(())
    }

    pub fn point(&self, name: &str) -> Option<&FixedPoint> {
        self.fixed_points.iter().find(|f| f.name == name)
    }
}

/// `b^{n_a} E ∏_{⟨ξ,γ⟩>0} 1/(1-λ^γ) ∏_{⟨ξ,γ⟩<0} λ^{-γ}/(1-λ^{-γ})`, or the
/// explicit contribution when one is supplied.
pub fn smooth_contribution(fp: &FixedPoint, c: &Chamber) -> Result<CharFraction> {
    if let Some(f) = &fp.contribution {
        return Ok(f.clone());
    }
    smooth_formula(fp, c)
}

fn smooth_formula(fp: &FixedPoint, c: &Chamber) -> Result<CharFraction> {
    if fp.weights.is_empty() {
        return Err(Error::MissingWeights(fp.name.clone()));
    }
    c.check_generic(&fp.weights)?;
    let r = c.rank();
    let mut num = fp.bundle.clone().unwrap_or_else(|| GradedLaurentPoly::one(r));
    let mut den = Vec::with_capacity(fp.weights.len());
    let mut index = 0;
    for g in &fp.weights {
        if c.pairing(g).is_positive() {
            den.push(g.clone());
        } else {
            index += 1;
            num = num.shift(&g.neg());
            den.push(g.neg());
        }
    }
    CharFraction::new(num.shift_grading(index, 0), den)
}

/// Serre-dual local contribution.
///
/// Explicit dual data wins; then a canonical trace `κ` maps `b^q f` to
/// `b^{n-q} κ·f(λ⁻¹)`; at smooth points the default is the smooth formula in
/// the opposite chamber with the same bundle trace.
pub fn dual_contribution(morse: &CharFraction, fp: &FixedPoint, c: &Chamber, n: u32) -> Result<CharFraction> {
    if let Some(d) = &fp.dual_contribution {
        return Ok(d.clone());
    }
    if let Some(k) = &fp.canonical {
        return Ok(morse.invert_vars().reflect_b(n)?.shift(k));
    }
    if fp.is_smooth() {
        return smooth_formula(fp, &c.opposite());
    }
    Err(Error::MissingDual(fp.name.clone()))
}

/// Local contribution on the requested side.
pub fn local_contribution(p: &FixedPointProblem, fp: &FixedPoint, side: Side) -> Result<CharFraction> {
    let m = smooth_contribution(fp, &p.chamber)?;
    match side {
        Side::Morse => Ok(m),
        Side::Dual => dual_contribution(&m, fp, &p.chamber, p.dim),
    }
}

pub fn side_chamber(p: &FixedPointProblem, side: Side) -> Chamber {
    match side {
        Side::Morse => p.chamber.clone(),
        Side::Dual => p.chamber.opposite(),
    }
}

/// Sum of the local contributions as one canonical fraction.
pub fn global_closed_form(p: &FixedPointProblem, side: Side, exec: Execution) -> Result<CharFraction> {
    let locals = exec::try_map(exec, &p.fixed_points, |fp| local_contribution(p, fp, side))?;
    locals
        .iter()
        .try_fold(CharFraction::zero(p.rank), |acc, f| acc.try_add(f))
}

/// The Lefschetz number: the Morse closed form at `b = -1`, reduced.
pub fn lefschetz(p: &FixedPointProblem, exec: Execution) -> Result<CharFraction> {
    Ok(global_closed_form(p, Side::Morse, exec)?
        .eval_b(&Scalar::from_int(-1))
        .reduce())
}

/// Global series on one side: per-point expansions summed, in `ξ` for the
/// Morse side and `-ξ` for the dual side.
pub fn global_series(p: &FixedPointProblem, side: Side, cutoff: Rat, exec: Execution) -> Result<ChamberSeries> {
    let c = side_chamber(p, side);
    let parts = exec::try_map(exec, &p.fixed_points, |fp| {
        chamber_expand(&local_contribution(p, fp, side)?, &c, cutoff)
    })?;
    parts
        .iter()
        .try_fold(ChamberSeries::zero(c.clone(), cutoff), |acc, s| acc.add(s))
}

fn require_nonneg_int(c: &Scalar, e: &Exponent, b: u32, y: u32) -> Result<i64> {
    match c.as_integer() {
        Some(n) if n >= 0 => Ok(n),
        _ => Err(Error::NotNonnegativeInteger {
            coeff: c.to_string(),
            at: format!("b^{b} y^{y} {}", fmt_monomial(e)),
        }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalReport {
    pub poly: GradedLaurentPoly,
    pub stable: bool,
    pub cutoff: Rat,
}

fn classical_at(p: &FixedPointProblem, cutoff: Rat, exec: Execution) -> Result<GradedLaurentPoly> {
    let m = global_series(p, Side::Morse, cutoff, exec)?;
    let d = global_series(p, Side::Dual, cutoff, exec)?;
    let c = &p.chamber;
    let in_window = |e: &Exponent| c.pairing(e).abs() <= cutoff;
    let mut keys: BTreeSet<(Exponent, u32, u32)> = BTreeSet::new();
    for s in [&m, &d] {
        for (b, y, e, coeff) in s.terms().flat_terms() {
            if in_window(e) {
                require_nonneg_int(coeff, e, b, y)?;
                keys.insert((e.clone(), b, y));
            }
        }
    }
    let mut out = GradedLaurentPoly::zero(p.rank);
    for (e, b, y) in keys {
        let cm = m.terms().get(&e, b, y).as_integer().unwrap_or(0);
        let cd = d.terms().get(&e, b, y).as_integer().unwrap_or(0);
        out.add_term(e, b, y, &Scalar::from_int(cm.min(cd)));
    }
    Ok(out)
}

/// Termwise minimum of Morse and dual coefficients on `|⟨ξ,·⟩| ≤ T`, with a
/// stability flag comparing against the window-`T` part of the `2T` result.
pub fn classical_morse(p: &FixedPointProblem, cutoff: Rat, exec: Execution) -> Result<ClassicalReport> {
    let poly = classical_at(p, cutoff, exec)?;
    let wide = classical_at(p, cutoff * Rat::from_integer(2), exec)?;
    let c = &p.chamber;
    let wide = wide.filter(|_, _, e| c.pairing(e).abs() <= cutoff);
    Ok(ClassicalReport { stable: wide == poly, poly, cutoff })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    /// Nonzero `Q` entries keyed by `(μ, y-degree, q)`.
    pub q: BTreeMap<(Exponent, u32, u32), Scalar>,
    pub holds: bool,
}

/// Solve `M_q - P_q = Q_q + Q_{q-1}` degree by degree and check the top
/// relation `M_n - P_n = Q_{n-1}` at every exponent in the window.
pub fn verify_inequality(series: &ChamberSeries, poincare: &GradedLaurentPoly, n: u32) -> Result<InequalityReport> {
    let cutoff = series.cutoff();
    let p = poincare.filter(|_, _, e| series.level(e) <= cutoff);
    let mut keys: BTreeSet<(Exponent, u32)> = BTreeSet::new();
    for (_, y, e, _) in series.terms().flat_terms().chain(p.flat_terms()) {
        keys.insert((e.clone(), y));
    }
    let mut q = BTreeMap::new();
    let mut holds = true;
    for (e, y) in keys {
        let mut prev = Scalar::zero();
        for deg in 0..=n {
            let diff = series.terms().get(&e, deg, y) - p.get(&e, deg, y);
            if deg == n {
                if diff != prev {
                    return Err(Error::InconsistentTop {
                        at: format!("y^{y} {}", fmt_monomial(&e)),
                        lhs: diff.to_string(),
                        rhs: prev.to_string(),
                    });
                }
                break;
            }
            let cur = diff - &prev;
            if !matches!(cur.as_integer(), Some(v) if v >= 0) {
                holds = false;
            }
            if !cur.is_zero() {
                q.insert((e.clone(), y, deg), cur.clone());
            }
            prev = cur;
        }
    }
    Ok(InequalityReport { q, holds })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LacunaryVerdict {
    pub equals_poincare: bool,
    pub poincare: Option<GradedLaurentPoly>,
}

/// No two adjacent b-degrees at any `(μ, y)` means the polynomial is the
/// Poincaré polynomial.
pub fn lacunary_conclusion(classical: &GradedLaurentPoly) -> Result<LacunaryVerdict> {
    let mut degrees: BTreeMap<(&Exponent, u32), BTreeSet<u32>> = BTreeMap::new();
    for (b, y, e, c) in classical.flat_terms() {
        require_nonneg_int(c, e, b, y)?;
        degrees.entry((e, y)).or_default().insert(b);
    }
    let adjacent = degrees
        .values()
        .any(|set| set.iter().any(|q| set.contains(&(q + 1))));
    Ok(if adjacent {
        LacunaryVerdict { equals_poincare: false, poincare: None }
    } else {
        LacunaryVerdict { equals_poincare: true, poincare: Some(classical.clone()) }
    })
}

/// True iff the classical Morse polynomial vanishes and is stable at `T`.
pub fn check_vanishing(p: &FixedPointProblem, cutoff: Rat, exec: Execution) -> Result<bool> {
    let r = classical_morse(p, cutoff, exec)?;
    Ok(r.poly.is_zero() && r.stable)
}

fn oriented(g: &Exponent, c: &Chamber) -> Exponent {
    if c.pairing(g).is_positive() {
        g.clone()
    } else {
        g.neg()
    }
}

/// `Σ_m (λ^{γ_m} + λ^{-γ_m} + k)`.
pub fn rs_sum(weights: &[Exponent], k: i64) -> GradedLaurentPoly {
    let r = weights.first().map(Exponent::rank).unwrap_or(1);
    let mut s = GradedLaurentPoly::zero(r);
    for g in weights {
        s.add_term(g.clone(), 0, 0, &Scalar::one());
        s.add_term(g.neg(), 0, 0, &Scalar::one());
        s.add_term(Exponent::zero(r), 0, 0, &Scalar::from_int(k));
    }
    s
}

/// Square-root canonical twist `∏ λ^{γ_j/2}`.
pub fn half_twist(weights: &[Exponent]) -> Exponent {
    let r = weights.first().map(Exponent::rank).unwrap_or(1);
    weights
        .iter()
        .fold(Exponent::zero(r), |acc, g| acc.add(&g.scale(Rat::new(1, 2))))
}

/// Bundle trace of `(TX ⊕ k) ⊗ K^{1/2}` at a smooth point.
pub fn rs_bundle(weights: &[Exponent], k: i64) -> GradedLaurentPoly {
    rs_sum(weights, k).shift(&half_twist(weights))
}

/// `b^{n_a} ∏ λ^{|γ|/2}/(1 - λ^{|γ|}) · Σ_m (λ^{γ_m} + λ^{-γ_m} + k)` with
/// `|γ|` the chamber-positive orientation.
pub fn rs_contribution(fp: &FixedPoint, k: i64, c: &Chamber) -> Result<CharFraction> {
    if let Some(f) = &fp.contribution {
        return Ok(f.clone());
    }
    if fp.weights.is_empty() {
        return Err(Error::SingularPoint(fp.name.clone()));
    }
    c.check_generic(&fp.weights)?;
    let abs: Vec<Exponent> = fp.weights.iter().map(|g| oriented(g, c)).collect();
    let num = rs_sum(&fp.weights, k)
        .shift(&half_twist(&abs))
        .shift_grading(fp.morse_index(c), 0);
    CharFraction::new(num, abs)
}

/// The problem with every smooth point twisted by `(TX ⊕ k) ⊗ K^{1/2}`.
pub fn rs_problem(p: &FixedPointProblem, k: i64) -> FixedPointProblem {
    twisted_problem(p, |w| rs_bundle(w, k))
}

/// The problem with every smooth point twisted by `K^{1/2}`.
pub fn spin_problem(p: &FixedPointProblem) -> FixedPointProblem {
    twisted_problem(p, |w| GradedLaurentPoly::monomial(half_twist(w), Scalar::one()))
}

fn twisted_problem<F>(p: &FixedPointProblem, twist: F) -> FixedPointProblem
where
    F: Fn(&[Exponent]) -> GradedLaurentPoly,
{
    let mut q = p.clone();
    for fp in &mut q.fixed_points {
        if fp.is_smooth() {
            fp.bundle = Some(twist(&fp.weights));
        }
    }
    q.root_order = q.required_root_order();
    q
}

fn embed(e: &Exponent, offset: usize, rank: usize) -> Exponent {
    let mut v = vec![Rat::zero(); rank];
    v[offset..offset + e.rank()].copy_from_slice(e.coords());
    Exponent::new(v)
}

fn embed_frac(f: &CharFraction, offset: usize, rank: usize) -> CharFraction {
    let num = GradedLaurentPoly::from_terms(
        rank,
        f.numerator()
            .flat_terms()
            .map(|(b, y, e, c)| (b, y, embed(e, offset, rank), c.clone())),
    );
    let den = f.denominator().iter().map(|u| embed(u, offset, rank)).collect();
    CharFraction::new(num, den).expect("embedding keeps factors nonzero")
}

fn at_minus_one(f: &CharFraction) -> CharFraction {
    f.eval_b(&Scalar::from_int(-1))
}

fn require_smooth(p: &FixedPointProblem) -> Result<()> {
    for fp in &p.fixed_points {
        if !fp.is_smooth() {
            return Err(Error::MissingWeights(fp.name.clone()));
        }
    }
    Ok(())
}

fn index_sum<F>(p: &FixedPointProblem, local: F) -> Result<CharFraction>
where
    F: Fn(&FixedPoint) -> Result<CharFraction>,
{
    p.fixed_points
        .iter()
        .try_fold(CharFraction::zero(p.rank), |acc, fp| acc.try_add(&at_minus_one(&local(fp)?)))
}

/// Product of two smooth problems on disjoint variable blocks.
pub fn product_problem(p1: &FixedPointProblem, p2: &FixedPointProblem) -> Result<FixedPointProblem> {
    require_smooth(p1)?;
    require_smooth(p2)?;
    let r = p1.rank + p2.rank;
    let mut xi = p1.chamber.xi().to_vec();
    xi.extend_from_slice(p2.chamber.xi());
    let mut pts = Vec::new();
    for a in &p1.fixed_points {
        for b in &p2.fixed_points {
            let mut w: Vec<Exponent> = a.weights.iter().map(|g| embed(g, 0, r)).collect();
            w.extend(b.weights.iter().map(|g| embed(g, p1.rank, r)));
            pts.push(FixedPoint::smooth(format!("{}×{}", a.name, b.name), w));
        }
    }
    Ok(FixedPointProblem::new(r, p1.dim + p2.dim, Chamber::new(xi), pts))
}

/// Equivariant k-RS index at `b = -1`.
pub fn rs_index(p: &FixedPointProblem, k: i64) -> Result<CharFraction> {
    require_smooth(p)?;
    index_sum(p, |fp| rs_contribution(fp, k, &p.chamber))
}

/// Equivariant spin-Dirac index at `b = -1`.
pub fn spin_index(p: &FixedPointProblem) -> Result<CharFraction> {
    require_smooth(p)?;
    let s = spin_problem(p);
    index_sum(&s, |fp| smooth_contribution(fp, &s.chamber))
}

/// `RS(X₁×X₂) = RS(X₁)S(X₂) + RS(X₂)S(X₁) - k·S(X₁×X₂)` as characters.
pub fn rs_product_check(p1: &FixedPointProblem, p2: &FixedPointProblem, k: i64) -> Result<bool> {
    let prod = product_problem(p1, p2)?;
    let r = prod.rank;
    let (rs1, s1) = (embed_frac(&rs_index(p1, k)?, 0, r), embed_frac(&spin_index(p1)?, 0, r));
    let (rs2, s2) = (embed_frac(&rs_index(p2, k)?, p1.rank, r), embed_frac(&spin_index(p2)?, p1.rank, r));
    let lhs = rs_index(&prod, k)?;
    let rhs = rs1
        .try_mul(&s2)?
        .try_add(&rs2.try_mul(&s1)?)?
        .try_sub(&spin_index(&prod)?.scale(&Scalar::from_int(k)))?;
    Ok(lhs.equals(&rhs))
}

/// `Σ_m L_m` where `L_m` counts `l ∈ ℕⁿ` with
/// `Σ|γ_j| - 2|γ_m| + Σ l_j |γ_j| ≤ 0`; `|γ|` is the chamber pairing magnitude.
pub fn rs_kernel_bound(weights: &[Exponent], c: &Chamber) -> Result<u64> {
    let mut w = Vec::with_capacity(weights.len());
    for g in weights {
        let v = c.pairing(g).abs();
        if !v.is_integer() || v.is_zero() {
            return Err(Error::Precondition(format!(
                "weight magnitude {} is not a positive integer",
                crate::algebra::fmt_rat(&v)
            )));
        }
        w.push(v.to_integer());
    }
    fn count(w: &[i64], budget: i64) -> u64 {
        match w.split_first() {
            None => 1,
            Some((&first, rest)) => (0..=budget / first).map(|l| count(rest, budget - l * first)).sum(),
        }
    }
    let total: i64 = w.iter().sum();
    Ok(w.iter()
        .map(|&wm| {
            let budget = 2 * wm - total;
            if budget < 0 {
                0
            } else {
                count(&w, budget)
            }
        })
        .sum())
}

/// Local χ_{y,b} datum: the exponent-zero part of the chamber expansion.
pub fn local_chi(p: &FixedPointProblem, fp: &FixedPoint) -> Result<GradedLaurentPoly> {
    let f = smooth_contribution(fp, &p.chamber)?;
    let s = chamber_expand(&f, &p.chamber, Rat::zero())?;
    let zero = Exponent::zero(p.rank);
    Ok(s.terms().filter(|_, _, e| *e == zero))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiReport {
    pub global: GradedLaurentPoly,
    pub local: Vec<(String, GradedLaurentPoly)>,
}

/// Split bundle traces and explicit contributions by y-degree, one problem per `p`.
pub fn split_by_y(p: &FixedPointProblem) -> BTreeMap<u32, FixedPointProblem> {
    let mut degrees = BTreeSet::new();
    for fp in &p.fixed_points {
        if let Some(b) = &fp.bundle {
            degrees.extend(b.y_degrees());
        }
        if let Some(c) = &fp.contribution {
            degrees.extend(c.numerator().y_degrees());
        }
    }
    if degrees.is_empty() {
        degrees.insert(0);
    }
    degrees
        .into_iter()
        .map(|d| {
            let mut q = p.clone();
            for fp in &mut q.fixed_points {
                fp.bundle = fp.bundle.as_ref().map(|b| b.y_part(d).drop_y());
                if let Some(c) = &fp.contribution {
                    fp.contribution = Some(c.y_part(d).drop_y());
                } else if fp.bundle.is_none() && d != 0 {
                    fp.bundle = Some(GradedLaurentPoly::zero(p.rank));
                }
                fp.dual_contribution = None;
            }
            (d, q)
        })
        .collect()
}

/// `Σ_p y^p` times the local χ data of each per-`p` problem.
pub fn chi_yb_assemble(parts: &BTreeMap<u32, FixedPointProblem>) -> Result<ChiReport> {
    let first = parts
        .values()
        .next()
        .ok_or_else(|| Error::Precondition("no per-p problems".into()))?;
    let mut local: BTreeMap<String, GradedLaurentPoly> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for (&deg, q) in parts {
        if q.rank != first.rank || q.dim != first.dim || q.chamber != first.chamber {
            return Err(Error::Precondition(format!("part y^{deg} disagrees in rank, dimension or chamber")));
        }
        for fp in &q.fixed_points {
            let chi = local_chi(q, fp)?.shift_grading(0, deg);
            if !local.contains_key(&fp.name) {
                order.push(fp.name.clone());
            }
            let slot = local.entry(fp.name.clone()).or_insert_with(|| GradedLaurentPoly::zero(q.rank));
            *slot = &*slot + &chi;
        }
    }
    let global = local
        .values()
        .fold(GradedLaurentPoly::zero(first.rank), |acc, c| &acc + c);
    let local = order.into_iter().map(|n| {
        let c = local[&n].clone();
        (n, c)
    });
    Ok(ChiReport { global, local: local.collect() })
}

/// `χ(b, y, λ) = (by)^n χ(b⁻¹, y⁻¹, λ⁻¹)`.
pub fn chi_duality_check(chi: &GradedLaurentPoly, n: u32) -> bool {
    let Ok(r) = chi.reflect_b(n).and_then(|c| c.reflect_y(n)) else {
        return false;
    };
    r.invert_variables() == *chi
}

#[derive(Clone, Debug, PartialEq)]
pub struct SerreReport {
    /// Points carrying a canonical trace, given or implied by trivial bundle data.
    pub checked: Vec<String>,
    pub holds: bool,
}

fn canonical_trace(fp: &FixedPoint) -> Option<Exponent> {
    if let Some(k) = &fp.canonical {
        return Some(k.clone());
    }
    (fp.is_smooth() && fp.bundle.is_none() && fp.dual_contribution.is_none())
        .then(|| fp.weights.iter().fold(Exponent::zero(fp.weights[0].rank()), |acc, g| acc.sub(g)))
}

/// Pointwise series form of Serre duality: `κ · b^n D(b⁻¹, λ⁻¹)` with `D`
/// expanded in `-ξ` agrees with the Morse expansion in `ξ` on the common window.
pub fn serre_series_check(p: &FixedPointProblem, cutoff: Rat, exec: Execution) -> Result<SerreReport> {
    let c = &p.chamber;
    let results = exec::try_map(exec, &p.fixed_points, |fp| {
        let Some(kappa) = canonical_trace(fp) else {
            return Ok::<_, Error>(None);
        };
        let m = smooth_contribution(fp, c)?;
        let d = dual_contribution(&m, fp, c, p.dim)?;
        let ms = chamber_expand(&m, c, cutoff)?;
        let ds = chamber_expand(&d, &c.opposite(), cutoff)?;
        let back = ds.terms().reflect_b(p.dim)?.invert_variables().shift(&kappa);
        let window = cutoff.min(cutoff + c.pairing(&kappa));
        let keep = |_: u32, _: u32, e: &Exponent| c.pairing(e) <= window;
        Ok(Some((fp.name.clone(), back.filter(keep) == ms.terms().filter(keep))))
    })?;
    let results: Vec<(String, bool)> = results.into_iter().flatten().collect();
    Ok(SerreReport {
        holds: results.iter().all(|(_, ok)| *ok),
        checked: results.into_iter().map(|(n, _)| n).collect(),
    })
}
