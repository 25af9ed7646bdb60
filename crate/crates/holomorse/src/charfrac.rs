//! Character fractions `N / ∏(1 - λ^u)` and their chamber expansions.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use crate::algebra::{fmt_monomial, Exponent, GradedCoeff, GradedLaurentPoly, Rat, Scalar};
use crate::error::{Error, Result};

/// A numerator over a multiset of factors `(1 - λ^u)`.
///
/// Always canonical: every `u` has a positive leading coordinate and the
/// factor list is sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CharFraction {
    num: GradedLaurentPoly,
    den: Vec<Exponent>,
}

fn one_minus(u: &Exponent) -> GradedLaurentPoly {
    let r = u.rank();
    &GradedLaurentPoly::one(r) - &GradedLaurentPoly::monomial(u.clone(), Scalar::one())
}

fn multiplicities(den: &[Exponent]) -> BTreeMap<&Exponent, usize> {
    let mut m = BTreeMap::new();
    for u in den {
        *m.entry(u).or_insert(0) += 1;
    }
    m
}

impl CharFraction {
    /// Builds and canonicalizes `num / ∏(1 - λ^u)`.
    pub fn new(num: GradedLaurentPoly, den: Vec<Exponent>) -> Result<Self> {
        let rank = num.rank();
        let mut num = num;
        let mut out = Vec::with_capacity(den.len());
        for u in den {
            if u.rank() != rank {
                return Err(Error::RankMismatch { left: rank, right: u.rank() });
            }
            match u.leading_sign() {
                0 => return Err(Error::ZeroDenominator),
                1 => out.push(u),
                _ => {
                    // 1/(1 - λ^u) = -λ^{-u} / (1 - λ^{-u})
                    let v = u.neg();
                    num = num.shift(&v).scale(&Scalar::from_int(-1));
                    out.push(v);
                }
            }
        }
        out.sort();
        Ok(CharFraction { num, den: out })
    }

    pub fn poly(num: GradedLaurentPoly) -> Self {
        CharFraction { num, den: Vec::new() }
    }

    pub fn zero(rank: usize) -> Self {
        Self::poly(GradedLaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::poly(GradedLaurentPoly::one(rank))
    }

    /// `1 / (1 - λ^u)`.
    pub fn geometric(u: Exponent) -> Result<Self> {
        let r = u.rank();
        Self::new(GradedLaurentPoly::one(r), vec![u])
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &GradedLaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &[Exponent] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerators of `self` and `other` lifted to the union denominator.
    fn common(&self, other: &Self) -> Result<(GradedLaurentPoly, GradedLaurentPoly, Vec<Exponent>)> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        let (ma, mb) = (multiplicities(&self.den), multiplicities(&other.den));
        let mut na = self.num.clone();
        let mut nb = other.num.clone();
        let mut den = Vec::new();
        let keys: std::collections::BTreeSet<&Exponent> = ma.keys().chain(mb.keys()).copied().collect();
        for u in keys {
            let (a, b) = (ma.get(u).copied().unwrap_or(0), mb.get(u).copied().unwrap_or(0));
            let top = a.max(b);
            let f = one_minus(u);
            for _ in a..top {
                na = &na * &f;
            }
            for _ in b..top {
                nb = &nb * &f;
            }
            den.extend(std::iter::repeat_n(u.clone(), top));
        }
        Ok((na, nb, den))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (na, nb, den) = self.common(other)?;
        let num = &na + &nb;
        if num.is_zero() {
            return Ok(Self::zero(self.rank()));
        }
        Ok(CharFraction { num, den })
    }

    pub fn neg(&self) -> Self {
        CharFraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let num = self.num.try_mul(&other.num)?;
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        den.sort();
        Ok(CharFraction { num, den })
    }

    pub fn mul_poly(&self, p: &GradedLaurentPoly) -> Result<Self> {
        Ok(CharFraction { num: self.num.try_mul(p)?, den: self.den.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        CharFraction { num: self.num.scale(s), den: self.den.clone() }
    }

    /// Multiply by the monomial `λ^e`.
    pub fn shift(&self, e: &Exponent) -> Self {
        CharFraction { num: self.num.shift(e), den: self.den.clone() }
    }

    pub fn shift_grading(&self, db: u32, dy: u32) -> Self {
        CharFraction { num: self.num.shift_grading(db, dy), den: self.den.clone() }
    }

    pub fn reflect_b(&self, n: u32) -> Result<Self> {
        Ok(CharFraction { num: self.num.reflect_b(n)?, den: self.den.clone() })
    }

    pub fn eval_grading(&self, b: &Scalar, y: &Scalar) -> Self {
        CharFraction { num: self.num.eval_grading(b, y), den: self.den.clone() }
    }

    pub fn eval_b(&self, b: &Scalar) -> Self {
        CharFraction { num: self.num.eval_b(b), den: self.den.clone() }
    }

    pub fn drop_y(&self) -> Self {
        CharFraction { num: self.num.drop_y(), den: self.den.clone() }
    }

    pub fn b_part(&self, q: u32) -> Self {
        CharFraction { num: self.num.b_part(q), den: self.den.clone() }
    }

    pub fn y_part(&self, p: u32) -> Self {
        CharFraction { num: self.num.y_part(p), den: self.den.clone() }
    }

    /// Split by b-degree, each part reduced and stripped of its `b^q`.
    pub fn by_degree(&self) -> Vec<(u32, CharFraction)> {
        self.num
            .b_degrees()
            .into_iter()
            .map(|q| {
                let part = CharFraction { num: self.num.b_part(q).drop_b(), den: self.den.clone() };
                (q, part.reduce())
            })
            .collect()
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((na, nb, _)) => na == nb,
            Err(_) => false,
        }
    }

    /// `λ ↦ λ^{-1}` in numerator and every factor, then canonicalized.
    pub fn invert_vars(&self) -> Self {
        let den = self.den.iter().map(Exponent::neg).collect();
        CharFraction::new(self.num.invert_variables(), den).expect("inversion keeps factors nonzero")
    }

    /// Cancel every denominator factor that divides the numerator exactly.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.rank());
        }
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for u in &self.den {
            match divide_one_minus(&num, u) {
                Some(q) => num = q,
                None => den.push(u.clone()),
            }
        }
        CharFraction { num, den }
    }

    /// Laurent polynomial value, if the fraction reduces to one.
    pub fn as_poly(&self) -> Option<GradedLaurentPoly> {
        let r = self.reduce();
        r.den.is_empty().then_some(r.num)
    }
}

/// Exact quotient `p / (1 - λ^u)` if it exists.
///
/// Terms are grouped into classes modulo `ℤu`; within a class `p` is a
/// Laurent polynomial in `x = λ^u`, divisible iff its value at `x = 1` is 0.
fn divide_one_minus(p: &GradedLaurentPoly, u: &Exponent) -> Option<GradedLaurentPoly> {
    let i = u.coords().iter().position(|c| !c.is_zero())?;
    let ui = u.coords()[i];
    let mut classes: BTreeMap<Exponent, BTreeMap<i64, GradedCoeff>> = BTreeMap::new();
    for (e, g) in p.iter() {
        let k = (e.coords()[i] / ui).floor().to_integer();
        let base = e.sub(&u.scale(Rat::from_integer(k)));
        classes.entry(base).or_default().insert(k, g.clone());
    }
    let mut out = GradedLaurentPoly::zero(p.rank());
    for (base, series) in classes {
        let lo = *series.keys().next()?;
        let hi = *series.keys().next_back()?;
        let mut run = GradedCoeff::zero();
        for k in lo..=hi {
            if let Some(a) = series.get(&k) {
                run.add_assign(a);
            }
            if k < hi {
                out.add_graded(&base.add(&u.scale(Rat::from_integer(k))), &run);
            }
        }
        if !run.is_zero() {
            return None;
        }
    }
    Some(out)
}

pub fn canonicalize(num: GradedLaurentPoly, den: Vec<Exponent>) -> Result<CharFraction> {
    CharFraction::new(num, den)
}

pub fn frac_add(f: &CharFraction, g: &CharFraction) -> Result<CharFraction> {
    f.try_add(g)
}

pub fn frac_equals(f: &CharFraction, g: &CharFraction) -> bool {
    f.equals(g)
}

pub fn frac_invert_vars(f: &CharFraction) -> CharFraction {
    f.invert_vars()
}

fn fmt_factor(u: &Exponent) -> String {
    format!("(1 - {})", fmt_monomial(u))
}

impl fmt::Display for CharFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: String = self.den.iter().map(fmt_factor).collect();
        if self.num.len() == 1 {
            write!(f, "{} / {}", self.num, den)
        } else {
            write!(f, "({}) / {}", self.num, den)
        }
    }
}

/// A generic linear functional selecting the expansion regime.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chamber {
    xi: Vec<Rat>,
}

impl Chamber {
    pub fn new(xi: Vec<Rat>) -> Self {
        Chamber { xi }
    }

    pub fn from_ints(xi: &[i64]) -> Self {
        Chamber { xi: xi.iter().map(|&c| Rat::from_integer(c)).collect() }
    }

    pub fn xi(&self) -> &[Rat] {
        &self.xi
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }

    pub fn pairing(&self, e: &Exponent) -> Rat {
        e.dot(&self.xi)
    }

    pub fn opposite(&self) -> Chamber {
        Chamber { xi: self.xi.iter().map(|c| -c).collect() }
    }

    pub fn scaled(&self, c: Rat) -> Chamber {
        Chamber { xi: self.xi.iter().map(|x| x * c).collect() }
    }

    pub fn check_generic<'a, I>(&self, exps: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Exponent>,
    {
        for u in exps {
            if u.rank() != self.rank() {
                return Err(Error::RankMismatch { left: self.rank(), right: u.rank() });
            }
            if self.pairing(u).is_zero() {
                return Err(Error::NonGenericChamber { exponent: fmt_monomial(u) });
            }
        }
        Ok(())
    }
}

/// Truncated expansion: only terms with `⟨xi, e⟩ ≤ cutoff` are kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChamberSeries {
    chamber: Chamber,
    cutoff: Rat,
    terms: GradedLaurentPoly,
}

impl ChamberSeries {
    pub fn new(chamber: Chamber, cutoff: Rat, terms: GradedLaurentPoly) -> Self {
        let terms = terms.filter(|_, _, e| chamber.pairing(e) <= cutoff);
        ChamberSeries { chamber, cutoff, terms }
    }

    pub fn zero(chamber: Chamber, cutoff: Rat) -> Self {
        let r = chamber.rank();
        ChamberSeries { chamber, cutoff, terms: GradedLaurentPoly::zero(r) }
    }

    pub fn chamber(&self) -> &Chamber {
        &self.chamber
    }

    pub fn cutoff(&self) -> Rat {
        self.cutoff
    }

    pub fn terms(&self) -> &GradedLaurentPoly {
        &self.terms
    }

    pub fn into_terms(self) -> GradedLaurentPoly {
        self.terms
    }

    pub fn level(&self, e: &Exponent) -> Rat {
        self.chamber.pairing(e)
    }

    pub fn truncate(&self, cutoff: Rat) -> Self {
        Self::new(self.chamber.clone(), cutoff, self.terms.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let t = self.cutoff.min(other.cutoff);
        Ok(Self::new(self.chamber.clone(), t, self.terms.try_add(&other.terms)?))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let t = self.cutoff.min(other.cutoff);
        Ok(Self::new(self.chamber.clone(), t, self.terms.try_mul(&other.terms)?))
    }
}

/// Expand `f` in the chamber `c`, keeping terms with `⟨xi, ·⟩ ≤ cutoff`.
pub fn chamber_expand(f: &CharFraction, c: &Chamber, cutoff: Rat) -> Result<ChamberSeries> {
    c.check_generic(f.denominator())?;
    if f.rank() != c.rank() {
        return Err(Error::RankMismatch { left: f.rank(), right: c.rank() });
    }
    let mut cur: BTreeMap<Exponent, GradedCoeff> = f
        .numerator()
        .iter()
        .filter(|(e, _)| c.pairing(e) <= cutoff)
        .map(|(e, g)| (e.clone(), g.clone()))
        .collect();
    for u in f.denominator() {
        if cur.is_empty() {
            break;
        }
        let s = c.pairing(u);
        let (step, start, sign) = if s.is_positive() { (u.clone(), 0, 1) } else { (u.neg(), 1, -1) };
        let width = s.abs();
        let mut next: BTreeMap<Exponent, GradedCoeff> = BTreeMap::new();
        for (e, g) in &cur {
            let room = cutoff - c.pairing(e);
            let kmax = (room / width).floor().to_integer();
            let g = if sign < 0 { g.scale(&Scalar::from_int(-1)) } else { g.clone() };
            for k in start..=kmax {
                let at = e.add(&step.scale(Rat::from_integer(k)));
                next.entry(at).or_default().add_assign(&g);
            }
        }
        next.retain(|_, g| !g.is_zero());
        cur = next;
    }
    let mut terms = GradedLaurentPoly::zero(f.rank());
    for (e, g) in &cur {
        terms.add_graded(e, g);
    }
    Ok(ChamberSeries { chamber: c.clone(), cutoff, terms })
}
