//! Exact scalars, rational exponent vectors and graded Laurent polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::integer::Integer;
use num::{BigInt, BigRational, Complex, One, Rational64, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent coordinate type. Exponents stay small, so machine-word rationals suffice.
pub type Rat = Rational64;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_big(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_big(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Gaussian rational `re + im·i`, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar(pub Complex<BigRational>);

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar(Complex::new(re, im))
    }

    pub fn zero() -> Self {
        Scalar(Complex::zero())
    }

    pub fn one() -> Self {
        Scalar(Complex::one())
    }

    pub fn i() -> Self {
        Scalar(Complex::i())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::new(
            BigRational::new((*r.numer()).into(), (*r.denom()).into()),
            BigRational::zero(),
        )
    }

    pub fn from_big(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    /// `Some(n)` when the value is a real integer that fits in an `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_real() && self.0.re.is_integer() {
            self.0.re.numer().to_i64()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Scalar(self.0.conj())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.inv()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex approximation, for diagnostics and decimal output only.
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.0.re.to_f64().unwrap_or(f64::NAN),
            self.0.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$m(&rhs.0))
            }
        }
    };
}
scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        let imag = |im: &BigRational| -> String {
            if im.is_one() {
                "i".into()
            } else if (-im).is_one() {
                "-i".into()
            } else {
                format!("{}i", fmt_big(im))
            }
        };
        if im.is_zero() {
            write!(f, "{}", fmt_big(re))
        } else if re.is_zero() {
            write!(f, "{}", imag(im))
        } else if im.is_negative() {
            write!(f, "{}{}", fmt_big(re), imag(im))
        } else {
            write!(f, "{}+{}", fmt_big(re), imag(im))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `qi`, `p+qi`, `p/q-r/si`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from_big(parse_big(&s)?));
        };
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re, im) = match split {
            Some(k) => (parse_big(&body[..k])?, &body[k..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_big(t.strip_prefix('+').unwrap_or(t))?,
        };
        Ok(Scalar::new(re, im))
    }
}

/// Character exponent: a rational vector of length equal to the torus rank.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Exponent(Vec<Rat>);

impl Exponent {
    pub fn new(coords: Vec<Rat>) -> Self {
        Exponent(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Exponent(coords.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Exponent(vec![Rat::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut e = Self::zero(rank);
        e.0[i] = Rat::one();
        e
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.rank(), other.rank(), "exponent rank mismatch");
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: Rat) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, xi: &[Rat]) -> Rat {
        assert_eq!(self.rank(), xi.len(), "pairing rank mismatch");
        self.0.iter().zip(xi).map(|(a, b)| a * b).sum()
    }

    /// Sign of the first nonzero coordinate (0 for the zero exponent).
    pub fn leading_sign(&self) -> i32 {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
            None => 0,
        }
    }

    /// Least common multiple of coordinate denominators.
    pub fn root_order(&self) -> i64 {
        self.0.iter().fold(1, |acc, c| acc.lcm(c.denom()))
    }
}

/// Sparse polynomial in the formal gradings `b` and `y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GradedCoeff(BTreeMap<(u32, u32), Scalar>);

impl GradedCoeff {
    pub fn zero() -> Self {
        GradedCoeff(BTreeMap::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(0, 0, c)
    }

    pub fn term(b: u32, y: u32, c: Scalar) -> Self {
        let mut g = Self::zero();
        g.add_term(b, y, &c);
        g
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, b: u32, y: u32) -> Scalar {
        self.0.get(&(b, y)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, b: u32, y: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry((b, y)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&(b, y));
        }
    }

    pub fn add_assign(&mut self, other: &GradedCoeff) {
        for (&(b, y), c) in &other.0 {
            self.add_term(b, y, c);
        }
    }

    pub fn mul(&self, other: &GradedCoeff) -> GradedCoeff {
        let mut out = GradedCoeff::zero();
        for (&(b1, y1), c1) in &self.0 {
            for (&(b2, y2), c2) in &other.0 {
                out.add_term(b1 + b2, y1 + y2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GradedCoeff {
        let mut out = GradedCoeff::zero();
        for (&(b, y), c) in &self.0 {
            out.add_term(b, y, &(c * s));
        }
        out
    }

    pub fn eval(&self, b: &Scalar, y: &Scalar) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, (&(db, dy), c)| {
            acc + c * &b.pow(db) * y.pow(dy)
        })
    }

    pub fn max_b(&self) -> u32 {
        self.0.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_y(&self) -> u32 {
        self.0.keys().map(|k| k.1).max().unwrap_or(0)
    }
}

/// Sparse Laurent polynomial in the torus variables with graded coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedLaurentPoly {
    rank: usize,
    terms: BTreeMap<Exponent, GradedCoeff>,
}

impl GradedLaurentPoly {
    pub fn zero(rank: usize) -> Self {
        GradedLaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Scalar::one())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::monomial(Exponent::zero(rank), c)
    }

    pub fn monomial(e: Exponent, c: Scalar) -> Self {
        Self::graded_monomial(e, 0, 0, c)
    }

    pub fn graded_monomial(e: Exponent, b: u32, y: u32, c: Scalar) -> Self {
        let mut p = Self::zero(e.rank());
        p.add_term(e, b, y, &c);
        p
    }

    /// The formal variable `b`.
    pub fn b(rank: usize) -> Self {
        Self::graded_monomial(Exponent::zero(rank), 1, 0, Scalar::one())
    }

    /// The formal variable `y`.
    pub fn y(rank: usize) -> Self {
        Self::graded_monomial(Exponent::zero(rank), 0, 1, Scalar::one())
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Exponent, Scalar)>,
    {
        let mut p = Self::zero(rank);
        for (b, y, e, c) in terms {
            assert_eq!(e.rank(), rank, "exponent rank mismatch");
            p.add_term(e, b, y, &c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.values().map(|g| g.0.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, e: Exponent, b: u32, y: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                o.get_mut().add_term(b, y, c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(GradedCoeff::term(b, y, c.clone()));
            }
        }
    }

    pub fn add_graded(&mut self, e: &Exponent, g: &GradedCoeff) {
        for (&(b, y), c) in g.iter() {
            self.add_term(e.clone(), b, y, c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &GradedCoeff)> {
        self.terms.iter()
    }

    /// Flat term list `(b, y, exponent, coefficient)`.
    pub fn flat_terms(&self) -> impl Iterator<Item = (u32, u32, &Exponent, &Scalar)> {
        self.terms
            .iter()
            .flat_map(|(e, g)| g.iter().map(move |(&(b, y), c)| (b, y, e, c)))
    }

    /// Terms sorted by b-degree, then y-degree, then exponent.
    pub fn sorted_terms(&self) -> Vec<(u32, u32, &Exponent, &Scalar)> {
        let mut v: Vec<_> = self.flat_terms().collect();
        v.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        v
    }

    pub fn coeff(&self, e: &Exponent) -> GradedCoeff {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn get(&self, e: &Exponent, b: u32, y: u32) -> Scalar {
        self.terms.get(e).map(|g| g.get(b, y)).unwrap_or_default()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, g) in &other.terms {
            out.add_graded(e, g);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut acc: BTreeMap<Exponent, GradedCoeff> = BTreeMap::new();
        for (e1, g1) in &self.terms {
            for (e2, g2) in &other.terms {
                acc.entry(e1.add(e2)).or_default().add_assign(&g1.mul(g2));
            }
        }
        acc.retain(|_, g| !g.is_zero());
        Ok(GradedLaurentPoly { rank: self.rank, terms: acc })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (e, g) in &self.terms {
            let g = g.scale(s);
            if !g.is_zero() {
                terms.insert(e.clone(), g);
            }
        }
        GradedLaurentPoly { rank: self.rank, terms }
    }

    /// Multiply by the monomial `λ^e`.
    pub fn shift(&self, e: &Exponent) -> Self {
        GradedLaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, g)| (k.add(e), g.clone())).collect(),
        }
    }

    /// Multiply by `b^db y^dy`.
    pub fn shift_grading(&self, db: u32, dy: u32) -> Self {
        self.map_grading(|b, y| Some((b + db, y + dy)))
            .expect("shift never drops terms")
    }

    fn map_grading<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(u32, u32) -> Option<(u32, u32)>,
    {
        let mut out = Self::zero(self.rank);
        for (b, y, e, c) in self.flat_terms() {
            let (nb, ny) = f(b, y).ok_or(Error::GradingOutOfRange { degree: b })?;
            out.add_term(e.clone(), nb, ny, c);
        }
        Ok(out)
    }

    /// `b^q ↦ b^{n-q}`; fails when some `q > n`.
    pub fn reflect_b(&self, n: u32) -> Result<Self> {
        self.map_grading(|b, y| (b <= n).then(|| (n - b, y)))
    }

    /// `y^p ↦ y^{n-p}`; fails when some `p > n`.
    pub fn reflect_y(&self, n: u32) -> Result<Self> {
        self.map_grading(|b, y| (y <= n).then(|| (b, n - y)))
    }

    /// Every exponent negated, coefficients untouched.
    pub fn invert_variables(&self) -> Self {
        GradedLaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, g)| (e.neg(), g.clone())).collect(),
        }
    }

    /// Substitute scalar values for `b` and `y`; the result has trivial grading.
    pub fn eval_grading(&self, b: &Scalar, y: &Scalar) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, g) in &self.terms {
            out.add_term(e.clone(), 0, 0, &g.eval(b, y));
        }
        out
    }

    /// Substitute a value for `b` only; `y` grading is kept.
    pub fn eval_b(&self, b: &Scalar) -> Self {
        let mut out = Self::zero(self.rank);
        for (db, y, e, c) in self.flat_terms() {
            out.add_term(e.clone(), 0, y, &(c * &b.pow(db)));
        }
        out
    }

    /// Forget the `y` grading (every `y^p` becomes `y^0`).
    pub fn drop_y(&self) -> Self {
        self.map_grading(|b, _| Some((b, 0))).expect("never drops terms")
    }

    /// Forget the `b` grading.
    pub fn drop_b(&self) -> Self {
        self.map_grading(|_, y| Some((0, y))).expect("never drops terms")
    }

    /// The part of b-degree `q` (grading kept).
    pub fn b_part(&self, q: u32) -> Self {
        self.filter(|b, _, _| b == q)
    }

    /// The part of y-degree `p` (grading kept).
    pub fn y_part(&self, p: u32) -> Self {
        self.filter(|_, y, _| y == p)
    }

    pub fn filter<F>(&self, keep: F) -> Self
    where
        F: Fn(u32, u32, &Exponent) -> bool,
    {
        let mut out = Self::zero(self.rank);
        for (b, y, e, c) in self.flat_terms() {
            if keep(b, y, e) {
                out.add_term(e.clone(), b, y, c);
            }
        }
        out
    }

    pub fn b_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.flat_terms().map(|t| t.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn y_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.flat_terms().map(|t| t.1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn max_b(&self) -> u32 {
        self.terms.values().map(GradedCoeff::max_b).max().unwrap_or(0)
    }

    pub fn root_order(&self) -> i64 {
        self.terms.keys().fold(1, |acc, e| acc.lcm(&e.root_order()))
    }

    /// `Some(c)` when the polynomial is the constant `c` with trivial grading.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, g) = self.terms.iter().next()?;
                if !e.is_zero() || g.0.len() != 1 {
                    return None;
                }
                let (&(b, y), c) = g.iter().next()?;
                (b == 0 && y == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

pub fn poly_add(p: &GradedLaurentPoly, q: &GradedLaurentPoly) -> Result<GradedLaurentPoly> {
    p.try_add(q)
}

pub fn poly_mul(p: &GradedLaurentPoly, q: &GradedLaurentPoly) -> Result<GradedLaurentPoly> {
    p.try_mul(q)
}

pub fn invert_variables(p: &GradedLaurentPoly) -> GradedLaurentPoly {
    p.invert_variables()
}

pub fn eval_grading(p: &GradedLaurentPoly, b: &Scalar, y: &Scalar) -> GradedLaurentPoly {
    p.eval_grading(b, y)
}

impl Add for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn add(self, rhs: Self) -> GradedLaurentPoly {
        self.try_add(rhs).expect("rank mismatch in polynomial addition")
    }
}

impl Sub for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn sub(self, rhs: Self) -> GradedLaurentPoly {
        self.try_add(&-rhs).expect("rank mismatch in polynomial subtraction")
    }
}

impl Mul for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn mul(self, rhs: Self) -> GradedLaurentPoly {
        self.try_mul(rhs).expect("rank mismatch in polynomial multiplication")
    }
}

impl Neg for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn neg(self) -> GradedLaurentPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Display name of torus variable `i` for a rank-`rank` torus.
pub fn var_name(i: usize, rank: usize) -> String {
    const NAMES: [&str; 3] = ["λ", "μ", "ν"];
    if rank <= NAMES.len() {
        NAMES[i].to_string()
    } else {
        format!("λ_{}", i + 1)
    }
}

/// `λ^5 μ^{-1}`; the empty string for the zero exponent.
pub fn fmt_monomial(e: &Exponent) -> String {
    let rank = e.rank();
    let mut parts = Vec::new();
    for (i, c) in e.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = var_name(i, rank);
        if c.is_one() {
            parts.push(v);
        } else if c.is_integer() && c.is_positive() {
            parts.push(format!("{v}^{}", c.numer()));
        } else {
            parts.push(format!("{v}^{{{}}}", fmt_rat(c)));
        }
    }
    parts.join(" ")
}

fn fmt_grading(b: u32, y: u32) -> String {
    let one = |name: &str, d: u32| match d {
        0 => String::new(),
        1 => name.to_string(),
        d => format!("{name}^{d}"),
    };
    [one("b", b), one("y", y)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for GradedLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, y, e, c)) in terms.into_iter().enumerate() {
            let body = [fmt_grading(b, y), fmt_monomial(e)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let negative = if c.re().is_zero() { c.im().is_negative() } else { c.is_real() && c.re().is_negative() };
            let (neg, mag) = if negative {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_one() && !body.is_empty() {
                String::new()
            } else if mag.is_real() || mag.re().is_zero() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let text = match (coeff.is_empty(), body.is_empty()) {
                (true, _) => body,
                (false, true) => coeff,
                (false, false) => format!("{coeff} {body}"),
            };
            match (k, neg) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}
