//! JSON problem files: parsing, validation and emission.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{fmt_rat, parse_rat, Exponent, GradedLaurentPoly, Rat, Scalar};
use crate::charfrac::{Chamber, CharFraction};
use crate::error::{Error, Result};
use crate::localization::{FixedPoint, FixedPointProblem};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    fn value(&self, path: &str) -> Result<Rat> {
        match self {
            RatJson::Int(n) => Ok(Rat::from_integer(*n)),
            RatJson::Str(s) => parse_rat(s).map_err(|e| schema(path, e)),
        }
    }

    fn from_rat(r: &Rat) -> Self {
        RatJson::Str(fmt_rat(r))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "is_zero")]
    pub b: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub y: u32,
    pub exp: Vec<RatJson>,
    #[serde(default = "one_str")]
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ContribJson {
    #[serde(default, skip_serializing_if = "is_zero")]
    pub b: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub y: u32,
    pub numerator: Vec<TermJson>,
    #[serde(default)]
    pub denominator: Vec<Vec<RatJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FixedPointJson {
    pub name: String,
    #[serde(default)]
    pub weights: Vec<Vec<RatJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contribution: Option<Vec<ContribJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_contribution: Option<Vec<ContribJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<RatJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi1: Option<Vec<ContribJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PartJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub problem: ProblemJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub rank: usize,
    pub dim: u32,
    #[serde(default = "one_i64")]
    pub root_order: i64,
    pub chamber: Vec<RatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poincare: Option<Vec<TermJson>>,
    #[serde(default)]
    pub fixed_points: Vec<FixedPointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<RatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_weights: Option<Vec<RatJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Vec<ContribJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<PartJson>>,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

fn one_str() -> String {
    "1".into()
}

fn one_i64() -> i64 {
    1
}

fn schema(path: &str, e: impl std::fmt::Display) -> Error {
    Error::Schema { path: path.into(), msg: e.to_string() }
}

/// Task metadata carried alongside a problem.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Task {
    pub command: Option<String>,
    pub cutoff: Option<Rat>,
    pub k: Option<i64>,
    pub theta_weights: Option<Vec<Rat>>,
    pub signature: Option<Scalar>,
    pub expect: Option<CharFraction>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Part {
    pub label: String,
    pub p: Option<u32>,
    pub file: ProblemFile,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub problem: FixedPointProblem,
    pub task: Task,
    pub parts: Vec<Part>,
}

fn exponent(v: &[RatJson], rank: usize, path: &str) -> Result<Exponent> {
    if v.len() != rank {
        return Err(schema(path, format!("exponent has length {}, rank is {rank}", v.len())));
    }
    let coords = v
        .iter()
        .enumerate()
        .map(|(i, r)| r.value(&format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Exponent::new(coords))
}

fn poly(terms: &[TermJson], rank: usize, path: &str) -> Result<GradedLaurentPoly> {
    let mut p = GradedLaurentPoly::zero(rank);
    for (i, t) in terms.iter().enumerate() {
        let at = format!("{path}[{i}]");
        let e = exponent(&t.exp, rank, &format!("{at}.exp"))?;
        let c: Scalar = t.coeff.parse().map_err(|e| schema(&format!("{at}.coeff"), e))?;
        p.add_term(e, t.b, t.y, &c);
    }
    Ok(p)
}

fn contribution(cs: &[ContribJson], rank: usize, path: &str) -> Result<CharFraction> {
    let mut acc: Option<CharFraction> = None;
    for (i, c) in cs.iter().enumerate() {
        let at = format!("{path}[{i}]");
        let num = poly(&c.numerator, rank, &format!("{at}.numerator"))?.shift_grading(c.b, c.y);
        let den = c
            .denominator
            .iter()
            .enumerate()
            .map(|(j, u)| exponent(u, rank, &format!("{at}.denominator[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let f = CharFraction::new(num, den).map_err(|e| schema(&at, e))?;
        acc = Some(match acc {
            None => f,
            Some(a) => a.try_add(&f)?,
        });
    }
    Ok(acc.unwrap_or_else(|| CharFraction::zero(rank)))
}

fn convert(j: &ProblemJson, path: &str) -> Result<ProblemFile> {
    let rank = j.rank;
    let chamber = Chamber::new(
        j.chamber
            .iter()
            .enumerate()
            .map(|(i, r)| r.value(&format!("{path}chamber[{i}]")))
            .collect::<Result<_>>()?,
    );
    if chamber.rank() != rank {
        return Err(schema(&format!("{path}chamber"), format!("length {}, rank is {rank}", chamber.rank())));
    }
    let mut points = Vec::new();
    for (i, f) in j.fixed_points.iter().enumerate() {
        let at = format!("{path}fixed_points[{i}]");
        let weights = f
            .weights
            .iter()
            .enumerate()
            .map(|(k, w)| exponent(w, rank, &format!("{at}.weights[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let opt = |c: &Option<Vec<ContribJson>>, key: &str| {
            c.as_ref().map(|c| contribution(c, rank, &format!("{at}.{key}"))).transpose()
        };
        points.push(FixedPoint {
            name: f.name.clone(),
            weights,
            bundle: f.bundle.as_ref().map(|b| poly(b, rank, &format!("{at}.bundle"))).transpose()?,
            contribution: opt(&f.contribution, "contribution")?,
            dual_contribution: opt(&f.dual_contribution, "dual_contribution")?,
            canonical: f.canonical.as_ref().map(|k| exponent(k, rank, &format!("{at}.canonical"))).transpose()?,
            chi1: opt(&f.chi1, "chi1")?,
        });
    }
    let problem = FixedPointProblem {
        rank,
        dim: j.dim,
        root_order: j.root_order,
        chamber,
        fixed_points: points,
        poincare: j.poincare.as_ref().map(|p| poly(p, rank, &format!("{path}poincare"))).transpose()?,
    };
    let mut parts = Vec::new();
    for (i, part) in j.parts.iter().flatten().enumerate() {
        let file = convert(&part.problem, &format!("{path}parts[{i}].problem."))?;
        let label = part
            .label
            .clone()
            .or_else(|| part.p.map(|p| format!("p={p}")))
            .unwrap_or_else(|| format!("part {i}"));
        parts.push(Part { label, p: part.p, file });
    }
    if parts.is_empty() || !problem.fixed_points.is_empty() {
        let shown = if path.is_empty() { "problem".to_string() } else { path.trim_end_matches('.').to_string() };
        problem.validate().map_err(|e| schema(&shown, e))?;
    }
    let task = Task {
        command: j.command.clone(),
        cutoff: j.cutoff.as_ref().map(|c| c.value(&format!("{path}cutoff"))).transpose()?,
        k: j.k,
        theta_weights: j
            .theta_weights
            .as_ref()
            .map(|w| {
                w.iter()
                    .enumerate()
                    .map(|(i, r)| r.value(&format!("{path}theta_weights[{i}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?,
        signature: j
            .signature
            .as_ref()
            .map(|s| s.parse().map_err(|e| schema(&format!("{path}signature"), e)))
            .transpose()?,
        expect: j.expect.as_ref().map(|e| contribution(e, rank, &format!("{path}expect"))).transpose()?,
    };
    Ok(ProblemFile { problem, task, parts })
}

pub fn parse_str(text: &str) -> Result<ProblemFile> {
    let j: ProblemJson = serde_json::from_str(text)?;
    convert(&j, "")
}

pub fn parse_problem(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text).map_err(|e| match e {
        Error::Json(j) => Error::Parse(format!("{}: {j}", path.display())),
        other => other,
    })
}

fn exp_json(e: &Exponent) -> Vec<RatJson> {
    e.coords().iter().map(RatJson::from_rat).collect()
}

fn poly_json(p: &GradedLaurentPoly) -> Vec<TermJson> {
    p.sorted_terms()
        .into_iter()
        .map(|(b, y, e, c)| TermJson { b, y, exp: exp_json(e), coeff: c.to_string() })
        .collect()
}

fn frac_json(f: &CharFraction) -> Vec<ContribJson> {
    vec![ContribJson {
        b: 0,
        y: 0,
        numerator: poly_json(f.numerator()),
        denominator: f.denominator().iter().map(exp_json).collect(),
    }]
}

fn emit_json(f: &ProblemFile) -> ProblemJson {
    let p = &f.problem;
    ProblemJson {
        rank: p.rank,
        dim: p.dim,
        root_order: p.root_order,
        chamber: p.chamber.xi().iter().map(RatJson::from_rat).collect(),
        poincare: p.poincare.as_ref().map(poly_json),
        fixed_points: p
            .fixed_points
            .iter()
            .map(|fp| FixedPointJson {
                name: fp.name.clone(),
                weights: fp.weights.iter().map(exp_json).collect(),
                bundle: fp.bundle.as_ref().map(poly_json),
                contribution: fp.contribution.as_ref().map(frac_json),
                dual_contribution: fp.dual_contribution.as_ref().map(frac_json),
                canonical: fp.canonical.as_ref().map(exp_json),
                chi1: fp.chi1.as_ref().map(frac_json),
            })
            .collect(),
        command: f.task.command.clone(),
        cutoff: f.task.cutoff.as_ref().map(RatJson::from_rat),
        k: f.task.k,
        theta_weights: f.task.theta_weights.as_ref().map(|w| w.iter().map(RatJson::from_rat).collect()),
        signature: f.task.signature.as_ref().map(Scalar::to_string),
        expect: f.task.expect.as_ref().map(frac_json),
        parts: (!f.parts.is_empty()).then(|| {
            f.parts
                .iter()
                .map(|part| PartJson {
                    label: Some(part.label.clone()),
                    p: part.p,
                    problem: emit_json(&part.file),
                })
                .collect()
        }),
    }
}

/// Normalized JSON text for a parsed file.
pub fn emit(f: &ProblemFile) -> String {
    serde_json::to_string_pretty(&emit_json(f)).expect("problem JSON always serializes")
}
