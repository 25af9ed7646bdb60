//! Command dispatch and report formatting for the `holomorse` binary.

pub mod schema;

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{fmt_monomial, fmt_rat, GradedLaurentPoly, Rat, Scalar};
use crate::charfrac::{ChamberSeries, CharFraction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::localization::{self as loc, FixedPointProblem, InequalityReport, Side};
use crate::oscillator;
use crate::theta;

pub use schema::{emit, parse_problem, parse_str, Part, ProblemFile, Task};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

pub const DEFAULT_CUTOFF: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Lefschetz,
    Morse,
    Dual,
    Classical,
    Verify,
    Vanish,
    Chi,
    Nut,
    Rs,
    Oscillator,
    Emit,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lefschetz" => Command::Lefschetz,
            "morse" => Command::Morse,
            "dual" => Command::Dual,
            "classical" => Command::Classical,
            "verify" => Command::Verify,
            "vanish" => Command::Vanish,
            "chi" => Command::Chi,
            "nut" => Command::Nut,
            "rs" => Command::Rs,
            "oscillator" => Command::Oscillator,
            "emit" => Command::Emit,
            other => return Err(Error::Parse(format!("unknown command `{other}`"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub cutoff: Option<Rat>,
    pub k: Option<i64>,
    pub weights: Option<Vec<Rat>>,
    pub b: Option<Scalar>,
    pub y: Option<Scalar>,
    pub eps: Vec<f64>,
    pub grid: usize,
    pub half_width: f64,
    pub exec: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cutoff: None,
            k: None,
            weights: None,
            b: None,
            y: None,
            eps: vec![1.0, 2.0, 4.0],
            grid: 2000,
            half_width: 12.0,
            exec: Execution::auto(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, exit: EXIT_OK }
    }

    fn check(text: String, json: Value, passed: bool) -> Self {
        Report { text, json, exit: if passed { EXIT_OK } else { EXIT_CHECK_FAILED } }
    }
}

fn cutoff(task: &Task, opts: &Options) -> Rat {
    opts.cutoff.or(task.cutoff).unwrap_or_else(|| Rat::from_integer(DEFAULT_CUTOFF))
}

fn by_degree_text(f: &CharFraction) -> String {
    let parts = f.by_degree();
    if parts.is_empty() {
        return "  0\n".into();
    }
    parts.iter().map(|(q, g)| format!("  b^{q}: {g}\n")).collect()
}

fn by_degree_json(f: &CharFraction) -> Value {
    Value::Array(
        f.by_degree()
            .into_iter()
            .map(|(q, g)| json!({"b": q, "fraction": g.to_string()}))
            .collect(),
    )
}

fn series_json(s: &ChamberSeries) -> Value {
    json!({
        "chamber": s.chamber().xi().iter().map(fmt_rat).collect::<Vec<_>>(),
        "cutoff": fmt_rat(&s.cutoff()),
        "terms": poly_json(s.terms()),
    })
}

fn poly_json(p: &GradedLaurentPoly) -> Value {
    Value::Array(
        p.sorted_terms()
            .into_iter()
            .map(|(b, y, e, c)| {
                json!({"b": b, "y": y, "exp": e.coords().iter().map(fmt_rat).collect::<Vec<_>>(), "coeff": c.to_string()})
            })
            .collect(),
    )
}

fn lefschetz(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let p = &f.problem;
    let global = loc::global_closed_form(p, Side::Morse, opts.exec)?;
    let b = opts.b.clone().unwrap_or_else(|| Scalar::from_int(-1));
    let value = match &opts.y {
        Some(y) => global.eval_grading(&b, y),
        None => global.eval_b(&b),
    }
    .reduce();
    let mut text = format!("Lefschetz number (b = {b}): {value}\n");
    let mut js = json!({"command": "lefschetz", "b": b.to_string(), "value": value.to_string()});
    let mut passed = true;
    if let Some(expect) = &f.task.expect {
        passed = value.equals(expect);
        let _ = writeln!(text, "expected {}: {}", expect.reduce(), if passed { "match" } else { "MISMATCH" });
        js["expected"] = json!(expect.reduce().to_string());
        js["matches"] = json!(passed);
    }
    Ok(Report::check(text, js, passed))
}

fn side_report(f: &ProblemFile, opts: &Options, side: Side) -> Result<Report> {
    let p = &f.problem;
    let t = cutoff(&f.task, opts);
    let global = loc::global_closed_form(p, side, opts.exec)?;
    let series = loc::global_series(p, side, t, opts.exec)?;
    let name = match side {
        Side::Morse => "morse",
        Side::Dual => "dual",
    };
    let text = format!(
        "{} closed form:\n{}series in chamber [{}] to level {}:\n  {}\n",
        if side == Side::Morse { "Morse" } else { "Dual Morse" },
        by_degree_text(&global),
        series.chamber().xi().iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
        fmt_rat(&t),
        series.terms()
    );
    let js = json!({"command": name, "closed_form": by_degree_json(&global), "series": series_json(&series)});
    Ok(Report::ok(text, js))
}

fn classical_text(p: &FixedPointProblem, t: Rat, opts: &Options) -> Result<(String, Value, loc::ClassicalReport)> {
    let r = loc::classical_morse(p, t, opts.exec)?;
    let lac = loc::lacunary_conclusion(&r.poly)?;
    let text = format!(
        "classical Morse polynomial (T = {}): {}\nstable under doubling: {}\nlacunary: {}\n",
        fmt_rat(&t),
        r.poly,
        if r.stable { "yes" } else { "no" },
        if lac.equals_poincare { "equals the Poincaré polynomial" } else { "inconclusive" }
    );
    let js = json!({
        "classical": r.poly.to_string(),
        "classical_terms": poly_json(&r.poly),
        "stable": r.stable,
        "cutoff": fmt_rat(&t),
        "lacunary": lac.equals_poincare,
    });
    Ok((text, js, r))
}

fn classical(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let (text, mut js, _) = classical_text(&f.problem, cutoff(&f.task, opts), opts)?;
    js["command"] = json!("classical");
    Ok(Report::ok(text, js))
}

fn inequality_text(label: &str, r: &InequalityReport) -> String {
    let mut s = format!("{label} inequalities: {}\n", if r.holds { "hold" } else { "FAIL" });
    for ((e, y, q), c) in &r.q {
        let m = fmt_monomial(e);
        let m = if m.is_empty() { "1".to_string() } else { m };
        let _ = writeln!(s, "  Q_{q} y^{y} {m}: {c}");
    }
    s
}

fn inequality_json(r: &InequalityReport) -> Value {
    json!({
        "holds": r.holds,
        "q": r.q.iter().map(|((e, y, q), c)| json!({
            "exp": e.coords().iter().map(fmt_rat).collect::<Vec<_>>(), "y": y, "q": q, "value": c.to_string()
        })).collect::<Vec<_>>(),
    })
}

fn verify(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let p = &f.problem;
    let t = cutoff(&f.task, opts);
    let poincare = match &p.poincare {
        Some(pp) => pp.clone(),
        None => {
            let r = loc::classical_morse(p, t, opts.exec)?;
            match loc::lacunary_conclusion(&r.poly)?.poincare {
                Some(pp) if r.stable => pp,
                _ => {
                    let text = "no Poincaré polynomial: none supplied and the lacunary principle is inconclusive\n";
                    return Ok(Report::check(text.into(), json!({"command": "verify", "holds": false}), false));
                }
            }
        }
    };
    let m = loc::verify_inequality(&loc::global_series(p, Side::Morse, t, opts.exec)?, &poincare, p.dim)?;
    let d = loc::verify_inequality(&loc::global_series(p, Side::Dual, t, opts.exec)?, &poincare, p.dim)?;
    let minus = Scalar::from_int(-1);
    let lm = loc::global_closed_form(p, Side::Morse, opts.exec)?.eval_b(&minus);
    let ld = loc::global_closed_form(p, Side::Dual, opts.exec)?.eval_b(&minus);
    let serre = lm.equals(&ld);
    let pointwise = loc::serre_series_check(p, t, opts.exec)?;
    let text = format!(
        "Poincaré polynomial: {poincare}\n{}{}Morse and dual Lefschetz numbers agree: {}\nSerre series identity at {} of {} points: {}\n",
        inequality_text("Morse", &m),
        inequality_text("dual", &d),
        if serre { "yes" } else { "NO" },
        pointwise.checked.len(),
        p.fixed_points.len(),
        if pointwise.holds { "yes" } else { "NO" }
    );
    let js = json!({
        "command": "verify",
        "poincare": poincare.to_string(),
        "morse": inequality_json(&m),
        "dual": inequality_json(&d),
        "serre": serre,
        "serre_series": {"checked": pointwise.checked, "holds": pointwise.holds},
    });
    Ok(Report::check(text, js, m.holds && d.holds && serre && pointwise.holds))
}

fn vanish(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let t = cutoff(&f.task, opts);
    let (mut text, mut js, r) = classical_text(&f.problem, t, opts)?;
    let v = r.poly.is_zero() && r.stable;
    let _ = writeln!(text, "vanishes in all degrees: {}", if v { "yes" } else { "no" });
    js["command"] = json!("vanish");
    js["vanishes"] = json!(v);
    Ok(Report::check(text, js, v))
}

fn chi(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let parts: std::collections::BTreeMap<u32, FixedPointProblem> = if f.parts.iter().any(|p| p.p.is_some()) {
        f.parts
            .iter()
            .filter_map(|part| part.p.map(|d| (d, part.file.problem.clone())))
            .collect()
    } else {
        loc::split_by_y(&f.problem)
    };
    let n = parts.values().next().map(|p| p.dim).unwrap_or(f.problem.dim);
    let r = loc::chi_yb_assemble(&parts)?;
    let b = opts.b.clone().unwrap_or_else(|| Scalar::from_int(-1));
    let y = opts.y.clone().unwrap_or_else(Scalar::one);
    let value = r.global.eval_grading(&b, &y);
    let dual = loc::chi_duality_check(&r.global, n);
    let mut text = format!("χ_(y,b): {}\n", r.global);
    for (name, c) in &r.local {
        let _ = writeln!(text, "  {name}: {c}");
    }
    let _ = writeln!(text, "value at (b, y) = ({b}, {y}): {value}");
    let _ = writeln!(text, "duality with n = {n}: {}", if dual { "holds" } else { "FAILS" });
    let js = json!({
        "command": "chi",
        "chi": r.global.to_string(),
        "local": r.local.iter().map(|(n, c)| json!({"name": n, "chi": c.to_string()})).collect::<Vec<_>>(),
        "value": value.to_string(),
        "duality": dual,
    });
    Ok(Report::check(text, js, dual))
}

fn nut(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let w = opts
        .weights
        .clone()
        .or_else(|| f.task.theta_weights.clone())
        .ok_or_else(|| Error::Precondition("nut needs --weights or theta_weights".into()))?;
    let r = theta::global_theta_checks(&f.problem, &w, f.task.signature.as_ref(), opts.exec)?;
    let mut text = format!("weights: {}\n", w.iter().map(fmt_rat).collect::<Vec<_>>().join(", "));
    for pt in &r.points {
        let _ = writeln!(text, "  {}: N = {}, τ₃ = {}", pt.name, pt.nut, pt.tau3);
    }
    let _ = writeln!(text, "ΣN = {}\nΣτ₃ = {}\nΣ t^-1 = {}", r.sum_nut, r.sum_tau3, r.sum_residue);
    let _ = writeln!(text, "negative orders cancel: {}", if r.singular_part_vanishes { "yes" } else { "no" });
    if let Some(m) = r.signature_matches {
        let _ = writeln!(text, "matches signature: {}", if m { "yes" } else { "NO" });
    }
    let js = json!({
        "command": "nut",
        "points": r.points.iter().map(|pt| json!({"name": pt.name, "N": pt.nut.to_string(), "tau3": pt.tau3.to_string()})).collect::<Vec<_>>(),
        "sum_N": r.sum_nut.to_string(),
        "sum_tau3": r.sum_tau3.to_string(),
        "sum_residue": r.sum_residue.to_string(),
        "passed": r.passed(),
    });
    Ok(Report::check(text, js, r.passed()))
}

fn rs(f: &ProblemFile, opts: &Options) -> Result<Report> {
    let k = opts.k.or(f.task.k).unwrap_or(0);
    let p = loc::rs_problem(&f.problem, k);
    let t = cutoff(&f.task, opts);
    let morse = loc::global_closed_form(&p, Side::Morse, opts.exec)?;
    let dual = loc::global_closed_form(&p, Side::Dual, opts.exec)?;
    let (ctext, cjs, _) = classical_text(&p, t, opts)?;
    let mut bounds = Vec::new();
    for fp in p.fixed_points.iter().filter(|fp| fp.is_smooth()) {
        bounds.push((fp.name.clone(), loc::rs_kernel_bound(&fp.weights, &p.chamber)?));
    }
    let bound: u64 = bounds.iter().map(|(_, n)| n).sum();
    let per_point: Vec<String> = bounds.iter().map(|(name, n)| format!("{name} {n}")).collect();
    let text = format!(
        "k = {k}\nMorse closed form:\n{}dual closed form:\n{}{ctext}kernel bound: {} (total {bound})\n",
        by_degree_text(&morse),
        by_degree_text(&dual),
        per_point.join(", ")
    );
    let js = json!({
        "command": "rs",
        "k": k,
        "morse": by_degree_json(&morse),
        "dual": by_degree_json(&dual),
        "classical": cjs,
        "kernel_bound": bound,
        "kernel_bound_per_point": bounds.iter().map(|(name, n)| json!({"point": name, "bound": n})).collect::<Vec<_>>(),
    });
    Ok(Report::ok(text, js))
}

fn oscillator_report(opts: &Options) -> Result<Report> {
    let r = oscillator::scaling_check(&opts.eps, opts.half_width, opts.grid, opts.exec)?;
    let mut text = format!("grid M = {}, half-width L = {}\n", opts.grid, opts.half_width);
    for (e, s) in &r.spectra {
        let ev: Vec<String> = s.eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
        let _ = writeln!(text, "  ε = {e}: {}", ev.join(" "));
    }
    let _ = writeln!(
        text,
        "max relative deviation of λ/ε: {:.3e} ({})",
        r.max_deviation,
        if r.passed { "pass" } else { "FAIL" }
    );
    let js = json!({
        "command": "oscillator",
        "grid": opts.grid,
        "half_width": opts.half_width,
        "spectra": r.spectra.iter().map(|(e, s)| json!({"eps": e, "eigenvalues": s.eigenvalues})).collect::<Vec<_>>(),
        "max_deviation": r.max_deviation,
        "passed": r.passed,
    });
    Ok(Report::check(text, js, r.passed))
}

fn run_one(cmd: Command, f: &ProblemFile, opts: &Options) -> Result<Report> {
    match cmd {
        Command::Lefschetz => lefschetz(f, opts),
        Command::Morse => side_report(f, opts, Side::Morse),
        Command::Dual => side_report(f, opts, Side::Dual),
        Command::Classical => classical(f, opts),
        Command::Verify => verify(f, opts),
        Command::Vanish => vanish(f, opts),
        Command::Chi => chi(f, opts),
        Command::Nut => nut(f, opts),
        Command::Rs => rs(f, opts),
        Command::Oscillator => oscillator_report(opts),
        Command::Emit => Ok(Report::ok(format!("{}\n", emit(f)), serde_json::from_str(&emit(f))?)),
    }
}

/// Run `cmd` on a parsed file. Files with labelled parts run once per part
/// (except `chi`, which assembles them).
pub fn run(cmd: Command, f: Option<&ProblemFile>, opts: &Options) -> Result<Report> {
    let Some(f) = f else {
        return match cmd {
            Command::Oscillator => oscillator_report(opts),
            _ => Err(Error::Precondition("this command needs a problem file".into())),
        };
    };
    let per_part = !f.parts.is_empty() && !matches!(cmd, Command::Chi | Command::Emit | Command::Oscillator);
    if !per_part {
        return run_one(cmd, f, opts);
    }
    let mut text = String::new();
    let mut parts = Vec::new();
    let mut exit = EXIT_OK;
    for part in &f.parts {
        let r = run_one(cmd, &part.file, opts)?;
        let _ = write!(text, "[{}]\n{}", part.label, r.text);
        parts.push(json!({"label": part.label, "report": r.json}));
        exit = exit.max(r.exit);
    }
    Ok(Report { text, json: json!({"parts": parts}), exit })
}
