//! Command implementations behind the command-line interface. Each returns a report whose
//! violations list identities that failed on the given data; library errors propagate.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::json;

use crate::curve::{
    adjunction_defect, adjunction_defect_index_form, check_embedded_projection, check_gin_zero, check_no_isect,
    check_sgin_zero, concat_gin, gin_cylindrical, gin_from_rin, gin_from_witness, gin_orbit_cylinder,
    genhol_positivity, openbook_analyze, rshift_int_bound, same_direction_positivity, self_asymptotic_index_total,
    self_gin_orbit_cylinder, windpi_consistency, CurveData,
};
use crate::end::EndData;
use crate::error::{Error, Result};
use crate::oracle::{self, LoopOperator, Tolerances};
use crate::orbit::{alpha_iter, cz_index, parity_iter, rotation_index, spectral_covering, SimpleOrbit};
use crate::rational;
use crate::report::Report;
use crate::selftest;
use crate::workspace::{OracleModel, OracleScenario, Workspace};

/// Iterated invariants of `orbit^cover`.
pub fn orbit_invariants(orbit: &SimpleOrbit, cover: i64) -> Result<serde_json::Value> {
    let rot = rotation_index(orbit).ok().map(rational::fmt);
    Ok(json!({
        "orbit": orbit.name,
        "cover": cover,
        "alpha": alpha_iter(orbit, cover)?,
        "parity": parity_iter(orbit, cover)?,
        "mu": cz_index(orbit, cover)?,
        "sigma_bar": spectral_covering(orbit, cover)?,
        "rot": rot,
    }))
}

fn optional<T: Serialize>(r: Result<T>) -> serde_json::Value {
    r.ok().map(|v| json!(v)).unwrap_or(serde_json::Value::Null)
}

fn end_invariants(e: &EndData) -> Result<serde_json::Value> {
    Ok(json!({
        "orbit": e.orbit.name,
        "mult": e.mult,
        "windings": e.windings,
        "alpha": e.alpha()?,
        "parity": e.parity()?,
        "mu": 2 * e.alpha()? + e.parity()?,
        "sigma_bar": e.sigma_bar()?,
        "wind_infty": e.wind_infty()?,
        "d0": e.d0()?,
        "cov_e1": e.cov_e1()?,
        "embedded": e.is_embedded(),
        "delta1": optional(e.delta1()),
        "delta2": optional(e.delta2()),
        "self_asymptotic_index": optional(e.self_asymptotic_index()),
    }))
}

pub fn curve_invariants(u: &CurveData) -> Result<serde_json::Value> {
    let ends = u.ends().map(end_invariants).collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "class": u.class,
        "chi": u.euler_characteristic(),
        "punctures": u.num_punctures(),
        "odd": u.num_odd()?,
        "even": u.num_even()?,
        "c1_rel": u.c1_rel,
        "mu": u.total_cz()?,
        "index": u.fredholm_index()?,
        "sigma_bar": u.sigma_bar()?,
        "d0": u.d0()?,
        "ends": ends,
    }))
}

pub fn invariants(ws: &Workspace, orbit: Option<&str>, cover: i64, curve: Option<&str>, argv: Vec<String>) -> Result<Report> {
    let mut report = Report::new(argv);
    if let Some(name) = orbit {
        report.item(name, orbit_invariants(ws.orbit(name)?, cover)?);
    }
    if let Some(name) = curve {
        report.item(name, curve_invariants(ws.curve(name)?)?);
    }
    if orbit.is_none() && curve.is_none() {
        for (name, o) in &ws.orbits {
            report.item(name, orbit_invariants(o, cover)?);
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GinMode {
    Cylindrical,
    Witness,
    Rin,
    Rshift,
    Generalized,
    All,
}

impl std::str::FromStr for GinMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cylindrical" => GinMode::Cylindrical,
            "witness" => GinMode::Witness,
            "rin" => GinMode::Rin,
            "rshift" => GinMode::Rshift,
            "generalized" => GinMode::Generalized,
            "all" => GinMode::All,
            other => return Err(Error::InconsistentInput(format!("unknown gin mode `{other}`"))),
        })
    }
}

/// `gin(a, b)` by the requested routes; with several routes any disagreement is a violation.
pub fn gin(ws: &Workspace, a: &str, b: &str, mode: GinMode, argv: Vec<String>) -> Result<Report> {
    let (u, v) = (ws.curve(a)?, ws.curve(b)?);
    let mut report = Report::new(argv);
    let subject = format!("{a},{b}");
    let mut values = serde_json::Map::new();
    match mode {
        GinMode::Cylindrical => {
            let g = gin_cylindrical(u, v)?;
            values.insert("cylindrical".into(), json!(g.total));
            values.insert("terms".into(), json!(g.terms));
        }
        GinMode::Witness => {
            values.insert("witness".into(), json!(gin_from_witness(u, v)?));
        }
        GinMode::Rin => {
            values.insert("rin_plus_omega".into(), json!(gin_from_rin(u, v)?));
        }
        GinMode::Rshift => {
            let g = rshift_int_bound(u, v)?;
            values.insert("rshift_bound".into(), json!(g.total));
            values.insert("terms".into(), json!(g.terms));
        }
        GinMode::Generalized => {
            let g = genhol_positivity(u, v)?;
            let negative: Vec<_> = g.negative_terms().into_iter().cloned().collect();
            values.insert("cylindrical".into(), json!(g.total));
            values.insert("negative_terms".into(), json!(negative));
            if g.total < 0 {
                report.violation(&subject, format!("generalized curves have gin = {} < 0", g.total));
            }
        }
        GinMode::All => {
            let g = gin_cylindrical(u, v)?;
            let mut routes = vec![("cylindrical", g.total)];
            values.insert("terms".into(), json!(g.terms));
            if u.name != v.name {
                routes.push(("cylindrical_swapped", gin_cylindrical(v, u)?.total));
            }
            for (name, r) in [("witness", gin_from_witness(u, v)), ("rin_plus_omega", gin_from_rin(u, v))] {
                match r {
                    Ok(value) => routes.push((name, value)),
                    Err(Error::MissingWitness(_)) | Err(Error::WrongClass(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            for (name, value) in &routes {
                values.insert((*name).into(), json!(value));
            }
            if routes.iter().any(|(_, value)| *value != g.total) {
                let listed: Vec<String> = routes.iter().map(|(n, v)| format!("{n}={v}")).collect();
                report.violation(&subject, format!("routes disagree: {}", listed.join(", ")));
            }
        }
    }
    report.item(subject, values);
    Ok(report)
}

/// `gin(a, orbit~^k)` and the self number of the orbit cylinder.
pub fn gin_cylinder(ws: &Workspace, a: &str, orbit: &str, cover: i64, argv: Vec<String>) -> Result<Report> {
    let (u, o) = (ws.curve(a)?, ws.orbit(orbit)?);
    let mut report = Report::new(argv);
    report.item(
        format!("{a},{orbit}^{cover}"),
        json!({
            "gin": gin_orbit_cylinder(u, o, cover)?,
            "cylinder_self_gin": self_gin_orbit_cylinder(o, cover)?,
        }),
    );
    Ok(report)
}

pub fn adjunction(ws: &Workspace, name: &str, argv: Vec<String>) -> Result<Report> {
    let u = ws.curve(name)?;
    let mut report = Report::new(argv);
    let defect = adjunction_defect(u)?;
    let index_form = adjunction_defect_index_form(u)?;
    let mut values = json!({
        "defect": defect,
        "defect_index_form": index_form,
        "gin": gin_cylindrical(u, u)?.total,
        "mu": u.total_cz()?,
        "index": u.fredholm_index()?,
        "sigma_bar": u.sigma_bar()?,
    });
    if index_form != defect {
        report.violation(name, format!("index form {index_form} differs from defect {defect}"));
    }
    if let Ok(delta) = u.double_points() {
        let delta_infty = self_asymptotic_index_total(u)?;
        values["double_points"] = json!(delta);
        values["delta_infty"] = json!(delta_infty);
        if defect != 2 * (delta + delta_infty) {
            report.violation(
                name,
                format!("defect {defect} differs from 2(delta + delta_infty) = {}", 2 * (delta + delta_infty)),
            );
        }
    }
    if u.wind_pi().is_ok() {
        match windpi_consistency(u) {
            Ok(w) => values["wind_pi"] = json!(w),
            Err(Error::InconsistentWitness(m)) => report.violation(name, m),
            Err(e) => return Err(e),
        }
    }
    report.item(name, values);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    GinZero,
    NoIsect,
    SginZero,
    EmbeddedProjection,
    SameDirection,
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gin-zero" => Theorem::GinZero,
            "no-isect" => Theorem::NoIsect,
            "sgin-zero" => Theorem::SginZero,
            "embedded-projection" => Theorem::EmbeddedProjection,
            "same-direction" => Theorem::SameDirection,
            other => return Err(Error::InconsistentInput(format!("unknown theorem `{other}`"))),
        })
    }
}

pub struct CheckArgs<'a> {
    pub theorem: Theorem,
    pub a: &'a str,
    pub b: Option<&'a str>,
    pub z: usize,
    pub w: usize,
    pub flagged: bool,
}

/// Evaluates the condition sets of a theorem; a verdict that does not hold is a violation.
pub fn check(ws: &Workspace, args: &CheckArgs, argv: Vec<String>) -> Result<Report> {
    let u = ws.curve(args.a)?;
    let other = || -> Result<&CurveData> {
        let b = args
            .b
            .ok_or_else(|| Error::InconsistentInput("this theorem needs a second curve".into()))?;
        ws.curve(b)
    };
    let mut report = Report::new(argv);
    let evaluated = match args.theorem {
        Theorem::GinZero => check_gin_zero(u, other()?),
        Theorem::NoIsect => check_no_isect(u, other()?),
        Theorem::SginZero => check_sgin_zero(u),
        Theorem::EmbeddedProjection => check_embedded_projection(u),
        Theorem::SameDirection => {
            let v = args.b.map(|b| ws.curve(b)).transpose()?.unwrap_or(u);
            let subject = format!("{}:{},{}:{}", u.name, args.z, v.name, args.w);
            match same_direction_positivity(u, args.z, v, args.w, args.flagged) {
                Ok(d) => report.item(subject, d),
                Err(Error::InconsistentWitness(m)) => report.violation(subject, m),
                Err(e) => return Err(e),
            }
            return Ok(report);
        }
    };
    let subject = match args.b {
        Some(b) => format!("{},{b}", args.a),
        None => args.a.to_string(),
    };
    let verdict = match evaluated {
        Ok(v) => v,
        Err(Error::InconsistentWitness(m)) => {
            report.violation(&subject, m);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    if !verdict.holds {
        report.violation(&subject, format!("{} fails: quantity {}", verdict.theorem, verdict.quantity));
    }
    report.item(subject, verdict);
    Ok(report)
}

pub fn concat(ws: &Workspace, u: &str, v: &str, argv: Vec<String>) -> Result<Report> {
    let (bu, bv) = (ws.building(u)?, ws.building(v)?);
    let r = concat_gin(
        ws.curve(&bu.upper)?,
        ws.curve(&bu.lower)?,
        ws.curve(&bv.upper)?,
        ws.curve(&bv.lower)?,
        &bu.matching,
        &bv.matching,
    )?;
    let mut report = Report::new(argv);
    report.item(format!("{u},{v}"), r);
    Ok(report)
}

pub fn openbook(ws: &Workspace, book: &str, curve: &str, argv: Vec<String>) -> Result<Report> {
    let verdict = openbook_analyze(ws.curve(curve)?, ws.openbook(book)?)?;
    let mut report = Report::new(argv);
    report.item(format!("{book},{curve}"), verdict);
    Ok(report)
}

/// Closed-form `(alpha, parity)` of the model families and the elliptic eigenvalues.
fn model_prediction(s: &OracleScenario) -> Option<(i64, i64)> {
    let k = s.cover as i64;
    match s.model {
        OracleModel::Elliptic { theta } => Some(((k as f64 * theta).floor() as i64, 1)),
        OracleModel::EvenHyperbolic { d, .. } => Some((k * d, 0)),
        OracleModel::OddHyperbolic { d, .. } => Some(((k * (2 * d + 1)).div_euclid(2), k.rem_euclid(2))),
        _ => None,
    }
}

pub fn oracle(s: &OracleScenario, tol: &Tolerances, argv: Vec<String>) -> Result<Report> {
    let op: LoopOperator = s.operator()?;
    let mut report = Report::new(argv);
    let (alpha, parity) = oracle::alpha_parity_numeric(&op, s.modes, tol)?;
    let mut values = json!({
        "alpha": alpha,
        "parity": parity,
        "mu": 2 * alpha + parity,
        "modes": s.modes,
        "window": s.window,
    });
    if let Some(expected) = model_prediction(s) {
        values["predicted"] = json!({"alpha": expected.0, "parity": expected.1});
        if expected != (alpha, parity) {
            report.violation(&s.name, format!("numeric (alpha, parity) = ({alpha}, {parity}), model gives {expected:?}"));
        }
    }
    match oracle::verify_spectrum_laws(&op, s.modes, s.window, tol) {
        Ok(r) => {
            values["bins"] = json!(r.bins);
            values["eigenvalues"] = json!(r.eigenpairs.len());
            if let OracleModel::Elliptic { theta } = s.model {
                let shift = s.cover as f64 * theta;
                let err = r
                    .eigenpairs
                    .iter()
                    .map(|p| (p.eigenvalue - 2.0 * PI * (p.winding as f64 - shift)).abs())
                    .fold(0.0, f64::max);
                values["closed_form_error"] = json!(err);
                if err > tol.pairing {
                    report.violation(&s.name, format!("elliptic spectrum deviates from 2 pi (n - theta) by {err:e}"));
                }
            }
        }
        Err(Error::LawViolation(m)) => report.violation(&s.name, m),
        Err(e) => return Err(e),
    }
    if s.cover > 1 {
        let base = OracleScenario { cover: 1, ..s.clone() }.operator()?;
        match oracle::verify_cover_law(&base, s.cover, s.modes, s.window, tol) {
            Ok(c) => values["cover_law"] = json!(c),
            Err(Error::LawViolation(m)) => report.violation(&s.name, m),
            Err(e) => return Err(e),
        }
    }
    report.item(&s.name, values);
    Ok(report)
}

pub fn run_selftest(config: &selftest::Config, only: Option<u32>, argv: Vec<String>) -> Report {
    let mut report = Report::new(argv);
    let results = match only {
        Some(id) => vec![selftest::run_one(id, config)],
        None => selftest::run_all(config),
    };
    for r in results {
        if !r.passed {
            report.violation(format!("criterion {}", r.id), r.detail.clone());
        }
        report.item(format!("criterion {}", r.id), r);
    }
    report
}
