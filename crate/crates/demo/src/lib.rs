//! Browser bindings: three operations, each taking plain strings and
//! returning a JSON document for the page to render.

use conelab::certificates::{verify_with_cap, Certificate};
use conelab::constructions::{jenkins_weight, JenkinsSpec};
use conelab::functions::parse_function;
use conelab::group::{growth_report, parse_group};
use conelab::rational::{self, Rational};
use conelab::search::{windowed_alternative, AlternativeBranch};
use conelab::{Group, QuerySpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Balls in the browser stay small.
pub const DEMO_CAP: usize = 200_000;

#[derive(Serialize)]
struct Growth {
    group: String,
    sizes: Vec<usize>,
    ratios: Vec<String>,
    approx: Vec<f64>,
    label: &'static str,
    complete: bool,
}

#[derive(Serialize)]
struct Jenkins {
    base: String,
    support: usize,
    interior_points: usize,
    pointwise_failures: usize,
    defect: String,
    defect_approx: f64,
    passed: bool,
    profile: Vec<(usize, String)>,
    profile_approx: Vec<f64>,
}

#[derive(Serialize)]
struct Alternative {
    branch: &'static str,
    level: String,
    passed: bool,
    terms: Vec<(String, String)>,
}

fn err(e: conelab::Error) -> String {
    e.to_string()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s.trim()).map_err(|e| e.to_string())
}

fn word(group: &Group, g: &conelab::Element) -> String {
    group.format_element(g).unwrap_or_else(|_| g.key())
}

pub fn growth_json(group: &str, radius: usize) -> Result<String, String> {
    let g = parse_group(group).map_err(err)?;
    let report = growth_report(&g, &g.default_generators(), radius, DEMO_CAP).map_err(err)?;
    to_json(&Growth {
        group: g.spec(),
        approx: report.ratios.iter().map(rational::approx).collect(),
        ratios: report.ratios.iter().map(rational::format).collect(),
        sizes: report.sizes,
        label: report.label.as_str(),
        complete: report.complete,
    })
}

pub fn jenkins_json(group: &str, epsilon: &str, radius: usize) -> Result<String, String> {
    let g = parse_group(group).map_err(err)?;
    let spec = JenkinsSpec::new(&g, &g.default_generators(), parse_rational(epsilon)?, radius).map_err(err)?;
    let report = jenkins_weight(&spec, DEMO_CAP).map_err(err)?;
    // ρ along the powers of the first generator, for plotting.
    let step = spec.set[0].clone();
    let mut x = g.identity();
    let mut profile = Vec::new();
    let mut profile_approx = Vec::new();
    for k in 0..=radius + 1 {
        let value = report.weight.get(&x);
        profile_approx.push(rational::approx(&value));
        profile.push((k, rational::format(&value)));
        x = g.multiply(&x, &step).map_err(err)?;
    }
    to_json(&Jenkins {
        base: rational::format(&spec.base),
        support: report.weight.len(),
        interior_points: report.interior_points,
        pointwise_failures: report.pointwise_failures.len(),
        defect: rational::format(report.defect()),
        defect_approx: rational::approx(report.defect()),
        passed: report.verification.passed,
        profile,
        profile_approx,
    })
}

pub fn alternative_json(group: &str, f: &str, set: &str, window: usize) -> Result<String, String> {
    let g = parse_group(group).map_err(err)?;
    let f = parse_function(f, &g, &|_, _| None).map_err(err)?;
    let set = set
        .split(',')
        .map(|w| g.parse_element(w.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let q = QuerySpec::new(&g, set, rational::one(), window).map_err(err)?;
    let outcome = windowed_alternative(&f, &q, DEMO_CAP).map_err(err)?;
    let (branch, terms, cert) = match outcome.branch {
        AlternativeBranch::Witness(w) => {
            let terms = w.u.entries().map(|(x, v)| (word(&g, x), rational::format(v))).collect();
            ("witness", terms, Certificate::Ratio(w))
        }
        AlternativeBranch::Violation(v) => {
            let terms = v.items.iter().map(|(t, x)| (word(&g, x), rational::format(t))).collect();
            ("violation", terms, Certificate::Violation(v))
        }
    };
    let report = verify_with_cap(&cert, window, DEMO_CAP).map_err(err)?;
    to_json(&Alternative {
        branch,
        level: report.level.as_str().to_string(),
        passed: report.passed,
        terms,
    })
}

#[wasm_bindgen]
pub fn growth(group: &str, radius: usize) -> Result<String, JsValue> {
    growth_json(group, radius).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn jenkins(group: &str, epsilon: &str, radius: usize) -> Result<String, JsValue> {
    jenkins_json(group, epsilon, radius).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn alternative(group: &str, f: &str, set: &str, window: usize) -> Result<String, JsValue> {
    alternative_json(group, f, set, window).map_err(|e| JsValue::from_str(&e))
}
