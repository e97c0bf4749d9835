//! Byte-stable JSON encoding. Elements are written as generator words and
//! rationals as `p/q` strings; field order is fixed by the struct layout.

use serde::{Deserialize, Serialize};

use super::{
    verify_with_cap, Certificate, FreenessWitness, Level, MooreProbe, RatioWitness, ReiterWitness,
    TranslateViolation, VerificationReport,
};
use crate::error::{Error, Result};
use crate::functions::{parse_function, TestFunction, Weight};
use crate::group::{parse_group_with, Element, Group};
use crate::rational::{self, Rational};

/// Resolves names that the catalog grammar does not cover.
pub trait FunctionResolver {
    fn group(&self, _name: &str) -> Option<Group> {
        None
    }

    fn function(&self, _name: &str, _group: &Group) -> Option<TestFunction> {
        None
    }
}

impl FunctionResolver for () {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    kind: String,
    group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    items: Option<Vec<Item>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pair: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    two_sided: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window_radius: Option<usize>,
    #[serde(default)]
    provenance: Vec<String>,
    verification: Verification,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Item {
    t: String,
    g: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    x: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Verification {
    level: String,
    passed: bool,
    quantities: Vec<Quantity>,
    failures: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Quantity {
    name: String,
    value: String,
}

fn word(group: &Group, g: &Element) -> Result<String> {
    group.format_element(g)
}

fn words(group: &Group, gs: &[Element]) -> Result<Vec<String>> {
    gs.iter().map(|g| word(group, g)).collect()
}

fn entries(u: &Weight) -> Result<Vec<Entry>> {
    u.entries()
        .map(|(x, v)| {
            Ok(Entry {
                x: word(u.group(), x)?,
                value: rational::format(v),
            })
        })
        .collect()
}

/// Serialises a certificate together with the report of its verification.
pub fn to_json(c: &Certificate, report: &VerificationReport) -> Result<String> {
    let group = c.group();
    let mut file = CertificateFile {
        kind: c.kind().into(),
        group: group.spec(),
        f: None,
        set: None,
        items: None,
        weight: None,
        coefficients: None,
        pair: None,
        depth: None,
        two_sided: None,
        epsilon: None,
        value: None,
        window_radius: report.window_radius,
        provenance: Vec::new(),
        verification: Verification {
            level: report.level.as_str().into(),
            passed: report.passed,
            quantities: report
                .quantities
                .iter()
                .map(|(name, v)| Quantity {
                    name: name.clone(),
                    value: rational::format(v),
                })
                .collect(),
            failures: report.failures.clone(),
        },
    };
    match c {
        Certificate::Violation(v) => {
            file.f = Some(v.f.spec());
            file.items = Some(
                v.items
                    .iter()
                    .map(|(t, g)| {
                        Ok(Item {
                            t: rational::format(t),
                            g: word(group, g)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            );
            file.window_radius = Some(v.window_radius);
            file.provenance = v.provenance.clone();
        }
        Certificate::Ratio(w) => {
            file.f = Some(w.f.spec());
            file.set = Some(words(group, &w.set)?);
            file.weight = Some(entries(&w.u)?);
            file.two_sided = Some(w.two_sided);
            file.epsilon = Some(rational::format(&w.epsilon));
            file.provenance = w.provenance.clone();
        }
        Certificate::Reiter(w) => {
            file.f = Some(w.f.spec());
            file.set = Some(words(group, &w.set)?);
            file.weight = Some(entries(&w.u)?);
            file.epsilon = Some(rational::format(&w.epsilon));
            file.provenance = w.provenance.clone();
        }
        Certificate::Freeness(w) => {
            file.pair = Some([word(group, &w.a)?, word(group, &w.b)?]);
            file.depth = Some(w.depth);
        }
        Certificate::Moore(p) => {
            file.f = Some(p.e.spec());
            file.set = Some(words(group, &p.translates)?);
            file.coefficients = Some(p.coefficients.iter().map(rational::format).collect());
            file.value = Some(rational::format(&p.value));
            file.window_radius = Some(p.window_radius);
        }
    }
    let mut text = serde_json::to_string_pretty(&file).map_err(|e| Error::Certificate(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn missing(field: &str) -> Error {
    Error::Certificate(format!("missing field `{field}`"))
}

fn rat(s: &str) -> Result<Rational> {
    Ok(rational::parse(s)?)
}

/// Parses a certificate file; returns the certificate and the recorded
/// verification block as a report.
pub fn from_json(text: &str, resolver: &dyn FunctionResolver) -> Result<(Certificate, VerificationReport)> {
    let file: CertificateFile = serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
    let group = parse_group_with(&file.group, &|name| resolver.group(name))?;
    let custom = |name: &str, g: &Group| resolver.function(name, g);
    let f = |spec: &Option<String>| -> Result<TestFunction> {
        parse_function(spec.as_deref().ok_or_else(|| missing("f"))?, &group, &custom)
    };
    let elems = |list: &Option<Vec<String>>| -> Result<Vec<Element>> {
        list.as_ref().ok_or_else(|| missing("set"))?.iter().map(|w| group.parse_element(w)).collect()
    };
    let weight = || -> Result<Weight> {
        let list = file.weight.as_ref().ok_or_else(|| missing("weight"))?;
        Weight::from_entries(
            &group,
            list.iter()
                .map(|e| Ok((group.parse_element(&e.x)?, rat(&e.value)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    let epsilon = || rat(file.epsilon.as_deref().ok_or_else(|| missing("epsilon"))?);
    let radius = || file.window_radius.ok_or_else(|| missing("window_radius"));
    let level = Level::parse(&file.verification.level)
        .ok_or_else(|| Error::Certificate(format!("unknown level `{}`", file.verification.level)))?;

    let cert = match file.kind.as_str() {
        "translate_violation" => {
            let items = file
                .items
                .as_ref()
                .ok_or_else(|| missing("items"))?
                .iter()
                .map(|i| Ok((rat(&i.t)?, group.parse_element(&i.g)?)))
                .collect::<Result<Vec<_>>>()?;
            // Stored verbatim: rescaling here would hide tampering.
            Certificate::Violation(TranslateViolation {
                f: f(&file.f)?,
                items,
                window_radius: radius()?,
                level,
                provenance: file.provenance.clone(),
            })
        }
        "ratio_witness" => Certificate::Ratio(RatioWitness {
            f: f(&file.f)?,
            set: elems(&file.set)?,
            epsilon: epsilon()?,
            u: weight()?,
            two_sided: file.two_sided.ok_or_else(|| missing("two_sided"))?,
            provenance: file.provenance.clone(),
        }),
        "reiter_witness" => Certificate::Reiter(ReiterWitness {
            f: f(&file.f)?,
            set: elems(&file.set)?,
            epsilon: epsilon()?,
            u: weight()?,
            provenance: file.provenance.clone(),
        }),
        "freeness_witness" => {
            let [a, b] = file.pair.as_ref().ok_or_else(|| missing("pair"))?;
            Certificate::Freeness(FreenessWitness {
                group: group.clone(),
                a: group.parse_element(a)?,
                b: group.parse_element(b)?,
                depth: file.depth.ok_or_else(|| missing("depth"))?,
            })
        }
        "moore_probe" => Certificate::Moore(MooreProbe {
            e: f(&file.f)?,
            translates: elems(&file.set)?,
            coefficients: file
                .coefficients
                .as_ref()
                .ok_or_else(|| missing("coefficients"))?
                .iter()
                .map(|s| rat(s))
                .collect::<Result<_>>()?,
            window_radius: radius()?,
            value: rat(file.value.as_deref().ok_or_else(|| missing("value"))?)?,
        }),
        other => return Err(Error::Certificate(format!("unknown kind `{other}`"))),
    };
    let recorded = VerificationReport {
        kind: cert.kind(),
        passed: file.verification.passed,
        level,
        window_radius: file.window_radius,
        quantities: file
            .verification
            .quantities
            .iter()
            .map(|q| Ok((q.name.clone(), rat(&q.value)?)))
            .collect::<Result<_>>()?,
        failures: file.verification.failures.clone(),
    };
    Ok((cert, recorded))
}

/// Re-verifies a certificate file from scratch. The fresh report fails when
/// any recorded quantity differs from its recomputed value.
pub fn verify_json(text: &str, resolver: &dyn FunctionResolver, cap: usize) -> Result<(Certificate, VerificationReport)> {
    let (cert, recorded) = from_json(text, resolver)?;
    let radius = match &cert {
        Certificate::Violation(v) => v.window_radius,
        Certificate::Moore(p) => p.window_radius,
        _ => 0,
    };
    let mut report = verify_with_cap(&cert, radius, cap)?;
    if recorded.level != report.level {
        report.passed = false;
        report.failures.push(format!(
            "recorded level {} but verified at {}",
            recorded.level.as_str(),
            report.level.as_str()
        ));
    }
    if recorded.quantities != report.quantities {
        report.passed = false;
        let differing = recorded
            .quantities
            .iter()
            .zip(&report.quantities)
            .find(|(a, b)| a != b)
            .map(|(a, _)| a.0.clone())
            .unwrap_or_else(|| "count".into());
        report.failures.push(format!("recorded quantity `{differing}` differs from its recomputed value"));
    }
    if recorded.passed != report.passed && report.failures.is_empty() {
        report.passed = false;
        report.failures.push("recorded outcome differs from the recomputed one".into());
    }
    Ok((cert, report))
}
