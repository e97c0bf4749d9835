use std::sync::Arc;

use crate::certificates::{Certificate, FreenessWitness, RatioWitness, ReiterWitness, TranslateViolation};
use crate::error::{Error, Result};
use crate::functions::{orbit_sum, Embedding, Predicate, TestFunction, Weight};
use crate::group::{BallTable, Element};
use crate::rational::{self, Rational};

/// Carries a certificate for `f` on `H` to one for the zero extension of
/// `f` along `embedding`, appending the step to the provenance chain.
pub fn transport_subgroup(c: &Certificate, embedding: &Embedding) -> Result<Certificate> {
    let source = embedding.source();
    if *c.group() != source {
        return Err(Error::GroupMismatch { group: c.group().spec() });
    }
    let step = format!("transport_subgroup:{}", embedding.spec());
    let map_all = |xs: &[Element]| xs.iter().map(|x| embedding.map(x)).collect::<Result<Vec<_>>>();
    let map_weight = |u: &Weight| {
        let entries = u
            .entries()
            .map(|(x, v)| Ok((embedding.map(x)?, v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Weight::from_entries(&embedding.target(), entries)
    };
    let extend = |f: &TestFunction| TestFunction::zero_extension(f.clone(), embedding.clone());
    let with_step = |chain: &[String]| {
        let mut chain = chain.to_vec();
        chain.push(step.clone());
        chain
    };
    Ok(match c {
        Certificate::Violation(v) => {
            // Coefficients are kept verbatim so that a broken certificate stays broken.
            let mut items = v
                .items
                .iter()
                .map(|(t, g)| Ok((t.clone(), embedding.map(g)?)))
                .collect::<Result<Vec<_>>>()?;
            items.sort_by(|a, b| a.1.cmp(&b.1));
            Certificate::Violation(TranslateViolation {
                f: extend(&v.f)?,
                items,
                window_radius: v.window_radius,
                level: v.level,
                provenance: with_step(&v.provenance),
            })
        }
        Certificate::Ratio(w) => Certificate::Ratio(RatioWitness {
            f: extend(&w.f)?,
            set: map_all(&w.set)?,
            epsilon: w.epsilon.clone(),
            u: map_weight(&w.u)?,
            two_sided: w.two_sided,
            provenance: with_step(&w.provenance),
        }),
        Certificate::Reiter(w) => Certificate::Reiter(ReiterWitness {
            f: extend(&w.f)?,
            set: map_all(&w.set)?,
            epsilon: w.epsilon.clone(),
            u: map_weight(&w.u)?,
            provenance: with_step(&w.provenance),
        }),
        Certificate::Freeness(w) => Certificate::Freeness(FreenessWitness {
            group: embedding.target(),
            a: embedding.map(&w.a)?,
            b: embedding.map(&w.b)?,
            depth: w.depth,
        }),
        Certificate::Moore(_) => {
            return Err(Error::UnsupportedEmbedding(
                "Moore probes depend on the whole window and do not transport".into(),
            ))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteTransport {
    /// `Σ_{r ∈ R} r·v` over coset representatives.
    FiniteIndexDominator,
    /// `Σ_{g ∈ F} g·v` over a finite normal subgroup, checked to be invariant.
    FiniteNormalAverage,
}

impl FiniteTransport {
    pub fn as_str(&self) -> &'static str {
        match self {
            FiniteTransport::FiniteIndexDominator => "finite_index_dominator",
            FiniteTransport::FiniteNormalAverage => "finite_normal_average",
        }
    }

    pub fn parse(s: &str) -> Option<FiniteTransport> {
        match s {
            "finite_index_dominator" => Some(FiniteTransport::FiniteIndexDominator),
            "finite_normal_average" => Some(FiniteTransport::FiniteNormalAverage),
            _ => None,
        }
    }
}

pub fn finite_transport(kind: FiniteTransport, v: &Weight, elements: &[Element]) -> Result<Weight> {
    let out = orbit_sum(v, elements)?;
    if kind == FiniteTransport::FiniteNormalAverage {
        for g in elements {
            if out.translate(g)? != out {
                return Err(Error::Invariance(format!(
                    "the sum is not invariant under {}",
                    v.group().format_element(g).unwrap_or_else(|_| g.key())
                )));
            }
        }
    }
    Ok(out)
}

/// The function version `Σ_{r} f(r⁻¹x)`; invariance is checked on `window`.
pub fn finite_transport_function(
    kind: FiniteTransport,
    f: &TestFunction,
    elements: &[Element],
    window: &BallTable,
) -> Result<TestFunction> {
    if elements.is_empty() {
        return Err(Error::Precondition("orbit sum over an empty list".into()));
    }
    let group = f.group().clone();
    for r in elements {
        group.check(r)?;
    }
    let inner = f.clone();
    let list: Arc<Vec<Element>> = Arc::new(elements.to_vec());
    let terms = Arc::clone(&list);
    // An inner evaluation error surfaces as an out-of-range value.
    let predicate = Predicate::new(move |x| {
        terms
            .iter()
            .map(|r| inner.translated(r, x))
            .sum::<Result<Rational>>()
            .unwrap_or_else(|_| -rational::one())
    });
    let bound = f.bound() * Rational::from_integer(elements.len().into());
    let out = TestFunction::custom(&group, &format!("{}({})", kind.as_str(), f.spec()), bound, predicate);
    if kind == FiniteTransport::FiniteNormalAverage {
        for x in window.elements() {
            let here = out.evaluate(x)?;
            for g in list.iter() {
                if out.translated(g, x)? != here {
                    return Err(Error::Invariance(format!(
                        "the sum changes under {} at {}",
                        group.format_element(g).unwrap_or_else(|_| g.key()),
                        group.format_element(x).unwrap_or_else(|_| x.key())
                    )));
                }
            }
        }
    }
    Ok(out)
}
