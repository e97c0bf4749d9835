//! Certificate types and their verifiers.
//!
//! Verification recomputes everything from the group and the test function;
//! nothing here depends on the LP code that produced a certificate.

mod freeness;
mod json;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::functions::{TestFunction, Weight};
use crate::group::{ball, Element, Group, DEFAULT_CAP};
use crate::rational::{self, Rational};

pub use freeness::{free_to_depth, spell_letters, structural_verify_semigroup_violation, FreenessOutcome, FreenessWitness};
pub use json::{from_json, to_json, verify_json, FunctionResolver};

/// Structural checks run to at least this word depth.
pub const MIN_STRUCTURAL_DEPTH: usize = 8;

/// How far a verification reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// Checked at every point of a finite ball only.
    Window,
    /// Checked everywhere via a normal-form argument.
    Structural,
    /// A finite computation that settles the claim outright.
    Global,
}

impl Level {
    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Window => "window",
            Level::Structural => "structural",
            Level::Global => "global",
        }
    }

    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "window" => Some(Level::Window),
            "structural" => Some(Level::Structural),
            "global" => Some(Level::Global),
            _ => None,
        }
    }
}

/// Coefficients `t_i` and elements `g_i` with `Σ t_i < 0` and
/// `Σ t_i f(g_i⁻¹x) ≥ 0` claimed for all `x`.
#[derive(Clone, Debug)]
pub struct TranslateViolation {
    pub f: TestFunction,
    /// Sorted by element, no repeats, no zero coefficients, `Σ t = -1`.
    pub items: Vec<(Rational, Element)>,
    pub window_radius: usize,
    pub level: Level,
    pub provenance: Vec<String>,
}

impl TranslateViolation {
    /// Merges repeated elements and rescales to `Σ t = -1`.
    pub fn new(f: TestFunction, items: Vec<(Rational, Element)>, window_radius: usize) -> Result<TranslateViolation> {
        let mut merged = Weight::zero(f.group());
        for (t, g) in items {
            merged = merged.add(&Weight::from_entries(f.group(), [(g, t)])?)?;
        }
        let total = merged.total();
        if !total.is_negative() {
            return Err(Error::Certificate("violation coefficients must have a negative sum".into()));
        }
        let scale = -Rational::one() / total;
        Ok(TranslateViolation {
            items: merged.scale(&scale).entries().map(|(g, t)| (t.clone(), g.clone())).collect(),
            f,
            window_radius,
            level: Level::Window,
            provenance: Vec::new(),
        })
    }

    pub fn group(&self) -> &Group {
        self.f.group()
    }

    pub fn total(&self) -> Rational {
        self.items.iter().map(|(t, _)| t).sum()
    }

    /// `Σ t_i f(g_i⁻¹x)`.
    pub fn value_at(&self, x: &Element) -> Result<Rational> {
        let mut sum = Rational::zero();
        for (t, g) in &self.items {
            sum += t * self.f.translated(g, x)?;
        }
        Ok(sum)
    }
}

/// A nonnegative weight whose translates have nearly equal `f`-norms.
#[derive(Clone, Debug)]
pub struct RatioWitness {
    pub f: TestFunction,
    /// Identity first.
    pub set: Vec<Element>,
    pub epsilon: Rational,
    /// Normalised so that `‖u·f‖₁ = 1`.
    pub u: Weight,
    pub two_sided: bool,
    pub provenance: Vec<String>,
}

/// A nonnegative weight that is nearly invariant in the `f`-weighted norm.
#[derive(Clone, Debug)]
pub struct ReiterWitness {
    pub f: TestFunction,
    pub set: Vec<Element>,
    pub epsilon: Rational,
    /// Normalised so that `‖u·f‖₁ = 1`.
    pub u: Weight,
    pub provenance: Vec<String>,
}

/// Result of the windowed Chebyshev probe
/// `min max_{x ∈ W} |1 - Σ_g t_g (E(x) - E(g⁻¹x))|`.
#[derive(Clone, Debug)]
pub struct MooreProbe {
    pub e: TestFunction,
    pub translates: Vec<Element>,
    pub coefficients: Vec<Rational>,
    pub window_radius: usize,
    pub value: Rational,
}

impl MooreProbe {
    pub fn residual(&self, x: &Element) -> Result<Rational> {
        let mut r = rational::one();
        let ex = self.e.evaluate(x)?;
        for (g, t) in self.translates.iter().zip(&self.coefficients) {
            if !t.is_zero() {
                r -= t * (&ex - self.e.translated(g, x)?);
            }
        }
        Ok(r)
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Violation(TranslateViolation),
    Ratio(RatioWitness),
    Reiter(ReiterWitness),
    Freeness(FreenessWitness),
    Moore(MooreProbe),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Violation(_) => "translate_violation",
            Certificate::Ratio(_) => "ratio_witness",
            Certificate::Reiter(_) => "reiter_witness",
            Certificate::Freeness(_) => "freeness_witness",
            Certificate::Moore(_) => "moore_probe",
        }
    }

    pub fn group(&self) -> &Group {
        match self {
            Certificate::Violation(c) => c.f.group(),
            Certificate::Ratio(c) => c.f.group(),
            Certificate::Reiter(c) => c.f.group(),
            Certificate::Freeness(c) => &c.group,
            Certificate::Moore(c) => c.e.group(),
        }
    }

    /// True for kinds that refute a property rather than exhibit one.
    pub fn is_obstruction(&self) -> bool {
        match self {
            Certificate::Violation(_) | Certificate::Freeness(_) => true,
            Certificate::Moore(p) => p.value < rational::one(),
            _ => false,
        }
    }
}

/// Exact recomputation of a certificate's claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: &'static str,
    pub passed: bool,
    pub level: Level,
    pub window_radius: Option<usize>,
    /// Recomputed values, in a fixed order.
    pub quantities: Vec<(String, Rational)>,
    pub failures: Vec<String>,
}

impl VerificationReport {
    fn new(kind: &'static str, level: Level, window_radius: Option<usize>) -> Self {
        VerificationReport {
            kind,
            passed: true,
            level,
            window_radius,
            quantities: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, value: Rational) {
        self.quantities.push((name.into(), value));
    }

    fn fail(&mut self, message: impl Into<String>) {
        self.passed = false;
        self.failures.push(message.into());
    }

    pub fn quantity(&self, name: &str) -> Option<&Rational> {
        self.quantities.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

fn word(group: &Group, g: &Element) -> String {
    group.format_element(g).unwrap_or_else(|_| g.key())
}

fn count(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

pub fn verify_certificate(c: &Certificate, window_radius: usize) -> Result<VerificationReport> {
    verify_with_cap(c, window_radius, DEFAULT_CAP)
}

/// Witnesses and freeness checks ignore `window_radius`; violations and
/// Moore probes are checked on the ball of that radius.
pub fn verify_with_cap(c: &Certificate, window_radius: usize, cap: usize) -> Result<VerificationReport> {
    match c {
        Certificate::Violation(v) => verify_violation(v, window_radius, cap),
        Certificate::Ratio(w) => verify_ratio(w),
        Certificate::Reiter(w) => verify_reiter(w),
        Certificate::Freeness(w) => w.verify(cap),
        Certificate::Moore(p) => verify_moore(p, window_radius, cap),
    }
}

fn verify_violation(v: &TranslateViolation, radius: usize, cap: usize) -> Result<VerificationReport> {
    let group = v.group();
    let mut report = VerificationReport::new("translate_violation", Level::Window, Some(radius));
    let total = v.total();
    report.record("sum_t", total.clone());
    if total != -Rational::one() {
        report.fail(format!("coefficients sum to {}, not -1", rational::format(&total)));
    }
    let window = ball(group, &group.default_generators(), radius, cap)?;
    let mut min: Option<Rational> = None;
    for x in window.elements() {
        let value = v.value_at(x)?;
        if value.is_negative() && report.passed {
            report.fail(format!("counterexample x = {}: value {}", word(group, x), rational::format(&value)));
        }
        if min.as_ref().map_or(true, |m| value < *m) {
            min = Some(value);
        }
    }
    report.record("window_points", count(window.len()));
    report.record("min_window_value", min.unwrap_or_else(Rational::zero));
    if v.level == Level::Structural && report.passed {
        let structural = match structural_verify_semigroup_violation(v, radius.max(MIN_STRUCTURAL_DEPTH), cap) {
            Ok(r) => r,
            Err(e @ (Error::PatternMismatch(_) | Error::NotFree(_))) => {
                report.fail(format!("structural claim rejected: {e}"));
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        report.level = Level::Structural;
        report.quantities.extend(structural.quantities);
        if !structural.passed {
            report.passed = false;
            report.failures.extend(structural.failures);
        }
    }
    Ok(report)
}

fn check_weight(report: &mut VerificationReport, f: &TestFunction, set: &[Element], u: &Weight) -> Result<Rational> {
    let group = f.group();
    if u.group() != group {
        return Err(Error::GroupMismatch { group: group.spec() });
    }
    if set.first() != Some(&group.identity()) {
        report.fail("test set does not start with the identity");
    }
    if u.is_empty() || !u.is_nonnegative() {
        report.fail("weight must be nonzero and nonnegative");
    }
    let norm = u.weighted_norm(f, 1)?;
    report.record("norm", norm.clone());
    if !norm.is_one() {
        report.fail(format!("‖u·f‖₁ = {}, not 1", rational::format(&norm)));
    }
    Ok(norm)
}

fn verify_ratio(w: &RatioWitness) -> Result<VerificationReport> {
    let group = w.f.group();
    let mut report = VerificationReport::new("ratio_witness", Level::Global, None);
    let norm = check_weight(&mut report, &w.f, &w.set, &w.u)?;
    let mut defect = Rational::zero();
    for s in &w.set {
        let sum = w.u.translated_norm(s, &w.f)?;
        let d = if w.two_sided { (&sum - &norm).abs() } else { &sum - &norm };
        defect = defect.max(d);
        report.record(format!("sum[{}]", word(group, s)), sum);
    }
    report.record("defect", defect.clone());
    report.record("margin", &w.epsilon - &defect);
    if defect > w.epsilon {
        report.fail(format!(
            "defect {} exceeds epsilon {}",
            rational::format(&defect),
            rational::format(&w.epsilon)
        ));
    }
    Ok(report)
}

/// `Σ_x |u(s⁻¹x) - u(x)| f(x)`, summed over `supp(u) ∪ s·supp(u)`.
pub(crate) fn reiter_defect(u: &Weight, s: &Element, f: &TestFunction) -> Result<Rational> {
    let shifted = u.translate(s)?;
    let diff = shifted.add(&u.scale(&-Rational::one()))?;
    diff.weighted_norm(f, 1)
}

fn verify_reiter(w: &ReiterWitness) -> Result<VerificationReport> {
    let group = w.f.group();
    let mut report = VerificationReport::new("reiter_witness", Level::Global, None);
    let norm = check_weight(&mut report, &w.f, &w.set, &w.u)?;
    let mut worst = Rational::zero();
    for s in &w.set {
        let d = reiter_defect(&w.u, s, &w.f)?;
        worst = worst.max(d.clone());
        report.record(format!("defect[{}]", word(group, s)), d);
    }
    let relative = if norm.is_zero() { worst.clone() } else { &worst / &norm };
    report.record("defect", relative.clone());
    report.record("margin", &w.epsilon - &relative);
    if relative > w.epsilon {
        report.fail(format!(
            "defect {} exceeds epsilon {}",
            rational::format(&relative),
            rational::format(&w.epsilon)
        ));
    }
    Ok(report)
}

fn verify_moore(p: &MooreProbe, radius: usize, cap: usize) -> Result<VerificationReport> {
    let group = p.e.group();
    let mut report = VerificationReport::new("moore_probe", Level::Window, Some(radius));
    if p.translates.len() != p.coefficients.len() {
        return Err(Error::Certificate("one coefficient per translate required".into()));
    }
    let window = ball(group, &group.default_generators(), radius, cap)?;
    let mut worst = Rational::zero();
    for x in window.elements() {
        let ex = p.e.evaluate(x)?;
        if !(ex.is_zero() || ex.is_one()) {
            report.fail(format!("E is not 0/1-valued at {}", word(group, x)));
        }
        let r = p.residual(x)?;
        worst = worst.max(r.abs());
        report.record(format!("residual[{}]", word(group, x)), r);
    }
    report.record("value", worst.clone());
    if worst != p.value {
        report.fail(format!(
            "recomputed value {} differs from claimed {}",
            rational::format(&worst),
            rational::format(&p.value)
        ));
    }
    Ok(report)
}
