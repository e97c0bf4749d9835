//! Acceptance gate: one line per criterion, nonzero exit on any failure.
//! Each criterion runs against its own time budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::fm::{feasible, lp_oracle, Ineq, Verdict};
use common::instances::{membership_columns, random_instance};
use common::random::small_lp;
use conelab::certificates::{
    free_to_depth, structural_verify_semigroup_violation, to_json, verify_json, verify_with_cap, Certificate,
    FreenessOutcome, Level, TranslateViolation, MIN_STRUCTURAL_DEPTH,
};
use conelab::constructions::{jenkins_weight, JenkinsSpec};
use conelab::functions::{Predicate, QuerySpec, TestFunction};
use conelab::group::{ball, growth_report, parse_group, Element, GrowthLabel, Group};
use conelab::lp::{solve, LpProblem, LpStatus, Relation, Sense};
use conelab::rational::{int, ratio};
use conelab::search::{moore_gap, ratio_defect_lp, reiter_defect_lp, windowed_alternative, AlternativeBranch};
use conelab::Rational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 1 << 22;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn elements(g: &Group, words: &[&str]) -> Vec<Element> {
    words.iter().map(|w| g.parse_element(w).unwrap()).collect()
}

fn ball_size(spec: &str, gens: Option<&[&str]>, radius: usize) -> Result<usize, String> {
    let g = ok(parse_group(spec))?;
    let gens = match gens {
        Some(words) => elements(&g, words),
        None => g.default_generators(),
    };
    Ok(ok(ball(&g, &gens, radius, CAP))?.len())
}

fn c1_ball_counts() -> Outcome {
    let cases = [
        ("Z", None, 8, 17),
        ("Z^2", None, 8, 145),
        ("F2", None, 8, 13121),
        ("LL", Some(&["t", "t^-1", "a"][..]), 1, 4),
    ];
    for (spec, gens, radius, expected) in cases {
        let got = ball_size(spec, gens, radius)?;
        ensure!(got == expected, "{spec} |B_{radius}| = {got}, expected {expected}");
    }
    // closed forms: 2n+1, 2n²+2n+1, 2·3ⁿ-1
    for n in 0..=8usize {
        ensure!(ball_size("Z", None, n)? == 2 * n + 1, "Z formula at n = {n}");
        ensure!(ball_size("Z^2", None, n)? == 2 * n * n + 2 * n + 1, "Z^2 formula at n = {n}");
        ensure!(ball_size("F2", None, n)? == 2 * 3usize.pow(n as u32) - 1, "F2 formula at n = {n}");
    }
    Ok("17, 145, 13121, 4".into())
}

fn c2_growth() -> Outcome {
    let f2 = ok(parse_group("F2"))?;
    let r = ok(growth_report(&f2, &f2.default_generators(), 8, CAP))?;
    let last = r.ratios.last().cloned().ok_or("no ratios")?;
    ensure!(last == ratio(13121, 4373), "F2 ratio {last}");
    ensure!(last >= ratio(299, 100) && last <= ratio(301, 100), "F2 ratio {last} outside [2.99, 3.01]");
    ensure!(r.label == GrowthLabel::ExponentialLike, "F2 label {}", r.label.as_str());

    let z = ok(parse_group("Z"))?;
    let r = ok(growth_report(&z, &z.default_generators(), 12, CAP))?;
    // ratios[n] = |B_{n+1}|/|B_n|
    for (n, q) in r.ratios.iter().enumerate().skip(7) {
        ensure!(*q <= ratio(17, 15), "Z ratio |B_{}|/|B_{n}| is {q}", n + 1);
    }
    ensure!(r.label == GrowthLabel::PolynomialLike, "Z label {}", r.label.as_str());
    Ok(format!("F2 {last}, Z ratios <= 17/15 from n = 7"))
}

/// Feasibility of `Σ_x c_x col_x = 1`, `c ≥ 0` by elimination.
fn fm_membership(cols: &[Vec<Rational>], k: usize) -> bool {
    let n = cols.len();
    let mut rows = Vec::new();
    for s in 0..k {
        let row: Vec<Rational> = cols.iter().map(|c| c[s].clone()).collect();
        rows.push(Ineq::new(row.clone(), int(1)));
        rows.push(Ineq::new(row.iter().map(|v| -v).collect(), int(-1)));
    }
    for j in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[j] = int(1);
        rows.push(Ineq::new(unit, int(0)));
    }
    feasible(&rows, n)
}

fn c3_alternative() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut witnesses, mut violations, mut small, mut compared) = (0, 0, 0, 0);
    for _ in 0..100 {
        let inst = random_instance(&mut rng, 4);
        ensure!(inst.query.set.len() <= 4, "{}: |S| > 4", inst.label);
        let out = ok(windowed_alternative(&inst.f, &inst.query, CAP))?;
        let radius = inst.query.window_radius;
        let (cert, is_witness) = match out.branch {
            AlternativeBranch::Witness(w) => {
                witnesses += 1;
                (Certificate::Ratio(w), true)
            }
            AlternativeBranch::Violation(v) => {
                violations += 1;
                (Certificate::Violation(v), false)
            }
        };
        let report = ok(verify_with_cap(&cert, radius, CAP))?;
        ensure!(report.passed, "{}: {:?}", inst.label, report.failures);
        let cols = membership_columns(&inst);
        if cols.len() <= 8 {
            compared += 1;
            small += usize::from(cols.len() <= 3);
            ensure!(fm_membership(&cols, inst.query.set.len()) == is_witness, "{}: oracle disagrees", inst.label);
        }
    }
    ensure!(small > 0, "no instance with at most 3 variables");
    Ok(format!(
        "{witnesses} witnesses, {violations} violations, {compared} checked by elimination ({small} with <= 3 variables)"
    ))
}

fn z_fixture() -> (TestFunction, QuerySpec) {
    let g = parse_group("Z").unwrap();
    let f = TestFunction::half_space(&g, vec![1]).unwrap();
    let q = QuerySpec::new(&g, elements(&g, &["e", "x", "x^-1"]), ratio(1, 10), 10).unwrap();
    (f, q)
}

fn f2_fixture(set: &[&str]) -> (TestFunction, QuerySpec) {
    let g = parse_group("F2").unwrap();
    let f = TestFunction::semigroup(&g, g.parse_element("a").unwrap(), g.parse_element("b").unwrap(), 6).unwrap();
    let q = QuerySpec::new(&g, elements(&g, set), ratio(1, 10), 4).unwrap();
    (f, q)
}

fn f2_violation() -> Result<TranslateViolation, String> {
    let (f, q) = f2_fixture(&["e", "a^-1", "b^-1"]);
    match ok(windowed_alternative(&f, &q, CAP))?.branch {
        AlternativeBranch::Violation(mut v) => {
            let s = ok(structural_verify_semigroup_violation(&v, q.window_radius.max(MIN_STRUCTURAL_DEPTH), CAP))?;
            if s.passed && s.level == Level::Structural {
                v.level = Level::Structural;
            }
            Ok(v)
        }
        AlternativeBranch::Witness(_) => Err("F2 backward set gave a witness".into()),
    }
}

/// The three certificates of the canonical fixtures with their windows.
fn canonical_fixtures() -> Result<Vec<(Certificate, usize)>, String> {
    let (f, q) = z_fixture();
    let AlternativeBranch::Witness(w) = ok(windowed_alternative(&f, &q, CAP))?.branch else {
        return Err("Z half-line gave a violation".into());
    };
    let v = f2_violation()?;
    let (f, q) = f2_fixture(&["e", "a", "b"]);
    let AlternativeBranch::Witness(w2) = ok(windowed_alternative(&f, &q, CAP))?.branch else {
        return Err("F2 forward set gave a violation".into());
    };
    Ok(vec![(Certificate::Ratio(w), 10), (Certificate::Violation(v), 4), (Certificate::Ratio(w2), 4)])
}

fn c4_fixtures() -> Outcome {
    let certs = canonical_fixtures()?;
    let Certificate::Ratio(w) = &certs[0].0 else { unreachable!() };
    let z = w.f.group().clone();
    for s in ["e", "x", "x^-1"] {
        let s = ok(z.parse_element(s))?;
        // ‖(s·u)·f‖₁ = Σ_x u(x) f(s x), summed by hand
        let mut total = Rational::zero();
        for (x, ux) in w.u.entries() {
            total += ux * ok(w.f.evaluate(&ok(z.multiply(&s, x))?))?;
        }
        ensure!(total == int(1), "Z sum at {} is {total}", z.format_element(&s).unwrap());
    }
    let Certificate::Violation(v) = &certs[1].0 else { unreachable!() };
    let g = v.group().clone();
    let expected = vec![(int(1), g.identity()), (int(-1), ok(g.parse_element("a"))?), (int(-1), ok(g.parse_element("b"))?)];
    ensure!(v.items == expected, "violation items {:?}", v.items);
    ensure!(v.level == Level::Structural, "violation level {}", v.level.as_str());
    for (cert, radius) in &certs {
        let r = ok(verify_with_cap(cert, *radius, CAP))?;
        ensure!(r.passed, "{} failed: {:?}", cert.kind(), r.failures);
        if matches!(cert, Certificate::Violation(_)) {
            ensure!(r.level == Level::Structural, "verifier level {}", r.level.as_str());
        }
    }
    Ok("Z witness sums 1,1,1; F2 violation (1,e),(-1,a),(-1,b) structural; F2 forward witness".into())
}

fn c5_weak_duality() -> Outcome {
    let (f, q) = f2_fixture(&["e", "a^-1", "b^-1"]);
    let d = ok(ratio_defect_lp(&f, &q, true, CAP))?;
    let v = f2_violation()?;
    let t_sum: Rational = v.items.iter().map(|(t, _)| t.clone()).sum();
    let t_abs: Rational = v.items.iter().map(|(t, _)| t.abs()).sum();
    let bound = t_sum.abs() / t_abs;
    ensure!(d.lambda >= ratio(1, 3), "lambda* = {}", d.lambda);
    ensure!(d.lambda >= bound, "lambda* = {} below {bound}", d.lambda);
    let r = ok(verify_with_cap(&Certificate::Ratio(d.witness), 0, CAP))?;
    ensure!(r.passed, "defect witness failed: {:?}", r.failures);
    Ok(format!("lambda* = {} >= {bound}", d.lambda))
}

fn c6_defects() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut fixtures = 0;
    let mut draws = 0;
    while fixtures < 50 {
        draws += 1;
        ensure!(draws <= 500, "only {fixtures} usable fixtures in {draws} draws");
        let inst = random_instance(&mut rng, 1);
        let mut q = inst.query.clone();
        q.window_radius = 2;
        // f must be nonzero somewhere on the smallest window
        if ratio_defect_lp(&inst.f, &q, true, CAP).is_err() {
            continue;
        }
        let mut prev: Option<(Rational, Rational)> = None;
        for radius in 2..=4 {
            q.window_radius = radius;
            let rd = ok(ratio_defect_lp(&inst.f, &q, true, CAP))?.lambda;
            let re = ok(reiter_defect_lp(&inst.f, &q, CAP))?.epsilon;
            ensure!(re >= rd, "{} B{radius}: reiter {re} < ratio {rd}", inst.label);
            if let Some((pr, pe)) = &prev {
                ensure!(rd <= *pr, "{} B{radius}: ratio rose {pr} -> {rd}", inst.label);
                ensure!(re <= *pe, "{} B{radius}: reiter rose {pe} -> {re}", inst.label);
            }
            prev = Some((rd, re));
        }
        fixtures += 1;
    }
    Ok(format!("{fixtures} fixtures, windows B2..B4"))
}

fn jenkins_z(radius: usize) -> Result<conelab::constructions::JenkinsReport, String> {
    let z = ok(parse_group("Z"))?;
    let spec = ok(JenkinsSpec::new(&z, &z.default_generators(), ratio(1, 2), radius))?;
    ok(jenkins_weight(&spec, CAP))
}

const Z2_JENKINS_RADIUS: usize = 60;

fn jenkins_z2() -> Result<conelab::constructions::JenkinsReport, String> {
    let z2 = ok(parse_group("Z^2"))?;
    let spec = ok(JenkinsSpec::new(&z2, &z2.default_generators(), ratio(1, 10), Z2_JENKINS_RADIUS))?;
    ensure!(spec.set.len() == 4, "Z^2 step set has {} elements", spec.set.len());
    ok(jenkins_weight(&spec, CAP))
}

fn c7_jenkins() -> Outcome {
    let n = 12i64;
    let z = ok(parse_group("Z"))?;
    let spec = ok(JenkinsSpec::new(&z, &z.default_generators(), ratio(1, 2), n as usize))?;
    ensure!(spec.base == ratio(2, 3), "r = {}", spec.base);
    let report = jenkins_weight(&spec, CAP).map_err(|e| e.to_string())?;
    ensure!(report.pointwise_failures.is_empty(), "pointwise failures {:?}", report.pointwise_failures);
    let x = ok(z.parse_element("x"))?;
    for k in -(n - 1)..n {
        let g = ok(z.pow(&x, k))?;
        let here = report.weight.get(&g);
        ensure!(here == ratio(2, 3).pow(k.abs() as i32), "rho(x^{k}) = {here}");
        for step in [1, -1] {
            let q = report.weight.get(&ok(z.pow(&x, k + step))?) / &here;
            ensure!(q == ratio(2, 3) || q == ratio(3, 2), "rho ratio {q} at x^{k}");
            ensure!(q >= ratio(1, 2) && q <= ratio(3, 2), "rho ratio {q} outside [1-eps, 1+eps]");
        }
    }

    let report = jenkins_z2()?;
    let defect = report.defect().clone();
    ensure!(report.verification.passed, "Z^2 witness failed: {:?}", report.verification.failures);
    ensure!(defect <= ratio(1, 10), "Z^2 defect {defect}");
    let r = ok(verify_with_cap(&Certificate::Reiter(report.witness.clone()), 0, CAP))?;
    ensure!(r.passed && r.quantity("defect") == Some(&defect), "re-verification disagrees");
    Ok(format!("Z: r = 2/3, ratios in {{2/3, 3/2}}; Z^2 N = {Z2_JENKINS_RADIUS}: defect ~ {:.5}", conelab::rational::approx(&defect)))
}

fn c8_freeness() -> Outcome {
    for (spec, a, b) in [("F2", "a", "b"), ("LL", "t", "a*t")] {
        let g = ok(parse_group(spec))?;
        let (a, b) = (ok(g.parse_element(a))?, ok(g.parse_element(b))?);
        match ok(free_to_depth(&g, &a, &b, 10, CAP))? {
            FreenessOutcome::Free(w) => {
                let r = ok(w.verify(CAP))?;
                ensure!(r.passed, "{spec}: witness failed to verify");
            }
            FreenessOutcome::Collision { first, second } => {
                return Err(format!("{spec}: collision {first:?} = {second:?}"));
            }
        }
    }
    let z2 = ok(parse_group("Z^2"))?;
    let pool: Vec<Element> = ok(ball(&z2, &z2.default_generators(), 3, CAP))?.elements().cloned().collect();
    let mut pairs = 0;
    for a in &pool {
        for b in &pool {
            pairs += 1;
            ensure!(
                matches!(ok(free_to_depth(&z2, a, b, 2, CAP))?, FreenessOutcome::Collision { .. }),
                "Z^2 pair ({}, {}) survived depth 2",
                z2.format_element(a).unwrap(),
                z2.format_element(b).unwrap()
            );
        }
    }
    Ok(format!("F2 and LL free to depth 10; {pairs} Z^2 pairs from B3 collide by depth 2"))
}

/// Strong duality recomputed from scratch: primal feasibility, dual signs,
/// stationarity, and `c·x` equal to the dual objective.
fn strong_duality(p: &LpProblem, x: &[Rational], y: &conelab::lp::DualSolution) -> Result<(), String> {
    let dot = |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(u, v)| u * v).sum() };
    let min = p.sense == Sense::Minimize;
    // maximisation sign conventions, flipped for minimisation
    let nonneg = |v: &Rational| if min { !v.is_positive() } else { !v.is_negative() };
    let nonpos = |v: &Rational| if min { !v.is_negative() } else { !v.is_positive() };
    for (i, c) in p.constraints.iter().enumerate() {
        let lhs = dot(&c.coefficients, x);
        let (primal_ok, dual_ok) = match c.relation {
            Relation::Le => (lhs <= c.rhs, nonneg(&y.rows[i])),
            Relation::Ge => (lhs >= c.rhs, nonpos(&y.rows[i])),
            Relation::Eq => (lhs == c.rhs, true),
        };
        ensure!(primal_ok, "row {i} infeasible");
        ensure!(dual_ok, "row {i} dual sign");
    }
    let mut dual_value = dot(&y.rows, &p.constraints.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>());
    for j in 0..p.num_vars {
        let col: Rational = p.constraints.iter().zip(&y.rows).map(|(c, yi)| &c.coefficients[j] * yi).sum();
        ensure!(col + &y.lower[j] + &y.upper[j] == p.objective[j], "stationarity at x{j}");
        match &p.lower[j] {
            Some(l) => {
                ensure!(x[j] >= *l && nonpos(&y.lower[j]), "lower bound at x{j}");
                dual_value += l * &y.lower[j];
            }
            None => ensure!(y.lower[j].is_zero(), "dual on absent lower bound x{j}"),
        }
        match &p.upper[j] {
            Some(u) => {
                ensure!(x[j] <= *u && nonneg(&y.upper[j]), "upper bound at x{j}");
                dual_value += u * &y.upper[j];
            }
            None => ensure!(y.upper[j].is_zero(), "dual on absent upper bound x{j}"),
        }
    }
    let primal_value = dot(&p.objective, x);
    ensure!(primal_value == dual_value, "gap: {primal_value} vs {dual_value}");
    Ok(())
}

fn c9_lp_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut counts = [0usize; 3];
    for i in 0..200 {
        let p = small_lp(&mut rng);
        let out = ok(solve(&p))?;
        let got = match out.status {
            LpStatus::Optimal => {
                let x = out.primal.as_ref().ok_or("missing primal")?;
                let y = out.dual.as_ref().ok_or("missing dual")?;
                strong_duality(&p, x, y).map_err(|e| format!("LP {i}: {e}"))?;
                counts[0] += 1;
                Verdict::Optimal(out.objective_value.clone().ok_or("missing objective")?)
            }
            LpStatus::Infeasible => {
                counts[1] += 1;
                Verdict::Infeasible
            }
            LpStatus::Unbounded => {
                counts[2] += 1;
                Verdict::Unbounded
            }
        };
        ensure!(got == lp_oracle(&p), "LP {i}: solver {got:?}, oracle {:?}", lp_oracle(&p));
    }
    Ok(format!("{} optimal, {} infeasible, {} unbounded", counts[0], counts[1], counts[2]))
}

fn prefix_a(f2: &Group) -> TestFunction {
    TestFunction::custom(
        f2,
        "starts-with-a",
        int(1),
        Predicate::new(|x| match x {
            Element::Free(w) if w.first() == Some(&1) => int(1),
            _ => int(0),
        }),
    )
}

/// Fixture 10: the two probes.
fn moore_fixtures() -> Result<Vec<(Certificate, usize)>, String> {
    let z = ok(parse_group("Z"))?;
    let e = ok(TestFunction::half_space(&z, vec![1]))?;
    let w = ok(ball(&z, &z.default_generators(), 3, CAP))?;
    let zp = ok(moore_gap(&e, &elements(&z, &["x"]), &w))?.probe;

    let f2 = ok(parse_group("F2"))?;
    let t: Vec<Element> = ok(ball(&f2, &f2.default_generators(), 2, CAP))?
        .elements()
        .filter(|g| **g != f2.identity())
        .cloned()
        .collect();
    let w = ok(ball(&f2, &f2.default_generators(), 4, CAP))?;
    let fp = ok(moore_gap(&prefix_a(&f2), &t, &w))?.probe;
    Ok(vec![(Certificate::Moore(zp), 3), (Certificate::Moore(fp), 4)])
}

fn c10_moore() -> Outcome {
    let probes = moore_fixtures()?;
    let values: Vec<Rational> = probes
        .iter()
        .map(|(c, _)| match c {
            Certificate::Moore(p) => p.value.clone(),
            _ => unreachable!(),
        })
        .collect();
    ensure!(values[0] == int(1), "Z value {}", values[0]);
    ensure!(values[1] < int(1), "F2 value {}", values[1]);
    for (cert, radius) in &probes {
        let r = ok(verify_with_cap(cert, *radius, CAP))?;
        ensure!(r.passed, "probe failed to verify: {:?}", r.failures);
    }
    Ok(format!("Z value 1, F2 value {}", values[1]))
}

struct Resolver;

impl conelab::certificates::FunctionResolver for Resolver {
    fn function(&self, name: &str, group: &Group) -> Option<TestFunction> {
        (name == "starts-with-a").then(|| prefix_a(group))
    }
}

fn fixture_json() -> Result<Vec<String>, String> {
    let mut certs = canonical_fixtures()?;
    let z = jenkins_z(12)?;
    certs.push((Certificate::Reiter(z.witness), 0));
    certs.push((Certificate::Reiter(jenkins_z2()?.witness), 0));
    certs.extend(moore_fixtures()?);
    certs
        .iter()
        .map(|(c, radius)| {
            let report = ok(verify_with_cap(c, *radius, CAP))?;
            ok(to_json(c, &report))
        })
        .collect()
}

fn bump(v: &mut serde_json::Value) -> Result<(), String> {
    let s = v.as_str().ok_or("coefficient is not a string")?;
    let q = ok(conelab::rational::parse(s))? + ratio(1, 1000);
    *v = serde_json::Value::String(conelab::rational::format(&q));
    Ok(())
}

/// Every coefficient of small certificates; an even spread on large ones.
fn sample(len: usize) -> Vec<usize> {
    if len <= 40 {
        (0..len).collect()
    } else {
        (0..8).map(|k| k * (len - 1) / 7).collect()
    }
}

fn c11_reproducibility() -> Outcome {
    let first = fixture_json()?;
    let second = fixture_json()?;
    ensure!(first == second, "JSON differs between runs");
    let mut tampered = 0;
    for text in &first {
        let (_, report) = ok(verify_json(text, &Resolver, CAP))?;
        ensure!(report.passed, "untouched certificate fails: {:?}", report.failures);
        let doc: serde_json::Value = ok(serde_json::from_str(text))?;
        let mut paths: Vec<(&str, usize, Option<&str>)> = Vec::new();
        for (field, inner) in [("items", Some("t")), ("weight", Some("value")), ("coefficients", None)] {
            if let Some(list) = doc.get(field).and_then(|v| v.as_array()) {
                paths.extend(sample(list.len()).into_iter().map(|i| (field, i, inner)));
            }
        }
        ensure!(!paths.is_empty(), "no coefficients in a certificate");
        for (field, i, inner) in paths {
            let mut copy = doc.clone();
            let slot = &mut copy[field][i];
            match inner {
                Some(key) => bump(&mut slot[key])?,
                None => bump(slot)?,
            }
            let text = ok(serde_json::to_string_pretty(&copy))?;
            let still_passes = matches!(verify_json(&text, &Resolver, CAP), Ok((_, r)) if r.passed);
            ensure!(!still_passes, "tampering {field}[{i}] went unnoticed");
            tampered += 1;
        }
    }
    Ok(format!("{} certificates stable; {tampered} tampered copies all fail", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 11] = [
        (1, "ball counts", 5, c1_ball_counts),
        (2, "growth trend", 5, c2_growth),
        (3, "alternative exclusivity", 60, c3_alternative),
        (4, "canonical fixtures", 10, c4_fixtures),
        (5, "weak duality", 10, c5_weak_duality),
        (6, "defect ordering", 60, c6_defects),
        (7, "jenkins weights", 30, c7_jenkins),
        (8, "freeness", 10, c8_freeness),
        (9, "lp kernel", 60, c9_lp_kernel),
        (10, "moore probe", 20, c10_moore),
        (11, "reproducibility", 60, c11_reproducibility),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (tag, detail) = match result {
            Ok(d) if !over => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {n:>2} {name} ({:.2} s of {budget} s): {detail}", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
