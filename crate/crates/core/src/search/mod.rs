//! LP formulations that produce certificates: the windowed alternative,
//! defect-minimising ratio and Reiter programs, the Moore Chebyshev probe
//! and a scan for free pairs.
//!
//! Every search is confined to a window `W`, a ball around the identity.
//! Witnesses found this way are global (all sums are finite); violations
//! are only window-level until upgraded by a structural check.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};

use crate::certificates::{
    free_to_depth, FreenessOutcome, FreenessWitness, MooreProbe, RatioWitness, ReiterWitness,
    TranslateViolation,
};
use crate::error::{Error, Result};
use crate::functions::{QuerySpec, TestFunction, Weight};
use crate::group::{ball, BallTable, Element, Group};
use crate::lp::{dump_outcome, dump_problem, solve, LpOutcome, LpProblem, LpStatus, Relation, Sense};
use crate::rational::{self, Rational};

/// Text dump of one LP solved during a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpTrace {
    pub label: String,
    pub problem: String,
    pub outcome: String,
}

impl LpTrace {
    fn new(label: &str, p: &LpProblem, o: &LpOutcome) -> LpTrace {
        LpTrace {
            label: label.into(),
            problem: dump_problem(p),
            outcome: dump_outcome(o),
        }
    }

    pub fn render(traces: &[LpTrace]) -> String {
        traces
            .iter()
            .map(|t| format!("# {}\n{}{}", t.label, t.problem, t.outcome))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Clone, Debug)]
pub enum AlternativeBranch {
    /// Two-sided ratio witness with `ε = 0`.
    Witness(RatioWitness),
    /// Window-level violation.
    Violation(TranslateViolation),
}

#[derive(Clone, Debug)]
pub struct AlternativeOutcome {
    pub branch: AlternativeBranch,
    pub traces: Vec<LpTrace>,
}

/// The translate matrix `f(s·x)` for `s` in the test set and `x` in the
/// window, with repeated columns collapsed onto their first occurrence.
struct Columns {
    points: Vec<Element>,
    /// `values[s][j] = f(s·points[j])`.
    values: Vec<Vec<Rational>>,
}

fn distinct_columns(f: &TestFunction, set: &[Element], window: &BallTable) -> Result<Columns> {
    let group = f.group();
    let mut seen: HashMap<Vec<Rational>, ()> = HashMap::new();
    let mut points = Vec::new();
    let mut cols = Vec::new();
    for x in window.elements() {
        let col = set
            .iter()
            .map(|s| f.evaluate(&group.mul(s, x)))
            .collect::<Result<Vec<_>>>()?;
        if col.iter().all(Zero::is_zero) || seen.insert(col.clone(), ()).is_some() {
            continue;
        }
        points.push(x.clone());
        cols.push(col);
    }
    let values = (0..set.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(Columns { points, values })
}

fn check_set(group: &Group, q: &QuerySpec) -> Result<()> {
    if q.set.first() != Some(&group.identity()) {
        return Err(Error::Precondition("the test set must start with the identity".into()));
    }
    q.set.iter().try_for_each(|s| group.check(s))
}

fn sparse(row: &[Rational]) -> Vec<(usize, Rational)> {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

/// Decides whether `Σ_x c_x f(s·x) = 1` for all `s ∈ S` has a solution
/// `c ≥ 0` supported in the window. Infeasibility yields the violation
/// `(-τ_s, s⁻¹)` from a separating `τ` (`Σ_s τ_s f(s·x) ≤ 0` on `W`,
/// `Σ τ > 0`); among those, `τ` maximises `Σ τ / Σ |τ|`, which makes the
/// violation canonical and gives the sharpest weak-duality bound.
pub fn windowed_alternative(f: &TestFunction, q: &QuerySpec, cap: usize) -> Result<AlternativeOutcome> {
    let group = f.group();
    check_set(group, q)?;
    let window = q.window(group, cap)?;
    let cols = distinct_columns(f, &q.set, &window)?;
    let n = cols.points.len();
    let mut p = LpProblem::new(n, Sense::Minimize);
    for row in &cols.values {
        p.add_sparse(&sparse(row), Relation::Eq, rational::one());
    }
    let out = solve(&p)?;
    let mut traces = vec![LpTrace::new("membership", &p, &out)];
    if out.status == LpStatus::Optimal {
        let c = out.primal.expect("optimal outcome has a primal point");
        let u = Weight::from_entries(group, cols.points.iter().cloned().zip(c))?;
        return Ok(AlternativeOutcome {
            branch: AlternativeBranch::Witness(RatioWitness {
                f: f.clone(),
                set: q.set.clone(),
                epsilon: Rational::zero(),
                u,
                two_sided: true,
                provenance: Vec::new(),
            }),
            traces,
        });
    }

    // τ = τ⁺ - τ⁻; maximise Σ τ subject to separation and Σ |τ| ≤ 1.
    let k = q.set.len();
    let mut p = LpProblem::new(2 * k, Sense::Maximize);
    let mut objective = vec![rational::one(); k];
    objective.extend(vec![-rational::one(); k]);
    p.set_objective(objective);
    for j in 0..n {
        let mut row = Vec::with_capacity(2 * k);
        for s in 0..k {
            row.push((s, cols.values[s][j].clone()));
            row.push((k + s, -cols.values[s][j].clone()));
        }
        row.retain(|(_, v)| !v.is_zero());
        p.add_sparse(&row, Relation::Le, Rational::zero());
    }
    p.add_constraint(vec![rational::one(); 2 * k], Relation::Le, rational::one());
    let out = solve(&p)?;
    traces.push(LpTrace::new("separation", &p, &out));
    let tau = match (&out.status, &out.primal, &out.objective_value) {
        (LpStatus::Optimal, Some(x), Some(v)) if v.is_positive() => x,
        _ => return Err(Error::Certificate("no separating vector for an infeasible membership system".into())),
    };
    let items = (0..k)
        .map(|s| (-(&tau[s] - &tau[k + s]), group.inv(&q.set[s])))
        .collect();
    Ok(AlternativeOutcome {
        branch: AlternativeBranch::Violation(TranslateViolation::new(f.clone(), items, q.window_radius)?),
        traces,
    })
}

#[derive(Clone, Debug)]
pub struct RatioDefect {
    pub lambda: Rational,
    /// Witness with `epsilon = lambda`.
    pub witness: RatioWitness,
    /// Row duals: the normalisation row, then one (one-sided) or two
    /// (two-sided) rows per non-identity `s`.
    pub dual: Vec<Rational>,
    pub traces: Vec<LpTrace>,
}

/// Minimises `λ` subject to `|Σ_x u(x) f(s·x) - 1| ≤ λ` (or only the upper
/// side when `two_sided` is false), `Σ_x u(x) f(x) = 1`, `u ≥ 0` on `W`.
pub fn ratio_defect_lp(f: &TestFunction, q: &QuerySpec, two_sided: bool, cap: usize) -> Result<RatioDefect> {
    let group = f.group();
    check_set(group, q)?;
    let window = q.window(group, cap)?;
    let cols = distinct_columns(f, &q.set, &window)?;
    if cols.values[0].iter().all(Zero::is_zero) {
        return Err(Error::Precondition("f vanishes on the window".into()));
    }
    let n = cols.points.len();
    let lambda = n;
    let mut p = LpProblem::new(n + 1, Sense::Minimize);
    let mut objective = vec![Rational::zero(); n + 1];
    objective[lambda] = rational::one();
    p.set_objective(objective);
    p.add_sparse(&sparse(&cols.values[0]), Relation::Eq, rational::one());
    for row in &cols.values[1..] {
        let mut upper = sparse(row);
        upper.push((lambda, -rational::one()));
        p.add_sparse(&upper, Relation::Le, rational::one());
        if two_sided {
            let mut lower = sparse(row);
            lower.push((lambda, rational::one()));
            p.add_sparse(&lower, Relation::Ge, rational::one());
        }
    }
    let out = solve(&p)?;
    let traces = vec![LpTrace::new("ratio defect", &p, &out)];
    let (x, value, dual) = match out {
        LpOutcome {
            status: LpStatus::Optimal,
            primal: Some(x),
            objective_value: Some(v),
            dual: Some(d),
            ..
        } => (x, v, d.rows),
        _ => return Err(Error::Certificate("ratio defect program did not reach an optimum".into())),
    };
    let u = Weight::from_entries(group, cols.points.iter().cloned().zip(x.into_iter().take(n)))?;
    Ok(RatioDefect {
        lambda: value.clone(),
        witness: RatioWitness {
            f: f.clone(),
            set: q.set.clone(),
            epsilon: value,
            u,
            two_sided,
            provenance: Vec::new(),
        },
        dual,
        traces,
    })
}

#[derive(Clone, Debug)]
pub struct ReiterDefect {
    pub epsilon: Rational,
    /// Witness with `epsilon` equal to the optimum.
    pub witness: ReiterWitness,
    pub traces: Vec<LpTrace>,
}

/// Minimises `λ` subject to `Σ_y f(y) |u(s⁻¹y) - u(y)| ≤ λ` for each
/// `s`, `Σ u f = 1`, `u ≥ 0` on `W`, with `y` ranging over the points of
/// `S·W ∪ W` where `f` is positive.
///
/// Each absolute value `|d|` is written as `d + 2q` with `q ≥ 0`,
/// `q + d ≥ 0`: one row per term and no artificial columns.
pub fn reiter_defect_lp(f: &TestFunction, q: &QuerySpec, cap: usize) -> Result<ReiterDefect> {
    let group = f.group();
    check_set(group, q)?;
    let window = q.window(group, cap)?;
    let points: Vec<Element> = window.elements().cloned().collect();
    let index: HashMap<&Element, usize> = points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = points.len();

    let mut fvals = Vec::with_capacity(n);
    for x in &points {
        fvals.push(f.evaluate(x)?);
    }
    if fvals.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("f vanishes on the window".into()));
    }
    // Points y of S·W ∪ W with f(y) > 0, in canonical order.
    let mut ys: BTreeMap<Element, Rational> = BTreeMap::new();
    for s in &q.set {
        for x in &points {
            let y = group.mul(s, x);
            if !ys.contains_key(&y) {
                let fy = f.evaluate(&y)?;
                if fy.is_positive() {
                    ys.insert(y, fy);
                }
            }
        }
    }
    // (s index, u index of y, u index of s⁻¹y, f(y))
    let mut terms: Vec<(usize, Option<usize>, Option<usize>, Rational)> = Vec::new();
    for (si, s) in q.set.iter().enumerate().skip(1) {
        let s_inv = group.inv(s);
        for (y, fy) in &ys {
            let shifted = index.get(&group.mul(&s_inv, y)).copied();
            let here = index.get(y).copied();
            if shifted.is_some() || here.is_some() {
                terms.push((si, here, shifted, fy.clone()));
            }
        }
    }
    let lambda = n;
    let num_vars = n + 1 + terms.len();
    let mut p = LpProblem::new(num_vars, Sense::Minimize);
    let mut objective = vec![Rational::zero(); num_vars];
    objective[lambda] = rational::one();
    p.set_objective(objective);
    p.add_sparse(&sparse(&fvals), Relation::Eq, rational::one());
    let mut per_s: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for (k, (si, here, shifted, fy)) in terms.iter().enumerate() {
        let qk = n + 1 + k;
        // d = u(s⁻¹y) - u(y); row q + d ≥ 0, and f(y)(d + 2q) into the s-row
        let mut d = Vec::with_capacity(2);
        if let Some(j) = shifted {
            d.push((*j, rational::one()));
        }
        if let Some(j) = here {
            d.push((*j, -rational::one()));
        }
        let mut row = d.clone();
        row.push((qk, rational::one()));
        p.add_sparse(&row, Relation::Ge, Rational::zero());
        let acc = per_s.entry(*si).or_default();
        for (j, c) in d {
            *acc.entry(j).or_insert_with(Rational::zero) += c * fy;
        }
        *acc.entry(qk).or_insert_with(Rational::zero) += rational::int(2) * fy;
    }
    for (_, acc) in per_s {
        let mut row: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.push((lambda, -rational::one()));
        p.add_sparse(&row, Relation::Le, Rational::zero());
    }
    let out = solve(&p)?;
    let traces = vec![LpTrace::new("reiter defect", &p, &out)];
    let (x, value) = match out {
        LpOutcome {
            status: LpStatus::Optimal,
            primal: Some(x),
            objective_value: Some(v),
            ..
        } => (x, v),
        _ => return Err(Error::Certificate("Reiter defect program did not reach an optimum".into())),
    };
    let u = Weight::from_entries(group, points.iter().cloned().zip(x.into_iter().take(n)))?;
    Ok(ReiterDefect {
        epsilon: value.clone(),
        witness: ReiterWitness {
            f: f.clone(),
            set: q.set.clone(),
            epsilon: value,
            u,
            provenance: Vec::new(),
        },
        traces,
    })
}

#[derive(Clone, Debug)]
pub struct MooreOutcome {
    pub probe: MooreProbe,
    pub traces: Vec<LpTrace>,
}

/// Minimises `max_{x ∈ W} |1 - Σ_{g ∈ T} t_g (E(x) - E(g⁻¹x))|` over real
/// `t`. The window value is a probe, not a bound on the global distance.
pub fn moore_gap(e: &TestFunction, translates: &[Element], window: &BallTable) -> Result<MooreOutcome> {
    let group = e.group();
    translates.iter().try_for_each(|g| group.check(g))?;
    let k = translates.len();
    let lambda = k;
    let mut rows: HashMap<Vec<Rational>, ()> = HashMap::new();
    let mut p = LpProblem::new(k + 1, Sense::Minimize);
    let mut objective = vec![Rational::zero(); k + 1];
    objective[lambda] = rational::one();
    p.set_objective(objective);
    for j in 0..k {
        p.set_free(j);
    }
    for x in window.elements() {
        let ex = e.evaluate(x)?;
        if !(ex.is_zero() || ex == rational::one()) {
            return Err(Error::Precondition("E must take values in {0, 1}".into()));
        }
        let d = translates
            .iter()
            .map(|g| Ok(&ex - e.translated(g, x)?))
            .collect::<Result<Vec<Rational>>>()?;
        if rows.insert(d.clone(), ()).is_some() {
            continue;
        }
        // -Σ t d - λ ≤ -1 and -Σ t d + λ ≥ -1
        let neg: Vec<(usize, Rational)> = sparse(&d).into_iter().map(|(j, v)| (j, -v)).collect();
        let mut upper = neg.clone();
        upper.push((lambda, -rational::one()));
        p.add_sparse(&upper, Relation::Le, -rational::one());
        let mut lower = neg;
        lower.push((lambda, rational::one()));
        p.add_sparse(&lower, Relation::Ge, -rational::one());
    }
    let out = solve(&p)?;
    let traces = vec![LpTrace::new("moore gap", &p, &out)];
    let (x, value) = match out {
        LpOutcome {
            status: LpStatus::Optimal,
            primal: Some(x),
            objective_value: Some(v),
            ..
        } => (x, v),
        _ => return Err(Error::Certificate("Moore program did not reach an optimum".into())),
    };
    Ok(MooreOutcome {
        probe: MooreProbe {
            e: e.clone(),
            translates: translates.to_vec(),
            coefficients: x[..k].to_vec(),
            window_radius: window.radius,
            value,
        },
        traces,
    })
}

/// Pairs `a < b` from `B_2 \ {e}` (canonical order) that are free to
/// `depth`, at most `limit` of them.
pub fn find_free_pairs(
    group: &Group,
    gens: &[Element],
    depth: usize,
    limit: usize,
    cap: usize,
) -> Result<Vec<FreenessWitness>> {
    if depth < 2 {
        return Err(Error::Precondition("freeness depth must be at least 2".into()));
    }
    let candidates: Vec<Element> = ball(group, gens, 2, cap)?
        .elements()
        .filter(|g| **g != group.identity())
        .cloned()
        .collect();
    let mut sorted = candidates;
    sorted.sort();
    let mut found = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if found.len() >= limit {
                return Ok(found);
            }
            if let FreenessOutcome::Free(w) = free_to_depth(group, a, b, depth, cap)? {
                found.push(w);
            }
        }
    }
    Ok(found)
}
