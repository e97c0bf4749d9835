//! Fourier–Motzkin elimination and vertex enumeration over exact rationals.

use conelab::lp::{LpProblem, Relation, Sense};
use conelab::Rational;
use num_traits::{One, Signed, Zero};

/// `coeffs · x >= rhs`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ineq {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    /// Original rows this one was combined from (Chernikov's criterion).
    pub history: u128,
}

impl Ineq {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Ineq { coeffs, rhs, history: 0 }
    }
}

fn normalise(mut q: Ineq) -> Ineq {
    let scale = q
        .coeffs
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.abs())
        .unwrap_or_else(|| if q.rhs.is_zero() { Rational::one() } else { q.rhs.abs() });
    for c in q.coeffs.iter_mut() {
        *c /= &scale;
    }
    q.rhs /= &scale;
    q
}

/// Eliminates variable `k`; returned rows no longer mention it. `round` is
/// the number of variables eliminated so far including this one; combined
/// rows built from more than `round + 1` originals are redundant.
pub fn eliminate(rows: &[Ineq], k: usize, round: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[k].is_positive() {
            pos.push(r);
        } else if r.coeffs[k].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let a = p.coeffs[k].clone();
            let b = -n.coeffs[k].clone();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| x * &b + y * &a)
                .collect();
            let rhs = &p.rhs * &b + &n.rhs * &a;
            let history = p.history | n.history;
            if history.count_ones() as usize > round + 1 {
                continue;
            }
            out.push(Ineq { coeffs, rhs, history });
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.into_iter()
        .map(normalise)
        .filter(|r| !(r.coeffs.iter().all(|c| c.is_zero()) && !r.rhs.is_positive()))
        .filter(|r| seen.insert((r.coeffs.clone(), r.rhs.clone())))
        .collect()
}

fn tag(mut rows: Vec<Ineq>) -> Vec<Ineq> {
    assert!(rows.len() <= 128);
    for (i, r) in rows.iter_mut().enumerate() {
        r.history = 1u128 << i;
    }
    rows
}

/// Feasibility of a system of `>=` rows by eliminating every variable.
pub fn feasible(rows: &[Ineq], nvars: usize) -> bool {
    let mut rows = tag(rows.to_vec());
    for k in 0..nvars {
        rows = eliminate(&rows, k, k + 1);
    }
    rows.iter().all(|r| !r.rhs.is_positive())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

fn problem_rows(p: &LpProblem, extra: usize) -> Vec<Ineq> {
    let n = p.num_vars + extra;
    let widen = |v: &[Rational]| {
        let mut w = v.to_vec();
        w.resize(n, Rational::zero());
        w
    };
    let mut rows = Vec::new();
    for c in &p.constraints {
        let a = widen(&c.coefficients);
        let neg: Vec<Rational> = a.iter().map(|x| -x.clone()).collect();
        match c.relation {
            Relation::Ge => rows.push(Ineq::new(a, c.rhs.clone())),
            Relation::Le => rows.push(Ineq::new(neg, -c.rhs.clone())),
            Relation::Eq => {
                rows.push(Ineq::new(a, c.rhs.clone()));
                rows.push(Ineq::new(neg, -c.rhs.clone()));
            }
        }
    }
    for j in 0..p.num_vars {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if let Some(l) = &p.lower[j] {
            rows.push(Ineq::new(e.clone(), l.clone()));
        }
        if let Some(u) = &p.upper[j] {
            rows.push(Ineq::new(e.iter().map(|x| -x.clone()).collect(), -u.clone()));
        }
    }
    rows
}

/// Status and optimum of an LP: adds `t <= c·x` (maximisation form) and
/// eliminates every `x`, leaving upper bounds on `t`.
pub fn lp_oracle(p: &LpProblem) -> Verdict {
    let n = p.num_vars;
    let sign = if p.sense == Sense::Maximize { Rational::one() } else { -Rational::one() };
    let mut rows = problem_rows(p, 1);
    let mut obj: Vec<Rational> = p.objective.iter().map(|c| c * &sign).collect();
    obj.push(-Rational::one());
    rows.push(Ineq::new(obj, Rational::zero()));
    let mut rows = tag(rows);
    for k in 0..n {
        rows = eliminate(&rows, k, k + 1);
    }
    let mut best: Option<Rational> = None;
    for r in &rows {
        let t = &r.coeffs[n];
        if t.is_zero() {
            if r.rhs.is_positive() {
                return Verdict::Infeasible;
            }
        } else {
            // t * coeff >= rhs with coeff < 0: t <= rhs / coeff
            assert!(t.is_negative());
            let ub = &r.rhs / t;
            best = Some(match best {
                Some(b) if b < ub => b,
                _ => ub,
            });
        }
    }
    match best {
        None => Verdict::Unbounded,
        Some(v) => Verdict::Optimal(v * sign),
    }
}

fn solve_square(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .into_iter()
        .zip(b)
        .map(|(mut r, bi)| {
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Best objective over all basic feasible points (every choice of `n`
/// tight rows). Only meaningful for bounded feasible problems.
pub fn best_vertex(p: &LpProblem) -> Option<Rational> {
    let n = p.num_vars;
    let rows = problem_rows(p, 0);
    let mut best: Option<Rational> = None;
    let m = rows.len();
    let mut idx: Vec<usize> = (0..n).collect();
    if n > m {
        return None;
    }
    loop {
        let a = idx.iter().map(|&i| rows[i].coeffs.clone()).collect();
        let b = idx.iter().map(|&i| rows[i].rhs.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            let ok = rows.iter().all(|r| {
                let lhs: Rational = r.coeffs.iter().zip(&x).map(|(c, v)| c * v).sum();
                lhs >= r.rhs
            });
            if ok {
                let v: Rational = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                let better = match (&best, p.sense) {
                    (None, _) => true,
                    (Some(b), Sense::Maximize) => v > *b,
                    (Some(b), Sense::Minimize) => v < *b,
                };
                if better {
                    best = Some(v);
                }
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < m - n + i {
                idx[i] += 1;
                for k in i + 1..n {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}
