//! Exact rational linear programming.
//!
//! [`solve`] runs a two-phase simplex with Bland's rule on a sparse rational
//! tableau and returns one of three certificates: an optimal primal/dual
//! pair with equal objective values, a Farkas vector proving infeasibility,
//! or a feasible point with an improving ray. [`LpOutcome::certify`] checks
//! whichever certificate is present against the original problem without
//! touching solver state.

mod dump;
mod fast;
mod simplex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use simplex::solve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `optimize objective·x` subject to the rows and per-variable bounds.
/// Variables default to `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LpProblem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Rational>,
    pub sense: Sense,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl LpProblem {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LpProblem {
            num_vars,
            constraints: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
            sense,
            lower: vec![Some(Rational::zero()); num_vars],
            upper: vec![None; num_vars],
        }
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) -> &mut Self {
        self.objective = objective;
        self
    }

    pub fn add_constraint(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self
    }

    /// Adds a row given as `(variable, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) -> &mut Self {
        let mut row = vec![Rational::zero(); self.num_vars];
        for (j, c) in terms {
            row[*j] += c;
        }
        self.add_constraint(row, relation, rhs)
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.lower[var] = None;
        self.upper[var] = None;
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars;
        if self.objective.len() != n || self.lower.len() != n || self.upper.len() != n {
            return Err(Error::Dimension(format!(
                "objective/bounds must have {n} entries"
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::Dimension(format!(
                    "row {i} has {} coefficients, expected {n}",
                    c.coefficients.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Dual solution for the objective as stated.
///
/// Stationarity: `Σ rows[i]·a_i + lower + upper = c` componentwise, and
/// `Σ rows[i]·b_i + Σ lower[j]·l_j + Σ upper[j]·u_j` equals the optimum.
/// For maximisation `rows[i] >= 0` on `<=` rows, `<= 0` on `>=` rows,
/// `lower <= 0`, `upper >= 0`; minimisation flips every sign condition.
/// Entries for absent bounds are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualSolution {
    pub rows: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
}

/// Infeasibility proof. Every row is read in `>=` form (`<=` rows negated,
/// bounds as `x_j >= l_j` and `-x_j >= -u_j`); inequality multipliers are
/// nonnegative, equality multipliers free. The combination has zero
/// coefficients and a positive right-hand side, i.e. `0 >= positive`.
/// Scaled to a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FarkasVector {
    pub rows: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Optimal point, or a feasible point when unbounded.
    pub primal: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
    pub dual: Option<DualSolution>,
    pub farkas: Option<FarkasVector>,
    pub ray: Option<Vec<Rational>>,
    pub pivots: usize,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn feasible(p: &LpProblem, x: &[Rational]) -> std::result::Result<(), String> {
    for (i, c) in p.constraints.iter().enumerate() {
        let lhs = dot(&c.coefficients, x);
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        };
        if !ok {
            return Err(format!("row {i} violated: {lhs} {} {}", c.relation.symbol(), c.rhs));
        }
    }
    for j in 0..p.num_vars {
        if p.lower[j].as_ref().is_some_and(|l| x[j] < *l) || p.upper[j].as_ref().is_some_and(|u| x[j] > *u) {
            return Err(format!("bound on x{j} violated"));
        }
    }
    Ok(())
}

impl LpOutcome {
    /// Exact check of the certificate carried by this outcome.
    pub fn certify(&self, p: &LpProblem) -> std::result::Result<(), String> {
        let n = p.num_vars;
        match self.status {
            LpStatus::Optimal => {
                let x = self.primal.as_ref().ok_or("missing primal")?;
                let y = self.dual.as_ref().ok_or("missing dual")?;
                feasible(p, x)?;
                let value = dot(&p.objective, x);
                if Some(&value) != self.objective_value.as_ref() {
                    return Err("reported objective differs from c·x".into());
                }
                let flip = p.sense == Sense::Minimize;
                let sign_ok = |v: &Rational, nonneg: bool| {
                    let nonneg = nonneg != flip;
                    if nonneg { !v.is_negative() } else { !v.is_positive() }
                };
                for (i, c) in p.constraints.iter().enumerate() {
                    let ok = match c.relation {
                        Relation::Le => sign_ok(&y.rows[i], true),
                        Relation::Ge => sign_ok(&y.rows[i], false),
                        Relation::Eq => true,
                    };
                    if !ok {
                        return Err(format!("dual sign wrong on row {i}"));
                    }
                }
                let mut dual_value = dot(&y.rows, &p.constraints.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>());
                for j in 0..n {
                    let mut col: Rational = p
                        .constraints
                        .iter()
                        .zip(&y.rows)
                        .map(|(c, yi)| &c.coefficients[j] * yi)
                        .sum();
                    col += &y.lower[j];
                    col += &y.upper[j];
                    if col != p.objective[j] {
                        return Err(format!("dual stationarity fails at x{j}"));
                    }
                    match &p.lower[j] {
                        Some(l) => {
                            if !sign_ok(&y.lower[j], false) {
                                return Err(format!("lower-bound dual sign wrong at x{j}"));
                            }
                            dual_value += l * &y.lower[j];
                        }
                        None if !y.lower[j].is_zero() => return Err(format!("dual on absent bound x{j}")),
                        None => {}
                    }
                    match &p.upper[j] {
                        Some(u) => {
                            if !sign_ok(&y.upper[j], true) {
                                return Err(format!("upper-bound dual sign wrong at x{j}"));
                            }
                            dual_value += u * &y.upper[j];
                        }
                        None if !y.upper[j].is_zero() => return Err(format!("dual on absent bound x{j}")),
                        None => {}
                    }
                }
                if dual_value != value {
                    return Err(format!("duality gap: primal {value}, dual {dual_value}"));
                }
                Ok(())
            }
            LpStatus::Infeasible => {
                let f = self.farkas.as_ref().ok_or("missing Farkas vector")?;
                let mut combo = vec![Rational::zero(); n];
                let mut rhs = Rational::zero();
                for (c, m) in p.constraints.iter().zip(&f.rows) {
                    let s = match c.relation {
                        Relation::Le => {
                            if m.is_negative() {
                                return Err("negative multiplier on inequality".into());
                            }
                            -m.clone()
                        }
                        Relation::Ge => {
                            if m.is_negative() {
                                return Err("negative multiplier on inequality".into());
                            }
                            m.clone()
                        }
                        Relation::Eq => m.clone(),
                    };
                    for j in 0..n {
                        combo[j] += &s * &c.coefficients[j];
                    }
                    rhs += &s * &c.rhs;
                }
                for j in 0..n {
                    if f.lower[j].is_negative() || f.upper[j].is_negative() {
                        return Err("negative bound multiplier".into());
                    }
                    match &p.lower[j] {
                        Some(l) => {
                            combo[j] += &f.lower[j];
                            rhs += l * &f.lower[j];
                        }
                        None if !f.lower[j].is_zero() => return Err("multiplier on absent bound".into()),
                        None => {}
                    }
                    match &p.upper[j] {
                        Some(u) => {
                            combo[j] -= &f.upper[j];
                            rhs -= u * &f.upper[j];
                        }
                        None if !f.upper[j].is_zero() => return Err("multiplier on absent bound".into()),
                        None => {}
                    }
                }
                if combo.iter().any(|c| !c.is_zero()) {
                    return Err("Farkas combination has nonzero coefficients".into());
                }
                if !rhs.is_positive() {
                    return Err("Farkas combination does not reach a contradiction".into());
                }
                Ok(())
            }
            LpStatus::Unbounded => {
                let x = self.primal.as_ref().ok_or("missing feasible point")?;
                let d = self.ray.as_ref().ok_or("missing ray")?;
                feasible(p, x)?;
                for (i, c) in p.constraints.iter().enumerate() {
                    let v = dot(&c.coefficients, d);
                    let ok = match c.relation {
                        Relation::Le => !v.is_positive(),
                        Relation::Eq => v.is_zero(),
                        Relation::Ge => !v.is_negative(),
                    };
                    if !ok {
                        return Err(format!("ray leaves row {i}"));
                    }
                }
                for j in 0..n {
                    if (p.lower[j].is_some() && d[j].is_negative()) || (p.upper[j].is_some() && d[j].is_positive()) {
                        return Err(format!("ray leaves bound on x{j}"));
                    }
                }
                let gain = dot(&p.objective, d);
                let improves = match p.sense {
                    Sense::Maximize => gain.is_positive(),
                    Sense::Minimize => gain.is_negative(),
                };
                if !improves {
                    return Err("ray does not improve the objective".into());
                }
                Ok(())
            }
        }
    }
}

pub use dump::{dump_outcome, dump_problem};
