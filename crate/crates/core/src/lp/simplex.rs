use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fast::Q;
use super::{Constraint, DualSolution, FarkasVector, LpOutcome, LpProblem, LpStatus, Relation, Sense};
use crate::error::Result;
use crate::rational::Rational;

type SparseRow = Vec<(usize, Rational)>;
type TRow = Vec<(usize, Q)>;

/// How an original variable is expressed through nonnegative columns.
#[derive(Clone, Debug)]
enum VarMap {
    /// `x = offset + col`
    Shift { col: usize, offset: Rational },
    /// `x = offset - col`
    Reflect { col: usize, offset: Rational },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

#[derive(Clone, Copy, Debug)]
enum RowOrigin {
    User(usize),
    Upper(usize),
}

/// The problem rewritten as `max c'·x'` over `x' >= 0`.
struct Standard {
    maps: Vec<VarMap>,
    ncols: usize,
    rows: Vec<(SparseRow, Relation, Rational)>,
    origins: Vec<RowOrigin>,
    cost: Vec<Rational>,
}

fn standardize(p: &LpProblem) -> Standard {
    let mut maps = Vec::with_capacity(p.num_vars);
    let mut ncols = 0;
    for j in 0..p.num_vars {
        let m = match (&p.lower[j], &p.upper[j]) {
            (Some(l), _) => VarMap::Shift { col: ncols, offset: l.clone() },
            (None, Some(u)) => VarMap::Reflect { col: ncols, offset: u.clone() },
            (None, None) => {
                ncols += 1;
                VarMap::Split { pos: ncols - 1, neg: ncols }
            }
        };
        ncols += 1;
        maps.push(m);
    }
    let transform = |coeffs: &[Rational], rhs: &Rational| {
        let mut row: SparseRow = Vec::new();
        let mut b = rhs.clone();
        for (j, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &maps[j] {
                VarMap::Shift { col, offset } => {
                    row.push((*col, a.clone()));
                    b -= a * offset;
                }
                VarMap::Reflect { col, offset } => {
                    row.push((*col, -a.clone()));
                    b -= a * offset;
                }
                VarMap::Split { pos, neg } => {
                    row.push((*pos, a.clone()));
                    row.push((*neg, -a.clone()));
                }
            }
        }
        row.sort_by_key(|(c, _)| *c);
        (row, b)
    };
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for (i, Constraint { coefficients, relation, rhs }) in p.constraints.iter().enumerate() {
        let (row, b) = transform(coefficients, rhs);
        rows.push((row, *relation, b));
        origins.push(RowOrigin::User(i));
    }
    for j in 0..p.num_vars {
        if let (Some(l), Some(u), VarMap::Shift { col, .. }) = (&p.lower[j], &p.upper[j], &maps[j]) {
            rows.push((vec![(*col, Rational::one())], Relation::Le, u - l));
            origins.push(RowOrigin::Upper(j));
        }
    }
    let sign = match p.sense {
        Sense::Maximize => Rational::one(),
        Sense::Minimize => -Rational::one(),
    };
    let mut cost = vec![Rational::zero(); ncols];
    for (j, c) in p.objective.iter().enumerate() {
        let c = c * &sign;
        match &maps[j] {
            VarMap::Shift { col, .. } => cost[*col] = c,
            VarMap::Reflect { col, .. } => cost[*col] = -c,
            VarMap::Split { pos, neg } => {
                cost[*neg] = -c.clone();
                cost[*pos] = c;
            }
        }
    }
    Standard { maps, ncols, rows, origins, cost }
}

struct Tableau {
    rows: Vec<TRow>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    ncols: usize,
    artificial: Vec<bool>,
    pivots: usize,
}

fn entry(row: &TRow, col: usize) -> Option<&Q> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `a - f·b` on sorted sparse rows.
fn axpy(a: &TRow, f: &Q, b: &TRow) -> TRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -&(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize, reduced: &mut [Q], value: &mut Q) {
        let p = entry(&self.rows[r], j).expect("nonzero pivot").clone();
        if !p.is_one() {
            for (_, v) in self.rows[r].iter_mut() {
                *v = &*v / &p;
            }
            self.rhs[r] = &self.rhs[r] / &p;
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r {
                continue;
            }
            if let Some(f) = entry(&self.rows[k], j).cloned() {
                self.rows[k] = axpy(&self.rows[k], &f, &prow);
                self.rhs[k] = &self.rhs[k] - &(&f * &prhs);
            }
        }
        let dj = reduced[j].clone();
        if !dj.is_zero() {
            for (c, v) in &prow {
                reduced[*c] = &reduced[*c] - &(&dj * v);
            }
            *value = &*value + &(&dj * &prhs);
        }
        self.rows[r] = prow;
        self.basis[r] = j;
        self.pivots += 1;
    }

    fn reduced_costs(&self, cost: &[Q]) -> (Vec<Q>, Q) {
        let mut d = cost.to_vec();
        let mut value = Q::zero();
        for (k, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[k]];
            if cb.is_zero() {
                continue;
            }
            for (c, v) in row {
                d[*c] = &d[*c] - &(cb * v);
            }
            value = &value + &(cb * &self.rhs[k]);
        }
        (d, value)
    }

    /// Bland's rule until optimal, or the entering column of an improving
    /// direction with no blocking row.
    fn run(&mut self, reduced: &mut [Q], value: &mut Q, allow: &dyn Fn(usize) -> bool) -> Option<usize> {
        loop {
            let entering = (0..self.ncols).find(|&j| allow(j) && reduced[j].is_positive());
            let Some(j) = entering else { return None };
            let mut best: Option<(usize, Q)> = None;
            for k in 0..self.rows.len() {
                let Some(a) = entry(&self.rows[k], j) else { continue };
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[k] / a;
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[k] < self.basis[*b]),
                };
                if better {
                    best = Some((k, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j, reduced, value),
                None => return Some(j),
            }
        }
    }

    /// `c_B B^-1`, read off the columns that formed the initial basis.
    fn duals(&self, cost: &[Q], initial: &[usize]) -> Vec<Rational> {
        initial
            .iter()
            .map(|&col| {
                self.rows
                    .iter()
                    .enumerate()
                    .filter_map(|(k, row)| {
                        let cb = &cost[self.basis[k]];
                        if cb.is_zero() {
                            return None;
                        }
                        entry(row, col).map(|v| (cb * v).to_rational())
                    })
                    .sum()
            })
            .collect()
    }

    fn basic_values(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.ncols];
        for (k, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[k].to_rational();
        }
        x
    }
}

fn to_user(maps: &[VarMap], xs: &[Rational], with_offset: bool) -> Vec<Rational> {
    maps.iter()
        .map(|m| match m {
            VarMap::Shift { col, offset } => {
                if with_offset { offset + &xs[*col] } else { xs[*col].clone() }
            }
            VarMap::Reflect { col, offset } => {
                if with_offset { offset - &xs[*col] } else { -xs[*col].clone() }
            }
            VarMap::Split { pos, neg } => &xs[*pos] - &xs[*neg],
        })
        .collect()
}

fn primitive(vectors: &mut [&mut Vec<Rational>]) {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for v in vectors.iter() {
        for r in v.iter() {
            lcm = lcm.lcm(r.denom());
        }
    }
    for v in vectors.iter() {
        for r in v.iter() {
            gcd = gcd.gcd(&(r.numer() * (&lcm / r.denom())));
        }
    }
    if gcd.is_zero() {
        return;
    }
    let scale = Rational::new(lcm, gcd);
    for v in vectors.iter_mut() {
        for r in v.iter_mut() {
            *r *= &scale;
        }
    }
}

/// Solves `p` exactly. Identical problems give identical outcomes.
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let std = standardize(p);
    let m = std.rows.len();
    let n = std.ncols;

    // flip rows to b >= 0 (and `>= 0` rows to `<= 0`, which need no
    // artificial), then append slack and artificial columns
    let mut sigma = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut rels = Vec::with_capacity(m);
    for (row, rel, b) in &std.rows {
        if b.is_negative() || (b.is_zero() && *rel == Relation::Ge) {
            sigma.push(-Rational::one());
            rows.push(row.iter().map(|(c, v)| (*c, Q::from(&-v.clone()))).collect::<TRow>());
            rhs.push(Q::from(&-b.clone()));
            rels.push(match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            });
        } else {
            sigma.push(Rational::one());
            rows.push(row.iter().map(|(c, v)| (*c, Q::from(v))).collect::<TRow>());
            rhs.push(Q::from(b));
            rels.push(*rel);
        }
    }
    let mut ncols = n;
    let mut artificial = vec![false; n];
    let mut initial = Vec::with_capacity(m);
    for i in 0..m {
        match rels[i] {
            Relation::Le => {
                rows[i].push((ncols, Q::one()));
                initial.push(ncols);
                artificial.push(false);
                ncols += 1;
            }
            Relation::Ge => {
                rows[i].push((ncols, -&Q::one()));
                artificial.push(false);
                ncols += 1;
                rows[i].push((ncols, Q::one()));
                initial.push(ncols);
                artificial.push(true);
                ncols += 1;
            }
            Relation::Eq => {
                rows[i].push((ncols, Q::one()));
                initial.push(ncols);
                artificial.push(true);
                ncols += 1;
            }
        }
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: initial.clone(),
        ncols,
        artificial,
        pivots: 0,
    };

    // phase 1: maximise -Σ artificials
    let phase1_cost: Vec<Q> = (0..ncols)
        .map(|j| if t.artificial[j] { -&Q::one() } else { Q::zero() })
        .collect();
    let (mut d, mut value) = t.reduced_costs(&phase1_cost);
    t.run(&mut d, &mut value, &|_| true);
    if value.is_negative() {
        let y = t.duals(&phase1_cost, &initial);
        let mut rows_m = vec![Rational::zero(); p.constraints.len()];
        let mut lower = vec![Rational::zero(); p.num_vars];
        let mut upper = vec![Rational::zero(); p.num_vars];
        for i in 0..m {
            let mult = match rels[i] {
                Relation::Le => y[i].clone(),
                Relation::Ge => -y[i].clone(),
                Relation::Eq => -(&y[i] * &sigma[i]),
            };
            match std.origins[i] {
                RowOrigin::User(u) => rows_m[u] = mult,
                RowOrigin::Upper(j) => upper[j] = mult,
            }
        }
        let mut beta = vec![Rational::zero(); n];
        for (i, row) in t_rows_original(&std, &sigma).iter().enumerate() {
            for (c, v) in row {
                beta[*c] += &y[i] * v;
            }
        }
        for (j, map) in std.maps.iter().enumerate() {
            match map {
                VarMap::Shift { col, .. } => lower[j] = beta[*col].clone(),
                VarMap::Reflect { col, .. } => upper[j] = beta[*col].clone(),
                VarMap::Split { pos, neg } => {
                    debug_assert!(beta[*pos].is_zero() && beta[*neg].is_zero());
                }
            }
        }
        primitive(&mut [&mut rows_m, &mut lower, &mut upper]);
        return Ok(LpOutcome {
            status: LpStatus::Infeasible,
            primal: None,
            objective_value: None,
            dual: None,
            farkas: Some(FarkasVector { rows: rows_m, lower, upper }),
            ray: None,
            pivots: t.pivots,
        });
    }

    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if !t.artificial[t.basis[r]] {
            continue;
        }
        let col = t.rows[r].iter().map(|(c, _)| *c).find(|&c| !t.artificial[c]);
        if let Some(col) = col {
            let mut scratch = vec![Q::zero(); ncols];
            let mut v = Q::zero();
            t.pivot(r, col, &mut scratch, &mut v);
        }
    }

    // phase 2
    let mut cost: Vec<Q> = std.cost.iter().map(Q::from).collect();
    cost.resize(ncols, Q::zero());
    let (mut d, mut value) = t.reduced_costs(&cost);
    let artificial = t.artificial.clone();
    let unbounded = t.run(&mut d, &mut value, &|j| !artificial[j]);
    let xs = t.basic_values();
    let x = to_user(&std.maps, &xs, true);
    let objective_value: Rational = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();

    if let Some(j) = unbounded {
        let mut dir = vec![Rational::zero(); ncols];
        dir[j] = Rational::one();
        for (k, row) in t.rows.iter().enumerate() {
            if let Some(a) = entry(row, j) {
                dir[t.basis[k]] = -a.to_rational();
            }
        }
        let ray = to_user(&std.maps, &dir, false);
        return Ok(LpOutcome {
            status: LpStatus::Unbounded,
            primal: Some(x),
            objective_value: Some(objective_value),
            dual: None,
            farkas: None,
            ray: Some(ray),
            pivots: t.pivots,
        });
    }

    let y = t.duals(&cost, &initial);
    let s = match p.sense {
        Sense::Maximize => Rational::one(),
        Sense::Minimize => -Rational::one(),
    };
    let mut rows_y = vec![Rational::zero(); p.constraints.len()];
    let mut lower = vec![Rational::zero(); p.num_vars];
    let mut upper = vec![Rational::zero(); p.num_vars];
    for i in 0..m {
        let v = &y[i] * &sigma[i] * &s;
        match std.origins[i] {
            RowOrigin::User(u) => rows_y[u] = v,
            RowOrigin::Upper(j) => upper[j] = v,
        }
    }
    for (j, map) in std.maps.iter().enumerate() {
        let mut residual = p.objective[j].clone() - &upper[j];
        for (c, yi) in p.constraints.iter().zip(&rows_y) {
            if !c.coefficients[j].is_zero() && !yi.is_zero() {
                residual -= &c.coefficients[j] * yi;
            }
        }
        match map {
            VarMap::Shift { .. } => lower[j] = residual,
            VarMap::Reflect { .. } => upper[j] = residual,
            VarMap::Split { .. } => debug_assert!(residual.is_zero()),
        }
    }
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        primal: Some(x),
        objective_value: Some(objective_value),
        dual: Some(DualSolution { rows: rows_y, lower, upper }),
        farkas: None,
        ray: None,
        pivots: t.pivots,
    })
}

/// Structural part of the sign-normalised rows (before slack columns).
fn t_rows_original(std: &Standard, sigma: &[Rational]) -> Vec<SparseRow> {
    std.rows
        .iter()
        .zip(sigma)
        .map(|((row, _, _), s)| row.iter().map(|(c, v)| (*c, v * s)).collect())
        .collect()
}
