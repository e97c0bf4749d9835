//! Line-oriented text dumps of problems and outcomes, rationals as `p/q`.

use std::fmt::Write;

use super::{LpOutcome, LpProblem, Sense};
use crate::rational::{format, Rational};

fn join(v: &[Rational]) -> String {
    v.iter().map(format).collect::<Vec<_>>().join(" ")
}

fn bound(b: &Option<Rational>) -> String {
    b.as_ref().map(format).unwrap_or_else(|| "none".into())
}

pub fn dump_problem(p: &LpProblem) -> String {
    let mut out = String::new();
    let sense = match p.sense {
        Sense::Maximize => "max",
        Sense::Minimize => "min",
    };
    writeln!(out, "vars {}", p.num_vars).unwrap();
    writeln!(out, "{sense} {}", join(&p.objective)).unwrap();
    for c in &p.constraints {
        writeln!(out, "row {} {} {}", join(&c.coefficients), c.relation.symbol(), format(&c.rhs)).unwrap();
    }
    for j in 0..p.num_vars {
        writeln!(out, "bound {j} {} {}", bound(&p.lower[j]), bound(&p.upper[j])).unwrap();
    }
    out
}

pub fn dump_outcome(o: &LpOutcome) -> String {
    let mut out = String::new();
    writeln!(out, "status {:?}", o.status).unwrap();
    if let Some(x) = &o.primal {
        writeln!(out, "primal {}", join(x)).unwrap();
    }
    if let Some(v) = &o.objective_value {
        writeln!(out, "value {}", format(v)).unwrap();
    }
    if let Some(d) = &o.dual {
        writeln!(out, "dual {}", join(&d.rows)).unwrap();
        writeln!(out, "dual_lower {}", join(&d.lower)).unwrap();
        writeln!(out, "dual_upper {}", join(&d.upper)).unwrap();
    }
    if let Some(f) = &o.farkas {
        writeln!(out, "farkas {}", join(&f.rows)).unwrap();
        writeln!(out, "farkas_lower {}", join(&f.lower)).unwrap();
        writeln!(out, "farkas_upper {}", join(&f.upper)).unwrap();
    }
    if let Some(r) = &o.ray {
        writeln!(out, "ray {}", join(r)).unwrap();
    }
    writeln!(out, "pivots {}", o.pivots).unwrap();
    out
}
