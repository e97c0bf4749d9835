use conelab::lp::{LpProblem, Relation, Sense};
use conelab::rational::{int, ratio};
use conelab::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=3);
    ratio(rng.gen_range(-4..=4), q)
}

/// At most 4 variables and 6 rows, entries `p/q` with `|p| <= 4`, `q <= 3`.
pub fn small_lp(rng: &mut ChaCha8Rng) -> LpProblem {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=6);
    let sense = if rng.gen_bool(0.5) { Sense::Maximize } else { Sense::Minimize };
    let mut p = LpProblem::new(n, sense);
    p.set_objective((0..n).map(|_| small_rational(rng)).collect());
    for _ in 0..m {
        let row = (0..n).map(|_| small_rational(rng)).collect();
        let rel = match rng.gen_range(0..5) {
            0 => Relation::Eq,
            1 | 2 => Relation::Ge,
            _ => Relation::Le,
        };
        p.add_constraint(row, rel, small_rational(rng));
    }
    for j in 0..n {
        match rng.gen_range(0..6) {
            0 => {
                p.set_free(j);
            }
            1 => {
                p.set_bounds(j, None, Some(small_rational(rng)));
            }
            2 => {
                let l = small_rational(rng);
                let u = &l + int(rng.gen_range(0..4));
                p.set_bounds(j, Some(l), Some(u));
            }
            _ => {}
        }
    }
    p
}
