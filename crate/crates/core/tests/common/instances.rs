//! Random (test function, test set, window) triples over catalog groups.

use conelab::functions::{parse_function, QuerySpec, TestFunction};
use conelab::group::{ball, parse_group, Element, Group};
use conelab::rational::ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub label: String,
    pub f: TestFunction,
    pub query: QuerySpec,
}

const CATALOG: &[(&str, &[&str])] = &[
    ("Z", &["half:Z^1:1", "const:1", "ball:2", "subgroup:mod:2", "half:Z^1:-1"]),
    ("Z^2", &["half:Z^2:1,0", "half:Z^2:1,1", "half:Z^2:2,-1", "subgroup:mod:2,0", "ball:2"]),
    ("F2", &["semigroup:a,b", "semigroup:a^-1,b", "ball:2", "const:1/2"]),
    ("H3", &["ball:2", "const:1"]),
    ("LL", &["semigroup:t,a*t", "ball:2"]),
    ("BS1_2", &["semigroup:a,b*a", "ball:1"]),
    ("prod(F2,Z)", &["zext:left:semigroup:a,b", "subgroup:left"]),
];

fn none(_: &str, _: &Group) -> Option<TestFunction> {
    None
}

pub fn random_instance(rng: &mut ChaCha8Rng, max_radius: usize) -> Instance {
    let (gname, specs) = CATALOG.choose(rng).unwrap();
    let group = parse_group(gname).unwrap();
    let spec = specs.choose(rng).unwrap();
    let f = parse_function(spec, &group, &none).unwrap();
    let pool: Vec<Element> = ball(&group, &group.default_generators(), 2, 10_000)
        .unwrap()
        .elements()
        .filter(|g| **g != group.identity())
        .cloned()
        .collect();
    let extra = rng.gen_range(0..=3);
    let mut set = vec![group.identity()];
    set.extend(pool.choose_multiple(rng, extra).cloned());
    let radius = rng.gen_range(1..=max_radius);
    let words: Vec<String> = set.iter().map(|s| group.format_element(s).unwrap()).collect();
    Instance {
        label: format!("{gname} {spec} S={{{}}} W=B{radius}", words.join(",")),
        f,
        query: QuerySpec::new(&group, set, ratio(1, 10), radius).unwrap(),
    }
}

/// `f(s·x)` for every `s` in the set and `x` in the window, with zero and
/// repeated columns dropped.
pub fn membership_columns(inst: &Instance) -> Vec<Vec<conelab::Rational>> {
    let group = inst.f.group();
    let window = inst.query.window(group, 1 << 20).unwrap();
    let mut cols: Vec<Vec<conelab::Rational>> = Vec::new();
    for x in window.elements() {
        let col: Vec<_> = inst
            .query
            .set
            .iter()
            .map(|s| inst.f.evaluate(&group.multiply(s, x).unwrap()).unwrap())
            .collect();
        if col.iter().any(|v| *v != ratio(0, 1)) && !cols.contains(&col) {
            cols.push(col);
        }
    }
    cols
}
