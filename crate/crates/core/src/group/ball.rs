//! Breadth-first enumeration of word-metric balls and growth statistics.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::One;

use super::{Element, Group};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Element-count limit used when the caller has no better value.
pub const DEFAULT_CAP: usize = 2_000_000;

/// `S ∪ S^-1` in order of first appearance, without duplicates.
pub fn symmetrize(group: &Group, gens: &[Element]) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::new();
    for g in gens {
        for h in [g.clone(), group.inv(g)] {
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

/// Spheres of the word metric over a symmetrised generating set.
#[derive(Clone, Debug)]
pub struct BallTable {
    pub generating_set: Vec<Element>,
    pub radius: usize,
    /// `layers[n]` is the sphere of radius `n`, sorted canonically.
    pub layers: Vec<Vec<Element>>,
    pub lengths: HashMap<Element, usize>,
}

impl BallTable {
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Elements in layer order.
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.layers.iter().flatten()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.lengths.contains_key(g)
    }

    pub fn length(&self, g: &Element) -> Option<usize> {
        self.lengths.get(g).copied()
    }

    /// `|B_n|` for every `n` up to the radius.
    pub fn cumulative_sizes(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0, |acc, layer| {
                *acc += layer.len();
                Some(*acc)
            })
            .collect()
    }
}

/// The ball of radius `radius` around the identity for the word metric of
/// `S ∪ S^-1`. Fails once more than `cap` elements have been discovered.
pub fn ball(group: &Group, gens: &[Element], radius: usize, cap: usize) -> Result<BallTable> {
    if gens.is_empty() {
        return Err(Error::Precondition("generating set is empty".into()));
    }
    for g in gens {
        group.check(g)?;
    }
    let generating_set = symmetrize(group, gens);
    let e = group.identity();
    let mut lengths = HashMap::new();
    lengths.insert(e.clone(), 0usize);
    let mut layers = vec![vec![e]];
    for n in 1..=radius {
        let mut next = HashSet::new();
        for g in &layers[n - 1] {
            for s in &generating_set {
                let h = group.mul(g, s);
                if !lengths.contains_key(&h) {
                    next.insert(h);
                }
            }
        }
        if lengths.len() + next.len() > cap {
            return Err(Error::CapExceeded { limit: cap });
        }
        let mut layer: Vec<Element> = next.into_iter().collect();
        layer.sort();
        for h in &layer {
            lengths.insert(h.clone(), n);
        }
        layers.push(layer);
    }
    Ok(BallTable {
        generating_set,
        radius,
        layers,
        lengths,
    })
}

/// Indices into `group.default_generators()` of a shortest word for `target`.
pub fn shortest_word(group: &Group, target: &Element, cap: usize) -> Result<Vec<usize>> {
    group.check(target)?;
    let gens = group.default_generators();
    let e = group.identity();
    let mut parent: HashMap<Element, Option<(Element, usize)>> = HashMap::new();
    parent.insert(e.clone(), None);
    let mut queue = VecDeque::from([e]);
    while let Some(g) = queue.pop_front() {
        if &g == target {
            let mut word = Vec::new();
            let mut cur = g;
            while let Some(Some((prev, i))) = parent.get(&cur).cloned() {
                word.push(i);
                cur = prev;
            }
            word.reverse();
            return Ok(word);
        }
        for (i, s) in gens.iter().enumerate() {
            let h = group.mul(&g, s);
            if !parent.contains_key(&h) {
                if parent.len() >= cap {
                    return Err(Error::CapExceeded { limit: cap });
                }
                parent.insert(h.clone(), Some((g.clone(), i)));
                queue.push_back(h);
            }
        }
    }
    Err(Error::Evaluation("element not reachable from the generators".into()))
}

/// `|S^n|` (n-fold products, no inverses added) for `n = 0..=max`; stops
/// early once the cap is reached.
pub fn product_power_sizes(group: &Group, gens: &[Element], max: usize, cap: usize) -> Vec<usize> {
    let mut sizes = vec![1];
    let mut current: HashSet<Element> = HashSet::from([group.identity()]);
    for _ in 1..=max {
        let mut next = HashSet::new();
        for g in &current {
            for s in gens {
                next.insert(group.mul(g, s));
            }
            if next.len() > cap {
                return sizes;
            }
        }
        sizes.push(next.len());
        current = next;
    }
    sizes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthLabel {
    PolynomialLike,
    ExponentialLike,
    Inconclusive,
}

impl GrowthLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            GrowthLabel::PolynomialLike => "polynomial-like",
            GrowthLabel::ExponentialLike => "exponential-like",
            GrowthLabel::Inconclusive => "inconclusive",
        }
    }
}

/// Ball sizes, successive ratios and a heuristic trend label. The label is
/// an estimate from finitely many terms and proves nothing.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// `|B_0| ..= |B_N|`, shorter when the cap cut enumeration off.
    pub sizes: Vec<usize>,
    /// `|B_{n+1}| / |B_n|`.
    pub ratios: Vec<Rational>,
    /// `|S^n|` for the non-symmetrised set.
    pub product_sizes: Vec<usize>,
    pub label: GrowthLabel,
    pub complete: bool,
}

pub fn growth_report(group: &Group, gens: &[Element], n: usize, cap: usize) -> Result<GrowthReport> {
    if n < 2 {
        return Err(Error::Precondition("growth needs N >= 2".into()));
    }
    let (sizes, complete) = match ball(group, gens, n, cap) {
        Ok(table) => (table.cumulative_sizes(), true),
        Err(Error::CapExceeded { .. }) => {
            // largest radius that fits
            let mut best = vec![1];
            for r in (0..n).rev() {
                if let Ok(t) = ball(group, gens, r, cap) {
                    best = t.cumulative_sizes();
                    break;
                }
            }
            (best, false)
        }
        Err(e) => return Err(e),
    };
    let ratios: Vec<Rational> = sizes
        .windows(2)
        .map(|w| rational::ratio(w[1] as i64, w[0] as i64))
        .collect();
    let label = if complete {
        classify(&ratios, n)
    } else {
        GrowthLabel::Inconclusive
    };
    let product_sizes = product_power_sizes(group, gens, n, cap);
    Ok(GrowthReport {
        sizes,
        ratios,
        product_sizes,
        label,
        complete,
    })
}

/// Polynomial-like when the last three ratios are all `<= 1 + 4/N`,
/// exponential-like when all are `>= 5/4`.
fn classify(ratios: &[Rational], n: usize) -> GrowthLabel {
    let tail = &ratios[ratios.len().saturating_sub(3)..];
    let poly = Rational::one() + rational::ratio(4, n as i64);
    let expo = rational::ratio(5, 4);
    if tail.iter().all(|r| *r <= poly) {
        GrowthLabel::PolynomialLike
    } else if tail.iter().all(|r| *r >= expo) {
        GrowthLabel::ExponentialLike
    } else {
        GrowthLabel::Inconclusive
    }
}
