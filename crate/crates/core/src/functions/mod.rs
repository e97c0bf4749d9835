//! Finitely supported rational weights and bounded nonnegative test
//! functions on a group, with the translation, norm, convolution, orbit-sum
//! and zero-extension operators.
//!
//! Action convention, used everywhere: `(g·u)(x) = u(g⁻¹x)`, for weights
//! and test functions alike.

mod embedding;
mod semigroup;
mod test_function;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{ball, BallTable, Element, Group};
use crate::rational::{self, Rational};

pub use embedding::{Embedding, Side};
pub use semigroup::{Decoder, SemigroupOracle, DEFAULT_SEMIGROUP_DEPTH};
pub use test_function::{parse_function, Descriptor, Predicate, SubgroupSpec, TestFunction};

/// A finitely supported rational function on a group. Stored entries are
/// nonzero; iteration follows the canonical element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    group: Group,
    entries: BTreeMap<Element, Rational>,
}

impl Weight {
    pub fn zero(group: &Group) -> Weight {
        Weight {
            group: group.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn dirac(group: &Group, g: &Element) -> Result<Weight> {
        Weight::from_entries(group, [(g.clone(), rational::one())])
    }

    /// Sums repeated elements and drops zeros.
    pub fn from_entries(group: &Group, entries: impl IntoIterator<Item = (Element, Rational)>) -> Result<Weight> {
        let mut w = Weight::zero(group);
        for (g, v) in entries {
            group.check(&g)?;
            w.add_at(g, v);
        }
        Ok(w)
    }

    fn add_at(&mut self, g: Element, v: Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(g);
        match slot {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += v;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn get(&self, g: &Element) -> Rational {
        self.entries.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Element, &Rational)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| v.is_positive())
    }

    /// Counting ℓ¹ norm `Σ|u(x)|`.
    pub fn mass(&self) -> Rational {
        self.entries.values().map(|v| v.abs()).sum()
    }

    pub fn total(&self) -> Rational {
        self.entries.values().sum()
    }

    pub fn scale(&self, factor: &Rational) -> Weight {
        let mut w = Weight::zero(&self.group);
        for (g, v) in &self.entries {
            w.add_at(g.clone(), v * factor);
        }
        w
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        if self.group != other.group {
            return Err(Error::GroupMismatch { group: self.group.spec() });
        }
        let mut w = self.clone();
        for (g, v) in &other.entries {
            w.add_at(g.clone(), v.clone());
        }
        Ok(w)
    }

    /// `(g·u)(x) = u(g⁻¹x)`: the support moves to `g·supp(u)`.
    pub fn translate(&self, g: &Element) -> Result<Weight> {
        self.group.check(g)?;
        Ok(Weight {
            group: self.group.clone(),
            entries: self
                .entries
                .iter()
                .map(|(x, v)| (self.group.mul(g, x), v.clone()))
                .collect(),
        })
    }

    /// `Σ_x |u(x)|^p f(x)^p`, the `p`-th power of `‖u·f‖_p`.
    pub fn weighted_norm(&self, f: &TestFunction, p: u32) -> Result<Rational> {
        if p == 0 {
            return Err(Error::Precondition("p must be >= 1".into()));
        }
        same_group(&self.group, f.group())?;
        let mut sum = Rational::zero();
        for (x, v) in &self.entries {
            let fx = f.evaluate(x)?;
            if !fx.is_zero() {
                sum += rational::pow(&(v.abs() * fx), p);
            }
        }
        Ok(sum)
    }

    /// `‖(s·u)·f‖₁` computed as `Σ_x |u(x)| f(s·x)`.
    pub fn translated_norm(&self, s: &Element, f: &TestFunction) -> Result<Rational> {
        same_group(&self.group, f.group())?;
        self.group.check(s)?;
        let mut sum = Rational::zero();
        for (x, v) in &self.entries {
            let fx = f.evaluate(&self.group.mul(s, x))?;
            if !fx.is_zero() {
                sum += v.abs() * fx;
            }
        }
        Ok(sum)
    }
}

pub(crate) fn same_group(a: &Group, b: &Group) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch { group: a.spec() })
    }
}

pub fn translate(g: &Element, u: &Weight) -> Result<Weight> {
    u.translate(g)
}

pub fn weighted_norm(u: &Weight, f: &TestFunction, p: u32) -> Result<Rational> {
    u.weighted_norm(f, p)
}

/// `(ρf)(x) = Σ_y ρ(y) f(y⁻¹x)` for `ρ` on the right factor of `f`'s group.
pub fn convolve(rho: &Weight, f: &TestFunction) -> Result<TestFunction> {
    TestFunction::convolve(rho, f.clone())
}

pub fn zero_extension(f: &TestFunction, embedding: &Embedding) -> Result<TestFunction> {
    TestFunction::zero_extension(f.clone(), embedding.clone())
}

/// `Σ_{r ∈ elements} r·v`.
pub fn orbit_sum(v: &Weight, elements: &[Element]) -> Result<Weight> {
    if elements.is_empty() {
        return Err(Error::Precondition("orbit sum over an empty list".into()));
    }
    let mut acc = Weight::zero(&v.group);
    for r in elements {
        acc = acc.add(&v.translate(r)?)?;
    }
    Ok(acc)
}

/// Test set, tolerance and window for one finitary query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySpec {
    /// Identity first, no repeats.
    pub set: Vec<Element>,
    pub epsilon: Rational,
    pub window_radius: usize,
    /// Generators of the window ball; the group's defaults when empty.
    pub window_generators: Vec<Element>,
}

impl QuerySpec {
    pub fn new(group: &Group, set: Vec<Element>, epsilon: Rational, window_radius: usize) -> Result<QuerySpec> {
        if set.first() != Some(&group.identity()) {
            return Err(Error::Precondition("the test set must start with the identity".into()));
        }
        for (i, s) in set.iter().enumerate() {
            group.check(s)?;
            if set[..i].contains(s) {
                return Err(Error::Precondition(format!("duplicate element {} in test set", s.key())));
            }
        }
        if !epsilon.is_positive() {
            return Err(Error::Precondition("epsilon must be positive".into()));
        }
        Ok(QuerySpec {
            set,
            epsilon,
            window_radius,
            window_generators: Vec::new(),
        })
    }

    pub fn with_generators(mut self, gens: Vec<Element>) -> Self {
        self.window_generators = gens;
        self
    }

    pub fn window(&self, group: &Group, cap: usize) -> Result<BallTable> {
        let gens = if self.window_generators.is_empty() {
            group.default_generators()
        } else {
            self.window_generators.clone()
        };
        ball(group, &gens, self.window_radius, cap)
    }
}
