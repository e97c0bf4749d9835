use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::functions::{TestFunction, Weight};
use crate::group::{BallTable, Element};
use crate::rational::{self, Rational};

/// A window point where `(1-ε)ρf ≤ (ρh)f ≤ (1+ε)ρf` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingFailure {
    pub step: Element,
    pub point: Element,
    pub lower: Rational,
    pub middle: Rational,
    pub upper: Rational,
    /// Some contributing `z` has exactly one of `ρ(z)`, `ρ(zh⁻¹)` zero.
    pub truncation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingReport {
    pub checked: usize,
    pub failures: Vec<SmoothingFailure>,
}

impl SmoothingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(ρh)(z) = ρ(zh⁻¹)`, so that `(ρh)f = ρ(hf)` for the convolution.
fn right_translate(rho: &Weight, h: &Element) -> Result<Weight> {
    let group = rho.group();
    Weight::from_entries(group, rho.entries().map(|(y, v)| (group.mul(y, h), v.clone())))
}

/// Checks the smoothing sandwich for every `h` in `steps` at every point of
/// `window`. `ρ` lives on the right factor of `f`'s group and every step
/// must belong to `set`, the set `ρ` was built for.
pub fn product_smoothing_check(
    rho: &Weight,
    set: &[Element],
    f: &TestFunction,
    steps: &[Element],
    epsilon: &Rational,
    window: &BallTable,
) -> Result<SmoothingReport> {
    let group = f.group();
    let Some((left, right)) = group.factors() else {
        return Err(Error::NotAProduct(group.spec()));
    };
    if rho.group() != right {
        return Err(Error::NotAProduct(format!("{} has no right factor {}", group.spec(), rho.group().spec())));
    }
    if epsilon.is_negative() {
        return Err(Error::Precondition("epsilon must be nonnegative".into()));
    }
    for h in steps {
        if !set.contains(h) {
            return Err(Error::Precondition(format!("step {} is not in the weight's set", h.key())));
        }
    }
    let base = TestFunction::convolve(rho, f.clone())?;
    let lower_factor = rational::one() - epsilon;
    let upper_factor = rational::one() + epsilon;
    let mut failures = Vec::new();
    let mut checked = 0;
    for h in steps {
        let shifted = right_translate(rho, h)?;
        let smoothed = TestFunction::convolve(&shifted, f.clone())?;
        // Points of H where the two weights disagree about being zero.
        let rim: BTreeSet<Element> = shifted
            .support()
            .filter(|z| rho.get(z).is_zero())
            .chain(rho.support().filter(|z| shifted.get(z).is_zero()))
            .cloned()
            .collect();
        for x in window.elements() {
            checked += 1;
            let centre = base.evaluate(x)?;
            let middle = smoothed.evaluate(x)?;
            let lower = &lower_factor * &centre;
            let upper = &upper_factor * &centre;
            if middle < lower || middle > upper {
                let mut truncation = false;
                for z in &rim {
                    let z = Element::Pair(Box::new(left.identity()), Box::new(z.clone()));
                    if !f.evaluate(&group.mul(&group.inv(&z), x))?.is_zero() {
                        truncation = true;
                        break;
                    }
                }
                failures.push(SmoothingFailure {
                    step: h.clone(),
                    point: x.clone(),
                    lower,
                    middle,
                    upper,
                    truncation,
                });
            }
        }
    }
    Ok(SmoothingReport { checked, failures })
}
