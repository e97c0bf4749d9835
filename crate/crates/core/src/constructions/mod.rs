//! Constructive ingredients of the closure results: exponentially decaying
//! weights, the perturbed coefficients used against products, the smoothing
//! sandwich, and certificate transport along subgroups and finite sets.

mod smoothing;
mod transport;

use num_traits::{Signed, Zero};

use crate::certificates::{verify_certificate, Certificate, ReiterWitness, VerificationReport};
use crate::error::{Error, Result};
use crate::functions::{TestFunction, Weight};
use crate::group::{ball, symmetrize, Element, Group};
use crate::rational::{self, Rational};

pub use smoothing::{product_smoothing_check, SmoothingFailure, SmoothingReport};
pub use transport::{finite_transport, finite_transport_function, transport_subgroup, FiniteTransport};

/// Parameters of `ρ(g) = r^{|g|_S}` truncated to the ball `B_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JenkinsSpec {
    pub group: Group,
    /// Symmetrised, identity excluded.
    pub set: Vec<Element>,
    pub epsilon: Rational,
    pub base: Rational,
    pub radius: usize,
}

impl JenkinsSpec {
    /// Uses `r = 1/(1+ε)`.
    pub fn new(group: &Group, set: &[Element], epsilon: Rational, radius: usize) -> Result<JenkinsSpec> {
        if !epsilon.is_positive() {
            return Err(Error::Precondition("epsilon must be positive".into()));
        }
        let base = rational::one() / (rational::one() + &epsilon);
        JenkinsSpec::with_base(group, set, epsilon, base, radius)
    }

    /// Accepts any `r` in `(0, 1]` with `max(1/r - 1, 1 - r) ≤ ε`.
    pub fn with_base(
        group: &Group,
        set: &[Element],
        epsilon: Rational,
        base: Rational,
        radius: usize,
    ) -> Result<JenkinsSpec> {
        if radius == 0 {
            return Err(Error::Precondition("truncation radius must be at least 1".into()));
        }
        for s in set {
            group.check(s)?;
        }
        let identity = group.identity();
        let set: Vec<Element> = symmetrize(group, set).into_iter().filter(|s| *s != identity).collect();
        if set.is_empty() {
            return Err(Error::Precondition("the generating set has no non-identity element".into()));
        }
        if !base.is_positive() || base > rational::one() {
            return Err(Error::Precondition("base must lie in (0, 1]".into()));
        }
        let one = rational::one();
        let worst = (&one / &base - &one).max(&one - &base);
        if worst > epsilon {
            return Err(Error::Precondition(format!(
                "base {} moves by {} > epsilon {}",
                rational::format(&base),
                rational::format(&worst),
                rational::format(&epsilon)
            )));
        }
        Ok(JenkinsSpec {
            group: group.clone(),
            set,
            epsilon,
            base,
            radius,
        })
    }
}

/// A pointwise inequality `|ρ(h) - ρ(g)| ≤ ερ(g)` that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseFailure {
    pub point: Element,
    pub step: Element,
    pub right: bool,
}

#[derive(Clone, Debug)]
pub struct JenkinsReport {
    /// `ρ` itself, with `ρ(e) = 1`.
    pub weight: Weight,
    /// Points `g ∈ B_{N-1}` checked against every step on both sides.
    pub interior_points: usize,
    pub pointwise_failures: Vec<PointwiseFailure>,
    /// `ρ/‖ρ‖₁` as a Reiter witness for the constant function 1 at the requested `ε`.
    pub witness: ReiterWitness,
    pub verification: VerificationReport,
}

impl JenkinsReport {
    /// The measured relative ℓ¹ defect, boundary loss included.
    pub fn defect(&self) -> &Rational {
        self.verification.quantity("defect").expect("recorded by the verifier")
    }
}

pub fn jenkins_weight(spec: &JenkinsSpec, cap: usize) -> Result<JenkinsReport> {
    let group = &spec.group;
    let table = ball(group, &spec.set, spec.radius, cap)?;
    let powers: Vec<Rational> = (0..=spec.radius).map(|k| rational::pow(&spec.base, k as u32)).collect();
    let rho = Weight::from_entries(
        group,
        table.elements().map(|g| (g.clone(), powers[table.length(g).expect("in ball")].clone())),
    )?;

    let mut failures = Vec::new();
    let mut interior = 0;
    for g in table.layers[..spec.radius].iter().flatten() {
        interior += 1;
        let here = rho.get(g);
        let allowed = &spec.epsilon * &here;
        for s in &spec.set {
            for right in [false, true] {
                let h = if right { group.mul(g, s) } else { group.mul(&group.inv(s), g) };
                if (rho.get(&h) - &here).abs() > allowed {
                    failures.push(PointwiseFailure {
                        point: g.clone(),
                        step: s.clone(),
                        right,
                    });
                }
            }
        }
    }

    let mass = rho.total();
    let mut set = vec![group.identity()];
    set.extend(spec.set.iter().cloned());
    let witness = ReiterWitness {
        f: TestFunction::constant(group, rational::one())?,
        set,
        epsilon: spec.epsilon.clone(),
        u: rho.scale(&(rational::one() / mass)),
        provenance: vec![format!("jenkins:r={}:N={}", rational::format(&spec.base), spec.radius)],
    };
    let verification = verify_certificate(&Certificate::Reiter(witness.clone()), 0)?;
    Ok(JenkinsReport {
        weight: rho,
        interior_points: interior,
        pointwise_failures: failures,
        witness,
        verification,
    })
}

/// The coefficients `t̃_i = (1+ε)t_i` for `t_i > 0` and `(1-ε)t_i` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeCoefficients {
    pub values: Vec<Rational>,
    pub sum: Rational,
    /// `Σ t < 0` and `Σ t̃ < 0`.
    pub preserves_negativity: bool,
}

pub fn tilde_coefficients(t: &[Rational], epsilon: &Rational) -> Result<TildeCoefficients> {
    if !epsilon.is_positive() || *epsilon >= rational::one() {
        return Err(Error::Precondition("epsilon must lie in (0, 1)".into()));
    }
    let up = rational::one() + epsilon;
    let down = rational::one() - epsilon;
    let values: Vec<Rational> = t
        .iter()
        .map(|ti| if ti.is_positive() { &up * ti } else { &down * ti })
        .collect();
    let sum: Rational = values.iter().sum();
    let original: Rational = t.iter().sum();
    Ok(TildeCoefficients {
        preserves_negativity: original.is_negative() && sum.is_negative(),
        values,
        sum,
    })
}

/// `|Σ t| / Σ |t|`: a negative sum stays negative under
/// `tilde_coefficients` exactly for `ε` below this value.
pub fn threshold(t: &[Rational]) -> Option<Rational> {
    let total: Rational = t.iter().sum();
    let mass: Rational = t.iter().map(|x| x.abs()).sum();
    if mass.is_zero() {
        None
    } else {
        Some(total.abs() / mass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_group, DEFAULT_CAP};
    use crate::rational::{int, ratio};

    #[test]
    fn integer_jenkins_weight() {
        let z = parse_group("Z").unwrap();
        let spec = JenkinsSpec::new(&z, &z.default_generators(), ratio(1, 2), 6).unwrap();
        assert_eq!(spec.base, ratio(2, 3));
        let report = jenkins_weight(&spec, DEFAULT_CAP).unwrap();
        assert!(report.pointwise_failures.is_empty());
        assert_eq!(report.interior_points, 11);
        assert_eq!(report.weight.get(&z.identity()), int(1));
        assert_eq!(report.weight.get(&Element::Lattice(vec![-3])), ratio(8, 27));
        assert_eq!(report.weight.get(&Element::Lattice(vec![7])), int(0));
    }

    #[test]
    fn base_override_is_checked() {
        let z = parse_group("Z").unwrap();
        let gens = z.default_generators();
        assert!(JenkinsSpec::with_base(&z, &gens, ratio(1, 2), ratio(3, 4), 3).is_ok());
        assert!(JenkinsSpec::with_base(&z, &gens, ratio(1, 2), ratio(1, 2), 3).is_err());
        assert!(JenkinsSpec::new(&z, &gens, ratio(1, 2), 0).is_err());
    }

    #[test]
    fn tilde_examples() {
        let t = [int(1), int(-1), int(-1)];
        let q = tilde_coefficients(&t, &ratio(1, 4)).unwrap();
        assert_eq!(q.values, vec![ratio(5, 4), ratio(-3, 4), ratio(-3, 4)]);
        assert_eq!(q.sum, ratio(-1, 4));
        assert!(q.preserves_negativity);
        let q = tilde_coefficients(&t, &ratio(1, 2)).unwrap();
        assert_eq!(q.sum, ratio(1, 2));
        assert!(!q.preserves_negativity);
        assert_eq!(threshold(&t), Some(ratio(1, 3)));
        let q = tilde_coefficients(&[int(0), int(0)], &ratio(1, 3)).unwrap();
        assert!(q.values.iter().all(Zero::is_zero));
        assert!(tilde_coefficients(&t, &int(1)).is_err());
    }
}
