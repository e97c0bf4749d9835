use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{Embedding, SemigroupOracle, Side, Weight, DEFAULT_SEMIGROUP_DEPTH};
use crate::error::{Error, Result};
use crate::group::{ball, Element, Group, GroupKind};
use crate::rational::{self, Rational};

/// A user-supplied evaluation oracle.
#[derive(Clone)]
pub struct Predicate(Arc<dyn Fn(&Element) -> Rational + Send + Sync>);

impl Predicate {
    pub fn new(f: impl Fn(&Element) -> Rational + Send + Sync + 'static) -> Predicate {
        Predicate(Arc::new(f))
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Predicate(..)")
    }
}

/// Subgroups with decidable membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// `{x ∈ Z^d : m_i | x_i}`; a modulus of 0 forces the coordinate to 0.
    Lattice { moduli: Vec<i64> },
    /// One factor of a direct product.
    Factor(Side),
}

#[derive(Clone, Debug)]
pub enum Descriptor {
    Constant(Rational),
    /// `1` on `{x ∈ Z^d : ⟨normal, x⟩ ≥ 0}`.
    HalfSpace { normal: Vec<i64> },
    Subgroup(SubgroupSpec),
    Ball { radius: usize, members: Arc<HashSet<Element>> },
    Semigroup(Arc<SemigroupOracle>),
    ZeroExtension { inner: Box<TestFunction>, embedding: Embedding },
    /// `(ρf)(x) = Σ_y ρ(y) f(y⁻¹x)`, `ρ` living on the right factor.
    Convolved { rho: Weight, inner: Box<TestFunction> },
    Custom { name: String, predicate: Predicate },
}

/// A bounded nonnegative function on a group, given as an oracle together
/// with a descriptor of how it was built.
#[derive(Clone, Debug)]
pub struct TestFunction {
    group: Group,
    bound: Rational,
    descriptor: Descriptor,
}

impl TestFunction {
    pub fn constant(group: &Group, value: Rational) -> Result<TestFunction> {
        if value.is_negative() {
            return Err(Error::Precondition("constant must be nonnegative".into()));
        }
        Ok(TestFunction {
            group: group.clone(),
            bound: value.clone(),
            descriptor: Descriptor::Constant(value),
        })
    }

    pub fn half_space(group: &Group, normal: Vec<i64>) -> Result<TestFunction> {
        match group.kind() {
            GroupKind::Lattice { dim } if *dim == normal.len() => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "half space of dimension {} on {}",
                    normal.len(),
                    group.spec()
                )))
            }
        }
        Ok(TestFunction {
            group: group.clone(),
            bound: rational::one(),
            descriptor: Descriptor::HalfSpace { normal },
        })
    }

    pub fn subgroup(group: &Group, spec: SubgroupSpec) -> Result<TestFunction> {
        match (&spec, group.kind()) {
            (SubgroupSpec::Lattice { moduli }, GroupKind::Lattice { dim }) if moduli.len() == *dim => {}
            (SubgroupSpec::Factor(_), GroupKind::Product(..)) => {}
            _ => return Err(Error::Precondition(format!("subgroup {spec:?} of {}", group.spec()))),
        }
        Ok(TestFunction {
            group: group.clone(),
            bound: rational::one(),
            descriptor: Descriptor::Subgroup(spec),
        })
    }

    /// Indicator of the ball of radius `radius` for the default generators.
    pub fn ball(group: &Group, radius: usize, cap: usize) -> Result<TestFunction> {
        let table = ball(group, &group.default_generators(), radius, cap)?;
        Ok(TestFunction {
            group: group.clone(),
            bound: rational::one(),
            descriptor: Descriptor::Ball {
                radius,
                members: Arc::new(table.elements().cloned().collect()),
            },
        })
    }

    pub fn semigroup(group: &Group, a: Element, b: Element, depth: usize) -> Result<TestFunction> {
        Ok(TestFunction {
            group: group.clone(),
            bound: rational::one(),
            descriptor: Descriptor::Semigroup(Arc::new(SemigroupOracle::new(group, a, b, depth)?)),
        })
    }

    pub fn zero_extension(inner: TestFunction, embedding: Embedding) -> Result<TestFunction> {
        if embedding.source() != inner.group {
            return Err(Error::GroupMismatch { group: inner.group.spec() });
        }
        Ok(TestFunction {
            group: embedding.target(),
            bound: inner.bound.clone(),
            descriptor: Descriptor::ZeroExtension {
                inner: Box::new(inner),
                embedding,
            },
        })
    }

    pub fn convolve(rho: &Weight, inner: TestFunction) -> Result<TestFunction> {
        let Some((_, right)) = inner.group.factors() else {
            return Err(Error::NotAProduct(inner.group.spec()));
        };
        if rho.group() != right {
            return Err(Error::NotAProduct(format!(
                "{} has no factor {}",
                inner.group.spec(),
                rho.group().spec()
            )));
        }
        if !rho.is_nonnegative() {
            return Err(Error::Precondition("convolution weight must be nonnegative".into()));
        }
        Ok(TestFunction {
            group: inner.group.clone(),
            bound: rho.total() * &inner.bound,
            descriptor: Descriptor::Convolved {
                rho: rho.clone(),
                inner: Box::new(inner),
            },
        })
    }

    /// `predicate` must be nonnegative and at most `bound`; evaluation
    /// reports a violation of either as an error.
    pub fn custom(group: &Group, name: &str, bound: Rational, predicate: Predicate) -> TestFunction {
        TestFunction {
            group: group.clone(),
            bound,
            descriptor: Descriptor::Custom {
                name: name.to_string(),
                predicate,
            },
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn evaluate(&self, x: &Element) -> Result<Rational> {
        self.group.check(x)?;
        self.eval(x)
    }

    fn eval(&self, x: &Element) -> Result<Rational> {
        let indicator = |b: bool| if b { rational::one() } else { Rational::zero() };
        Ok(match (&self.descriptor, x) {
            (Descriptor::Constant(v), _) => v.clone(),
            (Descriptor::HalfSpace { normal }, Element::Lattice(v)) => {
                indicator(normal.iter().zip(v).map(|(n, x)| n * x).sum::<i64>() >= 0)
            }
            (Descriptor::Subgroup(SubgroupSpec::Lattice { moduli }), Element::Lattice(v)) => {
                indicator(v.iter().zip(moduli).all(|(x, m)| if *m == 0 { *x == 0 } else { x % m == 0 }))
            }
            (Descriptor::Subgroup(SubgroupSpec::Factor(side)), Element::Pair(a, b)) => {
                let (l, r) = self.group.factors().expect("product");
                indicator(match side {
                    Side::Left => **b == r.identity(),
                    Side::Right => **a == l.identity(),
                })
            }
            (Descriptor::Ball { members, .. }, _) => indicator(members.contains(x)),
            (Descriptor::Semigroup(o), _) => indicator(o.contains(x)),
            (Descriptor::ZeroExtension { inner, embedding }, _) => match embedding.preimage(x)? {
                Some(h) => inner.eval(&h)?,
                None => Rational::zero(),
            },
            (Descriptor::Convolved { rho, inner }, _) => {
                let (left, _) = self.group.factors().expect("product");
                let mut sum = Rational::zero();
                for (y, w) in rho.entries() {
                    let y = Element::Pair(Box::new(left.identity()), Box::new(y.clone()));
                    sum += w * inner.eval(&self.group.mul(&self.group.inv(&y), x))?;
                }
                sum
            }
            (Descriptor::Custom { name, predicate }, _) => {
                let v = (predicate.0)(x);
                if v.is_negative() || v > self.bound {
                    return Err(Error::Evaluation(format!(
                        "custom function `{name}` returned {} outside [0, {}]",
                        rational::format(&v),
                        rational::format(&self.bound)
                    )));
                }
                v
            }
            _ => return Err(Error::GroupMismatch { group: self.group.spec() }),
        })
    }

    /// `f(g⁻¹x)`, the value of `g·f` at `x`.
    pub fn translated(&self, g: &Element, x: &Element) -> Result<Rational> {
        self.group.check(g)?;
        self.evaluate(&self.group.mul(&self.group.inv(g), x))
    }

    /// True when membership questions about `f` are decided beyond any window.
    pub fn is_structural(&self) -> bool {
        match &self.descriptor {
            Descriptor::Semigroup(o) => o.is_exact(),
            Descriptor::ZeroExtension { inner, .. } => inner.is_structural(),
            _ => false,
        }
    }

    /// The mini-language string that rebuilds this function, when there is one.
    pub fn spec(&self) -> String {
        match &self.descriptor {
            Descriptor::Constant(v) => format!("const:{}", rational::format(v)),
            Descriptor::HalfSpace { normal } => format!("half:Z^{}:{}", normal.len(), join(normal)),
            Descriptor::Subgroup(SubgroupSpec::Lattice { moduli }) => format!("subgroup:mod:{}", join(moduli)),
            Descriptor::Subgroup(SubgroupSpec::Factor(Side::Left)) => "subgroup:left".into(),
            Descriptor::Subgroup(SubgroupSpec::Factor(Side::Right)) => "subgroup:right".into(),
            Descriptor::Ball { radius, .. } => format!("ball:{radius}"),
            Descriptor::Semigroup(o) => {
                let (a, b) = o.generators();
                let word = |g: &Element| self.group.format_element(g).unwrap_or_else(|_| g.key());
                format!("semigroup:{},{}", word(a), word(b))
            }
            Descriptor::ZeroExtension { inner, embedding } => format!("zext:{}:{}", embedding.spec(), inner.spec()),
            Descriptor::Convolved { rho, inner } => format!(
                "conv:[{}]:{}",
                rho.entries()
                    .map(|(y, w)| format!("{}={}", y.key(), rational::format(w)))
                    .collect::<Vec<_>>()
                    .join(";"),
                inner.spec()
            ),
            Descriptor::Custom { name, .. } => format!("custom:{name}"),
        }
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses the test-function mini-language against `group`. `custom` resolves
/// `custom:<name>` references on a given group.
pub fn parse_function(
    input: &str,
    group: &Group,
    custom: &dyn Fn(&str, &Group) -> Option<TestFunction>,
) -> Result<TestFunction> {
    let input = input.trim();
    let (head, rest) = input
        .split_once(':')
        .ok_or_else(|| Error::Parse(crate::error::ParseError::new(input, 0, "expected `<kind>:<args>`")))?;
    let at = |offset: usize, msg: &str| Error::Parse(crate::error::ParseError::new(input, head.len() + 1 + offset, msg));
    let ints = |s: &str| -> Result<Vec<i64>> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| at(0, "expected a comma-separated integer list")))
            .collect()
    };
    match head {
        "const" => TestFunction::constant(group, rational::parse(rest).map_err(|_| at(0, "expected a rational"))?),
        "half" => {
            let (dim, normal) = rest.split_once(':').ok_or_else(|| at(0, "expected `Z^d:<normal>`"))?;
            let d: usize = dim
                .strip_prefix("Z^")
                .or_else(|| (dim == "Z").then_some("1"))
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| at(0, "expected `Z^d`"))?;
            let normal = ints(normal)?;
            if normal.len() != d {
                return Err(at(dim.len() + 1, "normal length differs from the dimension"));
            }
            TestFunction::half_space(group, normal)
        }
        "ball" => {
            let r: usize = rest.trim().parse().map_err(|_| at(0, "expected a radius"))?;
            TestFunction::ball(group, r, crate::group::DEFAULT_CAP)
        }
        "subgroup" => match rest {
            "left" => TestFunction::subgroup(group, SubgroupSpec::Factor(Side::Left)),
            "right" => TestFunction::subgroup(group, SubgroupSpec::Factor(Side::Right)),
            _ => {
                let moduli = rest.strip_prefix("mod:").ok_or_else(|| at(0, "expected `left`, `right` or `mod:<moduli>`"))?;
                TestFunction::subgroup(group, SubgroupSpec::Lattice { moduli: ints(moduli)? })
            }
        },
        "semigroup" => {
            let (a, b) = rest.split_once(',').ok_or_else(|| at(0, "expected `<a>,<b>`"))?;
            let a = group.parse_element(a.trim())?;
            let b = group.parse_element(b.trim())?;
            TestFunction::semigroup(group, a, b, DEFAULT_SEMIGROUP_DEPTH)
        }
        "custom" => custom(rest, group).ok_or_else(|| at(0, "unknown custom function")),
        "zext" => {
            let (embedding, inner) = Embedding::parse(rest, group)?;
            let inner = parse_function(inner, &embedding.source(), custom)?;
            TestFunction::zero_extension(inner, embedding)
        }
        _ => Err(Error::Parse(crate::error::ParseError::new(input, 0, "unknown test-function kind"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use crate::rational::{int, ratio};

    fn none(_: &str, _: &Group) -> Option<TestFunction> {
        None
    }

    #[test]
    fn spec_strings_round_trip() {
        let cases = [
            ("Z", "const:1/1"),
            ("Z^2", "half:Z^2:1,-1"),
            ("Z^2", "subgroup:mod:2,0"),
            ("prod(Z,Z)", "subgroup:left"),
            ("F2", "ball:2"),
            ("F2", "semigroup:a,b"),
            ("LL", "semigroup:t,a*t"),
            ("prod(F2,Z)", "zext:left:semigroup:a,b"),
            ("Z^2", "zext:lattice:2:1:half:Z^1:1"),
        ];
        for (g, s) in cases {
            let g = parse_group(g).unwrap();
            let f = parse_function(s, &g, &none).unwrap();
            assert_eq!(f.spec(), s);
        }
        let z = parse_group("Z").unwrap();
        assert!(parse_function("half:Z^2:1,1", &z, &none).is_err());
        assert!(parse_function("custom:nope", &z, &none).is_err());
        assert!(parse_function("blob", &z, &none).is_err());
    }

    #[test]
    fn zero_extension_examples() {
        let z = parse_group("Z").unwrap();
        let one = TestFunction::constant(&z, int(1)).unwrap();
        let f = TestFunction::zero_extension(one, Embedding::lattice(vec![2], 1).unwrap()).unwrap();
        for x in -5..5 {
            let expect = if x % 2 == 0 { int(1) } else { int(0) };
            assert_eq!(f.evaluate(&Element::Lattice(vec![x])).unwrap(), expect);
        }
        let z2 = parse_group("Z^2").unwrap();
        let f = parse_function("zext:lattice:2:1:half:Z^1:1", &z2, &none).unwrap();
        for x in -3..4 {
            for y in -3..4 {
                let expect = x >= 0 && y == 0;
                assert_eq!(f.evaluate(&Element::Lattice(vec![x, y])).unwrap(), if expect { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn convolution_examples() {
        let g = parse_group("prod(Z,Z)").unwrap();
        let z = parse_group("Z").unwrap();
        let pair = |a: i64, b: i64| Element::Pair(Box::new(Element::Lattice(vec![a])), Box::new(Element::Lattice(vec![b])));
        // Indicator of {(x, y) : y >= 0}.
        let f_prod = TestFunction::custom(&g, "upper", int(1), Predicate::new(move |x| match x {
            Element::Pair(_, b) => match &**b {
                Element::Lattice(v) if v[0] >= 0 => int(1),
                _ => int(0),
            },
            _ => int(0),
        }));
        let delta_e = Weight::dirac(&z, &Element::Lattice(vec![0])).unwrap();
        let same = TestFunction::convolve(&delta_e, f_prod.clone()).unwrap();
        let h = Element::Lattice(vec![2]);
        let shifted = TestFunction::convolve(&Weight::dirac(&z, &h).unwrap(), f_prod.clone()).unwrap();
        let avg = Weight::from_entries(&z, [(Element::Lattice(vec![0]), ratio(1, 2)), (Element::Lattice(vec![1]), ratio(1, 2))]).unwrap();
        let smooth = TestFunction::convolve(&avg, f_prod.clone()).unwrap();
        assert_eq!(smooth.bound(), &int(1));
        for a in -2..3 {
            for b in -3..4 {
                let x = pair(a, b);
                assert_eq!(same.evaluate(&x).unwrap(), f_prod.evaluate(&x).unwrap());
                assert_eq!(shifted.evaluate(&x).unwrap(), f_prod.evaluate(&pair(a, b - 2)).unwrap());
                let v = smooth.evaluate(&x).unwrap();
                assert!(v == int(0) || v == ratio(1, 2) || v == int(1));
            }
        }
        assert_eq!(smooth.evaluate(&pair(0, 0)).unwrap(), ratio(1, 2));
        assert!(TestFunction::convolve(&avg, TestFunction::constant(&z, int(1)).unwrap()).is_err());
    }

    #[test]
    fn custom_range_is_enforced() {
        let z = parse_group("Z").unwrap();
        let f = TestFunction::custom(&z, "neg", int(1), Predicate::new(|_| int(-1)));
        assert!(matches!(f.evaluate(&z.identity()), Err(Error::Evaluation(_))));
    }

    #[test]
    fn ball_and_subgroup_indicators() {
        let f2 = parse_group("F2").unwrap();
        let f = TestFunction::ball(&f2, 1, 1000).unwrap();
        assert_eq!(f.evaluate(&f2.parse_element("a^-1").unwrap()).unwrap(), int(1));
        assert_eq!(f.evaluate(&f2.parse_element("a*b").unwrap()).unwrap(), int(0));
        let z2 = parse_group("Z^2").unwrap();
        let s = TestFunction::subgroup(&z2, SubgroupSpec::Lattice { moduli: vec![2, 0] }).unwrap();
        assert_eq!(s.evaluate(&Element::Lattice(vec![4, 0])).unwrap(), int(1));
        assert_eq!(s.evaluate(&Element::Lattice(vec![4, 1])).unwrap(), int(0));
        assert!(s.evaluate(&Element::Lattice(vec![4])).is_err());
    }
}
