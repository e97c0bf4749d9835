//! Finitely generated groups with exact element arithmetic.
//!
//! Every element is stored in a canonical normal form, so equality of
//! elements is structural equality and the derived `Ord` is a total
//! canonical order used wherever output must be deterministic.

mod ball;
mod matrix;
mod spec;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use ball::{
    ball, growth_report, product_power_sizes, shortest_word, symmetrize, BallTable, GrowthLabel,
    GrowthReport, DEFAULT_CAP,
};
pub use matrix::Matrix;
pub use spec::{parse_group, parse_group_with};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A group element in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Integer vector in `Z^d`.
    Lattice(Vec<i64>),
    /// Freely reduced word; letter `i` is generator `i`, `-i` its inverse (1-based).
    Free(Vec<i32>),
    /// Upper unitriangular `[[1,x,z],[0,1,y],[0,0,1]]` stored as `[x, y, z]`.
    Heisenberg([i64; 3]),
    /// Lamp configuration (sorted, finite) and cursor position.
    Lamplighter { lamps: Vec<i64>, cursor: i64 },
    /// The affine map `v -> m^power * v + shift`.
    Affine { power: i64, shift: Rational },
    Matrix(Matrix),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    /// Byte-stable textual key; two elements are equal iff their keys are.
    pub fn key(&self) -> String {
        fn join<T: ToString>(v: &[T]) -> String {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
        match self {
            Element::Lattice(v) => format!("Z({})", join(v)),
            Element::Free(w) => format!("F[{}]", join(w)),
            Element::Heisenberg(v) => format!("H({})", join(v)),
            Element::Lamplighter { lamps, cursor } => format!("L{{{}}}@{}", join(lamps), cursor),
            Element::Affine { power, shift } => {
                format!("A({};{})", power, rational::format(shift))
            }
            Element::Matrix(m) => format!("M{m}"),
            Element::Pair(a, b) => format!("P({}|{})", a.key(), b.key()),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Lattice { dim: usize },
    Free { rank: usize },
    Heisenberg,
    Lamplighter,
    /// `BS(1,m)` realised as affine maps of the `m`-adic rationals.
    BaumslagSolitar { m: i64 },
    Matrix { name: Option<String>, generators: Vec<Matrix> },
    Product(Group, Group),
}

/// Cheaply clonable handle to a group descriptor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group(Arc<GroupKind>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.spec())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

const FREE_LETTERS: &str = "abcdfghijklmnopqrsuvwxyz";

impl Group {
    /// Validates a descriptor and wraps it in a handle.
    pub fn new(kind: GroupKind) -> Result<Group> {
        match &kind {
            GroupKind::Lattice { dim } if *dim == 0 => {
                return Err(Error::InvalidGroup("Z^d needs d >= 1".into()))
            }
            GroupKind::Free { rank } if *rank == 0 || *rank > FREE_LETTERS.len() => {
                return Err(Error::InvalidGroup(format!(
                    "free group rank must be in 1..={}",
                    FREE_LETTERS.len()
                )))
            }
            GroupKind::BaumslagSolitar { m } if *m < 2 => {
                return Err(Error::InvalidGroup(format!("BS(1,m) needs m >= 2, got {m}")))
            }
            GroupKind::Matrix { generators, .. } => {
                let first = generators
                    .first()
                    .ok_or_else(|| Error::InvalidGroup("matrix group without generators".into()))?;
                for (i, g) in generators.iter().enumerate() {
                    if g.dim() != first.dim() {
                        return Err(Error::InvalidGroup(format!(
                            "generator {} has size {} instead of {}",
                            i + 1,
                            g.dim(),
                            first.dim()
                        )));
                    }
                    if g.inverse().is_none() {
                        return Err(Error::InvalidGroup(format!(
                            "generator {} is singular",
                            i + 1
                        )));
                    }
                }
            }
            _ => {}
        }
        Ok(Group(Arc::new(kind)))
    }

    pub fn lattice(dim: usize) -> Result<Group> {
        Group::new(GroupKind::Lattice { dim })
    }

    pub fn free(rank: usize) -> Result<Group> {
        Group::new(GroupKind::Free { rank })
    }

    pub fn heisenberg() -> Group {
        Group(Arc::new(GroupKind::Heisenberg))
    }

    pub fn lamplighter() -> Group {
        Group(Arc::new(GroupKind::Lamplighter))
    }

    pub fn baumslag_solitar(m: i64) -> Result<Group> {
        Group::new(GroupKind::BaumslagSolitar { m })
    }

    pub fn matrix(generators: Vec<Matrix>) -> Result<Group> {
        Group::new(GroupKind::Matrix {
            name: None,
            generators,
        })
    }

    /// `D_inf` realised by `diag(2, 1/2)` and the coordinate swap.
    pub fn infinite_dihedral() -> Group {
        let r = Matrix::from_rows(vec![
            vec![rational::int(2), rational::zero()],
            vec![rational::zero(), rational::ratio(1, 2)],
        ])
        .expect("square");
        let s = Matrix::from_rows(vec![
            vec![rational::zero(), rational::one()],
            vec![rational::one(), rational::zero()],
        ])
        .expect("square");
        Group(Arc::new(GroupKind::Matrix {
            name: Some("Dinf".into()),
            generators: vec![r, s],
        }))
    }

    pub fn product(left: Group, right: Group) -> Group {
        Group(Arc::new(GroupKind::Product(left, right)))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.0
    }

    /// Factors when this is a direct product.
    pub fn factors(&self) -> Option<(&Group, &Group)> {
        match self.kind() {
            GroupKind::Product(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Canonical spec string in the group mini-language.
    pub fn spec(&self) -> String {
        match self.kind() {
            GroupKind::Lattice { dim } => format!("Z^{dim}"),
            GroupKind::Free { rank } => format!("F{rank}"),
            GroupKind::Heisenberg => "H3".into(),
            GroupKind::Lamplighter => "LL".into(),
            GroupKind::BaumslagSolitar { m } => format!("BS1_{m}"),
            GroupKind::Matrix { name, generators } => match name.as_deref() {
                Some("Dinf") => "Dinf".into(),
                _ => format!(
                    "mat:[{}]",
                    generators
                        .iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            },
            GroupKind::Product(l, r) => format!("prod({},{})", l.spec(), r.spec()),
        }
    }

    pub fn identity(&self) -> Element {
        match self.kind() {
            GroupKind::Lattice { dim } => Element::Lattice(vec![0; *dim]),
            GroupKind::Free { .. } => Element::Free(Vec::new()),
            GroupKind::Heisenberg => Element::Heisenberg([0; 3]),
            GroupKind::Lamplighter => Element::Lamplighter {
                lamps: Vec::new(),
                cursor: 0,
            },
            GroupKind::BaumslagSolitar { .. } => Element::Affine {
                power: 0,
                shift: Rational::zero(),
            },
            GroupKind::Matrix { generators, .. } => {
                Element::Matrix(Matrix::identity(generators[0].dim()))
            }
            GroupKind::Product(l, r) => {
                Element::Pair(Box::new(l.identity()), Box::new(r.identity()))
            }
        }
    }

    /// Structural membership: the element has this group's normal-form shape.
    /// For matrix groups only the size is checked.
    pub fn contains(&self, g: &Element) -> bool {
        match (self.kind(), g) {
            (GroupKind::Lattice { dim }, Element::Lattice(v)) => v.len() == *dim,
            (GroupKind::Free { rank }, Element::Free(w)) => {
                let r = *rank as i32;
                w.iter().all(|&l| l != 0 && l.abs() <= r) && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupKind::Heisenberg, Element::Heisenberg(_)) => true,
            (GroupKind::Lamplighter, Element::Lamplighter { lamps, .. }) => {
                lamps.windows(2).all(|p| p[0] < p[1])
            }
            (GroupKind::BaumslagSolitar { m }, Element::Affine { shift, .. }) => {
                let mut d = shift.denom().clone();
                let m = BigInt::from(*m);
                loop {
                    let g = d.gcd(&m);
                    if g.is_one() {
                        break;
                    }
                    d /= g;
                }
                d.is_one()
            }
            (GroupKind::Matrix { generators, .. }, Element::Matrix(x)) => {
                x.dim() == generators[0].dim()
            }
            (GroupKind::Product(l, r), Element::Pair(a, b)) => l.contains(a) && r.contains(b),
            _ => false,
        }
    }

    pub fn check(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch { group: self.spec() })
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Product without membership checks; callers guarantee both factors
    /// belong to the group.
    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self.kind(), a, b) {
            (GroupKind::Lattice { .. }, Element::Lattice(x), Element::Lattice(y)) => {
                Element::Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupKind::Free { .. }, Element::Free(x), Element::Free(y)) => {
                let mut w = x.clone();
                let mut rest = y.as_slice();
                while let (Some(&last), Some(&first)) = (w.last(), rest.first()) {
                    if last == -first {
                        w.pop();
                        rest = &rest[1..];
                    } else {
                        break;
                    }
                }
                w.extend_from_slice(rest);
                Element::Free(w)
            }
            (GroupKind::Heisenberg, Element::Heisenberg(x), Element::Heisenberg(y)) => {
                Element::Heisenberg([x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]])
            }
            (
                GroupKind::Lamplighter,
                Element::Lamplighter { lamps: l1, cursor: k1 },
                Element::Lamplighter { lamps: l2, cursor: k2 },
            ) => {
                // symmetric difference of l1 and l2 + k1, both sorted
                let shifted = l2.iter().map(|p| p + k1);
                let mut out = Vec::with_capacity(l1.len() + l2.len());
                let mut i = l1.iter().peekable();
                let mut j = shifted.peekable();
                loop {
                    match (i.peek(), j.peek()) {
                        (Some(&&p), Some(&q)) => {
                            if p < q {
                                out.push(p);
                                i.next();
                            } else if q < p {
                                out.push(q);
                                j.next();
                            } else {
                                i.next();
                                j.next();
                            }
                        }
                        (Some(&&p), None) => {
                            out.push(p);
                            i.next();
                        }
                        (None, Some(&q)) => {
                            out.push(q);
                            j.next();
                        }
                        (None, None) => break,
                    }
                }
                Element::Lamplighter {
                    lamps: out,
                    cursor: k1 + k2,
                }
            }
            (
                GroupKind::BaumslagSolitar { m },
                Element::Affine { power: k1, shift: c1 },
                Element::Affine { power: k2, shift: c2 },
            ) => Element::Affine {
                power: k1 + k2,
                shift: c1 + m_power(*m, *k1) * c2,
            },
            (GroupKind::Matrix { .. }, Element::Matrix(x), Element::Matrix(y)) => {
                Element::Matrix(x.mul(y))
            }
            (GroupKind::Product(l, r), Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::Pair(Box::new(l.mul(a1, a2)), Box::new(r.mul(b1, b2)))
            }
            _ => panic!("element shape does not match group {}", self.spec()),
        }
    }

    pub(crate) fn inv(&self, a: &Element) -> Element {
        match (self.kind(), a) {
            (GroupKind::Lattice { .. }, Element::Lattice(x)) => {
                Element::Lattice(x.iter().map(|p| -p).collect())
            }
            (GroupKind::Free { .. }, Element::Free(w)) => {
                Element::Free(w.iter().rev().map(|l| -l).collect())
            }
            (GroupKind::Heisenberg, Element::Heisenberg(x)) => {
                Element::Heisenberg([-x[0], -x[1], -x[2] + x[0] * x[1]])
            }
            (GroupKind::Lamplighter, Element::Lamplighter { lamps, cursor }) => {
                Element::Lamplighter {
                    lamps: lamps.iter().map(|p| p - cursor).collect(),
                    cursor: -cursor,
                }
            }
            (GroupKind::BaumslagSolitar { m }, Element::Affine { power, shift }) => {
                Element::Affine {
                    power: -power,
                    shift: -(shift * m_power(*m, -power)),
                }
            }
            (GroupKind::Matrix { .. }, Element::Matrix(x)) => {
                Element::Matrix(x.inverse().expect("group elements are invertible"))
            }
            (GroupKind::Product(l, r), Element::Pair(a, b)) => {
                Element::Pair(Box::new(l.inv(a)), Box::new(r.inv(b)))
            }
            _ => panic!("element shape does not match group {}", self.spec()),
        }
    }

    /// `g^n` by repeated squaring; negative exponents invert first.
    pub fn pow(&self, g: &Element, n: i64) -> Result<Element> {
        self.check(g)?;
        let mut base = if n < 0 { self.inv(g) } else { g.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Named generators (not symmetrised), in catalog order.
    pub fn named_generators(&self) -> Vec<(String, Element)> {
        match self.kind() {
            GroupKind::Lattice { dim } => (0..*dim)
                .map(|i| {
                    let mut v = vec![0; *dim];
                    v[i] = 1;
                    (lattice_name(*dim, i), Element::Lattice(v))
                })
                .collect(),
            GroupKind::Free { rank } => FREE_LETTERS
                .chars()
                .take(*rank)
                .enumerate()
                .map(|(i, c)| (c.to_string(), Element::Free(vec![i as i32 + 1])))
                .collect(),
            GroupKind::Heisenberg => vec![
                ("x".into(), Element::Heisenberg([1, 0, 0])),
                ("y".into(), Element::Heisenberg([0, 1, 0])),
            ],
            GroupKind::Lamplighter => vec![
                (
                    "t".into(),
                    Element::Lamplighter {
                        lamps: vec![],
                        cursor: 1,
                    },
                ),
                (
                    "a".into(),
                    Element::Lamplighter {
                        lamps: vec![0],
                        cursor: 0,
                    },
                ),
            ],
            GroupKind::BaumslagSolitar { .. } => vec![
                (
                    "a".into(),
                    Element::Affine {
                        power: 1,
                        shift: Rational::zero(),
                    },
                ),
                (
                    "b".into(),
                    Element::Affine {
                        power: 0,
                        shift: Rational::one(),
                    },
                ),
            ],
            GroupKind::Matrix { name, generators } => {
                let names: Vec<String> = if name.as_deref() == Some("Dinf") {
                    vec!["r".into(), "s".into()]
                } else {
                    (1..=generators.len()).map(|i| format!("g{i}")).collect()
                };
                names
                    .into_iter()
                    .zip(generators.iter().cloned().map(Element::Matrix))
                    .collect()
            }
            GroupKind::Product(l, r) => {
                let (ln, rn) = self.product_names();
                let mut out = Vec::new();
                for ((_, g), n) in l.named_generators().into_iter().zip(ln) {
                    out.push((n, Element::Pair(Box::new(g), Box::new(r.identity()))));
                }
                for ((_, g), n) in r.named_generators().into_iter().zip(rn) {
                    out.push((n, Element::Pair(Box::new(l.identity()), Box::new(g))));
                }
                out
            }
        }
    }

    /// Names usable in element literals; a superset of the generator names.
    fn all_names(&self) -> Vec<(String, Element)> {
        let mut names = self.named_generators();
        match self.kind() {
            GroupKind::Heisenberg => names.push(("z".into(), Element::Heisenberg([0, 0, 1]))),
            GroupKind::Product(l, r) => {
                names.clear();
                let (ln, rn) = self.product_names();
                for ((_, g), n) in l.all_names().into_iter().zip(ln) {
                    names.push((n, Element::Pair(Box::new(g), Box::new(r.identity()))));
                }
                for ((_, g), n) in r.all_names().into_iter().zip(rn) {
                    names.push((n, Element::Pair(Box::new(l.identity()), Box::new(g))));
                }
            }
            _ => {}
        }
        names
    }

    /// Names of the factors' literals inside a product; prefixed with
    /// `l.` / `r.` when the two factors share a name.
    fn product_names(&self) -> (Vec<String>, Vec<String>) {
        let (l, r) = self.factors().expect("product");
        let ln: Vec<String> = l.all_names().into_iter().map(|(n, _)| n).collect();
        let rn: Vec<String> = r.all_names().into_iter().map(|(n, _)| n).collect();
        if ln.iter().any(|n| rn.contains(n)) {
            (
                ln.into_iter().map(|n| format!("l.{n}")).collect(),
                rn.into_iter().map(|n| format!("r.{n}")).collect(),
            )
        } else {
            (ln, rn)
        }
    }

    /// Generators closed under inverse: each generator followed by its
    /// inverse unless the inverse is already present.
    pub fn default_generators(&self) -> Vec<Element> {
        let gens: Vec<Element> = self.named_generators().into_iter().map(|(_, g)| g).collect();
        symmetrize(self, &gens)
    }

    pub fn parse_element(&self, literal: &str) -> Result<Element> {
        spec::parse_word(self, literal)
    }

    pub(crate) fn lookup_name(&self, name: &str) -> Option<Element> {
        self.all_names()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    /// A word in the named generators evaluating to `g`; `e` for the identity.
    pub fn format_element(&self, g: &Element) -> Result<String> {
        self.check(g)?;
        let tokens = merge_tokens(self.word_tokens(g)?);
        if tokens.is_empty() {
            return Ok("e".into());
        }
        Ok(tokens
            .iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect::<Vec<_>>()
            .join("*"))
    }

    fn word_tokens(&self, g: &Element) -> Result<Vec<(String, i64)>> {
        let names: Vec<String> = self.all_names().into_iter().map(|(n, _)| n).collect();
        Ok(match (self.kind(), g) {
            (GroupKind::Lattice { .. }, Element::Lattice(v)) => {
                v.iter().enumerate().map(|(i, &c)| (names[i].clone(), c)).collect()
            }
            (GroupKind::Free { .. }, Element::Free(w)) => w
                .iter()
                .map(|&l| (names[l.unsigned_abs() as usize - 1].clone(), l.signum() as i64))
                .collect(),
            (GroupKind::Heisenberg, Element::Heisenberg([x, y, z])) => vec![
                ("x".into(), *x),
                ("y".into(), *y),
                ("z".into(), z - x * y),
            ],
            (GroupKind::Lamplighter, Element::Lamplighter { lamps, cursor }) => {
                let mut out = Vec::new();
                for &p in lamps {
                    out.push(("t".into(), p));
                    out.push(("a".into(), 1));
                    out.push(("t".into(), -p));
                }
                out.push(("t".into(), *cursor));
                out
            }
            (GroupKind::BaumslagSolitar { m }, Element::Affine { power, shift }) => {
                let mut j = 0i64;
                let mut scaled = shift.clone();
                let mb = Rational::from_integer(BigInt::from(*m));
                while !scaled.denom().is_one() {
                    scaled *= &mb;
                    j += 1;
                }
                let p = scaled.numer().to_i64().ok_or_else(|| {
                    Error::Evaluation(format!("translation {shift} too large to print"))
                })?;
                vec![("a".into(), -j), ("b".into(), p), ("a".into(), j + power)]
            }
            (GroupKind::Matrix { .. }, _) => {
                let word = shortest_word(self, g, DEFAULT_CAP)?;
                let gens = self.default_generators();
                let named = self.named_generators();
                word.into_iter()
                    .map(|i| {
                        let s = &gens[i];
                        match named.iter().find(|(_, h)| h == s) {
                            Some((n, _)) => (n.clone(), 1),
                            None => {
                                let inv = self.inv(s);
                                let (n, _) = named
                                    .iter()
                                    .find(|(_, h)| *h == inv)
                                    .expect("symmetrised set");
                                (n.clone(), -1)
                            }
                        }
                    })
                    .collect()
            }
            (GroupKind::Product(l, r), Element::Pair(a, b)) => {
                let (ln, rn) = self.product_names();
                let lnames: Vec<String> = l.all_names().into_iter().map(|(n, _)| n).collect();
                let rnames: Vec<String> = r.all_names().into_iter().map(|(n, _)| n).collect();
                let rename = |tok: Vec<(String, i64)>, from: &[String], to: &[String]| {
                    tok.into_iter()
                        .map(|(n, e)| {
                            let i = from.iter().position(|x| *x == n).expect("known name");
                            (to[i].clone(), e)
                        })
                        .collect::<Vec<_>>()
                };
                let mut out = rename(l.word_tokens(a)?, &lnames, &ln);
                out.extend(rename(r.word_tokens(b)?, &rnames, &rn));
                out
            }
            _ => return Err(Error::GroupMismatch { group: self.spec() }),
        })
    }
}

fn lattice_name(dim: usize, i: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn merge_tokens(tokens: Vec<(String, i64)>) -> Vec<(String, i64)> {
    let mut out: Vec<(String, i64)> = Vec::new();
    for (n, e) in tokens {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((last, acc)) if *last == n => {
                *acc += e;
                if *acc == 0 {
                    out.pop();
                }
            }
            _ => out.push((n, e)),
        }
    }
    out
}

/// `m^k` as a rational, `k` of either sign.
pub(crate) fn m_power(m: i64, k: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(m));
    let p = num_traits::pow(base, k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn affine(power: i64, shift: Rational) -> Element {
        Element::Affine { power, shift }
    }

    #[test]
    fn lattice_identity_and_product() {
        let z2 = Group::lattice(2).unwrap();
        assert_eq!(z2.identity(), Element::Lattice(vec![0, 0]));
        let p = z2
            .multiply(&Element::Lattice(vec![1, 2]), &Element::Lattice(vec![3, -1]))
            .unwrap();
        assert_eq!(p, Element::Lattice(vec![4, 1]));
        assert_eq!(
            z2.inverse(&Element::Lattice(vec![3, -1])).unwrap(),
            Element::Lattice(vec![-3, 1])
        );
    }

    #[test]
    fn free_reduction_and_inverse() {
        let f2 = Group::free(2).unwrap();
        let a = f2.parse_element("a").unwrap();
        let ai = f2.parse_element("a^-1").unwrap();
        assert_eq!(f2.multiply(&a, &ai).unwrap(), f2.identity());
        let ab = f2.parse_element("a*b").unwrap();
        assert_eq!(f2.inverse(&ab).unwrap(), f2.parse_element("b^-1*a^-1").unwrap());
    }

    #[test]
    fn baumslag_solitar_affine_composition() {
        let bs = Group::baumslag_solitar(2).unwrap();
        let a = affine(1, int(0));
        let b = affine(0, int(1));
        // (x -> 2x)(x -> x+1) = x -> 2x + 2
        assert_eq!(bs.multiply(&a, &b).unwrap(), affine(1, int(2)));
        // a b a^-1 = b^2, checked by composing the maps on sample points
        let lhs = bs.mul(&bs.mul(&a, &b), &bs.inv(&a));
        let rhs = bs.mul(&b, &b);
        assert_eq!(lhs, rhs);
        let eval = |g: &Element, v: Rational| match g {
            Element::Affine { power, shift } => m_power(2, *power) * v + shift,
            _ => unreachable!(),
        };
        for v in [int(0), ratio(3, 4), int(-5)] {
            let composed = eval(&a, eval(&b, eval(&bs.inv(&a), v.clone())));
            assert_eq!(composed, v + int(2));
        }
        assert!(Group::baumslag_solitar(1).is_err());
    }

    #[test]
    fn lamplighter_inverse_formula() {
        let ll = Group::lamplighter();
        let g = Element::Lamplighter {
            lamps: vec![0],
            cursor: 1,
        };
        let inv = ll.inverse(&g).unwrap();
        assert_eq!(
            inv,
            Element::Lamplighter {
                lamps: vec![-1],
                cursor: -1
            }
        );
        assert_eq!(ll.mul(&g, &inv), ll.identity());
        assert_eq!(ll.mul(&inv, &g), ll.identity());
    }

    #[test]
    fn heisenberg_commutator_is_central() {
        let h = Group::heisenberg();
        let x = h.parse_element("x").unwrap();
        let y = h.parse_element("y").unwrap();
        let comm = h.mul(&h.mul(&x, &y), &h.mul(&h.inv(&x), &h.inv(&y)));
        assert_eq!(comm, h.parse_element("z").unwrap());
        assert_eq!(h.mul(&comm, &x), h.mul(&x, &comm));
    }

    #[test]
    fn infinite_dihedral_matrices() {
        let d = Group::infinite_dihedral();
        let r = d.parse_element("r").unwrap();
        let s = d.parse_element("s").unwrap();
        assert_eq!(d.mul(&s, &s), d.identity());
        // s r s = r^-1
        assert_eq!(d.mul(&d.mul(&s, &r), &s), d.inv(&r));
        let singular = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert!(Group::matrix(vec![singular]).is_err());
    }

    #[test]
    fn element_group_mismatch() {
        let z = Group::lattice(1).unwrap();
        let f2 = Group::free(2).unwrap();
        assert!(matches!(
            z.multiply(&f2.identity(), &z.identity()),
            Err(Error::GroupMismatch { .. })
        ));
        assert!(z.inverse(&Element::Lattice(vec![1, 2])).is_err());
    }

    #[test]
    fn words_round_trip() {
        let groups = [
            Group::lattice(2).unwrap(),
            Group::free(2).unwrap(),
            Group::heisenberg(),
            Group::lamplighter(),
            Group::baumslag_solitar(2).unwrap(),
            Group::baumslag_solitar(3).unwrap(),
            Group::infinite_dihedral(),
            Group::product(Group::free(2).unwrap(), Group::lattice(1).unwrap()),
            Group::product(Group::lattice(1).unwrap(), Group::lattice(1).unwrap()),
        ];
        for g in &groups {
            let b = ball(g, &g.default_generators(), 3, DEFAULT_CAP).unwrap();
            for x in b.elements() {
                let w = g.format_element(x).unwrap();
                assert_eq!(&g.parse_element(&w).unwrap(), x, "{} word {}", g, w);
            }
        }
    }

    #[test]
    fn product_name_qualification() {
        let zz = Group::product(Group::lattice(1).unwrap(), Group::lattice(1).unwrap());
        let names: Vec<String> = zz.named_generators().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["l.x", "r.x"]);
        let f2z = Group::product(Group::free(2).unwrap(), Group::lattice(1).unwrap());
        let names: Vec<String> = f2z.named_generators().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["a", "b", "x"]);
    }
}
