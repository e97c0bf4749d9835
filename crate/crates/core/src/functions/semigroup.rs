//! Membership in the semigroup `A` generated by a pair `{a, b}`: all
//! nonempty positive words in `a` and `b`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupKind};

/// Word depth enumerated when no normal-form decoder applies.
pub const DEFAULT_SEMIGROUP_DEPTH: usize = 12;

/// Exact decoders for pairs whose positive words have a recognisable normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoder {
    /// Free generators (or inverses) `la`, `lb` with distinct absolute value.
    FreeLetters { la: i32, lb: i32 },
    /// The pair `(t, a·t)` in the lamplighter; `t_first` when `a` is `t`.
    Lamplighter { t_first: bool },
    /// `x -> m x + c_0` and `x -> m x + c_1` with `c_0 ≢ c_1 (mod m)`.
    Affine { m: i64, shifts: [BigInt; 2] },
}

#[derive(Clone, Debug)]
pub struct SemigroupOracle {
    group: Group,
    a: Element,
    b: Element,
    decoder: Option<Decoder>,
    depth: usize,
    enumerated: HashSet<Element>,
}

impl SemigroupOracle {
    pub fn new(group: &Group, a: Element, b: Element, depth: usize) -> Result<SemigroupOracle> {
        group.check(&a)?;
        group.check(&b)?;
        if a == b {
            return Err(Error::Precondition("semigroup generators must differ".into()));
        }
        let decoder = find_decoder(group, &a, &b);
        let mut enumerated = HashSet::new();
        if decoder.is_none() {
            let mut layer = vec![a.clone(), b.clone()];
            for _ in 0..depth.max(1) {
                let mut next = Vec::with_capacity(layer.len() * 2);
                for w in &layer {
                    enumerated.insert(w.clone());
                    next.push(group.mul(w, &a));
                    next.push(group.mul(w, &b));
                }
                layer = next;
            }
        }
        Ok(SemigroupOracle {
            group: group.clone(),
            a,
            b,
            decoder,
            depth,
            enumerated,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> (&Element, &Element) {
        (&self.a, &self.b)
    }

    pub fn decoder(&self) -> Option<&Decoder> {
        self.decoder.as_ref()
    }

    /// True when membership is decided exactly for every element.
    pub fn is_exact(&self) -> bool {
        self.decoder.is_some()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn contains(&self, x: &Element) -> bool {
        match &self.decoder {
            Some(_) => self.decode(x).is_some(),
            None => self.enumerated.contains(x),
        }
    }

    /// The positive word spelling `x` (0 = `a`, 1 = `b`), when a decoder
    /// applies and `x ∈ A`.
    pub fn decode(&self, x: &Element) -> Option<Vec<u8>> {
        match (self.decoder.as_ref()?, x) {
            (Decoder::FreeLetters { la, lb }, Element::Free(w)) => {
                if w.is_empty() {
                    return None;
                }
                w.iter()
                    .map(|l| {
                        if l == la {
                            Some(0)
                        } else if l == lb {
                            Some(1)
                        } else {
                            None
                        }
                    })
                    .collect()
            }
            (Decoder::Lamplighter { t_first }, Element::Lamplighter { lamps, cursor }) => {
                let n = *cursor;
                if n < 1 || lamps.iter().any(|&p| p < 0 || p >= n) {
                    return None;
                }
                let (t, at) = if *t_first { (0, 1) } else { (1, 0) };
                Some((0..n).map(|p| if lamps.binary_search(&p).is_ok() { at } else { t }).collect())
            }
            (Decoder::Affine { m, shifts }, Element::Affine { power, shift }) => {
                if *power < 1 || !shift.denom().is_one() {
                    return None;
                }
                let m = BigInt::from(*m);
                let mut c = shift.numer().clone();
                let mut word = Vec::with_capacity(*power as usize);
                for _ in 0..*power {
                    let r = c.mod_floor(&m);
                    let letter = shifts.iter().position(|s| s.mod_floor(&m) == r)?;
                    word.push(letter as u8);
                    c = (c - &shifts[letter]) / &m;
                }
                c.is_zero().then_some(word)
            }
            _ => None,
        }
    }

    pub fn spell(&self, word: &[u8]) -> Element {
        word.iter().fold(self.group.identity(), |acc, &l| {
            self.group.mul(&acc, if l == 0 { &self.a } else { &self.b })
        })
    }
}

fn find_decoder(group: &Group, a: &Element, b: &Element) -> Option<Decoder> {
    match (group.kind(), a, b) {
        (GroupKind::Free { .. }, Element::Free(x), Element::Free(y)) => {
            (x.len() == 1 && y.len() == 1 && x[0].abs() != y[0].abs())
                .then(|| Decoder::FreeLetters { la: x[0], lb: y[0] })
        }
        (GroupKind::Lamplighter, Element::Lamplighter { lamps: la, cursor: ka }, Element::Lamplighter { lamps: lb, cursor: kb }) => {
            let t = |l: &Vec<i64>, k: i64| l.is_empty() && k == 1;
            let at = |l: &Vec<i64>, k: i64| l == &[0] && k == 1;
            if t(la, *ka) && at(lb, *kb) {
                Some(Decoder::Lamplighter { t_first: true })
            } else if at(la, *ka) && t(lb, *kb) {
                Some(Decoder::Lamplighter { t_first: false })
            } else {
                None
            }
        }
        (GroupKind::BaumslagSolitar { m }, Element::Affine { power: pa, shift: sa }, Element::Affine { power: pb, shift: sb }) => {
            let big_m = BigInt::from(*m);
            let ok = *pa == 1
                && *pb == 1
                && sa.denom().is_one()
                && sb.denom().is_one()
                && !(sa.numer() - sb.numer()).mod_floor(&big_m).is_zero();
            ok.then(|| Decoder::Affine {
                m: *m,
                shifts: [sa.numer().clone(), sb.numer().clone()],
            })
        }
        _ => None,
    }
}
