use std::collections::HashMap;

use super::{count, Level, TranslateViolation, VerificationReport};
use crate::error::{Error, Result};
use crate::functions::{Descriptor, Embedding, SemigroupOracle, TestFunction};
use crate::group::{ball, Element, Group};
use crate::rational::{self, Rational};

/// All nonempty words of length at most `depth` in `a`, `b` are distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessWitness {
    pub group: Group,
    pub a: Element,
    pub b: Element,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessOutcome {
    Free(FreenessWitness),
    /// Two distinct words (0 = `a`, 1 = `b`) spelling the same element.
    Collision { first: Vec<u8>, second: Vec<u8> },
}

impl FreenessWitness {
    pub fn verify(&self, cap: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("freeness_witness", Level::Global, None);
        report.record("depth", count(self.depth));
        report.record("words", count((1usize << (self.depth + 1)) - 2));
        match free_to_depth(&self.group, &self.a, &self.b, self.depth, cap)? {
            FreenessOutcome::Free(_) => {}
            FreenessOutcome::Collision { first, second } => {
                report.fail(format!("words {} and {} coincide", spell_letters(&first), spell_letters(&second)))
            }
        }
        Ok(report)
    }
}

pub fn spell_letters(word: &[u8]) -> String {
    word.iter().map(|&l| if l == 0 { 'a' } else { 'b' }).collect()
}

/// Enumerates the `2^(depth+1) - 2` nonempty words by length, then
/// lexicographically, and reports the first coincidence.
pub fn free_to_depth(group: &Group, a: &Element, b: &Element, depth: usize, cap: usize) -> Result<FreenessOutcome> {
    group.check(a)?;
    group.check(b)?;
    if depth == 0 {
        return Err(Error::Precondition("freeness depth must be at least 1".into()));
    }
    if depth >= usize::BITS as usize - 2 || (1usize << (depth + 1)) - 2 > cap {
        return Err(Error::CapExceeded { limit: cap });
    }
    let mut seen: HashMap<Element, Vec<u8>> = HashMap::new();
    let mut layer: Vec<(Vec<u8>, Element)> = vec![(Vec::new(), group.identity())];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for (w, x) in &layer {
            for (letter, g) in [(0u8, a), (1u8, b)] {
                let mut word = w.clone();
                word.push(letter);
                let y = group.mul(x, g);
                if let Some(prev) = seen.get(&y) {
                    return Ok(FreenessOutcome::Collision {
                        first: prev.clone(),
                        second: word,
                    });
                }
                seen.insert(y.clone(), word.clone());
                next.push((word, y));
            }
        }
        layer = next;
    }
    Ok(FreenessOutcome::Free(FreenessWitness {
        group: group.clone(),
        a: a.clone(),
        b: b.clone(),
        depth,
    }))
}

/// Peels zero extensions off `f` down to a semigroup indicator.
fn semigroup_core(f: &TestFunction) -> Option<(&SemigroupOracle, Vec<&Embedding>)> {
    match f.descriptor() {
        Descriptor::Semigroup(o) => Some((o, Vec::new())),
        Descriptor::ZeroExtension { inner, embedding } => {
            let (o, mut chain) = semigroup_core(inner)?;
            chain.push(embedding);
            Some((o, chain))
        }
        _ => None,
    }
}

/// Upgrades the violation `(1,e), (-1,a), (-1,b)` for the indicator of the
/// semigroup generated by `a, b` (possibly zero-extended) to a check that
/// holds everywhere.
///
/// The argument: `x ∈ aA` or `x ∈ bA` forces `x ∈ A`, and `aA ∩ bA = ∅`
/// because the normal-form decoder assigns each element of `A` a unique
/// word. The decoder is a catalog normal form; here it is checked to agree
/// with word spelling to `depth`, the pair is checked free to `depth`, and
/// the first-letter rule is checked on the ball of radius `depth`.
pub fn structural_verify_semigroup_violation(
    v: &TranslateViolation,
    depth: usize,
    cap: usize,
) -> Result<VerificationReport> {
    let (oracle, chain) = semigroup_core(&v.f)
        .ok_or_else(|| Error::PatternMismatch("test function is not a semigroup indicator".into()))?;
    let (a, b) = oracle.generators();
    let lift = |h: &Element| -> Result<Element> { chain.iter().try_fold(h.clone(), |x, e| e.map(&x)) };
    let group = v.group();
    let mut expected = vec![
        (rational::one(), group.identity()),
        (-rational::one(), lift(a)?),
        (-rational::one(), lift(b)?),
    ];
    expected.sort_by(|x, y| x.1.cmp(&y.1));
    let total = v.total();
    let scaled: Vec<(Rational, Element)> =
        v.items.iter().map(|(t, g)| (-(t / &total), g.clone())).collect();
    if scaled != expected {
        return Err(Error::PatternMismatch("items are not (1,e), (-1,a), (-1,b)".into()));
    }
    if !oracle.is_exact() {
        return Err(Error::PatternMismatch("the pair has no normal-form decoder".into()));
    }
    let h = oracle.group();
    if let FreenessOutcome::Collision { first, second } = free_to_depth(h, a, b, depth, cap)? {
        return Err(Error::NotFree(format!(
            "words {} and {} coincide",
            spell_letters(&first),
            spell_letters(&second)
        )));
    }

    let mut report = VerificationReport::new("translate_violation", Level::Structural, Some(depth));
    let mut words = 0usize;
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for w in &layer {
            for letter in 0..2u8 {
                let mut word = w.clone();
                word.push(letter);
                words += 1;
                if oracle.decode(&oracle.spell(&word)).as_ref() != Some(&word) {
                    report.fail(format!("decoder disagrees with the word {}", spell_letters(&word)));
                }
                next.push(word);
            }
        }
        layer = next;
    }

    let window = ball(h, &h.default_generators(), depth, cap)?;
    let (a_inv, b_inv) = (h.inv(a), h.inv(b));
    for x in window.elements() {
        let w = oracle.decode(x);
        for (letter, g_inv) in [(0u8, &a_inv), (1u8, &b_inv)] {
            let expect = match &w {
                Some(w) if w[0] == letter && w.len() > 1 => Some(w[1..].to_vec()),
                _ => None,
            };
            if oracle.decode(&h.mul(g_inv, x)) != expect {
                report.fail(format!("first-letter rule fails at {}", x.key()));
            }
        }
    }
    report.record("freeness_depth", count(depth));
    report.record("words_checked", count(words));
    report.record("structural_points", count(window.len()));
    Ok(report)
}
