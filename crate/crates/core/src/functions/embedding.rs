use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Injective homomorphisms `H -> G` whose image has decidable membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    Identity(Group),
    /// A factor of a direct product.
    Factor { side: Side, target: Group },
    /// `Z^k -> Z^d`, `x -> (s_1 x_1, ..., s_k x_k, 0, ..., 0)`.
    Lattice { scales: Vec<i64>, target_dim: usize },
}

impl Embedding {
    pub fn factor(side: Side, target: &Group) -> Result<Embedding> {
        if target.factors().is_none() {
            return Err(Error::UnsupportedEmbedding(format!("{} is not a direct product", target.spec())));
        }
        Ok(Embedding::Factor {
            side,
            target: target.clone(),
        })
    }

    pub fn lattice(scales: Vec<i64>, target_dim: usize) -> Result<Embedding> {
        if scales.is_empty() || scales.len() > target_dim || scales.contains(&0) {
            return Err(Error::UnsupportedEmbedding(format!(
                "lattice embedding needs 1..={target_dim} nonzero scales"
            )));
        }
        Ok(Embedding::Lattice { scales, target_dim })
    }

    pub fn source(&self) -> Group {
        match self {
            Embedding::Identity(g) => g.clone(),
            Embedding::Factor { side, target } => {
                let (l, r) = target.factors().expect("checked at construction");
                match side {
                    Side::Left => l.clone(),
                    Side::Right => r.clone(),
                }
            }
            Embedding::Lattice { scales, .. } => Group::lattice(scales.len()).expect("nonempty"),
        }
    }

    pub fn target(&self) -> Group {
        match self {
            Embedding::Identity(g) => g.clone(),
            Embedding::Factor { target, .. } => target.clone(),
            Embedding::Lattice { target_dim, .. } => Group::lattice(*target_dim).expect("nonempty"),
        }
    }

    pub fn map(&self, h: &Element) -> Result<Element> {
        self.source().check(h)?;
        Ok(match (self, h) {
            (Embedding::Identity(_), _) => h.clone(),
            (Embedding::Factor { side, target }, _) => {
                let (l, r) = target.factors().expect("product");
                match side {
                    Side::Left => Element::Pair(Box::new(h.clone()), Box::new(r.identity())),
                    Side::Right => Element::Pair(Box::new(l.identity()), Box::new(h.clone())),
                }
            }
            (Embedding::Lattice { scales, target_dim }, Element::Lattice(v)) => {
                let mut out = vec![0; *target_dim];
                for (i, (x, s)) in v.iter().zip(scales).enumerate() {
                    out[i] = x * s;
                }
                Element::Lattice(out)
            }
            _ => unreachable!("source membership checked"),
        })
    }

    /// The unique preimage of `g`, or `None` when `g` is outside the image.
    pub fn preimage(&self, g: &Element) -> Result<Option<Element>> {
        self.target().check(g)?;
        Ok(match (self, g) {
            (Embedding::Identity(_), _) => Some(g.clone()),
            (Embedding::Factor { side, target }, Element::Pair(a, b)) => {
                let (l, r) = target.factors().expect("product");
                match side {
                    Side::Left => (**b == r.identity()).then(|| (**a).clone()),
                    Side::Right => (**a == l.identity()).then(|| (**b).clone()),
                }
            }
            (Embedding::Lattice { scales, .. }, Element::Lattice(v)) => {
                let k = scales.len();
                if v[k..].iter().any(|&x| x != 0) || v.iter().zip(scales).any(|(x, s)| x % s != 0) {
                    None
                } else {
                    Some(Element::Lattice(v.iter().zip(scales).map(|(x, s)| x / s).collect()))
                }
            }
            _ => unreachable!("target membership checked"),
        })
    }

    pub fn spec(&self) -> String {
        match self {
            Embedding::Identity(_) => "id".into(),
            Embedding::Factor { side: Side::Left, .. } => "left".into(),
            Embedding::Factor { side: Side::Right, .. } => "right".into(),
            Embedding::Lattice { scales, target_dim } => format!(
                "lattice:{target_dim}:{}",
                scales.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    /// Parses `id`, `left`, `right` or `lattice:<d>:<s1>,..` against a
    /// target group; returns the embedding and the unparsed remainder.
    pub fn parse<'a>(input: &'a str, target: &Group) -> Result<(Embedding, &'a str)> {
        let (head, rest) = input.split_once(':').unwrap_or((input, ""));
        match head {
            "id" => Ok((Embedding::Identity(target.clone()), rest)),
            "left" => Ok((Embedding::factor(Side::Left, target)?, rest)),
            "right" => Ok((Embedding::factor(Side::Right, target)?, rest)),
            "lattice" => {
                let mut parts = rest.splitn(3, ':');
                let bad = || Error::UnsupportedEmbedding(format!("bad lattice embedding `{input}`"));
                let d: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                let scales: Vec<i64> = parts
                    .next()
                    .ok_or_else(bad)?
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?;
                match target.kind() {
                    GroupKind::Lattice { dim } if *dim == d => {}
                    _ => return Err(Error::UnsupportedEmbedding(format!("{} is not Z^{d}", target.spec()))),
                }
                Ok((Embedding::lattice(scales, d)?, parts.next().unwrap_or("")))
            }
            other => Err(Error::UnsupportedEmbedding(format!("unknown embedding `{other}`"))),
        }
    }
}
