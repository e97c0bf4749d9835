//! Exact certificates for the translate, ratio and Reiter properties of
//! bounded functions on finitely generated groups.
//!
//! Everything is computed in arbitrary-precision rationals. Searches are
//! linear programs over finite windows (balls in the word metric); every
//! object they emit can be re-checked by the verifiers in [`certificates`],
//! which depend only on [`group`] and [`functions`].

pub mod certificates;
pub mod constructions;
pub mod error;
pub mod functions;
pub mod group;
pub mod lp;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use functions::{Descriptor, Embedding, QuerySpec, TestFunction, Weight};
pub use group::{BallTable, Element, Group};
pub use rational::Rational;
