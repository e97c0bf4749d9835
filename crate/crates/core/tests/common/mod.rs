//! Test-only oracles. Nothing here calls into the simplex code.
#![allow(dead_code)]

pub mod fm;
pub mod instances;
pub mod random;
