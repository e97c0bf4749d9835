//! Optional TOML configuration: named matrix groups and declarative custom
//! test functions.
//!
//! ```toml
//! [groups.dinf]
//! matrices = [[["2", "0"], ["0", "1/2"]], [["0", "1"], ["1", "0"]]]
//!
//! [functions.starts_a]
//! kind = "prefix"
//! word = "a"
//!
//! [functions.corner]
//! kind = "set"
//! elements = ["e", "a", "a*b"]
//! value = "1/2"
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use conelab::certificates::FunctionResolver;
use conelab::functions::Predicate;
use conelab::group::{Element, Matrix};
use conelab::rational::{self, Rational};
use conelab::{Group, TestFunction};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDef>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    pub matrices: Vec<Vec<Vec<Number>>>,
}

/// A TOML integer or a `p/q` string.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational, CliError> {
        match self {
            Number::Int(n) => Ok(rational::int(*n)),
            Number::Text(s) => Ok(rational::parse(s).map_err(conelab::Error::from)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionDef {
    /// Indicator of the reduced words of a free group that begin with `word`.
    Prefix { word: String },
    /// `value` on a finite list of elements, 0 elsewhere.
    Set {
        elements: Vec<String>,
        #[serde(default)]
        value: Option<String>,
    },
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let config: Config = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        for (name, def) in &config.groups {
            config.build_group(name, def)?;
        }
        Ok(config)
    }

    fn build_group(&self, name: &str, def: &GroupDef) -> Result<Group, CliError> {
        let mut mats = Vec::new();
        for m in &def.matrices {
            let rows = m
                .iter()
                .map(|row| row.iter().map(Number::value).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let m = Matrix::from_rows(rows)
                .ok_or_else(|| CliError::Config(format!("group `{name}`: matrices must be square")))?;
            mats.push(m);
        }
        Ok(Group::matrix(mats)?)
    }

    fn build_function(&self, name: &str, def: &FunctionDef, group: &Group) -> Result<TestFunction, CliError> {
        match def {
            FunctionDef::Prefix { word } => {
                let Element::Free(prefix) = group.parse_element(word)? else {
                    return Err(CliError::Config(format!("function `{name}` needs a free group")));
                };
                let predicate = Predicate::new(move |x| match x {
                    Element::Free(w) if w.starts_with(&prefix) => rational::one(),
                    _ => rational::zero(),
                });
                Ok(TestFunction::custom(group, name, rational::one(), predicate))
            }
            FunctionDef::Set { elements, value } => {
                let value = match value {
                    Some(v) => rational::parse(v).map_err(conelab::Error::from)?,
                    None => rational::one(),
                };
                if value < rational::zero() {
                    return Err(CliError::Config(format!("function `{name}` must be nonnegative")));
                }
                let members: Arc<Vec<Element>> = Arc::new(
                    elements
                        .iter()
                        .map(|w| group.parse_element(w))
                        .collect::<Result<_, _>>()?,
                );
                let v = value.clone();
                let predicate = Predicate::new(move |x| if members.contains(x) { v.clone() } else { rational::zero() });
                Ok(TestFunction::custom(group, name, value, predicate))
            }
        }
    }
}

impl FunctionResolver for Config {
    fn group(&self, name: &str) -> Option<Group> {
        self.groups.get(name).and_then(|def| self.build_group(name, def).ok())
    }

    fn function(&self, name: &str, group: &Group) -> Option<TestFunction> {
        self.functions
            .get(name)
            .and_then(|def| self.build_function(name, def, group).ok())
    }
}
