//! The group mini-language (`Z^2`, `F2`, `prod(F2,Z)`, `mat:[...]`, ...)
//! and element literals (`a*b^-1*a^2`).

use super::{Group, Matrix};
use crate::error::{Error, ParseError, Result};
use crate::rational::{self, Rational};

use super::Element;

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(self.input, self.pos, message))
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        let n = digits.parse().map_err(|_| self.error("number too large"))?;
        self.pos += digits.len();
        Ok(n)
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let text: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit() || *c == '-' || *c == '/')
            .collect();
        let start = self.pos;
        let r = rational::parse(&text).map_err(|e| {
            Error::Parse(ParseError::new(self.input, start + e.position, e.message))
        })?;
        self.pos += text.len();
        Ok(r)
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect("[")?;
        let mut out = vec![item(self)?];
        while self.eat(",") {
            out.push(item(self)?);
        }
        self.expect("]")?;
        Ok(out)
    }
}

/// Parses a group spec from the built-in catalog.
pub fn parse_group(input: &str) -> Result<Group> {
    parse_group_with(input, &|_| None)
}

/// Like [`parse_group`], with `named` consulted for bare identifiers that
/// are not catalog names (e.g. matrix groups defined in a config file).
pub fn parse_group_with(input: &str, named: &dyn Fn(&str) -> Option<Group>) -> Result<Group> {
    let mut cur = Cursor { input, pos: 0 };
    let g = group(&mut cur, named)?;
    cur.skip_ws();
    if !cur.rest().is_empty() {
        return Err(cur.error("trailing input"));
    }
    Ok(g)
}

fn group(cur: &mut Cursor<'_>, named: &dyn Fn(&str) -> Option<Group>) -> Result<Group> {
    cur.skip_ws();
    let start = cur.pos;
    if cur.eat("prod(") {
        let l = group(cur, named)?;
        cur.expect(",")?;
        let r = group(cur, named)?;
        cur.expect(")")?;
        return Ok(Group::product(l, r));
    }
    if cur.eat("mat:") {
        let mats = cur.list(|c| {
            let at = c.pos;
            let rows = c.list(|c| c.list(|c| c.rational()))?;
            Matrix::from_rows(rows).ok_or_else(|| {
                Error::Parse(ParseError::new(c.input, at, "matrix must be square"))
            })
        })?;
        return Group::matrix(mats).map_err(|e| relocate(e, input_of(cur), start));
    }
    let ident: String = cur
        .rest()
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    let built = match ident.as_str() {
        "Z" => {
            cur.pos += 1;
            let d = if cur.eat("^") { cur.number()? } else { 1 };
            return Group::lattice(d as usize).map_err(|e| relocate(e, input_of(cur), start));
        }
        "H3" => Some(Group::heisenberg()),
        "LL" => Some(Group::lamplighter()),
        "Dinf" => Some(Group::infinite_dihedral()),
        _ => None,
    };
    if let Some(g) = built {
        cur.pos += ident.len();
        return Ok(g);
    }
    if let Some(m) = ident.strip_prefix("BS1_") {
        let m: i64 = m.parse().map_err(|_| cur.error("expected BS1_<m>"))?;
        cur.pos += ident.len();
        return Group::baumslag_solitar(m).map_err(|e| relocate(e, input_of(cur), start));
    }
    if let Some(k) = ident.strip_prefix('F') {
        if let Ok(k) = k.parse::<usize>() {
            cur.pos += ident.len();
            return Group::free(k).map_err(|e| relocate(e, input_of(cur), start));
        }
    }
    if let Some(g) = named(&ident) {
        cur.pos += ident.len();
        return Ok(g);
    }
    Err(cur.error(format!("unknown group `{ident}`")))
}

fn input_of<'a>(cur: &Cursor<'a>) -> &'a str {
    cur.input
}

fn relocate(e: Error, input: &str, pos: usize) -> Error {
    match e {
        Error::InvalidGroup(msg) => Error::Parse(ParseError::new(input, pos, msg)),
        other => other,
    }
}

/// Evaluates a product of generator powers. `e` (or `1`) is the identity.
pub(crate) fn parse_word(group: &Group, input: &str) -> Result<Element> {
    let mut acc = group.identity();
    let mut offset = 0;
    for raw in input.split('*') {
        let lead = raw.len() - raw.trim_start().len();
        let token = raw.trim();
        let pos = offset + lead;
        offset += raw.len() + 1;
        if token.is_empty() {
            return Err(Error::Parse(ParseError::new(input, pos, "empty factor")));
        }
        if token == "e" || token == "1" {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                let exp: i64 = e.parse().map_err(|_| {
                    Error::Parse(ParseError::new(
                        input,
                        pos + n.len() + 1,
                        format!("bad exponent `{e}`"),
                    ))
                })?;
                (n.trim(), exp)
            }
            None => (token, 1),
        };
        let gen = group.lookup_name(name).ok_or_else(|| {
            Error::Parse(ParseError::new(
                input,
                pos,
                format!("unknown generator `{name}` in {}", group.spec()),
            ))
        })?;
        acc = group.mul(&acc, &group.pow(&gen, exp)?);
    }
    Ok(acc)
}
