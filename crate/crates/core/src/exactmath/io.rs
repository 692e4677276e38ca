//! Text and JSON forms of rational polynomials.
//!
//! The text reader accepts sums, products, integer powers, parentheses and
//! division by rational constants, so the canonical printed form
//! (`3/2*x^2*y - 1`) and hand-written factored input both parse.

use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::mpoly::{MPoly, Vars};
use super::rational::Rational;
use crate::error::{Error, Result};

impl MPoly<Rational> {
    /// Parses `text` over the given variables.
    pub fn parse(text: &str, vars: &[&str]) -> Result<MPoly> {
        let vars: Vars = Arc::new(vars.iter().map(|s| s.to_string()).collect());
        Parser::new(text, vars).run()
    }

    pub fn parse_in(text: &str, vars: &Vars) -> Result<MPoly> {
        Parser::new(text, vars.clone()).run()
    }

    /// Parses with variables collected from the text in sorted order.
    pub fn parse_infer(text: &str) -> Result<MPoly> {
        let mut names: Vec<String> = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                if !names.iter().any(|n| n == name) {
                    names.push(name.to_string());
                }
            } else {
                i += 1;
            }
        }
        names.sort();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        MPoly::parse(text, &refs)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: Vars,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: Vars) -> Self {
        Parser { src, pos: 0, vars }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn run(mut self) -> Result<MPoly> {
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected character"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    acc = acc.scale(&d.constant_term().unwrap().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow_with(e, &Rational::one()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Rational = self.src[start..self.pos].parse()?;
                Ok(MPoly::constant(self.vars.clone(), n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src.as_bytes()[self.pos].is_ascii_alphanumeric()
                        || self.src.as_bytes()[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(MPoly::var_with(self.vars.clone(), i, Rational::one())),
                    None => {
                        self.pos = start;
                        Err(Error::UnknownVariable(format!(
                            "{name} (at byte {start}; known: {})",
                            self.vars.join(", ")
                        )))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for MPoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars().as_ref().clone(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exps().to_vec(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        let n = j.vars.len();
        for (i, v) in j.vars.iter().enumerate() {
            if j.vars[..i].contains(v) {
                return Err(D::Error::custom(format!("duplicate variable {v:?}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for t in &j.terms {
            if t.exp.len() != n {
                return Err(D::Error::custom(format!(
                    "exponent vector {:?} has length {}, expected {n}",
                    t.exp,
                    t.exp.len()
                )));
            }
            if !seen.insert(t.exp.clone()) {
                return Err(D::Error::custom(format!(
                    "duplicate exponent vector {:?}",
                    t.exp
                )));
            }
        }
        Ok(MPoly::from_terms(
            Arc::new(j.vars),
            j.terms.into_iter().map(|t| (t.exp, t.coef)),
        ))
    }
}
