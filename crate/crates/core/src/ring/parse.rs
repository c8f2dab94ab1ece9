//! Text syntax for rings and homomorphisms.
//!
//! ```text
//! ring := "Zn(" int ")" | "Product(" ring ("," ring)* ")"
//! hom  := "hom(" field ("," field)* ")"
//! field := "m=" int | "target=" ring | "e=" unit
//! unit := int | "(" int ("," int)* ")"
//! ```
//!
//! Whitespace is free between tokens. Fields may come in any order but each
//! must appear exactly once.

use std::fmt;

use thiserror::Error;

use super::{make_hom, Element, RingError, RingExpr, RingHom};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn error(&self, message: impl fmt::Display) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl fmt::Display) -> ParseError {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected an identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = rest[..len]
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

fn ring(cur: &mut Cursor) -> Result<RingExpr, ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    let name = cur.ident()?;
    cur.expect("(")?;
    match name {
        "Zn" => {
            let n = cur.int()?;
            cur.expect(")")?;
            RingExpr::zn(n).map_err(|e| cur.error_at(start, e))
        }
        "Product" => {
            let mut factors = vec![ring(cur)?];
            while cur.eat(",") {
                factors.push(ring(cur)?);
            }
            cur.expect(")")?;
            RingExpr::product(factors).map_err(|e| cur.error_at(start, e))
        }
        other => Err(cur.error_at(start, format!("unknown ring constructor `{other}`"))),
    }
}

fn unit(cur: &mut Cursor) -> Result<Element, ParseError> {
    if cur.eat("(") {
        let mut values = vec![cur.int()?];
        while cur.eat(",") {
            values.push(cur.int()?);
        }
        cur.expect(")")?;
        Ok(Element(values))
    } else {
        Ok(Element(vec![cur.int()?]))
    }
}

/// Parses `Zn(12)` or `Product(Zn(2),Zn(3))`.
pub fn parse_ring(text: &str) -> Result<RingExpr, ParseError> {
    let mut cur = Cursor::new(text);
    let r = ring(&mut cur)?;
    cur.finish()?;
    Ok(r)
}

/// Parses and validates `hom(m=6, target=Zn(2), e=1)`.
pub fn parse_hom(text: &str) -> Result<RingHom, RingError> {
    let mut cur = Cursor::new(text);
    let start = {
        cur.skip_ws();
        cur.pos
    };
    if cur.ident()? != "hom" {
        return Err(cur.error_at(start, "expected `hom`").into());
    }
    cur.expect("(")?;
    let (mut m, mut target, mut e) = (None, None, None);
    loop {
        let key_pos = {
            cur.skip_ws();
            cur.pos
        };
        let key = cur.ident()?;
        cur.expect("=")?;
        let duplicate = match key {
            "m" => m.replace(cur.int()?).is_some(),
            "target" => target.replace(ring(&mut cur)?).is_some(),
            "e" => e.replace(unit(&mut cur)?).is_some(),
            other => {
                return Err(cur.error_at(key_pos, format!("unknown field `{other}`")).into())
            }
        };
        if duplicate {
            return Err(cur.error_at(key_pos, format!("field `{key}` given twice")).into());
        }
        if !cur.eat(",") {
            break;
        }
    }
    cur.expect(")")?;
    cur.finish()?;
    let missing = |name: &str| -> RingError { cur.error(format!("missing field `{name}`")).into() };
    let m = m.ok_or_else(|| missing("m"))?;
    let target = target.ok_or_else(|| missing("target"))?;
    let e = e.ok_or_else(|| missing("e"))?;
    make_hom(m, target, e)
}
