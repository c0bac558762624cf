//! Textual set literals: `empty`, `{ v, ... }`, `num n`, `natv`, `pairv(v, w)`, `univ k`.

use std::fmt::Write;

use super::{natv, numeral, pair_v, ChildMap, VSet};
use crate::universe::{u_v, UEnv};

pub fn print(v: &VSet) -> String {
    let mut out = String::new();
    write_set(v, &mut out, usize::MAX);
    out
}

/// Printed form cut off after roughly 96 characters.
pub fn brief(v: &VSet) -> String {
    const LIMIT: usize = 96;
    let mut out = String::new();
    write_set(v, &mut out, LIMIT);
    if out.len() > LIMIT {
        let mut cut = LIMIT;
        while !out.is_char_boundary(cut) {
            cut -= 1;
        }
        out.truncate(cut);
        out.push_str("...");
    }
    out
}

fn write_set(v: &VSet, out: &mut String, limit: usize) {
    if out.len() > limit {
        return;
    }
    match v.children() {
        ChildMap::Table(t) if t.is_empty() => out.push_str("empty"),
        ChildMap::Table(t) => {
            out.push_str("{ ");
            for (i, (_, c)) in t.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_set(c, out, limit);
                if out.len() > limit {
                    return;
                }
            }
            out.push_str(" }");
        }
        ChildMap::NumeralGen => out.push_str("natv"),
        ChildMap::UnivGen(env) => {
            let _ = write!(out, "univ {}", env.level);
        }
        ChildMap::Rule(g) => {
            let _ = write!(out, "<{}>", g.describe());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for LiteralError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for LiteralError {}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), LiteralError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn number(&mut self) -> Result<u64, LiteralError> {
        let start = self.pos;
        let w = self.word();
        w.parse().or_else(|_| {
            self.pos = start;
            self.err("expected a natural number")
        })
    }

    fn set(&mut self) -> Result<VSet, LiteralError> {
        self.skip_ws();
        if self.eat("{") {
            let mut xs = Vec::new();
            if self.eat("}") {
                return Ok(VSet::empty());
            }
            loop {
                xs.push(self.set()?);
                if self.eat("}") {
                    return Ok(VSet::from_children(xs));
                }
                self.expect(",")?;
            }
        }
        let start = self.pos;
        match self.word() {
            "empty" => Ok(VSet::empty()),
            "natv" => Ok(natv()),
            "num" => Ok(numeral(self.number()?)),
            "univ" => Ok(u_v(UEnv::new(self.number()? as u32))),
            "pairv" => {
                self.expect("(")?;
                let a = self.set()?;
                self.expect(",")?;
                let b = self.set()?;
                self.expect(")")?;
                Ok(pair_v(&a, &b))
            }
            "" => self.err("expected a set literal"),
            other => {
                let other = other.to_string();
                self.pos = start;
                self.err(format!("unknown set literal `{other}`"))
            }
        }
    }
}

pub fn parse(src: &str) -> Result<VSet, LiteralError> {
    let mut c = Cursor { src, pos: 0 };
    let v = c.set()?;
    c.skip_ws();
    if c.pos != src.len() {
        return c.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::{eq_v, Budget};
    use super::*;

    #[test]
    fn round_trip() {
        for src in [
            "empty",
            "{ empty }",
            "{ { empty }, { empty, { empty } } }",
            "natv",
            "univ 1",
        ] {
            let v = parse(src).unwrap();
            assert_eq!(print(&v), src);
        }
    }

    #[test]
    fn sugar() {
        let b = Budget::default();
        let p = parse("pairv(empty, num 1)").unwrap();
        assert_eq!(print(&p), "{ { empty }, { empty, { empty } } }");
        assert!(eq_v(&parse("num 3").unwrap(), &numeral(3), &b).is_holds());
        assert!(eq_v(&parse("{}").unwrap(), &VSet::empty(), &b).is_holds());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse("{ empty, }").unwrap_err();
        assert_eq!(e.offset, 9);
        assert!(parse("{ empty").is_err());
        assert!(parse("num x").is_err());
        assert!(parse("empty empty").is_err());
    }

    #[test]
    fn brief_truncates() {
        let big = VSet::from_children((0..60).map(numeral).collect());
        assert!(brief(&big).ends_with("..."));
    }
}
