//! Text grammar for scale descriptions:
//! `points(1,2,3)`, `uniform(a,b,h)`, `qscale(q)`, `interval(lo,hi)`,
//! `union(e1; e2; ...)`. Whitespace-insensitive; numbers accept integer,
//! decimal and `p/q` rational literals.

use crate::error::{Error, Result};
use crate::timescale::TimeScale;

pub fn parse_scale(text: &str) -> Result<TimeScale> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let s = p.scale()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(s)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            self.skip_ws();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", ch as char)))
        }
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a scale constructor name"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_owned();
        self.skip_ws();
        Ok(s)
    }

    fn scale(&mut self) -> Result<TimeScale> {
        let name = self.ident()?;
        self.expect(b'(')?;
        let out = match name.as_str() {
            "points" => {
                let mut pts = vec![self.number()?];
                while self.eat(b',') {
                    pts.push(self.number()?);
                }
                TimeScale::points(pts)
            }
            "uniform" => {
                let a = self.number()?;
                self.expect(b',')?;
                let b = self.number()?;
                self.expect(b',')?;
                let h = self.number()?;
                TimeScale::uniform(a, b, h)
            }
            "qscale" => TimeScale::qscale(self.number()?),
            "interval" => {
                let lo = self.number()?;
                self.expect(b',')?;
                let hi = self.number()?;
                TimeScale::interval(lo, hi)
            }
            "union" => {
                let mut parts = vec![self.scale()?];
                while self.eat(b';') {
                    parts.push(self.scale()?);
                }
                TimeScale::union(parts)
            }
            other => return Err(self.err(&format!("unknown scale constructor '{other}'"))),
        };
        self.expect(b')')?;
        out
    }

    /// Signed number: integer, decimal or `p/q` rational.
    fn number(&mut self) -> Result<f64> {
        let neg = self.eat(b'-');
        let p = self.unsigned_decimal()?;
        let v = if self.eat(b'/') {
            let q = self.unsigned_decimal()?;
            if q == 0.0 {
                return Err(self.err("zero denominator in rational literal"));
            }
            p / q
        } else {
            p
        };
        Ok(if neg { -v } else { v })
    }

    fn unsigned_decimal(&mut self) -> Result<f64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("invalid number '{text}'"),
        })?;
        self.skip_ws();
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let s = parse_scale("points(1, 2, 3)").unwrap();
        assert_eq!(s.enumerate_between(0.0, 5.0, 10).unwrap(), vec![1.0, 2.0, 3.0]);

        let s = parse_scale("uniform(0, 3, 1)").unwrap();
        assert_eq!(s.enumerate_between(0.0, 3.0, 10).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);

        let s = parse_scale("qscale(2)").unwrap();
        assert!(s.contains(0.25));

        let s = parse_scale("interval(0, 1)").unwrap();
        assert!(s.contains(0.5));
    }

    #[test]
    fn union_and_rationals() {
        let s = parse_scale("union(points(0); interval(1, 2))").unwrap();
        assert!(s.contains(0.0));
        assert!(s.contains(1.5));
        assert!(!s.contains(0.5));

        let s = parse_scale("qscale(3/2)").unwrap();
        assert!(s.contains(2.0 / 3.0));

        let s = parse_scale("points(-1/2, 1/2)").unwrap();
        assert!(s.contains(-0.5));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_scale("spiral(1)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scale("points()"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scale("points(1,2) extra"), Err(Error::Syntax { .. })));
    }
}
