use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Cyclotomic, Rational, Scalar};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::Parse {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// `z` or `z^k`; returns the exponent.
    fn zpow(&mut self) -> Result<usize> {
        if !self.eat(b'z') {
            return Err(self.err("expected z"));
        }
        if self.eat(b'^') {
            let e = self.integer()?;
            usize::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }
}

/// Parses `p`, `p/q`, or a polynomial in `z` such as `1/2 - z + 3*z^2`.
pub(super) fn parse_scalar(s: &str, conductor: Option<usize>) -> Result<Scalar> {
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut poly: Vec<Rational> = Vec::new();
    let mut first = true;
    loop {
        let sign = if cur.eat(b'-') {
            -Rational::one()
        } else if cur.eat(b'+') || first {
            Rational::one()
        } else {
            break;
        };
        first = false;
        let (coeff, exp) = match cur.peek() {
            Some(b'z') => (Rational::one(), cur.zpow()?),
            Some(c) if c.is_ascii_digit() => {
                let r = cur.rational()?;
                if cur.eat(b'*') {
                    (r, cur.zpow()?)
                } else {
                    (r, 0)
                }
            }
            _ => return Err(cur.err("expected a number or z")),
        };
        if exp > 0 && conductor.is_none() {
            return Err(cur.err("z requires a conductor"));
        }
        if poly.len() <= exp {
            poly.resize(exp + 1, Rational::zero());
        }
        poly[exp] += sign * coeff;
    }
    if cur.peek().is_some() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(match conductor {
        Some(n) if poly.len() > 1 => Scalar::Cyclotomic(Cyclotomic::from_poly(n, poly)),
        _ => Scalar::Rational(poly.into_iter().next().unwrap_or_else(Rational::zero)),
    })
}
