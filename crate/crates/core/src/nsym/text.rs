//! Text and JSON forms shared by every basis: `2*S[2,1] - 1/3*S[1,1,2]`,
//! `(1 - z)*R[2] + z^2*R[1,1]`, `{"basis": "S", "terms": [...]}`.

use std::cmp::Reverse;

use serde_json::{json, Value};

use super::NsymElement;
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A parsed linear combination over a named basis, before interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    /// Basis name, e.g. `S`, `R`, `Sigma`, `rho`; empty if only scalars appeared.
    pub basis: String,
    /// Order `N` carried in JSON, if any.
    pub order: Option<usize>,
    pub terms: Vec<(Composition, Scalar)>,
}

impl Expr {
    pub fn from_json(v: &Value) -> Result<Expr> {
        let bad = |m: &str| Error::Parse {
            pos: 0,
            msg: format!("element JSON: {m}"),
        };
        let basis = v
            .get("basis")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing basis"))?
            .to_string();
        let order = match v.get("N") {
            None => None,
            Some(n) => Some(n.as_u64().ok_or_else(|| bad("N must be an integer"))? as usize),
        };
        let mut terms = Vec::new();
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?
        {
            let parts: Vec<usize> = t
                .get("comp")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without comp"))?
                .iter()
                .map(|p| p.as_u64().map(|x| x as usize).ok_or_else(|| bad("comp part")))
                .collect::<Result<_>>()?;
            let coeff = Scalar::from_json(t.get("coeff").ok_or_else(|| bad("term without coeff"))?)?;
            terms.push((Composition::new(parts)?, coeff));
        }
        Ok(Expr {
            basis,
            order,
            terms,
        })
    }
}

pub fn terms_to_json<'a>(
    basis: &str,
    order: Option<usize>,
    terms: impl Iterator<Item = (&'a Composition, &'a Scalar)>,
) -> Value {
    let terms: Vec<Value> = sorted(terms)
        .into_iter()
        .map(|(c, x)| json!({ "comp": c.parts(), "coeff": x.to_json() }))
        .collect();
    let mut v = json!({ "basis": basis, "terms": terms });
    if let Some(n) = order {
        v["N"] = json!(n);
    }
    v
}

/// Display order: by weight, then by descent mask descending.
fn sorted<'a>(
    terms: impl Iterator<Item = (&'a Composition, &'a Scalar)>,
) -> Vec<(&'a Composition, &'a Scalar)> {
    let mut v: Vec<_> = terms.collect();
    v.sort_by_key(|(c, _)| (c.weight(), Reverse(*c)));
    v
}

/// Renders the magnitude of a coefficient; empty for `1` unless `bare`.
fn render_coeff(x: &Scalar, bare: bool) -> String {
    if x.is_one() {
        return if bare { "1".into() } else { String::new() };
    }
    let star = if bare { "" } else { "*" };
    if x.as_rational().is_some() || !x.is_compound() {
        // rational or a single monomial c·z^k, both parse back without parentheses
        format!("{x}{star}")
    } else {
        format!("({x}){star}")
    }
}

pub fn render_terms<'a>(
    basis: &str,
    terms: impl Iterator<Item = (&'a Composition, &'a Scalar)>,
) -> String {
    let mut out = String::new();
    for (c, x) in sorted(terms) {
        let negative = x.is_negative_monomial();
        let mag = if negative { -x } else { x.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if c.is_empty() {
            out.push_str(&render_coeff(&mag, true));
        } else {
            out.push_str(&render_coeff(&mag, false));
            out.push_str(basis);
            out.push_str(&c.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
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

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        let len: usize = self
            .rest()
            .chars()
            .take_while(|&c| f(c))
            .map(char::len_utf8)
            .sum();
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn composition(&mut self) -> Result<Composition> {
        if !self.eat('[') {
            return Err(self.err("expected '['"));
        }
        let mut parts = Vec::new();
        if !self.eat(']') {
            loop {
                self.skip_ws();
                let at = self.pos;
                let digits = self.take_while(|c| c.is_ascii_digit());
                let part: usize = digits.parse().map_err(|_| Error::Parse {
                    pos: at,
                    msg: "expected a positive part".into(),
                })?;
                if part == 0 {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "composition parts must be positive".into(),
                    });
                }
                parts.push(part);
                if self.eat(']') {
                    break;
                }
                if !self.eat(',') {
                    return Err(self.err("expected ',' or ']'"));
                }
            }
        }
        Ok(Composition::new(parts).expect("parts checked"))
    }

    /// A scalar factor: rational, `z^k`, or a parenthesized polynomial in `z`.
    fn scalar_factor(&mut self, conductor: Option<usize>) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        let shifted = |e: Error, base: usize| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: base + pos,
                msg,
            },
            other => other,
        };
        if self.eat('(') {
            let inner_start = self.pos;
            let close = self.rest().find(')').ok_or_else(|| self.err("unclosed '('"))?;
            let inner = &self.src[inner_start..inner_start + close];
            self.pos = inner_start + close + 1;
            return Scalar::parse(inner, conductor).map_err(|e| shifted(e, inner_start));
        }
        let text = self.take_while(|c| c.is_ascii_digit() || matches!(c, '/' | 'z' | '^'));
        if text.is_empty() {
            return Err(self.err("expected a coefficient or basis element"));
        }
        Scalar::parse(text, conductor).map_err(|e| shifted(e, start))
    }

    fn term(&mut self, conductor: Option<usize>, basis: &mut String) -> Result<(Composition, Scalar)> {
        let mut coeff = Scalar::one();
        loop {
            self.skip_ws();
            let at = self.pos;
            let starts_name = self
                .rest()
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic())
                && !self.rest().starts_with('z');
            if starts_name {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if basis.is_empty() {
                    *basis = name.to_string();
                } else if basis != name {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("mixed bases {basis} and {name}"),
                    });
                }
                let comp = self.composition()?;
                if self.peek() == Some('*') {
                    return Err(self.err("basis element must be the last factor"));
                }
                return Ok((comp, coeff));
            }
            let x = self.scalar_factor(conductor)?;
            coeff = coeff.checked_mul(&x).map_err(|e| Error::Parse {
                pos: at,
                msg: e.to_string(),
            })?;
            if !self.eat('*') {
                return Ok((Composition::empty(), coeff));
            }
        }
    }
}

/// Parses a signed sum of terms into an [`Expr`].
pub fn parse_expr(s: &str, conductor: Option<usize>) -> Result<Expr> {
    let mut cur = Cursor { src: s, pos: 0 };
    let mut basis = String::new();
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        first = false;
        if cur.peek().is_none() {
            return Err(cur.err("expected a term"));
        }
        let (comp, coeff) = cur.term(conductor, &mut basis)?;
        terms.push((comp, if negative { -coeff } else { coeff }));
    }
    if cur.peek().is_some() {
        return Err(cur.err("unexpected input"));
    }
    Ok(Expr {
        basis,
        order: None,
        terms,
    })
}

pub(super) fn parse_element(s: &str, conductor: Option<usize>) -> Result<NsymElement> {
    let e = parse_expr(s, conductor)?;
    let basis = if e.basis.is_empty() { "S" } else { &e.basis };
    let basis = basis.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("unknown basis {basis:?}; expected S or R"),
    })?;
    Ok(NsymElement::from_terms(basis, e.terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_coefficients() {
        let e = parse_expr("(1 - z)*R[2] + 2*z^2*R[1,1] - R[]", Some(3)).unwrap();
        assert_eq!(e.basis, "R");
        assert_eq!(e.terms.len(), 3);
        assert_eq!(e.terms[2], (Composition::empty(), Scalar::from_int(-1)));
        let back = render_terms("R", e.terms.iter().map(|(c, x)| (c, x)));
        let again = parse_expr(&back, Some(3)).unwrap();
        let lhs = NsymElement::from_terms(super::super::Basis::R, e.terms);
        let rhs = NsymElement::from_terms(super::super::Basis::R, again.terms);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reports_positions() {
        assert!(matches!(parse_expr("S[1,0]", None), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_expr("S[1] + R[1]", None), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_expr("S[1] +", None), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_expr("2*", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn zero_and_unit() {
        assert_eq!(render_terms("S", std::iter::empty()), "0");
        let e = parse_element("0", None).unwrap();
        assert!(e.is_zero());
        let e = parse_element("3 - S[1]", None).unwrap();
        assert_eq!(e.to_string(), "3 - S[1]");
    }
}
