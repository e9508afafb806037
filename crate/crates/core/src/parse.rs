//! Parser for polynomial input such as `x^6+x^2*y^2+y^6`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Coefficients are integers; exponents are nonnegative integers.  Error
//! positions are 1-based character offsets into the original string.

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::newton_engine::LaurentPoly;
use crate::rational::Q;

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [&'a str],
    len: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    /// 1-based position of the next token (or one past the end).
    fn here(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len + 1, |c| c.0 + 1)
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut negate = false;
        match self.peek() {
            Some('+') => self.pos += 1,
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.here();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return err(self.here(), "expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(digits.parse().expect("ASCII digits"))
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let at = self.here();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(LaurentPoly::constant(Q::from_integer(self.integer()?))),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return err(self.here(), "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                // Identifiers end at whitespace even though whitespace is otherwise skipped.
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                    && self.chars[self.pos].0 == self.chars[self.pos - 1].0 + 1
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(0) => Ok(LaurentPoly::monomial(Q::one(), 1, 0)),
                    Some(1) => Ok(LaurentPoly::monomial(Q::one(), 0, 1)),
                    _ => err(at, format!("unknown variable '{name}' (expected one of {})", self.vars.join(", "))),
                }
            }
            Some(c) => err(at, format!("unexpected character '{c}'")),
            None => err(at, "unexpected end of input"),
        }
    }
}

/// Parse a polynomial in up to two named variables; the first maps to the
/// `x`-exponent of the result, the second to the `y`-exponent.
pub fn parse_poly_in(src: &str, vars: &[&str]) -> Result<LaurentPoly> {
    let chars: Vec<(usize, char)> = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let len = src.chars().count();
    let mut p = Parser { chars, pos: 0, vars, len };
    if p.chars.is_empty() {
        return err(1, "empty polynomial");
    }
    let e = p.expr()?;
    if p.pos < p.chars.len() {
        return err(p.here(), format!("unexpected character '{}'", p.peek().unwrap()));
    }
    Ok(e)
}

/// Parse a polynomial in `x` and `y`.
pub fn parse_poly(src: &str) -> Result<LaurentPoly> {
    parse_poly_in(src, &["x", "y"])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exam() {
        let f = parse_poly(" x^6 + x^2*y^2 + y^6 ").unwrap();
        assert_eq!(f, LaurentPoly::from_int_terms(&[((6, 0), 1), ((2, 2), 1), ((0, 6), 1)]));
        assert_eq!(f.render("x", "y"), "x^6+x^2y^2+y^6");
    }

    #[test]
    fn signs_products_and_parentheses() {
        let f = parse_poly("-2*x*y + 3*(x-y)^2").unwrap();
        assert_eq!(f, LaurentPoly::from_int_terms(&[((1, 1), -8), ((2, 0), 3), ((0, 2), 3)]));
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_poly("x^2 + z"), Err(Error::Parse { pos: 7, msg: "unknown variable 'z' (expected one of x, y)".into() }));
        assert!(matches!(parse_poly("x^"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("(x+y"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_poly("x y"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn other_variables() {
        let u = parse_poly_in("u-1", &["u"]).unwrap();
        assert_eq!(u, LaurentPoly::from_int_terms(&[((1, 0), 1), ((0, 0), -1)]));
    }
}
