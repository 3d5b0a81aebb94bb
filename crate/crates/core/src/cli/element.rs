//! Parser for Lie element specifications such as `x + 2*y - 1/2 [x,[x,y]]`.

use num_traits::{One, Zero};

use super::CliError;
use crate::lie::{GradedLieAlgebra, LieElement};
use crate::linalg::rational::Rational;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alg: &'a GradedLieAlgebra,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CliError {
        CliError::Schema(format!("element {:?}, position {}: {msg}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LieElement, CliError> {
        let mut acc = self.alg.zero();
        let mut sign = Rational::one();
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc = &acc + &(&sign * &t);
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = -Rational::one();
            } else {
                return Ok(acc);
            }
        }
    }

    fn number(&mut self) -> Option<Rational> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let int_len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if int_len == 0 {
            return None;
        }
        let mut len = int_len;
        let after = &rest[int_len..];
        if let Some(den) = after.strip_prefix('/') {
            let den_len = den.find(|c: char| !c.is_ascii_digit()).unwrap_or(den.len());
            if den_len > 0 {
                len += 1 + den_len;
            }
        }
        let value: Rational = rest[..len].parse().ok()?;
        self.pos += len;
        Some(value)
    }

    fn term(&mut self) -> Result<LieElement, CliError> {
        let coef = self.number();
        if coef.is_some() {
            self.eat('*');
        }
        match (coef, self.peek()) {
            (Some(c), Some(ch)) if ch == '[' || ch == '(' || ch.is_alphabetic() || ch == '_' => Ok(&c * &self.atom()?),
            (Some(c), _) if c.is_zero() => Ok(self.alg.zero()),
            (Some(_), _) => Err(self.err("a nonzero constant is not a Lie element")),
            (None, _) => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<LieElement, CliError> {
        if self.eat('[') {
            let a = self.expr()?;
            if !self.eat(',') {
                return Err(self.err("expected ','"));
            }
            let b = self.expr()?;
            if !self.eat(']') {
                return Err(self.err("expected ']'"));
            }
            return self.alg.bracket(&a, &b).map_err(|e| CliError::Schema(e.to_string()));
        }
        if self.eat('(') {
            let a = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(a);
        }
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a generator, a number or a bracket"));
        }
        let name = &rest[..len];
        self.pos += len;
        self.alg
            .generator(name)
            .map_err(|_| CliError::Schema(format!("unknown generator {name:?}")))
    }
}

/// Parse an element of `alg`; brackets are evaluated (and truncated) in
/// the algebra.
pub fn parse_element(alg: &GradedLieAlgebra, src: &str) -> Result<LieElement, CliError> {
    let mut p = Parser { src, pos: 0, alg };
    let x = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_free, Generator};

    fn alg() -> GradedLieAlgebra {
        build_free(&[Generator::new("x", -1), Generator::new("y", -1)], 3).unwrap()
    }

    #[test]
    fn parses_sums_and_brackets() {
        let a = alg();
        let e = parse_element(&a, "x + 2*y - 1/2 [x,[x,y]]").unwrap();
        assert_eq!(a.format(&e), "x + 2 y - 1/2 [x,[x,y]]");
        let e = parse_element(&a, "[y, x]").unwrap();
        assert_eq!(a.format(&e), "-[x,y]");
        assert!(parse_element(&a, "0").unwrap().is_zero());
        assert!(parse_element(&a, "-(x - y)").is_ok());
    }

    #[test]
    fn errors() {
        let a = alg();
        assert!(matches!(parse_element(&a, "z"), Err(CliError::Schema(m)) if m.contains("unknown generator")));
        assert!(parse_element(&a, "3").is_err());
        assert!(parse_element(&a, "[x y]").is_err());
        assert!(parse_element(&a, "x )").is_err());
    }

    #[test]
    fn truncates_above_class() {
        let a = alg();
        assert!(parse_element(&a, "[x,[x,[x,y]]]").unwrap().is_zero());
    }
}
