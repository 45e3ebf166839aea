//! Recursive-descent parser for the scalar text syntax:
//!
//! ```text
//! scalar   := polyfrac | poly
//! polyfrac := "(" poly ")" "/" "(" poly ")"
//! poly     := ["+" | "-"] term (("+" | "-") term)*
//! term     := rational ["*"] "t" ["^" integer] | rational | "t" ["^" integer]
//! rational := integer ["/" positive-integer]
//! ```
//!
//! Whitespace is ignored. Columns in errors are 1-based character
//! positions in the original input.

use super::poly::RatPoly;
use super::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        let chars: Vec<(usize, char)> = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Self {
            chars,
            pos: 0,
            end_col: src.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_col, |&(c, _)| c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a digit");
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat('^') {
            return Ok(1);
        }
        if self.peek() == Some('-') {
            return self.err("negative powers of t must be written as fractions");
        }
        let col = self.col();
        let e = self.integer()?;
        usize::try_from(e).map_err(|_| Error::Parse {
            column: col,
            message: "exponent too large".into(),
        })
    }

    /// One term, without its sign.
    fn term(&mut self) -> Result<RatPoly> {
        if self.eat('t') {
            let k = self.exponent()?;
            return Ok(RatPoly::monomial(BigRational::one(), k));
        }
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return match self.peek() {
                Some(c) => self.err(format!("unexpected character '{c}'")),
                None => self.err("unexpected end of input"),
            };
        }
        let num = self.integer()?;
        let coeff = if self.eat('/') {
            let col = self.col();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::Parse {
                    column: col,
                    message: "zero denominator".into(),
                });
            }
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(num)
        };
        let starred = self.eat('*');
        if self.eat('t') {
            let k = self.exponent()?;
            Ok(RatPoly::monomial(coeff, k))
        } else if starred {
            self.err("expected 't' after '*'")
        } else {
            Ok(RatPoly::constant(coeff))
        }
    }

    fn poly(&mut self) -> Result<RatPoly> {
        let mut acc = RatPoly::zero();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar(&mut self) -> Result<Scalar> {
        if self.peek().is_none() {
            return self.err("empty scalar");
        }
        let value = if self.eat('(') {
            let num = self.poly()?;
            self.expect(')')?;
            self.expect('/')?;
            self.expect('(')?;
            let col = self.col();
            let den = self.poly()?;
            self.expect(')')?;
            if den.is_zero() {
                return Err(Error::Parse {
                    column: col,
                    message: "zero denominator".into(),
                });
            }
            Scalar::from_polys(num, den)?
        } else {
            Scalar::from_poly(self.poly()?)
        };
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected trailing character '{c}'"));
        }
        Ok(value)
    }
}

pub(super) fn parse_scalar(src: &str) -> Result<Scalar> {
    Parser::new(src).scalar()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(src: &str) -> usize {
        match parse_scalar(src) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected parse error for {src:?}, got {other:?}"),
        }
    }

    #[test]
    fn accepts_grammar_forms() {
        assert_eq!(parse_scalar("1").unwrap(), Scalar::one());
        assert_eq!(parse_scalar("3/5").unwrap(), Scalar::from_ratio(3, 5));
        assert_eq!(parse_scalar("t").unwrap(), Scalar::t());
        assert_eq!(parse_scalar("2t").unwrap(), parse_scalar("2*t").unwrap());
        assert_eq!(
            parse_scalar(" 1 + 2 * t ^ 2 ").unwrap(),
            parse_scalar("1+2t^2").unwrap()
        );
        assert_eq!(parse_scalar("-t+t").unwrap(), Scalar::zero());
        let x = parse_scalar("(2t)/(1+t^2)").unwrap();
        assert_eq!(x.to_string(), "(2*t)/(1+t^2)");
        assert_eq!(
            parse_scalar("1/2t^3").unwrap().valuation(),
            crate::field::Valuation::Finite(3)
        );
    }

    #[test]
    fn rejects_with_columns() {
        assert_eq!(col("t^-1"), 3);
        assert_eq!(col("1+x"), 3);
        assert_eq!(col(""), 1);
        assert_eq!(col("1/0"), 3);
        assert_eq!(col("(1)/(0)"), 6);
        assert_eq!(col("(1+t"), 5);
        assert_eq!(col("2*"), 3);
        assert_eq!(col("1)"), 2);
    }
}
