//! Parser for the canonical text form of ring elements.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! element := ["+" | "-"] term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := integer ["/" integer] | name ["^" integer]
//! ```

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};

const MAX_INPUT_LEN: usize = 1 << 16;
const MAX_DIGITS: usize = 512;

pub(crate) fn parse_element(spec: &RingSpec, text: &str) -> Result<RingElement> {
    if text.len() > MAX_INPUT_LEN {
        return Err(Error::Parse("input too long".into()));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        spec,
    };
    let out = p.element()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a RingSpec,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

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

    fn element(&mut self) -> Result<RingElement> {
        let mut acc = RingElement::zero(self.spec);
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            negative = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u64; self.spec.num_vars()];
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let n = self.integer()?;
                    let value = if self.eat(b'/') {
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        BigRational::new(n, d)
                    } else {
                        BigRational::from_integer(n)
                    };
                    coeff *= value;
                }
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let name = self.identifier().to_string();
                    let idx = self
                        .spec
                        .index_of(&name)
                        .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                    let e = if self.eat(b'^') {
                        let e = self.integer()?;
                        u64::try_from(e).map_err(|_| self.error("exponent too large"))?
                    } else {
                        1
                    };
                    exps[idx] = exps[idx].saturating_add(e);
                }
                _ => return Err(self.error("expected a number or generator")),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        let bounds = self.spec.bounds();
        if exps.iter().zip(bounds).any(|(&e, &d)| e > u64::from(d)) {
            return Ok(RingElement::zero(self.spec));
        }
        let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
        RingElement::monomial(self.spec, &exps, coeff)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return Err(self.error("expected digits"));
        }
        if digits.len() > MAX_DIGITS {
            return Err(self.error("number too long"));
        }
        BigInt::parse_bytes(digits, 10).ok_or_else(|| self.error("bad integer"))
    }

    fn identifier(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::ring::ScalarDomain;

    fn spec() -> RingSpec {
        RingSpec::new(&["x", "y"], &[2, 1], ScalarDomain::Rationals).unwrap()
    }

    #[test]
    fn parses_canonical_text() {
        let e = RingElement::parse(&spec(), "1 + 3*x - 1/2*x^2*y").unwrap();
        assert_eq!(e.to_string(), "1 + 3*x - 1/2*x^2*y");
        assert_eq!(e.coefficient_of(&[2, 1]).unwrap(), q(-1, 2));
    }

    #[test]
    fn accepts_loose_forms() {
        let e = RingElement::parse(&spec(), "-x*2*x + y*x^0 + 0").unwrap();
        assert_eq!(e.to_string(), "y - 2*x^2");
        assert!(RingElement::parse(&spec(), "x^3").unwrap().is_zero());
        assert!(RingElement::parse(&spec(), "x^99999999999999999999").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        for s in ["", "+", "x +", "z", "1/0", "x^", "x**y", "1 2", "x^-1", "(x)"] {
            assert!(RingElement::parse(&spec(), s).is_err(), "{s:?}");
        }
        let z = RingSpec::new(&["x"], &[2], ScalarDomain::Integers).unwrap();
        assert_eq!(RingElement::parse(&z, "1/2*x"), Err(Error::IntegerDomain));
    }
}
