//! Helpers around [`BigRational`]: parsing, canonical text, small constructors.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(top, k)` for any integer `top`, extended
/// polynomially in `top`: `top (top-1) ... (top-k+1) / k!`.
pub fn binomial(top: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(top - j as i64);
    }
    num / factorial(k)
}

/// True for `±1`: the units of the integers.
pub fn is_signed_unit(c: &BigRational) -> bool {
    c.is_integer() && c.numer().abs().is_one()
}

/// Canonical text: `p/q` in lowest terms, or just `p` when `q == 1`.
pub fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

const MAX_LITERAL_LEN: usize = 4096;

/// Parses `p`, `-p`, `+p` or `p/q` (surrounding whitespace allowed).
///
/// The denominator must be a positive nonzero integer without a sign; the
/// result is reduced to lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational literal {:?}", truncate(s)));
    if s.is_empty() || s.len() > MAX_LITERAL_LEN {
        return Err(bad());
    }
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer = parse_integer(num_part).ok_or_else(bad)?;
    let denom = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(bad());
            }
            parse_integer(d).ok_or_else(bad)?
        }
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {:?}", truncate(s))));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn truncate(s: &str) -> &str {
    match s.char_indices().nth(40) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), qi(-3));
        assert_eq!(parse_rational("+0/7").unwrap(), qi(0));
        assert_eq!(parse_rational("-1/720").unwrap(), q(-1, 720));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "1/0", "1/-2", "a", "1.5", "1//2", "--1", "/3", "3/", "1 2"] {
            assert!(parse_rational(s).is_err(), "{s:?}");
        }
    }

    #[test]
    fn canonical_text() {
        assert_eq!(fmt_rational(&q(-2, 4)), "-1/2");
        assert_eq!(fmt_rational(&qi(7)), "7");
        assert_eq!(fmt_rational(&qi(0)), "0");
    }

    #[test]
    fn binomial_polynomial_extension() {
        assert_eq!(binomial(3, 2), BigInt::from(3));
        assert_eq!(binomial(0, 1), BigInt::from(0));
        // C(n+d, n) at n = 2, d = -4 is (-2)(-3)/2 = 3
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(5, 0), BigInt::from(1));
    }

    #[test]
    fn units() {
        assert!(is_signed_unit(&qi(-1)));
        assert!(!is_signed_unit(&q(1, 2)));
        assert!(!is_signed_unit(&qi(2)));
    }
}
