//! Comma-separated flag values.

use rrcalc::rational::parse_rational;
use rrcalc::BigRational;

const MAX_ITEMS: usize = 256;

/// One entry of `--chern`: a symbol or a number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChernEntry {
    Symbol(String),
    Number(BigRational),
}

fn items(text: &str) -> Result<Vec<&str>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() > MAX_ITEMS {
        return Err(format!("at most {MAX_ITEMS} items"));
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Err("empty list item".into());
    }
    Ok(parts)
}

pub fn parse_int_list(text: &str) -> Result<Vec<i64>, String> {
    items(text)?
        .into_iter()
        .map(|p| p.parse::<i64>().map_err(|e| format!("bad integer {p:?}: {e}")))
        .collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_chern_list(text: &str) -> Result<Vec<ChernEntry>, String> {
    let mut out = Vec::new();
    for p in items(text)? {
        if is_identifier(p) {
            if out.contains(&ChernEntry::Symbol(p.to_string())) {
                return Err(format!("symbol {p} repeated"));
            }
            out.push(ChernEntry::Symbol(p.to_string()));
        } else {
            let c = parse_rational(p).map_err(|e| e.to_string())?;
            out.push(ChernEntry::Number(c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rrcalc::rational::q;

    #[test]
    fn ints() {
        assert_eq!(parse_int_list("1, 2,-3"), Ok(vec![1, 2, -3]));
        assert_eq!(parse_int_list(""), Ok(vec![]));
        assert!(parse_int_list("1,,2").is_err());
        assert!(parse_int_list("x").is_err());
    }

    #[test]
    fn chern_entries() {
        assert_eq!(
            parse_chern_list("c1,0,a_2,-1/2").unwrap(),
            vec![
                ChernEntry::Symbol("c1".into()),
                ChernEntry::Number(q(0, 1)),
                ChernEntry::Symbol("a_2".into()),
                ChernEntry::Number(q(-1, 2)),
            ]
        );
        assert!(parse_chern_list("c1,c1").is_err());
        assert!(parse_chern_list("1c").is_err());
    }
}
