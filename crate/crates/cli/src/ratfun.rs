//! `P/Q` literals with integer polynomials in `x`, such as `(1+x-3x^2)/(1-5x^2+6*x^4)`.

use polya_core::RationalFunction;

use crate::error::ParseError;

fn err(msg: impl Into<String>) -> ParseError {
    ParseError::at(0, msg)
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    match s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner,
        None => s,
    }
}

/// Coefficients of an integer polynomial in `x`, lowest degree first.
fn parse_poly(text: &str) -> Result<Vec<i64>, ParseError> {
    let s: String = strip_parens(text).chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            sign = if bytes[i] == b'-' { -1 } else { 1 };
            i += 1;
        } else if i > 0 {
            return Err(err(format!("expected `+` or `-` in `{}`", s)));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let digits = &s[start..i];
        if i < bytes.len() && bytes[i] == b'*' {
            if digits.is_empty() {
                return Err(err(format!("stray `*` in `{}`", s)));
            }
            i += 1;
        }
        let mut degree = 0;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            degree = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                degree = s[ds..i].parse().map_err(|_| err(format!("bad exponent in `{}`", s)))?;
            }
        } else if digits.is_empty() {
            return Err(err(format!("expected a term in `{}`", s)));
        }
        let c: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| err(format!("coefficient too large in `{}`", s)))? };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] = coeffs[degree].checked_add(sign * c).ok_or_else(|| err("coefficient overflow"))?;
    }
    Ok(coeffs)
}

/// Splits at the top-level `/`.
pub fn parse_ratfun(text: &str) -> Result<RationalFunction, ParseError> {
    let mut depth = 0i32;
    let mut cut = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if cut.replace(i).is_some() {
                    return Err(err("more than one `/`"));
                }
            }
            _ => {}
        }
        if depth < 0 {
            return Err(err("unbalanced parentheses"));
        }
    }
    if depth != 0 {
        return Err(err("unbalanced parentheses"));
    }
    let (p, q) = match cut {
        Some(i) => (parse_poly(&text[..i])?, parse_poly(&text[i + 1..])?),
        None => (parse_poly(text)?, vec![1]),
    };
    RationalFunction::from_i64(&p, &q).map_err(|e| err(e.to_string()))
}
