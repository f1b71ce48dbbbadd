//! Coefficient lists, polynomial strings and `min:max` ranges from the command line.

use polytwist_core::{PolyError, RealPolynomial};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("cannot parse coefficient {0:?}")]
    Coefficient(String),
    #[error("cannot parse term {0:?}")]
    Term(String),
    #[error("range must look like MIN:MAX, got {0:?}")]
    Range(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `"4,0,1"` → `4 + 0z + z²`. With `descending`, the list is read highest
/// power first (`"1,0,4"` → `z² + 4`).
pub fn parse_coeffs(text: &str, descending: bool) -> Result<RealPolynomial, ParseError> {
    let mut coeffs = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ParseError::Coefficient(s.to_string()))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    if descending {
        coeffs.reverse();
    }
    Ok(RealPolynomial::new(coeffs)?)
}

/// Parses sums of terms like `"z^3 - 2z + 4"` or `"2*x^2 + 0.5"`. Either `z`
/// or `x` names the variable; repeated powers are added.
pub fn parse_expression(text: &str) -> Result<RealPolynomial, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseError::Term(String::new()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        let sign = bytes[i] == b'+' || bytes[i] == b'-';
        // keep exponent signs such as 1e-3 inside the term
        if sign && !matches!(bytes[i - 1], b'e' | b'E' | b'^' | b'*') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut coeffs: Vec<f64> = Vec::new();
    for term in terms {
        let (power, value) = parse_term(term)?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0.0);
        }
        coeffs[power] += value;
    }
    Ok(RealPolynomial::new(coeffs)?)
}

fn parse_term(term: &str) -> Result<(usize, f64), ParseError> {
    let bad = || ParseError::Term(term.to_string());
    let Some(var) = term.find(['z', 'x']) else {
        let v: f64 = term.parse().map_err(|_| bad())?;
        return Ok((0, v));
    };
    let coeff = term[..var].trim_end_matches('*');
    let value = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse().map_err(|_| bad())?,
    };
    let power = match &term[var + 1..] {
        "" => 1,
        rest => rest
            .strip_prefix('^')
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    Ok((power, value))
}

/// `"-3:3"` → `(-3.0, 3.0)`, requiring `min < max`.
pub fn parse_range(text: &str) -> Result<(f64, f64), ParseError> {
    let err = || ParseError::Range(text.to_string());
    let (lo, hi) = text.split_once(':').ok_or_else(err)?;
    let lo: f64 = lo.trim().parse().map_err(|_| err())?;
    let hi: f64 = hi.trim().parse().map_err(|_| err())?;
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(err())
    }
}
