//! Polynomial literals such as `3*xy + -1*yx + 1*`.
//!
//! Terms are separated by `+` or `-`. A term is `coef*word`, `word`, or a bare
//! coefficient; an empty word after `*` is the unit monomial. Coefficients
//! are integers or fractions `p/q`. Whitespace is ignored.

use anyhow::{anyhow, bail, Context, Result};
use morphalg_core::monalg::NcPolynomial;
use morphalg_core::words::Alphabet;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn parse_polynomial(text: &str, alphabet: &Alphabet) -> Result<NcPolynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        bail!("empty polynomial literal");
    }
    if compact == "0" {
        return Ok(NcPolynomial::zero());
    }
    let mut p = NcPolynomial::zero();
    for (negated, term) in split_terms(&compact) {
        if term.is_empty() {
            bail!("empty term in `{text}`");
        }
        let (coef, word) = match term.split_once('*') {
            Some((c, w)) => (parse_rational(c)?, w),
            None if looks_numeric(term) => (parse_rational(term)?, ""),
            None => match term.strip_prefix('-') {
                Some(w) => (BigRational::from_integer((-1).into()), w),
                None => (BigRational::from_integer(1.into()), term),
            },
        };
        let word = alphabet.parse_word(word).map_err(|e| anyhow!("{e}"))?;
        p.add_term(&word, if negated { -coef } else { coef });
    }
    Ok(p)
}

/// Splits at `+`, and at `-` unless it starts a term or follows `*`,
/// where it is the sign of a coefficient.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let (mut start, mut negated) = (0, false);
    for (i, c) in s.char_indices() {
        let binary_minus = c == '-' && i > start && !s[..i].ends_with('*');
        if c == '+' || binary_minus {
            out.push((negated, &s[start..i]));
            start = i + 1;
            negated = c == '-';
        }
    }
    out.push((negated, &s[start..]));
    out
}

fn looks_numeric(s: &str) -> bool {
    s.chars()
        .all(|c| c.is_ascii_digit() || c == '-' || c == '/')
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .with_context(|| format!("bad coefficient `{s}`"))?;
    let den: BigInt = den
        .parse()
        .with_context(|| format!("bad coefficient `{s}`"))?;
    if den == BigInt::from(0) {
        bail!("zero denominator in `{s}`");
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use morphalg_core::monalg::int;

    fn xy() -> Alphabet {
        Alphabet::from_chars("xy").unwrap()
    }

    #[test]
    fn documented_literal() {
        let p = parse_polynomial("3*xy + -1*yx + 1*", &xy()).unwrap();
        assert_eq!(p.coefficient(&[0, 1]), int(3));
        assert_eq!(p.coefficient(&[1, 0]), int(-1));
        assert_eq!(p.coefficient(&[]), int(1));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn shorthand_terms() {
        let p = parse_polynomial("x+y", &xy()).unwrap();
        assert_eq!(p, NcPolynomial::from_words(&[&[0], &[1]]));
        let q = parse_polynomial(" 1/2 * x x + 2 ", &xy()).unwrap();
        assert_eq!(q.coefficient(&[0, 0]), int(1) / int(2));
        assert_eq!(q.coefficient(&[]), int(2));
        assert!(parse_polynomial("x + -1*x", &xy()).unwrap().is_zero());
        assert!(parse_polynomial("0", &xy()).unwrap().is_zero());
    }

    #[test]
    fn subtraction() {
        let p = parse_polynomial("2*xy - 1/3*yx - y", &xy()).unwrap();
        assert_eq!(p.coefficient(&[0, 1]), int(2));
        assert_eq!(p.coefficient(&[1, 0]), int(-1) / int(3));
        assert_eq!(p.coefficient(&[1]), int(-1));
        assert_eq!(
            parse_polynomial("-x + y", &xy()).unwrap().coefficient(&[0]),
            int(-1)
        );
        assert_eq!(parse_polynomial("x*-2", &xy()).ok(), None);
        assert!(parse_polynomial("x-", &xy()).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_polynomial("", &xy()).is_err());
        assert!(parse_polynomial("x++y", &xy()).is_err());
        assert!(parse_polynomial("2*z", &xy()).is_err());
        assert!(parse_polynomial("1/0*x", &xy()).is_err());
    }
}
