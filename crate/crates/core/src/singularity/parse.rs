//! Reader for polynomials written as `coef*x1^a*x2^b + ...`.
//!
//! Variables are a single ASCII letter optionally followed by digits
//! (`x`, `y`, `x12`). Factors may be joined with `*` or juxtaposed
//! (`xy^2` is `x*y^2`). Coefficients are integers or `num/den`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{QuasihomPolynomial, SingularityError};
use crate::ring::{parse_rational, Rational};

pub fn parse_polynomial(text: &str) -> Result<QuasihomPolynomial, SingularityError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(SingularityError::Parse("empty polynomial".into()));
    }
    let mut pos = 0;
    let mut terms: Vec<(Rational, BTreeMap<String, u32>)> = Vec::new();
    while pos < chars.len() {
        let mut sign = Rational::one();
        if terms.is_empty() || matches!(chars[pos], '+' | '-') {
            match chars.get(pos) {
                Some('+') => pos += 1,
                Some('-') => {
                    sign = -sign;
                    pos += 1;
                }
                _ if terms.is_empty() => {}
                _ => unreachable!(),
            }
        } else {
            return Err(SingularityError::Parse(format!("expected '+' or '-' at offset {pos}")));
        }
        let (term, next) = parse_term(&chars, pos)?;
        pos = next;
        terms.push((sign * term.0, term.1));
    }

    let mut names: Vec<String> =
        terms.iter().flat_map(|(_, m)| m.keys().cloned()).collect::<Vec<_>>();
    names.sort_by(|a, b| variable_key(a).cmp(&variable_key(b)));
    names.dedup();

    let mut merged: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    let mut first_seen: Vec<Vec<u32>> = Vec::new();
    for (coef, mono) in terms {
        let row: Vec<u32> =
            names.iter().map(|n| mono.get(n).copied().unwrap_or(0)).collect();
        if !merged.contains_key(&row) {
            first_seen.push(row.clone());
        }
        *merged.entry(row).or_insert_with(Rational::zero) += coef;
    }
    let monomials: Vec<(Rational, Vec<u32>)> = first_seen
        .into_iter()
        .filter_map(|row| {
            let c = merged.remove(&row).expect("row recorded");
            (!c.is_zero()).then_some((c, row))
        })
        .collect();
    QuasihomPolynomial::new(names, monomials)
}

fn variable_key(name: &str) -> (char, u64) {
    let mut it = name.chars();
    let letter = it.next().unwrap_or('_');
    let index = it.as_str().parse().unwrap_or(0);
    (letter, index)
}

type Term = (Rational, BTreeMap<String, u32>);

fn parse_term(chars: &[char], mut pos: usize) -> Result<(Term, usize), SingularityError> {
    let mut coef = Rational::one();
    let mut vars: BTreeMap<String, u32> = BTreeMap::new();
    let start = pos;

    if chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
        let mut end = pos;
        while end < chars.len() && (chars[end].is_ascii_digit() || chars[end] == '/') {
            end += 1;
        }
        let literal: String = chars[pos..end].iter().collect();
        coef = parse_rational(&literal)
            .ok_or_else(|| SingularityError::Parse(format!("bad coefficient {literal:?}")))?;
        pos = end;
    }

    loop {
        let starred = chars.get(pos) == Some(&'*');
        if starred {
            pos += 1;
        }
        match chars.get(pos) {
            Some(c) if c.is_ascii_alphabetic() => {
                let mut end = pos + 1;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let name: String = chars[pos..end].iter().collect();
                pos = end;
                let mut exp = 1u32;
                if chars.get(pos) == Some(&'^') {
                    pos += 1;
                    let mut e = pos;
                    while e < chars.len() && chars[e].is_ascii_digit() {
                        e += 1;
                    }
                    if e == pos {
                        return Err(SingularityError::Parse(format!(
                            "missing exponent after '^' at offset {pos}"
                        )));
                    }
                    let literal: String = chars[pos..e].iter().collect();
                    exp = literal
                        .parse()
                        .map_err(|_| SingularityError::Parse(format!("bad exponent {literal:?}")))?;
                    pos = e;
                }
                *vars.entry(name).or_insert(0) += exp;
            }
            Some('+') | Some('-') | None if !starred => break,
            other => {
                return Err(SingularityError::Parse(format!(
                    "unexpected {other:?} at offset {pos}"
                )))
            }
        }
    }
    if pos == start {
        return Err(SingularityError::Parse(format!("empty term at offset {start}")));
    }
    vars.retain(|_, e| *e > 0);
    Ok(((coef, vars), pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn parses_fermat_quintic() {
        let w = parse_polynomial("x1^5+x2^5+x3^5+x4^5+x5^5").unwrap();
        assert_eq!(w.variables(), ["x1", "x2", "x3", "x4", "x5"]);
        assert_eq!(w.exponent_matrix().len(), 5);
        assert_eq!(w.monomials()[2].1, vec![0, 0, 5, 0, 0]);
    }

    #[test]
    fn parses_juxtaposition_and_coefficients() {
        let w = parse_polynomial("x^3 + 2xy^3 - 1/2 * y^2z").unwrap();
        assert_eq!(w.variables(), ["x", "y", "z"]);
        assert_eq!(w.monomials()[1], (int(2), vec![1, 3, 0]));
        assert_eq!(w.monomials()[2], (rat(-1, 2), vec![0, 2, 1]));
    }

    #[test]
    fn numeric_variable_order() {
        let w = parse_polynomial("x10^2 + x2^2 + x1^2").unwrap();
        assert_eq!(w.variables(), ["x1", "x2", "x10"]);
    }

    #[test]
    fn merges_like_terms_and_drops_cancellations() {
        let w = parse_polynomial("x^3 + y^3 + 2x^3 - y^3 + x*y").unwrap();
        assert_eq!(w.monomials().len(), 2);
        assert_eq!(w.monomials()[0], (int(3), vec![3, 0]));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x^", "x^3 +", "x**", "x*", "x^3 $ y", "+"] {
            assert!(parse_polynomial(bad).is_err(), "{bad:?}");
        }
    }
}
