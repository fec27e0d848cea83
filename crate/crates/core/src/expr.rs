//! Parsing homogeneous classes written as linear combinations of basis
//! labels, e.g. `10*c - e` or `s[3,1] + 2/3*z*s[2]`.
//!
//! Each term is `[coefficient*]label` or a bare coefficient (a multiple of
//! the unit). Labels are matched verbatim against the algebra's basis.

use num_traits::One;
use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::element::Element;
use crate::scalar::{parse_scalar, ParseScalarError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("empty term at position {0}")]
    EmptyTerm(usize),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("bad coefficient in `{term}`: {source}")]
    Coefficient { term: String, source: ParseScalarError },
    #[error("expression is not homogeneous: `{0}` has degree {1}, earlier terms have degree {2}")]
    Inhomogeneous(String, usize, usize),
}

impl GradedAlgebra {
    /// Parses a homogeneous linear combination of basis labels.
    pub fn parse_element(&self, text: &str) -> Result<Element<'_>, ExprError> {
        let terms = split_terms(text)?;
        let mut degree: Option<usize> = None;
        let mut coords: Vec<Scalar> = Vec::new();
        for (sign, term) in terms {
            let (coeff, label) = split_coefficient(term)?;
            let (k, i) = self
                .find_label(label)
                .ok_or_else(|| ExprError::UnknownLabel(label.to_string()))?;
            match degree {
                None => {
                    degree = Some(k);
                    coords = vec![Scalar::from_integer(0.into()); self.dim(k)];
                }
                Some(d) if d != k => return Err(ExprError::Inhomogeneous(term.to_string(), k, d)),
                Some(_) => {}
            }
            coords[i] += if sign { -coeff } else { coeff };
        }
        let degree = degree.ok_or(ExprError::Empty)?;
        Ok(self.element(degree, coords).expect("coordinates sized from the basis"))
    }
}

// Splits on top-level '+' / '-' (outside brackets); `true` marks negation.
fn split_terms(text: &str) -> Result<Vec<(bool, &str)>, ExprError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut negative = false;
    let mut seen_operand = false;
    for (pos, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 => {
                let term = text[start..pos].trim();
                if term.is_empty() {
                    if seen_operand || (pos != 0 && !text[..pos].trim().is_empty()) {
                        return Err(ExprError::EmptyTerm(pos));
                    }
                } else {
                    out.push((negative, term));
                    seen_operand = true;
                }
                negative = ch == '-';
                start = pos + 1;
                continue;
            }
            _ => {}
        }
    }
    let last = text[start..].trim();
    if last.is_empty() {
        return Err(ExprError::EmptyTerm(text.len()));
    }
    out.push((negative, last));
    Ok(out)
}

fn split_coefficient(term: &str) -> Result<(Scalar, &str), ExprError> {
    let starts_numeric = term.starts_with(|c: char| c.is_ascii_digit());
    if !starts_numeric {
        return Ok((Scalar::one(), term));
    }
    let (coeff_text, label) = match term.split_once('*') {
        Some((c, l)) => (c.trim(), l.trim()),
        None => (term, "1"),
    };
    // a lone "1" is the unit label itself
    if coeff_text == term && term == "1" {
        return Ok((Scalar::one(), "1"));
    }
    let coeff = parse_scalar(coeff_text).map_err(|source| ExprError::Coefficient {
        term: term.to_string(),
        source,
    })?;
    Ok((coeff, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::projective_space;
    use crate::scalar::{int, ratio};
    use crate::schubert::grassmannian;

    #[test]
    fn parses_linear_combinations() {
        let g = grassmannian(2, 5).unwrap();
        let x = g.parse_element("s[2] + s[1,1]").unwrap();
        assert_eq!(x.degree(), 2);
        assert_eq!(x.coords(), &[int(1), int(1)]);
        let y = g.parse_element("-3/2*s[1,1] - s[2]").unwrap();
        assert_eq!(y.coords(), &[int(-1), ratio(-3, 2)]);
    }

    #[test]
    fn unit_and_scalars() {
        let p = projective_space(2);
        assert_eq!(p.parse_element("1").unwrap(), p.unit());
        assert_eq!(p.parse_element("5").unwrap().coords(), &[int(5)]);
        assert_eq!(p.parse_element("2*h - h").unwrap().coords(), &[int(1)]);
    }

    #[test]
    fn errors() {
        let p = projective_space(2);
        assert_eq!(p.parse_element(""), Err(ExprError::Empty));
        assert_eq!(p.parse_element("q"), Err(ExprError::UnknownLabel("q".into())));
        assert!(matches!(p.parse_element("h + h^2"), Err(ExprError::Inhomogeneous(..))));
        assert!(matches!(p.parse_element("h +"), Err(ExprError::EmptyTerm(_))));
        assert!(matches!(p.parse_element("1/0*h"), Err(ExprError::Coefficient { .. })));
    }
}
