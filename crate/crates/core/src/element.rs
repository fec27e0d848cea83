//! Homogeneous classes of a [`GradedAlgebra`].

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::linalg::is_zero_vector;
use crate::scalar::{format_combination, Scalar};

/// A homogeneous class: a degree plus coordinates in that degree's basis.
///
/// Products whose degree exceeds the top degree are represented by an
/// element with that (true) degree and an empty coordinate vector; such an
/// element is always zero and reports [`is_above_top`](Self::is_above_top).
#[derive(Clone, PartialEq, Eq)]
pub struct Element<'a> {
    algebra: &'a GradedAlgebra,
    degree: usize,
    coords: Vec<Scalar>,
}

impl<'a> Element<'a> {
    pub fn new(algebra: &'a GradedAlgebra, degree: usize, coords: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let top = algebra.top_degree();
        if degree > top {
            return Err(AlgebraError::AboveTop { degree, top });
        }
        if coords.len() != algebra.dim(degree) {
            return Err(AlgebraError::CoordinateLength {
                degree,
                expected: algebra.dim(degree),
                found: coords.len(),
            });
        }
        Ok(Element {
            algebra,
            degree,
            coords,
        })
    }

    pub fn zero(algebra: &'a GradedAlgebra, degree: usize) -> Self {
        let n = if degree > algebra.top_degree() { 0 } else { algebra.dim(degree) };
        Element {
            algebra,
            degree,
            coords: vec![Scalar::zero(); n],
        }
    }

    pub fn basis(algebra: &'a GradedAlgebra, degree: usize, index: usize) -> Result<Self, AlgebraError> {
        if index >= algebra.dim(degree) {
            return Err(AlgebraError::IndexOutOfRange { degree, index });
        }
        let mut e = Self::zero(algebra, degree);
        e.coords[index] = Scalar::one();
        Ok(e)
    }

    pub fn algebra(&self) -> &'a GradedAlgebra {
        self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_above_top(&self) -> bool {
        self.degree > self.algebra.top_degree()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    fn same_algebra(&self, other: &Element<'_>) -> Result<(), AlgebraError> {
        if std::ptr::eq(self.algebra, other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras(
                self.algebra.name().to_string(),
                other.algebra.name().to_string(),
            ))
        }
    }

    fn same_degree(&self, other: &Element<'_>) -> Result<(), AlgebraError> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(AlgebraError::WrongDegree {
                expected: self.degree,
                found: other.degree,
            })
        }
    }

    pub fn add(&self, other: &Element<'_>) -> Result<Element<'a>, AlgebraError> {
        self.same_algebra(other)?;
        self.same_degree(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Element { coords, ..self.clone() })
    }

    pub fn sub(&self, other: &Element<'_>) -> Result<Element<'a>, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element<'a> {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, factor: &Scalar) -> Element<'a> {
        Element {
            coords: self.coords.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Cup product. Lands in degree `deg x + deg y`; above the top degree
    /// the result is the canonical zero.
    pub fn multiply(&self, other: &Element<'_>) -> Result<Element<'a>, AlgebraError> {
        self.same_algebra(other)?;
        let degree = self.degree + other.degree;
        if self.is_above_top() || other.is_above_top() {
            return Ok(Element::zero(self.algebra, degree));
        }
        let coords = self
            .algebra
            .mul_coords(self.degree, &self.coords, other.degree, &other.coords)
            .unwrap_or_default();
        Ok(Element {
            algebra: self.algebra,
            degree,
            coords,
        })
    }

    pub fn pow(&self, n: u32) -> Element<'a> {
        let mut acc = self.algebra.unit();
        for _ in 0..n {
            acc = acc.multiply(self).expect("same algebra");
        }
        acc
    }

    /// Integral over the fundamental class; only defined in the top degree.
    pub fn integrate(&self) -> Result<Scalar, AlgebraError> {
        let top = self.algebra.top_degree();
        if self.degree != top {
            return Err(AlgebraError::WrongDegree {
                expected: top,
                found: self.degree,
            });
        }
        Ok(self.algebra.integrate_coords(&self.coords))
    }
}

impl fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.algebra.basis(self.degree);
        let terms = self.coords.iter().zip(labels.iter().map(String::as_str));
        f.write_str(&format_combination(terms))
    }
}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(deg {}: {})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::projective_space;
    use crate::scalar::int;

    #[test]
    fn multiply_in_projective_three_space() {
        let p3 = projective_space(3);
        let h = p3.basis_element(1, 0).unwrap();
        let h2 = p3.basis_element(2, 0).unwrap();
        assert_eq!(h.multiply(&h2).unwrap(), p3.basis_element(3, 0).unwrap());
        assert_eq!(h.pow(3).integrate().unwrap(), int(1));
    }

    #[test]
    fn above_top_products_vanish() {
        let p3 = projective_space(3);
        let h2 = p3.basis_element(2, 0).unwrap();
        let p = h2.multiply(&h2).unwrap();
        assert!(p.is_above_top());
        assert!(p.is_zero());
        assert_eq!(p.degree(), 4);
        assert!(p.multiply(&p3.unit()).unwrap().is_zero());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let p2 = projective_space(2);
        let p3 = projective_space(3);
        let err = p2.unit().multiply(&p3.unit()).unwrap_err();
        assert!(matches!(err, AlgebraError::MixedAlgebras(..)));
    }

    #[test]
    fn integrate_requires_top_degree() {
        let p3 = projective_space(3);
        let err = p3.basis_element(2, 0).unwrap().integrate().unwrap_err();
        assert_eq!(err, AlgebraError::WrongDegree { expected: 3, found: 2 });
    }

    #[test]
    fn constructor_checks_length() {
        let p3 = projective_space(3);
        assert!(p3.element(1, vec![int(1), int(2)]).is_err());
        assert!(p3.element(4, vec![]).is_err());
    }

    #[test]
    fn display_uses_labels() {
        let p3 = projective_space(3);
        let x = p3.element(1, vec![int(-2)]).unwrap();
        assert_eq!(x.to_string(), "-2*h");
        assert_eq!(p3.unit().to_string(), "1");
    }
}
